"""Exact measurable-set algebra on finite unions of half-open rational boxes.

Coordinates are stored in units of pi as exact ``Fraction`` values, so
the lattice 2*pi*Z^n and the cube [-pi, pi)^n are integer objects and
every congruence check is exact.  All boxes are half-open products
prod_k [lo_k, hi_k); boundaries are null sets and the whole module works
modulo null sets.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NonDiagonalDilation
from .groups import DilationMatrix, RealPoint

__all__ = ["Box", "BoxSet", "normalize", "interval_set", "unit_cube"]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Box:
    """Half-open box prod_k [lo_k, hi_k), endpoints in pi units."""

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]

    def __post_init__(self):
        lo = tuple(_frac(x) for x in self.lo)
        hi = tuple(_frac(x) for x in self.hi)
        if len(lo) != len(hi):
            raise DimensionMismatch("lo/hi length mismatch")
        if any(a >= b for a, b in zip(lo, hi)):
            raise ValueError("empty or inverted box")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def volume(self) -> Fraction:
        """Volume in pi^n units."""
        vol = Fraction(1)
        for a, b in zip(self.lo, self.hi):
            vol *= b - a
        return vol

    def intersect(self, other: "Box") -> "Box | None":
        lo = tuple(max(a, b) for a, b in zip(self.lo, other.lo))
        hi = tuple(min(a, b) for a, b in zip(self.hi, other.hi))
        if any(a >= b for a, b in zip(lo, hi)):
            return None
        return Box(lo, hi)

    def minus(self, cutter: "Box") -> list["Box"]:
        """Set difference self \\ cutter as disjoint boxes."""
        if self.intersect(cutter) is None:
            return [self]
        pieces = []
        lo, hi = list(self.lo), list(self.hi)
        for k in range(self.dim):
            if lo[k] < cutter.lo[k]:
                pieces.append(
                    Box(tuple(lo[:k]) + (lo[k],) + tuple(lo[k + 1 :]),
                        tuple(hi[:k]) + (cutter.lo[k],) + tuple(hi[k + 1 :]))
                )
                lo[k] = cutter.lo[k]
            if cutter.hi[k] < hi[k]:
                pieces.append(
                    Box(tuple(lo[:k]) + (cutter.hi[k],) + tuple(lo[k + 1 :]),
                        tuple(hi[:k]) + (hi[k],) + tuple(hi[k + 1 :]))
                )
                hi[k] = cutter.hi[k]
        return pieces

    def contains_point(self, x: RealPoint) -> bool:
        if x.dim != self.dim:
            raise DimensionMismatch("point dimension mismatch")
        if x.pi_coords is not None:
            return all(a <= c < b for a, b, c in zip(self.lo, self.hi, x.pi_coords))
        import math

        return all(
            float(a) * math.pi <= c < float(b) * math.pi
            for a, b, c in zip(self.lo, self.hi, x.coords)
        )

    def translate(self, shift: Sequence[Fraction]) -> "Box":
        return Box(
            tuple(a + s for a, s in zip(self.lo, shift)),
            tuple(b + s for b, s in zip(self.hi, shift)),
        )

    def __repr__(self) -> str:
        parts = ", ".join(f"[{a}, {b})" for a, b in zip(self.lo, self.hi))
        return f"Box({parts})"


def _merge_cells(dim: int, cells: set[Box]) -> list[Box]:
    """Greedy fuse of adjacent boxes, axis by axis, to a fixpoint."""
    current = list(cells)
    changed = True
    while changed:
        changed = False
        for axis in range(dim):
            def key(b: Box):
                other = tuple(
                    (b.lo[k], b.hi[k]) for k in range(dim) if k != axis
                )
                return (other, b.lo[axis])

            current.sort(key=key)
            fused: list[Box] = []
            for b in current:
                if fused:
                    p = fused[-1]
                    same_profile = all(
                        p.lo[k] == b.lo[k] and p.hi[k] == b.hi[k]
                        for k in range(dim)
                        if k != axis
                    )
                    if same_profile and p.hi[axis] == b.lo[axis]:
                        fused[-1] = Box(
                            p.lo,
                            tuple(
                                b.hi[k] if k == axis else p.hi[k] for k in range(dim)
                            ),
                        )
                        changed = True
                        continue
                fused.append(b)
            current = fused
    current.sort(key=lambda b: (b.lo, b.hi))
    return current


def normalize(dim: int, boxes: Iterable[Box]) -> "BoxSet":
    """Canonical disjoint representation of a union of boxes."""
    boxes = list(boxes)
    for b in boxes:
        if b.dim != dim:
            raise DimensionMismatch("box dimension mismatch")
    if not boxes:
        return BoxSet(dim, ())
    grids = []
    for k in range(dim):
        vals = sorted({b.lo[k] for b in boxes} | {b.hi[k] for b in boxes})
        grids.append(vals)
    cells: set[Box] = set()
    for b in boxes:
        ranges = []
        for k in range(dim):
            g = grids[k]
            i0 = bisect_left(g, b.lo[k])
            i1 = bisect_right(g, b.hi[k]) - 1
            ranges.append(range(i0, i1))
        for idx in itertools.product(*ranges):
            lo = tuple(grids[k][i] for k, i in enumerate(idx))
            hi = tuple(grids[k][i + 1] for k, i in enumerate(idx))
            cells.add(Box(lo, hi))
    return BoxSet(dim, tuple(_merge_cells(dim, cells)))


@dataclass(frozen=True)
class BoxSet:
    """Canonical finite disjoint union of half-open boxes."""

    dim: int
    boxes: tuple[Box, ...]

    @classmethod
    def empty(cls, dim: int) -> "BoxSet":
        return cls(dim, ())

    @classmethod
    def of(cls, dim: int, boxes: Iterable[Box]) -> "BoxSet":
        return normalize(dim, boxes)

    @property
    def is_empty(self) -> bool:
        return not self.boxes

    def measure(self) -> Fraction:
        """Lebesgue measure in pi^n units (multiply by pi**dim for the real value)."""
        return sum((b.volume() for b in self.boxes), Fraction(0))

    def union(self, other: "BoxSet") -> "BoxSet":
        self._check(other)
        return normalize(self.dim, self.boxes + other.boxes)

    def intersect(self, other: "BoxSet") -> "BoxSet":
        self._check(other)
        pieces = []
        for a in self.boxes:
            for b in other.boxes:
                c = a.intersect(b)
                if c is not None:
                    pieces.append(c)
        return normalize(self.dim, pieces)

    def subtract(self, other: "BoxSet") -> "BoxSet":
        self._check(other)
        pieces = list(self.boxes)
        for cutter in other.boxes:
            pieces = [p for b in pieces for p in b.minus(cutter)]
        return normalize(self.dim, pieces)

    def translate(self, v: Sequence[int]) -> "BoxSet":
        """The set shifted by the lattice vector 2*pi*v."""
        if len(v) != self.dim:
            raise DimensionMismatch("lattice vector dimension mismatch")
        shift = tuple(Fraction(2 * int(x)) for x in v)
        return BoxSet(self.dim, tuple(b.translate(shift) for b in self.boxes))

    def dilate(self, A: DilationMatrix, j: int) -> "BoxSet":
        """Image of the set under the j-th power of the frequency matrix.

        Exact only when the frequency matrix (the transpose) is diagonal
        or n == 1; the box family is closed under those maps.  Negative
        diagonal entries flip interval orientation; the half-open image
        differs from the true image by a null set, which is all the
        measure-level checks need.
        """
        if A.n != self.dim:
            raise DimensionMismatch("matrix dimension mismatch")
        if not A.is_diagonal:
            raise NonDiagonalDilation(
                "exact dilation needs a diagonal matrix; use the sampled path"
            )
        diag = [Fraction(d) ** j for d in A.diagonal]
        out = []
        for b in self.boxes:
            pairs = [
                (min(d * a, d * c), max(d * a, d * c))
                for d, a, c in zip(diag, b.lo, b.hi)
            ]
            out.append(Box(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs)))
        return BoxSet(self.dim, tuple(sorted(out, key=lambda b: (b.lo, b.hi))))

    def contains(self, x: RealPoint) -> bool:
        if x.dim != self.dim:
            raise DimensionMismatch("point dimension mismatch")
        return any(b.contains_point(x) for b in self.boxes)

    def same_set(self, other: "BoxSet") -> bool:
        """Equality as sets (representation independent)."""
        return self.subtract(other).is_empty and other.subtract(self).is_empty

    def bounding_radii(self) -> tuple[Fraction, Fraction]:
        """(r_min, r_max) bounds in the sup norm, pi units.

        r_min is the distance from the origin to the set, r_max the
        farthest sup-norm reach; both are exact.
        """
        if self.is_empty:
            return Fraction(0), Fraction(0)
        r_max = max(max(abs(a), abs(b)) for box in self.boxes for a, b in zip(box.lo, box.hi))
        r_min = None
        for box in self.boxes:
            # sup-norm distance from 0 to the box: max of axiswise distances
            dist = max(
                (Fraction(0) if a <= 0 < b else min(abs(a), abs(b)))
                for a, b in zip(box.lo, box.hi)
            )
            r_min = dist if r_min is None else min(r_min, dist)
        return r_min, r_max

    def translation_reduce(self):
        """Fold the set into the cube [-pi, pi)^n along the 2*pi lattice.

        Returns (fragments, overlap, deficit): each fragment is a maximal
        sub-box together with the unique lattice shift taking it into the
        cube; overlap collects points of the cube hit twice, deficit the
        points never hit.  Both are empty iff the set is translation
        congruent to the cube.
        """
        fragments: list[tuple[Box, tuple[int, ...]]] = []
        for box in self.boxes:
            # split along the odd-integer grid so each piece sits in one cell
            pieces = [box]
            for k in range(self.dim):
                split: list[Box] = []
                for p in pieces:
                    cuts = []
                    c = _next_odd(p.lo[k])
                    while c < p.hi[k]:
                        cuts.append(c)
                        c += 2
                    split.extend(_split_axis(p, k, cuts))
                pieces = split
            for p in pieces:
                shift = tuple(-int((a + 1) // 2) for a in p.lo)
                fragments.append((p, shift))
        images = [
            frag.translate(tuple(Fraction(2 * s) for s in shift))
            for frag, shift in fragments
        ]
        overlap_pieces = []
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                c = images[i].intersect(images[j])
                if c is not None:
                    overlap_pieces.append(c)
        overlap = normalize(self.dim, overlap_pieces)
        cube = unit_cube(self.dim)
        covered = normalize(self.dim, images)
        deficit = cube.subtract(covered)
        return fragments, overlap, deficit

    def _check(self, other: "BoxSet"):
        if self.dim != other.dim:
            raise DimensionMismatch("box set dimensions differ")

    def __repr__(self) -> str:
        return f"BoxSet(dim={self.dim}, boxes={list(self.boxes)})"


def _next_odd(x: Fraction) -> Fraction:
    """Smallest odd integer strictly greater than x."""
    k = x.__floor__()
    c = Fraction(k if k % 2 else k + 1)
    if c <= x:
        c += 2
    return c


def _split_axis(box: Box, axis: int, cuts: list[Fraction]) -> list[Box]:
    out = []
    lo = box.lo[axis]
    for c in cuts + [box.hi[axis]]:
        out.append(
            Box(
                tuple(lo if k == axis else box.lo[k] for k in range(box.dim)),
                tuple(c if k == axis else box.hi[k] for k in range(box.dim)),
            )
        )
        lo = c
    return out


def interval_set(intervals: Iterable[tuple]) -> BoxSet:
    """1-D convenience: build a BoxSet from (lo, hi) pairs in pi units."""
    return BoxSet.of(1, [Box((_frac(a),), (_frac(b),)) for a, b in intervals])


def unit_cube(dim: int) -> BoxSet:
    """The cube [-pi, pi)^n."""
    return BoxSet(
        dim, (Box((Fraction(-1),) * dim, (Fraction(1),) * dim),)
    )


def product_set(a: BoxSet, b: BoxSet) -> BoxSet:
    """Cartesian product of two box sets."""
    boxes = [
        Box(x.lo + y.lo, x.hi + y.hi) for x in a.boxes for y in b.boxes
    ]
    return BoxSet.of(a.dim + b.dim, boxes)
