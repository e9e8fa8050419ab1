"""Frequency-domain function families with closed-form inner products.

A :class:`ModulatedBoxSum` is a finite sum of terms
c * e^{-i<beta, xi>} * 1_R(xi) with beta in the A-adic group and R a
rational box.  The family is closed under modulation always and under
the frequency-domain scaling operator when the frequency matrix is
diagonal (or n == 1), and every L2 pairing factors into one-dimensional
exponential integrals whose endpoint phases are rational multiples of
pi, reduced exactly.

A :class:`LayerFunction` is a finite window of k-indexed layers, each a
modulated box sum supported in a base set; it carries the functions on
E x Z produced by the unitary change of realization.

A :class:`GridFunction` is the piecewise-constant sampled carrier used
by the inexact (general matrix) path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .boxes import Box, BoxSet
from .errors import DimensionMismatch, NonDiagonalDilation, WindowTooSmall
from .groups import AdicVector, DilationMatrix, RealPoint, character_value, phase_exp

__all__ = ["Term", "ModulatedBoxSum", "LayerFunction", "GridFunction", "axis_integral"]


@dataclass(frozen=True)
class Term:
    coef: complex
    beta: AdicVector
    box: Box


def axis_integral(a: Fraction, b: Fraction, theta: Fraction) -> complex:
    """Exact-phase evaluation of the integral of e^{-i theta t} over [a*pi, b*pi]."""
    if theta == 0:
        return complex(float(b - a) * math.pi)
    hi = phase_exp(-theta * b)
    lo = phase_exp(-theta * a)
    return (hi - lo) / complex(0, -float(theta))


def _term_key(t: Term):
    return (t.beta.j, t.beta.v, t.box.lo, t.box.hi)


@dataclass(frozen=True)
class ModulatedBoxSum:
    """f(xi) = sum of c * e^{-i<beta, xi>} * 1_R(xi)."""

    A: DilationMatrix
    terms: tuple[Term, ...]

    @property
    def dim(self) -> int:
        return self.A.n

    @classmethod
    def zero(cls, A: DilationMatrix) -> "ModulatedBoxSum":
        return cls(A, ())

    @classmethod
    def of(cls, A: DilationMatrix, entries: Iterable[tuple]) -> "ModulatedBoxSum":
        """Build from (coef, beta, box) triples."""
        terms = tuple(Term(complex(c), b, box) for c, b, box in entries)
        for t in terms:
            if t.box.dim != A.n or t.beta.A != A:
                raise DimensionMismatch("term dimension mismatch")
        return cls(A, terms)

    @classmethod
    def piecewise(cls, A: DilationMatrix, pieces: Iterable[tuple[Box, complex]]):
        """Piecewise-constant function: no modulations."""
        zero = AdicVector.zero(A)
        return cls(A, tuple(Term(complex(c), zero, box) for box, c in pieces))

    @classmethod
    def indicator(cls, A: DilationMatrix, S: BoxSet, coef: complex = 1.0):
        return cls.piecewise(A, [(b, coef) for b in S.boxes])

    # --- frequency-domain operators -------------------------------------

    def modulated(self, beta: AdicVector) -> "ModulatedBoxSum":
        """Multiplication by e^{-i<beta, xi>} (exactly unitary)."""
        return ModulatedBoxSum(
            self.A, tuple(Term(t.coef, t.beta + beta, t.box) for t in self.terms)
        )

    def dilated(self, m: int) -> "ModulatedBoxSum":
        """m-fold frequency-domain scaling operator.

        Boxes map within the family only for diagonal matrices; the
        modulation parameter stays in the A-adic group and the
        coefficient picks up |det|^{-m/2}.
        """
        if m == 0:
            return self
        if not self.A.is_diagonal:
            raise NonDiagonalDilation("exact scaling needs a diagonal matrix")
        scale = float(self.A.det_abs) ** (-m / 2.0)
        diag = [Fraction(d) ** m for d in self.A.diagonal]
        out = []
        for t in self.terms:
            pairs = [
                (min(d * a, d * b), max(d * a, d * b))
                for d, a, b in zip(diag, t.box.lo, t.box.hi)
            ]
            box = Box(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))
            out.append(Term(t.coef * scale, t.beta.twist(m), box))
        return ModulatedBoxSum(self.A, tuple(out))

    # --- algebra ---------------------------------------------------------

    def __add__(self, other: "ModulatedBoxSum") -> "ModulatedBoxSum":
        if self.A != other.A:
            raise DimensionMismatch("ambient matrices differ")
        return ModulatedBoxSum(self.A, self.terms + other.terms)

    def __sub__(self, other: "ModulatedBoxSum") -> "ModulatedBoxSum":
        return self + other.scaled(-1.0)

    def scaled(self, c: complex) -> "ModulatedBoxSum":
        return ModulatedBoxSum(
            self.A, tuple(Term(t.coef * c, t.beta, t.box) for t in self.terms)
        )

    def collect(self) -> "ModulatedBoxSum":
        """Merge identical (beta, box) terms; drop exact-zero coefficients."""
        acc: dict = {}
        for t in self.terms:
            key = (t.beta, t.box)
            acc[key] = acc.get(key, 0j) + t.coef
        terms = tuple(
            Term(c, beta, box)
            for (beta, box), c in sorted(
                acc.items(), key=lambda kv: (kv[0][1].lo, kv[0][1].hi, kv[0][0].j, kv[0][0].v)
            )
            if c != 0
        )
        return ModulatedBoxSum(self.A, terms)

    def restricted(self, S: BoxSet) -> "ModulatedBoxSum":
        out = []
        for t in self.terms:
            for piece in S.boxes:
                c = t.box.intersect(piece)
                if c is not None:
                    out.append(Term(t.coef, t.beta, c))
        return ModulatedBoxSum(self.A, tuple(out))

    def support(self) -> BoxSet:
        return BoxSet.of(self.dim, [t.box for t in self.terms])

    @property
    def is_piecewise_constant(self) -> bool:
        return all(t.beta.is_zero for t in self.terms)

    def has_disjoint_boxes(self) -> bool:
        boxes = [t.box for t in self.terms]
        return all(
            boxes[i].intersect(boxes[j]) is None
            for i in range(len(boxes))
            for j in range(i + 1, len(boxes))
        )

    # --- analysis ---------------------------------------------------------

    def inner(self, other: "ModulatedBoxSum") -> complex:
        """L2 pairing <self, other>, closed form per term pair."""
        if self.A != other.A:
            raise DimensionMismatch("ambient matrices differ")
        total = 0j
        for s in self.terms:
            sv = s.beta.values()
            for t in other.terms:
                common = s.box.intersect(t.box)
                if common is None:
                    continue
                tv = t.beta.values()
                prod = complex(1.0)
                for k in range(self.dim):
                    prod *= axis_integral(common.lo[k], common.hi[k], sv[k] - tv[k])
                    if prod == 0:
                        break
                total += s.coef * t.coef.conjugate() * prod
        return total

    def norm_sq(self) -> float:
        return max(self.inner(self).real, 0.0)

    def eval(self, x: RealPoint) -> complex:
        val = 0j
        for t in self.terms:
            if t.box.contains_point(x):
                val += t.coef * character_value(x, t.beta)
        return val

    def __repr__(self) -> str:
        return f"ModulatedBoxSum({len(self.terms)} terms, dim={self.dim})"


@dataclass(frozen=True)
class LayerFunction:
    """A function on E x Z: one modulated box sum per layer k in a finite window."""

    A: DilationMatrix
    k_min: int
    k_max: int
    layers: dict[int, ModulatedBoxSum]
    truncation_mass: float = 0.0

    def __post_init__(self):
        for k in self.layers:
            if not (self.k_min <= k <= self.k_max):
                raise ValueError("layer outside the window")

    @property
    def dim(self) -> int:
        return self.A.n

    def layer(self, k: int) -> ModulatedBoxSum:
        return self.layers.get(k, ModulatedBoxSum.zero(self.A))

    def norm_sq(self) -> float:
        return sum(layer.norm_sq() for layer in self.layers.values())

    def eval(self, x: RealPoint, k: int) -> complex:
        return self.layer(k).eval(x)

    def __sub__(self, other: "LayerFunction") -> "LayerFunction":
        if self.A != other.A:
            raise DimensionMismatch("ambient matrices differ")
        k_min = min(self.k_min, other.k_min)
        k_max = max(self.k_max, other.k_max)
        layers = {}
        for k in range(k_min, k_max + 1):
            diff = (self.layer(k) - other.layer(k)).collect()
            if diff.terms:
                layers[k] = diff
        return LayerFunction(self.A, k_min, k_max, layers)

    def collect(self) -> "LayerFunction":
        layers = {}
        for k, layer in self.layers.items():
            c = layer.collect()
            if c.terms:
                layers[k] = c
        return LayerFunction(self.A, self.k_min, self.k_max, layers, self.truncation_mass)

    def __repr__(self) -> str:
        return (
            f"LayerFunction(window=[{self.k_min}, {self.k_max}], "
            f"{len(self.layers)} nonzero layers)"
        )


@dataclass
class GridFunction:
    """Piecewise-constant samples on a uniform grid (the inexact path)."""

    origin: tuple[float, ...]
    h: float
    values: np.ndarray  # complex, shape per axis

    @classmethod
    def sample(
        cls,
        fn: Callable,
        origin: Sequence[float],
        h: float,
        shape: Sequence[int],
    ) -> "GridFunction":
        """Sample a callable at cell centers."""
        grids = [
            np.asarray(origin)[k] + h * (np.arange(shape[k]) + 0.5)
            for k in range(len(shape))
        ]
        mesh = np.meshgrid(*grids, indexing="ij")
        vals = np.asarray(fn(*mesh), dtype=complex)
        return cls(tuple(float(o) for o in origin), float(h), vals)

    @property
    def dim(self) -> int:
        return self.values.ndim

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2)) * self.h**self.dim

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        """Piecewise-constant lookup; points of shape (m, dim)."""
        pts = np.atleast_2d(points)
        idx = np.floor((pts - np.asarray(self.origin)) / self.h).astype(int)
        inside = np.all((idx >= 0) & (idx < np.asarray(self.values.shape)), axis=1)
        out = np.zeros(len(pts), dtype=complex)
        if np.any(inside):
            sel = tuple(idx[inside].T)
            out[inside] = self.values[sel]
        return out
