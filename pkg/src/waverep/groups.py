"""Exact arithmetic for the dilation matrix, its A-adic group and characters.

The translation group is Q_A = union_j A^{-j} Z^n, a subgroup of Q^n.
Its elements are stored as an integer vector over a power-of-A
denominator and kept in a canonical form, so equality is structural.
The scaling group Z acts by beta -> A^{-m} beta; the semidirect product
carries the usual twisted multiplication.

Points of R^n come in two flavours: plain floats, and exact rational
multiples of pi per coordinate.  On the exact flavour every phase
<x, beta> is a rational multiple of pi, reduced mod 2*pi in rational
arithmetic before any transcendental evaluation, so characters take
exact values (1, -1, +-i, ...) wherever those are analytically forced.
"""

from __future__ import annotations

import cmath
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import DimensionMismatch, NotExpansive, SingularMatrix

__all__ = [
    "DilationMatrix",
    "validate_dilation",
    "AdicVector",
    "GroupElement",
    "RealPoint",
    "shift_cocycle",
    "character_value",
    "phase_exp",
    "b_transform",
]


@dataclass(frozen=True)
class DilationMatrix:
    """A certified expansive integer matrix.

    ``entries`` is the matrix A acting on the time domain; the frequency
    domain sees its transpose.  ``char_coeffs`` are the coefficients of
    det(x*I - A), ascending.  Construct through :func:`validate_dilation`.
    """

    entries: linalg.IntMatrix
    char_coeffs: tuple[int, ...]
    determinant: int

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def det_abs(self) -> int:
        return abs(self.determinant)

    @property
    def b_entries(self) -> linalg.IntMatrix:
        """The transpose, acting on the frequency domain."""
        return linalg.transpose(self.entries)

    @property
    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    @property
    def diagonal(self) -> tuple[int, ...]:
        if not self.is_diagonal:
            raise ValueError("matrix is not diagonal")
        return tuple(self.entries[i][i] for i in range(self.n))

    def apply(self, v: Sequence) -> tuple:
        return linalg.mat_vec(self.entries, v)

    def apply_pow(self, v: Sequence, k: int) -> tuple:
        """A^k v, exact; negative k solves with Fractions."""
        if k >= 0:
            return linalg.mat_vec(linalg.mat_pow(self.entries, k), v)
        return linalg.solve(linalg.mat_pow(self.entries, -k), v)

    def __repr__(self) -> str:
        return f"DilationMatrix({[list(r) for r in self.entries]})"


def validate_dilation(raw) -> DilationMatrix:
    """Certify that a square integer matrix is expansive.

    Exact acceptance criterion: det != 0 and every eigenvalue has
    modulus > 1.  The eigenvalue condition is decided without floating
    point: A is expansive iff the reversed characteristic polynomial
    x^n p(1/x) has all roots strictly inside the unit circle, which the
    integer Schur reduction certifies.
    """
    entries = linalg.as_matrix(raw)
    coeffs = linalg.char_poly(entries)
    n = len(entries)
    c0 = coeffs[0]
    determinant = c0 if n % 2 == 0 else -c0
    if determinant == 0:
        raise SingularMatrix("determinant is zero")
    reversed_coeffs = tuple(reversed(coeffs))
    stable, stage = linalg.schur_stable(reversed_coeffs)
    if not stable:
        raise NotExpansive(
            f"eigenvalue of modulus <= 1 (certificate failed at stage {stage})",
            stage,
        )
    return DilationMatrix(entries=entries, char_coeffs=coeffs, determinant=determinant)


@dataclass(frozen=True)
class AdicVector:
    """An element A^{-j} v of the A-adic group, in canonical form.

    Canonical means j == 0 or v is not in A(Z^n); construction
    normalizes, so equality of values is equality of fields.
    """

    A: DilationMatrix
    v: tuple[int, ...]
    j: int

    def __post_init__(self):
        v = tuple(operator.index(x) for x in self.v)
        j = operator.index(self.j)
        if len(v) != self.A.n:
            raise DimensionMismatch("vector length != matrix dimension")
        if j < 0:
            raise ValueError("denominator exponent must be >= 0")
        if all(x == 0 for x in v):
            j = 0
        else:
            while j > 0:
                w = linalg.solve_integer(self.A.entries, v)
                if w is None:
                    break
                v, j = w, j - 1
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "j", j)

    @classmethod
    def of(cls, A: DilationMatrix, v: Iterable[int], j: int = 0) -> "AdicVector":
        return cls(A, tuple(v), j)

    @classmethod
    def zero(cls, A: DilationMatrix) -> "AdicVector":
        return cls(A, (0,) * A.n, 0)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.v)

    def values(self) -> tuple[Fraction, ...]:
        """The element as an exact rational vector."""
        if self.j == 0:
            return tuple(Fraction(x) for x in self.v)
        return linalg.solve(linalg.mat_pow(self.A.entries, self.j), self.v)

    def twist(self, m: int) -> "AdicVector":
        """The scaling action: A^{-m} applied to this element."""
        e = self.j + m
        if e >= 0:
            return AdicVector(self.A, self.v, e)
        w = linalg.mat_vec(linalg.mat_pow(self.A.entries, -e), self.v)
        return AdicVector(self.A, w, 0)

    def _common(self, other: "AdicVector") -> tuple[int, tuple, tuple]:
        if self.A != other.A:
            raise DimensionMismatch("elements from different ambient groups")
        big = max(self.j, other.j)
        v1 = linalg.mat_vec(linalg.mat_pow(self.A.entries, big - self.j), self.v)
        v2 = linalg.mat_vec(linalg.mat_pow(self.A.entries, big - other.j), other.v)
        return big, v1, v2

    def __add__(self, other: "AdicVector") -> "AdicVector":
        big, v1, v2 = self._common(other)
        return AdicVector(self.A, tuple(a + b for a, b in zip(v1, v2)), big)

    def __sub__(self, other: "AdicVector") -> "AdicVector":
        return self + (-other)

    def __neg__(self) -> "AdicVector":
        return AdicVector(self.A, tuple(-x for x in self.v), self.j)

    def __repr__(self) -> str:
        return f"AdicVector(v={list(self.v)}, j={self.j})"


@dataclass(frozen=True)
class GroupElement:
    """An element (beta, m) of the semidirect product group."""

    beta: AdicVector
    m: int

    @classmethod
    def of(cls, A: DilationMatrix, v: Iterable[int], j: int = 0, m: int = 0):
        return cls(AdicVector.of(A, v, j), m)

    @classmethod
    def identity(cls, A: DilationMatrix) -> "GroupElement":
        return cls(AdicVector.zero(A), 0)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.beta + other.beta.twist(self.m), self.m + other.m)

    def inverse(self) -> "GroupElement":
        return GroupElement(-self.beta.twist(-self.m), -self.m)

    def __repr__(self) -> str:
        return f"GroupElement(beta={self.beta!r}, m={self.m})"


def shift_cocycle(k: int, g: GroupElement) -> AdicVector:
    """The translation-valued cocycle of the coset shift action.

    Value A^{-k} beta; satisfies
    shift_cocycle(k, g1*g2) == shift_cocycle(k, g1) + shift_cocycle(k + g1.m, g2).
    """
    return g.beta.twist(k)


@dataclass(frozen=True)
class RealPoint:
    """A point of R^n; coordinates optionally exact rational multiples of pi."""

    coords: tuple[float, ...]
    pi_coords: tuple[Fraction, ...] | None = None

    @classmethod
    def from_pi(cls, fracs: Iterable) -> "RealPoint":
        pf = tuple(Fraction(f) for f in fracs)
        return cls(tuple(float(f) * math.pi for f in pf), pf)

    @classmethod
    def from_floats(cls, vals: Iterable[float]) -> "RealPoint":
        return cls(tuple(float(v) for v in vals), None)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def is_exact(self) -> bool:
        return self.pi_coords is not None

    def __repr__(self) -> str:
        if self.pi_coords is not None:
            return f"RealPoint(pi={[str(f) for f in self.pi_coords]})"
        return f"RealPoint({list(self.coords)})"


_QUARTER = {
    Fraction(0): complex(1, 0),
    Fraction(1, 2): complex(0, 1),
    Fraction(1): complex(-1, 0),
    Fraction(3, 2): complex(0, -1),
}


def phase_exp(t: Fraction) -> complex:
    """e^{i pi t} with the phase reduced mod 2 in rational arithmetic."""
    r = t % 2
    exact = _QUARTER.get(r)
    if exact is not None:
        return exact
    return cmath.exp(1j * math.pi * float(r))


def character_value(x: RealPoint, beta: AdicVector) -> complex:
    """The unit complex value e^{-i<x, beta>}."""
    if x.dim != beta.A.n:
        raise DimensionMismatch("point and element dimensions differ")
    if x.pi_coords is not None:
        t = sum(
            (xf * bf for xf, bf in zip(x.pi_coords, beta.values())),
            Fraction(0),
        )
        return phase_exp(-t)
    dot = sum(xc * float(bf) for xc, bf in zip(x.coords, beta.values()))
    return cmath.exp(-1j * dot)


def b_transform(A: DilationMatrix, x: RealPoint, k: int) -> RealPoint:
    """B^k x for B the transpose of A, exact on exact points."""
    if x.dim != A.n:
        raise DimensionMismatch("point and matrix dimensions differ")
    b = A.b_entries
    if x.pi_coords is not None:
        if k >= 0:
            w = linalg.mat_vec(linalg.mat_pow(b, k), x.pi_coords)
        else:
            w = linalg.solve(linalg.mat_pow(b, -k), x.pi_coords)
        return RealPoint.from_pi(w)
    if k >= 0:
        mat = linalg.mat_pow(b, k)
        return RealPoint.from_floats(
            tuple(sum(mat[i][j] * x.coords[j] for j in range(A.n)) for i in range(A.n))
        )
    return RealPoint.from_floats(linalg.solve_float(linalg.mat_pow(b, -k), x.coords))
