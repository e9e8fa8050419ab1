"""Group-element operators in the frequency domain and on finite fibers.

The group element (beta, m) acts on L2(R^n) in the frequency picture as
modulation-then-scaling; on the layered realization it acts by a phase
times a shift in the layer index; and over a single point x it acts on
the sequence space by

    fiber:   (M g)(k) = e^{-i<x, A^k beta>}  g(k - m),
    induced: (M g)(k) = e^{-i<x, A^{-k} beta>} g(k + m),

which the reflection g(k) -> g(-k) exchanges.  Everything is truncated
to a finite index window; operator identities are compared on the
interior sub-window untouched by the truncation, where they hold
exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .boxes import Box, BoxSet
from .errors import DimensionMismatch, NotCovered, WindowTooSmall
from .funcs import LayerFunction, ModulatedBoxSum, Term
from .groups import (
    AdicVector,
    DilationMatrix,
    GroupElement,
    RealPoint,
    b_transform,
    character_value,
)

__all__ = [
    "apply_group_element",
    "commutation_defect",
    "apply_layer_rep",
    "conjugation_defect",
    "FiberOperator",
    "fiber_operator",
    "induced_operator",
    "interior_deviation",
    "reflection_intertwiner_defect",
    "find_orbit_shift",
    "orbit_shift_defect",
    "irreducibility_scan",
    "multiply_step",
    "invariant_step_extension",
    "commutator_with_dilation",
]


# --- frequency-domain action ------------------------------------------------


def apply_group_element(g: GroupElement, f: ModulatedBoxSum) -> ModulatedBoxSum:
    """The operator of (beta, m): modulation after m-fold scaling."""
    return f.dilated(g.m).modulated(g.beta)


def commutation_defect(
    A: DilationMatrix, axis: int, trials: int = 10, seed: int = 0
) -> float:
    """Residual of the defining exchange relation on random vectors.

    Translating by the axis generator after scaling equals scaling after
    translating by its image under the matrix; both sides are evaluated
    symbolically on modulated box sums and the collected difference is
    measured.  Exact inputs give literally zero terms.
    """
    rng = random.Random(seed)
    e_axis = AdicVector.of(A, [1 if i == axis else 0 for i in range(A.n)])
    img = AdicVector.of(A, A.apply(e_axis.v))
    worst = 0.0
    for _ in range(trials):
        f = _random_mbs(rng, A)
        lhs = f.dilated(1).modulated(e_axis)
        rhs = f.modulated(img).dilated(1)
        diff = (lhs - rhs).collect()
        worst = max(worst, diff.norm_sq() ** 0.5)
    return worst


def _random_mbs(rng: random.Random, A: DilationMatrix, n_terms: int = 3) -> ModulatedBoxSum:
    terms = []
    for _ in range(n_terms):
        lo = tuple(Fraction(rng.randint(-16, 14), 4) for _ in range(A.n))
        hi = tuple(a + Fraction(rng.randint(1, 8), 4) for a in lo)
        beta = AdicVector.of(
            A, [rng.randint(-6, 6) for _ in range(A.n)], rng.randint(0, 2)
        )
        coef = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        terms.append(Term(coef, beta, Box(lo, hi)))
    return ModulatedBoxSum(A, tuple(terms))


# --- layered action -----------------------------------------------------------


def apply_layer_rep(
    g: GroupElement, F: LayerFunction, tol: float = 1e-9
) -> LayerFunction:
    """The layered action: phase e^{-i<x, A^k beta>} times a shift k -> k - m."""
    A = F.A
    layers: dict[int, ModulatedBoxSum] = {}
    lost = 0.0
    for k_src, layer in F.layers.items():
        k = k_src + g.m
        if F.k_min <= k <= F.k_max:
            layers[k] = layer.modulated(g.beta.twist(-k))
        else:
            lost += layer.norm_sq()
    total = F.norm_sq()
    if total > 0 and lost > tol * total:
        raise WindowTooSmall(
            f"shift by {g.m} pushes {lost:.3e} of the mass outside the window"
        )
    return LayerFunction(A, F.k_min, F.k_max, layers)


def conjugation_defect(
    g: GroupElement,
    f: ModulatedBoxSum,
    E: BoxSet,
    A: DilationMatrix,
    margin: int = 2,
) -> float:
    """Norm of (forward of the acted function) minus (layer action of the forward).

    This is the computational form of the unitary equivalence between
    the frequency-domain representation and its layered realization.
    """
    from .spectral import layer_span, to_layers

    span = layer_span(f, E, A)
    k_min = span[0] - abs(g.m) - margin
    k_max = span[1] + abs(g.m) + margin
    lhs = to_layers(apply_group_element(g, f), E, A, k_min, k_max)
    rhs = apply_layer_rep(g, to_layers(f, E, A, k_min, k_max))
    return (lhs - rhs).norm_sq() ** 0.5


# --- fiber operators ----------------------------------------------------------


@dataclass(frozen=True)
class FiberOperator:
    """Truncated shift-with-phases operator on the sequence space.

    Acts by (M g)(k) = phases[k] * g(k - shift) for k in the valid key
    range; keys shrink under composition, which is exactly the interior
    block where the untruncated identity holds.
    """

    x: RealPoint
    k_bound: int
    shift: int
    phases: dict[int, complex]

    def compose(self, other: "FiberOperator") -> "FiberOperator":
        phases = {
            k: p * other.phases[k - self.shift]
            for k, p in self.phases.items()
            if (k - self.shift) in other.phases
        }
        return FiberOperator(self.x, self.k_bound, self.shift + other.shift, phases)

    def reflect_conjugate(self) -> "FiberOperator":
        """Conjugation by the reflection g(k) -> g(-k)."""
        phases = {-k: p for k, p in self.phases.items()}
        return FiberOperator(self.x, self.k_bound, -self.shift, phases)

    def shift_conjugate(self, a: int) -> "FiberOperator":
        """Conjugation by the translation (S_a g)(k) = g(k - a)."""
        phases = {k - a: p for k, p in self.phases.items()}
        return FiberOperator(self.x, self.k_bound, self.shift, phases)

    def apply(self, vector: dict[int, complex]) -> dict[int, complex]:
        return {
            k: p * vector[k - self.shift]
            for k, p in self.phases.items()
            if (k - self.shift) in vector
        }


def fiber_operator(x: RealPoint, g: GroupElement, K: int) -> FiberOperator:
    """Truncation of the pointwise layer action over x to the window [-K, K]."""
    phases = {
        k: character_value(x, g.beta.twist(-k)) for k in range(-K, K + 1)
    }
    return FiberOperator(x, K, g.m, phases)


def induced_operator(x: RealPoint, g: GroupElement, K: int) -> FiberOperator:
    """Truncation of the representation induced from the character over x."""
    phases = {
        k: character_value(x, g.beta.twist(k)) for k in range(-K, K + 1)
    }
    return FiberOperator(x, K, -g.m, phases)


def interior_deviation(m1: FiberOperator, m2: FiberOperator) -> float:
    """Sup difference of the two operators on their common interior block.

    Operators with different shifts differ structurally; 2.0 (the
    diameter of the phase set) is returned in that case.
    """
    if m1.shift != m2.shift:
        return 2.0
    common = set(m1.phases) & set(m2.phases)
    if not common:
        raise WindowTooSmall("no common interior block")
    return max(abs(m1.phases[k] - m2.phases[k]) for k in common)


def reflection_intertwiner_defect(x: RealPoint, g: GroupElement, K: int) -> float:
    """Check that reflection conjugation carries the fiber action to the induced one."""
    lhs = fiber_operator(x, g, K).reflect_conjugate()
    rhs = induced_operator(x, g, K)
    return interior_deviation(lhs, rhs)


def find_orbit_shift(
    x: RealPoint, m: int, g: GroupElement, K: int, A: DilationMatrix
) -> tuple[int, float]:
    """Search the translation offset intertwining the two induced operators.

    Compares the induced operator over the orbit point B^m x, conjugated
    by every candidate offset, against the operator over x; returns the
    best offset with its interior deviation.
    """
    if K <= abs(m) + abs(g.m):
        raise WindowTooSmall("window too small for the requested orbit step")
    y = b_transform(A, x, m)
    target = induced_operator(x, g, K)
    moved = induced_operator(y, g, K)
    best = None
    for a in range(-K + abs(g.m), K - abs(g.m) + 1):
        dev = interior_deviation(moved.shift_conjugate(a), target)
        if best is None or dev < best[1]:
            best = (a, dev)
    return best


def orbit_shift_defect(
    x: RealPoint, m: int, g: GroupElement, K: int, A: DilationMatrix
) -> float:
    """Interior deviation at the derived offset a = m.

    Conjugating the induced operator over B^m x by the translation of
    offset m reproduces the induced operator over x; the orientation was
    fixed against :func:`find_orbit_shift`.
    """
    if K <= abs(m) + abs(g.m):
        raise WindowTooSmall("window too small for the requested orbit step")
    y = b_transform(A, x, m)
    moved = induced_operator(y, g, K)
    return interior_deviation(moved.shift_conjugate(m), induced_operator(x, g, K))


def irreducibility_scan(
    x: RealPoint, A: DilationMatrix, M: int = 16
) -> tuple[bool, int | None]:
    """Certify that no dilate of x within |m| <= M returns to x.

    Aperiodicity of the orbit of the character over x is exactly the
    irreducibility criterion for the induced representation; the scan is
    exact for rational-pi points and is a finite certificate only.
    Returns (passed, witness_m).
    """

    def same(a: RealPoint, b: RealPoint) -> bool:
        if a.pi_coords is not None and b.pi_coords is not None:
            return a.pi_coords == b.pi_coords
        return all(abs(p - q) <= 1e-12 for p, q in zip(a.coords, b.coords))

    for m in range(1, M + 1):
        if same(b_transform(A, x, -m), x) or same(b_transform(A, x, m), x):
            return False, m
    return True, None


# --- commutant spot checks ------------------------------------------------------


def multiply_step(
    pieces: list[tuple[Box, complex]], f: ModulatedBoxSum
) -> ModulatedBoxSum:
    """Multiplication by the step function sum of value * indicator(piece)."""
    out = []
    for t in f.terms:
        for box, val in pieces:
            c = t.box.intersect(box)
            if c is not None:
                out.append(Term(t.coef * val, t.beta, c))
    return ModulatedBoxSum(f.A, tuple(out))


def invariant_step_extension(
    pieces: list[tuple[Box, complex]],
    E: BoxSet,
    A: DilationMatrix,
    j_span: int,
) -> list[tuple[Box, complex]]:
    """Spread a step function on E across the dilates of E.

    The extension g(xi) = g0(representative of xi) is constant along
    dilation orbits, which is exactly the commutant membership
    condition g(xi) = g(B xi).
    """
    out = []
    for box, val in pieces:
        for j in range(-j_span, j_span + 1):
            for image in BoxSet(A.n, (box,)).dilate(A, j).boxes:
                out.append((image, val))
    return out


def commutator_with_dilation(
    pieces: list[tuple[Box, complex]], f: ModulatedBoxSum
) -> float:
    """Norm of (M_g D - D M_g) f for the step multiplier g."""
    lhs = multiply_step(pieces, f.dilated(1))
    rhs = multiply_step(pieces, f).dilated(1)
    return ((lhs - rhs).collect().norm_sq()) ** 0.5


def commutator_with_modulation(
    pieces: list[tuple[Box, complex]], v: AdicVector, f: ModulatedBoxSum
) -> float:
    """Norm of (M_g T_v - T_v M_g) f; zero for every multiplier."""
    lhs = multiply_step(pieces, f.modulated(v))
    rhs = multiply_step(pieces, f).modulated(v)
    return ((lhs - rhs).collect().norm_sq()) ** 0.5


def find_noninvariant_witness(
    pieces: list[tuple[Box, complex]],
    A: DilationMatrix,
    j_span: int = 4,
    threshold: float = 0.1,
    within: BoxSet | None = None,
) -> tuple[ModulatedBoxSum, float] | None:
    """Search for a vector exposing a multiplier outside the commutant.

    Tries indicators of the multiplier's pieces and of their dilates;
    returns the first with dilation-commutator norm above the threshold.
    ``within`` restricts candidates to a region (a finitely extended
    multiplier is only scale-invariant inside its extension range).
    """
    candidates = []
    for box, _ in pieces:
        for j in range(-j_span, j_span + 1):
            for image in BoxSet(A.n, (box,)).dilate(A, j).boxes:
                candidates.append(image)
    for box in candidates:
        single = BoxSet(A.n, (box,))
        if within is not None and not single.subtract(within).is_empty:
            continue
        f = ModulatedBoxSum.piecewise(A, [(box, 1.0)])
        norm = commutator_with_dilation(pieces, f)
        if norm > threshold:
            return f, norm
    return None
