import math

import numpy as np
import pytest

from waverep.boxes import interval_set, product_set
from waverep.funcs import ModulatedBoxSum
from waverep.gram import GramSpec, completeness_defect, eval_msf_wavelet, gram_matrix
from waverep.groups import validate_dilation
from waverep.tiling import shannon_set

A2 = validate_dilation([[2]])
E = shannon_set()


def shannon_psi(t: float) -> float:
    # direct Fourier inversion of the normalized Shannon indicator
    if abs(t) < 1e-12:
        return 1.0
    return (math.sin(2 * math.pi * t) - math.sin(math.pi * t)) / (math.pi * t)


class TestWaveletEval:
    def test_value_at_zero(self):
        assert eval_msf_wavelet(E, [0.0]) == pytest.approx(1.0)

    def test_committed_value_at_half(self):
        got = eval_msf_wavelet(E, [0.5])
        assert got.real == pytest.approx(-2 / math.pi)
        assert abs(got.imag) < 1e-12

    def test_matches_closed_form_on_grid(self):
        for t in np.linspace(-3, 3, 41):
            got = eval_msf_wavelet(E, [t])
            assert got.real == pytest.approx(shannon_psi(float(t)), abs=1e-10)

    def test_real_for_symmetric_set(self):
        for t in (0.1, 0.37, 1.93, -2.4):
            assert abs(eval_msf_wavelet(E, [t]).imag) < 1e-12

    def test_tiny_argument_branch(self):
        # removable singularity: continuous through t = 0
        assert eval_msf_wavelet(E, [2.0**-50]) == pytest.approx(1.0)


class TestGram:
    def test_shannon_identity(self):
        res = gram_matrix(GramSpec(E, A2, m_max=2, v_max=8))
        assert res.mode == "closed-form"
        assert res.max_deviation < 1e-12
        assert res.warning is None

    def test_diagonal_exactly_one(self):
        res = gram_matrix(GramSpec(E, A2, m_max=1, v_max=2))
        assert all(res.matrix[i, i] == 1.0 for i in range(len(res.labels)))

    def test_cross_scale_exact_zero(self):
        res = gram_matrix(GramSpec(E, A2, m_max=2, v_max=2))
        for i, (m, v) in enumerate(res.labels):
            for j, (mp, vp) in enumerate(res.labels):
                if m != mp:
                    assert res.matrix[i, j] == 0

    def test_same_scale_lattice_offsets_exact_zero(self):
        res = gram_matrix(GramSpec(E, A2, m_max=0, v_max=6))
        for i, (m, v) in enumerate(res.labels):
            for j, (mp, vp) in enumerate(res.labels):
                if i != j:
                    assert res.matrix[i, j] == 0

    def test_hermitian_with_unit_diagonal(self):
        res = gram_matrix(GramSpec(interval_set([(0, 2)]), A2, m_max=1, v_max=3))
        assert np.array_equal(res.matrix, res.matrix.conj().T)
        assert all(res.matrix[i, i] == 1.0 for i in range(len(res.labels)))

    def test_overlapping_set_fails_with_witness(self):
        res = gram_matrix(GramSpec(interval_set([(0, 2)]), A2, m_max=1, v_max=2))
        assert res.max_deviation > 1e-3
        assert res.warning is not None

    def test_quadrature_oracle_cross_check(self):
        # independent Simpson quadrature for same-scale entries
        res = gram_matrix(GramSpec(E, A2, m_max=2, v_max=8))
        xs = []
        for a, b in ((-2 * math.pi, -math.pi), (math.pi, 2 * math.pi)):
            xs.append(np.linspace(a, b, 5001))
        mu = 2 * math.pi

        def same_scale_entry(w):
            total = 0.0 + 0j
            for grid in xs:
                vals = np.exp(-1j * w * grid)
                from scipy.integrate import simpson

                total += simpson(vals, x=grid)
            return total / mu

        idx = {lab: i for i, lab in enumerate(res.labels)}
        for m in (-2, 0, 1):
            for v in (-8, -3, 0, 2, 8):
                for vp in (-7, 0, 5):
                    i, j = idx[(m, (v,))], idx[(m, (vp,))]
                    assert abs(res.matrix[i, j] - same_scale_entry(v - vp)) < 1e-6

    def test_2d_product_set_gram(self):
        A = validate_dilation([[2, 0], [0, 2]])
        E2 = product_set(E, E)
        res = gram_matrix(GramSpec(E2, A, m_max=1, v_max=1))
        assert res.max_deviation < 1e-12

    def test_quadrature_fallback_non_diagonal(self):
        A = validate_dilation([[0, 2], [2, 0]])
        E2 = product_set(E, E)
        res = gram_matrix(GramSpec(E2, A, m_max=0, v_max=1))
        assert res.mode == "quadrature"
        # coarse quadrature: only a sanity-level agreement is claimed
        assert res.max_deviation < 0.2


class TestCompleteness:
    def test_family_member_zero_defect(self):
        psi_hat = ModulatedBoxSum.indicator(A2, E, 1 / math.sqrt(2 * math.pi))
        d = completeness_defect(E, A2, psi_hat, m_max=1, v_max=3)
        assert abs(d) < 1e-12

    def test_half_indicator_defect_decreases(self):
        f = ModulatedBoxSum.indicator(A2, interval_set([(1, 2)]))
        defects = [completeness_defect(E, A2, f, 0, V) for V in (4, 8, 16, 32)]
        assert all(d1 >= d2 - 1e-12 for d1, d2 in zip(defects, defects[1:]))
        assert all(d > -1e-12 for d in defects)

    def test_half_indicator_frozen_tail_value(self):
        # oracle: defect(V) = (4/pi) * sum of 1/v^2 over odd v > V
        f = ModulatedBoxSum.indicator(A2, interval_set([(1, 2)]))
        d = completeness_defect(E, A2, f, 0, 64)
        tail = (4 / math.pi) * sum(1 / v**2 for v in range(65, 2_000_001, 2))
        assert d == pytest.approx(tail, abs=1e-6)
        assert d == pytest.approx(0.0099464, abs=1e-6)

    def test_out_of_window_function_keeps_norm(self):
        f = ModulatedBoxSum.indicator(A2, E.dilate(A2, 5))
        d = completeness_defect(E, A2, f, 1, 4)
        assert d == pytest.approx(f.norm_sq())
