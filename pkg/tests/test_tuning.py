import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from catmew.analytic import output_intensities
from catmew.fock_oracle import beamsplitter_output, evolve_branches
from catmew.tuning import (
    ScanResult,
    estimate_kappa,
    revival_index,
    revival_phase_exact,
    revival_phase_paper,
    scan_chi,
)

PI = math.pi


class TestRevivalPhases:
    @pytest.mark.parametrize(
        "n, kappa, expected", [(1, 0.5, PI), (1, 0.0, 3 * PI / 2), (2, 0.5, 0.0)]
    )
    def test_printed_rule(self, n, kappa, expected):
        assert revival_phase_paper(n, kappa) == pytest.approx(expected, abs=1e-12)

    def test_range(self):
        for n in range(1, 6):
            for kappa in np.linspace(0, 3, 31):
                for f in (revival_phase_paper, revival_phase_exact):
                    assert 0.0 <= f(n, kappa) < 2 * PI

    def test_exact_coincides_at_first_revival(self):
        assert revival_phase_exact(1, 0.5) == pytest.approx(PI, abs=1e-12)

    def test_exact_second_revival(self):
        chi = revival_phase_exact(2, 0.5)
        assert chi == pytest.approx(PI / 2, abs=1e-12)
        i_c, _ = output_intensities(0.5, 4 * PI, chi)
        assert abs(i_c - 1) < 1e-12

    def test_exact_third_revival(self):
        chi = revival_phase_exact(3, 0.7)
        i_c, _ = output_intensities(0.7, 6 * PI, chi)
        assert abs(i_c - 1) < 1e-12

    def test_printed_rule_misses_later_revivals(self):
        i_c, _ = output_intensities(0.5, 4 * PI, revival_phase_paper(2, 0.5))
        assert i_c == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("n", [0, -1, 1.5])
    def test_bad_index(self, n):
        with pytest.raises(ValueError):
            revival_phase_paper(n, 0.5)
        with pytest.raises(ValueError):
            revival_phase_exact(n, 0.5)

    def test_oracle_confirms_tuning(self):
        rec = beamsplitter_output(evolve_branches(0.8, 4 * PI), revival_phase_exact(2, 0.8))
        assert abs(rec.i_c - 1) < 1e-8


@settings(max_examples=200)
@given(kappa=st.floats(0.0, 1.0, exclude_max=True), n=st.integers(1, 5))
def test_exact_rule_full_constructive_interference(kappa, n):
    i_c, i_d = output_intensities(kappa, 2 * PI * n, revival_phase_exact(n, kappa))
    assert abs(i_c - 1) < 1e-12 and abs(i_d) < 1e-12


@given(kappa=st.floats(0.0, 3.0))
def test_rules_agree_at_n1(kappa):
    diff = revival_phase_exact(1, kappa) - revival_phase_paper(1, kappa)
    assert abs(math.remainder(diff, 2 * PI)) < 1e-12


def test_revival_index():
    assert revival_index(2 * PI) == 1
    assert revival_index(6 * PI + 5e-7) == 3
    assert revival_index(PI) is None
    assert revival_index(0.0) is None
    assert revival_index(-2 * PI) is None


class TestScan:
    def test_estimates_kappa(self):
        scan = scan_chi(0.3, 2 * PI, 1e-4)
        assert scan.chi_star == pytest.approx(2 * PI * (0.75 - 0.09), abs=1e-6)
        assert scan.kappa_sq_estimate == pytest.approx(0.09, abs=1e-6)
        assert estimate_kappa(scan) == pytest.approx(0.3, abs=1e-4)

    def test_refinement_beats_grid(self):
        scan = scan_chi(0.3, 2 * PI, 1e-2)
        assert abs(scan.chi_star - 2 * PI * 0.66) < 1e-6 < 1e-2 / 2

    def test_pure_phase_shifter(self):
        scan = scan_chi(0.0, 2 * PI, 1e-3)
        assert scan.chi_star == pytest.approx(3 * PI / 2, abs=1e-6)
        assert scan.contrast_at_star == pytest.approx(1.0, abs=1e-12)

    def test_off_revival(self):
        scan = scan_chi(0.5, PI, 1e-3)
        assert not scan.estimate_valid
        assert math.isnan(scan.kappa_sq_estimate)
        assert scan.contrast_at_star == pytest.approx(math.exp(-0.5), abs=1e-5)
        with pytest.raises(ValueError):
            estimate_kappa(scan)

    def test_argmax_property(self):
        scan = scan_chi(0.77, 2 * PI, 1e-3)
        assert scan.contrast_at_star >= scan.contrast.max()

    def test_offset_invariance(self):
        def shifted(chi):
            i_c, i_d = output_intensities(0.4, 2 * PI, chi)
            return i_c + 0.3, i_d + 0.3

        plain = scan_chi(0.4, 2 * PI, 1e-3)
        offset = scan_chi(0.4, 2 * PI, 1e-3, intensities=shifted)
        assert offset.chi_star == plain.chi_star

    def test_later_revival(self):
        scan = scan_chi(0.6, 4 * PI, 1e-4)
        assert scan.revival_n == 2
        # 2 kappa^2 = 0.72 < 1, so the default branch is right
        assert estimate_kappa(scan) == pytest.approx(0.6, abs=1e-4)

    def test_scan_on_oracle_data(self):
        pair = evolve_branches(0.45, 2 * PI)

        def oracle(chi):
            recs = [beamsplitter_output(pair, c) for c in np.atleast_1d(chi)]
            return np.array([r.i_c for r in recs]), np.array([r.i_d for r in recs])

        scan = scan_chi(0.45, 2 * PI, 1e-2, intensities=oracle)
        assert estimate_kappa(scan) == pytest.approx(0.45, abs=1e-4)

    @pytest.mark.parametrize("step", [0.0, -1e-3, 0.2])
    def test_bad_step(self, step):
        with pytest.raises(ValueError):
            scan_chi(0.3, 2 * PI, step)


def _scan_stub(kappa_sq, n=1):
    return ScanResult(
        chi_star=0.0, contrast_at_star=1.0, kappa_sq_estimate=kappa_sq, grid_step=1e-3,
        estimate_valid=True, revival_n=n, theta=2 * PI * n,
        chi_grid=np.zeros(1), contrast=np.zeros(1),
    )


def test_estimate_branch_hint():
    assert estimate_kappa(_scan_stub(0.25), branch_hint=1) == pytest.approx(1.118034, abs=1e-6)


def test_estimate_zero():
    assert estimate_kappa(_scan_stub(0.0), 0) == 0.0


def test_estimate_rejects_negative_hint():
    with pytest.raises(ValueError):
        estimate_kappa(_scan_stub(0.2), -1)


def test_round_trip_recovers_kappa():
    for kappa in (0.1, 0.3, 0.5, 0.7, 0.9):
        assert abs(estimate_kappa(scan_chi(kappa, 2 * PI, 1e-4)) - kappa) < 1e-3
