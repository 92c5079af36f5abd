import math

import numpy as np
import pytest

from catmew.profile import PhaseProfile, as_profile


def test_constant():
    p = PhaseProfile.constant(0.3)
    assert p(5.0) == 0.3
    np.testing.assert_array_equal(p(np.zeros(3)), [0.3, 0.3, 0.3])


def test_sampled_interpolates_and_clamps():
    p = PhaseProfile.sampled([(0.0, 0.0), (1.0, 2.0), (3.0, 0.0)])
    assert p(0.5) == pytest.approx(1.0)
    assert p(2.0) == pytest.approx(1.0)
    assert p(-10.0) == 0.0
    assert p(10.0) == 0.0
    np.testing.assert_allclose(p(np.array([0.25, 1.0])), [0.5, 2.0])


@pytest.mark.parametrize(
    "nodes", [[(0.0, 1.0)], [(0.0, 1.0), (0.0, 2.0)], [(1.0, 0.0), (0.0, 0.0)], [(0.0, math.nan), (1.0, 0.0)]]
)
def test_sampled_validation(nodes):
    with pytest.raises(ValueError):
        PhaseProfile.sampled(nodes)


def test_bad_kind():
    with pytest.raises(ValueError):
        PhaseProfile(kind="sine")


def test_as_profile():
    p = PhaseProfile.constant(1.0)
    assert as_profile(p) is p
    assert as_profile(2.0)(0.0) == 2.0
