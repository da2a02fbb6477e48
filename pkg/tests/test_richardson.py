"""Order estimation from synthetic residual ladders."""

import pytest

from zetalab.errors import DegenerateLadder
from zetalab.numerics.richardson import estimate_order


def test_clean_second_order():
    h = [0.2, 0.1, 0.05, 0.025]
    r = [3.0 * s**2 for s in h]
    rep = estimate_order(h, r)
    assert abs(rep.estimated_order - 2.0) < 1e-9
    assert not rep.exact_match
    assert not rep.floor_limited


def test_clean_first_order():
    h = [0.2, 0.1, 0.05]
    rep = estimate_order(h, [0.7 * s for s in h])
    assert abs(rep.estimated_order - 1.0) < 1e-9


def test_fourth_order():
    h = [0.4, 0.2, 0.1, 0.05]
    rep = estimate_order(h, [2.0 * s**4 for s in h])
    assert abs(rep.estimated_order - 4.0) < 1e-9


def test_exact_match_at_machine_level():
    rep = estimate_order([0.2, 0.1, 0.05], [1e-15, 8e-16, 5e-16])
    assert rep.exact_match
    assert rep.estimated_order is None
    assert not rep.floor_limited


def test_noise_floor_excludes_fine_rungs():
    # the two finest rungs sit on a 1e-8 floor; the slope must come from
    # the clean coarse rungs and the report must say so
    h = [0.2, 0.1, 0.05, 0.025, 0.0125]
    r = [4e-4, 1e-4, 2.5e-5, 1.2e-8, 1.1e-8]
    rep = estimate_order(h, r, noise_floor=1e-8)
    assert rep.floor_limited
    assert abs(rep.estimated_order - 2.0) < 0.05
    assert rep.noise_floor == 1e-8


def test_identity_satisfied_to_floor_is_exact_match():
    # every rung is already at the declared sampling-noise level: no slope
    # is measurable and the identity counts as satisfied
    rep = estimate_order(
        [0.2, 0.1, 0.05], [2e-9, 1.5e-9, 3e-9], noise_floor=1e-9
    )
    assert rep.exact_match
    assert rep.floor_limited
    assert rep.estimated_order is None


def test_cliff_ladder_raises():
    # one measurable rung and two at roundoff is not a ladder
    with pytest.raises(DegenerateLadder):
        estimate_order([0.2, 0.1, 0.05], [0.5, 1e-16, 1e-16])


def test_validation():
    with pytest.raises(DegenerateLadder):
        estimate_order([0.2, 0.1], [1e-3, 1e-4])
    with pytest.raises(DegenerateLadder):
        estimate_order([0.2, 0.1, 0.05], [1e-3, 1e-4])
    with pytest.raises(DegenerateLadder):
        estimate_order([0.1, 0.1, 0.1], [1e-3, 1e-4, 1e-5])


def test_report_is_immutable_record():
    rep = estimate_order([0.2, 0.1, 0.05], [4e-2, 1e-2, 2.5e-3])
    assert rep.spacings == (0.2, 0.1, 0.05)
    assert len(rep.residual_norms) == 3
