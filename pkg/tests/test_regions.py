import numpy as np
import pytest

from bcorder.channels import bec, bsc, channel_mi, split_input_pair
from bcorder.probcore import Dist, DomainError, binary_entropy
from bcorder.regions import (
    RatePoint,
    RegionFrontier,
    frontier_contains,
    frontier_csv,
    frontier_distance,
    outer_bound_eq_ob,
    outer_bound_vx,
    superposition_region,
    theorem1_region,
    theorem2_region,
)

BSC_CAP = 1.0 - binary_entropy(0.1)  # capacity of the crossover-0.1 side


def test_rate_point_validation():
    with pytest.raises(DomainError):
        RatePoint(-0.1, 0.2)
    pt = RatePoint(-1e-12, 0.3)  # tiny negatives clamp to zero
    assert pt.r1 == 0.0
    with pytest.raises(DomainError):
        RatePoint(float("nan"), 0.0)


def test_frontier_validation():
    good = (RatePoint(0.0, 0.5), RatePoint(0.5, 0.0))
    RegionFrontier(points=good)
    with pytest.raises(DomainError):
        RegionFrontier(points=())
    with pytest.raises(DomainError):
        RegionFrontier(points=(RatePoint(0.5, 0.0), RatePoint(0.0, 0.5)))  # r1 not sorted
    with pytest.raises(DomainError):
        RegionFrontier(points=(RatePoint(0.0, 0.1), RatePoint(0.5, 0.2)))  # r2 increases


def test_frontier_contains_semantics():
    fr = RegionFrontier(points=(RatePoint(0.0, 0.5), RatePoint(0.5, 0.0)))
    assert frontier_contains(fr, RatePoint(0.2, 0.2))
    assert frontier_contains(fr, RatePoint(0.25, 0.25))  # on the segment
    assert not frontier_contains(fr, RatePoint(0.3, 0.3))
    assert not frontier_contains(fr, RatePoint(0.6, 0.0))  # beyond max r1


def test_frontier_csv_format():
    fr = RegionFrontier(points=(RatePoint(0.0, 0.5), RatePoint(0.5, 0.0)))
    text = frontier_csv(fr)
    lines = text.strip().split("\n")
    assert lines[0] == "r1,r2"
    assert lines[1] == "0.000000000,0.500000000"
    assert len(lines) == 3


def test_frontier_distance_on_shifted_copy():
    pts = (RatePoint(0.0, 0.5), RatePoint(0.3, 0.3), RatePoint(0.5, 0.0))
    fr = RegionFrontier(points=pts)
    assert frontier_distance(fr, fr) == pytest.approx(0.0, abs=1e-15)
    shifted = RegionFrontier(points=tuple(RatePoint(p.r1 + 0.01, p.r2) for p in pts))
    assert frontier_distance(fr, shifted) == pytest.approx(0.01, abs=1e-9)


def test_superposition_corners_dominant_crossover():
    fr = superposition_region(bsc(0.1), bec(0.5), step=0.02)
    assert fr.max_r1 == pytest.approx(BSC_CAP, abs=1e-9)
    assert fr.max_r2 == pytest.approx(0.5, abs=1e-9)


def test_superposition_corners_role_swap():
    # degraded regime: the erasure side carries the private stream
    fr = superposition_region(bec(0.15), bsc(0.1), step=0.02)
    assert fr.max_r1 == pytest.approx(0.85, abs=1e-9)
    assert fr.max_r2 == pytest.approx(BSC_CAP, abs=1e-9)


def test_superposition_identical_channels_is_time_sharing():
    fr = superposition_region(bsc(0.1), bsc(0.1), step=0.1)
    assert len(fr.points) == 2
    assert fr.points[0].as_tuple() == pytest.approx((0.0, BSC_CAP), abs=1e-12)
    assert fr.points[-1].as_tuple() == pytest.approx((BSC_CAP, 0.0), abs=1e-12)


def test_refinement_monotonicity_binary():
    coarse = superposition_region(bsc(0.1), bec(0.5), step=0.04)
    fine = superposition_region(bsc(0.1), bec(0.5), step=0.02)
    for pt in coarse.points:
        assert frontier_contains(fine, pt, tol=1e-12)


def test_refinement_monotonicity_four_letter():
    y1, y2 = split_input_pair()
    coarse = outer_bound_vx(y1, y2, step=0.05)
    fine = outer_bound_vx(y1, y2, step=0.025)
    for pt in coarse.points:
        assert frontier_contains(fine, pt, tol=1e-12)


def test_inner_bound_inside_outer_bounds():
    for p, e in ((0.1, 0.15), (0.1, 0.3), (0.1101, 0.4), (0.1, 0.5)):
        dom, weak = (bsc(p), bec(e)) if e > binary_entropy(p) else (bec(e), bsc(p))
        inner = superposition_region(dom, weak, step=0.04)
        ob = outer_bound_eq_ob(dom, weak, step=0.04)
        vx = outer_bound_vx(dom, weak, step=0.04)
        for pt in inner.points:
            assert frontier_contains(ob, pt, tol=1e-9)
            assert frontier_contains(vx, pt, tol=1e-9)
        for pt in vx.points:
            assert frontier_contains(ob, pt, tol=1e-9)


def test_theorem1_matches_outer_bound_under_dominance():
    inner = theorem1_region(bsc(0.1), bec(0.5), [Dist.uniform(2)], step=0.02)
    outer = outer_bound_eq_ob(bsc(0.1), bec(0.5), step=0.02)
    assert frontier_distance(inner, outer) <= 0.04


def test_theorem1_matches_constrained_superposition_under_dominance():
    # with the dominant receiver ahead on the class, the unconditional cap
    # is implied by the chain rule, so the two descriptions coincide
    uni = Dist.uniform(2)
    t1 = theorem1_region(bsc(0.1), bec(0.5), [uni], step=0.02)
    ib = superposition_region(bsc(0.1), bec(0.5), marginal_constraint=uni, step=0.02)
    assert frontier_distance(t1, ib) <= 1e-9


def test_theorem2_four_letter_corners():
    y1, y2 = split_input_pair()
    u01 = Dist(np.array([0.5, 0.5, 0.0, 0.0]))
    fr = theorem2_region(y1, y2, [u01], step=0.02)
    assert frontier_contains(fr, RatePoint(1.0 - 1e-9, 0.0), tol=1e-9)
    assert frontier_contains(fr, RatePoint(0.0, BSC_CAP - 1e-9), tol=1e-9)
    assert fr.max_r1 == pytest.approx(1.0, abs=1e-9)
    assert fr.max_r2 == pytest.approx(BSC_CAP, abs=1e-9)


def test_degenerate_weak_receiver_pins_private_stream():
    fr = theorem1_region(bsc(0.1), bec(1.0), [Dist.uniform(2)], step=0.05)
    assert len(fr.points) == 1
    assert fr.points[0].as_tuple() == pytest.approx((BSC_CAP, 0.0), abs=1e-9)


def test_degenerate_dominant_receiver_pins_common_stream():
    fr = outer_bound_eq_ob(bec(1.0), bsc(0.1), step=0.05)
    assert fr.max_r1 == pytest.approx(0.0, abs=1e-9)
    assert fr.max_r2 == pytest.approx(BSC_CAP, abs=1e-9)


def test_provenance_revalidates_frontier_points():
    dom, weak = bsc(0.1), bec(0.5)
    fr = superposition_region(dom, weak, step=0.04)
    assert len(fr.provenance) == len(fr.points)
    for pt, dec in zip(fr.points, fr.provenance):
        a = dec.mi_aux(weak)
        b = a + dec.mi_conditional(dom)
        c = channel_mi(dom, dec.induced_marginal())
        assert pt.r2 <= a + 1e-9
        assert pt.r1 + pt.r2 <= min(b, c) + 1e-9


def test_constrained_sweep_respects_marginal():
    target = Dist(np.array([0.3, 0.7]))
    fr = superposition_region(bsc(0.1), bec(0.5), marginal_constraint=target, step=0.04)
    for dec in fr.provenance:
        assert np.max(np.abs(dec.induced_marginal().probs - target.probs)) <= 1e-9
    # constrained region cannot exceed the unconstrained one
    free = superposition_region(bsc(0.1), bec(0.5), step=0.04)
    for pt in fr.points:
        assert frontier_contains(free, pt, tol=1e-9)


def test_diagnostics_reported():
    fr = superposition_region(bsc(0.1), bec(0.5), step=0.04)
    assert fr.diagnostics["num_decompositions"] > 0
    assert fr.diagnostics["num_candidates"] >= len(fr.points)
    assert "aux3_change" in fr.diagnostics


def test_mismatched_inputs_rejected():
    y1, _ = split_input_pair()
    with pytest.raises(DomainError):
        superposition_region(y1, bsc(0.1))
