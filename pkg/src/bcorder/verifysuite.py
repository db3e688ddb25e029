"""Built-in golden-value check suite.

Every check recomputes one family of documented reference numbers from
scratch and compares against frozen expected values.  ``run_suite`` returns
a ``VerifyReport`` whose JSON serialization is byte-identical across runs
for a fixed (grid, seed, tolerance) configuration: nothing in here touches
wall-clock time, filesystem order, or unseeded randomness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .bscbec import BscBecPair, critical_point, d_derivative, d_func, degrading_channel
from .channels import Dmc, bec, bsc, cascade, channel_mi, detect_c_symmetry, split_input_pair, symmetrize
from .classify import (
    AuxDecomposition,
    test_degraded,
    test_dominant_c_symmetry,
    test_essentially_more_capable,
    test_less_noisy,
    test_more_capable,
)
from .probcore import (
    Dist,
    Joint2,
    assemble_joint,
    binary_entropy,
    conditional_mi,
    joint_through_channel,
    mutual_information,
)
from .regions import (
    frontier_contains,
    frontier_distance,
    outer_bound_eq_ob,
    outer_bound_vx,
    superposition_region,
    theorem1_region,
)

__all__ = ["CheckResult", "VerifyReport", "run_suite", "check_names"]


@dataclass(frozen=True)
class CheckResult:
    """One named check: frozen expected values vs recomputed ones."""

    name: str
    anchor: str
    expected: tuple
    computed: tuple
    tolerance: float
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "expected": [float(v) for v in self.expected],
            "computed": [float(v) for v in self.computed],
            "tolerance": float(self.tolerance),
            "passed": bool(self.passed),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of a suite run; serializes deterministically."""

    grid: int
    seed: int
    checks: tuple[CheckResult, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "grid": self.grid,
            "seed": self.seed,
            "all_pass": self.all_pass,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def text_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            comp = ", ".join(f"{v:.10g}" for v in c.computed)
            exp = ", ".join(f"{v:.10g}" for v in c.expected)
            lines.append(f"[{mark}] {c.name}: computed [{comp}] expected [{exp}] tol {c.tolerance:g}")
            if c.detail:
                lines.append(f"       {c.detail}")
        n_pass = sum(c.passed for c in self.checks)
        lines.append(f"{n_pass}/{len(self.checks)} checks passed")
        return lines


def _check_aux_informations(grid: int, seed: int, tol: float) -> CheckResult:
    dec = AuxDecomposition(Dist(np.array([0.5, 0.5])), bsc(0.05).rows)
    i_erasure = dec.mi_aux(bec(0.5))
    i_crossover = dec.mi_aux(bsc(0.1101))
    passed = (
        abs(i_erasure - 0.3568) <= tol
        and abs(i_crossover - 0.3924) <= tol
        and i_erasure < i_crossover
    )
    return CheckResult(
        name="aux-informations",
        anchor="uniform binary auxiliary, crossover-0.05 link: erasure-0.5 receiver "
        "sees 0.3568 bits, crossover-0.1101 receiver sees 0.3924 bits",
        expected=(0.3568, 0.3924),
        computed=(i_erasure, i_crossover),
        tolerance=tol,
        passed=passed,
        detail="the erasure side carries strictly less auxiliary information",
    )


def _regime_label(p: float, e: float) -> int:
    p = min(max(p, 0.0), 0.5)
    e = min(max(e, 0.0), 1.0)
    if e <= 2.0 * p:
        return 0
    if e <= 4.0 * p * (1.0 - p):
        return 1
    if e <= binary_entropy(p):
        return 2
    return 3


def _check_threshold_grid(grid: int, seed: int, tol: float) -> CheckResult:
    n = max(grid, 2)
    dp = 0.5 / n
    de = 1.0 / n
    ps = (np.arange(n) + 0.5) * dp
    es = (np.arange(n) + 0.5) * de
    tested = 0
    mismatches = 0
    for p in ps:
        hp = binary_entropy(p)
        for e in es:
            corners = {
                _regime_label(pc, ec)
                for pc in (p - dp / 2.0, p + dp / 2.0)
                for ec in (e - de / 2.0, e + de / 2.0)
            }
            if len(corners) > 1:
                continue  # a threshold crosses this cell; skip the band
            tested += 1
            chan_b, chan_s = bec(e), bsc(p)
            ok = (
                test_degraded(chan_b, chan_s).holds == (e <= 2.0 * p)
                and test_less_noisy(chan_s, chan_b).holds == (e <= 4.0 * p * (1.0 - p))
                and test_more_capable(chan_b, chan_s).holds == (e <= hp)
                and test_dominant_c_symmetry(chan_s, chan_b).holds == (e > hp)
            )
            if not ok:
                mismatches += 1
    passed = mismatches == 0 and tested > 0
    return CheckResult(
        name="threshold-grid",
        anchor="regime thresholds e = 2p, 4p(1-p), h(p) against the four "
        "numerical ordering tests on an interior cell grid",
        expected=(0.0,),
        computed=(float(mismatches),),
        tolerance=0.0,
        passed=passed,
        detail=f"{tested} non-boundary cells out of {n * n}",
    )


def _check_gap_curve_shape(grid: int, seed: int, tol: float) -> CheckResult:
    pair = BscBecPair(0.1, 0.5)
    d0 = d_func(pair, 0.0)
    d1 = d_func(pair, 1.0)
    dm = d_func(pair, 0.5)
    r = critical_point(pair)
    r_val = float(r) if r is not None else -1.0
    dr = d_func(pair, r_val) if r is not None else 1.0
    ddr = d_derivative(pair, r_val) if r is not None else 1.0
    xs = np.linspace(0.0, 1.0, 2001)
    argmax_x = float(xs[int(np.argmax(d_func(pair, xs)))])
    passed = (
        abs(d0) <= 1e-12
        and abs(d1) <= 1e-12
        and abs(dm - 0.031004406410718777) <= tol
        and r is not None
        and 0.0 < r_val < 0.5
        and abs(ddr) < 1e-10
        and dr < 0.0
        and abs(argmax_x - 0.5) <= 1e-3
    )
    return CheckResult(
        name="gap-curve-shape",
        anchor="gap curve at (p, e) = (0.1, 0.5): zero endpoints, maximum "
        "0.0310 at one half, interior stationary point with a negative value",
        expected=(0.0, 0.0, 0.031004406410718777, 0.05410066396563103, -0.02801306270957621, 0.0),
        computed=(d0, d1, dm, r_val, dr, ddr),
        tolerance=tol,
        passed=passed,
        detail=f"dense-grid argmax at x = {argmax_x:.6f}",
    )


def _check_derivative(grid: int, seed: int, tol: float) -> CheckResult:
    rng = np.random.default_rng(seed)
    xs = np.arange(1, 98) / 98.0
    h = 1e-6
    worst = 0.0
    for _ in range(20):
        p = rng.uniform(0.02, 0.48)
        e = rng.uniform(0.02, 0.98)
        pair = BscBecPair(p, e)
        fd = (d_func(pair, xs + h) - d_func(pair, xs - h)) / (2.0 * h)
        worst = max(worst, float(np.max(np.abs(d_derivative(pair, xs) - fd))))
    return CheckResult(
        name="derivative-check",
        anchor="closed-form gap derivative vs centered finite differences, "
        "97 interior points, 20 seeded (p, e) pairs",
        expected=(0.0,),
        computed=(worst,),
        tolerance=tol,
        passed=worst <= tol,
    )


def _check_degrading_cascade(grid: int, seed: int, tol: float) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    worst_resid = 0.0
    holds = 0
    for _ in range(20):
        p = rng.uniform(0.05, 0.45)
        e = rng.uniform(0.0, 2.0 * p)
        w = degrading_channel(BscBecPair(p, e))
        resid = float(np.max(np.abs(cascade(bec(e), w).rows - bsc(p).rows)))
        worst_resid = max(worst_resid, resid)
        if test_degraded(bec(e), bsc(p)).holds:
            holds += 1
    fails = 0
    for _ in range(20):
        p = rng.uniform(0.05, 0.45)
        e = rng.uniform(2.0 * p + 0.02, 1.0)
        if test_degraded(bec(e), bsc(p)).fails:
            fails += 1
    passed = worst_resid <= tol and holds == 20 and fails == 20
    return CheckResult(
        name="degrading-cascade",
        anchor="erasure-to-crossover intermediate channel exists exactly when "
        "e <= 2p; cascade reproduces the crossover rows",
        expected=(0.0, 20.0, 20.0),
        computed=(worst_resid, float(holds), float(fails)),
        tolerance=tol,
        passed=passed,
    )


def _cond_mi_brute(pu: np.ndarray, rows: np.ndarray, chan: Dmc) -> float:
    # independent route: direct entropy sums over the full triple joint
    t = np.einsum("u,ux,xy->uxy", pu, rows, chan.rows)
    total = 0.0
    for u in range(t.shape[0]):
        blk = t[u]
        mass = blk.sum()
        if mass < 1e-15:
            continue
        px = blk.sum(axis=1)
        py = blk.sum(axis=0)
        for i in range(blk.shape[0]):
            for j in range(blk.shape[1]):
                if blk[i, j] > 1e-15:
                    total += blk[i, j] * np.log2(blk[i, j] * mass / (px[i] * py[j]))
    return float(total)


def _check_symmetrization(grid: int, seed: int, tol: float) -> CheckResult:
    chan_a, chan_b = bsc(0.1), bec(0.5)
    wit_a = detect_c_symmetry(chan_a)
    wit_b = detect_c_symmetry(chan_b)
    rng = np.random.default_rng(seed + 2)
    worst = 0.0
    for _ in range(100):
        k = int(rng.integers(1, 4))
        table = rng.gamma(1.0, 1.0, size=(k, 2))
        joint = Joint2(table / table.sum())
        sym = symmetrize(joint, wit_a, wit_b)
        marg = sym.joint.col_marginal().probs
        worst = max(worst, float(np.max(np.abs(marg - 0.5))))
        pu = joint.row_marginal()
        conds = joint.conditionals()
        pu_s = sym.joint.row_marginal()
        conds_s = sym.joint.conditionals()
        px = joint.col_marginal().probs
        for chan in (chan_a, chan_b):
            i_aux = mutual_information(joint_through_channel(joint, chan))
            i_aux_s = mutual_information(joint_through_channel(sym.joint, chan))
            worst = max(worst, i_aux - i_aux_s)  # must not lose information
            i_cond = conditional_mi(assemble_joint(pu, conds, chan))
            i_cond_s = conditional_mi(assemble_joint(pu_s, conds_s, chan))
            worst = max(worst, abs(i_cond - i_cond_s))
            base = mutual_information(Joint2(px[:, None] * chan.rows))
            for j in range(sym.num_shifts):
                blk_px = sym.conditional_given_shift(j).col_marginal().probs
                i_blk = mutual_information(Joint2(blk_px[:, None] * chan.rows))
                # per-shift blocks relabel X, so X;Y information is preserved
                worst = max(worst, abs(i_blk - base))
    return CheckResult(
        name="symmetrization",
        anchor="cyclic-shift symmetrization: exactly uniform input marginal, "
        "auxiliary information never drops, conditional information preserved",
        expected=(0.0,),
        computed=(worst,),
        tolerance=tol,
        passed=worst <= tol,
        detail="100 seeded joints, binary input, auxiliary size up to 3",
    )


def _check_conditional_gap(grid: int, seed: int, tol: float) -> CheckResult:
    eps = 0.01
    pu = np.array([0.5, 0.5])
    rows = np.array([[eps, 1.0 - eps], [1.0 - eps, eps]])
    dec = AuxDecomposition(Dist(pu), rows)
    gap = dec.mi_conditional(bec(0.5)) - dec.mi_conditional(bsc(0.1))
    brute = _cond_mi_brute(pu, rows, bec(0.5)) - _cond_mi_brute(pu, rows, bsc(0.1))
    agreement = abs(gap - brute)
    golden = 0.015538437837716246
    passed = gap > 0.0 and abs(gap - golden) <= 1e-9 and agreement <= tol
    return CheckResult(
        name="conditional-gap",
        anchor="near-deterministic binary auxiliary (eps = 0.01) leaves a "
        "strictly positive conditional-information gap at (0.1, 0.5)",
        expected=(golden, 0.0),
        computed=(gap, agreement),
        tolerance=tol,
        passed=passed,
        detail="second value is the disagreement against a brute-force oracle",
    )


def _check_four_letter_pair(grid: int, seed: int, tol: float) -> CheckResult:
    y1, y2 = split_input_pair()
    u23 = Dist(np.array([0.0, 0.0, 0.5, 0.5]))
    u01 = Dist(np.array([0.5, 0.5, 0.0, 0.0]))
    gap23 = channel_mi(y2, u23) - channel_mi(y1, u23)
    target = 1.0 - binary_entropy(0.4)
    emc_01 = test_essentially_more_capable(y1, y2, [u01], step=0.02, seed=0)
    emc_23 = test_essentially_more_capable(y1, y2, [u23], step=0.02, seed=0)
    passed = abs(gap23 - target) <= tol and emc_01.holds and emc_23.fails
    return CheckResult(
        name="four-letter-pair",
        anchor="four-input pair: on support {2,3} the weak receiver leads by "
        "1 - h(0.4); on support {0,1} the dominant receiver stays ahead",
        expected=(target, 1.0, 0.0),
        computed=(gap23, float(emc_01.holds), float(emc_23.holds)),
        tolerance=tol,
        passed=passed,
    )


def _check_capacity_coincidence(grid: int, seed: int, tol: float) -> CheckResult:
    step = 1.0 / max(grid, 10)
    slack = 2.0 * step
    chan_a, chan_b = bsc(0.1), bec(0.5)
    inner = theorem1_region(chan_a, chan_b, [Dist.uniform(2)], step=step)
    outer = outer_bound_eq_ob(chan_a, chan_b, step=step)
    dist = frontier_distance(inner, outer)
    r1_cap = 1.0 - binary_entropy(0.1)
    corner_err = max(
        abs(inner.max_r1 - r1_cap),
        abs(outer.max_r1 - r1_cap),
        abs(inner.max_r2 - 0.5),
        abs(outer.max_r2 - 0.5),
    )
    passed = dist <= slack and corner_err <= step
    return CheckResult(
        name="capacity-coincidence",
        anchor="one-auxiliary inner frontier meets the outer bound for "
        "(0.1, 0.5); corners at (1 - h(0.1), 0) and (0, 0.5)",
        expected=(0.0, 0.0),
        computed=(dist, corner_err),
        tolerance=slack,
        passed=passed,
        detail=f"step {step:g}, corner slack {step:g}",
    )


def _seeded_regime_pairs(rng: np.random.Generator, count: int) -> list[tuple[float, float]]:
    """(p, e) pairs cycling through the four regimes, away from thresholds."""
    pairs = []
    for i in range(count):
        p = rng.uniform(0.08, 0.42)
        t1 = 2.0 * p
        t2 = 4.0 * p * (1.0 - p)
        t3 = binary_entropy(p)
        regime = i % 4
        if regime == 0:
            lo, hi = 0.0, t1
        elif regime == 1:
            lo, hi = t1, t2
        elif regime == 2:
            lo, hi = t2, t3
        else:
            lo, hi = t3, 1.0
        width = hi - lo
        e = rng.uniform(lo + 0.1 * width, hi - 0.1 * width)
        pairs.append((p, e))
    return pairs


def _uncontained(inner, outer, tol: float) -> int:
    return sum(1 for pt in inner.points if not frontier_contains(outer, pt, tol=tol))


def _check_region_containments(grid: int, seed: int, tol: float) -> CheckResult:
    step = 1.0 / max(grid, 10)
    rng = np.random.default_rng(seed + 3)
    bad_ob = 0
    bad_vx = 0
    for p, e in _seeded_regime_pairs(rng, 10):
        chan_s, chan_b = bsc(p), bec(e)
        if e > binary_entropy(p):
            dom, weak = chan_s, chan_b
        else:
            dom, weak = chan_b, chan_s
        inner = superposition_region(dom, weak, step=step)
        bad_ob += _uncontained(inner, outer_bound_eq_ob(dom, weak, step=step), tol)
        bad_vx += _uncontained(inner, outer_bound_vx(dom, weak, step=step), tol)
    passed = bad_ob == 0 and bad_vx == 0
    return CheckResult(
        name="region-containments",
        anchor="superposition frontier sits inside both outer bounds on 10 "
        "seeded pairs spanning all four regimes",
        expected=(0.0, 0.0),
        computed=(float(bad_ob), float(bad_vx)),
        tolerance=tol,
        passed=passed,
    )


def _check_ordering_hierarchy(grid: int, seed: int, tol: float) -> CheckResult:
    rng = np.random.default_rng(seed + 5)
    violations = 0
    instances = 0
    for _ in range(12):
        p = rng.uniform(0.05, 0.45)
        e = rng.uniform(0.0, 2.0 * p)
        chan_b, chan_s = bec(e), bsc(p)
        if test_degraded(chan_b, chan_s).holds:
            instances += 1
            # degradedness of the crossover side implies the erasure side is
            # less noisy (convexity direction) and more capable (gap sign)
            if not test_less_noisy(chan_s, chan_b).holds:
                violations += 1
            if not test_more_capable(chan_b, chan_s).holds:
                violations += 1
    labels = ("0", "1", "2")
    for _ in range(3):
        a = Dmc.normalized(rng.gamma(1.0, 1.0, size=(3, 3)), labels)
        w = Dmc.normalized(rng.gamma(1.0, 1.0, size=(3, 3)), labels)
        b = cascade(a, w)
        if test_degraded(a, b).holds:
            instances += 1
            if not test_less_noisy(b, a).holds:
                violations += 1
            if not test_more_capable(a, b).holds:
                violations += 1
    passed = violations == 0 and instances > 0
    return CheckResult(
        name="ordering-hierarchy",
        anchor="whenever the cascade test holds, the convexity test and the "
        "gap-sign test hold in the implied directions",
        expected=(0.0,),
        computed=(float(violations),),
        tolerance=0.0,
        passed=passed,
        detail=f"{instances} degraded instances exercised",
    )


_CHECKS: tuple[tuple[str, float, object], ...] = (
    ("aux-informations", 5e-4, _check_aux_informations),
    ("threshold-grid", 0.0, _check_threshold_grid),
    ("gap-curve-shape", 1e-6, _check_gap_curve_shape),
    ("derivative-check", 1e-6, _check_derivative),
    ("degrading-cascade", 1e-12, _check_degrading_cascade),
    ("symmetrization", 1e-10, _check_symmetrization),
    ("conditional-gap", 1e-12, _check_conditional_gap),
    ("four-letter-pair", 1e-9, _check_four_letter_pair),
    ("capacity-coincidence", 0.0, _check_capacity_coincidence),
    ("region-containments", 1e-9, _check_region_containments),
    ("ordering-hierarchy", 0.0, _check_ordering_hierarchy),
)


def check_names() -> list[str]:
    return [name for name, _, _ in _CHECKS]


def run_suite(
    grid: int = 32,
    seed: int = 0,
    only: str | None = None,
    tolerance: float | None = None,
) -> VerifyReport:
    """Run the named checks (all by default) and collect a report.

    ``grid`` sizes the threshold map and the region sweep steps (1/grid).
    ``tolerance`` overrides every selected check's default tolerance; the
    quoted reference values are rounded to a few decimals, so a very tight
    override (say 1e-12) makes those checks fail by design.
    """
    if only is not None and only not in check_names():
        raise ValueError(f"unknown check name: {only!r} (see check_names())")
    results = []
    for name, default_tol, fn in _CHECKS:
        if only is not None and name != only:
            continue
        tol = default_tol if tolerance is None else tolerance
        results.append(fn(grid, seed, tol))
    return VerifyReport(grid=grid, seed=seed, checks=tuple(results))
