"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

The exhaustive and randomized corpora are solved once per module and shared
by the criteria that inspect them.
"""

import random
import time

import pytest

from indmatch.branching import branching_number
from indmatch.dp import DPTrace, solve_dp, solve_dp_relaxed
from indmatch.generators import all_graphs, erdos_renyi, grid_graph, path_graph, petersen_graph
from indmatch.oracle import brute_force_ind, brute_force_min_size
from indmatch.pathdecomp import (
    PathDecomposition,
    base_decompose,
    degree3_width_bound,
    make_nice,
    validate,
    validate_nice,
)
from indmatch.pipeline import solve_extend, solve_ind

SEED = 2024
RANDOM_GRAPHS = 500
LEAF_BASE = 1.749


def report(capsys, number, name, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {number} [{name}]: {'PASS' if ok else 'FAIL'} ({detail})")


class Audit:
    """Collects decomposition and DP checks made while solving a corpus."""

    def __init__(self):
        self.decompositions = 0
        self.invalid = []
        self.bounded = 0
        self.over_bound = []
        self.dp_checked = 0
        self.dp_mismatch = []

    def hook(self, ind_mode):
        def check(sub, npd, budget, info):
            self.decompositions += 1
            if not (validate_nice(sub, npd) and validate(sub, npd.as_path_decomposition())):
                self.invalid.append(sub.edges())
            # only IND leaves carry a budget for which the width bound is claimed
            if ind_mode and sub.n <= 15:
                self.bounded += 1
                if npd.width > degree3_width_bound(budget):
                    self.over_bound.append((sub.edges(), budget, npd.width))
        return check

    def check_dp(self, g, opt):
        self.dp_checked += 1
        size, sol = solve_dp(g, make_nice(base_decompose(g)))
        if size != opt or not sol.is_valid_for(g):
            self.dp_mismatch.append((g.edges(), size, opt))


@pytest.fixture(scope="module")
def exhaustive():
    audit = Audit()
    hook = audit.hook(True)
    mismatches, graphs, runs = [], 0, 0
    start = time.perf_counter()
    for n in range(7):
        for g in all_graphs(n):
            graphs += 1
            opt = brute_force_min_size(g)
            audit.check_dp(g, opt)
            for k in range(7):
                runs += 1
                ans = solve_ind(g, k, decomposition_hook=hook)
                expected = brute_force_ind(g, k)
                ok = ans.decision == (expected is not None)
                if ans.decision:
                    ok = ok and ans.solution.size <= k and ans.solution.is_valid_for(g)
                if not ok:
                    mismatches.append((g.edges(), k, ans.decision))
    return {"graphs": graphs, "runs": runs, "mismatches": mismatches, "audit": audit,
            "seconds": time.perf_counter() - start}


@pytest.fixture(scope="module")
def randomized():
    audit = Audit()
    ind_hook, ext_hook = audit.hook(True), audit.hook(False)
    rng = random.Random(SEED)
    mismatches, leaf_excess, runs = [], [], 0
    for i in range(RANDOM_GRAPHS):
        n = rng.randint(1, 16)
        p = rng.choice((0.15, 0.3, 0.5))
        g = erdos_renyi(n, p, rng)
        opt = brute_force_min_size(g)
        audit.check_dp(g, opt)
        ext = solve_extend(g, decomposition_hook=ext_hook)
        if ext.size != opt or not ext.solution.is_valid_for(g):
            mismatches.append(("extend", i, ext.size, opt))
        for k in range(max(opt - 1, 0), opt + 2):
            runs += 1
            ans = solve_ind(g, k, decomposition_hook=ind_hook)
            if ans.decision != (brute_force_ind(g, k) is not None):
                mismatches.append(("ind", i, k, ans.decision))
            elif ans.decision and not (ans.solution.size <= k and ans.solution.is_valid_for(g)):
                mismatches.append(("certificate", i, k))
            if ans.stats.search.leaves > LEAF_BASE ** k:
                leaf_excess.append((i, k, ans.stats.search.leaves))
    return {"runs": runs, "mismatches": mismatches, "leaf_excess": leaf_excess, "audit": audit}


def test_criterion_1_exhaustive_oracle_equivalence(exhaustive, capsys):
    ok = not exhaustive["mismatches"]
    report(capsys, 1, "exhaustive oracle equivalence, n<=6, k=0..6", ok,
           f"{exhaustive['graphs']} graphs, {exhaustive['runs']} runs, "
           f"{len(exhaustive['mismatches'])} mismatches, {exhaustive['seconds']:.0f}s")
    assert ok, exhaustive["mismatches"][:5]


def test_criterion_2_randomized_oracle_equivalence(randomized, capsys):
    ok = not randomized["mismatches"]
    report(capsys, 2, "randomized oracle equivalence", ok,
           f"{RANDOM_GRAPHS} graphs, seed {SEED}, {randomized['runs']} decision runs, "
           f"{len(randomized['mismatches'])} mismatches")
    assert ok, randomized["mismatches"][:5]


def test_criterion_3_branching_numbers(capsys):
    cases = [((1, 3), 1.4656), ((1, 4, 4, 4, 4), 1.7485), ((1, 5), 1.3247), ((1, 6, 6, 6, 6), 1.5098)]
    got = [(vec, branching_number(vec), want) for vec, want in cases]
    ok = all(abs(x - want) <= 1e-3 for _, x, want in got)
    detail = ", ".join(f"{vec}->{x:.6f}" for vec, x, _ in got)
    report(capsys, 3, "branching numbers within 1e-3", ok, detail)
    assert ok


def test_criterion_4_leaf_count_bound(randomized, capsys):
    ok = not randomized["leaf_excess"]
    report(capsys, 4, f"leaves <= {LEAF_BASE}^k", ok,
           f"{randomized['runs']} runs, {len(randomized['leaf_excess'])} over the bound")
    assert ok, randomized["leaf_excess"][:5]


def test_criterion_5_degree3_gate(capsys):
    g = petersen_graph()
    neg = solve_ind(g, 3)
    opt = brute_force_min_size(g)
    pos = solve_ind(g, opt)
    ok = (not neg.decision and neg.stats.gate_rejections >= 1 and neg.stats.dp_calls == 0
          and brute_force_ind(g, 3) is None
          and pos.decision and pos.solution.size <= opt and pos.solution.is_valid_for(g)
          and brute_force_ind(g, opt) is not None)
    report(capsys, 5, "degree-3 gate on Petersen", ok,
           f"k=3: {'yes' if neg.decision else 'no'} with {neg.stats.dp_calls} DP calls; "
           f"k={opt}: {'yes' if pos.decision else 'no'}")
    assert ok


def test_criterion_6_decomposition_validity(exhaustive, randomized, capsys):
    audits = [exhaustive["audit"], randomized["audit"]]
    total = sum(a.decompositions for a in audits)
    invalid = [x for a in audits for x in a.invalid]
    bounded = sum(a.bounded for a in audits)
    over = [x for a in audits for x in a.over_bound]
    ok = total > 0 and not invalid and not over
    report(capsys, 6, "decomposition validity and width bound", ok,
           f"{total} decompositions, {len(invalid)} invalid; "
           f"{bounded} bound checks, {len(over)} over ceil(2.5k/6)+2")
    assert ok, (invalid[:3], over[:3])


def test_criterion_7_forget_rule_ablation(exhaustive, randomized, capsys):
    p3 = path_graph(3)
    decompositions = [
        make_nice(base_decompose(p3)),
        make_nice(PathDecomposition([{1, 2}, {2, 3}])),
        make_nice(PathDecomposition([{2, 3}, {1, 2}])),
        make_nice(PathDecomposition([{1, 2, 3}])),
    ]
    literal = sorted({solve_dp_relaxed(p3, npd)[0] for npd in decompositions})
    oracle = brute_force_min_size(p3)
    checked = exhaustive["audit"].dp_checked + randomized["audit"].dp_checked
    mismatched = exhaustive["audit"].dp_mismatch + randomized["audit"].dp_mismatch
    literal_ok = literal == [0] and oracle == 1
    corrected_ok = not mismatched
    report(capsys, 7, "forget-rule ablation", literal_ok and corrected_ok,
           f"literal rule on P3 gives {literal} (stated expectation 0), oracle {oracle}; "
           f"corrected rule matches oracle on {checked - len(mismatched)}/{checked} graphs")
    assert corrected_ok, mismatched[:5]
    assert literal_ok, f"literal forget rule returns {literal} on P3, expected 0"


def _grid_decomposition(rows, cols):
    # row-major ids: a window of cols + 1 consecutive ids covers every grid edge
    n = rows * cols
    return PathDecomposition([set(range(i, i + cols + 1)) for i in range(1, n - cols + 1)])


def test_criterion_8_dp_scaling(capsys, tmp_path):
    rows = 10
    points, ratios = [], []
    for w in range(2, 9):
        g = grid_graph(rows, w)
        pd = _grid_decomposition(rows, w)
        assert validate(g, pd) and pd.width == w
        npd = make_nice(pd)
        trace = DPTrace()
        best = None
        for _ in range(3):
            start = time.perf_counter()
            solve_dp(g, npd, trace=trace)
            elapsed = time.perf_counter() - start
            best = elapsed if best is None else min(best, elapsed)
        per_node = best / len(npd)
        points.append((w, best))
        ratios.append(per_node / 3 ** w)
    ratios = [r / ratios[0] for r in ratios]
    # logged only: the model is an upper bound, so the check is measured <= 4x model
    ok = max(ratios) <= 4
    try:
        from indmatch.report import plot_dp_scaling
        plot_dp_scaling(points, tmp_path / "dp_scaling.png")
    except ImportError:
        pass
    detail = " ".join(f"p={w}:{t * 1000:.1f}ms/x{r:.2f}" for (w, t), r in zip(points, ratios))
    report(capsys, 8, "DP time vs 3^p model, logged not asserted", ok,
           f"per-node time relative to 3^p normalised at p=2: {detail}")
