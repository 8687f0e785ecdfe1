import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fairmatch.approx import (RoundState, probe_alpha_positive, probe_beta_limited, run_round,
                              solve_alpha_positive, solve_beta_limited)
from fairmatch.graph import ColoredGraph, FairnessSpec, Matching, is_balanced, random_graph
from fairmatch.oracle import brute_force_opt

from conftest import colored_graphs, disjoint_edges, path_graph, star

F = Fraction


def vertex_disjoint(g, indices):
    ends = [x for i in indices for x in g.edges[i][:2]]
    return len(ends) == len(set(ends))


def components_graph(rng, parts, size, ell, p):
    """Disjoint union of ``parts`` random graphs on ``size`` vertices each."""
    edges = []
    for b in range(parts):
        base = b * size
        for u in range(size):
            for v in range(u + 1, size):
                if rng.random() < p:
                    edges.append((base + u, base + v, rng.randrange(ell)))
    return ColoredGraph(parts * size, tuple(edges), ell)


# ---- run_round ---------------------------------------------------------------

def test_round_takes_two_disjoint_edges():
    g = disjoint_edges([0, 1])
    s = run_round(RoundState.initial(g))
    assert s.matched == (0, 1) and not s.residual


def test_round_on_triangle_takes_only_color_one():
    g = ColoredGraph(3, ((0, 1, 0), (1, 2, 1), (0, 2, 2)), 3)
    s = run_round(RoundState.initial(g))
    assert s.matched == (0,) and not s.residual


def test_round_on_alternating_path():
    # hand trace: color 1 takes edge 0, killing edge 1; color 2's first free edge is 3
    g = path_graph([0, 1, 0, 1, 0])
    s = run_round(RoundState.initial(g))
    assert s.matched == (0, 3)
    assert s.residual == frozenset()


def test_round_on_empty_residual_is_identity():
    g = disjoint_edges([0])
    s = RoundState(g, frozenset(), (0,))
    assert run_round(s) == s


@settings(max_examples=200, deadline=None)
@given(colored_graphs(max_vertices=10, max_colors=4, max_edges=20))
def test_round_invariants(g):
    state = RoundState.initial(g)
    while state.residual:
        nxt = run_round(state)
        added = nxt.matched[len(state.matched):]
        assert 1 <= len(added) <= g.num_colors
        assert len({g.edges[i][2] for i in added}) == len(added)
        assert nxt.residual <= state.residual
        assert vertex_disjoint(g, nxt.matched)
        used = {x for i in nxt.matched for x in g.edges[i][:2]}
        assert all(g.edges[j][0] not in used and g.edges[j][1] not in used for j in nxt.residual)
        state = nxt


def test_stop_at_truncates_mid_round():
    g = disjoint_edges([0, 1, 2, 3])
    s = run_round(RoundState.initial(g), stop_at=2)
    assert s.matched == (0, 1)


# ---- alpha > 0 ---------------------------------------------------------------

@pytest.mark.parametrize("ell", [1, 2, 3, 5])
def test_disjoint_rainbow_instance(ell):
    g = disjoint_edges(list(range(ell)))
    r = solve_alpha_positive(g, FairnessSpec(F(1, ell), F(1, ell)))
    assert r.size == ell
    assert r.fractions == (F(1, ell),) * ell


def test_star_has_no_answer():
    assert solve_alpha_positive(star([0, 1, 2]), FairnessSpec(F(1, 6), F(1, 3))) is None


def test_alpha_zero_is_a_contract_violation():
    with pytest.raises(ValueError, match="solve_beta_limited"):
        solve_alpha_positive(disjoint_edges([0]), FairnessSpec(F(0), F(1)))


def _check_alpha_bounds(g, spec, report, opt):
    ell = g.num_colors
    slack = 1 + F(4 * ell, opt)
    assert report.size >= math.ceil(F(opt, 4 * ell))
    assert all(spec.alpha / slack <= f <= spec.beta * slack for f in report.fractions)


@pytest.mark.parametrize("seed", range(60))
def test_alpha_positive_bounds_against_oracle(seed):
    rng = random.Random(seed)
    n, ell = rng.randint(4, 14), rng.choice((2, 3))
    g = random_graph(n, ell, F(rng.choice((3, 6)), 10), seed)
    if g.num_edges > 40:
        return
    alpha = rng.choice((F(1, 2 * ell), F(1, ell)))
    spec = FairnessSpec(alpha, rng.choice([b for b in (F(1, ell), F(2, ell)) if b >= alpha]))
    opt = brute_force_opt(g, spec, max_edges=None).opt_size
    report = solve_alpha_positive(g, spec)
    if opt == 0:
        return
    assert report is not None
    _check_alpha_bounds(g, spec, report, opt)
    assert report.certified_lower <= min(report.fractions)
    assert max(report.fractions) <= report.certified_upper


@pytest.mark.parametrize("seed", range(8))
def test_alpha_positive_beyond_small_opt_regime(seed):
    # OPT > 4*l^2 = 16 so the round-based branch runs
    rng = random.Random(100 + seed)
    g = components_graph(rng, parts=12, size=4, ell=2, p=0.7)
    spec = FairnessSpec(F(1, 4), F(3, 4))
    opt = brute_force_opt(g, spec, max_edges=None).opt_size
    assert opt > 16
    probes = {p.T: p for p in probe_alpha_positive(g, spec)}
    # for 4l^2 < T <= OPT the rounds never run dry: exactly ceil(T/4l) edges
    for T in range(17, opt + 1):
        assert probes[T].report.size == math.ceil(F(T, 8))
    report = solve_alpha_positive(g, spec)
    assert all(report.certified_lower <= f <= report.certified_upper for f in report.fractions)


def test_truncated_round_can_sink_the_optimal_guess():
    # 42 disjoint edges, 14 per color, shares exactly 1/3: OPT = 42 > 4*l^2 = 36.
    # For 36 < T <= 42 the candidate is the rainbow triple plus one color-1 edge,
    # shares (1/2, 1/4, 1/4), and 1/4 < (1/3) / (1 + 12/T): every such guess is
    # discarded and only the 3-edge rainbow matching survives, below ceil(42/12) = 4.
    g = disjoint_edges([c for c in range(3) for _ in range(14)])
    spec = FairnessSpec(F(1, 3), F(1, 3))
    assert brute_force_opt(g, spec, max_edges=None).opt_size == 42
    probes = {p.T: p for p in probe_alpha_positive(g, spec)}
    assert probes[42].report.size == 4 and probes[42].discarded
    report = solve_alpha_positive(g, spec)
    assert report.size == 3 and report.probed_T == 36


@settings(max_examples=100, deadline=None)
@given(colored_graphs(max_vertices=10, max_colors=3, max_edges=18, min_edges=1),
       st.sampled_from([(1, 6), (1, 3), (1, 4)]), st.sampled_from([(1, 2), (2, 3), (1, 1)]))
def test_reports_always_certified(g, a, b):
    spec = FairnessSpec(F(*a), max(F(*a), F(*b)))
    for p in probe_alpha_positive(g, spec):
        rep = p.report
        inside = all(rep.certified_lower <= f <= rep.certified_upper for f in rep.fractions)
        assert p.discarded == (not inside)
        assert vertex_disjoint(g, rep.matching.edge_indices)
    r = solve_alpha_positive(g, spec)
    if r is not None:
        assert all(r.certified_lower <= f <= r.certified_upper for f in r.fractions)


# ---- beta-limited ------------------------------------------------------------

def test_single_edge_beta_limited():
    g = disjoint_edges([0])
    r = solve_beta_limited(g, FairnessSpec(F(0), F(1)))
    assert r.matching.edge_indices == {0} and r.fractions == (F(1),)


@pytest.mark.parametrize("k", [2, 4, 6, 9, 12])
def test_monochromatic_path(k):
    g = path_graph([0] * (2 * k - 1))
    assert brute_force_opt(g, FairnessSpec(F(0), F(1)), max_edges=None).opt_size == k
    r = solve_beta_limited(g, FairnessSpec(F(0), F(1)))
    assert r.size >= F(k, 2) - 1


def test_edgeless_graph():
    assert solve_beta_limited(ColoredGraph(3, (), 2), FairnessSpec(F(0), F(1))) is None


def test_beta_limited_requires_alpha_zero():
    with pytest.raises(ValueError):
        solve_beta_limited(disjoint_edges([0]), FairnessSpec(F(1, 2), F(1)))


def _check_beta_probes(g, spec, opt):
    ell = g.num_colors
    probes = {p.T: p for p in probe_beta_limited(g, spec)}
    if opt > 2 * ell:
        # the capped rounds reach OPT/(2l) - 1 edges when T = OPT
        assert probes[opt].report.size >= F(opt, 2 * ell) - 1
    for p in probes.values():
        if p.report is not None:
            shares = p.report.fractions
            assert p.discarded == (max(shares) > p.report.certified_upper)
            assert all(x <= math.ceil(spec.beta * F(p.T, 2 * ell)) or p.T <= 2 * ell
                       for x in p.report.matching.color_counts)
    report = solve_beta_limited(g, spec)
    if report is not None:
        assert max(report.fractions) <= report.certified_upper


@pytest.mark.parametrize("seed", range(60))
def test_beta_limited_bounds_against_oracle(seed):
    rng = random.Random(seed)
    n, ell = rng.randint(4, 14), rng.choice((2, 3, 4))
    g = random_graph(n, ell, F(rng.choice((3, 6)), 10), seed)
    if g.num_edges == 0 or g.num_edges > 40:
        return
    spec = FairnessSpec(F(0), rng.choice((F(1, 2), F(1, 3))))
    opt = brute_force_opt(g, spec, max_edges=None).opt_size
    if opt == 0:
        return
    _check_beta_probes(g, spec, opt)


@pytest.mark.parametrize("seed", range(8))
def test_beta_limited_beyond_small_opt_regime(seed):
    rng = random.Random(200 + seed)
    g = components_graph(rng, parts=12, size=4, ell=2, p=0.7)
    spec = FairnessSpec(F(0), F(1, 2))
    opt = brute_force_opt(g, spec, max_edges=None).opt_size
    assert opt > 4
    _check_beta_probes(g, spec, opt)


def test_single_edge_candidates_can_exceed_the_relaxed_share_bound():
    # 6 disjoint edges, 3 per color, beta = 1/2: OPT = 6. Guesses T = 5, 6 stop
    # after ceil(T/4 - 1) = 1 edge (share 1 > 1/2 * (1 + 4/T)) and are discarded;
    # the survivor comes from T = 4, whose share 1 exceeds 1/2 * (1 + 4/6) = 5/6.
    g = disjoint_edges([0, 0, 0, 1, 1, 1])
    spec = FairnessSpec(F(0), F(1, 2))
    assert brute_force_opt(g, spec).opt_size == 6
    probes = {p.T: p for p in probe_beta_limited(g, spec)}
    assert probes[5].discarded and probes[6].discarded
    report = solve_beta_limited(g, spec)
    assert report.probed_T == 4 and max(report.fractions) == 1 > F(5, 6)


def test_rainbow_patch_is_seen_by_alpha_positive_solver(monkeypatch):
    # guards the instrumentation that proves the beta-limited path never searches
    import fairmatch.rainbow

    def boom(*_a, **_k):
        raise RuntimeError("called")

    monkeypatch.setattr(fairmatch.rainbow, "find_rainbow_matching", boom)
    g = disjoint_edges([0, 1])
    with pytest.raises(RuntimeError, match="called"):
        solve_alpha_positive(g, FairnessSpec(Fraction(1, 2), Fraction(1, 2)))
    assert solve_beta_limited(g, FairnessSpec(0, Fraction(1, 2))) is not None
