"""Acceptance criteria, one test per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import random
import time

import pytest

from quivershift import gradedmod as gm
from quivershift.bratteli import bratteli, emit_dot
from quivershift.core import NNMatrix, Quiver, count_paths, enumerate_paths, incidence_matrix
from quivershift.invariants import (
    bowen_franks,
    char_poly,
    invariant_report,
    periodic_point_counts,
    smith_normal_form,
    zeta_denominator,
)
from quivershift.sse import BUDGET, search_chain, search_elementary, verify_elementary
from quivershift.transforms import (
    SplitSpec,
    higher_edge_graph,
    higher_edge_graph_n,
    in_split,
    out_split,
    path_graph,
    split_LR,
)

from conftest import fig_quiver, quiver_A, quiver_B, random_context_factors, random_factors, random_quiver

A23 = [[1, 3], [2, 1]]
B23 = [[1, 6], [1, 1]]


def mm(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def criterion6_quivers():
    return [random_quiver(random.Random(seed)) for seed in range(30)]


@pytest.mark.acceptance(1)
def test_elementary_golden_pair():
    start = time.perf_counter()
    A, B, L, R = [[1, 1], [1, 1]], [[2]], [[1], [1]], [[1, 1]]
    assert verify_elementary(A, B, L, R).ok
    res = search_elementary(A, B, inner_dim_max=1, entry_max=1)
    assert res.found
    assert verify_elementary(A, B, res.step.L, res.step.R).ok
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2)
def test_higher_edge_graph_golden():
    q = fig_quiver()
    g = higher_edge_graph(q)
    assert len(g.vertices) == 3 and len(g.arrows) == 5
    # the figure's five labels, with its w -> v arrow written in composition order (v after w)
    assert {(a.id, a.src, a.dst) for a in g.arrows} == {
        ("ww", "w", "w"), ("vw", "w", "v"), ("wu", "u", "w"), ("vu", "u", "v"), ("uv", "v", "u"),
    }
    L, R = split_LR(q)
    assert (L @ R).tolist() == [[1, 1], [1, 0]]
    assert R @ L == incidence_matrix(g)


@pytest.mark.acceptance(3)
def test_bratteli_golden():
    da = bratteli(quiver_A(), 4)
    assert da.labels == ((1, 1), (2, 2), (4, 4), (8, 8), (16, 16))
    db = bratteli(quiver_B(), 4)
    assert [x[0] for x in db.labels] == [1, 2, 4, 8, 16]
    assert db.edges.tolist() == [[2]]
    dot = emit_dot(db)
    assert dot.count("->") == 8
    assert dot == emit_dot(bratteli(quiver_B(), 4))
    assert emit_dot(da) == emit_dot(bratteli(quiver_A(), 4))


@pytest.mark.acceptance(4)
def test_consistency_pair():
    start = time.perf_counter()
    assert char_poly(A23).coefficients == char_poly(B23).coefficients == (-5, -2, 1)
    assert str(bowen_franks(A23)) == str(bowen_franks(B23)) == "Z/6"
    assert periodic_point_counts(A23, 3) == periodic_point_counts(B23, 3) == [2, 14, 38]
    assert invariant_report(A23, B23, pmax=3)["verdict"] == "consistent"
    assert time.perf_counter() - start < 1.0
    res = search_chain(A23, B23, max_depth=10, inner_dim_max=4, entry_max=3, budget=10 ** 6)
    assert res.reason == BUDGET


@pytest.mark.acceptance(5)
def test_sse_invariance_property_suite():
    failures = 0
    for seed in range(120):
        L, R = random_factors(random.Random(seed), max_dim=3, max_entry=2)
        A, B = mm(L, R), mm(R, L)
        if zeta_denominator(A) != zeta_denominator(B):
            failures += 1
        if periodic_point_counts(A, 5) != periodic_point_counts(B, 5):
            failures += 1
    assert failures == 0


@pytest.mark.acceptance(6)
def test_iteration_identity():
    failures = 0
    for q in criterion6_quivers():
        for n in (2, 3, 4):
            if higher_edge_graph_n(q, n).canonical_json() != path_graph(q, n).canonical_json():
                failures += 1
    assert failures == 0


def _random_split(rng, side):
    while True:
        q = random_quiver(rng, min_arrows=1)
        cands = [v for v in q.vertices if (q.in_arrows(v) if side == "in" else q.out_arrows(v))]
        if cands:
            break
    v = rng.choice(cands)
    ids = [a.id for a in (q.in_arrows(v) if side == "in" else q.out_arrows(v))]
    k = rng.randint(1, len(ids))
    buckets = [[] for _ in range(k)]
    for a in ids:
        buckets[rng.randrange(k)].append(a)
    return q, SplitSpec(v, [b for b in buckets if b])


@pytest.mark.acceptance(7)
def test_splitting_suite():
    failures = 0
    for seed in range(30):
        rng = random.Random(seed)
        for side, fn in (("in", in_split), ("out", out_split)):
            q, spec = _random_split(rng, side)
            q2, L, R = fn(q, spec)
            C, C2 = incidence_matrix(q), incidence_matrix(q2)
            if not verify_elementary(C, C2, L, R).ok:
                failures += 1
            if periodic_point_counts(C, 5) != periodic_point_counts(C2, 5):
                failures += 1
    assert failures == 0


def _criterion8_cases():
    """(ctx, modules) for 25 random contexts; four or more modules each at N = 6."""
    cases = []
    for seed in range(25):
        rng = random.Random(seed)
        L, R = random_context_factors(rng, max_dim=3, max_entry=2, N=6)
        ctx = gm.build_context(L, R)
        Q = ctx.quiver_LR
        v = rng.choice(Q.vertices)
        mods = [
            ("free", v, gm.free_module(Q, v, 6)),
            ("simple", v, gm.simple_module(Q, v, 6)),
            ("random", None, gm.random_module(Q, 6, 2 * seed, generated_in=rng.randint(0, 3))),
            ("random", None, gm.random_module(Q, 6, 2 * seed + 1, generated_in=rng.randint(0, 3))),
        ]
        cases.append((L, R, ctx, mods))
    return cases


@pytest.mark.acceptance(8)
def test_tau_truncation_suite():
    start = time.perf_counter()
    failures = []
    for L, R, ctx, mods in _criterion8_cases():
        Q = ctx.quiver_LR
        for kind, v, M in mods:
            phi = gm.tau(ctx, M, check=False)
            if phi.commuting_failures():
                failures.append(("a", kind))
            kc = gm.kernel_cokernel_dims(phi)
            if kind == "free":
                if any(x for row in kc["ker"] for x in row):
                    failures.append(("b-ker", kind))
                expected = [[1 if (n == 0 and w == v) else 0 for w in Q.vertices] for n in range(7)]
                if kc["coker"] != expected:
                    failures.append(("b-coker", kind))
            g = M.generated_in
            if any(any(kc["coker"][n]) for n in range(g + 1, 7)):
                failures.append(("c", kind))
            if kc["coker"][1:] != gm.generators_defect(M):
                failures.append(("d", kind))
            if not gm.check_eta_dimensions(ctx, M)["ok"]:
                failures.append(("e", kind))
    assert failures == []
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(9)
def test_functor_dimension_laws():
    failures = 0
    for L, R, ctx, mods in _criterion8_cases():
        for _, _, M in mods:
            FM = gm.apply_F(ctx, M)
            for n, row in enumerate(gm.hilbert(M)):
                if gm.hilbert(FM)[n] != [sum(R[i][j] * row[j] for j in range(len(row))) for i in range(len(R))]:
                    failures += 1
            back = gm.hilbert(gm.apply_F_back(ctx, FM))
            fm = gm.hilbert(FM)
            if back[0] != [0] * len(L):
                failures += 1
            for n in range(1, M.N + 1):
                prev = fm[n - 1]
                if back[n] != [sum(L[i][j] * prev[j] for j in range(len(prev))) for i in range(len(L))]:
                    failures += 1
    assert failures == 0

    steps = [([[1], [1]], [[1, 1]]), ([[2]], [[1]]), ([[1, 1]], [[1], [1]])]
    ctxs = [gm.build_context(L, R) for L, R in steps]
    M = gm.random_module(ctxs[0].quiver_LR, 5, seed=3)
    out = gm.apply_chain(ctxs, M)
    P = NNMatrix(steps[2][1]) @ NNMatrix(steps[1][1]) @ NNMatrix(steps[0][1])
    for n, row in enumerate(gm.hilbert(M)):
        assert gm.hilbert(out)[n] == [sum(P[i, j] * row[j] for j in range(P.cols)) for i in range(P.rows)]


@pytest.mark.acceptance(10)
def test_path_count_oracle():
    failures = 0
    for q in criterion6_quivers():
        C = incidence_matrix(q)
        for n in range(0, 6):
            paths = enumerate_paths(q, n)
            Cn = C ** n
            for u in q.vertices:
                for w in q.vertices:
                    brute = sum(1 for p in paths if p.base == u and p.end == w)
                    if Cn[q.index(w), q.index(u)] != brute or count_paths(q, n, u, w) != brute:
                        failures += 1
    assert failures == 0


def _cofactor_det(m):
    if not m:
        return 1
    return sum((-1) ** j * x * _cofactor_det([r[:j] + r[j + 1:] for r in m[1:]]) for j, x in enumerate(m[0]) if x)


@pytest.mark.acceptance(11)
def test_snf_self_certification():
    failures = 0
    for seed in range(120):
        rng = random.Random(seed)
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        D, U, V = smith_normal_form(m)
        ok = mm(mm(U, m), V) == D
        ok = ok and abs(_cofactor_det(U)) == 1 and abs(_cofactor_det(V)) == 1
        ok = ok and all(D[i][j] == 0 for i in range(r) for j in range(c) if i != j)
        diag = [D[i][i] for i in range(min(r, c))]
        for a, b in zip(diag, diag[1:]):
            ok = ok and ((b % a == 0) if a else b == 0)
        failures += not ok
    assert failures == 0
