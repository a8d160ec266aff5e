import random
import string

import pytest

from quivershift.core import Arrow, Quiver


def fig_quiver():
    """Vertices 1, 2; w: 1->1, v: 1->2, u: 2->1 (arrows listed u, v, w)."""
    return Quiver.build(["1", "2"], [("u", "2", "1"), ("v", "1", "2"), ("w", "1", "1")])


def quiver_A():
    """Two vertices, a loop at each, one arrow each way."""
    return Quiver.build(["1", "2"], [("a", "1", "1"), ("b", "1", "2"), ("c", "2", "1"), ("d", "2", "2")])


def quiver_B():
    return Quiver.build(["1"], [("x", "1", "1"), ("y", "1", "1")])


def random_quiver(rng: random.Random, max_vertices=4, max_arrows=8, min_arrows=0) -> Quiver:
    nv = rng.randint(1, max_vertices)
    na = rng.randint(min_arrows, max_arrows)
    verts = [str(i + 1) for i in range(nv)]
    ids = string.ascii_lowercase[:na]
    arrows = [Arrow(ids[k], rng.choice(verts), rng.choice(verts)) for k in range(na)]
    return Quiver(tuple(verts), tuple(arrows))


def random_factors(rng: random.Random, max_dim=3, max_entry=2):
    i, j = rng.randint(1, max_dim), rng.randint(1, max_dim)
    L = [[rng.randint(0, max_entry) for _ in range(j)] for _ in range(i)]
    R = [[rng.randint(0, max_entry) for _ in range(i)] for _ in range(j)]
    return L, R


@pytest.fixture
def fig():
    return fig_quiver()


@pytest.fixture
def qa():
    return quiver_A()


@pytest.fixture
def qb():
    return quiver_B()


_acceptance_lines = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = "PASS" if rep.outcome == "passed" else "FAIL"
        _acceptance_lines.append(f"criterion {marker.args[0]:>2}: {status}  {item.name}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def random_context_factors(rng: random.Random, max_dim=3, max_entry=2, growth_cap=400, N=6):
    """Random (L, R) whose free modules stay small up to degree N.

    Rejects factorizations where some column of (LR)^N sums past ``growth_cap``,
    since free module dimensions are those column sums.
    """
    from quivershift.core import NNMatrix

    while True:
        L, R = random_factors(rng, max_dim=max_dim, max_entry=max_entry)
        A = NNMatrix(L) @ NNMatrix(R)
        P = A ** N
        if max(sum(P[i, j] for i in range(P.rows)) for j in range(P.cols)) <= growth_cap:
            return L, R
