import random

import pytest

from quivershift.bratteli import bratteli, emit_dot
from quivershift.core import NNMatrix, incidence_matrix, quiver_from_matrix

from conftest import random_factors, random_quiver


def test_QA_labels(qa):
    d = bratteli(qa, 4)
    assert d.labels == ((1, 1), (2, 2), (4, 4), (8, 8), (16, 16))
    assert d.levels == 5


def test_QB_labels_and_double_edges(qb):
    d = bratteli(qb, 4)
    assert [x[0] for x in d.labels] == [1, 2, 4, 8, 16]
    dot = emit_dot(d)
    assert dot.count("->") == 2 * 4
    assert dot.count('"L0_0" -> "L1_0"') == 2


def test_level_zero_only(fig):
    d = bratteli(fig, 0, [3, 5])
    assert d.labels == ((3, 5),)
    dot = emit_dot(d)
    assert "->" not in dot and dot.count("rank=same") == 1
    assert 'label="1:3"' in dot and 'label="2:5"' in dot


def test_errors(fig):
    with pytest.raises(ValueError):
        bratteli(fig, 2, [1])
    with pytest.raises(ValueError):
        bratteli(fig, -1)


def test_dot_is_byte_stable(qa):
    assert emit_dot(bratteli(qa, 4)) == emit_dot(bratteli(qa, 4))
    # the DOT text depends on the incidence matrix and vertex names only
    renamed = quiver_from_matrix([[1, 1], [1, 1]])
    assert emit_dot(bratteli(qa, 4)) == emit_dot(bratteli(renamed, 4)).replace('"v1:', '"1:').replace('"v2:', '"2:')


@pytest.mark.parametrize("seed", range(20))
def test_labels_are_powers_applied_to_d0(seed):
    rng = random.Random(seed)
    q = random_quiver(rng)
    d0 = [rng.randint(0, 3) for _ in q.vertices]
    d = bratteli(q, 5, d0)
    C = NNMatrix.identity(len(q.vertices))
    A = incidence_matrix(q)
    for n in range(6):
        col = NNMatrix([[x] for x in d0], len(d0), 1)
        assert [r[0] for r in (C @ col).tolist()] == list(d.labels[n])
        C = A @ C
    # one edge per arrow per level gap
    assert emit_dot(d).count("->") == 5 * len(q.arrows)


@pytest.mark.parametrize("seed", range(20))
def test_labels_intertwine_through_R(seed):
    rng = random.Random(seed)
    L, R = random_factors(rng)
    L, R = NNMatrix(L), NNMatrix(R)
    qa, qb = quiver_from_matrix(L @ R), quiver_from_matrix(R @ L)
    d0 = [rng.randint(0, 3) for _ in qa.vertices]
    da = bratteli(qa, 4, d0)
    Rd0 = [sum(R[i, j] * d0[j] for j in range(R.cols)) for i in range(R.rows)]
    db = bratteli(qb, 4, Rd0)
    for n in range(5):
        pushed = [sum(R[i, j] * da.labels[n][j] for j in range(R.cols)) for i in range(R.rows)]
        assert pushed == list(db.labels[n])


def test_to_dict(qb):
    d = bratteli(qb, 2).to_dict()
    assert d == {"vertices": ["1"], "edges": [[2]], "labels": [[1], [2], [4]]}
