import random
from itertools import product

import pytest

from quivershift.core import (
    NNMatrix,
    Quiver,
    count_paths,
    enumerate_paths,
    incidence_matrix,
    is_composable,
    quiver_from_matrix,
)

from conftest import random_quiver


def brute_paths(q, n):
    """Every arrow sequence of length n that composes; no shared code with enumerate_paths."""
    ids = [a.id for a in q.arrows]
    out = []
    for seq in product(ids, repeat=n):
        if all(q.arrow(a).dst == q.arrow(b).src for a, b in zip(seq, seq[1:])):
            out.append(seq)
    return out


def test_incidence_matrix_of_two_vertex_figures(qa, fig):
    assert incidence_matrix(qa).tolist() == [[1, 1], [1, 1]]
    assert incidence_matrix(fig).tolist() == [[1, 1], [1, 0]]


def test_empty_quiver():
    q = Quiver((), ())
    assert incidence_matrix(q).shape == (0, 0)
    assert enumerate_paths(q, 0) == []


def test_quiver_from_matrix_two_loops():
    q = quiver_from_matrix([[2]])
    assert q.vertices == ("v1",)
    assert [(a.id, a.src, a.dst) for a in q.arrows] == [("a_1_1_1", "v1", "v1"), ("a_1_1_2", "v1", "v1")]


def test_quiver_from_matrix_zero_and_nonsquare():
    q = quiver_from_matrix(NNMatrix.zeros(3, 3))
    assert len(q.vertices) == 3 and not q.arrows
    with pytest.raises(ValueError):
        quiver_from_matrix([[1, 2]])


def test_round_trip(fig, qa):
    for q in (fig, qa):
        assert incidence_matrix(quiver_from_matrix(incidence_matrix(q))) == incidence_matrix(q)


def test_nnmatrix_rejects_negatives_and_ragged():
    with pytest.raises(ValueError):
        NNMatrix([[1, -1]])
    with pytest.raises(ValueError):
        NNMatrix([[1, 2], [3]])


def test_nnmatrix_keeps_empty_shapes():
    a = NNMatrix.zeros(2, 0)
    b = NNMatrix.zeros(0, 3)
    assert (a @ b).shape == (2, 3)
    assert (b.T).shape == (3, 0)


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver.build(["1", "1"], [])
    with pytest.raises(ValueError):
        Quiver.build(["1"], [("a", "1", "2")])
    with pytest.raises(ValueError):
        Quiver.build(["1"], [("a", "1", "1"), ("a", "1", "1")])


def test_json_round_trip_is_byte_stable(fig):
    text = fig.to_json()
    assert Quiver.from_json(text) == fig
    assert Quiver.from_json(text).to_json() == text
    assert " " not in text


def test_paths_of_length_two_in_figure(fig):
    paths = enumerate_paths(fig, 2)
    assert [p.arrows for p in paths] == [("u", "v"), ("u", "w"), ("v", "u"), ("w", "v"), ("w", "w")]
    assert {p.label() for p in paths} == {"vu", "wu", "uv", "vw", "ww"}


def test_paths_length_zero_and_one(fig):
    assert [(p.base, p.arrows) for p in enumerate_paths(fig, 0)] == [("1", ()), ("2", ())]
    assert [p.arrows for p in enumerate_paths(fig, 1)] == [("u",), ("v",), ("w",)]


def test_count_paths_examples(fig, qa):
    assert count_paths(fig, 2, "1", "1") == 2
    assert count_paths(fig, 0, "1", "1") == 1
    assert count_paths(fig, 0, "1", "2") == 0
    assert count_paths(qa, 3, "1", "2") == 4
    with pytest.raises(KeyError):
        count_paths(fig, 1, "1", "9")


@pytest.mark.parametrize("seed", range(30))
def test_paths_against_brute_force(seed):
    rng = random.Random(seed)
    q = random_quiver(rng)
    for n in range(1, 5):
        paths = enumerate_paths(q, n)
        seqs = [p.arrows for p in paths]
        assert sorted(seqs) == sorted(brute_paths(q, n))
        assert len(set(seqs)) == len(seqs)
        assert seqs == sorted(seqs)
        assert all(is_composable(q, s) for s in seqs)
        for u in q.vertices:
            for v in q.vertices:
                brute = sum(1 for p in paths if p.base == u and p.end == v)
                assert count_paths(q, n, u, v) == brute


def test_dot_has_one_edge_per_arrow(fig):
    dot = fig.to_dot()
    assert dot.count("->") == 3
    assert '[label="w"]' in dot
