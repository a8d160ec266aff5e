"""Graph moves: higher edge graphs, higher power graphs, and vertex splittings.

Every splitting returns the factor matrices ``(L, R)`` of the elementary
strong shift equivalence between the old and new incidence matrices, checked
by multiplication before it is handed back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    Arrow,
    NNMatrix,
    Quiver,
    enumerate_paths,
    incidence_matrix,
    label_separator,
    path_label,
    quiver_from_matrix,
)


@dataclass(frozen=True)
class SplitSpec:
    vertex: str
    classes: tuple[frozenset, ...]

    def __init__(self, vertex: str, classes: Sequence[Sequence[str]]):
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "classes", tuple(frozenset(c) for c in classes))


class SplitError(ValueError):
    pass


def _higher_edge(q: Quiver, arrow_paths: dict[str, tuple[str, ...]], sep: str):
    """One step of the higher edge construction, tracking the underlying paths.

    ``arrow_paths`` maps each arrow of ``q`` to the path of the original quiver
    it stands for. Returns the new quiver together with the same map for it.
    """
    out_of: dict[str, list[Arrow]] = {v: [] for v in q.vertices}
    for b in q.arrows:
        out_of[b.src].append(b)
    new_paths: dict[str, tuple[str, ...]] = {}
    arrows = []
    for a in q.arrows:
        pa = arrow_paths[a.id]
        for b in out_of[a.dst]:
            pb = arrow_paths[b.id]
            if pa[1:] != pb[:-1]:
                raise AssertionError(f"arrows {a.id!r} and {b.id!r} do not overlap as paths")
            path = pa + pb[-1:]
            label = path_label(path, sep)
            if label in new_paths:
                raise ValueError(f"path label {label!r} is ambiguous; rename arrows")
            new_paths[label] = path
            arrows.append(Arrow(label, a.id, b.id))
    arrows.sort(key=lambda x: new_paths[x.id])
    return Quiver(tuple(a.id for a in q.arrows), tuple(arrows)), new_paths


def higher_edge_graph(q: Quiver) -> Quiver:
    """Vertices are the arrows of ``q``; one arrow a -> b per composable pair (a then b)."""
    return _higher_edge(q, {a.id: (a.id,) for a in q.arrows}, label_separator(q))[0]


def higher_edge_graph_n(q: Quiver, n: int) -> Quiver:
    """The (n-1)-fold iterate of :func:`higher_edge_graph`.

    Vertices are relabeled by the paths of length n-1 they stand for and
    arrows by the paths of length n.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    sep = label_separator(q)
    g = q
    arrow_paths = {a.id: (a.id,) for a in q.arrows}
    vertex_paths: dict[str, tuple[str, ...]] = {}
    for _ in range(n - 1):
        vertex_paths = arrow_paths
        g, arrow_paths = _higher_edge(g, arrow_paths, sep)
    vname = {v: path_label(vertex_paths[v], sep) for v in g.vertices}
    return Quiver(
        tuple(vname[v] for v in g.vertices),
        tuple(Arrow(a.id, vname[a.src], vname[a.dst]) for a in g.arrows),
    )


def path_graph(q: Quiver, n: int) -> Quiver:
    """Vertices = paths of length n-1, arrows = paths of length n, built directly.

    A path of length n goes from its first n-1 arrows to its last n-1 arrows.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    sep = label_separator(q)
    verts = [path_label(p.arrows, sep) for p in enumerate_paths(q, n - 1)]
    arrows = [
        Arrow(path_label(p.arrows, sep), path_label(p.arrows[:-1], sep), path_label(p.arrows[1:], sep))
        for p in enumerate_paths(q, n)
    ]
    return Quiver(tuple(verts), tuple(arrows))


def power_graph(q: Quiver, ell: int) -> Quiver:
    if ell < 1:
        raise ValueError("power must be at least 1")
    return quiver_from_matrix(incidence_matrix(q) ** ell)


def split_LR(q: Quiver) -> tuple[NNMatrix, NNMatrix]:
    """L[i][a] = 1 iff arrow a ends at i; R[a][i] = 1 iff a starts at i."""
    nv, na = len(q.vertices), len(q.arrows)
    L = [[0] * na for _ in range(nv)]
    R = [[0] * nv for _ in range(na)]
    for k, a in enumerate(q.arrows):
        L[q.index(a.dst)][k] = 1
        R[k][q.index(a.src)] = 1
    return NNMatrix(L, nv, na), NNMatrix(R, na, nv)


def _check_partition(q: Quiver, spec: SplitSpec, arrows: list[Arrow], side: str) -> list[int]:
    q.index(spec.vertex)
    if not spec.classes:
        raise SplitError("a split needs at least one class")
    if any(not c for c in spec.classes):
        raise SplitError("split classes must be nonempty")
    ids = [a.id for a in arrows]
    seen: dict[str, int] = {}
    for i, c in enumerate(spec.classes):
        for a in c:
            if a not in ids:
                raise SplitError(f"arrow {a!r} is not an {side}-arrow of {spec.vertex!r}")
            if a in seen:
                raise SplitError(f"arrow {a!r} appears in two classes")
            seen[a] = i
    missing = [a for a in ids if a not in seen]
    if missing:
        raise SplitError(f"{side}-arrows {missing} are not covered by the partition")
    return [seen[a] for a in ids]


def _copies(v: str, n: int) -> list[str]:
    return [f"{v}#{i + 1}" for i in range(n)]


def _split_vertices(q: Quiver, v: str, copies: list[str]) -> tuple[str, ...]:
    out = []
    for w in q.vertices:
        out.extend(copies if w == v else [w])
    return tuple(out)


def _verify_witness(q: Quiver, q2: Quiver, L: NNMatrix, R: NNMatrix) -> None:
    if L @ R != incidence_matrix(q) or R @ L != incidence_matrix(q2):
        raise AssertionError("split witness failed to verify")


def in_split(q: Quiver, spec: SplitSpec) -> tuple[Quiver, NNMatrix, NNMatrix]:
    v = spec.vertex
    ins = q.in_arrows(v)
    cls = dict(zip((a.id for a in ins), _check_partition(q, spec, ins, "in")))
    n = len(spec.classes)
    copies = _copies(v, n)
    arrows = []
    for a in q.arrows:
        if a.src == v and a.dst == v:
            for j in range(n):
                arrows.append(Arrow(f"{a.id}#{j + 1}", copies[j], copies[cls[a.id]]))
        elif a.dst == v:
            arrows.append(Arrow(a.id, a.src, copies[cls[a.id]]))
        elif a.src == v:
            for j in range(n):
                arrows.append(Arrow(f"{a.id}#{j + 1}", copies[j], a.dst))
        else:
            arrows.append(a)
    q2 = Quiver(_split_vertices(q, v, copies), tuple(arrows))

    c = incidence_matrix(q)
    L = [[0] * len(q2.vertices) for _ in q.vertices]
    R = [[0] * len(q.vertices) for _ in q2.vertices]
    for x, name in enumerate(q2.vertices):
        parent = v if name in copies else name
        L[q.index(parent)][x] = 1
        if name in copies:
            i = copies.index(name)
            for a in ins:
                if cls[a.id] == i:
                    R[x][q.index(a.src)] += 1
        else:
            R[x] = list(c.entries[q.index(name)])
    L, R = NNMatrix(L, len(q.vertices), len(q2.vertices)), NNMatrix(R, len(q2.vertices), len(q.vertices))
    _verify_witness(q, q2, L, R)
    return q2, L, R


def out_split(q: Quiver, spec: SplitSpec) -> tuple[Quiver, NNMatrix, NNMatrix]:
    v = spec.vertex
    outs = q.out_arrows(v)
    cls = dict(zip((a.id for a in outs), _check_partition(q, spec, outs, "out")))
    n = len(spec.classes)
    copies = _copies(v, n)
    arrows = []
    for a in q.arrows:
        if a.src == v and a.dst == v:
            for j in range(n):
                arrows.append(Arrow(f"{a.id}#{j + 1}", copies[cls[a.id]], copies[j]))
        elif a.src == v:
            arrows.append(Arrow(a.id, copies[cls[a.id]], a.dst))
        elif a.dst == v:
            for j in range(n):
                arrows.append(Arrow(f"{a.id}#{j + 1}", a.src, copies[j]))
        else:
            arrows.append(a)
    q2 = Quiver(_split_vertices(q, v, copies), tuple(arrows))

    c = incidence_matrix(q)
    L = [[0] * len(q2.vertices) for _ in q.vertices]
    R = [[0] * len(q.vertices) for _ in q2.vertices]
    for x, name in enumerate(q2.vertices):
        parent = v if name in copies else name
        R[x][q.index(parent)] = 1
        if name in copies:
            i = copies.index(name)
            for a in outs:
                if cls[a.id] == i:
                    L[q.index(a.dst)][x] += 1
        else:
            col = q.index(name)
            for w in range(len(q.vertices)):
                L[w][x] = c[w, col]
    L, R = NNMatrix(L, len(q.vertices), len(q2.vertices)), NNMatrix(R, len(q2.vertices), len(q.vertices))
    _verify_witness(q, q2, L, R)
    return q2, L, R
