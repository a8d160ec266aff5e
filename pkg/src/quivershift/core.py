"""Quivers, nonnegative integer matrices, and paths.

Incidence convention: entry ``(i, j)`` of the incidence matrix counts the
arrows from vertex ``j`` to vertex ``i``. All matrix indexing follows the
quiver's stored vertex order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import linalg


class NNMatrix:
    """Immutable dense matrix of nonnegative Python integers.

    The shape is stored explicitly so that 0 x n and n x 0 matrices keep it.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]] = (), rows: int | None = None, cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if not data and rows:
            data = tuple(() for _ in range(rows))
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        for i, row in enumerate(data):
            for j, x in enumerate(row):
                if x < 0:
                    raise ValueError(f"negative entry {x} at ({i}, {j})")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("NNMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "NNMatrix":
        return cls(linalg.zeros(rows, cols), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "NNMatrix":
        return cls(linalg.identity(n), n, n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, NNMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"NNMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"

    def __matmul__(self, other: "NNMatrix") -> "NNMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return NNMatrix(linalg.matmul(self.entries, other.entries, other.cols), self.rows, other.cols)

    def __pow__(self, p: int) -> "NNMatrix":
        if not self.is_square:
            raise ValueError("only square matrices have powers")
        if p < 0:
            raise ValueError("negative power")
        result = NNMatrix.identity(self.rows)
        base = self
        while p:
            if p & 1:
                result = result @ base
            base = base @ base
            p >>= 1
        return result

    @property
    def T(self) -> "NNMatrix":
        return NNMatrix(linalg.transpose(self.entries, self.cols), self.cols, self.rows)

    def trace(self) -> int:
        return linalg.trace(self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def max_entry(self) -> int:
        return max((x for r in self.entries for x in r), default=0)

    def has_zero_row_or_col(self) -> bool:
        if any(not any(r) for r in self.entries):
            return True
        return any(all(self.entries[i][j] == 0 for i in range(self.rows)) for j in range(self.cols))

    def to_json(self) -> str:
        return dumps(self.tolist())

    @classmethod
    def from_json(cls, text: str) -> "NNMatrix":
        return as_matrix(json.loads(text))


def as_matrix(value) -> NNMatrix:
    """Coerce a list of lists (or an NNMatrix) into an NNMatrix."""
    if isinstance(value, NNMatrix):
        return value
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ValueError("a matrix must be a JSON array of arrays")
    for row in value:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValueError(f"matrix entries must be integers, got {x!r}")
    return NNMatrix(value)


def dumps(obj) -> str:
    """Byte-deterministic JSON: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _arrow: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        index = {v: i for i, v in enumerate(self.vertices)}
        by_id = {}
        for a in self.arrows:
            if a.id in by_id:
                raise ValueError(f"duplicate arrow id {a.id!r}")
            if a.src not in index or a.dst not in index:
                raise ValueError(f"arrow {a.id!r} has an endpoint outside the vertex list")
            by_id[a.id] = a
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_arrow", by_id)

    @classmethod
    def build(cls, vertices: Sequence[str], arrows: Iterable[tuple[str, str, str]]) -> "Quiver":
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows))

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._arrow[arrow_id]
        except KeyError:
            raise KeyError(f"unknown arrow {arrow_id!r}") from None

    def in_arrows(self, v: str) -> list[Arrow]:
        self.index(v)
        return [a for a in self.arrows if a.dst == v]

    def out_arrows(self, v: str) -> list[Arrow]:
        self.index(v)
        return [a for a in self.arrows if a.src == v]

    def reversed(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.id, a.dst, a.src) for a in self.arrows))

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "src": a.src, "dst": a.dst} for a in self.arrows],
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def canonical_json(self) -> str:
        """Serialization independent of vertex and arrow order."""
        d = {
            "vertices": sorted(self.vertices),
            "arrows": sorted(({"id": a.id, "src": a.src, "dst": a.dst} for a in self.arrows), key=lambda x: x["id"]),
        }
        return dumps(d)

    @classmethod
    def from_dict(cls, d: dict) -> "Quiver":
        if not isinstance(d, dict) or "vertices" not in d or "arrows" not in d:
            raise ValueError('a quiver must be an object with "vertices" and "arrows"')
        try:
            arrows = tuple(Arrow(str(a["id"]), str(a["src"]), str(a["dst"])) for a in d["arrows"])
        except (KeyError, TypeError):
            raise ValueError('each arrow needs "id", "src" and "dst"') from None
        return cls(tuple(str(v) for v in d["vertices"]), arrows)

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f"  {_dot_id(v)};")
        for a in self.arrows:
            lines.append(f"  {_dot_id(a.src)} -> {_dot_id(a.dst)} [label={_dot_id(a.id)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


@dataclass(frozen=True)
class Path:
    """A path stored in traversal order (first arrow first).

    ``base`` is the start vertex; for the trivial path it is the only vertex.
    """

    base: str
    arrows: tuple[str, ...] = ()
    end: str = ""

    def __len__(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        """Composition label, rightmost arrow traversed first (``ba`` = a then b)."""
        if not self.arrows:
            return f"e_{self.base}"
        return path_label(self.arrows)


def path_label(arrow_ids: Sequence[str], sep: str | None = None) -> str:
    """Right-to-left composition label; ids are run together only when all are single characters."""
    rev = list(reversed(arrow_ids))
    if sep is None:
        sep = "" if all(len(a) == 1 for a in rev) else "."
    return sep.join(rev)


def label_separator(q: "Quiver") -> str:
    return "" if all(len(a.id) == 1 for a in q.arrows) else "."


def incidence_matrix(q: Quiver) -> NNMatrix:
    n = len(q.vertices)
    c = linalg.zeros(n, n)
    for a in q.arrows:
        c[q.index(a.dst)][q.index(a.src)] += 1
    return NNMatrix(c, n, n)


def quiver_from_matrix(c: NNMatrix | list) -> Quiver:
    c = as_matrix(c)
    if not c.is_square:
        raise ValueError(f"incidence matrix must be square, got {c.rows}x{c.cols}")
    n = c.rows
    vertices = [f"v{i + 1}" for i in range(n)]
    arrows = []
    for j in range(n):
        for i in range(n):
            for k in range(c[i, j]):
                arrows.append(Arrow(f"a_{j + 1}_{i + 1}_{k + 1}", vertices[j], vertices[i]))
    return Quiver(tuple(vertices), tuple(arrows))


def enumerate_paths(q: Quiver, n: int) -> list[Path]:
    """All paths of length ``n``, sorted lexicographically by arrow-id sequence."""
    if n < 0:
        raise ValueError("path length must be nonnegative")
    if n == 0:
        return [Path(v, (), v) for v in q.vertices]
    out_by_vertex: dict[str, list[Arrow]] = {v: [] for v in q.vertices}
    for a in sorted(q.arrows, key=lambda a: a.id):
        out_by_vertex[a.src].append(a)
    paths: list[Path] = []

    def extend(start: str, at: str, seq: list[str]):
        if len(seq) == n:
            paths.append(Path(start, tuple(seq), at))
            return
        for a in out_by_vertex[at]:
            seq.append(a.id)
            extend(start, a.dst, seq)
            seq.pop()

    for a in sorted(q.arrows, key=lambda a: a.id):
        extend(a.src, a.dst, [a.id])
    return paths


def count_paths(q: Quiver, n: int, src: str, dst: str) -> int:
    if n < 0:
        raise ValueError("path length must be nonnegative")
    i, j = q.index(dst), q.index(src)
    return (incidence_matrix(q) ** n)[i, j]


def is_composable(q: Quiver, arrow_ids: Sequence[str]) -> bool:
    return all(q.arrow(a).dst == q.arrow(b).src for a, b in zip(arrow_ids, arrow_ids[1:]))

