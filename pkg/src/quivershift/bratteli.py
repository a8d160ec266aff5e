"""Bratteli diagrams: levels labeled by C^n d0, consecutive levels joined by C."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .core import NNMatrix, Quiver, incidence_matrix


@dataclass(frozen=True)
class BratteliDiagram:
    vertices: tuple[str, ...]
    edges: NNMatrix
    labels: tuple[tuple[int, ...], ...]

    @property
    def levels(self) -> int:
        return len(self.labels)

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": self.edges.tolist(),
            "labels": [list(x) for x in self.labels],
        }


def bratteli(Q: Quiver, N: int, d0: Optional[Sequence[int]] = None) -> BratteliDiagram:
    if N < 0:
        raise ValueError("N must be nonnegative")
    C = incidence_matrix(Q)
    n = C.rows
    if d0 is None:
        d0 = [1] * n
    if len(d0) != n:
        raise ValueError(f"starting vector has length {len(d0)}, quiver has {n} vertices")
    labels = [tuple(int(x) for x in d0)]
    for _ in range(N):
        prev = [[x] for x in labels[-1]]
        labels.append(tuple(r[0] for r in linalg.matmul(C.entries, prev, 1)))
    return BratteliDiagram(Q.vertices, C, tuple(labels))


def emit_dot(d: BratteliDiagram) -> str:
    """Deterministic DOT text; level n node for vertex v is labeled "v:dim"."""
    lines = ["digraph bratteli {", "  rankdir=LR;"]
    n = len(d.vertices)
    for lev, lab in enumerate(d.labels):
        lines.append(f"  subgraph level{lev} {{")
        lines.append("    rank=same;")
        for k, v in enumerate(d.vertices):
            lines.append(f'    "L{lev}_{k}" [label="{v}:{lab[k]}"];')
        lines.append("  }")
    for lev in range(d.levels - 1):
        for i in range(n):
            for j in range(n):
                for _ in range(d.edges[i, j]):
                    lines.append(f'  "L{lev}_{j}" -> "L{lev + 1}_{i}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
