"""Strong shift equivalence, path algebras and graded modules over quivers."""

from .core import Arrow, NNMatrix, Path, Quiver, count_paths, enumerate_paths, incidence_matrix, quiver_from_matrix

__all__ = [
    "Arrow",
    "NNMatrix",
    "Path",
    "Quiver",
    "count_paths",
    "enumerate_paths",
    "incidence_matrix",
    "quiver_from_matrix",
]
