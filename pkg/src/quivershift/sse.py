"""Elementary strong shift equivalences: verification, bounded search, certificates.

An elementary SSE from A to B is a pair (L, R) of nonnegative integer
matrices with A = LR and B = RL. Searches are exhaustive within their
declared bounds and budgets are counted in search nodes, so every run is
reproducible.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Optional

from .core import NNMatrix, as_matrix
from .invariants import bowen_franks, char_poly

FOUND = "found"
EXHAUSTED = "exhausted bounds"
BUDGET = "budget exhausted"

SE_CONVENTION = "AL = LB, RA = BR, A^lag = LR, B^lag = RL"


class ShapeError(ValueError):
    pass


@dataclass
class Report:
    ok: bool
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "failures": self.failures, "notes": self.notes, "warnings": self.warnings}


def _compare(expected: NNMatrix, actual: NNMatrix, equation: str, where: str | None = None) -> list[dict]:
    out = []
    if expected.shape != actual.shape:
        return [{"equation": equation, "shape": [list(expected.shape), list(actual.shape)], **({"at": where} if where else {})}]
    for i in range(expected.rows):
        for j in range(expected.cols):
            if expected[i, j] != actual[i, j]:
                f = {"equation": equation, "entry": [i, j], "expected": expected[i, j], "actual": actual[i, j]}
                if where is not None:
                    f["at"] = where
                out.append(f)
    return out


def _zero_warnings(*named) -> list[str]:
    return [f"{name} has a zero row or column" for name, m in named if m.has_zero_row_or_col()]


def verify_elementary(A, B, L, R) -> Report:
    A, B, L, R = map(as_matrix, (A, B, L, R))
    m, n = A.rows, B.rows
    if not A.is_square or not B.is_square or L.shape != (m, n) or R.shape != (n, m):
        raise ShapeError(f"incompatible shapes A{A.shape} B{B.shape} L{L.shape} R{R.shape}")
    failures = _compare(A, L @ R, "A = LR") + _compare(B, R @ L, "B = RL")
    return Report(not failures, failures, warnings=_zero_warnings(("A", A), ("B", B)))


@dataclass(frozen=True)
class SSEStep:
    L: NNMatrix
    R: NNMatrix
    A: NNMatrix = None
    B: NNMatrix = None

    def __post_init__(self):
        L, R = as_matrix(self.L), as_matrix(self.R)
        if L.rows != R.cols or L.cols != R.rows:
            raise ShapeError(f"L{L.shape} and R{R.shape} do not compose both ways")
        A, B = L @ R, R @ L
        if self.A is not None and as_matrix(self.A) != A:
            raise ValueError("A != LR")
        if self.B is not None and as_matrix(self.B) != B:
            raise ValueError("B != RL")
        for name, value in (("L", L), ("R", R), ("A", A), ("B", B)):
            object.__setattr__(self, name, value)

    def to_dict(self) -> dict:
        return {"L": self.L.tolist(), "R": self.R.tolist()}


@dataclass(frozen=True)
class SSEChain:
    """Steps of a chain; compatibility is checked by :func:`verify_chain`, not here."""

    steps: tuple[SSEStep, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise ValueError("a chain needs at least one step")

    def to_certificate(self) -> dict:
        return {"kind": "sse-chain", "steps": [s.to_dict() for s in self.steps]}


def verify_chain(chain: SSEChain, A, B) -> Report:
    A, B = as_matrix(A), as_matrix(B)
    failures: list[dict] = []
    steps = chain.steps
    failures += _compare(A, steps[0].A, "chain starts at A", "steps[0]")
    for k, s in enumerate(steps):
        failures += _compare(s.A, s.L @ s.R, "A = LR", f"steps[{k}]")
        failures += _compare(s.B, s.R @ s.L, "B = RL", f"steps[{k}]")
        if k + 1 < len(steps):
            failures += _compare(s.B, steps[k + 1].A, "B_k = A_{k+1}", f"steps[{k}]->steps[{k + 1}]")
    failures += _compare(B, steps[-1].B, "chain ends at B", f"steps[{len(steps) - 1}]")
    return Report(not failures, failures)


@dataclass(frozen=True)
class SEWitness:
    L: NNMatrix
    R: NNMatrix
    lag: int

    def __post_init__(self):
        object.__setattr__(self, "L", as_matrix(self.L))
        object.__setattr__(self, "R", as_matrix(self.R))
        if self.lag < 1:
            raise ValueError("lag must be a positive integer")


def verify_shift_equivalence(A, B, w: SEWitness) -> Report:
    """Check the four shift-equivalence identities separately.

    The second identity is RA = BR (R intertwines A with B).
    """
    A, B = as_matrix(A), as_matrix(B)
    L, R = w.L, w.R
    m, n = A.rows, B.rows
    if not A.is_square or not B.is_square or L.shape != (m, n) or R.shape != (n, m):
        raise ShapeError(f"incompatible shapes A{A.shape} B{B.shape} L{L.shape} R{R.shape}")
    failures = []
    failures += _compare(A @ L, L @ B, "AL = LB")
    failures += _compare(R @ A, B @ R, "RA = BR")
    failures += _compare(A ** w.lag, L @ R, "A^lag = LR")
    failures += _compare(B ** w.lag, R @ L, "B^lag = RL")
    return Report(not failures, failures, notes=[f"convention: {SE_CONVENTION}"])


# --- canonical forms -------------------------------------------------------

EXACT_CANON_MAX = 6


def canonical_form(A) -> tuple[tuple, list[int], bool]:
    """Key of A up to simultaneous row/column permutation.

    Returns (key, perm, exact) where the key matrix has entries A[perm[i]][perm[j]].
    Vertices are first sorted by a permutation-invariant signature; for n <= 6
    the minimum over all signature-respecting orders makes the key exact.
    """
    a = as_matrix(A).entries
    n = len(a)
    sig = [
        (a[i][i], tuple(sorted(a[i])), tuple(sorted(a[k][i] for k in range(n))))
        for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: sig[i])
    groups: list[list[int]] = []
    for i in order:
        if groups and sig[groups[-1][0]] == sig[i]:
            groups[-1].append(i)
        else:
            groups.append([i])

    def key_of(perm):
        return (n,) + tuple(a[perm[i]][perm[j]] for i in range(n) for j in range(n))

    if n > EXACT_CANON_MAX:
        return key_of(order), order, False
    best = None
    best_perm = order
    for choice in product(*(permutations(g) for g in groups)):
        perm = [i for g in choice for i in g]
        k = key_of(perm)
        if best is None or k < best:
            best, best_perm = k, perm
    return best, best_perm, True


def _permutation_step(Y: NNMatrix, pY: list[int], B: NNMatrix, pB: list[int]) -> SSEStep:
    """Elementary step from Y to B when both have the same canonical key."""
    n = Y.rows
    sigma = [0] * n
    for i in range(n):
        sigma[pY[i]] = pB[i]
    P = [[1 if sigma[a] == b else 0 for b in range(n)] for a in range(n)]
    P = NNMatrix(P, n, n)
    return SSEStep(P @ B, P.T, Y, B)


# --- searches --------------------------------------------------------------


class _Budget(Exception):
    pass


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Budget


@dataclass
class SearchResult:
    reason: str
    nodes: int
    step: Optional[SSEStep] = None
    chain: Optional[SSEChain] = None
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.reason == FOUND

    def to_dict(self) -> dict:
        d = {"reason": self.reason, "nodes": self.nodes, "notes": self.notes}
        if self.step is not None:
            d["step"] = self.step.to_dict()
        if self.chain is not None:
            d["certificate"] = self.chain.to_certificate()
        return d


def _factorizations(a, k: int, entry_max: int, counter: _Counter, b=None, essential: bool = False):
    """Yield (cols of L, rows of R) with sum_k l_k r_k^T = a, entries <= entry_max.

    With ``b`` given, also require r_p . l_q = b[p][q] for every p, q, checked as
    soon as both vectors are chosen. With ``essential`` every l_k and r_k is
    nonzero and pairs come in nonincreasing order, which removes the k!
    reorderings that only permute RL.
    """
    m = len(a)
    rem = [list(r) for r in a]
    lvecs = list(product(range(entry_max + 1), repeat=m))
    ls: list[tuple] = []
    rs: list[tuple] = []

    def rec(idx):
        if idx == k:
            if all(x == 0 for row in rem for x in row):
                yield [list(l) for l in ls], [list(r) for r in rs]
            return
        for l in lvecs:
            counter.tick()
            if essential:
                if not any(l):
                    continue
                if ls and l > ls[-1]:
                    continue
            caps = []
            for j in range(m):
                cap = entry_max
                for i in range(m):
                    if l[i]:
                        cap = min(cap, rem[i][j] // l[i])
                caps.append(cap)
            if b is not None:
                # r_p . l_idx for earlier p is fixed already
                if any(sum(x * y for x, y in zip(rs[p], l)) != b[p][idx] for p in range(idx)):
                    continue
            for r in product(*(range(c + 1) for c in caps)):
                counter.tick()
                if essential:
                    if not any(r):
                        continue
                    if ls and l == ls[-1] and r > rs[-1]:
                        continue
                if b is not None:
                    if sum(x * y for x, y in zip(r, l)) != b[idx][idx]:
                        continue
                    if any(sum(x * y for x, y in zip(r, ls[q])) != b[idx][q] for q in range(idx)):
                        continue
                for i in range(m):
                    if l[i]:
                        row = rem[i]
                        for j in range(m):
                            row[j] -= l[i] * r[j]
                ls.append(l)
                rs.append(r)
                yield from rec(idx + 1)
                ls.pop()
                rs.pop()
                for i in range(m):
                    if l[i]:
                        row = rem[i]
                        for j in range(m):
                            row[j] += l[i] * r[j]

    yield from rec(0)


def _to_step(lcols, rrows, m, k) -> SSEStep:
    L = NNMatrix([[lcols[c][i] for c in range(k)] for i in range(m)], m, k)
    R = NNMatrix(rrows, k, m)
    return SSEStep(L, R)


def search_elementary(A, B, inner_dim_max: int | None = None, entry_max: int | None = None,
                      budget: int = 1_000_000) -> SearchResult:
    """Exhaustive search for L, R with A = LR and B = RL within bounds.

    The inner dimension is the size of B. The default ``entry_max`` is the
    largest entry of A or B, which makes the search complete: a witness
    entry larger than that can always be replaced by zero.
    """
    A, B = as_matrix(A), as_matrix(B)
    if not A.is_square or not B.is_square:
        raise ShapeError("A and B must be square")
    m, k = A.rows, B.rows
    if inner_dim_max is None:
        inner_dim_max = k
    if entry_max is None:
        entry_max = max(A.max_entry(), B.max_entry(), 1)
    counter = _Counter(budget)
    notes = []
    if k > inner_dim_max:
        notes.append(f"inner dimension {k} exceeds inner_dim_max={inner_dim_max}")
        return SearchResult(EXHAUSTED, 0, notes=notes)
    if A.trace() != B.trace():
        notes.append("trace(A) != trace(B); no witness exists at any bound")
        return SearchResult(EXHAUSTED, 0, notes=notes)
    try:
        for lcols, rrows in _factorizations(A.entries, k, entry_max, counter, b=B.entries):
            step = _to_step(lcols, rrows, m, k)
            assert verify_elementary(A, B, step.L, step.R).ok
            return SearchResult(FOUND, counter.nodes, step=step)
    except _Budget:
        return SearchResult(BUDGET, counter.budget, notes=notes)
    return SearchResult(EXHAUSTED, counter.nodes, notes=notes)


def search_chain(A, B, max_depth: int = 3, inner_dim_max: int = 3, entry_max: int = 2,
                 budget: int = 1_000_000) -> SearchResult:
    """Breadth-first search for a chain of elementary SSEs from A to B.

    Neighbours of X are all RL with X = LR, inner dimension <= inner_dim_max,
    entries <= entry_max and no zero column of L or row of R. Visited matrices
    are deduplicated up to simultaneous permutation; a final permutation step
    lands on B exactly.
    """
    A, B = as_matrix(A), as_matrix(B)
    if not A.is_square or not B.is_square:
        raise ShapeError("A and B must be square")
    notes: list[str] = []
    counter = _Counter(budget)
    target_key, target_perm, exact = canonical_form(B)
    target_inv = (char_poly(B).nonzero_part(), bowen_franks(B))

    def invariants_match(X):
        return (char_poly(X).nonzero_part(), bowen_franks(X)) == target_inv

    if not invariants_match(A):
        notes.append("invariants of A and B differ; no chain exists at any bound")
        return SearchResult(EXHAUSTED, 0, notes=notes)
    if A == B:
        step = SSEStep(A, NNMatrix.identity(A.rows))
        return SearchResult(FOUND, 0, chain=SSEChain((step,)))
    key, perm, ex = canonical_form(A)
    exact = exact and ex
    if key == target_key:
        return SearchResult(FOUND, 0, chain=SSEChain((_permutation_step(A, perm, B, target_perm),)))

    visited = {key}
    queue = deque([(A, ())])
    try:
        while queue:
            X, path = queue.popleft()
            if len(path) >= max_depth:
                continue
            if not invariants_match(X):
                continue
            m = X.rows
            for k in range(1, inner_dim_max + 1):
                for lcols, rrows in _factorizations(X.entries, k, entry_max, counter, essential=True):
                    step = _to_step(lcols, rrows, m, k)
                    Y = step.B
                    ykey, yperm, yex = canonical_form(Y)
                    exact = exact and yex
                    if ykey == target_key:
                        steps = path + (step,)
                        if Y != B:
                            steps += (_permutation_step(Y, yperm, B, target_perm),)
                        chain = SSEChain(steps)
                        assert verify_chain(chain, A, B).ok
                        if not exact:
                            notes.append("deduplication was heuristic (matrix size > 6)")
                        return SearchResult(FOUND, counter.nodes, chain=chain, notes=notes)
                    if ykey in visited:
                        continue
                    visited.add(ykey)
                    queue.append((Y, path + (step,)))
    except _Budget:
        if not exact:
            notes.append("deduplication was heuristic (matrix size > 6)")
        return SearchResult(BUDGET, counter.budget, notes=notes)
    if not exact:
        notes.append("deduplication was heuristic (matrix size > 6)")
    return SearchResult(EXHAUSTED, counter.nodes, notes=notes)


# --- certificates ----------------------------------------------------------


class CertificateError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


def _matrix_at(obj: dict, key: str, where: str) -> NNMatrix:
    if key not in obj:
        raise CertificateError(f"{where}.{key}" if where else key, "missing")
    try:
        return as_matrix(obj[key])
    except ValueError as exc:
        raise CertificateError(f"{where}.{key}" if where else key, str(exc)) from None


def parse_certificate(obj) -> dict:
    """Validate the structure of a certificate and return its parsed parts.

    Certificates may carry optional "A" and "B" matrices anchoring the ends;
    an se-witness needs them.
    """
    if not isinstance(obj, dict):
        raise CertificateError("$", "certificate must be a JSON object")
    kind = obj.get("kind")
    out: dict = {"kind": kind}
    for end in ("A", "B"):
        if end in obj:
            out[end] = _matrix_at(obj, end, "")
    if kind == "sse-chain":
        steps = obj.get("steps")
        if not isinstance(steps, list) or not steps:
            raise CertificateError("steps", "must be a nonempty array")
        parsed = []
        for k, s in enumerate(steps):
            where = f"steps[{k}]"
            if not isinstance(s, dict):
                raise CertificateError(where, "must be an object with L and R")
            L, R = _matrix_at(s, "L", where), _matrix_at(s, "R", where)
            if L.rows != R.cols or L.cols != R.rows:
                raise CertificateError(where, f"L{L.shape} and R{R.shape} do not compose both ways")
            parsed.append((L, R))
        out["steps"] = parsed
    elif kind == "se-witness":
        out["L"], out["R"] = _matrix_at(obj, "L", ""), _matrix_at(obj, "R", "")
        lag = obj.get("lag")
        if isinstance(lag, bool) or not isinstance(lag, int) or lag < 1:
            raise CertificateError("lag", "must be a positive integer")
        out["lag"] = lag
        for end in ("A", "B"):
            if end not in out:
                raise CertificateError(end, "se-witness certificates must include A and B")
    else:
        raise CertificateError("kind", f"unknown certificate kind {kind!r}")
    return out


def check_certificate(obj) -> Report:
    """Parse and verify a certificate; malformed input becomes a failure, not an exception."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            return Report(False, [{"at": f"line {exc.lineno} column {exc.colno}", "error": exc.msg}])
    try:
        cert = parse_certificate(obj)
    except CertificateError as exc:
        return Report(False, [{"at": exc.location, "error": exc.message}])
    if cert["kind"] == "se-witness":
        A, B = cert["A"], cert["B"]
        try:
            return verify_shift_equivalence(A, B, SEWitness(cert["L"], cert["R"], cert["lag"]))
        except ShapeError as exc:
            return Report(False, [{"at": "$", "error": str(exc)}])
    steps = [SSEStep(L, R) for L, R in cert["steps"]]
    A = cert.get("A", steps[0].A)
    B = cert.get("B", steps[-1].B)
    return verify_chain(SSEChain(steps), A, B)
