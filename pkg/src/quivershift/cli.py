"""Command-line interface.

Exit codes: 0 success or verified, 1 verification failed or invariants
distinguished, 2 search ran out without a witness, 3 usage or format error.
Matrix, quiver, module and certificate arguments take either inline JSON or
a file path ("-" reads standard input).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import bratteli as br
from . import gradedmod as gm
from . import invariants as inv
from . import sse, transforms
from .core import NNMatrix, Quiver, as_matrix, count_paths, dumps, enumerate_paths, incidence_matrix, quiver_from_matrix

OK, FAILED, EXHAUSTED, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(arg: str, what: str):
    text = arg
    stripped = arg.lstrip()
    if not stripped.startswith(("[", "{")):
        try:
            text = sys.stdin.read() if arg == "-" else open(arg, encoding="utf-8").read()
        except OSError as exc:
            raise UsageError(f"{what}: cannot read {arg!r}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _matrix(arg: str, what: str) -> NNMatrix:
    try:
        return as_matrix(_read(arg, what))
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _int_matrix(arg: str, what: str) -> list[list[int]]:
    data = _read(arg, what)
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise UsageError(f"{what}: a matrix must be an array of arrays")
    widths = {len(r) for r in data}
    if len(widths) > 1 or any(isinstance(x, bool) or not isinstance(x, int) for r in data for x in r):
        raise UsageError(f"{what}: rows must be integer arrays of equal length")
    return data


def _quiver(arg: str, what: str = "--quiver") -> Quiver:
    try:
        return Quiver.from_dict(_read(arg, what))
    except (ValueError, KeyError) as exc:
        raise UsageError(f"{what}: {exc}") from None


def _module(arg: str) -> gm.TruncatedGradedModule:
    try:
        return gm.TruncatedGradedModule.from_dict(_read(arg, "--module"))
    except (ValueError, KeyError) as exc:
        raise UsageError(f"--module: {exc}") from None


def _context(args) -> gm.FactorizationContext:
    if args.L is None or args.R is None:
        raise UsageError("--L and --R are required")
    try:
        return gm.build_context(_matrix(args.L, "--L"), _matrix(args.R, "--R"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _module_over(M: gm.TruncatedGradedModule, Q: Quiver) -> gm.TruncatedGradedModule:
    if M.quiver == Q:
        return M
    try:
        return gm.relabel_module(M, Q)
    except ValueError as exc:
        raise UsageError(f"--module: {exc}") from None


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {_inline(v)}" if _flat(v) else _text(v, indent + 1) for v in obj)
    return pad + _inline(obj)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)
    return True


def _inline(v) -> str:
    return json.dumps(v, sort_keys=True) if isinstance(v, (list, dict)) else str(v)


def _emit(args, payload: dict, dot: Callable[[], str] | None = None) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "dot":
        if dot is None:
            raise UsageError("--format dot is not available for this command")
        sys.stdout.write(dot())
    elif fmt == "text":
        sys.stdout.write(_text(payload) + "\n")
    else:
        sys.stdout.write(dumps(payload) + "\n")


# --- quiver -----------------------------------------------------------------


def cmd_quiver_show(args):
    q = _quiver(args.quiver)
    _emit(args, {"quiver": q.to_dict(), "incidence": incidence_matrix(q).tolist()}, q.to_dot)
    return OK


def cmd_quiver_from_matrix(args):
    try:
        q = quiver_from_matrix(_matrix(args.matrix, "--matrix"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, q.to_dict(), q.to_dot)
    return OK


def cmd_quiver_paths(args):
    q = _quiver(args.quiver)
    if args.length < 0:
        raise UsageError("--length must be nonnegative")
    paths = enumerate_paths(q, args.length)
    if args.src is not None:
        q.index(args.src)
        paths = [p for p in paths if p.base == args.src]
    if args.dst is not None:
        q.index(args.dst)
        paths = [p for p in paths if p.end == args.dst]
    out = {
        "length": args.length,
        "count": len(paths),
        "paths": [{"arrows": list(p.arrows), "label": p.label(), "src": p.base, "dst": p.end} for p in paths],
    }
    if args.src is not None and args.dst is not None:
        out["matrix_count"] = count_paths(q, args.length, args.src, args.dst)
    _emit(args, out)
    return OK


# --- transforms ---------------------------------------------------------------


def _emit_quiver(args, q: Quiver, extra: dict | None = None):
    payload = {"quiver": q.to_dict(), "incidence": incidence_matrix(q).tolist()}
    payload.update(extra or {})
    _emit(args, payload, q.to_dot)


def cmd_transform_edge(args):
    _emit_quiver(args, transforms.higher_edge_graph(_quiver(args.quiver)))
    return OK


def cmd_transform_edge_n(args):
    try:
        q = transforms.higher_edge_graph_n(_quiver(args.quiver), args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_quiver(args, q)
    return OK


def cmd_transform_power(args):
    try:
        q = transforms.power_graph(_quiver(args.quiver), args.ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_quiver(args, q)
    return OK


def cmd_transform_split_lr(args):
    q = _quiver(args.quiver)
    L, R = transforms.split_LR(q)
    _emit(args, {"L": L.tolist(), "R": R.tolist(), "LR": (L @ R).tolist(), "RL": (R @ L).tolist()})
    return OK


def _split(args, fn):
    q = _quiver(args.quiver)
    classes = _read(args.classes, "--classes")
    if not isinstance(classes, list) or not all(isinstance(c, list) for c in classes):
        raise UsageError("--classes must be an array of arrays of arrow ids")
    try:
        q2, L, R = fn(q, transforms.SplitSpec(args.vertex, classes))
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    _emit_quiver(args, q2, {"L": L.tolist(), "R": R.tolist()})
    return OK


def cmd_transform_in_split(args):
    return _split(args, transforms.in_split)


def cmd_transform_out_split(args):
    return _split(args, transforms.out_split)


# --- sse ----------------------------------------------------------------------


def _report_exit(args, report: sse.Report) -> int:
    _emit(args, report.to_dict())
    if not report.ok:
        for f in report.failures:
            sys.stderr.write("failed: " + dumps(f) + "\n")
    return OK if report.ok else FAILED


def _load_cert(arg: str) -> dict:
    data = _read(arg, "--cert")
    try:
        return sse.parse_certificate(data)
    except sse.CertificateError as exc:
        raise UsageError(f"certificate: {exc.location}: {exc.message}") from None


def cmd_sse_verify(args):
    if args.cert:
        cert = _load_cert(args.cert)
        if cert["kind"] != "sse-chain" or len(cert["steps"]) != 1:
            raise UsageError("sse verify takes a single-step sse-chain certificate")
        L, R = cert["steps"][0]
        A = cert.get("A", L @ R)
        B = cert.get("B", R @ L)
    else:
        if None in (args.A, args.B, args.L, args.R):
            raise UsageError("give --cert or all of --A --B --L --R")
        A, B, L, R = (_matrix(getattr(args, k), f"--{k}") for k in "ABLR")
    try:
        report = sse.verify_elementary(A, B, L, R)
    except sse.ShapeError as exc:
        raise UsageError(str(exc)) from None
    return _report_exit(args, report)


def cmd_sse_verify_chain(args):
    cert = _load_cert(args.cert)
    if cert["kind"] != "sse-chain":
        raise UsageError("verify-chain needs an sse-chain certificate")
    steps = [sse.SSEStep(L, R) for L, R in cert["steps"]]
    A = _matrix(args.A, "--A") if args.A else cert.get("A", steps[0].A)
    B = _matrix(args.B, "--B") if args.B else cert.get("B", steps[-1].B)
    return _report_exit(args, sse.verify_chain(sse.SSEChain(steps), A, B))


def cmd_sse_verify_se(args):
    if args.cert:
        cert = _load_cert(args.cert)
        if cert["kind"] != "se-witness":
            raise UsageError("verify-se needs an se-witness certificate")
        A, B, w = cert["A"], cert["B"], sse.SEWitness(cert["L"], cert["R"], cert["lag"])
    else:
        if None in (args.A, args.B, args.L, args.R):
            raise UsageError("give --cert or all of --A --B --L --R --lag")
        A, B, L, R = (_matrix(getattr(args, k), f"--{k}") for k in "ABLR")
        try:
            w = sse.SEWitness(L, R, args.lag)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        report = sse.verify_shift_equivalence(A, B, w)
    except sse.ShapeError as exc:
        raise UsageError(str(exc)) from None
    return _report_exit(args, report)


def cmd_sse_check_cert(args):
    data = _read(args.certificate, "certificate")
    try:
        sse.parse_certificate(data)
    except sse.CertificateError as exc:
        sys.stderr.write(dumps({"at": exc.location, "error": exc.message}) + "\n")
        return USAGE
    return _report_exit(args, sse.check_certificate(data))


def _search_exit(args, result: sse.SearchResult, A: NNMatrix, B: NNMatrix) -> int:
    payload = result.to_dict()
    if result.step is not None:
        payload["certificate"] = {"kind": "sse-chain", "A": A.tolist(), "B": B.tolist(), "steps": [result.step.to_dict()]}
    elif result.chain is not None:
        payload["certificate"].update({"A": A.tolist(), "B": B.tolist()})
    _emit(args, payload)
    return OK if result.found else EXHAUSTED


def _budget(args) -> int:
    if args.budget <= 0:
        raise UsageError("--budget must be positive")
    for name in ("inner_dim_max", "entry_max", "depth"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
    return args.budget


def cmd_sse_search(args):
    A, B = _matrix(args.A, "--A"), _matrix(args.B, "--B")
    budget = _budget(args)
    try:
        result = sse.search_elementary(A, B, args.inner_dim_max, args.entry_max, budget)
    except sse.ShapeError as exc:
        raise UsageError(str(exc)) from None
    return _search_exit(args, result, A, B)


def cmd_sse_search_chain(args):
    A, B = _matrix(args.A, "--A"), _matrix(args.B, "--B")
    budget = _budget(args)
    try:
        result = sse.search_chain(A, B, args.depth, args.inner_dim_max, args.entry_max, budget)
    except sse.ShapeError as exc:
        raise UsageError(str(exc)) from None
    return _search_exit(args, result, A, B)


# --- invariants ---------------------------------------------------------------


def _square(arg: str, what: str) -> list[list[int]]:
    m = _int_matrix(arg, what)
    if any(len(r) != len(m) for r in m):
        raise UsageError(f"{what}: matrix must be square")
    return m


def cmd_inv_report(args):
    A, B = _square(args.A, "--A"), _square(args.B, "--B")
    report = inv.invariant_report(A, B, args.pmax)
    _emit(args, report)
    return OK if report["verdict"] == "consistent" else FAILED


def cmd_inv_snf(args):
    m = _int_matrix(args.matrix, "--matrix")
    D, U, V = inv.smith_normal_form(m)
    _emit(args, {"D": D, "U": U, "V": V})
    return OK


def cmd_inv_charpoly(args):
    p = inv.char_poly(_square(args.matrix, "--matrix"))
    _emit(args, {"coefficients": list(p.coefficients), "text": str(p)})
    return OK


def cmd_inv_zeta(args):
    p = inv.zeta_denominator(_square(args.matrix, "--matrix"))
    _emit(args, {"coefficients": list(p.coefficients), "text": str(p)})
    return OK


def cmd_inv_periodic(args):
    if args.pmax < 1:
        raise UsageError("--pmax must be at least 1")
    _emit(args, {"counts": inv.periodic_point_counts(_square(args.matrix, "--matrix"), args.pmax)})
    return OK


def cmd_inv_bf(args):
    g = inv.bowen_franks(_square(args.matrix, "--matrix"))
    _emit(args, {"factors": list(g.factors), "text": str(g)})
    return OK


# --- modules ------------------------------------------------------------------


def _base_quiver(args) -> Quiver:
    if args.quiver:
        return _quiver(args.quiver)
    return _context(args).quiver_LR


def cmd_module_free(args):
    q = _base_quiver(args)
    try:
        M = gm.free_module(q, args.vertex, args.N, args.shift)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(args, M.to_dict())
    return OK


def cmd_module_random(args):
    q = _base_quiver(args)
    M = gm.random_module(q, args.N, args.seed, args.max_dim, args.generated_in)
    _emit(args, M.to_dict())
    return OK


def cmd_module_hilbert(args):
    M = _module(args.module)
    _emit(args, {"vertices": list(M.quiver.vertices), "hilbert": gm.hilbert(M)})
    return OK


def cmd_module_apply_f(args):
    ctx = _context(args)
    M = _module_over(_module(args.module), ctx.quiver_LR)
    _emit(args, gm.apply_F(ctx, M).to_dict())
    return OK


def cmd_module_tau_check(args):
    ctx = _context(args)
    M = _module_over(_module(args.module), ctx.quiver_LR)
    report = gm.tau_report(ctx, M)
    _emit(args, report)
    return OK if report["ok"] else FAILED


def cmd_module_eta_check(args):
    ctx = _context(args)
    M = _module_over(_module(args.module), ctx.quiver_LR)
    report = gm.check_eta_dimensions(ctx, M)
    _emit(args, report)
    return OK if report["ok"] else FAILED


def cmd_module_apply_chain(args):
    cert = _load_cert(args.cert)
    if cert["kind"] != "sse-chain":
        raise UsageError("apply-chain needs an sse-chain certificate")
    ctxs = [gm.build_context(L, R) for L, R in cert["steps"]]
    M = _module(args.module)
    try:
        out = gm.apply_chain(ctxs, _module_over(M, ctxs[0].quiver_LR))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, out.to_dict())
    return OK


# --- bratteli -----------------------------------------------------------------


def cmd_bratteli_emit(args):
    if args.quiver:
        q = _quiver(args.quiver)
    elif args.matrix:
        try:
            q = quiver_from_matrix(_matrix(args.matrix, "--matrix"))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("give --quiver or --matrix")
    d0 = _read(args.d0, "--d0") if args.d0 else None
    try:
        d = br.bratteli(q, args.N, d0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, d.to_dict(), lambda: br.emit_dot(d))
    return OK


# --- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["json", "text", "dot"], default="json")

    p = _Parser(prog="quivershift", description="Shift equivalence and graded modules over quivers.")
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, name, fn, **kw):
        s = group.add_parser(name, parents=[fmt], **kw)
        s.set_defaults(func=fn)
        return s

    g = top.add_parser("quiver").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    s = sub(g, "show", cmd_quiver_show)
    s.add_argument("--quiver", required=True)
    s = sub(g, "from-matrix", cmd_quiver_from_matrix)
    s.add_argument("--matrix", required=True)
    s = sub(g, "paths", cmd_quiver_paths)
    s.add_argument("--quiver", required=True)
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--from", dest="src")
    s.add_argument("--to", dest="dst")

    g = top.add_parser("transform").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, fn in (("edge", cmd_transform_edge), ("split-lr", cmd_transform_split_lr)):
        sub(g, name, fn).add_argument("--quiver", required=True)
    s = sub(g, "edge-n", cmd_transform_edge_n)
    s.add_argument("--quiver", required=True)
    s.add_argument("--n", type=int, required=True)
    s = sub(g, "power", cmd_transform_power)
    s.add_argument("--quiver", required=True)
    s.add_argument("--ell", type=int, required=True)
    for name, fn in (("in-split", cmd_transform_in_split), ("out-split", cmd_transform_out_split)):
        s = sub(g, name, fn)
        s.add_argument("--quiver", required=True)
        s.add_argument("--vertex", required=True)
        s.add_argument("--classes", required=True, help='JSON array of arrow-id arrays, e.g. [["w"],["u"]]')

    g = top.add_parser("sse").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    s = sub(g, "verify", cmd_sse_verify)
    for k in "ABLR":
        s.add_argument(f"--{k}")
    s.add_argument("--cert")
    s = sub(g, "verify-chain", cmd_sse_verify_chain)
    s.add_argument("--cert", required=True)
    s.add_argument("--A")
    s.add_argument("--B")
    s = sub(g, "verify-se", cmd_sse_verify_se)
    for k in "ABLR":
        s.add_argument(f"--{k}")
    s.add_argument("--lag", type=int, default=1)
    s.add_argument("--cert")
    s = sub(g, "check-cert", cmd_sse_check_cert)
    s.add_argument("certificate")
    s = sub(g, "search", cmd_sse_search)
    s.add_argument("--A", required=True)
    s.add_argument("--B", required=True)
    s.add_argument("--inner-dim-max", type=int)
    s.add_argument("--entry-max", type=int)
    s.add_argument("--budget", type=int, default=1_000_000)
    s = sub(g, "search-chain", cmd_sse_search_chain)
    s.add_argument("--A", required=True)
    s.add_argument("--B", required=True)
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--inner-dim-max", type=int, default=3)
    s.add_argument("--entry-max", type=int, default=2)
    s.add_argument("--budget", type=int, default=1_000_000)

    g = top.add_parser("invariants").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    s = sub(g, "report", cmd_inv_report)
    s.add_argument("--A", required=True)
    s.add_argument("--B", required=True)
    s.add_argument("--pmax", type=int, default=6)
    for name, fn in (("snf", cmd_inv_snf), ("charpoly", cmd_inv_charpoly), ("zeta", cmd_inv_zeta), ("bf", cmd_inv_bf)):
        sub(g, name, fn).add_argument("--matrix", required=True)
    s = sub(g, "periodic", cmd_inv_periodic)
    s.add_argument("--matrix", required=True)
    s.add_argument("--pmax", type=int, default=6)

    g = top.add_parser("module").add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def ctx_args(s, quiver=False):
        if quiver:
            s.add_argument("--quiver")
        s.add_argument("--L")
        s.add_argument("--R")

    s = sub(g, "free", cmd_module_free)
    ctx_args(s, quiver=True)
    s.add_argument("--vertex", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--shift", type=int, default=0)
    s = sub(g, "random", cmd_module_random)
    ctx_args(s, quiver=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-dim", type=int, default=2)
    s.add_argument("--generated-in", type=int)
    s = sub(g, "hilbert", cmd_module_hilbert)
    s.add_argument("--module", required=True)
    for name, fn in (("apply-f", cmd_module_apply_f), ("tau-check", cmd_module_tau_check), ("eta-check", cmd_module_eta_check)):
        s = sub(g, name, fn)
        ctx_args(s)
        s.add_argument("--module", required=True)
    s = sub(g, "apply-chain", cmd_module_apply_chain)
    s.add_argument("--cert", required=True)
    s.add_argument("--module", required=True)

    g = top.add_parser("bratteli").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    s = sub(g, "emit", cmd_bratteli_emit)
    s.add_argument("--quiver")
    s.add_argument("--matrix")
    s.add_argument("--N", type=int, default=4)
    s.add_argument("--d0")
    return p


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE
    except KeyError as exc:
        sys.stderr.write(f"error: {exc.args[0] if exc.args else exc}\n")
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
