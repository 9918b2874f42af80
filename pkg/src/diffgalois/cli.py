"""Command-line front end.

Every command prints a self-certifying JSON document (``--pretty`` gives a
text summary instead).  Exit codes: 0 success, 1 failed verification,
2 parse or usage error, 3 invalid parameter, 4 size guard.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from pathlib import Path

from . import extensions, qgalois, shiftgalois
from .certificates import ReductionWitness, StandardFormWitness, witness_from_json
from .errors import DiffGaloisError, InvalidParameterError, ParseError, SizeError, ZeroInputError
from .exactalg import Derivation, QScale, TauShift, parse, render

SCHEMA = "diffgalois/1"


class UsageError(DiffGaloisError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (ParseError, UsageError)):
        return 2
    if isinstance(exc, SizeError):
        return 4
    if isinstance(exc, (InvalidParameterError, ZeroInputError)):
        return 3
    return 1


# -- argument helpers ------------------------------------------------------------


def _rational(text: str):
    f = parse(text)
    if not f.is_constant():
        raise InvalidParameterError(f"expected a rational number, got {text!r}")
    return f.constant_value()


def _integer(text: str) -> int:
    x = _rational(text)
    if x.denominator != 1:
        raise InvalidParameterError(f"expected an integer, got {text!r}")
    return int(x)


def _expressions(values):
    """Inline expressions, or ``@path`` for one expression per line."""
    out = []
    for v in values or ():
        if v.startswith("@"):
            for line in Path(v[1:]).read_text().splitlines():
                line = line.split("#", 1)[0].strip()
                if line:
                    out.append(parse(line))
        else:
            out.append(parse(v))
    return out


def _single(values, name):
    exprs = _expressions(values)
    if len(exprs) != 1:
        raise UsageError(f"expected exactly one --{name}, got {len(exprs)}")
    return exprs[0]


def _action(args, default_tau=False):
    q = getattr(args, "q", None)
    tau = getattr(args, "tau", None)
    if q is not None and tau is not None:
        raise UsageError("give either --q or --tau, not both")
    if q is not None:
        return QScale(_rational(q))
    if tau is not None:
        return TauShift(_rational(tau))
    if default_tau:
        return TauShift(1)
    raise UsageError("one of --q or --tau is required")


def _csv(text, conv):
    return [conv(x) for x in text.split(",") if x.strip()] if text else []


# -- documents -------------------------------------------------------------------


def _checks(witnesses):
    checks = []
    for i, w in enumerate(witnesses):
        # re-verify from the serialized form so the document certifies itself
        ok = witness_from_json(w.to_json()).verify()
        checks.append({"name": f"{i}:{w.type}", "ok": ok})
    return checks


def _document(command, params, verdict=None, witnesses=(), result=None):
    witnesses = tuple(witnesses)
    doc = {
        "schema": SCHEMA,
        "command": command,
        "params": params,
        "verdict": verdict.to_json() if verdict is not None else None,
        "witnesses": [w.to_json() for w in witnesses],
        "checks": _checks(witnesses),
    }
    if result is not None:
        doc["result"] = result
    return doc


# -- commands --------------------------------------------------------------------


def cmd_classify_q(args):
    act = QScale(_rational(args.q))
    a = _single(args.a, "a")
    v = qgalois.classify_first_order(a, act)
    sf = qgalois.standard_form(a, act)
    ws = list(v.witnesses) + [StandardFormWitness(a, act, sf.standard_part.to_ratfunc(), sf.gauge)]
    return _document("classify-q", {"a": render(a), **act.to_json()}, v, ws, {"standardForm": sf.to_json()})


def cmd_classify_shift(args):
    act = TauShift(_rational(args.tau))
    a = _single(args.a, "a")
    v = shiftgalois.shift_classify(a, act)
    sf = shiftgalois.shift_standard_form(a, act)
    ws = list(v.witnesses) + [StandardFormWitness(a, act, sf.standard_part.to_ratfunc(), sf.gauge)]
    return _document("classify-shift", {"a": render(a), **act.to_json()}, v, ws, {"standardForm": sf.to_json()})


def _independence(args, name, act, fn):
    as_ = _expressions(args.a)
    if not as_:
        raise UsageError("at least one --a is required")
    v = fn(as_, act)
    return _document(name, {"as": [render(a) for a in as_], **act.to_json()}, v, v.witnesses)


def cmd_independence_q(args):
    return _independence(args, "independence-q", QScale(_rational(args.q)), qgalois.independence_verdict)


def cmd_independence_shift(args):
    return _independence(args, "independence-shift", TauShift(_rational(args.tau)),
                         shiftgalois.shift_independence_verdict)


def cmd_delta(args):
    act = _action(args)
    bs = _expressions(args.b)
    if isinstance(act, QScale):
        delta, deps = qgalois.delta_dimension(bs, act)
    else:
        delta, deps = shiftgalois.shift_delta_dimension(bs, act)
    return _document("delta", {"bs": [render(b) for b in bs], **act.to_json()}, None, deps, {"delta": delta})


def cmd_reduce(args):
    act = _action(args)
    b = _single(args.b, "b")
    residue, k = (qgalois.reduce_mod_image if isinstance(act, QScale) else shiftgalois.shift_reduce_mod_image)(b, act)
    w = ReductionWitness(b, act, residue.reconstruct(), k)
    result = {"canonical": residue.to_json(), "isCoboundary": residue.is_zero(), "telescoper": render(k)}
    return _document("reduce", {"b": render(b), **act.to_json()}, None, [w], result)


def cmd_galois_report(args):
    act = _action(args)
    as_ = _expressions(args.a)
    if not as_:
        raise UsageError("at least one --a is required")
    N = _integer(args.N)
    if N < 1:
        raise InvalidParameterError("N must be >= 1")
    rep = qgalois.galois_report_for(as_, N, act)
    params = {"as": [render(a) for a in as_], "N": N, **act.to_json()}
    return _document("galois-report", params, rep.verdict, rep.verdict.witnesses, rep.to_json())


def cmd_build_matrix(args):
    as_ = _expressions(args.a)
    if not as_:
        raise UsageError("at least one --a is required")
    n = _integer(args.n)
    if args.derivation:
        derivation = Derivation(args.derivation)
    elif getattr(args, "tau", None) is not None:
        derivation = Derivation.PLAIN
    else:
        derivation = Derivation.EULER
    act = _action(args) if (args.q is not None or args.tau is not None) else (
        QScale(2) if derivation is Derivation.EULER else TauShift(1))
    a = as_[0] if len(as_) == 1 else as_
    M = extensions.build_iterated_matrix(a, n, derivation, act)
    result = {"matrix": M.to_json(), "upperTriangular": M.is_block_upper_triangular()}
    checks = []
    if args.twist:
        T = extensions.dual_twist(M, a)
        result["twisted"] = T.to_json()
        checks.append({"name": "twistUnipotent", "ok": extensions.is_unipotent(T)})
    if len(as_) == 1 and n <= extensions.MAX_VERIFY_DEPTH:
        checks.append({"name": "solutionIdentity",
                       "ok": extensions.verify_solution_identity(as_[0], n, derivation, act, M)})
    params = {"as": [render(x) for x in as_], "n": n, "derivation": derivation.value, **act.to_json()}
    doc = _document("build-matrix", params, None, (), result)
    doc["checks"] = checks
    if getattr(args, "pretty", False):
        doc["_text"] = M.pretty()
    return doc


def cmd_gamma(args):
    alphas = _csv(args.alphas, _rational)
    ns = _csv(args.ns, _integer)
    m = _integer(args.m) if args.m is not None else None
    p = shiftgalois.GammaProblem(tuple(alphas), tuple(ns), m)
    rep = shiftgalois.gamma_application(p)
    ws = [rep.witness] if rep.witness is not None else []
    result = rep.to_json()
    result.pop("witness", None)
    result["functions"] = p.labels()
    return _document("gamma", p.to_json(), None, ws, result)


def verify_document(doc) -> list:
    """Re-check every witness of a document; returns [{name, ok}]."""
    if doc.get("schema") != SCHEMA:
        return [{"name": "schema", "ok": False}]
    out = []
    for i, w in enumerate(doc.get("witnesses", [])):
        try:
            ok = witness_from_json(w).verify()
        except (DiffGaloisError, KeyError, ValueError, ZeroDivisionError):
            ok = False
        out.append({"name": f"{i}:{w.get('type')}", "ok": ok})
    for c in doc.get("checks", []):
        out.append({"name": f"recorded:{c['name']}", "ok": bool(c["ok"])})
    return out


def cmd_verify(args):
    text = sys.stdin.read() if args.document == "-" else Path(args.document).read_text()
    docs = [json.loads(line) for line in text.splitlines() if line.strip()] if args.lines else [json.loads(text)]
    results = []
    for doc in docs:
        if "error" in doc:
            continue
        results.extend(verify_document(doc))
    ok = all(r["ok"] for r in results)
    return {"schema": SCHEMA, "command": "verify", "params": {"document": args.document}, "verdict": None,
            "witnesses": [], "checks": results, "result": {"ok": ok, "documents": len(docs)}}


def cmd_batch(args):
    """Handled in :func:`main`; the batch output is JSON lines."""
    raise AssertionError("unreachable")


COMMANDS = {
    "classify-q": cmd_classify_q,
    "classify-shift": cmd_classify_shift,
    "independence-q": cmd_independence_q,
    "independence-shift": cmd_independence_shift,
    "delta": cmd_delta,
    "reduce": cmd_reduce,
    "galois-report": cmd_galois_report,
    "build-matrix": cmd_build_matrix,
    "gamma": cmd_gamma,
    "verify": cmd_verify,
    "batch": cmd_batch,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diffgalois", description="Decide hypertranscendence and independence for rank-one "
                                                "q-difference and shift equations over Q(z).")
    p.add_argument("--pretty", action="store_true", help="human-readable text instead of JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, *, a=False, b=False, q=False, tau=False, N=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        if a:
            sp.add_argument("--a", action="append", help="expression in z, or @file")
        if b:
            sp.add_argument("--b", action="append", help="expression in z, or @file")
        if q:
            sp.add_argument("--q", required=q == "required")
        if tau:
            sp.add_argument("--tau", default="1" if tau == "default" else None)
        if N:
            sp.add_argument("--N", required=True)
        return sp

    add("classify-q", "classify sigma_q f = a f", a=True, q="required")
    add("classify-shift", "classify sigma_tau f = a f", a=True, tau="default")
    add("independence-q", "independence of a diagonal q-system", a=True, q="required")
    add("independence-shift", "independence of a diagonal shift system", a=True, tau="default")
    add("delta", "rank modulo the image of sigma - 1", b=True, q=True, tau=True)
    add("reduce", "canonical residue modulo the image of sigma - 1", b=True, q=True, tau=True)
    add("galois-report", "Galois group dimensions of the N-th jet system", a=True, q=True, tau=True, N=True)
    sp = add("build-matrix", "iterated extension matrix M(n)", a=True, q=True, tau=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--derivation", choices=[d.value for d in Derivation])
    sp.add_argument("--twist", action="store_true", help="also emit the dual twist M(n)/a")
    sp = add("gamma", "Gamma / polygamma / m^z independence")
    sp.add_argument("--alphas", default="")
    sp.add_argument("--ns", default="")
    sp.add_argument("--m")
    sp = add("verify", "re-check every witness in a document")
    sp.add_argument("document", help="path or - for stdin")
    sp.add_argument("--lines", action="store_true", help="document is JSON lines (batch output)")
    sp = add("batch", "one command per line, JSON lines out")
    sp.add_argument("file")
    return p


def run_command(argv):
    """Parse and execute one command. Returns the document; raises on error."""
    args = build_parser().parse_args(argv)
    if args.command == "batch":
        raise UsageError("batch cannot be nested")
    return args, COMMANDS[args.command](args)


def _error_record(exc):
    return {"error": {"kind": type(exc).__name__, "message": str(exc), "exitCode": exit_code_for(exc)}}


def run_batch(path) -> list:
    records = []
    lines = Path(path).read_text().splitlines()
    for i, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            _, doc = run_command(shlex.split(text))
            doc.pop("_text", None)
            doc["line"] = i
            records.append(doc)
        except (DiffGaloisError, ValueError, OSError, ZeroDivisionError) as exc:
            rec = _error_record(exc)
            rec["line"] = i
            records.append(rec)
    return records


def pretty(doc) -> str:
    lines = [f"command: {doc['command']}"]
    for k, v in sorted(doc.get("params", {}).items()):
        lines.append(f"  {k}: {v}")
    if doc.get("verdict"):
        v = doc["verdict"]
        order = f" (order {v['order']})" if "order" in v else ""
        lines.append(f"verdict: {v['kind']}{order}")
        for k, x in sorted(v.get("flags", {}).items()):
            lines.append(f"  {k}: {x}")
    if "result" in doc:
        lines.append("result:")
        for k, x in sorted(doc["result"].items()):
            if k not in ("matrix", "twisted"):
                lines.append(f"  {k}: {json.dumps(x, sort_keys=True)}")
    if "_text" in doc:
        lines.append(doc["_text"])
    for w in doc.get("witnesses", []):
        fields = ", ".join(f"{k}={json.dumps(v)}" for k, v in sorted(w.items()) if k != "type")
        lines.append(f"witness {w['type']}: {fields}")
    for c in doc.get("checks", []):
        lines.append(f"check {c['name']}: {'ok' if c['ok'] else 'FAILED'}")
    return "\n".join(lines)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command == "batch":
            for rec in run_batch(args.file):
                print(json.dumps(rec, sort_keys=True))
            return 0
        doc = COMMANDS[args.command](args)
    except (DiffGaloisError, ValueError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc) if not isinstance(exc, OSError) else 2
    if getattr(args, "pretty", False):
        print(pretty(doc))
    else:
        doc.pop("_text", None)
        print(json.dumps(doc, sort_keys=True, indent=2))
    if args.command == "verify" and not doc["result"]["ok"]:
        return 1
    return 0
