"""Command-line front end.

    dethodge lc --shape 4 4 --module ic:4 --support 2
    dethodge iterate --shape 4 4 --module ox --supports 2 0 --format json
    dethodge verify --extended

Exit status is 0 on success, 1 for invalid input or a domain error, and 2
when a computed object violates one of the structural guarantees (odd Tate
twist, negative multiplicity, failed built-in check).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections import Counter
from typing import Sequence

from .errors import DomainViolation, InternalInconsistency, InvalidInput
from .groth import FactorTable, lc_class, lc_class_Q
from .hodge import (IdealSpec, filtration_multiset, qpideal_identity_check,
                    start_level, generation_level)
from .mhm import (IteratedClass, MHMClass, ModuleClass, Source, TwistedQ, TwistedSimple,
                  iterate, local_cohomology)
from .verify import VerifyReport, run_verify
from .weights import Box, MatrixShape, WeightMultiset, enumerate_weights, rep_dim, w_index

VERBS = ("lc", "mhm", "hodge", "genlevel", "iterate", "ideal", "dims", "verify")


class UsageError(InvalidInput):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_module(spec: str, shape: MatrixShape) -> Source:
    """``ic:p[:k]``, ``q:p[:k]`` or ``ox`` (= ic:n:0)."""
    if spec == "ox":
        return TwistedSimple(shape.n, 0)
    parts = spec.split(":")
    if parts[0] not in ("ic", "q") or len(parts) not in (2, 3):
        raise InvalidInput(f"malformed module spec {spec!r}; expected ic:p[:k], q:p[:k] or ox")
    try:
        idx = int(parts[1])
        k = int(parts[2]) if len(parts) == 3 else 0
    except ValueError:
        raise InvalidInput(f"malformed module spec {spec!r}; indices must be integers") from None
    if not 0 <= idx <= shape.n:
        raise InvalidInput(f"module index {idx} outside 0..{shape.n}")
    if parts[0] == "q":
        if not shape.is_square:
            raise InvalidInput(f"q: modules need a square shape, got {shape}")
        return TwistedQ.twisted(idx, k)
    return TwistedSimple.twisted(idx, k)


def parse_ideal(spec: str, n: int) -> IdealSpec:
    kind, *rest = spec.split(":")
    try:
        args = tuple(int(x) for x in rest)
    except ValueError:
        raise InvalidInput(f"malformed ideal spec {spec!r}") from None
    return IdealSpec(n, kind, args)


def default_box(shape: MatrixShape, k: int) -> Box:
    return Box(-(shape.m * shape.n + k), max(k + 1, 0))


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="dethodge", description="Mixed Hodge module structure of determinantal local cohomology.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("--shape", nargs=2, type=int, metavar=("M", "N"))
    ap.add_argument("--module", default="ox", metavar="SPEC", help="ic:p[:k] | q:p[:k] | ox")
    ap.add_argument("--support", type=int, metavar="Q")
    ap.add_argument("--supports", nargs="+", type=int, metavar="Q")
    ap.add_argument("--degree", type=int, metavar="J")
    ap.add_argument("--level", type=int, metavar="K")
    ap.add_argument("--box", nargs=2, type=int, metavar=("LO", "HI"))
    ap.add_argument("--ideal", metavar="SPEC",
                    help="rect:a:b | hodge:k | dsub:p | fkq:p:k | fksub:p:k | qpcheck:p:k")
    ap.add_argument("--format", choices=("table", "json", "csv"), default="table")
    ap.add_argument("--parallel", nargs="?", type=int, const=os.cpu_count() or 1, metavar="T")
    ap.add_argument("--extended", action="store_true", help="verify: add the optional cross-checks")
    return ap


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InvalidInput(f"{args.verb} requires --{name}")


def _shape(args) -> MatrixShape:
    _need(args, "shape")
    return MatrixShape(*args.shape)


# -- rendering ---------------------------------------------------------------

def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table(rows: list[Sequence]) -> str:
    rows = [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def _twist(obj) -> int:
    # public output: integer Tate twists only; .k raises on odd twist2
    return obj.k


def _name(obj) -> str:
    if isinstance(obj, TwistedQ):
        return f"Q_{obj.r}({_twist(obj)})"
    return f"IC_Z{obj.p}({_twist(obj)})"


def _terms(counter: Counter) -> str:
    items = sorted(counter.items(), key=lambda kv: (-(kv[0].r if isinstance(kv[0], TwistedQ) else kv[0].p),
                                                    kv[0].twist2))
    return " + ".join(_name(o) if v == 1 else f"{v}*{_name(o)}" for o, v in items) or "0"


def _summands(shape: MatrixShape, mod: ModuleClass) -> str:
    if not shape.is_square:
        return _terms(mod.factors)
    return _terms(mod.qsummands + mod.loose_simples(shape))


def _rows_of(mod: ModuleClass):
    for ts, v in sorted(mod.factors.items(), key=lambda kv: (-kv[0].p, kv[0].twist2)):
        yield ("ic", ts.p, _twist(ts), v)
    for tq, v in sorted(mod.qsummands.items(), key=lambda kv: (-kv[0].r, kv[0].twist2)):
        yield ("q", tq.r, _twist(tq), v)


def render_factor_table(table: FactorTable, fmt: str) -> str:
    if fmt == "json":
        return _json(table.to_json())
    if fmt == "csv":
        return _csv(["j", "r", "mult"], table.rows())
    rows = [["j", "factors"]]
    for j, row in table.entries.items():
        rows.append([j, " + ".join(f"D_{r}" if v == 1 else f"{v}*D_{r}" for r, v in sorted(row.items(), reverse=True))])
    return _table(rows)


def render_mhm(mhm: MHMClass, fmt: str) -> str:
    for mod in mhm.degrees.values():
        list(_rows_of(mod))  # integrality of every twist
    if fmt == "json":
        return _json(mhm.to_json())
    if fmt == "csv":
        return _csv(["j", "kind", "index", "twist", "mult"],
                    [(j, *row) for j, mod in mhm.degrees.items() for row in _rows_of(mod)])
    rows = [["j", "module", "weights"]]
    for j, mod in mhm.degrees.items():
        ws = sorted(mod.weights(mhm.shape).elements(), reverse=True)
        rows.append([j, _summands(mhm.shape, mod), " ".join(map(str, ws))])
    return _table(rows)


def render_iterated(it: IteratedClass, fmt: str) -> str:
    for mod in it.table.values():
        list(_rows_of(mod))
    if fmt == "json":
        return _json(it.to_json())
    if fmt == "csv":
        return _csv(["degrees", "kind", "index", "twist", "mult"],
                    [(" ".join(map(str, key)), *row) for key, mod in it.table.items() for row in _rows_of(mod)])
    rows = [["degrees", "module"]]
    for key, mod in it.table.items():
        rows.append([",".join(map(str, key)), _summands(it.shape, mod)])
    return _table(rows)


def render_weights(ms: WeightMultiset, n: int, fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        data = {"box": ms.box.to_dict(), "weights": ms.to_json(), "count": len(ms)}
        data.update(extra or {})
        return _json(data)
    if fmt == "csv":
        return _csv([f"l{i + 1}" for i in range(n)] + ["mult"], [(*lam, v) for lam, v in ms.sorted_items()])
    rows = [["lambda", "mult"]] + [["(" + ",".join(map(str, lam)) + ")", v] for lam, v in ms.sorted_items()]
    head = "".join(f"# {k}: {v}\n" for k, v in sorted((extra or {}).items()))
    return head + f"# box [{ms.box.lo}, {ms.box.hi}], {len(ms)} weight(s) with multiplicity\n" + _table(rows)


def render_verify(report: VerifyReport, fmt: str) -> str:
    if fmt == "json":
        return _json(report.to_json())
    if fmt == "csv":
        return _csv(["name", "ok", "gating"], [(c.name, int(c.ok), int(c.gating)) for c in report.checks])
    lines = []
    for c in report.checks:
        tag = ("PASS" if c.ok else "FAIL") + ("" if c.gating else " (optional)")
        line = f"{tag}  {c.name}  [{c.seconds:.3f}s]"
        if not c.ok:
            line += f"\n      expected {json.dumps(c.expected, sort_keys=True)}\n      got      {json.dumps(c.got, sort_keys=True)}"
        lines.append(line)
    lines.append("overall: " + ("PASS" if report.ok else "FAIL"))
    return "\n".join(lines) + "\n"


# -- verbs -------------------------------------------------------------------

def cmd_lc(args) -> str:
    shape = _shape(args)
    _need(args, "support")
    src = parse_module(args.module, shape)
    if isinstance(src, TwistedQ):
        table = lc_class_Q(shape, src.r, args.support)
    else:
        table = lc_class(shape, src.p, args.support)
    return render_factor_table(table, args.format)


def cmd_mhm(args) -> str:
    shape = _shape(args)
    _need(args, "support")
    return render_mhm(local_cohomology(shape, parse_module(args.module, shape), args.support), args.format)


def _filtration(args) -> tuple[MatrixShape, ModuleClass, Box]:
    shape = _shape(args)
    _need(args, "support", "degree", "level")
    src = parse_module(args.module, shape)
    mod = local_cohomology(shape, src, args.support).module(args.degree)
    box = Box(*args.box) if args.box else default_box(shape, args.level)
    return shape, mod, box


def cmd_hodge(args) -> str:
    shape, mod, box = _filtration(args)
    ms = filtration_multiset(shape, mod, args.level, box, workers=args.parallel)
    return render_weights(ms, shape.n, args.format)


def cmd_dims(args) -> str:
    shape, mod, box = _filtration(args)
    ms = filtration_multiset(shape, mod, args.level, box, workers=args.parallel)
    per = [(lam, v, rep_dim(lam, w_index(lam, shape), shape)) for lam, v in ms.sorted_items()]
    total = sum(v * d for _, v, d in per)
    if args.format == "json":
        return _json({"box": box.to_dict(), "dim": total,
                      "weights": [{"lambda": list(lam), "mult": v, "rep_dim": d} for lam, v, d in per]})
    if args.format == "csv":
        return _csv([f"l{i + 1}" for i in range(shape.n)] + ["mult", "rep_dim"], [(*lam, v, d) for lam, v, d in per])
    rows = [["lambda", "mult", "rep_dim"]] + [["(" + ",".join(map(str, lam)) + ")", v, d] for lam, v, d in per]
    return f"# box [{box.lo}, {box.hi}], total dimension {total}\n" + _table(rows)


def cmd_genlevel(args) -> str:
    shape = _shape(args)
    _need(args, "support")
    src = parse_module(args.module, shape)
    if not isinstance(src, TwistedSimple):
        raise InvalidInput("genlevel takes an ic: or ox module")
    p, q, k = src.p, args.support, src.k
    table = lc_class(shape, p, q)
    degrees = [args.degree] if args.degree is not None else table.degrees()
    out = {}
    for j in degrees:
        g = generation_level(shape, p, q, j)
        starts = [(r, start_level(shape, p, q, j, r) + k, a) for r, a in sorted(table.factors(j).items(), reverse=True)]
        out[j] = (None if g is None else g + k, starts)
    if args.format == "json":
        return _json({"shape": [shape.m, shape.n], "module": {"p": p, "twist": k}, "support": q,
                      "degrees": {str(j): {"generation_level": g,
                                           "start_levels": [{"r": r, "level": s, "mult": a} for r, s, a in st]}
                                  for j, (g, st) in out.items()}})
    if args.format == "csv":
        return _csv(["j", "r", "mult", "start_level", "generation_level"],
                    [(j, r, a, s, g) for j, (g, st) in out.items() for r, s, a in st])
    rows = [["j", "generation", "start levels"]]
    for j, (g, st) in out.items():
        rows.append([j, "-" if g is None else g, " ".join(f"D_{r}@{s}" for r, s, _ in st) or "-"])
    return _table(rows)


def cmd_iterate(args) -> str:
    shape = _shape(args)
    chain = args.supports or ([args.support] if args.support is not None else None)
    if not chain:
        raise InvalidInput("iterate requires --supports")
    return render_iterated(iterate(shape, parse_module(args.module, shape), chain), args.format)


def cmd_ideal(args) -> str:
    shape = _shape(args)
    _need(args, "ideal")
    if not shape.is_square:
        raise InvalidInput("ideal works on square shapes")
    n = shape.n
    if args.ideal.startswith("qpcheck:"):
        try:
            p, k = (int(x) for x in args.ideal.split(":")[1:])
        except ValueError:
            raise InvalidInput(f"malformed spec {args.ideal!r}; expected qpcheck:p:k") from None
        box = Box(*args.box) if args.box else default_box(shape, k)
        report = qpideal_identity_check(n, p, k, box)
        if args.format == "json":
            return _json(report.to_json())
        return f"{'ok' if report.ok else 'FAILED'}  n={n} p={p} k={k}  box [{box.lo}, {box.hi}]  " \
               f"{report.checked} weights" + (f"  counterexample {report.counterexample}" if report.counterexample else "") + "\n"
    spec = parse_ideal(args.ideal, n)
    k = spec.args[-1] if spec.kind in ("hodge", "fkq", "fksub") else 0
    box = Box(*args.box) if args.box else default_box(shape, k)
    ms = enumerate_weights(shape, box, spec.member, workers=args.parallel)
    return render_weights(ms, n, args.format, {"ideal": str(spec)})


def cmd_verify(args) -> str:
    report = run_verify(extended=args.extended)
    text = render_verify(report, args.format)
    if not report.ok:
        raise _VerifyFailed(text)
    return text


class _VerifyFailed(InternalInconsistency):
    def __init__(self, text: str):
        super().__init__("built-in verification failed")
        self.text = text


COMMANDS = {"lc": cmd_lc, "mhm": cmd_mhm, "hodge": cmd_hodge, "genlevel": cmd_genlevel,
            "iterate": cmd_iterate, "ideal": cmd_ideal, "dims": cmd_dims, "verify": cmd_verify}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text = COMMANDS[args.verb](args)
    except _VerifyFailed as exc:
        out.write(exc.text)
        return 2
    except (InvalidInput, DomainViolation) as exc:
        err.write(f"error: {exc}\n")
        return 1
    except InternalInconsistency as exc:
        err.write(f"internal inconsistency: {exc}\n")
        return 2
    out.write(text)
    return 0


def main() -> None:
    sys.exit(run())
