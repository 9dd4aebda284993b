"""Command line driver: ``rokhlin classify|eq|order|witness|jep|catalog``."""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import catalog
from .classify import classify
from .dsl import (GENUS_INF, SurfaceDesc, SurfaceSyntaxError, has_nonplanar, parse_ends,
                  parse_surface, render_expr, render_surface, validate_surface)
from .endspace.embed import Tri, homeo_eq
from .endspace.pieces import PieceError, parse_piece
from .endspace.sorts import analyze
from .jepcheck import JepError, joint_realize, make_symbolic_map, verify_certificate
from .order import leq
from .report import dumps, make_report
from .witness import (EmbedSearchFailed, NotDoublyPointed, NotRokhlin, TrivialGroup,
                      dense_element_schedule, end_swap_schedule, verify_dense_schedule,
                      verify_swap_schedule)

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED = 0, 1, 2
DEFAULT_DEPTH = 6


class InputError(ValueError):
    pass


def default_depth() -> int:
    raw = os.environ.get("ROKHLIN_DEPTH")
    if not raw:
        return DEFAULT_DEPTH
    try:
        return max(1, int(raw))
    except ValueError:
        return DEFAULT_DEPTH


def _text_of(spec: str) -> str:
    if spec.startswith("catalog:"):
        name = spec[len("catalog:"):]
        if name not in catalog.CATALOG:
            raise InputError(f"unknown catalog entry {name!r}")
        return catalog.CATALOG[name][0]
    if spec.startswith("expr:"):
        return spec[len("expr:"):]
    if os.path.isfile(spec):
        with open(spec, "rb") as fh:
            raw = fh.read()
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"{spec}: not UTF-8") from exc
    return spec


def load_surface(spec: str) -> SurfaceDesc:
    """A surface from a catalog name, file, ``expr:`` text or bare text.

    A bare end expression gets genus inf when it has a nonplanar end, else 0.
    """
    text = _text_of(spec)
    if text.lstrip().startswith("surface"):
        return parse_surface(text)
    ends = parse_ends(text)
    s = SurfaceDesc(GENUS_INF if has_nonplanar(ends) else 0, ends)
    validate_surface(s)
    return s


def load_ends(spec: str):
    text = _text_of(spec)
    if text.lstrip().startswith("surface"):
        return parse_surface(text).ends
    return parse_ends(text)


def resolve_locator(e, text: str):
    """``limit``, ``isolated``, ``cantor``, ``base`` or an explicit ``Kind@path``."""
    words = {"limit": "OmegaLimit", "isolated": "IsolatedAtom", "cantor": "CantorPoint",
             "base": "CantorOfBasePoint"}
    sorts = analyze(e).sorts
    if text in words:
        hits = [s.locator for s in sorts if s.locator.kind == words[text]]
        if not hits:
            raise InputError(f"no {text} end in {render_expr(e)}")
        return min(hits, key=lambda loc: (len(loc.path), loc.path))
    for s in sorts:
        if str(s.locator) == text:
            return s.locator
    known = ", ".join(str(s.locator) for s in sorts)
    raise InputError(f"unknown locator {text!r}; known: {known}")


def parse_mapspec(text: str) -> tuple:
    """``id`` or ``src>dst,src>dst`` with piece descriptors."""
    text = text.strip()
    if text in ("", "id"):
        return ()
    pairs = []
    for part in text.split(","):
        src, sep, dst = part.partition(">")
        if not sep:
            raise InputError(f"bad map pair {part!r}; expected src>dst")
        pairs.append((parse_piece(src.strip()), parse_piece(dst.strip())))
    return tuple(pairs)


# ------------------------------------------------------------------ output

class Out:
    def __init__(self, args):
        self.json = args.json
        self.timings = args.timings

    def emit(self, report, line):
        if not self.json:
            print(line)
            return
        if not self.timings:
            report.pop("timings", None)
        print(dumps(report))

    def error(self, command, spec, exc):
        msg = f"{spec}: {type(exc).__name__}: {exc}"
        print(msg, file=sys.stderr)
        if self.json:
            rep = make_report(command, {"spec": spec}, {"error": type(exc).__name__,
                                                         "message": str(exc)})
            print(dumps(rep))


class _Clock:
    def __init__(self):
        self.phases = {}

    def run(self, name, fn, *a, **kw):
        t = time.perf_counter()
        try:
            return fn(*a, **kw)
        finally:
            self.phases[name] = self.phases.get(name, 0.0) + (time.perf_counter() - t) * 1000


_INPUT_ERRORS = (SurfaceSyntaxError, ValueError, InputError, PieceError, OSError)


def _classify_one(spec, depth):
    clock = _Clock()
    try:
        s = clock.run("parse", load_surface, spec)
    except _INPUT_ERRORS as exc:
        return spec, exc, None
    v = clock.run("classify", classify, s, depth)
    return spec, v, clock.phases


def cmd_classify(args, out: Out) -> int:
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(lambda sp: _classify_one(sp, args.depth), args.inputs))
    else:
        results = [_classify_one(sp, args.depth) for sp in args.inputs]
    code = EXIT_OK
    for spec, v, phases in results:
        if isinstance(v, Exception):
            out.error("classify", spec, v)
            code = EXIT_ERROR
            continue
        certs = []
        ssj = v.evidence.get("self_similarity", {})
        if "certificate" in ssj:
            certs.append(ssj["certificate"])
        rep = make_report("classify", {"spec": spec, "surface": render_surface(v.surface)},
                          v.to_json(), certs, v.axioms, phases)
        rok = {Tri.TRUE: "true", Tri.FALSE: "false", Tri.UNKNOWN: "undecidable"}[v.rokhlin]
        out.emit(rep, f"{spec}: rokhlin={rok} reason={v.reason} "
                      f"comeager={str(v.comeager).lower()}")
        if v.rokhlin is Tri.UNKNOWN and code == EXIT_OK:
            code = EXIT_UNDECIDED
    return code


def cmd_eq(args, out: Out) -> int:
    clock = _Clock()
    try:
        a = clock.run("parse", load_ends, args.a)
        b = clock.run("parse", load_ends, args.b)
    except _INPUT_ERRORS as exc:
        out.error("eq", f"{args.a} {args.b}", exc)
        return EXIT_ERROR
    d = clock.run("eq", homeo_eq, a, b)
    rep = make_report("eq", {"a": render_expr(a), "b": render_expr(b)}, d.to_json(),
                      (), d.axioms, clock.phases)
    out.emit(rep, f"{d.label} ({d.reason})")
    return EXIT_UNDECIDED if d.unknown else EXIT_OK


def cmd_order(args, out: Out) -> int:
    clock = _Clock()
    try:
        e = clock.run("parse", load_ends, args.input)
        x = resolve_locator(e, args.x)
        y = resolve_locator(e, args.y)
    except _INPUT_ERRORS as exc:
        out.error("order", args.input, exc)
        return EXIT_ERROR
    d = clock.run("order", leq, y, x, e, args.depth)
    verdict = {"y": str(y), "x": str(x), "y_leq_x": d.to_json()}
    certs = [d.cert.to_json()] if d.cert is not None else []
    rep = make_report("order", {"spec": args.input, "ends": render_expr(e), "x": args.x,
                                "y": args.y}, verdict, certs, d.axioms, clock.phases)
    res = {Tri.TRUE: "true", Tri.FALSE: "false", Tri.UNKNOWN: "unknown"}[d.value]
    out.emit(rep, f"{y} <= {x}: {res} ({d.reason})")
    return EXIT_UNDECIDED if d.unknown else EXIT_OK


def cmd_witness(args, out: Out) -> int:
    clock = _Clock()
    try:
        s = clock.run("parse", load_surface, args.input)
        if args.count < 1:
            raise InputError("count must be positive")
        if args.kind == "dense":
            sched = clock.run("schedule", dense_element_schedule, s, args.count, args.depth)
            ok = clock.run("verify", verify_dense_schedule, sched, args.depth)
        else:
            sched = clock.run("schedule", end_swap_schedule, s, args.count)
            ok = clock.run("verify", verify_swap_schedule, sched)
    except (NotRokhlin, TrivialGroup, NotDoublyPointed, EmbedSearchFailed) as exc:
        out.error("witness", args.input, exc)
        return EXIT_ERROR
    except _INPUT_ERRORS as exc:
        out.error("witness", args.input, exc)
        return EXIT_ERROR
    verdict = {"kind": args.kind, "verified": ok}
    rep = make_report("witness", {"spec": args.input, "surface": render_surface(s),
                                  "kind": args.kind, "n": args.count},
                      verdict, [sched.to_json()], (), clock.phases)
    if args.kind == "dense":
        lines = [f"{e.n}: genus {e.piece.genus}, chunk "
                 f"[{', '.join(render_expr(g) for g in e.piece.chunk)}], word {e.to_json()['word']}"
                 for e in sched.entries]
    else:
        lines = [f"{r.n}: V'={[x for x in r.to_json()['V_prime']]} W'={r.to_json()['W_prime']}"
                 for r in sched.rows]
    out.emit(rep, "\n".join(lines + [f"verified: {str(ok).lower()}"]))
    return EXIT_OK if ok else EXIT_ERROR


def cmd_jep(args, out: Out) -> int:
    clock = _Clock()
    try:
        e = clock.run("parse", load_ends, args.input)
        m1 = make_symbolic_map(e, parse_mapspec(args.m1))
        m2 = make_symbolic_map(e, parse_mapspec(args.m2))
        c = clock.run("realize", joint_realize, e, m1, m2, args.depth)
    except (JepError, RuntimeError) as exc:
        out.error("jep", args.input, exc)
        return EXIT_ERROR
    except _INPUT_ERRORS as exc:
        out.error("jep", args.input, exc)
        return EXIT_ERROR
    ok = clock.run("verify", verify_certificate, c, e, m1, m2)
    rep = make_report("jep", {"spec": args.input, "m1": args.m1, "m2": args.m2},
                      {"realized": True, "verified": ok, "level": c.level},
                      [c.to_json()], (), clock.phases)
    out.emit(rep, f"B = {c.to_json()['B']}, h = {c.to_json()['h']}, verified: {str(ok).lower()}")
    return EXIT_OK if ok else EXIT_ERROR


def cmd_catalog(args, out: Out) -> int:
    entries = [{"name": n, "surface": render_surface(catalog.get(n)),
                "description": catalog.describe(n)} for n in catalog.names()]
    rep = make_report("catalog", {}, {"entries": entries})
    out.emit(rep, "\n".join(f"{x['name']:24s} {x['surface']}" for x in entries))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON reports, one per line")
    common.add_argument("--depth", type=int, default=None,
                        help="search depth budget (default $ROKHLIN_DEPTH or 6)")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for batches")
    common.add_argument("--timings", action="store_true", help="include per-phase timings")

    p = argparse.ArgumentParser(prog="rokhlin", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", parents=[common], help="Rokhlin and comeager verdicts")
    c.add_argument("inputs", nargs="+")
    c = sub.add_parser("eq", parents=[common], help="homeomorphism test of two end spaces")
    c.add_argument("a")
    c.add_argument("b")
    c = sub.add_parser("order", parents=[common], help="is end y below end x?")
    c.add_argument("input")
    c.add_argument("x")
    c.add_argument("y")
    c = sub.add_parser("witness", parents=[common], help="dense or swap schedules")
    c.add_argument("input")
    c.add_argument("kind", choices=["dense", "swap"])
    c.add_argument("count", type=int, help="entries (dense) or depth (swap)")
    c = sub.add_parser("jep", parents=[common], help="joint-embedding certificate")
    c.add_argument("input")
    c.add_argument("m1", nargs="?", default="id")
    c.add_argument("m2", nargs="?", default="id")
    sub.add_parser("catalog", parents=[common], help="list the built-in surfaces")
    return p


COMMANDS = {"classify": cmd_classify, "eq": cmd_eq, "order": cmd_order,
            "witness": cmd_witness, "jep": cmd_jep, "catalog": cmd_catalog}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.depth is None:
        args.depth = default_depth()
    if args.depth < 1 or args.jobs < 1:
        print("--depth and --jobs must be positive", file=sys.stderr)
        return EXIT_ERROR
    return COMMANDS[args.command](args, Out(args))


if __name__ == "__main__":
    sys.exit(main())
