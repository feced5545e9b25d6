"""
Command-line entry point.

Exit codes: 0 on success, 1 when a checked identity or prediction fails,
2 on usage errors (bad arguments, unreadable input, size limits).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__, enumeration
from .classify import (
    co_reverse_pattern_check, structural_report, verify_main_theorem,
    witness_detail, all_co_reduced,
)
from .diagram import Diagram, co, from_json_obj, from_text, rothe_bpd, to_json_obj, to_unicode
from .errors import BumplessError, InvalidInput
from .moves import DroopMove, apply_move
from .perm import PI, Permutation, avoids_all
from .poly import (
    a_table, grothendieck, grothendieck_oracle, schubert, schubert_oracle, verify_g_to_s,
)
from .render import to_svg
from .trace import trace

FORMATS = ("text", "json", "csv", "svg")


@dataclass(frozen=True)
class RunConfig:
    max_n: int = enumeration.DEFAULT_MAX_N
    cache_dir: str | None = None
    jobs: int = 1
    fmt: str = "text"

    def __post_init__(self):
        if self.max_n < 1:
            raise InvalidInput("--max-n must be at least 1")
        if self.jobs < 1:
            raise InvalidInput("--jobs must be at least 1")
        if self.fmt not in FORMATS:
            raise InvalidInput(f"--format must be one of {', '.join(FORMATS)}")


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except (InvalidInput, ValueError) as exc:
        raise UsageError(f"argument W: {exc}") from None


def _read_diagram(path: str) -> Diagram:
    try:
        raw = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"argument FILE: cannot read {path}: {exc.strerror}") from None
    if raw.lstrip().startswith("{"):
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise UsageError(f"argument FILE: {path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return from_json_obj(obj)
    return from_text(raw)


def _diagram_out(d: Diagram, cfg: RunConfig, unicode: bool = False) -> str:
    if cfg.fmt == "json":
        return _dump(to_json_obj(d))
    if cfg.fmt == "svg":
        return to_svg(d)
    if cfg.fmt == "csv":
        return "\n".join(",".join(r) for r in d.rows) + "\n"
    return (to_unicode(d) if unicode else d.text) + "\n"


def _no_format(cfg: RunConfig, *allowed: str) -> None:
    if cfg.fmt not in allowed:
        raise UsageError(f"--format {cfg.fmt} is not supported by this command (use {', '.join(allowed)})")


# commands

def cmd_rothe(args, cfg: RunConfig) -> int:
    sys.stdout.write(_diagram_out(rothe_bpd(_perm(args.w)), cfg, args.unicode))
    return 0


def cmd_enumerate(args, cfg: RunConfig) -> int:
    _no_format(cfg, "text", "json", "csv")
    s = enumeration.bpds_of(_perm(args.w))
    ds = s.reduced if args.reduced else s.all
    if cfg.fmt == "json":
        sys.stdout.write(_dump([to_json_obj(d) for d in ds]))
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["index", "tiles", "reduced"])
        red = {d.text for d in s.reduced}
        for k, d in enumerate(ds, 1):
            wr.writerow([k, "/".join(d.rows), d.text in red])
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write("\n\n".join(d.text for d in ds) + "\n")
        sys.stderr.write(f"{len(ds)} diagram(s)\n")
    return 0


def cmd_trace(args, cfg: RunConfig) -> int:
    _no_format(cfg, "text", "json")
    d = _read_diagram(args.file)
    tr = trace(d)
    if cfg.fmt == "json":
        sys.stdout.write(_dump(tr.to_json_obj()))
        return 0
    lines = [f"perm: {tr.perm}", f"reduced: {str(tr.reduced).lower()}"]
    lines.append("bumps: " + (" ".join(f"({i},{j})" for i, j in sorted(tr.bumps)) or "none"))
    multi = [f"{a}-{b}:{c}" for (a, b), c in tr.crossings.items() if c > 1]
    lines.append("repeated pairs: " + (" ".join(multi) or "none"))
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_co(args, cfg: RunConfig) -> int:
    sys.stdout.write(_diagram_out(co(_read_diagram(args.file)), cfg, args.unicode))
    return 0


def cmd_droop(args, cfg: RunConfig) -> int:
    d = _read_diagram(args.file)
    src = args.script
    try:
        text = Path(src).read_text() if os.path.exists(src) else src
        steps = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"argument SCRIPT: not a JSON array of moves: {exc}") from None
    if not isinstance(steps, list):
        raise UsageError("argument SCRIPT: expected a JSON array")
    for k, s in enumerate(steps):
        try:
            if isinstance(s, dict):
                m = DroopMove.from_json_obj(s)
            else:
                (a, b), (c, e) = s
                m = DroopMove("plain", (a, c, b, e))
        except (TypeError, ValueError, KeyError) as exc:
            raise UsageError(f"argument SCRIPT: move {k + 1}: {exc}") from None
        d = apply_move(d, m)
    sys.stdout.write(_diagram_out(d, cfg, args.unicode))
    return 0


def cmd_classify(args, cfg: RunConfig) -> int:
    _no_format(cfg, "text", "json")
    w = _perm(args.w)
    avoids = avoids_all(w, PI)
    reduced = all_co_reduced(w)
    out = {"w": str(w), "avoids_pi": avoids, "all_co_reduced": reduced, "agree": avoids == reduced}
    sys.stdout.write(_dump(out) if cfg.fmt == "json" else json.dumps(out) + "\n")
    return 0 if out["agree"] else 1


def cmd_verify_theorem(args, cfg: RunConfig) -> int:
    _no_format(cfg, "text", "json")
    rep = verify_main_theorem(args.n, jobs=cfg.jobs)
    sys.stdout.write(_dump(rep.to_json_obj()) if cfg.fmt == "json" else rep.to_text())
    return 0 if rep.ok else 1


def _poly_cmd(f, oracle, args, cfg: RunConfig) -> int:
    _no_format(cfg, "text", "json")
    w = _perm(args.w)
    p = f(w)
    ok = True
    if args.check:
        ok = p == oracle(w)
    if cfg.fmt == "json":
        obj = {"w": str(w), "terms": p.to_json_obj()}
        if args.check:
            obj["matches_oracle"] = ok
        sys.stdout.write(_dump(obj))
    else:
        sys.stdout.write(str(p) + "\n")
        if args.check:
            sys.stdout.write(f"oracle: {'match' if ok else 'MISMATCH'}\n")
    return 0 if ok else 1


def cmd_schubert(args, cfg: RunConfig) -> int:
    return _poly_cmd(schubert, schubert_oracle, args, cfg)


def cmd_grothendieck(args, cfg: RunConfig) -> int:
    return _poly_cmd(grothendieck, grothendieck_oracle, args, cfg)


def cmd_expand(args, cfg: RunConfig) -> int:
    _no_format(cfg, "text", "json", "csv")
    w = _perm(args.w)
    tab = a_table(w)
    ok = verify_g_to_s(w)
    if cfg.fmt == "csv":
        sys.stdout.write(tab.to_csv())
    elif cfg.fmt == "json":
        obj = tab.to_json_obj()
        obj["identity_holds"] = ok
        sys.stdout.write(_dump(obj))
    else:
        rhs = ""
        for k, (v, c) in enumerate(tab.signed().items()):
            body = ("" if abs(c) == 1 else f"{abs(c)}*") + f"S_{v}"
            rhs += ("-" + body if c < 0 else body) if k == 0 else (f" - {body}" if c < 0 else f" + {body}")
        lines = [f"G_{w} = {rhs}", f"identity: {'holds' if ok else 'FAILS'}"]
        sys.stdout.write("\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_witness(args, cfg: RunConfig) -> int:
    _no_format(cfg, "text", "json", "svg")
    w = _perm(args.w)
    r = witness_detail(w)
    if cfg.fmt == "svg":
        if r is None:
            raise UsageError(f"{w} avoids every pattern in PI; nothing to render")
        sys.stdout.write(to_svg(r.diagram))
    elif cfg.fmt == "json":
        obj = {"w": str(w), "witness": None}
        if r is not None:
            obj["witness"] = to_json_obj(r.diagram)
            obj["method"] = r.method
            obj["pattern"] = str(r.pattern) if r.pattern else None
            obj["occurrence"] = list(r.occurrence) if r.occurrence else None
            obj["co_trace"] = str(trace(co(r.diagram)).perm)
        sys.stdout.write(_dump(obj))
    elif r is None:
        sys.stdout.write("none\n")
    else:
        tag = f" via {r.pattern} at positions {','.join(map(str, r.occurrence))}" if r.pattern else ""
        sys.stdout.write(f"# {r.method}{tag}\n{r.diagram.text}\n")
    return 0


def cmd_lemmas(args, cfg: RunConfig) -> int:
    _no_format(cfg, "text", "json")
    rep = structural_report(args.n)
    cors = [co_reverse_pattern_check(m) for m in range(1, args.n + 1)]
    violations = [d for c in cors for d in c.violations]
    ok = rep.ok and not violations
    if cfg.fmt == "json":
        obj = rep.to_json_obj()
        obj["co_reverse"] = [c.to_json_obj() for c in cors]
        obj["ok"] = ok
        sys.stdout.write(_dump(obj))
    else:
        text = rep.to_text().replace("result: OK\n", "").replace("result: FAILED\n", "")
        count = sum(c.nonreduced for c in cors)
        text += f"non-reduced diagrams: {count}, without a reversed PI pattern in the co-trace: {len(violations)}\n"
        text += "result: " + ("OK" if ok else "FAILED") + "\n"
        sys.stdout.write(text)
    return 0 if ok else 1


def cmd_render(args, cfg: RunConfig) -> int:
    d = _read_diagram(args.file)
    svg = to_svg(d, cell=args.cell, bump_tiles=args.bump_tiles)
    if args.svg == "-":
        sys.stdout.write(svg)
    else:
        try:
            Path(args.svg).write_text(svg)
        except OSError as exc:
            raise UsageError(f"argument --svg: cannot write {args.svg}: {exc.strerror}") from None
    return 0


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS,
                        help="output format (default: text)")
    common.add_argument("--max-n", type=_positive, default=argparse.SUPPRESS, metavar="N",
                        help=f"largest permutation size to enumerate (default: {enumeration.DEFAULT_MAX_N})")
    common.add_argument("--cache-dir", default=argparse.SUPPRESS, metavar="DIR",
                        help=f"enumeration cache directory (default: ${enumeration.CACHE_ENV})")
    common.add_argument("--jobs", type=_positive, default=argparse.SUPPRESS, metavar="K",
                        help="worker processes for per-permutation checks (default: 1)")

    p = argparse.ArgumentParser(
        prog="bumpless",
        description="Bumpless pipe dreams, co-BPDs, droops, Schubert and Grothendieck polynomials.",
        parents=[common],
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("rothe", cmd_rothe, "print the Rothe BPD of W")
    sp.add_argument("w", metavar="W")
    sp.add_argument("--unicode", action="store_true", help="box-drawing characters in text output")

    sp = add("enumerate", cmd_enumerate, "list every BPD of W")
    sp.add_argument("w", metavar="W")
    sp.add_argument("--reduced", action="store_true", help="only reduced BPDs")

    sp = add("trace", cmd_trace, "trace the pipes of a diagram file")
    sp.add_argument("file", metavar="FILE", help="diagram in text or JSON form ('-' for stdin)")

    sp = add("co", cmd_co, "apply the co map to a diagram file")
    sp.add_argument("file", metavar="FILE")
    sp.add_argument("--unicode", action="store_true")

    sp = add("droop", cmd_droop, "apply a JSON array of moves to a diagram file")
    sp.add_argument("file", metavar="FILE")
    sp.add_argument("script", metavar="SCRIPT",
                    help='JSON array (or file) of [[a,b],[c,d]] droops or {"kind","rect","param"} moves')
    sp.add_argument("--unicode", action="store_true")

    sp = add("classify", cmd_classify, "decide all-co-reduced and PI-avoidance for W")
    sp.add_argument("w", metavar="W")

    sp = add("verify-theorem", cmd_verify_theorem, "check the characterization on all of S_N")
    sp.add_argument("--n", type=_positive, required=True, metavar="N")

    sp = add("schubert", cmd_schubert, "Schubert polynomial of W")
    sp.add_argument("w", metavar="W")
    sp.add_argument("--check", action="store_true", help="compare with the divided-difference oracle")

    sp = add("grothendieck", cmd_grothendieck, "Grothendieck polynomial of W")
    sp.add_argument("w", metavar="W")
    sp.add_argument("--check", action="store_true", help="compare with the divided-difference oracle")

    sp = add("expand", cmd_expand, "Schubert expansion coefficients of the Grothendieck polynomial of W")
    sp.add_argument("w", metavar="W")

    sp = add("witness", cmd_witness, "a BPD of W with non-reduced co-BPD")
    sp.add_argument("w", metavar="W")

    sp = add("lemmas", cmd_lemmas, "run the structural lemma and case-prediction suites up to size N")
    sp.add_argument("--n", type=_positive, required=True, metavar="N")

    sp = add("render", cmd_render, "draw a diagram file as SVG")
    sp.add_argument("file", metavar="FILE")
    sp.add_argument("--svg", required=True, metavar="OUT", help="output path ('-' for stdout)")
    sp.add_argument("--cell", type=_positive, default=40, help="cell size in pixels")
    sp.add_argument("--bump-tiles", action="store_true", help="draw bumps as the two elbows followed")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            max_n=getattr(args, "max_n", enumeration.DEFAULT_MAX_N),
            cache_dir=getattr(args, "cache_dir", None) or os.environ.get(enumeration.CACHE_ENV) or None,
            jobs=getattr(args, "jobs", 1),
            fmt=getattr(args, "format", "text"),
        )
        enumeration.set_max_n(cfg.max_n)
        enumeration.set_cache_dir(cfg.cache_dir)
        return args.func(args, cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except BumplessError as exc:
        sys.stderr.write(f"bumpless: error: {exc}\n")
        return 2
    except BrokenPipeError:  # pragma: no cover
        return 0
    return 0  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
