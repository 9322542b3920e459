"""Command-line front end: ``paperfold <verb> ...``.

Exit status 0 on success, 1 when a check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .words import (format_word, gen_n_folding, is_finite_folding,
                    is_n_folding, folding_level, parse_word)

WORD_HEADER = "# index origin 1"


class UsageError(Exception):
    pass


def read_word(text: str) -> tuple:
    """A word file: ``#`` comment lines, then + and - characters."""
    body = "".join(line for line in text.splitlines()
                   if not line.lstrip().startswith("#"))
    return parse_word(body)


def write_word(w) -> str:
    return f"{WORD_HEADER}\n{format_word(w)}\n"


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _dump(rec) -> str:
    return json.dumps(rec, sort_keys=True) + "\n"


def _parse_signs(text: str) -> tuple:
    try:
        return parse_word(text)
    except ValueError as exc:
        raise UsageError(str(exc))


# -- verbs ---------------------------------------------------------------------

def cmd_gen_seq(a):
    w = gen_n_folding(_parse_signs(a.dirs))
    _write(a.out, write_word(w) if a.out else format_word(w) + "\n")
    return 0


def cmd_check_seq(a):
    word = a.word_opt if a.word_opt is not None else a.word
    if word is not None:
        w = _parse_signs(word)
    else:
        src = sys.stdin.read() if a.file in (None, "-") else open(a.file).read()
        try:
            w = read_word(src)
        except ValueError as exc:
            raise UsageError(str(exc))
    n = folding_level(w)
    nf = n is not None and is_n_folding(w)
    ff = is_finite_folding(w)
    print(f"length {len(w)}")
    print(f"n-folding: {'yes (n=%d)' % n if nf else 'no'}")
    print(f"finite folding: {'yes' if ff else 'no'}")
    return 0 if (ff or not a.strict) else 1


def cmd_complexity(a):
    from .sequences import complexity, named_spec
    try:
        spec = named_spec(a.spec)
    except KeyError:
        raise UsageError(f"unknown spec {a.spec!r}")
    ts = range(1, a.t + 1) if a.all else [a.t]
    for t in ts:
        c = complexity(spec, t)
        print(f"{t} {c}" if a.all else c)
    return 0


def cmd_curve(a):
    from .curves import Curve, folding_curve
    from .render import RenderStyle, render_curve
    dirs = "ENWS"
    if a.dir not in dirs:
        raise UsageError("--dir must be one of E, N, W, S")
    start = tuple(a.start)
    if a.dirs is not None:
        c = folding_curve(_parse_signs(a.dirs), start, dirs.index(a.dir))
    elif a.turns is not None:
        c = Curve(start, dirs.index(a.dir), _parse_signs(a.turns), 0)
    else:
        raise UsageError("give --turns or --dirs")
    if a.out or not a.svg:
        _write(a.out, _dump(c.to_record()))
    if a.svg:
        style = RenderStyle(alpha=a.alpha, show_derivatives=a.derivatives)
        _write(a.svg, render_curve(c, style))
    return 0


def _read_curve(path):
    from .curves import Curve
    try:
        return Curve.from_record(_load_json(path))
    except (KeyError, ValueError) as exc:
        raise UsageError(f"{path}: not a curve record ({exc})")


def cmd_derive(a):
    from .curves import Ambiguous, NotDerivable, derivative
    c = _read_curve(a.input)
    try:
        for _ in range(a.times):
            c = derivative(c, trim=a.trim)
    except (NotDerivable, Ambiguous) as exc:
        print(f"not derivable: {exc}", file=sys.stderr)
        return 1
    _write(a.output, _dump(c.to_record()))
    return 0


def cmd_antiderive(a):
    from .curves import antiderivatives
    c = _read_curve(a.input)
    if c.level == 0:
        # work in the doubled frame
        c = c.scaled2()
    _write(a.output, _dump(antiderivatives(c)[a.which].to_record()))
    return 0


CONSTRUCTIONS = ("positive", "alternating", "effective", "fig9")


def cmd_cover(a):
    from . import constructions as K
    from .covering import validate_covering
    hw = a.half_width
    if a.construction != "effective" and (hw < 1 or hw & (hw - 1)):
        raise UsageError("--half-width must be a power of 2")
    build = {"positive": lambda: K.positive_covering(hw),
             "alternating": lambda: K.alternating_covering(hw),
             "effective": lambda: K.effective_single_covering(a.rounds),
             "fig9": lambda: K.fig9_covering(hw)}[a.construction]
    cov = build()
    _write(a.out, _dump(cov.to_record()))
    if a.validate:
        rep = validate_covering(cov)
        print(f"valid: {rep.ok}, curves: {rep.n_curves}, "
              f"segments: {rep.n_segments}", file=sys.stderr)
        return 0 if rep.ok else 1
    return 0


def cmd_verify(a):
    from .verify import UnknownCheck, registry, run_check
    if a.list:
        for cid, anchor, defaults in registry():
            print(f"{cid}\t{anchor}\t{json.dumps(defaults)}")
        return 0
    ids = sorted(a.check) if a.check else [r[0] for r in registry()]
    status = 0
    lines = []
    for cid in ids:
        try:
            rep = run_check(cid)
        except UnknownCheck:
            raise UsageError(f"unknown check {cid!r}")
        line = rep.to_json()
        lines.append(line)
        print(line, flush=True)
        if not rep.ok:
            status = 1
    if a.out:
        _write(a.out, "\n".join(lines) + "\n")
    return status


def cmd_render(a):
    from .covering import Covering
    from .curves import Curve
    from .render import RenderStyle, render_covering, render_curve
    rec = _load_json(a.input)
    style = RenderStyle(alpha=a.alpha, show_tiles=a.tiles,
                        show_derivatives=a.derivatives)
    try:
        if "curves" in rec:
            svg = render_covering(Covering.from_record(rec), style)
        else:
            svg = render_curve(Curve.from_record(rec), style)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"{a.input}: {exc}")
    _write(a.output, svg)
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paperfold",
                                description="Paperfolding curves and the "
                                "coverings of the plane they form.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("gen-seq", help="print the n-folding word for fold "
                       "directions")
    s.add_argument("--dirs", required=True, help="fold signs, e.g. -++")
    s.add_argument("--out", help="write a word file instead of printing")
    s.set_defaults(fn=cmd_gen_seq)

    s = sub.add_parser("check-seq", help="n-folding and finite folding "
                       "verdicts for a word")
    s.add_argument("word", nargs="?", help="the word (else read --file)")
    s.add_argument("--word", dest="word_opt", help="the word, may start "
                   "with -")
    s.add_argument("--file", help="word file, - for stdin")
    s.add_argument("--strict", action="store_true",
                   help="exit 1 when the word is not finite folding")
    s.set_defaults(fn=cmd_check_seq)

    s = sub.add_parser("complexity", help="number of distinct factors")
    s.add_argument("--spec", default="positive",
                   help="positive or alternating")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--all", action="store_true", help="every length 1..t")
    s.set_defaults(fn=cmd_complexity)

    s = sub.add_parser("curve", help="build a curve record and/or SVG")
    s.add_argument("--turns", help="turn word")
    s.add_argument("--dirs", help="fold signs of an n-folding curve")
    s.add_argument("--start", type=int, nargs=2, default=(0, 0))
    s.add_argument("--dir", default="E")
    s.add_argument("--out", help="curve record path (default stdout)")
    s.add_argument("--svg", help="SVG output path")
    s.add_argument("--alpha", type=float, default=0.15)
    s.add_argument("--derivatives", type=int, default=0)
    s.set_defaults(fn=cmd_curve)

    s = sub.add_parser("derive", help="derivative of a curve file")
    s.add_argument("input")
    s.add_argument("output", nargs="?")
    s.add_argument("--times", type=int, default=1)
    s.add_argument("--trim", action="store_true",
                   help="allow pairing from the second segment")
    s.set_defaults(fn=cmd_derive)

    s = sub.add_parser("antiderive", help="antiderivative of a curve file")
    s.add_argument("input")
    s.add_argument("output", nargs="?")
    s.add_argument("--which", type=int, choices=(0, 1), default=0,
                   help="0 leaves on the left, 1 on the right")
    s.set_defaults(fn=cmd_antiderive)

    s = sub.add_parser("cover", help="write a covering file")
    s.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    s.add_argument("--half-width", type=int, default=16)
    s.add_argument("--rounds", type=int, default=3,
                   help="extension rounds for the effective covering")
    s.add_argument("--out", help="covering file (default stdout)")
    s.add_argument("--validate", action="store_true")
    s.set_defaults(fn=cmd_cover)

    s = sub.add_parser("verify", help="run registered checks")
    s.add_argument("--check", action="append", help="check id (repeatable)")
    s.add_argument("--list", action="store_true")
    s.add_argument("--out", help="also write the JSON lines here")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("render", help="curve or covering file to SVG")
    s.add_argument("input")
    s.add_argument("output", nargs="?")
    s.add_argument("--alpha", type=float, default=0.15)
    s.add_argument("--tiles", action="store_true")
    s.add_argument("--derivatives", type=int, default=0)
    s.set_defaults(fn=cmd_render)
    return p


SIGN_FLAGS = ("--dirs", "--turns", "--word")


def _join_sign_values(argv: list) -> list:
    """Keep ``--dirs -++`` from being read as an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in SIGN_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    a = parser.parse_args(_join_sign_values(argv))
    try:
        return a.fn(a)
    except UsageError as exc:
        print(f"paperfold {a.verb}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"paperfold {a.verb}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
