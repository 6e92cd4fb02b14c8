"""Command-line frontend.

    linkgrp present    FILE
    linkgrp check-sc   FILE
    linkgrp word       FILE WORD
    linkgrp geodesic   FILE WORD
    linkgrp conjugate  FILE U W
    linkgrp classes    FILE WORD
    linkgrp nontrivial FILE.pd

FILE is a presentation (``.pres``) or a diagram (``.pd``); a bare name such
as ``trefoil.pres`` that does not exist on disk is looked up among the
bundled fixtures.  Exit status: 0 for identity / conjugate / pass /
nontrivial, 1 for the negative answer, 2 for errors.
"""
import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from importlib.resources import files

from .conjugacy import are_conjugate, conjugacy_class_geodesics, geodesic_completion
from .diagram import BLACK, WHITE, compute_regions, parse_diagram
from .errors import LinkGroupError, ParseError
from .oracle import UNKNOWN, YES, Invariants, load_model
from .oracle import oracle_are_conjugate, oracle_is_identity
from .presentation import augmented_dehn, check_c4, check_t4, parse_presentation
from .rewriting import (cyclic_geodesic, dugopolski_is_identity, reduce_to_geodesic,
                        require_small_cancellation)
from .topology import is_nontrivial
from .words import format_word, min_rotation, parse_word

COMMANDS = ("present", "check-sc", "word", "geodesic", "conjugate", "classes", "nontrivial")
_NWORDS = {"word": 1, "geodesic": 1, "conjugate": 2, "classes": 1}


@dataclass
class RunConfig:
    command: str
    path: str
    words: list = field(default_factory=list)
    colour: str = "both"
    oracle: bool = False
    trace: bool = False
    json: bool = False
    svg: str = None
    length_cap: int = None
    depth_cap: int = None


class UsageError(Exception):
    pass


def resolve_path(path):
    if os.path.exists(path):
        return path
    bundled = files("linkgrp.data").joinpath(os.path.basename(path))
    if bundled.is_file():
        return str(bundled)
    raise UsageError(f"no such file: {path}")


def load_group(path):
    """(presentation, diagram or None, fixture name)."""
    text = open(path).read()
    name = os.path.basename(path).rsplit(".", 1)[0]
    if path.endswith(".pd"):
        d = parse_diagram(text)
        return augmented_dehn(compute_regions(d), d), d, name
    return parse_presentation(text), None, name


def _model(p, name):
    try:
        return load_model(p, name)
    except (ValueError, KeyError, IndexError):
        return None


def _witness(w):
    if w is None:
        return None
    return [format_word(x) if x is not None else None for x in w]


# -- commands ----------------------------------------------------------------

def _present(cfg, p, d, name):
    out = {"generators": [{"index": g.index, "parity": g.parity} for g in p.generators],
           "relators": [format_word(r) for r in p.base_relators],
           "symmetrized": len(p.relators)}
    return 0, out, p.to_text().rstrip("\n")


def _check_sc(cfg, p, d, name):
    c4, w4 = check_c4(p)
    t4, wt = check_t4(p)
    out = {"C''(4)": c4, "T(4)": t4}
    text = f"C''(4): {'pass' if c4 else 'fail'}, T(4): {'pass' if t4 else 'fail'}"
    if not c4:
        out["C''(4) witness"] = _witness(w4)
        text += "\nC''(4) witness: " + " | ".join(x for x in _witness(w4) if x)
    if not t4:
        out["T(4) witness"] = _witness(wt)
        text += "\nT(4) witness: " + " | ".join(_witness(wt))
    return (0 if c4 and t4 else 1), out, text


def _word(cfg, p, d, name):
    w = cfg.words[0]
    if cfg.colour == "both":
        geo, trace = reduce_to_geodesic(p, w, trace=cfg.trace or cfg.oracle)
        ident = not geo
    else:
        ident = dugopolski_is_identity(p, w, boundary=cfg.colour)
        geo, trace = None, None
    out = {"word": format_word(w), "identity": ident, "colour": cfg.colour}
    if geo is not None:
        out["geodesic"] = format_word(geo)
    text = "identity" if ident else "not identity"
    if cfg.trace and trace is not None:
        out["trace"] = [s.to_dict() for s in trace]
        if trace.steps:
            text += "\n" + trace.to_jsonl()
    if cfg.oracle:
        v = oracle_is_identity(p, w, cfg.length_cap, cfg.depth_cap, model=_model(p, name),
                               invariants=_invariants(p))
        text += _report(out, v, ident, trace)
    return (0 if ident else 1), out, text


def _geodesic(cfg, p, d, name):
    w = cfg.words[0]
    filt = None if cfg.colour == "both" else (WHITE if cfg.colour == BLACK else BLACK)
    geo, trace = reduce_to_geodesic(p, w, colour_filter=filt)
    out = {"word": format_word(w), "geodesic": format_word(geo), "length": len(geo)}
    text = format_word(geo)
    if cfg.trace:
        out["trace"] = [s.to_dict() for s in trace]
        if trace.steps:
            text += "\n" + trace.to_jsonl()
    if cfg.oracle:
        v = oracle_is_identity(p, tuple(w) + tuple(-a for a in reversed(geo)),
                               cfg.length_cap, cfg.depth_cap, model=_model(p, name),
                               invariants=_invariants(p))
        text += _report(out, v, True, trace)
    return 0, out, text


def _conjugate(cfg, p, d, name):
    u, w = cfg.words
    res = are_conjugate(p, u, w)
    out = {"u": format_word(u), "w": format_word(w), "conjugate": res.conjugate,
           "certificate": res.certificate}
    cert = ", ".join(f"{k}={v}" for k, v in sorted(res.certificate.items()))
    text = ("conjugate" if res.conjugate else "not conjugate") + "\ncertificate: " + cert
    v = cyclic_geodesic(p, w)
    if (cfg.json or cfg.svg) and v:
        tiling = geodesic_completion(p, v)
        out["tiling"] = tiling.to_dict()
        if cfg.svg:
            with open(cfg.svg, "w") as fh:
                fh.write(tiling.to_svg())
    if cfg.oracle:
        ov = oracle_are_conjugate(p, u, w, cfg.length_cap, cfg.depth_cap,
                                  model=_model(p, name), invariants=_invariants(p))
        text += _report(out, ov, res.conjugate, None)
    return (0 if res.conjugate else 1), out, text


def _classes(cfg, p, d, name):
    w = cfg.words[0]
    reps = sorted({min_rotation(r) for r in conjugacy_class_geodesics(p, w)},
                  key=lambda r: (len(r), r))
    out = {"word": format_word(w), "representatives": [format_word(r) for r in reps]}
    return 0, out, "\n".join(format_word(r) for r in reps)


def _nontrivial(cfg, p, d, name):
    if d is None:
        raise UsageError("nontrivial needs a diagram (.pd) file")
    ok, evidence = is_nontrivial(d)
    out = {"nontrivial": ok, "components": evidence}
    lines = ["nontrivial" if ok else "trivial"]
    for e in evidence:
        lines.append(f"component {e['component']}: longitude {e['longitude_word']}, "
                     f"geodesic {e['geodesic']}, parity changes {e['parity_changes']}")
    return (0 if ok else 1), out, "\n".join(lines)


def _invariants(p):
    return Invariants(p)


def _report(out, verdict, engine, trace):
    out["oracle"] = {"answer": verdict.answer, "method": verdict.method,
                     "explored": verdict.explored}
    if verdict.answer == UNKNOWN:
        return "\noracle: unknown"
    agree = (verdict.answer == YES) == bool(engine)
    out["oracle"]["agrees"] = agree
    if agree:
        return f"\noracle: agrees ({verdict.answer}, {verdict.method})"
    msg = f"\noracle: DISCREPANCY (engine {engine}, oracle {verdict.answer})"
    if trace is not None:
        out["trace"] = [s.to_dict() for s in trace]
        msg += "\n" + trace.to_jsonl()
    return msg


def _checked_word(p, text):
    w = parse_word(text)
    bad = [format_word((a,)) for a in w if abs(a) > p.ngens]
    if bad:
        raise ParseError(f"letters outside the presentation: {' '.join(bad)}")
    return w


_HANDLERS = {"present": _present, "check-sc": _check_sc, "word": _word,
             "geodesic": _geodesic, "conjugate": _conjugate, "classes": _classes,
             "nontrivial": _nontrivial}
_NEEDS_SC = {"word", "geodesic", "conjugate", "classes"}


def run(cfg, stdout=None):
    """Execute one command; returns the exit status."""
    stdout = stdout or sys.stdout
    try:
        if cfg.command not in _HANDLERS:
            raise UsageError(f"unknown command {cfg.command!r}")
        p, d, name = load_group(resolve_path(cfg.path))
        if cfg.command in _NEEDS_SC:
            require_small_cancellation(p)
            cfg.words = [_checked_word(p, w) for w in cfg.words]
        status, out, text = _HANDLERS[cfg.command](cfg, p, d, name)
    except (LinkGroupError, UsageError, OSError) as exc:
        if cfg.json:
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=stdout)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(out, indent=2, sort_keys=True) if cfg.json else text, file=stdout)
    return status


def build_parser():
    parser = argparse.ArgumentParser(prog="linkgrp", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--colour", choices=(WHITE, BLACK, "both"), default="both",
                        help="chain colour used by word/geodesic (boundary colour)")
    common.add_argument("--oracle", action="store_true", help="cross-check with the oracle")
    common.add_argument("--trace", action="store_true", help="emit the rewrite trace")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--svg", metavar="PATH", help="write the completion tiling as SVG")
    common.add_argument("--length-cap", type=int, default=None)
    common.add_argument("--depth-cap", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        sp = sub.add_parser(cmd, parents=[common])
        sp.add_argument("file")
        for k in range(_NWORDS.get(cmd, 0)):
            sp.add_argument(("u", "w")[k] if cmd == "conjugate" else "word")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    words = [getattr(args, k) for k in ("u", "w", "word") if getattr(args, k, None) is not None]
    cfg = RunConfig(args.command, args.file, words, args.colour, args.oracle, args.trace,
                    args.json, args.svg, args.length_cap, args.depth_cap)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
