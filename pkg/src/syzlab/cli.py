"""``syzlab`` command line.

Exit codes: 0 computation or verdict OK, 1 criterion hypotheses not met,
2 input error, 3 internal cross-check disagreement (or golden mismatch).
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from syzlab import __version__
from syzlab.acceptance import CORPUS_RINGS, corpus_ring
from syzlab.criteria import (
    CriterionRefused,
    free_summand,
    gdim_zero_up_to,
    gorenstein_criterion_ext_L_R,
    gorenstein_criterion_omega,
    gorenstein_scan_syzygies_of_omega,
    no_summand_audit,
    regularity_criterion,
    socle_lemma_check,
    takahashi_check,
)
from syzlab.homology import ext, hom_module, socle, tor
from syzlab.invariants import canonical_module, classify, hilbert
from syzlab.modexpr import ExprError, parse_module
from syzlab.poly import PolynomialError
from syzlab.resolve import (
    NotRegularError,
    default_nmax,
    minimal_free_resolution,
    minimal_presentation,
    syzygy_module,
)
from syzlab.rings import RingError, define_ring

OK, REFUSED, INPUT_ERROR, DISAGREEMENT = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------- input helpers

def load_ring(text: str):
    """A ring from a JSON file, an inline JSON object or a bundled corpus name."""
    if text in CORPUS_RINGS:
        return corpus_ring(text)
    path = Path(text)
    if not text.lstrip().startswith("{") and not path.exists():
        raise InputError(f"ring file not found: {text} (bundled rings: {', '.join(CORPUS_RINGS)})")
    try:
        return define_ring(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"ring description is not valid JSON: {exc}") from None


def parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise InputError(f"range must look like a..b, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise InputError(f"invalid range {text!r}")
    return lo, hi


def _term(args, ring, name, default=None):
    text = getattr(args, name, None) or default
    if text is None:
        raise InputError(f"--{name} is required")
    return parse_module(ring, text)


def _module(args, ring, name, default=None):
    return _term(args, ring, name, default).module


def _image_or_module(term):
    """Criteria want syzygy images of k; other modules only run exploratory."""
    img = term.syzygy_image()
    return img if img is not None else term.module


def _ring_poly_cols(ring, cols, rank):
    return [[ring.fmt({m: x for (c, m), x in col.items() if c == l}) for l in range(rank)]
            for col in cols]


# ---------------------------------------------------------------- commands

def cmd_classify(args, ring):
    return classify(ring).to_json()


def cmd_resolve(args, ring):
    M = _module(args, ring, "M", "k")
    n = args.nmax if args.nmax is not None else default_nmax(ring)
    F = minimal_free_resolution(M, n)
    maps = [_ring_poly_cols(ring, F.maps[i], len(F.shifts[i])) for i in range(len(F.maps))]
    return {"module": args.M or "k", "nmax": n, "ranks": F.ranks(), "shifts": [list(s) for s in F.shifts],
            "betti": F.betti.to_json(), "complete": F.complete, "periodicHeuristic": F.periodic,
            "differentials": maps, "minimal": F.is_minimal()}


def cmd_betti(args, ring):
    M = _module(args, ring, "M", "k")
    n = args.nmax if args.nmax is not None else default_nmax(ring)
    F = minimal_free_resolution(M, n)
    return {"module": args.M or "k", "nmax": n, "betti": F.betti.to_json(), "totals": F.ranks(),
            "complete": F.complete, "periodicHeuristic": F.periodic}


def cmd_syzygy(args, ring):
    M = _module(args, ring, "M", "k")
    Om = minimal_presentation(syzygy_module(M, args.n))
    return {"module": args.M or "k", "n": args.n, "syzygy": Om.describe(), "mu": Om.rank,
            "hilbert": hilbert(Om).to_json()}


def cmd_hilbert(args, ring):
    M = _module(args, ring, "M", "R")
    h = hilbert(M)
    return {"module": args.M or "R", **h.to_json(args.count)}


def cmd_socle(args, ring):
    M = _module(args, ring, "M", "R")
    return {"module": args.M or "R", **socle(M).to_json(ring)}


def _homology(fn, args, ring):
    M = _module(args, ring, "M")
    N = _module(args, ring, "N")
    lo, hi = parse_range(args.range)
    return {"M": args.M, "N": args.N, **fn(M, N, lo, hi).to_json()}


def cmd_ext(args, ring):
    return _homology(ext, args, ring)


def cmd_tor(args, ring):
    return _homology(tor, args, ring)


def cmd_hom(args, ring):
    M = _module(args, ring, "M")
    N = _module(args, ring, "N")
    H = hom_module(M, N)
    return {"M": args.M, "N": args.N, "hom": H.module.describe(),
            "hilbert": hilbert(H.module).to_json(args.count)}


def cmd_trace(args, ring):
    M = _module(args, ring, "M")
    return {"module": args.M, **free_summand(M).to_json(ring)}


def cmd_canonical(args, ring):
    w = canonical_module(ring)
    return {"canonical": w.describe(), "type": w.rank, "hilbert": hilbert(w).to_json()}


def cmd_socle_lemma(args, ring):
    M = _module(args, ring, "M", "k")
    lo, hi = parse_range(args.range or "1..4")
    return {"module": args.M or "k", **socle_lemma_check(M, lo, hi)}


def cmd_takahashi(args, ring):
    lo, hi = parse_range(args.range or "1..5")
    if lo < 1:
        raise InputError("takahashi range must start at 1 or later")
    return takahashi_check(ring, args.ell, lo, hi)


def cmd_no_summand(args, ring):
    M = _module(args, ring, "M", "k")
    rep = no_summand_audit(M, args.nmax, args.bound or 1)
    return {"module": args.M or "k", **rep}


def cmd_omega_scan(args, ring):
    return gorenstein_scan_syzygies_of_omega(ring, args.nmax).to_json()


def cmd_regularity(args, ring):
    M = _image_or_module(_term(args, ring, "M"))
    N = _image_or_module(_term(args, ring, "N"))
    return regularity_criterion(M, N, args.bound, exploratory=args.exploratory).to_json()


def cmd_gorenstein_ext(args, ring):
    L = _image_or_module(_term(args, ring, "L", "syz(1,k)"))
    return gorenstein_criterion_ext_L_R(L, args.bound, exploratory=args.exploratory).to_json()


def cmd_gorenstein_omega(args, ring):
    L = _image_or_module(_term(args, ring, "L", "syz(1,k)"))
    return gorenstein_criterion_omega(L, args.bound, exploratory=args.exploratory).to_json()


def cmd_gdim(args, ring):
    L = _image_or_module(_term(args, ring, "L", "syz(1,k)"))
    return gdim_zero_up_to(L, args.bound or 4)


# ---------------------------------------------------------------- output

def envelope(command: str, ring, result: dict) -> dict:
    return {
        "command": command,
        "ring": ring.describe() if ring is not None else None,
        "result": result,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "version": __version__,
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def strip_timestamp(obj):
    """Drop the fields excluded from comparisons (timestamp and tool version)."""
    if isinstance(obj, dict):
        return {k: strip_timestamp(v) for k, v in obj.items() if k not in ("timestamp", "version")}
    if isinstance(obj, list):
        return [strip_timestamp(v) for v in obj]
    return obj


def _fmt_value(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def render_text(command: str, result: dict) -> str:
    """Human-readable views derived from the JSON result."""
    from syzlab.resolve import BettiTable

    lines = []
    if "betti" in result and command in ("betti", "resolve"):
        lines.append(BettiTable.from_json(result["betti"]).to_text().rstrip())
        lines.append(f"complete: {result['complete']}   periodic (heuristic): {result['periodicHeuristic']}")
        return "\n".join(lines) + "\n"
    if command in ("ext", "tor"):
        name = "Ext^i" if command == "ext" else "Tor_i"
        lines.append(f"{'i':>4}  {name + ' dim':>10}  {'vanishing':>9}  graded")
        lo = result["range"][0]
        for k, d in enumerate(result["dims"]):
            i = lo + k
            graded = " ".join(f"{e}:{v}" for e, v in result["graded"][str(i)].items())
            lines.append(f"{i:>4}  {str(d):>10}  {str(result['vanishing'][k]):>9}  {graded}")
        lines.append(f"longest zero run: {result['longestZeroRun']}")
        return "\n".join(lines) + "\n"
    if "rows" in result or "scan" in result:
        rows = result.get("rows") or result.get("scan")
        keys = [k for k in rows[0] if not isinstance(rows[0][k], (dict, list))] if rows else []
        widths = {k: max(len(k), *(len(_fmt_value(r.get(k))) for r in rows)) for k in keys}
        lines.append("  ".join(k.rjust(widths[k]) for k in keys))
        for r in rows:
            lines.append("  ".join(_fmt_value(r.get(k)).rjust(widths[k]) for k in keys))
        rest = {k: v for k, v in result.items() if k not in ("rows", "scan")}
    else:
        rest = result
    flat = {k: v for k, v in rest.items() if k not in ("reports",)}
    w = max((len(k) for k in flat), default=0)
    for k in sorted(flat):
        lines.append(f"{k.ljust(w)}  {_fmt_value(flat[k])}")
    for k, rep in sorted(rest.get("reports", {}).items()):
        lines.append(f"{k}: dims {rep['dims']}  longest zero run {rep['longestZeroRun']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- argument parsing

def _common(p, ring=True):
    if ring:
        p.add_argument("--ring", required=True,
                       help="ring JSON file, inline JSON, or a bundled name (" + ", ".join(CORPUS_RINGS) + ")")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")


MODULE_HELP = ("module expression: R, R^r, k, omega, R/(f,..), (f,..) (an ideal), syz(n,expr), "
               "img(n,..;kill=i,..), expr+expr, @module.json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="syzlab", description=(
        "Syzygies, minimal free resolutions, Ext/Tor and ring invariants over standard-graded "
        "quotients of F_p[x..], with checkers for regularity and Gorenstein criteria. "
        "SYZLAB_DEGREE_CAP overrides the degree cap of graded Ext/Tor tables."))
    ap.add_argument("--version", action="version", version=f"syzlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", help="ring-level commands")
    rsub = ring.add_subparsers(dest="sub", required=True)
    p = rsub.add_parser("classify", help="dim, depth, multiplicity, CM/Gorenstein/regular, type")
    _common(p)
    p.set_defaults(fn=cmd_classify, name="ring classify")

    for name, fn, hlp in (("resolve", cmd_resolve, "minimal free resolution with differentials"),
                          ("betti", cmd_betti, "graded Betti table")):
        p = sub.add_parser(name, help=hlp)
        _common(p)
        p.add_argument("--M", help=MODULE_HELP + " (default k)")
        p.add_argument("--nmax", type=int, help="homological bound (default 2*dim+4)")
        p.set_defaults(fn=fn, name=name)

    p = sub.add_parser("syzygy", help="minimal presentation of the n-th syzygy module")
    _common(p)
    p.add_argument("--M", help=MODULE_HELP + " (default k)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_syzygy, name="syzygy")

    p = sub.add_parser("hilbert", help="Hilbert series, dimension and multiplicity")
    _common(p)
    p.add_argument("--M", help=MODULE_HELP + " (default R)")
    p.add_argument("--count", type=int, default=8, help="number of Hilbert function values")
    p.set_defaults(fn=cmd_hilbert, name="hilbert")

    p = sub.add_parser("socle", help="socle (0 :_M m)")
    _common(p)
    p.add_argument("--M", help=MODULE_HELP + " (default R)")
    p.set_defaults(fn=cmd_socle, name="socle")

    for name, fn in (("ext", cmd_ext), ("tor", cmd_tor)):
        p = sub.add_parser(name, help=f"{name.capitalize()} dimensions over an index range")
        _common(p)
        p.add_argument("--M", required=True, help=MODULE_HELP)
        p.add_argument("--N", required=True, help=MODULE_HELP)
        p.add_argument("--range", required=True, help="index range a..b")
        p.set_defaults(fn=fn, name=name)

    p = sub.add_parser("hom", help="Hom(M, N) as a presented module")
    _common(p)
    p.add_argument("--M", required=True, help=MODULE_HELP)
    p.add_argument("--N", required=True, help=MODULE_HELP)
    p.add_argument("--count", type=int, default=8)
    p.set_defaults(fn=cmd_hom, name="hom")

    p = sub.add_parser("trace", help="trace ideal and free-summand witness")
    _common(p)
    p.add_argument("--M", required=True, help=MODULE_HELP)
    p.set_defaults(fn=cmd_trace, name="trace")

    p = sub.add_parser("canonical", help="canonical module of a Cohen-Macaulay ring")
    _common(p)
    p.set_defaults(fn=cmd_canonical, name="canonical")

    check = sub.add_parser("check", help="criteria and lemma checkers")
    csub = check.add_subparsers(dest="sub", required=True)
    p = csub.add_parser("socle-lemma", help="Soc(R) kills the syzygy modules of M")
    _common(p)
    p.add_argument("--M", help=MODULE_HELP + " (default k)")
    p.add_argument("--range", help="syzygy indices a..b (default 1..4)")
    p.set_defaults(fn=cmd_socle_lemma, name="check socle-lemma")

    p = csub.add_parser("takahashi", help="syzygies of k modulo a regular linear form")
    _common(p)
    p.add_argument("--ell", required=True, help="linear form, e.g. x+y")
    p.add_argument("--range", help="syzygy indices a..b (default 1..5)")
    p.set_defaults(fn=cmd_takahashi, name="check takahashi")

    p = csub.add_parser("no-summand", help="free/semidualizing summand audit of syzygies")
    _common(p)
    p.add_argument("--M", help=MODULE_HELP + " (default k)")
    p.add_argument("--nmax", type=int)
    p.add_argument("--bound", type=int, help="Ext bound of the semidualizing test (default 1)")
    p.set_defaults(fn=cmd_no_summand, name="check no-summand")

    p = csub.add_parser("gorenstein-omega-scan", help="free summands of syzygies of omega")
    _common(p)
    p.add_argument("--nmax", type=int)
    p.set_defaults(fn=cmd_omega_scan, name="check gorenstein-omega-scan")

    for name, fn, mods in (("regularity", cmd_regularity, ("M", "N")),
                           ("gorenstein-ext", cmd_gorenstein_ext, ("L",)),
                           ("gorenstein-omega", cmd_gorenstein_omega, ("L",)),
                           ("gdim", cmd_gdim, ("L",))):
        p = csub.add_parser(name, help=f"{name} criterion")
        _common(p)
        for m in mods:
            p.add_argument(f"--{m}", required=(name == "regularity"),
                           help=MODULE_HELP + ("" if name == "regularity" else " (default syz(1,k))"))
        p.add_argument("--bound", type=int, help="index bound of the scan (default 2(d+1)+2)")
        p.add_argument("--exploratory", action="store_true",
                       help="run outside the hypotheses; results carry no verdict semantics")
        p.set_defaults(fn=fn, name=f"check {name}")

    corpus = sub.add_parser("corpus", help="bundled corpus and acceptance checks")
    qsub = corpus.add_subparsers(dest="sub", required=True)
    p = qsub.add_parser("run", help="run golden jobs and acceptance checks")
    _common(p, ring=False)
    p.add_argument("--seed", type=int, default=0, help="seed for the random rings and modules")
    p.add_argument("--golden", help="directory of golden files (default: bundled)")
    p.add_argument("--update-golden", action="store_true", help="rewrite the golden files")
    p.add_argument("--socle-cases", type=int, default=200)
    p.add_argument("--oracle-cases", type=int, default=50)
    p.add_argument("--skip-acceptance", action="store_true", help="golden jobs only")
    p.set_defaults(fn=None, name="corpus run")
    return ap


def _has_disagreement(obj) -> bool:
    if isinstance(obj, dict):
        if obj.get("agreement") is False and not obj.get("exploratory"):
            return True
        return any(_has_disagreement(v) for k, v in obj.items() if k != "reports")
    if isinstance(obj, list):
        return any(_has_disagreement(v) for v in obj)
    return False


def execute(argv: list[str]) -> tuple[int, dict | None, str]:
    """Run one command; returns (exit code, JSON report or None, message)."""
    args = build_parser().parse_args(argv)
    return execute_args(args)


def execute_args(args) -> tuple[int, dict | None, str]:
    if args.name == "corpus run":
        from syzlab.runner import corpus_run

        return corpus_run(args)
    try:
        ring = load_ring(args.ring)
        result = args.fn(args, ring)
    except CriterionRefused as exc:
        return REFUSED, {"command": args.name, "refused": True, "reason": exc.reason,
                         "criterion": exc.criterion}, f"refused: {exc}"
    except NotRegularError as exc:
        return INPUT_ERROR, None, f"error: {exc} (witness {exc.witness})"
    except (InputError, ExprError, RingError, PolynomialError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        return INPUT_ERROR, None, f"error: {msg}"
    code = DISAGREEMENT if _has_disagreement(result) else OK
    return code, envelope(args.name, ring, result), ""


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    code, report, msg = execute_args(args)
    if msg:
        print(msg, file=sys.stderr)
    if report is None:
        return code
    fmt, out = args.format, args.output
    if fmt == "text" and "result" in report:
        text = render_text(report["command"].split()[-1], report["result"])
    elif fmt == "text":
        text = "\n".join(f"{k}: {_fmt_value(v)}" for k, v in sorted(report.items())) + "\n"
    else:
        text = dumps(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
