"""Command-line front end.

    germforge analyze FILE
    germforge tame-check FILE MAP
    germforge compose-check FILE F G
    germforge fiber-report FILE F G [--assert-locally-open]
    germforge gb FILE MAP [--order grevlex|lex|local]

Exit status: 0 success, 1 a checked condition fails under ``--strict``,
2 unreadable or malformed input, 3 a resource cap was hit, 4 the analysis
could not be carried out (e.g. the input is not an ICIS, or two generic
draws disagree).
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import __version__
from .fiber import GenericityError, NonIsolatedError, NotICISError, composed_fiber_report
from .germ import discriminant_ideal, singular_locus_ideal
from .ideal import Ideal
from .limits import ResourceLimitError, Usage, limited, limits_from_env
from .milnor import milnor_set
from .parsing import GermSyntaxError, format_germ_file, parse_germ_file
from .poly import GREVLEX, LEX, LOCAL
from .report import (
    COMPOSABLE_KEY,
    DISCRIMINANT_KEY,
    EQUIVALENT_FORMS_KEY,
    MILNOR_INCLUSION_KEY,
    TAME_KEY,
    GermReport,
    verdict_entry,
)
from .strata import (
    StratumTooCoarse,
    adapted_stratifications,
    rank_stratification,
    stratification_from_specs,
)
from .tameness import (
    SCHEME_CAVEAT,
    check_equivalent_forms,
    discriminant_condition,
    is_tamely_composable,
    is_tame,
    milnor_set_in_singular_locus,
    zero_fiber_shortcut,
)

EXIT_OK = 0
EXIT_CONDITION_FAILED = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_ANALYSIS = 4

ORDERS = {"grevlex": GREVLEX, "lex": LEX, "local": LOCAL}


class InputError(ValueError):
    """Bad command-line input that is not a syntax error (e.g. unknown map)."""


def _gens(ideal):
    return [str(g) for g in ideal.reduced_generators()]


def _load(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_germ_file(text)


def _get_map(gf, name):
    if name not in gf.maps:
        raise InputError(f"no map named {name!r}; have {', '.join(sorted(gf.maps))}")
    return gf.maps[name]


def _strata_for(gf, F, rng):
    specs = gf.strata.get(F.label)
    if specs:
        return stratification_from_specs(F, specs, rng=rng)
    return rank_stratification(F, rng=rng)


def _input_echo(gf, args, names):
    return {
        "source": format_germ_file(gf),
        "maps": list(names),
        "seed": args.seed,
        "flags": sorted(gf.flags),
    }


# -- subcommands ---------------------------------------------------------------------

def cmd_analyze(gf, args, report, rng):
    for name in sorted(gf.maps):
        F = gf.maps[name]
        S = _strata_for(gf, F, rng)
        M = milnor_set(F, S, rng=rng)
        entry = {
            "source_dim": F.source_dim,
            "target_dim": F.target_dim,
            "components": [str(c) for c in F.components],
            "strata": S.summary(),
            "milnor_set": {
                "per_stratum": {s.label: _gens(I) for s, I in M.per_stratum},
                "union": _gens(M.union_ideal),
            },
            "singular_locus": _gens(singular_locus_ideal(F)),
        }
        if F.source_dim >= F.target_dim:
            entry["discriminant"] = _gens(discriminant_ideal(F))
        entry["zero_fiber_shortcut"] = zero_fiber_shortcut(F)
        report.analysis[name] = entry
        report.add_caveats(M.stratification.caveats)
        v = milnor_set_in_singular_locus(F, M)
        report.verdicts.setdefault(MILNOR_INCLUSION_KEY, {})[name] = verdict_entry(v)
        report.add_caveats(v.caveats)
    return [f"{name}: {len(report.analysis[name]['strata'])} strata, Milnor set "
            f"({', '.join(report.analysis[name]['milnor_set']['union']) or '0'})"
            for name in sorted(report.analysis)]


def _tame_entry(G, S, rng, report):
    rep = is_tame(G, S, rng=rng)
    report.add_caveats(rep.stratification.caveats)
    report.add_caveats(rep.tame.caveats)
    return verdict_entry(
        rep.tame,
        map=G.label,
        strata=rep.stratification.summary(),
        milnor_union=_gens(rep.milnor_union_ideal),
    )


def _verdict_word(entry, yes, no):
    return yes if entry["holds"] else no


def cmd_tame_check(gf, args, report, rng):
    G = _get_map(gf, args.map)
    entry = _tame_entry(G, _strata_for(gf, G, rng), rng, report)
    report.verdicts[TAME_KEY] = {G.label: entry}
    kind = entry["certificate"].get("kind")
    return [f"{G.label}: {_verdict_word(entry, 'TAME', 'NOT TAME')} ({kind})"]


def cmd_compose_check(gf, args, report, rng):
    F = _get_map(gf, args.F)
    G = _get_map(gf, args.G)
    if F.target_dim != G.source_dim:
        raise InputError(f"cannot compose: {F.label} has target dimension {F.target_dim}, "
                         f"{G.label} has source dimension {G.source_dim}")
    tame = {
        F.label: _tame_entry(F, _strata_for(gf, F, rng), rng, report),
        G.label: _tame_entry(G, _strata_for(gf, G, rng), rng, report),
    }
    adapted = adapted_stratifications(F, G, rng=rng)
    H = adapted.H
    tame["H"] = _tame_entry(H, None, rng, report)
    comp = is_tamely_composable(F, G, adapted=adapted, rng=rng)
    forms = check_equivalent_forms(F, G, report=comp, rng=rng)
    disc = discriminant_condition(F, G)
    report.add_caveats(adapted.caveats)
    report.add_caveats(comp.verdict.caveats)
    report.add_caveats(forms.caveats)
    report.add_caveats(disc.caveats)
    report.add_caveat(SCHEME_CAVEAT)
    report.verdicts[TAME_KEY] = tame
    report.verdicts[COMPOSABLE_KEY] = verdict_entry(
        comp.verdict, H=[str(c) for c in H.components]
    )
    report.verdicts[EQUIVALENT_FORMS_KEY] = verdict_entry(forms)
    report.verdicts[DISCRIMINANT_KEY] = verdict_entry(disc)
    report.analysis["adapted"] = {
        "W": adapted.W.summary(),
        "Q": adapted.Q.summary(),
        "S": adapted.S.summary(),
    }
    lines = [
        f"{F.label}: {_verdict_word(tame[F.label], 'TAME', 'NOT TAME')}",
        f"{G.label}: {_verdict_word(tame[G.label], 'TAME', 'NOT TAME')}",
        f"H = {G.label} o {F.label}: {_verdict_word(tame['H'], 'TAME', 'NOT TAME')}",
        f"tamely composable: {_verdict_word(report.verdicts[COMPOSABLE_KEY], 'TRUE', 'FALSE')}",
        f"equivalent forms agree: {forms.agree}",
        f"discriminant condition: {_verdict_word(report.verdicts[DISCRIMINANT_KEY], 'HOLDS', 'FAILS')}",
    ]
    return lines


def cmd_fiber_report(gf, args, report, rng):
    F = _get_map(gf, args.F)
    G = _get_map(gf, args.G)
    locally_open = args.assert_locally_open or "assert-locally-open" in gf.flags
    adapted = adapted_stratifications(F, G, rng=rng)
    fib = composed_fiber_report(F, G, rng=rng, locally_open=locally_open, W=adapted.W)
    report.fiber = fib.as_dict()
    report.add_caveats(adapted.caveats)
    report.add_caveats(fib.notes)
    report.add_caveat("Euler characteristics refer to complex Milnor fibres")
    lines = [
        f"mu(G) = {fib.mu_G}, mu(ICIS) = {fib.mu_icis}, N = {fib.N}",
        f"chi(Fib G) = {fib.chi_fib_G}, chi(ICIS fibre) = {fib.chi_fib_F}",
    ]
    if fib.chi_fib_H is None:
        lines.append("chi(Fib H) withheld: pass --assert-locally-open")
    else:
        lines.append(f"chi(Fib H) = {fib.chi_fib_H}")
    return lines


def cmd_gb(gf, args, report, rng):
    F = _get_map(gf, args.map)
    order = ORDERS[args.order]
    ring = F.source_ring.with_order(order)
    I = Ideal(ring, [c.with_ring(ring) for c in F.components])
    basis = I.standard_basis() if order is LOCAL else I.groebner()
    report.analysis["basis"] = {
        "map": F.label,
        "order": args.order,
        "kind": basis.kind,
        "elements": [str(g) for g in basis.elements],
    }
    return [str(g) for g in basis.elements]


COMMANDS = {
    "analyze": cmd_analyze,
    "tame-check": cmd_tame_check,
    "compose-check": cmd_compose_check,
    "fiber-report": cmd_fiber_report,
    "gb": cmd_gb,
}


# -- driver ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true",
                        help="exit 1 when any checked condition fails")
    common.add_argument("--seed", type=int, default=0, help="seed for generic draws (default 0)")
    common.add_argument("--max-pairs", type=int, help="cap on S-pairs per basis computation")
    common.add_argument("--max-degree", type=int, help="cap on intermediate degrees")
    common.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    common.add_argument("--quiet", action="store_true", help="no human-readable summary")

    parser = argparse.ArgumentParser(prog="germforge", description="Exact analysis of polynomial map germs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="strata, Milnor sets and discriminants")
    p.add_argument("file")
    p = sub.add_parser("tame-check", parents=[common], help="decide tameness of one map")
    p.add_argument("file")
    p.add_argument("map")
    p = sub.add_parser("compose-check", parents=[common], help="tame composability of F with G")
    p.add_argument("file")
    p.add_argument("F")
    p.add_argument("G")
    p = sub.add_parser("fiber-report", parents=[common], help="Milnor fibre data for G o F")
    p.add_argument("file")
    p.add_argument("F")
    p.add_argument("G")
    p.add_argument("--assert-locally-open", action="store_true",
                   help="assert F is locally open (enables homotopy-level conclusions)")
    p = sub.add_parser("gb", parents=[common], help="basis of the ideal of a map's components")
    p.add_argument("file")
    p.add_argument("map")
    p.add_argument("--order", choices=sorted(ORDERS), default="grevlex")
    return parser


def _emit(report, args, lines, out):
    if not args.quiet:
        for line in lines:
            print(line, file=out)
        for c in report.caveats:
            print(f"note: {c}", file=out)
    if args.json:
        text = report.to_json()
        if args.json == "-":
            out.write(text)
        else:
            Path(args.json).write_text(text, encoding="utf-8")


def run(argv=None, out=None, err=None):
    """Run the CLI; returns ``(exit_code, report)`` (report is None when the
    input could not be parsed)."""
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    names = [getattr(args, k) for k in ("map", "F", "G") if getattr(args, k, None)]
    try:
        gf = _load(args.file)
    except (GermSyntaxError, InputError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT, None
    report = GermReport(command=args.command, input=_input_echo(gf, args, names))
    lim = limits_from_env().updated(max_pairs=args.max_pairs, max_degree=args.max_degree)
    usage = Usage()
    rng = random.Random(args.seed)
    code = EXIT_OK
    lines = []
    try:
        with limited(lim, usage):
            lines = COMMANDS[args.command](gf, args, report, rng)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT, None
    except ResourceLimitError as exc:
        report.errors.append({"kind": "resource-limit", "cap": exc.cap, "message": str(exc)})
        code = EXIT_RESOURCE
    except (NotICISError, NonIsolatedError, GenericityError, StratumTooCoarse, ValueError) as exc:
        report.errors.append({"kind": type(exc).__name__, "message": str(exc)})
        code = EXIT_ANALYSIS
    report.usage = usage.as_dict()
    for e in report.errors:
        print(f"error: {e['message']}", file=err)
    if code == EXIT_OK and args.strict and report.failed_conditions():
        code = EXIT_CONDITION_FAILED
    _emit(report, args, lines, out)
    return code, report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
