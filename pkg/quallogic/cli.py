# quallogic/cli.py
"""Command-line front end: every workbench operation, JSON on standard output.

Exit codes: 0 for holds/accept/true answers, 1 for fails/reject/false, 2 for
usage and input errors.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from quallogic import __version__
from quallogic.app import commands
from quallogic.app.config import Bounds, settings
from quallogic.app.errors import QualLogicError

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILS, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _load(value: Optional[str]):
    """JSON from a file path, or inline JSON text."""
    if value is None:
        return None
    path = Path(value)
    try:
        text = path.read_text(encoding="utf-8") if path.is_file() else value
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read JSON from {value!r}: {e}") from None


def _required(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _sequent(text: str):
    if "|-" not in text:
        return text
    left, right = text.split("|-", 1)
    return [left.strip(), right.strip()]


# ---------------------------
# Handlers
# ---------------------------
def _bounds(args) -> Bounds:
    return Bounds().override(max_states=args.max_states, grid=args.grid, depth=args.depth, seed=args.seed)


def _handlers():
    return {
        "parse": lambda a: commands.parse_formula(a.lang or "BIG", a.formula),
        "print": lambda a: commands.print_ast(_load(a.ast), a.lang),
        "eval-big": lambda a: commands.eval_big(a.formula, _required(_load(a.valuation), "--valuation"),
                                                a.lang or "BIG"),
        "eval-g2": lambda a: commands.eval_g2(a.formula, _required(_load(a.valuation), "--valuation"),
                                              a.lang or "G2ORD"),
        "eval-qg": lambda a: commands.eval_qg(a.formula, _required(_load(a.model), "--model")),
        "eval-layer": lambda a: commands.eval_layer(a.formula, _required(_load(a.model), "--model"),
                                                    a.lang or "MCB"),
        "bd-entails": lambda a: commands.bd_entails(a.phi, a.chi, (a.max_states or 2) if a.search else None),
        "decide": lambda a: commands.decide_query(a.query, a.conclusion, a.premise, a.lang, a.strategy),
        "kripke support": lambda a: commands.kripke_support(_required(_load(a.model), "--model"), a.formula,
                                                            a.state, a.lang or "G2ORD", a.printed),
        "kripke entails": lambda a: commands.kripke_entails(a.conclusion, a.premise, a.lang or "G2ORD",
                                                            _bounds(a), a.printed),
        "kripke counterpart": lambda a: commands.kripke_counterpart(_load(a.valuation), _load(a.model)),
        "kripke persistence": lambda a: commands.persistence(a.formulas, a.lang or "G2ORD", _bounds(a)),
        "model check-property": lambda a: commands.check_property(_required(_load(a.model), "--model"),
                                                                  a.property, a.m),
        "model frame-validates": lambda a: commands.frame_validates(_required(_load(a.model), "--model"),
                                                                    a.formula, a.lang or "QG"),
        "model correspondence": lambda a: commands.correspondence(a.condition, a.max_states or 2, a.grid or 3),
        "model search-countermodel": lambda a: commands.search_countermodel(a.conclusion, a.premise,
                                                                            a.lang or "QG", a.flag, _bounds(a)),
        "model canonical": lambda a: commands.canonical(_required(_load(a.valuation), "--valuation"),
                                                        a.formula, a.lang or "QG"),
        "qp sat": lambda a: commands.qp_sat(_required(_load(a.model), "--model"), a.formula, a.state),
        "qp translate-sif": lambda a: commands.translate_sif(a.formula),
        "qp gen-e": lambda a: commands.gen_e(a.phi, a.chi, a.layer),
        "qp gen-kps": lambda a: commands.gen_kps(a.m, a.phi, a.chi, a.family),
        "qp counterpart": lambda a: commands.qp_counterpart(_required(_load(a.model), "--model")),
        "qp represent-lp": lambda a: commands.represent_lp(_required(_load(a.model), "--model"),
                                                           a.strict, a.equal),
        "qp random-model": lambda a: commands.random_gardenfors(a.variables, _bounds(a)),
        "prove match-axiom": lambda a: commands.match_axiom(a.calculus, _sequent(a.formula), a.extension),
        "prove check": lambda a: commands.check_derivation(_load(a.derivation),
                                                           [_sequent(p) for p in a.premise] if a.premise else None),
    }


# ---------------------------
# Parser
# ---------------------------
def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--lang", help="formula language, e.g. big, g2ord, qg, mcb, qp")
    common.add_argument("--model", help="model, frame or order: JSON file or inline JSON")
    common.add_argument("--grid", type=int, help="grid denominator")
    common.add_argument("--max-states", type=int, help="state bound for searches")
    common.add_argument("--depth", type=int, help="depth for generated formulas")
    common.add_argument("--seed", type=int, help="seed for generators")
    common.add_argument("--json", action="store_true", help="compact single-line JSON output")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="quallogic", description="Qualitative uncertainty logic workbench")
    parser.add_argument("--version", action="version", version=f"quallogic {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(group, name: str, help_text: str):
        return group.add_parser(name, help=help_text, parents=[common])

    p = add(sub, "parse", "parse a formula and print its AST")
    p.add_argument("formula")
    p = add(sub, "print", "print an AST as a formula")
    p.add_argument("ast", help="AST JSON file or inline JSON")
    for name in ("eval-big", "eval-g2"):
        p = add(sub, name, f"evaluate a formula under a {name[5:]} valuation")
        p.add_argument("formula")
        p.add_argument("--valuation", help="JSON file or inline JSON")
    for name in ("eval-qg", "eval-layer"):
        p = add(sub, name, "evaluate a two-layered formula on a model")
        p.add_argument("formula")
    p = add(sub, "bd-entails", "decide the BD sequent phi |- chi")
    p.add_argument("phi")
    p.add_argument("chi")
    p.add_argument("--search", action="store_true", help="also search a BD countermodel up to --max-states")

    p = add(sub, "decide", "decision procedures")
    p.add_argument("query", choices=commands.DECISIONS)
    p.add_argument("conclusion")
    p.add_argument("--premise", action="append", default=[])
    p.add_argument("--strategy", choices=("orders", "grid"), default="orders")

    kripke = add(sub, "kripke", "Kripke semantics for G²").add_subparsers(dest="action", required=True,
                                                                          parser_class=_Parser)
    p = add(kripke, "support", "positive and negative support")
    p.add_argument("formula")
    p.add_argument("--state", type=int)
    p.add_argument("--printed", action="store_true",
                   help="read the co-implication falsity clause literally, quantifying downwards; "
                        "the default quantifies upwards so that support persists")
    p = add(kripke, "entails", "search chain models for a countermodel")
    p.add_argument("conclusion")
    p.add_argument("--premise", action="append", default=[])
    p.add_argument("--printed", action="store_true", help="as for support")
    p = add(kripke, "counterpart", "valuation to model, or model to valuation")
    p.add_argument("--valuation")
    p = add(kripke, "persistence", "compare the two co-implication readings")
    p.add_argument("formulas", nargs="+")

    model = add(sub, "model", "uncertainty and belief measures").add_subparsers(dest="action", required=True,
                                                                                parser_class=_Parser)
    p = add(model, "check-property", "check a measure condition on a frame")
    p.add_argument("property")
    p.add_argument("--m", type=int)
    p = add(model, "frame-validates", "frame validity of a formula")
    p.add_argument("formula")
    p = add(model, "correspondence", "compare a formula with its measure condition on bounded frames")
    p.add_argument("condition")
    p = add(model, "search-countermodel", "smallest frame countermodel")
    p.add_argument("conclusion")
    p.add_argument("--premise", action="append", default=[])
    p.add_argument("--flag", action="append", help="frame condition, e.g. monotone")
    p = add(model, "canonical", "canonical model from atom values")
    p.add_argument("--valuation")
    p.add_argument("--formula", action="append", default=[])

    qp = add(sub, "qp", "qualitative probability").add_subparsers(dest="action", required=True,
                                                                  parser_class=_Parser)
    p = add(qp, "sat", "satisfaction in a Gärdenfors model")
    p.add_argument("formula")
    p.add_argument("--state", type=int)
    p = add(qp, "translate-sif", "translate a simple inequality formula into QG")
    p.add_argument("formula")
    p = add(qp, "gen-e", "build the balance formula")
    p.add_argument("--phi", action="append", default=[])
    p.add_argument("--chi", action="append", default=[])
    p.add_argument("--layer", choices=("qg", "qp"), default="qg")
    p = add(qp, "gen-kps", "build a KPS or (A4) instance")
    p.add_argument("m", type=int)
    p.add_argument("--phi", action="append", default=[])
    p.add_argument("--chi", action="append", default=[])
    p.add_argument("--family", choices=("KPS", "A4"), default="KPS")
    add(qp, "counterpart", "Gärdenfors counterpart of an uncertainty model")
    p = add(qp, "represent-lp", "extend an order to a probability measure")
    p.add_argument("--strict", nargs=2, action="append", default=[], metavar=("X", "Y"))
    p.add_argument("--equal", nargs=2, action="append", default=[], metavar=("X", "Y"))
    p = add(qp, "random-model", "seeded random Gärdenfors model")
    p.add_argument("variables", nargs="+")

    prove = add(sub, "prove", "Hilbert calculi").add_subparsers(dest="action", required=True,
                                                                parser_class=_Parser)
    p = add(prove, "match-axiom", "find the axiom schema a formula instantiates")
    p.add_argument("calculus")
    p.add_argument("formula", help="formula, or 'phi |- chi' for RFDE")
    p.add_argument("--extension", action="append", default=[])
    p = add(prove, "check", "check a derivation")
    p.add_argument("derivation", help="derivation JSON file or inline JSON")
    p.add_argument("--premise", action="append", default=[])
    return parser


def _emit(payload: dict, compact: bool):
    print(json.dumps(payload, ensure_ascii=False, indent=None if compact else 2))


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    compact = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        _emit({"error": "usage", "detail": str(e)}, compact)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else settings.log_level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    key = args.command if getattr(args, "action", None) is None else f"{args.command} {args.action}"
    try:
        result = _handlers()[key](args)
    except UsageError as e:
        _emit({"error": "usage", "detail": str(e)}, compact)
        return EXIT_USAGE
    except QualLogicError as e:
        logger.debug("command %s failed", key, exc_info=True)
        _emit({"error": e.kind, "detail": e.message}, compact)
        return EXIT_USAGE
    _emit(result, compact)
    return EXIT_OK if commands.outcome(result) else EXIT_FAILS


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
