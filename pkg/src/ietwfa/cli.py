"""Command-line interface.

Exit status: 0 for success or a positive answer, 1 for a negative answer
(rejected word, invalid document, inequivalent languages, fuzz mismatch),
2 for usage and input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import conversions, restrictions
from .core import Ietwgfa, Nfa, nfa_accepts, nfa_enumerate, shortlex, validate_automaton
from .grammars import LinearGrammar, lg_accepts, lg_enumerate, validate_grammar
from .oracle import GenConfig, equiv_up_to, oracle_language, random_gfa, random_lg
from .simulation import Mode, enumerate_language, trace
from .textformat import EPSILON, FiniteLanguage, ParseError, load, serialize

MODES = [m.value for m in Mode]


class UsageError(Exception):
    pass


def _word_arg(text: str, tokens: bool) -> tuple:
    if text in ("", EPSILON):
        return ()
    if tokens:
        return tuple(t for t in text.split() if t != EPSILON)
    return tuple(text)


def show_word(word, alphabet=()) -> str:
    """Words print as plain concatenations unless some symbol is longer than one character."""
    if all(len(s) == 1 for s in alphabet) and all(len(s) == 1 for s in word):
        return "".join(word)
    return " ".join(word)


def _load(path: str, *kinds):
    try:
        doc = load(path)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if kinds and not isinstance(doc, kinds):
        wanted = " or ".join(_KIND_NAMES[k] for k in kinds)
        raise UsageError(f"{path}: expected {wanted}, got {_KIND_NAMES[type(doc)]}")
    return doc


_KIND_NAMES = {Ietwgfa: "ietwgfa", Nfa: "nfa", LinearGrammar: "lg", FiniteLanguage: "finite"}


def _alphabet(doc) -> frozenset:
    return doc.terminals if isinstance(doc, LinearGrammar) else doc.alphabet


def _check_symbols(doc, word) -> None:
    alphabet = _alphabet(doc)
    for sym in word:
        if sym not in alphabet:
            raise UsageError(f"symbol {sym!r} is not in the alphabet")


# -- commands ----------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    doc = _load(args.file)
    if isinstance(doc, LinearGrammar):
        problems = validate_grammar(doc)
    elif isinstance(doc, FiniteLanguage):
        problems = []
    else:
        problems = validate_automaton(doc)
    for p in problems:
        print(p, file=out)
    if not problems:
        print("valid", file=out)
    return 1 if problems else 0


def _member(doc, word, mode) -> bool:
    if isinstance(doc, Ietwgfa):
        return trace(doc, word, mode) is not None
    if isinstance(doc, Nfa):
        return nfa_accepts(doc, word)
    if isinstance(doc, LinearGrammar):
        return lg_accepts(doc, word)
    return word in doc.words


def cmd_accept(args, out) -> int:
    doc = _load(args.file)
    word = _word_arg(args.word, args.tokens)
    _check_symbols(doc, word)
    ok = _member(doc, word, Mode.parse(args.mode))
    print("accepted" if ok else "rejected", file=out)
    return 0 if ok else 1


def cmd_trace(args, out) -> int:
    m = _load(args.file, Ietwgfa)
    word = _word_arg(args.word, args.tokens)
    _check_symbols(m, word)
    t = trace(m, word, Mode.parse(args.mode))
    if t is None:
        print("rejected", file=out)
        return 1
    print(t.describe(m), file=out)
    return 0


def _language(doc, mode: Mode, max_len: int) -> set:
    if isinstance(doc, Ietwgfa):
        return enumerate_language(doc, mode, max_len)
    if isinstance(doc, Nfa):
        return nfa_enumerate(doc, max_len)
    if isinstance(doc, LinearGrammar):
        return lg_enumerate(doc, max_len)
    return {w for w in doc.words if len(w) <= max_len}


def cmd_enumerate(args, out) -> int:
    doc = _load(args.file)
    words = shortlex(_language(doc, Mode.parse(args.mode), args.max_len))
    alphabet = _alphabet(doc)
    shown = [show_word(w, alphabet) for w in words]
    if args.json:
        print(json.dumps({"words": shown}, separators=(",", ":"), ensure_ascii=False), file=out)
    else:
        for w in shown:
            print(w if w else EPSILON, file=out)
    return 0


_CONVERSIONS = {
    ("lg", Ietwgfa, "general"): conversions.gfa_to_lg,
    ("lg", Ietwgfa, "init-even"): conversions.init_even_to_elg,
    ("elg", Ietwgfa, "general"): conversions.init_even_to_elg,
    ("elg", Ietwgfa, "init-even"): conversions.init_even_to_elg,
    ("gfa", LinearGrammar, "general"): conversions.lg_to_gfa,
    ("gfa", LinearGrammar, "init-even"): conversions.elg_to_gfa_init_even,
    ("gfa", Ietwgfa, "init-even"): conversions.lift_even_to_init_even,
    ("sfa", Ietwgfa, "general"): conversions.gfa_to_sfa,
    ("efree", Ietwgfa, "general"): conversions.remove_epsilon,
    ("even-sfa", Ietwgfa, "general"): conversions.even_to_efree_sfa,
    ("init-even-sfa", Ietwgfa, "general"): conversions.init_even_to_sfa,
    ("init-even-sfa", Ietwgfa, "init-even"): conversions.init_even_to_sfa,
}


def cmd_convert(args, out) -> int:
    doc = _load(args.file)
    fn = _CONVERSIONS.get((args.to, type(doc), args.mode_context))
    if fn is None:
        raise UsageError(f"no conversion to {args.to} from {_KIND_NAMES[type(doc)]} "
                         f"in {args.mode_context} context")
    out.write(serialize(fn(doc)))
    return 0


_RESTRICTORS = {
    "sides": (Nfa, Nfa),
    "whole": (Nfa,),
    "finite-prefix": (FiniteLanguage, Nfa),
    "middle": (Nfa, Nfa, Nfa),
}


def cmd_restrict(args, out) -> int:
    m = _load(args.file, Ietwgfa)
    kinds = _RESTRICTORS[args.op]
    if len(args.with_) != len(kinds):
        raise UsageError(f"--op {args.op} needs {len(kinds)} restrictor file(s)")
    parts = [_load(path, kind) for path, kind in zip(args.with_, kinds)]
    if args.op == "finite-prefix":
        parts[0] = parts[0].words
    fn = {"sides": restrictions.restrict_sides, "whole": restrictions.restrict_whole,
          "finite-prefix": restrictions.restrict_finite_prefix,
          "middle": restrictions.restrict_middle}[args.op]
    try:
        result = fn(m, *parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(serialize(result))
    return 0


def cmd_equiv(args, out) -> int:
    first, second = _load(args.file1), _load(args.file2)
    modes = [Mode.parse(x) for x in args.modes] if args.modes else [Mode.GENERAL]
    if len(modes) == 1:
        modes = modes * 2

    def source(doc, mode):
        if isinstance(doc, Ietwgfa):
            return (doc, mode)
        if isinstance(doc, FiniteLanguage):
            return set(doc.words)
        return doc

    result = equiv_up_to(source(first, modes[0]), source(second, modes[1]), args.max_len)
    alphabet = _alphabet(first) | _alphabet(second)
    if args.json:
        cex = None if result.counterexample is None else show_word(result.counterexample, alphabet)
        print(json.dumps({"equal": result.equal, "counterexample": cex}, separators=(",", ":"),
                         ensure_ascii=False), file=out)
    elif result.equal:
        print(f"equal up to {args.max_len}", file=out)
    else:
        cex = result.counterexample
        inside = args.file1 if cex in _language(first, modes[0], len(cex)) else args.file2
        print(f"differ: {show_word(cex, alphabet) or EPSILON} is only in {inside}", file=out)
    return 0 if result.equal else 1


def _parse_config(pairs) -> GenConfig:
    fields = {}
    for pair in pairs or ():
        key, sep, value = pair.partition("=")
        if not sep or key not in GenConfig.__dataclass_fields__:
            raise UsageError(f"bad --config entry {pair!r}; keys: {', '.join(GenConfig.__dataclass_fields__)}")
        try:
            fields[key] = int(value)
        except ValueError:
            raise UsageError(f"--config {key} needs an integer") from None
        if fields[key] < 0:
            raise UsageError(f"--config {key} must be non-negative")
    return GenConfig(**fields)


def cmd_fuzz(args, out) -> int:
    """Differential run: simulation vs. the brute-force recognizer, plus grammar round trips."""
    cfg = _parse_config(args.config)
    failures = 0
    for i in range(args.rounds):
        seeded = cfg.with_seed(cfg.seed + i)
        try:
            m = random_gfa(seeded)
            g = random_lg(seeded)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for mode in Mode:
            if enumerate_language(m, mode, args.max_len) != oracle_language(m, mode, args.max_len):
                failures += 1
                print(f"seed {seeded.seed}: simulation and oracle differ in {mode.value} mode", file=out)
        checks = [("automaton to grammar", m, conversions.gfa_to_lg(m)),
                  ("grammar to automaton", g, conversions.lg_to_gfa(g))]
        for label, left, right in checks:
            res = equiv_up_to(left, right, args.max_len)
            if not res.equal:
                failures += 1
                print(f"seed {seeded.seed}: {label} changes the language at {res.counterexample!r}", file=out)
    print(f"{args.rounds} rounds, {failures} mismatches", file=out)
    return 1 if failures else 0


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ietwfa", description="Input-erasing two-way finite automata toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a document against its definition")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    for name, func, helptext in (("accept", cmd_accept, "decide membership of a word"),
                                 ("trace", cmd_trace, "print an accepting computation")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("word", help="symbols written together, or space-separated with --tokens; _ is empty")
        p.add_argument("--mode", choices=MODES, default="general")
        p.add_argument("--tokens", action="store_true", help="read WORD as space-separated symbols")
        p.set_defaults(func=func)

    p = sub.add_parser("enumerate", help="list accepted words up to a length")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="general")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("convert", help="apply a construction and print the result")
    p.add_argument("file")
    p.add_argument("--to", required=True, choices=["lg", "gfa", "sfa", "efree", "even-sfa", "init-even-sfa", "elg"])
    p.add_argument("--mode-context", choices=["general", "init-even"], default="general",
                   help="init-even selects the init-even variants (elg for grammars, lifting for automata)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("restrict", help="restrict parts of the input to regular or finite languages")
    p.add_argument("file")
    p.add_argument("--op", required=True, choices=sorted(_RESTRICTORS))
    p.add_argument("--with", dest="with_", nargs="+", required=True, metavar="FILE")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("equiv", help="compare two languages up to a length")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--modes", nargs="+", choices=MODES, help="one mode for both automata, or one each")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("fuzz", help="differential testing on random instances")
    p.add_argument("--config", nargs="*", metavar="KEY=VALUE", default=[])
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--max-len", type=int, default=4)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "max_len", 0) is not None and getattr(args, "max_len", 0) < 0:
        print("error: --max-len must be non-negative", file=sys.stderr)
        return 2
    if getattr(args, "modes", None) and len(args.modes) > 2:
        print("error: --modes takes one or two modes", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
