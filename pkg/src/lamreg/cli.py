"""Command-line interface.

Exit codes: 0 success or accept, 1 reject or failed verification, 2 error.

Recognizer descriptors are JSON objects::

    {"kind": "sem", "type": "Church2", "base": 2, "predicate": "dfa:even.json"}
    {"kind": "sem", "type": "Bool", "base": 2, "accepting": [1, 3]}
    {"kind": "sem", "type": "Bool", "predicate": "decider",
     "subst": "o", "decider": "<term>"}
    {"kind": "syn", "type": "Church1", "subst": "Fin2", "decider": "<term>"}

Named predicates are ``dfa:<path>`` (relative to the descriptor),
``affine``, ``even-ones-odd-twos``, ``accept-all``, ``reject-all`` and
``parity`` (even canonical index).  The ``decider`` predicate is the semantic recognizer obtained
from a decider term by evaluation at the 2-element base; it is what
``compile syn2sem`` writes.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from pathlib import Path

from . import compiler
from .compiler import SizeGuardError, sem_to_syn, syn_to_sem
from .encodings import (
    Dfa, affine_recognizer, decode_scoped, decode_word, dfa_to_recognizer,
    encode_scoped, encode_word, parity_sem_recognizer, parse_untyped, print_untyped,
    run_dfa,
)
from .finsem import BaseDom, DomainTooLarge, domain_size, eval_term
from .recognizers import SemRecognizer, SynRecognizer, accept_all, index_parity, reject_all
from .surface import ParseError, parse_term, parse_type, print_term, print_type
from .syntax import (
    Arrow, Base, Prod, SimpleType, StlcTypeError, Unit, bool_type,
    enumerate_normal_terms, normalize, typecheck,
)
from .verify import SUITES


class CliError(Exception):
    pass


def _text_arg(value: str) -> str:
    """``@path`` reads the text from a file."""
    if value.startswith("@"):
        return Path(value[1:]).read_text(encoding="utf-8").strip()
    return value


def _word(text: str) -> tuple:
    if not text.isdigit() and text != "":
        raise CliError(f"a word is a string of digits 1..9, got {text!r}")
    w = tuple(int(c) for c in text)
    if 0 in w:
        raise CliError("letters are 1..9")
    return w


# ---------------------------------------------------------------------------
# descriptors


def load_descriptor(path: str | Path) -> SemRecognizer | SynRecognizer:
    path = Path(path)
    try:
        d = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: invalid JSON ({e})") from None
    return descriptor_to_recognizer(d, path.parent)


def descriptor_to_recognizer(d: dict, root: Path = Path(".")):
    if not isinstance(d, dict) or "kind" not in d or "type" not in d:
        raise CliError("descriptor needs 'kind' and 'type'")
    a = parse_type(d["type"])
    kind = d["kind"]
    if kind == "syn":
        if "subst" not in d or "decider" not in d:
            raise CliError("a syntactic descriptor needs 'subst' and 'decider'")
        return SynRecognizer(a, parse_type(d["subst"]), parse_term(d["decider"]),
                             d.get("name", "syn"))
    if kind != "sem":
        raise CliError(f"unknown descriptor kind {kind!r}")
    pred = d.get("predicate")
    if pred == "decider":
        syn = SynRecognizer(a, parse_type(d["subst"]), parse_term(d["decider"]))
        return syn_to_sem(syn)
    if isinstance(pred, str) and pred.startswith("dfa:"):
        dfa = Dfa.from_json(root / pred[4:])
        r = dfa_to_recognizer(dfa)
        if r.subject_type != a:
            raise CliError(f"a DFA over {dfa.alphabet} letters recognizes terms of type "
                           f"{print_type(r.subject_type)}, not {d['type']}")
        if "base" in d and d["base"] != dfa.states:
            raise CliError("base must equal the number of DFA states")
        return r
    fixed = {"affine": affine_recognizer, "even-ones-odd-twos": parity_sem_recognizer}
    if pred in fixed:
        r = fixed[pred]()
        if r.subject_type != a:
            raise CliError(f"the {pred} predicate is for type {print_type(r.subject_type)}")
        if "base" in d and d["base"] != domain_size(r.base):
            raise CliError(f"the {pred} predicate has base {domain_size(r.base)}")
        return r
    base = d.get("base")
    if not isinstance(base, int) or base < 1:
        raise CliError("a semantic descriptor needs a positive integer 'base'")
    if "accepting" in d:
        return SemRecognizer.from_set(a, BaseDom(base), d["accepting"], d.get("name", "sem"))
    makers = {"accept-all": accept_all, "reject-all": reject_all, "parity": index_parity}
    if pred not in makers:
        raise CliError(f"unknown predicate {pred!r}")
    return makers[pred](a, base)


# ---------------------------------------------------------------------------
# subject terms


def _subject(args, a: SimpleType | None):
    """The term to classify, from --term, --word or --untyped."""
    if args.term is not None:
        return parse_term(_text_arg(args.term))
    if args.word is not None:
        w = _word(args.word)
        n = args.alphabet
        if n is None and a is not None:
            n = _church_arity(a)
        return encode_word(w, n)
    if args.untyped is not None:
        return encode_scoped(parse_untyped(_text_arg(args.untyped)))
    raise CliError("give one of --term, --word, --untyped")


def _church_arity(a: SimpleType) -> int | None:
    from .surface import church_type
    for n in range(1, 10):
        if church_type(n) == a:
            return n
    return None


def match_subst(a: SimpleType, x: SimpleType) -> SimpleType:
    """The type ``b`` with ``a[b] == x``."""
    found: list = []

    def go(a, x):
        if isinstance(a, Base):
            found.append(x)
            return True
        if type(a) is not type(x):
            return False
        if isinstance(a, Unit):
            return True
        if isinstance(a, Arrow):
            return go(a.domain, x.domain) and go(a.codomain, x.codomain)
        return go(a.left, x.left) and go(a.right, x.right)

    if not go(a, x) or not found or any(b != found[0] for b in found):
        raise CliError(f"{print_type(x)} is not a cast of {print_type(a)}")
    return found[0]


def _verdict(ok: bool) -> int:
    print("accept" if ok else "reject")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    t = parse_term(_text_arg(args.term))
    ty = typecheck(t)
    print(print_type(ty))
    if args.type is not None and parse_type(args.type) != ty:
        print(f"expected {args.type}", file=sys.stderr)
        return 1
    return 0


def cmd_norm(args) -> int:
    t = parse_term(_text_arg(args.term))
    ty = typecheck(t)
    if args.type is not None and parse_type(args.type) != ty:
        raise CliError(f"term has type {print_type(ty)}, not {args.type}")
    print(print_term(normalize(t)))
    return 0


def cmd_eval(args) -> int:
    t = parse_term(_text_arg(args.term))
    e = eval_term(t, BaseDom(args.base))
    print(f"{e.index} / {domain_size(e.domain)}")
    return 0


def cmd_encode(args) -> int:
    if args.what == "word":
        t = encode_word(_word(args.input), args.alphabet)
    else:
        t = encode_scoped(parse_untyped(_text_arg(args.input)))
    print(print_term(t))
    return 0


def cmd_decode(args) -> int:
    t = parse_term(_text_arg(args.input))
    if args.what == "word":
        print("".join(str(c) for c in decode_word(t)))
    else:
        print(print_untyped(decode_scoped(t)))
    return 0


def cmd_rec(args) -> int:
    if args.mode == "sem":
        if args.desc is None:
            raise CliError("rec sem needs --desc")
        r = load_descriptor(args.desc)
        if not isinstance(r, SemRecognizer):
            raise CliError("descriptor is not semantic")
        return _verdict(r.accepts(_subject(args, r.subject_type)))
    if args.desc is not None:
        r = load_descriptor(args.desc)
        if not isinstance(r, SynRecognizer):
            raise CliError("descriptor is not syntactic")
        return _verdict(r.accepts(_subject(args, r.subject_type)))
    if args.decider is None:
        raise CliError("rec syn needs --desc or --decider")
    decider = parse_term(Path(args.decider).read_text(encoding="utf-8"))
    dty = typecheck(decider)
    if not isinstance(dty, Arrow) or dty.codomain != bool_type():
        raise CliError(f"a decider has type X -> Bool, got {print_type(dty)}")
    a = parse_type(args.type) if args.type else None
    t = _subject(args, a)
    a = typecheck(t) if a is None else a
    b = parse_type(args.subst) if args.subst else match_subst(a, dty.domain)
    return _verdict(SynRecognizer(a, b, decider).accepts(t))


def cmd_compile(args) -> int:
    r = load_descriptor(args.desc)
    if args.direction == "sem2syn":
        if not isinstance(r, SemRecognizer):
            raise CliError("sem2syn needs a semantic descriptor")
        out = sem_to_syn(r, limit=args.max_domain or compiler.MAX_WIDTH)
        text = print_term(out.decider)
        desc = {"kind": "syn", "type": print_type(out.subject_type),
                "subst": print_type(out.subst), "decider": text}
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        if args.desc_out:
            Path(args.desc_out).write_text(json.dumps(desc, indent=1) + "\n", encoding="utf-8")
        return 0
    if not isinstance(r, SynRecognizer):
        raise CliError("syn2sem needs a syntactic descriptor")
    syn_to_sem(r, max_table=args.max_domain)  # validates the base size
    desc = {"kind": "sem", "type": print_type(r.subject_type), "predicate": "decider",
            "subst": print_type(r.subst), "decider": print_term(r.decider)}
    Path(args.out).write_text(json.dumps(desc, indent=1) + "\n", encoding="utf-8")
    return 0


def cmd_dfa(args) -> int:
    d = Dfa.from_json(Path(args.dfa))
    w = _word(args.word)
    if any(c > d.alphabet for c in w):
        raise CliError(f"letters must be at most {d.alphabet}")
    return _verdict(run_dfa(d, w))


def cmd_enum(args) -> int:
    a = parse_type(args.type)
    for t in enumerate_normal_terms(a, args.size):
        print(print_term(t))
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise CliError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    ok = True
    for name in names:
        fn = SUITES[name]
        params = inspect.signature(fn).parameters
        kwargs = {k: v for k, v in (("seed", args.seed), ("samples", args.samples),
                                    ("max_len", args.max_len), ("max_pairs", args.max_pairs))
                  if v is not None and k in params}
        res = fn(**kwargs)
        print(res.line(), flush=True)
        ok = ok and res.passed
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lamreg", description="Regular languages of simply typed lambda-terms.")
    p.add_argument("--max-domain", type=int, default=None,
                   help="size guard for compiled tuples and semantic bases")
    p.add_argument("--max-pairs", type=int, default=None,
                   help="candidate-pair guard for relation lifting")
    sub = p.add_subparsers(dest="command", required=True)

    def subject(sp):
        sp.add_argument("--term", help="term text, or @file")
        sp.add_argument("--word", help="digit string, Church-encoded")
        sp.add_argument("--untyped", help="untyped term such as '\\x. x x', or @file")
        sp.add_argument("--alphabet", type=int, help="alphabet size for --word")

    sp = sub.add_parser("check", help="typecheck a term")
    sp.add_argument("--term", required=True)
    sp.add_argument("--type")
    sp.set_defaults(run=cmd_check)

    sp = sub.add_parser("norm", help="beta-eta normal form")
    sp.add_argument("--term", required=True)
    sp.add_argument("--type")
    sp.set_defaults(run=cmd_norm)

    sp = sub.add_parser("eval", help="canonical index of the denotation of a closed term")
    sp.add_argument("--term", required=True)
    sp.add_argument("--base", type=int, required=True)
    sp.set_defaults(run=cmd_eval)

    sp = sub.add_parser("encode", help="encode a word or an untyped term")
    sp.add_argument("what", choices=["word", "untyped"])
    sp.add_argument("input")
    sp.add_argument("--alphabet", type=int)
    sp.set_defaults(run=cmd_encode)

    sp = sub.add_parser("decode", help="decode a Church word or an untyped-term encoding")
    sp.add_argument("what", choices=["word", "untyped"])
    sp.add_argument("input", help="term text, or @file")
    sp.set_defaults(run=cmd_decode)

    sp = sub.add_parser("rec", help="run a recognizer")
    sp.add_argument("mode", choices=["sem", "syn"])
    sp.add_argument("--desc")
    sp.add_argument("--decider", help="file holding a decider term (syn only)")
    sp.add_argument("--type", help="subject type for --decider")
    sp.add_argument("--subst", help="cast type B for --decider")
    subject(sp)
    sp.set_defaults(run=cmd_rec)

    sp = sub.add_parser("compile", help="translate between recognizer kinds")
    sp.add_argument("direction", choices=["sem2syn", "syn2sem"])
    sp.add_argument("--desc", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--desc-out", help="sem2syn: also write a syntactic descriptor")
    sp.set_defaults(run=cmd_compile)

    sp = sub.add_parser("dfa", help="run a DFA")
    sp.add_argument("action", choices=["run"])
    sp.add_argument("--dfa", required=True)
    sp.add_argument("--word", required=True)
    sp.set_defaults(run=cmd_dfa)

    sp = sub.add_parser("enum", help="closed normal terms up to a size")
    sp.add_argument("--type", required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.set_defaults(run=cmd_enum)

    sp = sub.add_parser("verify", help="run verification batteries")
    sp.add_argument("suite", nargs="?", default="all")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--max-len", type=int)
    sp.set_defaults(run=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (CliError, ParseError, StlcTypeError, SizeGuardError, DomainTooLarge,
            ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
