"""Command-line surface: expression parsing and the engine subcommands.

Expression grammar (whitespace separates tokens inside a term):

    expr  := term (('+'|'-') term)*
    term  := coeff | coeff? gen+
    gen   := 'T' index | 'T*' index
    coeff := rational ('*' 'w' order '^' exp)? | 'w' order '^' exp

Example: ``T*1 T1 - 1/2*w4^1 T2 T*2``.  Bare-coefficient terms extend
the grammar so printed normal forms (which may contain a constant term)
re-parse to the same element.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .coefficients import PhaseScalar, format_phase
from .statistics import (
    CommutationFactor,
    FactorError,
    FactorPreset,
    eval_factor,
    factor_from_descriptor,
    factor_to_descriptor,
    factorize,
    make_factor,
)
from .weyl import WeylElement, WeylMonomial, normal_form, bracket, check_jacobi, grade_of
from .fock import FockVector, act, enumerate_states
from .gram import check_positive, gram_matrix, inner, permutation_sum
from .superize import clifford_check, comultiplication_check, crossed_embed, crossed_word
from .oracle import compare_symbolic, verify_relations

__all__ = [
    "ParseError",
    "SessionConfig",
    "parse_expression",
    "format_element",
    "run_command",
    "main",
]

PRECISION_ENV = "COLORWEYL_PRECISION"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass
class SessionConfig:
    factor: CommutationFactor
    cap: int = 1
    precision: int = 128
    output: str = "json"
    seed: int = 0


# -- expression language ---------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<gen>T\*?\d+)"
    r"|(?P<coeff>\d+(?:/\d+)?(?:\*w\d+\^\d+)?|w\d+\^\d+)"
    r"|(?P<op>[+-])"
    r"|(?P<ws>\s+)"
)


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append((kind, value, line, col))
        for ch in value:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        pos = m.end()
    return tokens


def _parse_coeff(text: str) -> PhaseScalar:
    if "*" in text:
        rat_text, phase_text = text.split("*", 1)
    elif text.startswith("w"):
        rat_text, phase_text = "1", text
    else:
        rat_text, phase_text = text, None
    coeff = PhaseScalar.from_rational(Fraction(rat_text))
    if phase_text:
        m = re.fullmatch(r"w(\d+)\^(\d+)", phase_text)
        order, exp = int(m.group(1)), int(m.group(2))
        coeff = coeff * PhaseScalar.root_of_unity(order, exp)
    return coeff


def parse_expression(text: str, factor: CommutationFactor) -> WeylElement:
    """Parse the expression grammar and lower it through normal ordering."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression", 1, 1)
    result = WeylElement.zero(factor)
    idx = 0
    first = True
    while idx < len(tokens):
        sign = 1
        kind, value, line, col = tokens[idx]
        if kind == "op":
            sign = -1 if value == "-" else 1
            idx += 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms", line, col)
        if idx >= len(tokens):
            raise ParseError("dangling operator", line, col)
        kind, value, line, col = tokens[idx]
        coeff = PhaseScalar.one()
        if kind == "coeff":
            coeff = _parse_coeff(value)
            idx += 1
        word = []
        while idx < len(tokens) and tokens[idx][0] == "gen":
            _, value, line, col = tokens[idx]
            star_gen = value.startswith("T*")
            mode = int(value[2:] if star_gen else value[1:])
            if not 1 <= mode <= factor.dim:
                raise ParseError(f"unknown generator index {mode}", line, col)
            word.append(-mode if star_gen else mode)
            idx += 1
        if kind not in ("coeff", "gen"):
            raise ParseError(f"unexpected token {value!r}", line, col)
        term = normal_form(word, factor).scale(coeff) if word else WeylElement.one(factor).scale(coeff)
        result = result + term.scale(sign)
        first = False
    return result


def _format_monomial(mono: WeylMonomial) -> str:
    return " ".join(
        (f"T{g}" if g > 0 else f"T*{-g}") for g in mono.word()
    )


def format_element(x: WeylElement) -> str:
    """Textual form; one output term per (monomial, scalar term) pair."""
    if x.is_zero():
        return "0"
    pieces = []
    for mono in sorted(x.terms):
        coeff = x.terms[mono]
        gens = _format_monomial(mono)
        for k in sorted(coeff.terms):
            v = coeff.terms[k]
            mag = abs(v)
            if k == 0:
                coeff_text = str(mag)
            else:
                coeff_text = f"{mag}*w{coeff.order}^{k}"
            if gens and coeff_text == "1":
                body = gens
            elif gens:
                body = f"{coeff_text} {gens}"
            else:
                body = coeff_text
            pieces.append(("-" if v < 0 else "+", body))
    sign, body = pieces[0]
    text = ("- " if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# -- configuration -----------------------------------------------------


def _build_config(args) -> SessionConfig:
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            desc = json.load(fh)
        factor = factor_from_descriptor(desc)
    elif args.factor_json:
        factor = factor_from_descriptor(json.loads(args.factor_json))
    elif args.preset:
        if args.N is None:
            raise FactorError("--preset requires --N")
        factor = make_factor(FactorPreset(kind=args.preset, dim=args.N))
    else:
        raise FactorError("no factor configured: use --config, --factor-json or --preset/--N")
    precision = args.precision
    if precision is None:
        precision = int(os.environ.get(PRECISION_ENV, "128"))
    if args.cap < 1:
        raise FactorError("occupation cap must be at least 1")
    return SessionConfig(
        factor=factor,
        cap=args.cap,
        precision=precision,
        output=args.format,
        seed=args.seed,
    )


# -- subcommands ---------------------------------------------------------


def _phase_text(p: PhaseScalar) -> str:
    return format_phase(p)


def _cmd_relations(cfg: SessionConfig, args) -> dict:
    f = cfg.factor
    lines = []
    for i in range(1, f.dim + 1):
        q = "+" if f.q_sign(i) == 1 else "-"
        lines.append(f"T*{i} T{i} = 1 {q} T{i} T*{i}")
        if f.is_nilpotent(i):
            lines.append(f"T{i} T{i} = 0")
            lines.append(f"T*{i} T*{i} = 0")
    for i in range(1, f.dim + 1):
        for j in range(i + 1, f.dim + 1):
            lines.append(f"T*{i} T{j} = {_phase_text(f.entry(j, i))} T{j} T*{i}")
            lines.append(f"T{i} T{j} = {_phase_text(f.entry(i, j))} T{j} T{i}")
            lines.append(f"T*{j} T*{i} = {_phase_text(f.entry(i, j))} T*{i} T*{j}")
    return {"factor": factor_to_descriptor(f), "relations": lines}


def _cmd_normalize(cfg: SessionConfig, args) -> dict:
    element = parse_expression(args.expr, cfg.factor)
    return {"input": args.expr, "normal_form": format_element(element)}


def _cmd_act(cfg: SessionConfig, args) -> dict:
    element = parse_expression(args.expr, cfg.factor)
    occupation = tuple(int(x) for x in args.state.split(","))
    vec = FockVector.monomial(cfg.factor, occupation)
    result = act(element, vec)
    return {
        "input": args.expr,
        "state": list(occupation),
        "result": {
            str(list(occ)): _phase_text(coeff) for occ, coeff in sorted(result.terms.items())
        },
    }


def _cmd_states(cfg: SessionConfig, args) -> dict:
    flux = Fraction(args.B)
    rows = enumerate_states(cfg.factor, flux, cap=cfg.cap)
    return {
        "B": str(flux),
        "states": [row.to_json() for row in rows],
    }


def _cmd_gram(cfg: SessionConfig, args) -> dict:
    gm = gram_matrix(args.degree, cfg.factor, cap=cfg.cap)
    cert = check_positive(gm, precision=cfg.precision)
    out = {"gram": gm.to_json(), "positivity": cert.to_json()}
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            for row in gm.entries:
                values = []
                for e in row:
                    z = e.to_complex(cfg.precision)
                    values.append(f"{float(z.real)}{float(z.imag):+}j")
                fh.write(",".join(values) + "\n")
        out["csv"] = args.csv
    return out


def _cmd_superize(cfg: SessionConfig, args) -> dict:
    f = cfg.factor
    cprime, bfac = factorize(f)
    verdicts = []
    if bfac.is_sign_factor():
        unit = crossed_word(f, ())
        for i in range(1, f.dim + 1):
            for j in range(1, f.dim + 1):
                lhs = crossed_embed(f, i, "annihilator") * crossed_embed(f, j, "creator")
                rhs = (
                    crossed_embed(f, j, "creator") * crossed_embed(f, i, "annihilator")
                ).scale(f.entry(j, i))
                if i == j:
                    rhs = rhs + unit
                verdicts.append(
                    {"relation": f"T*{i} T{j} crossed", "ok": lhs == rhs}
                )
                if i != j:
                    lhs = crossed_embed(f, i, "creator") * crossed_embed(f, j, "creator")
                    rhs = (
                        crossed_embed(f, j, "creator") * crossed_embed(f, i, "creator")
                    ).scale(f.entry(i, j))
                    verdicts.append({"relation": f"T{i} T{j} crossed", "ok": lhs == rhs})
    else:
        verdicts.append(
            {"relation": "crossed product", "ok": None, "note": "twist is not a sign factor"}
        )
    comult = comultiplication_check(bfac)
    return {
        "c_prime": factor_to_descriptor(cprime),
        "b": factor_to_descriptor(bfac),
        "crossed": verdicts,
        "comultiplication": comult,
        "ok": all(v["ok"] for v in verdicts if v["ok"] is not None) and comult["ok"],
    }


def _random_homogeneous(rng, factor, max_degree=3):
    for _ in range(64):
        length = rng.randint(1, max_degree)
        word = tuple(
            rng.choice((1, -1)) * rng.randint(1, factor.dim) for _ in range(length)
        )
        element = normal_form(word, factor)
        if not element.is_zero():
            return element
    return WeylElement.one(factor)


def _cmd_verify(cfg: SessionConfig, args) -> dict:
    rng = random.Random(cfg.seed)
    f = cfg.factor
    report: dict = {"seed": cfg.seed, "factor": factor_to_descriptor(f), "suites": {}}
    ok = True

    rel = verify_relations(f, cap=max(cfg.cap, 2))
    report["suites"]["relations"] = {"ok": rel.ok, "dimension": rel.dimension}
    ok = ok and rel.ok

    jac_fail = 0
    for _ in range(args.triples):
        x = _random_homogeneous(rng, f)
        y = _random_homogeneous(rng, f)
        z = _random_homogeneous(rng, f)
        holds, _witness = check_jacobi(x, y, z)
        if not holds:
            jac_fail += 1
    report["suites"]["jacobi"] = {"ok": jac_fail == 0, "triples": args.triples}
    ok = ok and jac_fail == 0

    word_fail = 0
    if f.is_sign_factor():
        for _ in range(args.words):
            length = rng.randint(1, 6)
            word = tuple(
                rng.choice((1, -1)) * rng.randint(1, f.dim) for _ in range(length)
            )
            if not compare_symbolic(word, f):
                word_fail += 1
        report["suites"]["oracle_words"] = {"ok": word_fail == 0, "words": args.words}
        ok = ok and word_fail == 0

        gram_ok = True
        for degree in range(0, 5):
            cert = check_positive(gram_matrix(degree, f, cap=cfg.cap), cfg.precision)
            if cert.verdict == "indefinite":
                gram_ok = False
        report["suites"]["positivity"] = {"ok": gram_ok, "max_degree": 4}
        ok = ok and gram_ok

        inner_fail = 0
        modes = list(range(1, f.dim + 1))
        for _ in range(args.pairs):
            n = rng.randint(1, min(4, f.dim))
            sigma = tuple(rng.sample(modes, n))
            tau = tuple(rng.sample(modes, n))
            lhs = inner(_word_vector(f, sigma), _word_vector(f, tau))
            rhs = permutation_sum(sigma, tau, f)
            if lhs != rhs:
                inner_fail += 1
        report["suites"]["inner_oracle"] = {"ok": inner_fail == 0, "pairs": args.pairs}
        ok = ok and inner_fail == 0

        sup = _cmd_superize(cfg, args)
        report["suites"]["superize"] = {"ok": sup["ok"]}
        ok = ok and sup["ok"]

    cliff = clifford_check(min(f.dim, 4))
    report["suites"]["clifford"] = {"ok": cliff["ok"]}
    ok = ok and cliff["ok"]

    fact_fail = 0
    cprime, bfac = factorize(f)
    for _ in range(args.pairs):
        a = _random_grade(rng, f)
        b = _random_grade(rng, f)
        total = eval_factor(f, a, b)
        split = eval_factor(cprime, a, b) * eval_factor(bfac, a, b)
        if total != split:
            fact_fail += 1
    report["suites"]["factorization"] = {"ok": fact_fail == 0, "pairs": args.pairs}
    ok = ok and fact_fail == 0

    report["ok"] = ok
    return report


def _word_vector(factor, labels):
    vec = FockVector.vacuum(factor)
    return act(tuple(labels), vec)


def _random_grade(rng, factor):
    from .statistics import GradeVector

    if factor.reduced_modulus is None:
        coords = tuple(rng.randint(-3, 3) for _ in range(factor.dim))
    else:
        coords = tuple(
            rng.randrange(factor.reduced_modulus) for _ in range(factor.dim)
        )
    return GradeVector(coords, factor.reduced_modulus)


_COMMANDS = {
    "relations": _cmd_relations,
    "normalize": _cmd_normalize,
    "act": _cmd_act,
    "states": _cmd_states,
    "gram": _cmd_gram,
    "superize": _cmd_superize,
    "verify": _cmd_verify,
}


def run_command(name: str, cfg: SessionConfig, args) -> dict:
    return _COMMANDS[name](cfg, args)


def _emit(report: dict, cfg: SessionConfig):
    if cfg.output == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        _print_table(report)


def _print_table(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, (dict, list)):
                print(f"{pad}{key}:")
                _print_table(value, indent + 1)
            else:
                print(f"{pad}{key}: {value}")
    elif isinstance(obj, list):
        for value in obj:
            if isinstance(value, (dict, list)):
                _print_table(value, indent)
                print()
            else:
                print(f"{pad}{value}")
    else:
        print(f"{pad}{obj}")


def _add_common_options(parser: argparse.ArgumentParser, top_level: bool):
    # real defaults live on the top-level parser; the per-subcommand copies
    # use SUPPRESS so they only override when actually given
    def default(value):
        return value if top_level else argparse.SUPPRESS

    parser.add_argument("--config", default=default(None), help="JSON factor descriptor file")
    parser.add_argument(
        "--factor-json", default=default(None), help="inline JSON factor descriptor"
    )
    parser.add_argument("--preset", default=default(None), help="named factor preset")
    parser.add_argument(
        "--N", type=int, default=default(None), help="number of modes for --preset"
    )
    parser.add_argument(
        "--cap", type=int, default=default(1), help="occupation cap for ladders"
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=default(None),
        help=f"numeric precision bits (or set {PRECISION_ENV})",
    )
    parser.add_argument("--format", choices=("json", "table"), default=default("json"))
    parser.add_argument(
        "--seed", type=int, default=default(0), help="seed for randomized suites"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colorweyl",
        description="Exact engine for graded Weyl algebras with commutation factors",
    )
    _add_common_options(parser, top_level=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def subparser(name):
        p = sub.add_parser(name)
        _add_common_options(p, top_level=False)
        return p

    subparser("relations")
    p = subparser("normalize")
    p.add_argument("expr")
    p = subparser("act")
    p.add_argument("expr")
    p.add_argument("--state", required=True, help="comma-separated occupation vector")
    p = subparser("states")
    p.add_argument("--B", required=True, help="external flux in units of Phi0")
    p = subparser("gram")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--csv", help="write numeric entries to this CSV file")
    subparser("superize")
    p = subparser("verify")
    p.add_argument("--words", type=int, default=200)
    p.add_argument("--triples", type=int, default=50)
    p.add_argument("--pairs", type=int, default=100)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _build_config(args)
    except (FactorError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run_command(args.command, cfg, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (FactorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, cfg)
    if args.command == "verify" and not report.get("ok", False):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
