"""Command-line surface.

Exit codes follow solver conventions: ``eval``, ``verify-cert``, and
``bounded-skolem`` exit 0 for a positive answer and 1 for a negative one;
usage problems exit 64, unreadable or malformed input 65, and a refused
search budget 66.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Mapping, Optional

from .audit import (
    CorpusFamily,
    CorpusParams,
    audit_phi_prime_equivalence,
    run_blowup_audit,
    run_residual_audit,
    run_swap_audit,
)
from .jsonio import (
    CertificateFormatError,
    audit_report_to_json,
    certificate_from_json,
    certificate_to_json,
    mapping_to_obj,
)
from .normalize import build_phi_prime, prenex_phi_prime, to_standard_form
from .qbf import (
    DuplicateVariableError,
    EvalStats,
    OpenFormulaError,
    classify_prefix,
    evaluate_qbf,
)
from .qdimacs import QdimacsError, parse_qdimacs
from .skolem import (
    BudgetExceededError,
    CertificateMismatchError,
    DEFAULT_SEARCH_BUDGET,
    bounded_skolem_decision,
    exists_skolem_witness,
    skolem_substitute,
    verify_certificate,
)
from .textfmt import QbfDocument, TextFormatError, format_formula, parse_qbf_document, print_qbf

EXIT_TRUE = 0
EXIT_FALSE = 1
EX_USAGE = 64
EX_DATA = 65
EX_BUDGET = 66

_GREEK_DUMMIES = ("α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "μ")

_INPUT_ERRORS = (
    TextFormatError,
    QdimacsError,
    OpenFormulaError,
    DuplicateVariableError,
    CertificateMismatchError,
    CertificateFormatError,
    OSError,
    ValueError,
)


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_source(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def _load_document(path: str, fmt: str) -> QbfDocument:
    source = _read_source(path)
    if fmt == "qdimacs":
        return QbfDocument(parse_qdimacs(source), {})
    return parse_qbf_document(source)


def _fresh_names(
    base: Mapping[int, str], wanted: list[tuple[int, str]]
) -> dict[int, str]:
    """Extend a name map with suggestions, keeping everything unique."""
    names = dict(base)
    taken = set(names.values())
    counter = 1
    for var, suggestion in wanted:
        name = suggestion
        while name in taken:
            name = f"_f{counter}"
            counter += 1
        names[var] = name
        taken.add(name)
    return names


def _dummy_names(base: Mapping[int, str], dummy_ids: tuple[int, ...]) -> dict[int, str]:
    suggestions = []
    for k, var in enumerate(dummy_ids):
        suggestion = _GREEK_DUMMIES[k] if k < len(_GREEK_DUMMIES) else f"_d{k + 1}"
        suggestions.append((var, suggestion))
    return _fresh_names(base, suggestions)


def _write_output(text: str, out: Optional[str]) -> None:
    if out is None:
        print(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_eval(args) -> int:
    doc = _load_document(args.path, args.format)
    stats = EvalStats()
    value = evaluate_qbf(doc.qbf, short_circuit=not args.no_short_circuit, stats=stats)
    if args.stats:
        print(f"nodes visited: {stats.nodes_visited}", file=sys.stderr)
    print("TRUE" if value else "FALSE")
    return EXIT_TRUE if value else EXIT_FALSE


def _cmd_classify(args) -> int:
    doc = _load_document(args.path, args.format)
    print(classify_prefix(doc.qbf).describe())
    return EXIT_TRUE


def _cmd_normalize(args) -> int:
    doc = _load_document(args.path, args.format)
    standard, mapping = to_standard_form(doc.qbf)
    names = _dummy_names(doc.names, mapping.dummy_ids)
    print(print_qbf(standard.qbf, names))
    if args.mapping_out:
        with open(args.mapping_out, "w", encoding="utf-8") as handle:
            json.dump(mapping_to_obj(mapping, names), handle, indent=2)
            handle.write("\n")
    return EXIT_TRUE


def _cmd_phi_prime(args) -> int:
    doc = _load_document(args.path, args.format)
    standard, mapping = to_standard_form(doc.qbf)
    names = _dummy_names(doc.names, mapping.dummy_ids)
    construction = build_phi_prime(standard, shared_fresh=args.shared)
    suggestions = []
    for clause in construction.clauses:
        for offset, hat in enumerate(clause.hat_vars):
            suggestions.append((hat, f"h{clause.start + offset}c{clause.start}"))
        for offset, z in enumerate(clause.z_vars):
            suggestions.append((z, f"z{clause.start + offset}c{clause.start}"))
    seen: set[int] = set()
    unique_suggestions = []
    for var, name in suggestions:
        if var not in seen:
            seen.add(var)
            unique_suggestions.append((var, name))
    names = _fresh_names(names, unique_suggestions)
    print(print_qbf(prenex_phi_prime(construction), names))
    return EXIT_TRUE


def _cmd_skolemize(args) -> int:
    doc = _load_document(args.path, args.format)
    cert = certificate_from_json(_read_source(args.cert))
    result = skolem_substitute(doc.qbf, cert)
    print(format_formula(result, doc.names))
    return EXIT_TRUE


def _cmd_verify_cert(args) -> int:
    doc = _load_document(args.path, args.format)
    cert = certificate_from_json(_read_source(args.cert))
    value = verify_certificate(doc.qbf, cert)
    print("VALID" if value else "INVALID")
    return EXIT_TRUE if value else EXIT_FALSE


def _cmd_bounded_skolem(args) -> int:
    doc = _load_document(args.path, args.format)
    if args.bound is None:
        value, cert = exists_skolem_witness(doc.qbf, budget=args.budget)
        if args.witness_out and cert is not None:
            _write_output(certificate_to_json(cert), args.witness_out)
    else:
        value = bounded_skolem_decision(doc.qbf, args.bound, budget=args.budget)
    print("TRUE" if value else "FALSE")
    return EXIT_TRUE if value else EXIT_FALSE


def _cmd_audit(args) -> int:
    if args.claim == "swap-criterion":
        report = run_swap_audit()
    elif args.claim == "residual-count":
        ns = [args.n] if args.n else [1, 2, 3]
        report = run_residual_audit(ns)
    elif args.claim == "skolem-blowup":
        report = run_blowup_audit(args.k_max)
    else:
        n = args.n or 2
        families = args.family or ["EXHAUSTIVE_2VAR", "ALL_SMALL_CNF"]
        corpora = [
            CorpusParams(
                family=CorpusFamily(f),
                n=n,
                seed=args.seed,
                count=args.count,
                max_clauses=args.max_clauses,
            )
            for f in families
        ]
        report = audit_phi_prime_equivalence(corpora, include_shared_variant=args.shared_variant)
    _write_output(audit_report_to_json(report), args.out)
    return EXIT_TRUE


# ---------------------------------------------------------------------------
# Parser assembly


def _add_formula_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("path", nargs="?", default="-", help="input file, or - for stdin")
    sub.add_argument(
        "--format",
        choices=("text", "qdimacs"),
        default="text",
        help="input format (default: text)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="qbflab", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("eval", help="decide a closed prenex QBF")
    _add_formula_args(sub)
    sub.add_argument("--no-short-circuit", action="store_true", help="always explore both branches")
    sub.add_argument("--stats", action="store_true", help="print visited node count to stderr")
    sub.set_defaults(func=_cmd_eval)

    sub = subs.add_parser("classify", help="report the prefix alternation class")
    _add_formula_args(sub)
    sub.set_defaults(func=_cmd_classify)

    sub = subs.add_parser("normalize", help="convert to the alternating pair form")
    _add_formula_args(sub)
    sub.add_argument("--mapping-out", help="write the variable mapping JSON to this file")
    sub.set_defaults(func=_cmd_normalize)

    sub = subs.add_parser("phi-prime", help="build and prenex the requantified-copies form")
    _add_formula_args(sub)
    sub.add_argument(
        "--shared",
        action="store_true",
        help="reuse one replacement variable per pair across copies",
    )
    sub.set_defaults(func=_cmd_phi_prime)

    sub = subs.add_parser("skolemize", help="substitute a certificate into the matrix")
    _add_formula_args(sub)
    sub.add_argument("--cert", required=True, help="certificate JSON file")
    sub.set_defaults(func=_cmd_skolemize)

    sub = subs.add_parser("verify-cert", help="check a certificate against a formula")
    _add_formula_args(sub)
    sub.add_argument("--cert", required=True, help="certificate JSON file")
    sub.set_defaults(func=_cmd_verify_cert)

    sub = subs.add_parser("bounded-skolem", help="search for a (size-bounded) certificate")
    _add_formula_args(sub)
    sub.add_argument("--bound", type=int, help="largest allowed ANF monomial count")
    sub.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_SEARCH_BUDGET,
        help="largest candidate space the search will enumerate",
    )
    sub.add_argument("--witness-out", help="write the found certificate JSON here (unbounded only)")
    sub.set_defaults(func=_cmd_bounded_skolem)

    sub = subs.add_parser("audit", help="run one audit and emit its JSON report")
    sub.add_argument(
        "claim",
        choices=("swap-criterion", "residual-count", "phi-prime-equivalence", "skolem-blowup"),
    )
    sub.add_argument("--out", help="write the report here instead of stdout")
    sub.add_argument("--n", type=int, help="pair count for corpus-based claims")
    sub.add_argument("--seed", type=int, default=0, help="corpus seed")
    sub.add_argument("--count", type=int, default=100, help="RANDOM_AST instance count")
    sub.add_argument("--max-clauses", type=int, default=3, help="ALL_SMALL_CNF clause cap")
    sub.add_argument("--k-max", type=int, default=10, help="largest k for skolem-blowup")
    sub.add_argument(
        "--family",
        action="append",
        choices=[f.value for f in CorpusFamily],
        help="corpus family for phi-prime-equivalence (repeatable)",
    )
    sub.add_argument(
        "--shared-variant",
        action="store_true",
        help="also tally the shared-replacement variant",
    )
    sub.set_defaults(func=_cmd_audit)

    return parser


def cli_dispatch(argv: list[str]) -> int:
    """Parse arguments and run one subcommand, returning the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"qbflab: {exc}", file=sys.stderr)
        return EX_USAGE
    except SystemExit as exc:  # --help and friends
        code = exc.code
        return int(code) if isinstance(code, int) else 0
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"qbflab: {exc}", file=sys.stderr)
        return EX_BUDGET
    except _INPUT_ERRORS as exc:
        print(f"qbflab: {exc}", file=sys.stderr)
        return EX_DATA


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
