"""qbflab: a small-scale laboratory for quantified boolean formulas.

Evaluation by quantifier recursion, Skolem witnesses as truth tables,
alternating-prefix normalization, the requantified-copies construction,
and exhaustive audits over enumerable corpora.
"""

from .formula import (
    TABLE_ARITY_CAP,
    And,
    AnfPolynomial,
    ArityOverflowError,
    Const,
    Formula,
    FormulaError,
    MissingVariableError,
    Not,
    Or,
    TruthTable,
    Var,
    Xor,
    anf_size,
    eval_formula,
    formula_to_truth_table,
    node_count,
    substitute_vars,
    truth_table_to_anf,
    variables,
)
from .qbf import (
    DuplicateVariableError,
    EvalStats,
    OpenFormulaError,
    PrefixClass,
    PrefixSide,
    PrenexQbf,
    Quantifier,
    classify_prefix,
    evaluate_qbf,
    is_tautology,
    qbf_size,
    substitute,
)
from .skolem import (
    BudgetExceededError,
    CertificateMismatchError,
    DEFAULT_SEARCH_BUDGET,
    SkolemCertificate,
    SkolemFunction,
    bounded_skolem_decision,
    certificate_space_size,
    exists_skolem_witness,
    existential_dependencies,
    max_anf_bound,
    skolem_substitute,
    verify_certificate,
)
from .normalize import (
    MappingEntry,
    PhiPrime,
    PhiPrimeClause,
    StandardFormQbf,
    VariableMapping,
    build_phi_prime,
    prenex_phi_prime,
    to_standard_form,
)
from .audit import (
    AuditReport,
    BlowupMeasurement,
    ClaimKind,
    CorpusFamily,
    CorpusParams,
    Counterexample,
    ResidualCounts,
    ResidualEnumeration,
    SwapReport,
    Verdict,
    audit_phi_prime_equivalence,
    audit_swap_criterion,
    enumerate_residuals,
    generate_corpus,
    measure_skolem_blowup,
    parity_family,
    replay_phi_prime_instance,
    residual_counts,
    run_blowup_audit,
    run_residual_audit,
    run_swap_audit,
)
from .textfmt import (
    DuplicateQuantifierError,
    QbfDocument,
    QbfSyntaxError,
    TextFormatError,
    UnboundVariableError,
    format_formula,
    parse_qbf_document,
    parse_qbf_text,
    print_qbf,
)
from .qdimacs import QdimacsError, parse_qdimacs, print_qdimacs
from .jsonio import (
    CertificateFormatError,
    audit_report_to_json,
    audit_report_to_obj,
    certificate_from_json,
    certificate_from_obj,
    certificate_to_json,
    certificate_to_obj,
    mapping_to_obj,
)
from .cli import cli_dispatch

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
