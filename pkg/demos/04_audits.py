"""Running the four audits and reading their reports.

Run:  python demos/04_audits.py
"""

import json

from qbflab import (
    CorpusFamily,
    CorpusParams,
    audit_phi_prime_equivalence,
    audit_report_to_obj,
    run_blowup_audit,
    run_residual_audit,
    run_swap_audit,
)

# 1. Exactly two of the sixteen two-variable functions distinguish
#    forall-exists from exists-forall: xor and its negation.
swap = run_swap_audit()
unequal = [e["table_bits"] for e in swap.entries if not e["swap_equal"]]
print("swap-criterion:", swap.verdict.value, "- unequal tables:", unequal)

# 2. Fixing all but one (universal, existential) pair leaves a residual
#    two-variable function; counting the fixings gives n^2 * 2^(2n-2)
#    residuals, not the n^2 a pair count alone would suggest.
residual = run_residual_audit()
print("residual-count:", residual.verdict.value)
for entry in residual.entries:
    print(
        f"   n={entry['n']}: enumerated {entry['enumerated']}"
        f" (claimed undercount {entry['claimed_undercount']})"
    )

# 3. Truth-table blowup: the parity witness needs 2^k table bits but only
#    k ANF monomials.
blowup = run_blowup_audit(k_max=8)
print("skolem-blowup:", blowup.verdict.value)
for entry in blowup.entries[-3:]:
    print(f"   k={entry['k']}: {entry['table_bits']} table bits, {entry['anf_size']} monomials")

# 4. Whether the requantified construction preserves truth in general is
#    open; the audit searches finite corpora for a disagreement and can
#    only ever refute or report no counterexample, never confirm.
report = audit_phi_prime_equivalence(
    [
        CorpusParams(CorpusFamily.EXHAUSTIVE_2VAR, n=2),
        CorpusParams(CorpusFamily.ALL_SMALL_CNF, n=2, max_clauses=2),
        CorpusParams(CorpusFamily.RANDOM_AST, n=3, seed=0, count=200),
    ]
)
print(
    "phi-prime-equivalence:",
    report.verdict.value,
    f"({report.instances_checked} instances, {len(report.counterexamples)} disagreements)",
)

print()
print("full JSON of the swap report:")
print(json.dumps(audit_report_to_obj(swap), indent=2)[:400], "...")
