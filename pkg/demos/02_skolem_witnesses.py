"""Skolem witnesses: searching, verifying, and bounding their size.

Run:  python demos/02_skolem_witnesses.py
"""

from qbflab import (
    BudgetExceededError,
    anf_size,
    bounded_skolem_decision,
    certificate_space_size,
    certificate_to_json,
    evaluate_qbf,
    exists_skolem_witness,
    format_formula,
    max_anf_bound,
    parity_family,
    parse_qbf_text,
    skolem_substitute,
    truth_table_to_anf,
    verify_certificate,
)

# A true formula has a certificate: one boolean function per existential
# variable, over exactly the universals quantified before it.
q = parse_qbf_text("forall x\nexists y\nx ^ y")
bit, cert = exists_skolem_witness(q)
fn = cert.functions[0]
print("formula true:", bit == evaluate_qbf(q) == 1)
print("witness table for y over (x):", fn.table.bits_string(), "(y = !x)")
print("certificate JSON:", certificate_to_json(cert, indent=0).replace("\n", " "))
print()

# Substituting the witness leaves a quantifier-free formula over the
# universals, and it must be a tautology.
sub = skolem_substitute(q, cert)
print("substituted matrix:", format_formula(sub, {1: "x"}))
print("verifies:", verify_certificate(q, cert) == 1)
print()

# Swapping the prefix kills every candidate; the search reports that.
swapped = parse_qbf_text("exists y\nforall x\nx ^ y")
print("swapped prefix witness search:", exists_skolem_witness(swapped))
print()

# Witness size, measured as ANF monomial count, is a meaningful dial: the
# xor formula needs both monomials of y = 1 ^ x.
for bound in (0, 1, 2):
    print(f"bounded search, ANF size <= {bound}:", bounded_skolem_decision(q, bound))
print("saturation bound for this formula:", max_anf_bound(q))
print()

# The parity family shows the truth-table representation exploding while
# the ANF stays linear: 2^k table bits versus k monomials.
print(" k  table_bits  anf_size")
for k in (1, 2, 3, 4):
    fq = parity_family(k)
    _, fcert = exists_skolem_witness(fq)
    table = fcert.functions[0].table
    print(f"{k:2d}  {table.n_rows:10d}  {anf_size(truth_table_to_anf(table)):8d}")
print()

# The certificate space is doubly exponential; the search refuses rather
# than silently truncating.
big = parity_family(5)
print("candidate certificates for k=5:", certificate_space_size(big))
try:
    exists_skolem_witness(big)
except BudgetExceededError as exc:
    print("search refused:", exc)
