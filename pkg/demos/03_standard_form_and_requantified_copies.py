"""Dummy-variable normalization and the requantified-copies construction.

Run:  python demos/03_standard_form_and_requantified_copies.py
"""

from qbflab import (
    build_phi_prime,
    classify_prefix,
    evaluate_qbf,
    format_formula,
    parse_qbf_document,
    prenex_phi_prime,
    print_qbf,
    to_standard_form,
)

# Any closed prenex formula can be padded with dummy variables until the
# prefix strictly alternates forall/exists, starts universal, and has even
# length; the matrix never changes, so neither does the truth value.
doc = parse_qbf_document("exists x y\nforall z\nx | y | z")
standard, mapping = to_standard_form(doc.qbf)

names = dict(doc.names)
for greek, var in zip("αβγδ", mapping.dummy_ids):
    names[var] = greek

print("input:")
print(doc.text())
print()
print("standard form (dummies α, β, γ):")
print(print_qbf(standard.qbf, names))
print()
print("truth preserved:", evaluate_qbf(doc.qbf) == evaluate_qbf(standard.qbf) == 1)
print("prefix length bound: ", len(standard.qbf.prefix), "<= 2*3 + 2")
print()

# From a standard-form formula with n pairs, conjoin the matrix with n-1
# copies in which the trailing pairs are requantified over fresh
# variables.  Pulling the quantifiers of the copies outward gives a fixed
# four-block prefix regardless of n.
doc2 = parse_qbf_document(
    "forall x1\nexists y1\nforall x2\nexists y2\n(x1 & y1) | (x2 & y2)"
)
standard2, _ = to_standard_form(doc2.qbf)
construction = build_phi_prime(standard2)

print("matrix:", format_formula(construction.first_conjunct, doc2.names))
for clause in construction.clauses:
    print(
        f"copy from pair {clause.start}: fresh universals {clause.hat_vars},",
        f"fresh existentials {clause.z_vars}",
    )
    print("  body:", format_formula(clause.body, doc2.names))

prenexed = prenex_phi_prime(construction)
print()
print("prenexed prefix class:", classify_prefix(prenexed).describe())
print("original value:", evaluate_qbf(doc2.qbf), " prenexed value:", evaluate_qbf(prenexed))
