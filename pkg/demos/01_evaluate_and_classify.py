"""Evaluating closed prenex QBFs and classifying their prefixes.

Run:  python demos/01_evaluate_and_classify.py
"""

from qbflab import (
    EvalStats,
    classify_prefix,
    evaluate_qbf,
    parse_qbf_text,
    print_qbf,
    substitute,
)

# Quantifier order is everything: y can answer x on the left, but must be
# chosen blind on the right.
left = parse_qbf_text("forall x\nexists y\nx ^ y")
right = parse_qbf_text("exists y\nforall x\nx ^ y")

print("forall x exists y [x ^ y]  ->", "TRUE" if evaluate_qbf(left) else "FALSE")
print("exists y forall x [x ^ y]  ->", "TRUE" if evaluate_qbf(right) else "FALSE")
print()

# The block structure of the prefix gives the alternation class.
for text in (
    "exists x y\nforall z\nx | y | z",
    "forall x1\nexists y1\nforall x2\nexists y2\nx1 | y1 | x2 | y2",
):
    q = parse_qbf_text(text)
    print(print_qbf(q).replace("\n", "  "), "->", classify_prefix(q).describe())
print()

# The decision procedure peels one quantifier per step.  substitute() is
# that single step made explicit:
q = left
while q.prefix:
    quant, var = q.prefix[0]
    zero, one = substitute(q, var, 0), substitute(q, var, 1)
    print(f"peel {quant.value} v{var}:")
    print("   [0]:", print_qbf(zero).replace("\n", "  "))
    print("   [1]:", print_qbf(one).replace("\n", "  "))
    q = one
print()

# Without short-circuiting the recursion visits exactly 2^(m+1)-1 nodes.
print("visited nodes on constant matrices (no short-circuit):")
for m in range(0, 7):
    lines = [f"forall x{i}" for i in range(1, m + 1)]
    q = parse_qbf_text("\n".join(lines) + "\n1" if lines else "1")
    stats = EvalStats()
    evaluate_qbf(q, short_circuit=False, stats=stats)
    print(f"  prefix length {m}: {stats.nodes_visited:4d} == 2^{m + 1}-1")
