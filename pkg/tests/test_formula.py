import random

import pytest

from qbflab import (
    And,
    AnfPolynomial,
    ArityOverflowError,
    Const,
    MissingVariableError,
    Not,
    Or,
    TruthTable,
    Var,
    Xor,
    anf_size,
    eval_formula,
    formula_to_truth_table,
    truth_table_to_anf,
    variables,
)

from oracles import oracle_anf_monomials, oracle_table_bits, assignments

x, y, z = Var(1), Var(2), Var(3)


class TestEvalFormula:
    def test_or_with_one_true_disjunct(self):
        assert eval_formula(Or(x, y, z), {1: 1, 2: 0, 3: 0}) == 1

    def test_xor_of_equal_bits(self):
        assert eval_formula(Xor(x, y), {1: 1, 2: 1}) == 0

    def test_contradiction_is_always_false(self):
        f = And(x, Not(x))
        for env in assignments([1]):
            assert eval_formula(f, env) == 0

    def test_missing_variable(self):
        with pytest.raises(MissingVariableError):
            eval_formula(Or(x, y), {1: 0})

    def test_constant_needs_no_assignment(self):
        assert eval_formula(Const(1), {}) == 1


class TestAstValidation:
    def test_empty_and_rejected(self):
        with pytest.raises(ValueError):
            And()

    def test_empty_or_rejected(self):
        with pytest.raises(ValueError):
            Or()

    def test_bad_constant(self):
        with pytest.raises(ValueError):
            Const(2)

    def test_bad_variable_id(self):
        with pytest.raises(ValueError):
            Var(0)

    def test_variables_collects_all(self):
        assert variables(Xor(And(x, Not(y)), Or(z, Const(0)))) == {1, 2, 3}


class TestTruthTable:
    def test_or_bits(self):
        assert formula_to_truth_table(Or(x, y), (1, 2)).bits_string() == "0111"

    def test_xor_bits(self):
        assert formula_to_truth_table(Xor(x, y), (1, 2)).bits_string() == "0110"

    def test_nullary_constant(self):
        table = formula_to_truth_table(Const(1), ())
        assert table.arity == 0
        assert table.bits_string() == "1"

    def test_rows_match_per_assignment_oracle(self):
        rng = random.Random(7)
        corpus = [
            Or(And(x, y), Not(z)),
            Xor(x, Xor(y, z)),
            And(Or(x, y), Or(Not(x), z), Or(y, Not(z))),
            Not(Or(x, And(y, z))),
        ]
        for _ in range(30):
            corpus.append(_random_formula(rng, depth=4))
        for f in corpus:
            table = formula_to_truth_table(f, (1, 2, 3))
            assert list(table.bits) == oracle_table_bits(f, (1, 2, 3))

    def test_eval_agrees_with_table_row(self):
        f = Or(And(x, Not(y)), Xor(y, z))
        table = formula_to_truth_table(f, (1, 2, 3))
        for env in assignments((1, 2, 3)):
            assert eval_formula(f, env) == table.bit(table.row_of(env))

    def test_unused_variable_duplicates_rows(self):
        f = Xor(x, y)
        small = formula_to_truth_table(f, (1, 2))
        big = formula_to_truth_table(f, (1, 3, 2))  # 3 unused, middle position
        restricted = [big.bit(r) for r in range(big.n_rows) if not (r >> 1) & 1]
        assert restricted == list(small.bits)

    def test_arity_cap(self):
        wide = Or(*(Var(i) for i in range(1, 30)))
        with pytest.raises(ArityOverflowError):
            formula_to_truth_table(wide, tuple(range(1, 30)))

    def test_cap_is_configurable(self):
        with pytest.raises(ArityOverflowError):
            formula_to_truth_table(Or(x, y), (1, 2), max_arity=1)

    def test_order_must_cover_formula(self):
        with pytest.raises(MissingVariableError):
            formula_to_truth_table(Or(x, y), (1,))

    def test_from_bits_round_trip(self):
        table = TruthTable.from_bits_string("0111", (1, 2))
        assert table == formula_to_truth_table(Or(x, y), (1, 2))
        with pytest.raises(ValueError):
            TruthTable.from_bits_string("012", (1, 2))


class TestAnf:
    def test_or_monomials(self):
        table = formula_to_truth_table(Or(x, y), (1, 2))
        poly = truth_table_to_anf(table)
        assert {tuple(sorted(m)) for m in poly.monomials} == {(1,), (2,), (1, 2)}
        assert anf_size(poly) == 3

    def test_xor_is_its_own_anf(self):
        table = formula_to_truth_table(Xor(x, y), (1, 2))
        poly = truth_table_to_anf(table)
        assert {tuple(sorted(m)) for m in poly.monomials} == {(1,), (2,)}

    def test_zero_polynomial(self):
        poly = truth_table_to_anf(TruthTable(2, 0, (1, 2)))
        assert poly.monomials == frozenset()
        assert anf_size(poly) == 0

    def test_negation_has_two_monomials(self):
        table = formula_to_truth_table(Not(x), (1,))
        assert table.bits_string() == "10"
        assert anf_size(truth_table_to_anf(table)) == 2

    @pytest.mark.parametrize("arity", [0, 1, 2, 3])
    def test_round_trip_exhaustive(self, arity):
        order = tuple(range(1, arity + 1))
        for mask in range(1 << (1 << arity)):
            table = TruthTable(arity, mask, order)
            poly = truth_table_to_anf(table)
            for env in assignments(order):
                assert poly.evaluate(env) == table.evaluate(env)

    def test_round_trip_sampled_arity_4(self):
        rng = random.Random(2024)
        order = (1, 2, 3, 4)
        for _ in range(300):
            mask = rng.randrange(1 << 16)
            table = TruthTable(4, mask, order)
            poly = truth_table_to_anf(table)
            for env in assignments(order):
                assert poly.evaluate(env) == table.evaluate(env)

    def test_against_subset_sum_oracle(self):
        order = (1, 2, 3)
        for mask in range(256):
            table = TruthTable(3, mask, order)
            poly = truth_table_to_anf(table)
            got = {tuple(sorted(m)) for m in poly.monomials}
            assert got == oracle_anf_monomials(list(table.bits), order)

    def test_to_formula_renders_sorted_terms(self):
        table = formula_to_truth_table(Not(x), (1,))
        rendered = truth_table_to_anf(table).to_formula()
        assert rendered == Xor(Const(1), Var(1))

    def test_to_formula_evaluates_identically(self):
        for mask in range(16):
            table = TruthTable(2, mask, (1, 2))
            rendered = truth_table_to_anf(table).to_formula()
            for env in assignments((1, 2)):
                assert eval_formula(rendered, env) == table.evaluate(env)

    def test_monomials_must_use_known_variables(self):
        with pytest.raises(ValueError):
            AnfPolynomial(frozenset({frozenset({9})}), (1, 2))


def _random_formula(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([Var(1), Var(2), Var(3), Const(0), Const(1)])
    kind = rng.choice(["not", "and", "or", "xor"])
    if kind == "not":
        return Not(_random_formula(rng, depth - 1))
    if kind == "xor":
        return Xor(_random_formula(rng, depth - 1), _random_formula(rng, depth - 1))
    children = [_random_formula(rng, depth - 1) for _ in range(rng.randint(2, 3))]
    return And(*children) if kind == "and" else Or(*children)
