import pytest

from qbflab import (
    And,
    Const,
    CorpusFamily,
    CorpusParams,
    Or,
    PrefixSide,
    PrenexQbf,
    Quantifier,
    StandardFormQbf,
    Var,
    build_phi_prime,
    classify_prefix,
    evaluate_qbf,
    generate_corpus,
    mapping_to_obj,
    parse_qbf_text,
    prenex_phi_prime,
    substitute_vars,
    to_standard_form,
)

from oracles import all_prefixes, oracle_phi_prime_value, two_var_matrices

A, E = Quantifier.FORALL, Quantifier.EXISTS


def qbf(prefix, matrix):
    return PrenexQbf(tuple(prefix), matrix)


class TestToStandardForm:
    def test_worked_example_shape(self):
        q = parse_qbf_text("exists x y\nforall z\nx | y | z")
        standard, mapping = to_standard_form(q)
        quants = [quant for quant, _ in standard.qbf.prefix]
        assert quants == [A, E, A, E, A, E]
        # originals keep their ids and order; dummies fill slots 0, 2, 5
        assert [e.dummy for e in mapping.entries] == [True, False, True, False, False, True]
        assert [e.source_position for e in mapping.entries] == [None, 0, None, 1, 2, None]
        assert standard.qbf.matrix == q.matrix
        assert evaluate_qbf(standard.qbf) == evaluate_qbf(q) == 1

    def test_already_standard_is_fixpoint(self):
        q = qbf([(A, 1), (E, 2)], Or(Var(1), Var(2)))
        standard, mapping = to_standard_form(q)
        assert standard.qbf == q
        assert mapping.dummy_ids == ()

    def test_single_universal_gets_trailing_dummy(self):
        q = qbf([(A, 1)], Var(1))
        standard, mapping = to_standard_form(q)
        assert [quant for quant, _ in standard.qbf.prefix] == [A, E]
        assert len(mapping.dummy_ids) == 1
        assert evaluate_qbf(standard.qbf) == evaluate_qbf(q) == 0

    def test_ground_formula_gets_two_dummies(self):
        q = qbf([], Const(1))
        standard, mapping = to_standard_form(q)
        assert len(standard.qbf.prefix) == 2
        assert len(mapping.dummy_ids) == 2
        assert evaluate_qbf(standard.qbf) == 1

    def test_exhaustive_small_corpus_contract(self):
        for prefix in all_prefixes([0, 1, 2, 3]):
            n_orig = len(prefix)
            matrices = (
                list(two_var_matrices([v for _, v in prefix]))
                if n_orig >= 2
                else [Const(0), Const(1)] + ([Var(1)] if n_orig == 1 else [])
            )
            for matrix in matrices:
                q = qbf(prefix, matrix)
                standard, mapping = to_standard_form(q)
                out = standard.qbf.prefix
                assert len(out) % 2 == 0
                assert len(out) <= 2 * n_orig + 2
                assert all(
                    quant is (A if i % 2 == 0 else E) for i, (quant, _) in enumerate(out)
                )
                assert evaluate_qbf(standard.qbf) == evaluate_qbf(q)
                kept = [v for _, v in out if v in {v0 for _, v0 in prefix}]
                assert kept == [v for _, v in prefix]

    def test_classification_is_even_pi(self):
        for prefix in all_prefixes([1, 2, 3]):
            q = qbf(prefix, Const(1))
            standard, _ = to_standard_form(q)
            cls = classify_prefix(standard.qbf)
            assert cls.side is PrefixSide.PI
            assert cls.level == 2 * standard.n

    def test_mapping_json_shape(self):
        q = parse_qbf_text("exists x y\nforall z\nx | y | z")
        _, mapping = to_standard_form(q)
        obj = mapping_to_obj(mapping, {1: "x", 2: "y", 3: "z"})
        assert obj["prefix_length"] == 6
        assert obj["entries"][0]["dummy"] is True
        assert obj["entries"][1] == {
            "position": 1,
            "var": 1,
            "quantifier": "exists",
            "dummy": False,
            "original_position": 0,
            "name": "x",
        }


class TestStandardFormType:
    def test_rejects_wrong_alternation(self):
        with pytest.raises(ValueError):
            StandardFormQbf.from_qbf(qbf([(E, 1), (A, 2)], Var(1)))

    def test_rejects_odd_prefix(self):
        with pytest.raises(ValueError):
            StandardFormQbf.from_qbf(qbf([(A, 1)], Var(1)))

    def test_accepts_standard_with_pairing(self):
        s = StandardFormQbf.from_qbf(qbf([(A, 3), (E, 7)], Or(Var(3), Var(7))))
        assert s.n == 1
        assert s.pairing == ((3, 7),)


def _standard(n, matrix):
    prefix = []
    pairing = []
    for i in range(1, n + 1):
        prefix += [(A, 2 * i - 1), (E, 2 * i)]
        pairing.append((2 * i - 1, 2 * i))
    return StandardFormQbf(qbf(prefix, matrix), n, tuple(pairing))


class TestBuildPhiPrime:
    def test_n2_structure(self):
        matrix = Or(And(Var(1), Var(2)), And(Var(3), Var(4)))
        construction = build_phi_prime(_standard(2, matrix))
        assert construction.n == 2
        assert construction.outer_universals == (1, 3)
        assert construction.outer_existentials == (2, 4)
        assert construction.first_conjunct == matrix
        assert [c.start for c in construction.clauses] == [2]
        clause = construction.clauses[0]
        assert len(clause.hat_vars) == len(clause.z_vars) == 1
        expected = substitute_vars(matrix, {3: Var(clause.hat_vars[0]), 4: Var(clause.z_vars[0])})
        assert clause.body == expected

    def test_n1_is_degenerate(self):
        construction = build_phi_prime(_standard(1, Or(Var(1), Var(2))))
        assert construction.clauses == ()

    def test_n3_has_three_conjuncts(self):
        matrix = Or(*(Var(i) for i in range(1, 7)))
        construction = build_phi_prime(_standard(3, matrix))
        assert [c.start for c in construction.clauses] == [3, 2]
        sizes = [(len(c.hat_vars), len(c.z_vars)) for c in construction.clauses]
        assert sizes == [(1, 1), (2, 2)]
        # replacements are renamed apart across copies
        all_fresh = [v for c in construction.clauses for v in c.hat_vars + c.z_vars]
        assert len(all_fresh) == len(set(all_fresh))

    def test_shared_variant_reuses_replacements(self):
        matrix = Or(*(Var(i) for i in range(1, 7)))
        construction = build_phi_prime(_standard(3, matrix), shared_fresh=True)
        last, second = construction.clauses
        assert last.hat_vars[0] == second.hat_vars[1]
        assert last.z_vars[0] == second.z_vars[1]


class TestPrenexPhiPrime:
    def test_classification(self):
        for n, level in ((1, 2), (2, 4), (3, 4)):
            matrix = Or(*(Var(i) for i in range(1, 2 * n + 1)))
            q = prenex_phi_prime(build_phi_prime(_standard(n, matrix)))
            cls = classify_prefix(q)
            assert cls.side is PrefixSide.PI
            assert cls.level == level

    def test_matches_nested_oracle_on_exhaustive_n2(self):
        params = CorpusParams(CorpusFamily.EXHAUSTIVE_2VAR, n=2)
        for instance in generate_corpus(params):
            construction = build_phi_prime(instance)
            assert evaluate_qbf(prenex_phi_prime(construction)) == oracle_phi_prime_value(
                construction
            )

    def test_matches_nested_oracle_on_random_n3(self):
        params = CorpusParams(CorpusFamily.RANDOM_AST, n=3, seed=42, count=25)
        for instance in generate_corpus(params):
            construction = build_phi_prime(instance)
            assert evaluate_qbf(prenex_phi_prime(construction)) == oracle_phi_prime_value(
                construction
            )

    def test_prenex_prefix_block_order(self):
        matrix = Or(*(Var(i) for i in range(1, 5)))
        construction = build_phi_prime(_standard(2, matrix))
        q = prenex_phi_prime(construction)
        quants = [quant for quant, _ in q.prefix]
        assert quants == [A, A, E, E, A, E]
        assert q.prefix_vars[:4] == (1, 3, 2, 4)
