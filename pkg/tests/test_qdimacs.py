import pytest

from qbflab import (
    And,
    Const,
    Not,
    Or,
    PrenexQbf,
    QdimacsError,
    Quantifier,
    Var,
    parse_qdimacs,
    print_qdimacs,
)

A, E = Quantifier.FORALL, Quantifier.EXISTS


class TestParse:
    def test_single_clause(self):
        q = parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 0")
        assert q == PrenexQbf(((A, 1), (E, 2)), Or(Var(1), Var(2)))

    def test_single_negative_literal(self):
        q = parse_qdimacs("p cnf 1 1\ne 1 0\n-1 0")
        assert q == PrenexQbf(((E, 1),), Not(Var(1)))

    def test_multiple_clauses_build_conjunction(self):
        q = parse_qdimacs("p cnf 3 2\na 1 2 0\ne 3 0\n1 -2 0\n2 3 0")
        assert q.prefix == ((A, 1), (A, 2), (E, 3))
        assert q.matrix == And(Or(Var(1), Not(Var(2))), Or(Var(2), Var(3)))

    def test_zero_clauses_is_constant_true(self):
        q = parse_qdimacs("p cnf 0 0")
        assert q == PrenexQbf((), Const(1))

    def test_empty_clause_is_constant_false(self):
        q = parse_qdimacs("p cnf 1 2\ne 1 0\n1 0\n0")
        assert q.matrix == And(Var(1), Const(0))

    def test_comments_and_blank_lines(self):
        text = "c a comment\n\np cnf 1 1\nc another\ne 1 0\n1 0\n"
        assert parse_qdimacs(text) == PrenexQbf(((E, 1),), Var(1))

    def test_blocks_expand_per_variable_in_file_order(self):
        q = parse_qdimacs("p cnf 3 1\ne 2 1 0\na 3 0\n1 2 3 0")
        assert q.prefix == ((E, 2), (E, 1), (A, 3))

    def test_bytes_input(self):
        assert parse_qdimacs(b"p cnf 1 1\ne 1 0\n1 0") == PrenexQbf(((E, 1),), Var(1))


class TestParseErrors:
    def test_clause_count_mismatch(self):
        with pytest.raises(QdimacsError):
            parse_qdimacs("p cnf 2 2\na 1 0\ne 2 0\n1 2 0")

    def test_malformed_header(self):
        for bad in ("p dnf 1 1\ne 1 0\n1 0", "1 0", "p cnf x y\n"):
            with pytest.raises(QdimacsError):
                parse_qdimacs(bad)

    def test_literal_out_of_range(self):
        with pytest.raises(QdimacsError):
            parse_qdimacs("p cnf 1 1\ne 1 0\n2 0")

    def test_missing_clause_terminator(self):
        with pytest.raises(QdimacsError):
            parse_qdimacs("p cnf 1 1\ne 1 0\n1")

    def test_missing_quantifier_terminator(self):
        with pytest.raises(QdimacsError):
            parse_qdimacs("p cnf 1 1\ne 1\n1 0")

    def test_unquantified_variable_in_clause(self):
        with pytest.raises(QdimacsError):
            parse_qdimacs("p cnf 2 1\ne 1 0\n1 2 0")

    def test_double_quantification(self):
        with pytest.raises(QdimacsError):
            parse_qdimacs("p cnf 1 1\ne 1 0\na 1 0\n1 0")

    def test_quantifier_after_clause(self):
        with pytest.raises(QdimacsError):
            parse_qdimacs("p cnf 2 1\ne 1 0\n1 0\na 2 0")

    def test_two_clauses_on_one_line(self):
        with pytest.raises(QdimacsError):
            parse_qdimacs("p cnf 2 2\ne 1 2 0\n1 0 2 0")

    def test_error_carries_line_number(self):
        with pytest.raises(QdimacsError) as info:
            parse_qdimacs("p cnf 1 1\ne 1 0\n3 0")
        assert info.value.line == 3

    def test_non_ascii(self):
        with pytest.raises(QdimacsError):
            parse_qdimacs("p cnf 1 1\ne 1 0\n1 0☃".encode())


class TestPrint:
    CORPUS = [
        "p cnf 2 1\na 1 0\ne 2 0\n1 2 0",
        "p cnf 1 1\ne 1 0\n-1 0",
        "p cnf 3 2\na 1 2 0\ne 3 0\n1 -2 0\n2 3 0",
        "p cnf 0 0",
        "p cnf 2 3\ne 1 0\na 2 0\n1 0\n0\n-1 -2 0",
    ]

    @pytest.mark.parametrize("text", CORPUS)
    def test_round_trip(self, text):
        q = parse_qdimacs(text)
        assert parse_qdimacs(print_qdimacs(q)) == q

    def test_blocks_are_merged(self):
        q = parse_qdimacs("p cnf 3 1\na 1 0\na 2 0\ne 3 0\n3 0")
        out = print_qdimacs(q)
        assert "a 1 2 0" in out
        assert parse_qdimacs(out) == q

    def test_rejects_non_cnf_matrix(self):
        from qbflab import Xor

        q = PrenexQbf(((A, 1), (E, 2)), Xor(Var(1), Var(2)))
        with pytest.raises(QdimacsError):
            print_qdimacs(q)

    def test_rejects_sparse_variable_ids(self):
        q = PrenexQbf(((A, 1), (E, 3)), Or(Var(1), Var(3)))
        with pytest.raises(QdimacsError):
            print_qdimacs(q)
