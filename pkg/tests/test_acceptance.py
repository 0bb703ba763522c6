"""Acceptance suite: one test per criterion, exact tolerances, with a
printed PASS line (visible under ``pytest -s``) carrying the instance
counts and elapsed time against the expected runtime budget."""

import time

from qbflab import (
    Const,
    CorpusFamily,
    CorpusParams,
    EvalStats,
    PrefixSide,
    PrenexQbf,
    Quantifier,
    Verdict,
    audit_phi_prime_equivalence,
    audit_swap_criterion,
    bounded_skolem_decision,
    build_phi_prime,
    classify_prefix,
    cli_dispatch,
    enumerate_residuals,
    evaluate_qbf,
    exists_skolem_witness,
    generate_corpus,
    max_anf_bound,
    measure_skolem_blowup,
    prenex_phi_prime,
    replay_phi_prime_instance,
    residual_counts,
    to_standard_form,
)
from qbflab.audit import _default_standard_form

from oracles import all_prefixes, oracle_phi_prime_value, two_var_matrices

A, E = Quantifier.FORALL, Quantifier.EXISTS


def _report(criterion, detail, started, budget_s):
    elapsed = time.perf_counter() - started
    print(f"ACCEPTANCE {criterion}: PASS ({detail}; {elapsed:.1f}s of {budget_s:.0f}s budget)")


def test_criterion_1_witness_search_matches_evaluator():
    """Exhaustive agreement of the certificate search with the recursive
    evaluator on all prefixes of 2..4 variables and all 16 two-variable
    functions on every ordered variable pair; zero tolerance."""
    started = time.perf_counter()
    instances = 0
    for prefix in all_prefixes([2, 3, 4]):
        prefix_vars = [v for _, v in prefix]
        for matrix in two_var_matrices(prefix_vars):
            q = PrenexQbf(prefix, matrix)
            assert exists_skolem_witness(q)[0] == evaluate_qbf(q)
            instances += 1
    assert instances >= 1500
    _report("1 skolem-witness-equivalence", f"{instances} instances, 0 mismatches", started, 60)


def test_criterion_2_swap_criterion():
    started = time.perf_counter()
    reports = audit_swap_criterion()
    assert len(reports) == 16
    unequal = {r.table.bits_string() for r in reports if not r.swap_equal}
    equal_count = sum(1 for r in reports if r.swap_equal)
    assert equal_count == 14
    assert unequal == {"0110", "1001"}
    _report("2 swap-criterion", "14 equal, 2 unequal (0110, 1001)", started, 1)


def test_criterion_3_residual_count():
    started = time.perf_counter()
    for n, expected_total, expected_under in ((2, 16, 4), (3, 144, 9)):
        stream_length = sum(1 for _ in enumerate_residuals(_default_standard_form(n)))
        counts = residual_counts(n)
        assert stream_length == counts.total == expected_total
        assert counts.undercount == expected_under
    _report("3 residual-count", "n=2: 16 vs 4; n=3: 144 vs 9", started, 5)


def test_criterion_4_standard_form_contract(capsys, tmp_path):
    started = time.perf_counter()
    instances = 0
    from qbflab import Var

    for prefix in all_prefixes([0, 1, 2, 3]):
        n_orig = len(prefix)
        if n_orig >= 2:
            matrices = list(two_var_matrices([v for _, v in prefix]))
        elif n_orig == 1:
            matrices = [Const(0), Const(1), Var(1)]
        else:
            matrices = [Const(0), Const(1)]
        for matrix in matrices:
            q = PrenexQbf(prefix, matrix)
            standard, _ = to_standard_form(q)
            out = standard.qbf.prefix
            assert evaluate_qbf(standard.qbf) == evaluate_qbf(q)
            assert len(out) % 2 == 0
            assert len(out) <= 2 * n_orig + 2
            assert all(quant is (A if i % 2 == 0 else E) for i, (quant, _) in enumerate(out))
            instances += 1

    source = tmp_path / "example.qbf"
    source.write_text("exists x y\nforall z\nx | y | z\n", encoding="utf-8")
    assert cli_dispatch(["normalize", str(source)]) == 0
    printed = capsys.readouterr().out
    assert printed == "forall α\nexists x\nforall β\nexists y\nforall z\nexists γ\nx | y | z\n"
    with capsys.disabled():
        _report(
            "4 standard-form",
            f"{instances} instances preserved, worked example verbatim",
            started,
            30,
        )


def test_criterion_5_phi_prime_structure():
    started = time.perf_counter()
    classified = 0
    for n in (2, 3):
        corpora = [
            CorpusParams(CorpusFamily.EXHAUSTIVE_2VAR, n=n),
            CorpusParams(CorpusFamily.RANDOM_AST, n=n, seed=100 + n, count=100),
        ]
        for params in corpora:
            for instance in generate_corpus(params):
                prenexed = prenex_phi_prime(build_phi_prime(instance))
                cls = classify_prefix(prenexed)
                assert cls.side is PrefixSide.PI and cls.level == 4
                classified += 1
    agreements = 0
    for instance in generate_corpus(CorpusParams(CorpusFamily.EXHAUSTIVE_2VAR, n=2)):
        construction = build_phi_prime(instance)
        assert evaluate_qbf(prenex_phi_prime(construction)) == oracle_phi_prime_value(construction)
        agreements += 1
    _report(
        "5 phi-prime-structure",
        f"{classified} instances PI-4, prenexing matches oracle on {agreements}",
        started,
        120,
    )


def test_criterion_6_phi_prime_equivalence_audit():
    started = time.perf_counter()
    report = audit_phi_prime_equivalence(
        [
            CorpusParams(CorpusFamily.EXHAUSTIVE_2VAR, n=2),
            CorpusParams(CorpusFamily.ALL_SMALL_CNF, n=2, max_clauses=3),
        ]
    )
    assert report.instances_checked == 192 + 85401
    assert report.verdict in (Verdict.REFUTED, Verdict.NO_COUNTEREXAMPLE_FOUND)
    for ce in report.counterexamples:
        assert replay_phi_prime_instance(ce.formula_text) == (ce.lhs, ce.rhs)
    _report(
        "6 phi-prime-equivalence",
        f"{report.instances_checked} instances, verdict {report.verdict.value}, "
        f"{len(report.counterexamples)} counterexamples (all replayed)",
        started,
        600,
    )


def test_criterion_7_bounded_decision_mechanics():
    started = time.perf_counter()
    from qbflab import Var, Xor

    xor_q = PrenexQbf(((A, 1), (E, 2)), Xor(Var(1), Var(2)))
    assert bounded_skolem_decision(xor_q, 1) == 0
    assert bounded_skolem_decision(xor_q, 2) == 1

    instances = 0
    for prefix in all_prefixes([2, 3]):
        for matrix in two_var_matrices([v for _, v in prefix]):
            q = PrenexQbf(prefix, matrix)
            b_max = max_anf_bound(q)
            previous = 0
            for bound in range(b_max + 1):
                value = bounded_skolem_decision(q, bound)
                assert value >= previous
                previous = value
            assert previous == bounded_skolem_decision(q, b_max) == exists_skolem_witness(q)[0]
            instances += 1
    _report(
        "7 bounded-skolem-mechanics",
        f"monotone and saturating on {instances} instances; xor pivots at bound 2",
        started,
        10,
    )


def test_criterion_8_blowup_measurement():
    started = time.perf_counter()
    rows = measure_skolem_blowup(10)
    assert [r.k for r in rows] == list(range(1, 11))
    for row in rows:
        assert row.table_bits == 1 << row.k
        assert row.anf_size == row.k
        assert row.found_by_search == (row.k <= 4)
    _report(
        "8 skolem-blowup",
        "k=1..10 table bits 2^k; witness ANF size k (search up to k=4)",
        started,
        60,
    )


def test_criterion_9_recursion_node_bound():
    started = time.perf_counter()
    for m in range(0, 11):
        for value in (0, 1):
            for lead in (A, E):
                prefix = tuple(
                    (lead if i % 2 == 0 else (E if lead is A else A), i + 1) for i in range(m)
                )
                q = PrenexQbf(prefix, Const(value))
                stats = EvalStats()
                evaluate_qbf(q, short_circuit=False, stats=stats)
                assert stats.nodes_visited == (1 << (m + 1)) - 1
                stats = EvalStats()
                evaluate_qbf(q, stats=stats)
                assert stats.nodes_visited <= (1 << (m + 1)) - 1
    for prefix in all_prefixes([3]):
        for matrix in two_var_matrices([1, 2, 3]):
            stats = EvalStats()
            evaluate_qbf(PrenexQbf(prefix, matrix), stats=stats)
            assert stats.nodes_visited <= (1 << 4) - 1
    _report(
        "9 recursion-bound",
        "2^(m+1)-1 reached exactly without short-circuit, never exceeded",
        started,
        10,
    )
