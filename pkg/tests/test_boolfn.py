import itertools

import pytest

from obtf.boolfn import (
    Clause,
    Formula,
    Literal,
    ParseError,
    TruthTable,
    all_clauses,
    all_ones,
    associated_pairs,
    format_formula,
    is_2sat_definable,
    is_elementary,
    is_median_closed,
    parse_formula,
    realize_formula,
    spine,
    truth_table,
)


def table(n, *assignments):
    """Build a table from assignment tuples like (1,0) meaning x1=1, x2=0."""
    bits = 0
    for a in assignments:
        bits |= 1 << sum(v << i for i, v in enumerate(a))
    return TruthTable(n, bits)


def all_formulas(n, min_clauses=0):
    clauses = all_clauses(n)
    for r in range(min_clauses, len(clauses) + 1):
        for sub in itertools.combinations(clauses, r):
            yield Formula.of(n, sub)


class TestLiteral:
    def test_negation_involution(self):
        for var in (1, 2, 7):
            for pos in (True, False):
                lit = Literal(var, pos)
                assert lit.negate().negate() == lit
                assert lit.negate().var == var

    def test_index_roundtrip(self):
        for idx in range(10):
            assert Literal.from_index(idx).index == idx

    def test_signed_roundtrip(self):
        for a in (1, -1, 3, -5):
            assert Literal.from_signed(a).signed() == a

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            Literal.from_signed(0)


class TestClause:
    def test_unordered(self):
        a, b = Literal(1), Literal(2, False)
        assert Clause(a, b) == Clause(b, a)
        assert hash(Clause(a, b)) == hash(Clause(b, a))

    def test_distinct_variables_required(self):
        with pytest.raises(ValueError):
            Clause(Literal(1), Literal(1, False))


class TestTruthTable:
    def test_single_clause(self):
        f = Formula.from_signed_pairs(2, [(1, 2)])
        t = truth_table(f)
        assert t == table(2, (0, 1), (1, 0), (1, 1))
        assert t.satisfying_count == 3

    def test_empty_formula_is_true(self):
        assert truth_table(Formula.of(2)).bits == all_ones(2)

    def test_four_clauses_unsatisfiable(self):
        f = Formula.from_signed_pairs(2, [(1, 2), (-1, 2), (1, -2), (-1, -2)])
        assert truth_table(f).bits == 0

    def test_adding_clause_never_adds_assignments(self):
        # exhaustive at n=2
        for f in all_formulas(2):
            base = truth_table(f).bits
            for c in all_clauses(2):
                extended = truth_table(Formula.of(2, set(f.clauses) | {c})).bits
                assert extended & ~base == 0


class TestSpine:
    def test_singleton_fixes_everything(self):
        assert spine(table(2, (1, 1))) == {1: True, 2: True}

    def test_three_assignments_empty_spine(self):
        assert spine(table(2, (0, 1), (1, 0), (1, 1))) == {}

    def test_one_forced_variable(self):
        assert spine(table(2, (1, 0), (1, 1))) == {1: True}

    def test_unsatisfiable_rejected(self):
        with pytest.raises(ValueError, match="trivial function"):
            spine(TruthTable(2, 0))


class TestAssociatedPairs:
    def test_equal(self):
        assert associated_pairs(table(2, (0, 0), (1, 1))) == {(1, 2, +1)}

    def test_complementary(self):
        assert associated_pairs(table(2, (0, 1), (1, 0))) == {(1, 2, -1)}

    def test_none(self):
        assert associated_pairs(table(2, (0, 1), (1, 0), (1, 1))) == set()

    def test_unsatisfiable_rejected(self):
        with pytest.raises(ValueError):
            associated_pairs(TruthTable(2, 0))

    def test_singleton_has_spine_and_associations(self):
        # no mutual exclusion for one-assignment tables: the definitions
        # all hold literally
        t = table(2, (1, 0))
        assert spine(t) == {1: True, 2: False}
        assert associated_pairs(t) == {(1, 2, -1)}


class TestElementary:
    def test_examples(self):
        assert is_elementary(table(2, (0, 1), (1, 0), (1, 1)))
        assert not is_elementary(table(2, (0, 0), (1, 1)))
        assert is_elementary(TruthTable(1, 0b11))
        assert not is_elementary(TruthTable(2, 0))

    def _relabeled(self, t, perm, flips):
        bits = 0
        for a in range(1 << t.n):
            old = 0
            for i in range(t.n):
                if ((a >> i) & 1) ^ flips[i]:
                    old |= 1 << (perm[i] - 1)
            if (t.bits >> old) & 1:
                bits |= 1 << a
        return TruthTable(t.n, bits)

    def test_invariant_under_relabeling(self):
        n = 3
        tables = [truth_table(f) for f in all_formulas(n, min_clauses=1)]
        seen = {t.bits: t for t in tables}
        for t in list(seen.values())[:80]:
            want = is_elementary(t)
            for perm in itertools.permutations(range(1, n + 1)):
                for flips in itertools.product((0, 1), repeat=n):
                    assert is_elementary(self._relabeled(t, perm, flips)) == want


class TestMedianClosed:
    def test_examples(self):
        assert is_median_closed(table(2, (0, 1), (1, 0), (1, 1)))
        assert is_median_closed(table(2, (0, 0), (1, 0)))
        assert is_median_closed(TruthTable(2, 0))
        assert not is_median_closed(table(3, (0, 0, 1), (0, 1, 0), (1, 0, 0)))

    def test_every_formula_table_is_median_closed(self):
        for f in all_formulas(2):
            assert is_median_closed(truth_table(f))
        # spot-check n=3 over single- and double-clause formulas
        cs = all_clauses(3)
        for a, b in itertools.combinations(cs, 2):
            assert is_median_closed(truth_table(Formula.of(3, [a, b])))


class TestDefinable:
    def test_examples(self):
        assert is_2sat_definable(table(2, (0, 1), (1, 0), (1, 1)), allow_empty=False)
        assert not is_2sat_definable(TruthTable(2, all_ones(2)), allow_empty=False)
        assert is_2sat_definable(TruthTable(2, all_ones(2)), allow_empty=True)

    def test_small_n(self):
        assert is_2sat_definable(TruthTable(1, 0b11), allow_empty=True)
        assert not is_2sat_definable(TruthTable(1, 0b11), allow_empty=False)
        assert not is_2sat_definable(TruthTable(1, 0b01), allow_empty=True)

    @pytest.mark.parametrize("n", [2, 3])
    def test_matches_formula_sweep_exactly(self, n):
        swept = {truth_table(f).bits for f in all_formulas(n, min_clauses=1)}
        decided = {bits for bits in range(1 << (1 << n))
                   if is_2sat_definable(TruthTable(n, bits), allow_empty=False)}
        assert swept == decided


class TestRealize:
    def test_roundtrip_on_definable(self):
        for f in all_formulas(2, min_clauses=1):
            t = truth_table(f)
            assert truth_table(realize_formula(t)) == t

    def test_constant_true_realized_by_empty(self):
        f = realize_formula(TruthTable(2, all_ones(2)))
        assert not f.clauses

    def test_undefinable_rejected(self):
        bad = table(3, (0, 0, 1), (0, 1, 0), (1, 0, 0))
        with pytest.raises(ValueError):
            realize_formula(bad)


class TestFormulaText:
    def test_parse_format_roundtrip(self):
        text = "n 3\n# comment\n1 -2\n\n-1 3\n"
        f = parse_formula(text)
        assert f == Formula.from_signed_pairs(3, [(1, -2), (-1, 3)])
        assert parse_formula(format_formula(f)) == f

    def test_bad_header(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_formula("3\n1 2\n")

    def test_bad_clause_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_formula("n 2\n1 2 3\n")

    def test_variable_out_of_range(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_formula("n 2\n1 -3\n")

    def test_same_variable_clause(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_formula("n 2\n1 -1\n")
