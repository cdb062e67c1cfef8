import io
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rnacompat.series import (
    BivariateSeries,
    arc_cdf,
    binom,
    catalan_form_series,
    closed_form_count,
    count_table,
    functional_residual,
    narayana,
    r1_count,
    support_bound,
    table_to_json,
    waterman_count,
    write_table_csv,
)
from rnacompat.structure import STANDARD_CLASSES, StructureClass, enumerate_counts, iter_structures

from conftest import cached_table


class TestExamples:
    def test_empty_length(self):
        for c in STANDARD_CLASSES:
            assert cached_table(c.lam, c.r, 12).count(0, 0) == 1

    def test_single_arcs_lambda2(self):
        assert cached_table(2, 1, 12).count(5, 1) == 6

    def test_lambda4_r3_n8_only_empty(self):
        t = cached_table(4, 3, 12)
        assert t.row(8) == {0: 1}

    def test_out_of_support_is_zero(self):
        t = cached_table(1, 1, 12)
        assert t.count(4, 3) == 0
        assert t.count(4, -1) == 0

    def test_index_error(self):
        with pytest.raises(IndexError):
            cached_table(1, 1, 12).count(13, 0)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            count_table(StructureClass(1, 1), -1)
        with pytest.raises(ValueError):
            count_table(StructureClass(1, 1), 4, method="magic")


@pytest.mark.parametrize("c", STANDARD_CLASSES, ids=str)
def test_both_solvers_match_enumeration(c):
    fp = count_table(c, 12, method="fixed-point")
    rec = count_table(c, 12, method="recurrence")
    for n in range(13):
        brute = enumerate_counts(c, n)
        assert fp.row(n) == brute
        assert rec.row(n) == brute


@pytest.mark.parametrize("c", STANDARD_CLASSES, ids=str)
def test_reducible_counts_match_enumeration(c):
    t = cached_table(c.lam, c.r, 10)
    for n in range(1, 11):
        brute: dict[int, int] = {}
        for s in iter_structures(c, n):
            if (1, n) not in s.arcs:
                brute[s.num_arcs] = brute.get(s.num_arcs, 0) + 1
        assert {l: v for l, v in enumerate(t.t[n]) if v} == brute


def test_solvers_agree_at_200():
    c = StructureClass(4, 3)
    assert count_table(c, 200, "fixed-point").s == count_table(c, 200, "recurrence").s


def test_support_bound_tight():
    for c in STANDARD_CLASSES:
        t = cached_table(c.lam, c.r, 60)
        for n in range(61):
            top = max(t.row(n))
            assert top <= support_bound(c.lam, n)
    # lambda = 1, r = 1 reaches the bound at every n
    t = cached_table(1, 1, 60)
    assert all(max(t.row(n)) == support_bound(1, n) for n in range(61))


class TestClosedForms:
    def test_narayana_row(self):
        assert [narayana(4, k) for k in range(1, 5)] == [1, 6, 6, 1]

    def test_narayana_sums_to_catalan(self):
        for l in range(1, 12):
            assert sum(narayana(l, k) for k in range(1, l + 1)) == binom(2 * l, l) // (l + 1)

    @pytest.mark.parametrize("lam", [1, 2, 3, 4])
    def test_r1_counts(self, lam):
        t = cached_table(lam, 1, 60)
        for n in range(61):
            for l in range(support_bound(lam, n) + 3):
                assert t.count(n, l) == r1_count(lam, n, l)

    def test_waterman(self):
        t = cached_table(2, 1, 60)
        for n in range(61):
            for l in range(1, n):
                assert t.count(n, l) == waterman_count(n, l)

    def test_dispatch(self):
        assert closed_form_count("narayana", l=3, k=2) == 3
        assert closed_form_count("r1-general", lam=2, n=5, l=1) == 6
        assert closed_form_count("waterman-lambda2", n=5, l=1) == 6
        with pytest.raises(ValueError):
            closed_form_count("fibonacci", n=3)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            narayana(0, 1)
        with pytest.raises(ValueError):
            waterman_count(5, 0)


@pytest.mark.parametrize("c", STANDARD_CLASSES, ids=str)
def test_residual_vanishes(c):
    assert functional_residual(cached_table(c.lam, c.r, 60)).is_zero()


def test_residual_detects_corruption():
    t = cached_table(2, 2, 20)
    s = [list(row) for row in t.s]
    s[10][2] += 1
    bad = type(t)(t.cls, t.n_max, tuple(map(tuple, s)), t.t, t.method)
    assert not functional_residual(bad).is_zero()


@pytest.mark.parametrize("c", [StructureClass(1, 1), StructureClass(2, 1), StructureClass(3, 2), StructureClass(4, 3)], ids=str)
def test_catalan_form(c):
    t = cached_table(c.lam, c.r, 30)
    assert catalan_form_series(c, 30) == t.s_series()


class TestArcCdf:
    def test_examples(self):
        t = cached_table(1, 1, 12)
        assert arc_cdf(t, 2, 0) == Fraction(1, 2)
        t2 = cached_table(2, 1, 12)
        assert arc_cdf(t2, 3, 0) == Fraction(1, 2)
        assert arc_cdf(t2, 3, 1) == 1

    def test_bounds(self):
        t = cached_table(3, 2, 40)
        for n in range(41):
            assert arc_cdf(t, n, -1) == 0
            assert arc_cdf(t, n, n) == 1
            vals = [arc_cdf(t, n, l) for l in range(n // 2 + 1)]
            assert vals == sorted(vals)

    def test_mean_and_variance(self):
        t = cached_table(1, 1, 12)
        # n = 3 structures: ..., (.), with one arc ((1,2),(2,3),(1,3) for lambda 1)
        assert t.arc_mean(3) == Fraction(3, 4)
        assert t.arc_variance(3) == Fraction(3, 16)


class TestExport:
    def test_csv(self):
        buf = io.StringIO()
        write_table_csv(cached_table(2, 1, 12), buf, n=5)
        assert buf.getvalue() == "n,l,count\n5,0,1\n5,1,6\n5,2,1\n"

    def test_json(self):
        rows = json.loads(table_to_json(cached_table(2, 1, 12), n=5))
        assert rows[1] == {"n": 5, "l": 1, "count": 6}

    def test_full_csv_row_count(self):
        t = cached_table(3, 1, 12)
        buf = io.StringIO()
        write_table_csv(t, buf)
        assert len(buf.getvalue().splitlines()) == 1 + sum(support_bound(3, n) + 1 for n in range(13))


def small_series(order):
    rows = st.tuples(*[st.lists(st.integers(-5, 5), min_size=n // 2 + 1, max_size=n // 2 + 1) for n in range(order + 1)])
    return rows.map(lambda rs: BivariateSeries.from_rows(rs))


class TestBivariateSeries:
    @given(small_series(8), small_series(8), small_series(8))
    def test_ring_laws(self, a, b, c):
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()

    @given(small_series(8))
    def test_inverse(self, a):
        rows = [list(r) for r in a.rows]
        rows[0][0] = 1
        a = BivariateSeries.from_rows(rows)
        one = BivariateSeries.from_poly({(0, 0): 1}, 8)
        assert a * a.inverse() == one

    @given(small_series(8))
    def test_sqrt_of_square(self, a):
        rows = [list(r) for r in a.rows]
        rows[0][0] = 1
        a = BivariateSeries.from_rows(rows)
        assert (a * a).sqrt() == a

    def test_monomial_division(self):
        p = BivariateSeries.from_poly({(2, 1): 3, (4, 1): 1}, 6)
        assert p.divide_monomial(2, 1) == BivariateSeries.from_poly({(0, 0): 3, (2, 0): 1}, 4)

    def test_bad_row_length(self):
        with pytest.raises(ValueError):
            BivariateSeries([[1], [1, 2]])
