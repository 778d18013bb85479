from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charq.errors import InsufficientPrefix, NoFit
from charq.invariants import DiagonalTorus, hilbert_invariants
from charq.laurent import IntSeries
from charq.nice_rational import NiceRational, nr_series, nr_substitute_tq
from charq.reconstruct import (
    berlekamp_massey,
    expand_rational,
    find_recurrence,
    fit_numerator,
    search_denominators,
)
from charq.worked import fhl_series, nagata_series


def fhl_invariants(order):
    ch = nr_series(nr_substitute_tq(fhl_series()), order)
    return hilbert_invariants(DiagonalTorus(2, ((1, -1),)), ch)


def catalan_interleaved(order):
    return IntSeries(
        tuple(comb(d, d // 2) // (d // 2 + 1) if d % 2 == 0 else 0 for d in range(order + 1))
    )


def multisets(total, max_part, smallest=1):
    """Ascending tuples with the given sum, in lexicographic order."""
    if total == 0:
        yield ()
        return
    for p in range(smallest, min(max_part, total) + 1):
        for rest in multisets(total - p, max_part, p):
            yield (p,) + rest


def brute_force_search(c, max_sum, max_part, guard):
    for total in range(0, min(max_sum, c.order - guard) + 1):
        for degs in multisets(total, max_part):
            try:
                return fit_numerator(c, degs, guard)
            except NoFit:
                pass
    return None


class TestFitNumerator:
    def test_nagata(self):
        form = fit_numerator(nagata_series(120), (18, 18, 18, 18))
        assert {i: c for i, c in enumerate(form.numerator) if c} == {0: 1, 9: 4, 18: 7, 27: 10, 36: 10, 45: 4}

    def test_fhl_invariants(self):
        form = fit_numerator(fhl_invariants(30), (2, 2, 2, 2))
        assert form.numerator == (1, 0, -2, 0, 4, 0, -1)
        assert str(form) == "(1 - 2*q^2 + 4*q^4 - q^6) / (1 - q^2)^4"

    def test_constant(self):
        form = fit_numerator(IntSeries((5,) + (0,) * 10), ())
        assert form.numerator == (5,)
        assert form.denom_degrees == ()

    def test_no_fit(self):
        with pytest.raises(NoFit) as info:
            fit_numerator(catalan_interleaved(30), (2, 2))
        assert any(info.value.residual)

    def test_prefix_too_short(self):
        with pytest.raises(InsufficientPrefix):
            fit_numerator(nagata_series(70), (18, 18, 18, 18))

    def test_bad_degrees(self):
        with pytest.raises(ValueError):
            fit_numerator(IntSeries((1, 1, 1, 1, 1, 1, 1, 1)), (0,))

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=12), st.integers(5, 12))
    def test_empty_denominator_iff_polynomial(self, coeffs, guard):
        c = IntSeries(tuple(coeffs) + (0,) * 8)
        deg = max((i for i, x in enumerate(c.coeffs) if x), default=0)
        if guard > c.order:
            return
        if deg <= c.order - guard:
            assert fit_numerator(c, (), guard).series().coeffs == c.coeffs
        else:
            with pytest.raises(NoFit):
                fit_numerator(c, (), guard)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.integers(-6, 6), min_size=1, max_size=8).filter(lambda xs: xs[-1] != 0),
        st.lists(st.integers(1, 6), max_size=4),
    )
    def test_recovers_univariate_numerator(self, num, degs):
        # a one-variable nice rational with t^0 factors is a pure q-series
        f = NiceRational(1, tuple((c, (0,), i) for i, c in enumerate(num)), tuple(((0,), d, 1) for d in degs))
        order = len(num) + sum(degs) + 10
        c = IntSeries(tuple(x.coeff((0,)) for x in nr_series(f, order).coeffs))
        form = fit_numerator(c, degs)
        assert list(form.numerator) == num
        assert form.series(order) == c


class TestSearch:
    def test_fhl(self):
        form = search_denominators(fhl_invariants(30))
        assert form is not None
        assert form.denom_degrees == (2, 2, 2, 2)
        assert form.series(30) == fhl_invariants(30)

    def test_prefers_smallest_sum(self):
        c = IntSeries(tuple(expand_rational([1, 0, 0, 5], [3, 5], 40)))
        assert search_denominators(c).denom_degrees == (3, 5)

    def test_catalan_refuted(self):
        assert search_denominators(catalan_interleaved(24)) is None

    def test_short_prefix(self):
        assert search_denominators(IntSeries((1, 2, 3))) is None

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.integers(-3, 3), min_size=1, max_size=5),
        st.lists(st.integers(1, 5), max_size=3),
    )
    def test_matches_brute_force_on_rational_series(self, num, degs):
        c = IntSeries(tuple(expand_rational(num, degs, 22)))
        got = search_denominators(c, max_sum=12, max_part=8)
        want = brute_force_search(c, 12, 8, 5)
        assert (got is None) == (want is None)
        if got is not None:
            assert got == want

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-3, 3), min_size=21, max_size=21), st.integers(0, 6))
    def test_matches_brute_force_on_noise(self, coeffs, guard):
        c = IntSeries(tuple(coeffs))
        assert search_denominators(c, 10, 6, guard) == brute_force_search(c, 10, 6, guard)


class TestRecurrence:
    def test_berlekamp_massey_fibonacci(self):
        fib = [0, 1]
        for _ in range(20):
            fib.append(fib[-1] + fib[-2])
        conn, length = berlekamp_massey(fib)
        assert length == 2
        assert conn == [1, -1, -1]

    def test_ones(self):
        guess = find_recurrence(IntSeries((1,) * 20), 3)
        assert guess.found
        assert guess.denom_poly == (Fraction(1), Fraction(-1))

    def test_catalan_not_found(self):
        guess = find_recurrence(catalan_interleaved(39), 12)
        assert not guess.found
        assert guess.order > 12

    def test_fhl_found(self):
        c = fhl_invariants(39)
        guess = find_recurrence(c, 10)
        assert guess.found
        # the connection polynomial divides (1 - q^2)^4
        quartic = [1, 0, -4, 0, 6, 0, -4, 0, 1]
        quotient = _poly_div(quartic, list(guess.denom_poly))
        assert quotient is not None
        num = guess.numerator_for(c)
        assert guess.expand(num, c.order) == list(c.coeffs)

    def test_prefix_too_short(self):
        with pytest.raises(InsufficientPrefix):
            find_recurrence(IntSeries((1,) * 20), 10)

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.integers(-4, 4), min_size=1, max_size=4),
        st.lists(st.integers(1, 3), min_size=1, max_size=3),
    )
    def test_found_reproduces_prefix(self, num, degs):
        c = IntSeries(tuple(expand_rational(num, degs, 40)))
        guess = find_recurrence(c, 12)
        assert guess.found
        assert guess.expand(guess.numerator_for(c), 40) == list(c.coeffs)


def _poly_div(a, b):
    """Exact quotient a / b of coefficient lists over Q, or None."""
    a = [Fraction(x) for x in a]
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        out[i] = a[i + len(b) - 1] / b[-1]
        for j, bj in enumerate(b):
            a[i + j] -= out[i] * bj
    return out if not any(a) else None
