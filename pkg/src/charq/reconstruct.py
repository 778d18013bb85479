"""Recover ``P(q) / prod (1 - q^d_j)`` from a finite integer series prefix.

Nothing here claims minimality or proves non-rationality: a fit is accepted
only when enough trailing coefficients vanish, and a failed search is a
bounded refutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InsufficientPrefix, NoFit
from .laurent import IntSeries, render_q_poly

DEFAULT_GUARD = 5
RECURRENCE_MARGIN = 4


def expand_rational(numerator: Sequence[int], degs: Iterable[int], order: int) -> list[int]:
    """Coefficients of ``numerator / prod (1 - q^d)`` through ``q^order``."""
    out = [0] * (order + 1)
    for i, c in enumerate(numerator[: order + 1]):
        out[i] = c
    for d in degs:
        for i in range(d, order + 1):
            out[i] += out[i - d]
    return out


@dataclass(frozen=True)
class FittedForm:
    numerator: tuple[int, ...]
    denom_degrees: tuple[int, ...]
    verified_to: int

    def series(self, order: int | None = None) -> IntSeries:
        if order is None:
            order = self.verified_to
        return IntSeries(tuple(expand_rational(self.numerator, self.denom_degrees, order)))

    def __str__(self):
        num = render_q_poly(self.numerator)
        if not self.denom_degrees:
            return num
        counts: dict[int, int] = {}
        for d in self.denom_degrees:
            counts[d] = counts.get(d, 0) + 1
        den = "*".join(
            (f"(1 - q^{d})" if d > 1 else "(1 - q)") + (f"^{m}" if m > 1 else "")
            for d, m in sorted(counts.items())
        )
        return f"({num}) / {den}"

    def to_json(self) -> dict:
        return {
            "fit": True,
            "numerator": list(self.numerator),
            "denominator_degrees": list(self.denom_degrees),
            "verified_to": self.verified_to,
        }


def _normalize_degs(degs: Iterable[int]) -> tuple[int, ...]:
    degs = tuple(sorted(int(d) for d in degs))
    if any(d < 1 for d in degs):
        raise ValueError(f"denominator degrees must be positive, got {degs}")
    return degs


def fit_numerator(c: IntSeries, degs: Iterable[int], guard: int = DEFAULT_GUARD) -> FittedForm:
    """Multiply ``c`` by ``prod (1 - q^d)`` and accept if the last ``guard`` coefficients vanish.

    Raises NoFit when they do not.
    """
    degs = _normalize_degs(degs)
    if guard < 0:
        raise ValueError("guard must be nonnegative")
    order = c.order
    if sum(degs) + guard > order:
        raise InsufficientPrefix(
            f"sum of degrees {sum(degs)} plus guard {guard} exceeds series order {order}"
        )
    p = list(c.coeffs)
    for d in degs:
        for i in range(order, d - 1, -1):
            p[i] -= p[i - d]
    tail = p[order - guard + 1 :]
    if any(tail):
        raise NoFit(f"denominator degrees {list(degs)} leave a nonzero tail", residual=tail)
    deg = max((i for i, x in enumerate(p) if x), default=0)
    form = FittedForm(tuple(p[: deg + 1]), degs, order)
    if form.series(order).coeffs != c.coeffs:
        raise AssertionError("fitted form does not re-expand to the input series")
    return form


def search_denominators(
    c: IntSeries,
    max_sum: int = 60,
    max_part: int = 30,
    guard: int = DEFAULT_GUARD,
) -> FittedForm | None:
    """First ``{d_j}`` (smallest sum, then lexicographic) giving a fit, or None.

    Multisets whose sum plus guard exceeds the series order are not tested.
    The walk visits multisets as ascending tuples in lexicographic order. A node
    with sum ``s`` keeps only the coefficients of ``c * prod (1 - q^d_j)`` that
    can still influence the checked tail once the remaining budget is spent.
    """
    if guard < 0:
        raise ValueError("guard must be nonnegative")
    order = c.order
    limit = min(max_sum, order - guard)
    if limit < 0:
        return None
    first = order - guard + 1 - limit
    best: tuple[int, ...] | None = None
    best_sum = limit + 1

    def walk(win, total, smallest, parts):
        nonlocal best, best_sum
        # win[k] is the coefficient at index first + total + k
        if not any(win[len(win) - guard :]):
            best, best_sum = parts, total
            return
        for p in range(smallest, max_part + 1):
            if total + p >= best_sum:
                break
            walk([win[k + p] - win[k] for k in range(len(win) - p)], total + p, p, parts + (p,))

    walk(list(c.coeffs[first:]), 0, 1, ())
    if best is None:
        return None
    return fit_numerator(c, best, guard)


def searched_bound(c: IntSeries, max_sum: int = 60, guard: int = DEFAULT_GUARD) -> int:
    return max(-1, min(max_sum, c.order - guard))


@dataclass(frozen=True)
class RecurrenceGuess:
    """Minimal linear recurrence found by Berlekamp-Massey.

    ``denom_poly`` is the connection polynomial ``1 + a_1 q + ... `` (constant
    term normalized to 1), i.e. the denominator of the generating function;
    ``order`` is the linear complexity L of the prefix.
    """

    found: bool
    denom_poly: tuple[Fraction, ...]
    order: int

    def numerator_for(self, c: IntSeries) -> list[Fraction]:
        """``(c * denom_poly) mod q^order``: the numerator matching this recurrence."""
        out = []
        for i in range(self.order):
            out.append(sum(self.denom_poly[j] * c[i - j] for j in range(min(i, len(self.denom_poly) - 1) + 1)))
        return out

    def expand(self, numerator: Sequence[Fraction], order: int) -> list[Fraction]:
        """Power series of ``numerator / denom_poly`` through ``q^order``."""
        out = []
        for i in range(order + 1):
            v = Fraction(numerator[i]) if i < len(numerator) else Fraction(0)
            for j in range(1, min(i, len(self.denom_poly) - 1) + 1):
                v -= self.denom_poly[j] * out[i - j]
            out.append(v)
        return out


def berlekamp_massey(seq: Sequence[int]) -> tuple[list[Fraction], int]:
    """Shortest recurrence over Q: returns (connection polynomial, linear complexity)."""
    conn = [Fraction(1)]
    prev = [Fraction(1)]
    length = 0
    shift = 1
    prev_disc = Fraction(1)
    for i, s in enumerate(seq):
        disc = Fraction(s)
        for j in range(1, length + 1):
            if j < len(conn):
                disc += conn[j] * seq[i - j]
        if disc == 0:
            shift += 1
            continue
        coef = disc / prev_disc
        new = conn + [Fraction(0)] * max(0, len(prev) + shift - len(conn))
        for j, b in enumerate(prev):
            new[j + shift] -= coef * b
        if 2 * length <= i:
            prev, prev_disc = conn, disc
            length = i + 1 - length
            shift = 1
        else:
            shift += 1
        conn = new
    while len(conn) > 1 and conn[-1] == 0:
        conn.pop()
    return conn, length


def find_recurrence(c: IntSeries, max_order: int) -> RecurrenceGuess:
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    if c.order < 2 * max_order + RECURRENCE_MARGIN:
        raise InsufficientPrefix(
            f"order {c.order} is below 2*{max_order} + {RECURRENCE_MARGIN}"
        )
    conn, length = berlekamp_massey(c.coeffs)
    if length > max_order:
        return RecurrenceGuess(False, (), length)
    return RecurrenceGuess(True, tuple(conn), length)
