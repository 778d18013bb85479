"""Exact multivariate Laurent polynomials and truncated q-power series.

A :class:`LaurentPoly` in ``t1..tn`` is a sparse map from exponent vectors in
``Z^n`` to nonzero Python ints. Terms are kept in lexicographic order of the
exponents so that two equal polynomials compare (and hash) equal.

:class:`CharacterSeries` is a truncated power series in ``q`` whose
coefficients are Laurent polynomials; :class:`IntSeries` is the same with
integer coefficients. Both truncate products at the smaller order.
"""

from __future__ import annotations

import os
from operator import add, sub
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .errors import FactorNotExpandable, NotDivisible, VariableCountMismatch

DEFAULT_ORDER = 40

Exponent = tuple[int, ...]


def default_order() -> int:
    """Truncation order used when a caller does not pass one (``CHARQ_ORDER`` overrides)."""
    value = os.environ.get("CHARQ_ORDER")
    if value is None or value.strip() == "":
        return DEFAULT_ORDER
    order = int(value)
    if order < 0:
        raise ValueError(f"CHARQ_ORDER must be nonnegative, got {order}")
    return order


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(add, a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(sub, a, b))


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients.

    >>> t1, t2 = LaurentPoly.gens(2)
    >>> (t1 - t2) * (t1 + t2)
    LaurentPoly(2, 't1^2 - t2^2')
    """

    __slots__ = ("num_vars", "_d", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[Sequence[int], int] | Iterable = ()):
        if num_vars < 1:
            raise ValueError("num_vars must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        d: dict[Exponent, int] = {}
        for alpha, coeff in items:
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != num_vars:
                raise VariableCountMismatch(
                    f"exponent {alpha} has length {len(alpha)}, expected {num_vars}"
                )
            d[alpha] = d.get(alpha, 0) + int(coeff)
        self.num_vars = num_vars
        self._d = {a: c for a, c in d.items() if c != 0}
        self._terms = None
        self._hash = None

    @classmethod
    def _raw(cls, num_vars: int, d: dict) -> LaurentPoly:
        # d is trusted: correct lengths, no zero coefficients, not shared
        obj = cls.__new__(cls)
        obj.num_vars = num_vars
        obj._d = d
        obj._terms = None
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, num_vars: int) -> LaurentPoly:
        return cls._raw(num_vars, {})

    @classmethod
    def one(cls, num_vars: int) -> LaurentPoly:
        return cls.constant(num_vars, 1)

    @classmethod
    def constant(cls, num_vars: int, c: int) -> LaurentPoly:
        return cls._raw(num_vars, {(0,) * num_vars: int(c)} if c else {})

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff: int = 1) -> LaurentPoly:
        alpha = tuple(int(a) for a in alpha)
        return cls._raw(len(alpha), {alpha: int(coeff)} if coeff else {})

    @classmethod
    def var(cls, i: int, num_vars: int) -> LaurentPoly:
        """The variable ``t_{i+1}`` (zero-based index)."""
        alpha = [0] * num_vars
        alpha[i] = 1
        return cls.monomial(alpha)

    @classmethod
    def gens(cls, num_vars: int) -> tuple[LaurentPoly, ...]:
        return tuple(cls.var(i, num_vars) for i in range(num_vars))

    # introspection

    @property
    def terms(self) -> tuple[tuple[Exponent, int], ...]:
        """(exponent, coefficient) pairs in increasing lexicographic order."""
        if self._terms is None:
            self._terms = tuple(sorted(self._d.items()))
        return self._terms

    def as_dict(self) -> dict[Exponent, int]:
        return dict(self._d)

    def coeff(self, alpha: Sequence[int]) -> int:
        return self._d.get(tuple(alpha), 0)

    def __len__(self):
        return len(self._d)

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self):
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def leading_exponent(self) -> Exponent:
        """Lex-greatest exponent."""
        if not self._d:
            raise ValueError("zero polynomial has no leading term")
        return max(self._d)

    def trailing_exponent(self) -> Exponent:
        if not self._d:
            raise ValueError("zero polynomial has no trailing term")
        return min(self._d)

    def total_degrees(self) -> set[int]:
        return {sum(a) for a in self._d}

    def homogeneous_part(self, degree: int) -> LaurentPoly:
        return LaurentPoly._raw(self.num_vars, {a: c for a, c in self._d.items() if sum(a) == degree})

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPoly.constant(self.num_vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, self.terms))
        return self._hash

    # arithmetic

    def _check(self, other: LaurentPoly):
        if self.num_vars != other.num_vars:
            raise VariableCountMismatch(
                f"cannot combine polynomials in {self.num_vars} and {other.num_vars} variables"
            )

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.num_vars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = dict(self._d)
        for a, c in other._d.items():
            v = d.get(a, 0) + c
            if v:
                d[a] = v
            else:
                d.pop(a, None)
        return LaurentPoly._raw(self.num_vars, d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.num_vars, {a: -c for a, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: int) -> LaurentPoly:
        if c == 0:
            return LaurentPoly.zero(self.num_vars)
        return LaurentPoly._raw(self.num_vars, {a: c * v for a, v in self._d.items()})

    def shift(self, alpha: Sequence[int], c: int = 1) -> LaurentPoly:
        """Multiply by the monomial ``c * t^alpha``."""
        if c == 0:
            return LaurentPoly.zero(self.num_vars)
        alpha = tuple(alpha)
        if len(alpha) != self.num_vars:
            raise VariableCountMismatch("monomial length does not match num_vars")
        if c == 1:
            d = {tuple(map(add, a, alpha)): v for a, v in self._d.items()}
        else:
            d = {tuple(map(add, a, alpha)): c * v for a, v in self._d.items()}
        return LaurentPoly._raw(self.num_vars, d)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        a_items, b_items = list(self._d.items()), list(other._d.items())
        if len(a_items) < len(b_items):
            a_items, b_items = b_items, a_items
        d: dict[Exponent, int] = {}
        for beta, cb in b_items:
            for alpha, ca in a_items:
                key = tuple(map(add, alpha, beta))
                d[key] = d.get(key, 0) + ca * cb
        return LaurentPoly._raw(self.num_vars, {a: c for a, c in d.items() if c})

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise ValueError("only integer powers are supported")
        if e < 0:
            # only +-t^alpha is a unit in the Laurent ring
            if len(self._d) != 1 or abs(next(iter(self._d.values()))) != 1:
                raise ValueError("negative powers need a unit monomial")
            ((alpha, c),) = self._d.items()
            return LaurentPoly.monomial(tuple(-a * -e for a in alpha), c ** (-e))
        result = LaurentPoly.one(self.num_vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient ``c`` with ``other * c == self``; raises NotDivisible otherwise.

        Leading terms are cancelled in lex order. Any quotient term must lie
        lex-above ``trailing(self) - trailing(other)``, which bounds the loop.
        """
        self._check(other)
        if not other._d:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._d:
            return LaurentPoly.zero(self.num_vars)
        b_lead = max(other._d)
        b_lc = other._d[b_lead]
        b_items = list(other._d.items())
        floor = _sub_exp(min(self._d), min(other._d))
        rem = dict(self._d)
        quot: dict[Exponent, int] = {}
        while rem:
            lead = max(rem)
            e = _sub_exp(lead, b_lead)
            if e < floor:
                raise NotDivisible(f"{self} is not divisible by {other}")
            c, r = divmod(rem[lead], b_lc)
            if r:
                raise NotDivisible(f"{self} is not divisible by {other} over the integers")
            quot[e] = c
            for beta, cb in b_items:
                key = _add_exp(e, beta)
                v = rem.get(key, 0) - c * cb
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return LaurentPoly._raw(self.num_vars, quot)

    def permute(self, perm: Sequence[int]) -> LaurentPoly:
        """Substitute ``t_i -> t_{perm[i]}`` (zero-based)."""
        n = self.num_vars
        d = {}
        for a, c in self._d.items():
            new = [0] * n
            for i, e in enumerate(a):
                new[perm[i]] = e
            d[tuple(new)] = c
        return LaurentPoly._raw(n, d)

    def is_symmetric(self) -> bool:
        """Invariance under all coordinate permutations, checked on adjacent transpositions."""
        for i in range(self.num_vars - 1):
            for a, c in self._d.items():
                swapped = a[:i] + (a[i + 1], a[i]) + a[i + 2 :]
                if self._d.get(swapped, 0) != c:
                    return False
        return True

    def eval_ones(self) -> int:
        return sum(self._d.values())

    def substitute_scalar(self, values: Sequence[int]) -> int:
        """Evaluate at nonzero integer points where all needed powers are integral."""
        total = 0
        for a, c in self._d.items():
            term = c
            for v, e in zip(values, a):
                if e < 0:
                    if v not in (1, -1):
                        raise ValueError("negative exponent at a non-unit point")
                    e = -e
                term *= v**e
            total += term
        return total

    # rendering / serialization

    def __str__(self):
        if not self._d:
            return "0"
        parts = []
        for a, c in sorted(self._d.items(), reverse=True):
            mono = "*".join(
                f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}" for i, e in enumerate(a) if e != 0
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self.num_vars}, {str(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"coeff": str(c), "alpha": list(a)} for a, c in self.terms]

    @classmethod
    def from_json(cls, data, num_vars: int | None = None) -> LaurentPoly:
        if not isinstance(data, list):
            raise ValueError("a Laurent polynomial must be a JSON array of terms")
        terms = []
        for rec in data:
            alpha = rec["alpha"]
            terms.append((alpha, int(rec["coeff"])))
        if num_vars is None:
            if not terms:
                raise ValueError("cannot infer num_vars from an empty polynomial")
            num_vars = len(terms[0][0])
        return cls(num_vars, terms)


def symmetrize_orbit(alpha: Sequence[int]) -> LaurentPoly:
    """Monomial symmetric function: sum of t^beta over distinct permutations beta of alpha."""
    return LaurentPoly(len(alpha), {p: 1 for p in set(permutations(alpha))})


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a.exact_div(b)


def lp_is_symmetric(a: LaurentPoly) -> bool:
    return a.is_symmetric()


def lp_eval_ones(a: LaurentPoly) -> int:
    return a.eval_ones()


@dataclass(frozen=True)
class CharacterSeries:
    """Truncated power series in q with LaurentPoly coefficients.

    ``coeffs[d]`` is the coefficient of ``q^d``; ``order == len(coeffs) - 1``.
    """

    num_vars: int
    coeffs: tuple[LaurentPoly, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the q^0 coefficient")
        for c in coeffs:
            if c.num_vars != self.num_vars:
                raise VariableCountMismatch("all coefficients must share num_vars")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, num_vars: int, order: int) -> CharacterSeries:
        z = LaurentPoly.zero(num_vars)
        return cls(num_vars, (z,) * (order + 1))

    @classmethod
    def one(cls, num_vars: int, order: int) -> CharacterSeries:
        z = LaurentPoly.zero(num_vars)
        return cls(num_vars, (LaurentPoly.one(num_vars),) + (z,) * order)

    def __getitem__(self, d: int) -> LaurentPoly:
        return self.coeffs[d]

    def truncate(self, order: int) -> CharacterSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return CharacterSeries(self.num_vars, self.coeffs[: order + 1])

    def _check(self, other):
        if not isinstance(other, CharacterSeries):
            raise TypeError("expected a CharacterSeries")
        if other.num_vars != self.num_vars:
            raise VariableCountMismatch(
                f"series in {self.num_vars} and {other.num_vars} variables"
            )

    def __add__(self, other):
        self._check(other)
        order = min(self.order, other.order)
        return CharacterSeries(
            self.num_vars, tuple(self.coeffs[i] + other.coeffs[i] for i in range(order + 1))
        )

    def __sub__(self, other):
        self._check(other)
        order = min(self.order, other.order)
        return CharacterSeries(
            self.num_vars, tuple(self.coeffs[i] - other.coeffs[i] for i in range(order + 1))
        )

    def __neg__(self):
        return CharacterSeries(self.num_vars, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CharacterSeries(self.num_vars, tuple(c * other for c in self.coeffs))
        self._check(other)
        order = min(self.order, other.order)
        out = []
        for d in range(order + 1):
            acc = LaurentPoly.zero(self.num_vars)
            for i in range(d + 1):
                a, b = self.coeffs[i], other.coeffs[d - i]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return CharacterSeries(self.num_vars, tuple(out))

    def map(self, fn) -> list:
        return [fn(c) for c in self.coeffs]

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict, num_vars: int | None = None) -> CharacterSeries:
        raw = data["coeffs"]
        if num_vars is None:
            num_vars = data.get("vars")
        if num_vars is None:
            for rec in raw:
                if rec:
                    num_vars = len(rec[0]["alpha"])
                    break
            else:
                raise ValueError("cannot infer num_vars from an all-zero series; add \"vars\"")
        coeffs = tuple(LaurentPoly.from_json(c, num_vars) for c in raw)
        series = cls(num_vars, coeffs)
        if "order" in data and int(data["order"]) != series.order:
            raise ValueError(f"order {data['order']} disagrees with {len(coeffs)} coefficients")
        return series


@dataclass(frozen=True)
class IntSeries:
    """Truncated power series in q with integer coefficients."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the q^0 coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d):
        return self.coeffs[d]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> IntSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return IntSeries(self.coeffs[: order + 1])

    def __add__(self, other: IntSeries) -> IntSeries:
        order = min(self.order, other.order)
        return IntSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(order + 1)))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntSeries(tuple(c * other for c in self.coeffs))
        order = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return IntSeries(
            tuple(sum(a[i] * b[d - i] for i in range(d + 1)) for d in range(order + 1))
        )

    def __str__(self):
        return render_q_poly(self.coeffs, truncated_at=self.order)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data) -> IntSeries:
        if isinstance(data, list):
            return cls(tuple(int(c) for c in data))
        series = cls(tuple(int(c) for c in data["coeffs"]))
        if "order" in data and int(data["order"]) != series.order:
            raise ValueError(f"order {data['order']} disagrees with {len(series)} coefficients")
        return series


def render_q_poly(coeffs: Sequence[int], truncated_at: int | None = None) -> str:
    parts = []
    for d, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if d == 0 else ("q" if d == 1 else f"q^{d}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        out = "0"
    else:
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
    if truncated_at is not None:
        out += f" + O(q^{truncated_at + 1})"
    return out


def qs_mul(a: CharacterSeries, b: CharacterSeries) -> CharacterSeries:
    return a * b


def qs_add(a: CharacterSeries, b: CharacterSeries) -> CharacterSeries:
    return a + b


def qs_geom(alpha: Sequence[int], k: int, order: int) -> CharacterSeries:
    """Expansion of ``1 / (1 - t^alpha q^k)`` up to ``q^order``."""
    alpha = tuple(alpha)
    if k < 1:
        raise FactorNotExpandable(
            f"factor (1 - t^{alpha} q^{k}) has infinitely many terms in each q-degree"
        )
    n = len(alpha)
    coeffs = []
    for d in range(order + 1):
        if d % k == 0:
            j = d // k
            coeffs.append(LaurentPoly.monomial(tuple(j * a for a in alpha)))
        else:
            coeffs.append(LaurentPoly.zero(n))
    return CharacterSeries(n, tuple(coeffs))


def divide_by_factor(series: CharacterSeries, alpha: Sequence[int], k: int) -> CharacterSeries:
    """``series / (1 - t^alpha q^k)`` via ``b_d = a_d + t^alpha * b_{d-k}``; needs k >= 1."""
    if k < 1:
        raise FactorNotExpandable(f"factor (1 - t^{tuple(alpha)} q^{k}) cannot be expanded in q")
    out = list(series.coeffs)
    for d in range(k, len(out)):
        prev = out[d - k]
        if prev:
            out[d] = out[d] + prev.shift(alpha)
    return CharacterSeries(series.num_vars, tuple(out))
