"""Nice rational functions ``P(t, q) / prod (1 - t^alpha q^k)``.

The denominator is kept as an explicit multiset of ``(alpha, k)`` factors and
is never multiplied out. Series expansion in q needs every ``k >= 1``;
``k = 0`` factors are legal (e.g. a multigraded Hilbert series before the
substitution ``t_i -> t_i q``) but cannot be expanded degree by degree.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from operator import add
from typing import Iterable, Sequence

from .errors import FactorNotExpandable, NegativeQPower, NonSymmetric, VariableCountMismatch
from .laurent import CharacterSeries, LaurentPoly, divide_by_factor
from .schur import GenPartition, check_partition, schur_expand, schur_poly

Exponent = tuple[int, ...]
NumeratorTerm = tuple[int, Exponent, int]  # (coeff, alpha, qpow)
Factor = tuple[Exponent, int, int]  # (alpha, k, mult)


def _merge_numerator(terms: Iterable, n: int) -> tuple[NumeratorTerm, ...]:
    acc: dict[tuple[Exponent, int], int] = {}
    for c, alpha, r in terms:
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != n:
            raise VariableCountMismatch(f"numerator exponent {alpha} is not of length {n}")
        r = int(r)
        if r < 0:
            raise NegativeQPower(f"numerator term has negative q-power {r}")
        acc[alpha, r] = acc.get((alpha, r), 0) + int(c)
    return tuple(
        (c, alpha, r) for (alpha, r), c in sorted(acc.items(), key=lambda kv: (kv[0][1], kv[0][0])) if c
    )


def _merge_denominator(factors: Iterable, n: int) -> tuple[Factor, ...]:
    acc: dict[tuple[Exponent, int], int] = {}
    for alpha, k, mult in factors:
        alpha = tuple(int(a) for a in alpha)
        k, mult = int(k), int(mult)
        if len(alpha) != n:
            raise VariableCountMismatch(f"denominator exponent {alpha} is not of length {n}")
        if k < 0:
            raise NegativeQPower(f"denominator factor has negative q-power {k}")
        if mult < 0:
            raise ValueError("factor multiplicities must be positive")
        if mult == 0:
            continue
        if k == 0 and not any(alpha):
            raise ValueError("the factor (1 - 1) is zero")
        acc[alpha, k] = acc.get((alpha, k), 0) + mult
    return tuple((alpha, k, m) for (alpha, k), m in sorted(acc.items()))


def _times_factor(num: dict, alpha: Exponent, k: int, power: int = 1) -> dict:
    """Multiply a numerator dict {(alpha, r): c} by ``(1 - t^alpha q^k)^power``."""
    for _ in range(power):
        out = dict(num)
        for (beta, r), c in num.items():
            key = (tuple(map(add, beta, alpha)), r + k)
            v = out.get(key, 0) - c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        num = out
    return num


def _mul_numerators(a: dict, b: dict) -> dict:
    out: dict = {}
    for (alpha, r), c in a.items():
        for (beta, s), d in b.items():
            key = (tuple(map(add, alpha, beta)), r + s)
            out[key] = out.get(key, 0) + c * d
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class NiceRational:
    """``sum c * t^alpha * q^r`` over ``prod (1 - t^alpha q^k)^mult``."""

    num_vars: int
    numerator: tuple[NumeratorTerm, ...]
    denominator: tuple[Factor, ...] = ()

    def __post_init__(self):
        n = int(self.num_vars)
        if n < 1:
            raise ValueError("num_vars must be positive")
        object.__setattr__(self, "num_vars", n)
        object.__setattr__(self, "numerator", _merge_numerator(self.numerator, n))
        object.__setattr__(self, "denominator", _merge_denominator(self.denominator, n))

    @classmethod
    def one(cls, num_vars: int) -> NiceRational:
        return cls(num_vars, ((1, (0,) * num_vars, 0),))

    @classmethod
    def from_poly(cls, p: LaurentPoly, qpow: int = 0, denominator=()) -> NiceRational:
        return cls(p.num_vars, tuple((c, a, qpow) for a, c in p.terms), tuple(denominator))

    @classmethod
    def geometric(cls, alpha: Sequence[int], k: int, mult: int = 1) -> NiceRational:
        """``1 / (1 - t^alpha q^k)^mult``."""
        n = len(alpha)
        return cls(n, ((1, (0,) * n, 0),), ((tuple(alpha), k, mult),))

    def _num_dict(self) -> dict:
        return {(alpha, r): c for c, alpha, r in self.numerator}

    def _den_dict(self) -> dict:
        return {(alpha, k): m for alpha, k, m in self.denominator}

    def numerator_by_q(self) -> dict[int, LaurentPoly]:
        """Numerator grouped by q-degree: ``{r: P_r(t)}``."""
        grouped: dict[int, list] = defaultdict(list)
        for c, alpha, r in self.numerator:
            grouped[r].append((alpha, c))
        return {r: LaurentPoly(self.num_vars, terms) for r, terms in sorted(grouped.items())}

    def is_expandable(self) -> bool:
        return all(k >= 1 for _, k, _ in self.denominator)

    def _check(self, other):
        if not isinstance(other, NiceRational):
            raise TypeError("expected a NiceRational")
        if other.num_vars != self.num_vars:
            raise VariableCountMismatch(
                f"nice rationals in {self.num_vars} and {other.num_vars} variables"
            )

    def __mul__(self, other):
        if isinstance(other, int):
            return NiceRational(
                self.num_vars, tuple((c * other, a, r) for c, a, r in self.numerator), self.denominator
            )
        self._check(other)
        num = _mul_numerators(self._num_dict(), other._num_dict())
        return NiceRational(
            self.num_vars,
            tuple((c, a, r) for (a, r), c in num.items()),
            self.denominator + other.denominator,
        )

    __rmul__ = __mul__

    def __add__(self, other):
        self._check(other)
        da, db = self._den_dict(), other._den_dict()
        common = {key: max(da.get(key, 0), db.get(key, 0)) for key in set(da) | set(db)}
        na, nb = self._num_dict(), other._num_dict()
        for (alpha, k), m in common.items():
            na = _times_factor(na, alpha, k, m - da.get((alpha, k), 0))
            nb = _times_factor(nb, alpha, k, m - db.get((alpha, k), 0))
        for key, c in nb.items():
            na[key] = na.get(key, 0) + c
        return NiceRational(
            self.num_vars,
            tuple((c, a, r) for (a, r), c in na.items()),
            tuple((alpha, k, m) for (alpha, k), m in common.items()),
        )

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def series(self, order: int) -> CharacterSeries:
        return nr_series(self, order)

    def __str__(self):
        num = " + ".join(
            f"{c}*t^{list(a)}*q^{r}" for c, a, r in self.numerator
        ).replace("+ -", "- ") or "0"
        den = " * ".join(
            f"(1 - t^{list(a)}*q^{k})" + (f"^{m}" if m > 1 else "") for a, k, m in self.denominator
        )
        return f"({num}) / ({den})" if den else f"({num})"

    def to_json(self) -> dict:
        return {
            "vars": self.num_vars,
            "numerator": [{"coeff": c, "alpha": list(a), "qpow": r} for c, a, r in self.numerator],
            "denominator": [{"alpha": list(a), "qpow": k, "mult": m} for a, k, m in self.denominator],
        }

    @classmethod
    def from_json(cls, data: dict) -> NiceRational:
        n = int(data["vars"])
        numerator = [
            (int(rec["coeff"]), rec["alpha"], int(rec.get("qpow", 0))) for rec in data["numerator"]
        ]
        denominator = [
            (rec["alpha"], int(rec.get("qpow", 0)), int(rec.get("mult", 1)))
            for rec in data.get("denominator", [])
        ]
        return cls(n, tuple(numerator), tuple(denominator))


def nr_series(f: NiceRational, order: int) -> CharacterSeries:
    """Expand ``f`` as a power series in q through ``q^order``."""
    for alpha, k, _ in f.denominator:
        if k < 1:
            raise FactorNotExpandable(
                f"factor (1 - t^{list(alpha)} q^{k}) has k = 0; substitute t_i -> t_i q first"
            )
    n = f.num_vars
    coeffs = [LaurentPoly.zero(n) for _ in range(order + 1)]
    for r, p in f.numerator_by_q().items():
        if r <= order:
            coeffs[r] = p
    series = CharacterSeries(n, tuple(coeffs))
    for alpha, k, m in f.denominator:
        for _ in range(m):
            series = divide_by_factor(series, alpha, k)
    return series


def nr_substitute_tq(f: NiceRational) -> NiceRational:
    """Apply ``t_i -> t_i q``: every q-power grows by the total degree of its t-monomial."""
    numerator = []
    for c, alpha, r in f.numerator:
        new_r = r + sum(alpha)
        if new_r < 0:
            raise NegativeQPower(f"numerator term t^{list(alpha)} q^{r} becomes q^{new_r}")
        numerator.append((c, alpha, new_r))
    denominator = []
    for alpha, k, m in f.denominator:
        new_k = k + sum(alpha)
        if new_k < 0:
            raise NegativeQPower(f"factor (1 - t^{list(alpha)} q^{k}) becomes q^{new_k}")
        denominator.append((alpha, new_k, m))
    return NiceRational(f.num_vars, tuple(numerator), tuple(denominator))


def nr_add(a: NiceRational, b: NiceRational) -> NiceRational:
    return a + b


def nr_mul(a: NiceRational, b: NiceRational) -> NiceRational:
    return a * b


@dataclass(frozen=True)
class Decomposition:
    """``f = sum m * s_mu * q^r / prod_{(lam, k) in A} e^lam_k``.

    ``a_multiset`` lists each ``(lam, k)`` once per multiplicity unit;
    ``terms`` holds ``(m, mu, r)``.
    """

    num_vars: int
    a_multiset: tuple[tuple[GenPartition, int], ...]
    terms: tuple[tuple[int, GenPartition, int], ...]

    def __post_init__(self):
        a = []
        for lam, k in self.a_multiset:
            lam = check_partition(lam, self.num_vars)
            if int(k) < 1:
                raise ValueError("every (lam, k) in A needs k >= 1")
            a.append((lam, int(k)))
        merged: dict[tuple[GenPartition, int], int] = {}
        for m, mu, r in self.terms:
            key = (check_partition(mu, self.num_vars), int(r))
            merged[key] = merged.get(key, 0) + int(m)
        terms = sorted(
            ((m, mu, r) for (mu, r), m in merged.items() if m),
            key=lambda t: (t[2], tuple(-x for x in t[1])),
        )
        object.__setattr__(self, "a_multiset", tuple(sorted(a)))
        object.__setattr__(self, "terms", tuple(terms))

    def denominator(self) -> tuple[Factor, ...]:
        factors = []
        for lam, k in self.a_multiset:
            factors.extend((alpha, k, mult) for alpha, mult in schur_poly(lam).terms)
        return _merge_denominator(factors, self.num_vars)

    def numerator(self) -> tuple[NumeratorTerm, ...]:
        out = []
        for m, mu, r in self.terms:
            out.extend((m * c, alpha, r) for alpha, c in schur_poly(mu).terms)
        return _merge_numerator(out, self.num_vars)

    def to_nice_rational(self) -> NiceRational:
        return NiceRational(self.num_vars, self.numerator(), self.denominator())

    def series(self, order: int) -> CharacterSeries:
        """Re-expand the decomposition as a q-series (independently of the source f)."""
        return nr_series(self.to_nice_rational(), order)

    def to_json(self) -> dict:
        return {
            "vars": self.num_vars,
            "A": [{"lam": list(lam), "k": k} for lam, k in self.a_multiset],
            "terms": [{"coeff": m, "mu": list(mu), "r": r} for m, mu, r in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> Decomposition:
        return cls(
            int(data["vars"]),
            tuple((tuple(rec["lam"]), int(rec["k"])) for rec in data["A"]),
            tuple((int(rec["coeff"]), tuple(rec["mu"]), int(rec["r"])) for rec in data["terms"]),
        )


def nr_decompose(f: NiceRational) -> Decomposition:
    """Rewrite a symmetric ``f`` over a product of ``e^lam_k`` blocks with a Schur-expanded numerator.

    Factors are grouped by ``(sorted(alpha), k)``. A group whose largest
    multiplicity is p is completed to ``(e^lam_k)^p``; the numerator absorbs
    the complementary factors.
    """
    n = f.num_vars
    groups: dict[tuple[GenPartition, int], dict[Exponent, int]] = defaultdict(dict)
    for alpha, k, m in f.denominator:
        if k < 1:
            raise FactorNotExpandable(
                f"factor (1 - t^{list(alpha)} q^{k}) has k = 0 and cannot be completed"
            )
        lam = tuple(sorted(alpha, reverse=True))
        groups[lam, k][alpha] = m

    num = f._num_dict()
    a_multiset = []
    for (lam, k), present in sorted(groups.items()):
        power = max(present.values())
        a_multiset.extend([(lam, k)] * power)
        for beta, weight_mult in schur_poly(lam).terms:
            missing = power * weight_mult - present.get(beta, 0)
            num = _times_factor(num, beta, k, missing)

    by_q: dict[int, list] = defaultdict(list)
    for (alpha, r), c in num.items():
        by_q[r].append((alpha, c))
    terms = []
    for r in sorted(by_q):
        p = LaurentPoly(n, by_q[r])
        try:
            expansion = schur_expand(p)
        except NonSymmetric:
            raise NonSymmetric(
                f"completed numerator is not symmetric in q-degree {r}: {p}", degree=r
            ) from None
        terms.extend((m, mu, r) for m, mu in expansion.terms)
    return Decomposition(n, tuple(a_multiset), tuple(terms))
