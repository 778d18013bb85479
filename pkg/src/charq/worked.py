"""Concrete series and independent oracles.

* the multigraded Hilbert series of the 2-generated relatively free algebra
  of 2x2 matrices (Formanek-Halpin-Li),
* the Hilbert series of Steinberg's variant of Nagata's invariant ring,
  built from its bigraded dimension formula,
* the ``1 + floor(d * beta)`` Hilbert series of a normal semigroup algebra,
  with an exact floor for quadratic irrationals and an eventual-period search,
* a brute-force dimension count of invariants in tensor powers of K^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb, gcd, isqrt
from typing import Sequence

from .errors import BetaOutOfRange, UnsupportedSize
from .invariants import (
    CyclicDiagonal,
    DiagonalTorus,
    FullGL,
    GroupSpec,
    MaximalUnipotent,
    SpecialLinear,
)
from .laurent import IntSeries
from .nice_rational import NiceRational


# --- Formanek-Halpin-Li series ---------------------------------------------


def fhl_series() -> NiceRational:
    """``1/((1-t1)(1-t2)) + t1 t2 / ((1-t1)^2 (1-t2)^2 (1-t1 t2))`` over a common denominator."""
    first, second = fhl_summands()
    return first + second


def fhl_summands() -> tuple[NiceRational, NiceRational]:
    """The two summands, each with its own denominator (k = 0 factors, before t_i -> t_i q)."""
    first = NiceRational(2, ((1, (0, 0), 0),), (((1, 0), 0, 1), ((0, 1), 0, 1)))
    second = NiceRational(
        2, ((1, (1, 1), 0),), (((1, 0), 0, 2), ((0, 1), 0, 2), ((1, 1), 0, 1))
    )
    return first, second


def fhl_coefficient(a1: int, a2: int) -> int:
    """dim R_(a1, a2) read off the two summands by direct geometric expansion."""
    if a1 < 0 or a2 < 0:
        return 0
    total = 1
    if a1 >= 1 and a2 >= 1:
        b1, b2 = a1 - 1, a2 - 1
        # (1-t1)^-2 (1-t2)^-2 (1-t1t2)^-1 at t1^b1 t2^b2
        total += sum((b1 - c + 1) * (b2 - c + 1) for c in range(min(b1, b2) + 1))
    return total


# --- Nagata ------------------------------------------------------------------


def nagata_dim(d: int, m: int) -> int:
    """Dimension of the (d, m) bigraded piece of the invariant ring."""
    if m <= 0:
        return comb(d + 2, 2)
    if d >= 3 * m:
        return comb(d + 2, 2) - 9 * comb(m + 1, 2)
    return 0


def nagata_cn(n: int) -> int:
    """Coefficient of ``q^(9n)``: ``sum_{m >= -n} dim R_(n+m, m)``."""
    upper = sum(nagata_dim(n + m, m) for m in range(1, n // 2 + 1))
    lower = sum(nagata_dim(n + m, m) for m in range(-n, 1))
    return upper + lower


def nagata_series(order: int) -> IntSeries:
    coeffs = [0] * (order + 1)
    for n in range(order // 9 + 1):
        coeffs[9 * n] = nagata_cn(n)
    return IntSeries(tuple(coeffs))


NAGATA_NUMERATOR = {0: 1, 9: 4, 18: 7, 27: 10, 36: 10, 45: 4}
NAGATA_DEGREES = (18, 18, 18, 18)


def nagata_identity_check(n: int) -> bool:
    """Check the partial-sum identities behind the closed form at this n.

    The lower sum is always ``C(n+3, 3)``; the upper sum has one closed form
    for even n and another for odd n (both in cubic and binomial shape).
    """
    if n < 0:
        return False
    lower = sum(comb(n + m + 2, 2) for m in range(-n, 1))
    if lower != comb(n + 3, 3):
        return False
    if sum(nagata_dim(n + m, m) for m in range(-n, 1)) != lower:
        return False
    s = n // 2
    upper = sum(nagata_dim(n + m, m) for m in range(1, s + 1))
    direct = sum(comb(n + m + 2, 2) - 9 * comb(m + 1, 2) for m in range(1, s + 1))
    if upper != direct:
        return False
    if n == 0:
        return upper == 0
    if n % 2 == 0:
        return 6 * upper == 10 * s**3 + 3 * s**2 - 7 * s and upper == 10 * comb(s, 3) + 11 * comb(s, 2) + s
    return 6 * upper == 10 * s**3 + 18 * s**2 + 8 * s and upper == 10 * comb(s, 3) + 16 * comb(s, 2) + 6 * s


# --- semigroup with floor(d beta) --------------------------------------------


def _sign(a: int, b: int, d: int) -> int:
    """Sign of ``a + b*sqrt(d)``, exactly."""
    sa = (a > 0) - (a < 0)
    if b == 0 or d == 0:
        return sa
    sb = 1 if b > 0 else -1
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 d
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def _floor_sqrt_multiple(b: int, d: int) -> int:
    """``floor(b * sqrt(d))``."""
    r = isqrt(b * b * d)
    if b >= 0:
        return r
    return -r if r * r == b * b * d else -r - 1


@dataclass(frozen=True)
class QuadraticIrrational:
    """The real number ``(a + b*sqrt(d)) / c`` with integers a, b, c > 0, d >= 0."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("denominator c must be positive")
        if self.d < 0:
            raise ValueError("radicand d must be nonnegative")

    @classmethod
    def rational(cls, num: int, den: int) -> QuadraticIrrational:
        if den < 0:
            num, den = -num, -den
        return cls(num, 0, den, 0)

    @classmethod
    def beta_from_alpha(cls, alpha: QuadraticIrrational) -> QuadraticIrrational:
        """``alpha / (alpha + 1)``, rationalized."""
        a, b, c, d = alpha.a, alpha.b, alpha.c, alpha.d
        # (a + b r) / (a + c + b r) times (a + c - b r) / (a + c - b r)
        num_a = a * (a + c) - b * b * d
        num_b = b * c
        den = (a + c) ** 2 - b * b * d
        if den == 0:
            raise ValueError("alpha + 1 has zero norm; cannot rationalize")
        if den < 0:
            num_a, num_b, den = -num_a, -num_b, -den
        g = gcd(gcd(num_a, num_b), den)
        return cls(num_a // g, num_b // g, den // g, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0 or isqrt(self.d) ** 2 == self.d

    @property
    def squarefree(self) -> bool:
        if self.d == 0:
            return False
        k = 2
        while k * k <= self.d:
            if self.d % (k * k) == 0:
                return False
            k += 1
        return True

    def sign_minus(self, num: int, den: int) -> int:
        """Sign of ``self - num/den`` (den > 0)."""
        # (a + b r)/c - num/den  ~  den*a - c*num + den*b r
        return _sign(den * self.a - self.c * num, den * self.b, self.d)

    def floor_multiple(self, n: int) -> int:
        """``floor(n * value)`` by integer square roots."""
        whole = n * self.a + _floor_sqrt_multiple(n * self.b, self.d)
        return whole // self.c

    def __float__(self):
        return (self.a + self.b * self.d**0.5) / self.c

    def __str__(self):
        if self.b == 0:
            return f"{self.a}/{self.c}" if self.c != 1 else str(self.a)
        core = f"{self.a} {'+' if self.b > 0 else '-'} {abs(self.b) if abs(self.b) != 1 else ''}sqrt({self.d})"
        return f"({core})/{self.c}" if self.c != 1 else core


def _check_beta(beta: QuadraticIrrational):
    if beta.sign_minus(0, 1) <= 0 or beta.sign_minus(1, 1) >= 0:
        raise BetaOutOfRange(f"beta = {beta} is not in the open interval (0, 1)")


def semigroup_coeff(beta: QuadraticIrrational, d: int) -> int:
    """Number of degree-d monomials in the semigroup algebra: 1 at d = 0, else ``1 + floor(d beta)``."""
    _check_beta(beta)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d == 0:
        return 1
    return 1 + beta.floor_multiple(d)


def semigroup_series(beta: QuadraticIrrational, order: int) -> IntSeries:
    return IntSeries(tuple(semigroup_coeff(beta, d) for d in range(order + 1)))


def semigroup_differences(beta: QuadraticIrrational, order: int) -> IntSeries:
    """Coefficients of ``(1 - q) * sum floor(d beta) q^d``; index 0 is 0."""
    _check_beta(beta)
    floors = [beta.floor_multiple(d) for d in range(order + 1)]
    return IntSeries((0,) + tuple(floors[d] - floors[d - 1] for d in range(1, order + 1)))


def detect_eventual_period(
    c: IntSeries | Sequence[int], max_offset: int | None = None, max_period: int = 50
) -> tuple[int, int] | None:
    """Smallest ``(offset, period)`` with ``c[d + period] == c[d]`` for ``offset <= d <= order - period``.

    Offsets default to at most half the window so every accepted pair is
    checked on at least half the data.
    """
    seq = list(c.coeffs if isinstance(c, IntSeries) else c)
    order = len(seq) - 1
    if max_offset is None:
        max_offset = order // 2
    for offset in range(0, max_offset + 1):
        for period in range(1, max_period + 1):
            if offset > order - period:
                break
            if all(seq[d + period] == seq[d] for d in range(offset, order - period + 1)):
                return offset, period
    return None


# --- tensor power oracle -----------------------------------------------------

ORACLE_MAX_DEGREE = 12


def _rank(rows: list[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix (fraction-free elimination)."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                pivots[col] = {c: v // g for c, v in row.items()}
                rank += 1
                break
            a, b = piv[col], row[col]
            new = {c: a * v for c, v in row.items()}
            for c, v in piv.items():
                x = new.get(c, 0) - b * v
                if x:
                    new[c] = x
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            row = {c: v // g for c, v in new.items()} if g > 1 else new
    return rank


def _lie_image(word: tuple[int, ...], src: int, dst: int) -> list[tuple[int, ...]]:
    """Leibniz action of the elementary matrix sending basis vector src to dst."""
    out = []
    for i, letter in enumerate(word):
        if letter == src:
            out.append(word[:i] + (dst,) + word[i + 1 :])
    return out


def tensor_invariant_dim_oracle(g: GroupSpec, n: int, d: int) -> int:
    """``dim (V^{tensor d})^G`` for V = K^2, computed from explicit tensors.

    Connected groups use Lie algebra kernels: the raising operator x <- y for
    the unipotent group, raising and lowering for SL_2 (plus the scalar
    weight for GL_2). Diagonal groups count admissible basis tensors.
    """
    if n != 2 or g.n != 2:
        raise UnsupportedSize("the tensor oracle only handles n = 2")
    if d < 0 or d > ORACLE_MAX_DEGREE:
        raise UnsupportedSize(f"degree {d} outside 0..{ORACLE_MAX_DEGREE}")
    words = list(product((0, 1), repeat=d))
    # basis vector 0 is x = e_1, 1 is y = e_2; weight of a word is (#x, #y)
    by_weight: dict[int, list[tuple[int, ...]]] = {}
    for w in words:
        by_weight.setdefault(w.count(0), []).append(w)

    if isinstance(g, (DiagonalTorus, CyclicDiagonal)):
        return sum(1 for w in words if g.admits((w.count(0), w.count(1))))

    if isinstance(g, MaximalUnipotent):
        operators = [(1, 0)]  # y -> x
    elif isinstance(g, (SpecialLinear, FullGL)):
        operators = [(1, 0), (0, 1)]
    else:
        raise UnsupportedSize(f"no oracle for {type(g).__name__}")

    total = 0
    for nx, basis in by_weight.items():
        if isinstance(g, FullGL) and d != 0:
            # scalars act on this weight space by z^d
            continue
        index = {w: i for i, w in enumerate(basis)}
        rows: dict[tuple[int, tuple[int, ...]], dict[int, int]] = {}
        for col, w in enumerate(basis):
            for src, dst in operators:
                for img in _lie_image(w, src, dst):
                    row = rows.setdefault((src, img), {})
                    row[col] = row.get(col, 0) + 1
        total += len(index) - _rank(list(rows.values()))
    return total
