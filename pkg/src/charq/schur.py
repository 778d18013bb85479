"""Generalized partitions and Schur polynomials.

A generalized partition is a weakly decreasing integer tuple; negative parts
are allowed and stand for determinant twists, so ``s_lam`` for such ``lam`` is
a Laurent polynomial. Two independent routes compute ``s_lam``:

* :func:`schur_poly` enumerates semistandard Young tableaux column by column;
* :func:`schur_poly_bialternant` divides the alternant by the Vandermonde product.

Each serves as the other's oracle in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .errors import InvalidPartition, NonSymmetric
from .laurent import LaurentPoly

GenPartition = tuple[int, ...]


def check_partition(lam: Sequence[int], n: int | None = None) -> GenPartition:
    """Validate ``lam`` as a weakly decreasing tuple (of length ``n`` if given)."""
    lam = tuple(int(x) for x in lam)
    if n is not None and len(lam) != n:
        raise InvalidPartition(f"partition {lam} has {len(lam)} parts, expected {n}")
    if not lam:
        raise InvalidPartition("a partition needs at least one part")
    for a, b in zip(lam, lam[1:]):
        if a < b:
            raise InvalidPartition(f"{lam} is not weakly decreasing")
    return lam


def conjugate(shape: Sequence[int]) -> tuple[int, ...]:
    if not shape or shape[0] <= 0:
        return ()
    return tuple(sum(1 for r in shape if r > j) for j in range(shape[0]))


def iter_ssyt(shape: Sequence[int], n: int):
    """Yield every SSYT of ``shape`` with entries in 1..n, as a tuple of rows.

    Cells are filled column by column, top to bottom; each entry must exceed
    the one above it and be at least the one to its left.
    """
    shape = tuple(r for r in check_partition(shape) if r > 0)
    if any(r < 0 for r in shape):
        raise InvalidPartition("tableau shapes must have nonnegative parts")
    cols = conjugate(shape)
    if cols and cols[0] > n:
        return
    cells = [(i, j) for j, h in enumerate(cols) for i in range(h)]
    grid = [[0] * r for r in shape]

    def fill(idx):
        if idx == len(cells):
            yield tuple(tuple(row) for row in grid)
            return
        i, j = cells[idx]
        lo = 1
        if i > 0:
            lo = grid[i - 1][j] + 1
        if j > 0 and grid[i][j - 1] > lo:
            lo = grid[i][j - 1]
        hi = n - (cols[j] - 1 - i)
        for v in range(lo, hi + 1):
            grid[i][j] = v
            yield from fill(idx + 1)
        grid[i][j] = 0

    yield from fill(0)


@lru_cache(maxsize=4096)
def _schur_polynomial_part(shape: GenPartition, n: int) -> LaurentPoly:
    # shape has nonnegative parts; each tableau contributes t^content
    rows = [r for r in shape if r > 0]
    cols = conjugate(tuple(rows))
    if not cols:
        return LaurentPoly.one(n)
    if cols[0] > n:
        return LaurentPoly.zero(n)
    cells = [(i, j) for j, h in enumerate(cols) for i in range(h)]
    grid = [[0] * r for r in rows]
    content = [0] * n
    counts: dict[tuple[int, ...], int] = {}
    last = len(cells)

    def fill(idx):
        if idx == last:
            key = tuple(content)
            counts[key] = counts.get(key, 0) + 1
            return
        i, j = cells[idx]
        lo = grid[i - 1][j] + 1 if i > 0 else 1
        if j > 0 and grid[i][j - 1] > lo:
            lo = grid[i][j - 1]
        hi = n - (cols[j] - 1 - i)
        row = grid[i]
        for v in range(lo, hi + 1):
            row[j] = v
            content[v - 1] += 1
            fill(idx + 1)
            content[v - 1] -= 1
        row[j] = 0

    fill(0)
    return LaurentPoly(n, counts)


def schur_poly(lam: Sequence[int], n: int | None = None) -> LaurentPoly:
    """Character of the irreducible GL_n-module L_lam, by SSYT enumeration.

    Negative parts are handled as ``(t1...tn)^lam_n * s_{lam - lam_n}``.
    """
    lam = check_partition(lam, n)
    n = len(lam)
    low = lam[-1]
    if low >= 0:
        return _schur_polynomial_part(lam, n)
    shifted = tuple(x - low for x in lam)
    return _schur_polynomial_part(shifted, n).shift((low,) * n)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def vandermonde(n: int) -> LaurentPoly:
    gens = LaurentPoly.gens(n)
    out = LaurentPoly.one(n)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (gens[i] - gens[j])
    return out


def alternant(exponents: Sequence[int]) -> LaurentPoly:
    """``sum_sigma sign(sigma) prod_i t_{sigma(i)}^{exponents[i]}``."""
    n = len(exponents)
    terms = []
    for perm in permutations(range(n)):
        alpha = [0] * n
        for i, e in enumerate(exponents):
            alpha[perm[i]] = e
        terms.append((alpha, _perm_sign(perm)))
    return LaurentPoly(n, terms)


def schur_poly_bialternant(lam: Sequence[int], n: int | None = None) -> LaurentPoly:
    lam = check_partition(lam, n)
    n = len(lam)
    num = alternant([lam[i] + n - 1 - i for i in range(n)])
    return num.exact_div(vandermonde(n))


def kostka(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Number of SSYT of shape ``lam`` and content ``mu``.

    Counted as chains of horizontal strips (value i fills a strip of size
    mu_i), which is independent of :func:`schur_poly`'s enumeration.
    """
    lam = check_partition(lam)
    if lam[-1] < 0:
        raise InvalidPartition("kostka needs nonnegative parts; det-twist first")
    mu = tuple(int(x) for x in mu)
    if any(m < 0 for m in mu) or sum(mu) != sum(lam):
        return 0
    m = len(mu)
    shape = tuple(r for r in lam if r > 0)
    if len(shape) > m:
        return 0
    shape = shape + (0,) * (m - len(shape))

    @lru_cache(maxsize=None)
    def count(i: int, nu: tuple[int, ...]) -> int:
        if i == m:
            return 1 if nu == shape else 0
        size = mu[i]
        total = 0
        # kappa / nu horizontal strip of size mu[i]; rows past i stay empty
        def extend(r, kappa, left):
            nonlocal total
            if r == m:
                if left == 0:
                    total += count(i + 1, tuple(kappa))
                return
            if r > i:
                if left == 0:
                    extend(m, kappa + list(nu[r:]), 0)
                return
            upper = shape[r] if r == 0 else min(shape[r], nu[r - 1])
            for add in range(0, min(left, upper - nu[r]) + 1):
                extend(r + 1, kappa + [nu[r] + add], left - add)

        extend(0, [], size)
        return total

    return count(0, (0,) * m)


@dataclass(frozen=True)
class SchurExpansion:
    """Integer combination ``sum coeff * s_lam`` with distinct partitions, lex-descending."""

    num_vars: int
    terms: tuple[tuple[int, GenPartition], ...]

    def __post_init__(self):
        merged: dict[GenPartition, int] = {}
        for c, lam in self.terms:
            lam = check_partition(lam, self.num_vars)
            merged[lam] = merged.get(lam, 0) + int(c)
        terms = tuple((c, lam) for lam, c in sorted(merged.items(), reverse=True) if c)
        object.__setattr__(self, "terms", terms)

    def to_poly(self) -> LaurentPoly:
        out = LaurentPoly.zero(self.num_vars)
        for c, lam in self.terms:
            out = out + schur_poly(lam).scale(c)
        return out

    def as_dict(self) -> dict[GenPartition, int]:
        return {lam: c for c, lam in self.terms}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, lam in self.terms:
            name = "s(" + ",".join(map(str, lam)) + ")"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mag + name))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{sign} {body}" for sign, body in parts[1:]])

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "lam": list(lam)} for c, lam in self.terms]

    @classmethod
    def from_json(cls, data, num_vars: int | None = None) -> SchurExpansion:
        terms = [(int(rec["coeff"]), tuple(rec["lam"])) for rec in data]
        if num_vars is None:
            if not terms:
                raise ValueError("cannot infer num_vars from an empty expansion")
            num_vars = len(terms[0][1])
        return cls(num_vars, tuple(terms))


def schur_expand(p: LaurentPoly) -> SchurExpansion:
    """Expand a symmetric Laurent polynomial in the Schur basis by greedy lex peel-off."""
    if not p.is_symmetric():
        raise NonSymmetric(f"{p} is not symmetric")
    n = p.num_vars
    rem = p.as_dict()
    out = []
    while rem:
        mu = max(rem)
        c = rem[mu]
        out.append((c, check_partition(mu)))
        for alpha, k in schur_poly(mu).terms:
            v = rem.get(alpha, 0) - c * k
            if v:
                rem[alpha] = v
            else:
                rem.pop(alpha, None)
    return SchurExpansion(n, tuple(out))


def e_factor(lam: Sequence[int], k: int) -> list[tuple[tuple[int, ...], int, int]]:
    """Factors ``(alpha, k, mult)`` of ``e^lam_k = prod (1 - t^alpha q^k)`` over the weights of L_lam."""
    if k < 1:
        raise ValueError("k must be positive")
    return [(alpha, k, mult) for alpha, mult in schur_poly(lam).terms]


def dimension(lam: Sequence[int]) -> int:
    """dim L_lam by the hook-content style product ``prod (l_i - l_j + j - i)/(j - i)``."""
    lam = check_partition(lam)
    n = len(lam)
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den
