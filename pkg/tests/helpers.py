"""Shared generators for property tests and the acceptance corpus."""

import random
from itertools import permutations

from hypothesis import strategies as st

from charq.laurent import LaurentPoly, symmetrize_orbit
from charq.nice_rational import NiceRational
from charq.schur import dimension


def laurent_polys(num_vars=2, max_exp=3, min_exp=-2, max_terms=5, max_coeff=5):
    exps = st.tuples(*[st.integers(min_exp, max_exp)] * num_vars)
    coeffs = st.integers(-max_coeff, max_coeff).filter(bool)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(
        lambda d: LaurentPoly(num_vars, d)
    )


def symmetric_polys(num_vars=2, max_exp=3, min_exp=-1, max_orbits=3):
    exps = st.tuples(*[st.integers(min_exp, max_exp)] * num_vars)
    pairs = st.lists(st.tuples(exps, st.integers(-4, 4)), max_size=max_orbits)

    def build(items):
        p = LaurentPoly.zero(num_vars)
        for alpha, c in items:
            p = p + symmetrize_orbit(alpha).scale(c)
        return p

    return pairs.map(build)


def partitions(n, lo=-2, hi=4):
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n).map(
        lambda xs: tuple(sorted(xs, reverse=True))
    )


def completion_cost(f: NiceRational) -> int:
    """How many extra linear factors the e^lam_k completion will introduce."""
    groups = {}
    for alpha, k, m in f.denominator:
        key = (tuple(sorted(alpha, reverse=True)), k)
        groups.setdefault(key, {})[alpha] = m
    return sum(
        max(g.values()) * dimension(lam) - sum(g.values()) for (lam, _), g in groups.items()
    )


def random_symmetric_nice(rng: random.Random, n: int, max_abs=2, max_k=3) -> NiceRational:
    """A symmetric nice rational built from whole permutation orbits.

    Half the time the result is also multiplied by (1 - t^g q^j)/(1 - t^g q^j)
    for a single non-symmetric factor, so that the denominator itself is not
    symmetric even though the function is.
    """
    den = []
    for _ in range(rng.randint(1, 2)):
        alpha = tuple(rng.randint(-max_abs, max_abs) for _ in range(n))
        k, m = rng.randint(1, max_k), rng.randint(1, 2)
        den += [(p, k, m) for p in set(permutations(alpha))]
    num = []
    for _ in range(rng.randint(1, 3)):
        beta = tuple(rng.randint(-max_abs, max_abs) for _ in range(n))
        c, r = rng.randint(-3, 3) or 1, rng.randint(0, 3)
        num += [(c, a, r) for a, _ in symmetrize_orbit(beta).terms]
    f = NiceRational(n, tuple(num), tuple(den))
    if rng.random() < 0.5:
        g = tuple(rng.randint(-max_abs, max_abs) for _ in range(n))
        j = rng.randint(1, max_k)
        f = f * NiceRational(n, ((1, (0,) * n, 0), (-1, g, j)), ((g, j, 1),))
    return f


def random_corpus(seed: int, size: int, max_cost: int = 12):
    """``size`` random symmetric inputs with n in {2, 3} whose completion stays small."""
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        n = rng.choice([2, 3])
        f = random_symmetric_nice(rng, n)
        if completion_cost(f) <= max_cost:
            out.append(f)
    return out
