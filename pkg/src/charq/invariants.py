"""Invariant dimensions of GL_n-modules and Hilbert series of invariant subspaces.

The operator D is the additive map sending the character of L_lam to
``dim L_lam^G``. Applied coefficientwise to a formal character series it
yields the Hilbert series of the G-invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidPartition, NonSymmetric, VariableCountMismatch
from .laurent import CharacterSeries, IntSeries, LaurentPoly, default_order
from .schur import check_partition, schur_expand, schur_poly


@dataclass(frozen=True)
class GroupSpec:
    n: int

    kind = "abstract"

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError("n must be positive")

    @property
    def is_diagonal(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"type": self.kind, "n": self.n}


@dataclass(frozen=True)
class FullGL(GroupSpec):
    kind = "gl"


@dataclass(frozen=True)
class SpecialLinear(GroupSpec):
    kind = "sl"


@dataclass(frozen=True)
class MaximalUnipotent(GroupSpec):
    """Upper unitriangular matrices (the unipotent radical of the standard Borel)."""

    kind = "unipotent"


@dataclass(frozen=True)
class DiagonalTorus(GroupSpec):
    """Torus acting on ``x_i`` by ``prod_j z_j^{w_j[i]}``, one weight vector per coordinate z_j.

    A monomial ``t^a`` is invariant iff ``w . a == 0`` for every weight w.
    """

    weights: tuple[tuple[int, ...], ...] = ()
    kind = "torus"

    def __post_init__(self):
        super().__post_init__()
        weights = tuple(tuple(int(x) for x in w) for w in self.weights)
        for w in weights:
            if len(w) != self.n:
                raise VariableCountMismatch(f"torus weight {w} is not of length {self.n}")
        object.__setattr__(self, "weights", weights)

    @property
    def is_diagonal(self) -> bool:
        return True

    def admits(self, alpha: Sequence[int]) -> bool:
        return all(sum(w * a for w, a in zip(wt, alpha)) == 0 for wt in self.weights)

    def to_json(self) -> dict:
        return {"type": "torus", "n": self.n, "weights": [list(w) for w in self.weights]}


@dataclass(frozen=True)
class CyclicDiagonal(GroupSpec):
    """Cyclic group of order m generated by ``diag(zeta^e_1, ..., zeta^e_n)``."""

    order: int = 1
    exponents: tuple[int, ...] = field(default=())
    kind = "cyclic"

    def __post_init__(self):
        super().__post_init__()
        if int(self.order) < 1:
            raise ValueError("cyclic order must be >= 1")
        exps = tuple(int(x) for x in self.exponents)
        if len(exps) != self.n:
            raise VariableCountMismatch(f"exponent vector {exps} is not of length {self.n}")
        object.__setattr__(self, "exponents", exps)

    @property
    def is_diagonal(self) -> bool:
        return True

    def admits(self, alpha: Sequence[int]) -> bool:
        return sum(e * a for e, a in zip(self.exponents, alpha)) % self.order == 0

    def to_json(self) -> dict:
        return {"type": "cyclic", "n": self.n, "order": self.order, "exponents": list(self.exponents)}


def group_from_json(data: dict) -> GroupSpec:
    kind = data.get("type")
    n = int(data["n"])
    if kind == "gl":
        return FullGL(n)
    if kind == "sl":
        return SpecialLinear(n)
    if kind == "unipotent":
        return MaximalUnipotent(n)
    if kind == "torus":
        return DiagonalTorus(n, tuple(tuple(w) for w in data["weights"]))
    if kind == "cyclic":
        return CyclicDiagonal(n, int(data["order"]), tuple(data["exponents"]))
    raise ValueError(f"unknown group type {kind!r}")


def _diagonal_count(g: GroupSpec, p: LaurentPoly) -> int:
    return sum(c for alpha, c in p.terms if g.admits(alpha))


def d_schur(g: GroupSpec, lam: Sequence[int]) -> int:
    """``dim L_lam^G``."""
    lam = tuple(lam)
    if len(lam) != g.n:
        raise InvalidPartition(f"partition {lam} has {len(lam)} parts but G lives in GL_{g.n}")
    lam = check_partition(lam)
    if isinstance(g, FullGL):
        return int(not any(lam))
    if isinstance(g, SpecialLinear):
        return int(lam[0] == lam[-1])
    if isinstance(g, MaximalUnipotent):
        # the highest-weight line is the whole fixed space, det twists included
        return 1
    if g.is_diagonal:
        return _diagonal_count(g, schur_poly(lam))
    raise TypeError(f"unsupported group {g!r}")


def d_character(g: GroupSpec, p: LaurentPoly, method: str = "auto") -> int:
    """Apply D to a symmetric Laurent polynomial.

    ``method`` is "auto" (monomial filtering for diagonal groups, Schur
    expansion otherwise), "direct" or "schur". Both routes agree on diagonal
    groups; only "schur" is available for the others.
    """
    if p.num_vars != g.n:
        raise VariableCountMismatch(f"character in {p.num_vars} variables, G in GL_{g.n}")
    if not p.is_symmetric():
        raise NonSymmetric(f"{p} is not symmetric")
    if method == "auto":
        method = "direct" if g.is_diagonal else "schur"
    if method == "direct":
        if not g.is_diagonal:
            raise ValueError("direct filtering needs a diagonal group")
        return _diagonal_count(g, p)
    if method == "schur":
        return sum(m * d_schur(g, lam) for m, lam in schur_expand(p).terms)
    raise ValueError(f"unknown method {method!r}")


def hilbert_invariants(g: GroupSpec, ch: CharacterSeries, method: str = "auto") -> IntSeries:
    """Hilbert series of the G-invariants: D applied to every q-coefficient."""
    out = []
    for d, c in enumerate(ch.coeffs):
        try:
            out.append(d_character(g, c, method))
        except NonSymmetric:
            raise NonSymmetric(f"coefficient of q^{d} is not symmetric: {c}", degree=d) from None
    return IntSeries(tuple(out))


def free_algebra_character(n: int, order: int | None = None) -> CharacterSeries:
    """Character of the tensor algebra on K^n: the q^d coefficient is ``(t1 + ... + tn)^d``."""
    if n < 1:
        raise ValueError("n must be positive")
    if order is None:
        order = default_order()
    p1 = sum(LaurentPoly.gens(n), LaurentPoly.zero(n))
    coeffs = [LaurentPoly.one(n)]
    for _ in range(order):
        coeffs.append(coeffs[-1] * p1)
    return CharacterSeries(n, tuple(coeffs))
