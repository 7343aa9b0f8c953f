"""Log-discrepancies, minimal log-discrepancy and lc/lt classification.

For a Q-Gorenstein cone sigma there is a unique w in M_Q with <rho, w> = 1
on every primitive ray rho; then r*w is the Cartier data of -r K_X where r
is the index.  The log-discrepancy of the toric divisor D_v is
``<v, w> - ord(v)``, which is linear on every cone of the dual fan.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import lattice as la
from .cones import Cone, enumerate_box, hilbert_basis
from .lattice import IntVector
from .newton import DualFan, MonomialIdeal, dual_fan, make_ideal


class NotQGorensteinError(ValueError):
    """Raised when a discrepancy computation needs Q-Gorenstein data that is absent."""


@dataclass(frozen=True)
class QGorensteinData:
    weight: tuple[Fraction, ...]
    index: int

    def to_json(self) -> dict:
        return {"weight": [format_fraction(x) for x in self.weight], "index": self.index}


def qgorenstein(sigma: Cone) -> QGorensteinData | None:
    """Solve <rho_i, w> = 1 over Q; None when sigma is not Q-Gorenstein."""
    if not (sigma.is_pointed and sigma.is_full_dimensional):
        raise ValueError("sigma must be strongly convex and full-dimensional")
    w = la.solve(sigma.rays, [1] * len(sigma.rays), sigma.ambient_rank)
    if w is None:
        return None
    return QGorensteinData(w, la.common_denominator(w))


@dataclass(frozen=True)
class ToricPair:
    """An affine toric variety together with a validated invariant ideal."""

    sigma: Cone
    ideal: MonomialIdeal
    qg: QGorensteinData | None = field(compare=False)

    @property
    def rank(self) -> int:
        return self.sigma.ambient_rank

    @cached_property
    def dual(self) -> DualFan:
        return dual_fan(self.ideal)

    @property
    def exponents(self) -> tuple[IntVector, ...]:
        return self.ideal.exponents

    def order(self, v: Sequence[int]) -> int:
        return min(la.dot(v, a) for a in self.ideal.exponents)

    def require_qg(self) -> QGorensteinData:
        if self.qg is None:
            raise NotQGorensteinError("X is not Q-Gorenstein; log-discrepancies are undefined")
        return self.qg

    def discrepancy(self, v: Sequence[int]) -> Fraction:
        """<v, w> - ord(v) for any lattice point of sigma (no primitivity check)."""
        return la.dot(v, self.require_qg().weight) - self.order(v)

    @cached_property
    def is_standard_orthant(self) -> bool:
        n = self.rank
        return self.sigma.rays == tuple(sorted(tuple(int(i == j) for j in range(n)) for i in range(n)))


def make_pair(exponents: Sequence[Sequence[int]], cone_rays: Sequence[Sequence[int]] | None = None,
              dim: int | None = None) -> ToricPair:
    """Build a pair from an exponent list and optional cone rays (default: orthant)."""
    if cone_rays is None:
        if dim is None:
            dim = len(exponents[0])
        cone_rays = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    sigma = Cone(cone_rays)
    if len(sigma.rays) != len({la.primitivize(r) for r in cone_rays}):
        raise ValueError("cone rays are redundant")
    if not sigma.is_pointed or not sigma.is_full_dimensional:
        raise ValueError("sigma must be strongly convex and full-dimensional")
    ideal = make_ideal(exponents, sigma)
    return ToricPair(sigma, ideal, qgorenstein(sigma))


def log_discrepancy(v: Sequence[int], pair: ToricPair) -> Fraction:
    """a(D_v; X, Z) for a primitive lattice point v of sigma."""
    v = tuple(v)
    if la.is_zero(v):
        raise ValueError("zero vector is not a divisorial valuation")
    if not la.is_primitive(v):
        raise ValueError(f"{v} is not primitive")
    if not pair.sigma.contains(v):
        raise ValueError(f"{v} is not in sigma")
    return pair.discrepancy(v)


class MldKind(enum.Enum):
    FINITE = "finite"
    MINUS_INFINITY = "-inf"


@dataclass(frozen=True)
class MldResult:
    kind: MldKind
    value: Fraction | None
    witness: IntVector

    @property
    def is_finite(self) -> bool:
        return self.kind is MldKind.FINITE

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "value": format_fraction(self.value) if self.is_finite else "-inf",
            "witness": list(self.witness),
        }


def _witness_key(v: IntVector) -> tuple:
    return (sum(abs(x) for x in v), v)


def mld(pair: ToricPair) -> MldResult:
    """Minimal log-discrepancy over toric divisorial valuations.

    Per maximal cone of the dual fan the log-discrepancy is linear, so a
    negative value at a ray certifies -inf; otherwise the minimum over the
    cone is attained on its Hilbert basis.
    """
    pair.require_qg()
    if pair.rank < 2:
        raise ValueError("mld convention requires dim >= 2")
    cones = pair.dual.fan.maximal_cones
    negative = [(pair.discrepancy(r), _witness_key(r), r)
                for c in cones for r in c.rays if pair.discrepancy(r) < 0]
    if negative:
        _, _, ray = min(negative)
        return MldResult(MldKind.MINUS_INFINITY, None, ray)
    best = min((pair.discrepancy(h), _witness_key(h), h)
               for c in cones for h in hilbert_basis(c))
    return MldResult(MldKind.FINITE, best[0], best[2])


def brute_force_mld(pair: ToricPair, bound: int) -> MldResult:
    """Minimum of the log-discrepancy over all box points of sigma.

    Any negative value means -inf; the reported witness is the first
    negative point in lexicographic order.  A finite answer is only an upper
    bound for the true mld unless the box is large enough.
    """
    pair.require_qg()
    best = None
    for v in enumerate_box(pair.sigma, bound):
        a = pair.discrepancy(v)
        if a < 0:
            return MldResult(MldKind.MINUS_INFINITY, None, la.primitivize(v))
        if best is None or (a, _witness_key(v)) < best[:2]:
            best = (a, _witness_key(v), v)
    return MldResult(MldKind.FINITE, best[0], best[2])


class LcClass(enum.Enum):
    LOG_TERMINAL = "log-terminal"
    LOG_CANONICAL_NOT_LT = "log-canonical-not-lt"
    NOT_LOG_CANONICAL = "not-log-canonical"


@dataclass(frozen=True)
class LcClassification:
    cls: LcClass
    l_coefficients: dict  # dual-fan ray -> r * a(D_ray)
    d_part: tuple[IntVector, ...] = ()
    dprime_part: tuple[IntVector, ...] = ()

    def to_json(self) -> dict:
        out = {
            "class": self.cls.value,
            "l_coefficients": {",".join(map(str, r)): c for r, c in sorted(self.l_coefficients.items())},
        }
        if self.cls is LcClass.NOT_LOG_CANONICAL:
            out["D"] = [list(r) for r in self.d_part]
            out["D_prime"] = [list(r) for r in self.dprime_part]
        return out


def classify(pair: ToricPair) -> LcClassification:
    """Sign pattern of the divisor L = r(K + Z) pulled back to the normalized blow-up.

    The coefficient of D_v in L, up to sign, is r * a(D_v) for each ray v of
    the dual fan.  Negative coefficients form D, positive ones D'.
    """
    r = pair.require_qg().index
    coeffs = {}
    for v in pair.dual.rays:
        c = r * pair.discrepancy(v)
        assert c.denominator == 1
        coeffs[v] = int(c)
    neg = tuple(v for v, c in sorted(coeffs.items()) if c < 0)
    if neg:
        pos = tuple(v for v, c in sorted(coeffs.items()) if c > 0)
        return LcClassification(LcClass.NOT_LOG_CANONICAL, coeffs, neg, pos)
    if any(c == 0 for c in coeffs.values()):
        return LcClassification(LcClass.LOG_CANONICAL_NOT_LT, coeffs)
    return LcClassification(LcClass.LOG_TERMINAL, coeffs)


def format_fraction(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
