"""Monomial ideals on an affine toric variety and their Newton polyhedra.

The order function of an ideal at a valuation v in sigma is
``ord(v) = min_a <v, a>`` over the exponents a; it is the support function
of the Newton polyhedron conv(exponents) + sigma^vee.  Its domains of
linearity form the dual fan, which is the fan of the normalized blow-up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import lattice as la
from .cones import Cone, Fan, dual_cone, faces, is_smooth
from .lattice import IntVector


class InvalidIdealError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimalized exponent set of a monomial ideal on the toric variety of sigma."""

    exponents: tuple[IntVector, ...]
    sigma: Cone
    dual_sigma: Cone = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.sigma.ambient_rank

    def to_json(self) -> list[list[int]]:
        return [list(a) for a in self.exponents]


def _in_dual(sigma: Cone, a: Sequence[int]) -> bool:
    return all(la.dot(r, a) >= 0 for r in sigma.rays)


def minimalize(exponents: Sequence[IntVector], sigma: Cone) -> tuple[IntVector, ...]:
    """Drop every exponent a with a - a' in sigma^vee for another exponent a'."""
    uniq = sorted(set(exponents))
    keep = [
        a for a in uniq
        if not any(b != a and _in_dual(sigma, la.sub(a, b)) for b in uniq)
    ]
    return tuple(keep)


def make_ideal(exponents: Sequence[Sequence[int]], sigma: Cone) -> MonomialIdeal:
    """Validate and minimalize an exponent list.

    Rejects exponents outside sigma^vee, the unit ideal, and ideals whose
    zero locus misses part of Sing X (a non-smooth face tau of sigma on
    whose relative interior ord vanishes).
    """
    n = sigma.ambient_rank
    exps = [tuple(int(x) for x in a) for a in exponents]
    if not exps:
        raise InvalidIdealError("ideal needs at least one exponent")
    for a in exps:
        if len(a) != n:
            raise InvalidIdealError(f"exponent {list(a)} has length {len(a)}, expected {n}")
        if not _in_dual(sigma, a):
            raise InvalidIdealError(f"exponent not in dual cone: {list(a)}")
        if la.is_zero(a):
            raise InvalidIdealError("unit ideal (zero exponent) defines an empty subscheme")
    exps = minimalize(exps, sigma)
    for tau in faces(sigma):
        if is_smooth(tau):
            continue
        if any(all(la.dot(r, a) == 0 for r in tau.rays) for a in exps):
            raise InvalidIdealError(
                f"singular locus not contained in Z: ord vanishes on face {tau.to_json()}"
            )
    return MonomialIdeal(exps, sigma, dual_cone(sigma))


def order(v: Sequence[int], ideal: MonomialIdeal) -> int:
    """Order of the ideal along the toric valuation v in sigma."""
    if not ideal.sigma.contains(v):
        raise ValueError(f"{tuple(v)} is not in sigma")
    return min(la.dot(v, a) for a in ideal.exponents)


def order_unchecked(v: Sequence[int], exponents: Sequence[IntVector]) -> int:
    return min(la.dot(v, a) for a in exponents)


@dataclass(frozen=True)
class NewtonPolyhedron:
    vertices: tuple[IntVector, ...]
    recession_cone: Cone

    def support(self, v: Sequence[int]) -> int:
        return min(la.dot(v, a) for a in self.vertices)


def newton_vertices(ideal: MonomialIdeal) -> NewtonPolyhedron:
    """Vertices of conv(exponents) + sigma^vee.

    An exponent a is dropped when (a, 1) lies in the cone spanned by the
    homogenized other exponents (b, 1) and the recession rays (g, 0); the
    membership test is an exact rational feasibility check.
    """
    rec = ideal.dual_sigma
    exps = ideal.exponents
    verts = []
    for a in exps:
        gens = [b + (1,) for b in exps if b != a] + [g + (0,) for g in rec.rays]
        if not gens or not Cone(gens, len(a) + 1).contains(a + (1,)):
            verts.append(a)
    return NewtonPolyhedron(tuple(verts), rec)


@dataclass(frozen=True)
class DualFan:
    """Normal fan of the Newton polyhedron on sigma; one maximal cone per vertex."""

    fan: Fan
    vertex_of: dict = field(compare=False)  # maximal Cone -> vertex it supports
    polyhedron: NewtonPolyhedron = field(compare=False)

    def supported_face(self, cone: Cone) -> tuple[IntVector, ...]:
        """Vertices attaining the minimum on the relative interior of a cone."""
        c = cone.interior_point()
        m = self.polyhedron.support(c)
        return tuple(a for a in self.polyhedron.vertices if la.dot(c, a) == m)

    def linear_form(self, cone: Cone) -> IntVector:
        """An exponent a with ord = <., a> on the whole cone."""
        return self.supported_face(cone)[0]

    @cached_property
    def rays(self) -> tuple[IntVector, ...]:
        return self.fan.rays

    def to_json(self) -> list[dict]:
        return [
            {"rays": c.to_json(), "vertex": list(self.vertex_of[c])}
            for c in self.fan.maximal_cones
        ]


def dual_fan(ideal: MonomialIdeal) -> DualFan:
    """Cones {v in sigma : <v, a> <= <v, a'> for all vertices a'}, one per vertex."""
    poly = newton_vertices(ideal)
    sigma = ideal.sigma
    n = sigma.ambient_rank
    vertex_of = {}
    for a in poly.vertices:
        normals = list(sigma.facet_normals) + [la.sub(b, a) for b in poly.vertices if b != a]
        cone = Cone.from_inequalities(normals, n)
        vertex_of[cone] = a
    fan = Fan(vertex_of, n)
    return DualFan(fan, {c: vertex_of[c] for c in fan.maximal_cones}, poly)
