"""Rational polyhedral cones and fans in N_R = R^n.

A :class:`Cone` is built from integer generators and immediately computes
its inner description (linear equations of its span plus inward facet
normals), so every instance is immutable and safe to share between
threads.  Pointed cones are reduced to their primitive extreme rays;
non-pointed cones (which only show up as duals of lower-dimensional cones)
keep their deduplicated generators.

Fans store maximal cones only; faces are materialized on demand.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from . import lattice as la
from .lattice import IntVector


class Cone:
    """Cone generated by integer vectors in Z^n."""

    def __init__(self, generators: Iterable[Sequence[int]], ambient_rank: int | None = None):
        gens = [tuple(int(x) for x in g) for g in generators]
        if ambient_rank is None:
            if not gens:
                raise ValueError("ambient_rank is required for the zero cone")
            ambient_rank = len(gens[0])
        n = ambient_rank
        if any(len(g) != n for g in gens):
            raise ValueError("generators of different lengths")
        gens = tuple(sorted({la.primitivize(g) for g in gens if not la.is_zero(g)}))
        self.ambient_rank = n
        self.equations, self.facet_normals, self.is_pointed, self.rays = _describe(gens, n)
        self._hash = hash((n, self.rays))

    @classmethod
    def from_inequalities(cls, normals: Iterable[Sequence[int]], ambient_rank: int) -> "Cone":
        """The cone {x : <u, x> >= 0 for every u in normals}."""
        return dual_cone(cls(list(normals), ambient_rank))

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def is_simplicial(self) -> bool:
        return self.is_pointed and len(self.rays) == self.dim

    def contains(self, v: Sequence[int]) -> bool:
        return all(la.dot(e, v) == 0 for e in self.equations) and all(
            la.dot(u, v) >= 0 for u in self.facet_normals
        )

    def contains_in_relint(self, v: Sequence[int]) -> bool:
        return all(la.dot(e, v) == 0 for e in self.equations) and all(
            la.dot(u, v) > 0 for u in self.facet_normals
        )

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays)

    def interior_point(self) -> IntVector:
        """A lattice point in the relative interior (sum of the rays)."""
        pt = (0,) * self.ambient_rank
        for r in self.rays:
            pt = la.add(pt, r)
        return pt

    @cached_property
    def saturated_basis(self) -> tuple[IntVector, ...]:
        """Z-basis of span(C) intersected with Z^n."""
        return tuple(la.integer_kernel(self.equations, self.ambient_rank))

    @cached_property
    def multiplicity(self) -> int:
        """Index of the sublattice generated by the rays in the saturated lattice."""
        if not self.is_simplicial:
            raise ValueError("multiplicity is only defined for simplicial cones")
        if not self.rays:
            return 1
        coords = [la.lattice_coordinates(self.saturated_basis, r) for r in self.rays]
        return abs(la.det(coords))

    def key(self) -> tuple:
        return (self.ambient_rank, self.rays)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cone) and self.key() == other.key()

    def __lt__(self, other: "Cone") -> bool:
        return (self.dim, self.rays) < (other.dim, other.rays)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Cone({[list(r) for r in self.rays]})"

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rays]


@lru_cache(maxsize=65536)
def _describe(gens: tuple[IntVector, ...], n: int):
    """(equations, facet normals, pointed flag, extreme generators) of cone(gens)."""
    if len(gens) > 2 * n:
        return _describe_incremental(gens, n)
    return _describe_direct(gens, n)


def _describe_direct(gens: tuple[IntVector, ...], n: int):
    equations = tuple(la.nullspace(gens, n)) if gens else tuple(
        tuple(int(i == j) for j in range(n)) for i in range(n)
    )
    facets = tuple(_facets(list(gens), equations, n))
    pointed = la.rank(list(equations) + list(facets), n) == n
    if pointed:
        gens = tuple(g for g in gens if _is_extreme(g, facets, equations, n))
    else:
        gens = _canonical_generators(gens, equations, facets, n)
    return equations, facets, pointed, gens


def _canonical_generators(gens, equations, facets, n) -> tuple[IntVector, ...]:
    """+/- an RREF basis of the lineality space, plus the rays of the pointed part
    in its orthogonal complement."""
    lineality = la.nullspace(list(equations) + list(facets), n)
    rows, _ = la.rref(lineality, n)
    basis = [la.clear_denominators(r) for r in rows]
    gram = [[la.dot(a, b) for b in basis] for a in basis]
    projected = []
    for g in gens:
        c = la.solve(gram, [la.dot(b, g) for b in basis], len(basis))
        rest = [g[j] - sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(n)]
        if any(rest):
            projected.append(la.clear_denominators(rest))
    out = set(basis) | {la.scale(-1, b) for b in basis}
    if projected:
        out.update(_describe_direct(tuple(sorted(set(projected))), n)[3])
    return tuple(sorted(out))


def _describe_incremental(gens: tuple[IntVector, ...], n: int):
    # grow the hull one generator at a time, keeping only extreme ones,
    # so the facet search never sees more than a handful of vectors
    kept: tuple[IntVector, ...] = gens[:n]
    equations, facets, pointed, extreme = _describe_direct(kept, n)
    for g in gens[n:]:
        inside = (all(la.dot(e, g) == 0 for e in equations)
                  and all(la.dot(u, g) >= 0 for u in facets))
        if inside:
            continue
        if not pointed:
            return _describe_direct(gens, n)
        kept = tuple(sorted(set(extreme) | {g}))
        equations, facets, pointed, extreme = _describe_direct(kept, n)
    if not pointed:
        return _describe_direct(gens, n)
    return equations, facets, pointed, extreme


def _facets(gens: list[IntVector], equations: Sequence[IntVector], n: int) -> list[IntVector]:
    d = n - len(equations)
    if d == 0:
        return []
    found = set()
    for subset in combinations(gens, d - 1):
        u = la.normal_vector(list(subset) + list(equations), n)
        if u is None:
            continue
        signs = {(la.dot(u, g) > 0) - (la.dot(u, g) < 0) for g in gens}
        if -1 not in signs:
            found.add(u)
        elif 1 not in signs:
            found.add(la.scale(-1, u))
    return sorted(found)


def _is_extreme(g, facets, equations, n) -> bool:
    tight = [u for u in facets if la.dot(u, g) == 0]
    return la.rank(tight + list(equations), n) == n - 1


def zero_cone(n: int) -> Cone:
    return Cone([], n)


def orthant(n: int) -> Cone:
    return Cone([tuple(int(i == j) for j in range(n)) for i in range(n)])


def dual_cone(c: Cone) -> Cone:
    """{u : <v, u> >= 0 for all v in C}, generated by facet normals and +/- C^perp."""
    gens = list(c.facet_normals)
    for e in c.equations:
        gens.append(e)
        gens.append(la.scale(-1, e))
    return Cone(gens, c.ambient_rank)


def is_smooth(c: Cone) -> bool:
    """Rays form part of a Z-basis of N (all elementary divisors equal 1)."""
    if not c.is_pointed:
        return False
    return _smooth_rays(c.rays, c.dim)


@lru_cache(maxsize=65536)
def _smooth_rays(rays: tuple[IntVector, ...], dim: int) -> bool:
    if not rays:
        return True
    if len(rays) != dim:
        return False
    return all(e == 1 for e in la.elementary_divisors(rays))


def faces(c: Cone) -> list[Cone]:
    """All faces of a pointed cone, from {0} up to the cone itself."""
    if not c.is_pointed:
        raise ValueError("face enumeration requires a pointed cone")
    rays = c.rays
    tight = [frozenset(i for i, r in enumerate(rays) if la.dot(u, r) == 0) for u in c.facet_normals]
    family = {frozenset(range(len(rays)))}
    frontier = list(family)
    while frontier:
        nxt = []
        for s in frontier:
            for t in tight:
                f = s & t
                if f not in family:
                    family.add(f)
                    nxt.append(f)
        frontier = nxt
    out = [Cone([rays[i] for i in sorted(s)], c.ambient_rank) for s in family]
    return sorted(out)


def face_containing(c: Cone, v: Sequence[int]) -> Cone:
    """Smallest face of c containing v (v must lie in c)."""
    if not c.contains(v):
        raise ValueError("point not in cone")
    normals = [u for u in c.facet_normals if la.dot(u, v) == 0]
    rays = [r for r in c.rays if all(la.dot(u, r) == 0 for u in normals)]
    return Cone(rays, c.ambient_rank)


def triangulate(c: Cone) -> list[tuple[IntVector, ...]]:
    """Split a pointed cone into simplicial cones using only its own rays."""
    if c.is_simplicial:
        return [c.rays]
    apex = c.rays[0]
    out = []
    for u in c.facet_normals:
        if la.dot(u, apex) == 0:
            continue
        facet = Cone([r for r in c.rays if la.dot(u, r) == 0], c.ambient_rank)
        for simplex in triangulate(facet):
            out.append((apex,) + simplex)
    return out


def _parallelepiped_points(rays: Sequence[IntVector]) -> list[IntVector]:
    """Nonzero lattice points sum(l_i r_i), 0 <= l_i < 1, of a full-rank simplex."""
    k = len(rays)
    cols = [[rays[i][j] for i in range(k)] for j in range(k)]  # columns = rays
    # lambda(e_j) solves sum_i l_i r_i = e_j
    gens = []
    for j in range(k):
        e = [int(i == j) for i in range(k)]
        lam = la.solve(cols, e, k)
        gens.append(tuple(x - (x.numerator // x.denominator) for x in lam))
    seen = {tuple([Fraction(0)] * k)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for lam in frontier:
            for g in gens:
                s = tuple((a + b) - ((a + b).numerator // (a + b).denominator) for a, b in zip(lam, g))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    pts = []
    for lam in seen:
        if all(x == 0 for x in lam):
            continue
        p = [sum(lam[i] * rays[i][j] for i in range(k)) for j in range(k)]
        pts.append(tuple(int(x) for x in p))
    return pts


def hilbert_basis(c: Cone) -> list[IntVector]:
    """Minimal generating set of the semigroup C intersected with Z^n.

    Triangulate, collect rays plus fundamental-parallelepiped points of every
    simplex, then drop every element x for which some other candidate y has
    x - y in C.
    """
    if not c.is_pointed:
        raise ValueError("Hilbert basis requires a strongly convex cone")
    if not c.rays:
        return []
    basis = c.saturated_basis
    local = Cone([la.lattice_coordinates(basis, r) for r in c.rays], len(basis))
    cands = set(local.rays)
    for simplex in triangulate(local):
        cands.update(_parallelepiped_points(simplex))
    cands = sorted(cands)
    irreducible = [
        x for x in cands if not any(y != x and local.contains(la.sub(x, y)) for y in cands)
    ]
    n = c.ambient_rank
    out = []
    for x in irreducible:
        out.append(tuple(sum(x[i] * basis[i][j] for i in range(len(basis))) for j in range(n)))
    return sorted(out)


def enumerate_box(c: Cone, bound: int) -> list[IntVector]:
    """Nonzero lattice points of C with sup-norm <= bound, in lexicographic order."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    n = c.ambient_rank
    ranges = []
    for i in range(n):
        # a coordinate that has one sign on every generator keeps it on the cone
        lo = 0 if c.is_pointed and all(r[i] >= 0 for r in c.rays) else -bound
        hi = 0 if c.is_pointed and all(r[i] <= 0 for r in c.rays) else bound
        ranges.append(range(lo, hi + 1))
    return [v for v in product(*ranges) if any(v) and c.contains(v)]


class Fan:
    """A fan given by its maximal cones (sorted canonically)."""

    def __init__(self, cones: Iterable[Cone], ambient_rank: int | None = None):
        cones = list(cones)
        if ambient_rank is None:
            ambient_rank = cones[0].ambient_rank
        uniq = set(cones)
        raysets = {c: frozenset(c.rays) for c in uniq}
        by_ray: dict[IntVector, list[Cone]] = {}
        for c in uniq:
            for r in c.rays:
                by_ray.setdefault(r, []).append(c)
        # a cone is dropped only for a strictly larger one sharing its first ray;
        # the zero cone survives only when it is alone
        maximal = [
            c for c in uniq
            if (not c.rays and len(uniq) == 1)
            or (c.rays and not any(raysets[c] < raysets[d] for d in by_ray[c.rays[0]]))
        ]
        self.ambient_rank = ambient_rank
        self.maximal_cones: tuple[Cone, ...] = tuple(sorted(maximal, key=lambda c: c.rays))

    @classmethod
    def from_cone(cls, c: Cone) -> "Fan":
        """Face fan of a single cone."""
        return cls([c], c.ambient_rank)

    @cached_property
    def cones(self) -> tuple[Cone, ...]:
        out = set()
        for c in self.maximal_cones:
            out.update(faces(c))
        return tuple(sorted(out))

    @cached_property
    def rays(self) -> tuple[IntVector, ...]:
        return tuple(sorted({r for c in self.maximal_cones for r in c.rays}))

    def contains(self, v: Sequence[int]) -> bool:
        return any(c.contains(v) for c in self.maximal_cones)

    def cones_containing(self, v: Sequence[int]) -> list[Cone]:
        return [c for c in self.maximal_cones if c.contains(v)]

    @cached_property
    def support_hull(self) -> Cone:
        return Cone(self.rays, self.ambient_rank) if self.rays else zero_cone(self.ambient_rank)

    def __eq__(self, other) -> bool:
        return isinstance(other, Fan) and self.maximal_cones == other.maximal_cones

    def __hash__(self) -> int:
        return hash(self.maximal_cones)

    def __repr__(self) -> str:
        return f"Fan({[c.to_json() for c in self.maximal_cones]})"

    def to_json(self) -> list[list[list[int]]]:
        return [c.to_json() for c in self.maximal_cones]


def smallest_containing_cone(fan: Fan, v: Sequence[int]) -> Cone:
    """The unique cone of the fan having v in its relative interior."""
    for c in fan.maximal_cones:
        if c.contains(v):
            return face_containing(c, v)
    raise ValueError("point outside fan support")


def star_subdivide(fan: Fan, v: Sequence[int]) -> Fan:
    """Star subdivision of a fan at the primitive lattice point v."""
    v = tuple(v)
    if not la.is_primitive(v):
        raise ValueError("subdivision point must be primitive")
    if not fan.contains(v):
        raise ValueError("point outside fan support")
    if v in fan.rays:
        return fan
    out = []
    for c in fan.maximal_cones:
        if not c.contains(v):
            out.append(c)
            continue
        for u in c.facet_normals:
            if la.dot(u, v) == 0:
                continue
            facet = [r for r in c.rays if la.dot(u, r) == 0]
            out.append(Cone(facet + [v], c.ambient_rank))
    return Fan(out, fan.ambient_rank)


def refines(fine: Fan, coarse: Fan) -> bool:
    """Every cone of ``fine`` lies in some cone of ``coarse``.

    Both fans must have the same support; this is checked on the convex
    hulls of the supports, which is exact for the convex-support fans
    handled by this package.
    """
    if fine.support_hull != coarse.support_hull:
        raise ValueError("fans have different supports")
    return all(any(d.contains_cone(c) for d in coarse.maximal_cones) for c in fine.maximal_cones)
