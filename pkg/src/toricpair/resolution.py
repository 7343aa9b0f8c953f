"""Toric Z-resolutions and log-resolutions by star subdivision.

Used as an independent oracle: sampled log-resolutions give an upper
approximation of the log-essential divisors, and their smooth cones are
where the discrepancy formula is re-derived from K_Y = -sum D.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lattice as la
from .cones import Cone, Fan, faces, hilbert_basis, is_smooth, refines, star_subdivide, triangulate
from .invariants import ToricPair, format_fraction
from .lattice import IntVector
from .nash import Flavor

DEFAULT_BUDGET = 500


class ResolutionBudgetError(RuntimeError):
    pass


def subdivision_budget() -> int:
    return int(os.environ.get("TORICPAIR_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class ResolutionModel:
    fan: Fan
    base: ToricPair

    @property
    def exceptional_rays(self) -> tuple[IntVector, ...]:
        sigma_rays = set(self.base.sigma.rays)
        return tuple(r for r in self.fan.rays if r not in sigma_rays)

    @property
    def z_preimage_rays(self) -> tuple[IntVector, ...]:
        return tuple(r for r in self.fan.rays if self.base.order(r) >= 1)

    def to_json(self) -> dict:
        return {
            "fan": self.fan.to_json(),
            "exceptional_rays": [list(r) for r in self.exceptional_rays],
            "discrepancies": {
                ",".join(map(str, r)): format_fraction(self.base.discrepancy(r)) for r in self.fan.rays
            } if self.base.qg is not None else "skipped: not q-gorenstein",
        }


def _check_support(fan: Fan, pair: ToricPair) -> None:
    if fan.support_hull != pair.sigma:
        raise ValueError("fan support differs from sigma")


def _ord_vanishes(cone: Cone, pair: ToricPair) -> bool:
    # ord >= 0 on sigma, so it vanishes on relint(cone) iff one exponent kills every ray
    return any(all(la.dot(r, a) == 0 for r in cone.rays) for a in pair.exponents)


def _iso_off_z(fan: Fan, pair: ToricPair) -> bool:
    """Every cone whose orbit lies outside Z is a face of sigma (untouched by f)."""
    sigma_faces = set(faces(pair.sigma))
    return all(c in sigma_faces for c in fan.cones if _ord_vanishes(c, pair))


def is_log_resolution(fan: Fan, pair: ToricPair) -> bool:
    """Smooth, refines the dual fan, and an isomorphism over X minus Z."""
    _check_support(fan, pair)
    return (
        all(is_smooth(c) for c in fan.maximal_cones)
        and refines(fan, pair.dual.fan)
        and _iso_off_z(fan, pair)
    )


def is_z_resolution(fan: Fan, pair: ToricPair) -> bool:
    """Smooth, an isomorphism off Z, and the preimage of Z is a divisor."""
    _check_support(fan, pair)
    if not all(is_smooth(c) for c in fan.maximal_cones) or not _iso_off_z(fan, pair):
        return False
    for c in fan.cones:
        if c.rays and not _ord_vanishes(c, pair):
            if not any(pair.order(r) >= 1 for r in c.rays):
                return False
    return True


def _point_key(v: IntVector) -> tuple:
    return (sum(abs(x) for x in v), v)


def _volume(c: Cone) -> int:
    """Normalized volume: multiplicity summed over a triangulation."""
    if c.is_simplicial:
        return c.multiplicity
    return sum(Cone(s, c.ambient_rank).multiplicity for s in triangulate(c))


def _smoothing_step(fan: Fan, rng: random.Random | None) -> IntVector | None:
    """Next subdivision point, or None when every cone is smooth."""
    bad = [c for c in fan.maximal_cones if not is_smooth(c)]
    if not bad:
        return None
    top = max(_volume(c) for c in bad)
    tau = min((c for c in bad if _volume(c) == top), key=lambda c: c.rays)
    pts = sorted((h for h in hilbert_basis(tau) if h not in tau.rays), key=_point_key)
    if not pts:
        # Hilbert basis is the ray set: split a minimal non-simplicial face
        face = min((f for f in faces(tau) if not f.is_simplicial), key=lambda f: (f.dim, f.rays))
        return la.primitivize(face.interior_point())
    if rng is None:
        return pts[0]
    return rng.choice(pts)


def _resolve(fan: Fan, rng: random.Random | None, budget: int) -> tuple[Fan, int]:
    steps = 0
    while (v := _smoothing_step(fan, rng)) is not None:
        if steps >= budget:
            raise ResolutionBudgetError("resolution budget exceeded")
        fan = star_subdivide(fan, v)
        steps += 1
    return fan, steps


def _random_blowups(fan: Fan, pair: ToricPair, rng: random.Random, count: int) -> Fan:
    # blowing up a smooth fan at rho_i + rho_j keeps it smooth
    for _ in range(count):
        pairs = sorted({
            la.add(r, s)
            for c in fan.maximal_cones
            for i, r in enumerate(c.rays)
            for s in c.rays[i + 1:]
            if pair.order(la.add(r, s)) >= 1
        })
        if not pairs:
            break
        fan = star_subdivide(fan, la.primitivize(rng.choice(pairs)))
    return fan


def sample_log_resolution(pair: ToricPair, seed: int | None = None, extra: int = 0,
                          budget: int | None = None) -> ResolutionModel:
    """Resolve the dual fan by star subdivisions.

    Without a seed, the default deterministic rule applies (largest
    multiplicity cone, Hilbert-basis point of least coordinate sum).  With a
    seed, subdivision points are drawn at random and ``extra`` additional
    blow-ups at ord-positive points are performed.
    """
    budget = subdivision_budget() if budget is None else budget
    rng = None if seed is None else random.Random(seed)
    fan, _ = _resolve(pair.dual.fan, rng, budget)
    if rng is not None and extra:
        fan = _random_blowups(fan, pair, rng, extra)
    return ResolutionModel(fan, pair)


def sample_z_resolution(pair: ToricPair, seed: int | None = None, extra: int = 0,
                        budget: int | None = None) -> ResolutionModel:
    """Resolve sigma itself, then blow up cones over Z that carry no Z-divisor."""
    budget = subdivision_budget() if budget is None else budget
    rng = None if seed is None else random.Random(seed)
    fan, steps = _resolve(Fan.from_cone(pair.sigma), rng, budget)
    while True:
        bad = [c for c in fan.cones
               if c.rays and not _ord_vanishes(c, pair)
               and not any(pair.order(r) >= 1 for r in c.rays)]
        if not bad:
            break
        if steps >= budget:
            raise ResolutionBudgetError("resolution budget exceeded")
        tau = min(bad, key=lambda c: (c.dim, c.rays))
        fan = star_subdivide(fan, la.primitivize(tau.interior_point()))
        steps += 1
    if rng is not None and extra:
        fan = _random_blowups(fan, pair, rng, extra)
    return ResolutionModel(fan, pair)


def eq1_crosscheck(model: ResolutionModel, v: Sequence[int]) -> bool:
    """Compare <v, w> - ord(v) against the discrepancy read off the smooth model.

    The second route solves for the character m with div(chi^m) = r K_X on
    sigma, pulls it back (ord_v f^*(r K_X) = <v, m>), takes the local
    generator of the ideal on a smooth cone containing v for ord_v(Z), and
    uses ord_v(K_Y) = -1 for every invariant prime divisor.
    """
    v = tuple(v)
    if v not in model.fan.rays:
        raise ValueError(f"{v} is not a ray of the resolution")
    pair = model.base
    direct = pair.discrepancy(v)

    r = pair.require_qg().index
    sigma = pair.sigma
    m = la.solve(sigma.rays, [-r] * len(sigma.rays), sigma.ambient_rank)
    if m is None or any(x.denominator != 1 for x in m):
        return False
    pullback_rk = la.dot(v, m)
    tau = next(c for c in model.fan.maximal_cones if v in c.rays)
    centre = tau.interior_point()
    local = min(pair.exponents, key=lambda a: (la.dot(centre, a), a))
    if any(la.dot(rho, local) != pair.order(rho) for rho in tau.rays):
        return False  # ideal not principal on this chart
    ord_z = la.dot(v, local)
    ord_ky = -1
    relative_canonical = Fraction(r * ord_ky - pullback_rk, r)
    via_eq1 = Fraction(-pullback_rk - r * ord_z, r)
    via_definition = relative_canonical - ord_z + 1
    return direct == via_eq1 == via_definition


def essential_overapprox(pair: ToricPair, k: int, seed: int = 0,
                         flavor: Flavor = Flavor.LOG_NASH, extra: int = 2) -> set[IntVector]:
    """Divisors over Z present in every one of k sampled resolutions."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sampler = sample_log_resolution if flavor is Flavor.LOG_NASH else sample_z_resolution
    common = None
    for i in range(k):
        # sample 0 is the deterministic resolution; the rest are randomized
        if i == 0:
            model = sampler(pair)
        else:
            model = sampler(pair, seed=seed + i, extra=extra)
        rays = {r for r in model.fan.rays if pair.order(r) >= 1}
        common = rays if common is None else common & rays
    return common
