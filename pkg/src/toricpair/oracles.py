"""Brute-force oracles that share nothing with the fast paths except the input.

``brute_force_nash`` compares every pair of lattice points in a box: a
point v of S is dropped as soon as some s in S with s below v in the
relevant order exists.  The pair loop runs over differences d = v - s and
is vectorized with numpy over all v at once.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil

import numpy as np

from . import lattice as la
from .cones import Cone, dual_cone
from .invariants import ToricPair
from .lattice import IntVector
from .nash import Flavor


def dominator_radius(sigma: Cone, bound: int) -> int:
    """Sup-norm radius containing every s in sigma with v - s in sigma, |v| <= bound."""
    if all(x >= 0 for r in sigma.rays for x in r):
        return bound  # then 0 <= s <= v coordinatewise
    ell = (0,) * sigma.ambient_rank
    for u in dual_cone(sigma).rays:
        ell = la.add(ell, u)
    top = bound * sum(abs(x) for x in ell)
    return max(bound, max(ceil(Fraction(max(abs(x) for x in r) * top, la.dot(ell, r)))
                          for r in sigma.rays))


def _masks(cone: Cone, pts: np.ndarray) -> np.ndarray:
    ok = np.ones(pts.shape[:-1], dtype=bool)
    for u in cone.facet_normals:
        ok &= pts @ np.array(u, dtype=np.int64) >= 0
    for e in cone.equations:
        ok &= pts @ np.array(e, dtype=np.int64) == 0
    return ok


def _shift_or(acc: np.ndarray, src: np.ndarray, d: IntVector, gate: np.ndarray) -> None:
    # acc[x] |= gate[x] & src[x - d], restricted to the grid
    tgt, srcs = [], []
    for di, size in zip(d, acc.shape):
        if abs(di) >= size:
            return
        if di >= 0:
            tgt.append(slice(di, size))
            srcs.append(slice(0, size - di))
        else:
            tgt.append(slice(0, size + di))
            srcs.append(slice(-di, size))
    tgt, srcs = tuple(tgt), tuple(srcs)
    acc[tgt] |= gate[tgt] & src[srcs]


def brute_force_nash(pair: ToricPair, bound: int, flavor: Flavor) -> set[IntVector]:
    """Minimal points of S among all lattice points of sigma with sup-norm <= bound."""
    n = pair.rank
    radius = dominator_radius(pair.sigma, bound)
    lo = 0 if all(x >= 0 for r in pair.sigma.rays for x in r) else -radius
    axis = np.arange(lo, radius + 1, dtype=np.int64)
    pts = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1)
    in_sigma = _masks(pair.sigma, pts)
    order = np.min(np.stack([pts @ np.array(a, dtype=np.int64) for a in pair.exponents]), axis=0)
    in_s = in_sigma & (order >= 1)

    dominated = np.zeros_like(in_s)
    if flavor is Flavor.Z_NASH:
        regions = [(in_sigma, in_s)]
    else:
        regions = []
        for tau in pair.dual.fan.maximal_cones:
            m = _masks(tau, pts)
            regions.append((m, in_s & m))
    for region, s_region in regions:
        for idx in zip(*np.nonzero(region)):
            d = tuple(int(pts[idx][i]) for i in range(n))
            if any(d):
                _shift_or(dominated, s_region, d, region)

    minimal = in_s & ~dominated
    inside = np.max(np.abs(pts), axis=-1) <= bound
    return {tuple(int(x) for x in pts[idx]) for idx in zip(*np.nonzero(minimal & inside))}
