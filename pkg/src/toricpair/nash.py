"""Z-Nash and log-Nash divisors of a toric pair as minimal lattice points.

Let S = {v in sigma ∩ N, v != 0 : ord(v) >= 1}, the valuations centred in
Z.  Z-Nash divisors are the minimal elements of S for the order
``v <= w  iff  w - v in sigma``; log-Nash divisors are the minimal elements
for the finer order that additionally asks v, w and w - v to share one
cone of the dual fan.

Both sets are finite and lie in the union of the Hilbert bases of the
maximal dual-fan cones.  If v is log-minimal and v = h_1 + ... + h_m in
the Hilbert basis of its own cone with m >= 2, minimality forces
ord(v - h_k) = 0 for every k, and since ord is linear there that gives
ord(v) = 0.  So m = 1.  Every Z-minimal point is log-minimal, hence the
same bound covers both flavors.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import lattice as la
from .cones import Cone, enumerate_box, face_containing, hilbert_basis
from .invariants import MldKind, ToricPair, classify, format_fraction, mld
from .lattice import IntVector


class Flavor(enum.Enum):
    Z_NASH = "z-nash"
    LOG_NASH = "log-nash"


@dataclass(frozen=True)
class DivisorSet:
    members: tuple[IntVector, ...]
    flavor: Flavor
    enumeration_bound: int
    certified: bool

    def __contains__(self, v) -> bool:
        return tuple(v) in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "flavor": self.flavor.value,
            "members": [list(v) for v in self.members],
            "certified": self.certified,
            "bound": self.enumeration_bound,
        }


class NashData:
    """Per-pair caches shared by the two orders (Hilbert bases of fan cones)."""

    def __init__(self, pair: ToricPair):
        self.pair = pair

    @cached_property
    def sigma_hilbert(self) -> tuple[IntVector, ...]:
        return tuple(hilbert_basis(self.pair.sigma))

    @cached_property
    def cone_hilbert(self) -> dict:
        return {c: tuple(hilbert_basis(c)) for c in self.pair.dual.fan.maximal_cones}

    @cached_property
    def candidates(self) -> tuple[IntVector, ...]:
        """Hilbert-basis points of the dual fan lying over Z."""
        pts = {h for hb in self.cone_hilbert.values() for h in hb if self.pair.order(h) >= 1}
        return tuple(sorted(pts))

    @cached_property
    def completeness_bound(self) -> int:
        return max((max(abs(x) for x in v) for v in self.candidates), default=1)

    def in_s(self, v: Sequence[int]) -> bool:
        return any(v) and self.pair.sigma.contains(v) and self.pair.order(v) >= 1

    def is_z_minimal(self, v: IntVector) -> bool:
        if not self.in_s(v):
            return False
        sigma = self.pair.sigma
        for u in self.sigma_hilbert:
            rest = la.sub(v, u)
            if sigma.contains(rest) and self.in_s(rest):
                return False
        return True

    def own_cone(self, v: IntVector) -> tuple[Cone, tuple[IntVector, ...]]:
        """Smallest dual-fan cone containing v, with its Hilbert basis."""
        for c, hb in self.cone_hilbert.items():
            if c.contains(v):
                tau = face_containing(c, v)
                return tau, tuple(h for h in hb if tau.contains(h))
        raise ValueError("point outside fan support")

    def is_log_minimal(self, v: IntVector) -> bool:
        if not self.in_s(v):
            return False
        tau, hb = self.own_cone(v)
        for u in hb:
            rest = la.sub(v, u)
            if tau.contains(rest) and any(rest) and self.pair.order(rest) >= 1:
                return False
        return True


def _nash_data(pair: ToricPair) -> NashData:
    # one cache per pair object; ToricPair is frozen so stash it in __dict__
    data = pair.__dict__.get("_nash_data")
    if data is None:
        data = NashData(pair)
        pair.__dict__["_nash_data"] = data
    return data


def orthant_bound(pair: ToricPair) -> int:
    """Largest exponent coordinate (the certified bound on the orthant)."""
    return max(max(a) for a in pair.exponents)


def completeness_bound(pair: ToricPair) -> int:
    """Sup-norm bound that provably contains every Z-Nash and log-Nash member."""
    return _nash_data(pair).completeness_bound


def _select(pair: ToricPair, bound: int | None, flavor: Flavor) -> DivisorSet:
    data = _nash_data(pair)
    needed = data.completeness_bound
    if flavor is Flavor.Z_NASH and pair.is_standard_orthant:
        # minimal points of S in the orthant are 0/1 vectors
        needed = 1
        bound = max(bound or 0, orthant_bound(pair))
    if bound is None:
        bound = needed
    if bound < 1:
        raise ValueError("bound must be >= 1")
    test = data.is_z_minimal if flavor is Flavor.Z_NASH else data.is_log_minimal
    members = tuple(
        v for v in data.candidates if max(abs(x) for x in v) <= bound and test(v)
    )
    return DivisorSet(members, flavor, bound, bound >= needed)


def z_nash(pair: ToricPair, bound: int | None = None) -> DivisorSet:
    """Minimal elements of S under v <= w iff w - v in sigma."""
    return _select(pair, bound, Flavor.Z_NASH)


def log_nash(pair: ToricPair, bound: int | None = None) -> DivisorSet:
    """Minimal elements of S under the dual-fan refined order."""
    return _select(pair, bound, Flavor.LOG_NASH)


def is_z_nash(pair: ToricPair, v: Sequence[int]) -> bool:
    return _nash_data(pair).is_z_minimal(tuple(v))


def is_log_nash(pair: ToricPair, v: Sequence[int]) -> bool:
    return _nash_data(pair).is_log_minimal(tuple(v))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: IntVector | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "witness": None if self.witness is None else list(self.witness),
            **self.details,
        }


def check_lognash_computes_mld(pair: ToricPair) -> Verdict:
    """Some log-Nash divisor attains the (finite) mld."""
    m = mld(pair)
    if not m.is_finite:
        raise ValueError("mld is -inf; use check_negative_lognash")
    for v in log_nash(pair).members:
        if pair.discrepancy(v) == m.value:
            return Verdict(True, v, {"value": format_fraction(m.value)})
    return Verdict(False, None, {"value": format_fraction(m.value)})


def check_negative_lognash(pair: ToricPair) -> Verdict:
    """Some log-Nash divisor has negative log-discrepancy (mld = -inf)."""
    m = mld(pair)
    if m.is_finite:
        raise ValueError("mld is finite; use check_lognash_computes_mld")
    members = log_nash(pair)
    for ray in classify(pair).d_part:
        if ray in members:
            return Verdict(True, ray, {"value": format_fraction(pair.discrepancy(ray))})
    for v in members:
        if pair.discrepancy(v) < 0:
            return Verdict(True, v, {"value": format_fraction(pair.discrepancy(v)), "via": "member scan"})
    return Verdict(False)


def check_all_mld_witnesses_lognash(pair: ToricPair, bound: int) -> Verdict:
    """Every primitive box point over Z attaining the mld is log-Nash.

    Witnesses with ord = 0 (divisors not lying over Z) are returned in
    ``details["ord_zero_witnesses"]`` and play no part in the verdict.
    """
    m = mld(pair)
    if m.kind is MldKind.MINUS_INFINITY:
        raise ValueError("mld is -inf; witnesses are unbounded")
    members = set(log_nash(pair).members)
    over_z, off_z, missing = [], [], []
    for v in enumerate_box(pair.sigma, bound):
        if not la.is_primitive(v) or pair.discrepancy(v) != m.value:
            continue
        if pair.order(v) >= 1:
            over_z.append(v)
            if v not in members:
                missing.append(v)
        else:
            off_z.append(v)
    details = {
        "witnesses": [list(v) for v in over_z],
        "ord_zero_witnesses": [list(v) for v in off_z],
    }
    if missing:
        details["missing"] = [list(v) for v in missing]
        return Verdict(False, missing[0], details)
    return Verdict(True, over_z[0] if over_z else None, details)
