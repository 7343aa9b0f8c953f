"""Seeded generator of random Q-Gorenstein toric pairs for property checks."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import lattice as la
from .cones import Cone
from .invariants import ToricPair, make_pair
from .newton import InvalidIdealError

# small Q-Gorenstein cones; each entry is a list of primitive rays
CONE_LIBRARY = {
    2: [
        [(1, 0), (0, 1)],
        [(1, 0), (1, 2)],
        [(1, 0), (1, 3)],
        [(1, 0), (2, 3)],
    ],
    3: [
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        [(1, 0, 0), (0, 1, 0), (1, 1, 2)],
        [(1, 0, 0), (0, 1, 0), (1, 1, 3)],
        [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)],
    ],
}


@dataclass(frozen=True)
class CorpusInstance:
    index: int
    seed: int
    cone_rays: tuple
    exponents: tuple

    def pair(self) -> ToricPair:
        return make_pair(self.exponents, self.cone_rays)

    def to_json(self) -> dict:
        return {
            "dim": len(self.cone_rays[0]),
            "cone_rays": [list(r) for r in self.cone_rays],
            "ideal_exponents": [list(a) for a in self.exponents],
        }


def random_instance(rng: random.Random, dim: int, max_exp: int, orthant_only: bool = False,
                    max_generators: int = 4) -> tuple[tuple, tuple]:
    """Draw (cone rays, exponents) until the standing hypothesis holds."""
    library = CONE_LIBRARY[dim]
    while True:
        rays = library[0] if orthant_only else rng.choice(library)
        sigma = Cone(rays)
        # a per-instance cap keeps low-degree (often log-canonical) ideals common
        cap = rng.randint(1, max_exp)
        lo = 0 if orthant_only or rays == library[0] else -cap
        exps = []
        for _ in range(rng.randint(1, max_generators)):
            while True:
                a = tuple(rng.randint(lo, cap) for _ in range(dim))
                if not la.is_zero(a) and all(la.dot(r, a) >= 0 for r in sigma.rays):
                    break
            exps.append(a)
        try:
            make_pair(exps, rays)
        except InvalidIdealError:
            continue
        return tuple(map(tuple, rays)), tuple(exps)


def generate(n_instances: int, dim: int, max_exp: int, seed: int,
             orthant_only: bool = False) -> list[CorpusInstance]:
    """Reproducible corpus; instance i uses its own sub-seed so it can be replayed alone."""
    master = random.Random(seed)
    out = []
    for i in range(n_instances):
        sub = master.randrange(2**32)
        rays, exps = random_instance(random.Random(sub), dim, max_exp, orthant_only)
        out.append(CorpusInstance(i, sub, rays, exps))
    return out
