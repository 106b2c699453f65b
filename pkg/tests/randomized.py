"""Seeded random instances shared by the property suites and the acceptance run.

The pool is computed once per process; every property iterates over all of
its members, so each property sees the same 210 instances in dims 2-4.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from toric_moduli import (
    LatticePolytope,
    canonical_closure,
    fine_interior,
    generic_sample,
    hull,
    interior_lattice_points,
    kernel_basis,
    root_set_difference,
)
from toric_moduli.fine import CanonicalClosureResult, FineInteriorResult
from toric_moduli.kodaira import KernelReport
from toric_moduli.laurent import LaurentPolynomial
from toric_moduli.roots import RootComparison

# (dimension, count, coordinate box, min points, max points, max |normal entry|)
POOL_PLAN = (
    (2, 100, 3, 3, 7, None),
    (3, 70, 2, 4, 7, None),
    (4, 20, 1, 6, 9, None),
    (4, 20, 2, 5, 8, 6),
)
POOL_SEED = 20240611


def random_polytope(rng: random.Random, n: int, box: int, kmin: int, kmax: int,
                    max_normal: int | None = None, need_interior: bool = False) -> LatticePolytope:
    while True:
        k = rng.randint(kmin, kmax)
        P = hull([tuple(rng.randint(-box, box) for _ in range(n)) for _ in range(k)])
        if not P.is_full_dimensional:
            continue
        if max_normal is not None and max(abs(x) for h in P.facets for x in h.normal) > max_normal:
            continue
        if need_interior and not interior_lattice_points(P):
            continue
        return P


def random_point_sets(count: int, seed: int, dims=(2, 3, 4)):
    """Small random point sets, not necessarily full-dimensional."""
    rng = random.Random(seed)
    for i in range(count):
        n = dims[i % len(dims)]
        box = 3 if n == 2 else 2
        yield [tuple(rng.randint(-box, box) for _ in range(n)) for _ in range(rng.randint(1, n + 4))]


def random_full_polytopes(count: int, seed: int, dims=(2, 3, 4)):
    rng = random.Random(seed)
    for i in range(count):
        n = dims[i % len(dims)]
        yield random_polytope(rng, n, 2 if n < 4 else 1, n + 1, n + 4)


@dataclass
class Instance:
    delta: LatticePolytope
    fine: FineInteriorResult
    closure: CanonicalClosureResult
    roots: RootComparison
    f: LaurentPolynomial
    ambient: KernelReport
    family: KernelReport

    @property
    def n(self) -> int:
        return self.delta.ambient_dim


@lru_cache(maxsize=1)
def pool() -> tuple[Instance, ...]:
    rng = random.Random(POOL_SEED)
    out = []
    for n, count, box, kmin, kmax, max_normal in POOL_PLAN:
        for _ in range(count):
            delta = random_polytope(rng, n, box, kmin, kmax, max_normal, need_interior=True)
            fine = fine_interior(delta, 1, check_stability=True)
            closure = canonical_closure(delta, fine)
            rc = root_set_difference(delta, fine=fine)
            f = generic_sample(delta, seed=rng.randrange(2**32))
            ambient = kernel_basis(delta, f, "ambient", fine=fine, strict=False)
            family = kernel_basis(delta, f, "family", fine=fine, strict=False)
            out.append(Instance(delta, fine, closure, rc, f, ambient, family))
    return tuple(out)
