"""Demazure roots of a primitive ray set.

A root of rays ``n_1, ..., n_r`` is a lattice vector ``alpha`` with
``<alpha, n_i> = 1`` for exactly one ray (its distinguished ray) and
``<alpha, n_j> <= 0`` for all others.  Roots only depend on the rays, so no
fan is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from .exact import IntVector, gcd_list, pairing
from .fine import FineInteriorResult, NoFineInteriorError, canonical_closure, fine_interior
from .polytope import LatticePolytope, h_polytope, hull, lattice_points

OriginTag = Literal["normal_fan_delta", "normal_fan_canonical", "support_set"]


class RootPolytopeUnboundedError(ValueError):
    def __init__(self, msg: str = "root polytope unbounded"):
        super().__init__(msg)


def positively_spans(rays: Iterable[IntVector]) -> bool:
    """True iff the cone generated by ``rays`` is all of R^n."""
    rays = list(rays)
    if not rays:
        return False
    n = len(rays[0])
    P = hull(rays + [(0,) * n])
    return P.is_full_dimensional and all(h.offset < 0 for h in P.facets)


@dataclass(frozen=True)
class RaySet:
    rays: tuple[IntVector, ...]
    origin_tag: OriginTag

    def __post_init__(self):
        rays = tuple(sorted({tuple(int(x) for x in r) for r in self.rays}))
        if len(rays) != len(self.rays):
            raise ValueError("rays must be pairwise distinct")
        for r in rays:
            if gcd_list(r) != 1:
                raise ValueError(f"ray {r} is not primitive")
        object.__setattr__(self, "rays", rays)

    @property
    def dim(self) -> int:
        return len(self.rays[0])


@dataclass(frozen=True, order=True)
class Root:
    alpha: IntVector
    distinguished_ray: IntVector


def roots(R: RaySet) -> list[Root]:
    """All roots of the ray set, sorted by alpha."""
    if not positively_spans(R.rays):
        raise RootPolytopeUnboundedError()
    n = R.dim
    found: list[Root] = []
    for i, ni in enumerate(R.rays):
        hs = [(ni, 1), (tuple(-x for x in ni), -1)]
        hs += [(tuple(-x for x in nj), 0) for j, nj in enumerate(R.rays) if j != i]
        P = h_polytope(hs, n)
        if not P.bounded:
            raise RootPolytopeUnboundedError()
        for alpha in lattice_points(P):
            found.append(Root(alpha, ni))
    found.sort()
    for root in found:
        _recheck(root, R.rays)
    return found


def _recheck(root: Root, rays) -> None:
    for nj in rays:
        v = pairing(root.alpha, nj)
        ok = v == 1 if nj == root.distinguished_ray else v <= 0
        if not ok:
            raise RuntimeError(f"root {root.alpha} fails its defining inequality at ray {nj}")


def root_vectors(rs: Iterable[Root]) -> list[IntVector]:
    return sorted(r.alpha for r in rs)


@dataclass(frozen=True)
class RootComparison:
    R_delta: tuple[Root, ...]
    R_canonical: tuple[Root, ...]
    R_support: tuple[Root, ...]
    difference: tuple[Root, ...]

    @property
    def inclusion_holds(self) -> bool:
        return set(self.R_delta) <= set(self.R_canonical)

    @property
    def support_equality_holds(self) -> bool:
        return root_vectors(self.R_support) == root_vectors(self.R_canonical)


def root_set_difference(delta: LatticePolytope, scale: int = 1, fine: FineInteriorResult | None = None) -> RootComparison:
    """Roots of the normal fans of delta and C(delta), and of S_F(delta).

    The support-set roots stand in for the roots of the simplicial fan whose
    rays are S_F(delta).
    """
    fi = fine if fine is not None else fine_interior(delta, scale, check_stability=False)
    if fi.is_empty:
        raise NoFineInteriorError()
    cc = canonical_closure(delta, fi)
    r_delta = roots(RaySet(tuple(delta.facet_normals), "normal_fan_delta"))
    r_can = roots(RaySet(tuple(cc.C.facet_normals), "normal_fan_canonical"))
    r_sup = roots(RaySet(fi.support, "support_set"))
    delta_alphas = {r.alpha for r in r_delta}
    diff = tuple(r for r in r_can if r.alpha not in delta_alphas)
    return RootComparison(tuple(r_delta), tuple(r_can), tuple(r_sup), diff)
