"""Fine interior, its support, the canonical closure and the Cartier test.

The Fine interior is an intersection over *all* nonzero lattice directions.
It is computed here over a finite candidate set, the nonzero lattice points
of ``scale * conv(facet normals, 0)``; the support vectors are known to lie
in that hull for ``scale = 1``.  Every result carries a certificate that
recomputes the intersection over the next larger scale and compares.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import IntVector, gcd_list
from .polytope import (
    LatticePolytope,
    Polytope,
    RationalHPolytope,
    h_polytope,
    hull,
    lattice_points,
    min_support,
    same_polytope,
)


class NoFineInteriorError(ValueError):
    def __init__(self, msg: str = "no Fine interior"):
        super().__init__(msg)


@dataclass(frozen=True)
class StabilityCertificate:
    base_scale: int
    check_scale: int
    base_candidates: int
    check_candidates: int
    stable: bool


@dataclass(frozen=True)
class FineInteriorResult:
    F: RationalHPolytope
    candidate_normals: tuple[IntVector, ...]
    support: tuple[IntVector, ...]
    stability_certificate: StabilityCertificate | None

    @property
    def dim(self) -> int:
        return self.F.dim

    @property
    def is_empty(self) -> bool:
        return self.F.is_empty


@dataclass(frozen=True)
class CanonicalClosureResult:
    C: RationalHPolytope
    is_lattice: bool
    extra_vertices: tuple[tuple[Fraction, ...], ...]
    support: tuple[IntVector, ...]


def _require_full_dim(P: Polytope) -> None:
    if P.dim != P.ambient_dim:
        raise ValueError(f"polytope of dimension {P.dim} in ambient dimension {P.ambient_dim} is not full-dimensional")


def candidate_normals(delta: Polytope, scale: int = 1) -> list[IntVector]:
    """Nonzero lattice points of ``scale * conv(facet normals of delta, 0)``."""
    if scale < 1:
        raise ValueError("scale must be >= 1")
    _require_full_dim(delta)
    n = delta.ambient_dim
    rays = delta.facet_normals
    P = hull([tuple(scale * x for x in r) for r in rays] + [(0,) * n])
    return [p for p in lattice_points(P) if any(p)]


def _homogenized(vertices) -> list[tuple[IntVector, int]]:
    out = []
    for v in vertices:
        den = 1
        for x in v:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        out.append((tuple(int(x * den) for x in v), den))
    return out


def _pushed_in(delta: Polytope, normals) -> RationalHPolytope:
    n = delta.ambient_dim
    verts = _homogenized(delta.vertices)

    if all(den == 1 for _, den in verts):
        points = [hv for hv, _ in verts]

        def pushed_offset(nu):
            return min(sum(a * b for a, b in zip(p, nu)) for p in points) + 1
    else:
        def pushed_offset(nu):
            return min(Fraction(sum(a * b for a, b in zip(hv, nu)), den) for hv, den in verts) + 1

    # a multiple k*nu only gives <x, nu> >= Min(nu) + 1/k, implied by nu itself
    # (a candidate too, the candidate hull being convex and containing 0)
    prim = sorted(nu for nu in normals if gcd_list(nu) == 1)
    facet_set = set(delta.facet_normals)
    first = [(nu, pushed_offset(nu)) for nu in prim if nu in facet_set]
    coarse = h_polytope(first, n)
    if coarse.is_empty:
        return coarse
    # only candidates cutting the coarse polytope can cut the final one
    corners = _homogenized(coarse.vertices)
    cutting = []
    for nu in prim:
        if nu in facet_set:
            continue
        b = Fraction(pushed_offset(nu))
        num, q = b.numerator, b.denominator
        if any(sum(a * c for a, c in zip(hv, nu)) * q < num * den for hv, den in corners):
            cutting.append((nu, b))
    return h_polytope(first + cutting, n)


def fine_interior(delta: Polytope, scale: int = 1, check_stability: bool = True) -> FineInteriorResult:
    """F(delta) over the candidate normals at ``scale``.

    ``delta`` may be a lattice polytope or a full-dimensional rational one.
    An empty result (``dim == -1``) is a legal outcome.
    """
    _require_full_dim(delta)
    cands = candidate_normals(delta, scale)
    F = _pushed_in(delta, cands)
    support: list[IntVector] = []
    if not F.is_empty:
        for nu in cands:
            if gcd_list(nu) == 1 and min_support(F, nu) == min_support(delta, nu) + 1:
                support.append(nu)
    cert = None
    if check_stability:
        bigger = candidate_normals(delta, scale + 1)
        F2 = _pushed_in(delta, bigger)
        cert = StabilityCertificate(scale, scale + 1, len(cands), len(bigger), same_polytope(F, F2))
    return FineInteriorResult(F, tuple(cands), tuple(sorted(support)), cert)


def support(delta: Polytope, scale: int = 1) -> list[IntVector]:
    """S_F(delta): primitive directions whose pushed-in hyperplane touches F(delta)."""
    fi = fine_interior(delta, scale, check_stability=False)
    if fi.is_empty:
        raise NoFineInteriorError()
    return list(fi.support)


def closure_from_support(delta: Polytope, sup) -> RationalHPolytope:
    return h_polytope([(nu, min_support(delta, nu)) for nu in sup], delta.ambient_dim)


def canonical_closure(delta: Polytope, fine: FineInteriorResult | None = None, scale: int = 1) -> CanonicalClosureResult:
    """C(delta) = {x : <x, nu> >= Min_delta(nu) for nu in S_F(delta)}."""
    if fine is None:
        fine = fine_interior(delta, scale, check_stability=False)
    if fine.is_empty:
        raise NoFineInteriorError()
    C = closure_from_support(delta, fine.support)
    extra = tuple(v for v in C.vertices if not delta.contains(v))
    return CanonicalClosureResult(C, C.is_lattice, extra, fine.support)


def is_cartier(delta: LatticePolytope, scale: int = 1) -> bool:
    """True iff the canonical closure is a lattice polytope."""
    return canonical_closure(delta, scale=scale).is_lattice
