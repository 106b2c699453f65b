"""Lattice and rational polytopes with exact vertex/facet duality.

Inequalities are always written ``<x, normal> >= offset`` with an integer
normal.  For lattice polytopes the normals are primitive and inner-pointing
and the offsets are integers; rational polytopes may carry rational offsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor, gcd
from typing import Iterable, NamedTuple, Sequence

from .dd import cone_generators
from .exact import (
    DimensionError,
    IntVector,
    RatVector,
    affine_dim,
    gcd_list,
    integral,
    pairing,
    rref,
)
from .laurent import LaurentPolynomial


class EmptyPolytopeError(ValueError):
    pass


class UnboundedPolytopeError(ValueError):
    pass


class Halfspace(NamedTuple):
    normal: IntVector
    offset: Fraction

    def contains(self, x: Sequence) -> bool:
        return pairing(x, self.normal) >= self.offset

    def is_tight(self, x: Sequence) -> bool:
        return pairing(x, self.normal) == self.offset


# ---------------------------------------------------------------------------
# V -> H


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many lattice points.

    ``facets`` are the irredundant inequalities of the polytope inside its
    affine hull; ``equations`` (empty when full-dimensional) cut out the
    affine hull, each stored as ``Halfspace(normal, value)`` meaning
    ``<x, normal> = value``.
    """

    ambient_dim: int
    vertices: tuple[IntVector, ...]
    facets: tuple[Halfspace, ...]
    equations: tuple[Halfspace, ...]

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def facet_normals(self) -> list[IntVector]:
        return sorted(h.normal for h in self.facets)

    def inequalities(self) -> list[Halfspace]:
        out = list(self.facets)
        for eq in self.equations:
            out.append(eq)
            out.append(Halfspace(tuple(-x for x in eq.normal), -eq.offset))
        return out

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.ambient_dim:
            raise DimensionError(f"point of length {len(x)} in dimension {self.ambient_dim}")
        return all(h.contains(x) for h in self.inequalities())

    @cached_property
    def _points(self) -> tuple[IntVector, ...]:
        return tuple(_enumerate_lattice_points(self.inequalities(), self.vertices, self.ambient_dim))

    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"


def hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Convex hull of lattice points, with its exact facet description."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise EmptyPolytopeError("hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionError("points of mixed length")
    # cone of valid inequalities (nu, c): <p, nu> + c >= 0 for all p
    gens = cone_generators([p + (1,) for p in pts], n + 1)
    lin_rref, lin_piv = rref(gens.lineality, n + 1)
    equations = []
    for row in lin_rref:
        v = integral(row)
        equations.append(Halfspace(v[:n], -v[n]))
    facets = []
    for ray in gens.rays:
        if not any(pairing(p, ray[:n]) + ray[n] == 0 for p in pts):
            continue  # the trivial inequality 1 >= 0
        red = [Fraction(x) for x in ray]
        for row, pc in zip(lin_rref, lin_piv):
            if red[pc]:
                fac = red[pc]
                red = [x - fac * y for x, y in zip(red, row)]
        v = integral(red)
        facets.append(Halfspace(v[:n], Fraction(-v[n])))
    facets = sorted(set(facets))
    facets = tuple(Halfspace(h.normal, int(h.offset)) for h in facets)
    # p is a vertex iff no other point is tight on every facet p is tight on
    masks = [sum(1 << j for j, h in enumerate(facets) if pairing(p, h.normal) == h.offset) for p in pts]
    vertices = [p for i, (p, m) in enumerate(zip(pts, masks))
                if not any(j != i and mq & m == m for j, mq in enumerate(masks))]
    return LatticePolytope(n, tuple(vertices), facets, tuple(sorted(equations)))


# ---------------------------------------------------------------------------
# H -> V


@dataclass(frozen=True)
class RationalHPolytope:
    """Intersection of rational halfspaces with its vertex description.

    ``dim`` is -1 for the empty set.  Unbounded intersections are kept (with
    ``bounded = False``) so callers can report them; their vertex list is
    empty and lattice-point enumeration refuses them.
    """

    ambient_dim: int
    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[RatVector, ...]
    dim: int
    bounded: bool

    @property
    def is_empty(self) -> bool:
        return self.dim == -1

    @property
    def is_lattice(self) -> bool:
        return all(all(x.denominator == 1 for x in v) for v in self.vertices)

    def inequalities(self) -> list[Halfspace]:
        return list(self.halfspaces)

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.ambient_dim:
            raise DimensionError(f"point of length {len(x)} in dimension {self.ambient_dim}")
        return all(h.contains(x) for h in self.halfspaces)

    @cached_property
    def facets(self) -> tuple[Halfspace, ...]:
        """Facet inequalities; only meaningful for full-dimensional polytopes."""
        if self.dim != self.ambient_dim:
            return ()
        return self.halfspaces

    @property
    def facet_normals(self) -> list[IntVector]:
        return sorted(h.normal for h in self.facets)

    @cached_property
    def _points(self) -> tuple[IntVector, ...]:
        if not self.bounded:
            raise UnboundedPolytopeError("lattice points of an unbounded polyhedron")
        return tuple(_enumerate_lattice_points(self.halfspaces, self.vertices, self.ambient_dim))

    def __repr__(self) -> str:
        verts = [tuple(str(x) for x in v) for v in self.vertices]
        return f"RationalHPolytope(dim={self.dim}, vertices={verts})"


def _normalize_halfspaces(halfspaces: Iterable, n: int) -> list[Halfspace]:
    best: dict[IntVector, Fraction] = {}
    for normal, offset in halfspaces:
        normal = tuple(int(x) for x in normal)
        if len(normal) != n:
            raise DimensionError(f"normal {normal} in dimension {n}")
        offset = Fraction(offset)
        if not any(normal):
            if offset <= 0:
                continue
            best[normal] = max(best.get(normal, offset), offset)
            continue
        g = gcd_list(normal)
        prim = tuple(x // g for x in normal)
        off = offset / g
        if prim not in best or off > best[prim]:
            best[prim] = off
    # insertion order is kept: it is the order the double description sees
    return [Halfspace(nu, b) for nu, b in best.items()]


def _vertex_enumeration(hs: Sequence[Halfspace], n: int) -> tuple[list[RatVector], bool]:
    rows = [(0,) * n + (1,)]
    for h in hs:
        den = h.offset.denominator
        rows.append(tuple(x * den for x in h.normal) + (-h.offset.numerator,))
    gens = cone_generators(rows, n + 1)
    verts = sorted({tuple(Fraction(r[i], r[n]) for i in range(n)) for r in gens.rays if r[n] > 0})
    if not verts:
        return [], True
    bounded = not gens.lineality and all(r[n] > 0 for r in gens.rays)
    return verts, bounded


def _tight_sets(hs: Sequence[Halfspace], verts: Sequence[RatVector]) -> list[list[RatVector]]:
    # homogenize the vertices once so every tightness test is integral
    homog = []
    for v in verts:
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        homog.append((tuple(int(x * den) for x in v), den, v))
    out = []
    for normal, offset in _integer_rows(hs):
        out.append([v for hv, den, v in homog if sum(a * b for a, b in zip(hv, normal)) == offset * den])
    return out


def h_polytope(halfspaces: Iterable, ambient_dim: int) -> RationalHPolytope:
    """Build a :class:`RationalHPolytope` from ``(normal, offset)`` pairs.

    The stored halfspace list is irredundant: facet inequalities for
    full-dimensional polytopes; for lower-dimensional ones a greedy
    reduction that prefers lexicographically smaller normals.
    """
    n = ambient_dim
    hs = _normalize_halfspaces(halfspaces, n)
    verts, bounded = _vertex_enumeration(hs, n)
    hs = sorted(hs)
    if not verts:
        return RationalHPolytope(n, tuple(hs), (), -1, True)
    if not bounded:
        return RationalHPolytope(n, tuple(hs), (), affine_dim(verts), False)
    dim = affine_dim(verts)
    tight_sets = _tight_sets(hs, verts)
    if dim == n:
        kept = [h for h, ts in zip(hs, tight_sets) if ts and affine_dim(ts) == n - 1]
    else:
        kept = [h for h, ts in zip(hs, tight_sets) if ts]
        for h in sorted(kept, reverse=True):
            trial = [g for g in kept if g != h]
            tv, tb = _vertex_enumeration(trial, n)
            if tb and tv == verts:
                kept = trial
    return RationalHPolytope(n, tuple(kept), tuple(verts), dim, True)


# ---------------------------------------------------------------------------
# shared operations


Polytope = LatticePolytope | RationalHPolytope


def min_support(P: Polytope, nu: Sequence[int]):
    """min over P of <x, nu>, attained at a vertex."""
    if not any(nu):
        raise ValueError("Min-support of the zero vector")
    if len(nu) != P.ambient_dim:
        raise DimensionError(f"normal of length {len(nu)} in dimension {P.ambient_dim}")
    if isinstance(P, RationalHPolytope) and not P.bounded:
        raise UnboundedPolytopeError("Min-support on an unbounded polyhedron")
    if not P.vertices:
        raise EmptyPolytopeError("Min-support of the empty polytope")
    return min(pairing(v, nu) for v in P.vertices)


def _integer_rows(ineqs: Sequence[Halfspace]) -> list[tuple[IntVector, int]]:
    # <x, normal> >= offset cleared of denominators: <x, N> >= B with N, B integral
    rows = []
    for h in ineqs:
        off = Fraction(h.offset)
        rows.append((tuple(x * off.denominator for x in h.normal), off.numerator))
    return rows


def _enumerate_lattice_points(ineqs: Sequence[Halfspace], vertices: Sequence, n: int) -> list[IntVector]:
    if not vertices:
        return []
    lo = [ceil(min(Fraction(v[i]) for v in vertices)) for i in range(n)]
    hi = [floor(max(Fraction(v[i]) for v in vertices)) for i in range(n)]
    if any(a > b for a, b in zip(lo, hi)):
        return []
    last = n - 1
    rows = _integer_rows(ineqs)
    normals = [r[0] for r in rows]
    lasts = [r[0][last] for r in rows]
    out: list[IntVector] = []

    def walk(depth: int, prefix: tuple, rest: list[int]) -> None:
        # rest[j] = offset_j - <prefix, normal_j> over the coordinates fixed so far
        if depth == last:
            a, b = lo[last], hi[last]
            for r, c in zip(rest, lasts):
                if c > 0:
                    a = max(a, -(-r // c))
                elif c < 0:
                    b = min(b, r // c)
                elif r > 0:
                    return
                if a > b:
                    return
            out.extend(prefix + (x,) for x in range(a, b + 1))
            return
        col = [nrm[depth] for nrm in normals]
        for x in range(lo[depth], hi[depth] + 1):
            walk(depth + 1, prefix + (x,), [r - x * c for r, c in zip(rest, col)])

    walk(0, (), [r[1] for r in rows])
    return out


def lattice_points(P: Polytope) -> list[IntVector]:
    """All lattice points of P in lexicographic order."""
    return list(P._points)


def interior_lattice_points(P: Polytope) -> list[IntVector]:
    """Lattice points strictly inside every facet (empty if P is not full-dimensional)."""
    if P.dim != P.ambient_dim:
        return []
    facets = P.facets
    return [p for p in P._points if all(pairing(p, h.normal) > h.offset for h in facets)]


# ---------------------------------------------------------------------------
# toric divisors, Newton polytopes, faces


@dataclass(frozen=True)
class ToricDivisorData:
    rays: tuple[IntVector, ...]
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.rays) != len(self.coefficients):
            raise ValueError("one coefficient per ray required")
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("rays must be pairwise distinct")


def divisor_polytope(d: ToricDivisorData) -> RationalHPolytope:
    """P_D = {x : <x, nu_i> >= -a_i}.  Check ``.bounded`` before enumerating."""
    if not d.rays:
        raise ValueError("divisor without rays")
    n = len(d.rays[0])
    return h_polytope([(nu, -a) for nu, a in zip(d.rays, d.coefficients)], n)


def newton_polytope(f: LaurentPolynomial) -> LatticePolytope:
    if f.is_zero():
        raise ValueError("Newton polytope of the zero polynomial")
    return hull(f.support)


@dataclass(frozen=True)
class Face:
    vertices: tuple[IntVector, ...]
    dim: int
    # facet inequalities of the polytope that are tight on the whole face
    normals: tuple[Halfspace, ...]

    @cached_property
    def _hull(self) -> LatticePolytope:
        return hull(self.vertices)

    def contains(self, x: Sequence) -> bool:
        return all(h.is_tight(x) for h in self.normals) and self._hull.contains(x)


def faces(P: LatticePolytope, k: int) -> list[Face]:
    """All k-dimensional faces of P as vertex subsets, in canonical order."""
    if not 0 <= k <= P.ambient_dim:
        raise ValueError(f"face dimension {k} outside 0..{P.ambient_dim}")
    if k > P.dim:
        return []
    verts = P.vertices
    if k == P.dim:
        return [Face(verts, P.dim, ())]
    facet_sets = [frozenset(i for i, v in enumerate(verts) if h.is_tight(v)) for h in P.facets]
    found = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facet_sets:
                c = a & b
                if c and c not in found:
                    new.add(c)
        found |= new
        frontier = new
    out = []
    for s in found:
        vs = tuple(verts[i] for i in sorted(s))
        if affine_dim(vs) == k:
            normals = tuple(h for h, fs in zip(P.facets, facet_sets) if s <= fs)
            out.append(Face(vs, k, normals))
    return sorted(out, key=lambda f: f.vertices)


def restrict_to_face(f: LaurentPolynomial, face: Face) -> LaurentPolynomial:
    """f restricted to a face: the terms whose exponent lies on the face."""
    return LaurentPolynomial({m: c for m, c in f.items() if face.contains(m)}, f.nvars)


def same_polytope(P: Polytope, Q: Polytope) -> bool:
    return [tuple(Fraction(x) for x in v) for v in P.vertices] == [tuple(Fraction(x) for x in v) for v in Q.vertices]
