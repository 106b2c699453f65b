"""Kernel bases of the Kodaira-Spencer maps, moduli counts and subfamilies.

The kernels are spanned by the torus derivatives ``x_i df/dx_i`` and one
polynomial ``w_{-alpha}(f)`` per root.  Every basis is checked for linear
independence together with ``f`` (the kernels live in a quotient by
``C*f``) by exact rank computation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Iterable, Literal, Sequence

from .exact import IntVector, pairing, rank, row_basis, span_intersection, sub
from .fine import FineInteriorResult, NoFineInteriorError, canonical_closure, fine_interior
from .laurent import LaurentPolynomial
from .polytope import (
    Halfspace,
    LatticePolytope,
    Polytope,
    interior_lattice_points,
    lattice_points,
    newton_polytope,
)
from .roots import RaySet, roots

Variant = Literal["ambient", "family"]


class NotARootError(ValueError):
    pass


class DegenerateSupportError(ValueError):
    def __init__(self, msg: str = "degenerate support: Newton polytope of f differs from the polytope"):
        super().__init__(msg)


class DegenerateCoefficientError(ValueError):
    def __init__(self, msg: str = "degenerate coefficient choice"):
        super().__init__(msg)


class SubfamilyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# heights and w-polynomials


def distinguished_facet(Q: Polytope, alpha: Sequence[int]) -> Halfspace:
    """The facet of Q whose normal pairs to 1 with ``alpha``.

    Raises :class:`NotARootError` unless alpha is a root of Q's facet normals.
    """
    facets = Q.facets
    if not facets:
        raise ValueError("heights need a full-dimensional polytope")
    hit = [h for h in facets if pairing(alpha, h.normal) == 1]
    if len(hit) != 1 or any(pairing(alpha, h.normal) > 0 for h in facets if h is not hit[0]):
        raise NotARootError(f"{tuple(alpha)} is not a root of the facet normals")
    return hit[0]


def height(Q: Polytope, alpha: Sequence[int], m: Sequence[int]) -> int:
    """Largest k >= 0 with m - k*alpha in Q.

    Computed both by stepping and from the distinguished facet as
    floor(<m, n> - b); the two must agree.
    """
    facet = distinguished_facet(Q, alpha)
    m = tuple(m)
    if not Q.contains(m):
        raise ValueError(f"{m} is not in the polytope")
    k = 0
    step = m
    while True:
        step = sub(step, alpha)
        if not Q.contains(step):
            break
        k += 1
    by_facet = floor(pairing(m, facet.normal) - Fraction(facet.offset))
    if by_facet != k:
        raise RuntimeError(f"height mismatch at {m}: stepping gives {k}, facet formula {by_facet}")
    return k


def w_poly(delta: LatticePolytope, f: LaurentPolynomial, alpha: Sequence[int], closure: Polytope | None = None) -> LaurentPolynomial:
    """w_{-alpha}(f) = sum over terms a_m x^m of ht_{-alpha}(m) a_m x^(m - alpha).

    Heights are measured in the canonical closure, which is computed unless
    passed in as ``closure``.
    """
    C = closure if closure is not None else canonical_closure(delta).C
    alpha = tuple(alpha)
    distinguished_facet(C, alpha)
    out: dict[IntVector, Fraction] = {}
    for m, a in f.items():
        h = height(C, alpha, m)
        if h:
            out[sub(m, alpha)] = h * a
    return LaurentPolynomial(out, f.nvars)


def toric_derivative(f: LaurentPolynomial, i: int) -> LaurentPolynomial:
    """x_i * df/dx_i for 1 <= i <= n."""
    if not 1 <= i <= f.nvars:
        raise IndexError(f"axis {i} outside 1..{f.nvars}")
    return LaurentPolynomial({m: m[i - 1] * c for m, c in f.items()}, f.nvars)


# ---------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class HypothesisFlags:
    dim_at_least_2: bool
    has_interior_points: bool
    surface_has_two_interior_points: bool

    @property
    def all_hold(self) -> bool:
        return self.dim_at_least_2 and self.has_interior_points and self.surface_has_two_interior_points


@dataclass(frozen=True)
class KernelReport:
    map_variant: Variant
    torus_part: tuple[LaurentPolynomial, ...]
    root_part: tuple[tuple[IntVector, LaurentPolynomial], ...]
    kernel_dim: int
    ambient_space_dim: int
    moduli: int
    hypothesis_flags: HypothesisFlags
    independence_verified: bool
    coordinates: tuple[IntVector, ...] = field(repr=False, default=())

    @property
    def basis(self) -> list[LaurentPolynomial]:
        return list(self.torus_part) + [w for _, w in self.root_part]

    @property
    def unprojectivized_kernel_dim(self) -> int:
        # counting f itself, i.e. without the quotient by C*f
        return self.kernel_dim + 1


def coefficient_rows(polys: Iterable[LaurentPolynomial], coords: Sequence[IntVector]) -> list[list[Fraction]]:
    index = {m: i for i, m in enumerate(coords)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(coords)
        for m, c in p.items():
            if m not in index:
                raise ValueError(f"monomial {m} outside the coordinate set")
            row[index[m]] = c
        rows.append(row)
    return rows


def _rows_to_polys(rows, coords, nvars) -> list[LaurentPolynomial]:
    return [LaurentPolynomial({m: c for m, c in zip(coords, r) if c}, nvars) for r in rows]


def hypothesis_flags(delta: LatticePolytope) -> HypothesisFlags:
    n = delta.ambient_dim
    l_star = len(interior_lattice_points(delta))
    return HypothesisFlags(n >= 2, l_star > 0, n != 2 or l_star >= 2)


def kernel_basis(delta: LatticePolytope, f: LaurentPolynomial, variant: Variant = "family", scale: int = 1,
                 strict: bool = True, fine: FineInteriorResult | None = None) -> KernelReport:
    """Basis of ker(kappa_{P,f}) (``ambient``) or ker(kappa_f) (``family``).

    With ``strict`` a rank deficiency of {f} together with the basis raises
    :class:`DegenerateCoefficientError`; otherwise the report is returned with
    ``independence_verified = False`` and the dimension actually spanned.
    """
    if variant not in ("ambient", "family"):
        raise ValueError(f"unknown map variant {variant!r}")
    if not delta.is_full_dimensional:
        raise ValueError("the polytope must be full-dimensional")
    if f.is_zero() or newton_polytope(f).vertices != delta.vertices:
        raise DegenerateSupportError()
    n = delta.ambient_dim
    fi = fine if fine is not None else fine_interior(delta, scale, check_stability=False)
    if fi.is_empty:
        raise NoFineInteriorError()
    C = canonical_closure(delta, fi).C
    if variant == "ambient":
        rays = RaySet(tuple(C.facet_normals), "normal_fan_canonical")
    else:
        rays = RaySet(tuple(delta.facet_normals), "normal_fan_delta")
    rts = roots(rays)
    torus = tuple(toric_derivative(f, i) for i in range(1, n + 1))
    root_part = tuple((r.alpha, w_poly(delta, f, r.alpha, closure=C)) for r in rts)

    coords = tuple(lattice_points(C))
    rows = coefficient_rows([f, *torus, *(w for _, w in root_part)], coords)
    r = rank(rows)
    expected = 1 + n + len(rts)
    independent = r == expected
    if not independent and strict:
        raise DegenerateCoefficientError(f"degenerate coefficient choice: rank {r}, expected {expected}")
    if variant == "ambient":
        space = len(coords) - 1
    else:
        space = len(lattice_points(delta)) - 1
    kdim = expected - 1 if independent else r - 1
    return KernelReport(variant, torus, root_part, kdim, space, space - kdim, hypothesis_flags(delta), independent, coords)


@dataclass(frozen=True)
class IntersectionCheck:
    agrees: bool
    ambient_kernel_dim: int
    family_kernel_dim: int
    intersection_dim: int

    @property
    def dimension_drop(self) -> int:
        return self.ambient_kernel_dim - self.family_kernel_dim


def kernel_intersection_check(delta: LatticePolytope, f: LaurentPolynomial, scale: int = 1,
                              ambient: KernelReport | None = None, family: KernelReport | None = None) -> IntersectionCheck:
    """Compare span(ambient kernel, f) meet L(delta) with span(family kernel, f)."""
    amb = ambient or kernel_basis(delta, f, "ambient", scale)
    fam = family or kernel_basis(delta, f, "family", scale)
    coords = amb.coordinates
    amb_rows = coefficient_rows([f, *amb.basis], coords)
    fam_rows = coefficient_rows([f, *fam.basis], coords)
    in_delta = set(lattice_points(delta))
    units = [[Fraction(int(j == i)) for j in range(len(coords))] for i, m in enumerate(coords) if m in in_delta]
    inter = span_intersection(amb_rows, units, len(coords))
    agrees = inter == row_basis(fam_rows, len(coords))
    return IntersectionCheck(agrees, amb.kernel_dim, fam.kernel_dim, len(inter) - 1)


# ---------------------------------------------------------------------------
# subfamilies


@dataclass(frozen=True)
class SubfamilyReport:
    A: tuple[IntVector, ...]
    kernel_basis_in_A: tuple[LaurentPolynomial, ...]
    moduli: int
    vertex_lemma_applicable: bool
    vertex_lemma_moduli: int | None

    @property
    def lemma_agrees(self) -> bool | None:
        if self.vertex_lemma_moduli is None:
            return None
        return self.vertex_lemma_moduli == self.moduli


def vertex_lemma_holds(delta: LatticePolytope) -> bool:
    """No vertex lies on a hyperplane one lattice step inside a facet."""
    return not any(pairing(v, h.normal) == h.offset + 1 for h in delta.facets for v in delta.vertices)


def _check_subset(delta: LatticePolytope, A: Iterable[Sequence[int]]) -> tuple[IntVector, ...]:
    pts = tuple(sorted({tuple(int(x) for x in a) for a in A}))
    outside = [a for a in pts if not delta.contains(a)]
    if outside:
        raise SubfamilyError(f"points outside the polytope: {outside}")
    missing = [v for v in delta.vertices if v not in set(pts)]
    if missing:
        raise SubfamilyError(f"subset must contain all vertices; missing {missing}")
    return pts


def subfamily_analysis(delta: LatticePolytope, f: LaurentPolynomial, A: Iterable[Sequence[int]], scale: int = 1,
                       family: KernelReport | None = None) -> SubfamilyReport:
    """Number of moduli of the subfamily with monomials in A."""
    pts = _check_subset(delta, A)
    if not set(f.support) <= set(pts):
        raise SubfamilyError("f has terms outside A")
    fam = family or kernel_basis(delta, f, "family", scale)
    coords = fam.coordinates
    k_rows = coefficient_rows([f, *fam.basis], coords)
    index = {m: i for i, m in enumerate(coords)}
    units = [[Fraction(int(j == index[a])) for j in range(len(coords))] for a in pts]
    inter = span_intersection(k_rows, units, len(coords))
    # complete {f} to a basis of the intersection; the added rows are the
    # kernel modulo f
    f_row = coefficient_rows([f], coords)[0]
    chosen = [f_row]
    for row in inter:
        if rank(chosen + [list(row)]) > len(chosen):
            chosen.append(list(row))
    basis = _rows_to_polys(chosen[1:], coords, f.nvars)
    moduli = len(pts) - 1 - len(basis)
    applicable = set(pts) == set(delta.vertices) and vertex_lemma_holds(delta)
    lemma = len(delta.vertices) - delta.ambient_dim - 1 if applicable else None
    return SubfamilyReport(pts, tuple(basis), moduli, applicable, lemma)


def generic_sample(delta: LatticePolytope, A: Iterable[Sequence[int]] | None = None, seed: int = 0, coeff_range: int = 100) -> LaurentPolynomial:
    """Seeded random nonzero integer coefficients in [-coeff_range, coeff_range] on A.

    ``A`` defaults to all lattice points of delta; a given A must contain the
    vertices so the Newton polytope is delta.
    """
    if coeff_range < 1:
        raise ValueError("coefficient range must be >= 1")
    pts = tuple(lattice_points(delta)) if A is None else _check_subset(delta, A)
    rng = random.Random(seed)
    terms = {}
    for m in pts:
        c = 0
        while c == 0:
            c = rng.randint(-coeff_range, coeff_range)
        terms[m] = c
    return LaurentPolynomial(terms, delta.ambient_dim)
