import itertools

import pytest

from randomized import pool
from toric_moduli import (
    NoFineInteriorError,
    canonical_closure,
    candidate_normals,
    fine_interior,
    h_polytope,
    hull,
    interior_lattice_points,
    is_cartier,
    lattice_points,
    min_support,
    support,
)
from toric_moduli.exact import gcd_list
from toric_moduli.fine import closure_from_support
from toric_moduli.polytope import same_polytope

SMALL_TRIANGLE = hull([(0, 1), (0, 3), (4, 1)])
ELLIPTIC = hull([(-1, -1, -1), (5, 1, 3), (-1, 10, 0), (-1, -1, 0)])
QUARTIC = hull([(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)])
UNIT3 = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


def brute_force_fine_interior(delta, radius):
    """Intersect the pushed-in halfspaces for every nonzero direction in a box."""
    n = delta.ambient_dim
    hs = [(nu, min_support(delta, nu) + 1)
          for nu in itertools.product(range(-radius, radius + 1), repeat=n) if any(nu)]
    return h_polytope(hs, n)


def box_radius(delta):
    return max(abs(x) for h in delta.facets for x in h.normal) + 1


class TestExamples:
    def test_small_triangle(self):
        fi = fine_interior(SMALL_TRIANGLE)
        assert fi.F.vertices == ((1, 2),)
        assert fi.dim == 0
        assert (0, -1) in fi.support
        assert fi.stability_certificate.stable

    def test_small_triangle_candidates_are_lattice_points_of_normal_hull(self):
        corners = [(1, 0), (0, 1), (-1, -2), (0, 0)]
        expected = sorted(p for p in itertools.product(range(-1, 2), range(-2, 2))
                          if any(p) and set(hull(corners + [p]).vertices) == set(hull(corners).vertices))
        assert candidate_normals(SMALL_TRIANGLE) == expected

    def test_quartic(self):
        fi = fine_interior(QUARTIC)
        assert fi.F.vertices == ((1, 1, 1),)
        assert set(fi.support) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)}
        cc = canonical_closure(QUARTIC, fi)
        assert same_polytope(cc.C, QUARTIC)
        assert cc.is_lattice and cc.extra_vertices == ()
        assert is_cartier(QUARTIC)

    def test_quartic_against_brute_force(self):
        assert same_polytope(fine_interior(QUARTIC).F, brute_force_fine_interior(QUARTIC, 2))

    def test_elliptic(self):
        fi = fine_interior(ELLIPTIC)
        assert fi.dim == 1
        assert fi.F.vertices == ((0, 0, 0), (0, 2, 0))
        cc = canonical_closure(ELLIPTIC, fi)
        assert cc.extra_vertices == ((1, -1, 1),)
        assert set(cc.C.facet_normals) <= set(fi.support)

    def test_elliptic_cartier_by_vertex_integrality(self):
        C = canonical_closure(ELLIPTIC).C
        # independent check: a lattice polytope is the hull of its lattice points
        integral = all(x.denominator == 1 for v in C.vertices for x in v)
        assert integral
        assert same_polytope(C, hull(lattice_points(C)))
        assert is_cartier(ELLIPTIC) is integral

    def test_elliptic_scale_nesting(self):
        assert set(candidate_normals(ELLIPTIC, 1)) <= set(candidate_normals(ELLIPTIC, 2))

    def test_unit_simplex_is_empty(self):
        cands = candidate_normals(UNIT3)
        assert set(UNIT3.facet_normals) <= set(cands)
        fi = fine_interior(UNIT3)
        assert fi.is_empty and fi.dim == -1
        with pytest.raises(NoFineInteriorError, match="no Fine interior"):
            support(UNIT3)
        with pytest.raises(NoFineInteriorError):
            canonical_closure(UNIT3)
        with pytest.raises(NoFineInteriorError):
            is_cartier(UNIT3)

    @pytest.mark.parametrize("verts", [
        [(-1, -1), (2, -1), (-1, 2)],
        [(-1, -1), (1, -1), (-1, 1), (1, 1)],
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
    ])
    def test_reflexive_is_canonically_closed(self, verts):
        P = hull(verts)
        cc = canonical_closure(P)
        assert same_polytope(cc.C, P)
        assert is_cartier(P)

    def test_scale_must_be_positive(self):
        with pytest.raises(ValueError):
            candidate_normals(SMALL_TRIANGLE, 0)

    def test_lower_dimensional_input_rejected(self):
        with pytest.raises(ValueError):
            fine_interior(hull([(0, 0, 0), (3, 0, 0), (0, 3, 0)]))


def test_brute_force_oracle_on_random_instances():
    small = [inst for inst in pool() if inst.n == 2][:40] + [inst for inst in pool() if inst.n == 3][:10]
    for inst in small:
        oracle = brute_force_fine_interior(inst.delta, box_radius(inst.delta))
        assert same_polytope(inst.fine.F, oracle), inst.delta.vertices


# -- properties over the shared random pool ----------------------------------------------


def test_fine_interior_inside_delta_and_contains_interior_points():
    for inst in pool():
        F = inst.fine.F
        for v in F.vertices:
            assert inst.delta.contains(v)
        for p in interior_lattice_points(inst.delta):
            assert F.contains(p)


def test_scale_one_and_two_agree():
    for inst in pool():
        cert = inst.fine.stability_certificate
        assert cert.base_scale == 1 and cert.check_scale == 2
        assert cert.stable, inst.delta.vertices


def test_support_consistency():
    for inst in pool():
        fi = inst.fine
        sup = set(fi.support)
        assert sup <= set(fi.candidate_normals)
        for nu in fi.candidate_normals:
            gap = min_support(fi.F, nu) - min_support(inst.delta, nu)
            if nu in sup:
                assert gap == 1 and gcd_list(nu) == 1
            else:
                assert gap > 1


def test_canonical_closure_contains_delta_and_keeps_support_values():
    for inst in pool():
        C = inst.closure.C
        for v in inst.delta.vertices:
            assert C.contains(v)
        for nu in inst.fine.support:
            assert min_support(C, nu) == min_support(inst.delta, nu)
        assert inst.closure.is_lattice == all(x.denominator == 1 for v in C.vertices for x in v)
        assert set(inst.closure.extra_vertices) == {v for v in C.vertices if not inst.delta.contains(v)}


def test_closure_is_idempotent():
    for inst in pool():
        C = inst.closure.C
        again = closure_from_support(C, support(C))
        assert same_polytope(again, C), inst.delta.vertices
