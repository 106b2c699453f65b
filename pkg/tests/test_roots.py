import itertools

import pytest

from randomized import pool
from toric_moduli import RaySet, RootPolytopeUnboundedError, canonical_closure, hull, root_set_difference, roots
from toric_moduli.exact import pairing
from toric_moduli.roots import positively_spans, root_vectors

QUARTIC = hull([(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)])
ELLIPTIC = hull([(-1, -1, -1), (5, 1, 3), (-1, 10, 0), (-1, -1, 0)])
ELLIPTIC_ROOTS = sorted([(-3, -1, -2), (-1, -4, -1), (-1, -3, -1), (-1, -2, -1), (-1, -1, -1), (-1, 0, -1), (0, -1, 0)])


def brute_force_roots(rays, radius):
    out = []
    for alpha in itertools.product(range(-radius, radius + 1), repeat=len(rays[0])):
        values = [pairing(alpha, r) for r in rays]
        if values.count(1) == 1 and all(v <= 0 for v in values if v != 1):
            out.append(alpha)
    return sorted(out)


def test_projective_space_roots():
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    expected = set()
    for i in range(3):
        expected |= {e[i], tuple(-x for x in e[i])}
        for j in range(3):
            if i != j:
                expected.add(tuple(a - b for a, b in zip(e[i], e[j])))
    rs = roots(RaySet(tuple(QUARTIC.facet_normals), "normal_fan_delta"))
    assert len(rs) == 12
    assert set(root_vectors(rs)) == expected


def test_elliptic_canonical_roots():
    C = canonical_closure(ELLIPTIC).C
    rs = roots(RaySet(tuple(C.facet_normals), "normal_fan_canonical"))
    assert root_vectors(rs) == ELLIPTIC_ROOTS
    assert root_vectors(rs) == brute_force_roots(C.facet_normals, 5)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_product_of_projective_lines(n):
    rays = []
    for i in range(n):
        e = tuple(int(j == i) for j in range(n))
        rays += [e, tuple(-x for x in e)]
    rs = roots(RaySet(tuple(rays), "normal_fan_delta"))
    assert root_vectors(rs) == brute_force_roots(rays, 2)
    assert len(rs) == 2 * n


def test_root_set_difference_examples():
    rc = root_set_difference(QUARTIC)
    assert rc.difference == ()
    rc = root_set_difference(ELLIPTIC)
    assert [r.alpha for r in rc.difference] == [(-1, 0, -1)]
    assert len(rc.R_delta) == 6 and len(rc.R_canonical) == 7
    assert rc.inclusion_holds and rc.support_equality_holds


def test_non_spanning_rays():
    assert not positively_spans([(1, 0), (0, 1)])
    with pytest.raises(RootPolytopeUnboundedError, match="root polytope unbounded"):
        roots(RaySet(((1, 0), (0, 1)), "support_set"))


def test_ray_set_validation():
    with pytest.raises(ValueError):
        RaySet(((2, 0), (0, 1), (-1, -1)), "support_set")
    with pytest.raises(ValueError):
        RaySet(((1, 0), (1, 0), (0, 1), (-1, -1)), "support_set")


# -- properties over the shared random pool ----------------------------------------------


def test_roots_recheck_and_unique_distinguished_ray():
    for inst in pool():
        rays = inst.closure.C.facet_normals
        for r in inst.roots.R_canonical:
            values = [pairing(r.alpha, nj) for nj in rays]
            assert values.count(1) == 1
            assert pairing(r.alpha, r.distinguished_ray) == 1
            assert all(v <= 0 for nj, v in zip(rays, values) if nj != r.distinguished_ray)


def test_root_inclusion_and_equality():
    for inst in pool():
        rc = inst.roots
        assert rc.inclusion_holds, inst.delta.vertices
        assert rc.support_equality_holds, inst.delta.vertices
        assert {r.alpha for r in rc.difference} == {r.alpha for r in rc.R_canonical} - {r.alpha for r in rc.R_delta}


def test_roots_match_brute_force_scan():
    for inst in [i for i in pool() if i.n == 2][:50]:
        rays = inst.delta.facet_normals
        radius = 2 * max(abs(x) for r in rays for x in r) + 2
        assert root_vectors(inst.roots.R_delta) == brute_force_roots(rays, radius)
