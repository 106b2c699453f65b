"""Double description method for polyhedral cones over ZZ.

Given rows ``a_1, ..., a_k`` the cone is ``{y : <a_i, y> >= 0 for all i}``.
The constraints are inserted one at a time while a generating system
(lineality basis plus extreme rays) is maintained.  Adjacency of rays is
decided combinatorially from their sets of tight constraints, which are kept
as integer bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .exact import IntVector


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _normalize(v: Sequence[int]) -> IntVector:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


@dataclass(frozen=True)
class ConeGenerators:
    lineality: list[IntVector]
    rays: list[IntVector]


def cone_generators(constraints: Sequence[Sequence[int]], dim: int) -> ConeGenerators:
    """Lineality space and extreme rays of ``{y in R^dim : A y >= 0}``.

    Rays are primitive integer vectors, sorted; the lineality basis is
    returned as found (callers canonicalize it if they need to).
    """
    lineality: list[IntVector] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[IntVector] = []
    tight: list[int] = []  # bitmask of tight constraint indices per ray

    for idx, a in enumerate(constraints):
        if len(a) != dim:
            raise ValueError("constraint of wrong length")
        bit = 1 << idx
        piv_idx = next((i for i, l in enumerate(lineality) if _dot(a, l) != 0), None)
        if piv_idx is not None:
            pivot = lineality[piv_idx]
            s = _dot(a, pivot)
            if s < 0:
                pivot = tuple(-x for x in pivot)
                s = -s
            new_lin = []
            for i, l in enumerate(lineality):
                if i == piv_idx:
                    continue
                t = _dot(a, l)
                new_lin.append(_normalize([s * x - t * y for x, y in zip(l, pivot)]) if t else l)
            new_rays = []
            for r in rays:
                t = _dot(a, r)
                new_rays.append(_normalize([s * x - t * y for x, y in zip(r, pivot)]) if t else r)
            tight = [m | bit for m in tight]
            lineality = [l for l in new_lin if any(l)]
            rays = new_rays + [_normalize(pivot)]
            # pivot is tight on every earlier constraint, not on this one
            tight.append(bit - 1)
            continue

        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            tight = [m | bit if v == 0 else m for m, v in zip(tight, vals)]
            continue

        kept = pos + zero
        new_rays = [rays[i] for i in kept]
        new_tight = [tight[i] | (bit if vals[i] == 0 else 0) for i in kept]
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                adjacent = True
                for k in range(len(rays)):
                    if k != p and k != q and common & tight[k] == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], -vals[q]
                ray = _normalize([vq * x + vp * y for x, y in zip(rays[p], rays[q])])
                new_rays.append(ray)
                new_tight.append(common | bit)
        rays, tight = new_rays, new_tight

    uniq = sorted(set(rays))
    return ConeGenerators(lineality=lineality, rays=uniq)
