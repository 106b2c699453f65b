"""Report assembly, JSON/table rendering and the table parser."""

from __future__ import annotations

import json
import re
from typing import Any

from .fine import NoFineInteriorError, canonical_closure, fine_interior
from .kodaira import (
    DegenerateCoefficientError,
    DegenerateSupportError,
    SubfamilyError,
    generic_sample,
    kernel_basis,
    kernel_intersection_check,
    subfamily_analysis,
)
from .laurent import LaurentPolynomial, format_rational
from .polytope import LatticePolytope, hull, interior_lattice_points, lattice_points
from .problem import GenericSpec, InputError, ProblemInput
from .roots import root_set_difference

SECTIONS = (
    "polytope",
    "lattice_points",
    "fine_interior",
    "support",
    "canonical_closure",
    "roots",
    "polynomial",
    "kernel",
    "moduli",
    "subfamily",
)

# exit codes
OK, VALIDATION, PRECONDITION, DEGENERATE = 0, 2, 3, 4


def rat_vec(v) -> list[str]:
    return [format_rational(x) for x in v]


def halfspaces(hs) -> list[dict]:
    return [{"normal": list(h.normal), "offset": format_rational(h.offset)} for h in hs]


def roots_json(rs) -> list[dict]:
    return [{"alpha": list(r.alpha), "ray": list(r.distinguished_ray)} for r in rs]


class Analysis:
    """Lazily computed pipeline for one problem; each section is built on demand."""

    def __init__(self, problem: ProblemInput, variant: str = "family", scale: int = 1,
                 seed: int | None = None, coeff_range: int | None = None):
        self.problem = problem
        self.variant = variant
        self.scale = scale
        self.delta: LatticePolytope = hull(problem.points)
        if self.delta.dim != problem.lattice_dim:
            raise InputError(f"polytope: points span a {self.delta.dim}-dimensional polytope, expected {problem.lattice_dim}")
        self._fine = None
        self._f = None
        self._seed = seed
        self._range = coeff_range
        self._poly_meta: dict[str, Any] = {}
        self._kernels: dict[str, Any] = {}

    # -- shared intermediate results ------------------------------------------------

    @property
    def fine(self):
        if self._fine is None:
            self._fine = fine_interior(self.delta, self.scale, check_stability=True)
        return self._fine

    def require_fine(self):
        if self.fine.is_empty:
            raise NoFineInteriorError()
        return self.fine

    @property
    def f(self) -> LaurentPolynomial:
        if self._f is None:
            spec = self.problem.polynomial
            pts = set(lattice_points(self.delta))
            if isinstance(spec, LaurentPolynomial):
                outside = [m for m in spec.support if m not in pts]
                if outside:
                    raise InputError(f"polynomial.terms: exponents outside the polytope: {[list(m) for m in outside]}")
                self._f = spec
                self._poly_meta = {"source": "explicit"}
            else:
                if spec is None:
                    spec = GenericSpec(0, 100, "all")
                seed = spec.seed if self._seed is None else self._seed
                rng = spec.range if self._range is None else self._range
                if spec.support == "all":
                    A = None
                elif spec.support == "vertices":
                    A = self.delta.vertices
                else:
                    A = spec.support
                    outside = [m for m in A if m not in pts]
                    if outside:
                        raise InputError(f"polynomial.generic.support: points outside the polytope: {[list(m) for m in outside]}")
                    missing = [v for v in self.delta.vertices if v not in set(A)]
                    if missing:
                        raise InputError(f"polynomial.generic.support: must contain all vertices; missing {[list(v) for v in missing]}")
                self._f = generic_sample(self.delta, A, seed, rng)
                self._poly_meta = {
                    "source": "generic",
                    "seed": seed,
                    "range": rng,
                    "support": spec.support if isinstance(spec.support, str) else [list(p) for p in spec.support],
                }
        return self._f

    # -- sections ---------------------------------------------------------------------

    def section_polytope(self) -> dict:
        d = self.delta
        return {
            "dim": d.dim,
            "vertices": [list(v) for v in d.vertices],
            "facets": halfspaces(d.facets),
            "lattice_point_count": len(lattice_points(d)),
            "interior_lattice_point_count": len(interior_lattice_points(d)),
        }

    def section_lattice_points(self) -> dict:
        return {
            "lattice_points": [list(p) for p in lattice_points(self.delta)],
            "interior_lattice_points": [list(p) for p in interior_lattice_points(self.delta)],
        }

    def section_fine_interior(self) -> dict:
        fi = self.fine
        return {
            "dim": fi.dim,
            "vertices": [rat_vec(v) for v in fi.F.vertices],
            "support": [list(v) for v in fi.support],
            "stable": fi.stability_certificate.stable,
        }

    def section_support(self) -> list:
        return [list(v) for v in self.require_fine().support]

    def section_canonical_closure(self) -> dict:
        cc = canonical_closure(self.delta, self.require_fine())
        return {
            "vertices": [rat_vec(v) for v in cc.C.vertices],
            "facets": halfspaces(cc.C.facets),
            "is_lattice": cc.is_lattice,
            "extra_vertices": [rat_vec(v) for v in cc.extra_vertices],
        }

    def section_roots(self) -> dict:
        self.require_fine()
        rc = root_set_difference(self.delta, self.scale, fine=self.require_fine())
        return {
            "R_delta": roots_json(rc.R_delta),
            "R_canonical": roots_json(rc.R_canonical),
            "difference": roots_json(rc.difference),
            "inclusion_holds": rc.inclusion_holds,
            "support_equality_holds": rc.support_equality_holds,
        }

    def section_polynomial(self) -> dict:
        f = self.f
        return {**self._poly_meta, "terms": f.to_json()}

    def _kernel(self, variant):
        if variant not in self._kernels:
            fine = self.require_fine()
            self._kernels[variant] = kernel_basis(self.delta, self.f, variant, self.scale, fine=fine)
        return self._kernels[variant]

    def section_kernel(self) -> dict:
        k = self._kernel(self.variant)
        flags = k.hypothesis_flags
        return {
            "variant": k.map_variant,
            "torus_part": [p.to_json() for p in k.torus_part],
            "root_part": [{"alpha": list(a), "w": w.to_json()} for a, w in k.root_part],
            "kernel_dim": k.kernel_dim,
            "unprojectivized_kernel_dim": k.unprojectivized_kernel_dim,
            "ambient_space_dim": k.ambient_space_dim,
            "moduli": k.moduli,
            "hypothesis_flags": {
                "dim_at_least_2": flags.dim_at_least_2,
                "has_interior_points": flags.has_interior_points,
                "surface_has_two_interior_points": flags.surface_has_two_interior_points,
            },
            "independence_verified": k.independence_verified,
        }

    def section_moduli(self) -> dict:
        out = {}
        for variant in ("ambient", "family"):
            k = self._kernel(variant)
            out[variant] = {
                "kernel_dim": k.kernel_dim,
                "ambient_space_dim": k.ambient_space_dim,
                "moduli": k.moduli,
            }
        chk = kernel_intersection_check(self.delta, self.f, self.scale,
                                        ambient=self._kernel("ambient"), family=self._kernel("family"))
        out["intersection_check"] = {
            "agrees": chk.agrees,
            "intersection_dim": chk.intersection_dim,
            "dimension_drop": chk.dimension_drop,
        }
        return out

    def section_subfamily(self) -> dict:
        A = self.problem.subfamily
        if A is None:
            raise InputError("subfamily: missing from the input")
        try:
            rep = subfamily_analysis(self.delta, self.f, A, self.scale, family=self._kernel("family"))
        except SubfamilyError as exc:
            raise InputError(f"subfamily: {exc}") from None
        return {
            "A": [list(p) for p in rep.A],
            "kernel_basis_in_A": [p.to_json() for p in rep.kernel_basis_in_A],
            "moduli": rep.moduli,
            "vertex_lemma_applicable": rep.vertex_lemma_applicable,
            "vertex_lemma_moduli": rep.vertex_lemma_moduli,
        }


def build_report(analysis: Analysis, sections) -> tuple[dict, int]:
    """Assemble the requested sections.

    Mathematical refusals (empty Fine interior, degenerate inputs) become a
    ``{"refused": message}`` entry for the affected section and set the exit
    code; validation errors propagate as :class:`InputError`.
    """
    report: dict[str, Any] = {"input_sha256": analysis.problem.digest}
    code = OK
    for name in sections:
        try:
            report[name] = getattr(analysis, f"section_{name}")()
        except (NoFineInteriorError, DegenerateSupportError) as exc:
            report[name] = {"refused": str(exc)}
            code = max(code, PRECONDITION)
        except DegenerateCoefficientError as exc:
            report[name] = {"refused": str(exc)}
            code = max(code, DEGENERATE)
    return report, code


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


# ---------------------------------------------------------------------------
# table format: one "path<spaces>json-value" line per leaf


def _is_leaf(v) -> bool:
    if isinstance(v, dict):
        return not v
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return True


def _flatten(v, path, out):
    if _is_leaf(v):
        out.append((path, json.dumps(v, separators=(",", ":"))))
    elif isinstance(v, dict):
        for k, x in v.items():
            _flatten(x, f"{path}.{k}" if path else k, out)
    else:
        for i, x in enumerate(v):
            _flatten(x, f"{path}[{i}]", out)


def to_table(report: dict) -> str:
    rows: list[tuple[str, str]] = []
    _flatten(report, "", rows)
    width = max((len(p) for p, _ in rows), default=0)
    return "".join(f"{p.ljust(width)}  {v}\n" for p, v in rows)


_TOKEN = re.compile(r"([^.\[\]]+)|\[(\d+)\]")


def parse_table(text: str) -> dict:
    """Inverse of :func:`to_table`."""
    root: dict = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        path, value = line.split(None, 1)
        keys: list[str | int] = [int(i) if i else k for k, i in _TOKEN.findall(path)]
        node: Any = root
        for key, nxt in zip(keys, keys[1:]):
            container = [] if isinstance(nxt, int) else {}
            if isinstance(key, int):
                if key == len(node):
                    node.append(container)
                node = node[key]
            else:
                node = node.setdefault(key, container)
        last = keys[-1]
        val = json.loads(value)
        if isinstance(last, int):
            node.append(val)
        else:
            node[last] = val
    return root
