"""Input files: parsing and validation with field-level diagnostics."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .laurent import LaurentPolynomial, parse_rational


class InputError(ValueError):
    """Malformed or inconsistent input; the message names the offending field."""


@dataclass(frozen=True)
class GenericSpec:
    seed: int
    range: int
    support: str | tuple[tuple[int, ...], ...]  # "all", "vertices" or explicit points


@dataclass(frozen=True)
class ProblemInput:
    lattice_dim: int
    points: tuple[tuple[int, ...], ...]
    polynomial: LaurentPolynomial | GenericSpec | None
    subfamily: tuple[tuple[int, ...], ...] | None
    digest: str


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _point(value: Any, n: int, where: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected an integer array, got {value!r}")
    if len(value) != n:
        raise InputError(f"{where}: expected length {n}, got {len(value)}")
    return tuple(_int(x, f"{where}[{i}]") for i, x in enumerate(value))


def _point_list(value: Any, n: int, where: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(value, list) or not value:
        raise InputError(f"{where}: expected a non-empty list of points")
    return tuple(_point(p, n, f"{where}[{i}]") for i, p in enumerate(value))


def _object(value: Any, where: str, allowed: set[str]) -> dict:
    if not isinstance(value, dict):
        raise InputError(f"{where}: expected an object")
    unknown = set(value) - allowed
    if unknown:
        raise InputError(f"{where}: unknown field(s) {sorted(unknown)}")
    return value


def parse_problem(raw: Any) -> ProblemInput:
    """Validate a decoded JSON document (see README for the schema)."""
    doc = _object(raw, "<root>", {"lattice_dim", "polytope", "polynomial", "subfamily", "comment"})
    if "lattice_dim" not in doc:
        raise InputError("lattice_dim: missing")
    n = _int(doc["lattice_dim"], "lattice_dim")
    if n < 1:
        raise InputError("lattice_dim: must be >= 1")
    if "polytope" not in doc:
        raise InputError("polytope: missing")
    poly = _object(doc["polytope"], "polytope", {"vertices", "points"})
    if len(poly) != 1:
        raise InputError("polytope: give exactly one of 'vertices' or 'points'")
    key = next(iter(poly))
    points = _point_list(poly[key], n, f"polytope.{key}")

    polynomial: LaurentPolynomial | GenericSpec | None = None
    if doc.get("polynomial") is not None:
        spec = _object(doc["polynomial"], "polynomial", {"terms", "generic"})
        if len(spec) != 1:
            raise InputError("polynomial: give exactly one of 'terms' or 'generic'")
        if "terms" in spec:
            terms = spec["terms"]
            if not isinstance(terms, list) or not terms:
                raise InputError("polynomial.terms: expected a non-empty list")
            seen: dict[tuple[int, ...], Any] = {}
            for i, t in enumerate(terms):
                where = f"polynomial.terms[{i}]"
                t = _object(t, where, {"exponent", "coeff"})
                if "exponent" not in t or "coeff" not in t:
                    raise InputError(f"{where}: needs 'exponent' and 'coeff'")
                exp = _point(t["exponent"], n, f"{where}.exponent")
                if exp in seen:
                    raise InputError(f"{where}.exponent: duplicate exponent {list(exp)}")
                try:
                    c = parse_rational(t["coeff"])
                except (TypeError, ValueError, ZeroDivisionError) as exc:
                    raise InputError(f"{where}.coeff: {exc}") from None
                if c == 0:
                    raise InputError(f"{where}.coeff: coefficient must be nonzero")
                seen[exp] = c
            polynomial = LaurentPolynomial(seen, n)
        else:
            g = _object(spec["generic"], "polynomial.generic", {"seed", "range", "support"})
            seed = _int(g.get("seed", 0), "polynomial.generic.seed")
            rng = _int(g.get("range", 100), "polynomial.generic.range")
            if rng < 1:
                raise InputError("polynomial.generic.range: must be >= 1")
            sup = g.get("support", "all")
            if isinstance(sup, str):
                if sup not in ("all", "vertices"):
                    raise InputError(f"polynomial.generic.support: unknown value {sup!r}")
            else:
                sup = _point_list(sup, n, "polynomial.generic.support")
            polynomial = GenericSpec(seed, rng, sup)

    subfamily = None
    if doc.get("subfamily") is not None:
        subfamily = _point_list(doc["subfamily"], n, "subfamily")

    digest = hashlib.sha256(json.dumps(raw, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
    return ProblemInput(n, points, polynomial, subfamily, digest)


def load_problem(path: str | Path) -> ProblemInput:
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_problem(raw)
