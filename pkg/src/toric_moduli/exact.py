"""Exact integer/rational vectors and linear algebra over QQ.

Vectors are plain tuples of ``int`` (lattice points and normals) or of
``Fraction``.  Matrices are sequences of such rows.  Nothing here ever
touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
RatVector = tuple[Fraction, ...]


class DimensionError(ValueError):
    """Raised when vectors or matrices of incompatible shape are combined."""


def pairing(m: Sequence, nu: Sequence):
    """Exact dot product <m, nu>."""
    if len(m) != len(nu):
        raise DimensionError(f"length mismatch: {len(m)} != {len(nu)}")
    return sum(a * b for a, b in zip(m, nu))


def gcd_list(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries."""
    g = gcd_list(v)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(x // g for x in v)


def integral(v: Sequence[Fraction]) -> IntVector:
    """Positive rational multiple of ``v`` that is a primitive integer vector."""
    if all(type(x) is int for x in v):
        return primitive(v)
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def is_integral(v: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def as_int_vector(v: Iterable) -> IntVector:
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"non-integral coordinate {x}")
        out.append(int(x))
    return tuple(out)


def add(a: Sequence, b: Sequence) -> tuple:
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} != {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} != {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def scale(k, a: Sequence) -> tuple:
    return tuple(k * x for x in a)


def _check_width(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    widths = {len(r) for r in rows}
    if ncols is not None:
        widths.add(ncols)
    if len(widths) > 1:
        raise DimensionError(f"ragged matrix, row lengths {sorted(widths)}")
    return widths.pop() if widths else 0


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the RREF and the list of pivot columns.  The
    result is the canonical basis of the row space.
    """
    width = _check_width(rows, ncols)
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                row_r = m[r]
                m[i] = [x - fac * y for x, y in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _integer_rank(rows: list[list[int]]) -> int:
    # fraction-free elimination; rows are divided by their content to keep entries small
    m = [r[:] for r in rows if any(r)]
    r = 0
    width = len(m[0]) if m else 0
    for c in range(width):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        top = m[r]
        a = top[c]
        for i in range(r + 1, len(m)):
            b = m[i][c]
            if b:
                row = [a * x - b * y for x, y in zip(m[i], top)]
                g = gcd_list(row)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def rank(rows: Sequence[Sequence]) -> int:
    _check_width(rows)
    # scaling a row by its common denominator does not change the rank
    cleared = []
    for row in rows:
        if all(type(x) is int for x in row):
            cleared.append(list(row))
            continue
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        cleared.append([int(x * den) for x in row])
    return _integer_rank(cleared)


def transpose(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    width = _check_width(rows, ncols)
    return [[r[j] for r in rows] for j in range(width)]


def row_basis(rows: Sequence[Sequence], ncols: int | None = None) -> list[RatVector]:
    """Canonical (RREF) basis of the row span."""
    return [tuple(r) for r in rref(rows, ncols)[0]]


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[RatVector]:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    width = _check_width(rows, ncols)
    red, pivots = rref(rows, width)
    free = [c for c in range(width) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [Fraction(0)] * width
        x[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


def span_intersection(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int | None = None) -> list[RatVector]:
    """Canonical basis of rowspan(a) intersected with rowspan(b)."""
    width = _check_width(list(a) + list(b), ncols)
    ba = row_basis(a, width)
    bb = row_basis(b, width)
    if not ba or not bb:
        return []
    # coefficient vectors (c, d) with sum c_i a_i - sum d_j b_j = 0
    stacked = ba + [tuple(-x for x in r) for r in bb]
    rels = nullspace(transpose(stacked, width), len(stacked))
    vecs = []
    for rel in rels:
        v = [Fraction(0)] * width
        for coeff, row in zip(rel[: len(ba)], ba):
            if coeff:
                for j, x in enumerate(row):
                    v[j] += coeff * x
        vecs.append(v)
    return row_basis(vecs, width)


def in_row_span(basis_rref: Sequence[Sequence], pivots: Sequence[int], v: Sequence) -> bool:
    """Membership test against an RREF basis with known pivot columns."""
    w = [Fraction(x) for x in v]
    for row, pc in zip(basis_rref, pivots):
        if w[pc]:
            fac = w[pc]
            w = [x - fac * y for x, y in zip(w, row)]
    return not any(w)


def affine_dim(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of ``points``; -1 for the empty set."""
    if not points:
        return -1
    base = points[0]
    return rank([sub(p, base) for p in points[1:]]) if len(points) > 1 else 0
