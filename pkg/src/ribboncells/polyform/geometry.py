"""Affine maps and convex polytopes with exact rational data.

A polytope is an intersection of open or closed half-spaces with nonempty
interior, so it is always full-dimensional in its ambient space; faces
arise by turning non-strict inequalities into equalities.  Vertex
enumeration, boundedness tests, triangulation, and volume are all exact
and sized for desk-scale instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..linalg import det, nullspace, rank, solve_unique


def _fr_tuple(xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x + offset, with matrix shape (target, source).

    ``in_dim`` keeps the source arity explicit so that maps to or from
    zero-dimensional spaces (empty matrices) still compose correctly.
    """

    matrix: tuple[tuple[Fraction, ...], ...]
    offset: tuple[Fraction, ...]
    in_dim: int

    @staticmethod
    def create(matrix, offset, in_dim: int | None = None) -> "AffineMap":
        mat = tuple(_fr_tuple(r) for r in matrix)
        if in_dim is None:
            if not mat:
                raise ValueError("in_dim required for maps from row-less matrices")
            in_dim = len(mat[0])
        if any(len(r) != in_dim for r in mat):
            raise ValueError("ragged matrix")
        return AffineMap(mat, _fr_tuple(offset), in_dim)

    @staticmethod
    def identity(n: int) -> "AffineMap":
        return AffineMap.create(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], [0] * n, n)

    @property
    def source_dim(self) -> int:
        return self.in_dim

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def apply(self, x: Sequence) -> tuple[Fraction, ...]:
        xi = _fr_tuple(x)
        if len(xi) != self.in_dim:
            raise ValueError("point has wrong dimension")
        return tuple(
            sum((a * b for a, b in zip(row, xi)), Fraction(0)) + c
            for row, c in zip(self.matrix, self.offset))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self after inner."""
        if inner.target_dim != self.source_dim:
            raise ValueError("dimension mismatch in composition")
        mat = tuple(
            tuple(sum((self.matrix[i][k] * inner.matrix[k][j]
                       for k in range(self.source_dim)), Fraction(0))
                  for j in range(inner.source_dim))
            for i in range(self.target_dim))
        off = self.apply(inner.offset)
        return AffineMap(mat, off, inner.in_dim)

    def is_injective(self) -> bool:
        return rank([list(r) for r in self.matrix]) == self.source_dim


@dataclass(frozen=True)
class HalfSpace:
    """The condition coeffs . x + const >= 0 (or > 0 when strict)."""

    coeffs: tuple[Fraction, ...]
    const: Fraction
    strict: bool = False

    @staticmethod
    def create(coeffs, const, strict=False) -> "HalfSpace":
        return HalfSpace(_fr_tuple(coeffs), Fraction(const), strict)

    def value(self, x: Sequence) -> Fraction:
        return sum((a * Fraction(b) for a, b in zip(self.coeffs, x)),
                   Fraction(0)) + self.const


@dataclass(frozen=True)
class Polytope:
    dim: int
    halfspaces: tuple[HalfSpace, ...]

    @staticmethod
    def create(dim: int, halfspaces) -> "Polytope":
        return Polytope(dim, tuple(halfspaces))

    @staticmethod
    def from_bounds(bounds: Sequence[tuple]) -> "Polytope":
        """Axis-aligned box: bounds[i] = (lo, hi)."""
        dim = len(bounds)
        hs = []
        for i, (lo, hi) in enumerate(bounds):
            e = [0] * dim
            e[i] = 1
            hs.append(HalfSpace.create(e, -Fraction(lo)))
            e2 = [0] * dim
            e2[i] = -1
            hs.append(HalfSpace.create(e2, Fraction(hi)))
        return Polytope(dim, tuple(hs))

    def contains(self, x: Sequence, closed: bool = True) -> bool:
        """Membership in the closure (``closed=True``) or in the polytope
        itself, honouring strictness, otherwise."""
        for h in self.halfspaces:
            v = h.value(x)
            if closed:
                if v < 0:
                    return False
            elif v < 0 or (h.strict and v == 0):
                return False
        return True

    def strictly_contains(self, x: Sequence) -> bool:
        return all(h.value(x) > 0 for h in self.halfspaces)

    def vertices(self) -> list[tuple[Fraction, ...]]:
        """Vertices of the closure, by exhausting dim-subsets of tight
        constraints; exact and quadratic-ish in the constraint count."""
        d = self.dim
        if d == 0:
            return [()]
        out = []
        seen = set()
        for subset in combinations(range(len(self.halfspaces)), d):
            rows = [list(self.halfspaces[i].coeffs) for i in subset]
            rhs = [-self.halfspaces[i].const for i in subset]
            x = solve_unique(rows, rhs)
            if x is None:
                continue
            key = tuple(x)
            if key in seen:
                continue
            if all(h.value(x) >= 0 for h in self.halfspaces):
                seen.add(key)
                out.append(key)
        return sorted(out)

    def is_bounded(self) -> bool:
        """The recession cone of the closure is trivial."""
        d = self.dim
        if d == 0:
            return True
        rows = [list(h.coeffs) for h in self.halfspaces]
        # any nonzero direction in the lineality space keeps it unbounded
        if nullspace(rows):
            return False
        for subset in combinations(range(len(rows)), d - 1):
            sub = [rows[i] for i in subset] if subset else [[Fraction(0)] * d]
            for v in nullspace(sub):
                if any(x != 0 for x in v):
                    for w in (v, [-x for x in v]):
                        if all(sum(a * b for a, b in zip(row, w)) >= 0
                               for row in rows):
                            return False
        return True

    def is_empty_interior(self) -> bool:
        """True when no point satisfies every constraint strictly."""
        vs = self.vertices()
        if not vs:
            return True
        d = self.dim
        centroid = [sum((v[i] for v in vs), Fraction(0)) / len(vs) for i in range(d)]
        return not self.strictly_contains(centroid)


def triangulate(poly: Polytope) -> list[tuple[tuple[Fraction, ...], ...]]:
    """Exact triangulation of a bounded polytope's closure into simplices
    given as vertex tuples, by a fan over facets from a base vertex."""
    verts = poly.vertices()
    if not verts:
        return []
    return _triangulate_rec(poly, verts)


def _facets(poly: Polytope, verts):
    """(halfspace index, vertex subset) for every facet, deduplicated."""
    d = poly.dim
    out = []
    seen_sets = set()
    for i, h in enumerate(poly.halfspaces):
        tight = tuple(v for v in verts if h.value(v) == 0)
        if len(tight) < d:
            continue
        key = frozenset(tight)
        if key in seen_sets:
            continue
        # affine rank check: facet must have dimension d-1
        base = tight[0]
        rows = [[x - b for x, b in zip(v, base)] for v in tight[1:]]
        if rank(rows) != d - 1:
            continue
        seen_sets.add(key)
        out.append((i, tight))
    return out


def _triangulate_rec(poly: Polytope, verts) -> list[tuple]:
    d = poly.dim
    if d == 0:
        return [(verts[0],)]
    if d == 1:
        lo = min(verts)
        hi = max(verts)
        return [] if lo == hi else [(lo, hi)]
    v0 = verts[0]
    simplices = []
    for i, tight in _facets(poly, verts):
        if poly.halfspaces[i].value(v0) == 0:
            continue
        # parametrize the facet hyperplane and recurse in d-1 coordinates
        h = poly.halfspaces[i]
        base, basis = _hyperplane_chart(h)
        chart = _chart_inverse(base, basis)
        sub_hs = []
        for j, other in enumerate(poly.halfspaces):
            if j == i:
                continue
            coeffs = [sum(other.coeffs[k] * basis[m][k] for k in range(d))
                      for m in range(d - 1)]
            const = other.value(base)
            sub_hs.append(HalfSpace.create(coeffs, const, other.strict))
        sub_poly = Polytope(d - 1, tuple(sub_hs))
        sub_verts = sorted({chart(v) for v in tight})
        for simplex in _triangulate_rec(sub_poly, sub_verts):
            lifted = tuple(_lift(base, basis, s) for s in simplex)
            simplices.append((v0,) + lifted)
    return simplices


def _hyperplane_chart(h: HalfSpace):
    """A base point and basis of {x : h(x) = 0}."""
    from ..linalg import solve_affine

    sol = solve_affine([list(h.coeffs)], [-h.const])
    if sol is None:
        raise ValueError("inconsistent hyperplane")
    return sol[0], sol[1]


def _chart_inverse(base, basis):
    """Coordinates of an on-hyperplane point in the given affine chart."""
    cols = list(zip(*basis))

    def chart(v):
        rhs = [x - b for x, b in zip(v, base)]
        sol = solve_unique([list(c) for c in cols], rhs)
        if sol is None:
            raise ValueError("point not on the hyperplane chart")
        return tuple(sol)

    return chart


def _lift(base, basis, t):
    d = len(base)
    return tuple(base[i] + sum((Fraction(t[m]) * basis[m][i] for m in range(len(basis))),
                               Fraction(0)) for i in range(d))


def volume(poly: Polytope) -> Fraction:
    """Exact Euclidean volume of a bounded polytope (its closure).

    Zero-dimensional polytopes get the point-mass convention ``1``.
    """
    if poly.dim == 0:
        return Fraction(1)
    if not poly.is_bounded():
        raise ValueError("volume of an unbounded polytope")
    total = Fraction(0)
    d = poly.dim
    fact = 1
    for k in range(2, d + 1):
        fact *= k
    for simplex in triangulate(poly):
        v0 = simplex[0]
        rows = [[x - b for x, b in zip(v, v0)] for v in simplex[1:]]
        total += abs(det(rows))
    return total / fact
