r"""Curvature 2-forms on cells, orientation, and exact intersection numbers.

Each face i of a graph class carries the constant 2-form

    omega_i = (1/p_i^2) sum_{a<b<=k-1} dl_{e_a} ^ dl_{e_b}

over the first k-1 sides of its face word (an edge bordering the face
twice contributes the same differential twice, killing its own wedge
terms).  Restricted to a top cell over fixed perimeters, the product
``omega_1^{d_1} ... omega_n^{d_n}`` is a constant multiple of the chart
volume form; summing ``sign * coefficient * volume / |Aut|`` over all
trivalent classes yields the intersection number, independent of the
perimeters chosen.

Cells are oriented so that ``(sum_i p_i^2 omega_i)^D`` is positive; the
overall normalization makes the (0, 3) number equal to 1 and is then fixed
once and for all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .cells import CellPolytope, cell_polytope
from .enumeration import GraphClass, automorphisms, enumerate_trivalent
from .permgraph import StableRibbonGraph, faces
from .polyform import Form, Polynomial, volume


class QueryError(ValueError):
    pass


class OrientationError(ValueError):
    """The reference volume form vanished on a cell; the orientation
    convention cannot decide a sign and guessing is not allowed."""


@dataclass(frozen=True)
class OmegaForm:
    """Constant curvature 2-form of one face, as an antisymmetric edge-pair
    matrix scaled by the inverse squared perimeter."""

    face_label: int
    num_edges: int
    pairs: tuple[tuple[tuple[int, int], Fraction], ...]

    def ambient_form(self) -> Form:
        E = self.num_edges
        comps = {}
        for (a, b), c in self.pairs:
            comps[(a, b)] = Polynomial.constant(E, c)
        return Form(E, 2, comps)


def omega(g: StableRibbonGraph, face_label: int, perimeters: Sequence,
          start_side: int = 0) -> OmegaForm:
    """The curvature form of one face; ``start_side`` rotates which side of
    the face word is taken first (the restriction to any cell chart is
    independent of that choice, modulo the perimeter relation)."""
    g.require_valid()
    p = [Fraction(x) for x in perimeters]
    if len(p) != g.num_faces:
        raise ValueError(f"expected {g.num_faces} perimeters")
    word = next(w for w in faces(g) if w.label == face_label)
    k = word.degree
    edges = word.edges[start_side:] + word.edges[:start_side]
    scale = Fraction(1) / (p[face_label - 1] ** 2)
    acc: dict[tuple[int, int], Fraction] = {}
    for a in range(k - 1):
        for b in range(a + 1, k - 1):
            ea, eb = edges[a], edges[b]
            if ea == eb:
                continue
            key, sgn = ((ea, eb), 1) if ea < eb else ((eb, ea), -1)
            acc[key] = acc.get(key, Fraction(0)) + sgn * scale
    pairs = tuple(sorted((k2, v) for k2, v in acc.items() if v != 0))
    return OmegaForm(face_label=face_label, num_edges=g.num_edges, pairs=pairs)


def omega_on_chart(form: OmegaForm, cell: CellPolytope) -> Form:
    """The 2-form restricted to the cell's free-coordinate chart."""
    return _chart_form(form, cell)


def _chart_form(form: OmegaForm, cell: CellPolytope) -> Form:
    """Substitute the chart differentials dl_e = sum_j coeffs[e][j] dx_j."""
    d = cell.dim
    out = Form.zero(d, 2)
    for (a, b), c in form.pairs:
        da = Form(d, 1, {(j,): Polynomial.constant(d, cell.edge_charts[a][0][j])
                         for j in range(d) if cell.edge_charts[a][0][j] != 0})
        db = Form(d, 1, {(j,): Polynomial.constant(d, cell.edge_charts[b][0][j])
                         for j in range(d) if cell.edge_charts[b][0][j] != 0})
        out = out + da.wedge(db) * c
    return out


def restrict_to_cell(forms: Sequence[OmegaForm], cell: CellPolytope) -> Fraction:
    """Top coefficient of the wedge product of the given 2-forms in the
    cell's free-coordinate chart."""
    if cell.is_empty:
        raise ValueError("empty cell")
    d = cell.dim
    if 2 * len(forms) != d:
        raise ValueError(
            f"product of {len(forms)} two-forms has degree {2 * len(forms)}, "
            f"cell dimension is {d}")
    if cell.rank_deficient:
        raise ValueError("rank-deficient incidence matrix over these perimeters")
    if not forms:
        return Fraction(1)
    acc = _chart_form(forms[0], cell)
    for f in forms[1:]:
        acc = acc.wedge(_chart_form(f, cell))
    top = acc.coefficient(tuple(range(d)))
    return top.terms.get((0,) * d, Fraction(0))


def reference_form(g: StableRibbonGraph, perimeters: Sequence) -> list[OmegaForm]:
    """The forms p_i^2 omega_i whose sum orients the top cells."""
    out = []
    p = [Fraction(x) for x in perimeters]
    for i in range(1, g.num_faces + 1):
        w = omega(g, i, p)
        scaled = tuple((pair, c * p[i - 1] ** 2) for pair, c in w.pairs)
        out.append(OmegaForm(i, w.num_edges, scaled))
    return out


def orientation_sign(g: StableRibbonGraph, perimeters: Sequence,
                     cell: CellPolytope | None = None) -> int:
    """Sign of ``(sum_i p_i^2 omega_i)^D / D!`` in the cell chart; +1 for
    zero-dimensional cells by convention."""
    if cell is None:
        cell = cell_polytope(g, perimeters)
    if cell.is_empty:
        raise ValueError("empty cell has no orientation")
    D = cell.dim // 2
    if cell.dim % 2 != 0:
        raise OrientationError("odd-dimensional cell cannot be oriented here")
    if D == 0:
        return 1
    refs = reference_form(g, perimeters)
    total = OmegaForm(0, g.num_edges, tuple(
        sorted(_merge_pairs(refs).items())))
    coeff = restrict_to_cell([total] * D, cell) / factorial(D)
    if coeff == 0:
        raise OrientationError(
            "reference form degenerate on this cell; refusing to guess a sign")
    return 1 if coeff > 0 else -1


def _merge_pairs(forms: Sequence[OmegaForm]) -> dict[tuple[int, int], Fraction]:
    acc: dict[tuple[int, int], Fraction] = {}
    for f in forms:
        for pair, c in f.pairs:
            acc[pair] = acc.get(pair, Fraction(0)) + c
    return {k: v for k, v in acc.items() if v != 0}


@dataclass(frozen=True)
class IntersectionQuery:
    genus: int
    exponents: tuple[int, ...]
    perimeters: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)


def make_query(genus: int, exponents: Sequence[int],
               perimeters: Sequence | None = None) -> IntersectionQuery:
    d = tuple(int(x) for x in exponents)
    n = len(d)
    if n < 1 or any(x < 0 for x in d):
        raise QueryError("exponents must be non-negative, one per face")
    target = 3 * genus - 3 + n
    if sum(d) != target:
        raise QueryError(
            f"exponents sum to {sum(d)}, expected 3g-3+n = {target}")
    p = tuple(Fraction(x) for x in perimeters) if perimeters is not None \
        else default_perimeters(n)
    if len(p) != n or any(x <= 0 for x in p):
        raise QueryError("need one positive perimeter per face")
    return IntersectionQuery(genus, d, p)


def default_perimeters(n: int) -> tuple[Fraction, ...]:
    """Distinct primes, to stay clear of boundary coincidences."""
    primes = []
    x = 3
    while len(primes) < n:
        if all(x % q for q in range(2, x)):
            primes.append(Fraction(x))
        x += 1
    return tuple(primes)


@dataclass(frozen=True)
class CellContribution:
    key: bytes
    aut_order: int
    empty: bool
    orientation: int
    coefficient: Fraction
    chart_volume: Fraction
    contribution: Fraction


@dataclass(frozen=True)
class IntersectionResult:
    query: IntersectionQuery
    value: Fraction
    cells: tuple[CellContribution, ...]


@lru_cache(maxsize=None)
def _trivalent_classes(genus: int, n: int) -> tuple[GraphClass, ...]:
    return tuple(enumerate_trivalent(genus, n))


def integrate_cell(cls: GraphClass, query: IntersectionQuery) -> CellContribution:
    """Exact contribution of one trivalent class to the query."""
    g = cls.graph
    cell = cell_polytope(g, query.perimeters)
    if cell.is_empty:
        return CellContribution(cls.key, automorphisms(g).order, True, 1,
                                Fraction(0), Fraction(0), Fraction(0))
    form_list = []
    for i, d_i in enumerate(query.exponents, start=1):
        form_list.extend([omega(g, i, query.perimeters)] * d_i)
    sign = orientation_sign(g, query.perimeters, cell)
    coeff = restrict_to_cell(form_list, cell)
    vol = volume(cell.polytope)
    aut = automorphisms(g).order
    contribution = sign * coeff * vol / aut
    return CellContribution(cls.key, aut, False, sign, coeff, vol, contribution)


def intersection_number(genus: int, exponents: Sequence[int],
                        perimeters: Sequence | None = None) -> IntersectionResult:
    """Sum of the top-cell integrals: the exact rational intersection
    number of the query, with the per-cell ledger."""
    query = make_query(genus, exponents, perimeters)
    classes = _trivalent_classes(genus, query.n)
    cells = tuple(integrate_cell(c, query) for c in classes)
    total = sum((c.contribution for c in cells), Fraction(0))
    return IntersectionResult(query=query, value=total, cells=cells)


def check_p_independence(genus: int, exponents: Sequence[int],
                         trials: Sequence[Sequence] ) -> list[IntersectionResult]:
    """Evaluate the same query at several perimeter vectors; the values
    must agree exactly."""
    results = [intersection_number(genus, exponents, p) for p in trials]
    values = {r.value for r in results}
    if len(values) != 1:
        raise ArithmeticError(
            f"intersection number depends on perimeters: {sorted(values)}")
    return results
