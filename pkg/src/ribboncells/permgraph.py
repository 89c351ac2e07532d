r"""Stable ribbon graphs as permutation data on half-edges.

A ribbon graph is stored as a pair of permutations on the set
``{0, ..., 2E-1}`` of half-edges: the edge involution ``sigma1`` is fixed
once and for all to pair ``2k`` with ``2k+1`` (so edge ``k`` always consists
of these two half-edges), and the vertex permutation ``sigma0`` is the
product of the cyclic orders at the vertices.  The faces are the cycles of
``sigma2 = sigma0^{-1} sigma1`` and carry labels ``1..n``.

A *stable* ribbon graph generalizes this: a vertex may carry a permutation
with several cycles (one per local branch at a singular point of the
surface of embedding) together with a non-negative integer *genus defect*
recording the genus of a collapsed unmarked piece.  Ordinary ribbon graphs
are the special case of one cycle per vertex and all defects zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class InvalidGraphError(ValueError):
    """Raised by operations whose input graph fails validation."""


@dataclass(frozen=True)
class Violation:
    """First violated invariant found by :func:`validate`."""

    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class HalfEdgeSet:
    """The set ``{0, ..., count-1}`` of half-edges; ``count`` is even.

    Half-edges ``2k`` and ``2k+1`` always form edge ``k``, so the edge
    involution never needs to be stored.
    """

    count: int

    @property
    def num_edges(self) -> int:
        return self.count // 2

    def partner(self, h: int) -> int:
        return h ^ 1

    def edge_of(self, h: int) -> int:
        return h >> 1


@dataclass(frozen=True)
class Vertex:
    """A vertex: a permutation (given by its cycles) of the incident
    half-edges, plus a genus defect."""

    cycles: tuple[tuple[int, ...], ...]
    defect: int = 0

    @property
    def block(self) -> tuple[int, ...]:
        """All half-edges incident to the vertex."""
        return tuple(h for c in self.cycles for h in c)

    @property
    def degree(self) -> int:
        return sum(len(c) for c in self.cycles)


@dataclass(frozen=True)
class FaceWord:
    """A face: one cycle of ``sigma2`` with its label.

    ``half_edges`` is the cyclic sequence of half-edges along the face and
    ``edges`` the induced sequence of edge indices; an edge bordering the
    face on both sides appears twice.
    """

    label: int
    half_edges: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.half_edges)


@dataclass(frozen=True, eq=False)
class StableRibbonGraph:
    """Stable ribbon graph with numbered faces.

    ``face_labels`` maps one representative half-edge of each ``sigma2``
    cycle to its label; labels form a bijection onto ``{1..n}``.  Instances
    are immutable; all derived structure is cached.  Construction does not
    validate -- call :func:`validate` (or :meth:`require_valid`) to check
    the invariants.
    """

    half_edges: HalfEdgeSet
    vertices: tuple[Vertex, ...]
    face_labels: Mapping[int, int] = field(default_factory=dict)

    # -- basic counts ------------------------------------------------

    @property
    def num_half_edges(self) -> int:
        return self.half_edges.count

    @property
    def num_edges(self) -> int:
        return self.half_edges.num_edges

    @property
    def num_faces(self) -> int:
        return len(self.sigma2_cycles)

    @property
    def defects(self) -> tuple[int, ...]:
        return tuple(v.defect for v in self.vertices)

    # -- permutations ------------------------------------------------

    @cached_property
    def sigma0(self) -> tuple[int, ...]:
        """Vertex permutation as an array, or raise if cycles overlap."""
        n = self.num_half_edges
        out = [-1] * n
        for v in self.vertices:
            for cyc in v.cycles:
                for i, h in enumerate(cyc):
                    if not (0 <= h < n) or out[h] != -1:
                        raise InvalidGraphError(
                            f"half-edge {h} repeated or out of range in vertex cycles")
                    out[h] = cyc[(i + 1) % len(cyc)]
        if -1 in out:
            raise InvalidGraphError("vertex cycles do not cover all half-edges")
        return tuple(out)

    def sigma1(self, h: int) -> int:
        return h ^ 1

    @cached_property
    def sigma0_inv(self) -> tuple[int, ...]:
        s = self.sigma0
        out = [0] * len(s)
        for h, s_h in enumerate(s):
            out[s_h] = h
        return tuple(out)

    @cached_property
    def sigma2(self) -> tuple[int, ...]:
        """Face permutation ``sigma0^{-1} sigma1``."""
        inv = self.sigma0_inv
        return tuple(inv[h ^ 1] for h in range(self.num_half_edges))

    @cached_property
    def sigma2_cycles(self) -> tuple[tuple[int, ...], ...]:
        return _cycles(self.sigma2)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """Index of the vertex containing each half-edge."""
        out = [-1] * self.num_half_edges
        for vi, v in enumerate(self.vertices):
            for h in v.block:
                out[h] = vi
        return tuple(out)

    @cached_property
    def face_label_of(self) -> tuple[int, ...]:
        """Face label of each half-edge (requires labels to be coherent)."""
        out = [0] * self.num_half_edges
        for cyc in self.sigma2_cycles:
            reps = [h for h in cyc if h in self.face_labels]
            if len(reps) != 1:
                raise InvalidGraphError(
                    f"face {cyc} has {len(reps)} labelled representatives, expected 1")
            lab = self.face_labels[reps[0]]
            for h in cyc:
                out[h] = lab
        return tuple(out)

    # -- validation ---------------------------------------------------

    def require_valid(self, require_stability: bool = True) -> "StableRibbonGraph":
        v = validate(self, require_stability=require_stability)
        if v is not None:
            raise InvalidGraphError(str(v))
        return self

    def is_ordinary(self) -> bool:
        """One cycle per vertex, all defects zero, all degrees >= 3."""
        return all(
            len(v.cycles) == 1 and v.defect == 0 and v.degree >= 3
            for v in self.vertices)

    def is_trivalent(self) -> bool:
        return self.is_ordinary() and all(v.degree == 3 for v in self.vertices)

    # -- hashing / equality on raw data -------------------------------

    def _key(self):
        return (self.half_edges.count,
                tuple((v.cycles, v.defect) for v in self.vertices),
                tuple(sorted(self.face_labels.items())))

    def __eq__(self, other):
        if not isinstance(other, StableRibbonGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        vs = ",".join(
            "".join("(" + " ".join(map(str, c)) + ")" for c in v.cycles)
            + (f"[{v.defect}]" if v.defect else "")
            for v in self.vertices)
        return f"StableRibbonGraph(E={self.num_edges}, vertices={vs})"


def _cycles(perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Cycles of a permutation, each starting at its minimal element,
    ordered by that element."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        h = perm[start]
        while h != start:
            cyc.append(h)
            seen[h] = True
            h = perm[h]
        out.append(tuple(cyc))
    return tuple(out)


def ordinary_graph(vertex_cycles: Iterable[Iterable[int]],
                   face_labels: Mapping[int, int] | None = None) -> StableRibbonGraph:
    """Convenience constructor for an ordinary ribbon graph (one cycle per
    vertex, defects zero).  If ``face_labels`` is omitted, faces are
    labelled ``1..n`` in order of their minimal half-edge."""
    vertices = tuple(Vertex(cycles=(tuple(c),)) for c in vertex_cycles)
    nh = sum(v.degree for v in vertices)
    g = StableRibbonGraph(HalfEdgeSet(nh), vertices, face_labels or {})
    if face_labels is None:
        labels = {cyc[0]: i + 1 for i, cyc in enumerate(g.sigma2_cycles)}
        g = StableRibbonGraph(HalfEdgeSet(nh), vertices, labels)
    return g


def validate(g: StableRibbonGraph, require_stability: bool = True) -> Violation | None:
    """Check all structural invariants; return the first violation or None.

    With ``require_stability=False`` the genus-defect stability clause is
    skipped (the induced first-return structures of contraction components
    may legitimately fail it).
    """
    n = g.half_edges.count
    if n <= 0 or n % 2 != 0:
        return Violation("half-edges", f"count must be a positive even integer, got {n}")

    seen = {}
    for vi, v in enumerate(g.vertices):
        if v.defect < 0:
            return Violation("defect", f"vertex {vi} has negative defect {v.defect}")
        for cyc in v.cycles:
            if len(cyc) == 0:
                return Violation("vertex-cycle", f"vertex {vi} has an empty cycle")
            for h in cyc:
                if not (0 <= h < n):
                    return Violation("vertex-cycle",
                                     f"half-edge {h} out of range at vertex {vi}")
                if h in seen:
                    return Violation("partition",
                                     f"half-edge {h} appears at vertices {seen[h]} and {vi}")
                seen[h] = vi
    if len(seen) != n:
        missing = sorted(set(range(n)) - set(seen))
        return Violation("partition", f"half-edges {missing} belong to no vertex")

    # face labels: bijection from sigma2-cycles onto {1..n_faces}, n_faces >= 1
    cycles = g.sigma2_cycles
    if not cycles:
        return Violation("faces", "graph has no faces; at least one numbered face required")
    labels = []
    for cyc in cycles:
        reps = [h for h in cyc if h in g.face_labels]
        if len(reps) != 1:
            return Violation(
                "face-labels",
                f"face {cyc} carries {len(reps)} representatives, expected exactly 1")
        labels.append(g.face_labels[reps[0]])
    if len(g.face_labels) != len(cycles):
        return Violation("face-labels", "spurious face label keys present")
    if sorted(labels) != list(range(1, len(cycles) + 1)):
        return Violation("face-labels",
                         f"labels {sorted(labels)} are not a bijection onto 1..{len(cycles)}")

    # connectivity of the underlying graph (vertex blocks joined by edges)
    parent = list(range(len(g.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    vert = g.vertex_of
    for e in range(g.num_edges):
        a, b = find(vert[2 * e]), find(vert[2 * e + 1])
        if a != b:
            parent[a] = b
    roots = {find(vi) for vi in range(len(g.vertices))}
    if len(roots) > 1:
        return Violation("connectivity", f"graph has {len(roots)} components")

    if require_stability:
        for vi, v in enumerate(g.vertices):
            if v.degree == 1 and v.defect == 0:
                return Violation(
                    "stability", f"vertex {vi} has degree 1 and genus defect 0")
            if (v.degree == 2 and len(v.cycles) == 1 and v.defect == 0):
                return Violation(
                    "stability",
                    f"vertex {vi} is a degree-2 transposition with genus defect 0")
    return None


def faces(g: StableRibbonGraph) -> list[FaceWord]:
    """The labelled face words: the cycles of ``sigma2`` with their edge
    sequences.  Every half-edge appears in exactly one word."""
    g.require_valid(require_stability=False)
    out = []
    for cyc in g.sigma2_cycles:
        lab = g.face_label_of[cyc[0]]
        out.append(FaceWord(label=lab, half_edges=cyc,
                            edges=tuple(h >> 1 for h in cyc)))
    out.sort(key=lambda f: f.label)
    return out


def genus(g: StableRibbonGraph) -> int:
    """Genus: arithmetic genus of the surface of embedding plus the sum of
    genus defects.

    The surface of embedding is reconstructed by giving every cycle of a
    vertex permutation its own point on a separate local branch: splitting
    each vertex into one vertex per cycle yields a (possibly disconnected)
    ordinary ribbon structure whose components are closed surfaces, glued
    back at the split points.  For a connected surface with branch points,
    the arithmetic genus is ``sum(component genera) + sum(branches-1 over
    singular points) - components + 1``.
    """
    g.require_valid(require_stability=False)

    # split components: union-find over vertex-permutation cycles via edges
    cycle_list = []
    cycle_of = [-1] * g.num_half_edges
    for v in g.vertices:
        for cyc in v.cycles:
            ci = len(cycle_list)
            cycle_list.append(cyc)
            for h in cyc:
                cycle_of[h] = ci

    parent = list(range(len(cycle_list)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(g.num_edges):
        a, b = find(cycle_of[2 * e]), find(cycle_of[2 * e + 1])
        if a != b:
            parent[a] = b

    comp_v: dict[int, int] = {}
    comp_e: dict[int, int] = {}
    comp_f: dict[int, int] = {}
    for ci in range(len(cycle_list)):
        comp_v[find(ci)] = comp_v.get(find(ci), 0) + 1
    for e in range(g.num_edges):
        r = find(cycle_of[2 * e])
        comp_e[r] = comp_e.get(r, 0) + 1
    for cyc in g.sigma2_cycles:
        r = find(cycle_of[cyc[0]])
        comp_f[r] = comp_f.get(r, 0) + 1

    genus_sum = 0
    for r, nv in comp_v.items():
        chi = nv - comp_e.get(r, 0) + comp_f.get(r, 0)
        if chi % 2 != 0:
            raise AssertionError("odd Euler characteristic in split component")
        genus_sum += (2 - chi) // 2

    num_components = len(comp_v)
    delta = sum(len(v.cycles) - 1 for v in g.vertices)
    arithmetic = genus_sum + delta - num_components + 1
    if arithmetic < 0:
        raise AssertionError("negative arithmetic genus")
    return arithmetic + sum(v.defect for v in g.vertices)


def perimeters(g: StableRibbonGraph, lengths: Sequence) -> tuple[Fraction, ...]:
    """Face perimeters for the given positive edge lengths, ordered by face
    label.  An edge bordering a face on both sides counts twice."""
    g.require_valid(require_stability=False)
    if len(lengths) != g.num_edges:
        raise ValueError(f"expected {g.num_edges} edge lengths, got {len(lengths)}")
    ls = [Fraction(x) for x in lengths]
    if any(x <= 0 for x in ls):
        raise ValueError("edge lengths must be strictly positive")
    out = [Fraction(0)] * (g.num_faces + 1)
    for w in faces(g):
        out[w.label] = sum((ls[e] for e in w.edges), Fraction(0))
    return tuple(out[1:])


def relabel(g: StableRibbonGraph, perm: Sequence[int]) -> StableRibbonGraph:
    """Transport the structure along a half-edge bijection ``h -> perm[h]``.

    ``perm`` must respect the canonical pairing: it must map the pair
    ``{2k, 2k+1}`` onto some pair ``{2m, 2m+1}``.
    """
    n = g.num_half_edges
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of the half-edges")
    for e in range(g.num_edges):
        if perm[2 * e] ^ 1 != perm[2 * e + 1]:
            raise ValueError("permutation does not respect the edge pairing")
    vertices = tuple(
        Vertex(cycles=tuple(tuple(perm[h] for h in cyc) for cyc in v.cycles),
               defect=v.defect)
        for v in g.vertices)
    labels = {perm[h]: lab for h, lab in g.face_labels.items()}
    return StableRibbonGraph(HalfEdgeSet(n), vertices, labels)


# -- JSON graph format ---------------------------------------------------
#
# {"half_edges": 2E,
#  "vertices": [{"cycles": [[h, ...], ...], "defect": d}, ...],
#  "face_labels": {"<representative half-edge>": label, ...}}


def to_json_dict(g: StableRibbonGraph) -> dict:
    return {
        "half_edges": g.half_edges.count,
        "vertices": [{"cycles": [list(c) for c in v.cycles], "defect": v.defect}
                     for v in g.vertices],
        "face_labels": {str(h): lab for h, lab in sorted(g.face_labels.items())},
    }


def from_json_dict(d: Mapping) -> StableRibbonGraph:
    try:
        nh = int(d["half_edges"])
        vertices = tuple(
            Vertex(cycles=tuple(tuple(int(h) for h in c) for c in v["cycles"]),
                   defect=int(v.get("defect", 0)))
            for v in d["vertices"])
        labels = {int(h): int(lab) for h, lab in d["face_labels"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph object: {exc}") from exc
    return StableRibbonGraph(HalfEdgeSet(nh), vertices, labels)


def dumps(g: StableRibbonGraph, **kw) -> str:
    return json.dumps(to_json_dict(g), **kw)


def loads(text: str) -> StableRibbonGraph:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON at offset {exc.pos}: {exc.msg}") from exc
    return from_json_dict(d)
