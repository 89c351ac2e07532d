r"""Edge contraction for stable ribbon graphs.

Contracting an edge ``e`` shortens every face word through it: the new face
permutation sends ``h`` to the first of ``sigma2(h), sigma2^2(h), ...`` that
is not a half-edge of ``e``.  The new vertex permutation is recovered as
``sigma0' = sigma1' sigma2'^{-1}`` rather than by cycle surgery, and the
genus defect of the collapsed vertex follows the loop trichotomy: a
non-loop adds the defects of its endpoints, a loop with both halves in one
vertex cycle leaves the defect alone, and a loop joining two different
cycles of one vertex raises it by one.

Contracting a whole subset of edges at once collapses each connected
component of the subset to a vertex whose defect is the genus of the
first-return structure induced on that component.
"""

from __future__ import annotations

from .permgraph import HalfEdgeSet, StableRibbonGraph, Vertex, genus


class ContractionError(ValueError):
    """Raised when a requested contraction is not admissible."""


def _forbidden_faces(g: StableRibbonGraph, contract: set[int]) -> list[tuple[int, ...]]:
    """Faces whose entire edge set lies in ``contract`` (they would lose all
    their edges, which is never admissible: a face must keep positive
    perimeter)."""
    bad = []
    for cyc in g.sigma2_cycles:
        if all((h >> 1) in contract for h in cyc):
            bad.append(cyc)
    return bad


def contractible_edges(g: StableRibbonGraph) -> list[int]:
    """Edges admissible for single-edge contraction."""
    g.require_valid(require_stability=False)
    return [e for e in range(g.num_edges) if not _forbidden_faces(g, {e})]


def _skip_map(g: StableRibbonGraph, contract: set[int]) -> dict[int, int]:
    """First-return of ``sigma2`` on the half-edges of the kept edges."""
    s2 = g.sigma2
    out = {}
    for h in range(g.num_half_edges):
        if (h >> 1) in contract:
            continue
        x = s2[h]
        while (x >> 1) in contract:
            x = s2[x]
        out[h] = x
    return out


def _compact_relabel(g: StableRibbonGraph, contract: set[int]) -> dict[int, int]:
    """Old half-edge -> new half-edge map after deleting contracted edges,
    keeping the order of the surviving edges (so pairing is preserved)."""
    kept = [e for e in range(g.num_edges) if e not in contract]
    out = {}
    for new_e, old_e in enumerate(kept):
        out[2 * old_e] = 2 * new_e
        out[2 * old_e + 1] = 2 * new_e + 1
    return out


def _rebuild(g: StableRibbonGraph, contract: set[int],
             merged_blocks: list[tuple[set[int], int]]) -> StableRibbonGraph:
    """Assemble the contracted graph.

    ``merged_blocks`` lists ``(old half-edge set, defect)`` for the new
    vertices; the sets (minus contracted half-edges) must partition the
    surviving half-edges.  New vertex cycles come from
    ``sigma0' = sigma1' sigma2'^{-1}`` and are grouped by the given blocks.
    """
    skip = _skip_map(g, contract)
    remap = _compact_relabel(g, contract)
    n_new = 2 * (g.num_edges - len(contract))

    # sigma2' on the new labels, then sigma0'(h) = sigma1'(sigma2'^{-1}(h))
    s2_new = [0] * n_new
    for h_old, img_old in skip.items():
        s2_new[remap[h_old]] = remap[img_old]
    s2_inv = [0] * n_new
    for h, img in enumerate(s2_new):
        s2_inv[img] = h
    s0_new = [s2_inv[h] ^ 1 for h in range(n_new)]

    vertices = []
    assigned = [False] * n_new
    for old_block, defect in merged_blocks:
        new_block = sorted(remap[h] for h in old_block if (h >> 1) not in contract)
        if not new_block:
            raise AssertionError("contraction produced an empty vertex")
        cycles = []
        block_set = set(new_block)
        seen = set()
        for start in new_block:
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = s0_new[start]
            while x != start:
                if x not in block_set:
                    raise AssertionError("sigma0' does not respect the merged blocks")
                cyc.append(x)
                seen.add(x)
                x = s0_new[x]
            cycles.append(tuple(cyc))
        for h in new_block:
            assigned[h] = True
        vertices.append(Vertex(cycles=tuple(cycles), defect=defect))
    if not all(assigned):
        raise AssertionError("merged blocks do not cover the surviving half-edges")

    # carry face labels over: each old face keeps at least one half-edge
    new_labels = {}
    for cyc in g.sigma2_cycles:
        lab = g.face_label_of[cyc[0]]
        survivors = [h for h in cyc if (h >> 1) not in contract]
        new_labels[min(remap[h] for h in survivors)] = lab

    return StableRibbonGraph(HalfEdgeSet(n_new), tuple(vertices), new_labels)


def contract_edge(g: StableRibbonGraph, e: int) -> StableRibbonGraph:
    """Contract a single edge; raise :class:`ContractionError` if ``e`` is
    the only edge bounding some face."""
    g.require_valid(require_stability=False)
    if not (0 <= e < g.num_edges):
        raise ContractionError(f"edge {e} out of range (E={g.num_edges})")
    bad = _forbidden_faces(g, {e})
    if bad:
        raise ContractionError(
            f"edge {e} constitutes face {bad[0]} on its own and cannot be contracted")

    h0, h1 = 2 * e, 2 * e + 1
    v0, v1 = g.vertex_of[h0], g.vertex_of[h1]
    vs = g.vertices

    merged: list[tuple[set[int], int]] = []
    if v0 != v1:
        # non-loop: endpoints merge, defects add
        for vi, v in enumerate(vs):
            if vi == v0:
                merged.append((set(vs[v0].block) | set(vs[v1].block),
                               vs[v0].defect + vs[v1].defect))
            elif vi != v1:
                merged.append((set(v.block), v.defect))
    else:
        cyc0 = next(c for c in vs[v0].cycles if h0 in c)
        same_cycle = h1 in cyc0
        bump = 0 if same_cycle else 1
        for vi, v in enumerate(vs):
            if vi == v0:
                merged.append((set(v.block), v.defect + bump))
            else:
                merged.append((set(v.block), v.defect))

    return _rebuild(g, {e}, merged)


def _components(g: StableRibbonGraph, edges: set[int]) -> list[set[int]]:
    """Connected components of the subgraph spanned by ``edges`` (edges are
    adjacent when they share a vertex)."""
    parent = {e: e for e in edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_vertex: dict[int, list[int]] = {}
    for e in edges:
        for h in (2 * e, 2 * e + 1):
            by_vertex.setdefault(g.vertex_of[h], []).append(e)
    for group in by_vertex.values():
        for other in group[1:]:
            a, b = find(group[0]), find(other)
            if a != b:
                parent[a] = b
    comps: dict[int, set[int]] = {}
    for e in edges:
        comps.setdefault(find(e), set()).add(e)
    return sorted(comps.values(), key=min)


def induced_component_graph(g: StableRibbonGraph, component: set[int] | list[int]) -> StableRibbonGraph:
    """First-return structure on a connected edge subset.

    ``sigma0`` restricted to the component sends a half-edge to the first
    of its forward vertex-cycle images lying in the component; defects
    restrict.  Faces of the result are labelled ``1..k`` by minimal
    half-edge (they do not correspond to faces of ``g``); if the component
    is all of ``g``'s edges the original labels are reproduced.  The result
    can fail the stability clause, which is fine for its only use: its
    genus is the defect of the collapsed vertex.
    """
    g.require_valid(require_stability=False)
    comp = set(component)
    if not comp:
        raise ContractionError("empty component")
    if any(not (0 <= e < g.num_edges) for e in comp):
        raise ContractionError("component contains an out-of-range edge")
    pieces = _components(g, comp)
    if len(pieces) != 1:
        raise ContractionError(f"edge set {sorted(comp)} is not connected")

    keep = sorted(comp)
    remap = {}
    for new_e, old_e in enumerate(keep):
        remap[2 * old_e] = 2 * new_e
        remap[2 * old_e + 1] = 2 * new_e + 1
    n_new = 2 * len(keep)

    s0 = g.sigma0
    s0_new = [0] * n_new
    for old_h, new_h in remap.items():
        x = s0[old_h]
        while (x >> 1) not in comp:
            x = s0[x]
        s0_new[new_h] = remap[x]

    vertices = []
    for v in g.vertices:
        block_new = sorted(remap[h] for h in v.block if (h >> 1) in comp)
        if not block_new:
            continue
        cycles = []
        seen = set()
        for start in block_new:
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = s0_new[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = s0_new[x]
            cycles.append(tuple(cyc))
        vertices.append(Vertex(cycles=tuple(cycles), defect=v.defect))

    sub = StableRibbonGraph(HalfEdgeSet(n_new), tuple(vertices), {})
    # label faces: those that are faces of g keep g's label ordering first
    old_faces = {}
    for cyc in g.sigma2_cycles:
        mapped = tuple(sorted(remap[h] for h in cyc if (h >> 1) in comp))
        if len(mapped) == len(cyc):
            old_faces[mapped] = g.face_label_of[cyc[0]]
    keyed = []
    for cyc in sub.sigma2_cycles:
        ident = tuple(sorted(cyc))
        if ident in old_faces:
            keyed.append(((0, old_faces[ident]), cyc))
        else:
            keyed.append(((1, min(cyc)), cyc))
    keyed.sort(key=lambda t: t[0])
    labels = {cyc[0]: i + 1 for i, (_, cyc) in enumerate(keyed)}
    return StableRibbonGraph(HalfEdgeSet(n_new), tuple(vertices), labels)


def contract_set(g: StableRibbonGraph, edges: set[int] | list[int]) -> StableRibbonGraph:
    """Contract a whole edge subset at once.

    Equal (up to isomorphism fixing face labels) to folding
    :func:`contract_edge` over the subset in any admissible order.  The
    defect of a vertex collapsed from a connected component is the genus of
    the component's first-return structure.
    """
    g.require_valid(require_stability=False)
    contract = set(edges)
    if not contract:
        return g
    if any(not (0 <= e < g.num_edges) for e in contract):
        raise ContractionError("contraction set contains an out-of-range edge")
    bad = _forbidden_faces(g, contract)
    if bad:
        raise ContractionError(
            f"face {bad[0]} would lose all of its edges under {sorted(contract)}")

    comps = _components(g, contract)
    merged: list[tuple[set[int], int]] = []
    consumed_vertices: set[int] = set()
    for comp in comps:
        touched = {g.vertex_of[h] for e in comp for h in (2 * e, 2 * e + 1)}
        if touched & consumed_vertices:
            raise AssertionError("components are not vertex-disjoint")
        consumed_vertices |= touched
        block = set()
        for vi in touched:
            block |= set(g.vertices[vi].block)
        defect = genus(induced_component_graph(g, comp))
        merged.append((block, defect))
    for vi, v in enumerate(g.vertices):
        if vi not in consumed_vertices:
            merged.append((set(v.block), v.defect))

    return _rebuild(g, contract, merged)
