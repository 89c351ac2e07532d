import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ribboncells.permgraph import HalfEdgeSet, StableRibbonGraph, Vertex


def make_graph(vertex_data, face_labels=None):
    """vertex_data: list of (cycles, defect); labels by minimal half-edge
    when omitted."""
    vertices = tuple(Vertex(cycles=tuple(tuple(c) for c in cycles), defect=defect)
                     for cycles, defect in vertex_data)
    nh = sum(v.degree for v in vertices)
    g = StableRibbonGraph(HalfEdgeSet(nh), vertices, face_labels or {})
    if face_labels is None:
        labels = {cyc[0]: i + 1 for i, cyc in enumerate(g.sigma2_cycles)}
        g = StableRibbonGraph(HalfEdgeSet(nh), vertices, labels)
    return g


@pytest.fixture
def theta():
    """Two trivalent vertices joined by three edges, a single face."""
    return make_graph([([(0, 2, 4)], 0), ([(1, 3, 5)], 0)])


@pytest.fixture
def planar_theta():
    """Same underlying graph embedded with three faces (genus 0)."""
    return make_graph([([(0, 2, 4)], 0), ([(1, 5, 3)], 0)])


@pytest.fixture
def single_edge_defects():
    """One edge joining two defect-1 vertices of degree 1."""
    return make_graph([([(0,)], 1), ([(1,)], 1)])


@pytest.fixture
def dumbbell():
    """Two loops joined by a bridge; genus 0 with three faces."""
    return make_graph([([(0, 1, 4)], 0), ([(2, 3, 5)], 0)])
