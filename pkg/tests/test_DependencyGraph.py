import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from LINZ.MonomialDynamics.DependencyGraph import DependencyGraph
from LINZ.MonomialDynamics.Error import InvalidValueError, OutOfRangeError, ResourceLimitError
from LINZ.MonomialDynamics.Transform import cycleSystem, randomStronglyConnectedSystem

from .helpers import system
from .strategies import systems


def _isStronglyConnected(adjacency):
    n = adjacency.shape[0]
    reach = adjacency | np.identity(n, dtype=bool)
    for _ in range(n):
        reach = (reach.astype(int) @ reach.astype(int)) > 0
    return bool(reach.all())


def _adjacencies(k, masks, edges):
    for mask in masks:
        adjacency = np.zeros((k, k), dtype=bool)
        for bit, (i, j) in enumerate(edges):
            if mask >> bit & 1:
                adjacency[i, j] = True
        yield adjacency


def _checkLoopNumbers(adjacency):
    graph = DependencyGraph(adjacency)
    vertices = range(adjacency.shape[0])
    assert graph.loopNumber(vertices) == graph.loopNumberOracle(vertices), graph.edges()


def _randomStronglyConnected(count):
    rng = np.random.default_rng(20240611)
    for _ in range(count):
        n = int(rng.integers(1, 11))
        density = float(rng.choice([0.0, 0.1, 0.2, 0.4]))
        yield DependencyGraph.fromSystem(randomStronglyConnectedSystem(n, density, rng))


def test_buildExample1(example1):
    graph = DependencyGraph.fromSystem(example1)
    assert set(graph.edges()) == {(0, 2), (1, 0), (1, 3), (2, 3), (3, 0)}
    assert graph.zeros() == frozenset()


def test_buildExample2(example2):
    graph = DependencyGraph.fromSystem(example2)
    assert graph.n() == 11
    assert graph.zeros() == frozenset([10])
    assert len(graph.edges()) == 18


def test_buildConstantOnes():
    graph = DependencyGraph.fromSystem(system(1, 1))
    assert graph.edges() == []
    assert graph.reconstructSystem() == system(1, 1)


def test_zeroVertexCannotHaveEdges():
    with pytest.raises(InvalidValueError):
        DependencyGraph([[True, False], [False, False]], zeros=[0])
    with pytest.raises(OutOfRangeError):
        DependencyGraph([[False]], zeros=[1])


def test_reconstructExamples(example1, example2):
    assert DependencyGraph.fromSystem(example1).reconstructSystem() == example1
    assert DependencyGraph.fromSystem(example2).reconstructSystem() == example2


@given(systems(maxN=10))
def test_reconstructRoundTrip(f):
    assert DependencyGraph.fromSystem(f).reconstructSystem() == f


def test_componentsExample1(example1):
    decomposition = DependencyGraph.fromSystem(example1).stronglyConnectedComponents()
    assert [c.vertices for c in decomposition] == [(1,), (0, 2, 3)]
    assert [c.loopNumber for c in decomposition] == [0, 3]
    assert not any(c.reachesZero for c in decomposition)
    assert decomposition.leq(0, 1) and not decomposition.leq(1, 0)


def test_componentsExample2(example2):
    graph = DependencyGraph.fromSystem(example2)
    decomposition = graph.stronglyConnectedComponents()
    assert [c.vertices for c in decomposition] == [(0, 1, 9), (2, 3, 5, 6), (4, 7, 8), (10,)]
    assert [c.loopNumber for c in decomposition] == [3, 1, 1, 0]
    assert [graph.reachesZero(decomposition, cid) for cid in range(4)] == [True, False, False, True]
    assert decomposition.componentOf(9) == 0
    assert decomposition.leq(0, 3) and decomposition.leq(1, 2) and not decomposition.leq(2, 1)
    assert decomposition.zeroSplit() == ([0, 1, 9, 10], [2, 3, 4, 5, 6, 7, 8])


def test_isolatedVerticesAreSingletons():
    decomposition = DependencyGraph.fromSystem(system(1, 1, 1)).stronglyConnectedComponents()
    assert [c.vertices for c in decomposition] == [(0,), (1,), (2,)]
    assert decomposition.order() == {(0, 0), (1, 1), (2, 2)}


@settings(max_examples=150)
@given(systems(maxN=9))
def test_componentOrderIsPartialOrder(f):
    graph = DependencyGraph.fromSystem(f)
    decomposition = graph.stronglyConnectedComponents()
    ids = range(len(decomposition))
    vertices = [v for c in decomposition for v in c.vertices]
    assert sorted(vertices) == list(range(f.n()))
    for a in ids:
        assert decomposition.leq(a, a)
        for b in ids:
            if a != b:
                assert not (decomposition.leq(a, b) and decomposition.leq(b, a))
                if decomposition.leq(a, b):
                    assert a < b
            for c in ids:
                if decomposition.leq(a, b) and decomposition.leq(b, c):
                    assert decomposition.leq(a, c)
    reach = graph.matrixPower(0)
    for m in range(1, f.n() + 1):
        reach = reach | graph.matrixPower(m)
    for a in ids:
        for b in ids:
            u = decomposition.component(a).vertices[0]
            v = decomposition.component(b).vertices[0]
            assert decomposition.leq(a, b) == bool(reach[u, v])


@given(systems(maxN=10))
def test_reachabilityComponentsAgree(f):
    graph = DependencyGraph.fromSystem(f)
    expected = sorted(c.vertices for c in graph.stronglyConnectedComponents())
    assert graph.reachabilityComponents() == expected


def test_loopNumberSimpleCases(trigon):
    assert DependencyGraph.fromSystem(system([1])).loopNumber([0]) == 1
    assert DependencyGraph.fromSystem(system(1)).loopNumber([0]) == 0
    assert DependencyGraph.fromSystem(trigon).loopNumber([0, 1, 2]) == 3
    with pytest.raises(InvalidValueError):
        DependencyGraph.fromSystem(system([2], 1)).loopNumber([0, 1])
    with pytest.raises(InvalidValueError):
        DependencyGraph.fromSystem(trigon).loopNumber([])


def test_loopNumberOracleCases(trigon):
    assert DependencyGraph.fromSystem(trigon).loopNumberOracle([0, 1, 2]) == 3
    assert DependencyGraph.fromSystem(system(1)).loopNumberOracle([0]) == 0
    # circuits of length 2 and 3 through a1
    graph = DependencyGraph.fromSystem(system([2, 3], [1], [4], [1]))
    assert graph.loopNumberOracle(range(4)) == 1
    assert graph.loopNumber(range(4)) == 1


def test_loopNumberOracleLimit():
    graph = DependencyGraph.fromSystem(cycleSystem(13))
    with pytest.raises(ResourceLimitError):
        graph.loopNumberOracle(range(13))
    assert graph.loopNumberOracle(range(13), limit=13) == 13


def test_loopNumberAllSmallDigraphs():
    checked = 0
    for k in range(1, 5):
        edges = list(itertools.product(range(k), repeat=2))
        for adjacency in _adjacencies(k, range(1 << len(edges)), edges):
            if _isStronglyConnected(adjacency):
                _checkLoopNumbers(adjacency)
                checked += 1
    assert checked > 1000


def test_loopNumberFiveVertexHamiltonian():
    cycle = [(i, (i + 1) % 5) for i in range(5)]
    extra = [(i, j) for i in range(5) for j in range(5) if i != j and (i, j) not in cycle]
    for adjacency in _adjacencies(5, range(1 << len(extra)), extra):
        for i, j in cycle:
            adjacency[i, j] = True
        _checkLoopNumbers(adjacency)


@pytest.mark.slow
def test_loopNumberAllFiveVertexDigraphs():
    edges = [(i, j) for i in range(5) for j in range(5) if i != j]
    for adjacency in _adjacencies(5, range(1 << len(edges)), edges):
        if _isStronglyConnected(adjacency):
            _checkLoopNumbers(adjacency)


def test_loopNumberRandomDigraphs():
    for graph in _randomStronglyConnected(250):
        vertices = range(graph.n())
        t = graph.loopNumber(vertices)
        assert t == graph.loopNumberOracle(vertices)
        for base in vertices:
            assert graph.loopNumberOracle(vertices, base=base) == t


def test_closedWalksAndLoopClasses():
    for graph in _randomStronglyConnected(100):
        k = graph.n()
        vertices = list(range(k))
        t = graph.loopNumber(vertices)
        classes = graph.loopClasses(vertices, t)
        assert len(classes) == t
        assert sorted(v for c in classes for v in c) == vertices
        classOf = dict((v, j) for j, c in enumerate(classes) for v in c)
        for i, j in graph.edges():
            assert classOf[j] == (classOf[i] + 1) % t
        for length in range(1, 2 * k * k):
            power = graph.matrixPower(length)
            if power.diagonal().any():
                assert length % t == 0
            for a in vertices:
                for b in vertices:
                    if power[a, b]:
                        assert (classOf[b] - classOf[a] - length) % t == 0


def test_loopClassesExamples(example1, trigon):
    graph = DependencyGraph.fromSystem(example1)
    assert graph.loopClasses([0, 2, 3], 3) == ((0,), (2,), (3,))
    assert DependencyGraph.fromSystem(cycleSystem(5)).loopClasses(range(5), 5) == tuple((v,) for v in range(5))
    mixed = DependencyGraph.fromSystem(system([2, 3], [1], [4], [1]))
    assert mixed.loopClasses(range(4), 1) == ((0, 1, 2, 3),)
    with pytest.raises(InvalidValueError):
        graph.loopClasses([0, 2, 3], 0)
    with pytest.raises(InvalidValueError):
        DependencyGraph.fromSystem(trigon).loopClasses(range(3), 2)


def test_walkExists(example1):
    graph = DependencyGraph.fromSystem(example1)
    assert graph.walkExists(1, 2, 2)
    assert not graph.walkExists(1, 2, 1)
    assert all(graph.walkExists(i, i, 0) for i in range(4))
    isolated = DependencyGraph.fromSystem(system(1, 1))
    assert not any(isolated.walkExists(0, j, 1) for j in range(2))
    with pytest.raises(InvalidValueError):
        graph.walkExists(0, 0, -1)


def test_matrixPowerMatchesRepeatedProduct(example2):
    graph = DependencyGraph.fromSystem(example2)
    power = np.identity(11, dtype=bool)
    for m in range(12):
        assert np.array_equal(graph.matrixPower(m), power)
        power = (power.astype(int) @ graph.adjacency().astype(int)) > 0


def test_transientBoundOfCycles(example1):
    for t in range(1, 8):
        assert DependencyGraph.fromSystem(cycleSystem(t)).transientBound(range(t)) == 2 * t - 2
    assert DependencyGraph.fromSystem(example1).transientBound([0, 2, 3]) == 4
    with pytest.raises(InvalidValueError):
        DependencyGraph.fromSystem(system(1)).transientBound([0])


def test_transientBoundTwoCircuits():
    graph = DependencyGraph.fromSystem(system([2, 3], [1], [4], [1]))
    m = graph.transientBound(range(4))
    for length in range(m, m + 12):
        assert graph.matrixPower(length).all()


def test_transientBoundRandom():
    for graph in _randomStronglyConnected(120):
        vertices = list(range(graph.n()))
        t = graph.loopNumber(vertices)
        m = graph.transientBound(vertices)
        classOf = dict((v, j) for j, c in enumerate(graph.loopClasses(vertices, t)) for v in c)
        for length in range(m, m + 2 * t + 2):
            power = graph.matrixPower(length)
            for a in vertices:
                for b in vertices:
                    assert bool(power[a, b]) == ((classOf[b] - classOf[a] - length) % t == 0)


def test_dotExample1(example1):
    dot = DependencyGraph.fromSystem(example1).toDot()
    assert dot.count("->") == 5
    assert "eps" not in dot
    assert "a1 -> a3" in dot
    assert "t=3" in dot and "t=0" in dot
    assert dot.count("subgraph cluster_") == 2


def test_dotExample2(example2):
    dot = DependencyGraph.fromSystem(example2).toDot()
    assert "a11 -> eps" in dot
    assert dot.count("->") == 19
