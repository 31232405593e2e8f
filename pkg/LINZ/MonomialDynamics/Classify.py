import logging
from collections import namedtuple
from enum import Enum

import networkx as nx

from .DependencyGraph import DependencyGraph


class ComponentStatus(str, Enum):
    LoopNumberOne = "LoopNumberOne"
    LoopNumberZero = "LoopNumberZero"
    ReachesZero = "ReachesZero"
    Obstructs = "Obstructs"


class VertexCriterion(str, Enum):
    TwoClosedWalksDifferByOne = "TwoClosedWalksDifferByOne"
    WalkToZero = "WalkToZero"
    NoClosedWalk = "NoClosedWalk"
    Fails = "Fails"


class ComponentVerdict(namedtuple("ComponentVerdict", "componentId vertices status loopNumber reachesZero")):
    __slots__ = ()

    def obstructs(self):
        return self.status == ComponentStatus.Obstructs


class SystemVerdict(namedtuple("SystemVerdict", "isFixedPointSystem componentVerdicts vertexCriteria")):
    """
    Result of classifying a system.  vertexCriteria is indexed by vertex and
    gives the first criterion the vertex satisfies.
    """

    __slots__ = ()

    def obstructions(self):
        return [v for v in self.componentVerdicts if v.obstructs()]


def componentStatus(loopNumber, reachesZero):
    if loopNumber == 0:
        return ComponentStatus.LoopNumberZero
    if loopNumber == 1:
        return ComponentStatus.LoopNumberOne
    if reachesZero:
        return ComponentStatus.ReachesZero
    return ComponentStatus.Obstructs


def vertexCriterion(loopNumber, reachesZero):
    if loopNumber == 1:
        return VertexCriterion.TwoClosedWalksDifferByOne
    if reachesZero:
        return VertexCriterion.WalkToZero
    if loopNumber == 0:
        return VertexCriterion.NoClosedWalk
    return VertexCriterion.Fails


def classify(system, graph=None):
    """
    Decides whether the system is a fixed point system from its dependency
    graph.  It is one exactly when every strongly connected component has
    loop number 0 or 1, or has a walk to a zero.
    """
    if graph is None:
        graph = DependencyGraph.fromSystem(system)
    decomposition = graph.stronglyConnectedComponents()
    verdicts = []
    criteria = [None] * system.n()
    for cid, c in enumerate(decomposition.components()):
        status = componentStatus(c.loopNumber, c.reachesZero)
        verdicts.append(ComponentVerdict(cid, c.vertices, status, c.loopNumber, c.reachesZero))
        criterion = vertexCriterion(c.loopNumber, c.reachesZero)
        for v in c.vertices:
            criteria[v] = criterion
    isFixedPointSystem = not any(v.obstructs() for v in verdicts)
    logging.info(
        "Classified system of dimension %s: %s components, fixed point system %s",
        system.n(),
        len(verdicts),
        isFixedPointSystem,
    )
    return SystemVerdict(isFixedPointSystem, tuple(verdicts), tuple(criteria))


def vertexCriterionByWalks(graph, v):
    """
    The vertex criterion found by searching walks directly rather than from
    component data: closed walks at v up to 2n^2+2 steps, and any walk to a
    zero.
    """
    n = graph.n()
    frontier = {v}
    closed = []
    for length in range(1, 2 * n * n + 3):
        frontier = set(w for u in frontier for w in graph.successors(u))
        if v in frontier:
            closed.append(length)
    lengths = set(closed)
    if any(length + 1 in lengths for length in closed):
        return VertexCriterion.TwoClosedWalksDifferByOne
    if v in graph.zeros() or any(z in graph.zeros() for z in nx.descendants(graph.toNetworkx(), v)):
        return VertexCriterion.WalkToZero
    if not closed:
        return VertexCriterion.NoClosedWalk
    return VertexCriterion.Fails


def isTriangular(system):
    """
    True if every f_i depends only on x_1..x_i
    """
    return all(c.mask >> (i + 1) == 0 for i, c in enumerate(system.components()))
