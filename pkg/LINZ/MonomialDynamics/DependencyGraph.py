import logging
import math
from collections import namedtuple
from functools import reduce

import graphviz
import networkx as nx
import numpy as np

from .Error import InvalidValueError, OutOfRangeError, ResourceLimitError
from .Monomial import Monomial, MonomialSystem


def boolProduct(a, b):
    # AND/OR product - only whether an entry is nonzero matters
    return np.dot(a.astype(np.uint32), b.astype(np.uint32)) > 0


class SccInfo(namedtuple("SccInfo", "vertices loopNumber reachesZero loopClasses")):
    """
    A strongly connected component of a dependency graph.

    vertices     ascending tuple of vertex indices
    loopNumber   the loop number t of the component (0 if it has no closed walk)
    reachesZero  True if some vertex has a walk to a zero
    loopClasses  the t loop equivalence classes, ordered so that every edge in
                 the component goes from class j to class j+1 mod t.  Empty
                 when t is 0.
    """

    __slots__ = ()

    def classSizes(self):
        return [len(c) for c in self.loopClasses]


class SccDecomposition(object):
    """
    The strongly connected components of a dependency graph together with the
    partial order on them (a <= b iff there is a walk from a to b).

    Components are numbered in a topological order of the condensation, ties
    broken by the smallest vertex of the component, so that components come
    before the components they have walks to.
    """

    def __init__(self, components, order):
        self._components = tuple(components)
        self._componentOf = {}
        for cid, c in enumerate(self._components):
            for v in c.vertices:
                self._componentOf[v] = cid
        self._order = frozenset(order)

    def components(self):
        return self._components

    def component(self, cid):
        return self._components[cid]

    def componentOf(self, v):
        return self._componentOf[v]

    def order(self):
        """
        The partial order as a set of pairs (a, b) of component ids with a <= b
        """
        return self._order

    def leq(self, a, b):
        return (a, b) in self._order

    def zeroSplit(self):
        """
        Returns the vertices of all components which have a walk to a zero, and
        the vertices of all other components.  There is no walk from the second
        set into the first.
        """
        reaching = []
        other = []
        for c in self._components:
            (reaching if c.reachesZero else other).extend(c.vertices)
        return sorted(reaching), sorted(other)

    def __len__(self):
        return len(self._components)

    def __iter__(self):
        return iter(self._components)


class DependencyGraph(object):
    """
    The dependency graph of a monomial system.  Vertex i (a_(i+1)) has an edge to
    vertex j if x_(j+1) is a factor of f_(i+1), and an edge to the extra vertex
    epsilon if f_(i+1) = 0.  The graph determines the system completely.

    The adjacency is held as an n x n boolean numpy array, the edges to
    epsilon as the set of zero vertices.
    """

    oracleLimit = 12

    def __init__(self, adjacency, zeros=()):
        adjacency = np.array(adjacency, dtype=bool)
        if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1] or adjacency.shape[0] < 1:
            raise InvalidValueError("Dependency graph adjacency must be a non-empty square matrix")
        n = adjacency.shape[0]
        zeros = frozenset(int(z) for z in zeros)
        for z in zeros:
            if z < 0 or z >= n:
                raise OutOfRangeError("Zero vertex " + str(z) + " is not a vertex of the graph")
            if adjacency[z].any():
                raise InvalidValueError(
                    "Zero vertex a" + str(z + 1) + " cannot have edges to other vertices"
                )
        adjacency.setflags(write=False)
        self._n = n
        self._adjacency = adjacency
        self._zeros = zeros
        self._nxgraph = None
        self._zeroReachers = None
        self._decomposition = None

    @staticmethod
    def fromSystem(system):
        n = system.n()
        adjacency = np.zeros((n, n), dtype=bool)
        for i, c in enumerate(system.components()):
            for j in c.support():
                adjacency[i, j] = True
        graph = DependencyGraph(adjacency, system.zeros())
        logging.info("Dependency graph built with %s vertices and %s edges", n, int(adjacency.sum()))
        return graph

    def reconstructSystem(self):
        """
        Rebuilds the monomial system the graph describes
        """
        components = []
        for i in range(self._n):
            if i in self._zeros:
                components.append(Monomial.zero())
            else:
                components.append(Monomial.product(np.flatnonzero(self._adjacency[i])))
        return MonomialSystem(components)

    def n(self):
        return self._n

    def adjacency(self):
        return self._adjacency

    def zeros(self):
        return self._zeros

    def edges(self):
        return [(int(i), int(j)) for i, j in np.argwhere(self._adjacency)]

    def successors(self, i):
        return [int(j) for j in np.flatnonzero(self._adjacency[i])]

    def toNetworkx(self):
        if self._nxgraph is None:
            g = nx.DiGraph()
            g.add_nodes_from(range(self._n))
            g.add_edges_from(self.edges())
            self._nxgraph = g
        return self._nxgraph

    def __eq__(self, other):
        if not isinstance(other, DependencyGraph):
            return NotImplemented
        return self._zeros == other._zeros and np.array_equal(self._adjacency, other._adjacency)

    def __hash__(self):
        return hash((self._zeros, self._adjacency.tobytes()))

    # Walks

    def matrixPower(self, m):
        """
        Boolean power A^m of the adjacency matrix, A^0 being the identity.
        Entry (i, j) is True iff there is a walk of length m from i to j.
        """
        if int(m) != m or m < 0:
            raise InvalidValueError("Invalid walk length " + str(m))
        m = int(m)
        result = np.identity(self._n, dtype=bool)
        base = self._adjacency
        while m:
            if m & 1:
                result = boolProduct(result, base)
            m >>= 1
            if m:
                base = boolProduct(base, base)
        return result

    def walkExists(self, i, j, m):
        self._checkVertex(i)
        self._checkVertex(j)
        return bool(self.matrixPower(m)[i, j])

    def zeroReachers(self):
        """
        Set of vertices with a walk (possibly empty) to a zero
        """
        if self._zeroReachers is None:
            g = self.toNetworkx()
            reachers = set(self._zeros)
            for z in self._zeros:
                reachers |= nx.ancestors(g, z)
            self._zeroReachers = frozenset(reachers)
        return self._zeroReachers

    # Components

    def _checkVertex(self, v):
        if int(v) != v or v < 0 or v >= self._n:
            raise OutOfRangeError("Invalid vertex " + str(v) + " for a graph with " + str(self._n) + " vertices")

    def _componentVertices(self, component, checkConnected=True):
        vertices = sorted(set(int(v) for v in component))
        if not vertices:
            raise InvalidValueError("Empty component")
        for v in vertices:
            self._checkVertex(v)
        if checkConnected and not nx.is_strongly_connected(self.toNetworkx().subgraph(vertices)):
            raise InvalidValueError(
                "Vertices " + ",".join("a" + str(v + 1) for v in vertices) + " are not strongly connected"
            )
        return vertices

    def _subAdjacency(self, vertices):
        return self._adjacency[np.ix_(vertices, vertices)]

    def stronglyConnectedComponents(self):
        """
        Decompose the graph into strongly connected components (an empty walk
        connects a vertex to itself, so every vertex belongs to one).  Each
        component carries its loop number, loop classes and whether it has a
        walk to a zero.
        """
        if self._decomposition is not None:
            return self._decomposition
        g = self.toNetworkx()
        sccs = [tuple(sorted(c)) for c in nx.strongly_connected_components(g)]
        condensed = nx.condensation(g, scc=[set(c) for c in sccs])
        ordered = list(nx.lexicographical_topological_sort(condensed, key=lambda c: sccs[c][0]))
        idOf = dict((c, cid) for cid, c in enumerate(ordered))

        reachers = self.zeroReachers()
        components = []
        for c in ordered:
            vertices = sccs[c]
            t = self.loopNumber(vertices, checkConnected=False)
            classes = self.loopClasses(vertices, t, checkConnected=False) if t > 0 else ()
            reaches = any(v in reachers for v in vertices)
            components.append(SccInfo(vertices, t, reaches, classes))
            logging.info(
                "Component %s: loop number %s, reaches zero %s",
                ",".join("a" + str(v + 1) for v in vertices),
                t,
                reaches,
            )

        order = set()
        for c in ordered:
            order.add((idOf[c], idOf[c]))
            for d in nx.descendants(condensed, c):
                order.add((idOf[c], idOf[d]))
        self._decomposition = SccDecomposition(components, order)
        return self._decomposition

    def reachesZero(self, decomposition, componentId):
        """
        True if some vertex of the component has a walk to a zero
        """
        reachers = self.zeroReachers()
        return any(v in reachers for v in decomposition.component(componentId).vertices)

    def reachabilityComponents(self):
        """
        Strongly connected components read off the powers A^0..A^n: the
        component of i is the set R(i) of vertices reachable from i intersected
        with the set C(i) of vertices reaching i.  Slow, used as a cross check.
        """
        reach = np.identity(self._n, dtype=bool)
        power = reach
        for _ in range(self._n):
            power = boolProduct(power, self._adjacency)
            reach = reach | power
        components = set()
        for i in range(self._n):
            rows = set(np.flatnonzero(reach[i]))
            cols = set(np.flatnonzero(reach[:, i]))
            components.add(tuple(sorted(int(v) for v in rows & cols)))
        return sorted(components)

    # Loop numbers

    def loopNumber(self, component, checkConnected=True):
        """
        Loop number of a strongly connected set of vertices: the greatest common
        divisor of the lengths i <= |component| for which the restricted
        adjacency power A^i has a nonzero diagonal entry.  0 if there are none.
        """
        vertices = self._componentVertices(component, checkConnected)
        sub = self._subAdjacency(vertices)
        power = sub
        lengths = []
        for i in range(1, len(vertices) + 1):
            if power.diagonal().any():
                lengths.append(i)
            power = boolProduct(power, sub)
        return reduce(math.gcd, lengths, 0)

    def loopNumberOracle(self, component, limit=None, base=None):
        """
        Loop number straight from its definition: the minimum positive
        difference of the lengths of two closed walks at the base vertex
        (default the smallest), enumerating walks up to 2*k^2 steps for a
        component of k vertices.
        """
        limit = limit if limit is not None else DependencyGraph.oracleLimit
        vertices = self._componentVertices(component)
        if len(vertices) > limit:
            raise ResourceLimitError(
                "Component of " + str(len(vertices)) + " vertices exceeds the loop number oracle limit " + str(limit)
            )
        members = set(vertices)
        succ = dict((v, [w for w in self.successors(v) if w in members]) for v in vertices)
        if base is None:
            base = vertices[0]
        elif base not in members:
            raise InvalidValueError("Base vertex " + str(base) + " is not in the component")
        frontier = {base}
        lengths = []
        for length in range(1, 2 * len(vertices) ** 2 + 1):
            frontier = set(w for v in frontier for w in succ[v])
            if base in frontier:
                lengths.append(length)
        if len(lengths) < 2:
            return 0 if not lengths else lengths[0]
        return min(b - a for a, b in zip(lengths, lengths[1:]))

    def _distances(self, vertices, reverse=False):
        g = self.toNetworkx().subgraph(vertices)
        if reverse:
            g = g.reverse(copy=False)
        return nx.single_source_shortest_path_length(g, vertices[0])

    def loopClasses(self, component, t, checkConnected=True):
        """
        Partition a strongly connected component with loop number t >= 1 into
        its t loop classes by the residue mod t of walk lengths from the smallest
        vertex.  Class 0 contains the smallest vertex and every edge goes from
        class j to class j+1 mod t.
        """
        if int(t) != t or t < 1:
            raise InvalidValueError("Loop classes need a loop number of at least 1, not " + str(t))
        t = int(t)
        vertices = self._componentVertices(component, checkConnected)
        distance = self._distances(vertices)
        classes = [[] for _ in range(t)]
        for v in vertices:
            classes[distance[v] % t].append(v)
        members = set(vertices)
        residue = dict((v, distance[v] % t) for v in vertices)
        for v in vertices:
            for w in self.successors(v):
                if w in members and residue[w] != (residue[v] + 1) % t:
                    raise InvalidValueError(str(t) + " is not the loop number of the component")
        if any(not c for c in classes):
            raise InvalidValueError(str(t) + " is not the loop number of the component")
        return tuple(tuple(c) for c in classes)

    def transientBound(self, component):
        """
        Returns m such that for every pair a, b of the component there is a walk
        from a to b of every length L >= m in the residue class of the loop
        classes of a and b (mod t).

        The bound is m = s + (r^2 - r)t, where p, q are closed walks at the smallest
        vertex c with |q| = |p| + t, |p| least possible, r = |p|/t, and s is the
        longest shortest walk into c plus the longest shortest walk out of c.
        """
        vertices = self._componentVertices(component)
        t = self.loopNumber(vertices, checkConnected=False)
        if t == 0:
            raise InvalidValueError("Component has loop number 0, walks do not stabilise")
        sub = self._subAdjacency(vertices)
        reach = np.zeros(len(vertices), dtype=bool)
        reach[0] = True
        closed = [True]
        horizon = 2 * len(vertices) ** 2 + 2 * t
        for _ in range(horizon):
            reach = boolProduct(reach.reshape(1, -1), sub).reshape(-1)
            closed.append(bool(reach[0]))
        shortest = None
        for length in range(1, horizon - t + 1):
            if closed[length] and closed[length + t]:
                shortest = length
                break
        if shortest is None:
            raise InvalidValueError("No closed walks differing by the loop number found")
        r = shortest // t
        s = max(self._distances(vertices).values()) + max(self._distances(vertices, reverse=True).values())
        m = s + (r * r - r) * t
        logging.info("Transient bound for component of %s vertices: s=%s r=%s t=%s m=%s", len(vertices), s, r, t, m)
        return m

    # Export

    def toDot(self, decomposition=None):
        """
        DOT source of the graph.  Vertices are named a1..an, strongly connected
        components are drawn as clusters labelled with their loop number, and the
        vertex eps is present only if the system has zeros.
        """
        if decomposition is None:
            decomposition = self.stronglyConnectedComponents()
        dot = graphviz.Digraph(name="dependency")
        for cid, c in enumerate(decomposition.components()):
            with dot.subgraph(name="cluster_" + str(cid)) as cluster:
                cluster.attr(label="t=" + str(c.loopNumber))
                for v in c.vertices:
                    cluster.node("a" + str(v + 1))
        if self._zeros:
            dot.node("eps")
        for i, j in self.edges():
            dot.edge("a" + str(i + 1), "a" + str(j + 1))
        for z in sorted(self._zeros):
            dot.edge("a" + str(z + 1), "eps")
        return dot.source
