import logging
from collections import Counter, namedtuple
from concurrent.futures import ThreadPoolExecutor

import graphviz
import numpy as np

from .DependencyGraph import DependencyGraph
from .Error import InvalidValueError, ResourceLimitError
from .Monomial import State


class CycleStructure(namedtuple("CycleStructure", "cycleCounts fixedPoints maxTransient statesOnCycles")):
    """
    Limit cycle summary of a state space.

    cycleCounts     dict of cycle length to number of limit cycles
    fixedPoints     list of fixed point States, ascending
    maxTransient    longest number of steps from a state to its limit cycle
                    (None when the structure is predicted rather than enumerated)
    statesOnCycles  number of states lying on a limit cycle
    """

    __slots__ = ()

    def isFixedPointSystem(self):
        return all(length == 1 for length in self.cycleCounts)

    def cycleLengths(self):
        return sorted(self.cycleCounts)


def _divisors(t):
    return [d for d in range(1, t + 1) if t % d == 0]


def _stateDtype(n):
    return np.uint32 if n <= 32 else np.uint64


class StateSpace(object):
    """
    The state space of a monomial system: every state of F2^n mapped to its
    image, held as a numpy successor table indexed by the integer encoding of
    the state (bit j holds x_(j+1)).
    """

    bruteForceLimit = 24
    dotLimit = 12
    orbitLimit = 20

    def __init__(self, n, successor):
        successor = np.asarray(successor)
        if successor.shape != (1 << n,):
            raise InvalidValueError("Successor table of a " + str(n) + " dimensional state space needs " + str(1 << n) + " entries")
        self._n = n
        self._successor = successor
        self._cycleStructure = None

    @staticmethod
    def _successorChunk(system, start, end):
        dtype = _stateDtype(system.n())
        states = np.arange(start, end, dtype=dtype)
        result = np.zeros(end - start, dtype=dtype)
        for i, c in enumerate(system.components()):
            if c.isZero():
                continue
            mask = dtype(c.mask)
            bit = (states & mask) == mask
            result |= bit.astype(dtype) << dtype(i)
        return result

    @staticmethod
    def enumerate(system, limit=None, threads=None):
        """
        Builds the successor table of every state.  With threads > 1 the table is
        filled by worker threads over disjoint ranges of states; the result does
        not depend on the number of threads.
        """
        limit = limit if limit is not None else StateSpace.bruteForceLimit
        n = system.n()
        if n > limit:
            raise ResourceLimitError(
                "System dimension " + str(n) + " exceeds the brute force limit " + str(limit)
            )
        size = 1 << n
        threads = max(1, int(threads or 1))
        logging.info("Enumerating %s states using %s threads", size, threads)
        if threads == 1:
            successor = StateSpace._successorChunk(system, 0, size)
        else:
            bounds = np.linspace(0, size, threads + 1).astype(np.int64)
            ranges = [(int(s), int(e)) for s, e in zip(bounds, bounds[1:]) if e > s]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                chunks = list(pool.map(lambda r: StateSpace._successorChunk(system, r[0], r[1]), ranges))
            successor = np.concatenate(chunks)
        return StateSpace(n, successor)

    def n(self):
        return self._n

    def size(self):
        return len(self._successor)

    def successor(self):
        return self._successor

    def image(self, state):
        return State(self._n, int(self._successor[state.bits]))

    def cycleStructure(self):
        """
        Finds the limit cycles by chasing successors.  Each state is unvisited,
        on the current path, or resolved with a known cycle and transient
        depth; every state is visited once.
        """
        if self._cycleStructure is not None:
            return self._cycleStructure
        succ = self._successor.tolist()
        size = len(succ)
        colour = bytearray(size)
        depth = [0] * size
        position = [0] * size
        lengths = []
        fixedPoints = []
        for start in range(size):
            if colour[start]:
                continue
            path = []
            s = start
            while not colour[s]:
                colour[s] = 1
                position[s] = len(path)
                path.append(s)
                s = succ[s]
            if colour[s] == 1:
                first = position[s]
                cycle = path[first:]
                lengths.append(len(cycle))
                if len(cycle) == 1:
                    fixedPoints.append(s)
                for c in cycle:
                    colour[c] = 2
                del path[first:]
            for v in reversed(path):
                depth[v] = depth[succ[v]] + 1
                colour[v] = 2
        counts = Counter(lengths)
        self._cycleStructure = CycleStructure(
            dict(sorted(counts.items())),
            [State(self._n, s) for s in sorted(fixedPoints)],
            max(depth),
            sum(lengths),
        )
        logging.info("Found %s limit cycles, lengths %s", len(lengths), sorted(counts))
        return self._cycleStructure

    def toDot(self, limit=None):
        """
        DOT source of the state space, states labelled by their bit strings
        (x1 first)
        """
        limit = limit if limit is not None else StateSpace.dotLimit
        if self._n > limit:
            raise ResourceLimitError(
                "State space of dimension " + str(self._n) + " exceeds the DOT export limit " + str(limit)
            )
        dot = graphviz.Digraph(name="statespace")
        names = [str(State(self._n, s)) for s in range(self.size())]
        for name in names:
            dot.node(name)
        for s, image in enumerate(self._successor.tolist()):
            dot.edge(names[s], names[image])
        return dot.source

    # Predictions from the dependency graph

    @staticmethod
    def predictComponentCycles(t, limit=None):
        """
        Cycle structure of a directed t-gon, whose dynamics is rotation of the
        coordinates of F2^t.  Each rotation orbit of size d is a limit cycle of
        length d, so the counts come from the minimal rotation period of each
        state, tried over the divisors of t.
        """
        limit = limit if limit is not None else StateSpace.orbitLimit
        if int(t) != t or t < 1:
            raise InvalidValueError("Invalid loop number " + str(t))
        t = int(t)
        if t > limit:
            raise ResourceLimitError("Loop number " + str(t) + " exceeds the orbit limit " + str(limit))
        full = (1 << t) - 1
        states = np.arange(1 << t, dtype=np.int64)
        period = np.zeros(1 << t, dtype=np.int64)
        for d in _divisors(t):
            rotated = ((states << d) | (states >> (t - d))) & full
            period[(period == 0) & (rotated == states)] = d
        sizes, frequency = np.unique(period, return_counts=True)
        counts = dict((int(d), int(f) // int(d)) for d, f in zip(sizes, frequency))
        return CycleStructure(counts, [State.zeros(t), State.ones(t)], 0, 1 << t)

    @staticmethod
    def isFixedPointSystemBruteForce(system, limit=None, threads=None):
        return StateSpace.enumerate(system, limit, threads).cycleStructure().isFixedPointSystem()

    @staticmethod
    def canonicalFixedPoint(system):
        """
        The fixed point with 0 on every vertex with a walk to a zero and 1 on
        every other vertex.
        """
        decomposition = DependencyGraph.fromSystem(system).stronglyConnectedComponents()
        other = set(decomposition.zeroSplit()[1])
        return State.fromBits(1 if v in other else 0 for v in range(system.n()))

    @staticmethod
    def predictStronglyConnectedCycles(system, limit=None):
        """
        Predicted cycle structure of a strongly connected system.  A zero forces
        the single fixed point 0, loop number 0 (the constant 1) the single fixed
        point 1, otherwise the cycles are the rotation orbits of the loop number.
        """
        graph = DependencyGraph.fromSystem(system)
        n = system.n()
        t = graph.loopNumber(range(n))
        if system.zeros():
            return CycleStructure({1: 1}, [State.zeros(n)], None, 1)
        if t == 0:
            return CycleStructure({1: 1}, [State.ones(n)], None, 1)
        predicted = StateSpace.predictComponentCycles(t, limit)
        return CycleStructure(predicted.cycleCounts, [State.zeros(n), State.ones(n)], None, predicted.statesOnCycles)
