import logging
from collections import namedtuple

import numpy as np

from .DependencyGraph import DependencyGraph
from .Error import InvalidValueError, OutOfRangeError
from .Monomial import Monomial, MonomialSystem, State

"""
Constructions of new monomial systems from old ones: glueing, restriction
to a strongly connected component, monomial multiplication, relabelling
and random generation.  All indices are 0 based.
"""


class GlueSpec(namedtuple("GlueSpec", "extraEdges")):
    """
    The extra edges of a glueing f # g, as pairs (i, j) joining vertex i of g
    to vertex j of f.
    """

    __slots__ = ()

    def __new__(cls, extraEdges=()):
        edges = tuple(sorted(set((int(i), int(j)) for i, j in extraEdges)))
        return super(GlueSpec, cls).__new__(cls, edges)


def _shifted(monomial, offset):
    if monomial.isZero():
        return monomial
    return Monomial(1, monomial.mask << offset)


def glue(f, g, spec=None):
    """
    Glues g onto f.  The result has f's r components unchanged, followed by
    g's components with variables shifted by r, and component r+i gains the
    factor x_j for each extra edge (i, j).  Its dependency graph is the
    disjoint union of those of f and g plus the extra edges.
    """
    spec = spec if spec is not None else GlueSpec()
    r = f.n()
    s = g.n()
    components = list(f.components()) + [_shifted(c, r) for c in g.components()]
    for i, j in spec.extraEdges:
        if i < 0 or i >= s:
            raise OutOfRangeError("Glueing edge starts at " + str(i) + ", not a vertex of the glued system")
        if j < 0 or j >= r:
            raise OutOfRangeError("Glueing edge ends at " + str(j) + ", not a vertex of the base system")
        if g.component(i).isZero():
            raise InvalidValueError("Glueing edge cannot start at the zero component " + str(i + 1))
        components[r + i] = components[r + i].withFactor(j)
    logging.info("Glued %s variables onto %s with %s extra edges", s, r, len(spec.extraEdges))
    return MonomialSystem(components)


def componentSubsystem(f, component):
    """
    Restricts f to one strongly connected component of its dependency graph,
    dropping variables from outside the component and renumbering the
    component's vertices in ascending order.
    """
    vertices = tuple(sorted(set(int(v) for v in component)))
    decomposition = DependencyGraph.fromSystem(f).stronglyConnectedComponents()
    if not vertices or vertices not in [c.vertices for c in decomposition.components()]:
        raise InvalidValueError(
            "Vertices " + ",".join("a" + str(v + 1) for v in vertices) + " are not a strongly connected component"
        )
    index = dict((v, k) for k, v in enumerate(vertices))
    components = []
    for v in vertices:
        c = f.component(v)
        if c.isZero():
            components.append(c)
        else:
            components.append(Monomial.product(index[j] for j in c.support() if j in index))
    return MonomialSystem(components)


def _checkIndex(f, k, what):
    if int(k) != k or k < 0 or k >= f.n():
        raise OutOfRangeError("Invalid " + what + " index " + str(k) + " for a system of dimension " + str(f.n()))


def multiplyCoordinate(f, j, i):
    """
    Multiplies component j by x_i.  A zero component is left unchanged.
    """
    _checkIndex(f, j, "component")
    _checkIndex(f, i, "variable")
    components = list(f.components())
    components[j] = components[j].withFactor(i)
    return MonomialSystem(components)


def multiplySystem(f, m):
    if m.mask >> f.n():
        raise OutOfRangeError("Monomial " + str(m) + " uses a variable beyond x" + str(f.n()))
    return MonomialSystem(c.times(m) for c in f.components())


def _checkPermutation(sigma, n):
    sigma = [int(k) for k in sigma]
    if sorted(sigma) != list(range(n)):
        raise InvalidValueError("Not a permutation of 0.." + str(n - 1) + ": " + str(sigma))
    return sigma


def permute(f, sigma):
    """
    Relabels the coordinates of f by the permutation sigma (sigma[k] is the
    image of k).  Component sigma[i] of the result is f_i with every x_k
    replaced by x_sigma[k], so that permute(f, sigma) applied to
    permuteState(s, sigma) is permuteState(f(s), sigma).
    """
    n = f.n()
    sigma = _checkPermutation(sigma, n)
    components = [None] * n
    for i, c in enumerate(f.components()):
        if c.isZero():
            components[sigma[i]] = c
        else:
            components[sigma[i]] = Monomial.product(sigma[k] for k in c.support())
    return MonomialSystem(components)


def permuteState(state, sigma):
    sigma = _checkPermutation(sigma, state.n)
    bits = 0
    for k in range(state.n):
        if state.bit(k):
            bits |= 1 << sigma[k]
    return State(state.n, bits)


def _generator(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _checkProbability(value, what):
    if not 0.0 <= value <= 1.0:
        raise InvalidValueError("Invalid " + what + " " + str(value) + ", must be between 0 and 1")


def randomSystem(n, edgeDensity, zeroProbability=0.0, seed=None):
    """
    Random system: each component is 0 with probability zeroProbability,
    otherwise the product of a random subset of the variables, each included
    with probability edgeDensity (the empty product being 1).  seed may be an
    integer or a numpy Generator.
    """
    _checkProbability(edgeDensity, "edge density")
    _checkProbability(zeroProbability, "zero probability")
    rng = _generator(seed)
    components = []
    for _ in range(n):
        if rng.random() < zeroProbability:
            components.append(Monomial.zero())
        else:
            components.append(Monomial.product(np.flatnonzero(rng.random(n) < edgeDensity)))
    return MonomialSystem(components)


def randomStronglyConnectedSystem(n, edgeDensity, seed=None):
    """
    Random zero free system with a strongly connected dependency graph: a
    random Hamiltonian cycle plus further edges with probability edgeDensity.
    """
    _checkProbability(edgeDensity, "edge density")
    rng = _generator(seed)
    order = rng.permutation(n)
    supports = [set(np.flatnonzero(rng.random(n) < edgeDensity)) for _ in range(n)]
    for k in range(n):
        supports[order[k]].add(order[(k + 1) % n])
    return MonomialSystem(Monomial.product(s) for s in supports)


def randomTriangularSystem(n, edgeDensity, zeroProbability=0.0, seed=None):
    """
    Random system in which f_i only depends on x_1..x_i
    """
    _checkProbability(edgeDensity, "edge density")
    _checkProbability(zeroProbability, "zero probability")
    rng = _generator(seed)
    components = []
    for i in range(n):
        if rng.random() < zeroProbability:
            components.append(Monomial.zero())
        else:
            components.append(Monomial.product(np.flatnonzero(rng.random(i + 1) < edgeDensity)))
    return MonomialSystem(components)


def cycleSystem(t):
    """
    The directed t-gon f = (x2, x3, ..., xt, x1)
    """
    return MonomialSystem(Monomial.variable((i + 1) % t) for i in range(t))
