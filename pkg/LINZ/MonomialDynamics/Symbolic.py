import logging
from collections import namedtuple

from .DependencyGraph import DependencyGraph, boolProduct
from .Error import InvalidValueError, VerificationError
from .Monomial import Monomial, MonomialSystem, State


class SymbolicPower(namedtuple("SymbolicPower", "exponent components")):
    """
    The m-fold composition f^m of a monomial system, held as n monomials.
    Composing monomials gives monomials again since x^2 = x.
    """

    __slots__ = ()

    def system(self):
        return MonomialSystem(self.components)

    def evaluate(self, state):
        bits = 0
        for i, c in enumerate(self.components):
            if c.evaluate(state.bits):
                bits |= 1 << i
        return State(state.n, bits)

    def __str__(self):
        return "f^" + str(self.exponent) + " = (" + ", ".join(str(c) for c in self.components) + ")"


class StabilizationReport(namedtuple("StabilizationReport", "m t blockProducts classSizes")):
    """
    Stabilised form of a strongly connected zero free system with loop
    number t.  m is the least m >= 1 with f^(mt) = f^((m+1)t).  blockProducts
    holds y_1..y_t, the product of the variables of each loop class, and
    f^(mt) maps every vertex of class j to y_j.
    """

    __slots__ = ()


def identityComponents(n):
    return tuple(Monomial.variable(i) for i in range(n))


def composeStep(system, previous):
    """
    One step of the recursion f^m_i = alpha_i * product of f^(m-1)_j over the
    support of f_i.  A zero factor absorbs the product, an empty support
    gives the constant 1.
    """
    result = []
    for c in system.components():
        m = Monomial.zero() if c.isZero() else Monomial.one()
        for j in c.support():
            m = m.times(previous[j])
            if m.isZero():
                break
        result.append(m)
    return tuple(result)


def symbolicPowers(system):
    """
    Generates f^0, f^1, f^2, ... as SymbolicPower objects
    """
    components = identityComponents(system.n())
    m = 0
    while True:
        yield SymbolicPower(m, components)
        components = composeStep(system, components)
        m += 1


def symbolicIterate(system, m):
    if int(m) != m or m < 0:
        raise InvalidValueError("Invalid symbolic exponent " + str(m))
    components = identityComponents(system.n())
    for _ in range(int(m)):
        components = composeStep(system, components)
    return SymbolicPower(int(m), components)


def verifyFactorWalkDuality(system, mMax, graph=None):
    """
    Checks that for 1 <= m <= mMax, whenever f^m_i is not zero, x_j divides
    f^m_i exactly when the dependency graph has a walk of length m from
    a_i to a_j.  The factors come from symbolic iteration, the walks from
    boolean powers of the adjacency matrix.
    """
    if graph is None:
        graph = DependencyGraph.fromSystem(system)
    n = system.n()
    components = identityComponents(n)
    power = graph.matrixPower(0)
    adjacency = graph.matrixPower(1)
    for m in range(1, int(mMax) + 1):
        components = composeStep(system, components)
        power = boolProduct(power, adjacency)
        for i, c in enumerate(components):
            if c.isZero():
                continue
            for j in range(n):
                if c.hasFactor(j) != bool(power[i, j]):
                    logging.info("Factor/walk mismatch at m=%s i=%s j=%s", m, i + 1, j + 1)
                    return False
    return True


def _advance(system, components, steps):
    for _ in range(steps):
        components = composeStep(system, components)
    return components


def stabilizedForm(system):
    """
    Iterates a strongly connected zero free system with loop number t >= 1
    symbolically until f^(mt) = f^((m+1)t), then checks the block form:
    f^(mt) maps each vertex of loop class j to y_j and f^(mt+1) maps it to
    y_(j+1).  A failed check raises VerificationError.
    """
    n = system.n()
    if system.zeros():
        raise InvalidValueError("Stabilised form needs a system without zeros")
    graph = DependencyGraph.fromSystem(system)
    vertices = list(range(n))
    t = graph.loopNumber(vertices)
    if t == 0:
        raise InvalidValueError("Stabilised form needs a loop number of at least 1")
    classes = graph.loopClasses(vertices, t, checkConnected=False)
    classOf = {}
    for j, c in enumerate(classes):
        for v in c:
            classOf[v] = j
    blocks = tuple(Monomial.product(c) for c in classes)

    cap = n * n + n
    current = _advance(system, identityComponents(n), t)
    m = 1
    while True:
        following = _advance(system, current, t)
        if following == current:
            break
        m += 1
        if m > cap:
            raise VerificationError("Symbolic powers did not stabilise within " + str(cap) + " periods")
        current = following
    logging.info("System stabilised at m=%s with loop number %s", m, t)

    for i in vertices:
        if current[i] != blocks[classOf[i]]:
            raise VerificationError(
                "f^" + str(m * t) + " component " + str(i + 1) + " is " + str(current[i])
                + ", expected " + str(blocks[classOf[i]])
            )
    shifted = composeStep(system, current)
    for i in vertices:
        expected = blocks[(classOf[i] + 1) % t]
        if shifted[i] != expected:
            raise VerificationError(
                "f^" + str(m * t + 1) + " component " + str(i + 1) + " is " + str(shifted[i])
                + ", expected " + str(expected)
            )
    return StabilizationReport(m, t, blocks, tuple(len(c) for c in classes))
