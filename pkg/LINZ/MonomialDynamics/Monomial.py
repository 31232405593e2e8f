from collections import namedtuple

from .Error import InvalidValueError, OutOfRangeError


def _maskOf(indices):
    mask = 0
    for j in indices:
        j = int(j)
        if j < 0:
            raise OutOfRangeError("Invalid variable index " + str(j))
        mask |= 1 << j
    return mask


class Monomial(namedtuple("Monomial", "alpha mask")):
    """
    One coordinate function alpha * x_j1 * ... * x_jk of a monomial system.

    The support is held as a bit mask, bit j set when x_(j+1) is a factor.
    Variables are square free (x^2 = x), so the mask is the whole story.
    The constant 0 is alpha=0 with an empty support, the constant 1 is alpha=1
    with an empty support.
    """

    __slots__ = ()

    def __new__(cls, alpha, mask=0):
        if alpha not in (0, 1):
            raise InvalidValueError("Invalid monomial coefficient " + str(alpha))
        mask = int(mask)
        if mask < 0:
            raise InvalidValueError("Invalid monomial support mask " + str(mask))
        if alpha == 0 and mask != 0:
            raise InvalidValueError("Zero monomial cannot have variables in its support")
        return super(Monomial, cls).__new__(cls, int(alpha), mask)

    @staticmethod
    def zero():
        return Monomial(0, 0)

    @staticmethod
    def one():
        return Monomial(1, 0)

    @staticmethod
    def variable(j):
        return Monomial(1, _maskOf([j]))

    @staticmethod
    def product(indices):
        """
        The product of the variables with the given (0 based) indices.  Repeated
        indices are absorbed, an empty list gives the constant 1.
        """
        return Monomial(1, _maskOf(indices))

    def support(self):
        """
        Returns the 0 based indices of the variables in the monomial, ascending
        """
        mask = self.mask
        result = []
        j = 0
        while mask:
            if mask & 1:
                result.append(j)
            mask >>= 1
            j += 1
        return tuple(result)

    def degree(self):
        return bin(self.mask).count("1")

    def isZero(self):
        return self.alpha == 0

    def isOne(self):
        return self.alpha == 1 and self.mask == 0

    def isConstant(self):
        return self.mask == 0

    def hasFactor(self, j):
        return bool(self.mask >> j & 1)

    def times(self, other):
        if self.alpha == 0 or other.alpha == 0:
            return Monomial.zero()
        return Monomial(1, self.mask | other.mask)

    def withFactor(self, j):
        if self.alpha == 0:
            return self
        return Monomial(1, self.mask | _maskOf([j]))

    def evaluate(self, bits):
        """
        Value of the monomial at a state given as an integer, bit j holding x_(j+1)
        """
        if self.alpha == 0:
            return 0
        return 1 if bits & self.mask == self.mask else 0

    def __str__(self):
        if self.alpha == 0:
            return "0"
        if self.mask == 0:
            return "1"
        return "*".join("x" + str(j + 1) for j in self.support())


class State(namedtuple("State", "n bits")):
    """
    An element of F2^n.  Bit j of the integer bits holds the value of x_(j+1).
    The string form lists x1 first, so State.fromString("1011") has x1=1, x2=0.
    """

    __slots__ = ()

    def __new__(cls, n, bits):
        n = int(n)
        bits = int(bits)
        if n < 1:
            raise InvalidValueError("Invalid state dimension " + str(n))
        if bits < 0 or bits >> n:
            raise InvalidValueError("State value " + str(bits) + " does not fit in dimension " + str(n))
        return super(State, cls).__new__(cls, n, bits)

    @staticmethod
    def zeros(n):
        return State(n, 0)

    @staticmethod
    def ones(n):
        return State(n, (1 << n) - 1)

    @staticmethod
    def fromBits(values):
        values = list(values)
        bits = 0
        for j, v in enumerate(values):
            if v not in (0, 1, True, False):
                raise InvalidValueError("Invalid state bit " + str(v))
            if v:
                bits |= 1 << j
        return State(len(values), bits)

    @staticmethod
    def fromString(text):
        text = text.strip()
        if not text or any(c not in "01" for c in text):
            raise InvalidValueError("Invalid state string " + repr(text))
        return State.fromBits(int(c) for c in text)

    def bit(self, j):
        return self.bits >> j & 1

    def bitList(self):
        return [self.bits >> j & 1 for j in range(self.n)]

    def __str__(self):
        return "".join(str(b) for b in self.bitList())


class MonomialSystem(object):
    """
    A Boolean monomial parallel update system f = (f1, ..., fn) on F2^n.

    The system is an immutable value.  Coordinate functions are Monomial
    objects whose supports must lie within the n variables of the system.
    """

    maxDimension = 64

    def __init__(self, components, maxDimension=None):
        components = tuple(components)
        limit = maxDimension if maxDimension is not None else MonomialSystem.maxDimension
        n = len(components)
        if n < 1:
            raise InvalidValueError("A monomial system needs at least one component")
        if n > limit:
            raise InvalidValueError(
                "System dimension " + str(n) + " exceeds the maximum dimension " + str(limit)
            )
        for i, c in enumerate(components):
            if not isinstance(c, Monomial):
                raise InvalidValueError("Component f" + str(i + 1) + " is not a monomial")
            if c.mask >> n:
                raise OutOfRangeError(
                    "Component f" + str(i + 1) + " uses a variable beyond x" + str(n)
                )
        self._n = n
        self._components = components

    def n(self):
        return self._n

    def components(self):
        return self._components

    def component(self, i):
        return self._components[i]

    def masks(self):
        return [c.mask for c in self._components]

    def zeros(self):
        """
        Returns the indices of the components which are the zero monomial
        """
        return [i for i, c in enumerate(self._components) if c.isZero()]

    def isZeroFree(self):
        return not any(c.isZero() for c in self._components)

    def __len__(self):
        return self._n

    def __iter__(self):
        return iter(self._components)

    def __getitem__(self, i):
        return self._components[i]

    def __eq__(self, other):
        if not isinstance(other, MonomialSystem):
            return NotImplemented
        return self._components == other._components

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self._components)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self._components) + ")"

    def __repr__(self):
        return "MonomialSystem" + str(self)

    def _checkState(self, state):
        if not isinstance(state, State):
            raise InvalidValueError("Expected a State, not " + repr(state))
        if state.n != self._n:
            raise InvalidValueError(
                "State dimension " + str(state.n) + " does not match system dimension " + str(self._n)
            )

    def evaluateBits(self, bits):
        result = 0
        for i, c in enumerate(self._components):
            if c.alpha and bits & c.mask == c.mask:
                result |= 1 << i
        return result

    def evaluate(self, state):
        """
        Apply the system once: bit i of the result is alpha_i AND the product of
        the state bits in the support of f_i.
        """
        self._checkState(state)
        return State(self._n, self.evaluateBits(state.bits))

    def iterate(self, state, m):
        """
        Apply the system m times.  iterate(state, 0) returns the state unchanged.
        """
        self._checkState(state)
        if int(m) != m or m < 0:
            raise InvalidValueError("Invalid iteration count " + str(m))
        bits = state.bits
        for _ in range(int(m)):
            bits = self.evaluateBits(bits)
        return State(self._n, bits)
