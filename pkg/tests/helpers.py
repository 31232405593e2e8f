import os

from LINZ.MonomialDynamics.Monomial import Monomial, MonomialSystem

dataDir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def dataFile(name):
    return os.path.join(dataDir, name)


def system(*components):
    """
    Builds a system from 1 based supports, 0 and 1 standing for the constants
    """
    result = []
    for c in components:
        if c == 0:
            result.append(Monomial.zero())
        elif c == 1:
            result.append(Monomial.one())
        else:
            result.append(Monomial.product(j - 1 for j in c))
    return MonomialSystem(result)
