import pytest
from fractions import Fraction

from ramlie.cli import Workspace
from ramlie.coeffring import RingContext
from ramlie.freeassoc import FreeAlgebra, Gen, standard_alphabet
from ramlie.params import GlobalParams

# reference desk configurations
C1 = GlobalParams(3, 1, 2, Fraction(1), 2)
C2 = GlobalParams(3, 2, 2, Fraction(1), 2)
C3 = GlobalParams(5, 2, 1, Fraction(4, 3), 6)


@pytest.fixture(scope="session")
def ws_c1():
    return Workspace(C1)


@pytest.fixture(scope="session")
def ws_c2():
    return Workspace(C2)


@pytest.fixture(scope="session")
def ring_c1():
    return RingContext(3, 1, 2)


@pytest.fixture(scope="session")
def alg_c1(ring_c1):
    return FreeAlgebra(ring_c1, standard_alphabet(3, 2, 2))


@pytest.fixture(scope="session")
def ring_p5():
    return RingContext(5, 2, 1)


@pytest.fixture(scope="session")
def alg_p5(ring_p5):
    """Three free generators at p = 5: nilpotent class 4 over Z/25."""
    return FreeAlgebra(ring_p5, [Gen(1, 0), Gen(2, 0), Gen(3, 0)])
