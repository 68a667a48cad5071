import math
from itertools import product

import pytest

from apolarity.exactlinalg import FieldSpec
from apolarity.polyring import Polynomial, VariableSet
from apolarity.apolar import model_from_dual, model_from_ideal
from apolarity.perazzo import PerazzoParams, full_perazzo_form

GF = FieldSpec.prime_field(32003)
QQ = FieldSpec.rationals()


@pytest.fixture(scope="session")
def gf():
    return GF


@pytest.fixture(scope="session")
def qq():
    return QQ


@pytest.fixture(scope="session")
def toy_params():
    return PerazzoParams(2, 3)


@pytest.fixture(scope="session")
def toy_form(toy_params):
    return full_perazzo_form(toy_params, GF)


@pytest.fixture(scope="session")
def toy_model(toy_form):
    return model_from_dual(toy_form)


def make_ex24_model(field):
    """K[x,y] / (x^3, x*y^2, y^3): the non-Gorenstein running example."""
    vs = VariableSet.generic(["x", "y"])
    x = Polynomial.variable(vs, "r", field, 0)
    y = Polynomial.variable(vs, "r", field, 1)
    return model_from_ideal([x**3, x * y**2, y**3], bound=4)


@pytest.fixture(scope="session")
def ex24_model():
    return make_ex24_model(GF)


@pytest.fixture(scope="session")
def ex24_ell(ex24_model):
    vs = ex24_model.varset
    x = Polynomial.variable(vs, "r", GF, 0)
    y = Polynomial.variable(vs, "r", GF, 1)
    return x + y


def brute_span_dim(vectors, p):
    """Independent span-dimension oracle: enumerate every linear combination
    over GF(p) and count the distinct results.  Only for a handful of
    vectors."""
    if not vectors:
        return 0
    assert len(vectors) <= 4, "oracle is exponential in the vector count"
    seen = set()
    for coeffs in product(range(p), repeat=len(vectors)):
        v = tuple(
            sum(c * x for c, x in zip(coeffs, col)) % p for col in zip(*vectors)
        )
        seen.add(v)
    dim = round(math.log(len(seen), p))
    assert p**dim == len(seen)
    return dim
