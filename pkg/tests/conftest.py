import pytest

from su2n import AlgebraElement, Subalgebra


@pytest.fixture
def alg():
    def make(n, **kw):
        return AlgebraElement(n, **kw)
    return make


@pytest.fixture
def sub():
    def make(*els):
        return Subalgebra(list(els))
    return make
