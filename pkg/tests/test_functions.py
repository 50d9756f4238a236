import numpy as np
import pytest

from twofold import Coupled, Twofold, functions
from twofold.arith import SqrtPropagation
from twofold.number import identical


class TestFabs:
    def test_routes_by_shape(self):
        assert functions.fabs(-2.0) == 2.0
        assert isinstance(functions.fabs(np.float32(-2)), np.float32)
        assert identical(functions.fabs(Twofold(-2.0, 1e-20)), Twofold(2.0, -1e-20))
        assert isinstance(functions.fabs(Coupled(-2.0, 0.0)), Coupled)

    def test_ints(self):
        assert functions.fabs(-3) == 3.0


class TestSqrt:
    def test_dotted(self):
        assert functions.sqrt(4.0) == 2.0
        assert np.isnan(functions.sqrt(-1.0))

    def test_twofold_propagation(self):
        x = Twofold(4.0, 1e-10)
        exact = functions.sqrt(x)
        mirrored = functions.sqrt(x, propagation=SqrtPropagation.MIRRORED)
        assert exact.error == -mirrored.error

    def test_coupled(self):
        z = functions.sqrt(Coupled.from_number(2))
        assert isinstance(z, Coupled)
        assert z.value == np.sqrt(2.0)


@pytest.mark.parametrize(
    "x, inf, nan",
    [
        (1.0, False, False),
        (np.inf, True, False),
        (np.float32(np.nan), False, True),
        (Twofold(1.0, np.inf), True, False),
        (Twofold(np.nan, 0.0), False, True),
        (Coupled(np.inf, np.nan), True, True),
    ],
)
def test_classification(x, inf, nan):
    assert functions.isinf(x) is inf
    assert functions.isnan(x) is nan


def test_rejects_non_numbers():
    with pytest.raises(TypeError):
        functions.isnan("nan")
