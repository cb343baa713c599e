import mpmath
import pytest
from mpmath import mpf

from hofreud.hankel import recurrence_table
from hofreud.moments import WeightParams


def rel_err(a, b, prec=512):
    """|a - b| / max(|b|, tiny) at high precision."""
    with mpmath.workprec(prec):
        av, bv = mpf(a), mpf(b)
        scale = abs(bv) if bv != 0 else mpf(1)
        return abs(av - bv) / scale


@pytest.fixture(scope="session")
def quartic_params():
    """The plain quartic Freud case m=2, t=0, lambda=-1/2."""
    return WeightParams(m=2, t=0, lam="-0.5")


@pytest.fixture(scope="session")
def quartic_table(quartic_params):
    return recurrence_table(quartic_params, 26)


@pytest.fixture(scope="session")
def sextic_params():
    """A representative sextic case m=3, t=1, lambda=0.5."""
    return WeightParams(m=3, t=1, lam="0.5")


@pytest.fixture(scope="session")
def sextic_table(sextic_params):
    return recurrence_table(sextic_params, 26)
