import pytest

from qcurrent.cartan import load_cartan
from qcurrent.freealg import Element
from qcurrent.scalars import Scalar


def S(text: str) -> Scalar:
    return Scalar.parse(text)


def elem(*terms) -> Element:
    """elem((coeff_text, [(i, k), ...]), ...) with optional third entry c-exponent."""
    out = Element.zero()
    for t in terms:
        coeff, word = t[0], t[1]
        cexp = t[2] if len(t) > 2 else 0
        out = out + Element.from_word(word, S(coeff) if isinstance(coeff, str) else coeff, cexp)
    return out


@pytest.fixture(scope="session")
def A1():
    return load_cartan("A", 1)


@pytest.fixture(scope="session")
def A2():
    return load_cartan("A", 2)


@pytest.fixture(scope="session")
def C2():
    return load_cartan("C", 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
