import pytest

from tavkit.fingroup import dihedral, symmetric
from tavkit.homsearch import wirtinger_homs
from tavkit.knots import (BraidWord, braid_closure_presentation, braid_pd, pattern_link,
                          satellite_glue, torus_presentation)


def braid(word, strands=2):
    return BraidWord.parse(word, strands)


@pytest.fixture(scope="session")
def s3():
    return symmetric(3)


@pytest.fixture(scope="session")
def d15():
    return dihedral(15)


@pytest.fixture(scope="session")
def trefoil():
    return braid_closure_presentation(braid("1 1 1"))


@pytest.fixture(scope="session")
def t215_pd():
    return braid_pd(braid(" ".join(["1"] * 15)))


@pytest.fixture(scope="session")
def k235(t215_pd):
    """The satellite of T(2,15) with companion T(3,5) along a loop around two
    antiparallel strands."""
    return satellite_glue(pattern_link(t215_pd, 1, 1), torus_presentation(3, 5))


@pytest.fixture(scope="session")
def k235_d15_epis(k235, d15):
    return wirtinger_homs(k235, d15, epi=True, modulo_conjugacy=True)


@pytest.fixture(scope="session")
def t215_d15_epi(t215_pd, d15):
    from tavkit.knots import knot_presentation
    return wirtinger_homs(knot_presentation(t215_pd), d15, epi=True, modulo_conjugacy=True)[0]


# -- acceptance summary: one line per criterion ------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA[n] = (text, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        text, status, dt = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {text}  ({dt:.1f}s)")
