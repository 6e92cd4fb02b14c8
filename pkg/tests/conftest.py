from importlib.resources import files

import pytest

from linkgrp.diagram import compute_regions, parse_diagram
from linkgrp.oracle import load_model
from linkgrp.presentation import parse_presentation


def data(name):
    return files("linkgrp.data").joinpath(name).read_text()


def load_pres(name):
    return parse_presentation(data(name + ".pres"))


def load_pd(name):
    d = parse_diagram(data(name + ".pd"))
    return d, compute_regions(d)


def freely_reduced_words(letters, max_length):
    out, frontier = [()], [()]
    for _ in range(max_length):
        frontier = [v + (a,) for v in frontier for a in letters if not v or v[-1] != -a]
        out += frontier
    return out


@pytest.fixture(scope="session")
def trefoil():
    return load_pres("trefoil")


@pytest.fixture(scope="session")
def fig8():
    return load_pres("fig8")


@pytest.fixture(scope="session")
def model(trefoil):
    return load_model(trefoil, "trefoil")


@pytest.fixture(scope="session", params=["trefoil", "fig8"])
def fixture_pres(request):
    return request.param, load_pres(request.param)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
