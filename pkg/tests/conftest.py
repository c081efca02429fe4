import random
import sys
import time
from pathlib import Path as FsPath

import pytest

sys.path.insert(0, str(FsPath(__file__).parent))

from qhh.quiver import Arrow, Path, Quiver
from qhh.algebra import BoundQuiverPresentation, Relation, build_algebra


def pytest_terminal_summary(terminalreporter):
    """Replay the acceptance pass/fail lines after the test summary."""
    lines = sys.modules.get("test_acceptance")
    lines = getattr(lines, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def kronecker_quiver():
    return Quiver(["e", "f"], [Arrow("u", "e", "f"), Arrow("v", "e", "f")])


def kronecker_presentation():
    return BoundQuiverPresentation(kronecker_quiver(), (), 2)


def chain_presentation(middle: int):
    """One-way chain f -> ... -> e with `middle`+1 inner vertices and the two
    longest-but-one composites as relations; middle = 1, 2, 3 give the 4-,
    5-, 6-vertex instances."""
    inner = ["x", "y", "z", "w"][: middle + 1]
    vertices = ["f"] + inner + ["e"]
    arrows = [
        Arrow(f"b{i + 2}", vertices[i], vertices[i + 1])
        for i in range(len(vertices) - 1)
    ]
    relations = []
    for start in (0, 1):
        run = arrows[start : start + middle + 1]
        relations.append(Relation([(1, Path(tuple(reversed(run))))]))
    return BoundQuiverPresentation(Quiver(vertices, arrows), tuple(relations), None)


def new_arrow_a():
    return Arrow("a", "e", "f")


@pytest.fixture(scope="session")
def kron():
    return build_algebra(kronecker_presentation())


@pytest.fixture(scope="session")
def chains():
    return {m: build_algebra(chain_presentation(m)) for m in (1, 2, 3)}


@pytest.fixture(scope="session")
def kron_extended(kron):
    """Kronecker grown by a: e -> f, with the degree-1 bimodule and the
    inclusion map; the enlarged algebra is the 3-arrow Kronecker."""
    from qhh.extension import build_extended_algebra

    return build_extended_algebra(kron, [new_arrow_a()])


@pytest.fixture(scope="session")
def chains_extended(chains):
    from qhh.extension import build_extended_algebra

    return {m: build_extended_algebra(chains[m], [new_arrow_a()])
            for m in (1, 2, 3)}


@pytest.fixture(scope="session")
def verified_batch():
    """25 random admissible instances with their full verification
    reports; the recorded time covers generation plus verification."""
    from qhh.formula import random_instance, verify

    rng = random.Random(57721)
    start = time.perf_counter()
    rows = []
    for _ in range(25):
        algebra, new_arrows = random_instance(rng)
        rows.append((algebra, new_arrows, verify(algebra, new_arrows)))
    return rows, time.perf_counter() - start
