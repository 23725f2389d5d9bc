import sys
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from chibound.experiment import ExperimentConfig, run_experiment  # noqa: E402
from chibound.generators import P3UP2_HOUSE, class_corpus, random_graphs  # noqa: E402
from chibound.graph import Graph  # noqa: E402

CORPUS_SEED = 42


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    flags = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, f in zip(pairs, flags) if f])


@pytest.fixture(scope="session")
def class_corpus_500():
    """The campaign corpus: 500 seeded (P3∪P2, house)-free graphs, n ≤ 12."""
    return class_corpus(500, 1, 12, (0.2, 0.8), CORPUS_SEED, P3UP2_HOUSE)


@pytest.fixture(scope="session")
def campaign_500():
    return run_experiment(ExperimentConfig(samples=500, seed=CORPUS_SEED))


@pytest.fixture(scope="session")
def small_random():
    return random_graphs(120, 0, 8, seed=7)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
