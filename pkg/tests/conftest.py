import sys
from functools import lru_cache

import pytest

from ctlab.chartab import character_table
from ctlab.corpus import default_corpus, parse_group_spec


@lru_cache(maxsize=None)
def group(spec: str):
    """A group by spec, or by name from the default corpus."""
    named = dict(corpus())
    return named[spec] if spec in named else parse_group_spec(spec)


@lru_cache(maxsize=None)
def table(spec: str):
    return character_table(group(spec))


@lru_cache(maxsize=None)
def corpus():
    return tuple(default_corpus())


def perm(G, *cycles):
    """Element index of a 1-based cycle word in G."""
    from ctlab.permgroup import Permutation

    return G.index(Permutation.from_cycles(cycles, G.degree))


def class_with(tab, order, size=None):
    cls = tab.classes
    hits = [t for t in range(cls.k) if cls.element_orders[t] == order and (size is None or cls.sizes[t] == size)]
    assert len(hits) == 1, hits
    return hits[0]


def int_row(chi):
    return [v.as_integer() for v in chi.values]


@pytest.fixture(scope="session")
def default_groups():
    return corpus()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
