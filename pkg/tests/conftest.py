import pytest

from headparse import engine
from headparse.corpus import _hg
from headparse.recognizer_ghi import build_ghi
from headparse.recognizer_hi import build_hi
from headparse.recognizers_basic import build_ehi, build_hc, build_phi, build_td
from headparse.transform import parse_ghg

hg = _hg  # concise grammar literals in tests

DEMO_GHG = """
start S
S -> (s (A (c) (b)) ())
S -> (s (A () (d)) ())
S -> (s (B) ())
A -> (a)
B -> (A () (b))
"""

FLAT_BUILDERS = {
    "td": build_td,
    "hc": build_hc,
    "phi": build_phi,
    "ehi": build_ehi,
    "hi": build_hi,
}


def run_verdict(automaton, tokens, **kwargs):
    return engine.run(automaton, tokens, **kwargs).verdict


def accepts(automaton, tokens, **kwargs):
    return run_verdict(automaton, tokens, **kwargs) is engine.Verdict.ACCEPT


@pytest.fixture(scope="session")
def tree_demo_grammar():
    return parse_ghg(DEMO_GHG)


@pytest.fixture(scope="session")
def tree_demo_automaton(tree_demo_grammar):
    return build_ghi(tree_demo_grammar)


@pytest.fixture(scope="session")
def tiny_grammar():
    # S -> c *A b ; A -> *a
    return hg("S", ("S", "c *A b"), ("A", "*a"))
