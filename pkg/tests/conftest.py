import string

import pytest
from hypothesis import strategies as st

from forest_lattice import Tree, all_trees, parse_tree


@st.composite
def trees(draw, min_leaves=1, max_leaves=8):
    k = draw(st.integers(min_leaves, max_leaves))
    labels = draw(st.permutations(list(string.ascii_lowercase[:k])))

    def build(items):
        if len(items) == 1:
            return items[0]
        cut = draw(st.integers(1, len(items) - 1))
        return (build(items[:cut]), build(items[cut:]))

    return Tree(build(labels))


@pytest.fixture(scope="session")
def small_trees():
    """Every labeled tree on 2..5 leaves."""
    return [t for k in range(2, 6) for t in all_trees(k)]


@pytest.fixture
def cherry_pair():
    return parse_tree("((a,b),(c,d))")


@pytest.fixture
def seven_leaf_tree():
    return parse_tree("((x,y),(z,((p,q),(r,s))))")
