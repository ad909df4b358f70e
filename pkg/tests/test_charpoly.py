from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from forest_lattice import (
    FactoredPoly,
    IntPolynomial,
    Tree,
    all_trees,
    canonical_nice_order,
    charpoly_exponents,
    charpoly_levels,
    charpoly_mobius,
    enumerate_interval,
    expand,
    levels,
    m_chain,
    parse_tree,
)

import oracles


class TestIntPolynomial:
    def test_trim_and_degree(self):
        p = IntPolynomial.from_coeffs([1, 2, 0, 0])
        assert p.coeffs == (1, 2) and p.degree == 1

    def test_str(self):
        assert str(IntPolynomial.from_coeffs([-4, 9, -6, 1])) == "t^3 - 6t^2 + 9t - 4"
        assert str(IntPolynomial.from_coeffs([])) == "0"
        assert str(IntPolynomial.from_coeffs([0, -1])) == "-t"

    def test_mul_and_eval(self):
        p = IntPolynomial.from_coeffs([-1, 1])
        q = p * p
        assert q.coeffs == (1, -2, 1)
        assert q(5) == 16


class TestExpand:
    def test_small(self):
        assert expand(FactoredPoly.from_roots([1])).coeffs == (-1, 1)
        assert expand(FactoredPoly.from_roots([1, 1])).coeffs == (1, -2, 1)
        assert expand(FactoredPoly.from_roots([1, 2])).coeffs == (2, -3, 1)
        assert expand(FactoredPoly.from_roots([])).coeffs == (1,)

    @given(st.lists(st.integers(-20, 60), max_size=10))
    def test_against_sympy(self, roots):
        assert list(expand(FactoredPoly.from_roots(roots)).coeffs) == oracles.expand_roots(roots)

    def test_str(self):
        assert str(FactoredPoly.from_roots([10, 1, 4, 1, 4, 1])) == "(t-1)^3(t-4)^2(t-10)"
        assert str(FactoredPoly.from_roots([])) == "1"
        assert str(FactoredPoly.from_roots([0, 2])) == "t(t-2)"


def three_ways(tree):
    lattice = enumerate_interval(tree)
    order = canonical_nice_order(tree)
    level_sets = levels(lattice, m_chain(lattice, order), order)
    return lattice, charpoly_mobius(lattice), charpoly_levels(level_sets), charpoly_exponents(tree)


class TestCharpoly:
    def test_cherry(self):
        _, mob, lev, exp = three_ways(parse_tree("(a,b)"))
        assert mob.coeffs == (-1, 1)
        assert lev.roots == exp.roots == (1,)

    def test_three(self):
        _, mob, lev, exp = three_ways(parse_tree("((a,b),c)"))
        assert mob.coeffs == (2, -3, 1)
        assert lev.roots == exp.roots == (1, 2)

    def test_cherry_pair(self, cherry_pair):
        _, mob, _, exp = three_ways(cherry_pair)
        assert str(exp) == "(t-1)^2(t-4)"
        assert mob == expand(exp)

    def test_seven_leaf_tree(self, seven_leaf_tree):
        _, mob, lev, exp = three_ways(seven_leaf_tree)
        assert str(exp) == str(lev) == "(t-1)^3(t-4)^2(t-10)"
        assert str(mob) == "t^6 - 21t^5 + 153t^4 - 503t^3 + 786t^2 - 576t + 160"
        assert mob == expand(exp)

    def test_mobius_against_sympy(self, small_trees):
        for t in small_trees:
            lattice, mob, _, _ = three_ways(t)
            elements = [frozenset(map(frozenset, lattice.partition(x).blocks)) for x in range(len(lattice))]
            assert list(mob.coeffs) == oracles.charpoly_coeffs(elements, len(t.leaves))

    def test_agreement_and_invariants(self, small_trees):
        for t in small_trees:
            lattice, mob, lev, exp = three_ways(t)
            assert mob == expand(lev) == expand(exp)
            assert mob(1) == 0
            m = len(t.leaves)
            assert sum(exp.roots) == comb(m, 2)
            # coefficients alternate in sign
            assert all(c * (-1) ** (mob.degree - k) > 0 for k, c in enumerate(mob.coeffs))

    @pytest.mark.parametrize("k", [6])
    def test_caterpillar_roots(self, k):
        labels = "abcdef"[:k]
        structure = labels[0]
        for x in labels[1:]:
            structure = (structure, x)
        t = Tree(structure)
        # caterpillar vertices see i leaves on one side and 1 on the other
        assert charpoly_exponents(t).roots == tuple(range(1, k))
        _, mob, _, _ = three_ways(t)
        assert mob == expand(charpoly_exponents(t))

    def test_some_six_leaf_trees(self):
        for t in list(all_trees(6))[::97]:
            _, mob, lev, exp = three_ways(t)
            assert mob == expand(lev) == expand(exp)
