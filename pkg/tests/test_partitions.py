import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forest_lattice import (
    Forest,
    InvalidPartitionError,
    NotDominatedError,
    Partition,
    all_trees,
    enumerate_interval,
    gamma_of_partition,
    is_admissible,
    join_adm,
    leq_general,
    meet_adm,
    parse_forest,
    parse_partition,
    parse_tree,
    pi_of_forest,
    refines,
)
from forest_lattice.partitions import (
    admissible_masks,
    admissible_partition_masks,
    set_partition_masks,
)

import oracles
from conftest import trees


def P(text):
    return parse_partition(text)


class TestPartition:
    def test_canonical(self):
        assert str(Partition.from_blocks(["dc", "a", "b"])) == "a|b|c,d"
        assert P("c,d|b|a") == P("a|b|d,c")

    def test_rank(self):
        assert P("a,b,c|d").rank == 2
        assert Partition.singletons("abc").rank == 0

    def test_overlap_and_empty(self):
        with pytest.raises(InvalidPartitionError):
            Partition.from_blocks(["ab", "bc"])
        with pytest.raises(InvalidPartitionError):
            P("a||b")

    def test_bell_numbers(self):
        assert [len(list(set_partition_masks(m))) for m in range(1, 7)] == [1, 2, 5, 15, 52, 203]


class TestAdmissible:
    def test_examples(self, cherry_pair):
        assert is_admissible(cherry_pair, P("a,b|c,d"))
        assert not is_admissible(cherry_pair, P("a,c|b,d"))
        assert is_admissible(cherry_pair, P("a,c|b|d"))

    def test_three_leaves(self):
        t = parse_tree("((a,b),c)")
        # every partition of three leaves is admissible
        for text in ["a|b|c", "a,b|c", "a,c|b", "a|b,c", "a,b,c"]:
            assert is_admissible(t, P(text))

    def test_wrong_ground(self, cherry_pair):
        with pytest.raises(InvalidPartitionError):
            is_admissible(cherry_pair, P("a,b|c"))

    def test_against_oracle(self, small_trees):
        for t in small_trees:
            expected = {frozenset(map(frozenset, p)) for p in oracles.admissible_partitions(t.structure)}
            lattice = enumerate_interval(t)
            found = {frozenset(map(frozenset, lattice.partition(x).blocks)) for x in range(len(lattice))}
            assert found == expected

    def test_pruned_matches_bell_scan(self):
        for k in range(1, 7):
            for t in all_trees(k):
                m = len(t.leaves)
                scan = [p for p in set_partition_masks(m) if admissible_masks(t.s_masks, p)]
                pruned = list(admissible_partition_masks(t.s_masks, m))
                assert sorted(scan) == sorted(pruned)


class TestPiGamma:
    def test_gamma(self, cherry_pair):
        f = gamma_of_partition(cherry_pair, P("a,c|b|d"))
        assert str(f) == "(a,c) b d"

    def test_gamma_rejects(self, cherry_pair):
        with pytest.raises(InvalidPartitionError):
            gamma_of_partition(cherry_pair, P("a,c|b,d"))

    def test_pi(self, cherry_pair):
        assert pi_of_forest(parse_forest("(a,b) c d"), cherry_pair) == P("a,b|c|d")
        assert pi_of_forest(Forest.bottom("abcd")) == Partition.singletons("abcd")

    def test_pi_not_dominated(self, cherry_pair):
        with pytest.raises(NotDominatedError):
            pi_of_forest(parse_forest("(a,c) (b,d)"), cherry_pair)
        with pytest.raises(NotDominatedError):
            pi_of_forest(parse_forest("((a,c),b) d"), cherry_pair)

    def test_round_trip_small(self, small_trees):
        for t in small_trees:
            lattice = enumerate_interval(t)
            for x in range(len(lattice)):
                p = lattice.partition(x)
                f = gamma_of_partition(t, p)
                assert pi_of_forest(f, t) == p
                assert gamma_of_partition(t, pi_of_forest(f, t)) == f


class TestRefines:
    def test_examples(self):
        assert refines(P("a|b|c"), P("a,b|c"))
        assert refines(P("a,b|c"), P("a,b|c"))
        assert not refines(P("a,c|b"), P("a,b|c"))

    def test_ground_mismatch(self):
        with pytest.raises(InvalidPartitionError):
            refines(P("a|b"), P("a|b|c"))


class TestMeetJoin:
    def test_meet_example(self, cherry_pair):
        assert meet_adm(cherry_pair, P("a,b,c|d"), P("a,c,d|b")) == P("a,c|b|d")

    def test_join_closes(self, cherry_pair):
        # {a,c} and {b,d} share the root, so the closure merges everything
        assert join_adm(cherry_pair, P("a,c|b|d"), P("a|b,d|c")) == P("a,b,c,d")

    def test_join_no_merge(self, cherry_pair):
        assert join_adm(cherry_pair, P("a,b|c|d"), P("a|b|c,d")) == P("a,b|c,d")

    def test_join_is_least_upper_bound(self):
        for k in range(2, 6):
            for t in all_trees(k):
                adm = oracles.admissible_partitions(t.structure)
                sample = adm[:: max(1, len(adm) // 12)]
                for p in sample:
                    for q in sample:
                        uppers = [r for r in adm if oracles.refines(p, r) and oracles.refines(q, r)]
                        least = [r for r in uppers if all(oracles.refines(r, s) for s in uppers)]
                        got = join_adm(t, Partition.from_blocks(p), Partition.from_blocks(q))
                        assert [Partition.from_blocks(least[0])] == [got]

    def test_meet_is_greatest_lower_bound(self):
        for t in all_trees(4):
            adm = oracles.admissible_partitions(t.structure)
            for p in adm:
                for q in adm:
                    lowers = [r for r in adm if oracles.refines(r, p) and oracles.refines(r, q)]
                    greatest = [r for r in lowers if all(oracles.refines(s, r) for s in lowers)]
                    got = meet_adm(t, Partition.from_blocks(p), Partition.from_blocks(q))
                    assert Partition.from_blocks(greatest[0]) == got

    @settings(max_examples=40)
    @given(trees(min_leaves=2, max_leaves=7), st.data())
    def test_join_admissible_and_above(self, t, data):
        lattice = enumerate_interval(t)
        x = data.draw(st.integers(0, len(lattice) - 1))
        y = data.draw(st.integers(0, len(lattice) - 1))
        p, q = lattice.partition(x), lattice.partition(y)
        j = join_adm(t, p, q)
        assert is_admissible(t, j) and refines(p, j) and refines(q, j)
        assert j == lattice.partition(lattice.join(x, y))
        assert meet_adm(t, p, q) == lattice.partition(lattice.meet(x, y))


class TestLeqGeneral:
    def test_bottom_below_everything(self, cherry_pair):
        assert leq_general(Forest.bottom("abcd"), Forest([cherry_pair]))

    def test_restriction_below(self, cherry_pair):
        assert leq_general(parse_forest("(a,c) b d"), Forest([cherry_pair]))
        assert leq_general(parse_forest("((a,b),c) d"), Forest([cherry_pair]))

    def test_not_below(self, cherry_pair):
        # two vertices would land on the root
        assert not leq_general(parse_forest("(a,c) (b,d)"), Forest([cherry_pair]))
        # wrong topology
        assert not leq_general(parse_forest("((a,c),b) d"), Forest([cherry_pair]))
        assert not leq_general(Forest([cherry_pair]), parse_forest("(a,b) (c,d)"))

    def test_different_labels(self):
        with pytest.raises(InvalidPartitionError):
            leq_general(parse_forest("(a,b)"), parse_forest("(a,c)"))

    def test_between_trees(self):
        # a single tree is only below itself
        a, b = parse_forest("((a,b),c)"), parse_forest("((a,c),b)")
        assert leq_general(a, a) and not leq_general(a, b)

    def test_matches_refinement(self):
        for k in range(2, 5):
            for t in all_trees(k):
                lattice = enumerate_interval(t)
                forests = [gamma_of_partition(t, lattice.partition(x)) for x in range(len(lattice))]
                for x, fx in enumerate(forests):
                    for y, fy in enumerate(forests):
                        assert leq_general(fx, fy) == lattice.leq(x, y)
