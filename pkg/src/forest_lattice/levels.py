"""Left-modularity and the level condition along the M-chain."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError
from .lattice import CheckResult, LatticeModel, atoms, iter_bits
from .shelling import MChain, edge_label
from .trees import NiceOrder


@dataclass(frozen=True)
class LevelSets:
    """``A[i - 1]``: atoms below the i-th chain element but not the previous one.
    ``B[i - 1]``: atoms whose bottom edge carries label ``i``."""

    A: tuple[frozenset, ...]
    B: tuple[frozenset, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.A)


def levels(lattice: LatticeModel, chain: MChain, order: NiceOrder) -> LevelSets:
    """Both partitions of the atoms; raises ``ConsistencyError`` if they differ."""
    atom_list = atoms(lattice)
    a_sets = []
    for i in range(1, lattice.n + 1):
        now, before = lattice.downset[chain[i]], lattice.downset[chain[i - 1]]
        a_sets.append(frozenset(a for a in atom_list if now >> a & 1 and not before >> a & 1))
    b_sets = [set() for _ in range(lattice.n)]
    for a in atom_list:
        b_sets[edge_label(lattice, lattice.bottom, a, order) - 1].add(a)
    result = LevelSets(tuple(a_sets), tuple(frozenset(b) for b in b_sets))
    if result.A != result.B:
        raise ConsistencyError(f"levels by chain {result.A} differ from levels by label {result.B}")
    return result


def check_left_modular(lattice: LatticeModel, chain: MChain) -> CheckResult:
    """``y | (x & z) == (y | x) & z`` for each chain element ``x`` and all ``y <= z``."""
    join, meet, upset = lattice.join, lattice.meet, lattice.upset
    for x in chain.chain:
        for y in range(len(lattice)):
            yx = join(y, x)
            for z in iter_bits(upset[y]):
                if join(y, meet(x, z)) != meet(yx, z):
                    return CheckResult(False, (x, y, z))
    return CheckResult(True)


def check_level_condition(lattice: LatticeModel, level_sets: LevelSets) -> CheckResult:
    """No atom lies below a join of atoms taken from strictly later, distinct levels.

    Exhaustive: for each level the set of every join reachable from choices in
    later levels is built incrementally (duplicates collapse), so the cost is
    bounded by the lattice size rather than the number of atom sequences.
    The vertex of the first atom is also checked to be absent from the join.
    """
    vm = lattice.vertex_masks
    reachable: set[int] = set()
    for i in reversed(range(len(level_sets.A))):
        for a0 in level_sets.A[i]:
            v0 = vm[a0]
            for r in reachable:
                if lattice.leq(a0, r) or vm[r] & v0:
                    return CheckResult(False, (a0, r))
        grown = set(reachable)
        for a in level_sets.A[i]:
            grown.add(a)
            for r in reachable:
                grown.add(lattice.join(r, a))
        reachable = grown
    return CheckResult(True)
