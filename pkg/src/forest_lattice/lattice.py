"""The interval below a tree, materialized as a finite lattice.

Elements are the admissible partitions of the leaf set, stored as tuples of
leaf bitmasks and indexed rank-major, then by canonical partition order.  Index
0 is the all-singletons partition and the last index is the tree itself.
Order relations are kept as Python ints used as bitsets over element indices,
so meets and joins reduce to a couple of bit operations.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, NamedTuple

from .errors import BoundExceededError, ConsistencyError, InvalidPartitionError
from .partitions import (
    Partition,
    admissible_partition_masks,
    join_masks,
)
from .trees import NiceOrder, Tree, canonical_nice_order

DEFAULT_MAX_LEAVES = 10


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class CheckResult(NamedTuple):
    """Outcome of a verification; falsy on failure, with a witness when one exists."""

    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


_BITS: list[tuple[int, ...]] = []


def _bit_tuple(mask: int) -> tuple[int, ...]:
    if mask >= len(_BITS):
        _BITS.extend(tuple(iter_bits(b)) for b in range(len(_BITS), 2 * mask + 2))
    return _BITS[mask]


def _canonical_key(blocks: tuple[int, ...]) -> tuple:
    return tuple(_bit_tuple(b) for b in blocks)


_PAIR_TABLES: dict[int, tuple[int, ...]] = {}


def _pair_table(m: int) -> tuple[int, ...]:
    """``table[block]``: bitmask over leaf pairs ``(i < j)`` lying inside ``block``."""
    if m not in _PAIR_TABLES:
        bit = {}
        for i in range(m):
            for j in range(i + 1, m):
                bit[i, j] = 1 << len(bit)
        table = [0] * (1 << m)
        for block in range(1, 1 << m):
            high = block.bit_length() - 1
            acc = table[block ^ (1 << high)]
            for i in _bit_tuple(block ^ (1 << high)):
                acc |= bit[i, high]
            table[block] = acc
        _PAIR_TABLES[m] = tuple(table)
    return _PAIR_TABLES[m]


class LatticeModel:
    """Elements, ranks, covers and order bitsets of the interval below ``tree``."""

    def __init__(self, tree: Tree, elements: list[tuple[int, ...]]):
        m = len(tree.leaves)
        elements = sorted(elements, key=lambda e: (m - len(e), _canonical_key(e)))
        self.tree = tree
        self.elements: tuple[tuple[int, ...], ...] = tuple(elements)
        self.index = {e: k for k, e in enumerate(elements)}
        s_masks = tree.s_masks
        self.rank = tuple(m - len(e) for e in elements)
        self.vertex_masks = tuple(_or(s_masks[b] for b in e) for e in elements)
        pairs = _pair_table(m)
        # same-block relation; the blockwise intersection of two partitions is the AND
        self.pair_masks = tuple(_or(pairs[b] for b in e) for e in elements)
        up: list[list[int]] = [[] for _ in elements]
        down: list[list[int]] = [[] for _ in elements]
        index = self.index
        for x, e in enumerate(elements):
            vx = self.vertex_masks[x]
            for a, b in combinations(range(len(e)), 2):
                # admissible iff the merged block gains no vertex owned by another block
                sa, sb = s_masks[e[a]], s_masks[e[b]]
                if s_masks[e[a] | e[b]] & (vx ^ sa ^ sb):
                    continue
                # blocks are sorted by lowest bit, so the merge stays in slot a
                y = index[e[:a] + (e[a] | e[b],) + e[a + 1:b] + e[b + 1:]]
                up[x].append(y)
                down[y].append(x)
        self.covers_up = tuple(tuple(sorted(c)) for c in up)
        self.covers_down = tuple(tuple(sorted(c)) for c in down)
        upset = [0] * len(elements)
        for x in reversed(range(len(elements))):
            acc = 1 << x
            for y in up[x]:
                acc |= upset[y]
            upset[x] = acc
        downset = [0] * len(elements)
        for x in range(len(elements)):
            acc = 1 << x
            for y in down[x]:
                acc |= downset[y]
            downset[x] = acc
        self.upset = tuple(upset)
        self.downset = tuple(downset)

    # -- shape ------------------------------------------------------------

    def __len__(self):
        return len(self.elements)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    @property
    def n(self) -> int:
        """Rank of the lattice, i.e. the number of inner vertices of the tree."""
        return self.rank[-1]

    @property
    def n_covers(self) -> int:
        return sum(len(c) for c in self.covers_up)

    # -- conversions -----------------------------------------------------

    def partition(self, x: int) -> Partition:
        return Partition.from_blocks(self.tree.mask_labels(b) for b in self.elements[x])

    def index_of(self, p: Partition) -> int:
        tree = self.tree
        key = tuple(sorted((tree.leaf_mask(b) for b in p.blocks), key=lambda b: b & -b))
        try:
            return self.index[key]
        except KeyError:
            raise InvalidPartitionError(f"{p} is not an element of the interval below {tree}") from None

    def vertex_set(self, x: int) -> frozenset:
        return frozenset(iter_bits(self.vertex_masks[x]))

    # -- order -----------------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        return bool(self.upset[x] >> y & 1)

    def is_cover(self, x: int, y: int) -> bool:
        return y in self.covers_up[x]

    def join(self, x: int, y: int) -> int:
        common = self.upset[x] & self.upset[y]
        j = (common & -common).bit_length() - 1
        if j < 0 or common & ~self.upset[j]:
            raise ConsistencyError(f"elements {x} and {y} have no join")
        return j

    def meet(self, x: int, y: int) -> int:
        common = self.downset[x] & self.downset[y]
        j = common.bit_length() - 1
        if j < 0 or common & ~self.downset[j]:
            raise ConsistencyError(f"elements {x} and {y} have no meet")
        return j

    def join_all(self, xs) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join(acc, x)
        return acc

    def added_vertex(self, x: int, y: int) -> int:
        """The vertex gained along the cover ``x < y``."""
        if not self.is_cover(x, y):
            raise ConsistencyError(f"{x} -> {y} is not a cover")
        diff = self.vertex_masks[y] & ~self.vertex_masks[x]
        return diff.bit_length() - 1

    def interval(self, x: int, y: int) -> list[int]:
        return list(iter_bits(self.upset[x] & self.downset[y]))


def _or(values) -> int:
    acc = 0
    for v in values:
        acc |= v
    return acc


def enumerate_interval(tree: Tree, max_leaves: int = DEFAULT_MAX_LEAVES) -> LatticeModel:
    """Build the lattice of admissible partitions of ``tree``."""
    m = len(tree.leaves)
    if m > max_leaves:
        raise BoundExceededError(f"{m} leaves exceeds the bound of {max_leaves}")
    return LatticeModel(tree, list(admissible_partition_masks(tree.s_masks, m)))


def atoms(lattice: LatticeModel) -> list[int]:
    return [x for x in range(len(lattice)) if lattice.rank[x] == 1]


def mobius_from(lattice: LatticeModel, x: int) -> dict[int, int]:
    """``{y: mu(x, y)}`` for every ``y >= x``."""
    mu = {x: 1}
    upset = lattice.upset[x]
    for y in iter_bits(upset & ~(1 << x)):
        below = upset & lattice.downset[y] & ~(1 << y)
        mu[y] = -sum(mu[z] for z in iter_bits(below))
    return mu


def mobius(lattice: LatticeModel, x: int, y: int) -> int:
    if not lattice.leq(x, y):
        raise ValueError(f"mobius needs x <= y, got {x}, {y}")
    return mobius_from(lattice, x)[y]


def verify_lattice(lattice: LatticeModel, check_join_closure: bool | None = None) -> CheckResult:
    """Every pair has a least upper and greatest lower bound.

    The order-theoretic meet is also compared with the blockwise intersection
    of the two partitions.  With ``check_join_closure`` (default: up to five
    leaves) the join is compared with the admissible merge closure as well;
    that comparison dominates the running time.
    """
    if check_join_closure is None:
        check_join_closure = len(lattice.tree.leaves) <= 5
    up, down, pm = lattice.upset, lattice.downset, lattice.pair_masks
    elements, s_masks = lattice.elements, lattice.tree.s_masks
    for x in range(len(elements)):
        upx, downx, pmx = up[x], down[x], pm[x]
        for y in range(x + 1, len(elements)):
            common = upx & up[y]
            j = (common & -common).bit_length() - 1
            if j < 0 or common & ~up[j]:
                return CheckResult(False, (x, y, "no join"))
            common = downx & down[y]
            m = common.bit_length() - 1
            if m < 0 or common & ~down[m]:
                return CheckResult(False, (x, y, "no meet"))
            if pm[m] != pmx & pm[y]:
                return CheckResult(False, (x, y, "meet is not the blockwise intersection"))
            if check_join_closure and join_masks(s_masks, elements[x] + elements[y]) != elements[j]:
                return CheckResult(False, (x, y, "join differs from merge closure"))
    return CheckResult(True)


def semimodular_violations(lattice: LatticeModel) -> Iterator[tuple[int, int]]:
    """Pairs covering their meet whose join does not cover both."""
    for z in range(len(lattice)):
        for x, y in combinations(lattice.covers_up[z], 2):
            j = lattice.join(x, y)
            if not (lattice.is_cover(x, j) and lattice.is_cover(y, j)):
                yield x, y


def check_semimodular(lattice: LatticeModel) -> CheckResult:
    for pair in semimodular_violations(lattice):
        return CheckResult(False, pair)
    return CheckResult(True)


def to_dot(lattice: LatticeModel, order: NiceOrder | None = None) -> str:
    """Hasse diagram in DOT; edges carry the label of the vertex they add."""
    order = order or canonical_nice_order(lattice.tree)
    lines = [
        "digraph hasse {",
        "  rankdir=BT;",
        "  node [shape=box];",
    ]
    for x in range(len(lattice)):
        lines.append(f'  n{x} [label="{lattice.partition(x)}"];')
    for x in range(len(lattice)):
        for y in lattice.covers_up[x]:
            label = order.label(lattice.added_vertex(x, y))
            lines.append(f'  n{x} -> n{y} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
