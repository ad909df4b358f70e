"""Admissible partitions and the order on forests.

The forests below a tree ``T`` correspond one to one to the partitions of the
leaf set whose blocks have pairwise disjoint S-sets in ``T``.  This module
converts between the two pictures and implements comparison, meet and join on
partitions, plus a direct comparability test between arbitrary forests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InvalidPartitionError, NotDominatedError
from .trees import Forest, Tree


@dataclass(frozen=True)
class Partition:
    """A set partition in canonical form: sorted blocks, sorted by minimal element.

    >>> str(Partition.from_blocks([["c", "b"], ["d"], ["a"]]))
    'a|b,c|d'
    """

    blocks: tuple[tuple[str, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[str]]) -> "Partition":
        cleaned = [tuple(sorted(set(b))) for b in blocks]
        if any(not b for b in cleaned):
            raise InvalidPartitionError("empty block")
        seen: set[str] = set()
        for b in cleaned:
            if seen.intersection(b):
                raise InvalidPartitionError(f"blocks overlap on {sorted(seen.intersection(b))}")
            seen.update(b)
        return cls(tuple(sorted(cleaned)))

    @classmethod
    def singletons(cls, labels: Iterable[str]) -> "Partition":
        return cls.from_blocks([label] for label in labels)

    @property
    def ground(self) -> frozenset:
        return frozenset(x for b in self.blocks for x in b)

    @property
    def rank(self) -> int:
        return sum(len(b) - 1 for b in self.blocks)

    def block_of(self, label: str) -> tuple[str, ...]:
        for b in self.blocks:
            if label in b:
                return b
        raise InvalidPartitionError(f"{label!r} not in partition {self}")

    def __str__(self):
        return "|".join(",".join(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)


def parse_partition(text: str) -> Partition:
    """Inverse of ``str(Partition)``: ``"a,b|c|d"``."""
    blocks = [[x.strip() for x in part.split(",")] for part in text.strip().split("|")]
    if any(x == "" for b in blocks for x in b):
        raise InvalidPartitionError(f"malformed partition text {text!r}")
    return Partition.from_blocks(blocks)


def _check_ground(tree: Tree, p: Partition):
    if p.ground != frozenset(tree.leaves):
        raise InvalidPartitionError(f"{p} is not a partition of the leaves of {tree}")


def is_admissible(tree: Tree, p: Partition) -> bool:
    """True iff the S-sets of distinct blocks are pairwise disjoint."""
    _check_ground(tree, p)
    seen: set[int] = set()
    for b in p.blocks:
        s = tree.s_set(b)
        if seen & s:
            return False
        seen |= s
    return True


def _check_admissible(tree: Tree, p: Partition):
    if not is_admissible(tree, p):
        raise InvalidPartitionError(f"{p} is not admissible for {tree}")


def pi_of_forest(forest: Forest, tree: Tree | None = None) -> Partition:
    """Partition of the leaves by the trees of ``forest``.

    When ``tree`` is given, raises ``NotDominatedError`` unless ``forest`` lies
    below it.
    """
    if tree is not None and not leq_general(forest, Forest([tree])):
        raise NotDominatedError(f"forest {forest} is not below {tree}")
    return Partition.from_blocks(t.leaves for t in forest)


def gamma_of_partition(tree: Tree, p: Partition) -> Forest:
    """Forest of restrictions of ``tree`` to the blocks of ``p``."""
    _check_admissible(tree, p)
    return Forest(tree.restrict(b) for b in p.blocks)


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of ``p`` is contained in a block of ``q``."""
    if p.ground != q.ground:
        raise InvalidPartitionError("partitions of different ground sets")
    owner = {x: k for k, b in enumerate(q.blocks) for x in b}
    return all(len({owner[x] for x in b}) == 1 for b in p.blocks)


def meet_adm(tree: Tree, p: Partition, q: Partition) -> Partition:
    """Greatest admissible partition refining both: the blockwise intersections."""
    _check_ground(tree, p)
    _check_ground(tree, q)
    out = []
    for a in p.blocks:
        for b in q.blocks:
            common = set(a).intersection(b)
            if common:
                out.append(common)
    return Partition.from_blocks(out)


def join_adm(tree: Tree, p: Partition, q: Partition) -> Partition:
    """Least admissible partition coarser than both.

    Start from the join in the lattice of all partitions, then merge blocks
    whose S-sets meet until none do.
    """
    _check_ground(tree, p)
    _check_ground(tree, q)
    masks = [tree.leaf_mask(b) for b in p.blocks] + [tree.leaf_mask(b) for b in q.blocks]
    merged = join_masks(tree.s_masks, masks)
    return Partition.from_blocks(tree.mask_labels(m) for m in merged)


# -- bitmask kernels ----------------------------------------------------


def meet_masks(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted((a & b for a in p for b in q if a & b), key=lambda m: m & -m))


def join_masks(s_masks: tuple[int, ...], blocks: Iterable[int]) -> tuple[int, ...]:
    """Admissible closure of the union of overlapping leaf bitmasks."""
    parts: list[int] = []
    for block in blocks:
        # partition-lattice join: absorb every current part that overlaps
        keep = []
        for part in parts:
            if part & block:
                block |= part
            else:
                keep.append(part)
        keep.append(block)
        parts = keep
    changed = True
    while changed:
        changed = False
        parts.sort(key=lambda m: m & -m)
        for a, b in combinations(range(len(parts)), 2):
            if s_masks[parts[a]] & s_masks[parts[b]]:
                parts[a] |= parts[b]
                del parts[b]
                changed = True
                break
    return tuple(sorted(parts, key=lambda m: m & -m))


def admissible_masks(s_masks: tuple[int, ...], blocks: Iterable[int]) -> bool:
    seen = 0
    for b in blocks:
        s = s_masks[b]
        if seen & s:
            return False
        seen |= s
    return True


def set_partition_masks(m: int) -> Iterator[tuple[int, ...]]:
    """All set partitions of ``{0..m-1}`` as tuples of block bitmasks."""
    blocks: list[int] = []

    def place(k):
        if k == m:
            yield tuple(blocks)
            return
        bit = 1 << k
        for a in range(len(blocks)):
            blocks[a] |= bit
            yield from place(k + 1)
            blocks[a] ^= bit
        blocks.append(bit)
        yield from place(k + 1)
        blocks.pop()

    yield from place(0)


def admissible_partition_masks(s_masks: tuple[int, ...], m: int) -> Iterator[tuple[int, ...]]:
    """Set partitions of ``{0..m-1}`` that are admissible.

    Same output as filtering ``set_partition_masks``; branches are cut as soon
    as two partial blocks have intersecting S-sets, since adding leaves only
    grows S-sets.
    """
    blocks: list[int] = []

    def clashes(a):
        s = s_masks[blocks[a]]
        return any(s_masks[blocks[b]] & s for b in range(len(blocks)) if b != a)

    def place(k):
        if k == m:
            yield tuple(blocks)
            return
        bit = 1 << k
        for a in range(len(blocks)):
            blocks[a] |= bit
            if not clashes(a):
                yield from place(k + 1)
            blocks[a] ^= bit
        blocks.append(bit)
        yield from place(k + 1)
        blocks.pop()

    yield from place(0)


# -- general forest comparison ------------------------------------------


def forest_embedding(forest: Forest, other: Forest) -> dict | None:
    """The vertex map witnessing ``forest <= other``, or ``None``.

    Keys are ``(tree index in forest, vertex id)``, values likewise for
    ``other``.  Each inner vertex must go to the vertex of ``other`` where every
    leaf from one of its sides meets every leaf from the other; the map must
    then be injective and send parents strictly toward the root.
    """
    if forest.leaves != other.leaves:
        raise InvalidPartitionError("forests on different label sets")
    owner = {label: k for k, t in enumerate(other.trees) for label in t.leaves}
    phi: dict = {}
    for a, s in enumerate(forest.trees):
        for v in s.vertices:
            left, right = s.ancestor_leaves(v)
            targets = {owner[x] for x in left | right}
            if len(targets) != 1:
                return None
            b = targets.pop()
            g = other.trees[b]
            images = {g.meet_vertex(i, j) for i in left for j in right}
            if len(images) != 1:
                return None
            phi[a, v] = (b, images.pop())
    if len(set(phi.values())) != len(phi):
        return None
    for (a, v), (b, w) in phi.items():
        p = forest.trees[a].parent(v)
        if p is None:
            continue
        b2, w2 = phi[a, p]
        g = other.trees[b]
        if b2 != b or w2 == w or not g.is_below(w, w2):
            return None
    return phi


def leq_general(forest: Forest, other: Forest) -> bool:
    """Order relation on all forests over the same label set."""
    return forest_embedding(forest, other) is not None
