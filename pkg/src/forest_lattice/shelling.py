"""Edge labels from a nice vertex order, and EL / S_n EL verification.

A cover ``F < G`` adds exactly one inner vertex; its label under the order is
the label of the cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ConsistencyError, NotACoverError
from .lattice import CheckResult, LatticeModel, iter_bits
from .trees import NiceOrder

EXHAUSTIVE_MAX_LEAVES = 6


def edge_label(lattice: LatticeModel, lower: int, upper: int, order: NiceOrder) -> int:
    if not lattice.is_cover(lower, upper):
        raise NotACoverError(f"{lattice.partition(lower)} is not covered by {lattice.partition(upper)}")
    return order.label(lattice.added_vertex(lower, upper))


def chain_label(lattice: LatticeModel, chain: Sequence[int], order: NiceOrder) -> tuple[int, ...]:
    """Label word of a saturated chain; ``NotACoverError`` if a step is not a cover."""
    return tuple(edge_label(lattice, a, b, order) for a, b in zip(chain, chain[1:]))


def min_cover(lattice: LatticeModel, lower: int, upper: int, order: NiceOrder) -> int:
    """The cover of ``lower`` below ``upper`` adding the smallest missing vertex.

    Built by merging the two blocks of ``lower`` holding a leaf from each side
    of that vertex, choosing the two leaves inside one block of ``upper``.
    """
    if lower == upper or not lattice.leq(lower, upper):
        raise ValueError(f"min_cover needs lower < upper, got {lower}, {upper}")
    missing = lattice.vertex_masks[upper] & ~lattice.vertex_masks[lower]
    v0 = min(iter_bits(missing), key=order.label)
    tree = lattice.tree
    left, right = (tree.leaf_mask(side) for side in tree.ancestor_leaves(v0))
    top_block = next(b for b in lattice.elements[upper] if b & left and b & right)
    left_bit = (top_block & left) & -(top_block & left)
    right_bit = (top_block & right) & -(top_block & right)
    blocks = lattice.elements[lower]
    merged = [b for b in blocks if not b & (left_bit | right_bit)]
    merged.append(_block(blocks, left_bit) | _block(blocks, right_bit))
    merged.sort(key=lambda b: b & -b)
    cover = lattice.index.get(tuple(merged))
    if cover is None or not lattice.leq(cover, upper):
        raise ConsistencyError(f"no minimal-label cover from {lower} towards {upper}")
    return cover


def _block(blocks, bit):
    for b in blocks:
        if b & bit:
            return b
    raise ConsistencyError("leaf missing from partition")


@dataclass(frozen=True)
class MChain:
    chain: tuple[int, ...]

    def __len__(self):
        return len(self.chain)

    def __getitem__(self, i):
        return self.chain[i]


def m_chain(lattice: LatticeModel, order: NiceOrder) -> MChain:
    """The unique increasing maximal chain; step ``i`` adds the vertex labeled ``i``."""
    chain = [lattice.bottom]
    while chain[-1] != lattice.top:
        chain.append(min_cover(lattice, chain[-1], lattice.top, order))
    word = chain_label(lattice, chain, order)
    if word != tuple(range(1, lattice.n + 1)):
        raise ConsistencyError(f"M-chain carries labels {word}")
    return MChain(tuple(chain))


def saturated_chains(lattice: LatticeModel, lower: int, upper: int) -> Iterator[tuple[int, ...]]:
    """Every saturated chain from ``lower`` to ``upper``."""
    below_upper = lattice.downset[upper]
    chain = [lower]

    def walk():
        x = chain[-1]
        if x == upper:
            yield tuple(chain)
            return
        for y in lattice.covers_up[x]:
            if below_upper >> y & 1:
                chain.append(y)
                yield from walk()
                chain.pop()

    if lattice.leq(lower, upper):
        yield from walk()


def maximal_chains(lattice: LatticeModel) -> Iterator[tuple[int, ...]]:
    return saturated_chains(lattice, lattice.bottom, lattice.top)


def count_maximal_chains(lattice: LatticeModel) -> int:
    counts = [0] * len(lattice)
    counts[lattice.top] = 1
    for x in reversed(range(len(lattice) - 1)):
        counts[x] = sum(counts[y] for y in lattice.covers_up[x])
    return counts[0]


def _use_exhaustive(lattice, method):
    if method not in ("auto", "exhaustive", "local"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        return len(lattice.tree.leaves) <= EXHAUSTIVE_MAX_LEAVES
    return method == "exhaustive"


def _single_vertex_covers(lattice: LatticeModel) -> CheckResult:
    vm = lattice.vertex_masks
    for x in range(len(lattice)):
        for y in lattice.covers_up[x]:
            diff = vm[y] & ~vm[x]
            if vm[x] & ~vm[y] or diff & (diff - 1) or not diff:
                return CheckResult(False, (x, y))
    return CheckResult(True)


def _el_exhaustive(lattice: LatticeModel, order: NiceOrder) -> CheckResult:
    labels = {}
    for x in range(len(lattice)):
        for y in lattice.covers_up[x]:
            labels[x, y] = order.label(lattice.added_vertex(x, y))
    for lower in range(len(lattice)):
        increasing: dict[int, int] = {}
        best: dict[int, tuple] = {}
        best_count: dict[int, int] = {}
        word: list[int] = []

        def walk(x, rising):
            for y in lattice.covers_up[x]:
                lab = labels[x, y]
                still = rising and (not word or word[-1] <= lab)
                word.append(lab)
                w = tuple(word)
                if still:
                    increasing[y] = increasing.get(y, 0) + 1
                current = best.get(y)
                if current is None or w < current:
                    best[y], best_count[y] = w, 1
                elif w == current:
                    best_count[y] += 1
                walk(y, still)
                word.pop()

        walk(lower, True)
        for upper, w in best.items():
            is_rising = all(a <= b for a, b in zip(w, w[1:]))
            if increasing.get(upper, 0) != 1 or best_count[upper] != 1 or not is_rising:
                return CheckResult(False, (lower, upper))
    return CheckResult(True)


def _el_local(lattice: LatticeModel, order: NiceOrder) -> CheckResult:
    # With single-vertex covers every chain word of [F, H] is a permutation of
    # the vertices H adds over F, so EL reduces to: from each F < H exactly one
    # cover below H adds the smallest missing vertex.
    covers = _single_vertex_covers(lattice)
    if not covers:
        return covers
    vm, down = lattice.vertex_masks, lattice.downset
    for lower in range(len(lattice)):
        for upper in iter_bits(lattice.upset[lower] & ~(1 << lower)):
            target = min(iter_bits(vm[upper] & ~vm[lower]), key=order.label)
            hits = [
                y for y in lattice.covers_up[lower]
                if down[upper] >> y & 1 and (vm[y] >> target) & 1
            ]
            if len(hits) != 1:
                return CheckResult(False, (lower, upper))
    return CheckResult(True)


def verify_el_labeling(lattice: LatticeModel, order: NiceOrder, method: str = "auto") -> CheckResult:
    """Every interval has exactly one increasing saturated chain, and its word
    is strictly lexicographically first.

    ``method="exhaustive"`` enumerates every saturated chain of every interval;
    ``"local"`` checks the one-step criterion; ``"auto"`` picks exhaustive up to
    six leaves.  The witness is a failing interval ``(lower, upper)``.
    """
    if _use_exhaustive(lattice, method):
        return _el_exhaustive(lattice, order)
    return _el_local(lattice, order)


def verify_sn_labeling(lattice: LatticeModel, order: NiceOrder, method: str = "auto") -> CheckResult:
    """Every maximal chain word is a permutation of ``1..n``."""
    expected = list(range(1, lattice.n + 1))
    if _use_exhaustive(lattice, method):
        for chain in maximal_chains(lattice):
            word = chain_label(lattice, chain, order)
            if sorted(word) != expected:
                return CheckResult(False, chain)
        return CheckResult(True)
    covers = _single_vertex_covers(lattice)
    if not covers:
        return covers
    full = (1 << lattice.n) - 1
    if lattice.vertex_masks[lattice.bottom] != 0 or lattice.vertex_masks[lattice.top] != full:
        return CheckResult(False, (lattice.bottom, lattice.top))
    return CheckResult(True)
