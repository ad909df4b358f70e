"""Rooted binary leaf-labeled trees, forests and nice vertex orders.

A tree is stored through its *structure*: a leaf label (``str``) or a pair
``(left, right)`` of structures.  Trees are not planar, so every structure is
brought to a canonical form where the child holding the smaller minimal leaf
label comes first.  Inner vertices get integer ids ``0..n-1`` in post-order of
that canonical form; these ids are stable across serialization round trips.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    InvalidOrderError,
    InvalidTreeError,
    TreeSyntaxError,
    UnknownLabelError,
)

Structure = Union[str, tuple]

LABEL_RE = re.compile(r"[A-Za-z0-9_]+")


def _canonical(structure):
    """Return ``(canonical structure, minimal leaf)``."""
    if isinstance(structure, str):
        return structure, structure
    if len(structure) != 2:
        raise InvalidTreeError(f"non-binary node with {len(structure)} children")
    left, min_left = _canonical(structure[0])
    right, min_right = _canonical(structure[1])
    if min_right < min_left:
        left, right, min_left = right, left, min_right
    return (left, right), min_left


def _serialize(structure) -> str:
    if isinstance(structure, str):
        return structure
    return f"({_serialize(structure[0])},{_serialize(structure[1])})"


class Tree:
    """A rooted binary tree whose leaves carry distinct labels.

    A single leaf with no inner vertex is allowed (the trivial tree).

    >>> t = parse_tree("(c,(b,a))")
    >>> str(t)
    '((a,b),c)'
    >>> t.n_vertices, t.leaves
    (2, ('a', 'b', 'c'))
    """

    def __init__(self, structure: Structure):
        self._structure, _ = _canonical(structure)
        children: list[tuple] = []
        sides: list[tuple[frozenset, frozenset]] = []
        parent: list[int | None] = []
        leaf_parent: dict[str, int | None] = {}

        def walk(node):
            # returns (child reference, leaf set)
            if isinstance(node, str):
                if not LABEL_RE.fullmatch(node):
                    raise InvalidTreeError(f"invalid leaf label {node!r}")
                if node in leaf_parent:
                    raise InvalidTreeError(f"duplicate leaf label {node!r}")
                leaf_parent[node] = None
                return node, frozenset([node])
            left, left_leaves = walk(node[0])
            right, right_leaves = walk(node[1])
            v = len(children)
            children.append((left, right))
            sides.append((left_leaves, right_leaves))
            parent.append(None)
            for child in (left, right):
                if isinstance(child, int):
                    parent[child] = v
                else:
                    leaf_parent[child] = v
            return v, left_leaves | right_leaves

        walk(self._structure)
        self._children = tuple(children)
        self._sides = tuple(sides)
        self._parent = tuple(parent)
        self._leaf_parent = leaf_parent
        self.leaves: tuple[str, ...] = tuple(sorted(leaf_parent))

    # -- basic protocol -------------------------------------------------

    @property
    def structure(self) -> Structure:
        return self._structure

    def __str__(self):
        return _serialize(self._structure)

    def __repr__(self):
        return f"Tree({str(self)!r})"

    def __eq__(self, other):
        return isinstance(other, Tree) and self._structure == other._structure

    def __hash__(self):
        return hash(self._structure)

    @property
    def n_vertices(self) -> int:
        return len(self._children)

    @property
    def vertices(self) -> range:
        return range(len(self._children))

    @property
    def root(self) -> int | None:
        """Id of the root vertex, or ``None`` for the trivial tree."""
        return len(self._children) - 1 if self._children else None

    def children(self, v: int) -> tuple:
        """The two children of ``v``: vertex ids (``int``) or leaf labels (``str``)."""
        self._check_vertex(v)
        return self._children[v]

    def parent(self, v: int) -> int | None:
        self._check_vertex(v)
        return self._parent[v]

    def _check_vertex(self, v):
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < len(self._children):
            raise IndexError(f"invalid vertex id {v!r} for tree {self}")

    def _check_label(self, label):
        if label not in self._leaf_parent:
            raise UnknownLabelError(f"unknown leaf label {label!r} in tree {self}")

    # -- geometry -------------------------------------------------------

    def ancestor_leaves(self, v: int) -> tuple[frozenset, frozenset]:
        """Leaf sets of the left and right subtrees above ``v``."""
        self._check_vertex(v)
        return self._sides[v]

    def subtree_leaves(self, v: int) -> frozenset:
        left, right = self.ancestor_leaves(v)
        return left | right

    def exponent(self, v: int) -> int:
        """Number of left ancestor leaves times number of right ancestor leaves."""
        left, right = self.ancestor_leaves(v)
        return len(left) * len(right)

    def is_below(self, v: int, w: int) -> bool:
        """True if ``w`` lies on the path from ``v`` to the root (``v`` itself included)."""
        self._check_vertex(w)
        self._check_vertex(v)
        while v is not None:
            if v == w:
                return True
            v = self._parent[v]
        return False

    @cached_property
    def _meet_table(self) -> dict:
        table = {}
        for v, (left, right) in enumerate(self._sides):
            for i in left:
                for j in right:
                    table[i, j] = table[j, i] = v
        return table

    def meet_vertex(self, i: str, j: str) -> int:
        """The inner vertex where the root paths of leaves ``i`` and ``j`` meet."""
        self._check_label(i)
        self._check_label(j)
        if i == j:
            raise ValueError(f"meet_vertex needs two distinct leaves, got {i!r} twice")
        return self._meet_table[i, j]

    def s_set(self, labels: Iterable[str]) -> frozenset:
        """Vertices of the form ``meet_vertex(i, j)`` for distinct ``i, j`` in ``labels``."""
        labels = sorted(set(labels))
        for label in labels:
            self._check_label(label)
        table = self._meet_table
        return frozenset(
            table[i, j] for a, i in enumerate(labels) for j in labels[a + 1:]
        )

    def restrict(self, labels: Iterable[str]) -> "Tree":
        """The tree on ``labels`` spanned by their root paths, degree-2 vertices removed."""
        keep = set(labels)
        if not keep:
            raise ValueError("cannot restrict a tree to an empty leaf set")
        for label in keep:
            self._check_label(label)

        def cut(node):
            if isinstance(node, str):
                return node if node in keep else None
            left, right = cut(node[0]), cut(node[1])
            if left is None:
                return right
            if right is None:
                return left
            return (left, right)

        return Tree(cut(self._structure))

    def embedding(self, sub: "Tree") -> tuple[int, ...]:
        """Map each vertex of a restriction ``sub`` to the vertex of ``self`` it comes from.

        Raises ``ValueError`` if ``sub`` is not a restriction of this tree.
        """
        image = []
        for w in sub.vertices:
            left, right = sub.ancestor_leaves(w)
            found = {self.meet_vertex(i, j) for i in left for j in right}
            if len(found) != 1:
                raise ValueError(f"{sub} is not a restriction of {self}")
            image.append(found.pop())
        if self.restrict(sub.leaves) != sub:
            raise ValueError(f"{sub} is not a restriction of {self}")
        return tuple(image)

    # -- bitmask views used by the lattice code ------------------------

    @cached_property
    def leaf_index(self) -> dict[str, int]:
        return {label: k for k, label in enumerate(self.leaves)}

    @cached_property
    def s_masks(self) -> tuple[int, ...]:
        """``s_masks[J]`` is the vertex bitmask of the S-set of leaf bitmask ``J``."""
        m = len(self.leaves)
        table = self._meet_table
        pair = [[0] * m for _ in range(m)]
        for a, i in enumerate(self.leaves):
            for b, j in enumerate(self.leaves):
                if a != b:
                    pair[a][b] = 1 << table[i, j]
        masks = [0] * (1 << m)
        for subset in range(1, 1 << m):
            high = subset.bit_length() - 1
            rest = subset ^ (1 << high)
            acc = masks[rest]
            r = rest
            while r:
                low = r & -r
                acc |= pair[high][low.bit_length() - 1]
                r ^= low
            masks[subset] = acc
        return tuple(masks)

    def leaf_mask(self, labels: Iterable[str]) -> int:
        index = self.leaf_index
        mask = 0
        for label in labels:
            self._check_label(label)
            mask |= 1 << index[label]
        return mask

    def mask_labels(self, mask: int) -> tuple[str, ...]:
        return tuple(label for k, label in enumerate(self.leaves) if mask >> k & 1)


def tree_vertex_masks(tree: Tree) -> list[tuple[int, int]]:
    """Per vertex, the leaf bitmasks of its left and right sides."""
    return [
        (tree.leaf_mask(left), tree.leaf_mask(right))
        for left, right in (tree.ancestor_leaves(v) for v in tree.vertices)
    ]


# -- parsing ------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char):
        if self.peek() != char:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            raise TreeSyntaxError(f"expected {char!r}, found {found}", self.pos)
        self.pos += 1

    def node(self):
        if self.peek() == "(":
            start = self.pos
            self.pos += 1
            kids = [self.node()]
            while self.peek() == ",":
                self.pos += 1
                kids.append(self.node())
            self.expect(")")
            if len(kids) != 2:
                raise TreeSyntaxError(f"non-binary node with {len(kids)} children", start)
            return tuple(kids)
        match = LABEL_RE.match(self.text, self.pos)
        if not match:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            raise TreeSyntaxError(f"expected leaf label or '(', found {found}", self.pos)
        self.pos = match.end()
        return match.group()


def parse_structure(text: str) -> Structure:
    parser = _Parser(text)
    structure = parser.node()
    if parser.peek() == ";":
        parser.pos += 1
    if parser.peek():
        raise TreeSyntaxError(f"unexpected trailing {parser.peek()!r}", parser.pos)
    return structure


def parse_tree(text: str) -> Tree:
    """Parse ``(L,R)`` text, e.g. ``"((a,b),c);"``.  A bare label is a trivial tree."""
    structure = parse_structure(text)
    try:
        return Tree(structure)
    except InvalidTreeError as exc:
        raise InvalidTreeError(f"{exc} in {text.strip()!r}") from None


# -- forests ------------------------------------------------------------


class Forest:
    """A set of trees with pairwise disjoint leaf sets.

    Trivial trees stand for isolated leaves, so the bottom forest on ``I`` is
    ``Forest.bottom(I)``.  Trees are kept sorted by minimal leaf.
    """

    def __init__(self, trees: Iterable[Tree]):
        trees = sorted(trees, key=lambda t: t.leaves[0])
        seen: set[str] = set()
        for t in trees:
            overlap = seen.intersection(t.leaves)
            if overlap:
                raise InvalidTreeError(f"leaf {sorted(overlap)[0]!r} appears in two trees")
            seen.update(t.leaves)
        self.trees: tuple[Tree, ...] = tuple(trees)
        self.leaves: tuple[str, ...] = tuple(sorted(seen))

    @classmethod
    def bottom(cls, labels: Iterable[str]) -> "Forest":
        return cls(Tree(label) for label in labels)

    @property
    def n_vertices(self) -> int:
        return sum(t.n_vertices for t in self.trees)

    def tree_of(self, label: str) -> Tree:
        for t in self.trees:
            if label in t.leaf_index:
                return t
        raise UnknownLabelError(f"unknown leaf label {label!r}")

    def __iter__(self):
        return iter(self.trees)

    def __len__(self):
        return len(self.trees)

    def __eq__(self, other):
        return isinstance(other, Forest) and self.trees == other.trees

    def __hash__(self):
        return hash(self.trees)

    def __str__(self):
        return " ".join(str(t) for t in self.trees)

    def __repr__(self):
        return f"Forest({str(self)!r})"


def parse_forest(text: str) -> Forest:
    """Whitespace separated trees, e.g. ``"(a,b) c"``."""
    parts, depth, start = [], 0, 0
    for k, char in enumerate(text + " "):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char.isspace() and depth == 0:
            if text[start:k].strip():
                parts.append(text[start:k])
            start = k + 1
    return Forest(parse_tree(part) for part in parts)


# -- nice orders --------------------------------------------------------


@dataclass(frozen=True)
class NiceOrder:
    """Labels ``1..n`` on inner vertices; ``labels[v]`` is the label of vertex ``v``."""

    labels: tuple[int, ...]

    def label(self, v: int) -> int:
        return self.labels[v]

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        """``vertices[k - 1]`` is the vertex with label ``k``."""
        out = [0] * len(self.labels)
        for v, k in enumerate(self.labels):
            out[k - 1] = v
        return tuple(out)

    def vertex(self, k: int) -> int:
        return self.vertices[k - 1]

    def __len__(self):
        return len(self.labels)


def canonical_nice_order(tree: Tree) -> NiceOrder:
    """Min-leaf sorted post-order; it coincides with vertex ids plus one."""
    return NiceOrder(tuple(range(1, tree.n_vertices + 1)))


def _as_labels(tree: Tree, order) -> tuple[int, ...]:
    if isinstance(order, NiceOrder):
        labels = order.labels
    elif isinstance(order, Mapping):
        if set(order) != set(tree.vertices):
            raise InvalidOrderError("order must assign a label to every inner vertex")
        labels = tuple(order[v] for v in tree.vertices)
    else:
        labels = tuple(order)
    if len(labels) != tree.n_vertices or sorted(labels) != list(range(1, tree.n_vertices + 1)):
        raise InvalidOrderError(
            f"order {labels} is not a bijection onto 1..{tree.n_vertices}"
        )
    return labels


def validate_nice_order(tree: Tree, order) -> bool:
    """True iff ``order`` (NiceOrder, mapping or sequence indexed by vertex)
    gives every vertex a smaller label than its parent."""
    labels = _as_labels(tree, order)
    for v in tree.vertices:
        p = tree.parent(v)
        if p is not None and labels[v] >= labels[p]:
            return False
    return True


def make_nice_order(tree: Tree, order) -> NiceOrder:
    """Validate and wrap; raises ``InvalidOrderError`` if not a linear extension."""
    labels = _as_labels(tree, order)
    if not validate_nice_order(tree, labels):
        raise InvalidOrderError(f"order {labels} does not extend the vertex order of {tree}")
    return NiceOrder(labels)


def nice_order_from_sequence(tree: Tree, vertices: Sequence[int]) -> NiceOrder:
    """Order in which ``vertices[k]`` receives label ``k + 1``."""
    if sorted(vertices) != list(tree.vertices):
        raise InvalidOrderError(f"{list(vertices)} is not a permutation of the vertex ids")
    labels = [0] * tree.n_vertices
    for k, v in enumerate(vertices, start=1):
        labels[v] = k
    return make_nice_order(tree, labels)


def nice_orders(tree: Tree) -> Iterator[NiceOrder]:
    """All linear extensions, in lexicographic order of the vertex sequence."""
    n = tree.n_vertices
    pending = [sum(isinstance(c, int) for c in tree.children(v)) for v in tree.vertices]
    sequence: list[int] = []

    def extend():
        if len(sequence) == n:
            labels = [0] * n
            for k, v in enumerate(sequence, start=1):
                labels[v] = k
            yield NiceOrder(tuple(labels))
            return
        for v in tree.vertices:
            if pending[v] == 0:
                pending[v] = -1
                p = tree.parent(v)
                if p is not None:
                    pending[p] -= 1
                sequence.append(v)
                yield from extend()
                sequence.pop()
                if p is not None:
                    pending[p] += 1
                pending[v] = 0

    yield from extend()


# -- enumeration --------------------------------------------------------


def default_labels(k: int) -> tuple[str, ...]:
    if k > len(string.ascii_lowercase):
        raise ValueError("at most 26 default labels")
    return tuple(string.ascii_lowercase[:k])


def _insertions(structure, label):
    yield (structure, label)
    if not isinstance(structure, str):
        left, right = structure
        for new in _insertions(left, label):
            yield (new, right)
        for new in _insertions(right, label):
            yield (left, new)


def all_trees(k: int, labels: Sequence[str] | None = None) -> Iterator[Tree]:
    """Every binary tree on ``k`` labeled leaves, (2k-3)!! of them for k >= 2.

    Built by inserting each new leaf on every edge, the root edge included.
    """
    labels = default_labels(k) if labels is None else tuple(labels)
    if len(labels) != k or k < 1:
        raise ValueError("need k >= 1 and exactly k labels")

    def grow(structure, rest):
        if not rest:
            yield Tree(structure)
            return
        for new in _insertions(structure, rest[0]):
            yield from grow(new, rest[1:])

    yield from grow(labels[0], labels[1:])
