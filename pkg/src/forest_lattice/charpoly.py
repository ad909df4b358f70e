"""Characteristic polynomials of the interval below a tree, three ways."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .lattice import LatticeModel, mobius_from
from .levels import LevelSets
from .trees import Tree


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer coefficients, lowest degree first, no trailing zeros.

    >>> str(IntPolynomial.from_coeffs([2, -3, 1]))
    't^2 - 3t + 2'
    """

    coeffs: tuple[int, ...]

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "IntPolynomial":
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return cls(tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial.from_coeffs(out)

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in reversed(range(len(self.coeffs))):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = "t" if k == 1 else f"t^{k}"
                body = power if mag == 1 else f"{mag}{power}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms)


@dataclass(frozen=True)
class FactoredPoly:
    """``prod(t - r)`` over a multiset of roots kept in ascending order."""

    roots: tuple[int, ...]

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "FactoredPoly":
        return cls(tuple(sorted(roots)))

    def expand(self) -> IntPolynomial:
        return expand(self)

    def __str__(self):
        if not self.roots:
            return "1"
        parts = []
        for r, mult in sorted(Counter(self.roots).items()):
            factor = "t" if r == 0 else (f"(t-{r})" if r > 0 else f"(t+{-r})")
            parts.append(factor if mult == 1 else f"{factor}^{mult}")
        return "".join(parts)


def expand(factored: FactoredPoly) -> IntPolynomial:
    coeffs = [1]
    for r in factored.roots:
        # multiply by (t - r)
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= r * c
        coeffs = nxt
    return IntPolynomial.from_coeffs(coeffs)


def charpoly_mobius(lattice: LatticeModel) -> IntPolynomial:
    """Sum of ``mu(0, y) t^(n - rank y)`` over the lattice."""
    n = lattice.n
    coeffs = [0] * (n + 1)
    for y, mu in mobius_from(lattice, lattice.bottom).items():
        coeffs[n - lattice.rank[y]] += mu
    return IntPolynomial.from_coeffs(coeffs)


def charpoly_levels(level_sets: LevelSets) -> FactoredPoly:
    return FactoredPoly.from_roots(level_sets.sizes)


def charpoly_exponents(tree: Tree) -> FactoredPoly:
    return FactoredPoly.from_roots(tree.exponent(v) for v in tree.vertices)
