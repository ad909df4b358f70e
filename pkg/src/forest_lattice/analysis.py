"""Per-tree pipelines shared by the command line and the sweep."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .charpoly import (
    FactoredPoly,
    IntPolynomial,
    charpoly_exponents,
    charpoly_levels,
    charpoly_mobius,
)
from .lattice import (
    DEFAULT_MAX_LEAVES,
    CheckResult,
    LatticeModel,
    check_semimodular,
    enumerate_interval,
    verify_lattice,
)
from .levels import check_left_modular, check_level_condition, levels
from .shelling import m_chain, verify_el_labeling, verify_sn_labeling
from .trees import NiceOrder, Tree, all_trees, canonical_nice_order

# reported but not implied by theory
OPTIONAL_CHECKS = ("semimodular",)

THREADS_ENV = "FOREST_LATTICE_THREADS"


@dataclass
class CharpolyReport:
    tree: Tree
    mobius: IntPolynomial
    levels: FactoredPoly
    exponents: FactoredPoly

    @property
    def levels_agree(self) -> bool:
        return self.mobius == self.levels.expand()

    @property
    def exponents_agree(self) -> bool:
        return self.mobius == self.exponents.expand()

    @property
    def agree(self) -> bool:
        return self.levels_agree and self.exponents_agree


@dataclass
class VerifyReport:
    tree: Tree
    lattice: LatticeModel
    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for name, r in self.checks.items() if name not in OPTIONAL_CHECKS)


def charpoly_report(tree: Tree, order: NiceOrder | None = None,
                    max_leaves: int = DEFAULT_MAX_LEAVES,
                    lattice: LatticeModel | None = None) -> CharpolyReport:
    order = order or canonical_nice_order(tree)
    lattice = lattice or enumerate_interval(tree, max_leaves)
    chain = m_chain(lattice, order)
    level_sets = levels(lattice, chain, order)
    return CharpolyReport(
        tree=tree,
        mobius=charpoly_mobius(lattice),
        levels=charpoly_levels(level_sets),
        exponents=charpoly_exponents(tree),
    )


def verify_report(tree: Tree, order: NiceOrder | None = None,
                  max_leaves: int = DEFAULT_MAX_LEAVES,
                  exhaustive: bool = False,
                  lattice: LatticeModel | None = None) -> VerifyReport:
    """Run every structural check; ``exhaustive`` forces chain enumeration."""
    order = order or canonical_nice_order(tree)
    lattice = lattice or enumerate_interval(tree, max_leaves)
    method = "exhaustive" if exhaustive else "auto"
    report = VerifyReport(tree, lattice)
    report.checks["lattice"] = verify_lattice(lattice, check_join_closure=True if exhaustive else None)
    report.checks["el_labeling"] = verify_el_labeling(lattice, order, method)
    report.checks["sn_labeling"] = verify_sn_labeling(lattice, order, method)
    chain = m_chain(lattice, order)
    report.checks["left_modular"] = check_left_modular(lattice, chain)
    report.checks["level_condition"] = check_level_condition(lattice, levels(lattice, chain, order))
    report.checks["semimodular"] = check_semimodular(lattice)
    return report


@dataclass
class SweepRow:
    leaves: int
    tree: str
    ok: bool
    failures: tuple[str, ...]


def _sweep_one(text_and_k) -> SweepRow:
    from .trees import parse_tree

    text, k = text_and_k
    tree = parse_tree(text)
    lattice = enumerate_interval(tree, max_leaves=k)
    verified = verify_report(tree, lattice=lattice)
    poly = charpoly_report(tree, lattice=lattice)
    failures = [name for name, r in verified.checks.items()
                if not r.ok and name not in OPTIONAL_CHECKS]
    if not poly.agree:
        failures.append("charpoly")
    return SweepRow(k, text, not failures, tuple(failures))


def sweep_trees(max_leaves: int):
    for k in range(2, max_leaves + 1):
        for tree in all_trees(k):
            yield str(tree), k


def sweep(max_leaves: int, workers: int | None = None) -> list[SweepRow]:
    """Verify every labeled tree on 2..max_leaves leaves, in enumeration order."""
    if workers is None:
        workers = int(os.environ.get(THREADS_ENV, "1") or 1)
    jobs = list(sweep_trees(max_leaves))
    if workers <= 1:
        return [_sweep_one(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_one, jobs, chunksize=32))
