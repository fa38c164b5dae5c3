from __future__ import annotations

from typing import Callable

import numpy as np
import pytest

from crdverify.crd import Convention, Crd
from crdverify.cover import min_basis, pre_star_basis
from crdverify.crn import Configuration, Crn, configs_up_to
from crdverify.dsl import load_corpus
from crdverify.explore import post_star

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):  # noqa: ARG001
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --- builders -----------------------------------------------------------------


def mod_consensus(m: int) -> Crd:
    crn = Crn.from_lists(
        ["X", "Y", "V0"],
        [
            ({"X": m}, {"V0": 1}),
            ({"Y": m}, {"V0": 1}),
            ({"X": 1, "Y": 1}, {"V0": 1}),
            ({"Y": 1, "V0": 1}, {"Y": 1}),
            ({"X": 1, "V0": 1}, {"X": 1}),
        ],
    )
    return Crd(crn, ("X", "Y"), Convention.CON, ("V0",), ("X", "Y"))


def mod_exist(m: int) -> Crd:
    crn = Crn.from_lists(["X", "Y"], [({"X": m}, {}), ({"Y": m}, {}), ({"X": 1, "Y": 1}, {})])
    return Crd(crn, ("X", "Y"), Convention.EXI, (), ("X", "Y"))


def majority() -> Crd:
    crn = Crn.from_lists(["X1", "X2", "Y", "N"], [({"X1": 1, "N": 1}, {"Y": 1}), ({"X2": 1, "Y": 1}, {"N": 1})])
    return Crd(crn, ("X1", "X2"), Convention.CON, ("X2", "N"), ("X1", "Y"), crn.species.config(N=1))


@pytest.fixture
def corpus():
    return load_corpus


# --- independent oracles --------------------------------------------------------


def naive_post(c: Configuration, crn: Crn, cap: int = 100_000) -> set[Configuration]:
    """Set-based fixpoint, no BFS bookkeeping; raises if it grows past ``cap``."""
    seen = {c}
    frontier = {c}
    while frontier:
        nxt = set()
        for d in frontier:
            for a in crn.reactions:
                if all(x >= r for x, r in zip(d, a.reactants)):
                    e = tuple(x - r + p for x, r, p in zip(d, a.reactants, a.products))
                    if e not in seen:
                        nxt.add(e)
        seen |= nxt
        frontier = nxt
        if len(seen) > cap:
            raise RuntimeError("state space above cap")
    return seen


def naive_region(crd: Crd, i: int) -> Callable[[Configuration], bool]:
    idx = crd.species.index
    g0 = [idx[n] for n in crd.voters0]
    g1 = [idx[n] for n in crd.voters1]

    def member(c: Configuration) -> bool:
        s = (sum(c[j] for j in g0), sum(c[j] for j in g1))
        if crd.convention in (Convention.CON, Convention.DEL):
            return s[i] > 0 and s[1 - i] == 0
        if crd.convention is Convention.EXI:
            return (s[1] > 0) == bool(i)
        return s[i] > s[1 - i]

    return member


def naive_in_output(c: Configuration, crd: Crd, i: int) -> bool:
    region = naive_region(crd, i)
    return all(region(d) for d in naive_post(c, crd.crn))


def naive_class(crd: Crd, x: dict[str, int]) -> str:
    """zero / one / partition-violation by brute force (finite state spaces only)."""
    post = naive_post(crd.embed(x), crd.crn)
    hits = [any(naive_in_output(d, crd, i) for d in post) for i in (0, 1)]
    if hits[0] == hits[1]:
        return "partition-violation"
    return "one" if hits[1] else "zero"


def cover_mismatches(crn: Crn, cap: int = 6, budget: int = 400) -> list[tuple[Configuration, Configuration]]:
    """(source, target) pairs with norms <= cap where backward coverability disagrees with forward search.

    Norm-nonincreasing networks are explored exhaustively, so both answers are
    checked; otherwise a budgeted search can only confirm positive answers.
    """
    exact = all(sum(a.products) <= sum(a.reactants) for a in crn.reactions)
    configs = list(configs_up_to(crn.dim, cap))
    targets = np.array(configs)
    pre = {t: pre_star_basis(min_basis([t]), crn) for t in configs}
    bad = []
    for c in configs:
        if exact:
            nodes, complete = naive_post(c, crn), True
        else:
            res = post_star(c, crn, budget=budget)
            nodes, complete = res.visited, res.saturated
        # counts above cap never matter for targets of norm <= cap
        reach = np.unique(np.minimum(np.array(sorted(nodes)), cap), axis=0)
        hit = (reach[:, None, :] >= targets[None, :, :]).all(axis=2).any(axis=0)
        for t, seen in zip(configs, hit):
            got = c in pre[t]
            if (seen and not got) or (complete and not seen and got):
                bad.append((c, t))
    return bad
