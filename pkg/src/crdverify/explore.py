"""Forward reachability with a budget on distinct configurations."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .crn import Configuration, Crn, Homomorphism, check_dim, eval_hom

DEFAULT_BUDGET = 50_000


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    witness: tuple[int, ...] | None = None
    reason: str = ""

    @classmethod
    def yes(cls, witness: tuple[int, ...] | None = None, reason: str = "") -> Verdict:
        return cls(Answer.YES, witness, reason)

    @classmethod
    def no(cls, witness: tuple[int, ...] | None = None, reason: str = "") -> Verdict:
        return cls(Answer.NO, witness, reason)

    @classmethod
    def unknown(cls, reason: str = "budget-exhausted") -> Verdict:
        return cls(Answer.UNKNOWN, None, reason)

    @property
    def is_yes(self) -> bool:
        return self.answer is Answer.YES

    @property
    def is_no(self) -> bool:
        return self.answer is Answer.NO

    @property
    def definite(self) -> bool:
        return self.answer is not Answer.UNKNOWN


class Exploration:
    """Breadth-first exploration of post*(root) that can be consumed lazily.

    Iterating yields each configuration when it is first discovered (root first).
    ``saturated`` becomes true once the frontier empties; it stays false if the
    budget stops discovery or the caller stops iterating early.
    """

    def __init__(self, root: Configuration, crn: Crn, budget: int = DEFAULT_BUDGET):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        check_dim(root, crn.dim)
        self.crn = crn
        self.budget = budget
        self.nodes: list[Configuration] = [root]
        self.index: dict[Configuration, int] = {root: 0}
        self.parent: list[tuple[int, int] | None] = [None]
        self.succ: list[list[int]] = [[]]
        self.expanded = 0
        self.saturated = False
        self.exhausted = False
        self._gen = self._run()

    def __iter__(self) -> Iterator[Configuration]:
        return self._gen

    def run(self) -> Exploration:
        for _ in self._gen:
            pass
        return self

    def _run(self) -> Iterator[Configuration]:
        yield self.nodes[0]
        queue = deque([0])
        reactions = self.crn.reactions
        while queue:
            u = queue.popleft()
            c = self.nodes[u]
            out = self.succ[u]
            for ridx, a in enumerate(reactions):
                if not a.enabled_at(c):
                    continue
                d = a.fire(c)
                v = self.index.get(d)
                if v is None:
                    if len(self.nodes) >= self.budget:
                        self.exhausted = True
                        return
                    v = len(self.nodes)
                    self.nodes.append(d)
                    self.index[d] = v
                    self.parent.append((u, ridx))
                    self.succ.append([])
                    queue.append(v)
                    out.append(v)
                    yield d
                else:
                    out.append(v)
            self.expanded += 1
        self.saturated = True

    def path(self, target: int | Configuration) -> tuple[int, ...]:
        """Reaction indices along the BFS tree from the root to ``target``."""
        v = target if isinstance(target, int) else self.index[target]
        steps = []
        while self.parent[v] is not None:
            u, ridx = self.parent[v]
            steps.append(ridx)
            v = u
        return tuple(reversed(steps))

    # The helpers below are exact only once the exploration is saturated,
    # since then every node's post-set lies inside the explored graph.

    def _predecessors(self) -> list[list[int]]:
        pred: list[list[int]] = [[] for _ in self.nodes]
        for u, outs in enumerate(self.succ):
            for v in outs:
                pred[v].append(u)
        return pred

    def can_reach(self, targets: list[bool]) -> list[bool]:
        """For each node, whether some node flagged in ``targets`` is reachable from it."""
        pred = self._predecessors()
        hit = list(targets)
        stack = [v for v, t in enumerate(targets) if t]
        while stack:
            v = stack.pop()
            for u in pred[v]:
                if not hit[u]:
                    hit[u] = True
                    stack.append(u)
        return hit

    def always(self, pred: Callable[[Configuration], bool]) -> list[bool]:
        """For each node, whether ``pred`` holds on its entire post-set."""
        bad = [not pred(c) for c in self.nodes]
        return [not b for b in self.can_reach(bad)]

    def min_reachable(self, values: list[int]) -> list[int]:
        """For each node, the minimum of ``values`` over its post-set."""
        pred = self._predecessors()
        best = list(values)
        order = sorted(range(len(values)), key=values.__getitem__)
        for v in order:
            stack = [v]
            while stack:
                w = stack.pop()
                for u in pred[w]:
                    if best[u] > best[v]:
                        best[u] = best[v]
                        stack.append(u)
        return best


@dataclass
class ReachResult:
    visited: frozenset[Configuration]
    saturated: bool
    budget_used: int
    exploration: Exploration = field(repr=False, compare=False)

    def path(self, c: Configuration) -> tuple[int, ...]:
        return self.exploration.path(c)


def post_star(c: Configuration, crn: Crn, budget: int = DEFAULT_BUDGET) -> ReachResult:
    ex = Exploration(c, crn, budget).run()
    return ReachResult(frozenset(ex.nodes), ex.saturated, ex.expanded, ex)


def forall_reachable(
    c: Configuration,
    crn: Crn,
    pred: Callable[[Configuration], bool],
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Does ``pred`` hold on every configuration reachable from ``c``?

    A ``No`` carries the shortest witness path to a counterexample.
    """
    ex = Exploration(c, crn, budget)
    for d in ex:
        if not pred(d):
            return Verdict.no(ex.path(d), "counterexample")
    if ex.saturated:
        return Verdict.yes(reason="exhaustive")
    return Verdict.unknown()


def nondec_member(c: Configuration, crn: Crn, f: Homomorphism, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Is ``c`` in the set where ``f`` never drops below ``f(c)`` along any future?"""
    base = eval_hom(f, c)
    return forall_reachable(c, crn, lambda d: eval_hom(f, d) >= base, budget)
