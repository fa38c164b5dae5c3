"""Upward-closed sets and backward coverability.

An upward-closed set is kept as its antichain of minimal elements. The
predecessor basis of ``↑b`` under a reaction ``(r, p)`` is ``r + max(b - p, 0)``;
iterating that to a fixpoint gives a finite basis of ``pre*(↑U)`` for any CRN.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .crn import Configuration, Crn, check_dim, leq
from .semilinear import LinearSet, LinearUnion


@dataclass(frozen=True)
class UpwardClosedSet:
    basis: tuple[Configuration, ...]
    dim: int
    # basis element -> (reaction index, element it was derived from); empty for seeds
    origin: dict[Configuration, tuple[int, Configuration]] = field(
        default_factory=dict, compare=False, hash=False, repr=False
    )

    def __contains__(self, c: Configuration) -> bool:
        return any(leq(b, c) for b in self.basis)

    def cover_of(self, c: Configuration) -> Configuration | None:
        for b in self.basis:
            if leq(b, c):
                return b
        return None


def _insert(basis: list[Configuration], cand: Configuration) -> bool:
    """Add ``cand`` to an antichain unless dominated; drop elements it dominates."""
    for b in basis:
        if leq(b, cand):
            return False
    basis[:] = [b for b in basis if not leq(cand, b)]
    basis.append(cand)
    return True


def min_basis(vs: Iterable[Configuration], dim: int | None = None) -> UpwardClosedSet:
    vs = list(vs)
    if dim is None:
        if not vs:
            raise ValueError("dimension required for an empty basis")
        dim = len(vs[0])
    basis: list[Configuration] = []
    for v in vs:
        check_dim(v, dim)
        _insert(basis, tuple(v))
    return UpwardClosedSet(tuple(sorted(basis)), dim)


def _pred_candidate(b: Configuration, reactants: Configuration, products: Configuration) -> Configuration:
    return tuple(r + max(x - p, 0) for x, r, p in zip(b, reactants, products))


def pre_basis(U: UpwardClosedSet, crn: Crn) -> UpwardClosedSet:
    """Basis of ``↑U`` together with its one-step predecessors."""
    if U.dim != crn.dim:
        raise ValueError("dimension mismatch")
    cands = list(U.basis)
    for b in U.basis:
        for a in crn.reactions:
            cands.append(_pred_candidate(b, a.reactants, a.products))
    return min_basis(cands, U.dim)


def pre_star_basis(U: UpwardClosedSet, crn: Crn) -> UpwardClosedSet:
    """Least fixpoint of :func:`pre_basis`; always terminates (Dickson)."""
    if U.dim != crn.dim:
        raise ValueError("dimension mismatch")
    return _pre_star(U.basis, crn)


@lru_cache(maxsize=512)
def _pre_star(seed: tuple[Configuration, ...], crn: Crn) -> UpwardClosedSet:
    basis: list[Configuration] = []
    origin: dict[Configuration, tuple[int, Configuration]] = {}
    for b in seed:
        _insert(basis, b)
    work = list(basis)
    members = set(basis)
    rxns = [(i, a.reactants, a.products) for i, a in enumerate(crn.reactions)]
    while work:
        b = work.pop()  # newest first
        if b not in members:
            continue
        for i, r, p in rxns:
            cand = _pred_candidate(b, r, p)
            if cand in members:
                continue
            if _insert(basis, cand):
                origin.setdefault(cand, (i, b))
                members = set(basis)
                work.append(cand)
    return UpwardClosedSet(tuple(sorted(basis)), crn.dim, origin)


def coverable(c: Configuration, U: UpwardClosedSet, crn: Crn) -> bool:
    """Can ``c`` reach some configuration in ``↑U``?"""
    check_dim(c, crn.dim)
    return c in pre_star_basis(U, crn)


def cover_path(c: Configuration, U: UpwardClosedSet, crn: Crn) -> tuple[int, ...] | None:
    """A reaction sequence from ``c`` into ``↑U``, or None if none exists."""
    check_dim(c, crn.dim)
    P = pre_star_basis(U, crn)
    b = P.cover_of(c)
    if b is None:
        return None
    steps = []
    seeds = set(U.basis)
    # walk derivation links back to a seed element; each step stays above the next link
    while b not in seeds and b in P.origin:
        ridx, parent = P.origin[b]
        steps.append(ridx)
        b = parent
    return tuple(steps)


def units(crn: Crn, names: Iterable[str]) -> UpwardClosedSet:
    """``↑{e_S : S in names}``: configurations containing at least one listed species."""
    return min_basis([crn.species.unit(n) for n in names], crn.dim)


def upward_to_semilinear(U: UpwardClosedSet) -> LinearUnion:
    unit_vectors = tuple(tuple(int(i == j) for j in range(U.dim)) for i in range(U.dim))
    return LinearUnion(tuple(LinearSet(b, unit_vectors) for b in U.basis), U.dim)
