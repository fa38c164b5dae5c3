"""Reaction networks over integer-tuple configurations, with one-step semantics.

Configurations are plain tuples of Python ints indexed by a :class:`SpeciesTable`,
so they hash cheaply and never overflow.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

Configuration = tuple[int, ...]

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


class NotEnabled(ValueError):
    """A reaction was applied to a configuration that does not cover its reactants."""


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SpeciesTable:
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            dupes = sorted({n for n in self.names if self.names.count(n) > 1})
            raise ValueError(f"duplicate species: {', '.join(dupes)}")
        for n in self.names:
            if not n:
                raise ValueError("species names must be non-empty")

    @cached_property
    def index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.index

    def config(self, counts: Mapping[str, int] | None = None, **kw: int) -> Configuration:
        """Build a configuration from a name -> count mapping (missing names are 0)."""
        merged = dict(counts or {})
        merged.update(kw)
        vec = [0] * len(self.names)
        for name, k in merged.items():
            if name not in self.index:
                raise KeyError(f"unknown species {name!r}")
            if k < 0:
                raise ValueError(f"negative count for {name!r}")
            vec[self.index[name]] = int(k)
        return tuple(vec)

    def unit(self, name: str) -> Configuration:
        return self.config({name: 1})

    def as_dict(self, c: Configuration) -> dict[str, int]:
        check_dim(c, len(self.names))
        return {n: k for n, k in zip(self.names, c) if k}

    def format(self, c: Configuration) -> str:
        """Multiset notation in species order, e.g. ``{2 X, 1 V0}``."""
        parts = [f"{k} {n}" for n, k in zip(self.names, c) if k]
        return "{" + ", ".join(parts) + "}"

    def extend(self, extra: Iterable[str]) -> SpeciesTable:
        return SpeciesTable(self.names + tuple(extra))

    def fresh(self, base: str, taken: Iterable[str] = ()) -> str:
        """A species name derived from ``base`` that is not already used."""
        used = set(self.names) | set(taken)
        name = base
        while name in used:
            name += "_"
        return name


def valid_name(name: str) -> bool:
    return bool(_NAME_RE.match(name))


def check_dim(c: Sequence[int], n: int) -> None:
    if len(c) != n:
        raise DimensionMismatch(f"expected dimension {n}, got {len(c)}")


def norm(c: Configuration) -> int:
    return sum(c)


def leq(a: Configuration, b: Configuration) -> bool:
    return all(x <= y for x, y in zip(a, b))


def add(a: Configuration, b: Configuration) -> Configuration:
    return tuple(x + y for x, y in zip(a, b))


def zero(n: int) -> Configuration:
    return (0,) * n


@dataclass(frozen=True)
class Reaction:
    reactants: Configuration
    products: Configuration

    def __post_init__(self) -> None:
        if len(self.reactants) != len(self.products):
            raise DimensionMismatch("reactants and products differ in dimension")
        if any(k < 0 for k in self.reactants) or any(k < 0 for k in self.products):
            raise ValueError("reaction vectors must be nonnegative")

    @cached_property
    def delta(self) -> tuple[int, ...]:
        return tuple(p - r for r, p in zip(self.reactants, self.products))

    @cached_property
    def _sparse(self) -> tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]:
        need = tuple((i, k) for i, k in enumerate(self.reactants) if k)
        change = tuple((i, d) for i, d in enumerate(self.delta) if d)
        return need, change

    def enabled_at(self, c: Configuration) -> bool:
        return all(c[i] >= k for i, k in self._sparse[0])

    def fire(self, c: Configuration) -> Configuration:
        """``c - r + p`` without the enabledness check."""
        out = list(c)
        for i, d in self._sparse[1]:
            out[i] += d
        return tuple(out)

    def format(self, species: SpeciesTable) -> str:
        return f"{format_side(self.reactants, species)} -> {format_side(self.products, species)}"


def format_side(v: Configuration, species: SpeciesTable) -> str:
    terms = []
    for name, k in zip(species.names, v):
        if k == 1:
            terms.append(name)
        elif k:
            terms.append(f"{k} {name}")
    return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class Crn:
    species: SpeciesTable
    reactions: tuple[Reaction, ...]

    def __post_init__(self) -> None:
        n = len(self.species)
        for a in self.reactions:
            check_dim(a.reactants, n)

    @classmethod
    def from_lists(
        cls,
        species: Sequence[str],
        reactions: Iterable[tuple[Mapping[str, int], Mapping[str, int]]],
    ) -> Crn:
        table = SpeciesTable(tuple(species))
        rxns = tuple(Reaction(table.config(r), table.config(p)) for r, p in reactions)
        return cls(table, rxns)

    @property
    def dim(self) -> int:
        return len(self.species)

    def successors(self, c: Configuration) -> Iterator[tuple[int, Configuration]]:
        for idx, a in enumerate(self.reactions):
            if a.enabled_at(c):
                yield idx, a.fire(c)

    @cached_property
    def has_empty_product_reaction(self) -> bool:
        """True iff some reaction with nonempty reactants has no products (so pre(0) != {0})."""
        return any(not any(a.products) and any(a.reactants) for a in self.reactions)

    @cached_property
    def mass_nonincreasing(self) -> bool:
        return all(sum(a.products) <= sum(a.reactants) for a in self.reactions)

    def format_reaction(self, idx: int) -> str:
        return self.reactions[idx].format(self.species)


def apply(c: Configuration, a: Reaction) -> Configuration:
    """Fire ``a`` at ``c``; raises :class:`NotEnabled` if some reactant count exceeds ``c``."""
    check_dim(c, len(a.reactants))
    if not a.enabled_at(c):
        raise NotEnabled(f"reaction not enabled at {c}")
    return a.fire(c)


def enabled(c: Configuration, crn: Crn) -> list[int]:
    check_dim(c, crn.dim)
    return [i for i, a in enumerate(crn.reactions) if a.enabled_at(c)]


@dataclass(frozen=True)
class Homomorphism:
    """Integer-weighted count ``f(c) = sum_S weights[S] * c[S]``."""

    weights: tuple[int, ...]

    @classmethod
    def indicator(cls, species: SpeciesTable, members: Iterable[str]) -> Homomorphism:
        members = set(members)
        return cls(tuple(1 if n in members else 0 for n in species.names))

    @classmethod
    def difference(cls, species: SpeciesTable, plus: Iterable[str], minus: Iterable[str]) -> Homomorphism:
        plus, minus = set(plus), set(minus)
        return cls(tuple((n in plus) - (n in minus) for n in species.names))

    def __call__(self, c: Configuration) -> int:
        return eval_hom(self, c)


def eval_hom(f: Homomorphism, c: Configuration) -> int:
    check_dim(c, len(f.weights))
    return sum(w * k for w, k in zip(f.weights, c))


def configs_up_to(n: int, bound: int) -> Iterator[Configuration]:
    """All configurations of dimension ``n`` with norm at most ``bound``, by norm then lexicographically."""
    for total in range(bound + 1):
        yield from _compositions(n, total)


def _compositions(n: int, total: int) -> Iterator[Configuration]:
    if n == 0:
        if total == 0:
            yield ()
        return
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest
