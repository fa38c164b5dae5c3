"""Semilinear sets in two representations.

``LinearUnion`` is an explicit finite union of linear sets ``{b + sum n_i v_i}``
and supports membership only. ``PredicateSet`` wraps a boolean combination of
threshold atoms (``sum a_i x_i < b``) and mod atoms (``sum a_i x_i == b mod c``);
boolean closure lives on the AST through the ``&``/``|``/``~`` operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence, Union

from .crn import Configuration, DimensionMismatch, check_dim


@dataclass(frozen=True)
class LinearSet:
    base: Configuration
    periods: tuple[Configuration, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.base)
        for v in self.periods:
            if len(v) != n:
                raise DimensionMismatch("period dimension differs from base")
            if any(k < 0 for k in v):
                raise ValueError("periods must be nonnegative")
        if any(k < 0 for k in self.base):
            raise ValueError("base must be nonnegative")

    @property
    def dim(self) -> int:
        return len(self.base)


def linear_member(c: Configuration, L: LinearSet) -> bool:
    """Exact test for ``c = base + sum n_i * period_i`` with ``n_i >= 0``."""
    check_dim(c, L.dim)
    rest = tuple(x - b for x, b in zip(c, L.base))
    if any(x < 0 for x in rest):
        return False
    periods = tuple(v for v in L.periods if any(v))
    return _decompose(rest, periods)


@lru_cache(maxsize=65536)
def _decompose(rest: Configuration, periods: tuple[Configuration, ...]) -> bool:
    if not any(rest):
        return True
    if not periods:
        return False
    v, tail = periods[0], periods[1:]
    top = min(r // k for r, k in zip(rest, v) if k)
    for n in range(top, -1, -1):
        if _decompose(tuple(r - n * k for r, k in zip(rest, v)), tail):
            return True
    return False


# --- predicate AST -------------------------------------------------------

Coeffs = tuple[tuple[str, int], ...]


class Predicate:
    def __and__(self, other: Predicate) -> Predicate:
        return And(self, other)

    def __or__(self, other: Predicate) -> Predicate:
        return Or(self, other)

    def __invert__(self) -> Predicate:
        return Not(self)


def _coeffs(weights: Mapping[str, int] | Sequence[tuple[str, int]]) -> Coeffs:
    items = weights.items() if isinstance(weights, Mapping) else weights
    merged: dict[str, int] = {}
    for name, a in items:
        merged[name] = merged.get(name, 0) + int(a)
    return tuple(merged.items())


@dataclass(frozen=True)
class Threshold(Predicate):
    """``sum a_S * x(S) < bound``."""

    coeffs: Coeffs
    bound: int

    @classmethod
    def of(cls, weights: Mapping[str, int] | Sequence[tuple[str, int]], bound: int) -> Threshold:
        return cls(_coeffs(weights), int(bound))


@dataclass(frozen=True)
class Mod(Predicate):
    """``sum a_S * x(S) == residue (mod modulus)``."""

    coeffs: Coeffs
    residue: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue must lie in [0, modulus)")

    @classmethod
    def of(cls, weights: Mapping[str, int] | Sequence[tuple[str, int]], residue: int, modulus: int) -> Mod:
        return cls(_coeffs(weights), int(residue), int(modulus))


@dataclass(frozen=True)
class Not(Predicate):
    arg: Predicate


@dataclass(frozen=True)
class And(Predicate):
    left: Predicate
    right: Predicate


@dataclass(frozen=True)
class Or(Predicate):
    left: Predicate
    right: Predicate


Atom = Union[Threshold, Mod]


def linear_value(coeffs: Coeffs, x: Mapping[str, int]) -> int:
    return sum(a * x.get(name, 0) for name, a in coeffs)


def eval_pred(pred: Predicate, x: Mapping[str, int]) -> bool:
    if isinstance(pred, Threshold):
        return linear_value(pred.coeffs, x) < pred.bound
    if isinstance(pred, Mod):
        # Python's % already lands in [0, modulus) for negative sums.
        return linear_value(pred.coeffs, x) % pred.modulus == pred.residue
    if isinstance(pred, Not):
        return not eval_pred(pred.arg, x)
    if isinstance(pred, And):
        return eval_pred(pred.left, x) and eval_pred(pred.right, x)
    if isinstance(pred, Or):
        return eval_pred(pred.left, x) or eval_pred(pred.right, x)
    raise TypeError(f"not a predicate: {pred!r}")


def atoms(pred: Predicate) -> list[Atom]:
    """Distinct atoms in left-to-right order of first occurrence."""
    out: list[Atom] = []

    def walk(p: Predicate) -> None:
        if isinstance(p, (Threshold, Mod)):
            if p not in out:
                out.append(p)
        elif isinstance(p, Not):
            walk(p.arg)
        elif isinstance(p, (And, Or)):
            walk(p.left)
            walk(p.right)
        else:
            raise TypeError(f"not a predicate: {p!r}")

    walk(pred)
    return out


def species_of(pred: Predicate) -> list[str]:
    names: list[str] = []
    for atom in atoms(pred):
        for name, _ in atom.coeffs:
            if name not in names:
                names.append(name)
    return names


def eval_with_atoms(pred: Predicate, values: Mapping[Atom, bool]) -> bool:
    """Evaluate the boolean skeleton of ``pred`` given truth values for its atoms."""
    if isinstance(pred, (Threshold, Mod)):
        return values[pred]
    if isinstance(pred, Not):
        return not eval_with_atoms(pred.arg, values)
    if isinstance(pred, And):
        return eval_with_atoms(pred.left, values) and eval_with_atoms(pred.right, values)
    if isinstance(pred, Or):
        return eval_with_atoms(pred.left, values) or eval_with_atoms(pred.right, values)
    raise TypeError(f"not a predicate: {pred!r}")


# --- the two set representations ------------------------------------------


@dataclass(frozen=True)
class LinearUnion:
    parts: tuple[LinearSet, ...]
    dim: int


@dataclass(frozen=True)
class PredicateSet:
    pred: Predicate
    species: tuple[str, ...]


SemilinearSet = Union[LinearUnion, PredicateSet]


def semilinear_member(c: Configuration, S: SemilinearSet) -> bool:
    if isinstance(S, LinearUnion):
        check_dim(c, S.dim)
        return any(linear_member(c, L) for L in S.parts)
    if isinstance(S, PredicateSet):
        check_dim(c, len(S.species))
        return eval_pred(S.pred, dict(zip(S.species, c)))
    raise TypeError(f"not a semilinear set: {S!r}")


def dominance_predicate(basis: Sequence[Configuration], species: Sequence[str]) -> Predicate:
    """Threshold-atom formula for membership in the upward closure of ``basis``."""
    disjuncts: list[Predicate] = []
    for b in basis:
        conj: Predicate | None = None
        for name, k in zip(species, b):
            if k:
                atom = Not(Threshold.of({name: 1}, k))
                conj = atom if conj is None else And(conj, atom)
        disjuncts.append(conj if conj is not None else Not(Threshold.of({}, 0)))
    if not disjuncts:
        return Threshold.of({}, 0)
    out = disjuncts[0]
    for d in disjuncts[1:]:
        out = Or(out, d)
    return out


def rename_pred(pred: Predicate, mapping: Mapping[str, str]) -> Predicate:
    """Substitute variable names; names missing from ``mapping`` are kept."""

    def coeffs(cs: Coeffs) -> Coeffs:
        return _coeffs([(mapping.get(n, n), a) for n, a in cs])

    if isinstance(pred, Threshold):
        return Threshold(coeffs(pred.coeffs), pred.bound)
    if isinstance(pred, Mod):
        return Mod(coeffs(pred.coeffs), pred.residue, pred.modulus)
    if isinstance(pred, Not):
        return Not(rename_pred(pred.arg, mapping))
    if isinstance(pred, (And, Or)):
        return type(pred)(rename_pred(pred.left, mapping), rename_pred(pred.right, mapping))
    raise TypeError(f"not a predicate: {pred!r}")
