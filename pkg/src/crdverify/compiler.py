"""Compile threshold/mod predicates and their boolean combinations into consensus deciders.

All constructions are leader based: a seeded leader (or alternator) molecule
absorbs the inputs, so every compiled decider carries a nonzero seed.

* mod atom ``sum a_j x_j == b (mod c)``: leader ``L_k`` tracks the running
  residue, ``X_j + L_k -> L_{k + a_j mod c}``.
* threshold atom ``sum a_j x_j < b``: inputs turn into plus/minus tokens
  (``P`` for negative weight, ``M`` for positive), the seed holds the constant
  ``b``, and an alternator ``P + N -> Y``, ``M + Y -> N`` cancels them.
* other boolean combinations: one product leader whose state is every mod
  residue plus every threshold alternator bit, voting the formula's value.
  Leftover tokens whose presence alone fixes the formula vote that value;
  others carry a vote bit that the leader keeps overwriting.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .crd import Convention, Crd
from .crn import Crn, Reaction, SpeciesTable
from .semilinear import Atom, Coeffs, Mod, Not, Predicate, Threshold, atoms, eval_with_atoms, species_of


class UnsupportedAtom(TypeError):
    pass


def _weights(weights: Mapping[str, int] | Coeffs) -> dict[str, int]:
    items = weights.items() if isinstance(weights, Mapping) else weights
    out: dict[str, int] = {}
    for n, a in items:
        out[n] = out.get(n, 0) + int(a)
    return out


def _inputs(w: Mapping[str, int], inputs: Sequence[str] | None) -> tuple[str, ...]:
    if inputs is None:
        return tuple(w)
    missing = [n for n in w if n not in inputs]
    if missing:
        raise ValueError(f"predicate mentions non-input species: {', '.join(missing)}")
    return tuple(inputs)


class _Builder:
    def __init__(self, inputs: Iterable[str]):
        self.names: list[str] = list(inputs)
        self.rxns: list[tuple[dict[str, int], dict[str, int]]] = []

    def fresh(self, base: str) -> str:
        name = base
        while name in self.names:
            name += "_"
        self.names.append(name)
        return name

    def rxn(self, r: Mapping[str, int], p: Mapping[str, int]) -> None:
        self.rxns.append(({n: k for n, k in r.items() if k}, {n: k for n, k in p.items() if k}))

    def build(self, inputs: Sequence[str], voters1: set[str], seed: Mapping[str, int]) -> Crd:
        crn = Crn.from_lists(self.names, self.rxns)
        v1 = tuple(n for n in self.names if n in voters1)
        v0 = tuple(n for n in self.names if n not in voters1)
        return Crd(crn, tuple(inputs), Convention.CON, v0, v1, crn.species.config(seed))


def compile_mod(
    weights: Mapping[str, int] | Coeffs, residue: int, modulus: int, inputs: Sequence[str] | None = None
) -> Crd:
    """Decider for ``sum a_j x_j == residue (mod modulus)``."""
    atom = Mod(tuple(_weights(weights).items()), residue, modulus)  # validates modulus and residue
    w = dict(atom.coeffs)
    ins = _inputs(w, inputs)
    b = _Builder(ins)
    leaders = [b.fresh(f"L{k}") for k in range(modulus)]
    for x in ins:
        for k in range(modulus):
            b.rxn({x: 1, leaders[k]: 1}, {leaders[(k + w.get(x, 0)) % modulus]: 1})
    return b.build(ins, {leaders[residue]}, {leaders[0]: 1})


def compile_threshold(
    weights: Mapping[str, int] | Coeffs, bound: int, inputs: Sequence[str] | None = None
) -> Crd:
    """Decider for ``sum a_j x_j < bound``: 1 iff plus tokens strictly outnumber minus tokens."""
    w = _weights(weights)
    ins = _inputs(w, inputs)
    b = _Builder(ins)
    P, M, Y, N = (b.fresh(n) for n in ("P", "M", "Y", "N"))
    yes = {P, Y}
    for x in ins:
        a = w.get(x, 0)
        if a < 0:
            b.rxn({x: 1}, {P: -a})
            yes.add(x)
        elif a > 0:
            b.rxn({x: 1}, {M: a})
        else:
            b.rxn({x: 1, Y: 1}, {Y: 1})
            b.rxn({x: 1, N: 1}, {N: 1})
    b.rxn({P: 1, N: 1}, {Y: 1})
    b.rxn({M: 1, Y: 1}, {N: 1})
    seed = {N: 1, P: max(bound, 0), M: max(-bound, 0)}
    return b.build(ins, yes, seed)


def negate(crd: Crd) -> Crd:
    """Complement a consensus decider by swapping its voter sets."""
    return crd.with_convention(crd.convention, voters0=crd.voters1, voters1=crd.voters0)


def compile_bool(pred: Predicate, inputs: Sequence[str] | None = None) -> Crd:
    """Decider for an arbitrary boolean combination of threshold and mod atoms."""
    try:
        atoms(pred)
    except TypeError as exc:
        raise UnsupportedAtom(str(exc)) from exc
    ins = tuple(inputs) if inputs is not None else tuple(species_of(pred))
    if isinstance(pred, Not):
        return negate(compile_bool(pred.arg, ins))
    if isinstance(pred, Mod):
        return compile_mod(pred.coeffs, pred.residue, pred.modulus, ins)
    if isinstance(pred, Threshold):
        return compile_threshold(pred.coeffs, pred.bound, ins)
    return _compile_product(pred, ins)


def _fixed_vote(pred: Predicate, alist: list[Atom], atom: Atom, value: bool) -> int | None:
    """The formula's value whenever ``atom`` has ``value``, if the other atoms cannot change it."""
    others = [a for a in alist if a != atom]
    seen = set()
    for combo in itertools.product((False, True), repeat=len(others)):
        vals = dict(zip(others, combo))
        vals[atom] = value
        seen.add(eval_with_atoms(pred, vals))
    return int(seen.pop()) if len(seen) == 1 else None


def _compile_product(pred: Predicate, ins: tuple[str, ...]) -> Crd:
    missing = [n for n in species_of(pred) if n not in ins]
    if missing:
        raise ValueError(f"predicate mentions non-input species: {', '.join(missing)}")
    alist = atoms(pred)
    mods = [a for a in alist if isinstance(a, Mod)]
    thrs = [a for a in alist if isinstance(a, Threshold)]
    b = _Builder(ins)

    # tokens: plus/minus per threshold atom, each either with a fixed vote or a pair of vote-bit variants
    tokens: dict[tuple[int, str], dict[int, str]] = {}
    fixed: dict[tuple[int, str], int] = {}
    for t, atom in enumerate(thrs):
        for kind, value in (("P", True), ("M", False)):
            vote = _fixed_vote(pred, alist, atom, value)
            if vote is None:
                tokens[(t, kind)] = {o: b.fresh(f"{kind}{t}v{o}") for o in (0, 1)}
            else:
                name = b.fresh(f"{kind}{t}")
                tokens[(t, kind)] = {0: name, 1: name}
                fixed[(t, kind)] = vote

    States = tuple[tuple[int, ...], tuple[int, ...]]
    states: list[States] = [
        (res, bits)
        for res in itertools.product(*(range(m.modulus) for m in mods))
        for bits in itertools.product((0, 1), repeat=len(thrs))
    ]

    def out(s: States) -> int:
        vals: dict[Atom, bool] = {m: r == m.residue for m, r in zip(mods, s[0])}
        vals.update({t: bool(y) for t, y in zip(thrs, s[1])})
        return int(eval_with_atoms(pred, vals))

    def tag(s: States) -> str:
        return "L" + "".join(f"_{r}" for r in s[0]) + "".join(f"_{'y' if y else 'n'}" for y in s[1])

    leader = {s: b.fresh(tag(s)) for s in states}
    voters1 = {leader[s] for s in states if out(s)}
    for key, pair in tokens.items():
        if fixed.get(key, 1) == 1:
            voters1.add(pair[1])

    mw = [dict(m.coeffs) for m in mods]
    tw = [dict(t.coeffs) for t in thrs]
    for s in states:
        o = out(s)
        for x in ins:
            res = tuple((r + w.get(x, 0)) % m.modulus for r, w, m in zip(s[0], mw, mods))
            s2 = (res, s[1])
            made: dict[str, int] = {leader[s2]: 1}
            for t, w in enumerate(tw):
                a = w.get(x, 0)
                if a:
                    name = tokens[(t, "P" if a < 0 else "M")][out(s2)]
                    made[name] = made.get(name, 0) + abs(a)
            b.rxn({x: 1, leader[s]: 1}, made)
        for t in range(len(thrs)):
            flip = list(s[1])
            flip[t] = 1 - flip[t]
            s2 = (s[0], tuple(flip))
            kind = "M" if s[1][t] else "P"
            for name in set(tokens[(t, kind)].values()):
                b.rxn({name: 1, leader[s]: 1}, {leader[s2]: 1})
        for key, pair in tokens.items():
            if key not in fixed:
                b.rxn({leader[s]: 1, pair[1 - o]: 1}, {leader[s]: 1, pair[o]: 1})

    start: States = ((0,) * len(mods), (0,) * len(thrs))
    seed: dict[str, int] = {leader[start]: 1}
    for t, atom in enumerate(thrs):
        if atom.bound > 0:
            name = tokens[(t, "P")][out(start)]
            seed[name] = seed.get(name, 0) + atom.bound
        elif atom.bound < 0:
            name = tokens[(t, "M")][out(start)]
            seed[name] = seed.get(name, 0) - atom.bound
    return b.build(ins, voters1, seed)
