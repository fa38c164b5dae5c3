"""Convention-changing rewrites of deciders.

Every function returns a new :class:`Crd`; inputs are never mutated. New
species get names checked against the source table (``SpeciesTable.fresh``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable

from .crd import DEFAULT_BOUND, Convention, Crd, Status, VerificationReport, verify_decides
from .crn import Crn, Reaction, SpeciesTable, add
from .explore import DEFAULT_BUDGET
from .semilinear import Predicate, rename_pred


class ConventionError(ValueError):
    """A rewrite was applied to a decider of the wrong convention."""


def _require(crd: Crd, conv: Convention, what: str) -> None:
    if crd.convention is not conv:
        raise ConventionError(f"{what} needs a {conv.value} decider, got {crd.convention.value}")


def _pad(v: tuple[int, ...], extra: int) -> tuple[int, ...]:
    return tuple(v) + (0,) * extra


def _dedupe(rxns: list[Reaction]) -> tuple[Reaction, ...]:
    return tuple(dict.fromkeys(rxns))


def eliminate_empty_products(crd: Crd) -> Crd:
    """Route every ``r -> 0`` into a fresh garbage voter that any molecule can clean up."""
    _require(crd, Convention.CON, "eliminate_empty_products")
    sp = crd.species
    d0 = sp.fresh("D0")
    d1 = sp.fresh("D1", taken=[d0])
    table = sp.extend([d0, d1])
    g1 = set(crd.voters1)
    rxns: list[Reaction] = []
    for a in crd.crn.reactions:
        r, p = _pad(a.reactants, 2), _pad(a.products, 2)
        if any(p):
            rxns.append(Reaction(r, p))
            continue
        if not any(r):
            continue  # 0 -> 0 does nothing
        present = {n for n, k in zip(sp.names, a.reactants) if k}
        # mixed reactants: either garbage voter works; take D0
        target = d1 if present <= g1 else d0
        rxns.append(Reaction(r, table.unit(target)))
    for name in table.names:
        for d in (d0, d1):
            rxns.append(Reaction(add(table.unit(name), table.unit(d)), table.unit(name)))
    return Crd(
        Crn(table, _dedupe(rxns)),
        crd.inputs,
        Convention.CON,
        crd.voters0 + (d0,),
        crd.voters1 + (d1,),
        _pad(crd.seed, 2),
    )


def con_to_exi(crd: Crd) -> Crd:
    """Read the same network existentially: 1-voters kept, 0-voters dropped."""
    _require(crd, Convention.CON, "con_to_exi")
    return crd.with_convention(Convention.EXI, voters0=())


def con_to_dem(crd: Crd) -> Crd:
    """Read the same network by strict majority of the existing voters."""
    _require(crd, Convention.CON, "con_to_dem")
    return crd.with_convention(Convention.DEM)


def del_to_con(crd: Crd) -> Crd:
    """Give every nonvoter a vote bit that voters keep overwriting with their own opinion.

    Each nonvoter ``S`` becomes ``S_0`` / ``S_1``. Reactant sides range over all
    bit assignments. Split products carry the reactants' vote when that vote is
    unanimous and bit 1 otherwise. ``V + S_{1-i} -> V + S_i`` for each
    ``i``-voter ``V`` realigns bits.
    """
    _require(crd, Convention.DEL, "del_to_con")
    sp = crd.species
    voters = set(crd.voters0) | set(crd.voters1)
    delta = [n for n in sp.names if n not in voters]
    names: list[str] = []
    split: dict[str, tuple[str, str]] = {}
    taken: list[str] = []
    for n in sp.names:
        if n in voters:
            names.append(n)
            continue
        s0 = sp.fresh(f"{n}_0", taken)
        s1 = sp.fresh(f"{n}_1", taken + [s0])
        taken += [s0, s1]
        split[n] = (s0, s1)
        names += [s0, s1]
    table = SpeciesTable(tuple(names))

    def lift(counts: dict[str, int], bits: dict[str, int]) -> tuple[int, ...]:
        out: dict[str, int] = {}
        for n, k in counts.items():
            if n in split:
                zeros = bits.get(n, 0)
                s0, s1 = split[n]
                if zeros:
                    out[s0] = zeros
                if k - zeros:
                    out[s1] = k - zeros
            else:
                out[n] = k
        return table.config(out)

    g0 = set(crd.voters0)
    rxns: list[Reaction] = []
    for a in crd.crn.reactions:
        r = sp.as_dict(a.reactants)
        p = sp.as_dict(a.products)
        r_delta = [n for n in r if n in split]
        # how many copies of each split reactant carry bit 0
        for zeros in itertools.product(*(range(r[n] + 1) for n in r_delta)):
            bits = dict(zip(r_delta, zeros))
            votes = set()
            for n, k in r.items():
                if n in split:
                    if bits[n]:
                        votes.add(0)
                    if k - bits[n]:
                        votes.add(1)
                else:
                    votes.add(0 if n in g0 else 1)
            # products follow a unanimous reactant vote so output-stable regions stay closed
            out_bit = votes.pop() if len(votes) == 1 else 1
            p_bits = {n: k for n, k in p.items()} if out_bit == 0 else {}
            rxns.append(Reaction(lift(r, bits), lift(p, p_bits)))
    for n in delta:
        for i, group in ((0, crd.voters0), (1, crd.voters1)):
            for v in group:
                rxns.append(
                    Reaction(
                        table.config({v: 1, split[n][1 - i]: 1}),
                        table.config({v: 1, split[n][i]: 1}),
                    )
                )
    inputs = tuple(split[n][1] if n in split else n for n in crd.inputs)
    voters0 = tuple(crd.voters0) + tuple(split[n][0] for n in delta)
    voters1 = tuple(crd.voters1) + tuple(split[n][1] for n in delta)
    return Crd(Crn(table, _dedupe(rxns)), inputs, Convention.CON, voters0, voters1, lift(sp.as_dict(crd.seed), {}))


def con_to_two_voter_del(crd: Crd) -> Crd:
    """Every species keeps emitting a fresh voter for its side and destroys the other side's."""
    _require(crd, Convention.CON, "con_to_two_voter_del")
    sp = crd.species
    v0 = sp.fresh("V0")
    v1 = sp.fresh("V1", taken=[v0])
    table = sp.extend([v0, v1])
    rxns = [Reaction(_pad(a.reactants, 2), _pad(a.products, 2)) for a in crd.crn.reactions]
    own = {0: v0, 1: v1}
    g1 = set(crd.voters1)
    for n in sp.names:
        i = 1 if n in g1 else 0
        rxns.append(Reaction(table.config({n: 1}), table.config({n: 1, own[i]: 1})))
        rxns.append(Reaction(table.config({n: 1, own[1 - i]: 1}), table.config({n: 1})))
    return Crd(Crn(table, tuple(rxns)), crd.inputs, Convention.DEL, (v0,), (v1,), _pad(crd.seed, 2))


TRANSFORMS: dict[str, Callable[[Crd], Crd]] = {
    "eliminate-empty-products": eliminate_empty_products,
    "con-to-exi": con_to_exi,
    "con-to-dem": con_to_dem,
    "del-to-con": del_to_con,
    "con-to-two-voter-del": con_to_two_voter_del,
}

def resolve(name: str) -> Callable[[Crd], Crd]:
    key = name.replace("_", "-")
    if key not in TRANSFORMS:
        raise KeyError(f"unknown transformation {name!r}; choose from {', '.join(TRANSFORMS)}")
    return TRANSFORMS[key]


@dataclass
class ReverifyReport:
    transform: str
    target: Crd
    source_report: VerificationReport
    target_report: VerificationReport

    @property
    def status(self) -> Status:
        both = (self.source_report.status, self.target_report.status)
        if Status.FAIL in both:
            return Status.FAIL
        if Status.UNKNOWN in both:
            return Status.UNKNOWN
        return Status.PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "transform": self.transform,
            "status": self.status.value,
            "source": self.source_report.to_dict(),
            "target": self.target_report.to_dict(),
        }


def apply_and_reverify(
    name: str, crd: Crd, pred: Predicate, bound: int = DEFAULT_BOUND, budget: int = DEFAULT_BUDGET
) -> ReverifyReport:
    target = resolve(name)(crd)
    # some rewrites rename input species; they keep their order
    lifted = rename_pred(pred, dict(zip(crd.inputs, target.inputs)))
    return ReverifyReport(
        name.replace("_", "-"),
        target,
        verify_decides(crd, pred, bound, budget),
        verify_decides(target, lifted, bound, budget),
    )
