"""Chemical reaction deciders under the con/exi/dem/del output conventions.

Membership in an output-stable set ``O_i`` is answered three-valued. Exact
answers come from backward coverability paired with persistence certificates,
or from a saturated exploration graph. Anything else falls back to budgeted
forward search, which may report Unknown but never a wrong definite answer.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from typing import Any, Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .cover import UpwardClosedSet, cover_path, pre_star_basis, units
from .crn import (
    Configuration,
    Crn,
    Homomorphism,
    Reaction,
    SpeciesTable,
    add,
    check_dim,
    configs_up_to,
    eval_hom,
)
from .explore import DEFAULT_BUDGET, Answer, Exploration, Verdict, forall_reachable
from .semilinear import Predicate, eval_pred

DEFAULT_BOUND = 8


class Convention(enum.Enum):
    CON = "con"
    EXI = "exi"
    DEM = "dem"
    DEL = "del"


class InvalidInput(ValueError):
    pass


class ConfigMismatch(ValueError):
    pass


class VoterError(ValueError):
    """Voter sets violate the convention's requirements."""


@dataclass(frozen=True)
class Crd:
    crn: Crn
    inputs: tuple[str, ...]
    convention: Convention
    voters0: tuple[str, ...] = ()
    voters1: tuple[str, ...] = ()
    seed: Configuration | None = None

    def __post_init__(self) -> None:
        sp = self.crn.species
        for group in (self.inputs, self.voters0, self.voters1):
            for name in group:
                if name not in sp:
                    raise ValueError(f"undeclared species {name!r}")
        if self.seed is None:
            object.__setattr__(self, "seed", (0,) * len(sp))
        check_dim(self.seed, len(sp))
        if any(k < 0 for k in self.seed):
            raise ValueError("seed counts must be nonnegative")
        g0, g1 = set(self.voters0), set(self.voters1)
        if g0 & g1:
            raise VoterError(f"species vote both ways: {', '.join(sorted(g0 & g1))}")
        if self.convention in (Convention.CON, Convention.DEM):
            missing = [n for n in sp if n not in g0 | g1]
            if missing:
                raise VoterError(
                    f"{self.convention.value} voters must partition the species; unassigned: {', '.join(missing)}"
                )
        if self.convention is Convention.EXI and g0:
            raise VoterError("exi deciders have no 0-voters")

    @property
    def species(self) -> SpeciesTable:
        return self.crn.species

    def voters(self, i: int) -> tuple[str, ...]:
        return self.voters1 if i else self.voters0

    @cached_property
    def _voter_idx(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        idx = self.species.index
        return tuple(idx[n] for n in self.voters0), tuple(idx[n] for n in self.voters1)

    def input_vector(self, x: Mapping[str, int] | Sequence[int]) -> dict[str, int]:
        if isinstance(x, Mapping):
            bad = [n for n in x if n not in self.inputs]
            if bad:
                raise InvalidInput(f"not input species: {', '.join(bad)}")
            out = {n: int(x.get(n, 0)) for n in self.inputs}
        else:
            if len(x) != len(self.inputs):
                raise InvalidInput(f"expected {len(self.inputs)} input counts, got {len(x)}")
            out = dict(zip(self.inputs, (int(k) for k in x)))
        if any(k < 0 for k in out.values()):
            raise InvalidInput("input counts must be nonnegative")
        return out

    def embed(self, x: Mapping[str, int] | Sequence[int]) -> Configuration:
        """Initial configuration: input counts padded with zeros, plus the seed."""
        return add(self.species.config(self.input_vector(x)), self.seed)

    def with_convention(
        self,
        convention: Convention,
        voters0: Iterable[str] | None = None,
        voters1: Iterable[str] | None = None,
    ) -> Crd:
        return replace(
            self,
            convention=convention,
            voters0=tuple(self.voters0 if voters0 is None else voters0),
            voters1=tuple(self.voters1 if voters1 is None else voters1),
        )


# --- regions ----------------------------------------------------------------


def _counts(c: Configuration, crd: Crd) -> tuple[int, int]:
    g0, g1 = crd._voter_idx
    return sum(c[j] for j in g0), sum(c[j] for j in g1)


def region_member(c: Configuration, crd: Crd, i: int) -> bool:
    """Is ``c`` in the convention's voting region for output ``i``?

    con/del: unanimous presence ``L_i minus L_{1-i}``; exi: ``V_i``; dem: strict majority ``M_i``.
    """
    check_dim(c, crd.crn.dim)
    s = _counts(c, crd)
    conv = crd.convention
    if conv in (Convention.CON, Convention.DEL):
        return s[i] > 0 and s[1 - i] == 0
    if conv is Convention.EXI:
        return s[1] > 0 if i else s[1] == 0
    return s[i] > s[1 - i]


def _opposing(crd: Crd, i: int) -> tuple[str, ...]:
    """Species whose appearance rules out region ``i`` (empty when that is not how the region works)."""
    if crd.convention is Convention.EXI:
        return crd.voters1 if i == 0 else ()
    return crd.voters(1 - i)


# --- cached per-decider analysis ----------------------------------------------


class _Analysis:
    def __init__(self, crd: Crd):
        self.crd = crd
        self.crn = crd.crn
        self._unit_basis: dict[str, UpwardClosedSet] = {}
        self._opp: dict[int, UpwardClosedSet] = {}
        self._cert: dict[tuple[int, frozenset[str], str, int], Homomorphism | None] = {}
        self._abstract: tuple[Crn, tuple[int, ...]] | None = None

    def opp_basis(self, i: int) -> UpwardClosedSet:
        """pre*(↑ opposing voters of region i)."""
        if i not in self._opp:
            self._opp[i] = pre_star_basis(units(self.crn, _opposing(self.crd, i)), self.crn)
        return self._opp[i]

    def unit_basis(self, name: str) -> UpwardClosedSet:
        if name not in self._unit_basis:
            self._unit_basis[name] = pre_star_basis(units(self.crn, [name]), self.crn)
        return self._unit_basis[name]

    def noncoverable(self, c: Configuration) -> frozenset[str]:
        return frozenset(n for n in self.crn.species if c not in self.unit_basis(n))

    def certificate(
        self, i: int, excluded: frozenset[str], at: Configuration | None, bound: int = 2
    ) -> Homomorphism | None:
        witnesses = _witness_species(self.crd, i)
        idx = self.crn.species.index
        if at is not None:
            witnesses = tuple(n for n in witnesses if at[idx[n]] > 0)
        for name in witnesses:
            key = (i, excluded, name, bound)
            if key not in self._cert:
                self._cert[key] = _solve_certificate(self.crd, i, excluded, name, bound)
            if self._cert[key] is not None:
                return self._cert[key]
        return None

    def quick(self, c: Configuration, i: int) -> Verdict | None:
        """Exact verdict for ``c in O_i`` when a cheap argument applies, else None."""
        crd, conv = self.crd, self.crd.convention
        if (conv is Convention.CON and not self.crn.has_empty_product_reaction) or (
            conv is Convention.EXI and i == 0
        ):
            if conv is Convention.CON and not any(c):
                return Verdict.no((), "zero configuration")
            if c in self.opp_basis(i):
                return Verdict.no(cover_path(c, units(self.crn, _opposing(crd, i)), self.crn), "opposing voter coverable")
            return Verdict.yes(reason="opposing voters not coverable")
        if not region_member(c, crd, i):
            return Verdict.no((), "outside voting region")
        if conv in (Convention.CON, Convention.DEL) and c in self.opp_basis(i):
            return Verdict.no(cover_path(c, units(self.crn, _opposing(crd, i)), self.crn), "opposing voter coverable")
        if conv is Convention.EXI and i == 0:
            return None
        excluded = self.noncoverable(c)
        if set(_opposing(crd, i)) <= excluded and self.certificate(i, excluded, c) is not None:
            return Verdict.yes(reason="persistence certificate")
        return None

    def pumped(self) -> tuple[int, ...]:
        """Species some reaction strictly increases without consuming anything net."""
        out = set()
        for a in self.crn.reactions:
            if all(d >= 0 for d in a.delta):
                out.update(j for j, d in enumerate(a.delta) if d > 0)
        return tuple(sorted(out))

    def abstraction(self) -> tuple[Crn, tuple[int, ...]]:
        """CRN over the non-pumped species, treating pumped ones as unlimited."""
        if self._abstract is None:
            drop = set(self.pumped())
            keep = tuple(j for j in range(self.crn.dim) if j not in drop)
            table = SpeciesTable(tuple(self.crn.species.names[j] for j in keep))
            rxns: list[Reaction] = []
            for a in self.crn.reactions:
                r = tuple(a.reactants[j] for j in keep)
                p = tuple(a.products[j] for j in keep)
                if r != p:
                    rx = Reaction(r, p)
                    if rx not in rxns:
                        rxns.append(rx)
            self._abstract = (Crn(table, tuple(rxns)), keep)
        return self._abstract

    def cannot_reach(self, c: Configuration, j: int, budget: int, cheap: bool = False) -> str | None:
        """A reason why no configuration of ``O_j`` is reachable from ``c``, or None."""
        crd, conv = self.crd, self.crd.convention
        if not (conv is Convention.EXI and j == 0):
            needed = crd.voters(j)
            if needed and all(c not in self.unit_basis(n) for n in needed):
                return "required voters never present"
            if not needed:
                return "no voters for this output"
        if conv in (Convention.CON, Convention.DEL) or (conv is Convention.EXI and j == 0):
            # side whose guaranteed presence excludes O_j
            presence = 1 if conv is Convention.EXI else 1 - j
            excluded = self.noncoverable(c)
            if self.certificate(presence, excluded, c) is not None:
                return "opposing voters persist"
            if cheap:
                return None
            acrn, keep = self.abstraction()
            basis = self.opp_basis(j)
            ex = Exploration(tuple(c[k] for k in keep), acrn, budget)
            dim = self.crn.dim
            for d in ex:
                full = [0] * dim
                for k, v in zip(keep, d):
                    full[k] = v
                if tuple(full) not in basis:
                    return None
            if ex.saturated:
                return "every reachable configuration can still reach an opposing voter"
        return None


@lru_cache(maxsize=128)
def _analysis(crd: Crd) -> _Analysis:
    return _Analysis(crd)


def _witness_species(crd: Crd, i: int) -> tuple[str, ...]:
    if crd.convention is Convention.EXI:
        return crd.voters1 if i == 1 else ()
    return crd.voters(i)


def _active_reactions(crd: Crd, excluded: Iterable[str]) -> list[Reaction]:
    idx = crd.species.index
    ex = [idx[n] for n in excluded]
    return [a for a in crd.crn.reactions if all(a.reactants[j] == 0 for j in ex)]


def _solve_certificate(crd: Crd, i: int, excluded: frozenset[str], target: str, bound: int) -> Homomorphism | None:
    """Integer weights in [0, bound] on region-i witnesses, positive on ``target``,
    that no active reaction decreases."""
    idx = crd.species.index
    wit = [n for n in _witness_species(crd, i)]
    cols = [idx[n] for n in wit]
    rows = []
    for a in _active_reactions(crd, excluded):
        row = [a.delta[j] for j in cols]
        if any(v < 0 for v in row):
            rows.append(row)
    k = len(cols)
    lo = np.zeros(k)
    lo[wit.index(target)] = 1
    if not rows:
        weights = [0] * crd.crn.dim
        weights[idx[target]] = 1
        return Homomorphism(tuple(weights))
    res = milp(
        c=np.ones(k),
        constraints=LinearConstraint(np.array(rows, dtype=float), lb=0, ub=np.inf),
        integrality=np.ones(k),
        bounds=Bounds(lo, np.full(k, bound)),
    )
    if not res.success:
        return None
    weights = [0] * crd.crn.dim
    for n, v in zip(wit, res.x):
        weights[idx[n]] = int(round(v))
    return Homomorphism(tuple(weights))


def persistence_certificate(
    crd: Crd,
    i: int,
    excluded: Iterable[str] = (),
    bound: int = 2,
    at: Configuration | None = None,
) -> Homomorphism | None:
    """Nonnegative weights on region-i witness species that no reaction can decrease.

    Reactions consuming an ``excluded`` species are ignored (they can never fire
    once those species are known to be unreachable). With ``at`` given, the
    certificate must also be positive at that configuration.
    """
    return _analysis(crd).certificate(i, frozenset(excluded), at, bound)


def in_output(c: Configuration, crd: Crd, i: int, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Three-valued membership of ``c`` in the output-stable set ``O_i``."""
    check_dim(c, crd.crn.dim)
    q = _analysis(crd).quick(c, i)
    if q is not None:
        return q
    return forall_reachable(c, crd.crn, lambda d: region_member(d, crd, i), budget)


# --- classification ------------------------------------------------------------


class Classification(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    PARTITION_VIOLATION = "partition-violation"
    UNKNOWN = "unknown"


@dataclass
class ClassifyReport:
    input: dict[str, int]
    reaches: tuple[Verdict, Verdict]
    classification: Classification

    @property
    def reaches_O0(self) -> Verdict:
        return self.reaches[0]

    @property
    def reaches_O1(self) -> Verdict:
        return self.reaches[1]

    @property
    def output(self) -> int | None:
        return {Classification.ZERO: 0, Classification.ONE: 1}.get(self.classification)


def _classify(a0: Verdict, a1: Verdict) -> Classification:
    if a0.is_yes and a1.is_yes:
        return Classification.PARTITION_VIOLATION
    if a0.is_no and a1.is_no:
        return Classification.PARTITION_VIOLATION
    if a0.is_yes and a1.is_no:
        return Classification.ZERO
    if a1.is_yes and a0.is_no:
        return Classification.ONE
    return Classification.UNKNOWN


def reaches_output(
    c: Configuration, crd: Crd, budget: int = DEFAULT_BUDGET, ana: _Analysis | None = None
) -> tuple[Verdict, Verdict, Exploration]:
    """Can ``c`` reach ``O_0`` / ``O_1``? Yes carries a path to a witness configuration."""
    ana = ana or _analysis(crd)
    found: dict[int, Verdict] = {}
    proved = bool(ana.pumped())
    if proved:
        for j in (0, 1):
            why = ana.cannot_reach(c, j, budget)
            if why:
                found[j] = Verdict.no(reason=why)
    ex = Exploration(c, crd.crn, budget)
    if len(found) < 2:
        for d in ex:
            for i in (0, 1):
                if i in found:
                    continue
                q = ana.quick(d, i)
                if q is not None and q.is_yes:
                    found[i] = Verdict.yes(ex.path(d), q.reason)
            if len(found) == 2:
                break
    for i in (0, 1):
        if i in found:
            continue
        if ex.saturated:
            flags = ex.always(lambda d: region_member(d, crd, i))
            hit = next((v for v, f in enumerate(flags) if f), None)
            found[i] = Verdict.yes(ex.path(hit), "exhaustive") if hit is not None else Verdict.no(reason="exhaustive")
        else:
            why = None if proved else ana.cannot_reach(c, i, budget)
            found[i] = Verdict.no(reason=why) if why else Verdict.unknown()
    return found[0], found[1], ex


def classify_input(crd: Crd, x: Mapping[str, int] | Sequence[int], budget: int = DEFAULT_BUDGET) -> ClassifyReport:
    vec = crd.input_vector(x)
    if not any(vec.values()):
        raise InvalidInput("the zero input is excluded")
    a0, a1, _ = reaches_output(crd.embed(vec), crd, budget)
    return ClassifyReport(vec, (a0, a1), _classify(a0, a1))


def input_vectors(crd: Crd, bound: int) -> list[dict[str, int]]:
    """All nonzero inputs over the input species with total count at most ``bound``."""
    out = []
    for v in configs_up_to(len(crd.inputs), bound):
        if any(v):
            out.append(dict(zip(crd.inputs, v)))
    return out


# --- reports -------------------------------------------------------------------


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


def _status(failures: int, unknowns: int) -> Status:
    if failures:
        return Status.FAIL
    return Status.UNKNOWN if unknowns else Status.PASS


def verdict_dict(v: Verdict, crn: Crn | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {"answer": v.answer.value, "reason": v.reason}
    if v.witness is not None:
        out["witness"] = list(v.witness)
        if crn is not None:
            out["witness_reactions"] = [crn.format_reaction(k) for k in v.witness]
    return out


@dataclass
class VerificationEntry:
    report: ClassifyReport
    expected: bool
    verdict: str  # agree | disagree | violation | unknown


@dataclass
class VerificationReport:
    entries: list[VerificationEntry]
    bound: int
    budget: int
    seeded: bool
    crn: Crn = field(repr=False)

    def _select(self, kind: str) -> list[VerificationEntry]:
        return [e for e in self.entries if e.verdict == kind]

    @property
    def agreements(self) -> list[VerificationEntry]:
        return self._select("agree")

    @property
    def disagreements(self) -> list[VerificationEntry]:
        return self._select("disagree")

    @property
    def violations(self) -> list[VerificationEntry]:
        return self._select("violation")

    @property
    def unknowns(self) -> list[VerificationEntry]:
        return self._select("unknown")

    @property
    def status(self) -> Status:
        return _status(len(self.disagreements) + len(self.violations), len(self.unknowns))

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "bound": self.bound,
            "budget": self.budget,
            "seeded": self.seeded,
            "counts": {
                "inputs": len(self.entries),
                "agree": len(self.agreements),
                "disagree": len(self.disagreements),
                "violation": len(self.violations),
                "unknown": len(self.unknowns),
            },
            "inputs": [
                {
                    "input": e.report.input,
                    "expected": int(e.expected),
                    "classification": e.report.classification.value,
                    "result": e.verdict,
                    "verdicts": {
                        "O0": verdict_dict(e.report.reaches[0], self.crn),
                        "O1": verdict_dict(e.report.reaches[1], self.crn),
                    },
                    "witnesses": {
                        f"O{i}": list(v.witness)
                        for i, v in enumerate(e.report.reaches)
                        if v.is_yes and v.witness is not None
                    },
                }
                for e in self.entries
            ],
        }


def verify_decides(
    crd: Crd, pred: Predicate, bound: int = DEFAULT_BOUND, budget: int = DEFAULT_BUDGET
) -> VerificationReport:
    """Classify every nonzero input up to ``bound`` and compare with ``pred``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    entries = []
    for x in input_vectors(crd, bound):
        rep = classify_input(crd, x, budget)
        expected = eval_pred(pred, x)
        if rep.classification is Classification.PARTITION_VIOLATION:
            kind = "violation"
        elif rep.classification is Classification.UNKNOWN:
            kind = "unknown"
        else:
            kind = "agree" if rep.output == int(expected) else "disagree"
        entries.append(VerificationEntry(rep, expected, kind))
    return VerificationReport(entries, bound, budget, any(crd.seed), crd.crn)


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    unknown: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)

    @property
    def status(self) -> Status:
        return _status(len(self.violations), self.unknown)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.name,
            "status": self.status.value,
            "checked": self.checked,
            "unknown": self.unknown,
            "violations": self.violations,
        }


def check_stability_closure(crd: Crd, bound: int = 6, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """O_0 and O_1 are disjoint and closed under single reaction steps."""
    rep = CheckReport("stability-closure")
    sp = crd.species
    for c in configs_up_to(crd.crn.dim, bound):
        rep.checked += 1
        v = (in_output(c, crd, 0, budget), in_output(c, crd, 1, budget))
        if not (v[0].definite and v[1].definite):
            rep.unknown += 1
        if v[0].is_yes and v[1].is_yes:
            rep.violations.append({"config": sp.as_dict(c), "kind": "in both O0 and O1"})
        for i in (0, 1):
            if not v[i].is_yes:
                continue
            for ridx, d in crd.crn.successors(c):
                w = in_output(d, crd, i, budget)
                if w.is_no:
                    rep.violations.append(
                        {
                            "config": sp.as_dict(c),
                            "kind": f"O{i} not closed",
                            "reaction": crd.crn.format_reaction(ridx),
                            "successor": sp.as_dict(d),
                        }
                    )
                elif not w.definite:
                    rep.unknown += 1
    return rep


def check_stronger_condition(crd: Crd, bound: int = 6, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Every configuration reachable from an input of class i can still reach O_i."""
    rep = CheckReport("stronger-condition")
    ana = _analysis(crd)
    for x in input_vectors(crd, bound):
        rep.checked += 1
        c0 = crd.embed(x)
        a0, a1, _ = reaches_output(c0, crd, budget, ana)
        cls = _classify(a0, a1)
        if cls not in (Classification.ZERO, Classification.ONE):
            rep.unknown += 1
            continue
        i = 0 if cls is Classification.ZERO else 1
        ex = Exploration(c0, crd.crn, budget).run()
        bad = None
        if ex.saturated:
            in_o = ex.always(lambda d: region_member(d, crd, i))
            reach = ex.can_reach(in_o)
            idx = next((v for v, ok in enumerate(reach) if not ok), None)
            bad = ex.nodes[idx] if idx is not None else None
        else:
            bad = next((d for d in ex.nodes if ana.cannot_reach(d, i, budget, cheap=True)), None)
        if bad is not None:
            path = ex.path(bad)
            rep.violations.append(
                {
                    "input": x,
                    "class": i,
                    "stuck_at": crd.species.as_dict(bad),
                    "witness": list(path),
                    "witness_reactions": [crd.crn.format_reaction(k) for k in path],
                }
            )
        elif not ex.saturated:
            rep.unknown += 1
    return rep


def check_blowup_property(crd_a: Crd, crd_b: Crd, bound: int = DEFAULT_BOUND, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Enlarging output sets (A -> B) keeps the decided set when B's outputs avoid A's opposite side."""
    if crd_a.crn != crd_b.crn or crd_a.inputs != crd_b.inputs or crd_a.seed != crd_b.seed:
        raise ConfigMismatch("deciders must share CRN, input species and seed")
    rep = CheckReport("blowup")
    sp = crd_a.species
    for x in input_vectors(crd_a, bound):
        rep.checked += 1
        ex = Exploration(crd_a.embed(x), crd_a.crn, budget).run()
        if not ex.saturated:
            rep.unknown += 1
            continue
        oa = [ex.always(lambda d, i=i: region_member(d, crd_a, i)) for i in (0, 1)]
        ob = [ex.always(lambda d, i=i: region_member(d, crd_b, i)) for i in (0, 1)]
        reach_a = [ex.can_reach(oa[i]) for i in (0, 1)]
        reach_b = [ex.can_reach(ob[i]) for i in (0, 1)]
        for n, c in enumerate(ex.nodes):
            for i in (0, 1):
                if oa[i][n] and not ob[i][n]:
                    rep.violations.append({"input": x, "config": sp.as_dict(c), "kind": f"O{i}(A) not inside O{i}(B)"})
                if ob[i][n] and reach_a[1 - i][n]:
                    rep.violations.append(
                        {"input": x, "config": sp.as_dict(c), "kind": f"O{i}(B) reaches O{1 - i}(A)"}
                    )
        cls_a = _classify(*(Verdict.yes() if reach_a[i][0] else Verdict.no() for i in (0, 1)))
        cls_b = _classify(*(Verdict.yes() if reach_b[i][0] else Verdict.no() for i in (0, 1)))
        if cls_a != cls_b:
            rep.violations.append({"input": x, "kind": "classification differs", "a": cls_a.value, "b": cls_b.value})
    return rep


def nondec_objectives(crd: Crd) -> list[tuple[int, Homomorphism]]:
    """(output index, homomorphism) pairs used to carve semilinear subsets of O_i."""
    sp = crd.species
    if crd.convention is Convention.EXI:
        return [(1, Homomorphism.indicator(sp, crd.voters1))]
    if crd.convention is Convention.DEM:
        return [(i, Homomorphism.difference(sp, crd.voters(i), crd.voters(1 - i))) for i in (0, 1)]
    raise ValueError("nondec check applies to exi and dem deciders")


def check_nondec_identities(crd: Crd, bound: int = 6, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """O ∩ W = V ∩ W pointwise, and reaching O is equivalent to reaching O ∩ W."""
    rep = CheckReport("nondec")
    sp = crd.species
    objectives = nondec_objectives(crd)
    for c in configs_up_to(crd.crn.dim, bound):
        rep.checked += 1
        ex = Exploration(c, crd.crn, budget).run()
        if not ex.saturated:
            rep.unknown += 1
            continue
        for i, f in objectives:
            in_o = ex.always(lambda d: region_member(d, crd, i))
            fv = [eval_hom(f, d) for d in ex.nodes]
            low = ex.min_reachable(fv)
            in_w = [lo >= v for lo, v in zip(low, fv)]
            if in_w[0] and in_o[0] != (fv[0] > 0):
                rep.violations.append({"config": sp.as_dict(c), "output": i, "kind": "O∩W differs from V∩W"})
            reach_o = any(in_o)
            reach_ow = any(o and w for o, w in zip(in_o, in_w))
            if reach_o != reach_ow:
                rep.violations.append({"config": sp.as_dict(c), "output": i, "kind": "reach O differs from reach O∩W"})
    return rep


def exhaustive_certificate(crd: Crd, i: int, excluded: Iterable[str] = (), bound: int = 2) -> list[Homomorphism]:
    """Every nonzero certificate with entries up to ``bound`` (brute force; small inputs only)."""
    idx = crd.species.index
    wit = list(_witness_species(crd, i))
    active = _active_reactions(crd, excluded)
    found = []
    for combo in itertools.product(range(bound + 1), repeat=len(wit)):
        if not any(combo):
            continue
        w = [0] * crd.crn.dim
        for n, u in zip(wit, combo):
            w[idx[n]] = u
        if all(sum(wj * dj for wj, dj in zip(w, a.delta)) >= 0 for a in active):
            found.append(Homomorphism(tuple(w)))
    return found
