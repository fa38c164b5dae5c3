from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crdverify.crn import DimensionMismatch
from crdverify.semilinear import (
    And,
    LinearSet,
    LinearUnion,
    Mod,
    Not,
    Or,
    PredicateSet,
    Threshold,
    atoms,
    eval_pred,
    eval_with_atoms,
    linear_member,
    rename_pred,
    semilinear_member,
    species_of,
)

DIAG = LinearSet((1, 0), ((1, 1),))


class TestLinearMember:
    def test_reachable_by_two_periods(self):
        assert linear_member((3, 2), DIAG)

    def test_off_lattice(self):
        assert not linear_member((2, 2), DIAG)

    def test_no_periods(self):
        L = LinearSet((2, 1))
        assert linear_member((2, 1), L)
        assert not linear_member((2, 2), L)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            linear_member((1, 2, 3), DIAG)

    def test_invalid_sets(self):
        with pytest.raises(ValueError):
            LinearSet((0, 0), ((1, -1),))
        with pytest.raises(DimensionMismatch):
            LinearSet((0, 0), ((1,),))


class TestEvalPred:
    def test_mod_difference(self):
        p = Mod.of({"X": 1, "Y": -1}, 0, 3)
        x = {"X": 4, "Y": 1}
        assert eval_pred(p, x)
        assert not eval_pred(Not(p), x)

    def test_threshold_majority(self):
        assert eval_pred(Threshold.of({"X1": -1, "X2": 1}, 0), {"X1": 2, "X2": 1})

    def test_negative_sum_normalised(self):
        # -7 mod 3 is 2
        assert eval_pred(Mod.of({"X": -1}, 2, 3), {"X": 7})

    def test_empty_threshold_is_constant(self):
        assert eval_pred(Threshold.of({}, 1), {})
        assert not eval_pred(Threshold.of({}, 0), {"X": 3})

    def test_operators(self):
        p = Threshold.of({"X": 1}, 3)
        q = Mod.of({"X": 1}, 0, 2)
        assert (p & q) == And(p, q)
        assert (p | q) == Or(p, q)
        assert ~p == Not(p)

    def test_modulus_validation(self):
        with pytest.raises(ValueError):
            Mod.of({"X": 1}, 0, 1)
        with pytest.raises(ValueError):
            Mod.of({"X": 1}, 3, 3)


class TestSemilinearMember:
    def test_upward_union(self):
        S = LinearUnion((LinearSet((1, 0), ((1, 0), (0, 1))),), 2)
        assert not semilinear_member((0, 5), S)
        assert semilinear_member((1, 5), S)

    def test_empty_union(self):
        S = LinearUnion((), 2)
        assert not any(semilinear_member((a, b), S) for a in range(4) for b in range(4))

    def test_pred_form(self):
        S = PredicateSet(Not(Mod.of({"X": 1, "Y": -1}, 0, 2)), ("X", "Y"))
        assert semilinear_member((1, 2), S)

    def test_pred_dimension(self):
        S = PredicateSet(Threshold.of({"X": 1}, 1), ("X",))
        with pytest.raises(DimensionMismatch):
            semilinear_member((1, 2), S)


def test_atoms_and_species_order():
    a = Threshold.of({"B": 1}, 2)
    b = Mod.of({"A": 1, "B": 2}, 1, 3)
    p = Or(And(a, Not(b)), a)
    assert atoms(p) == [a, b]
    assert species_of(p) == ["B", "A"]


def test_rename_keeps_structure():
    p = And(Threshold.of({"X": 2}, 1), Not(Mod.of({"X": 1, "Y": 1}, 0, 2)))
    q = rename_pred(p, {"X": "X_1"})
    assert species_of(q) == ["X_1", "Y"]
    for x, y in itertools.product(range(4), repeat=2):
        assert eval_pred(p, {"X": x, "Y": y}) == eval_pred(q, {"X_1": x, "Y": y})


# --- properties ---------------------------------------------------------------

small = st.integers(0, 3)
vec2 = st.tuples(small, small)


def naive_linear(c, L: LinearSet) -> bool:
    bound = sum(c)
    k = len(L.periods)
    for ns in itertools.product(range(bound + 1), repeat=k):
        if sum(ns) > bound:
            continue
        v = list(L.base)
        for n, p in zip(ns, L.periods):
            v = [a + n * b for a, b in zip(v, p)]
        if tuple(v) == tuple(c):
            return True
    return False


@settings(max_examples=150, deadline=None)
@given(vec2, st.lists(vec2, max_size=3), st.tuples(st.integers(0, 7), st.integers(0, 7)))
def test_linear_member_matches_enumeration(base, periods, c):
    L = LinearSet(base, tuple(periods))
    assert linear_member(c, L) == naive_linear(c, L)


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2), st.integers(2, 6), st.integers(0, 20), st.integers(0, 20))
def test_mod_residue_in_range(ws, m, x, y):
    total = ws[0] * x + ws[1] * y
    hits = [r for r in range(m) if eval_pred(Mod.of({"X": ws[0], "Y": ws[1]}, r, m), {"X": x, "Y": y})]
    assert hits == [total % m]


atom_st = st.one_of(
    st.builds(lambda a, b: Threshold.of({"X": a}, b), st.integers(-3, 3), st.integers(-3, 3)),
    st.builds(lambda a, r, m: Mod.of({"X": a}, r % m, m), st.integers(-3, 3), st.integers(0, 5), st.integers(2, 4)),
)
pred_st = st.recursive(
    atom_st,
    lambda kids: st.one_of(st.builds(Not, kids), st.builds(And, kids, kids), st.builds(Or, kids, kids)),
    max_leaves=6,
)


@settings(max_examples=100)
@given(pred_st, st.integers(0, 12))
def test_skeleton_evaluation_agrees(p, x):
    env = {"X": x}
    values = {a: eval_pred(a, env) for a in atoms(p)}
    assert eval_with_atoms(p, values) == eval_pred(p, env)
    assert eval_pred(Not(p), env) != eval_pred(p, env)
