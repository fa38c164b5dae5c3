from __future__ import annotations

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from crdverify.compiler import UnsupportedAtom, compile_bool, compile_mod, compile_threshold, negate
from crdverify.crd import Classification, Status, check_stronger_condition, classify_input, input_vectors, verify_decides
from crdverify.dsl import parse_pred
from crdverify.semilinear import And, Mod, Not, Or, Predicate, Threshold, eval_pred

from conftest import mod_consensus, naive_class


def assert_decides(crd, pred, bound=8):
    rep = verify_decides(crd, pred, bound)
    assert rep.status is Status.PASS, rep.to_dict()["counts"]
    assert not rep.unknowns


class TestCompileMod:
    def test_not_congruent_mod_3(self):
        pred = parse_pred("not (lin(X - Y) mod 3 == 0)")
        crd = negate(compile_mod({"X": 1, "Y": -1}, 0, 3))
        assert_decides(crd, pred)

    def test_even_leader_walk(self):
        crd = compile_mod({"X": 1}, 0, 2)
        assert classify_input(crd, {"X": 2}).classification is Classification.ONE
        assert classify_input(crd, {"X": 3}).classification is Classification.ZERO

    def test_shape(self):
        crd = compile_mod({"X": 2, "Y": 1}, 1, 3)
        assert crd.species.names == ("X", "Y", "L0", "L1", "L2")
        assert crd.voters1 == ("L1",)
        assert crd.species.as_dict(crd.seed) == {"L0": 1}
        assert len(crd.crn.reactions) == 6

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            compile_mod({"X": 1}, 0, 1)
        with pytest.raises(ValueError):
            compile_mod({"X": 1}, 2, 2)

    def test_zero_input_rejected_by_classifier(self):
        from crdverify.crd import InvalidInput

        with pytest.raises(InvalidInput):
            classify_input(compile_mod({"X": 1}, 0, 2), {"X": 0})

    def test_name_clash_with_input(self):
        crd = compile_mod({"L0": 1}, 1, 2)
        assert crd.inputs == ("L0",)
        assert_decides(crd, Mod.of({"L0": 1}, 1, 2), 6)


class TestCompileThreshold:
    def test_majority(self):
        crd = compile_threshold({"X1": -1, "X2": 1}, 0)
        assert classify_input(crd, {"X1": 2, "X2": 1}).classification is Classification.ONE
        assert_decides(crd, Threshold.of({"X1": -1, "X2": 1}, 0))

    def test_below_three(self):
        crd = compile_threshold({"X": 1}, 3)
        assert classify_input(crd, {"X": 5}).classification is Classification.ZERO

    def test_constant_true(self):
        crd = compile_threshold({"X": 0, "Y": 0}, 1)
        for x in input_vectors(crd, 5):
            assert classify_input(crd, x).classification is Classification.ONE

    def test_seed_encodes_bound(self):
        sp_seed = lambda crd: crd.species.as_dict(crd.seed)  # noqa: E731
        assert sp_seed(compile_threshold({"X": 1}, 2)) == {"N": 1, "P": 2}
        assert sp_seed(compile_threshold({"X": 1}, -2)) == {"N": 1, "M": 2}

    def test_weighted(self):
        pred = Threshold.of({"X": 2, "Y": -3}, 1)
        assert_decides(compile_threshold({"X": 2, "Y": -3}, 1), pred)


class TestCompileBool:
    def test_matches_mod_consensus(self):
        pred = parse_pred("not (lin(X - Y) mod 2 == 0)")
        crd = compile_bool(pred)
        ref = mod_consensus(2)
        for x in input_vectors(crd, 8):
            assert classify_input(crd, x).output == classify_input(ref, x).output

    def test_interval(self):
        pred = And(Threshold.of({"X": 1}, 3), Not(Threshold.of({"X": 1}, 1)))
        crd = compile_bool(pred)
        out = {k: classify_input(crd, {"X": k}).classification for k in (1, 2, 3)}
        assert out == {1: Classification.ONE, 2: Classification.ONE, 3: Classification.ZERO}

    def test_tautology(self):
        p = Mod.of({"X": 1}, 0, 2)
        crd = compile_bool(Or(p, Not(p)))
        for x in input_vectors(crd, 6):
            assert classify_input(crd, x).classification is Classification.ONE

    def test_unsupported(self):
        class Weird(Predicate):
            pass

        with pytest.raises(UnsupportedAtom):
            compile_bool(And(Weird(), Threshold.of({"X": 1}, 1)))

    def test_inputs_must_cover_predicate(self):
        with pytest.raises(ValueError):
            compile_bool(And(Threshold.of({"X": 1}, 1), Threshold.of({"Y": 1}, 1)), inputs=["X"])

    def test_extra_inputs_ignored(self):
        pred = parse_pred("lin(X) < 2 and lin(X) mod 2 == 0")
        crd = compile_bool(pred, inputs=["X", "Z"])
        assert crd.inputs == ("X", "Z")
        assert_decides(crd, pred, 6)


SUITE = [
    "not (lin(X - Y) mod 3 == 0)",
    "lin(X2 - X1) < 0",
    "lin(X) mod 2 == 0 and lin(X) < 6",
    "lin(X) < 3 and not (lin(X) < 1)",
    "lin(2*X - 3*Y) < 1 or lin(X) mod 3 == 1",
    "not (lin(X) < 2 and lin(Y) < 2)",
]


@pytest.mark.parametrize("text", SUITE)
def test_suite_is_sound_and_stable(text):
    pred = parse_pred(text)
    crd = compile_bool(pred)
    assert any(crd.seed)
    assert set(crd.voters0) | set(crd.voters1) == set(crd.species.names)
    assert not set(crd.voters0) & set(crd.voters1)
    assert_decides(crd, pred)
    rep = check_stronger_condition(crd, 6)
    assert rep.ok and rep.unknown == 0


# --- random predicates against a brute-force oracle ----------------------------

coef = st.integers(-2, 2)
atom_st = st.one_of(
    st.builds(lambda a, b, k: Threshold.of({"X": a, "Y": b}, k), coef, coef, st.integers(-2, 2)),
    st.builds(lambda a, b, m, r: Mod.of({"X": a, "Y": b}, r % m, m), coef, coef, st.integers(2, 3), st.integers(0, 2)),
)
pred_st = st.recursive(
    atom_st,
    lambda kids: st.one_of(st.builds(Not, kids), st.builds(And, kids, kids), st.builds(Or, kids, kids)),
    max_leaves=3,
)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(pred_st)
def test_random_predicates_match_oracle(pred):
    crd = compile_bool(pred, inputs=["X", "Y"])
    for x in input_vectors(crd, 3):
        expected = "one" if eval_pred(pred, x) else "zero"
        assert naive_class(crd, x) == expected, x
        assert classify_input(crd, x).classification.value == expected, x
