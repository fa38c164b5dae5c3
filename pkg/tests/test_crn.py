from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crdverify.crn import (
    Crn,
    DimensionMismatch,
    Homomorphism,
    NotEnabled,
    Reaction,
    SpeciesTable,
    apply,
    configs_up_to,
    enabled,
    eval_hom,
    norm,
)

from conftest import mod_consensus

XYV = SpeciesTable(("X", "Y", "V0"))


def rxn(r, p, sp=XYV):
    return Reaction(sp.config(r), sp.config(p))


class TestSpeciesTable:
    def test_index_follows_declaration_order(self):
        assert XYV.index == {"X": 0, "Y": 1, "V0": 2}

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            SpeciesTable(("X", "X"))

    def test_empty_name_rejected(self):
        with pytest.raises(ValueError):
            SpeciesTable(("",))

    def test_config_and_format(self):
        c = XYV.config(X=2, V0=1)
        assert c == (2, 0, 1)
        assert XYV.format(c) == "{2 X, 1 V0}"
        assert XYV.as_dict(c) == {"X": 2, "V0": 1}

    def test_unknown_or_negative_counts(self):
        with pytest.raises(KeyError):
            XYV.config(Z=1)
        with pytest.raises(ValueError):
            XYV.config(X=-1)

    def test_fresh_avoids_existing(self):
        assert XYV.fresh("V0") == "V0_"
        assert XYV.fresh("V1") == "V1"
        assert XYV.fresh("V1", taken=["V1"]) == "V1_"


class TestApply:
    def test_bimolecular(self):
        assert apply(XYV.config(X=2, Y=1), rxn({"X": 1, "Y": 1}, {"V0": 1})) == XYV.config(X=1, V0=1)

    def test_mx_to_v0_with_m3(self):
        assert apply(XYV.config(X=3), rxn({"X": 3}, {"V0": 1})) == XYV.config(V0=1)

    def test_not_enabled(self):
        with pytest.raises(NotEnabled):
            apply(XYV.config(X=1), rxn({"X": 2}, {}))

    def test_value_semantics(self):
        c = XYV.config(X=2)
        apply(c, rxn({"X": 1}, {"Y": 1}))
        assert c == (2, 0, 0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply((1, 0), rxn({"X": 1}, {}))

    def test_reaction_rejects_negative_vectors(self):
        with pytest.raises(ValueError):
            Reaction((-1, 0), (0, 0))

    def test_big_counts_stay_exact(self):
        c = XYV.config(X=10**30)
        assert apply(c, rxn({"X": 1}, {"X": 2})) == (10**30 + 1, 0, 0)


class TestEnabled:
    def test_mod_consensus_xy_only_annihilation(self):
        crd = mod_consensus(2)
        assert enabled(XYV.config(X=1, Y=1), crd.crn) == [2]

    def test_mod_consensus_x_v0(self):
        assert enabled(XYV.config(X=1, V0=1), mod_consensus(2).crn) == [4]

    def test_zero_enables_nothing_without_empty_reactants(self):
        assert enabled((0, 0, 0), mod_consensus(2).crn) == []

    def test_declaration_order(self):
        crn = Crn.from_lists(["X"], [({"X": 1}, {}), ({"X": 1}, {"X": 2})])
        assert enabled((1,), crn) == [0, 1]


class TestHomomorphism:
    def test_indicator(self):
        f = Homomorphism.indicator(XYV, ["X", "Y"])
        assert eval_hom(f, XYV.config(X=2, V0=1)) == 2

    def test_difference(self):
        sp = SpeciesTable(("Y", "N"))
        f = Homomorphism.difference(sp, ["Y"], ["N"])
        assert eval_hom(f, sp.config(Y=3, N=1)) == 2

    def test_zero(self):
        assert eval_hom(Homomorphism((3, -7, 2)), (0, 0, 0)) == 0


def test_configs_up_to_counts():
    # number of vectors in N^3 with norm <= 4 is C(4+3, 3)
    assert len(list(configs_up_to(3, 4))) == 35
    assert len(set(configs_up_to(3, 4))) == 35


vec3 = st.tuples(*[st.integers(0, 6)] * 3)


@given(vec3, vec3, vec3)
def test_apply_norm_and_monotonicity(r, p, d):
    a = Reaction(r, p)
    c = r  # smallest configuration enabling a
    out = apply(c, a)
    assert norm(out) == norm(c) - norm(r) + norm(p)
    bigger = tuple(x + y for x, y in zip(c, d))
    assert apply(bigger, a) == tuple(x + y for x, y in zip(out, d))


@given(st.tuples(*[st.integers(-5, 5)] * 3), vec3, vec3)
def test_eval_hom_additive(w, c, d):
    f = Homomorphism(w)
    assert eval_hom(f, tuple(x + y for x, y in zip(c, d))) == eval_hom(f, c) + eval_hom(f, d)
