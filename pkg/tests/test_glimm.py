import pytest
from hypothesis import given, strategies as st

from culab import INF, ChainDescriptor, EkModel, NbarModel, to_table, trivial_model
from culab import recheck
from culab.verdict import DEFAULT_BUDGET
from culab.errors import NotWayBelow, PreconditionNotEstablished
from culab.glimm import (
    char_div_equiv,
    classify_divisibility,
    classify_glimm,
    cu_equiv_ab_soft,
    div_soft_divisor,
    element_divisor,
    has_2_splitting,
    has_abundance_soft,
    has_property_V,
    is_ideal_filtered,
    k_div_seq,
    lhd_interpolate,
    pre_cu_equiv,
    soft_dominator,
    two_omega_divisible,
    weakly_two_omega_divisible,
)
from culab.softness import classify_softness
from culab.structure import Scale, check_axiom

import oracles
from conftest import corpus, join_square, small_models

FINITE = [to_table(m) for m in corpus().values() if m.is_finite] + small_models(4)
GOOD = [m for m in FINITE if all(check_axiom(m, a).proven for a in ("O5", "O6", "O7"))]


def full(m):
    return Scale.full(m)


def cert(v):
    return {k: e.value for k, e in v.certificate.items()}


def test_divisibility_examples(e2, zi):
    r = classify_divisibility(e2, full(e2))
    assert r.two_omega_divisible.refuted and cert(r.two_omega_divisible) == {"x_prime": 1, "x": 1}
    assert r.weakly_two_omega_divisible.refuted
    assert classify_divisibility(zi, full(zi)).two_omega_divisible.proven
    y, n = element_divisor(zi, 1, 1, 2, DEFAULT_BUDGET)
    assert (y, n) == (1, 1)
    assert element_divisor(e2, 0, 2, 2, DEFAULT_BUDGET)[0] == 0


def test_glimm_examples(e2, zi):
    g = classify_glimm(e2, full(e2))
    assert g.ideal_filtered.proven and g.property_V.proven
    assert g.abundance_soft.refuted and cert(g.abundance_soft) == {"x_prime": 1, "x": 1}
    assert g.hereditary_2_splitting.refuted and g.soft_divisor_all.refuted
    assert all(v.proven for _, v in classify_glimm(zi, full(zi)).items())
    t = trivial_model()
    assert all(v.proven for _, v in classify_glimm(t, full(t)).items())


def test_two_omega_matches_brute_force():
    for m in FINITE:
        assert two_omega_divisible(m, full(m)).proven == oracles.two_omega_divisible(m.le, m.table)


def test_divisibility_implies_weak():
    for m in FINITE:
        if two_omega_divisible(m, full(m)).proven:
            assert weakly_two_omega_divisible(m, full(m)).proven


def test_glimm_implications():
    for m in FINITE:
        s = full(m)
        ab = has_abundance_soft(m, s)
        o6 = check_axiom(m, "O6")
        if ab.proven:
            assert has_property_V(m, s).proven
            if o6.proven:
                assert weakly_two_omega_divisible(m, s).proven
        if o6.proven:
            for x in m.elements():
                if classify_softness(m, m.wrap(x)).weakly_soft.proven:
                    assert weakly_divisible_element(m, x)


def weakly_divisible_element(m, x):
    # pairs (x', x) for this x only
    return all(
        any(
            m.leq(m.add(y, y), x) and m.leq(xp, m.omega(y)) for y in m.elements()
        )
        or _weak_tuple(m, xp, x)
        for xp in m.elements()
        if m.leq(xp, x)
    )


def _weak_tuple(m, xp, x):
    good = [y for y in m.elements() if m.leq(m.add(y, y), x)]
    sums = {m.zero}
    for _ in range(m.size + 1):
        sums |= {m.add(s, y) for s in sums for y in good}
    return any(m.leq(xp, s) for s in sums)


def test_equivalences_on_good_models():
    assert GOOD
    for m in GOOD:
        r = cu_equiv_ab_soft(m, full(m))
        assert r.applicable and r.agree, r.to_json()
        d = char_div_equiv(m, full(m))
        assert d.agree and d.note == "O8 not checked"


def test_char_div_examples(e2, zi):
    assert {v.status.value for v in char_div_equiv(e2, full(e2)).conditions.values()} == {"Refuted"}
    assert {v.status.value for v in char_div_equiv(zi, full(zi)).conditions.values()} == {"Proven"}
    t = trivial_model()
    assert {v.status.value for v in char_div_equiv(t, full(t)).conditions.values()} == {"Proven"}


def test_lhd_interpolate(nbar, e2):
    v = lhd_interpolate(nbar, 2, 3, 1)
    assert v.witness["z"].value == 1
    assert recheck.lhd_interpolate_ok(nbar, 2, 3, 1, v.witness["y_prime"], v.witness["z"])
    assert lhd_interpolate(nbar, 0, 3, 1).witness["z"].value == 0
    v = lhd_interpolate(e2, 1, 2, INF, assume=True)
    assert recheck.lhd_interpolate_ok(e2, *(e2.elem(a) for a in (1, 2, INF)), v.witness["y_prime"], v.witness["z"])
    with pytest.raises(NotWayBelow):
        lhd_interpolate(nbar, INF, INF, 1)


def test_pre_cu_equiv(zi, e2):
    v = pre_cu_equiv(zi, full(zi), "inf", "inf")
    assert str(v.witness["y"]) == "inf" and str(v.witness["z"]) == "inf"
    v = pre_cu_equiv(zi, full(zi), 0, "inf")
    assert v.witness["y"].value == 0 and str(v.witness["z"]) == "inf"
    with pytest.raises(PreconditionNotEstablished):
        pre_cu_equiv(e2, full(e2), 1, 1)


def test_soft_dominator(zi, e2):
    assert str(soft_dominator(zi, full(zi), "inf").witness["y"]) == "inf"
    for m in (zi, join_square()):
        assert soft_dominator(m, full(m), 0).witness["y"].value == m.zero
    v = soft_dominator(e2, full(e2), 1)
    assert v.refuted and cert(v) == {"x_prime": 1, "x": 1}


def test_k_div_seq(zi):
    v = k_div_seq(zi, 2, ChainDescriptor.stabilizing([zi.elem("inf")]))
    assert {str(e) for e in v.witness["y_prefix"] + v.witness["y_cycle"]} == {"inf"}
    j = join_square()
    top = j.elem("top")
    v = k_div_seq(j, 3, ChainDescriptor.stabilizing([top, top]))
    assert {str(e) for e in v.witness["y_prefix"] + v.witness["y_cycle"]} == {"top"}
    assert recheck.k_div_seq_ok(j, 3, [top, top], v.witness["y_prefix"], v.witness["y_cycle"])
    v = k_div_seq(zi, 2, ChainDescriptor.stabilizing([zi.elem(0)]))
    assert {e.value for e in v.witness["y_cycle"]} == {0}


def test_div_soft_divisor(zi, e2):
    for x in zi.elements():
        v = div_soft_divisor(zi, zi.wrap(x), 5)
        assert recheck.div_soft_divisor_ok(zi, x, 5, v.witness["y"])
    assert str(div_soft_divisor(zi, "inf", 5).witness["y"]) == "inf"
    with pytest.raises(PreconditionNotEstablished):
        div_soft_divisor(e2, 2, 2)


def test_constructions_recheck_on_small_models():
    for m in GOOD:
        s = full(m)
        split = has_2_splitting(m, s).proven
        divisible = two_omega_divisible(m, s).proven
        for x in m.elements():
            if split:
                y = soft_dominator(m, s, m.wrap(x)).witness["y"]
                assert recheck.soft_dominator_ok(m, x, y)
                for xp in m.elements():
                    if m.leq(xp, x):
                        w = pre_cu_equiv(m, s, m.wrap(xp), m.wrap(x)).witness
                        assert recheck.pre_cu_equiv_ok(m, xp, x, w["y"], w["z"])
            if divisible:
                for k in (1, 2, 3):
                    y = div_soft_divisor(m, m.wrap(x), k).witness["y"]
                    assert recheck.div_soft_divisor_ok(m, x, k, y)


def test_ideal_filtered_examples(e2, zi):
    for m in (e2, zi, trivial_model()):
        assert is_ideal_filtered(m, full(m)).proven


def test_nbar_divisibility_is_refuted():
    nb = NbarModel()
    assert two_omega_divisible(nb, full(nb)).refuted


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=5))
def test_elementary_models_are_never_divisible(k, j):
    E = EkModel(k)
    s = full(E)
    assert two_omega_divisible(E, s).refuted
    assert has_abundance_soft(E, s).refuted
    assert not div_soft_divisor_available(E, j)


def div_soft_divisor_available(E, j):
    try:
        div_soft_divisor(E, INF, j)
    except PreconditionNotEstablished:
        return False
    return True
