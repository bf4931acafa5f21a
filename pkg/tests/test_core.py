import itertools

import pytest
from hypothesis import given, strategies as st

from culab import (
    INF,
    ChainDescriptor,
    EkModel,
    FiniteModel,
    NbarModel,
    add,
    basis_chain,
    discrete_space,
    is_compact,
    leq,
    lsc_model,
    omega_multiple,
    product,
    sierpinski,
    sup_chain,
    trivial_model,
    way_below,
)
from culab.core import ext_exponent, format_ext, parse_ext, table_violations
from culab.errors import ElementModelMismatch, NotIncreasing, NotT0, ValidationError

from conftest import corpus

ext = st.one_of(st.integers(min_value=0, max_value=50), st.just(INF))


def test_leq_examples(e2, nbar):
    assert leq(nbar, 3, INF)
    assert leq(e2, 1, 2)
    for m in corpus().values():
        for x in m.candidates(2):
            assert m.leq(m.zero, x)


def test_add_examples(e2, nbar):
    assert str(add(e2, 1, 2)) == "inf"
    assert add(nbar, 2, 3).value == 5
    assert add(e2, 2, 0).value == 2


def test_way_below_examples(nbar, e2):
    assert way_below(nbar, 3, INF)
    assert not way_below(nbar, INF, INF)
    for a, b in itertools.product(e2.elements(), repeat=2):
        assert e2.way_below(a, b) == e2.leq(a, b)


def test_omega_examples(e2, nbar):
    assert str(omega_multiple(e2, 1)) == "inf"
    assert omega_multiple(nbar, 0).value == 0
    assert omega_multiple(nbar, 2).value == INF


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_elementary_multiples(k):
    E = EkModel(k)
    x = E.elem(1).value
    assert E.multiple(x, k + 1) == E.multiple(x, k + 2) == E.elem(INF).value
    assert E.add(x, x) != x


def test_sup_chain(nbar):
    assert sup_chain(nbar, ChainDescriptor.truncation(nbar.elem(INF))).value == INF
    assert sup_chain(nbar, ChainDescriptor.stabilizing([nbar.elem(1), nbar.elem(3), nbar.elem(3)])).value == 3
    s = sierpinski()
    f = s.elem((INF, 2))
    assert sup_chain(s, ChainDescriptor.truncation(f)) == f
    with pytest.raises(NotIncreasing):
        sup_chain(nbar, ChainDescriptor.stabilizing([nbar.elem(3), nbar.elem(1)]))


def test_basis_chain(nbar):
    ch = basis_chain(nbar, INF)
    assert [t.value for t in ch.terms(nbar, 4)] == [0, 1, 2, 3]
    assert basis_chain(nbar, 5).form == "list"
    s = sierpinski()
    terms = [t.value for t in basis_chain(s, (INF, 1)).terms(s, 4)]
    assert terms == [(0, 0), (1, 1), (2, 1), (3, 1)]


def test_compactness(nbar):
    assert is_compact(nbar, 5)
    assert not is_compact(nbar, INF)
    E = EkModel(3)
    assert all(is_compact(E, x) for x in [0, 1, 2, 3, INF])


def test_product_and_lsc_isomorphisms():
    nn = product(NbarModel(), NbarModel())
    d2 = discrete_space(2)
    vals = [0, 1, 2, 3, INF]
    for a, b in itertools.product(itertools.product(vals, repeat=2), repeat=2):
        assert nn.leq(a, b) == d2.leq(a, b)
        assert nn.add(a, b) == d2.add(a, b)
        assert nn.way_below(a, b) == d2.way_below(a, b)
    point = lsc_model(["p"], [[1]])
    nb = NbarModel()
    for a, b in itertools.product(vals, repeat=2):
        assert point.leq((a,), (b,)) == nb.leq(a, b)
        assert point.way_below((a,), (b,)) == nb.way_below(a, b)
    with_zero = product(EkModel(2), trivial_model())
    assert len(with_zero.elements()) == 4


def test_sierpinski_carrier():
    s = sierpinski()
    vals = [0, 1, 2, INF]
    members = {(a, b) for a in vals for b in vals if s.contains((a, b))}
    assert members == {(a, b) for a in vals for b in vals if b <= a}


def test_not_t0():
    with pytest.raises(NotT0):
        lsc_model(["a", "b"], [[1, 1], [1, 1]])


def test_element_model_mismatch(e2):
    other = EkModel(2)
    with pytest.raises(ElementModelMismatch):
        leq(e2, other.elem(1), e2.elem(1))
    with pytest.raises(ValueError):
        e2.elem(7)


def test_table_violations_report_coordinates():
    bad = table_violations([[1, 1], [0, 1]], [[0, 1], [0, 1]])
    assert any(v.startswith("commutativity at (0,1)") for v in bad)
    with pytest.raises(ValidationError) as exc:
        FiniteModel([[1, 0], [1, 1]], [[0, 1], [1, 1]])
    assert "zero-least at 1" in exc.value.violations


def test_ext_helpers():
    assert parse_ext("inf") == INF and format_ext(INF) == "inf"
    assert ext_exponent(3, INF) == 1
    assert ext_exponent(2, 2) is None
    assert ext_exponent(2, 3) == 2  # 3*2 <= 2*3


@given(ext, ext, ext)
def test_nbar_laws(a, b, c):
    m = NbarModel()
    assert m.add(a, b) == m.add(b, a)
    assert m.add(m.add(a, b), c) == m.add(a, m.add(b, c))
    if m.leq(a, b):
        assert m.leq(m.add(a, c), m.add(b, c))
    if m.way_below(a, b):
        assert m.leq(a, b)


@given(ext, ext, ext, ext)
def test_nbar_o3(xp, x, yp, y):
    m = NbarModel()
    if m.way_below(xp, x) and m.way_below(yp, y):
        assert m.way_below(m.add(xp, yp), m.add(x, y))


@given(ext, ext, st.integers(min_value=1, max_value=40))
def test_ext_exponent_is_least(a, b, cap):
    n = ext_exponent(a, b)
    m = NbarModel()
    ok = [k for k in range(1, cap + 1) if m.way_below(m.multiple(a, k + 1), m.multiple(b, k))]
    if n is not None and n <= cap:
        assert ok and ok[0] == n
    elif n is None:
        assert not ok


def _sierpinski_values():
    return st.tuples(ext, ext).map(lambda p: (max(p), min(p)))


@given(_sierpinski_values(), _sierpinski_values(), _sierpinski_values())
def test_lsc_laws(a, b, c):
    s = sierpinski()
    assert s.contains(a) and s.contains(s.add(a, b))
    assert s.add(a, b) == s.add(b, a)
    if s.leq(a, b):
        assert s.leq(s.add(a, c), s.add(b, c))
    w = s.omega(a)
    assert s.add(w, w) == w and s.omega(w) == w


@given(_sierpinski_values(), _sierpinski_values())
def test_lsc_o4(a, b):
    s = sierpinski()
    ca, cb = basis_chain(s, a), basis_chain(s, b)
    assert sup_chain(s, ChainDescriptor.pointwise_sum(ca, cb)).value == s.add(a, b)
    for t in ca.terms(s, 6):
        assert s.way_below(t.value, a)


@pytest.mark.parametrize("name", sorted(corpus()))
def test_corpus_omega_idempotent(name):
    m = corpus()[name]
    for x in m.candidates(2):
        w = m.omega(x)
        assert m.add(w, w) == w and m.omega(w) == w
