import pytest

from barlog.errors import ResourceLimitError
from barlog.formspace import (FORMS, bar0_basis, bar_basis, chen_defect,
                              in_bar_span, is_integrable,
                              relation_space_contains, wedge,
                              wedge_relation_space)
from barlog.linalg import RowReducer
from barlog.words import FORM_BASE, WordPoly, concat, shuffle

# The four relations spanning the kernel of the wedge map: the two
# mixed-variable quadratic relations and the two same-variable
# degeneracies.
ARNOLD_1 = {("z22", "z11"): 1, ("z11", "z12"): 1,
            ("z12", "z22"): 1, ("z12", "z2"): 1}
ARNOLD_2 = {("z1", "z12"): 1, ("z2", "z12"): 1}
DEGEN_1 = {("z1", "z11"): 1}
DEGEN_2 = {("z2", "z22"): 1}


def test_wedge_dimension():
    ws = wedge_relation_space()
    assert len(ws.pairs) == 10
    assert ws.dimension == 6
    assert len(ws.relations) == 4


def test_known_relations_span_relation_space():
    known = [ARNOLD_1, ARNOLD_2, DEGEN_1, DEGEN_2]
    for rel in known:
        assert relation_space_contains(rel)
    # The four relations are independent, so they span the whole
    # 4-dimensional relation space.
    ordered = {}
    for i, a in enumerate(FORM_BASE):
        for b in FORM_BASE[i + 1:]:
            ordered[(a, b)] = (a, b)
    red = RowReducer()
    count = 0
    for rel in known:
        vec = {}
        for (a, b), c in rel.items():
            if (a, b) in ordered:
                vec[(a, b)] = vec.get((a, b), 0) + c
            else:
                vec[(b, a)] = vec.get((b, a), 0) - c
        if red.add(vec, count) is None:
            count += 1
    assert count == 4


def test_wedge_values_numeric():
    # z1 ^ z11 = dz1/z1 ^ dz1/(1-z1) = 0.
    w = wedge(FORMS["z1"], FORMS["z11"])
    assert w.is_zero()
    w = wedge(FORMS["z1"], FORMS["z2"])
    assert abs(w.evaluate(0.3, 0.4) - 1 / (0.3 * 0.4)) < 1e-12


def test_z12_splits():
    for comp in ("coeff_dz1", "coeff_dz2"):
        total = getattr(FORMS["z12"], comp)
        split = getattr(FORMS["z12_1"], comp) + getattr(FORMS["z12_2"], comp)
        assert total == split


def test_chen_defect_errors():
    inhomog = WordPoly(FORM_BASE, {("z1",): 1, ("z1", "z2"): 1})
    with pytest.raises(ValueError):
        chen_defect(inhomog, 1)
    word = WordPoly.monomial(FORM_BASE, ("z1", "z2"))
    with pytest.raises(ValueError):
        chen_defect(word, 2)


def test_bar_dimensions_low():
    assert len(bar_basis(0)) == 1
    assert len(bar_basis(1)) == 5
    assert len(bar_basis(2)) == 19
    assert len(bar_basis(3)) == 65
    assert len(bar0_basis(1)) == 3
    assert len(bar0_basis(2)) == 10
    assert len(bar0_basis(3)) == 32


def test_bar_basis_is_integrable():
    for s in (2, 3):
        for b in bar_basis(s):
            assert is_integrable(b)
    for b in bar0_basis(2):
        assert is_integrable(b)
        assert all(w[-1] not in ("z1", "z2") for w in b.terms)


def test_bar_is_shuffle_closed():
    # B is a subalgebra under the shuffle product.
    for a in bar_basis(1)[:3]:
        for b in bar_basis(2)[:5]:
            assert in_bar_span(shuffle(a, b))


def test_non_integrable_word():
    w = WordPoly.monomial(FORM_BASE, ("z1", "z2"))
    assert not is_integrable(w)
    assert not in_bar_span(w)


def test_degree_cap():
    with pytest.raises(ResourceLimitError):
        bar_basis(3, cap=2)


def _m(*letters):
    return WordPoly.monomial(FORM_BASE, letters)


def test_reference_degree2_basis_spans():
    """The 19 displayed degree-2 generators are integrable and span
    exactly the computed degree-2 space."""
    gens = []
    for a in FORM_BASE:
        gens.append(_m(a, a))
    gens.append(_m("z1", "z11"))
    gens.append(_m("z2", "z22"))
    gens.append(_m("z11", "z1"))
    gens.append(_m("z22", "z2"))
    for w1 in ("z1", "z11"):
        for w2 in ("z2", "z22"):
            gens.append(_m(w1, w2) + _m(w2, w1))
    for a in ("z1", "z11", "z2", "z22"):
        gens.append(_m(a, "z12") + _m("z12", a))
    gens.append(_m("z1", "z12") + _m("z2", "z12"))
    gens.append(_m("z11", "z12") + _m("z22", "z11")
                - _m("z22", "z12") - _m("z2", "z12"))
    assert len(gens) == 19
    red = RowReducer()
    for i, g in enumerate(gens):
        assert is_integrable(g)
        assert in_bar_span(g)
        red.add(dict(g.terms), i)
    assert red.rank == 19 == len(bar_basis(2))
