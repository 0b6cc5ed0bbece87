from fractions import Fraction

import pytest

from barlog.hyperlog import ONE, PARAM, HyperlogTerm
from barlog.relgen import (Relation, decompose_check, generate_all,
                           generate_relation, relation_to_dict,
                           verify_relation)


def term(main, index, letters):
    return HyperlogTerm(main, tuple(index), tuple(letters))


def test_counts_and_trivial_flags():
    rels = generate_all(1)
    assert len(rels) == 3
    assert all(r.trivial for r in rels)
    rels = generate_all(2)
    assert len(rels) == 10
    assert sum(not r.trivial for r in rels) > 0
    assert len(generate_all(3)) == 32


def test_reference_relation_depth_one_one():
    r = generate_relation(("Z11", "Z12"), ())
    assert r.lhs == (term(1, (1, 1), (ONE, PARAM)),
                     term(1, (), ()))
    assert sorted(r.sorted_rhs()) == sorted((
        (Fraction(1), term(2, (1,), (ONE,)), term(1, (1,), (ONE,))),
        (Fraction(-1), term(2, (1, 1), (ONE, PARAM)), term(1, (), ())),
        (Fraction(-1), term(2, (2,), (PARAM,)), term(1, (), ())),
    ))
    assert not r.trivial


def test_reference_relation_flipped():
    r = generate_relation(("Z12", "Z11"), ())
    assert r.lhs[0] == term(1, (1, 1), (PARAM, ONE))
    assert sorted(r.sorted_rhs()) == sorted((
        (Fraction(1), term(2, (1,), (PARAM,)), term(1, (1,), (ONE,))),
        (Fraction(-1), term(2, (1,), (ONE,)), term(1, (1,), (ONE,))),
        (Fraction(1), term(2, (1, 1), (ONE, PARAM)), term(1, (), ())),
        (Fraction(1), term(2, (2,), (PARAM,)), term(1, (), ())),
    ))


def test_reference_relation_depth_three():
    r = generate_relation(("Z12", "Z11", "Z12"), ())
    assert r.lhs[0] == term(1, (1, 1, 1), (PARAM, ONE, PARAM))
    expected = (
        (Fraction(-2), term(2, (1, 1), (ONE, ONE)), term(1, (1,), (ONE,))),
        (Fraction(2), term(2, (1, 1, 1), (ONE, ONE, PARAM)),
         term(1, (), ())),
        (Fraction(2), term(2, (1, 2), (ONE, PARAM)), term(1, (), ())),
        (Fraction(1), term(2, (1, 1), (PARAM, ONE)), term(1, (1,), (ONE,))),
        (Fraction(1), term(2, (1, 1), (ONE, PARAM)), term(1, (1,), (ONE,))),
        (Fraction(-1), term(2, (1, 1, 1), (PARAM, ONE, PARAM)),
         term(1, (), ())),
        (Fraction(-1), term(2, (1, 2), (PARAM, PARAM)), term(1, (), ())),
    )
    assert sorted(r.sorted_rhs()) == sorted(expected)


def test_verify_relation():
    r = generate_relation(("Z11", "Z12"), ())
    report = verify_relation(r, [(0.3, 0.4), (0.5, -0.4)], max_n=3000)
    assert all(entry["passed"] for entry in report)
    assert all(entry["residual"] < 1e-10 for entry in report)


def test_verify_at_origin():
    r = generate_relation(("Z11", "Z12"), ())
    report = verify_relation(r, [(0.0, 0.2)], max_n=200)
    assert abs(report[0]["lhs"]) < 1e-15
    assert abs(report[0]["rhs"]) < 1e-15


def test_relations_all_valid_numerically():
    for r in generate_all(2):
        report = verify_relation(r, [(0.3, 0.4)], max_n=2000, tol=1e-8)
        assert report[0]["passed"], r.render()


def test_invalid_words_rejected():
    with pytest.raises(ValueError):
        generate_relation(("Z11", "Z1"), ())


def test_decompose_check_low_degrees():
    for s in (1, 2):
        out = decompose_check(s, point=(0.3, 0.4), max_n=3000)
        assert out["symbolic"]
        assert out["residual"] < 1e-8
        assert out["passed"]


def test_relation_json_shape():
    r = generate_relation(("Z11", "Z12"), ())
    d = relation_to_dict(r, verified=True, residual=0.0)
    assert d["degree"] == 2
    assert d["w1"] == ["Z11", "Z12"]
    assert d["w2"] == []
    assert d["verified"] is True
    assert {"factor2", "factor1", "coeff"} <= set(d["rhs"][0])


def test_weight_homogeneous():
    for r in generate_all(3):
        lhs_weight = sum(t.weight for t in r.lhs)
        for _, t2, t1 in r.rhs:
            assert t2.weight + t1.weight == lhs_weight == 3
