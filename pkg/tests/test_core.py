import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from semifact.core import (
    AmbientSpec,
    Element,
    SemigroupPresentation,
    contains,
    denumerant_table,
    factorizations,
    frobenius_number,
    load_semigroup,
    parse_semigroup,
    validate,
)
from semifact.errors import AmbientMismatch, InvalidSemigroup, NotNumerical
from semifact.oracles import box_size, naive_factorizations
from semifact.reproduce import random_numerical_semigroup


def _kinds(gens):
    return {str(v) for v in validate(SemigroupPresentation.numerical(gens))}


def test_validate_examples():
    assert _kinds([6, 9, 20]) == set()
    assert _kinds([2, 4]) == {"NumericalGcdNotOne", "NotMinimal(2)"}
    assert _kinds([2, 3, 5]) == {"NotMinimal(3)"}


def test_validate_reducedness_and_torsion():
    amb = AmbientSpec(1, (3,))
    sgp = SemigroupPresentation(amb, (Element((0,), (1,)), Element((1,), (0,))))
    assert "NotReduced" in {v.kind for v in validate(sgp)}
    sgp = SemigroupPresentation(amb, (Element((1,), (5,)),))
    assert "BadTorsionResidue" in {v.kind for v in validate(sgp)}


def test_load_semigroup_policy():
    with pytest.raises(InvalidSemigroup):
        load_semigroup({"numerical": [2, 3, 5]})
    sgp, warnings = load_semigroup({"numerical": [2, 3, 5]}, permissive=True)
    assert [str(w) for w in warnings] == ["NotMinimal(3)"]
    sgp, warnings = load_semigroup({"numerical": [4, 6]})
    assert [w.kind for w in warnings] == ["NumericalGcdNotOne"]


def test_parse_documents():
    sgp = parse_semigroup({"numerical": [6, 9, 20]})
    assert sgp.numbers == (6, 9, 20)
    doc = {"free_rank": 2, "torsion": [], "generators": [{"free": [2, 1]}, {"free": [1, 1]}, {"free": [1, 2]}]}
    sgp = parse_semigroup(doc)
    assert sgp.rank == 3 and not sgp.is_numerical
    assert parse_semigroup(sgp.to_document()) == sgp
    with pytest.raises(InvalidSemigroup):
        parse_semigroup({"numerical": [6, 9], "extra": 1})
    with pytest.raises(InvalidSemigroup):
        parse_semigroup({**doc, "name": "x"})
    with pytest.raises(InvalidSemigroup):
        parse_semigroup({"free_rank": 2, "generators": [{"free": [1, 1], "weight": 3}]})


def test_contains(mcnugget):
    assert not contains(mcnugget, 11)
    assert contains(mcnugget, 15)
    assert contains(mcnugget, 0)
    with pytest.raises(AmbientMismatch):
        contains(mcnugget, (1, 2))


def test_factorizations_examples(mcnugget):
    assert factorizations(mcnugget, 18).vectors() == [(0, 2, 0), (3, 0, 0)]
    assert factorizations(mcnugget, 60).vectors() == [
        (0, 0, 3), (1, 6, 0), (4, 4, 0), (7, 2, 0), (10, 0, 0)
    ]
    assert factorizations(mcnugget, 0).vectors() == [(0, 0, 0)]
    assert factorizations(mcnugget, 11).vectors() == []


def test_factorizations_evaluate_back(mcnugget, plane):
    for n in range(0, 200):
        for f in factorizations(mcnugget, n):
            assert mcnugget.evaluate(f.exponents) == Element((n,))
            assert f.length == sum(f.exponents)
    for x, y in itertools.product(range(12), repeat=2):
        for f in factorizations(plane, (x, y)):
            assert plane.evaluate(f.exponents) == Element((x, y))


def test_torsion_filter():
    amb = AmbientSpec(1, (2,))
    sgp = SemigroupPresentation(amb, (Element((1,), (1,)), Element((1,), (0,))))
    assert validate(sgp) == []
    assert factorizations(sgp, Element((2,), (0,))).vectors() == [(0, 2), (2, 0)]
    assert factorizations(sgp, Element((2,), (1,))).vectors() == [(1, 1)]
    for n, t in itertools.product(range(8), range(2)):
        e = Element((n,), (t,))
        assert factorizations(sgp, e).vectors() == naive_factorizations(sgp, e).vectors()


def test_denumerant_examples(mcnugget):
    c = denumerant_table(mcnugget, 20)
    assert (c[18], c[20], c[11], c[0]) == (2, 1, 0, 1)
    assert denumerant_table(SemigroupPresentation.numerical([2, 3]), 6)[6] == 2
    with pytest.raises(NotNumerical):
        denumerant_table(SemigroupPresentation.affine([(1, 2), (2, 1)]), 5)


def test_frobenius(mcnugget):
    assert frobenius_number(mcnugget) == 43
    assert frobenius_number(SemigroupPresentation.numerical([2, 3])) == 1


def test_determinism(mcnugget):
    assert factorizations(mcnugget, 300) == factorizations(mcnugget, 300)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), data=st.data())
def test_matches_naive_and_denumerant(seed, data):
    sgp = random_numerical_semigroup(random.Random(seed))
    n = data.draw(st.integers(0, 300))
    fast = factorizations(sgp, n)
    table = denumerant_table(sgp, n)
    assert len(fast) == table[n]
    if box_size(sgp, n) <= 50_000:
        assert fast.vectors() == naive_factorizations(sgp, n).vectors()


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), a=st.integers(0, 150), b=st.integers(0, 150))
def test_translation_injection(seed, a, b):
    sgp = random_numerical_semigroup(random.Random(seed))
    za, zb = factorizations(sgp, a), factorizations(sgp, b)
    if not za.factorizations or not zb.factorizations:
        return
    zab = set(factorizations(sgp, a + b).vectors())
    b0 = zb.factorizations[0].exponents
    shifted = {tuple(x + y for x, y in zip(f.exponents, b0)) for f in za}
    assert len(shifted) == len(za) and shifted <= zab
