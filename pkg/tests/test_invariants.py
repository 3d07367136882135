import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from semifact import invariants as inv
from semifact.core import Element, SemigroupPresentation, contains, factorizations
from semifact.errors import DimensionMismatch, EmptyRange, EmptySubset, NotInSemigroup, NotNumerical
from semifact.oracles import bullet_oracle, catenary_oracle
from semifact.reproduce import random_numerical_semigroup

TWO_THREE = SemigroupPresentation.numerical([2, 3])


def test_length_and_delta(mcnugget):
    assert inv.length_set(mcnugget, 60).lengths == (3, 7, 8, 9, 10)
    assert inv.delta_of_element(mcnugget, 60).gaps == (1, 4)
    assert inv.delta_of_element(mcnugget, 29).gaps == ()
    assert inv.length_set(mcnugget, 0).lengths == (0,)
    with pytest.raises(NotInSemigroup):
        inv.length_set(mcnugget, 43)


def test_equal_length_factorizations_collapse(mcnugget):
    z = factorizations(mcnugget, 126)
    assert (11, 0, 3) in z and (0, 14, 0) in z
    assert list(inv.length_set(mcnugget, 126)).count(14) == 1


def test_six_in_delta_266():
    sgp = SemigroupPresentation.numerical([17, 33, 53, 71])
    assert 6 in inv.delta_of_element(sgp, 266)


def test_max_min(mcnugget):
    assert (inv.max_length(mcnugget, 60), inv.min_length(mcnugget, 60)) == (10, 3)
    assert (inv.max_length(TWO_THREE, 6), inv.min_length(TWO_THREE, 6)) == (3, 2)
    assert (inv.max_length(mcnugget, 0), inv.min_length(mcnugget, 0)) == (0, 0)


def test_apery(mcnugget):
    assert inv.apery_set(mcnugget, [6]) == [0, 9, 20, 29, 40, 49]
    assert inv.apery_set(TWO_THREE, [2, 3]) == [0]
    assert set(inv.apery_set(mcnugget, [6, 9, 20])) <= set(inv.apery_set(mcnugget, [6]))
    with pytest.raises(EmptySubset):
        inv.apery_set(mcnugget, [])
    with pytest.raises(NotNumerical):
        inv.apery_set(SemigroupPresentation.affine([(1, 2), (2, 1)]), [(1, 2)])


def test_apery_cardinality(corpus):
    for sgp in corpus:
        for t in sgp.numbers:
            assert len(inv.apery_set(sgp, [t])) == t


def test_max_length_restricted(mcnugget):
    assert inv.max_length_restricted(mcnugget, [9, 20], 49) == 3
    assert inv.max_length_restricted(mcnugget, [9, 20], 6) is None
    for n in (0, 60, 99):
        assert inv.max_length_restricted(mcnugget, [6, 9, 20], n) == inv.max_length(mcnugget, n)


def test_omega_examples(mcnugget):
    assert inv.omega(mcnugget, 6) == inv.OmegaResult(3, True)
    assert inv.omega(TWO_THREE, 2).value == bullet_oracle(TWO_THREE, 2, 20).value == 2
    assert inv.omega(mcnugget, 0) == inv.OmegaResult(0, True)
    with pytest.raises(NotInSemigroup):
        inv.omega(mcnugget, 7)


def test_omega_bounded(mcnugget, plane):
    for n in range(1, 121):
        if contains(mcnugget, n):
            assert inv.omega_bounded(mcnugget, n, 200) == inv.omega(mcnugget, n)
    res = inv.omega_bounded(mcnugget, 6, 1)
    assert res.exact is False and res.value <= 3
    res = inv.omega_bounded(plane, (2, 2), 8)
    oracle = bullet_oracle(plane, (2, 2), 8)
    assert res == oracle
    assert res.value >= 2


def test_omega_small_semigroups():
    for sgp in (TWO_THREE, SemigroupPresentation.numerical([3, 5, 7])):
        for n in range(1, 80):
            if contains(sgp, n):
                assert inv.omega(sgp, n) == bullet_oracle(sgp, n, 200)


def test_distance():
    assert inv.distance((3, 0, 0), (0, 2, 0)) == 3
    assert inv.distance((4, 1, 2), (4, 1, 2)) == 0
    with pytest.raises(DimensionMismatch):
        inv.distance((1, 2), (1, 2, 3))


@given(
    st.lists(st.integers(0, 9), min_size=4, max_size=4),
    st.lists(st.integers(0, 9), min_size=4, max_size=4),
    st.lists(st.integers(0, 9), min_size=4, max_size=4),
)
def test_distance_translation_invariant(a, b, c):
    shift = lambda v: [x + y for x, y in zip(v, c)]  # noqa: E731
    assert inv.distance(shift(a), shift(b)) == inv.distance(a, b)
    assert inv.distance(a, b) == inv.distance(b, a) >= 0


def test_catenary(mcnugget):
    assert inv.catenary_degree(mcnugget, 18) == 3
    assert inv.catenary_degree(mcnugget, 29) == 0
    for n in range(151):
        if contains(mcnugget, n):
            assert inv.catenary_degree(mcnugget, n) == catenary_oracle(mcnugget, n)


def test_catenary_random(corpus):
    rng = random.Random(3)
    for sgp in corpus:
        members = [n for n in range(120) if contains(sgp, n) and len(factorizations(sgp, n)) <= 25]
        for n in rng.sample(members, min(8, len(members))):
            assert inv.catenary_degree(sgp, n) == catenary_oracle(sgp, n)


def test_catenary_affine(plane):
    for x, y in itertools.product(range(10), repeat=2):
        if contains(plane, (x, y)):
            assert inv.catenary_degree(plane, (x, y)) == catenary_oracle(plane, (x, y))


def test_delta_of_semigroup(mcnugget):
    union, cert = inv.delta_of_semigroup(mcnugget, 500)
    assert union.gaps == (1, 2, 3, 4)
    assert cert.status == "Verified" and cert.period == 60 and cert.start == 92
    assert 60 % cert.minimal_period == 0
    union, cert = inv.delta_of_semigroup(TWO_THREE, 60)
    assert union.gaps == (1,)
    union, cert = inv.delta_of_semigroup(mcnugget, 150)
    assert cert.status == "HorizonTooSmall" and union.gaps == (1, 2, 3, 4)


def test_delta_start_hint(mcnugget):
    _, cert = inv.delta_of_semigroup(mcnugget, 400, start_hint=100)
    assert cert.status == "Verified" and cert.start == 100
    _, cert = inv.delta_of_semigroup(mcnugget, 400, start_hint=50)
    assert cert.status == "HorizonTooSmall"
    with pytest.raises(ValueError):
        inv.delta_of_semigroup(mcnugget, 150, start_hint=100)


def test_delta_table_matches_enumeration(corpus):
    for sgp in corpus[:6]:
        table = inv.delta_table(sgp, 150)
        for n in range(151):
            if contains(sgp, n):
                assert table[n] == inv.delta_of_element(sgp, n).gaps
            else:
                assert table[n] is None


def test_scan_numerical(mcnugget):
    table = inv.scan(mcnugget, 0, 100, ["z_count"])
    rows = table.by_element()
    assert rows[Element((60,))].z_count == 5
    assert Element((43,)) not in rows
    assert [r.element.free[0] for r in table] == sorted(r.element.free[0] for r in table)
    assert len(inv.scan(mcnugget, 1, 5, ["delta"])) == 0
    with pytest.raises(EmptyRange):
        inv.scan(mcnugget, 10, 5)


def test_scan_matches_single_queries(mcnugget):
    cols = ["z_count", "lengths", "delta", "max_len", "min_len", "omega", "catenary"]
    table = inv.scan(mcnugget, 40, 130, cols)
    assert table.columns == ("z_count", "lengths", "delta", "max_len", "min_len", "omega", "omega_exact", "catenary")
    for rec in table:
        n = rec.element
        assert rec.z_count == len(factorizations(mcnugget, n))
        assert rec.lengths == inv.length_set(mcnugget, n).lengths
        assert rec.delta == inv.delta_of_element(mcnugget, n).gaps
        assert rec.max_len == inv.max_length(mcnugget, n)
        assert rec.min_len == inv.min_length(mcnugget, n)
        assert (rec.omega, rec.omega_exact) == (inv.omega(mcnugget, n).value, True)
        assert rec.catenary == inv.catenary_degree(mcnugget, n)


def test_scan_affine_box_matches_enumeration():
    sgp = SemigroupPresentation.affine([(1, 1), (1, 5), (2, 5), (3, 5), (5, 1), (5, 2), (5, 3)])
    table = inv.scan(sgp, (0, 0), (14, 14), ["z_count", "lengths", "delta"])
    assert len(table) > 0
    for rec in table:
        z = factorizations(sgp, rec.element)
        assert rec.z_count == len(z)
        assert rec.lengths == tuple(sorted({f.length for f in z}))
    assert {e for e in (Element((x, y)) for x in range(15) for y in range(15)) if contains(sgp, e)} == set(
        table.by_element()
    )


def test_scan_parallel_is_deterministic(plane):
    one = inv.scan(plane, (0, 0), (9, 9), ["catenary", "omega"], omega_cap=6)
    two = inv.scan(plane, (0, 0), (9, 9), ["catenary", "omega"], omega_cap=6, workers=2)
    assert one == two


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**6), a=st.integers(0, 200), b=st.integers(0, 200))
def test_length_additivity(seed, a, b):
    sgp = random_numerical_semigroup(random.Random(seed))
    if not (contains(sgp, a) and contains(sgp, b)):
        return
    assert inv.max_length(sgp, a + b) >= inv.max_length(sgp, a) + inv.max_length(sgp, b)
    assert inv.min_length(sgp, a + b) <= inv.min_length(sgp, a) + inv.min_length(sgp, b)
    lengths = inv.length_set(sgp, a).lengths
    assert sum(y - x for x, y in zip(lengths, lengths[1:])) == lengths[-1] - lengths[0]
    assert (len(inv.delta_of_element(sgp, a)) == 0) == (len(lengths) <= 1)
