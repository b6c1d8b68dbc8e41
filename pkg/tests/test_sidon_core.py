import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import is_sidon_oracle
from sidonset.errors import DomainError, DuplicateElementError, EmptyInputError, NotACollisionError, OrderMismatchError
from sidonset.sidon_core import (
    CollisionWitness,
    affine_image,
    default_anchor,
    validate_configuration,
    verify_bruteforce,
    verify_hyperplane,
    weight_to_witness,
    witness_to_weight,
)
from sidonset.weights import WeightVector, enumerate_weight_vectors, evaluate_form

configs = st.lists(
    st.fractions(min_value=-12, max_value=12, max_denominator=4), min_size=1, max_size=5, unique=True
)


def test_validate_configuration():
    assert validate_configuration(["0", "1", "2"]).k == 3
    with pytest.raises(DuplicateElementError) as exc:
        validate_configuration([1, 1])
    assert exc.value.indices == (1, 2)
    with pytest.raises(DuplicateElementError) as exc:
        validate_configuration(["1/2", 3, "2/4"])
    assert exc.value.indices == (1, 3)
    with pytest.raises(EmptyInputError):
        validate_configuration([])


def test_bruteforce_examples():
    assert verify_bruteforce([1, 2, 4, 8], 2).is_sidon
    v = verify_bruteforce([1, 2, 4], 3)
    assert not v.is_sidon
    assert v.witness.u == {1: 2, 3: 1} and v.witness.v == {2: 3}
    assert v.collision_sum == 6
    for h in range(1, 6):
        assert verify_bruteforce([F(7, 3)], h).is_sidon


def test_hyperplane_examples():
    v = verify_hyperplane([0, 1, 2], 2)
    assert not v.is_sidon and v.weight.coeffs == (1, -2, 1)
    assert verify_hyperplane([1, 2, 4, 8], 2).is_sidon
    assert verify_hyperplane([0, 1], 5).is_sidon


def test_verdict_json():
    assert verify_bruteforce([1, 2, 4], 3).to_json() == {
        "is_sidon": False,
        "h": 3,
        "witness": {"u": {"1": 2, "3": 1}, "v": {"2": 3}},
        "weight": {"coeffs": {"1": 2, "2": -3, "3": 1}},
        "collision_sum": "6",
    }


def test_witness_to_weight_examples():
    assert witness_to_weight(CollisionWitness({1: 2, 3: 1}, {2: 3}, 3)).coeffs == (2, -3, 1)
    with pytest.raises(NotACollisionError):
        witness_to_weight(CollisionWitness({1: 1, 2: 1}, {2: 1, 1: 1}, 2))
    assert witness_to_weight(CollisionWitness({1: 2}, {2: 2}, 2)).coeffs == (2, -2)


def test_weight_to_witness_examples():
    c = weight_to_witness(WeightVector((1, -2, 1), 2), 2, 1)
    assert (c.u, c.v) == ({1: 1, 3: 1}, {2: 2})
    c = weight_to_witness(WeightVector((1, -1), 1), 3, 1)
    assert (c.u, c.v) == ({1: 3}, {1: 2, 2: 1})
    c = weight_to_witness(WeightVector((2, -2), 2), 2, 2)
    assert (c.u, c.v) == ({1: 2}, {2: 2})
    with pytest.raises(OrderMismatchError):
        weight_to_witness(WeightVector((2, -2), 2), 1)


def test_default_anchor():
    assert default_anchor(WeightVector((1, 0, -1), 1)) == 2
    assert default_anchor(WeightVector((1, -1), 1)) == 1


def test_witness_invariants():
    with pytest.raises(DomainError):
        CollisionWitness({1: 2}, {2: 1}, 2)
    with pytest.raises(DomainError):
        CollisionWitness({1: 3, 2: -1}, {2: 2}, 2)


@pytest.mark.parametrize("k, h", [(3, 2), (4, 3), (5, 2), (3, 4)])
def test_round_trip_weight_witness_weight(k, h):
    for w in enumerate_weight_vectors(k, h):
        for i0 in range(1, k + 1):
            c = weight_to_witness(w, h, i0)
            assert sum(c.u.values()) == sum(c.v.values()) == h
            assert c.u != c.v
            back = witness_to_weight(c, k)
            # the padding sits on both sides of i0 and cancels, in or out of the support
            assert back == WeightVector(w.coeffs, h)


@settings(max_examples=300)
@given(configs, st.integers(1, 3))
def test_two_deciders_agree_with_oracle(A, h):
    bf = verify_bruteforce(A, h)
    hp = verify_hyperplane(A, h)
    assert bf.is_sidon == hp.is_sidon == is_sidon_oracle(A, h)
    if not bf.is_sidon:
        assert bf.witness.validates(A)
        assert evaluate_form(bf.weight, A) == 0
        assert hp.witness.validates(A)
        assert evaluate_form(hp.weight, A) == 0
        assert bf.collision_sum == bf.witness.sums(A)[0]


def test_exhaustive_equivalence_small_grid():
    for h in (2, 3):
        for k in (3, 4):
            for A in combinations(range(11), k):
                assert verify_bruteforce(A, h).is_sidon == verify_hyperplane(A, h).is_sidon


@settings(max_examples=200)
@given(configs, st.integers(1, 4))
def test_order_monotone(A, h):
    if verify_bruteforce(A, h).is_sidon:
        for h1 in range(1, h):
            assert verify_bruteforce(A, h1).is_sidon


@settings(max_examples=200)
@given(configs, st.integers(1, 3), st.data())
def test_subset_closure(A, h, data):
    if verify_bruteforce(A, h).is_sidon:
        keep = data.draw(st.lists(st.booleans(), min_size=len(A), max_size=len(A)))
        sub = [a for a, k in zip(A, keep) if k]
        if sub:
            assert verify_bruteforce(sub, h).is_sidon


@given(configs)
def test_every_set_is_1_sidon(A):
    assert verify_bruteforce(A, 1).is_sidon
    assert verify_hyperplane(A, 1).is_sidon


@given(configs.filter(lambda A: len(A) == 2), st.integers(1, 6))
def test_pairs_always_sidon(A, h):
    assert verify_bruteforce(A, h).is_sidon


@settings(max_examples=150)
@given(
    configs,
    st.integers(1, 3),
    st.fractions(max_denominator=20).filter(lambda c: c != 0),
    st.fractions(max_denominator=20),
)
def test_affine_invariance(A, h, scale, shift):
    assert verify_bruteforce(A, h).is_sidon == verify_bruteforce(affine_image(A, scale, shift), h).is_sidon


def test_powers_family():
    for h in (2, 3, 4):
        A = [h**i for i in range(6)]
        assert verify_bruteforce(A, h).is_sidon
        assert not verify_bruteforce(A, h + 1).is_sidon
        v = verify_hyperplane(A, h + 1)
        assert not v.is_sidon and v.witness.validates(A)


def test_random_replay():
    rng = random.Random(7)
    for _ in range(200):
        A = list({F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rng.randint(2, 6))})
        h = rng.randint(2, 3)
        v = verify_bruteforce(A, h)
        if not v.is_sidon:
            su, sv = v.witness.sums(A)
            assert su == sv == v.collision_sum
