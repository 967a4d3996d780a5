import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from pseudofix import catalog
from pseudofix.errors import InconsistentOverride, IndicesNotCoprime, PrimePowerOrder
from pseudofix.groups import FiniteGroup, is_prime_power_or_trivial, relabel
from pseudofix.oliver import (
    OliverClass,
    OliverTag,
    _coset_cyclic,
    classify,
    degree_zero_coefficients,
    effective_modulus,
    extended_gcd,
    sylow_normalizer_indices,
)

COMPOSITE = ["z6", "z12", "s3", "d10", "a4", "d12", "s4", "d20", "a5", "z2xs3", "z3xs3"]


def _check_witness(G, cls):
    if cls.tag is OliverTag.ZERO:
        (P,) = cls.witness
        assert P.is_normal_in()
        assert is_prime_power_or_trivial(P.order)
        assert _coset_cyclic(G, P, G.whole)
    elif cls.tag is OliverTag.NONTRIVIAL_UNKNOWN:
        P, H = cls.witness
        assert P <= H and H.is_normal_in() and P.is_normal_in(H)
        assert is_prime_power_or_trivial(P.order)
        assert is_prime_power_or_trivial(G.order // H.order)
        assert _coset_cyclic(G, P, H)
    else:
        assert cls.witness is None


@pytest.mark.parametrize("name", COMPOSITE)
def test_classification_matches_exhaustive_search(name):
    G = catalog.group(name)
    cls = classify(G)
    assert cls.tag.value == oracles.oliver_tag(G.mul)
    _check_witness(G, cls)


@pytest.mark.parametrize("name,tag", [("z6", "Zero"), ("s3", "Zero"), ("a5", "One"), ("s4", "NontrivialUnknown")])
def test_reference_classes(name, tag):
    assert classify(catalog.group(name)).tag.value == tag


def test_s4_witness_is_klein_inside_a4():
    G = catalog.group("s4")
    P, H = classify(G).witness
    assert P.order == 4 and P.is_normal_in()
    assert all(G.element_order(x) <= 2 for x in P.elements)
    assert H.order == 12 and H.is_normal_in()


@pytest.mark.parametrize("name", ["z6", "s3", "a5", "s4", "d10", "a4"])
def test_invariant_under_relabeling(name):
    G = catalog.group(name)
    tag = classify(G).tag
    rng = random.Random(name)
    for _ in range(20):
        _, perm, _ = oracles.random_relabel(G.mul, rng)
        H = relabel(G, perm)
        c = classify(H)
        assert c.tag is tag
        _check_witness(H, c)


@pytest.mark.parametrize("name", ["z2", "z4", "klein", "d8", "trivial", "z3"])
def test_prime_power_orders_rejected(name):
    with pytest.raises(PrimePowerOrder):
        classify(catalog.group(name))


def test_m_g_reporting():
    assert classify(catalog.group("z6")).m_G == 0
    assert classify(catalog.group("a5")).m_G == 1
    assert classify(catalog.group("s4")).m_G is None


@pytest.mark.parametrize("name,expected", [
    ("s3", [(2, 3), (3, 1)]),
    ("a5", [(2, 5), (3, 10), (5, 6)]),
    ("z6", [(2, 1), (3, 1)]),
])
def test_sylow_normalizer_indices(name, expected):
    assert sylow_normalizer_indices(catalog.group(name)) == expected


@pytest.mark.parametrize("name", COMPOSITE)
def test_sylow_indices_against_oracle(name):
    G = catalog.group(name)
    idx = sylow_normalizer_indices(G)
    assert idx == oracles.sylow_indices(G.mul)
    ms = [m for _, m in idx]
    assert oracles.gcd_list(ms) == 1
    a = degree_zero_coefficients(ms)
    assert 1 + sum(x * m for x, m in zip(a, ms)) == 0


def test_degree_zero_examples():
    assert degree_zero_coefficients([1]) == [-1]
    for ms in ([5, 10, 6], [2, 3], [6, 10, 15]):
        a = degree_zero_coefficients(ms)
        assert 1 + sum(x * m for x, m in zip(a, ms)) == 0


def test_degree_zero_errors():
    for bad in ([], [2, 4], [0, 1], [-1]):
        with pytest.raises(IndicesNotCoprime):
            degree_zero_coefficients(bad)


@given(st.lists(st.integers(1, 10**6), min_size=1, max_size=6))
def test_degree_zero_substitution(ms):
    if oracles.gcd_list(ms) != 1:
        with pytest.raises(IndicesNotCoprime):
            degree_zero_coefficients(ms)
        return
    a = degree_zero_coefficients(ms)
    assert len(a) == len(ms)
    assert 1 + sum(x * m for x, m in zip(a, ms)) == 0


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_extended_gcd(a, b):
    g, x, y = extended_gcd(a, b)
    assert g == gcd(a, b)
    assert x * a + y * b == g


def test_effective_modulus():
    zero, one = OliverClass(OliverTag.ZERO, None), OliverClass(OliverTag.ONE)
    unknown = OliverClass(OliverTag.NONTRIVIAL_UNKNOWN, None)
    assert effective_modulus(zero) == 0
    assert effective_modulus(one) == 1
    assert effective_modulus(unknown) is None
    assert effective_modulus(unknown, 6) == 6
    assert effective_modulus(one, 1) == 1
    with pytest.raises(InconsistentOverride):
        effective_modulus(one, 2)
    with pytest.raises(InconsistentOverride):
        effective_modulus(zero, 3)
    with pytest.raises(InconsistentOverride):
        effective_modulus(unknown, -1)


def test_classify_from_permutations():
    A5 = FiniteGroup.from_permutation_generators(5, [[1, 2, 0, 3, 4], [0, 1, 3, 4, 2]])
    assert A5.order == 60
    assert classify(A5).tag is OliverTag.ONE
