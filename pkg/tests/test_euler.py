import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from pseudofix import catalog
from pseudofix.complexes import GCWComplex, euler_characteristic
from pseudofix.errors import (
    CarrierNotFaceCompatible,
    ComponentMismatch,
    EmptySource,
    GlobalCongruenceFails,
    HypothesisFails,
    InvalidInput,
    NotRegular,
)
from pseudofix.euler import (
    CellularMap,
    DeficitVector,
    EulerProfile,
    Membership,
    MoveKind,
    apply_move,
    check_partition,
    closed_from_open,
    congruent,
    deficit_vector,
    is_euler_regular,
    ny_membership,
    open_from_closed,
    profile_from_map,
    rebalance_profile,
    solve_cone_system,
    solve_cone_system_dangling,
)


def _targets():
    return {
        "point": catalog.point(),
        "interval": catalog.interval(),
        "circle": catalog.circle(),
        "disk2": catalog.disk2(),
        "sphere2": catalog.sphere2(),
        "tree": catalog.simplicial([[0, 1], [1, 2], [1, 3], [3, 4]]),
        "lollipop": catalog.simplicial([[0, 1, 2], [2, 3], [3, 4]]),
        "bowtie": catalog.simplicial([[0, 1, 2], [2, 3, 4]]),
        "tetra_boundary": catalog.simplicial([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]),
        "theta": catalog.simplicial([[0, 1], [1, 2], [2, 0], [0, 3], [3, 2]]),
    }


TARGETS = _targets()


@pytest.mark.parametrize("name", sorted(TARGETS))
def test_targets_are_euler_regular(name):
    assert is_euler_regular(TARGETS[name])


def test_projective_plane_is_not_euler_regular():
    Y = catalog.projective_plane()
    assert not is_euler_regular(Y)
    P = EulerProfile(Y, {c: 1 for c in Y.ids})
    with pytest.raises(NotRegular):
        check_partition(P, 2)
    with pytest.raises(NotRegular):
        rebalance_profile(P, 2)


@pytest.mark.parametrize("name", sorted(TARGETS))
def test_open_closed_round_trip(name):
    Y = TARGETS[name]
    rng = random.Random(name)
    for _ in range(20):
        opens = oracles.random_profile_values(Y, rng)
        assert open_from_closed(Y, closed_from_open(Y, opens)) == opens


def _random_map(Y, rng, block, noise):
    cells, boundary, carrier = oracles.random_map_onto(Y, rng, block, noise)
    F = GCWComplex(cells, boundary)
    return F, CellularMap(F, Y, carrier)


@pytest.mark.parametrize("n", [0, 2, 3, 5])
def test_partition_lemma_on_random_maps(n):
    rng = random.Random(1000 + n)
    names = sorted(TARGETS)
    held = 0
    for trial in range(200):
        Y = TARGETS[names[trial % len(names)]]
        keep = trial % 2 == 0
        block = n if (keep and n) else 1
        noise = 0 if (keep and n == 0) else rng.randint(0, 3)
        F, f = _random_map(Y, rng, block, noise)
        P = profile_from_map(f)
        assert P.values == oracles.direct_closed_preimage_euler(Y, f.carrier, F.dims)
        chi_F = euler_characteristic(F.whole)
        if all(congruent(v, 1, n) for v in P.values.values()):
            held += 1
            rep = check_partition(P, n)
            assert rep.chi_source == chi_F
            assert rep.holds
            assert congruent(chi_F, euler_characteristic(Y.whole), n)
        else:
            with pytest.raises(HypothesisFails):
                check_partition(P, n)
    assert held >= 100


def test_incompatible_carrier_is_rejected():
    Y = catalog.interval()
    F = GCWComplex([(0, 0), (1, 0), (2, 1)], {2: [(1, 1), (0, -1)]})
    # the edge sits over vertex 0 but its end 1 is carried to vertex 1
    f = CellularMap(F, Y, {0: 0, 1: 1, 2: 0})
    assert f.incompatible_pairs() == [(2, 1)]
    with pytest.raises(CarrierNotFaceCompatible):
        profile_from_map(f)


@settings(max_examples=10_000, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_cone_system_substitution(ds, db):
    a, b = solve_cone_system(ds, db)
    assert a + 2 * b == ds
    assert a + 3 * b == db


@settings(max_examples=10_000, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_dangling_cone_system_substitution(ds, d0, d1):
    a, b, c = solve_cone_system_dangling(ds, d0, d1)
    assert a + 2 * b + c == ds
    assert a + 3 * b + c == d0
    assert c == d1


def _check_run(P, n, moves, final):
    Y = P.target
    opens = P.open_values()
    for m in moves:
        assert sum(m.increments.values()) == 0
        assert set(m.increments) <= set(Y.ids)
        opens = apply_move(opens, m)
    assert closed_from_open(Y, opens) == final.values
    assert all(congruent(v, 1, n) for v in final.values.values())
    assert final.total() == P.total()


@pytest.mark.parametrize("n", [0, 2, 3, 5])
def test_rebalance_succeeds_iff_global_congruence(n):
    rng = random.Random(77 + n)
    names = sorted(TARGETS)
    pos = neg = 0
    while pos < 100 or neg < 100:
        Y = TARGETS[names[rng.randrange(len(names))]]
        opens = oracles.random_profile_values(Y, rng)
        P = EulerProfile(Y, closed_from_open(Y, opens), nonempty=True)
        ok = congruent(P.total(), euler_characteristic(Y.whole), n)
        if ok and pos >= 100 or not ok and neg >= 100:
            continue
        if ok:
            pos += 1
            moves, final = rebalance_profile(P, n)
            _check_run(P, n, moves, final)
        else:
            neg += 1
            with pytest.raises(GlobalCongruenceFails):
                rebalance_profile(P, n)


def test_rebalance_emits_every_move_kind():
    seen = set()
    rng = random.Random(5)
    for name in ("disk2", "lollipop", "interval", "tree", "sphere2"):
        Y = TARGETS[name]
        for _ in range(30):
            opens = oracles.random_profile_values(Y, rng)
            opens[Y.ids[0]] += euler_characteristic(Y.whole) - sum(opens.values())
            P = EulerProfile(Y, closed_from_open(Y, opens), nonempty=True)
            moves, final = rebalance_profile(P, 0)
            _check_run(P, 0, moves, final)
            seen |= {m.kind for m in moves}
    assert seen == set(MoveKind)


def test_rebalance_no_moves_when_balanced():
    Y = TARGETS["disk2"]
    moves, final = rebalance_profile(EulerProfile(Y, {c: 1 for c in Y.ids}), 3)
    assert moves == []
    assert final.values == {c: 1 for c in Y.ids}


def test_rebalance_anchor_choice():
    Y = TARGETS["lollipop"]
    rng = random.Random(9)
    opens = oracles.random_profile_values(Y, rng)
    opens[Y.ids[0]] += 1 - sum(opens.values())
    P = EulerProfile(Y, closed_from_open(Y, opens))
    vertices = [c for c in Y.ids if Y.dims[c] == 0]
    for v in vertices:
        moves, final = rebalance_profile(P, 0, anchor=v)
        _check_run(P, 0, moves, final)
        assert all(m.anchor == v for m in moves)
    with pytest.raises(InvalidInput):
        rebalance_profile(P, 0, anchor=max(Y.ids))


def test_rebalance_rejects_empty_source_and_bad_targets():
    Y = TARGETS["interval"]
    with pytest.raises(EmptySource):
        rebalance_profile(EulerProfile(Y, {c: 0 for c in Y.ids}), 1)
    two_points = GCWComplex([(0, 0), (1, 0)])
    with pytest.raises(InvalidInput):
        rebalance_profile(EulerProfile(two_points, {0: 1, 1: 1}), 0)
    with pytest.raises(InvalidInput):
        EulerProfile(Y, {0: 1})


def test_deficit_vectors():
    Y = catalog.conjugation_circle()
    v = deficit_vector({0: 2, 1: 0}, Y)
    assert v.components == (0, 1)
    assert v.entries == (1, -1)
    assert v.total == 0
    assert (v + (-v)).entries == (0, 0)
    assert deficit_vector({0: None, 1: 1}, Y).entries == (-1, 0)
    with pytest.raises(ComponentMismatch):
        deficit_vector({0: 1}, Y)
    with pytest.raises(ComponentMismatch):
        v + DeficitVector((0, 2), (0, 0))


@pytest.mark.parametrize("entries,n,expected", [
    ((0, 0), 0, Membership.IN_LOWER_BOUND),
    ((1, -1), 0, Membership.IN_UPPER_BOUND_ONLY),
    ((1, 0), 0, Membership.OUTSIDE_UPPER_BOUND),
    ((2, 4), 2, Membership.IN_LOWER_BOUND),
    ((1, 1), 2, Membership.IN_UPPER_BOUND_ONLY),
    ((5, 7), 1, Membership.IN_LOWER_BOUND),
    ((1, 0), None, Membership.INDETERMINATE),
])
def test_membership(entries, n, expected):
    assert ny_membership(DeficitVector((0, 1), entries), n) is expected


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=5), st.integers(0, 7))
def test_membership_bounds_are_nested(entries, n):
    v = DeficitVector(tuple(range(len(entries))), tuple(entries))
    m = ny_membership(v, n)
    if m is Membership.IN_LOWER_BOUND:
        assert congruent(v.total, 0, n)
    if m is Membership.OUTSIDE_UPPER_BOUND:
        assert not all(congruent(x, 0, n) for x in entries)
