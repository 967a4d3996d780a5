from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudofix import catalog
from pseudofix.complexes import (
    GCWComplex,
    Subcomplex,
    chain_complex,
    components,
    delta_invariant,
    euler_characteristic,
    fixed_subcomplex,
    is_connected,
    is_regular,
    quotient_complex,
    subcomplex,
    subgroup_classes,
    validate,
)
from pseudofix.errors import InvalidComplex
from pseudofix.groups import all_subgroups
from pseudofix.homology import homology_integral

NAMES = sorted(catalog.COMPLEXES)


@pytest.mark.parametrize("name", NAMES)
def test_catalog_complexes_validate(name):
    report = validate(catalog.complex_(name))
    assert report.ok, report.violations


def _kinds(cells, boundary=None, action=None, group=None):
    return validate(GCWComplex(cells, boundary, action, group)).kinds()


def test_violations_are_reported_by_kind():
    z2 = catalog.group("z2")
    assert "face_dimension" in _kinds([(0, 0), (1, 2)], {1: [(0, 1)]})
    assert "unknown_face" in _kinds([(0, 1)], {0: [(9, 1)]})
    assert "boundary_squared" in _kinds([(0, 0), (1, 0), (2, 1), (3, 2)], {2: [(1, 1), (0, -1)], 3: [(2, 1)]})
    assert "not_admissible" in _kinds([(0, 0), (1, 1)], {1: [(0, 1), (0, -1)]}, {1: {1: (1, -1)}}, z2)
    assert "dimension_change" in _kinds([(0, 0), (1, 1)], None, {1: {0: (1, 1), 1: (0, 1)}}, z2)
    assert "not_a_permutation" in _kinds([(0, 0), (1, 0)], None, {1: {0: (1, 1)}}, z2)
    assert "bad_sign" in _kinds([(0, 0), (1, 0)], None, {1: {0: (1, 2), 1: (0, 2)}}, z2)
    z3 = catalog.group("z3")
    # the generator squared should be element 2, but element 2 is left as the identity
    assert "not_a_homomorphism" in _kinds([(0, 0), (1, 0), (2, 0)], None, {1: {0: (1, 1), 1: (2, 1), 2: (0, 1)}}, z3)
    # swapping the ends of an interval while fixing the edge with sign +1 breaks g∂ = ∂g
    assert "action_boundary" in _kinds(
        [(0, 0), (1, 0), (2, 1)], {2: [(1, 1), (0, -1)]}, {1: {0: (1, 1), 1: (0, 1)}}, z2
    )


def test_generator_action_rejects_inconsistency():
    z2 = catalog.group("z2")
    with pytest.raises(InvalidComplex):
        # the generator squared must be the identity on cells
        GCWComplex.from_generator_action([(0, 0), (1, 0), (2, 0)], {}, z2, {1: {0: (1, 1), 1: (2, 1), 2: (0, 1)}})


def test_square_cover_generated_action_is_complete():
    X = catalog.square_cover()
    r = X.action_of(2)
    assert r[0] == (2, 1)
    rs = X.action_of(3)
    assert rs[1] == (1, 1) and rs[3] == (3, 1)


def test_conjugation_circle_fixed_set_and_quotient():
    X = catalog.conjugation_circle()
    F = fixed_subcomplex(X, X.group.whole)
    assert F.cells == frozenset({0, 1})
    comps = components(F)
    assert [C.ids for C in comps] == [(0,), (1,)]
    assert delta_invariant(X, X.group.whole) == 2
    Q = quotient_complex(X, X.group.whole)
    assert [h.betti for h in homology_integral(chain_complex(Q.whole))] == [1, 0]
    assert euler_characteristic(Q.whole) == 1


def test_reflected_sphere_fixes_a_circle():
    X = catalog.reflected_sphere()
    F = fixed_subcomplex(X, X.group.whole)
    hom = homology_integral(chain_complex(F))
    assert [h.betti for h in hom] == [1, 1]
    assert is_connected(F)


def test_loop_edge_keeps_its_vertex():
    X = GCWComplex([(0, 0), (1, 1)], {1: [(0, 1), (0, -1)]})
    assert X.closures[1] == frozenset({0, 1})
    assert not X.boundary[1]
    assert is_connected(X.whole)
    S = subcomplex(X, [1])
    assert S.cells == frozenset({0, 1})


def test_subcomplex_algebra():
    X = catalog.disk2()
    A = subcomplex(X, [9])
    B = subcomplex(X, [10])
    assert A.is_face_closed() and B.is_face_closed()
    I = A.intersection(B)
    assert I.cells == A.cells & B.cells
    assert euler_characteristic(A.union(B)) == euler_characteristic(A) + euler_characteristic(B) - euler_characteristic(I)
    assert not Subcomplex(X, frozenset({9})).is_face_closed()


def test_regularity_flag():
    assert is_regular(catalog.disk2().whole)
    assert not is_regular(catalog.projective_plane().whole)


def _subgroup_cases():
    out = []
    for name in NAMES:
        X = catalog.complex_(name)
        for H in all_subgroups(X.group):
            out.append((name, H.elements))
    return out


@pytest.mark.parametrize("name,elements", _subgroup_cases())
def test_fixed_sets_by_brute_force(name, elements):
    X = catalog.complex_(name)
    H = X.group.subgroup(elements)
    F = fixed_subcomplex(X, H)
    expected = {c for c in X.ids if all(X.image(h, c) == c for h in H.elements)}
    assert F.cells == frozenset(expected)
    assert F.is_face_closed()
    # components partition the fixed cells and are pairwise disjoint
    parts = components(F)
    assert sorted(c for C in parts for c in C.cells) == sorted(expected)


@pytest.mark.parametrize("name", NAMES)
def test_orbit_counting_identities(name):
    X = catalog.complex_(name)
    G = X.group
    # χ(X) = Σ_(H) δ_H |G : H|
    total = sum(delta_invariant(X, H) * (G.order // H.order) for H in subgroup_classes(G, all_subgroups(G)))
    assert total == euler_characteristic(X.whole)
    # χ(X/G) = (1/|G|) Σ_g χ(X^g)
    avg = Fraction(sum(euler_characteristic(fixed_subcomplex(X, G.generated([g]))) for g in range(G.order)), G.order)
    orbits = sum((-1) ** X.dims[o[0]] for o in X.orbits())
    assert avg == orbits


def test_orbits_and_stabilizers():
    X = catalog.square_cover()
    for c in X.ids:
        assert len(X.orbit(c)) * X.stabilizer(c).order == X.group.order


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_fixed_sets_shrink_with_the_subgroup(name, data):
    X = catalog.complex_(name)
    subs = all_subgroups(X.group)
    H = data.draw(st.sampled_from(subs))
    K = data.draw(st.sampled_from(subs))
    J = X.group.generated(list(H.elements) + list(K.elements))
    assert fixed_subcomplex(X, J).cells == fixed_subcomplex(X, H).cells & fixed_subcomplex(X, K).cells
