import pytest

from flatlab.caps import Caps
from flatlab.catalog import (
    alternating,
    cyclic,
    dihedral,
    elementary_abelian,
    product,
    quaternion,
    symmetric,
    trivial_group,
)
from flatlab.errors import (
    CapExceededError,
    NotASubgroupError,
    NotNormalError,
    NotSurjectiveError,
)
from flatlab.perm import Permutation, parse_cycle_string
from flatlab.permgroup import (
    GroupHom,
    PermGroup,
    abelian_census_invariants,
    is_isomorphic,
    is_normal,
    normal_closure,
    normal_subgroups,
    pullback_group,
    quotient,
    small_generating_set,
)
from flatlab.verbal import derived_subgroup


def test_enumerate_trivial():
    assert trivial_group().order() == 1


def test_enumerate_d8_with_relator_cross_check():
    # exhaustive closure, cross-checked against the relator set
    x = parse_cycle_string("(0 1 2 3)", 4)
    y = parse_cycle_string("(1 3)", 4)
    G = PermGroup(4, (x, y))
    assert G.order() == 8
    ident = Permutation.identity(4)
    assert (x**4) == ident and (y**2) == ident and (y * x * y * x) == ident


def test_enumerate_s4_a5():
    assert symmetric(4).order() == 24
    assert alternating(5).order() == 60


def test_order_cap_reports_partial():
    with pytest.raises(CapExceededError) as exc:
        cyclic_big = PermGroup(16, (parse_cycle_string("(0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15)", 16),))
        cyclic_big.elements(Caps(order=5))
    assert exc.value.partial == 5


def test_normal_closure_empty():
    D8 = dihedral(8)
    assert normal_closure(D8, []).order() == 1


def test_normal_closure_reflection():
    D8 = dihedral(8)
    y = D8.generators[1]
    N = normal_closure(D8, [y])
    assert N.order() == 4
    assert is_normal(N, D8)


def test_normal_closure_abelian_is_generated_subgroup():
    G = product(cyclic(2), cyclic(4))
    g = G.generators[1]
    N = normal_closure(G, [g])
    assert sorted(N.elements()) == sorted(
        G.subgroup((g,)).elements()
    )


def test_normal_closure_outside_element():
    D8 = dihedral(8)
    with pytest.raises(NotASubgroupError):
        normal_closure(D8, [parse_cycle_string("(0 1)", 4)])


def test_quotient_by_trivial_and_full():
    D8 = dihedral(8)
    triv = D8.subgroup(())
    Q, proj = quotient(D8, triv)
    assert Q.order() == 8
    assert is_isomorphic(Q, D8)
    Q2, _ = quotient(D8, D8)
    assert Q2.order() == 1


def test_quotient_d8_center():
    D8 = dihedral(8)
    Z = derived_subgroup(D8)  # = the center, order 2
    Q, proj = quotient(D8, Z)
    assert Q.order() == 4
    assert Q.order_histogram() == {1: 1, 2: 3}
    assert proj.kernel().order() == 2


def test_quotient_requires_normal():
    D8 = dihedral(8)
    y = D8.generators[1]
    H = D8.subgroup((y,))
    with pytest.raises(NotNormalError):
        quotient(D8, H)


def test_kernel_image_identity_and_trivial():
    D8 = dihedral(8)
    ident = GroupHom.identity_hom(D8)
    assert ident.kernel().order() == 1
    assert ident.image().order() == 8
    triv = GroupHom(D8, trivial_group(), tuple(Permutation.identity(1) for _ in D8.generators))
    assert triv.kernel().order() == 8


def test_kernel_order_product():
    D8 = dihedral(8)
    Q, proj = quotient(D8, derived_subgroup(D8))
    assert proj.kernel().order() * proj.image().order() == D8.order()


def test_pullback_along_identity():
    D8 = dihedral(8)
    Q, proj = quotient(D8, derived_subgroup(D8))
    P, pre, prx = pullback_group(proj, GroupHom.identity_hom(Q))
    assert is_isomorphic(P, D8)


def test_pullback_with_trivial_leg_is_kernel():
    D8 = dihedral(8)
    Q, proj = quotient(D8, derived_subgroup(D8))
    one = trivial_group()
    triv = GroupHom(one, Q, ())
    P, pre, prx = pullback_group(proj, triv)
    assert is_isomorphic(P, proj.kernel())


def test_pullback_of_d8_along_rotation_image_is_c4():
    D8 = dihedral(8)
    Q, proj = quotient(D8, derived_subgroup(D8))
    xbar = proj.apply(D8.generators[0])
    incl = GroupHom(cyclic(2), Q, (xbar,))
    P, _, prx = pullback_group(proj, incl)
    assert P.order() == 4
    assert is_isomorphic(P, cyclic(4))
    # direct count of the fiber pairs
    count = sum(
        1
        for e in D8.elements()
        for x in cyclic(2).elements()
        if proj.apply(e) == incl.apply(x)
    )
    assert P.order() == count


def test_pullback_with_two_non_surjective_legs():
    # fiber product of two subgroup inclusions is their intersection
    V4 = elementary_abelian(2, 2)
    a, b = V4.generators
    C2 = cyclic(2)
    inc_a = GroupHom(C2, V4, (a,))
    inc_b = GroupHom(C2, V4, (b,))
    P_same, _, _ = pullback_group(inc_a, inc_a)
    assert P_same.order() == 2  # the diagonal copy
    P_diff, _, _ = pullback_group(inc_a, inc_b)
    assert P_diff.order() == 1


def test_is_isomorphic_basics():
    D8 = dihedral(8)
    assert is_isomorphic(D8, D8)
    assert not is_isomorphic(cyclic(4), elementary_abelian(2, 2))
    assert not is_isomorphic(D8, quaternion(8))
    assert is_isomorphic(symmetric(3), dihedral(6))


def test_is_isomorphic_cap():
    # non-abelian groups above the cap get an explicit error, never a guess
    big = product(dihedral(16), dihedral(16))
    with pytest.raises(CapExceededError):
        is_isomorphic(big, big)
    # abelian groups are decided exactly from invariants at any order
    assert is_isomorphic(product(cyclic(64), cyclic(4)), product(cyclic(4), cyclic(64)))


def test_normal_subgroup_counts():
    assert len(normal_subgroups(dihedral(8))) == 6
    assert len(normal_subgroups(symmetric(4))) == 4
    assert len(normal_subgroups(alternating(5))) == 2
    assert len(normal_subgroups(quaternion(8))) == 6
    assert len(normal_subgroups(elementary_abelian(2, 2))) == 5


def test_census_invariants():
    assert abelian_census_invariants(cyclic(4)) == (0, (4,))
    assert abelian_census_invariants(elementary_abelian(2, 2)) == (0, (2, 2))
    assert abelian_census_invariants(product(cyclic(2), cyclic(4))) == (0, (2, 4))
    assert abelian_census_invariants(trivial_group()) == (0, ())


def test_small_generating_set():
    G = elementary_abelian(2, 3)
    gens = small_generating_set(G.elements(), G.degree)
    assert len(gens) == 3
    assert G.subgroup(gens).order() == 8


def test_hom_verification_rejects_non_hom():
    from flatlab.errors import InvalidHomomorphismError

    C4 = cyclic(4)
    C2 = cyclic(2)
    with pytest.raises(InvalidHomomorphismError):
        # x has order 4; sending it to an order-4 element of C4 from C2 domain
        GroupHom(C2, C4, (C4.generators[0],))


def test_hom_via_edge_check_without_presentation():
    # a bare permutation group domain goes through the elementwise check
    x = parse_cycle_string("(0 1 2 3)", 4)
    G = PermGroup(4, (x,))
    C2 = cyclic(2)
    hom = GroupHom(G, C2, (C2.generators[0],))
    assert hom.apply(x * x).is_identity()
