import pytest

from flatlab.abelian import AbGroup, AbHom, IntMatrix, ab_from_invariants
from flatlab.catalog import (
    cyclic,
    dihedral,
    elementary_abelian,
    product,
    quaternion,
    symmetric,
    trivial_group,
)
from flatlab.errors import FlatlabError, UnsupportedFunctorError
from flatlab.functors import (
    Abelianization,
    NilpotentQuotient,
    Nullification,
    QuasiVarietyReflection,
    SpSubfunctor,
    TestMap,
    Variety,
    apply,
    idempotency_check,
    induce,
    is_acyclic,
    is_local_wrt,
    radical_subgroup,
    standard_quasi_c4_c2,
)
from flatlab.permgroup import GroupHom, is_isomorphic, quotient
from flatlab.verbal import derived_subgroup, lower_central_series
from flatlab.words import Presentation, Word, parse_word

PHI, QUASI = standard_quasi_c4_c2()


def test_quasivariety_on_c4_gives_c2():
    L = apply(QUASI, cyclic(4))
    assert L.result.order() == 2
    assert L.radical.order() == 2


def test_abelianization_of_abelian_is_bijective():
    G = product(cyclic(2), cyclic(4))
    L = apply(Abelianization(), G)
    assert L.result.order() == G.order()
    assert L.eta.is_bijective()


def test_nullification_of_s3_at_c3():
    # the images of all maps from C3 generate the rotation subgroup; the
    # quotient C2 admits only the trivial map from C3
    L = apply(Nullification(cyclic(3).presentation), symmetric(3))
    assert L.result.order() == 2
    assert L.radical.order() == 3


def test_nullification_stops_at_local_quotient():
    from flatlab.homs import hom_count

    L = apply(Nullification(cyclic(3).presentation), symmetric(3))
    assert hom_count(cyclic(3).presentation, L.result) == 1


def test_epireflection_order_divides():
    for G in (dihedral(8), quaternion(8), symmetric(4)):
        for F in (Abelianization(), NilpotentQuotient(2), QUASI):
            L = apply(F, G)
            assert G.order() % L.result.order() == 0
            assert L.eta.image().order() == L.result.order()


def test_sp_subfunctor_inclusion():
    L = apply(SpSubfunctor(2), dihedral(8))
    assert L.result.order() == 8
    assert L.kind == "subfunctor"
    L2 = apply(SpSubfunctor(2), cyclic(4))
    assert L2.result.order() == 2


def test_induce_abelianization_of_central_quotient_is_iso():
    D8 = dihedral(8)
    Q, proj = quotient(D8, derived_subgroup(D8))
    ind = induce(Abelianization(), proj)
    assert ind.is_bijective()
    assert ind.domain.order() == 4


def test_induce_identity_is_identity():
    D8 = dihedral(8)
    ind = induce(NilpotentQuotient(2), GroupHom.identity_hom(D8))
    assert ind.is_bijective()
    assert all(ind.apply(x) == x for x in ind.domain.elements())


def test_induce_sp_on_inclusion():
    C4, C2 = cyclic(4), cyclic(2)
    x = C4.generators[0]
    incl = GroupHom(C2, C4, (x * x,))
    ind = induce(SpSubfunctor(2), incl)
    assert ind.domain.order() == 2
    assert ind.codomain.order() == 2
    assert ind.is_bijective()


def test_locality_reference_values():
    Z = ab_from_invariants(1, (), name="Z")
    ZxZ2 = ab_from_invariants(1, (2,), name="ZxZ2")
    C4 = AbGroup(1, IntMatrix([[4]]), name="C4")
    assert is_local_wrt(Z, PHI).is_local
    assert is_local_wrt(ZxZ2, PHI).is_local
    rep = is_local_wrt(C4, PHI)
    assert not rep.is_local
    assert (rep.hom_count_b, rep.hom_count_a) == (2, 4)
    assert rep.witness is not None


def test_locality_perm_route():
    # a permutation group is local for the C4 -> C2 map iff it has no
    # element of order exactly 4
    assert is_local_wrt(elementary_abelian(2, 2), PHI).is_local
    assert not is_local_wrt(cyclic(8), PHI).is_local
    assert is_local_wrt(symmetric(3), PHI).is_local


def test_reflection_lands_in_local_groups():
    from flatlab.catalog import default_battery

    for G in default_battery(16):
        R = apply(QUASI, G).result
        assert is_local_wrt(R, PHI).is_local, G.name


def test_quasivariety_fixed_point():
    for G in (cyclic(8), quaternion(8), dihedral(16)):
        R = apply(QUASI, G).result
        ident = R.identity()
        for g in R.elements():
            if (g**4).is_identity():
                assert (g**2).is_identity()


def test_acyclicity():
    assert is_acyclic(Abelianization(), trivial_group())
    assert is_acyclic(Nullification(cyclic(2).presentation), dihedral(8))
    assert not is_acyclic(Abelianization(), cyclic(4))
    with pytest.raises(UnsupportedFunctorError):
        is_acyclic(SpSubfunctor(2), dihedral(8))


def test_idempotency_variety_vs_nullification():
    D8 = dihedral(8)
    var = idempotency_check(Variety((Word.lcs_word(1),)), D8)
    assert (var.first_order, var.second_order, var.idempotent) == (2, 1, False)
    abelian_case = idempotency_check(Abelianization(), product(cyclic(2), cyclic(4)))
    assert abelian_case.idempotent  # WG trivial for abelian groups
    nul = idempotency_check(Nullification(cyclic(2).presentation), D8)
    assert nul.idempotent


def test_abelian_functor_applications():
    C4 = AbGroup(1, IntMatrix([[4]]), name="C4")
    Z = ab_from_invariants(1, ())
    # quasi-variety localization of C4 is C2; Z is already local
    L = apply(QUASI, C4)
    assert L.result.canonical_invariants() == (0, (2,))
    assert apply(QUASI, Z).result.canonical_invariants() == (1, ())
    # power-word variety: the exponent-2 reflection
    V = Variety((parse_word("x1^2"),))
    assert apply(V, C4).result.canonical_invariants() == (0, (2,))
    # commutator words act trivially on abelian groups
    assert apply(Abelianization(), C4).result.canonical_invariants() == (0, (4,))
    assert apply(NilpotentQuotient(2), C4).eta.is_injective()
    # S_p is the p-torsion subgroup
    A = ab_from_invariants(1, (4,))
    T = apply(SpSubfunctor(2), A)
    assert T.result.canonical_invariants() == (0, (2,))
    # nullification at C2 kills the whole 2-primary tower
    N = apply(Nullification(cyclic(2).presentation), C4)
    assert N.result.is_trivial()
    NZ = apply(Nullification(cyclic(2).presentation), ab_from_invariants(1, (2,)))
    assert NZ.result.canonical_invariants() == (1, ())


def test_abelian_nullification_needs_cyclic_target():
    A = ab_from_invariants(1, ())
    with pytest.raises(UnsupportedFunctorError):
        apply(Nullification(elementary_abelian(2, 2).presentation), A)


def test_nullification_target_generator_cap():
    with pytest.raises(UnsupportedFunctorError):
        Nullification(elementary_abelian(2, 4).presentation)


def test_test_map_validation():
    x = Word.generator(0)
    with pytest.raises(ValueError):
        # x -> y where y^3 = 1 does not kill x^4
        TestMap(
            Presentation(("x",), (x**4,)),
            Presentation(("y",), (x**3,)),
            (x,),
        )


def test_radical_memoized_and_consistent_with_apply():
    G = dihedral(16)
    for F in (Abelianization(), NilpotentQuotient(2), QUASI,
              Nullification(cyclic(2).presentation)):
        R = radical_subgroup(F, G)
        L = apply(F, G)
        assert R.element_set() == L.radical.element_set()


def test_class_one_nilpotent_quotient_is_abelianization():
    # the class-indexing convention: quotient by lcs(1) = the commutator
    # subgroup, i.e. class 1 reproduces abelianization exactly
    for G in (dihedral(8), quaternion(8), symmetric(4)):
        a = apply(Abelianization(), G)
        n = apply(NilpotentQuotient(1), G)
        assert a.radical.element_set() == n.radical.element_set()
        assert a.result.order() == n.result.order()


def test_sp_naturality_property():
    # order-p elements map to order-p-or-trivial elements
    D8 = dihedral(8)
    Q, proj = quotient(D8, derived_subgroup(D8))
    S_dom = apply(SpSubfunctor(2), D8).result
    S_cod = apply(SpSubfunctor(2), Q).result
    cod_set = S_cod.element_set()
    for x in S_dom.elements():
        assert proj.apply(x) in cod_set
