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
from flatlab.errors import FlatlabError, FlavorMismatchError, NotSurjectiveError
from flatlab.extensions import (
    Extension,
    certify_prop44,
    check_flatness,
    check_right_exactness,
    extension_from_normal_subgroup,
    extensions_from_group,
    from_surjection,
    induced_sequence,
    probe_conditional_flatness,
    pullback_extension,
)
from flatlab.functors import (
    Abelianization,
    NilpotentQuotient,
    Nullification,
    SpSubfunctor,
    Variety,
    standard_quasi_c4_c2,
)
from flatlab.permgroup import GroupHom, is_isomorphic, quotient
from flatlab.verbal import derived_subgroup
from flatlab.words import Word, parse_word

PHI, QUASI = standard_quasi_c4_c2()


def central_dihedral_extension():
    D8 = dihedral(8)
    return extension_from_normal_subgroup(D8, derived_subgroup(D8))


def integers_mod_two_extension():
    Z = ab_from_invariants(1, (), name="Z")
    Z2 = ab_from_invariants(0, (2,), name="Z/2")
    red = AbHom(Z, Z2, IntMatrix([[1]]))
    return from_surjection(red, name="Z -> Z -> Z/2")


def test_from_surjection_identity():
    D8 = dihedral(8)
    ext = from_surjection(GroupHom.identity_hom(D8))
    assert ext.kernel_group.order() == 1


def test_from_surjection_dihedral():
    ext = central_dihedral_extension()
    assert ext.kernel_group.order() == 2
    assert ext.total.order() == 8
    assert ext.base.order() == 4
    assert ext.base.order_histogram() == {1: 1, 2: 3}


def test_from_surjection_abelian():
    ext = integers_mod_two_extension()
    assert ext.kernel_group.canonical_invariants() == (1, ())
    assert ext.total.canonical_invariants() == (1, ())
    assert ext.base.canonical_invariants() == (0, (2,))


def test_from_surjection_rejects_non_surjective():
    C4, C2 = cyclic(4), cyclic(2)
    x = C4.generators[0]
    incl = GroupHom(C2, C4, (x * x,))
    with pytest.raises(NotSurjectiveError):
        from_surjection(incl)


def test_extension_rejects_mixed_flavors():
    D8 = dihedral(8)
    Q, proj = quotient(D8, derived_subgroup(D8))
    Z = ab_from_invariants(1, ())
    with pytest.raises((FlavorMismatchError, FlatlabError)):
        Extension(AbHom.identity_hom(Z), proj)


def test_pullback_extension_identity_leg():
    ext = central_dihedral_extension()
    pulled = pullback_extension(ext, GroupHom.identity_hom(ext.base))
    assert is_isomorphic(pulled.extension.total, ext.total)
    assert pulled.extension.kernel_group.order() == ext.kernel_group.order()


def test_pullback_extension_produces_c4_case():
    ext = central_dihedral_extension()
    xbar = ext.proj.apply(dihedral(8).generators[0])
    incl = GroupHom(cyclic(2), ext.base, (xbar,))
    pulled = pullback_extension(ext, incl)
    assert pulled.extension.kernel_group.order() == 2
    assert pulled.extension.total.order() == 4
    assert is_isomorphic(pulled.extension.total, cyclic(4))
    assert pulled.extension.base.order() == 2


def test_pullback_extension_thm41_data():
    ext = integers_mod_two_extension()
    C4 = AbGroup(1, IntMatrix([[4]]), name="C4")
    phi = AbHom(C4, ext.base, IntMatrix([[1]]))
    pulled = pullback_extension(ext, phi)
    assert pulled.extension.total.canonical_invariants() == (1, (2,))
    assert pulled.extension.kernel_group.canonical_invariants() == (1, ())
    assert pulled.extension.base.canonical_invariants() == (0, (4,))


def test_flatness_abelianization_of_central_extension():
    # kernel generator lands in the commutator subgroup: left flag fails
    rep = check_flatness(Abelianization(), central_dihedral_extension())
    assert not rep.is_flat
    assert not rep.left_injective
    assert rep.middle_exact
    assert rep.right_surjective
    assert "left" in rep.witnesses


def test_flatness_quasivariety_on_local_extension():
    rep = check_flatness(QUASI, integers_mod_two_extension())
    assert rep.is_flat


def test_flatness_quasivariety_on_pulled_extension_fails_middle():
    ext = integers_mod_two_extension()
    C4 = AbGroup(1, IntMatrix([[4]]), name="C4")
    phi = AbHom(C4, ext.base, IntMatrix([[1]]))
    pulled = pullback_extension(ext, phi)
    rep = check_flatness(QUASI, pulled.extension)
    assert not rep.is_flat
    assert rep.left_injective
    assert not rep.middle_exact
    assert rep.right_surjective
    assert "middle" in rep.witnesses


def test_right_exactness_of_central_extension():
    rex = check_right_exactness(Abelianization(), central_dihedral_extension())
    assert rex.is_right_exact


def test_right_exactness_various():
    for ext in extensions_from_group(symmetric(4)):
        for F in (Abelianization(), NilpotentQuotient(2)):
            assert check_right_exactness(F, ext).is_right_exact


def test_right_exactness_subfunctor_rejected():
    with pytest.raises(FlatlabError):
        check_right_exactness(SpSubfunctor(2), central_dihedral_extension())


def test_trivial_extension_right_exact():
    D8 = dihedral(8)
    ext = extension_from_normal_subgroup(D8, D8.subgroup(()))
    assert check_right_exactness(Abelianization(), ext).is_right_exact


def test_s2_flatness_of_central_extension_and_pullback():
    ext = central_dihedral_extension()
    assert check_flatness(SpSubfunctor(2), ext).is_flat
    xbar = ext.proj.apply(dihedral(8).generators[0])
    incl = GroupHom(cyclic(2), ext.base, (xbar,))
    pulled = pullback_extension(ext, incl)
    rep = check_flatness(SpSubfunctor(2), pulled.extension)
    assert not rep.is_flat
    assert rep.left_injective and rep.middle_exact
    assert not rep.right_surjective
    assert "right" in rep.witnesses


def test_induced_sequence_objects():
    seq = induced_sequence(Abelianization(), central_dihedral_extension())
    assert seq.left_group.order() == 2
    assert seq.middle_group.order() == 4
    assert seq.right_group.order() == 4
    seq_ab = induced_sequence(QUASI, integers_mod_two_extension())
    assert seq_ab.middle_group.canonical_invariants() == (1, ())


def test_probe_finds_dihedral_counterexample():
    ext = central_dihedral_extension()
    probe = probe_conditional_flatness(SpSubfunctor(2), ext, [cyclic(2)])
    assert len(probe.entries) == 4
    assert len(probe.counterexamples()) == 1


def test_probe_abelianization_all_flat():
    G = product(cyclic(2), cyclic(4))
    N = G.subgroup_from_elements(
        {e for e in G.elements() if all(e.images[i] == i for i in range(2, 6))}
    )
    ext = extension_from_normal_subgroup(G, N)
    probe = probe_conditional_flatness(
        Abelianization(), ext, [trivial_group(), cyclic(2), cyclic(4), elementary_abelian(2, 2)]
    )
    assert probe.all_pullbacks_flat


def test_probe_trivial_catalog():
    ext = central_dihedral_extension()
    probe = probe_conditional_flatness(SpSubfunctor(2), ext, [trivial_group()])
    assert len(probe.entries) == 1
    assert probe.all_pullbacks_flat


def test_probe_requires_flat_base():
    ext = central_dihedral_extension()
    with pytest.raises(FlatlabError):
        probe_conditional_flatness(Abelianization(), ext, [cyclic(2)])
    probe = probe_conditional_flatness(
        Abelianization(), ext, [cyclic(2)], allow_nonflat_base=True
    )
    assert not probe.base_flat


def test_certify_thm41_data():
    Z = ab_from_invariants(1, (), name="Z")
    C4 = AbGroup(1, IntMatrix([[4]]), name="C4")
    Z2 = ab_from_invariants(0, (2,), name="Z/2")
    red = AbHom(Z, Z2, IntMatrix([[1]]))
    cert = certify_prop44(PHI, QUASI, C4, Z, red)
    assert cert.all_hypotheses_hold()
    assert cert.pullback_description == "rank 1, torsion [2]"
    assert cert.pullback_local.is_local
    assert cert.conclusion_asserted
    assert cert.source_flatness.is_flat


def test_certify_identity_localization_fails_hypothesis():
    # a group that is already local: eta is an isomorphism, hypothesis fails
    Z = ab_from_invariants(1, (), name="Z")
    Z2 = ab_from_invariants(0, (2,), name="Z/2")
    red = AbHom(Z, Z2, IntMatrix([[1]]))
    cert = certify_prop44(PHI, QUASI, Z2, Z, red)
    assert not cert.hypotheses["eta_non_identity"]
    assert not cert.conclusion_asserted


def test_certify_nonlocal_e_fails_hypothesis():
    C4 = AbGroup(1, IntMatrix([[4]]), name="C4")
    ident = AbHom.identity_hom(C4)
    # E = C4 is not local; use C4 ->> L(C4) = C2 as the surjection
    cert = certify_prop44(PHI, QUASI, C4, C4, AbHom(C4, ab_from_invariants(0, (2,)), IntMatrix([[1]])))
    assert not cert.hypotheses["E_local"]
    assert not cert.conclusion_asserted


def test_pullback_functoriality_up_to_iso():
    # pulling back along f o g agrees with pulling back in two steps
    ext = central_dihedral_extension()
    V4 = ext.base
    C2 = cyclic(2)
    xbar = ext.proj.apply(dihedral(8).generators[0])
    f = GroupHom(C2, V4, (xbar,))
    one = trivial_group()
    g = GroupHom(one, C2, ())
    once = pullback_extension(ext, GroupHom(one, V4, ()))
    twice = pullback_extension(pullback_extension(ext, f).extension, g)
    assert is_isomorphic(once.extension.total, twice.extension.total)


def test_extensions_from_group_counts():
    assert len(extensions_from_group(dihedral(8))) == 6
    assert len(extensions_from_group(quaternion(8))) == 6


def test_pullback_along_localization_reproduces_counterexample():
    from flatlab.extensions import pullback_along_localization

    # the thm-4.1 pullback IS the pullback along the localization map of C4
    ext = integers_mod_two_extension()
    C4 = AbGroup(1, IntMatrix([[4]]), name="C4")
    pulled = pullback_along_localization(QUASI, ext, C4)
    assert pulled.extension.total.canonical_invariants() == (1, (2,))
    assert not check_flatness(QUASI, pulled.extension).is_flat


def test_abelian_subfunctor_flatness():
    # torsion restriction of Z/2 -> Z/4 -> Z/2 fails right surjectivity,
    # mirroring the permutation-flavor order-4 counterexample
    C2 = ab_from_invariants(0, (2,), name="Z/2")
    C4 = AbGroup(1, IntMatrix([[4]]), name="Z/4")
    proj = AbHom(C4, C2, IntMatrix([[1]]))
    ext = from_surjection(proj)
    rep = check_flatness(SpSubfunctor(2), ext)
    assert not rep.is_flat
    assert rep.left_injective and rep.middle_exact
    assert not rep.right_surjective
    # and the flat direction: Z -> Z -> Z/2 has an exact torsion restriction
    flat_rep = check_flatness(SpSubfunctor(2), integers_mod_two_extension())
    assert not flat_rep.right_surjective  # 0 -> 0 -> Z/2 is not onto either


def test_probe_abelian_extension_with_perm_test_groups():
    ext = integers_mod_two_extension()
    probe = probe_conditional_flatness(QUASI, ext, [trivial_group(), cyclic(2)])
    assert probe.all_pullbacks_flat
    assert len(probe.entries) == 3  # 1 trivial hom + 2 maps from C2
    with pytest.raises(FlavorMismatchError):
        probe_conditional_flatness(QUASI, ext, [symmetric(3)])


def test_certify_perm_flavor_reports_hypothesis_failures():
    # with the C4 -> C2 test map no finite group can satisfy every
    # hypothesis (a surjection onto C2 forces even order, hence an
    # involution, hence a nontrivial map from C2); the certificate must
    # report the failure and withhold the conclusion
    from flatlab.permgroup import GroupHom

    C8 = cyclic(8)
    D8 = dihedral(8)
    # the localization of C8 is C2; rebase a surjection D8 ->> C2 onto it
    surj = GroupHom(D8, cyclic(2), (cyclic(2).generators[0], cyclic(2).identity()))
    cert = certify_prop44(PHI, QUASI, C8, D8, surj)
    assert not cert.hypotheses["kernel_local"]  # radical of C8 is C4
    assert not cert.hypotheses["hom_B_E_trivial"]
    assert not cert.conclusion_asserted


def test_induced_sequence_subfunctor():
    seq = induced_sequence(SpSubfunctor(2), central_dihedral_extension())
    assert seq.left_group.order() == 2
    assert seq.middle_group.order() == 8
    assert seq.right_group.order() == 4


def test_pullback_along_localization_perm():
    from flatlab.extensions import pullback_along_localization
    from flatlab.functors import Abelianization

    # an extension of abelian groups over the abelianization of the dihedral
    # group, pulled back along its localization map
    D8 = dihedral(8)
    V4 = elementary_abelian(2, 2)
    ext = extension_from_normal_subgroup(
        product(cyclic(2), V4),
        product(cyclic(2), V4).subgroup_from_elements(
            {e for e in product(cyclic(2), V4).elements() if all(e.images[i] == i for i in range(2, 6))}
        ),
    )
    pulled = pullback_along_localization(Abelianization(), ext, D8)
    assert pulled.extension.base.order() == 8
    assert pulled.extension.total.order() == 16
