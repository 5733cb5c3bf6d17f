"""Extensions, pullbacks of extensions, flatness verdicts, conditional
flatness probes, and the certification engine for the local-pullback
counterexample construction.

An extension is a verified short exact sequence K -> E -> G in either
group flavor.  Flatness of a functor on an extension is decided by exact
element/lattice computation and reported with explicit witnesses locating
the failing flag (left injectivity, middle exactness, right surjectivity).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import (
    AbGroup,
    AbHom,
    IntMatrix,
    ab_cokernel,
    ab_kernel,
    enumerate_ab_homs,
    image_lattice_basis,
    kernel_lattice_basis,
    lattice_leq,
    n_torsion,
    perm_to_abelian,
    smith_normal_form,
    solve_in_column_lattice,
)
from .caps import DEFAULT_CAPS, Caps
from .errors import (
    FlatlabError,
    FlavorMismatchError,
    NotSurjectiveError,
)
from .functors import (
    EPIREFLECTION,
    FunctorSpec,
    LocalityReport,
    TestMap,
    apply,
    functor_kind,
    induce,
    is_local_wrt,
    radical_subgroup,
)
from .homs import enumerate_homs
from .perm import Permutation
from .permgroup import (
    GroupHom,
    PermGroup,
    is_normal,
    normal_subgroups,
    pullback_group,
    quotient,
)

PERM = "permutation"
ABELIAN = "abelian"


def _flavor_of(G) -> str:
    if isinstance(G, PermGroup):
        return PERM
    if isinstance(G, AbGroup):
        return ABELIAN
    raise FlavorMismatchError(f"not a group object: {type(G).__name__}")


class Extension:
    """K >-> E ->> G with all four exactness conditions checked:
    the inclusion is injective, the projection surjective, the image of the
    inclusion equals the kernel of the projection, and that image is normal.
    """

    def __init__(self, iota, proj, name: str | None = None, caps: Caps = DEFAULT_CAPS):
        flavors = {_flavor_of(iota.domain), _flavor_of(iota.codomain),
                   _flavor_of(proj.domain), _flavor_of(proj.codomain)}
        if len(flavors) != 1:
            raise FlavorMismatchError("extension mixes permutation and abelian groups")
        self.flavor = flavors.pop()
        if iota.codomain is not proj.domain:
            raise FlatlabError("inclusion codomain must be the projection domain")
        self.kernel_group = iota.domain
        self.total = proj.domain
        self.base = proj.codomain
        self.iota = iota
        self.proj = proj
        self.name = name
        if self.flavor == PERM:
            if not iota.is_injective():
                raise FlatlabError("extension inclusion is not injective")
            if not proj.is_surjective():
                raise NotSurjectiveError("extension projection is not surjective")
            image = iota.image()
            if image.element_set(caps) != proj.kernel().element_set(caps):
                raise FlatlabError("image of inclusion != kernel of projection")
            if not is_normal(image, self.total, caps):
                raise FlatlabError("kernel image is not normal in the total group")
        else:
            if not iota.is_injective():
                raise FlatlabError("extension inclusion is not injective")
            if not proj.is_surjective():
                raise NotSurjectiveError("extension projection is not surjective")
            im = image_lattice_basis(iota)
            ker = kernel_lattice_basis(proj)
            if not (lattice_leq(im, ker) and lattice_leq(ker, im)):
                raise FlatlabError("image of inclusion != kernel of projection")

    def describe(self) -> str:
        if self.name:
            return self.name
        return (
            f"{_gdesc(self.kernel_group)} -> {_gdesc(self.total)} -> "
            f"{_gdesc(self.base)}"
        )

    def __repr__(self) -> str:
        return f"Extension({self.describe()})"


def _gdesc(G) -> str:
    return G.describe()


def from_surjection(p, name: str | None = None, caps: Caps = DEFAULT_CAPS) -> Extension:
    """Extension with kernel ker(p) and its inclusion."""
    if isinstance(p, GroupHom):
        if not p.is_surjective():
            raise NotSurjectiveError("from_surjection needs a surjective map")
        K = p.kernel()
        K.name = K.name or "ker"
        iota = GroupHom.inclusion(K, p.domain, caps)
        return Extension(iota, p, name=name, caps=caps)
    if isinstance(p, AbHom):
        C, _ = ab_cokernel(p)
        if not C.is_trivial():
            raise NotSurjectiveError("from_surjection needs a surjective map")
        K, iota = ab_kernel(p)
        return Extension(iota, p, name=name, caps=caps)
    raise FlavorMismatchError(f"not a homomorphism: {type(p).__name__}")


def extension_from_normal_subgroup(
    G: PermGroup, N: PermGroup, caps: Caps = DEFAULT_CAPS
) -> Extension:
    if N.name in (None, "ncl"):
        N.name = f"N{N.order(caps)}"
    Q, proj = quotient(G, N, caps)
    iota = GroupHom.inclusion(N, G, caps)
    return Extension(iota, proj, caps=caps)


def extensions_from_group(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> list[Extension]:
    """One extension N -> G -> G/N per normal subgroup N."""
    return [
        extension_from_normal_subgroup(G, N, caps) for N in normal_subgroups(G, caps)
    ]


# -- pullback of an extension -------------------------------------------------


@dataclass
class PulledBackExtension:
    extension: Extension
    to_total: object  # P -> E
    to_base: object  # X -> G (the map pulled along)
    canonical_kernel_map: object  # K -> ker(P -> X), an isomorphism


def pullback_extension(ext: Extension, f, caps: Caps = DEFAULT_CAPS) -> PulledBackExtension:
    """Pull K -> E -> G back along f: X -> G; the canonical map identifies
    the kernel of the new extension with K."""
    if ext.flavor == PERM:
        if not isinstance(f, GroupHom):
            raise FlavorMismatchError("permutation extension needs a GroupHom leg")
        P, pr_e, pr_x = pullback_group(ext.proj, f, caps)
        new_ext = from_surjection(pr_x, caps=caps)
        dE = ext.total.degree
        idx = tuple(range(dE, dE + f.domain.degree))
        canon_images = tuple(
            Permutation(ext.iota.apply(k).images + idx)
            for k in ext.kernel_group.generators
        )
        canonical = GroupHom(ext.kernel_group, P, canon_images, caps=caps)
        if canonical.image().element_set(caps) != new_ext.kernel_group.element_set(caps) or not canonical.is_injective():
            raise FlatlabError("canonical kernel comparison map is not an isomorphism")
        return PulledBackExtension(new_ext, pr_e, f, canonical)
    if not isinstance(f, AbHom):
        raise FlavorMismatchError("abelian extension needs an AbHom leg")
    from .abelian import ab_pullback

    P, pr_e, pr_x = ab_pullback(ext.proj, f)
    new_ext = from_surjection(pr_x, caps=caps)
    # canonical K -> P: k maps to (iota k, 0), solved in P's inclusion basis
    K = ext.kernel_group
    embed_cols = []
    nE, nX = ext.total.ngens, f.domain.ngens
    incl_matrix = IntMatrix.from_columns(
        [pr_e.matrix.column(j) + pr_x.matrix.column(j) for j in range(P.ngens)],
        nE + nX,
    )
    block = incl_matrix.hstack(
        IntMatrix.diag_blocks(ext.total.relations, f.domain.relations)
    )
    snf = smith_normal_form(block)
    for j in range(K.ngens):
        target = ext.iota.matrix.column(j) + (0,) * nX
        sol = solve_in_column_lattice(snf, target)
        if sol is None:
            raise FlatlabError("canonical kernel map does not land in the pullback")
        embed_cols.append(sol[: P.ngens])
    canonical = AbHom(K, P, IntMatrix.from_columns(embed_cols, P.ngens))
    if not canonical.is_injective():
        raise FlatlabError("canonical kernel comparison map is not injective")
    im_c = image_lattice_basis(canonical)
    ker_x = kernel_lattice_basis(pr_x)
    if not (lattice_leq(im_c, ker_x) and lattice_leq(ker_x, im_c)):
        raise FlatlabError("canonical kernel comparison map is not an isomorphism")
    return PulledBackExtension(new_ext, pr_e, f, canonical)


def pullback_along_localization(
    F: FunctorSpec, ext: Extension, G, caps: Caps = DEFAULT_CAPS
) -> PulledBackExtension:
    """Pull an extension over LG back along the localization map of G.

    Convenience probe: the interesting pullbacks all arise this way, since
    any map into the base factors through its localization.  The extension's
    base must be the localization of G (same object, or isomorphic; the leg
    is aligned through the canonical identification).
    """
    L = apply(F, G, caps)
    eta = L.eta
    if ext.flavor == ABELIAN:
        if ext.base is not L.result and not ext.base.same_presentation(L.result):
            eta = eta.then(ab_canonical_iso(L.result, ext.base))
    else:
        if ext.base is not L.result:
            from .permgroup import find_isomorphism

            iso = find_isomorphism(L.result, ext.base, caps)
            if iso is None:
                raise FlatlabError(
                    "extension base is not the localization of the given group"
                )
            eta = eta.then(iso)
    return pullback_extension(ext, eta, caps)


# -- flatness ------------------------------------------------------------------


@dataclass
class FlatnessReport:
    functor: str
    extension: str
    left_injective: bool
    middle_exact: bool
    right_surjective: bool
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def is_flat(self) -> bool:
        return self.left_injective and self.middle_exact and self.right_surjective

    def to_dict(self) -> dict:
        return {
            "functor": self.functor,
            "extension": self.extension,
            "left_injective": self.left_injective,
            "middle_exact": self.middle_exact,
            "right_surjective": self.right_surjective,
            "is_flat": self.is_flat,
            "witnesses": dict(sorted(self.witnesses.items())),
        }


def check_flatness(F: FunctorSpec, ext: Extension, caps: Caps = DEFAULT_CAPS) -> FlatnessReport:
    """Decide whether F(K) -> F(E) -> F(G) is again an extension, with
    witnesses at the failing flag."""
    if ext.flavor == PERM:
        if functor_kind(F) == EPIREFLECTION:
            return _flatness_perm_epi(F, ext, caps)
        return _flatness_perm_sub(F, ext, caps)
    return _flatness_abelian(F, ext, caps)


def _flatness_perm_epi(F, ext: Extension, caps: Caps) -> FlatnessReport:
    RK = radical_subgroup(F, ext.kernel_group, caps)
    RE = radical_subgroup(F, ext.total, caps)
    RG = radical_subgroup(F, ext.base, caps)
    rk = RK.element_set(caps)
    re = RE.element_set(caps)
    rg = RG.element_set(caps)
    iota, proj = ext.iota, ext.proj
    for x in sorted(rk):
        if iota.apply(x) not in re:
            raise FlatlabError("naturality failed: inclusion does not preserve radical")
    for x in sorted(re):
        if proj.apply(x) not in rg:
            raise FlatlabError("naturality failed: projection does not preserve radical")
    witnesses: dict[str, str] = {}
    left = True
    for k in ext.kernel_group.elements(caps):
        if iota.apply(k) in re and k not in rk:
            left = False
            witnesses["left"] = (
                f"kernel element {k.cycle_string()} maps into the radical of the "
                "total group but lies outside the kernel's radical"
            )
            break
    mid_gens = tuple(iota.image().generators) + tuple(RE.generators)
    from .permgroup import _closure

    M = frozenset(_closure(sorted(mid_gens), ext.total.degree, caps.order))
    middle = True
    for e in ext.total.elements(caps):
        if proj.apply(e) in rg and e not in M:
            middle = False
            witnesses["middle"] = (
                f"total element {e.cycle_string()} maps into the base radical but "
                "is not a product of a kernel element and a total-radical element"
            )
            break
    # the induced map on quotients of a surjection is surjective
    right = True
    return FlatnessReport(
        _fdesc(F), ext.describe(), left, middle, right, witnesses
    )


def _flatness_perm_sub(F, ext: Extension, caps: Caps) -> FlatnessReport:
    SK = apply(F, ext.kernel_group, caps).result
    SE = apply(F, ext.total, caps).result
    SG = apply(F, ext.base, caps).result
    iota, proj = ext.iota, ext.proj
    se = SE.element_set(caps)
    sg = SG.element_set(caps)
    for x in SK.elements(caps):
        if iota.apply(x) not in se:
            raise FlatlabError("naturality failed: inclusion does not preserve the subfunctor")
    for x in SE.elements(caps):
        if proj.apply(x) not in sg:
            raise FlatlabError("naturality failed: projection does not preserve the subfunctor")
    witnesses: dict[str, str] = {}
    left = True  # restriction of an injective map is injective
    ker_total = ext.iota.image().element_set(caps)
    im_restricted = {iota.apply(x) for x in SK.elements(caps)}
    middle = True
    for e in sorted(se & ker_total):
        if e not in im_restricted:
            middle = False
            witnesses["middle"] = (
                f"element {e.cycle_string()} is in the subfunctor of the total group "
                "and in the kernel, but not in the image of the kernel's subfunctor"
            )
            break
    image_of_se = {proj.apply(x) for x in se}
    right = True
    for g in sorted(sg):
        if g not in image_of_se:
            right = False
            witnesses["right"] = (
                f"base element {g.cycle_string()} is in the subfunctor of the base "
                "but not in the image of the subfunctor of the total group"
            )
            break
    return FlatnessReport(_fdesc(F), ext.describe(), left, middle, right, witnesses)


def _flatness_abelian(F, ext: Extension, caps: Caps) -> FlatnessReport:
    iota_ind = induce(F, ext.iota, caps)
    proj_ind = induce(F, ext.proj, caps)
    witnesses: dict[str, str] = {}
    K1, kincl = ab_kernel(iota_ind)
    left = K1.is_trivial()
    if not left:
        gen = K1.generator_element(_first_nonzero_gen(K1))
        elt = kincl.apply(gen)
        witnesses["left"] = (
            f"localized kernel element {iota_ind.domain.format_element(elt)} "
            "dies in the localized total group"
        )
    im = image_lattice_basis(iota_ind)
    ker = kernel_lattice_basis(proj_ind)
    middle = lattice_leq(ker, im) and lattice_leq(im, ker)
    if not middle:
        snf_im = smith_normal_form(im)
        for j in range(ker.cols):
            if solve_in_column_lattice(snf_im, ker.column(j)) is None:
                elt = proj_ind.domain.from_raw(ker.column(j))
                witnesses["middle"] = (
                    f"element {proj_ind.domain.format_element(elt)} of the localized "
                    "total group maps to zero in the localized base but is not in the "
                    "image of the localized kernel"
                )
                break
    C, _ = ab_cokernel(proj_ind)
    right = C.is_trivial()
    if not right:
        base = proj_ind.codomain
        snf_im_p = smith_normal_form(image_lattice_basis(proj_ind))
        candidates = [base.generator_element(j) for j in range(base.ngens)]
        if base.is_finite():
            candidates.extend(base.torsion_elements(caps))
        for g in candidates:
            if any(g) and solve_in_column_lattice(snf_im_p, base.lift(g)) is None:
                witnesses["right"] = (
                    f"localized base element {base.format_element(g)} is not hit"
                )
                break
        witnesses.setdefault("right", "localized projection has nontrivial cokernel")
    return FlatnessReport(_fdesc(F), ext.describe(), left, middle, right, witnesses)


def _first_nonzero_gen(K: AbGroup) -> int:
    return 0


def _fdesc(F: FunctorSpec) -> str:
    return F.describe()


@dataclass
class RightExactnessReport:
    functor: str
    extension: str
    middle_exact: bool
    right_surjective: bool
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def is_right_exact(self) -> bool:
        return self.middle_exact and self.right_surjective

    def to_dict(self) -> dict:
        return {
            "functor": self.functor,
            "extension": self.extension,
            "middle_exact": self.middle_exact,
            "right_surjective": self.right_surjective,
            "is_right_exact": self.is_right_exact,
            "witnesses": dict(sorted(self.witnesses.items())),
        }


def check_right_exactness(
    F: FunctorSpec, ext: Extension, caps: Caps = DEFAULT_CAPS
) -> RightExactnessReport:
    """Exactness at the middle and surjectivity on the right; left
    injectivity deliberately not required."""
    if functor_kind(F) != EPIREFLECTION:
        raise FlatlabError("right exactness is checked for epireflections only")
    rep = check_flatness(F, ext, caps)
    return RightExactnessReport(
        rep.functor,
        rep.extension,
        rep.middle_exact,
        rep.right_surjective,
        {k: v for k, v in rep.witnesses.items() if k != "left"},
    )


# -- induced sequence (honest objects, for reports and cross-checks) -----------


@dataclass
class InducedSequence:
    extension: Extension
    functor: str
    left_group: object
    middle_group: object
    right_group: object
    left_map: object
    right_map: object


def induced_sequence(F: FunctorSpec, ext: Extension, caps: Caps = DEFAULT_CAPS) -> InducedSequence:
    """Materialize F(K) -> F(E) -> F(G) with its maps; the composite must be
    trivial."""
    lm = induce(F, ext.iota, caps)
    rm = induce(F, ext.proj, caps)
    composite = lm.then(rm)
    if isinstance(composite, GroupHom):
        if not all(composite.apply(x) == composite.codomain.identity()
                   for x in composite.domain.elements(caps)):
            raise FlatlabError("induced composite is not trivial")
    else:
        if not composite.is_zero():
            raise FlatlabError("induced composite is not trivial")
    return InducedSequence(
        ext, _fdesc(F), lm.domain, lm.codomain, rm.codomain, lm, rm
    )


# -- conditional flatness probe -------------------------------------------------


@dataclass
class ProbeEntry:
    test_group: str
    hom: str
    report: FlatnessReport

    def to_dict(self) -> dict:
        return {
            "test_group": self.test_group,
            "hom": self.hom,
            "verdict": self.report.to_dict(),
        }


@dataclass
class ProbeReport:
    extension: str
    functor: str
    base_flat: bool
    entries: list[ProbeEntry]

    @property
    def all_pullbacks_flat(self) -> bool:
        return all(e.report.is_flat for e in self.entries)

    def counterexamples(self) -> list[ProbeEntry]:
        return [e for e in self.entries if not e.report.is_flat]

    def to_dict(self) -> dict:
        return {
            "extension": self.extension,
            "functor": self.functor,
            "base_flat": self.base_flat,
            "pullbacks": [e.to_dict() for e in self.entries],
            "all_pullbacks_flat": self.all_pullbacks_flat,
        }


def hom_description(f) -> str:
    if isinstance(f, GroupHom):
        names = (
            f.domain.presentation.generators
            if f.domain.presentation is not None
            else tuple(f"g{i}" for i in range(len(f.domain.generators)))
        )
        parts = [f"{n}->{p.cycle_string()}" for n, p in zip(names, f.images)]
        return "[" + ", ".join(parts) + "]"
    return f"matrix {[list(r) for r in f.matrix.entries]}"


def probe_conditional_flatness(
    F: FunctorSpec,
    ext: Extension,
    test_groups,
    caps: Caps = DEFAULT_CAPS,
    allow_nonflat_base: bool = False,
) -> ProbeReport:
    """Pull the extension back along EVERY homomorphism from every test group
    and check flatness of each pullback; exhaustiveness makes the report a
    proof over the given catalog."""
    base_report = check_flatness(F, ext, caps)
    if not base_report.is_flat and not allow_nonflat_base:
        raise FlatlabError(
            "base extension is not flat; pass allow_nonflat_base to probe anyway"
        )
    entries: list[ProbeEntry] = []
    for X in test_groups:
        for f in _homs_into_base(X, ext, caps):
            pulled = pullback_extension(ext, f, caps)
            rep = check_flatness(F, pulled.extension, caps)
            entries.append(ProbeEntry(_gdesc(X), hom_description(f), rep))
    return ProbeReport(ext.describe(), _fdesc(F), base_report.is_flat, entries)


def _homs_into_base(X, ext: Extension, caps: Caps):
    if ext.flavor == PERM:
        if not isinstance(X, PermGroup):
            raise FlavorMismatchError(
                "test groups for a permutation extension must be permutation groups"
            )
        return enumerate_homs(X, ext.base, caps)
    if isinstance(X, PermGroup):
        if not X.is_abelian():
            raise FlavorMismatchError(
                "only abelian test groups can probe an abelian extension"
            )
        X, _ = perm_to_abelian(X, caps)
    return enumerate_ab_homs(X, ext.base, caps)


# -- certification of the local-pullback construction ---------------------------


@dataclass
class CertifyReport:
    hypotheses: dict[str, bool]
    hypothesis_details: dict[str, str]
    pullback_description: str
    pullback_local: LocalityReport | None
    source_flatness: FlatnessReport
    conclusion_asserted: bool

    def all_hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    def to_dict(self) -> dict:
        return {
            "hypotheses": dict(sorted(self.hypotheses.items())),
            "details": dict(sorted(self.hypothesis_details.items())),
            "pullback": self.pullback_description,
            "pullback_local": (
                None
                if self.pullback_local is None
                else {
                    "is_local": self.pullback_local.is_local,
                    "hom_count_b": self.pullback_local.hom_count_b,
                    "hom_count_a": self.pullback_local.hom_count_a,
                    "witness": self.pullback_local.witness,
                }
            ),
            "source_extension": self.source_flatness.to_dict(),
            "conclusion_asserted": self.conclusion_asserted,
        }


def _hom_set_trivial(pres, E, caps: Caps) -> bool:
    if isinstance(E, PermGroup):
        from .homs import enumerate_hom_images

        return len(enumerate_hom_images(pres, E, caps)) == 1
    from .functors import _cyclic_order_of_presentation

    n = _cyclic_order_of_presentation(pres)
    if n is None or n == 0:
        raise FlatlabError("triviality of the hom set needs a finite cyclic source")
    T, _ = n_torsion(E, n)
    return T.is_trivial()


def ab_canonical_iso(A: AbGroup, B: AbGroup) -> AbHom:
    """The coordinate isomorphism between groups with equal invariants."""
    if A.canonical_invariants() != B.canonical_invariants():
        raise FlatlabError("groups are not abstractly isomorphic")
    cols = [
        B.lift(A.from_raw(tuple(1 if i == j else 0 for i in range(A.ngens))))
        for j in range(A.ngens)
    ]
    return AbHom(A, B, IntMatrix.from_columns(cols, B.ngens))


def certify_prop44(
    phi: TestMap,
    F: FunctorSpec,
    G,
    E,
    surj,
    caps: Caps = DEFAULT_CAPS,
) -> CertifyReport:
    """Check the hypotheses of the local-pullback construction and, when they
    all hold, compute P = pullback of (E ->> LG <<- G) and test its locality.

    Hypotheses: the localization map on G is not an isomorphism, its kernel
    is local, E is local, and both test-map groups admit only the trivial
    map to E.  The flatness of the source extension E ->> LG is reported
    separately and never fused into the conclusion.
    """
    L = apply(F, G, caps)
    LG = L.result
    hyp: dict[str, bool] = {}
    det: dict[str, str] = {}

    radical = L.radical
    if isinstance(G, PermGroup):
        nontrivial = not radical.is_trivial()
        det["eta_non_identity"] = f"|radical| = {radical.order(caps)}"
    else:
        nontrivial = not radical.is_trivial()
        det["eta_non_identity"] = f"radical = {radical.describe()}"
    hyp["eta_non_identity"] = nontrivial

    kernel_local = is_local_wrt(radical, phi, caps)
    hyp["kernel_local"] = kernel_local.is_local
    det["kernel_local"] = kernel_local.witness or "bijective on hom sets"

    e_local = is_local_wrt(E, phi, caps)
    hyp["E_local"] = e_local.is_local
    det["E_local"] = e_local.witness or "bijective on hom sets"

    hyp["hom_A_E_trivial"] = _hom_set_trivial(phi.domain_pres, E, caps)
    hyp["hom_B_E_trivial"] = _hom_set_trivial(phi.codomain_pres, E, caps)

    # align the codomain of the surjection with the computed localization
    surj_aligned = surj
    if isinstance(surj, AbHom):
        if surj.codomain is not LG and not surj.codomain.same_presentation(LG):
            surj_aligned = surj.then(ab_canonical_iso(surj.codomain, LG))
        surjective = ab_cokernel(surj_aligned)[0].is_trivial()
    else:
        if surj.codomain is not LG:
            from .permgroup import find_isomorphism

            iso = find_isomorphism(surj.codomain, LG, caps)
            if iso is None:
                raise FlatlabError("surjection codomain is not the localization")
            surj_aligned = surj.then(iso)
        surjective = surj_aligned.is_surjective()
    hyp["surjection_onto_LG"] = surjective

    source_ext = from_surjection(surj_aligned, caps=caps)
    source_flatness = check_flatness(F, source_ext, caps)

    pullback_local: LocalityReport | None = None
    conclusion = False
    if all(hyp.values()):
        if isinstance(G, PermGroup):
            P, _, _ = pullback_group(surj_aligned, L.eta, caps)
            pdesc = f"order {P.order(caps)}"
        else:
            from .abelian import ab_pullback

            P, _, _ = ab_pullback(surj_aligned, L.eta)
            pdesc = f"rank {P.rank}, torsion {list(P.invariants)}"
        pullback_local = is_local_wrt(P, phi, caps)
        conclusion = pullback_local.is_local
    else:
        pdesc = "not computed (hypothesis failed)"
    return CertifyReport(hyp, det, pdesc, pullback_local, source_flatness, conclusion)
