"""The cast of group endofunctors: variety reflections, nilpotent quotients,
abelianization, nullifications, quasi-variety reflections, and the
order-p-generated subgroup subfunctor — with localization maps, induced maps,
locality and acyclicity tests.

Epireflections return a surjective structure map eta with its kernel (the
radical); the subfunctor returns an inclusion.  All functors apply to finite
permutation groups; the abelian flavor supports every variety word (words
collapse to exponent sums), quasi-variety rules, S_p as p-torsion, and
nullification at a finite cyclic group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Union

from .abelian import (
    AbGroup,
    AbHom,
    IntMatrix,
    ab_kernel,
    n_torsion,
    smith_normal_form,
    solve_in_column_lattice,
)
from .caps import DEFAULT_CAPS, Caps
from .errors import (
    CapExceededError,
    FlatlabError,
    InvalidHomomorphismError,
    UnsupportedFunctorError,
)
from .homs import enumerate_hom_images
from .permgroup import GroupHom, PermGroup, normal_closure, quotient
from .verbal import is_prime, lower_central_series, s_p_subgroup, verbal_subgroup
from .words import Presentation, Word


# -- functor specifications --------------------------------------------------


@dataclass(frozen=True)
class Variety:
    words: tuple[Word, ...]

    def describe(self) -> str:
        return f"variety({','.join(w.text() for w in self.words)})"


@dataclass(frozen=True)
class NilpotentQuotient:
    nilpotency_class: int

    def __post_init__(self):
        if self.nilpotency_class < 1:
            raise ValueError("nilpotency class must be >= 1")

    def describe(self) -> str:
        return f"nilpotent(class={self.nilpotency_class})"


@dataclass(frozen=True)
class Abelianization:
    def describe(self) -> str:
        return "abelianization"


@dataclass(frozen=True)
class Nullification:
    target: Presentation

    def __post_init__(self):
        if len(self.target.generators) > 3:
            raise UnsupportedFunctorError(
                "nullification target limited to <= 3 generators"
            )

    def describe(self) -> str:
        gens = ",".join(self.target.generators)
        rels = ",".join(self.target.relator_texts())
        return f"nullification(<{gens}|{rels}>)"


@dataclass(frozen=True)
class QuasiVarietyReflection:
    rules: tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        for cond, imp in self.rules:
            if cond.arity > 1 or imp.arity > 1:
                raise UnsupportedFunctorError(
                    "quasi-variety rules must be one-variable words"
                )

    def describe(self) -> str:
        return "quasivariety(" + ";".join(
            f"{c.text()}=>{u.text()}" for c, u in self.rules
        ) + ")"


@dataclass(frozen=True)
class SpSubfunctor:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise FlatlabError(f"{self.p} is not prime")

    def describe(self) -> str:
        return f"sp(p={self.p})"


FunctorSpec = Union[
    Variety,
    NilpotentQuotient,
    Abelianization,
    Nullification,
    QuasiVarietyReflection,
    SpSubfunctor,
]

EPIREFLECTION = "epireflection"
SUBFUNCTOR = "subfunctor"


def functor_kind(F: FunctorSpec) -> str:
    return SUBFUNCTOR if isinstance(F, SpSubfunctor) else EPIREFLECTION


@dataclass
class LocalizedResult:
    functor: FunctorSpec
    source: object
    result: object
    eta: object  # projection (epireflection) or inclusion (subfunctor)
    radical: object | None  # kernel of eta, for epireflections
    kind: str


# -- application: permutation flavor -----------------------------------------


def _apply_quotient_functor(F, G: PermGroup, W: PermGroup, caps: Caps) -> LocalizedResult:
    Q, proj = quotient(G, W, caps)
    return LocalizedResult(F, G, Q, proj, W, EPIREFLECTION)


def _abelian_product_form(pres: Presentation) -> list[int] | None:
    """Exponents n_i if pres is <x_1..x_k | x_i^{n_i}, all [x_i,x_j]>."""
    k = len(pres.generators)
    powers = {}
    pairs = set()
    for rel in pres.relators:
        if len(rel.letters) == 1:
            sym, exp = rel.letters[0]
            powers[sym] = gcd(powers.get(sym, 0), abs(exp))
        else:
            found = None
            for i in range(k):
                for j in range(k):
                    if i != j and rel == Word.commutator(
                        Word.generator(i), Word.generator(j)
                    ):
                        found = frozenset((i, j))
            if found is None:
                return None
            pairs.add(found)
    if k > 1 and pairs != {
        frozenset((i, j)) for i in range(k) for j in range(i + 1, k)
    }:
        return None
    return [powers.get(i, 0) for i in range(k)]


def _coset_representatives(G: PermGroup, n_elements, caps: Caps):
    """One representative per right coset of N; a single linear pass."""
    rep_of: dict = {}
    reps = []
    for x in G.elements(caps):
        if x in rep_of:
            continue
        reps.append(x)
        for n in n_elements:
            rep_of[n * x] = x
    return reps


def _hom_component_seeds_mod(
    pres: Presentation, candidates, k_arity: int, G: PermGroup, n_set, caps: Caps
):
    """Every component of every generator-image tuple whose relators evaluate
    into the given normal subgroup N: these generate (with N) the preimage of
    the images of all homs from the presented group into G/N.

    Both tuple validity and the generated subgroup mod N only depend on the
    N-cosets of the components, so ``candidates`` may be coset representatives.
    """
    k = len(pres.generators)
    if len(candidates) ** k > caps.hom_search:
        raise CapExceededError(
            f"hom search space {len(candidates)}^{k} exceeds cap {caps.hom_search}"
        )
    ident = G.identity()
    single: list[list[Word]] = [[] for _ in range(k)]
    multi: list[list[Word]] = [[] for _ in range(k)]
    for rel in pres.relators:
        if rel.is_empty():
            continue
        support = {s for s, _ in rel.letters}
        trigger = max(support)
        (single if len(support) == 1 else multi)[trigger].append(rel)
    allowed = [
        [
            y
            for y in candidates
            if all(r.evaluate([y] * k, ident) in n_set for r in single[i])
        ]
        for i in range(k)
    ]
    seeds: set = set()
    assignment: list = [ident] * k

    def backtrack(i: int):
        if i == k:
            seeds.update(assignment)
            return
        for y in allowed[i]:
            assignment[i] = y
            if all(r.evaluate(assignment, ident) in n_set for r in multi[i]):
                backtrack(i + 1)

    backtrack(0)
    return seeds


def _nullification_radical(F: "Nullification", G: PermGroup, caps: Caps) -> PermGroup:
    """Smallest normal N with no nontrivial map from the target into G/N,
    grown as a preimage chain without constructing any quotient group."""
    pres = F.target
    form = _abelian_product_form(pres)
    N = G.subgroup((), name="1")
    n_set = {G.identity()}
    while True:
        reps = _coset_representatives(G, sorted(n_set), caps)
        if form is not None:
            seeds = set(N.generators)
            full = False
            for n in form:
                if n == 0:
                    full = True
                    break
                seeds.update(r for r in reps if (r**n) in n_set)
            if full:
                seeds = set(reps)
        else:
            seeds = _hom_component_seeds_mod(
                pres, reps, len(pres.generators), G, n_set, caps
            )
            seeds.update(N.generators)
        N2 = normal_closure(G, seeds, caps)
        if N2.order(caps) == len(n_set):
            return N
        N = N2
        n_set = N.element_set(caps)


def _quasivariety_radical(
    F: "QuasiVarietyReflection", G: PermGroup, caps: Caps
) -> PermGroup:
    """Preimage chain: keep adjoining u(g) whenever t(g) already dies."""
    ident = G.identity()
    N = G.subgroup((), name="1")
    n_set = {ident}
    while True:
        seeds = set(N.generators)
        for cond, imp in F.rules:
            for g in G.elements(caps):
                if cond.evaluate((g,), ident) in n_set:
                    seeds.add(imp.evaluate((g,), ident))
        N2 = normal_closure(G, seeds, caps)
        if N2.order(caps) == len(n_set):
            return N
        N = N2
        n_set = N.element_set(caps)


def radical_subgroup(F: FunctorSpec, G: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """Kernel of the localization map, computed without building quotients."""
    if functor_kind(F) != EPIREFLECTION:
        raise UnsupportedFunctorError("only epireflections have a radical")

    def compute():
        if isinstance(F, Variety):
            return verbal_subgroup(G, F.words, caps)
        if isinstance(F, Abelianization):
            return lower_central_series(G, 1, caps)[1]
        if isinstance(F, NilpotentQuotient):
            c = F.nilpotency_class
            return lower_central_series(G, c, caps)[c]
        if isinstance(F, Nullification):
            return _nullification_radical(F, G, caps)
        if isinstance(F, QuasiVarietyReflection):
            return _quasivariety_radical(F, G, caps)
        raise UnsupportedFunctorError(f"unknown functor {F!r}")

    return G.memo(("radical", F), compute)


def _apply_perm(F: FunctorSpec, G: PermGroup, caps: Caps) -> LocalizedResult:
    if isinstance(F, SpSubfunctor):
        S = s_p_subgroup(G, F.p, caps)
        incl = GroupHom.inclusion(S, G, caps)
        return LocalizedResult(F, G, S, incl, None, SUBFUNCTOR)
    # every epireflection is the quotient by its radical
    return _apply_quotient_functor(F, G, radical_subgroup(F, G, caps), caps)


# -- application: abelian flavor ----------------------------------------------


def _quotient_by_columns(F, A: AbGroup, extra: IntMatrix) -> LocalizedResult:
    """Quotient of A by the subgroup generated by extra's columns."""
    Q = AbGroup(A.ngens, A.relations.hstack(extra), name=None)
    eta = AbHom(A, Q, IntMatrix.identity(A.ngens))
    radical, _ = ab_kernel(eta)
    return LocalizedResult(F, A, Q, eta, radical, EPIREFLECTION)


def _columns_in_lattice(A: AbGroup, M: IntMatrix) -> bool:
    return all(
        solve_in_column_lattice(A.snf, M.column(j)) is not None
        for j in range(M.cols)
    )


def _cyclic_order_of_presentation(pres: Presentation) -> int | None:
    if len(pres.generators) != 1:
        return None
    n = 0
    for rel in pres.relators:
        n = gcd(n, abs(rel.exponent_sum()))
    return n


def _apply_abelian(F: FunctorSpec, A: AbGroup, caps: Caps) -> LocalizedResult:
    if isinstance(F, Abelianization):
        eta = AbHom.identity_hom(A)
        radical, _ = ab_kernel(eta)
        return LocalizedResult(F, A, A, eta, radical, EPIREFLECTION)
    if isinstance(F, (Variety, NilpotentQuotient)):
        # on abelian groups a word acts through its exponent sums
        if isinstance(F, NilpotentQuotient):
            g = 0  # iterated commutators have zero exponent sums
        else:
            g = 0
            for w in F.words:
                sums = [0] * max(w.arity, 0)
                for sym, exp in w.letters:
                    sums[sym] += exp
                word_gcd = 0
                for s in sums:
                    word_gcd = gcd(word_gcd, abs(s))
                g = gcd(g, word_gcd)
        if g == 0:
            eta = AbHom.identity_hom(A)
            radical, _ = ab_kernel(eta)
            return LocalizedResult(F, A, A, eta, radical, EPIREFLECTION)
        return _quotient_by_columns(F, A, IntMatrix.scalar(A.ngens, g))
    if isinstance(F, QuasiVarietyReflection):
        cur = A
        eta = AbHom.identity_hom(A)
        while True:
            new_cols = None
            for cond, imp in F.rules:
                a = abs(cond.exponent_sum())
                b = imp.exponent_sum()
                if a == 0:
                    imposed = IntMatrix.scalar(cur.ngens, b)
                else:
                    T, incl = n_torsion(cur, a)
                    imposed = IntMatrix(
                        [[b * x for x in row] for row in incl.matrix.entries],
                        cols=incl.matrix.cols,
                    )
                if not _columns_in_lattice(cur, imposed):
                    new_cols = imposed
                    break
            if new_cols is None:
                break
            step = _quotient_by_columns(F, cur, new_cols)
            eta = eta.then(step.eta)
            cur = step.result
        radical, _ = ab_kernel(eta)
        return LocalizedResult(F, A, cur, eta, radical, EPIREFLECTION)
    if isinstance(F, Nullification):
        n = _cyclic_order_of_presentation(F.target)
        if n is None or n == 0:
            raise UnsupportedFunctorError(
                "abelian nullification needs a finite cyclic target"
            )
        cur = A
        eta = AbHom.identity_hom(A)
        while True:
            T, incl = n_torsion(cur, n)
            if T.is_trivial():
                break
            step = _quotient_by_columns(F, cur, incl.matrix)
            eta = eta.then(step.eta)
            cur = step.result
        radical, _ = ab_kernel(eta)
        return LocalizedResult(F, A, cur, eta, radical, EPIREFLECTION)
    if isinstance(F, SpSubfunctor):
        T, incl = n_torsion(A, F.p)
        return LocalizedResult(F, A, T, incl, None, SUBFUNCTOR)
    raise UnsupportedFunctorError(f"unknown functor {F!r}")


def apply(F: FunctorSpec, G, caps: Caps = DEFAULT_CAPS) -> LocalizedResult:
    """Apply the functor; epireflections yield eta: G ->> LG with its radical,
    the subfunctor yields an inclusion."""
    if isinstance(G, PermGroup):
        return G.memo(("apply", F), lambda: _apply_perm(F, G, caps))
    if isinstance(G, AbGroup):
        return G.memo(("apply", F), lambda: _apply_abelian(F, G, caps))
    raise UnsupportedFunctorError(f"cannot apply a functor to {type(G).__name__}")


# -- induced maps -------------------------------------------------------------


def induce(F: FunctorSpec, f, caps: Caps = DEFAULT_CAPS):
    """The induced map F(dom) -> F(cod); raises on a naturality violation
    (which would indicate an implementation bug, not a data error)."""
    Ldom = apply(F, f.domain, caps)
    Lcod = apply(F, f.codomain, caps)
    if isinstance(f, GroupHom):
        if functor_kind(F) == EPIREFLECTION:
            rad_cod = Lcod.radical.element_set(caps)
            for x in Ldom.radical.elements(caps):
                if f.apply(x) not in rad_cod:
                    raise FlatlabError(
                        "induced map undefined: radical not preserved"
                    )
            images = tuple(Lcod.eta.apply(f.apply(g)) for g in f.domain.generators)
            induced = GroupHom(Ldom.result, Lcod.result, images, caps=caps)
            _assert_naturality_perm(Ldom, Lcod, f, induced, caps)
            return induced
        sub_cod = Lcod.result.element_set(caps)
        for x in Ldom.result.elements(caps):
            if f.apply(x) not in sub_cod:
                raise FlatlabError(
                    "induced map undefined: subfunctor not preserved"
                )
        images = tuple(f.apply(g) for g in Ldom.result.generators)
        induced = GroupHom(Ldom.result, Lcod.result, images, caps=caps)
        return induced
    if isinstance(f, AbHom):
        if functor_kind(F) == EPIREFLECTION:
            # all abelian epireflection results reuse the source generators,
            # so well-definedness of f on the extended relations IS naturality
            try:
                return AbHom(Ldom.result, Lcod.result, f.matrix)
            except InvalidHomomorphismError as exc:
                raise FlatlabError(
                    f"induced map undefined: radical not preserved ({exc})"
                ) from None
        # subfunctor: solve incl_cod * M = f * incl_dom modulo codomain relations
        comp = f.matrix * Ldom.eta.matrix
        block = Lcod.eta.matrix.hstack(f.codomain.relations)
        snf = smith_normal_form(block)
        cols = []
        for j in range(comp.cols):
            sol = solve_in_column_lattice(snf, comp.column(j))
            if sol is None:
                raise FlatlabError("induced map undefined: subfunctor not preserved")
            cols.append(sol[: Lcod.result.ngens])
        return AbHom(
            Ldom.result,
            Lcod.result,
            IntMatrix.from_columns(cols, Lcod.result.ngens),
        )
    raise UnsupportedFunctorError(f"cannot induce along {type(f).__name__}")


def _assert_naturality_perm(Ldom, Lcod, f, induced, caps: Caps):
    src = f.domain
    check_all = src.order(caps) <= 500
    elements = src.elements(caps) if check_all else src.generators
    for x in elements:
        if Lcod.eta.apply(f.apply(x)) != induced.apply(Ldom.eta.apply(x)):
            raise FlatlabError("naturality square does not commute")


# -- locality -----------------------------------------------------------------


class TestMap:
    """A homomorphism phi: A -> B between finitely presented groups, given by
    a word in B's generators for each generator of A.  Locality of a group X
    means precomposition Hom(B, X) -> Hom(A, X) is a bijection."""

    __test__ = False  # not a pytest class; "test map" is the domain term

    def __init__(
        self,
        domain_pres: Presentation,
        codomain_pres: Presentation,
        images: tuple[Word, ...] | list[Word],
        name: str = "phi",
        caps: Caps = DEFAULT_CAPS,
    ):
        images = tuple(images)
        if len(images) != len(domain_pres.generators):
            raise ValueError("one image word per domain generator required")
        for w in images:
            if w.arity > len(codomain_pres.generators):
                raise ValueError("image word uses undeclared codomain generators")
        from .homs import realize_presentation

        B = realize_presentation(codomain_pres, caps)
        b_images = tuple(
            w.evaluate(B.generators, B.identity()) for w in images
        )
        ident = B.identity()
        for rel in domain_pres.relators:
            if not rel.evaluate(b_images, ident).is_identity():
                raise ValueError(
                    f"relator {rel.text(domain_pres.generators)} is not killed: "
                    "phi is not a homomorphism"
                )
        self.domain_pres = domain_pres
        self.codomain_pres = codomain_pres
        self.images = images
        self.name = name

    def as_cyclic(self) -> tuple[int, int, int] | None:
        """(m, n, k) when phi is C_m -> C_n, x -> y^k with m, n finite."""
        m = _cyclic_order_of_presentation(self.domain_pres)
        n = _cyclic_order_of_presentation(self.codomain_pres)
        if m is None or n is None or m == 0 or n == 0:
            return None
        k = self.images[0].exponent_sum() % n if self.images else 0
        return (m, n, k)

    def describe(self) -> str:
        dom = ",".join(self.domain_pres.generators)
        cod = ",".join(self.codomain_pres.generators)
        imgs = ",".join(
            w.text(self.codomain_pres.generators) for w in self.images
        )
        return f"{self.name}: <{dom}> -> <{cod}>, [{imgs}]"


def standard_quasi_c4_c2() -> tuple[TestMap, QuasiVarietyReflection]:
    """The projection C4 -> C2 with its quasi-variety reflection
    (condition x^4, imposition x^2)."""
    x = Word.generator(0)
    dom = Presentation(("x",), (x**4,))
    cod = Presentation(("y",), (x**2,))
    phi = TestMap(dom, cod, (x,), name="phi:C4->C2")
    F = QuasiVarietyReflection(((x**4, x**2),))
    return phi, F


@dataclass
class LocalityReport:
    group: str
    test_map: str
    hom_count_b: int
    hom_count_a: int
    is_local: bool
    witness: str | None

    def verdict(self) -> str:
        return "local" if self.is_local else "not local"


def is_local_wrt(X, phi: TestMap, caps: Caps = DEFAULT_CAPS) -> LocalityReport:
    """Is precomposition with phi a bijection Hom(B, X) -> Hom(A, X)?"""
    if isinstance(X, PermGroup):
        return _is_local_perm(X, phi, caps)
    if isinstance(X, AbGroup):
        return _is_local_abelian(X, phi, caps)
    raise UnsupportedFunctorError(f"cannot test locality of {type(X).__name__}")


def _is_local_perm(X: PermGroup, phi: TestMap, caps: Caps) -> LocalityReport:
    homs_b = enumerate_hom_images(phi.codomain_pres, X, caps)
    homs_a = enumerate_hom_images(phi.domain_pres, X, caps)
    ident = X.identity()
    seen: dict = {}
    witness = None
    for hb in homs_b:
        ha = tuple(w.evaluate(hb, ident) for w in phi.images)
        if ha in seen:
            witness = (
                f"collision: codomain homs {_fmt_images(seen[ha])} and "
                f"{_fmt_images(hb)} pull back to the same map"
            )
            break
        seen[ha] = hb
    is_local = witness is None
    if is_local:
        for ha in homs_a:
            if ha not in seen:
                witness = f"uncovered: {_fmt_images(ha)} is not a pullback of any hom"
                is_local = False
                break
    return LocalityReport(
        X.describe(),
        phi.describe(),
        len(homs_b),
        len(homs_a),
        is_local,
        witness,
    )


def _fmt_images(images) -> str:
    return "[" + ",".join(p.cycle_string() for p in images) + "]"


def _is_local_abelian(X: AbGroup, phi: TestMap, caps: Caps) -> LocalityReport:
    cyc = phi.as_cyclic()
    if cyc is None:
        raise CapExceededError(
            "abelian locality testing needs a finite cyclic test map"
        )
    m, n, k = cyc
    Tn, incl_n = n_torsion(X, n)
    Tm, incl_m = n_torsion(X, m)
    elems_n = [incl_n.apply(t) for t in Tn.elements(caps)]
    elems_m = {incl_m.apply(t) for t in Tm.elements(caps)}
    seen: dict = {}
    witness = None
    for v in elems_n:
        image = X.scale(k, v)
        if image in seen:
            witness = (
                f"collision: {X.format_element(seen[image])} and "
                f"{X.format_element(v)} pull back to the same map"
            )
            break
        seen[image] = v
    is_local = witness is None
    if is_local:
        for w in sorted(elems_m):
            if w not in seen:
                witness = (
                    f"uncovered: generator -> {X.format_element(w)} "
                    "is not a pullback of any hom"
                )
                is_local = False
                break
    return LocalityReport(
        X.describe(),
        phi.describe(),
        len(elems_n),
        len(elems_m),
        is_local,
        witness,
    )


# -- acyclicity and idempotency ------------------------------------------------


def is_acyclic(F: FunctorSpec, X, caps: Caps = DEFAULT_CAPS) -> bool:
    """True iff applying the epireflection kills X entirely."""
    if functor_kind(F) != EPIREFLECTION:
        raise UnsupportedFunctorError("acyclicity is an epireflection notion")
    if isinstance(X, PermGroup):
        return radical_subgroup(F, X, caps).order(caps) == X.order(caps)
    return apply(F, X, caps).result.is_trivial()


@dataclass
class IdempotencyReport:
    functor: str
    first_order: int | None
    second_order: int | None
    idempotent: bool
    detail: str


def idempotency_check(F: FunctorSpec, G, caps: Caps = DEFAULT_CAPS) -> IdempotencyReport:
    """For varieties: compare WG with W applied to WG as a standalone group.
    For other functors: apply twice and compare."""
    if isinstance(F, (Variety, Abelianization, NilpotentQuotient)):
        if isinstance(F, Variety):
            words = F.words
        elif isinstance(F, Abelianization):
            words = (Word.lcs_word(1),)
        else:
            words = (Word.lcs_word(F.nilpotency_class),)
        WG = verbal_subgroup(G, words, caps)
        standalone = PermGroup(WG.degree, WG.generators, name="WG")
        WWG = verbal_subgroup(standalone, words, caps)
        same = WG.element_set(caps) == WWG.element_set(caps)
        return IdempotencyReport(
            F.describe(),
            WG.order(caps),
            WWG.order(caps),
            same,
            f"|WG| = {WG.order(caps)}, |W(WG)| = {WWG.order(caps)}",
        )
    first = apply(F, G, caps)
    second = apply(F, first.result, caps)
    if isinstance(G, PermGroup):
        o1, o2 = first.result.order(caps), second.result.order(caps)
        same = o1 == o2
    else:
        o1 = first.result.order()
        o2 = second.result.order()
        same = (
            first.result.canonical_invariants()
            == second.result.canonical_invariants()
        )
    return IdempotencyReport(
        F.describe(),
        o1,
        o2,
        same,
        f"|LG| = {o1}, |LLG| = {o2}",
    )
