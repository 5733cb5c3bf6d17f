"""Verbal subgroups, lower central series, and order-p generated subgroups.

The exhaustive route evaluates every word of W on every tuple of group
elements; because conjugation is an automorphism, w(g_1,...,g_k)^h =
w(g_1^h,...,g_k^h), so the full value set is already closed under
conjugation and the generated subgroup is normal without a closure pass.

Two exact fast paths cover the functors the suites use heavily: power words
x^n scan {g^n : g in G}, and iterated-commutator words use
gamma_{k+1} = <<[t, s] : t normal-generating gamma_k, s generating G>>.
Property tests cross-check both against the exhaustive census.
"""

from __future__ import annotations

from itertools import product as iproduct

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceededError, FlatlabError
from .perm import Permutation
from .permgroup import PermGroup, normal_closure, is_normal
from .words import Word


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """[a, b] = a^-1 b^-1 a b."""
    return a.inverse() * b.inverse() * a * b


def _is_power_word(w: Word) -> int | None:
    if len(w.letters) == 1 and w.letters[0][0] == 0:
        return abs(w.letters[0][1])
    return None


def _lcs_class(w: Word, max_class: int = 12) -> int | None:
    # the class-c word has exactly 3*2^c - 2 letters; check length first
    n = len(w.letters)
    for c in range(1, max_class + 1):
        if n == 3 * 2**c - 2 and w == Word.lcs_word(c):
            return c
        if 3 * 2**c - 2 > n:
            break
    return None


def word_values(
    G: PermGroup, word: Word, caps: Caps = DEFAULT_CAPS
) -> set[Permutation]:
    """Exhaustive value census {w(g_1,...,g_k)} over all tuples."""
    arity = max(word.arity, 0)
    if arity > caps.word_arity:
        raise CapExceededError(
            f"word arity {arity} exceeds cap {caps.word_arity}"
        )
    n = G.order(caps)
    if n**arity > caps.tuple_scan:
        raise CapExceededError(
            f"tuple scan {n}^{arity} exceeds cap {caps.tuple_scan}"
        )
    ident = G.identity()
    if arity == 0:
        return {ident}
    values = set()
    for tup in iproduct(G.elements(caps), repeat=arity):
        values.add(word.evaluate(tup, ident))
    return values


def verbal_subgroup(
    G: PermGroup,
    words: list[Word] | tuple[Word, ...],
    caps: Caps = DEFAULT_CAPS,
    force_scan: bool = False,
) -> PermGroup:
    """Normal subgroup generated by all values of the given words."""
    key = ("verbal", tuple(words), force_scan)

    def compute():
        seeds: set[Permutation] = set()
        fast_parts: list[PermGroup] = []
        for w in words:
            n = None if force_scan else _is_power_word(w)
            c = None if force_scan else _lcs_class(w)
            if n is not None:
                seeds.update(g**n for g in G.elements(caps))
            elif c is not None:
                fast_parts.append(lower_central_series(G, c, caps)[c])
            else:
                seeds.update(word_values(G, w, caps))
        for part in fast_parts:
            seeds.update(part.elements(caps))
        seeds.discard(G.identity())
        if not seeds:
            W = G.subgroup((), name="W(G)")
        else:
            W = G.subgroup_from_elements(
                _generated(seeds, G.degree, caps), name="W(G)"
            )
        if not is_normal(W, G, caps):
            raise FlatlabError("verbal subgroup failed its normality assertion")
        return W

    return G.memo(key, compute)


def _generated(elements, degree, caps: Caps) -> list[Permutation]:
    from .permgroup import generated_subgroup

    return generated_subgroup(elements, degree, caps.order)[0]


def lower_central_series(
    G: PermGroup, depth: int | None = None, caps: Caps = DEFAULT_CAPS
) -> list[PermGroup]:
    """lcs(0) = G, lcs(k+1) = [lcs(k), G]; stabilized tail is repeated up to
    ``depth``.  Memoized per group."""
    if depth is not None and depth < 0:
        raise ValueError("depth must be >= 0")
    chain: list[PermGroup] = G.memo("lcs_chain", lambda: [G])
    seeds: list[tuple[Permutation, ...]] = G.memo(
        "lcs_seeds", lambda: [G.generators]
    )

    def stabilized() -> bool:
        return len(chain) >= 2 and (
            chain[-1].element_set(caps) == chain[-2].element_set(caps)
        )

    while not stabilized() and (depth is None or len(chain) <= depth):
        prev_seeds = seeds[-1]
        new_seeds = tuple(
            commutator(t, s) for t in prev_seeds for s in G.generators
        )
        nxt = normal_closure(G, new_seeds, caps)
        chain.append(nxt)
        seeds.append(new_seeds)
        if depth is None and nxt.is_trivial():
            break
    if depth is None:
        return list(chain)
    out = list(chain[: depth + 1])
    while len(out) <= depth:
        out.append(chain[-1])
    return out


def lcs_stabilization_index(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> int:
    """Smallest k with lcs(k+1) = lcs(k)."""
    chain = lower_central_series(G, None, caps)
    for k in range(len(chain) - 1):
        if chain[k + 1].element_set(caps) == chain[k].element_set(caps):
            return k
    return len(chain) - 1


def derived_subgroup(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    return lower_central_series(G, 1, caps)[1]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def s_p_subgroup(G: PermGroup, p: int, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """Subgroup generated by the elements of order exactly p (normal)."""
    if not is_prime(p):
        raise FlatlabError(f"{p} is not prime")

    def compute():
        seeds = {g for g in G.elements(caps) if g.order() == p}
        if not seeds:
            S = G.subgroup((), name=f"S_{p}(G)")
        else:
            S = G.subgroup_from_elements(
                _generated(seeds, G.degree, caps), name=f"S_{p}(G)"
            )
        if not is_normal(S, G, caps):
            raise FlatlabError("S_p subgroup failed its normality assertion")
        return S

    return G.memo(("s_p", p), compute)
