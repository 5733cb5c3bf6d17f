"""Scenario DSL: a line-oriented description of groups, homs, extensions,
functors and directives, parsed by hand with line-accurate diagnostics.

Grammar sketch (one section per [header], body lines of key=value fields,
values may contain spaces only inside (), [] brackets):

    [group D8]
    perm deg=4 gens=(0 1 2 3),(1 3)

    [group C4] presentation gens=x rels=x^4
    [group Z]  abelian rank=1
    [group V]  abelian relations=[[4]]
    [group K]  catalog spec=dihedral(8)

    [hom pr]   from=D8 to=V4 images=x,y          # words in codomain gens
    [hom red]  from=Z to=Z2 matrix=[[1]]         # abelian flavor

    [extension E] surjection=pr

    [functor L] kind=quasivariety cond=x^4 impose=x^2

    [directive] check functor=L extension=E expect=flat
    [directive] pullback extension=E along=phi name=EP functor=L expect=not-flat
    [directive] probe functor=L extension=E max_order=8 expect=all-flat
    [directive] localize functor=L group=C4 expect_invariants=(0;[2])
    [directive] certify functor=L phi=phi group=C4 local=Z surjection=red expect=local
    [directive] reproduce case=thm-4.1 expect=pass
    [directive] search functor=L max_order=8 expect=empty

Exit codes: 0 every expectation matched, 2 expectation mismatch (including
any cap-exhaustion verdict, which is never a silent pass), 1 execution error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .abelian import AbGroup, AbHom, IntMatrix, ab_from_invariants
from .caps import DEFAULT_CAPS, Caps
from .catalog import default_battery, parse_group_literal
from .errors import CapExceededError, FlatlabError, ScenarioError
from .extensions import (
    Extension,
    certify_prop44,
    check_flatness,
    from_surjection,
    probe_conditional_flatness,
    pullback_extension,
)
from .functors import (
    Abelianization,
    FunctorSpec,
    NilpotentQuotient,
    Nullification,
    QuasiVarietyReflection,
    SpSubfunctor,
    TestMap,
    Variety,
    apply,
)
from .homs import realize_presentation
from .perm import parse_cycle_string
from .permgroup import GroupHom, PermGroup, is_isomorphic
from .registry import reproduce
from .search import search_counterexamples
from .words import Presentation, Word, parse_word, _split_top_level

_HEADER = re.compile(r"^\[\s*(group|hom|extension|functor|directive)\s*([A-Za-z_0-9.'-]*)\s*\]\s*(.*)$")


@dataclass
class Section:
    kind: str
    name: str | None
    form: str | None
    fields: tuple[tuple[str, str], ...]
    line: int = field(compare=False, default=0)

    def get(self, key: str, default: str | None = None) -> str | None:
        for k, v in self.fields:
            if k == key:
                return v
        return default

    def require(self, key: str) -> str:
        v = self.get(key)
        if v is None:
            raise ScenarioError(f"missing field {key}=", self.line)
        return v


@dataclass
class Scenario:
    sections: list[Section]
    groups: dict[str, object] = field(default_factory=dict)
    homs: dict[str, object] = field(default_factory=dict)
    hom_words: dict[str, tuple] = field(default_factory=dict)
    extensions: dict[str, Extension] = field(default_factory=dict)
    functors: dict[str, FunctorSpec] = field(default_factory=dict)
    directives: list[Section] = field(default_factory=list)

    def to_text(self) -> str:
        lines = []
        for s in self.sections:
            header = f"[{s.kind} {s.name}]" if s.name else f"[{s.kind}]"
            body = " ".join(
                ([s.form] if s.form else [])
                + [f"{k}={v}" for k, v in s.fields]
            )
            lines.append(f"{header} {body}".rstrip())
        return "\n".join(lines) + "\n"


def _split_fields(text: str, line: int) -> list[str]:
    """Split on whitespace at bracket depth zero."""
    parts, cur, depth = [], [], 0
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ScenarioError("unbalanced brackets", line)
        if ch.isspace() and depth == 0:
            if cur:
                parts.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ScenarioError("unbalanced brackets", line)
    if cur:
        parts.append("".join(cur))
    return parts


def _parse_sections(text: str) -> list[Section]:
    sections: list[Section] = []
    current: dict | None = None

    def finish():
        nonlocal current
        if current is not None:
            sections.append(
                Section(
                    current["kind"],
                    current["name"],
                    current["form"],
                    tuple(current["fields"]),
                    current["line"],
                )
            )
            current = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        m = _HEADER.match(line)
        if m:
            finish()
            kind, name, rest = m.group(1), m.group(2) or None, m.group(3)
            current = {
                "kind": kind,
                "name": name,
                "form": None,
                "fields": [],
                "line": lineno,
            }
            if rest.strip():
                _feed_body(current, rest, lineno)
            continue
        if current is None:
            raise ScenarioError(f"content before any [section] header: {line!r}", lineno)
        _feed_body(current, line, lineno)
    finish()
    return sections


def _feed_body(current: dict, text: str, lineno: int) -> None:
    for tok in _split_fields(text, lineno):
        if "=" in tok:
            key, _, value = tok.partition("=")
            if not key:
                raise ScenarioError(f"bad field {tok!r}", lineno)
            current["fields"].append((key, value))
        else:
            if current["form"] is not None:
                raise ScenarioError(
                    f"unexpected bare word {tok!r} (form already {current['form']!r})",
                    lineno,
                )
            current["form"] = tok


def _parse_int_list(text: str, line: int) -> list[int]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ScenarioError(f"expected [..] list, got {text!r}", line)
    inner = text[1:-1].strip()
    if not inner:
        return []
    try:
        return [int(tok) for tok in inner.replace(",", " ").split()]
    except ValueError:
        raise ScenarioError(f"bad integer list {text!r}", line) from None


def _parse_matrix(text: str, line: int) -> list[list[int]]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ScenarioError(f"expected [[..],..] matrix, got {text!r}", line)
    inner = text[1:-1].strip()
    if not inner:
        return []
    rows = []
    for chunk in _split_top_level(inner):
        rows.append(_parse_int_list(chunk, line))
    return rows


def _build_group(sec: Section):
    form = sec.form
    if form == "perm":
        deg = int(sec.require("deg"))
        gens_text = sec.require("gens")
        gens = [
            parse_cycle_string(chunk, deg)
            for chunk in _split_top_level(gens_text)
        ]
        return PermGroup(deg, gens, name=sec.name)
    if form == "presentation":
        pres = Presentation.parse(sec.require("gens"), sec.get("rels", "") or "")
        G = realize_presentation(pres, name=sec.name)
        return G
    if form == "abelian":
        if sec.get("relations") is not None:
            rows = _parse_matrix(sec.require("relations"), sec.line)
            ngens = len(rows)
            cols = len(rows[0]) if rows else 0
            return AbGroup(ngens, IntMatrix(rows, cols=cols), name=sec.name)
        rank = int(sec.get("rank", "0") or 0)
        torsion = _parse_int_list(sec.get("torsion", "[]") or "[]", sec.line)
        return ab_from_invariants(rank, torsion, name=sec.name)
    if form == "catalog":
        G = parse_group_literal(sec.require("spec"))
        return G
    raise ScenarioError(
        f"unknown group form {form!r} (want perm | presentation | abelian | catalog)",
        sec.line,
    )


def _build_hom(sec: Section, scn: Scenario):
    src = _lookup(scn.groups, sec.require("from"), sec.line, "group")
    dst = _lookup(scn.groups, sec.require("to"), sec.line, "group")
    if isinstance(src, PermGroup) and isinstance(dst, PermGroup):
        images_text = sec.require("images")
        names = (
            dst.presentation.generators
            if dst.presentation is not None
            else tuple(f"g{i + 1}" for i in range(len(dst.generators)))
        )
        words = tuple(
            parse_word(chunk, names) for chunk in _split_top_level(images_text)
        )
        ident = dst.identity()
        images = tuple(w.evaluate(dst.generators, ident) for w in words)
        hom = GroupHom(src, dst, images, name=sec.name)
        scn.hom_words[sec.name] = words
        return hom
    if isinstance(src, AbGroup) and isinstance(dst, AbGroup):
        rows = _parse_matrix(sec.require("matrix"), sec.line)
        M = IntMatrix(rows, cols=len(rows[0]) if rows else src.ngens)
        return AbHom(src, dst, M, name=sec.name)
    raise ScenarioError("hom endpoints mix permutation and abelian flavors", sec.line)


def _build_functor(sec: Section) -> FunctorSpec:
    kind = sec.get("kind") or sec.form
    if kind is None:
        raise ScenarioError("functor needs kind=...", sec.line)
    return parse_functor_literal(
        kind,
        {k: v for k, v in sec.fields if k != "kind"},
        sec.line,
    )


def parse_functor_literal(kind: str, params: dict, line: int | None = None) -> FunctorSpec:
    """Shared by scenario [functor] sections and the CLI --functor option."""
    try:
        if kind == "abelianization":
            return Abelianization()
        if kind == "nilpotent":
            return NilpotentQuotient(int(params["class"]))
        if kind == "variety":
            words = tuple(
                parse_word(chunk)
                for chunk in _split_top_level(params["words"].strip()[1:-1])
            )
            return Variety(words)
        if kind == "nullification":
            H = parse_group_literal(params["H"])
            if H.presentation is None:
                raise FlatlabError("nullification target needs a presentation")
            return Nullification(H.presentation)
        if kind == "quasivariety":
            # one-variable rules are written in the single letter x
            def one_var(text: str) -> Word:
                try:
                    return parse_word(text, ("x",))
                except ValueError:
                    return parse_word(text)

            return QuasiVarietyReflection(
                ((one_var(params["cond"]), one_var(params["impose"])),)
            )
        if kind == "sp":
            return SpSubfunctor(int(params["p"]))
    except KeyError as exc:
        raise ScenarioError(f"functor {kind} missing parameter {exc}", line) from None
    raise ScenarioError(f"unknown functor kind {kind!r}", line)


def _lookup(table: dict, name: str, line: int, what: str):
    if name not in table:
        raise ScenarioError(f"undefined {what} {name!r}", line)
    return table[name]


def parse_scenario(text: str) -> Scenario:
    """Parse and resolve; every definition is validated at construction."""
    scn = Scenario(_parse_sections(text))
    for sec in scn.sections:
        try:
            if sec.kind == "group":
                if not sec.name:
                    raise ScenarioError("group needs a name", sec.line)
                scn.groups[sec.name] = _build_group(sec)
            elif sec.kind == "hom":
                if not sec.name:
                    raise ScenarioError("hom needs a name", sec.line)
                scn.homs[sec.name] = _build_hom(sec, scn)
            elif sec.kind == "extension":
                if not sec.name:
                    raise ScenarioError("extension needs a name", sec.line)
                p = _lookup(scn.homs, sec.require("surjection"), sec.line, "hom")
                scn.extensions[sec.name] = from_surjection(p, name=sec.name)
            elif sec.kind == "functor":
                if not sec.name:
                    raise ScenarioError("functor needs a name", sec.line)
                scn.functors[sec.name] = _build_functor(sec)
            elif sec.kind == "directive":
                scn.directives.append(sec)
        except ScenarioError:
            raise
        except (FlatlabError, ValueError) as exc:
            raise ScenarioError(str(exc), sec.line) from None
    return scn


# -- execution ----------------------------------------------------------------


@dataclass
class DirectiveResult:
    kind: str
    summary: str
    verdict: str
    expectation: str | None
    matched: bool | None  # None when no expectation clause
    payload: dict

    def to_dict(self) -> dict:
        return {
            "directive": self.kind,
            "summary": self.summary,
            "verdict": self.verdict,
            "expectation": self.expectation,
            "matched": self.matched,
            "details": self.payload,
        }


@dataclass
class RunResult:
    exit_code: int
    results: list[DirectiveResult]

    def to_dict(self) -> dict:
        return {
            "directives": [r.to_dict() for r in self.results],
            "expectations_matched": all(
                r.matched is not False for r in self.results
            ),
            "exit_code": self.exit_code,
        }


def _test_map_from_hom(name: str, scn: Scenario, line: int) -> TestMap:
    hom = _lookup(scn.homs, name, line, "hom")
    if isinstance(hom, GroupHom):
        dom, cod = hom.domain, hom.codomain
        if dom.presentation is None or cod.presentation is None:
            raise ScenarioError(
                "certify/localize test map needs presented groups", line
            )
        words = scn.hom_words.get(name)
        if words is None:
            raise ScenarioError("test map hom must be given by words", line)
        return TestMap(dom.presentation, cod.presentation, words, name=name)
    m = hom.domain.canonical_invariants()
    n = hom.codomain.canonical_invariants()
    if m[0] or len(m[1]) > 1 or n[0] or len(n[1]) > 1:
        raise ScenarioError(
            "abelian test maps must be finite cyclic -> finite cyclic", line
        )
    m_ord = m[1][0] if m[1] else 1
    n_ord = n[1][0] if n[1] else 1
    img = hom.apply(hom.domain.from_raw(tuple(1 for _ in range(hom.domain.ngens))))
    k = img[0] if img else 0
    x = Word.generator(0)
    dom_pres = Presentation(("x",), (x**m_ord,))
    cod_pres = Presentation(("y",), (x**n_ord,))
    return TestMap(dom_pres, cod_pres, (x**k,), name=name)


def _iso_verdict(G, expect_group, caps: Caps) -> bool:
    if isinstance(G, PermGroup) and isinstance(expect_group, PermGroup):
        return is_isomorphic(G, expect_group, caps)
    if isinstance(G, AbGroup) and isinstance(expect_group, AbGroup):
        return G.canonical_invariants() == expect_group.canonical_invariants()
    if isinstance(G, PermGroup):
        from .abelian import perm_to_abelian

        if not G.is_abelian():
            return False
        A, _ = perm_to_abelian(G, caps)
        return A.canonical_invariants() == expect_group.canonical_invariants()
    return False


def _parse_invariants(text: str, line: int) -> tuple[int, tuple[int, ...]]:
    m = re.fullmatch(r"\(\s*(\d+)\s*;\s*(\[[0-9,\s]*\])\s*\)", text.strip())
    if not m:
        raise ScenarioError(f"expected (rank;[d1,..]), got {text!r}", line)
    return int(m.group(1)), tuple(_parse_int_list(m.group(2), line))


def _group_invariants(G, caps: Caps):
    if isinstance(G, AbGroup):
        return G.canonical_invariants()
    from .abelian import perm_to_abelian

    if not G.is_abelian():
        return None
    return perm_to_abelian(G, caps)[0].canonical_invariants()


def run_scenario(scn: Scenario, caps: Caps = DEFAULT_CAPS) -> RunResult:
    """Execute directives in order; exit 0 when every expectation matched,
    2 on any mismatch or cap exhaustion, 1 on execution error."""
    results: list[DirectiveResult] = []
    error = False
    for sec in scn.directives:
        form = sec.form
        try:
            if form == "check":
                res = _run_check(sec, scn, caps)
            elif form == "pullback":
                res = _run_pullback(sec, scn, caps)
            elif form == "probe":
                res = _run_probe(sec, scn, caps)
            elif form == "localize":
                res = _run_localize(sec, scn, caps)
            elif form == "certify":
                res = _run_certify(sec, scn, caps)
            elif form == "reproduce":
                res = _run_reproduce(sec, scn, caps)
            elif form == "search":
                res = _run_search(sec, scn, caps)
            else:
                raise ScenarioError(f"unknown directive {form!r}", sec.line)
        except CapExceededError as exc:
            res = DirectiveResult(
                form or "?",
                f"directive at line {sec.line}",
                "cap-exceeded",
                sec.get("expect"),
                False,
                {"error": str(exc)},
            )
        except ScenarioError:
            raise
        except FlatlabError as exc:
            results.append(
                DirectiveResult(
                    form or "?",
                    f"directive at line {sec.line}",
                    "error",
                    sec.get("expect"),
                    None,
                    {"error": str(exc)},
                )
            )
            error = True
            break
        results.append(res)
    if error:
        return RunResult(1, results)
    mismatched = any(r.matched is False for r in results)
    return RunResult(2 if mismatched else 0, results)


def _expect_match(expectation: str | None, verdict: str) -> bool | None:
    if expectation is None:
        return None
    return expectation == verdict


def _run_check(sec: Section, scn: Scenario, caps: Caps) -> DirectiveResult:
    F = _lookup(scn.functors, sec.require("functor"), sec.line, "functor")
    ext = _lookup(scn.extensions, sec.require("extension"), sec.line, "extension")
    rep = check_flatness(F, ext, caps)
    verdict = "flat" if rep.is_flat else "not-flat"
    exp = sec.get("expect")
    return DirectiveResult(
        "check",
        f"{F.describe()} on {ext.describe()}",
        verdict,
        exp,
        _expect_match(exp, verdict),
        rep.to_dict(),
    )


def _run_pullback(sec: Section, scn: Scenario, caps: Caps) -> DirectiveResult:
    ext = _lookup(scn.extensions, sec.require("extension"), sec.line, "extension")
    f = _lookup(scn.homs, sec.require("along"), sec.line, "hom")
    pulled = pullback_extension(ext, f, caps)
    new_name = sec.get("name")
    if new_name:
        scn.extensions[new_name] = pulled.extension
    payload: dict = {
        "pullback_total_invariants": str(_group_invariants(pulled.extension.total, caps)),
    }
    verdict_parts = []
    matched: bool | None = None
    exp = sec.get("expect")
    fname = sec.get("functor")
    if fname:
        F = _lookup(scn.functors, fname, sec.line, "functor")
        rep = check_flatness(F, pulled.extension, caps)
        verdict = "flat" if rep.is_flat else "not-flat"
        verdict_parts.append(verdict)
        payload["flatness"] = rep.to_dict()
        matched = _expect_match(exp, verdict)
    iso_name = sec.get("expect_iso")
    if iso_name:
        target = _lookup(scn.groups, iso_name, sec.line, "group")
        ok = _iso_verdict(pulled.extension.total, target, caps)
        payload["iso_expected"] = iso_name
        payload["iso_matched"] = ok
        matched = ok if matched is None else (matched and ok)
        verdict_parts.append(f"iso-{'ok' if ok else 'mismatch'}")
    inv_text = sec.get("expect_invariants")
    if inv_text:
        want = _parse_invariants(inv_text, sec.line)
        got = _group_invariants(pulled.extension.total, caps)
        ok = want == got
        payload["invariants_expected"] = str(want)
        payload["invariants_got"] = str(got)
        matched = ok if matched is None else (matched and ok)
        verdict_parts.append(f"invariants-{'ok' if ok else 'mismatch'}")
    return DirectiveResult(
        "pullback",
        f"{ext.describe()} along {sec.require('along')}",
        ";".join(verdict_parts) or "computed",
        exp,
        matched,
        payload,
    )


def _run_probe(sec: Section, scn: Scenario, caps: Caps) -> DirectiveResult:
    F = _lookup(scn.functors, sec.require("functor"), sec.line, "functor")
    ext = _lookup(scn.extensions, sec.require("extension"), sec.line, "extension")
    max_order = int(sec.get("max_order", "8") or 8)
    allow = (sec.get("allow_nonflat", "false") or "false").lower() == "true"
    catalog = default_battery(max_order)
    probe = probe_conditional_flatness(F, ext, catalog, caps, allow_nonflat_base=allow)
    verdict = "all-flat" if probe.all_pullbacks_flat else "counterexample"
    exp = sec.get("expect")
    return DirectiveResult(
        "probe",
        f"{F.describe()} on {ext.describe()} over catalog <= {max_order}",
        verdict,
        exp,
        _expect_match(exp, verdict),
        probe.to_dict(),
    )


def _run_localize(sec: Section, scn: Scenario, caps: Caps) -> DirectiveResult:
    F = _lookup(scn.functors, sec.require("functor"), sec.line, "functor")
    G = _lookup(scn.groups, sec.require("group"), sec.line, "group")
    L = apply(F, G, caps)
    if isinstance(L.result, PermGroup):
        desc = f"order {L.result.order(caps)}"
    else:
        desc = L.result.describe()
    payload = {
        "result": desc,
        "result_invariants": str(_group_invariants(L.result, caps)),
    }
    matched: bool | None = None
    verdict = "computed"
    iso_name = sec.get("expect_iso")
    if iso_name:
        target = _lookup(scn.groups, iso_name, sec.line, "group")
        ok = _iso_verdict(L.result, target, caps)
        matched = ok
        verdict = "iso-ok" if ok else "iso-mismatch"
    inv_text = sec.get("expect_invariants")
    if inv_text:
        want = _parse_invariants(inv_text, sec.line)
        got = _group_invariants(L.result, caps)
        ok = want == got
        matched = ok if matched is None else (matched and ok)
        verdict = "invariants-ok" if ok else "invariants-mismatch"
        payload["invariants_expected"] = str(want)
    return DirectiveResult(
        "localize",
        f"{F.describe()} on {sec.require('group')}",
        verdict,
        sec.get("expect"),
        matched,
        payload,
    )


def _run_certify(sec: Section, scn: Scenario, caps: Caps) -> DirectiveResult:
    F = _lookup(scn.functors, sec.require("functor"), sec.line, "functor")
    phi = _test_map_from_hom(sec.require("phi"), scn, sec.line)
    G = _lookup(scn.groups, sec.require("group"), sec.line, "group")
    E = _lookup(scn.groups, sec.require("local"), sec.line, "group")
    surj = _lookup(scn.homs, sec.require("surjection"), sec.line, "hom")
    cert = certify_prop44(phi, F, G, E, surj, caps)
    if not cert.all_hypotheses_hold():
        verdict = "hypothesis-failed"
    elif cert.pullback_local is not None and cert.pullback_local.is_local:
        verdict = "local"
    else:
        verdict = "not-local"
    exp = sec.get("expect")
    return DirectiveResult(
        "certify",
        f"pullback locality certificate for {sec.require('group')}",
        verdict,
        exp,
        _expect_match(exp, verdict),
        cert.to_dict(),
    )


def _run_reproduce(sec: Section, scn: Scenario, caps: Caps) -> DirectiveResult:
    case = sec.require("case")
    rep = reproduce(case, caps)
    verdict = "pass" if rep.passed else "fail"
    exp = sec.get("expect")
    return DirectiveResult(
        "reproduce",
        f"registry case {case}",
        verdict,
        exp,
        _expect_match(exp, verdict),
        rep.to_dict(),
    )


def _run_search(sec: Section, scn: Scenario, caps: Caps) -> DirectiveResult:
    F = _lookup(scn.functors, sec.require("functor"), sec.line, "functor")
    max_order = int(sec.require("max_order"))
    probe_max = int(sec.get("probe_max_order", "16") or 16)
    rep = search_counterexamples(F, max_order, probe_max, caps)
    verdict = "empty" if not rep.hits else "found"
    exp = sec.get("expect")
    return DirectiveResult(
        "search",
        f"{F.describe()} over catalog <= {max_order}",
        verdict,
        exp,
        _expect_match(exp, verdict),
        rep.to_dict(),
    )
