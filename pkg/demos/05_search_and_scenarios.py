"""Counterexample search over the catalog, the reproduction registry, and the
scenario DSL -- the three front doors of the laboratory.

Run:  python demos/05_search_and_scenarios.py
"""

import pathlib

from flatlab import (
    NilpotentQuotient,
    SpSubfunctor,
    parse_scenario,
    reproduce,
    run_scenario,
    search_counterexamples,
)

print("=== search: the nilpotent-quotient reflection is conditionally flat ===")
rep = search_counterexamples(NilpotentQuotient(2), 16, probe_max_order=8)
print(f"extensions scanned: {rep.extensions_scanned}, flat: {rep.flat_extensions}, "
      f"pullbacks checked: {rep.pullbacks_checked}, counterexamples: {len(rep.hits)}")

print()
print("=== search: the involution subfunctor is not ===")
rep = search_counterexamples(SpSubfunctor(2), 8, probe_max_order=4)
print(f"counterexamples: {len(rep.hits)}; first hit:")
hit = rep.hits[0]
print(f"  {hit.extension} pulled back along {hit.hom} from {hit.test_group}")

print()
print("=== registry ===")
for case in ("nonidempotent-verbal-d8", "thm-4.1", "prop-4.6"):
    result = reproduce(case)
    print(f"{case}: {'pass' if result.passed else 'FAIL'} "
          f"({len(result.assertions)} assertions)")

print()
print("=== scenario DSL ===")
scenario_path = pathlib.Path(__file__).resolve().parent.parent / "scenarios" / "thm-4.1.scn"
result = run_scenario(parse_scenario(scenario_path.read_text()))
for r in result.results:
    print(f"[{r.kind}] {r.summary}: {r.verdict}")
print(f"exit code: {result.exit_code}")
