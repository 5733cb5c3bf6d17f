"""flatlab: an exact desk-scale laboratory for deciding when group
localization functors preserve extensions, and when pulling an extension
back destroys that preservation.

Highlights
----------
- finite permutation groups and finitely generated abelian groups, all
  arithmetic exact;
- the functor cast: variety reflections, nilpotent quotients,
  abelianization, nullifications, quasi-variety reflections, and the
  order-p-generated subgroup;
- extensions, their pullbacks, three-flag flatness verdicts with element
  witnesses, exhaustive conditional-flatness probes, and a counterexample
  registry runnable from the command line (``flatlab reproduce``).
"""

from .abelian import (
    AbGroup,
    AbHom,
    IntMatrix,
    ab_cokernel,
    ab_from_invariants,
    ab_image,
    ab_kernel,
    ab_pullback,
    enumerate_ab_homs,
    n_torsion,
    perm_to_abelian,
    smith_normal_form,
)
from .caps import DEFAULT_CAPS, Caps
from .catalog import (
    alternating,
    catalog,
    cyclic,
    default_battery,
    dihedral,
    elementary_abelian,
    parse_group_literal,
    product,
    quaternion,
    symmetric,
    trivial_group,
)
from .errors import (
    CapExceededError,
    CatalogError,
    FlatlabError,
    FlavorMismatchError,
    InvalidHomomorphismError,
    NotAbelianError,
    NotASubgroupError,
    NotNormalError,
    NotSurjectiveError,
    RealizationError,
    ScenarioError,
    UnknownCaseError,
    UnsupportedFunctorError,
)
from .extensions import (
    CertifyReport,
    Extension,
    FlatnessReport,
    ProbeReport,
    certify_prop44,
    check_flatness,
    check_right_exactness,
    extension_from_normal_subgroup,
    extensions_from_group,
    from_surjection,
    induced_sequence,
    probe_conditional_flatness,
    pullback_along_localization,
    pullback_extension,
)
from .functors import (
    Abelianization,
    FunctorSpec,
    LocalityReport,
    LocalizedResult,
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
from .homs import enumerate_hom_images, enumerate_homs, hom_count, realize_presentation
from .perm import Permutation, parse_cycle_string
from .permgroup import (
    GroupHom,
    PermGroup,
    abelian_census_invariants,
    direct_product,
    find_isomorphism,
    is_isomorphic,
    is_normal,
    normal_closure,
    normal_subgroups,
    pullback_group,
    quotient,
    small_generating_set,
)
from .registry import CaseReport, case_ids, reproduce
from .scenario import Scenario, parse_scenario, run_scenario
from .search import SearchReport, search_counterexamples
from .verbal import (
    derived_subgroup,
    lower_central_series,
    s_p_subgroup,
    verbal_subgroup,
    word_values,
)
from .words import Presentation, Word, parse_word

__version__ = "0.1.0"
