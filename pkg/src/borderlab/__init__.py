"""borderlab: exact-rational computations for Bayesian mechanism design and
Boolean function analysis at desk scale.

Everything semantic is a Fraction; every feasibility verdict comes with a
checkable witness or certificate; paired fast paths and oracles must agree
exactly, and the test suite holds them to that.
"""

from .boolpp import (
    KhintchineBoundsReport,
    MechanismAuditReport,
    PublicProjectMechanism,
    halfspace_mechanism,
    interim_payment_bound,
    khintchine_bounds_check,
    mechanism_audit,
    pp_opt_rev,
)
from .chow import (
    ChowOptimum,
    ChowVector,
    MajorityExtremalityReport,
    MembershipVerdict,
    UniquenessReport,
    VertexVerdict,
    chow_membership,
    chow_opt,
    chow_uniqueness_check,
    chow_vector,
    conditionals_to_chow,
    is_vertex,
    majority_extremality,
)
from .errors import (
    BorderlabError,
    CapExceeded,
    EvenN,
    IdentityViolated,
    MalformedRule,
    MonotonicityViolated,
    NonPositiveStake,
    NotInPolytope,
    NotRegular,
    RangeError,
    VanishingWitness,
    WrongFamily,
)
from .gadgets import (
    MatchingGadget,
    MatroidGadgetReport,
    PartitionInstance,
    balanced_signings,
    expected_components,
    expected_forest_size,
    expected_max_matching,
    matroid_gadget_check,
    partition_count_via_khintchine,
    partition_gadget,
    stconn_gadget,
    stconn_probability,
    stconn_recover,
)
from .graphs import Multigraph
from .hypercube import (
    DEFAULT_CAP,
    BoundedFunction,
    WeightVector,
    affine_abs_mean,
    affine_positive_mean,
    affine_value,
    expected_max_with_zero,
    khintchine,
    khintchine_naive,
    majority,
    sign_plus,
)
from .interim import (
    DistinguishedSets,
    ExPostRule,
    FeasibilityVerdict,
    IncentiveReport,
    ReducedForm,
    bic_iir_check,
    border_check,
    border_inequality_eval,
    expected_revenue,
    interim_of_expost,
    membership_lp,
    recognize_border_inequality,
)
from .model import (
    Environment,
    Explicit,
    GraphicalMatroid,
    KUnit,
    PublicProject,
    SingleItem,
    SingleMinded,
    TypeProfile,
    ValidationReport,
    feasible_sets,
    profile_probability,
    require_valid,
    uniform_two_point,
    validate,
)
from .optimize import (
    VirtualValuationTable,
    myerson_single_item,
    opt_rev_lp,
    opt_wel,
    virtual_values,
)
from .ratlp import (
    Constraint,
    FarkasCertificate,
    Infeasible,
    LinearProgram,
    LpOutcome,
    Optimal,
    Unbounded,
    feasible_point,
    solve,
)

__version__ = "0.1.0"
