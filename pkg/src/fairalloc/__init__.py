"""Fair and efficient selection of indivisible public goods."""

from .fairness import (
    FairnessReport,
    audit,
    check_alpha_prop,
    check_alpha_rrs,
    check_pareto_optimal,
    check_prop1,
    prop_share,
    rrs_share,
)
from .hardness import (
    GadgetInstance,
    from_eqsp,
    from_ersp,
    from_monotone_sat,
    from_set_cover,
    max_product_bounded_sum,
)
from .model import (
    Budget,
    Cardinality,
    InfeasibleAllocationError,
    NashScore,
    PrivateGoodsInstance,
    PublicDecisionsInstance,
    PublicGoodsInstance,
    ScaleError,
    UnsupportedError,
    UtilityVector,
    enumerate_feasible,
    leximin_compare,
    nash_score,
    utilities,
    utility,
)
from .reductions import (
    ReductionArtifact,
    private_to_public_lex,
    private_to_public_mnw,
    public_to_decision_lex,
    public_to_decision_mnw,
    verify_roundtrip,
)
from .solvers import (
    SolveResult,
    alg_greedy,
    brute_force_decisions,
    brute_force_leximin,
    brute_force_mnw,
    brute_force_private,
    dp_const_agent_types,
    enum_const_good_types,
    solve,
)

__version__ = "0.1.0"
