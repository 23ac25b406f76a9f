"""Meet-completions of finite posets via closure operators, and the
closed-set completion and representation of ordered domain algebras."""

from .errors import InputError, OdakitError, ResourceError
from .poset import (
    CompletionMap,
    FinitePoset,
    UpSet,
    all_up_sets,
    iota,
    is_complete_lattice,
    is_meet_completion,
    power_map,
    restrict_product,
    star,
    up_closure,
)
from .closure import (
    ClosureOperator,
    completion_from_gamma,
    gamma_from_completion,
    h_iso,
    identity_closure,
    is_standard_closure,
)
from .expansion import (
    CompletedExpansion,
    PosetExpansion,
    eval_term,
    holds_inequality,
    lift_op,
    sahl_condition,
)
from .relations import (
    AbstractODA,
    BinRel,
    FullRelationAlgebra,
    full_algebra,
    generate_subalgebra,
    rel_comp,
    rel_conv,
    rel_dom,
    rel_id,
    rel_ran,
    rel_zero,
)
from .axioms import check_axioms
from .completion import (
    ODACompletion,
    check_completion_axioms,
    enumerate_closed_sets,
    oda_closure,
    partial_star_explore,
)
from .counterexamples import reproduce_example
from .representation import build_representation, frp_report, verify_representation

__version__ = "0.1.0"
