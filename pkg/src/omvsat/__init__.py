"""Compile CNF into a reversible gate circuit, simulate it and decide SAT by logistic-map amplification."""
from .amplifier import (
    AmplificationTrace,
    AmplifierState,
    LogisticParams,
    amplify,
    density_view,
    empirical_t_c,
    logistic_step,
    step_bounds,
    t_c,
)
from .cnf import (
    Clause,
    ClauseSet,
    CNFError,
    Literal,
    enumerate_satisfying,
    eval_clause,
    eval_clause_set,
    load_dimacs,
    parse_dimacs,
)
from .compiler import (
    CCNot,
    Circuit,
    CNot,
    Hadamard,
    Not,
    RegisterLayout,
    compute_layout,
    gate_census,
    synthesize,
)
from .complexity import ComplexityReport, t_q_bound, t_q_closed_form
from .simulator import (
    MeasurementSummary,
    StateVector,
    apply_gate,
    basis_state,
    run,
    simulate,
    success_probability,
    truth_table_run,
)

__version__ = "0.1.0"
