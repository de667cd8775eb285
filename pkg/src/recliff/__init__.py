"""recliff: retarget Clifford circuits onto alternative native gatesets.

Stabilizer circuits written over {H, S, CX} rarely match what hardware
executes.  This package rewrites a unitary stabilizer circuit so that its
entangling gates become a chosen native two-qubit Clifford (CX, CZ, sqrt(XX),
ECR, or iSWAP via a swap-insertion mode), using the minimum number of quantum
operations: one native entangler per source entangler plus the single-qubit
basis changes the conjugation bookkeeping demands.  Equivalence is certified
by exact stabilizer-tableau comparison up to a reported Pauli frame.
"""

from .pauli import (
    FrameSolveError,
    Pauli,
    PauliProduct,
    PhaseError,
    SignVector,
    commutes,
    multiply,
    multiply_exact,
    solve_frame,
    support,
)
from .tableau import (
    Tableau,
    append_gate,
    conjugate_product,
    equal,
    equal_up_to_sign,
    from_circuit,
    identity,
    permute_qubits,
    pretty,
)
from .gates import (
    GateDef,
    GateSet,
    all_single_qubit_cliffords,
    builtin,
    builtin_gateset,
    classify_entangler,
    commuting_local_pauli,
    decompose_single_qubit,
)
from .circuit import (
    Circuit,
    Instruction,
    ParseError,
    depth,
    emit,
    expand_ecr,
    gate_counts,
    insert_single_qubit,
    parse,
    two_qubit_count,
)
from .compiler import (
    CompilationResult,
    CompileError,
    PropagationError,
    VerificationError,
    compile_circuit,
    compile_with_iswap_heuristic,
    conjugation_lookup,
    conjugation_table,
    extract_frame,
    fix_conjugation,
    fix_propagation,
    initial_condition,
)
from .generators import (
    RandomCircuitSpec,
    SurfaceCodeSpec,
    random_clifford_circuit,
    surface_code_syndrome_extraction,
)
from .reporting import Comparison, Report, compare, report

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CompilationResult",
    "CompileError",
    "Comparison",
    "FrameSolveError",
    "GateDef",
    "GateSet",
    "Instruction",
    "ParseError",
    "Pauli",
    "PauliProduct",
    "PhaseError",
    "PropagationError",
    "RandomCircuitSpec",
    "Report",
    "SignVector",
    "SurfaceCodeSpec",
    "Tableau",
    "VerificationError",
    "all_single_qubit_cliffords",
    "append_gate",
    "builtin",
    "builtin_gateset",
    "classify_entangler",
    "commutes",
    "commuting_local_pauli",
    "compare",
    "compile_circuit",
    "compile_with_iswap_heuristic",
    "conjugate_product",
    "conjugation_lookup",
    "conjugation_table",
    "decompose_single_qubit",
    "depth",
    "emit",
    "equal",
    "equal_up_to_sign",
    "expand_ecr",
    "extract_frame",
    "fix_conjugation",
    "fix_propagation",
    "from_circuit",
    "gate_counts",
    "identity",
    "initial_condition",
    "insert_single_qubit",
    "multiply",
    "multiply_exact",
    "parse",
    "permute_qubits",
    "pretty",
    "random_clifford_circuit",
    "report",
    "solve_frame",
    "support",
    "surface_code_syndrome_extraction",
    "two_qubit_count",
]
