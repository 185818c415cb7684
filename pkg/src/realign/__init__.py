"""Bipartite entanglement detection via matrix realignment.

The realignment criterion rearranges a density matrix on C^m (x) C^n
into an m^2 x n^2 matrix and thresholds its trace norm N: separable
states always satisfy N <= 1, so N > 1 certifies entanglement -- and
f = max(0, log N) doubles as a rough entanglement estimate.  The
package implements that test next to the partial-transpose (PPT)
criterion and two-qubit entanglement of formation, a catalog of named
state families (including the bound entangled ones the criterion was
built to catch), seeded random samplers, and a CLI for single-state
checks, grid sweeps, random searches and measure comparisons.
"""

from .bipartite import (
    BipartiteState,
    KronDecomposition,
    kron_decompose,
    partial_trace,
    partial_transpose,
    realign,
    swap_operator,
    swap_subsystems,
    validate,
)
from .criteria import (
    CriterionReport,
    MeasureReport,
    concurrence,
    dual_realignment_test,
    entanglement_of_formation_2x2,
    measures,
    ppt_test,
    pure_product_test,
    realignment_test,
)
from .errors import (
    ConvergenceError,
    HermiticityError,
    NumericalError,
    PositivityError,
    ShapeError,
    TraceError,
    ValidationError,
)
from .linalg import (
    SpectrumResult,
    elementary,
    hermitian_eigen,
    hermitian_eigenvalues,
    kron,
    matmul,
    svd,
    trace_norm,
    unvec,
    vec,
)
from .matrixfile import MatrixFile, load_matrix, save_matrix
from .states import Ensemble, StateSpec, build, parse_state_spec

__version__ = "0.1.0"

__all__ = [
    "BipartiteState",
    "ConvergenceError",
    "CriterionReport",
    "Ensemble",
    "HermiticityError",
    "KronDecomposition",
    "MatrixFile",
    "MeasureReport",
    "NumericalError",
    "PositivityError",
    "ShapeError",
    "SpectrumResult",
    "StateSpec",
    "TraceError",
    "ValidationError",
    "build",
    "concurrence",
    "dual_realignment_test",
    "elementary",
    "entanglement_of_formation_2x2",
    "hermitian_eigen",
    "hermitian_eigenvalues",
    "kron",
    "kron_decompose",
    "load_matrix",
    "matmul",
    "measures",
    "parse_state_spec",
    "partial_trace",
    "partial_transpose",
    "ppt_test",
    "pure_product_test",
    "realign",
    "realignment_test",
    "save_matrix",
    "svd",
    "swap_operator",
    "swap_subsystems",
    "trace_norm",
    "unvec",
    "validate",
    "vec",
    "__version__",
]
