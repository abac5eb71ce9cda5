"""Complex quasi-exactly-solvable Schrodinger potentials with real spectra.

Builds the two implemented potential families (complex sextic oscillator,
Morse type) from their gauge data, solves the finite polynomial block
exactly (up to floating point), re-centers complex spectra by a constant
shift when one exists, and verifies every result independently: symbolic
residuals in the algebraized variable, normalization quadrature, a
PT-symmetry test, the isospectral partner construction, and a grid
discretization cross-check of each eigenvalue.
"""

from .analysis import (
    GridSpec,
    SusyPartner,
    Wavefunction,
    default_grid,
    default_residual_sample,
    fd_refine_energy,
    fd_verify,
    is_pt_symmetric,
    norm_squared,
    psi_eval,
    residual_sup,
    susy_partner,
)
from .cpoly import (
    ONE,
    ZERO,
    CPolynomial,
    monomial,
    poly_add,
    poly_derivative,
    poly_eval,
    poly_mul,
    poly_scale,
    poly_sub,
)
from .errors import (
    ConvergenceFailureError,
    InvarianceViolationError,
    NumericOverflowError,
    PoleError,
    QesError,
    ValidationError,
)
from .families import (
    EVEN,
    MORSE,
    ODD,
    SEXTIC,
    GaugeSpec,
    MorseParams,
    QesModel,
    SexticParams,
    closed_form_block_action,
    make_morse,
    make_sextic,
    potential_eval,
)
from .sl2 import (
    BlockMatrix,
    OperatorCombination,
    SpinJ,
    apply_combination,
    apply_generator,
    build_block,
    commutator_defect,
)
from .spectrum import (
    EigenPair,
    QesSolution,
    ShiftResult,
    char_poly,
    common_imaginary_shift,
    eigen_solve,
    poly_roots,
    solve_model,
)

__version__ = "0.1.0"
