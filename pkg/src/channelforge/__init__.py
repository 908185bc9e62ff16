"""Representations of quantum channels and the transformations between them."""

from .errors import (
    ChannelError,
    ConventionError,
    DomainError,
    NotCPError,
    NumericError,
    ShapeError,
)
from .representations import (
    ChiMatrix,
    ChoiMatrix,
    DensityMatrix,
    KrausRep,
    StinespringRep,
    SuperOp,
    apply_channel,
    apply_chi,
    apply_choi,
    apply_kraus,
    apply_superop,
    apply_sysenv,
    hp_residual,
    is_cp,
    is_hp,
    is_tp,
    min_choi_eigenvalue,
    tp_residual,
)
from .tensor import (
    DEFAULT_TOL,
    BipartiteShape,
    EigenDecomposition,
    adjoint,
    bell_state,
    bipartite_swap,
    conjugate,
    eig_hermitian,
    kron,
    mat_mul,
    partial_trace_x,
    partial_trace_y,
    reshuffle_col,
    reshuffle_row,
    swap_operator,
    trace,
    transpose,
)
from .transforms import (
    chi_change_basis,
    chi_to_choi,
    choi_to_chi,
    choi_to_kraus,
    choi_to_superop,
    convert,
    conversion_path,
    kraus_to_choi,
    kraus_to_stinespring,
    kraus_to_superop,
    superop_change_basis,
    superop_to_choi,
    sysenv_to_choi,
    sysenv_to_kraus,
    sysenv_to_superop,
)
from .vectorize import (
    COL,
    ROW,
    OperatorBasis,
    VecConvention,
    basis_change_op,
    devec,
    elementary_basis,
    pauli_basis,
    roth_vec,
    vec,
)

__version__ = "0.1.0"
