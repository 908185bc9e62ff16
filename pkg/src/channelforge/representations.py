"""Channel representations, state evolution and structural predicates.

Every representation is an immutable dataclass tagged with the input
dimension ``dx`` and output dimension ``dy``.  The ``apply_*`` functions
accept any square operator (they are linear) and return a plain array.
"""

from dataclasses import dataclass, field
from functools import singledispatch
from typing import Optional

import numpy as np

from .errors import ConventionError, DomainError, ShapeError
from .tensor import (
    DEFAULT_TOL,
    as_matrix,
    as_vector,
    bell_state,
    bipartite_swap,
    frobenius,
    partial_trace_x,
    partial_trace_y,
    reshuffle_col,
)
from .vectorize import COL, OperatorBasis, VecConvention, basis_change_op, devec, vec


def _frozen(arr):
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state.

    ``normalized=False`` drops the unit-trace requirement; ``validate=False``
    skips every check.
    """

    mat: np.ndarray
    tol: float = DEFAULT_TOL
    normalized: bool = True
    validate: bool = True

    def __post_init__(self):
        m = as_matrix(self.mat, "density matrix")
        if m.shape[0] != m.shape[1]:
            raise ShapeError(f"density matrix must be square, got {m.shape}")
        object.__setattr__(self, "mat", _frozen(m))
        if not self.validate:
            return
        scale = max(frobenius(m), 1.0)
        if frobenius(m - m.conj().T) > self.tol * scale:
            raise DomainError("density matrix is not Hermitian")
        if np.linalg.eigvalsh((m + m.conj().T) / 2)[0] < -self.tol * scale:
            raise DomainError("density matrix is not positive semidefinite")
        if self.normalized and abs(np.trace(m) - 1) > self.tol * scale:
            raise DomainError(f"density matrix trace is {np.trace(m).real:.12g}, not 1")

    @property
    def dim(self):
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)


def _state(rho, d):
    m = as_matrix(rho.mat if isinstance(rho, DensityMatrix) else rho, "state")
    if m.shape != (d, d):
        raise ShapeError(f"state must be {d}x{d}, got {m.shape}")
    return m


@dataclass(frozen=True, eq=False)
class KrausRep:
    """Operator-sum representation; ``ops`` has shape ``(r, dy, dx)``."""

    ops: np.ndarray
    notes: tuple = ()

    def __post_init__(self):
        ops = self.ops
        if isinstance(ops, (list, tuple)):
            if len(ops) == 0:
                raise ShapeError("a Kraus representation needs at least one operator")
            mats = [as_matrix(k, "Kraus operator") for k in ops]
            if len({m.shape for m in mats}) != 1:
                raise ShapeError("Kraus operators must all share one shape")
            ops = np.stack(mats)
        ops = np.asarray(ops, dtype=complex)
        if ops.ndim == 2:
            ops = ops[None]
        if ops.ndim != 3 or 0 in ops.shape:
            raise ShapeError(f"Kraus operators must form an (r, dy, dx) stack, got {ops.shape}")
        if not np.all(np.isfinite(ops)):
            raise DomainError("Kraus operators contain NaN or Inf")
        object.__setattr__(self, "ops", _frozen(ops))

    @property
    def dx(self):
        return self.ops.shape[2]

    @property
    def dy(self):
        return self.ops.shape[1]

    def __len__(self):
        return self.ops.shape[0]

    def __iter__(self):
        return iter(self.ops)


@dataclass(frozen=True, eq=False)
class SuperOp:
    """Liouville superoperator, a ``dy**2 x dx**2`` matrix in ``conv``."""

    mat: np.ndarray
    dx: int
    dy: int
    conv: VecConvention = COL
    notes: tuple = ()

    def __post_init__(self):
        m = as_matrix(self.mat, "superoperator")
        if m.shape != (self.dy**2, self.dx**2):
            raise ShapeError(f"superoperator for dims ({self.dx}, {self.dy}) must be "
                             f"{self.dy**2}x{self.dx**2}, got {m.shape}")
        conv = VecConvention.of(self.conv)
        if conv.kind == "basis":
            if self.dx != self.dy:
                raise ConventionError("basis-vectorized superoperators need dx == dy")
            conv.operator_basis(self.dx, self.dx)
        object.__setattr__(self, "conv", conv)
        object.__setattr__(self, "mat", _frozen(m))


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """Choi matrix; ``convention`` is ``"col"`` (on X (x) Y) or ``"row"`` (on Y (x) X)."""

    mat: np.ndarray
    dx: int
    dy: int
    convention: str = "col"
    notes: tuple = ()

    def __post_init__(self):
        m = as_matrix(self.mat, "Choi matrix")
        d = self.dx * self.dy
        if m.shape != (d, d):
            raise ShapeError(f"Choi matrix for dims ({self.dx}, {self.dy}) must be {d}x{d}, got {m.shape}")
        if self.convention not in ("col", "row"):
            raise ConventionError(f"unknown Choi convention {self.convention!r}")
        object.__setattr__(self, "mat", _frozen(m))

    def as_col(self):
        if self.convention == "col":
            return self
        return ChoiMatrix(bipartite_swap(self.mat, (self.dy, self.dx)), self.dx, self.dy, "col",
                          self.notes + ("row-Choi swapped to col-Choi",))

    def as_row(self):
        if self.convention == "row":
            return self
        return ChoiMatrix(bipartite_swap(self.mat, (self.dx, self.dy)), self.dx, self.dy, "row",
                          self.notes)


@dataclass(frozen=True, eq=False)
class ChiMatrix:
    """Process matrix with respect to an ordered orthonormal operator basis."""

    mat: np.ndarray
    basis: OperatorBasis
    notes: tuple = ()

    def __post_init__(self):
        m = as_matrix(self.mat, "chi matrix")
        d = len(self.basis)
        if m.shape != (d, d):
            raise ShapeError(f"chi matrix must be {d}x{d} for this basis, got {m.shape}")
        object.__setattr__(self, "mat", _frozen(m))

    @property
    def dx(self):
        return self.basis.dx

    @property
    def dy(self):
        return self.basis.dy


@dataclass(frozen=True, eq=False)
class StinespringRep:
    """Stinespring operator ``A`` from X into Y (x) Z, shape ``(dy * denv, dx)``.

    ``env_state`` and ``restricted_unitary`` carry the system-environment
    picture when known: ``A = U0 (1 (x) |v0>)``.
    """

    a: np.ndarray
    denv: int
    env_state: Optional[np.ndarray] = None
    restricted_unitary: Optional[np.ndarray] = None
    notes: tuple = ()

    def __post_init__(self):
        a = as_matrix(self.a, "Stinespring operator")
        if self.denv < 1 or a.shape[0] % self.denv:
            raise ShapeError(f"Stinespring operator with {a.shape[0]} rows cannot have "
                             f"environment dimension {self.denv}")
        object.__setattr__(self, "a", _frozen(a))
        if self.env_state is not None:
            v0 = as_vector(self.env_state, "environment state")
            if v0.size != self.denv:
                raise ShapeError(f"environment state must have length {self.denv}")
            object.__setattr__(self, "env_state", _frozen(v0))
        if self.restricted_unitary is not None:
            u0 = as_matrix(self.restricted_unitary, "restricted unitary")
            if u0.shape != (a.shape[0], a.shape[1] * self.denv):
                raise ShapeError(f"restricted unitary must be {a.shape[0]}x{a.shape[1] * self.denv}")
            object.__setattr__(self, "restricted_unitary", _frozen(u0))

    @classmethod
    def from_unitary(cls, u, env_state, dx=None):
        """Build ``A = U (1_X (x) |v0>)`` from a joint (or restricted) unitary."""
        u = as_matrix(u, "joint unitary")
        v0 = as_vector(env_state, "environment state")
        if abs(np.linalg.norm(v0) - 1) > DEFAULT_TOL:
            raise DomainError("environment state must be a unit vector")
        denv = v0.size
        if dx is None:
            if u.shape[1] % denv:
                raise ShapeError(f"unitary with {u.shape[1]} columns has no factor of size {denv}")
            dx = u.shape[1] // denv
        if u.shape[1] != dx * denv or u.shape[0] % denv:
            raise ShapeError(f"unitary of shape {u.shape} does not act on X (x) Z with "
                             f"dx={dx}, denv={denv}")
        a = u @ np.kron(np.eye(dx), v0[:, None])
        return cls(a, denv, env_state=v0, restricted_unitary=u)

    @property
    def dx(self):
        return self.a.shape[1]

    @property
    def dy(self):
        return self.a.shape[0] // self.denv

    def blocks(self):
        """``A`` as a ``(dy, denv, dx)`` tensor; ``[:, z, :]`` is ``<z|A``."""
        return self.a.reshape(self.dy, self.denv, self.dx)


# --- evolution -------------------------------------------------------------

def apply_kraus(k, rho):
    rho = _state(rho, k.dx)
    return np.einsum("aij,jk,alk->il", k.ops, rho, k.ops.conj())


def apply_superop(s, rho):
    rho = _state(rho, s.dx)
    out = s.mat @ vec(rho, s.conv)
    return devec(out, s.conv, s.dy, s.dy)


def apply_choi(lam, rho):
    lam = lam.as_col()
    rho = _state(rho, lam.dx)
    lifted = np.kron(rho.T, np.eye(lam.dy)) @ lam.mat
    return partial_trace_x(lifted, (lam.dx, lam.dy))


def apply_chi(chi, rho):
    rho = _state(rho, chi.dx)
    s = chi.basis.elements
    return np.einsum("ab,aij,jk,blk->il", chi.mat, s, rho, s.conj())


def apply_sysenv(se, rho):
    rho = _state(rho, se.dx)
    return partial_trace_y(se.a @ rho @ se.a.conj().T, (se.dy, se.denv))


@singledispatch
def apply_channel(rep, rho):
    """Evolve ``rho`` under any representation."""
    raise TypeError(f"not a channel representation: {type(rep).__name__}")


apply_channel.register(KrausRep, apply_kraus)
apply_channel.register(SuperOp, apply_superop)
apply_channel.register(ChoiMatrix, apply_choi)
apply_channel.register(ChiMatrix, apply_chi)
apply_channel.register(StinespringRep, apply_sysenv)


# --- structural predicates -------------------------------------------------
#
# Each residual is a non-negative number compared against tol * scale.  The
# CP witness is the smallest Choi eigenvalue (or chi eigenvalue, same
# spectrum), which is compared against -tol * ||Choi||_F.

def superop_in_col(s):
    """Re-express a superoperator in col-vec convention."""
    if s.conv.kind == "col":
        return s
    t_in = basis_change_op(COL, s.conv, s.dx, s.dx)
    t_out = basis_change_op(COL, s.conv, s.dy, s.dy)
    mat = t_out.conj().T @ s.mat @ t_in
    return SuperOp(mat, s.dx, s.dy, COL, s.notes + (f"converted from {s.conv.name} to col",))


def chi_as_choi_matrix(chi):
    # column a of V is the col-stacked basis element a
    v = chi.basis.col_matrix()
    return v @ chi.mat @ v.conj().T


def _choi_col_matrix(rep):
    if isinstance(rep, ChoiMatrix):
        return rep.as_col().mat
    if isinstance(rep, SuperOp):
        s = superop_in_col(rep)
        return reshuffle_col(s.mat, (s.dx, s.dy))
    if isinstance(rep, ChiMatrix):
        return chi_as_choi_matrix(rep)
    raise TypeError(f"no Choi matrix for {type(rep).__name__}")


@singledispatch
def tp_residual(rep):
    """Distance from satisfying the trace-preservation condition."""
    raise TypeError(f"not a channel representation: {type(rep).__name__}")


@tp_residual.register
def _(rep: KrausRep):
    gram = np.einsum("aji,ajk->ik", rep.ops.conj(), rep.ops)
    return frobenius(gram - np.eye(rep.dx))


@tp_residual.register
def _(rep: StinespringRep):
    return frobenius(rep.a.conj().T @ rep.a - np.eye(rep.dx))


@tp_residual.register
def _(rep: ChoiMatrix):
    lam = rep.as_col()
    return frobenius(partial_trace_y(lam.mat, (lam.dx, lam.dy)) - np.eye(lam.dx))


@tp_residual.register
def _(rep: SuperOp):
    # <<1_Y| S = <<1_X|, i.e. sum_m S[mm, n nu] = delta(n, nu)
    s = superop_in_col(rep)
    row = bell_state(s.dy) @ s.mat
    return frobenius(row - bell_state(s.dx))


@tp_residual.register
def _(rep: ChiMatrix):
    lam = chi_as_choi_matrix(rep)
    return frobenius(partial_trace_y(lam, (rep.dx, rep.dy)) - np.eye(rep.dx))


@singledispatch
def hp_residual(rep):
    """Distance from satisfying the Hermiticity-preservation condition."""
    raise TypeError(f"not a channel representation: {type(rep).__name__}")


@hp_residual.register(KrausRep)
@hp_residual.register(StinespringRep)
def _(rep):
    return 0.0


@hp_residual.register
def _(rep: ChoiMatrix):
    return frobenius(rep.mat - rep.mat.conj().T)


@hp_residual.register
def _(rep: ChiMatrix):
    return frobenius(rep.mat - rep.mat.conj().T)


@hp_residual.register
def _(rep: SuperOp):
    s = superop_in_col(rep)
    swapped = bipartite_swap(s.mat, (s.dy, s.dy), (s.dx, s.dx))
    return frobenius(s.mat.conj() - swapped)


def min_choi_eigenvalue(rep):
    """Most negative eigenvalue of the (Hermitian part of the) Choi matrix."""
    if isinstance(rep, (KrausRep, StinespringRep)):
        ops = rep.ops if isinstance(rep, KrausRep) else rep.blocks().transpose(1, 0, 2)
        vs = np.array([vec(k) for k in ops])
        m = vs.T @ vs.conj()
    elif isinstance(rep, ChiMatrix):
        m = rep.mat
    else:
        m = _choi_col_matrix(rep)
    return float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])


def _norm(rep):
    if isinstance(rep, KrausRep):
        return max(frobenius(np.einsum("aji,ajk->ik", rep.ops.conj(), rep.ops)), 1.0)
    if isinstance(rep, StinespringRep):
        return max(frobenius(rep.a.conj().T @ rep.a), 1.0)
    return frobenius(rep.mat)


def is_tp(rep, tol=DEFAULT_TOL):
    return tp_residual(rep) <= tol * max(_norm(rep), 1.0)


def is_hp(rep, tol=DEFAULT_TOL):
    return hp_residual(rep) <= tol * _norm(rep)


def is_cp(rep, tol=DEFAULT_TOL):
    """Complete positivity.

    Kraus and Stinespring forms are CP by construction.  Superoperators have
    no direct criterion and are reshuffled to their Choi matrix first.
    """
    if isinstance(rep, (KrausRep, StinespringRep)):
        return True
    if hp_residual(rep) > tol * _norm(rep):
        return False
    return min_choi_eigenvalue(rep) >= -tol * _norm(rep)
