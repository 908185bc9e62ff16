"""Conversions between channel representations.

The Choi matrix is the hub: superoperators reach Kraus and Stinespring
forms only through it.  Inputs in non-default conventions are converted to
col conventions first and the conversion is recorded in ``notes``.
"""

from collections import deque

import numpy as np

from .errors import DomainError, NotCPError, ShapeError
from .representations import (
    ChiMatrix,
    ChoiMatrix,
    KrausRep,
    StinespringRep,
    SuperOp,
    superop_in_col,
)
from .tensor import (
    DEFAULT_TOL,
    as_matrix,
    as_vector,
    eig_hermitian,
    frobenius,
    partial_trace_y,
    reshuffle_col,
)
from .vectorize import COL, OperatorBasis, VecConvention, basis_change_op, devec, vec

DEFAULT_RANK_TOL = 1e-12


def superop_to_choi(s):
    s = superop_in_col(s)
    return ChoiMatrix(reshuffle_col(s.mat, (s.dx, s.dy)), s.dx, s.dy, "col", s.notes)


def choi_to_superop(lam):
    lam = lam.as_col()
    return SuperOp(reshuffle_col(lam.mat, (lam.dx, lam.dy)), lam.dx, lam.dy, COL, lam.notes)


def kraus_to_superop(k):
    mat = sum(np.kron(op.conj(), op) for op in k.ops)
    return SuperOp(mat, k.dx, k.dy, COL)


def _require_stinespring(se):
    if not isinstance(se, StinespringRep):
        raise DomainError("system-environment data (a Stinespring operator or U and v0) is required")


def sysenv_to_superop(se):
    """``S = sum_z conj(<z|A) (x) <z|A`` over the computational environment basis."""
    _require_stinespring(se)
    b = se.blocks()
    mat = np.einsum("izj,kzl->ikjl", b.conj(), b).reshape(se.dy**2, se.dx**2)
    return SuperOp(mat, se.dx, se.dy, COL)


def kraus_to_choi(k):
    vs = np.array([vec(op) for op in k.ops])
    return ChoiMatrix(vs.T @ vs.conj(), k.dx, k.dy, "col")


def sysenv_to_choi(se):
    """Act with the channel on one half of the Bell state, one matrix unit at a time."""
    _require_stinespring(se)
    dx, dy = se.dx, se.dy
    lam = np.zeros((dx * dy, dx * dy), dtype=complex)
    for i in range(dx):
        for j in range(dx):
            unit = np.zeros((dx, dx))
            unit[i, j] = 1.0
            out = partial_trace_y(se.a @ unit @ se.a.conj().T, (dy, se.denv))
            lam += np.kron(unit, out)
    return ChoiMatrix(lam, dx, dy, "col")


def choi_to_kraus(lam, rank_tol=DEFAULT_RANK_TOL, tol=DEFAULT_TOL):
    """Canonical Kraus operators from the spectral decomposition of the Choi matrix.

    Eigenvalues at or below ``rank_tol`` times the largest are dropped; the
    rest give ``K_a = sqrt(lambda_a) * devec(phi_a)`` in descending order.
    """
    lam = lam.as_col()
    eig = eig_hermitian(lam.mat, tol)
    w, v = eig
    floor = -tol * frobenius(lam.mat)
    if w[-1] < floor:
        raise NotCPError(
            f"Choi matrix has eigenvalue {w[-1]:.12g} below {floor:.3g}; the map is not CP",
            min_eigenvalue=float(w[-1]),
        )
    keep = w > rank_tol * max(w[0], 0.0)
    if not np.any(keep):
        raise DomainError("Choi matrix is numerically zero; no Kraus operators")
    ops = [np.sqrt(w[a]) * devec(v[:, a], COL, lam.dx, lam.dy) for a in np.flatnonzero(keep)]
    return KrausRep(ops, notes=lam.notes)


def _check_env_basis(env_basis, denv, tol=DEFAULT_TOL):
    if env_basis is None:
        return np.eye(denv, dtype=complex)
    b = as_matrix(env_basis, "environment basis")
    if b.shape != (denv, denv):
        raise ShapeError(f"environment basis must be {denv}x{denv}, got {b.shape}")
    if frobenius(b.conj().T @ b - np.eye(denv)) > tol * denv:
        raise DomainError("environment basis is not orthonormal")
    return b


def sysenv_to_kraus(se, env_basis=None):
    """``K_a = <a|A`` for each column ``|a>`` of ``env_basis`` (default computational)."""
    _require_stinespring(se)
    b = _check_env_basis(env_basis, se.denv)
    ops = np.einsum("za,izj->aij", b.conj(), se.blocks())
    return KrausRep(ops, notes=se.notes)


def kraus_to_stinespring(k, v0=None):
    """``A = sum_a K_a (x) |a>``; with ``v0`` also ``U0 = sum_a K_a (x) |a><v0|``."""
    r = len(k)
    a = np.stack(list(k.ops), axis=1).reshape(k.dy * r, k.dx)
    if v0 is None:
        return StinespringRep(a, r, notes=k.notes)
    v0 = as_vector(v0, "environment state")
    if v0.size != r:
        raise ShapeError(f"environment state must have length {r}")
    if abs(np.linalg.norm(v0) - 1) > DEFAULT_TOL:
        raise DomainError("environment state must be a unit vector")
    u0 = sum(np.kron(op, np.outer(np.eye(r)[alpha], v0.conj())) for alpha, op in enumerate(k.ops))
    return StinespringRep(a, r, env_state=v0, restricted_unitary=u0, notes=k.notes)


def _col_to(basis, dx, dy):
    if not isinstance(basis, OperatorBasis):
        basis = VecConvention.of(basis).operator_basis(dx, dy)
    return basis, basis_change_op(COL, basis, dx, dy)


def choi_to_chi(lam, basis):
    """``chi = T Lambda T^dagger`` with ``T`` the col-to-basis change operator."""
    lam = lam.as_col()
    basis, t = _col_to(basis, lam.dx, lam.dy)
    return ChiMatrix(t @ lam.mat @ t.conj().T, basis, lam.notes)


def chi_to_choi(chi):
    _, t = _col_to(chi.basis, chi.dx, chi.dy)
    return ChoiMatrix(t.conj().T @ chi.mat @ t, chi.dx, chi.dy, "col", chi.notes)


def chi_change_basis(chi, new_basis):
    t = basis_change_op(chi.basis, new_basis, chi.dx, chi.dy)
    return ChiMatrix(t @ chi.mat @ t.conj().T, new_basis, chi.notes)


def superop_change_basis(s, new_conv):
    """``S' = T_Y S T_X^dagger`` with ``T`` the vectorization change operators."""
    new_conv = VecConvention.of(new_conv)
    if new_conv.kind == "basis" and s.dx != s.dy:
        raise ShapeError("basis-vectorized superoperators need dx == dy")
    t_in = basis_change_op(s.conv, new_conv, s.dx, s.dx)
    t_out = basis_change_op(s.conv, new_conv, s.dy, s.dy)
    return SuperOp(t_out @ s.mat @ t_in.conj().T, s.dx, s.dy, new_conv, s.notes)


# --- routing ---------------------------------------------------------------

REPRESENTATIONS = ("kraus", "stinespring", "superop", "choi", "chi")

_EDGES = {
    "kraus": ("superop", "choi", "stinespring"),
    "stinespring": ("kraus", "superop", "choi"),
    "superop": ("choi",),
    "choi": ("superop", "kraus", "chi"),
    "chi": ("choi",),
}

_TYPES = {
    KrausRep: "kraus",
    StinespringRep: "stinespring",
    SuperOp: "superop",
    ChoiMatrix: "choi",
    ChiMatrix: "chi",
}


def representation_name(rep):
    try:
        return _TYPES[type(rep)]
    except KeyError:
        raise TypeError(f"not a channel representation: {type(rep).__name__}") from None


def conversion_path(src, dst):
    """Shortest chain of direct transforms from ``src`` to ``dst`` (inclusive)."""
    for name in (src, dst):
        if name not in _EDGES:
            raise DomainError(f"unknown representation {name!r}")
    prev = {src: None}
    queue = deque([src])
    while queue:
        node = queue.popleft()
        if node == dst:
            break
        for nxt in _EDGES[node]:
            if nxt not in prev:
                prev[nxt] = node
                queue.append(nxt)
    path = [dst]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


def _step(rep, dst, basis, vec_conv, v0, rank_tol, tol):
    src = representation_name(rep)
    if (src, dst) == ("kraus", "superop"):
        return kraus_to_superop(rep)
    if (src, dst) == ("kraus", "choi"):
        return kraus_to_choi(rep)
    if (src, dst) == ("kraus", "stinespring"):
        return kraus_to_stinespring(rep, v0)
    if (src, dst) == ("stinespring", "kraus"):
        return sysenv_to_kraus(rep)
    if (src, dst) == ("stinespring", "superop"):
        return sysenv_to_superop(rep)
    if (src, dst) == ("stinespring", "choi"):
        return sysenv_to_choi(rep)
    if (src, dst) == ("superop", "choi"):
        return superop_to_choi(rep)
    if (src, dst) == ("choi", "superop"):
        return choi_to_superop(rep)
    if (src, dst) == ("choi", "kraus"):
        return choi_to_kraus(rep, rank_tol, tol)
    if (src, dst) == ("choi", "chi"):
        return choi_to_chi(rep, basis)
    if (src, dst) == ("chi", "choi"):
        return chi_to_choi(rep)
    raise DomainError(f"no direct transform from {src} to {dst}")


def default_basis(dx, dy):
    """Pauli basis for square power-of-two dims, col-ordered matrix units otherwise."""
    from .vectorize import elementary_basis, pauli_basis, pauli_qubits

    if dx == dy:
        try:
            return pauli_basis(pauli_qubits(dx))
        except DomainError:
            pass
    return elementary_basis(dx, dy, "col")


def convert(rep, target, basis=None, vec_conv=None, choi_convention="col", v0=None,
            rank_tol=DEFAULT_RANK_TOL, tol=DEFAULT_TOL):
    """Convert ``rep`` to the ``target`` representation.

    Returns ``(result, path)`` where ``path`` lists the representations
    visited.  ``basis`` is used for chi targets, ``vec_conv`` for superoperator
    targets and ``choi_convention`` for Choi targets.
    """
    src = representation_name(rep)
    path = conversion_path(src, target)
    if target == "chi" and basis is None:
        basis = rep.basis if src == "chi" else default_basis(rep.dx, rep.dy)
    if target == "stinespring" and v0 is not None and src == "stinespring":
        path = [src, "kraus", target]
    out = rep
    for dst in path[1:]:
        out = _step(out, dst, basis, vec_conv, v0, rank_tol, tol)
    if target == "chi" and out.basis != basis:
        out = chi_change_basis(out, basis)
    if target == "superop" and vec_conv is not None:
        conv = VecConvention.of(vec_conv)
        if conv != out.conv:
            out = superop_change_basis(out, conv)
    if target == "choi":
        out = out.as_col() if choi_convention == "col" else out.as_col().as_row()
    return out, path
