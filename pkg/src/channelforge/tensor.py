"""Dense complex matrix kernel and bipartite wire-bending operations.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Bipartite matrices on X (x) Y use the standard Kronecker ordering, i.e. the
composite index of ``|m> (x) |mu>`` is ``dy * m + mu``.
"""

from typing import NamedTuple

import numpy as np

from .errors import DomainError, NumericError, ShapeError

DEFAULT_TOL = 1e-10


class BipartiteShape(NamedTuple):
    """Dimensions ``(dx, dy)`` of the two factors of a bipartite space."""

    dx: int
    dy: int

    @property
    def dim(self):
        return self.dx * self.dy


class EigenDecomposition(NamedTuple):
    """Eigenvalues in descending order and matching unit eigenvectors.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D complex array or raise."""
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ShapeError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains NaN or Inf entries")
    return arr


def as_vector(v, name="vector"):
    arr = np.asarray(v, dtype=complex)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.reshape(-1)
    if arr.ndim != 1 or arr.size == 0:
        raise ShapeError(f"{name} must be a non-empty 1-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains NaN or Inf entries")
    return arr


def as_shape(shape):
    dx, dy = (int(x) for x in shape)
    if dx < 1 or dy < 1:
        raise DomainError(f"subsystem dimensions must be positive, got ({dx}, {dy})")
    return BipartiteShape(dx, dy)


def frobenius(a):
    return float(np.linalg.norm(a))


def mat_mul(a, b):
    a, b = as_matrix(a, "a"), as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b):
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def trace(a):
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"trace needs a square matrix, got {a.shape}")
    return complex(np.trace(a))


def transpose(m):
    return as_matrix(m).T.copy()


def conjugate(m):
    return as_matrix(m).conj()


def adjoint(m):
    return as_matrix(m).conj().T.copy()


def bell_state(d):
    """Unnormalized maximally entangled vector ``sum_i |i>|i>`` of length d**2."""
    d = int(d)
    if d < 1:
        raise DomainError(f"bell_state dimension must be >= 1, got {d}")
    phi = np.zeros(d * d, dtype=complex)
    phi[:: d + 1] = 1.0
    return phi


def swap_operator(dx, dy):
    """The operator taking ``|x>|y>`` to ``|y>|x>``; maps X (x) Y to Y (x) X."""
    dx, dy = as_shape((dx, dy))
    out = np.zeros((dy * dx, dx * dy), dtype=complex)
    for i in range(dx):
        for j in range(dy):
            out[j * dx + i, i * dy + j] = 1.0
    return out


def _square_tensor(m, shape):
    m = as_matrix(m)
    shape = as_shape(shape)
    if m.shape != (shape.dim, shape.dim):
        raise ShapeError(
            f"expected a {shape.dim}x{shape.dim} bipartite matrix for dims "
            f"({shape.dx}, {shape.dy}), got {m.shape}"
        )
    return m.reshape(shape.dx, shape.dy, shape.dx, shape.dy), shape


def partial_trace_x(m, shape):
    """Trace out the first factor: ``sum_m M[m mu, m nu]``."""
    t, _ = _square_tensor(m, shape)
    return np.einsum("aman->mn", t)


def partial_trace_y(m, shape):
    """Trace out the second factor: ``sum_mu M[m mu, n mu]``."""
    t, _ = _square_tensor(m, shape)
    return np.einsum("ambm->ab", t)


def bipartite_swap(m, shape, col_shape=None):
    """Exchange the two tensor factors on both sides of ``m``.

    Rows are read as X (x) Y with dims ``shape``; columns use ``col_shape``
    (defaults to ``shape``).  The result is ``SWAP_rows . m . SWAP_cols^T``.
    """
    m = as_matrix(m)
    rs = as_shape(shape)
    cs = rs if col_shape is None else as_shape(col_shape)
    if m.shape != (rs.dim, cs.dim):
        raise ShapeError(f"matrix of shape {m.shape} does not match dims {tuple(rs)} x {tuple(cs)}")
    t = m.reshape(rs.dx, rs.dy, cs.dx, cs.dy).transpose(1, 0, 3, 2)
    return t.reshape(rs.dim, cs.dim).copy()


def _reshuffle_dims(m, shape, other):
    m = as_matrix(m)
    shape = as_shape(shape)
    dx, dy = shape
    if m.shape == (dx * dy, dx * dy):
        return m.reshape(dx, dy, dx, dy)
    rows, cols = other(dx, dy)
    if m.shape == (rows[0] * rows[1], cols[0] * cols[1]):
        return m.reshape(*rows, *cols)
    raise ShapeError(f"matrix of shape {m.shape} cannot be reshuffled with dims ({dx}, {dy})")


def reshuffle_col(m, shape):
    """Column reshuffling, the Choi <-> superoperator duality in col convention.

    A bipartite ``M`` on X (x) Y maps to a ``dy**2 x dx**2`` matrix with
    ``M^R[(nu, mu), (n, m)] = M[(m, mu), (n, nu)]``; the reverse direction
    uses the same rule, so the map is an involution.
    """
    t = _reshuffle_dims(m, shape, lambda dx, dy: ((dy, dy), (dx, dx)))
    a, b, c, d = t.shape
    return t.transpose(3, 1, 2, 0).reshape(d * b, c * a).copy()


def reshuffle_row(m, shape):
    """Row reshuffling: ``M^R[(m, n), (mu, nu)] = M[(m, mu), (n, nu)]``.

    Maps a bipartite ``M`` on X (x) Y to a ``dx**2 x dy**2`` matrix and back.
    For a row-convention Choi matrix (which lives on Y (x) X) pass the dims
    as ``(dy, dx)``.
    """
    t = _reshuffle_dims(m, shape, lambda dx, dy: ((dx, dx), (dy, dy)))
    a, b, c, d = t.shape
    return t.transpose(0, 2, 1, 3).reshape(a * c, b * d).copy()


def eig_hermitian(h, tol=DEFAULT_TOL):
    """Spectral decomposition of a Hermitian matrix.

    Eigenvalues come back in descending order.  Each eigenvector's phase is
    fixed so that its largest-magnitude component is real and positive.
    Within a degenerate cluster the basis is arbitrary.
    """
    h = as_matrix(h, "h")
    if h.shape[0] != h.shape[1]:
        raise ShapeError(f"eig_hermitian needs a square matrix, got {h.shape}")
    scale = frobenius(h)
    if frobenius(h - h.conj().T) > tol * max(scale, 1.0):
        raise DomainError("matrix is not Hermitian within tolerance")
    try:
        w, v = np.linalg.eigh((h + h.conj().T) / 2)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver did not converge: {exc}") from exc
    if not (np.all(np.isfinite(w)) and np.all(np.isfinite(v))):
        raise NumericError("eigensolver produced non-finite values")
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    pivots = np.argmax(np.abs(v), axis=0)
    phases = v[pivots, np.arange(v.shape[1])]
    cols = np.arange(v.shape[1])
    v = v * (np.abs(phases) / phases)
    v[pivots, cols] = np.abs(phases)
    return EigenDecomposition(w, v)
