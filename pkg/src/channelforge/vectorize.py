"""Vectorization conventions, operator bases and basis-change operators.

An operator ``A`` from X to Y is a ``dy x dx`` matrix.  Column stacking puts
``A[i, j]`` at position ``i + dy * j``; row stacking puts it at ``dx * i + j``.
Vectorizing in an orthonormal operator basis ``{s_a}`` returns the
coefficients ``Tr[s_a^dagger A]``.
"""

from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

import numpy as np

from .errors import DomainError, NumericError, ShapeError
from .tensor import DEFAULT_TOL, as_matrix, as_vector

PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    """Ordered Hilbert-Schmidt orthonormal basis of ``dy x dx`` operators.

    ``elements`` has shape ``(dx * dy, dy, dx)``.  Orthonormality is checked
    on construction and a failure raises :class:`DomainError`.
    """

    elements: np.ndarray
    label: str = "custom"
    ordering: Optional[str] = None
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        els = np.asarray(self.elements, dtype=complex)
        if els.ndim != 3:
            raise ShapeError(f"basis elements must form a (D, dy, dx) stack, got {els.shape}")
        count, dy, dx = els.shape
        if count != dx * dy:
            raise ShapeError(f"a basis for {dy}x{dx} operators needs {dx * dy} elements, got {count}")
        if not np.all(np.isfinite(els)):
            raise DomainError("basis elements contain NaN or Inf")
        gram = np.einsum("aij,bij->ab", els.conj(), els)
        if np.linalg.norm(gram - np.eye(count)) > self.tol * count:
            raise DomainError("basis is not orthonormal under the Hilbert-Schmidt inner product")
        els.setflags(write=False)
        object.__setattr__(self, "elements", els)

    @property
    def dx(self):
        return self.elements.shape[2]

    @property
    def dy(self):
        return self.elements.shape[1]

    def __len__(self):
        return self.elements.shape[0]

    def __getitem__(self, alpha):
        return self.elements[alpha]

    def col_matrix(self):
        """Matrix whose column ``a`` is the column-stacked element ``a``."""
        return self.elements.transpose(0, 2, 1).reshape(len(self), -1).T.copy()

    def __eq__(self, other):
        if not isinstance(other, OperatorBasis):
            return NotImplemented
        return self.elements.shape == other.elements.shape and np.array_equal(
            self.elements, other.elements
        )

    __hash__ = None


def elementary_basis(dx, dy=None, ordering="col"):
    """Matrix units ``|i><j|`` ordered to match col or row stacking."""
    dy = dx if dy is None else dy
    dx, dy = int(dx), int(dy)
    if dx < 1 or dy < 1:
        raise DomainError(f"dimensions must be positive, got ({dx}, {dy})")
    if ordering not in ("col", "row"):
        raise DomainError(f"ordering must be 'col' or 'row', got {ordering!r}")
    els = np.zeros((dx * dy, dy, dx), dtype=complex)
    for i in range(dy):
        for j in range(dx):
            alpha = i + dy * j if ordering == "col" else dx * i + j
            els[alpha, i, j] = 1.0
    return OperatorBasis(els, label="elementary", ordering=ordering)


def pauli_basis(n_qubits):
    """Normalized n-qubit Pauli products in lexicographic (I, X, Y, Z) order."""
    n = int(n_qubits)
    if n < 1:
        raise DomainError(f"pauli_basis needs at least one qubit, got {n}")
    scale = 1.0 / np.sqrt(2.0**n)
    els = []
    for idx in np.ndindex(*([4] * n)):
        els.append(reduce(np.kron, (PAULIS[k] for k in idx)) * scale)
    return OperatorBasis(np.array(els), label="pauli")


def pauli_qubits(d):
    n = int(d).bit_length() - 1
    if d < 2 or 2**n != d:
        raise DomainError(f"Pauli basis needs a power-of-two dimension, got {d}")
    return n


@dataclass(frozen=True)
class VecConvention:
    """``kind`` is ``"col"``, ``"row"`` or ``"basis"``; ``basis`` only for the last."""

    kind: str = "col"
    basis: Optional[OperatorBasis] = None

    def __post_init__(self):
        if self.kind not in ("col", "row", "basis"):
            raise DomainError(f"unknown vectorization kind {self.kind!r}")
        if (self.kind == "basis") != (self.basis is not None):
            raise DomainError("an operator basis is required exactly when kind='basis'")

    @classmethod
    def of(cls, conv):
        """Coerce ``"col"``, ``"row"``, an OperatorBasis or a VecConvention."""
        if isinstance(conv, VecConvention):
            return conv
        if isinstance(conv, OperatorBasis):
            return cls("basis", conv)
        if conv in ("col", "row"):
            return cls(conv)
        raise DomainError(f"cannot interpret {conv!r} as a vectorization convention")

    def operator_basis(self, dx, dy):
        """The orthonormal basis this convention vectorizes against."""
        if self.kind == "basis":
            if (self.basis.dx, self.basis.dy) != (dx, dy):
                raise ShapeError(
                    f"basis acts on {self.basis.dy}x{self.basis.dx} operators, "
                    f"not {dy}x{dx}"
                )
            return self.basis
        return elementary_basis(dx, dy, ordering=self.kind)

    @property
    def name(self):
        if self.kind != "basis":
            return self.kind
        return self.basis.label


COL = VecConvention("col")
ROW = VecConvention("row")


def vec(a, conv=COL):
    a = as_matrix(a)
    conv = VecConvention.of(conv)
    if conv.kind == "col":
        return a.reshape(-1, order="F").copy()
    if conv.kind == "row":
        return a.reshape(-1).copy()
    dy, dx = a.shape
    basis = conv.operator_basis(dx, dy)
    return np.einsum("aij,ij->a", basis.elements.conj(), a)


def devec(v, conv=COL, dx=None, dy=None):
    """Inverse of :func:`vec`, producing a ``dy x dx`` operator."""
    v = as_vector(v)
    conv = VecConvention.of(conv)
    if dx is None and dy is None and conv.kind == "basis":
        dx, dy = conv.basis.dx, conv.basis.dy
    if dx is None or dy is None:
        d = int(round(np.sqrt(v.size)))
        dx = d if dx is None else dx
        dy = d if dy is None else dy
    if v.size != dx * dy:
        raise ShapeError(f"vector of length {v.size} cannot be a {dy}x{dx} operator")
    if conv.kind == "col":
        return v.reshape(dx, dy).T.copy()
    if conv.kind == "row":
        return v.reshape(dy, dx).copy()
    basis = conv.operator_basis(dx, dy)
    return np.einsum("a,aij->ij", v, basis.elements)


def basis_change_op(src, dst, dx, dy=None):
    """Unitary ``T`` with ``T @ vec(A, src) == vec(A, dst)`` for every ``A``.

    Entry ``[a, b]`` is ``Tr[w_a^dagger s_b]`` for source basis ``s`` and
    target basis ``w``.
    """
    dy = dx if dy is None else dy
    s = VecConvention.of(src).operator_basis(dx, dy)
    w = VecConvention.of(dst).operator_basis(dx, dy)
    return np.einsum("aij,bij->ab", w.elements.conj(), s.elements)


def roth_vec(a, b, c, tol=1e-12):
    """``vec(A B C)`` in col convention, checked against ``(C^T (x) A) vec(B)``."""
    a, b, c = as_matrix(a, "a"), as_matrix(b, "b"), as_matrix(c, "c")
    if a.shape[1] != b.shape[0] or b.shape[1] != c.shape[0]:
        raise ShapeError(f"shapes {a.shape}, {b.shape}, {c.shape} do not compose")
    direct = vec(a @ b @ c)
    lifted = np.kron(c.T, a) @ vec(b)
    scale = max(np.linalg.norm(a) * np.linalg.norm(b) * np.linalg.norm(c), 1.0)
    if np.linalg.norm(direct - lifted) > tol * scale:
        raise NumericError("vec(ABC) and (C^T (x) A) vec(B) disagree")
    return direct
