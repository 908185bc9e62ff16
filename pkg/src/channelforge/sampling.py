"""Seeded random unitaries, states and CPTP channels.

All generators draw from ``numpy.random.Generator`` (PCG64) so a seed fixes
the output bit-for-bit.
"""

import numpy as np

from .errors import DomainError
from .representations import DensityMatrix, StinespringRep

RNG_NAME = "numpy.PCG64"


def rng_from(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rows, cols, rng):
    """Matrix of independent standard complex Gaussians."""
    rng = rng_from(rng)
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def orthonormalize(g):
    """Orthonormal columns via QR, with the phases of ``R``'s diagonal removed."""
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    phases = np.where(np.abs(d) > 0, d / np.abs(np.where(d == 0, 1, d)), 1)
    return q * phases


def random_unitary(d, seed=None):
    if d < 1:
        raise DomainError(f"dimension must be positive, got {d}")
    return orthonormalize(ginibre(d, d, seed))


def random_state(d, seed=None, rank=None):
    """Density matrix ``G G^dagger / Tr`` for a ``d x rank`` Gaussian ``G``."""
    if d < 1:
        raise DomainError(f"dimension must be positive, got {d}")
    g = ginibre(d, d if rank is None else rank, seed)
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def random_isometry(rows, cols, seed=None):
    if rows < cols:
        raise DomainError(f"an isometry needs rows >= cols, got {rows}x{cols}")
    return orthonormalize(ginibre(rows, cols, seed))


def random_cptp(dx, dy=None, kraus_rank=None, seed=None):
    """Random channel as a Stinespring isometry with environment dimension ``kraus_rank``."""
    dy = dx if dy is None else dy
    if dx < 1 or dy < 1:
        raise DomainError(f"dimensions must be positive, got ({dx}, {dy})")
    r = dx * dy if kraus_rank is None else int(kraus_rank)
    if not 1 <= r <= dx * dy:
        raise DomainError(f"Kraus rank must lie in [1, {dx * dy}], got {r}")
    if dy * r < dx:
        raise DomainError(f"no isometry from dimension {dx} into {dy}x{r}")
    return StinespringRep(random_isometry(dy * r, dx, seed), r)
