"""Gell-Mann basis of su(3): matrices, commutators, structure constants.

The eight Gell-Mann matrices are the standard hermitian traceless basis of
3x3 matrices, normalized so that tr(lam_i lam_j) = 2 delta_ij.  Commutators
close on the basis, [lam_i, lam_j] = C^k_ij lam_k, with purely imaginary
structure constants C = 2i f (f real and totally antisymmetric).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SQRT3 = np.sqrt(3.0)

# lam[0] unused so that lam[i] is the conventional 1-based lambda_i.
_LAM = np.zeros((9, 3, 3), dtype=complex)
_LAM[1] = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
_LAM[2] = [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]
_LAM[3] = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]
_LAM[4] = [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
_LAM[5] = [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]
_LAM[6] = [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
_LAM[7] = [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]
_LAM[8] = np.diag([1.0, 1.0, -2.0]) / SQRT3
_LAM.setflags(write=False)

#: All eight matrices stacked, index 0..7 for lambda_1..lambda_8.
LAMBDA = _LAM[1:]

# Cartan split: k = compact su(2) x u(1) part, p = the complement.
K_INDICES = (1, 2, 3, 8)
P_INDICES = (4, 5, 6, 7)


def gell_mann_matrix(i):
    """Return the Gell-Mann matrix lambda_i for i in 1..8 (read-only view)."""
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= 8:
        raise ValueError(f"Gell-Mann index must be an integer in 1..8, got {i!r}")
    return _LAM[i]


def commutator(A, B):
    """Matrix commutator AB - BA."""
    A = np.asarray(A)
    B = np.asarray(B)
    return A @ B - B @ A


def expand_in_basis(M, tol=1e-12):
    """Expand a traceless 3x3 matrix in the Gell-Mann basis.

    Returns the complex coefficient vector c with M = sum_j c_j lam_j,
    c_j = tr(M lam_j) / 2.  The coefficients are exact for any traceless M
    (the basis spans the traceless matrices over C).

    Raises ValueError if M has a non-negligible trace, since such matrices
    are outside the span and the expansion would silently drop the
    trace part.
    """
    M = np.asarray(M, dtype=complex)
    if M.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {M.shape}")
    scale = np.linalg.norm(M)
    tr = np.trace(M)
    if abs(tr) > tol * max(scale, 1.0):
        raise ValueError(
            f"matrix is not traceless: |tr M| = {abs(tr):.3e} "
            f"exceeds {tol:.1e} * max(||M||, 1) = {tol * max(scale, 1.0):.3e}"
        )
    return np.einsum("ab,jba->j", M, LAMBDA) / 2.0


@dataclass(frozen=True)
class StructureTensor:
    """Structure constants C^k_ij of [lam_i, lam_j] = C^k_ij lam_k.

    ``C[i, j, k]`` (0-based indices) is the coefficient of lam_{k+1} in
    [lam_{i+1}, lam_{j+1}].  Entries are purely imaginary; ``f`` exposes the
    real antisymmetric constants of the physics convention C = 2i f.
    """

    C: np.ndarray

    @property
    def f(self):
        """Real structure constants with [lam_i, lam_j] = 2i f_ijk lam_k."""
        return (self.C / 2j).real


@lru_cache(maxsize=1)
def structure_constants():
    """Compute the full structure tensor from the explicit matrices."""
    C = np.empty((8, 8, 8), dtype=complex)
    for i in range(8):
        for j in range(8):
            C[i, j] = expand_in_basis(commutator(LAMBDA[i], LAMBDA[j]))
    C.setflags(write=False)
    return StructureTensor(C)


@dataclass(frozen=True)
class CartanReport:
    """Result of the Cartan-split check: k = span{1,2,3,8}, p = span{4,5,6,7}."""

    ok: bool
    max_leakage: float
    sector_leakage: dict


def verify_cartan_split(tol=1e-12):
    """Check [k,k] in k, [p,p] in k and [k,p] in p componentwise.

    For every basis pair the commutator is expanded in the basis and the
    coefficient mass outside the target subspace is reported.
    """
    k_set = set(K_INDICES)
    leakage = {"[k,k] -> k": 0.0, "[p,p] -> k": 0.0, "[k,p] -> p": 0.0}
    for i in range(1, 9):
        for j in range(1, 9):
            coeffs = expand_in_basis(commutator(_LAM[i], _LAM[j]))
            in_k = i in k_set
            jn_k = j in k_set
            if in_k and jn_k:
                sector, bad = "[k,k] -> k", P_INDICES
            elif not in_k and not jn_k:
                sector, bad = "[p,p] -> k", P_INDICES
            else:
                sector, bad = "[k,p] -> p", K_INDICES
            leak = max(abs(coeffs[b - 1]) for b in bad)
            leakage[sector] = max(leakage[sector], leak)
    worst = max(leakage.values())
    return CartanReport(ok=worst <= tol, max_leakage=worst, sector_leakage=leakage)
