"""Orthogonal traceless Hermitian basis of su(d) and its structure constants.

The basis consists of the generalized Gell-Mann matrices, normalized so that
Tr(sigma_a sigma_b) = 2 delta_ab.  The totally antisymmetric and totally
symmetric structure constants f_abc, d_abc are read off from the triple
traces Tr(sigma_a sigma_b sigma_c) = 2 d_abc + 2i f_abc.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class SuBasis:
    """Ordered basis {sigma_a} of traceless Hermitian d x d matrices.

    Ordering: symmetric off-diagonal pairs E_jk + E_kj for j < k
    (lexicographic), then antisymmetric pairs -i(E_jk - E_kj), then the
    d - 1 diagonal matrices sqrt(2/(l(l+1))) (sum_{m<=l} E_mm - l E_{l+1,l+1}).
    For d = 2 this reproduces the Pauli matrices in the order (x, y, z).
    """

    d: int
    matrices: np.ndarray  # (d**2 - 1, d, d) complex


@dataclass
class StructureConstants:
    """f (totally antisymmetric) and dsym (totally symmetric) rank-3 arrays.

    Defined by Tr(sigma_a sigma_b sigma_c) = 2 dsym_abc + 2i f_abc; dense
    storage, fine for d <= 6 (at most 35**3 entries per array).
    """

    d: int
    f: np.ndarray     # (m, m, m) real, m = d**2 - 1
    dsym: np.ndarray  # (m, m, m) real


def build_su_basis(d: int) -> SuBasis:
    """Construct the generalized Gell-Mann basis for su(d).

    The result is deterministic, every matrix is Hermitian and traceless,
    and Tr(sigma_a sigma_b) = 2 delta_ab holds exactly up to roundoff.

    Raises
    ------
    ValueError
        If d < 2.
    """
    if d < 2:
        raise ValueError(f"su(d) basis needs d >= 2, got d={d}")
    mats = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = 1.0
            m[k, j] = 1.0
            mats.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            mats.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        m[np.arange(l), np.arange(l)] = 1.0
        m[l, l] = -float(l)
        mats.append(np.sqrt(2.0 / (l * (l + 1))) * m)
    return SuBasis(d=d, matrices=np.array(mats))


def structure_constants(basis: SuBasis) -> StructureConstants:
    """Compute f_abc = Im Tr(sigma_a sigma_b sigma_c) / 2 and the symmetric
    counterpart dsym_abc = Re Tr(sigma_a sigma_b sigma_c) / 2."""
    S = basis.matrices
    triple = np.einsum('aij,bjk,cki->abc', S, S, S)
    return StructureConstants(d=basis.d, f=np.imag(triple) / 2.0,
                              dsym=np.real(triple) / 2.0)


def star_product(r1: np.ndarray, r2: np.ndarray,
                 sc: StructureConstants) -> np.ndarray:
    """Symmetric star product (r1 * r2)_c = dsym_abc r1_a r2_b.

    Identically zero for d = 2, where dsym vanishes.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    m = sc.d * sc.d - 1
    if r1.shape != (m,) or r2.shape != (m,):
        raise ValueError(
            f"star_product needs two vectors of length {m}, "
            f"got {r1.shape} and {r2.shape}")
    return np.einsum('abc,a,b->c', sc.dsym, r1, r2)


def basis_to_json(basis: SuBasis) -> dict:
    """Debug dump: each matrix as a d x d array of [re, im] pairs."""
    mats = [[[[float(z.real), float(z.imag)] for z in row] for row in m]
            for m in basis.matrices]
    return {"d": basis.d, "matrices": mats}
