"""Bloch-vector representation of qudit density matrices.

A d x d density matrix is parameterized by a real vector r of length
d**2 - 1 through

    rho = I/d + sqrt((d+1)/(2d)) sum_a r_a sigma_a,

with sigma_a the su(d) basis from `su_basis`.  Under this normalization a
pure state has |r|^2 = (d-1)/(d+1) and satisfies the star-product condition
r * r = (d-2) sqrt(2/(d(d+1))) r.
"""

import numpy as np

from .su_basis import SuBasis, StructureConstants, star_product

# eigensolvers return tiny negative eigenvalues for boundary states
PSD_TOL = 1e-10
PURITY_TOL = 1e-9


def validate_density_matrix(rho: np.ndarray, herm_tol: float = 1e-12,
                            trace_tol: float = 1e-12,
                            eig_tol: float = PSD_TOL) -> None:
    """Raise ValueError unless rho is Hermitian, unit-trace and PSD."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace is {tr!r}, expected 1")
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    if min_eig < -eig_tol:
        raise ValueError(f"not PSD: min eigenvalue {min_eig:.3e}")


def from_bloch(r: np.ndarray, basis: SuBasis) -> np.ndarray:
    """Candidate density matrix I/d + sqrt((d+1)/(2d)) r . sigma.

    Hermitian with unit trace for any real r; positive semidefiniteness is
    not guaranteed (check with `is_state`).
    """
    d = basis.d
    r = np.asarray(r, dtype=float)
    if r.shape != (d * d - 1,):
        raise ValueError(f"expected Bloch vector of length {d * d - 1}, got {r.shape}")
    coeff = np.sqrt((d + 1.0) / (2.0 * d))
    return np.eye(d) / d + coeff * np.einsum('a,aij->ij', r, basis.matrices)


def to_bloch(rho: np.ndarray, basis: SuBasis, tol: float = 1e-12) -> np.ndarray:
    """Bloch vector r_a = sqrt(d/(2(d+1))) Tr(rho sigma_a).

    Requires rho Hermitian with unit trace (within `tol`); the imaginary
    residue of the traces is checked against `tol` and then discarded.
    """
    d = basis.d
    rho = np.asarray(rho)
    if rho.shape != (d, d):
        raise ValueError(f"expected {d}x{d} matrix, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > tol:
        raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"trace is {np.trace(rho)!r}, expected 1")
    traces = np.einsum('aij,ji->a', basis.matrices, rho)
    if np.max(np.abs(traces.imag)) > tol:
        raise ValueError("Tr(rho sigma_a) has imaginary part beyond tolerance")
    return np.sqrt(d / (2.0 * (d + 1.0))) * traces.real


def is_state(r: np.ndarray, basis: SuBasis, tol: float = PSD_TOL):
    """Whether from_bloch(r) is positive semidefinite.

    Returns (ok, min_eigenvalue); ok is True iff the minimum eigenvalue is
    >= -tol.
    """
    min_eig = float(np.linalg.eigvalsh(from_bloch(r, basis))[0])
    return min_eig >= -tol, min_eig


def is_pure(r: np.ndarray, sc: StructureConstants, tol: float = PURITY_TOL) -> bool:
    """Pure-state test on the Bloch vector itself.

    True iff |r|^2 = (d-1)/(d+1) and r * r = (d-2) sqrt(2/(d(d+1))) r, both
    within `tol`.  For d = 2 the star-product condition holds trivially
    (dsym vanishes and the prefactor is zero); it is evaluated anyway to
    keep one code path.
    """
    d = sc.d
    r = np.asarray(r, dtype=float)
    norm_defect = abs(r @ r - (d - 1.0) / (d + 1.0))
    star_defect = np.linalg.norm(
        star_product(r, r, sc) - (d - 2.0) * np.sqrt(2.0 / (d * (d + 1.0))) * r)
    return bool(norm_defect <= tol and star_defect <= tol)


def random_density_matrix(d: int, seed) -> np.ndarray:
    """Full-rank Ginibre sample rho = G G^dag / Tr(G G^dag).

    `seed` is an int or a numpy Generator; results are deterministic for a
    given int seed.
    """
    if d < 2:
        raise ValueError(f"need d >= 2, got d={d}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_state(d: int, seed) -> np.ndarray:
    """Haar-random rank-1 projector |psi><psi|."""
    if d < 2:
        raise ValueError(f"need d >= 2, got d={d}")
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def state_to_json(rho: np.ndarray) -> dict:
    """Serialize as { "d": ..., "rho": [[[re, im], ...], ...] }."""
    rho = np.asarray(rho, dtype=complex)
    return {"d": rho.shape[0],
            "rho": [[[float(z.real), float(z.imag)] for z in row] for row in rho]}


def state_from_json(obj: dict) -> np.ndarray:
    arr = np.array(obj["rho"], dtype=float)
    d = int(obj["d"])
    if arr.shape != (d, d, 2):
        raise ValueError(f"malformed rho entry: shape {arr.shape} for d={d}")
    return arr[..., 0] + 1j * arr[..., 1]


def bloch_to_json(r: np.ndarray, d: int) -> dict:
    """Serialize as { "d": ..., "bloch": [r_1, ...] }."""
    return {"d": d, "bloch": [float(x) for x in np.asarray(r, dtype=float)]}


def bloch_from_json(obj: dict):
    r = np.array(obj["bloch"], dtype=float)
    d = int(obj["d"])
    if r.shape != (d * d - 1,):
        raise ValueError(f"bloch vector of length {r.shape} does not match d={d}")
    return r, d
