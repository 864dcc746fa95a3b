"""SIC-POVM construction from Weyl-Heisenberg orbits of a fiducial vector.

A SIC-POVM for dimension d is a set of d**2 effects E_i = |psi_i><psi_i| / d
resolving the identity with equal pairwise overlaps
Tr(E_i E_j) = (d delta_ij + 1) / (d**2 (d+1)).  Here the |psi_i> are the
orbit of a fiducial |psi> under the displacement operators
D_{k,l} = tau^{kl} X^k Z^l (tau = -exp(i pi / d)), and the fiducial is found
numerically by driving the frame potential

    sum_{i != j} (|<psi_i|psi_j>|^2 - 1/(d+1))^2

to zero with a multi-start projected descent.  For d = 2 an exact fiducial
(Bloch direction (1,1,1)/sqrt(3), the regular tetrahedron) is built in.
"""

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .bloch import to_bloch
from .su_basis import SuBasis

# fiducials worse than this are refused by build_sic
MAX_BUILD_RESIDUAL = 1e-6
DEFAULT_TARGET_RESIDUAL = 1e-10


@dataclass
class Fiducial:
    """Unit vector whose displacement orbit is (close to) a SIC.

    `residual` is the orbit's worst overlap deviation (see `sic_residual`);
    `source` records provenance ("builtin", "search" or "manual"); for
    searches, `seed`/`config` pin the run and `converged` records whether
    the target residual was reached.
    """

    d: int
    psi: np.ndarray  # (d,) complex, unit norm
    residual: float
    source: str = "manual"
    seed: int | None = None
    config: dict | None = None
    converged: bool | None = None

    @classmethod
    def from_vector(cls, psi: np.ndarray, source: str = "manual") -> "Fiducial":
        """Normalize a vector and record the residual of its orbit."""
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        d = psi.shape[0]
        res = sic_residual(wh_orbit_of_vector(psi))
        return cls(d=d, psi=psi, residual=float(res), source=source)


@dataclass
class SicPovm:
    """d**2 effects E_i with their Bloch direction vectors e_i."""

    d: int
    effects: np.ndarray     # (d**2, d, d) complex
    bloch_dirs: np.ndarray  # (d**2, d**2 - 1) real
    fiducial: Fiducial = field(repr=False)


def displacement_operators(d: int) -> np.ndarray:
    """All D_{k,l} = tau^{kl} X^k Z^l as an array indexed by i = k*d + l.

    X|j> = |j+1 mod d>, Z|j> = omega^j |j> with omega = exp(2 pi i / d),
    and tau = -exp(i pi / d) keeps the orbit well defined for even d.
    """
    tau = -np.exp(1j * np.pi / d)
    omega = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(omega ** np.arange(d))
    shift_pow = [np.linalg.matrix_power(shift, k) for k in range(d)]
    clock_pow = [np.linalg.matrix_power(clock, l) for l in range(d)]
    ops = np.empty((d * d, d, d), dtype=complex)
    for k in range(d):
        for l in range(d):
            ops[k * d + l] = tau ** (k * l) * (shift_pow[k] @ clock_pow[l])
    return ops


def wh_orbit_of_vector(psi: np.ndarray) -> np.ndarray:
    """Orbit D_{k,l} |psi> for all (k, l), ordered by i = k*d + l."""
    psi = np.asarray(psi, dtype=complex)
    return np.einsum('aij,j->ai', displacement_operators(psi.shape[0]), psi)


def wh_orbit(fid: Fiducial) -> np.ndarray:
    return wh_orbit_of_vector(fid.psi)


def _overlap_deviations(orbit: np.ndarray) -> np.ndarray:
    n, d = orbit.shape
    gram = orbit.conj() @ orbit.T
    overlaps = np.abs(gram) ** 2
    off = ~np.eye(n, dtype=bool)
    return overlaps[off] - 1.0 / (d + 1.0)


def frame_potential(orbit: np.ndarray) -> float:
    """Sum of squared overlap deviations over all ordered pairs i != j."""
    return float(np.sum(_overlap_deviations(orbit) ** 2))


def sic_residual(orbit: np.ndarray) -> float:
    """Worst overlap deviation max_{i != j} | |<psi_i|psi_j>|^2 - 1/(d+1) |."""
    return float(np.max(np.abs(_overlap_deviations(orbit))))


def qubit_tetrahedron_fiducial() -> Fiducial:
    """Exact d = 2 fiducial: the pure state with Bloch direction (1,1,1)/sqrt(3).

    Its orbit under {I, Z, X, XZ} is the regular tetrahedron on the Bloch
    sphere, an exact SIC.
    """
    cos_theta = 1.0 / np.sqrt(3.0)
    psi = np.array([np.sqrt((1.0 + cos_theta) / 2.0),
                    np.exp(1j * np.pi / 4.0) * np.sqrt((1.0 - cos_theta) / 2.0)])
    res = sic_residual(wh_orbit_of_vector(psi))
    return Fiducial(d=2, psi=psi, residual=float(res), source="builtin",
                    converged=True)


# ---------------------------------------------------------------------------
# fiducial search
#
# By Weyl-Heisenberg covariance the orbit overlaps |<psi_i|psi_j>|^2 only
# depend on the displacement difference, so the search minimizes the reduced
# objective over the d**2 - 1 nonzero displacements:
#
#     phi(psi) = sum_{D != I} (|<psi|D|psi>|^2 - 1/(d+1))^2
#
# (proportional to the full frame potential on the orbit).  Each restart runs
# a Barzilai-Borwein descent with the analytic gradient, renormalizing to the
# unit sphere after every step, then a damped Gauss-Newton polish (also
# sphere-projected) that converges to the machine floor near a zero of phi.
# ---------------------------------------------------------------------------

def _objective_grad(disp: np.ndarray, psi: np.ndarray, target: float):
    """phi(psi) and its Wirtinger-derived real gradient 4 * dphi/dpsi*."""
    d_psi = np.einsum('aij,j->ai', disp, psi)
    ddag_psi = np.einsum('aji,j->ai', disp.conj(), psi)
    c = d_psi @ psi.conj()
    w = np.abs(c) ** 2 - target
    phi = float(np.sum(w ** 2))
    grad = 4.0 * (np.einsum('a,ai->i', w * c.conj(), d_psi)
                  + np.einsum('a,ai->i', w * c, ddag_psi))
    return phi, grad


def _tangent(psi: np.ndarray, grad: np.ndarray) -> np.ndarray:
    # remove the radial component so steps stay first-order on the sphere
    return grad - psi * np.real(np.vdot(psi, grad))


def _descend(disp, psi, target, max_iters):
    psi = psi / np.linalg.norm(psi)
    phi, grad = _objective_grad(disp, psi, target)
    grad = _tangent(psi, grad)
    step = 1.0 / (1.0 + np.linalg.norm(grad))
    prev_psi = prev_grad = None
    for _ in range(max_iters):
        gnorm2 = float(np.real(np.vdot(grad, grad)))
        if gnorm2 < 1e-32:
            break
        if prev_psi is not None:
            s = psi - prev_psi
            y = grad - prev_grad
            sy = float(np.real(np.vdot(s, y)))
            step = float(np.real(np.vdot(s, s))) / sy if sy > 0 else 1.0
        for _ in range(40):
            cand = psi - step * grad
            cand /= np.linalg.norm(cand)
            phi_c, grad_c = _objective_grad(disp, cand, target)
            if phi_c < phi:
                break
            step *= 0.5
        else:
            break
        prev_psi, prev_grad = psi, grad
        psi, phi = cand, phi_c
        grad = _tangent(psi, grad_c)
    return psi, phi


def _residuals_jacobian(disp, psi, target):
    """Deviation vector w and its Jacobian wrt (Re psi, Im psi) at unit psi,
    with the radial direction projected out of the derivative."""
    d_psi = np.einsum('aij,j->ai', disp, psi)
    ddag_psi = np.einsum('aji,j->ai', disp.conj(), psi)
    c = d_psi @ psi.conj()
    w = np.abs(c) ** 2 - target
    h = c.conj()[:, None] * d_psi + c[:, None] * ddag_psi  # dw_a/dpsi*
    radial = np.real(np.einsum('ai,i->a', h.conj(), psi))
    d = psi.shape[0]
    jac = np.empty((w.shape[0], 2 * d))
    jac[:, :d] = 2.0 * h.real - 2.0 * radial[:, None] * psi.real[None, :]
    jac[:, d:] = 2.0 * h.imag - 2.0 * radial[:, None] * psi.imag[None, :]
    return w, jac


def _polish(disp, psi, target, max_iters=60):
    """Damped Gauss-Newton on the deviation vector; quadratic convergence
    to the machine floor once inside a SIC basin."""
    psi = psi / np.linalg.norm(psi)
    d = psi.shape[0]
    lam = 1e-12
    phi = float(np.sum(_residuals_jacobian(disp, psi, target)[0] ** 2))
    for _ in range(max_iters):
        w, jac = _residuals_jacobian(disp, psi, target)
        phi = float(np.sum(w ** 2))
        if phi < 1e-31:
            break
        normal = jac.T @ jac + lam * np.eye(2 * d)
        try:
            dx = np.linalg.solve(normal, -jac.T @ w)
        except np.linalg.LinAlgError:
            lam *= 10.0
            continue
        step = dx[:d] + 1j * dx[d:]
        for _ in range(30):
            cand = psi + step
            cand /= np.linalg.norm(cand)
            phi_c = float(np.sum(_residuals_jacobian(disp, cand, target)[0] ** 2))
            if phi_c < phi:
                break
            step *= 0.5
        else:
            lam *= 10.0
            continue
        psi = cand
        lam = max(lam * 0.3, 1e-14)
    return psi, phi


def find_fiducial(d: int, seed: int = 0, restarts: int = 10,
                  max_iters: int = 300,
                  target_residual: float = DEFAULT_TARGET_RESIDUAL) -> Fiducial:
    """Multi-start frame-potential minimization over unit vectors in C^d.

    All restarts run to local convergence and the one with the smallest
    orbit residual wins (ties by lowest restart index), so the result is a
    deterministic function of (d, seed, restarts, max_iters).  When even the
    best residual misses `target_residual`, the fiducial is still returned
    with `converged = False` rather than raising.
    """
    if d < 2:
        raise ValueError(f"need d >= 2, got d={d}")
    if restarts < 1:
        raise ValueError("need at least one restart")
    rng = np.random.default_rng(seed)
    disp = displacement_operators(d)
    disp_nz = disp[1:]
    target = 1.0 / (d + 1.0)
    best_psi, best_res = None, np.inf
    for _ in range(restarts):
        start = rng.normal(size=d) + 1j * rng.normal(size=d)
        psi, _ = _descend(disp_nz, start, target, max_iters)
        psi, _ = _polish(disp_nz, psi, target)
        res = sic_residual(np.einsum('aij,j->ai', disp, psi))
        if res < best_res:
            best_psi, best_res = psi, res
    config = {"restarts": restarts, "max_iters": max_iters,
              "target_residual": target_residual}
    return Fiducial(d=d, psi=best_psi, residual=float(best_res),
                    source="search", seed=seed, config=config,
                    converged=bool(best_res <= target_residual))


def build_sic(fid: Fiducial, basis: SuBasis,
              max_residual: float = MAX_BUILD_RESIDUAL) -> SicPovm:
    """Effects E_i = |psi_i><psi_i| / d and Bloch directions e_i of d*E_i.

    Refuses fiducials whose orbit residual exceeds `max_residual`: the
    resulting operators would not resolve the identity to any useful
    accuracy.
    """
    if basis.d != fid.d:
        raise ValueError(f"basis dimension {basis.d} != fiducial dimension {fid.d}")
    if fid.residual > max_residual:
        raise ValueError(
            f"fiducial residual {fid.residual:.3e} exceeds {max_residual:.1e}")
    orbit = wh_orbit(fid)
    effects = np.einsum('ai,aj->aij', orbit, orbit.conj()) / fid.d
    bloch_dirs = np.array([to_bloch(fid.d * e, basis) for e in effects])
    return SicPovm(d=fid.d, effects=effects, bloch_dirs=bloch_dirs, fiducial=fid)


# ---------------------------------------------------------------------------
# fiducial catalog (JSON file keyed by dimension)
# ---------------------------------------------------------------------------

def default_catalog_path() -> str:
    env = os.environ.get("SIC_SIMPLEX_CATALOG")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "sic_simplex",
                        "fiducials.json")


def fiducial_to_json(fid: Fiducial) -> dict:
    return {
        "d": fid.d,
        "psi": [[float(z.real), float(z.imag)] for z in fid.psi],
        "residual": float(fid.residual),
        "seed": fid.seed,
        "config": fid.config,
        "source": fid.source,
    }


def fiducial_from_json(obj: dict) -> Fiducial:
    arr = np.array(obj["psi"], dtype=float)
    d = int(obj["d"])
    if arr.shape != (d, 2):
        raise ValueError(f"malformed psi entry: shape {arr.shape} for d={d}")
    psi = arr[:, 0] + 1j * arr[:, 1]
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > 1e-12:
        raise ValueError(f"fiducial vector norm {nrm!r} != 1")
    return Fiducial(d=d, psi=psi, residual=float(obj["residual"]),
                    source=obj.get("source", "manual"), seed=obj.get("seed"),
                    config=obj.get("config"))


def load_catalog(path: str) -> dict:
    """Mapping d -> Fiducial from a catalog file; empty if the file is absent."""
    if not os.path.exists(path):
        return {}
    with open(path) as fh:
        raw = json.load(fh)
    return {int(k): fiducial_from_json(v) for k, v in raw.items()}


def save_catalog(catalog: dict, path: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    raw = {str(d): fiducial_to_json(f) for d, f in sorted(catalog.items())}
    with open(path, "w") as fh:
        json.dump(raw, fh, sort_keys=True, indent=2)
        fh.write("\n")


def get_fiducial(d: int, seed: int = 0, catalog_path: str | None = None,
                 restarts: int = 10, max_iters: int = 300,
                 target_residual: float = DEFAULT_TARGET_RESIDUAL) -> Fiducial:
    """Resolve a fiducial: builtin (d = 2), then catalog, then fresh search.

    Catalog entries are re-verified by recomputing the orbit residual; stale
    or corrupted entries fall through to a new search.  Search results are
    persisted back to the catalog (best effort).
    """
    if d == 2:
        return qubit_tetrahedron_fiducial()
    path = catalog_path or default_catalog_path()
    try:
        catalog = load_catalog(path)
    except (ValueError, KeyError, json.JSONDecodeError):
        catalog = {}
    cached = catalog.get(d)
    if cached is not None:
        actual = sic_residual(wh_orbit(cached))
        if actual <= target_residual:
            cached.residual = float(actual)
            return cached
    fid = find_fiducial(d, seed=seed, restarts=restarts, max_iters=max_iters,
                        target_residual=target_residual)
    if fid.converged:
        try:
            catalog[d] = fid
            save_catalog(catalog, path)
        except OSError:
            pass
    return fid
