"""Quantum states as points of the probability simplex of a SIC-POVM.

Measuring a SIC-POVM on a state rho gives probabilities
p_i = Tr(E_i rho) = 1/d**2 + ((d+1)/d**2) e_i . r, and embedding them in the
regular simplex with vertices t_i = (d+1) e_i sends every state to the point
s = sum_i p_i t_i.  With this scaling s equals the Bloch vector r itself, so
the set of simplex points realized by quantum states coincides with the set
of Bloch vectors.  `verify_b_equals_q` checks the identity numerically;
`geometry_report` collects the radii and facet tangency data of the
pure-state sphere; `simulate_tomography` reconstructs states from sampled
SIC outcomes through the inverse maps.
"""

from dataclasses import dataclass

import numpy as np

from . import bloch, simplex_geometry
from .simplex_geometry import SimplexFrame, facet_distance
from .sic_povm import SicPovm, Fiducial, build_sic, get_fiducial
from .su_basis import SuBasis, StructureConstants, build_su_basis, structure_constants

OUTSIDE_SIMPLEX = "outside_simplex"
IN_SIMPLEX_NOT_STATE = "in_simplex_not_state"
MIXED_STATE = "mixed_state"
PURE_STATE = "pure_state"

# classification tolerances, ordered from the least to the most noisy test
MEMBERSHIP_TOL = 1e-12
PSD_TOL = 1e-10
PURITY_TOL = 1e-9


@dataclass
class QuantumSimplexContext:
    """Everything needed to move between states, probabilities and points:
    the su(d) basis with its structure constants, a SIC, and the simplex
    frame t_i = (d+1) e_i spanned by the SIC Bloch directions."""

    d: int
    basis: SuBasis
    sc: StructureConstants
    sic: SicPovm
    frame: SimplexFrame


def build_context(d: int, fiducial: Fiducial | None = None, seed: int = 0,
                  catalog_path: str | None = None) -> QuantumSimplexContext:
    """Assemble a context for dimension d.

    Without an explicit fiducial this uses the builtin one for d = 2 and the
    catalog/search machinery otherwise.
    """
    basis = build_su_basis(d)
    sc = structure_constants(basis)
    if fiducial is None:
        fiducial = get_fiducial(d, seed=seed, catalog_path=catalog_path)
    sic = build_sic(fiducial, basis)
    frame = SimplexFrame(n=d * d - 1, vertices=(d + 1.0) * sic.bloch_dirs)
    return QuantumSimplexContext(d=d, basis=basis, sc=sc, sic=sic, frame=frame)


def state_to_probabilities(rho: np.ndarray, ctx: QuantumSimplexContext) -> np.ndarray:
    """SIC outcome probabilities p_i = Tr(E_i rho), via the Bloch form
    p_i = 1/d**2 + ((d+1)/d**2) e_i . r."""
    d = ctx.d
    rho = np.asarray(rho)
    if rho.shape != (d, d):
        raise ValueError(f"expected {d}x{d} state, got shape {rho.shape}")
    r = bloch.to_bloch(rho, ctx.basis)
    return 1.0 / d ** 2 + (d + 1.0) / d ** 2 * (ctx.sic.bloch_dirs @ r)


def probabilities_to_point(p: np.ndarray, ctx: QuantumSimplexContext) -> np.ndarray:
    """Simplex point s = sum_i p_i t_i for the context frame."""
    return simplex_geometry.to_point(p, ctx.frame)


def point_to_state(s: np.ndarray, ctx: QuantumSimplexContext) -> np.ndarray:
    """Candidate density matrix for a simplex point (the point doubles as
    the Bloch vector); PSD only if the point actually represents a state."""
    return bloch.from_bloch(np.asarray(s, dtype=float), ctx.basis)


def verify_b_equals_q(ctx: QuantumSimplexContext, samples: int, seed) -> float:
    """Max | (s - r) |_inf over Ginibre-sampled states, where s is the
    simplex point of the state's SIC probabilities and r its Bloch vector.
    The two should agree to roundoff for any dimension."""
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        rho = bloch.random_density_matrix(ctx.d, rng)
        r = bloch.to_bloch(rho, ctx.basis)
        s = probabilities_to_point(state_to_probabilities(rho, ctx), ctx)
        worst = max(worst, float(np.max(np.abs(s - r))))
    return worst


@dataclass
class GeometryReport:
    """Radii and facet data of the state body inside the outcome simplex.

    r_pure is the radius of the sphere carrying the pure states; it touches
    the facets of dimension m_pure = (d+2)(d-1)/2, and every pure state has
    sum_i p_i^2 = 2/(d(d+1)).  For d = 2 (and only then) the pure sphere is
    the simplex's inscribed sphere.
    """

    d: int
    r_out: float
    r_in: float
    r_pure: float
    m_pure: int
    d_m: np.ndarray          # distances to the m-facets, m = 0..d**2-1
    sum_p2_pure: float
    pure_sphere_is_inner: bool


def geometry_report(d: int) -> GeometryReport:
    if d < 2:
        raise ValueError(f"need d >= 2, got d={d}")
    n = d * d - 1
    r_pure = float(np.sqrt((d - 1.0) / (d + 1.0)))
    m_pure = (d + 2) * (d - 1) // 2
    d_m = np.array([facet_distance(n, m) for m in range(n + 1)])
    rep = GeometryReport(
        d=d,
        r_out=facet_distance(n, 0),
        r_in=facet_distance(n, n - 1),
        r_pure=r_pure,
        m_pure=m_pure,
        d_m=d_m,
        sum_p2_pure=2.0 / (d * (d + 1.0)),
        pure_sphere_is_inner=(d == 2),
    )
    # internal consistency before handing out numbers
    assert abs(facet_distance(n, m_pure) - rep.r_pure) < 1e-12
    assert rep.r_in <= rep.r_pure + 1e-15 and rep.r_pure <= rep.r_out + 1e-15
    assert (abs(rep.r_in - rep.r_pure) < 1e-15) == (d == 2)
    return rep


def report_to_json(rep: GeometryReport) -> dict:
    return {
        "d": rep.d,
        "R_out": rep.r_out,
        "R_in": rep.r_in,
        "R_pure": rep.r_pure,
        "m_pure": rep.m_pure,
        "d_m": [float(x) for x in rep.d_m],
        "sum_p2_pure": rep.sum_p2_pure,
        "pure_sphere_is_inner": rep.pure_sphere_is_inner,
    }


def classify_point(s: np.ndarray, ctx: QuantumSimplexContext,
                   membership_tol: float = MEMBERSHIP_TOL,
                   psd_tol: float = PSD_TOL,
                   purity_tol: float = PURITY_TOL) -> str:
    """Classify a point of R^(d**2-1) relative to the simplex and the states.

    Tests run cheapest-and-tightest first: simplex membership (recovered
    probabilities in [0, 1]), then positivity of the candidate matrix, then
    purity of its Bloch vector.
    """
    s = np.asarray(s, dtype=float)
    _, inside = simplex_geometry.to_probabilities(s, ctx.frame, tol=membership_tol)
    if not inside:
        return OUTSIDE_SIMPLEX
    ok, _ = bloch.is_state(s, ctx.basis, tol=psd_tol)
    if not ok:
        return IN_SIMPLEX_NOT_STATE
    if bloch.is_pure(s, ctx.sc, tol=purity_tol):
        return PURE_STATE
    return MIXED_STATE


def find_nonstate_sphere_point(ctx: QuantumSimplexContext, seed=0,
                               max_tries: int = 100,
                               min_negativity: float = 1e-6) -> np.ndarray:
    """A point on the pure-state sphere, inside the simplex, that is not a
    state.

    Candidates are centroids of (m_pure + 1)-vertex subsets of the frame:
    each is the tangency point of the pure sphere with an m_pure-facet, so
    it sits exactly on the sphere and on the simplex boundary.  For d >= 3
    such centroids generically carry an O(1) negative eigenvalue; for d = 2
    every sphere point is a state and the search fails with RuntimeError.
    """
    rng = np.random.default_rng(seed)
    d = ctx.d
    m_pure = (d + 2) * (d - 1) // 2
    r_pure = np.sqrt((d - 1.0) / (d + 1.0))
    for attempt in range(max_tries):
        if attempt == 0:
            idx = np.arange(m_pure + 1)
        else:
            idx = rng.choice(d * d, size=m_pure + 1, replace=False)
        s = ctx.frame.vertices[idx].mean(axis=0)
        s *= r_pure / np.linalg.norm(s)
        _, inside = simplex_geometry.to_probabilities(s, ctx.frame)
        if not inside:
            continue
        _, min_eig = bloch.is_state(s, ctx.basis)
        if min_eig < -min_negativity:
            return s
    raise RuntimeError(
        f"no non-state sphere point found for d={ctx.d} in {max_tries} tries")


def trace_distance(rho_a: np.ndarray, rho_b: np.ndarray) -> float:
    """Half the sum of absolute eigenvalues of the Hermitian difference."""
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(rho_a - rho_b))))


def project_to_state(rho: np.ndarray) -> np.ndarray:
    """Clip negative eigenvalues to zero and renormalize the trace to 1."""
    vals, vecs = np.linalg.eigh(rho)
    vals = np.clip(vals, 0.0, None)
    total = vals.sum()
    if total <= 0.0:
        raise ValueError("matrix has no positive spectral weight")
    proj = (vecs * (vals / total)) @ vecs.conj().T
    return 0.5 * (proj + proj.conj().T)


@dataclass
class TomographyResult:
    shots: int
    counts: np.ndarray          # (d**2,) outcome counts
    rho_hat_raw: np.ndarray     # linear-inversion estimate, may be indefinite
    rho_hat_projected: np.ndarray
    trace_distance: float


def simulate_tomography(rho: np.ndarray, ctx: QuantumSimplexContext,
                        shots: int, seed) -> TomographyResult:
    """Sample SIC outcomes from rho and reconstruct it by linear inversion.

    The empirical frequencies map to a simplex point, which is read back as
    a Bloch vector; the raw estimate is then projected onto the states by
    eigenvalue clipping.  Deterministic for a given seed.
    """
    if shots < 1:
        raise ValueError("need at least one shot")
    rng = np.random.default_rng(seed)
    p = state_to_probabilities(rho, ctx)
    # roundoff can leave tiny negatives; the sampler needs an exact simplex
    p = np.clip(p, 0.0, None)
    p /= p.sum()
    counts = rng.multinomial(shots, p)
    p_hat = counts / shots
    s_hat = probabilities_to_point(p_hat, ctx)
    rho_raw = point_to_state(s_hat, ctx)
    rho_proj = project_to_state(rho_raw)
    return TomographyResult(
        shots=shots,
        counts=counts,
        rho_hat_raw=rho_raw,
        rho_hat_projected=rho_proj,
        trace_distance=trace_distance(rho, rho_proj),
    )
