"""Kempf-Ness function for the linear action on P(C^n), and the symmetric
space M = G/K with its geodesics.

For the projective testbed the function has the classical closed form

    Phi(x, g) = C_KN * log(|g v|^2 / |v|^2),

so the defining derivative identity becomes a test instead of a
definition.  The scale C_KN is calibrated once against that identity and
frozen; with mu_p = pi_p(v v^H / 2) the calibration is exactly 1/4.

M is charted by canonical forms P = g g^H (coset invariants); geodesics
are matrix-power interpolations and the distance is half the
affine-invariant norm, which makes d(pi(I), pi(exp(beta))) = |beta|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DriftExceeded, NoCriticalPointFound, SingularGroupElement
from .flow import FlowOptions, _adaptive_rk, _Workspace, integrate_flow
from .lie_core import CompatibleGroup
from .linalg import mat_inner, spd_log_distance, spd_power
from .projective import ProjectivePoint, fundamental_field, gradient_map

# Scale of the Kempf-Ness log-norm; calibrated by d/dt|0 Phi(x, exp(t xi))
# = <mu_p(x), xi>, which fixes 2c * v^H xi v = (1/2) v^H xi v.
C_KN = 0.25

# distance chart scale: d(pi(I), pi(exp(beta))) = |beta| needs 1/2 because
# the canonical form of exp(beta) is exp(2 beta).
_DIST_SCALE = 0.5


@dataclass(frozen=True)
class SymmetricSpacePoint:
    """A point g K of M = G/K, held as a coset representative and its
    canonical positive form P = g g^H."""

    coset_rep: np.ndarray
    canonical_form: np.ndarray

    @staticmethod
    def from_group(g: np.ndarray) -> "SymmetricSpacePoint":
        g = np.asarray(g, dtype=complex)
        p = g @ g.conj().T
        p = 0.5 * (p + p.conj().T)
        if np.linalg.eigvalsh(p)[0] <= 0:
            raise SingularGroupElement("coset representative is numerically singular")
        return SymmetricSpacePoint(coset_rep=g, canonical_form=p)

    def same_coset(self, other: "SymmetricSpacePoint", tol: float = 1e-8) -> bool:
        return bool(
            np.linalg.norm(self.canonical_form - other.canonical_form)
            <= tol * max(1.0, np.linalg.norm(self.canonical_form))
        )


def kn_value(group: CompatibleGroup, x: ProjectivePoint, g: np.ndarray) -> float:
    """Phi(x, g) = C_KN log(|g v|^2) at the unit representative v."""
    g = np.asarray(g, dtype=complex)
    gv = g @ x.rep
    nrm2 = float(np.real(np.vdot(gv, gv)))
    if not np.isfinite(nrm2) or nrm2 <= 1e-300:
        raise SingularGroupElement("group element annihilates the representative")
    return C_KN * float(np.log(nrm2))


def kn_value_at_coset(group: CompatibleGroup, x: ProjectivePoint, g: np.ndarray) -> float:
    """Phi_x(pi(g)) = Phi(x, g^-1), the descent of Phi to M."""
    return kn_value(group, x, np.linalg.inv(g))


def kn_first_second_derivative(
    group: CompatibleGroup, x: ProjectivePoint, g: np.ndarray, xi: np.ndarray
):
    """Derivatives at t=0 of t -> Phi_x(pi(g exp(t xi))) for xi in p.

    Analytic closed forms: with y = g^-1 v,
        first  = -<mu_p([y]), xi>
        second = 4 C_KN Var_y(xi) >= 0,
    and the second derivative vanishes exactly when xi fixes [y]
    infinitesimally (xi_X(g^-1 x) = 0).
    """
    g = np.asarray(g, dtype=complex)
    y = np.linalg.solve(g, x.rep)
    yhat = y / np.linalg.norm(y)
    mean = float(np.real(np.vdot(yhat, xi @ yhat)))
    mean_sq = float(np.real(np.vdot(xi @ yhat, xi @ yhat)))
    first = -2.0 * C_KN * mean
    second = 4.0 * C_KN * (mean_sq - mean**2)
    return first, second


def geodesic(p: SymmetricSpacePoint, q: SymmetricSpacePoint):
    """The geodesic t -> p^(1/2) (p^(-1/2) q p^(-1/2))^t p^(1/2) in the
    canonical-form chart; t=0 gives p, t=1 gives q."""
    p1, p2 = p.canonical_form, q.canonical_form
    sqrt_p = spd_power(p1, 0.5)
    inv_sqrt = spd_power(p1, -0.5)
    mid = inv_sqrt @ p2 @ inv_sqrt
    mid = 0.5 * (mid + mid.conj().T)

    def gamma(t: float) -> SymmetricSpacePoint:
        form = sqrt_p @ spd_power(mid, t) @ sqrt_p
        form = 0.5 * (form + form.conj().T)
        return SymmetricSpacePoint(coset_rep=spd_power(form, 0.5), canonical_form=form)

    return gamma


def distance(p: SymmetricSpacePoint, q: SymmetricSpacePoint) -> float:
    """Geodesic distance on M in the metric induced by <.,.> on p."""
    return _DIST_SCALE * spd_log_distance(p.canonical_form, q.canonical_form)


@dataclass
class KnPath:
    """A negative gradient flow line of Phi_x in M, with its X-shadow."""

    times: np.ndarray
    cosets: list
    phi_values: np.ndarray
    shadow_endpoint: ProjectivePoint
    coupling_residual: float
    phi_monotonicity_violation: float


def kn_flow(
    group: CompatibleGroup,
    x: ProjectivePoint,
    g0: np.ndarray,
    t_end: float,
    opts: FlowOptions | None = None,
    n_stops: int = 120,
    drift_tol: float = 1e-6,
) -> KnPath:
    """Integrate g' = g mu_p(g^-1 x) from g0 and audit the intertwining:
    the shadow y(t) = g(t)^-1 x must reproduce the X-flow from g0^-1 x.

    Raises DriftExceeded when the shadow audit fails.
    """
    opts = opts or FlowOptions()
    ws = _Workspace(group)
    n = group.n
    g0 = np.asarray(g0, dtype=complex)
    y0 = np.linalg.solve(g0, x.rep)
    y0 = y0 / np.linalg.norm(y0)

    def pack(v, g):
        return np.concatenate([v, g.ravel()])

    def unpack(z):
        return z[:n], z[n:].reshape(n, n)

    def rhs(z):
        v, g = unpack(z)
        c = ws.mu_coeff(v)
        beta = ws.beta_of(c)
        bv = beta @ v
        return pack(-(bv - np.vdot(v, bv) * v), g @ beta)

    def renorm(z):
        v, g = unpack(z)
        return pack(v / np.linalg.norm(v), g)

    stops = np.linspace(0.0, t_end, n_stops)
    samples = []

    def on_accept(t, z):
        if samples and abs(samples[-1][0] - t) < 1e-15:
            return
        for ts in stops:
            if abs(t - ts) <= 1e-12:
                samples.append((t, unpack(z)))
                break

    def halt(t, z):
        return False

    z0 = pack(y0, g0.copy())
    samples.append((0.0, unpack(z0)))
    _adaptive_rk(
        rhs, z0, t_end,
        atol=opts.atol, rtol=opts.rtol, h_max=opts.h_max,
        renorm=renorm, on_accept=on_accept, halt=halt, t_stops=list(stops),
    )
    times = np.array([s[0] for s in samples])
    cosets = [SymmetricSpacePoint.from_group(s[1][1]) for s in samples]
    phis = np.array([kn_value_at_coset(group, x, s[1][1]) for s in samples])
    v_end, g_end = samples[-1][1]

    # independent X-flow from the same start, compared at the endpoint
    shadow_opts = FlowOptions(
        eps_grad=opts.eps_grad, t_max=t_end, rtol=opts.rtol, atol=opts.atol,
        h_max=opts.h_max, sustain=10**9,
    )
    base = integrate_flow(group, ProjectivePoint(y0), shadow_opts)
    shadow_end = base.limit if base.converged else ProjectivePoint(base.states[-1])
    pulled = np.linalg.solve(g_end, x.rep)
    residual = ProjectivePoint(pulled).distance(shadow_end)
    also = ProjectivePoint(v_end).distance(shadow_end)
    residual = max(residual, also)
    if residual > drift_tol:
        raise DriftExceeded(f"M-flow shadow drifted {residual:.3e} from the X-flow")
    mono = float(max(0.0, np.max(np.diff(phis)))) if len(phis) > 1 else 0.0
    return KnPath(
        times=times,
        cosets=cosets,
        phi_values=phis,
        shadow_endpoint=shadow_end,
        coupling_residual=float(residual),
        phi_monotonicity_violation=mono,
    )


def paired_flow_distance_monotonicity(
    group: CompatibleGroup,
    x: ProjectivePoint,
    g0: np.ndarray,
    h0: np.ndarray,
    t_end: float,
    opts: FlowOptions | None = None,
    slack: float = 1e-8,
) -> dict:
    """Run two Phi_x gradient flows and check the coset distance between
    them never increases (convexity along geodesics in action)."""
    path1 = kn_flow(group, x, g0, t_end, opts)
    path2 = kn_flow(group, x, h0, t_end, opts)
    m = min(len(path1.times), len(path2.times))
    rho = np.array([distance(path1.cosets[i], path2.cosets[i]) for i in range(m)])
    max_increase = float(max(0.0, np.max(np.diff(rho)))) if m > 1 else 0.0
    return {
        "rho": rho,
        "times": path1.times[:m],
        "max_increase": max_increase,
        "final_rho": float(rho[-1]),
        "passed": max_increase <= slack,
    }


def grid_infimum(
    group: CompatibleGroup,
    x: ProjectivePoint,
    radius: float = 5.0,
    resolution: float = 1e-2,
    max_grid_dims: int = 3,
    rng_seed: int = 0,
) -> float:
    """Infimum of Phi_x over a geodesic ball of M, by chart-grid sweep.

    Full grid in <= 3 chart dimensions; otherwise random 2-dim geodesic
    sections through the origin (desk-scale substitute for the infimum).
    """
    dp = group.dim_p
    v = x.rep

    def phi_of_xi_batch(xis):
        # Phi_x(pi(exp(xi))) = C log |exp(-xi) v|^2, batched over xi
        w, u = np.linalg.eigh(xis)
        coords = np.einsum("bji,j->bi", u.conj(), v)
        scaled = np.exp(-w) * coords
        back = np.einsum("bij,bj->bi", u, scaled)
        nrm2 = np.real(np.einsum("bi,bi->b", back.conj(), back))
        return C_KN * np.log(nrm2)

    if dp <= max_grid_dims:
        steps = int(np.ceil(2 * radius / resolution)) + 1
        axes = [np.linspace(-radius, radius, steps)] * dp
        mesh = np.meshgrid(*axes, indexing="ij")
        coeffs = np.stack([m.ravel() for m in mesh], axis=-1)
        keep = np.linalg.norm(coeffs, axis=1) <= radius
        coeffs = coeffs[keep]
        best = np.inf
        chunk = 20000
        for i in range(0, len(coeffs), chunk):
            xis = np.einsum("bc,cij->bij", coeffs[i : i + chunk], group.p_basis)
            best = min(best, float(np.min(phi_of_xi_batch(xis))))
        return best
    rng = np.random.default_rng(rng_seed)
    best = np.inf
    steps = int(np.ceil(2 * radius / resolution)) + 1
    for _ in range(24):
        q, _ = np.linalg.qr(rng.normal(size=(dp, 2)))
        grid = np.linspace(-radius, radius, steps)
        uu, vv = np.meshgrid(grid, grid, indexing="ij")
        coeffs = np.stack([uu.ravel(), vv.ravel()], axis=-1) @ q.T
        keep = np.linalg.norm(coeffs, axis=1) <= radius
        coeffs = coeffs[keep]
        for i in range(0, len(coeffs), 20000):
            xis = np.einsum("bc,cij->bij", coeffs[i : i + 20000], group.p_basis)
            best = min(best, float(np.min(phi_of_xi_batch(xis))))
    return best


def kn_morse_bott_probe(
    group: CompatibleGroup,
    x: ProjectivePoint,
    opts: FlowOptions | None = None,
    crit_tol: float = 1e-8,
) -> dict:
    """At a critical coset of Phi_x: the geodesic Hessian on p is positive
    semidefinite and its kernel is exactly the stabilizer-direction
    subspace {xi : xi_X(g^-1 x) = 0}.

    The critical coset is found by flowing x to the zero fiber and lifting.
    Raises NoCriticalPointFound when the scenario has no reachable zero.
    """
    opts = opts or FlowOptions()
    traj = integrate_flow(group, x, opts)
    if not traj.converged or traj.limit_beta.norm >= crit_tol:
        raise NoCriticalPointFound(
            f"flow limit has |mu_p| = "
            f"{traj.limit_beta.norm if traj.converged else np.inf:.2e}"
        )
    y = traj.limit.rep
    dp = group.dim_p
    # geodesic Hessian of Phi_x on p at the critical coset, in closed form:
    # B(xi, zeta) = 2 C (  <xi zeta + zeta xi>_y - 2 <xi>_y <zeta>_y )
    means = np.array([float(np.real(np.vdot(y, p @ y))) for p in group.p_basis])
    hess = np.zeros((dp, dp))
    for a in range(dp):
        pa_y = group.p_basis[a] @ y
        for b in range(a, dp):
            pb_y = group.p_basis[b] @ y
            cross = float(np.real(np.vdot(pa_y, pb_y)))
            hess[a, b] = hess[b, a] = 4.0 * C_KN * (cross - means[a] * means[b])
    evals, evecs = np.linalg.eigh(hess)
    kernel = evecs[:, np.abs(evals) <= 1e-8]
    # stabilizer directions: null space of xi -> xi_X(y) over p
    cols = []
    base = ProjectivePoint(y)
    for p in group.p_basis:
        w = fundamental_field(p, base).vec
        cols.append(np.concatenate([np.real(w), np.imag(w)]))
    lmap = np.array(cols).T
    _, svals, vt = np.linalg.svd(lmap)
    rank = int(np.sum(svals > 1e-8))
    stab = vt[rank:].T
    from .linalg import subspace_principal_angles

    if kernel.shape[1] != stab.shape[1]:
        angle = float(np.pi / 2) if max(kernel.shape[1], stab.shape[1]) else 0.0
    elif kernel.shape[1] == 0:
        angle = 0.0
    else:
        angles = subspace_principal_angles(kernel, stab)
        angle = float(angles.max()) if angles.size else 0.0
    nonkernel = evals[np.abs(evals) > 1e-8]
    min_positive = float(nonkernel.min()) if nonkernel.size else np.inf
    return {
        "kernel_dim": int(kernel.shape[1]),
        "stabilizer_dim": int(stab.shape[1]),
        "max_principal_angle": angle,
        "min_eigenvalue": float(evals.min()),
        "min_nonkernel_eigenvalue": min_positive,
        "passed": (
            evals.min() > -1e-10
            and kernel.shape[1] == stab.shape[1]
            and angle < 1e-6
            and (not np.isfinite(min_positive) or min_positive > 1e-6)
        ),
    }


def kn_cocycle_residual(
    group: CompatibleGroup, x: ProjectivePoint, g: np.ndarray, h: np.ndarray
) -> float:
    """|Phi(x, hg) - Phi(x, g) - Phi(g x, h)|."""
    lhs = kn_value(group, x, h @ g)
    gx = ProjectivePoint(g @ x.rep)
    return abs(lhs - kn_value(group, x, g) - kn_value(group, gx, h))


def kn_calibration_residual(group: CompatibleGroup, x: ProjectivePoint, xi: np.ndarray) -> float:
    """Residual of the defining identity d/dt|0 Phi(x, exp(t xi)) = <mu_p, xi>."""
    from .linalg import central_derivative

    lhs = central_derivative(lambda t: kn_value(group, x, scipy.linalg.expm(t * xi)), h=1e-5)
    rhs = mat_inner(gradient_map(group, x).value, xi)
    return abs(lhs - rhs)
