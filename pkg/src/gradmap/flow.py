"""Negative gradient flow of the norm square, and everything built on it.

The integrator is an explicit adaptive Dormand-Prince 5(4) pair acting on
the unit-sphere representative, with renormalization after every accepted
step.  Convergence is declared when |grad f| stays below the threshold for
a sustained run of accepted steps (a plain threshold can trigger during a
slow saddle transit).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.optimize

from .errors import (
    DriftExceeded,
    InsufficientTail,
    StepUnderflow,
    Unconverged,
)
from .lie_core import AbelianSubalgebra, CompatibleGroup, KIND_TORUS
from .linalg import projective_distance
from .projective import (
    GradientValue,
    ProjectivePoint,
    TangentVector,
    fundamental_field,
    gradient_map,
    hessian_f,
    hessian_mu_beta,
    hessian_signature,
    norm_square_f,
    tangent_frame,
)

# Dormand-Prince 5(4) tableau
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = _A[6]
_ERR = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)


def parallel_map(fn, items):
    """Order-preserving map; thread count capped by GRADMAP_THREADS."""
    items = list(items)
    workers = int(os.environ.get("GRADMAP_THREADS", "1") or "1")
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


@dataclass
class FlowOptions:
    eps_grad: float = 1e-10
    t_max: float = 1e4
    rtol: float = 1e-10
    atol: float = 1e-10
    h_max: float = 0.5
    sustain: int = 10


def _adaptive_rk(rhs, y0, t_end, *, atol, rtol, h_max, renorm, on_accept, halt, t_stops=None):
    """Generic embedded RK5(4) loop.

    ``on_accept(t, y)`` fires after every accepted (renormalized) step and
    ``halt(t, y)`` may end the run early; forced stop times are landed on
    exactly.  Returns (converged, t, y).
    """
    t = 0.0
    y = renorm(np.array(y0, dtype=complex))
    on_accept(t, y)
    if halt(t, y):
        return True, t, y
    stops = list(t_stops) if t_stops is not None else []
    stop_idx = 0
    f0 = rhs(y)
    scale0 = np.linalg.norm(f0)
    h = min(h_max, 0.1 / (scale0 + 1e-2), t_end)
    while t < t_end - 1e-14:
        while stop_idx < len(stops) and stops[stop_idx] <= t + 1e-12:
            stop_idx += 1
        h = min(h, h_max, t_end - t)
        if stop_idx < len(stops):
            h = min(h, stops[stop_idx] - t)
        if h < 1e-14:
            raise StepUnderflow(f"step size {h:.3e} below 1e-14 at t={t:.6g}")
        k = [rhs(y)]
        for i in range(1, 7):
            yi = y + h * sum(a * ki for a, ki in zip(_A[i], k))
            k.append(rhs(yi))
        y5 = y + h * sum(b * ki for b, ki in zip(_B5, k))
        err = h * sum(e * ki for e, ki in zip(_ERR, k))
        tol = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
        err_norm = float(np.sqrt(np.mean(np.abs(err / tol) ** 2)))
        if err_norm <= 1.0:
            t = t + h
            y = renorm(y5)
            on_accept(t, y)
            if halt(t, y):
                return True, t, y
        factor = 0.9 * (max(err_norm, 1e-10)) ** (-0.2)
        h = h * min(5.0, max(0.2, factor))
    return False, t, y


class _Workspace:
    """Cached contiguous arrays for fast mu_p / vector-field evaluation."""

    def __init__(self, group: CompatibleGroup):
        self.group = group
        self.pb = np.ascontiguousarray(group.p_basis)

    def mu_coeff(self, v: np.ndarray) -> np.ndarray:
        pv = self.pb @ v
        return 0.5 * np.real(pv @ v.conj())

    def beta_of(self, coeff: np.ndarray) -> np.ndarray:
        return np.einsum("a,aij->ij", coeff, self.pb)

    def grad_vec(self, v: np.ndarray) -> np.ndarray:
        """grad f at [v] as a horizontal vector (beta_X with beta = mu_p)."""
        pv = self.pb @ v
        c = 0.5 * np.real(pv @ v.conj())
        bv = c @ pv
        return bv - np.vdot(v, bv) * v

    def field_vec(self, beta: np.ndarray, v: np.ndarray) -> np.ndarray:
        bv = beta @ v
        return bv - np.vdot(v, bv) * v


@dataclass
class Trajectory:
    """A stored negative-gradient-flow solution."""

    times: np.ndarray
    states: np.ndarray
    f_values: np.ndarray
    grad_norms: np.ndarray
    converged: bool
    limit: ProjectivePoint | None
    limit_beta: GradientValue | None

    @property
    def n_steps(self) -> int:
        return len(self.times)

    def state(self, i: int) -> ProjectivePoint:
        return ProjectivePoint(self.states[i])

    def monotonicity_violation(self) -> float:
        """Largest increase of f along the stored samples (0 if monotone)."""
        if len(self.f_values) < 2:
            return 0.0
        return float(max(0.0, np.max(np.diff(self.f_values))))


def integrate_flow(
    group: CompatibleGroup, x0: ProjectivePoint, opts: FlowOptions | None = None
) -> Trajectory:
    """Run the negative gradient flow of f from x0.

    The trajectory is unconverged (limit None) when t_max is reached first;
    that outcome is reported, not raised.
    """
    opts = opts or FlowOptions()
    ws = _Workspace(group)
    times, states, fvals, gnorms = [], [], [], []
    streak = {"n": 0}

    def rhs(v):
        return -ws.grad_vec(v)

    def renorm(v):
        return v / np.linalg.norm(v)

    def on_accept(t, v):
        c = ws.mu_coeff(v)
        g = np.linalg.norm(ws.grad_vec(v))
        times.append(t)
        states.append(v.copy())
        fvals.append(0.5 * float(c @ c))
        gnorms.append(float(g))

    def halt(t, v):
        if gnorms[-1] < opts.eps_grad:
            streak["n"] += 1
        else:
            streak["n"] = 0
        return streak["n"] >= opts.sustain or (len(times) == 1 and gnorms[0] < opts.eps_grad)

    converged, _, y = _adaptive_rk(
        rhs,
        x0.rep,
        opts.t_max,
        atol=opts.atol,
        rtol=opts.rtol,
        h_max=opts.h_max,
        renorm=renorm,
        on_accept=on_accept,
        halt=halt,
    )
    limit = ProjectivePoint(y) if converged else None
    beta = gradient_map(group, limit) if converged else None
    return Trajectory(
        times=np.array(times),
        states=np.array(states),
        f_values=np.array(fvals),
        grad_norms=np.array(gnorms),
        converged=converged,
        limit=limit,
        limit_beta=beta,
    )


@dataclass
class GroupLift:
    """Group path g(t) solving g' = g mu_p(x(t)) alongside a trajectory."""

    times: np.ndarray
    elements: np.ndarray
    max_drift: float
    max_det_drift: float


def group_lift(
    group: CompatibleGroup,
    x0: ProjectivePoint,
    trajectory: Trajectory,
    drift_tol: float = 1e-6,
) -> GroupLift:
    """Integrate the algebra lift of a stored flow and audit the identity
    x(t) = g(t)^-1 x0 at every stored time.

    Raises DriftExceeded when the audit fails.
    """
    ws = _Workspace(group)
    n = group.n
    stops = list(trajectory.times)
    recorded = {}

    def pack(v, g):
        return np.concatenate([v, g.ravel()])

    def unpack(y):
        return y[:n], y[n:].reshape(n, n)

    def rhs(y):
        v, g = unpack(y)
        c = ws.mu_coeff(v)
        beta = ws.beta_of(c)
        bv = beta @ v
        dv = -(bv - np.vdot(v, bv) * v)
        return pack(dv, g @ beta)

    def renorm(y):
        v, g = unpack(y)
        return pack(v / np.linalg.norm(v), g)

    def on_accept(t, y):
        for i, ts in enumerate(stops):
            if abs(t - ts) <= 1e-12:
                recorded[i] = unpack(y)

    def halt(t, y):
        return len(recorded) == len(stops)

    t_end = float(trajectory.times[-1]) if len(stops) else 0.0
    y0 = pack(x0.rep, np.eye(n, dtype=complex))
    on_accept(0.0, y0)
    if t_end > 0:
        _adaptive_rk(
            rhs,
            y0,
            t_end,
            atol=1e-10,
            rtol=1e-10,
            h_max=0.5,
            renorm=renorm,
            on_accept=on_accept,
            halt=halt,
            t_stops=stops,
        )
    max_drift, max_det = 0.0, 0.0
    elements = np.zeros((len(stops), n, n), dtype=complex)
    from .lie_core import KIND_REAL_SL

    for i in range(len(stops)):
        if i not in recorded:
            raise DriftExceeded(f"no lift sample recorded at t={stops[i]:.6g}")
        _, g = recorded[i]
        elements[i] = g
        pulled = np.linalg.solve(g, x0.rep)
        max_drift = max(max_drift, projective_distance(pulled / np.linalg.norm(pulled),
                                                       trajectory.states[i]))
        if group.kind == KIND_REAL_SL:
            max_det = max(max_det, abs(np.linalg.det(g) - 1.0))
    if max_drift > drift_tol:
        raise DriftExceeded(f"lift drift {max_drift:.3e} exceeds {drift_tol:g}")
    return GroupLift(
        times=trajectory.times.copy(),
        elements=elements,
        max_drift=float(max_drift),
        max_det_drift=float(max_det),
    )


def lojasiewicz_diagnostics(
    traj: Trajectory, grad_threshold: float = 1e-3, min_tail: int = 50
) -> dict:
    """Rate diagnostics on the converged tail of a trajectory.

    Fits d(x(t), x_inf) ~ C / (t - T)^psi on the last two decades past the
    time T where |grad f| first drops below ``grad_threshold``, rescales C
    so the bound holds pointwise, and fits the gradient-inequality exponent
    gamma from log|f - f_inf| against log|grad f|.
    """
    if not traj.converged:
        raise Unconverged(traj.times[-1] if len(traj.times) else 0.0,
                          traj.grad_norms[-1] if len(traj.grad_norms) else np.inf)
    below = np.nonzero(traj.grad_norms < grad_threshold)[0]
    if len(below) == 0:
        raise InsufficientTail("gradient never dropped below the fit threshold")
    t_big = traj.times[below[0]]
    t_end = traj.times[-1]
    lim = traj.limit.rep
    dists = np.array([projective_distance(s, lim) for s in traj.states])
    span = max(t_end - t_big, 1e-12)
    mask = (
        (traj.times > t_big)
        & (traj.times - t_big >= span / 100.0)
        & (dists > 1e-8)
        & (traj.times < t_end)
    )
    if int(mask.sum()) < min_tail:
        raise InsufficientTail(f"only {int(mask.sum())} usable tail samples (need {min_tail})")
    lt = np.log(traj.times[mask] - t_big)
    ld = np.log(dists[mask])
    slope, intercept = np.polyfit(lt, ld, 1)
    psi = float(-slope)
    log_c = float(np.max(ld + psi * lt))
    residuals = ld - (log_c - psi * lt)

    f_inf = traj.f_values[-1]
    fmask = mask & (traj.f_values - f_inf > 1e-14) & (traj.grad_norms > 1e-13)
    if int(fmask.sum()) >= 10:
        gslope, _ = np.polyfit(np.log(traj.grad_norms[fmask]),
                               np.log(traj.f_values[fmask] - f_inf), 1)
        gamma = float(1.0 / gslope) if gslope != 0 else np.inf
    else:
        gamma = float("nan")
    mono = traj.monotonicity_violation()
    return {
        "T": float(t_big),
        "psi_fit": psi,
        "C_fit": float(np.exp(log_c)),
        "gamma_fit": gamma,
        "max_bound_residual": float(np.max(residuals)),
        "n_tail": int(mask.sum()),
        "f_monotonicity_violation": mono,
        "gamma_in_range": bool(np.isfinite(gamma) and 0.45 < gamma < 1.05),
    }


@dataclass
class StratumLabel:
    """Chamber representative of mu_p at the flow limit, with its f-level."""

    beta_plus: np.ndarray
    f_value: float

    def close_to(self, other: "StratumLabel", tol: float = 1e-6) -> bool:
        return bool(np.max(np.abs(self.beta_plus - other.beta_plus)) <= tol)


def _limit_label(group: CompatibleGroup, beta: GradientValue) -> StratumLabel:
    if group.kind == KIND_TORUS:
        vec = np.real(np.diagonal(beta.value)).copy()
    else:
        vec = beta.spectrum()
    return StratumLabel(beta_plus=vec, f_value=0.5 * float(np.dot(vec, vec)))


def classify_stratum(
    group: CompatibleGroup,
    ab: AbelianSubalgebra,
    x: ProjectivePoint,
    opts: FlowOptions | None = None,
) -> StratumLabel:
    """Stratum label of x: chamber representative of mu_p at its flow limit."""
    traj = integrate_flow(group, x, opts)
    if not traj.converged:
        raise Unconverged(traj.times[-1], traj.grad_norms[-1])
    return _limit_label(group, traj.limit_beta)


def merge_labels(labels, tol: float = 1e-6):
    """Cluster stratum labels; returns list of (representative, count)."""
    out = []
    for lab in labels:
        for i, (rep, cnt) in enumerate(out):
            if lab.close_to(rep, tol):
                out[i] = (rep, cnt + 1)
                break
        else:
            out.append((lab, 1))
    return out


@dataclass
class CriticalComponent:
    """A cluster of flow limits sharing f-value and mu_p-spectrum."""

    representative: ProjectivePoint
    spectrum_invariant: np.ndarray
    f_value: float
    hessian_signature: tuple
    members: list = field(default_factory=list)

    @property
    def basin_count(self) -> int:
        return len(self.members)


def random_projective_point(rng: np.random.Generator, n: int) -> ProjectivePoint:
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return ProjectivePoint(v)


def find_critical_components(
    group: CompatibleGroup,
    seed_count: int,
    rng_seed: int,
    opts: FlowOptions | None = None,
    sampler=None,
    f_tol: float = 1e-8,
    spec_tol: float = 1e-6,
    with_hessian: bool = True,
) -> list:
    """Flow ``seed_count`` seeded random starts and cluster the limits.

    Deterministic in ``rng_seed``; each seed's start point is drawn from an
    independent child generator so results are stable under parallel
    execution.
    """
    opts = opts or FlowOptions()
    n = group.n
    seeds = np.random.SeedSequence(rng_seed).spawn(seed_count)

    def job(seq):
        rng = np.random.default_rng(seq)
        x0 = sampler(rng) if sampler is not None else random_projective_point(rng, n)
        return integrate_flow(group, x0, opts)

    trajectories = parallel_map(job, seeds)
    components = []
    for traj in trajectories:
        if not traj.converged:
            continue
        f_val = float(traj.f_values[-1])
        spec = traj.limit_beta.spectrum()
        for comp in components:
            if abs(comp.f_value - f_val) <= f_tol and np.max(
                np.abs(comp.spectrum_invariant - spec)
            ) <= spec_tol:
                comp.members.append(traj.limit)
                break
        else:
            components.append(
                CriticalComponent(
                    representative=traj.limit,
                    spectrum_invariant=spec,
                    f_value=f_val,
                    hessian_signature=(),
                    members=[traj.limit],
                )
            )
    components.sort(key=lambda c: c.f_value)
    if with_hessian:
        for comp in components:
            hess, _ = hessian_f(group, comp.representative, tol=1e-5)
            comp.hessian_signature = hessian_signature(hess, zero_tol=1e-3)
    return components


def min_stratum_openness_check(
    group: CompatibleGroup,
    ab: AbelianSubalgebra,
    members,
    n_probe: int,
    radius: float = 1e-3,
    rng_seed: int = 0,
    opts: FlowOptions | None = None,
) -> dict:
    """Perturb stratum members tangentially and re-classify.

    Returns the fraction of probes whose label is unchanged (the openness
    signature: 100% for the minimum stratum, failures for closed strata).
    """
    rng = np.random.default_rng(rng_seed)
    members = list(members)
    base_label = classify_stratum(group, ab, members[0], opts)
    same = 0
    for _ in range(n_probe):
        x = members[rng.integers(0, len(members))]
        frame = tangent_frame(x)
        coeff = rng.normal(size=len(frame))
        coeff = coeff / np.linalg.norm(coeff) * radius
        w = np.einsum("a,ai->i", coeff, frame)
        probe = ProjectivePoint(x.rep + w)
        label = classify_stratum(group, ab, probe, opts)
        if label.close_to(base_label):
            same += 1
    return {
        "n_probe": n_probe,
        "same_label": same,
        "fraction_same": same / n_probe,
        "base_label": base_label.beta_plus,
        "passed": same == n_probe,
    }


def retraction_check(
    group: CompatibleGroup,
    sampler,
    n_samples: int,
    rng_seed: int = 0,
    opts: FlowOptions | None = None,
) -> dict:
    """Audit the deformation retraction of the minimal stratum onto the
    zero fiber: limits land in mu_p^{-1}(0), the limit map commutes with K,
    and zero-fiber points are flow-fixed.
    """
    opts = opts or FlowOptions()
    rng = np.random.default_rng(rng_seed)
    max_mu, max_equiv, max_fixed = 0.0, 0.0, 0.0
    for _ in range(n_samples):
        p = sampler(rng)
        traj = integrate_flow(group, p, opts)
        if not traj.converged:
            raise Unconverged(opts.t_max, traj.grad_norms[-1])
        max_mu = max(max_mu, traj.limit_beta.norm)
        k = group.random_k_element(rng)
        traj_k = integrate_flow(group, p.act(k), opts)
        moved = traj.limit.act(k)
        max_equiv = max(max_equiv, moved.distance(traj_k.limit))
        refix = integrate_flow(group, traj.limit, opts)
        max_fixed = max(max_fixed, traj.limit.distance(refix.limit))
    return {
        "n_samples": n_samples,
        "max_zero_fiber_residual": max_mu,
        "max_equivariance_residual": max_equiv,
        "max_fixed_point_residual": max_fixed,
        "passed": max_mu < 1e-8 and max_equiv < 1e-6 and max_fixed < 1e-8,
    }


def k_orbit_distance(
    group: CompatibleGroup,
    a: ProjectivePoint,
    b: ProjectivePoint,
    n_restarts: int = 20,
    rng: np.random.Generator | None = None,
) -> dict:
    """Estimate min over K of d([a], [k b]) by multi-start optimization
    over exponential coordinates of k.

    Verdict 'same' needs distance <= 1e-5; otherwise 'inconclusive' (the
    theorems preclude 'different'; failure to certify is reported as such).
    """
    rng = rng or np.random.default_rng(0)
    kb = group.k_basis
    if len(kb) == 0:
        d = a.distance(b)
        return {"distance": d, "verdict": "same" if d <= 1e-5 else "inconclusive"}

    def obj(theta):
        k = scipy.linalg.expm(np.einsum("a,aij->ij", theta, kb))
        return a.distance(b.act(k))

    best = obj(np.zeros(len(kb)))
    for _ in range(n_restarts):
        theta0 = rng.normal(scale=1.5, size=len(kb))
        res = scipy.optimize.minimize(obj, theta0, method="Nelder-Mead",
                                      options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 4000})
        best = min(best, float(res.fun))
        if best <= 1e-7:
            break
    return {"distance": best, "verdict": "same" if best <= 1e-5 else "inconclusive"}


def ness_uniqueness_experiment(
    group: CompatibleGroup,
    x0: ProjectivePoint,
    n_group_samples: int,
    rng_seed: int,
    opts: FlowOptions | None = None,
) -> dict:
    """Flow translates g x0 over random g = k exp(xi) and compare limits.

    All limit f-values must agree (the orbit infimum), all mu_p spectra
    must agree, and the limits must lie on one K-orbit up to the
    optimizer's certificate.
    """
    opts = opts or FlowOptions()
    rng = np.random.default_rng(rng_seed)
    starts = [x0]
    for _ in range(n_group_samples):
        k = group.random_k_element(rng)
        xi = group.random_p_element(rng, max_norm=2.0)
        g = k @ scipy.linalg.expm(xi)
        starts.append(x0.act(g))
    trajs = parallel_map(lambda s: integrate_flow(group, s, opts), starts)
    unconverged = sum(1 for t in trajs if not t.converged)
    limits = [t.limit for t in trajs if t.converged]
    f_vals = np.array([t.f_values[-1] for t in trajs if t.converged])
    specs = np.array([t.limit_beta.spectrum() for t in trajs if t.converged])
    f_spread = float(f_vals.max() - f_vals.min())
    spec_spread = float(np.max(specs.max(axis=0) - specs.min(axis=0)))
    same, inconclusive, worst = 0, 0, 0.0
    for lim in limits[1:]:
        rep = k_orbit_distance(group, limits[0], lim, rng=rng)
        worst = max(worst, rep["distance"])
        if rep["verdict"] == "same":
            same += 1
        else:
            inconclusive += 1
    return {
        "n_samples": n_group_samples,
        "n_unconverged": unconverged,
        "f_spread": f_spread,
        "spectra_spread": spec_spread,
        "k_orbit_same": same,
        "k_orbit_inconclusive": inconclusive,
        "worst_k_orbit_distance": worst,
        "passed": (
            unconverged == 0
            and f_spread < 1e-7
            and spec_spread < 1e-6
            and inconclusive <= max(1, int(0.05 * max(1, same + inconclusive)))
        ),
    }


def unstable_manifold_census(
    group: CompatibleGroup,
    beta: np.ndarray,
    seed_count: int,
    rng_seed: int = 0,
    opts: FlowOptions | None = None,
) -> dict:
    """Partition random seeds by the forward limit of the exp(t beta) flow.

    Limits are found by integrating the ascent flow of mu_p^beta; each seed
    is assigned to the critical component (an eigenvalue level of beta) it
    converges to.  Per component the report carries the negativity index of
    the Hessian and the observed basin fraction, and checks that a
    full-measure basin has dim C_i + index = dim X.
    """
    opts = opts or FlowOptions()
    ws = _Workspace(group)
    beta = np.asarray(beta, dtype=complex)
    n = group.n
    evals, evecs = np.linalg.eigh(beta)
    clusters = []
    for lam in evals:
        if not clusters or lam - clusters[-1][0] > 1e-9:
            clusters.append([lam, []])
    for i, lam in enumerate(evals):
        for c in clusters:
            if abs(lam - c[0]) <= 1e-9:
                c[1].append(i)
                break
    rng = np.random.default_rng(rng_seed)
    assignments = np.full(seed_count, -1)
    failures = 0

    zero_field = np.linalg.norm(beta) < 1e-14
    for s in range(seed_count):
        x0 = random_projective_point(rng, n)
        if zero_field:
            limit_vec = x0.rep
        else:
            limit_vec = _ascend_one_parameter(ws, beta, x0.rep, opts)
        weights = [
            float(sum(abs(np.vdot(evecs[:, i], limit_vec)) ** 2 for i in idxs))
            for _, idxs in clusters
        ]
        j = int(np.argmax(weights))
        if weights[j] < 1.0 - 1e-6:
            failures += 1
        else:
            assignments[s] = j
    dim_x = 2 * (n - 1)
    per_component = []
    for j, (lam, idxs) in enumerate(clusters):
        rep = ProjectivePoint(evecs[:, idxs[0]])
        hess, _ = hessian_mu_beta(group, beta, rep, tol=1e-6)
        sig = hessian_signature(hess, zero_tol=1e-4)
        fraction = float(np.mean(assignments == j))
        entry = {
            "level": float(lam) / 2.0,
            "index": sig[0],
            "component_dim": sig[1],
            "basin_fraction": fraction,
            "open_basin_consistent": (sig[0] + sig[1] == dim_x) if fraction > 0.5 else True,
        }
        per_component.append(entry)
    return {
        "components": per_component,
        "assigned": int(np.sum(assignments >= 0)),
        "failures": failures,
        "failure_fraction": failures / seed_count,
        "covered": failures / seed_count < 1e-3,
        "passed": failures / seed_count < 1e-3
        and all(e["open_basin_consistent"] for e in per_component),
    }


def _ascend_one_parameter(ws: _Workspace, beta: np.ndarray, v0: np.ndarray, opts: FlowOptions):
    """Forward limit of the exp(t beta) flow via the ascent ODE of mu^beta."""
    state = {"v": v0.copy()}

    def rhs(v):
        return ws.field_vec(beta, v)

    def renorm(v):
        return v / np.linalg.norm(v)

    def on_accept(t, v):
        state["v"] = v

    streak = {"n": 0}

    def halt(t, v):
        if np.linalg.norm(ws.field_vec(beta, v)) < opts.eps_grad:
            streak["n"] += 1
        else:
            streak["n"] = 0
        return streak["n"] >= opts.sustain

    _adaptive_rk(
        rhs,
        v0,
        opts.t_max,
        atol=opts.atol,
        rtol=opts.rtol,
        h_max=opts.h_max,
        renorm=renorm,
        on_accept=on_accept,
        halt=halt,
    )
    return state["v"]
