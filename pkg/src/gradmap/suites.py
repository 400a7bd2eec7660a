"""Named verification suites over scenarios, and their run reports.

Each suite maps onto declared acceptance checks; a suite never silently
skips a check it declares.  Reports are reproducible: identical
(scenario, suite, seed) give identical JSON up to the timing block.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import convex as cv
from . import flow as fl
from . import kempf_ness as kn
from . import projective as pj
from .errors import ComponentCountMismatch, UnknownSuite
from .lie_core import KIND_TORUS, ad_eigendecomposition, chamber_vector
from .linalg import central_derivative, mat_inner
from .scenarios import Scenario

_PASS, _FAIL, _INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class CheckResult:
    name: str
    verdict: str
    residuals: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @staticmethod
    def from_bool(name, ok, residuals=None, details=None, inconclusive=False):
        verdict = _PASS if ok else (_INCONCLUSIVE if inconclusive else _FAIL)
        return CheckResult(name, verdict, residuals or {}, details or {})


@dataclass
class RunReport:
    scenario: str
    suite: str
    seed: int
    checks: list
    timings: dict = field(default_factory=dict)
    schema: str = "gradmap-report/1"

    @property
    def verdict(self) -> str:
        if any(c.verdict == _FAIL for c in self.checks):
            return _FAIL
        if any(c.verdict == _INCONCLUSIVE for c in self.checks):
            return _INCONCLUSIVE
        return _PASS

    @property
    def exit_code(self) -> int:
        return 1 if self.verdict == _FAIL else 0

    def to_json_dict(self) -> dict:
        def clean(obj):
            if isinstance(obj, dict):
                return {str(k): clean(v) for k, v in sorted(obj.items())}
            if isinstance(obj, (list, tuple)):
                return [clean(v) for v in obj]
            if isinstance(obj, (np.floating, float)):
                return float(obj)
            if isinstance(obj, (np.integer, int)):
                return int(obj)
            if isinstance(obj, np.bool_):
                return bool(obj)
            if isinstance(obj, np.ndarray):
                return [clean(v) for v in obj.tolist()]
            return obj

        return {
            "schema": self.schema,
            "scenario": self.scenario,
            "suite": self.suite,
            "seed": self.seed,
            "verdict": self.verdict,
            "checks": [
                {
                    "name": c.name,
                    "verdict": c.verdict,
                    "residuals": clean(c.residuals),
                    "details": clean(c.details),
                }
                for c in self.checks
            ],
            "timings": {k: float(v) for k, v in self.timings.items()},
        }


def _mixed_sampler(scenario: Scenario, closed_every: int = 5):
    """Deterministic interleave of ambient and closed-orbit samples."""
    counter = {"i": 0}

    def sample(rng):
        counter["i"] += 1
        if scenario.closed_orbit is not None and counter["i"] % closed_every == 0:
            return scenario.closed_orbit.sampler(rng)
        return scenario.sample_point(rng)

    return sample


# ---------------------------------------------------------------------------
# suite bodies


def moment_identity_checks(scenario: Scenario, rng_seed: int, n_trials: int = 200) -> list:
    group, n = scenario.group, scenario.n
    rng = np.random.default_rng(rng_seed)
    from .lie_core import full_complex

    full = full_complex(n)
    worst_def, worst_grad, worst_equi, worst_mono = 0.0, 0.0, 0.0, 0.0
    for _ in range(n_trials):
        x = fl.random_projective_point(rng, n)
        frame = pj.tangent_frame(x)
        w = frame[rng.integers(0, len(frame))] * rng.normal()
        xi = np.einsum("a,aij->ij", rng.normal(size=full.dim_k), full.k_basis)
        lhs = central_derivative(lambda t: pj.moment_pairing(pj.curve(x, w, t), xi))
        rhs = pj.omega(pj.fundamental_field(xi, x), pj.TangentVector(x, w))
        worst_def = max(worst_def, abs(lhs - rhs) / (1.0 + np.linalg.norm(xi)))
        lhs2 = central_derivative(lambda t: pj.norm_square_f(group, pj.curve(x, w, t)))
        rhs2 = pj.fs_inner(pj.grad_f(group, x), pj.TangentVector(x, w))
        worst_grad = max(worst_grad, abs(lhs2 - rhs2))
        k = group.random_k_element(rng)
        mu_kx = pj.gradient_map(group, x.act(k)).value
        ad_mu = k @ pj.gradient_map(group, x).value @ np.linalg.inv(k)
        worst_equi = max(worst_equi, float(np.linalg.norm(mu_kx - ad_mu)))
        beta = group.random_p_element(rng)
        ts = np.linspace(-0.5, 0.5, 9)
        vals = [
            pj.mu_p_component(group, x.act(scipy.linalg.expm(t * beta)), beta) for t in ts
        ]
        worst_mono = max(worst_mono, float(max(0.0, -min(np.diff(vals)))))
    return [
        CheckResult.from_bool(
            "moment-defining-identity", worst_def < 1e-6, {"max_residual": worst_def}
        ),
        CheckResult.from_bool(
            "gradient-identity", worst_grad < 1e-6, {"max_residual": worst_grad}
        ),
        CheckResult.from_bool(
            "k-equivariance", worst_equi < 1e-10, {"max_residual": worst_equi}
        ),
        CheckResult.from_bool(
            "exp-beta-monotone", worst_mono < 1e-9, {"max_decrease": worst_mono}
        ),
    ]


def flow_convergence_checks(
    scenario: Scenario, rng_seed: int, n_starts: int = 50, n_lifts: int = 10
) -> list:
    group = scenario.group
    opts = fl.FlowOptions()
    seeds = np.random.SeedSequence(rng_seed).spawn(n_starts)
    sampler = _mixed_sampler(scenario)

    def job(seq):
        rng = np.random.default_rng(seq)
        x0 = sampler(rng)
        return x0, fl.integrate_flow(group, x0, opts)

    runs = fl.parallel_map(job, seeds)
    n_conv = sum(1 for _, t in runs if t.converged)
    worst_mono = max(t.monotonicity_violation() for _, t in runs)
    worst_bound, worst_gamma, fitted = 0.0, 0.0, 0
    for _, traj in runs:
        if not traj.converged or traj.n_steps < 60:
            continue
        try:
            d = fl.lojasiewicz_diagnostics(traj)
        except Exception:
            continue
        fitted += 1
        worst_bound = max(worst_bound, d["max_bound_residual"])
    drift, det_drift = 0.0, 0.0
    for x0, traj in runs[:n_lifts]:
        if not traj.converged or traj.n_steps < 2:
            continue
        lift = fl.group_lift(group, x0, traj)
        drift = max(drift, lift.max_drift)
        det_drift = max(det_drift, lift.max_det_drift)
    return [
        CheckResult.from_bool(
            "all-converged", n_conv == len(runs), {"converged": n_conv, "total": len(runs)}
        ),
        CheckResult.from_bool("f-monotone", worst_mono <= 1e-8, {"max_increase": worst_mono}),
        CheckResult.from_bool(
            "lojasiewicz-tail-bound",
            worst_bound <= 1e-8 and fitted > 0,
            {"max_bound_residual": worst_bound, "fitted_runs": fitted},
        ),
        CheckResult.from_bool(
            "group-lift-drift", drift < 1e-6, {"max_drift": drift, "max_det_drift": det_drift}
        ),
    ]


def ness_checks(scenario: Scenario, rng_seed: int, n_samples: int = 20) -> list:
    group = scenario.group
    rng = np.random.default_rng(rng_seed)
    x0 = scenario.sample_point(rng)
    rep = fl.ness_uniqueness_experiment(group, x0, n_samples, rng_seed + 1)
    checks = [
        CheckResult.from_bool(
            "limit-f-agreement", rep["f_spread"] < 1e-7, {"f_spread": rep["f_spread"]}
        ),
        CheckResult.from_bool(
            "limit-spectra-agreement",
            rep["spectra_spread"] < 1e-6,
            {"spectra_spread": rep["spectra_spread"]},
        ),
    ]
    frac_inc = rep["k_orbit_inconclusive"] / max(1, rep["k_orbit_same"] + rep["k_orbit_inconclusive"])
    checks.append(
        CheckResult.from_bool(
            "single-k-orbit",
            frac_inc <= 0.05,
            {
                "same": rep["k_orbit_same"],
                "inconclusive": rep["k_orbit_inconclusive"],
                "worst_distance": rep["worst_k_orbit_distance"],
            },
            inconclusive=0 < frac_inc <= 0.5,
        )
    )
    return checks


def kempf_ness_checks(scenario: Scenario, rng_seed: int, n_triples: int = 100) -> list:
    group, n = scenario.group, scenario.n
    rng = np.random.default_rng(rng_seed)
    worst_coc, worst_kinv, worst_d1, min_d2, worst_cal = 0.0, 0.0, 0.0, np.inf, 0.0
    for _ in range(n_triples):
        x = fl.random_projective_point(rng, n)
        g = group.random_k_element(rng) @ scipy.linalg.expm(group.random_p_element(rng))
        h = group.random_k_element(rng) @ scipy.linalg.expm(group.random_p_element(rng))
        k = group.random_k_element(rng)
        worst_coc = max(worst_coc, kn.kn_cocycle_residual(group, x, g, h))
        worst_kinv = max(
            worst_kinv, abs(kn.kn_value(group, x, k @ g) - kn.kn_value(group, x, g))
        )
        xi = group.random_p_element(rng)
        d1, d2 = kn.kn_first_second_derivative(group, x, g, xi)
        y = pj.ProjectivePoint(np.linalg.solve(g, x.rep))
        expected = -mat_inner(pj.gradient_map(group, y).value, xi)
        worst_d1 = max(worst_d1, abs(d1 - expected))
        min_d2 = min(min_d2, d2)
        worst_cal = max(worst_cal, kn.kn_calibration_residual(group, x, xi))
    checks = [
        CheckResult.from_bool("cocycle", worst_coc < 1e-10, {"max_residual": worst_coc}),
        CheckResult.from_bool("left-k-invariance", worst_kinv < 1e-10, {"max_residual": worst_kinv}),
        CheckResult.from_bool("first-derivative-identity", worst_d1 < 1e-8, {"max_residual": worst_d1}),
        CheckResult.from_bool("geodesic-convexity", min_d2 >= -1e-10, {"min_second_derivative": min_d2}),
        CheckResult.from_bool("scale-calibration", worst_cal < 1e-8, {"max_residual": worst_cal}),
    ]
    # flow intertwining + rho monotonicity + Morse-Bott probe
    x = scenario.sample_point(np.random.default_rng(rng_seed + 7))
    if group.dim_p > 0:
        g0 = scipy.linalg.expm(group.random_p_element(rng))
        path = kn.kn_flow(group, x, g0, t_end=25.0)
        checks.append(
            CheckResult.from_bool(
                "m-flow-shadow",
                path.coupling_residual < 1e-6 and path.phi_monotonicity_violation <= 1e-10,
                {
                    "coupling_residual": path.coupling_residual,
                    "phi_increase": path.phi_monotonicity_violation,
                },
            )
        )
        rep = kn.paired_flow_distance_monotonicity(
            group, x, np.eye(n, dtype=complex), scipy.linalg.expm(group.random_p_element(rng)),
            t_end=20.0,
        )
        checks.append(
            CheckResult.from_bool("rho-monotone", rep["max_increase"] <= 1e-8,
                                  {"max_increase": rep["max_increase"]})
        )
        traj = fl.integrate_flow(group, x)
        if traj.converged and traj.limit_beta.norm < 1e-8:
            mb = kn.kn_morse_bott_probe(group, x)
            checks.append(
                CheckResult.from_bool(
                    "morse-bott-kernel",
                    mb["passed"],
                    {
                        "kernel_dim": mb["kernel_dim"],
                        "stabilizer_dim": mb["stabilizer_dim"],
                        "max_principal_angle": mb["max_principal_angle"],
                        "min_nonkernel_eigenvalue": mb["min_nonkernel_eigenvalue"],
                    },
                )
            )
            inf_grid = kn.grid_infimum(group, x, radius=5.0, resolution=1e-2)
            path2 = kn.kn_flow(group, x, np.eye(n, dtype=complex), t_end=40.0)
            gap = abs(path2.phi_values[-1] - inf_grid)
            checks.append(
                CheckResult.from_bool("flow-limit-is-infimum", gap < 1e-4, {"gap": gap})
            )
    return checks


def stratification_checks(
    scenario: Scenario, rng_seed: int, n_seeds: int = 100, n_probe: int = 40
) -> list:
    group, ab = scenario.group, scenario.abelian
    opts = fl.FlowOptions()
    sampler = _mixed_sampler(scenario)
    seeds = np.random.SeedSequence(rng_seed).spawn(n_seeds)

    def job(seq):
        rng = np.random.default_rng(seq)
        x0 = sampler(rng)
        traj = fl.integrate_flow(group, x0, opts)
        return x0, traj

    runs = fl.parallel_map(job, seeds)
    labels = []
    for _, traj in runs:
        if traj.converged:
            labels.append(fl._limit_label(group, traj.limit_beta))
    merged = fl.merge_labels(labels)
    checks = []
    expected_count = scenario.expected.get("critical_components")
    if expected_count is not None:
        checks.append(
            CheckResult.from_bool(
                "stratum-label-count",
                len(merged) == expected_count,
                {"observed": len(merged), "expected": expected_count},
                details={"labels": [list(m[0].beta_plus) for m in merged]},
            )
        )
    else:
        checks.append(
            CheckResult(
                "stratum-label-count",
                _PASS,
                {"observed": len(merged)},
                {"labels": [list(m[0].beta_plus) for m in merged]},
            )
        )
    # flow invariance: relabeling from a trajectory midpoint agrees
    worst_mid = 0.0
    relabeled = 0
    for _, traj in runs[:10]:
        if not traj.converged or traj.n_steps < 4:
            continue
        mid = traj.state(traj.n_steps // 2)
        lab_mid = fl.classify_stratum(group, ab, mid, opts)
        lab_end = fl._limit_label(group, traj.limit_beta)
        worst_mid = max(worst_mid, float(np.max(np.abs(lab_mid.beta_plus - lab_end.beta_plus))))
        relabeled += 1
    checks.append(
        CheckResult.from_bool(
            "flow-invariance",
            worst_mid <= 1e-6 and relabeled > 0,
            {"max_label_difference": worst_mid, "relabeled": relabeled},
        )
    )
    # openness of the minimum stratum
    min_label = min(merged, key=lambda m: m[0].f_value)[0]
    members = [
        t.limit
        for _, t in runs
        if t.converged and fl._limit_label(group, t.limit_beta).close_to(min_label)
    ]
    open_rep = fl.min_stratum_openness_check(
        group, ab, members[:20], n_probe=n_probe, rng_seed=rng_seed + 3, opts=opts
    )
    checks.append(
        CheckResult.from_bool(
            "min-stratum-open",
            open_rep["passed"],
            {"fraction_same": open_rep["fraction_same"], "n_probe": open_rep["n_probe"]},
        )
    )
    # retraction audit where the zero fiber is reachable
    if min_label.f_value < 1e-12:
        def min_sampler(rng):
            while True:
                p = scenario.sample_point(rng)
                t = fl.integrate_flow(group, p, opts)
                if t.converged and t.limit_beta.norm < 1e-8:
                    return p

        ret = fl.retraction_check(group, min_sampler, n_samples=12, rng_seed=rng_seed + 9, opts=opts)
        checks.append(
            CheckResult.from_bool(
                "retraction",
                ret["passed"],
                {
                    "max_zero_fiber_residual": ret["max_zero_fiber_residual"],
                    "max_equivariance_residual": ret["max_equivariance_residual"],
                    "max_fixed_point_residual": ret["max_fixed_point_residual"],
                },
            )
        )
    return checks


def two_orbit_morse_analysis(scenario: Scenario, rng_seed: int, n_seeds: int = 120) -> list:
    """Morse-Bott census of the two-orbit scenario.

    Exactly two critical components; the maximum one has negative-definite
    transverse Hessian, the minimum one is nondegenerate transverse and a
    single K-orbit; Euler characteristics of the identified component types
    satisfy chi(X) = chi(max) + chi(min) with even indices.
    """
    group, ab = scenario.group, scenario.abelian
    comps = fl.find_critical_components(
        group, n_seeds, rng_seed, sampler=_mixed_sampler(scenario, closed_every=4)
    )
    if len(comps) != scenario.expected.get("critical_components", 2):
        raise ComponentCountMismatch(
            f"found {len(comps)} critical components, expected "
            f"{scenario.expected.get('critical_components', 2)}"
        )
    comp_min, comp_max = comps[0], comps[-1]
    checks = [
        CheckResult.from_bool(
            "two-components", True, {"count": len(comps)},
            {"f_values": [c.f_value for c in comps]},
        )
    ]
    hess_max, _ = pj.hessian_f(group, comp_max.representative, tol=1e-5)
    evals_max = np.linalg.eigvalsh(hess_max)
    sig_max = pj.hessian_signature(hess_max, zero_tol=1e-3)
    transverse_neg = evals_max[evals_max < -1e-3]
    checks.append(
        CheckResult.from_bool(
            "max-transverse-negative",
            sig_max[2] == 0 and len(transverse_neg) > 0 and np.all(transverse_neg < -1e-6),
            {"signature": sig_max, "max_transverse_eigenvalue": float(transverse_neg.max())},
        )
    )
    hess_min, _ = pj.hessian_f(group, comp_min.representative, tol=1e-5)
    sig_min = pj.hessian_signature(hess_min, zero_tol=1e-3)
    checks.append(
        CheckResult.from_bool(
            "min-transverse-nondegenerate",
            sig_min[0] == 0 and sig_min[2] > 0,
            {"signature": sig_min},
        )
    )
    # min component a single K-orbit
    rng = np.random.default_rng(rng_seed + 5)
    members = comp_min.members[:6]
    same, inconclusive, worst = 0, 0, 0.0
    for m in members[1:]:
        rep = fl.k_orbit_distance(group, members[0], m, rng=rng)
        worst = max(worst, rep["distance"])
        if rep["verdict"] == "same":
            same += 1
        else:
            inconclusive += 1
    checks.append(
        CheckResult.from_bool(
            "min-single-k-orbit",
            inconclusive == 0,
            {"pairs_same": same, "pairs_inconclusive": inconclusive, "worst_distance": worst},
            inconclusive=0 < inconclusive,
        )
    )
    # component identification + Euler identity
    closed = scenario.closed_orbit
    max_on_closed = closed is not None and closed.predicate(comp_max.representative) < 1e-6
    dims_ok = sig_max[1] == 2 and sig_min[1] == 2
    chi_max = scenario.expected.get("euler_max", 2)
    chi_min = scenario.expected.get("euler_min", 1)
    chi_total = scenario.expected.get("euler_total", 3)
    indices_even = sig_max[0] % 2 == 0 and sig_min[0] % 2 == 0
    checks.append(
        CheckResult.from_bool(
            "euler-consistency",
            max_on_closed and dims_ok and chi_total == chi_max + chi_min and indices_even,
            {
                "chi_total": chi_total,
                "chi_max": chi_max,
                "chi_min": chi_min,
                "index_max": sig_max[0],
                "index_min": sig_min[0],
            },
            {"max_component_on_closed_orbit": bool(max_on_closed)},
        )
    )
    return checks


def _augmented_abelian_samples(scenario: Scenario, rng, n_samples, sampler=None):
    """mu_a images (diagonal coordinates) of samples plus their A-orbit
    sweeps: exp(xi) p for random chamber-scaled xi, which probes the orbit
    closure without leaving the submanifold."""
    ab = scenario.abelian
    points = []
    images = []
    draw = sampler or scenario.sample_point
    for _ in range(n_samples):
        p = draw(rng)
        points.append(p)
        images.append(ab.to_vector(pj.gradient_map_abelian(ab, p)))
    sweep = []
    for p in points[: max(10, n_samples // 10)]:
        for _ in range(6):
            coeff = rng.normal(size=ab.dim)
            coeff = coeff / max(np.linalg.norm(coeff), 1e-12) * rng.uniform(5.0, 18.0)
            g = scipy.linalg.expm(ab.element(coeff))
            q = p.act(g)
            sweep.append(ab.to_vector(pj.gradient_map_abelian(ab, q)))
    return points, np.array(images + sweep)


def coisotropic_checks(scenario: Scenario, rng_seed: int, n_points: int = 100) -> list:
    """Checks for an A-stable coisotropic X in P(C^n): tangent sum spans,
    equal maxima, equal polytopes, dense orbit-closure witnesses."""
    group, ab, cons = scenario.group, scenario.abelian, scenario.constraint
    n = scenario.n
    rng = np.random.default_rng(rng_seed)
    # (i) T_pX + J T_pX = T_pZ by rank of stacked frames
    worst_rank = 2 * (n - 1)
    for _ in range(n_points):
        p = cons.sampler(rng)
        frame = pj.tangent_frame(p)
        proj = cons.tangent_projector(p)
        w, vecs = np.linalg.eigh(proj)
        basis = vecs[:, w > 0.5]
        jmat = np.array(
            [[float(np.real(np.vdot(fa, 1j * fb))) for fb in frame] for fa in frame]
        )
        stacked = np.hstack([basis, jmat.T @ basis])
        rank = np.linalg.matrix_rank(stacked, tol=1e-8)
        worst_rank = min(worst_rank, rank)
    checks = [
        CheckResult.from_bool(
            "tangent-sum-rank",
            worst_rank == 2 * (n - 1),
            {"min_rank": int(worst_rank), "expected": 2 * (n - 1)},
        )
    ]
    # (ii) maxima of mu_a^xi agree on X and Z
    worst_gap = 0.0
    for _ in range(8):
        coeff = rng.normal(size=ab.dim)
        xi = ab.element(coeff)

        def sweep_max(draw):
            best = -np.inf
            for _ in range(60):
                p = draw(rng)
                for t in (0.0, 2.0, 6.0, 14.0):
                    q = p.act(scipy.linalg.expm(t * xi))
                    best = max(best, pj.mu_p_component(group, q, xi))
            return best

        mx = sweep_max(cons.sampler)
        mz = sweep_max(lambda r: fl.random_projective_point(r, n))
        worst_gap = max(worst_gap, abs(mx - mz))
    checks.append(
        CheckResult.from_bool("max-agreement", worst_gap < 1e-3, {"max_gap": worst_gap})
    )
    # (iii) hull of mu_a(X) equals the fixed-point polytope
    _, images = _augmented_abelian_samples(scenario, rng, 400, sampler=cons.sampler)
    hull_x = cv.convex_hull(images)
    target = cv.fixed_point_polytope(ab)
    equal, witness, gap = cv.polytope_equal_by_support(hull_x, target, slack=1e-3)
    checks.append(
        CheckResult.from_bool(
            "image-polytope-equality", equal, {"support_gap": gap},
            {"witness": None if witness is None else list(witness)},
        )
    )
    # (iv) density: orbit-closure image hull matches for >= 95% of samples
    hits, tries = 0, 40
    for _ in range(tries):
        p = cons.sampler(rng)
        imgs = []
        for _ in range(30):
            coeff = rng.normal(size=ab.dim)
            coeff = coeff / max(np.linalg.norm(coeff), 1e-12) * rng.uniform(0.0, 18.0)
            q = p.act(scipy.linalg.expm(ab.element(coeff)))
            imgs.append(ab.to_vector(pj.gradient_map_abelian(ab, q)))
        hull_p = cv.convex_hull(np.array(imgs))
        eq, _, _ = cv.polytope_equal_by_support(hull_p, target, slack=1e-2)
        hits += int(eq)
    checks.append(
        CheckResult.from_bool(
            "orbit-closure-density", hits / tries >= 0.95, {"fraction": hits / tries}
        )
    )
    return checks


def unique_closed_orbit_checks(scenario: Scenario, rng_seed: int, n_samples: int = 400) -> list:
    """mu_a(closed orbit) = mu_a(X), plus invariance of argmax sets of
    mu_p^beta under the unipotent directions r^{beta+}."""
    group, ab, closed = scenario.group, scenario.abelian, scenario.closed_orbit
    rng = np.random.default_rng(rng_seed)
    _, img_ambient = _augmented_abelian_samples(scenario, rng, n_samples)
    _, img_closed = _augmented_abelian_samples(
        scenario, rng, n_samples, sampler=closed.sampler
    )
    hull_a = cv.convex_hull(img_ambient)
    hull_c = cv.convex_hull(img_closed)
    equal, witness, gap = cv.polytope_equal_by_support(hull_c, hull_a, slack=1e-3)
    checks = [
        CheckResult.from_bool(
            "closed-orbit-polytope-equality", equal, {"support_gap": gap},
            {"witness": None if witness is None else list(witness)},
        )
    ]
    worst_drop = 0.0
    for _ in range(5):
        coeff = rng.normal(size=ab.dim)
        beta = ab.element(coeff)
        dec = ad_eigendecomposition(group, group.project_p(beta))
        rplus = dec.positive_space()
        # drive samples to the argmax of mu_p^beta along exp(t beta)
        members = []
        for _ in range(10):
            p = scenario.sample_point(rng)
            q = p.act(scipy.linalg.expm(12.0 * beta))
            members.append(q)
        vmax = max(pj.mu_p_component(group, q, beta) for q in members)
        for q in members:
            if pj.mu_p_component(group, q, beta) < vmax - 1e-6:
                continue
            for r in rplus:
                moved = q.act(scipy.linalg.expm(0.5 * r))
                worst_drop = max(
                    worst_drop, vmax - pj.mu_p_component(group, moved, beta)
                )
    checks.append(
        CheckResult.from_bool(
            "argmax-unipotent-invariance", worst_drop < 1e-6, {"max_drop": worst_drop}
        )
    )
    return checks


def abelian_from_nonabelian_checks(
    scenario: Scenario, rng_seed: int, n_samples: int = 400, resolution: float = 1e-2
) -> list:
    """Compare the sampled mu_a image with the sharp body of the chamber
    projection of the sampled mu_p spectra."""
    group, ab = scenario.group, scenario.abelian
    rng = np.random.default_rng(rng_seed)
    chamber_pts, mu_a_pts = [], []
    for _ in range(n_samples):
        p = scenario.sample_point(rng)
        spec = pj.gradient_map(group, p).spectrum()
        chamber_pts.append(spec)
        mu_a_pts.append(ab.to_vector(pj.gradient_map_abelian(ab, p)))
    chamber_pts = np.array(chamber_pts)
    mu_a_pts = np.array(mu_a_pts)
    if group.kind == KIND_TORUS:
        chamber_pts = np.array([chamber_vector(v) for v in mu_a_pts])
    hull_s = cv.convex_hull(chamber_pts)
    sharp = cv.sharp_construction(hull_s.vertices, ab, resolution=resolution)
    inside = sum(1 for x in mu_a_pts if sharp.contains(x, slack=1e-9))
    agreement = inside / len(mu_a_pts)
    margins = []
    if agreement < 1.0:
        body = sharp.sampled_body()
        margins = [
            cv.distance_to_hull(body, x) for x in mu_a_pts if not sharp.contains(x, slack=1e-9)
        ]
    worst_margin = max(margins) if margins else 0.0
    inconclusive = agreement < 0.99 and worst_margin < 2 * resolution
    checks = [
        CheckResult.from_bool(
            "membership-agreement",
            agreement >= 0.99,
            {"agreement": agreement, "worst_margin": worst_margin},
            inconclusive=inconclusive,
        )
    ]
    # sanity: the sampled sharp body hull matches the mu_a hull at slack
    hull_mu = cv.convex_hull(mu_a_pts)
    eq, _, gap = cv.polytope_equal_by_support(hull_mu, sharp.sampled_body(), slack=5e-2)
    checks.append(
        CheckResult.from_bool("sharp-body-hull-match", eq, {"support_gap": gap})
    )
    return checks


def abelian_polytope_checks(
    scenario: Scenario, rng_seed: int, n_samples: int = 10000
) -> list:
    """Atiyah-style check: hull of sampled mu_a equals the fixed-point
    polytope (Hausdorff 1e-2, support slack 1e-3)."""
    ab = scenario.abelian
    n = scenario.n
    rng = np.random.default_rng(rng_seed)
    imgs = np.empty((n_samples, n))
    for i in range(n_samples):
        if i % 2 == 0:
            p = fl.random_projective_point(rng, n)
        else:
            # coordinate-concentrated points of Z for vertex coverage
            j = rng.integers(0, n)
            delta = 10.0 ** rng.uniform(-7, -0.3)
            v = rng.normal(size=n) + 1j * rng.normal(size=n)
            v = v / np.linalg.norm(v) * np.sqrt(delta)
            v[j] = np.sqrt(1 - delta + abs(v[j]) ** 2)
            p = pj.ProjectivePoint(v)
        imgs[i] = ab.to_vector(pj.gradient_map_abelian(ab, p))
    report = {}
    target = cv.fixed_point_polytope(ab, report)
    sampled = cv.convex_hull(imgs)
    haus = cv.hausdorff_distance(sampled, target)
    equal, witness, gap = cv.polytope_equal_by_support(sampled, target, slack=1e-3)
    inside = all(cv.hull_membership(target, v, slack=1e-9) for v in sampled.vertices)
    return [
        CheckResult.from_bool("samples-inside-polytope", inside, {}),
        CheckResult.from_bool("hausdorff", haus < 1e-2, {"hausdorff": haus}),
        CheckResult.from_bool(
            "support-equality", equal, {"support_gap": gap},
            {"witness": None if witness is None else list(witness), **report},
        ),
    ]


def kostant_checks(scenario: Scenario, rng_seed: int, n_samples: int = 10000) -> list:
    group = scenario.group
    n = scenario.n
    rng = np.random.default_rng(rng_seed)
    x = group.project_p(rng.normal(size=(n, n)).astype(complex))
    x = 0.5 * (x + x.conj().T)
    rep = cv.kostant_projection_probe(group, np.real(x), n_samples=n_samples, rng_seed=rng_seed)
    return [
        CheckResult.from_bool(
            "majorization-all-samples",
            rep["majorization_failures"] == 0,
            {"failures": rep["majorization_failures"], "n_samples": rep["n_samples"]},
        ),
        CheckResult.from_bool(
            "vertices-approached",
            rep["worst_vertex_gap"] < 1e-3,
            {"worst_vertex_gap": rep["worst_vertex_gap"], "n_vertices": rep["n_vertices"]},
        ),
    ]


def sharp_convexity_checks(scenario: Scenario, rng_seed: int, n_pairs: int = 1000) -> list:
    """Midpoint-closure audit of the sharp body on two polytopal fixtures."""
    ab = scenario.abelian
    checks = []
    fixtures = {
        "singleton": np.array([[2.0, 0.0, -2.0]]),
        "segment": np.array([[2.0, 0.0, -2.0], [1.0, 0.0, -1.0]]),
    }
    for name, verts in fixtures.items():
        sharp = cv.sharp_construction(verts, ab, resolution=2e-2)
        rep = sharp.midpoint_convexity_report(n_pairs, rng_seed)
        checks.append(
            CheckResult.from_bool(
                f"midpoint-closure-{name}", rep["passed"], {"violations": rep["violations"]}
            )
        )
    # singleton sharp body equals the Weyl polytope
    sharp0 = cv.sharp_construction(fixtures["singleton"], ab, resolution=2e-2)
    body = sharp0.sampled_body()
    wp = cv.weyl_polytope(ab, fixtures["singleton"][0])
    eq, _, gap = cv.polytope_equal_by_support(body, wp, slack=1e-9)
    checks.append(CheckResult.from_bool("singleton-is-weyl-polytope", eq, {"support_gap": gap}))
    # sampled body vs membership region on a grid
    sharp1 = cv.sharp_construction(fixtures["segment"], ab, resolution=2e-2)
    body1 = sharp1.sampled_body()
    rng = np.random.default_rng(rng_seed)
    worst = 0.0
    for _ in range(300):
        x = sharp1.random_member(rng)
        worst = max(worst, cv.distance_to_hull(body1, x))
    checks.append(
        CheckResult.from_bool(
            "sampled-body-hausdorff", worst <= 2 * sharp1.resolution, {"max_distance": worst}
        )
    )
    return checks


# ---------------------------------------------------------------------------
# registry and runner

_SUITES = {
    "moment-identities": (moment_identity_checks, None),
    "flow-convergence": (flow_convergence_checks, None),
    "ness": (ness_checks, ("sl2r-p1", "two-orbit-p2", "gl2r-unique-closed")),
    "kempf-ness": (kempf_ness_checks, ("sl2r-p1", "two-orbit-p2", "gl2r-unique-closed")),
    "stratification": (stratification_checks, ("sl2r-p1", "two-orbit-p2")),
    "two-orbit-morse": (two_orbit_morse_analysis, ("two-orbit-p2",)),
    "abelian-polytope": (abelian_polytope_checks, ("torus-pn", "torus-p2", "torus-p4")),
    "kostant": (kostant_checks, ("gl3r-p2",)),
    "sharp-convexity": (sharp_convexity_checks, ("gl3r-p2", "torus-pn")),
    "abelian-from-nonabelian": (abelian_from_nonabelian_checks, ("sl2r-p1", "torus-pn")),
    "coisotropic": (coisotropic_checks, ("rpn-coisotropic",)),
    "unique-closed-orbit": (unique_closed_orbit_checks, ("gl2r-unique-closed", "two-orbit-p2")),
}


def available_suites(scenario: Scenario | None = None) -> list:
    names = []
    for name, (_, only) in _SUITES.items():
        if scenario is None or only is None or scenario.name in only:
            names.append(name)
    return names


def run_suite(scenario: Scenario, suite_name: str, rng_seed: int) -> RunReport:
    """Execute a named suite on a scenario and aggregate the verdicts."""
    if suite_name not in _SUITES:
        raise UnknownSuite(f"unknown suite {suite_name!r} (known: {', '.join(sorted(_SUITES))})")
    runner, only = _SUITES[suite_name]
    if only is not None and scenario.name not in only:
        raise UnknownSuite(f"suite {suite_name!r} is not available for scenario {scenario.name!r}")
    t0 = time.time()
    checks = runner(scenario, rng_seed)
    elapsed = time.time() - t0
    return RunReport(
        scenario=scenario.name,
        suite=suite_name,
        seed=rng_seed,
        checks=checks,
        timings={"total_seconds": elapsed},
    )
