"""Compact convex bodies, Weyl polytopes, majorization and the sharp body.

Polytopes are vertex-listed; degenerate (lower-affine-dimensional) bodies
keep an explicit affine-hull basis and the hull is computed inside it.
All bodies attached to Abelian data live in diagonal-entry coordinates of
R^n, where the A-type Weyl group acts by coordinate permutations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np
import scipy.optimize
import scipy.spatial

from .errors import ChamberViolation, SumMismatch, UnsupportedKind, ZeroDirection
from .lie_core import AbelianSubalgebra, weyl_orbit


@dataclass(frozen=True)
class Polytope:
    """Compact convex body with an irredundant vertex list.

    ``affine_dim`` may be smaller than ``dim``; then ``affine_basis`` spans
    the directions of the affine hull through ``affine_origin`` and facet
    normals are stored lifted to the ambient space.
    """

    dim: int
    vertices: np.ndarray
    affine_dim: int
    affine_origin: np.ndarray
    affine_basis: np.ndarray
    facet_normals: np.ndarray = field(default=None)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "affine_dim": self.affine_dim,
            "vertices": [list(map(float, v)) for v in self.vertices],
        }


def convex_hull(points, tol: float = 1e-9) -> Polytope:
    """Irredundant vertex hull of a finite point set (desk scale, d <= 6).

    Degenerate configurations are reduced to their affine hull first; the
    report carries the affine basis.  Every input point is inside the hull
    up to LP slack (tested property).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    d = pts.shape[1]
    origin = pts.mean(axis=0)
    centered = pts - origin
    if len(pts) == 1:
        return Polytope(d, pts.copy(), 0, origin, np.zeros((0, d)), np.zeros((0, d)))
    u, s, vt = np.linalg.svd(centered, full_matrices=False)
    scale = max(s[0], 1.0) if s.size else 1.0
    adim = int(np.sum(s > tol * scale))
    if adim == 0:
        return Polytope(d, pts[:1].copy(), 0, origin, np.zeros((0, d)), np.zeros((0, d)))
    basis = vt[:adim]
    coords = centered @ basis.T
    if adim == 1:
        lo, hi = np.argmin(coords[:, 0]), np.argmax(coords[:, 0])
        verts = pts[[lo, hi]]
        normals = np.vstack([basis[0], -basis[0]])
        return Polytope(d, verts, 1, origin, basis, normals)
    hull = scipy.spatial.ConvexHull(coords)
    verts = pts[hull.vertices]
    normals = hull.equations[:, :adim] @ basis
    norms = np.linalg.norm(normals, axis=1, keepdims=True)
    normals = normals / np.where(norms > 0, norms, 1.0)
    return Polytope(d, verts, adim, origin, basis, normals)


def support_function(body: Polytope, u: np.ndarray) -> float:
    """h_E(u) = max over vertices of <x, u>."""
    return float(np.max(body.vertices @ np.asarray(u, dtype=float)))


def exposed_face(body: Polytope, u: np.ndarray, tol: float = 1e-10) -> Polytope:
    """The face of E where <., u> attains its maximum."""
    u = np.asarray(u, dtype=float)
    if np.linalg.norm(u) == 0:
        raise ZeroDirection("exposed face needs a nonzero direction")
    vals = body.vertices @ u
    h = vals.max()
    achieving = body.vertices[vals >= h - tol]
    return convex_hull(achieving)


def _test_directions(c1: Polytope, c2: Polytope) -> np.ndarray:
    dirs = []
    for body in (c1, c2):
        if body.facet_normals is not None and len(body.facet_normals):
            dirs.append(body.facet_normals)
        center = body.vertices.mean(axis=0)
        vdirs = body.vertices - center
        keep = np.linalg.norm(vdirs, axis=1) > 1e-12
        if keep.any():
            v = vdirs[keep]
            dirs.append(v / np.linalg.norm(v, axis=1, keepdims=True))
        # affine-hull offsets are caught by the complement directions
        comp = np.eye(body.dim) - body.affine_basis.T @ body.affine_basis
        w, vecs = np.linalg.eigh(comp)
        perp = vecs[:, w > 0.5].T
        if len(perp):
            dirs.append(perp)
            dirs.append(-perp)
    return np.vstack(dirs) if dirs else np.zeros((0, c1.dim))


def polytope_equal_by_support(c1: Polytope, c2: Polytope, slack: float = 1e-10):
    """Decide C1 = C2 by comparing support functions on facet normals and
    vertex directions of both bodies (exact for polytopes).

    Returns (equal, witness_direction_or_None, max_gap).
    """
    dirs = _test_directions(c1, c2)
    max_gap, witness = 0.0, None
    for u in dirs:
        gap = abs(support_function(c1, u) - support_function(c2, u))
        if gap > max_gap:
            max_gap, witness = gap, u
    if max_gap <= slack:
        return True, None, float(max_gap)
    return False, witness, float(max_gap)


def hull_membership(body: Polytope, x: np.ndarray, slack: float = 1e-9) -> bool:
    """LP test: is x a convex combination of the vertices (within slack)?"""
    verts = body.vertices
    m = len(verts)
    x = np.asarray(x, dtype=float)
    if m == 1:
        return bool(np.linalg.norm(x - verts[0]) <= max(slack, 1e-12) * 10)
    a_eq = np.vstack([verts.T, np.ones(m)])
    b_eq = np.concatenate([x, [1.0]])
    res = scipy.optimize.linprog(
        c=np.zeros(m), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * m, method="highs"
    )
    if res.status == 0:
        return True
    # retry with slack on the equality (robustness at facet boundaries)
    if slack > 0:
        res = scipy.optimize.linprog(
            c=np.zeros(m),
            A_ub=np.vstack([np.vstack([verts.T, np.ones(m)]), -np.vstack([verts.T, np.ones(m)])]),
            b_ub=np.concatenate([b_eq + slack, -(b_eq - slack)]),
            bounds=[(0, None)] * m,
            method="highs",
        )
        return res.status == 0
    return False


def distance_to_hull(body: Polytope, x: np.ndarray, iters: int = 400) -> float:
    """Euclidean distance from x to the body (projected gradient on weights)."""
    verts = body.vertices
    m = len(verts)
    x = np.asarray(x, dtype=float)
    if m == 1:
        return float(np.linalg.norm(x - verts[0]))
    lam = np.full(m, 1.0 / m)
    gram = verts @ verts.T
    lip = np.linalg.eigvalsh(gram)[-1] + 1e-12
    vx = verts @ x
    for _ in range(iters):
        grad = gram @ lam - vx
        lam = _project_simplex(lam - grad / lip)
    return float(np.linalg.norm(verts.T @ lam - x))


def _project_simplex(c: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    a = np.sort(c)[::-1]
    cumul = (np.cumsum(a) - 1.0) / np.arange(1, len(c) + 1)
    k = np.nonzero(a > cumul)[0][-1]
    return np.maximum(c - cumul[k], 0.0)


def hausdorff_distance(c1: Polytope, c2: Polytope) -> float:
    """Hausdorff distance between two vertex-listed bodies."""
    d12 = max(distance_to_hull(c2, v) for v in c1.vertices)
    d21 = max(distance_to_hull(c1, v) for v in c2.vertices)
    return float(max(d12, d21))


def weyl_polytope(ab: AbelianSubalgebra, lam) -> Polytope:
    """Conv(W . lam): the permutohedron of lam for A-type data."""
    orbit = weyl_orbit(ab, lam)
    return convex_hull(orbit)


def majorization_membership(x, lam, slack: float = 1e-9) -> bool:
    """Partial-sum dominance: x in Conv(W . lam) for A-type data.

    Requires the equal-sum face: sum(x) = sum(lam) to 1e-9.
    """
    x = np.asarray(x, dtype=float)
    lam = np.asarray(lam, dtype=float)
    if abs(x.sum() - lam.sum()) > 1e-9 * max(1.0, abs(lam.sum())) + 1e-9:
        raise SumMismatch(f"sum(x)={x.sum():.12g} != sum(lam)={lam.sum():.12g}")
    xs = np.sort(x)[::-1]
    ls = np.sort(lam)[::-1]
    return bool(np.all(np.cumsum(xs) <= np.cumsum(ls) + slack))


@dataclass
class SharpBody:
    """The union of all Weyl polytopes over a convex chamber set S.

    Membership is decided by an exact feasibility LP over the vertex
    weights of S (equal-sum slice + prefix-sum dominance are linear in
    lambda); the sampled hull and the grid resolution feed the reports.
    """

    chamber_vertices: np.ndarray
    ab: AbelianSubalgebra
    resolution: float

    def contains(self, x, slack: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        verts = self.chamber_vertices
        m, n = verts.shape
        xs = np.sort(x)[::-1]
        prefixes = np.cumsum(verts, axis=1)  # row-wise prefix sums of sorted chamber pts
        a_ub, b_ub = [], []
        for k in range(n - 1):
            a_ub.append(-prefixes[:, k])
            b_ub.append(-(np.cumsum(xs)[k] - slack))
        a_eq = np.vstack([prefixes[:, -1], np.ones(m)])
        b_eq = np.array([x.sum(), 1.0])
        res = scipy.optimize.linprog(
            c=np.zeros(m),
            A_ub=np.array(a_ub),
            b_ub=np.array(b_ub),
            A_eq=a_eq,
            b_eq=b_eq,
            bounds=[(0, None)] * m,
            method="highs",
        )
        return res.status == 0

    def sampled_body(self) -> Polytope:
        """Hull of the Weyl orbits of the chamber vertices."""
        pts = [weyl_orbit(self.ab, v) for v in self.chamber_vertices]
        return convex_hull(np.vstack(pts))

    def grid(self) -> np.ndarray:
        """A resolution-grid of S (convex-combination lattice of vertices)."""
        verts = self.chamber_vertices
        m = len(verts)
        if m == 1:
            return verts.copy()
        steps = max(1, int(np.ceil(1.0 / self.resolution)))
        if m == 2:
            ts = np.linspace(0.0, 1.0, steps + 1)
            return np.array([(1 - t) * verts[0] + t * verts[1] for t in ts])
        rng = np.random.default_rng(7)
        ws = rng.dirichlet(np.ones(m), size=steps * 50)
        return np.vstack([verts, ws @ verts])

    def random_member(self, rng: np.random.Generator) -> np.ndarray:
        """A random point of the body: random lambda in S, random point of
        its permutohedron (convex mix of orbit permutations)."""
        m = len(self.chamber_vertices)
        lam = rng.dirichlet(np.ones(m)) @ self.chamber_vertices
        orbit = weyl_orbit(self.ab, lam)
        w = rng.dirichlet(np.ones(len(orbit)))
        return w @ orbit

    def midpoint_convexity_report(self, n_pairs: int, rng_seed: int) -> dict:
        rng = np.random.default_rng(rng_seed)
        violations = 0
        for _ in range(n_pairs):
            a = self.random_member(rng)
            b = self.random_member(rng)
            if not self.contains(0.5 * (a + b)):
                violations += 1
        return {"pairs": n_pairs, "violations": violations, "passed": violations == 0}


def sharp_construction(
    s_vertices, ab: AbelianSubalgebra, resolution: float = 1e-2
) -> SharpBody:
    """Build the sharp body of a polytopal chamber subset S.

    S is given by its vertices in diagonal coordinates; every vertex must
    be weakly decreasing (chamber-ordered).
    """
    verts = np.atleast_2d(np.asarray(s_vertices, dtype=float))
    for v in verts:
        if np.any(np.diff(v) > 1e-10):
            raise ChamberViolation(f"vertex {v} is not weakly decreasing")
    return SharpBody(chamber_vertices=verts, ab=ab, resolution=resolution)


def haar_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-uniform SO(n) matrix (QR of a Gaussian with sign correction)."""
    z = rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diagonal(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r))).conj()


def kostant_projection_probe(
    group, x: np.ndarray, n_samples: int = 10000, rng_seed: int = 0
) -> dict:
    """Sample the K-orbit projection pi_a(Ad(k) x) against the majorization
    criterion, and drive each Weyl vertex by optimization over K.

    ``group`` must have K of orthogonal type acting by conjugation (the
    real general/special linear kinds) with the diagonal Abelian algebra.
    """
    from .lie_core import KIND_REAL_GL, KIND_REAL_SL

    if group.kind not in (KIND_REAL_GL, KIND_REAL_SL):
        raise UnsupportedKind("Kostant probe needs an orthogonal K acting on symmetric matrices")
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    lam = np.sort(np.linalg.eigvalsh(x))[::-1]
    rng = np.random.default_rng(rng_seed)
    failures = 0
    best_by_vertex = {}
    seen = {}
    for perm in permutations(range(n)):
        key = tuple(lam[list(perm)].round(12))
        seen.setdefault(key, lam[list(perm)])
    vertices = list(seen.values())
    for _ in range(n_samples):
        k = haar_orthogonal(rng, n)
        d = np.diagonal(k @ x @ k.T).copy()
        if not majorization_membership(d, lam):
            failures += 1
        for i, w in enumerate(vertices):
            gap = np.linalg.norm(d - w)
            if i not in best_by_vertex or gap < best_by_vertex[i][0]:
                best_by_vertex[i] = (gap, k)

    # refine each vertex approach by optimization over K
    so_gens = []
    for i in range(n):
        for j in range(i + 1, n):
            g = np.zeros((n, n))
            g[i, j], g[j, i] = 1.0, -1.0
            so_gens.append(g)
    so_gens = np.array(so_gens)

    import scipy.linalg

    def refine(w, k0):
        def obj(thetas):
            k = k0 @ scipy.linalg.expm(np.einsum("a,aij->ij", thetas, so_gens))
            return np.linalg.norm(np.diagonal(k @ x @ k.T) - w)

        best = obj(np.zeros(len(so_gens)))
        res = scipy.optimize.minimize(obj, np.zeros(len(so_gens)), method="Nelder-Mead",
                                      options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000})
        return min(best, float(res.fun))

    vertex_gaps = [refine(w, best_by_vertex[i][1]) for i, w in enumerate(vertices)]
    return {
        "n_samples": n_samples,
        "majorization_failures": failures,
        "n_vertices": len(vertices),
        "worst_vertex_gap": float(max(vertex_gaps)),
        "vertex_gaps": [float(g) for g in vertex_gaps],
        "passed": failures == 0 and max(vertex_gaps) < 1e-3,
    }


def fixed_point_polytope(ab: AbelianSubalgebra, report: dict | None = None) -> Polytope:
    """Conv(mu_a(Z^A)) for the diagonal A-action on P(C^n).

    The A-fixed set is the union of projective coordinate subspaces grouped
    by coinciding weights; mu_a is constant on each, so one representative
    per group suffices.  When weights coincide the report notes the
    non-isolated fixed set.
    """
    from .projective import ProjectivePoint, gradient_map_abelian

    n = ab.parent.n
    # weight of coordinate j: the diagonal entries of the a-basis at (j, j)
    weights = np.array([[float(np.real(a[j, j])) for a in ab.a_basis] for j in range(n)])
    groups = {}
    for j in range(n):
        groups.setdefault(tuple(weights[j].round(12)), []).append(j)
    if report is not None and any(len(js) > 1 for js in groups.values()):
        report["non_isolated_fixed_points"] = {
            str(k): js for k, js in groups.items() if len(js) > 1
        }
    images = []
    for js in groups.values():
        e = np.zeros(n, dtype=complex)
        e[js[0]] = 1.0
        mu = gradient_map_abelian(ab, ProjectivePoint(e))
        images.append(ab.to_vector(mu))
    return convex_hull(np.array(images))
