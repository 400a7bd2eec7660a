"""Fubini-Study geometry of P(C^n) and the gradient-map calculus.

Conventions (fixed once, verified jointly by the identity tests):

* points are unit representatives v, modulo global phase;
* tangent vectors at [v] are complex-orthogonal to v; J is multiplication
  by i;
* Riemannian metric  fs(a, b) = Re(a^H b)  on horizontal vectors;
* symplectic form    omega(a, b) = Im(b^H a);
* momentum map       mu([v]) = (i/2) v v^H  in u(n), paired by Re tr(A B^H);
* G-gradient map     mu_p([v]) = orthogonal projection of (1/2) v v^H onto p.

With these choices  d mu^xi = omega(xi_X, .),  grad mu_p^beta = beta_X  and
fs(a, b) = omega(J a, b)  all hold exactly; the overall sign of omega (the
usual metric-vs-form gauge) is the one compatible with mu as above.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BasePointMismatch, NotCritical
from .lie_core import AbelianSubalgebra, CompatibleGroup
from .linalg import (
    horizontal,
    mat_inner,
    mat_norm,
    real_tangent_frame,
    second_derivative,
    subspace_principal_angles,
    unit,
)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P(C^n) held as a unit representative."""

    rep: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.rep, dtype=complex).reshape(-1)
        nrm = np.linalg.norm(v)
        if nrm == 0:
            raise ValueError("zero vector does not represent a projective point")
        object.__setattr__(self, "rep", v / nrm)

    @property
    def n(self) -> int:
        return self.rep.shape[0]

    def same_point(self, other: "ProjectivePoint", tol: float = 1e-9) -> bool:
        return abs(abs(np.vdot(self.rep, other.rep)) - 1.0) <= tol

    def distance(self, other: "ProjectivePoint") -> float:
        from .linalg import projective_distance

        return projective_distance(self.rep, other.rep)

    def act(self, g: np.ndarray) -> "ProjectivePoint":
        return ProjectivePoint(g @ self.rep)


@dataclass(frozen=True)
class TangentVector:
    """Horizontal tangent vector at a projective point."""

    base: ProjectivePoint
    vec: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.vec, dtype=complex).reshape(-1)
        resid = abs(np.vdot(self.base.rep, w))
        if resid > 1e-10 * max(1.0, np.linalg.norm(w)):
            raise BasePointMismatch(f"vector not horizontal (residual {resid:.2e})")
        object.__setattr__(self, "vec", w)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vec))

    def J(self) -> "TangentVector":
        return TangentVector(self.base, 1j * self.vec)


@dataclass(frozen=True)
class GradientValue:
    """A value of the gradient map: an element of p."""

    value: np.ndarray

    @property
    def norm(self) -> float:
        return mat_norm(self.value)

    def spectrum(self) -> np.ndarray:
        """Sorted-descending eigenvalues (the K-conjugation invariant)."""
        return np.sort(np.linalg.eigvalsh(self.value))[::-1]


def _check_same_base(v1: TangentVector, v2: TangentVector):
    if np.linalg.norm(v1.base.rep - v2.base.rep) > 1e-9:
        raise BasePointMismatch("tangent vectors live at different representatives")


def fs_inner(v1: TangentVector, v2: TangentVector) -> float:
    """Fubini-Study metric Re<a, b> on horizontal vectors."""
    _check_same_base(v1, v2)
    return float(np.real(np.vdot(v1.vec, v2.vec)))


def omega(v1: TangentVector, v2: TangentVector) -> float:
    """Kaehler form paired so that d mu^xi = omega(xi_X, .)."""
    _check_same_base(v1, v2)
    return float(np.imag(np.vdot(v2.vec, v1.vec)))


def fundamental_field(xi: np.ndarray, x: ProjectivePoint) -> TangentVector:
    """Infinitesimal action vector of xi at x (horizontal part of xi v)."""
    v = x.rep
    w = xi @ v
    return TangentVector(x, horizontal(v, w))


def moment_map(x: ProjectivePoint) -> np.ndarray:
    """The u(n)-valued momentum map (i/2) v v^H."""
    v = x.rep
    return 0.5j * np.outer(v, v.conj())


def moment_pairing(x: ProjectivePoint, xi: np.ndarray) -> float:
    """mu^xi(x) = <mu(x), xi> in the ambient product."""
    return mat_inner(moment_map(x), xi)


def gradient_map(group: CompatibleGroup, x: ProjectivePoint) -> GradientValue:
    """mu_p(x): projection of (1/2) v v^H onto p.

    Satisfies <mu_p(x), beta> = (1/2) v^H beta v for every beta in p, and
    grad mu_p^beta = beta_X in the Fubini-Study metric.
    """
    v = x.rep
    herm = 0.5 * np.outer(v, v.conj())
    return GradientValue(group.project_p(herm))


def mu_p_component(group: CompatibleGroup, x: ProjectivePoint, beta: np.ndarray) -> float:
    """mu_p^beta(x) = <mu_p(x), beta> = (1/2) v^H beta v for beta in p."""
    v = x.rep
    return float(np.real(np.vdot(v, beta @ v))) / 2.0


def gradient_map_abelian(ab: AbelianSubalgebra, x: ProjectivePoint) -> np.ndarray:
    """mu_a(x): orthogonal projection of mu_p(x) onto a (an a-element)."""
    return ab.project(gradient_map(ab.parent, x).value)


def norm_square_f(group: CompatibleGroup, x: ProjectivePoint) -> float:
    """f(x) = (1/2) |mu_p(x)|^2."""
    mu = gradient_map(group, x)
    return 0.5 * mu.norm**2


def grad_f(group: CompatibleGroup, x: ProjectivePoint) -> TangentVector:
    """grad f(x) = beta_X(x) with beta = mu_p(x)."""
    return fundamental_field(gradient_map(group, x).value, x)


def tangent_frame(x: ProjectivePoint) -> np.ndarray:
    """Deterministic orthonormal real frame of T_x P(C^n); shape (2n-2, n)."""
    return real_tangent_frame(x.rep)


def frame_vector(x: ProjectivePoint, frame: np.ndarray, coords: np.ndarray) -> TangentVector:
    return TangentVector(x, np.einsum("a,ai->i", np.asarray(coords, dtype=float), frame))


def curve(x: ProjectivePoint, w: np.ndarray, t: float) -> ProjectivePoint:
    """Renormalized straight curve through x with initial velocity w."""
    return ProjectivePoint(unit(x.rep + t * w))


def dmu_p(group: CompatibleGroup, x: ProjectivePoint, w: np.ndarray) -> np.ndarray:
    """Derivative of mu_p at x in the horizontal direction w (exact formula)."""
    v = x.rep
    herm = 0.5 * (np.outer(w, v.conj()) + np.outer(v, w.conj()))
    return group.project_p(herm)


def _fd_quadratic_form(values_fn, frame: np.ndarray, h: float = 1e-4) -> np.ndarray:
    """Symmetric matrix of second derivatives of a scalar map of curves.

    values_fn(w) must return the function t -> g(t) along the curve with
    velocity w; entries are Richardson-refined central differences plus
    polarization for the off-diagonal terms.
    """
    m = len(frame)

    def q(w):
        return second_derivative(values_fn(w), h=h)

    diag = [q(frame[i]) for i in range(m)]
    mat = np.zeros((m, m))
    for i in range(m):
        mat[i, i] = diag[i]
        for j in range(i + 1, m):
            qpm = q(frame[i] + frame[j])
            mat[i, j] = mat[j, i] = 0.5 * (qpm - diag[i] - diag[j])
    return 0.5 * (mat + mat.T)


def hessian_mu_beta(
    group: CompatibleGroup,
    beta: np.ndarray,
    x: ProjectivePoint,
    tol: float = 1e-6,
    h: float = 1e-4,
):
    """Hessian of mu_p^beta at a critical point, in the tangent frame.

    Returns (H, frame) with H symmetric; its eigenspaces realize the
    negative/zero/positive splitting of the tangent space.  Raises
    NotCritical when beta_X(x) is not numerically zero.
    """
    if fundamental_field(beta, x).norm >= tol:
        raise NotCritical(f"|beta_X(x)| = {fundamental_field(beta, x).norm:.2e} >= {tol:g}")
    frame = tangent_frame(x)

    def along(w):
        def g(t):
            return mu_p_component(group, curve(x, w, t), beta)

        return g

    return _fd_quadratic_form(along, frame, h=h), frame


def hessian_f(
    group: CompatibleGroup, x: ProjectivePoint, tol: float = 1e-6, h: float = 1e-4
):
    """Hessian of the norm-square f at a critical point, in the tangent frame."""
    if grad_f(group, x).norm >= tol:
        raise NotCritical(f"|grad f(x)| = {grad_f(group, x).norm:.2e} >= {tol:g}")
    frame = tangent_frame(x)

    def along(w):
        def g(t):
            return norm_square_f(group, curve(x, w, t))

        return g

    return _fd_quadratic_form(along, frame, h=h), frame


def hessian_signature(hess: np.ndarray, zero_tol: float = 1e-4) -> tuple:
    """(dim negative, dim zero, dim positive) of a symmetric matrix."""
    evals = np.linalg.eigvalsh(hess)
    neg = int(np.sum(evals < -zero_tol))
    pos = int(np.sum(evals > zero_tol))
    return (neg, len(evals) - neg - pos, pos)


def dmu_p_matrix(group: CompatibleGroup, x: ProjectivePoint, frame: np.ndarray) -> np.ndarray:
    """Matrix of d mu_p(x): rows are p-basis components, columns frame dirs.

    Uses the exact derivative d mu_p(x)[w] = pi_p( (w v^H + v w^H) / 2 ).
    """
    v = x.rep
    cols = []
    for w in frame:
        herm = 0.5 * (np.outer(w, v.conj()) + np.outer(v, w.conj()))
        dmu = group.project_p(herm)
        cols.append([mat_inner(dmu, p) for p in group.p_basis])
    return np.array(cols).T


def dmu_kernel_check(group: CompatibleGroup, x: ProjectivePoint, tol: float = 1e-8) -> dict:
    """Verify ker d mu_p(x) = (p . x)^perp in an orthonormal tangent frame.

    Returns a report with the two subspace dimensions and the largest
    principal angle between them.
    """
    frame = tangent_frame(x)
    m = len(frame)
    dmat = dmu_p_matrix(group, x, frame)
    # kernel of dmu in frame coordinates
    _, svals, vt = np.linalg.svd(dmat) if dmat.size else (None, np.array([]), np.eye(m))
    rank = int(np.sum(svals > 1e-10)) if svals.size else 0
    kernel = vt[rank:].T if dmat.size else np.eye(m)
    # orbit directions p . x in frame coordinates
    orbit_cols = []
    for p in group.p_basis:
        w = fundamental_field(p, x).vec
        orbit_cols.append([float(np.real(np.vdot(fr, w))) for fr in frame])
    orbit = np.array(orbit_cols).T if orbit_cols else np.zeros((m, 0))
    orank = np.linalg.matrix_rank(orbit, tol=1e-10) if orbit.size else 0
    if orbit.size and orank > 0:
        q, _ = np.linalg.qr(orbit)
        q = q[:, :orank]
        # orthogonal complement of the orbit inside the frame
        full = np.eye(m) - q @ q.T
        w, vecs = np.linalg.eigh(full)
        comp = vecs[:, w > 0.5]
    else:
        comp = np.eye(m)
    kdim, cdim = kernel.shape[1], comp.shape[1]
    if kdim == 0 and cdim == 0:
        angle = 0.0
    elif kdim != cdim:
        angle = float(np.pi / 2)
    else:
        angles = subspace_principal_angles(kernel, comp)
        angle = float(angles.max()) if angles.size else 0.0
    return {
        "kernel_dim": kdim,
        "orbit_dim": int(orank),
        "complement_dim": cdim,
        "max_principal_angle": angle,
        "passed": kdim == cdim and angle < tol,
    }
