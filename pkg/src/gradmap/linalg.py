"""Shared numerical helpers.

Conventions used everywhere in the package:

* ambient inner product on n x n complex matrices:
  ``<A, B> = Re tr(A B^H)``.  It is Ad(U(n))-invariant, restricts to an
  Ad(K)-invariant product on each p-part, makes multiplication by i an
  isometry between anti-Hermitian and Hermitian matrices, and those two
  spaces are orthogonal to each other.
* Cartan involution ``theta(X) = -X^H``.
* unit vectors in C^n represent projective points; the horizontal space at
  v is the complex orthogonal complement of v.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg


def mat_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Real inner product Re tr(a b^H) on complex matrices."""
    return float(np.real(np.sum(a * np.conj(b))))


def mat_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def theta(xi: np.ndarray) -> np.ndarray:
    """Cartan involution of the ambient gl(n, C)."""
    return -xi.conj().T


def bracket(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def span_coefficients(mat: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Coefficients of ``mat`` against an orthonormal matrix basis (stack)."""
    return np.real(np.einsum("aij,ij->a", np.conj(basis), mat))


def project_span(mat: np.ndarray, basis: np.ndarray):
    """Orthogonal projection onto the real span of an orthonormal basis stack.

    Returns (projection, residual_norm).
    """
    if len(basis) == 0:
        return np.zeros_like(mat), mat_norm(mat)
    coeff = span_coefficients(mat, basis)
    proj = np.einsum("a,aij->ij", coeff, basis)
    return proj, mat_norm(mat - proj)


def orthonormalize_matrices(mats, tol: float = 1e-12) -> np.ndarray:
    """Gram-Schmidt over the real span of a list of matrices.

    Near-dependent entries are dropped.  Returns a (d, n, n) stack.
    """
    out = []
    for m in mats:
        w = np.array(m, dtype=complex)
        for b in out:
            w = w - mat_inner(w, b) * b
        nrm = mat_norm(w)
        if nrm > tol:
            out.append(w / nrm)
    if not out:
        shape = np.shape(mats[0]) if len(mats) else (0, 0)
        return np.zeros((0,) + tuple(shape), dtype=complex)
    return np.array(out)


def unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def horizontal(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Component of w complex-orthogonal to the unit vector v."""
    return w - np.vdot(v, w) * v


def projective_distance(v: np.ndarray, w: np.ndarray) -> float:
    """Phase-aligned chordal distance between unit representatives.

    Agrees with the Fubini-Study geodesic distance to second order and is
    numerically stable for nearby points (no arccos cancellation).
    """
    ip = np.vdot(w, v)
    a = abs(ip)
    if a < 1e-300:
        return float(np.sqrt(2.0))
    phase = ip / a
    return float(np.linalg.norm(v - phase * w))


def real_tangent_frame(v: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal real frame of the horizontal space at v.

    Candidates e_j, i e_j are projected horizontally and Gram-Schmidt
    orthonormalized under Re<.,.>; returns a (2n-2, n) complex stack.
    """
    n = v.shape[0]
    frame = []
    for j in range(n):
        for cand in (np.eye(n, dtype=complex)[j], 1j * np.eye(n, dtype=complex)[j]):
            w = horizontal(v, cand)
            for b in frame:
                w = w - np.real(np.vdot(b, w)) * b
            nrm = np.linalg.norm(w)
            if nrm > 1e-8:
                frame.append(w / nrm)
        if len(frame) == 2 * n - 2:
            break
    return np.array(frame)


def subspace_principal_angles(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Principal angles between column spans of two real matrices."""
    if a.size == 0 or b.size == 0:
        return np.array([])
    return scipy.linalg.subspace_angles(a, b)


def spd_log_distance(p1: np.ndarray, p2: np.ndarray) -> float:
    """Affine-invariant distance ||log(p1^-1/2 p2 p1^-1/2)||_F on SPD/HPD."""
    w1, u1 = np.linalg.eigh(p1)
    inv_sqrt = (u1 * (1.0 / np.sqrt(w1))) @ u1.conj().T
    mid = inv_sqrt @ p2 @ inv_sqrt
    mid = 0.5 * (mid + mid.conj().T)
    w = np.linalg.eigvalsh(mid)
    return float(np.linalg.norm(np.log(w)))


def spd_power(p: np.ndarray, t: float) -> np.ndarray:
    w, u = np.linalg.eigh(p)
    return (u * (w**t)) @ u.conj().T


def second_derivative(g, h: float = 1e-4) -> float:
    """Richardson-refined central second difference of g at 0."""
    g0 = g(0.0)

    def d(step):
        return (g(step) - 2.0 * g0 + g(-step)) / step**2

    return float((4.0 * d(h / 2.0) - d(h)) / 3.0)


def central_derivative(g, h: float = 1e-5) -> float:
    return float((g(h) - g(-h)) / (2.0 * h))
