"""Compatible matrix groups and their Cartan data.

A compatible group is a closed subgroup G of GL(n, C) that is stable under
the Cartan involution g -> (g^H)^-1 and splits as G = K exp(p) with
K = G intersect U(n) and p = g intersect {Hermitian matrices}.  The module
realizes the standard families (GL(n,C), GL(n,R), SL(n,R), the positive
diagonal torus) plus user-supplied basis data, together with:

* the Cartan split of algebra elements,
* eigenspace decompositions of ad(beta) for beta in p,
* restricted roots of the diagonal Abelian subalgebra,
* the Weyl orbit / positive-chamber normal form for A-type data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .errors import InputOutsideAlgebra, UnsupportedKind
from .linalg import (
    bracket,
    mat_inner,
    mat_norm,
    orthonormalize_matrices,
    project_span,
    span_coefficients,
    theta,
)

KIND_FULL_COMPLEX = "full_complex"
KIND_REAL_GL = "real_general_linear"
KIND_REAL_SL = "real_special_linear"
KIND_TORUS = "positive_diagonal_torus"
KIND_CUSTOM = "custom"

# kinds whose diagonal Abelian subalgebra carries the permutation Weyl group
_PERMUTATION_KINDS = (KIND_FULL_COMPLEX, KIND_REAL_GL, KIND_REAL_SL)


@dataclass(frozen=True)
class CompatibleGroup:
    """Matrix realization of G = K exp(p) inside GL(n, C).

    All three basis stacks are orthonormal under <A,B> = Re tr(A B^H), and
    ``lie_algebra_basis`` is the concatenation k_basis + p_basis.
    """

    kind: str
    n: int
    lie_algebra_basis: np.ndarray
    k_basis: np.ndarray
    p_basis: np.ndarray
    k_sampler: object = field(default=None, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.lie_algebra_basis)

    @property
    def dim_k(self) -> int:
        return len(self.k_basis)

    @property
    def dim_p(self) -> int:
        return len(self.p_basis)

    def contains_algebra(self, xi: np.ndarray, tol: float = 1e-10) -> bool:
        _, resid = project_span(xi, self.lie_algebra_basis)
        return resid <= tol * max(1.0, mat_norm(xi))

    def project_p(self, xi: np.ndarray) -> np.ndarray:
        proj, _ = project_span(xi, self.p_basis)
        return proj

    def project_k(self, xi: np.ndarray) -> np.ndarray:
        proj, _ = project_span(xi, self.k_basis)
        return proj

    def random_k_element(self, rng: np.random.Generator, spread: float = 2.0) -> np.ndarray:
        """A K-element: product of exponentials of random k-basis combinations."""
        if self.k_sampler is not None:
            return self.k_sampler(rng)
        if self.dim_k == 0:
            return np.eye(self.n, dtype=complex)
        k = np.eye(self.n, dtype=complex)
        import scipy.linalg

        for _ in range(2):
            coeff = rng.normal(scale=spread / np.sqrt(max(self.dim_k, 1)), size=self.dim_k)
            xi = np.einsum("a,aij->ij", coeff, self.k_basis)
            k = k @ scipy.linalg.expm(xi)
        return k

    def random_p_element(self, rng: np.random.Generator, max_norm: float = 2.0) -> np.ndarray:
        coeff = rng.normal(size=self.dim_p)
        nrm = np.linalg.norm(coeff)
        if nrm > 0:
            coeff = coeff * (rng.uniform(0, max_norm) / nrm)
        return np.einsum("a,aij->ij", coeff, self.p_basis)

    def structure_residuals(self) -> dict:
        """Numerical audit of the compatibility axioms (used by tests)."""
        res = {"theta_k": 0.0, "theta_p": 0.0, "kk_in_k": 0.0, "kp_in_p": 0.0, "pp_in_k": 0.0}
        for xi in self.k_basis:
            res["theta_k"] = max(res["theta_k"], mat_norm(theta(xi) - xi))
        for xi in self.p_basis:
            res["theta_p"] = max(res["theta_p"], mat_norm(theta(xi) + xi))

        def worst(stack_a, stack_b, target):
            worst_r = 0.0
            for a in stack_a:
                for b in stack_b:
                    _, r = project_span(bracket(a, b), target)
                    worst_r = max(worst_r, r)
            return worst_r

        res["kk_in_k"] = worst(self.k_basis, self.k_basis, self.k_basis)
        res["kp_in_p"] = worst(self.k_basis, self.p_basis, self.p_basis)
        res["pp_in_k"] = worst(self.p_basis, self.p_basis, self.k_basis)
        return res

    def to_json_dict(self) -> dict:
        doc = {"kind": self.kind, "n": self.n}
        if self.kind == KIND_CUSTOM:
            doc["custom_basis"] = [_matrix_to_pairs(m) for m in self.lie_algebra_basis]
        return doc

    @staticmethod
    def from_json_dict(doc: dict) -> "CompatibleGroup":
        kind = doc["kind"]
        n = int(doc["n"])
        if kind == KIND_FULL_COMPLEX:
            return full_complex(n)
        if kind == KIND_REAL_GL:
            return real_general_linear(n)
        if kind == KIND_REAL_SL:
            return real_special_linear(n)
        if kind == KIND_TORUS:
            return positive_diagonal_torus(n)
        if kind == KIND_CUSTOM:
            basis = [_pairs_to_matrix(m, n) for m in doc["custom_basis"]]
            return custom_group(basis)
        raise UnsupportedKind(f"unknown group kind {kind!r}")


def _matrix_to_pairs(m: np.ndarray) -> list:
    return [[float(np.real(z)), float(np.imag(z))] for z in np.asarray(m).ravel()]


def _pairs_to_matrix(pairs, n: int) -> np.ndarray:
    flat = np.array([complex(re, im) for re, im in pairs])
    return flat.reshape(n, n)


def _sym_basis(n: int, traceless: bool) -> list:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[i, j] = m[j, i] = 1.0 / np.sqrt(2.0)
            out.append(m)
    diag = []
    if traceless:
        for i in range(n - 1):
            d = np.zeros(n)
            d[i], d[i + 1] = 1.0, -1.0
            diag.append(np.diag(d).astype(complex))
    else:
        for i in range(n):
            diag.append(np.diag(np.eye(n)[i]).astype(complex))
    return out + list(orthonormalize_matrices(diag)) if traceless else out + diag


def _so_basis(n: int) -> list:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[i, j], m[j, i] = 1.0 / np.sqrt(2.0), -1.0 / np.sqrt(2.0)
            out.append(m)
    return out


def full_complex(n: int) -> CompatibleGroup:
    """GL(n, C) itself; k = u(n) (anti-Hermitian), p = Hermitian matrices."""
    k = []
    for i in range(n):
        m = np.zeros((n, n), dtype=complex)
        m[i, i] = 1j
        k.append(m)
    for i in range(n):
        for j in range(i + 1, n):
            a = np.zeros((n, n), dtype=complex)
            a[i, j], a[j, i] = 1.0 / np.sqrt(2.0), -1.0 / np.sqrt(2.0)
            k.append(a)
            b = np.zeros((n, n), dtype=complex)
            b[i, j] = b[j, i] = 1j / np.sqrt(2.0)
            k.append(b)
    p = [(-1j) * m for m in k]
    return _assemble(KIND_FULL_COMPLEX, n, k, p)


def real_general_linear(n: int) -> CompatibleGroup:
    """GL(n, R); k = so(n), p = real symmetric matrices."""
    return _assemble(KIND_REAL_GL, n, _so_basis(n), _sym_basis(n, traceless=False))


def real_special_linear(n: int) -> CompatibleGroup:
    """SL(n, R); k = so(n), p = traceless real symmetric matrices."""
    return _assemble(KIND_REAL_SL, n, _so_basis(n), _sym_basis(n, traceless=True))


def positive_diagonal_torus(n: int) -> CompatibleGroup:
    """exp of the real diagonal matrices; K is trivial."""
    p = [np.diag(np.eye(n)[i]).astype(complex) for i in range(n)]
    return _assemble(KIND_TORUS, n, [], p)


def custom_group(basis, k_sampler=None, tol: float = 1e-10) -> CompatibleGroup:
    """Compatible group from a user-supplied real basis of its Lie algebra.

    The span must be theta-stable; the Cartan split is computed by
    projecting each basis element onto its +/- eigenparts.
    """
    basis = [np.asarray(b, dtype=complex) for b in basis]
    n = basis[0].shape[0]
    span = orthonormalize_matrices(basis)
    for b in span:
        _, resid = project_span(theta(b), span)
        if resid > tol:
            raise InputOutsideAlgebra(
                f"custom basis span is not theta-stable (residual {resid:.2e})"
            )
    k_parts = [(b + theta(b)) / 2.0 for b in span]
    p_parts = [(b - theta(b)) / 2.0 for b in span]
    k = orthonormalize_matrices(k_parts, tol=1e-9)
    p = orthonormalize_matrices(p_parts, tol=1e-9)
    if len(k) + len(p) != len(span):
        raise InputOutsideAlgebra("Cartan split does not exhaust the custom algebra")
    return _assemble(KIND_CUSTOM, n, list(k), list(p), k_sampler=k_sampler)


def _assemble(kind, n, k, p, k_sampler=None) -> CompatibleGroup:
    k = np.array(k, dtype=complex).reshape(len(k), n, n)
    p = np.array(p, dtype=complex).reshape(len(p), n, n)
    lie = np.concatenate([k, p], axis=0) if len(k) else p.copy()
    return CompatibleGroup(
        kind=kind, n=n, lie_algebra_basis=lie, k_basis=k, p_basis=p, k_sampler=k_sampler
    )


@dataclass(frozen=True)
class AbelianSubalgebra:
    """Commuting subalgebra a of p, with the diagonal chamber convention.

    For the supported kinds a consists of real diagonal matrices and the
    positive chamber is the set of weakly decreasing diagonals (trivial for
    the torus kind, whose Weyl group is trivial).
    """

    parent: CompatibleGroup
    a_basis: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.a_basis)

    @property
    def weyl_is_permutations(self) -> bool:
        return self.parent.kind in _PERMUTATION_KINDS

    def project(self, xi: np.ndarray) -> np.ndarray:
        proj, _ = project_span(xi, self.a_basis)
        return proj

    def to_vector(self, a_elem: np.ndarray) -> np.ndarray:
        """Diagonal-entry coordinates of an a-element (real n-vector)."""
        return np.real(np.diagonal(a_elem)).copy()

    def from_vector(self, vec: np.ndarray) -> np.ndarray:
        return np.diag(np.asarray(vec, dtype=float)).astype(complex)

    def element(self, coeff: np.ndarray) -> np.ndarray:
        return np.einsum("a,aij->ij", np.asarray(coeff, dtype=float), self.a_basis)

    def commutation_residual(self) -> float:
        worst = 0.0
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                worst = max(worst, mat_norm(bracket(self.a_basis[i], self.a_basis[j])))
        return worst


def diagonal_abelian(group: CompatibleGroup) -> AbelianSubalgebra:
    """The diagonal maximal Abelian subalgebra of p for the built-in kinds."""
    n = group.n
    if group.kind in (KIND_FULL_COMPLEX, KIND_REAL_GL, KIND_TORUS):
        basis = [np.diag(np.eye(n)[i]).astype(complex) for i in range(n)]
    elif group.kind == KIND_REAL_SL:
        raw = []
        for i in range(n - 1):
            d = np.zeros(n)
            d[i], d[i + 1] = 1.0, -1.0
            raw.append(np.diag(d).astype(complex))
        basis = list(orthonormalize_matrices(raw))
    else:
        raise UnsupportedKind("no built-in Abelian subalgebra for custom groups")
    return AbelianSubalgebra(parent=group, a_basis=np.array(basis))


def abelian_from_basis(group: CompatibleGroup, basis) -> AbelianSubalgebra:
    mats = orthonormalize_matrices([np.asarray(b, dtype=complex) for b in basis])
    ab = AbelianSubalgebra(parent=group, a_basis=mats)
    if ab.commutation_residual() > 1e-10:
        raise InputOutsideAlgebra("supplied Abelian basis does not commute")
    return ab


def cartan_project(group: CompatibleGroup, xi: np.ndarray, tol: float = 1e-9):
    """Split xi in g into its k-part and p-part.

    Raises InputOutsideAlgebra when xi is not in the algebra span.
    """
    xi = np.asarray(xi, dtype=complex)
    _, resid = project_span(xi, group.lie_algebra_basis)
    if resid > tol * max(1.0, mat_norm(xi)):
        raise InputOutsideAlgebra(f"projection residual {resid:.3e} exceeds tolerance")
    k_part, _ = project_span(xi, group.k_basis)
    p_part, _ = project_span(xi, group.p_basis)
    return k_part, p_part


@dataclass(frozen=True)
class AdEigenDecomposition:
    """Eigenvalues and eigenspaces of ad(beta) acting on g.

    Eigenspace bases are stacks of n x n matrices, orthonormal in the
    ambient product; eigenvalues are sorted increasing and distinct after
    clustering at 1e-9.
    """

    beta: np.ndarray
    eigenvalues: np.ndarray
    eigenspaces: tuple

    def dimension(self) -> int:
        return sum(len(s) for s in self.eigenspaces)

    def _collect(self, mask) -> np.ndarray:
        picked = [s for lam, s in zip(self.eigenvalues, self.eigenspaces) if mask(lam)]
        if not picked:
            n = self.beta.shape[0]
            return np.zeros((0, n, n), dtype=complex)
        return np.concatenate(picked, axis=0)

    def zero_space(self, tol: float = 1e-9) -> np.ndarray:
        """g^beta: the centralizer of beta in g."""
        return self._collect(lambda lam: abs(lam) <= tol)

    def positive_space(self, tol: float = 1e-9) -> np.ndarray:
        """r^{beta+}: the sum of the positive ad(beta)-eigenspaces."""
        return self._collect(lambda lam: lam > tol)

    def nonnegative_space(self, tol: float = 1e-9) -> np.ndarray:
        """g^{beta+} = g^beta + r^{beta+}, a parabolic subalgebra."""
        return self._collect(lambda lam: lam >= -tol)


def ad_matrix(group: CompatibleGroup, beta: np.ndarray) -> np.ndarray:
    """Matrix of ad(beta) in the orthonormal algebra basis coordinates."""
    cols = [span_coefficients(bracket(beta, b), group.lie_algebra_basis)
            for b in group.lie_algebra_basis]
    return np.array(cols).T


def ad_eigendecomposition(
    group: CompatibleGroup, beta: np.ndarray, cluster_tol: float = 1e-9
) -> AdEigenDecomposition:
    """Diagonalize ad(beta) on g for beta in p.

    ad(beta) is self-adjoint for the ambient product, so the decomposition
    comes from a symmetric eigenproblem; eigenvalues within ``cluster_tol``
    are merged (ad(beta) is exactly diagonalizable on these instances).
    """
    beta = np.asarray(beta, dtype=complex)
    _, resid = project_span(beta, group.p_basis)
    if resid > 1e-9 * max(1.0, mat_norm(beta)):
        raise InputOutsideAlgebra("beta is not in p")
    mat = ad_matrix(group, beta)
    mat = 0.5 * (mat + mat.T)
    evals, evecs = np.linalg.eigh(mat)
    groups = []
    start = 0
    for i in range(1, len(evals) + 1):
        if i == len(evals) or evals[i] - evals[start] > cluster_tol:
            groups.append((float(np.mean(evals[start:i])), range(start, i)))
            start = i
    values, spaces = [], []
    for lam, idx in groups:
        vecs = [np.einsum("a,aij->ij", evecs[:, i], group.lie_algebra_basis) for i in idx]
        values.append(lam)
        spaces.append(np.array(vecs))
    return AdEigenDecomposition(
        beta=beta, eigenvalues=np.array(values), eigenspaces=tuple(spaces)
    )


@dataclass(frozen=True)
class RestrictedRoot:
    """Root functional on a, stored as the vector u with
    lambda(diag(h)) = <u, h>, together with its multiplicity."""

    functional: np.ndarray
    multiplicity: int

    def evaluate(self, a_elem: np.ndarray) -> float:
        return float(np.dot(self.functional, np.real(np.diagonal(a_elem))))


def restricted_roots(ab: AbelianSubalgebra, tol: float = 1e-8) -> list:
    """Nonzero weights of the simultaneous ad-action of a on g.

    Computed by simultaneous diagonalization (a random combination of the
    commuting self-adjoint operators ad(a_k), then per-operator weights).
    """
    group = ab.parent
    if group.kind == KIND_CUSTOM:
        raise UnsupportedKind("restricted roots require a certified maximal Abelian algebra")
    if ab.dim == 0 or group.dim == 0:
        return []
    mats = [ad_matrix(group, a) for a in ab.a_basis]
    rng = np.random.default_rng(20240)
    combo = sum(c * m for c, m in zip(rng.normal(size=len(mats)), mats))
    combo = 0.5 * (combo + combo.T)
    _, vecs = np.linalg.eigh(combo)
    weights = {}
    for i in range(vecs.shape[1]):
        v = vecs[:, i]
        lam = np.array([float(v @ (m @ v)) for m in mats])
        # express the functional in diagonal-entry coordinates
        u = sum(l * np.real(np.diagonal(a)) for l, a in zip(lam, ab.a_basis))
        key = tuple(np.round(u / max(tol, 1e-12)).astype(int))
        if np.linalg.norm(u) <= tol:
            continue
        weights.setdefault(key, []).append(u)
    out = []
    for vals in weights.values():
        out.append(RestrictedRoot(functional=np.mean(vals, axis=0), multiplicity=len(vals)))
    out.sort(key=lambda r: tuple(-r.functional))
    return out


def weyl_orbit(ab: AbelianSubalgebra, lam: np.ndarray) -> np.ndarray:
    """W-orbit of an a-element, as a deduplicated stack of diagonal vectors.

    lam may be an a-element matrix or a diagonal vector.  For permutation
    (A-type) Weyl groups the orbit is the set of coordinate permutations;
    the torus kind has trivial Weyl group.
    """
    vec = _as_diag_vector(ab, lam)
    if ab.parent.kind == KIND_TORUS:
        return vec[None, :].copy()
    if not ab.weyl_is_permutations:
        raise UnsupportedKind("Weyl orbit only certified for A-type diagonal data")
    seen = {}
    for perm in permutations(range(len(vec))):
        p = vec[list(perm)]
        key = tuple(np.round(p, 12))
        seen.setdefault(key, p)
    return np.array(list(seen.values()))


def chamber_representative(ab: AbelianSubalgebra, beta) -> np.ndarray:
    """The weakly-decreasing normal form of beta's Weyl orbit (as a matrix).

    For the torus kind (trivial Weyl group) beta is returned unchanged.
    """
    vec = _as_diag_vector(ab, beta)
    if ab.parent.kind == KIND_TORUS:
        return ab.from_vector(vec)
    return ab.from_vector(np.sort(vec)[::-1])


def chamber_vector(vec: np.ndarray) -> np.ndarray:
    """Sorted-descending coordinates: the A-type chamber normal form."""
    return np.sort(np.asarray(vec, dtype=float))[::-1]


def _as_diag_vector(ab: AbelianSubalgebra, lam) -> np.ndarray:
    lam = np.asarray(lam)
    if lam.ndim == 2:
        off = lam - np.diag(np.diagonal(lam))
        if mat_norm(off) > 1e-10 * max(1.0, mat_norm(lam)):
            raise InputOutsideAlgebra("a-element is not diagonal")
        return np.real(np.diagonal(lam)).copy()
    return np.asarray(lam, dtype=float).copy()
