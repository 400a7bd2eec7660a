"""Named experiment scenarios: a group, an Abelian subalgebra, a projective
space and optional submanifold data, bundled for the suites and the CLI.

Built-ins:

* ``sl2r-p1``            SL(2,R) on P(C^2); nonempty zero fiber.
* ``torus-pn``           positive diagonal torus on P(C^3) (variants
                         torus-p2 / torus-p4 for the other sizes).
* ``two-orbit-p2``       the symmetric-square image of SL(2,C) acting on
                         P(C^3): closed Veronese conic + open complement.
* ``rpn-coisotropic``    X = RP^2 inside CP^2 with the diagonal torus.
* ``gl2r-unique-closed`` GL(2,R) on P(C^2); unique closed orbit = real
                         points.
* ``gl3r-p2``            GL(3,R) on P(C^3) (Kostant / sharp fixtures).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownScenario
from .lie_core import (
    AbelianSubalgebra,
    CompatibleGroup,
    abelian_from_basis,
    custom_group,
    diagonal_abelian,
    positive_diagonal_torus,
    real_general_linear,
    real_special_linear,
)
from .linalg import real_tangent_frame, unit
from .projective import ProjectivePoint


@dataclass(frozen=True)
class SubmanifoldConstraint:
    """A G- or A-stable submanifold given by a residual predicate, a
    sampler, and (optionally) a tangent projector in frame coordinates."""

    name: str
    predicate: object
    sampler: object
    tangent_projector: object = None


@dataclass(frozen=True)
class Scenario:
    name: str
    group: CompatibleGroup
    abelian: AbelianSubalgebra
    n: int
    constraint: SubmanifoldConstraint | None = None
    closed_orbit: SubmanifoldConstraint | None = None
    expected: dict = field(default_factory=dict)
    description: str = ""
    extra: bool = False

    def sample_point(self, rng: np.random.Generator) -> ProjectivePoint:
        if self.constraint is not None:
            return self.constraint.sampler(rng)
        v = rng.normal(size=self.n) + 1j * rng.normal(size=self.n)
        return ProjectivePoint(v)


def real_points_constraint(n: int) -> SubmanifoldConstraint:
    """RP^{n-1} inside P(C^n): representatives real up to a global phase."""

    def predicate(x: ProjectivePoint) -> float:
        return float(1.0 - abs(np.dot(x.rep, x.rep)))

    def sampler(rng: np.random.Generator) -> ProjectivePoint:
        return ProjectivePoint(rng.normal(size=n).astype(complex))

    def tangent_projector(x: ProjectivePoint) -> np.ndarray:
        # align the representative to a real vector, then project the frame
        # onto the real horizontal directions
        ip = np.dot(x.rep, x.rep)
        phase = np.sqrt(ip / abs(ip))
        u = np.real(x.rep / phase)
        u = u / np.linalg.norm(u)
        frame = real_tangent_frame(x.rep)
        basis = []
        for j in range(n):
            w = np.eye(n)[j] - np.dot(u, np.eye(n)[j]) * u
            for b in basis:
                w = w - np.dot(b, w) * b
            if np.linalg.norm(w) > 1e-8:
                basis.append(w / np.linalg.norm(w))
        cols = np.array(
            [[float(np.real(np.vdot(f, phase * b))) for b in basis] for f in frame]
        )
        return cols @ cols.T

    return SubmanifoldConstraint(
        name="real-points",
        predicate=predicate,
        sampler=sampler,
        tangent_projector=tangent_projector,
    )


def _sym2_of_vector(a: np.ndarray) -> np.ndarray:
    """Coordinates of a*a in the orthonormal basis {e1^2, sqrt2 e1e2, e2^2}."""
    return np.array([a[0] ** 2, np.sqrt(2.0) * a[0] * a[1], a[1] ** 2])


def sym2_group_element(g: np.ndarray) -> np.ndarray:
    """Symmetric-square representation of a 2x2 matrix, 3x3."""
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    s = np.sqrt(2.0)
    return np.array(
        [[a * a, s * a * b, b * b],
         [s * a * c, a * d + b * c, s * b * d],
         [c * c, s * c * d, d * d]],
        dtype=complex,
    )


def sym2_algebra_element(xi: np.ndarray) -> np.ndarray:
    """Derived symmetric-square representation of a 2x2 matrix."""
    a, b, c, d = xi[0, 0], xi[0, 1], xi[1, 0], xi[1, 1]
    s = np.sqrt(2.0)
    return np.array(
        [[2 * a, s * b, 0], [s * c, a + d, s * b], [0, s * c, 2 * d]], dtype=complex
    )


def _haar_su2(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    q = q / np.linalg.norm(q)
    al = q[0] + 1j * q[1]
    be = q[2] + 1j * q[3]
    return np.array([[al, be], [-np.conj(be), np.conj(al)]])


def sym2_sl2c_group() -> CompatibleGroup:
    """The image of SL(2,C) under the symmetric square, as a compatible
    subgroup of GL(3,C)."""
    h = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    e = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    f = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
    basis = []
    for m in (h, e, f):
        basis.append(sym2_algebra_element(m))
        basis.append(sym2_algebra_element(1j * m))

    def k_sampler(rng: np.random.Generator) -> np.ndarray:
        return sym2_group_element(_haar_su2(rng))

    return custom_group(basis, k_sampler=k_sampler)


def veronese_constraint() -> SubmanifoldConstraint:
    """The closed orbit of the symmetric-square action: rank-one tensors."""

    def predicate(x: ProjectivePoint) -> float:
        w = x.rep
        return float(abs(w[0] * w[2] - w[1] ** 2 / 2.0))

    def sampler(rng: np.random.Generator) -> ProjectivePoint:
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        return ProjectivePoint(_sym2_of_vector(unit(a)))

    def tangent_projector(x: ProjectivePoint) -> np.ndarray:
        # recover a with [a*a] = x, then tangents are sym(a, b), b _|_ a
        w = x.rep
        if abs(w[0]) >= abs(w[2]):
            a = unit(np.array([np.sqrt(w[0] + 0j), w[1] / (np.sqrt(2.0) * np.sqrt(w[0] + 0j))]))
        else:
            a = unit(np.array([w[1] / (np.sqrt(2.0) * np.sqrt(w[2] + 0j)), np.sqrt(w[2] + 0j)]))
        b = np.array([-np.conj(a[1]), np.conj(a[0])])
        frame = real_tangent_frame(x.rep)
        basis = []
        for bb in (b, 1j * b):
            t = np.array(
                [2 * a[0] * bb[0],
                 np.sqrt(2.0) * (a[0] * bb[1] + a[1] * bb[0]),
                 2 * a[1] * bb[1]]
            )
            t = t - np.vdot(x.rep, t) * x.rep
            # real Gram-Schmidt: the Veronese tangent is J-invariant, so the
            # two directions are complex-parallel but real-independent
            for prev in basis:
                t = t - np.real(np.vdot(prev, t)) * prev
            if np.linalg.norm(t) > 1e-10:
                basis.append(t / np.linalg.norm(t))
        cols = np.array([[float(np.real(np.vdot(f, bb))) for bb in basis] for f in frame])
        return cols @ cols.T

    return SubmanifoldConstraint(
        name="veronese",
        predicate=predicate,
        sampler=sampler,
        tangent_projector=tangent_projector,
    )


_CONSTRAINT_BUILDERS = {
    "real-points": real_points_constraint,
    "veronese": lambda n=3: veronese_constraint(),
}


def scenario_registry() -> dict:
    """All built-in scenarios, keyed by name."""
    reg = {}

    s2 = real_special_linear(2)
    reg["sl2r-p1"] = Scenario(
        name="sl2r-p1",
        group=s2,
        abelian=diagonal_abelian(s2),
        n=2,
        expected={"zero_fiber_size": 2, "max_f": 1.0 / 16.0},
        description="SL(2,R) on P(C^2); Ness/retraction testbed",
    )

    for n, extra in ((3, False), (2, True), (4, True)):
        t = positive_diagonal_torus(n)
        name = "torus-pn" if n == 3 else f"torus-p{n}"
        reg[name] = Scenario(
            name=name,
            group=t,
            abelian=diagonal_abelian(t),
            n=n,
            expected={"polytope_vertices": [list((0.5 * np.eye(n)[j])) for j in range(n)]},
            description=f"positive diagonal torus on P(C^{n}); Atiyah polytope testbed",
            extra=extra,
        )

    g3 = sym2_sl2c_group()
    a3 = abelian_from_basis(g3, [sym2_algebra_element(np.diag([1.0, -1.0]))])
    reg["two-orbit-p2"] = Scenario(
        name="two-orbit-p2",
        group=g3,
        abelian=a3,
        n=3,
        closed_orbit=veronese_constraint(),
        expected={
            "critical_components": 2,
            "euler_total": 3,
            "euler_max": 2,
            "euler_min": 1,
            "max_f": 1.0 / 16.0,
        },
        description="Sym^2 SL(2,C) on P(C^3): closed Veronese conic + open complement",
    )

    t3 = positive_diagonal_torus(3)
    reg["rpn-coisotropic"] = Scenario(
        name="rpn-coisotropic",
        group=t3,
        abelian=diagonal_abelian(t3),
        n=3,
        constraint=real_points_constraint(3),
        description="RP^2 in CP^2 with the diagonal torus; coisotropic testbed",
    )

    g2 = real_general_linear(2)
    reg["gl2r-unique-closed"] = Scenario(
        name="gl2r-unique-closed",
        group=g2,
        abelian=diagonal_abelian(g2),
        n=2,
        closed_orbit=real_points_constraint(2),
        description="GL(2,R) on P(C^2); unique closed orbit = real points",
    )

    gl3 = real_general_linear(3)
    reg["gl3r-p2"] = Scenario(
        name="gl3r-p2",
        group=gl3,
        abelian=diagonal_abelian(gl3),
        n=3,
        description="GL(3,R) on P(C^3); Kostant/Schur-Horn and sharp fixtures",
        extra=True,
    )
    return reg


def get_scenario(name: str) -> Scenario:
    reg = scenario_registry()
    if name in reg:
        return reg[name]
    raise UnknownScenario(f"unknown scenario {name!r} (known: {', '.join(sorted(reg))})")


def load_scenario_config(source) -> Scenario:
    """Build a custom scenario from a config mapping or a JSON file path.

    Schema: {"group": group-descriptor, "abelian_basis": [matrices]?,
    "projective_dim": n, "constraint": builtin-name | null, "expected": {}}
    """
    if isinstance(source, (str, bytes)):
        with open(source) as fh:
            doc = json.load(fh)
    else:
        doc = dict(source)
    group = CompatibleGroup.from_json_dict(doc["group"])
    n = int(doc.get("projective_dim", group.n))
    if "abelian_basis" in doc and doc["abelian_basis"]:
        from .lie_core import _pairs_to_matrix

        mats = [_pairs_to_matrix(m, group.n) for m in doc["abelian_basis"]]
        ab = abelian_from_basis(group, mats)
    else:
        ab = diagonal_abelian(group)
    constraint = None
    cname = doc.get("constraint")
    if cname not in (None, "none"):
        if cname not in _CONSTRAINT_BUILDERS:
            raise UnknownScenario(f"unknown constraint {cname!r}")
        constraint = _CONSTRAINT_BUILDERS[cname](n)
    return Scenario(
        name=doc.get("name", "custom"),
        group=group,
        abelian=ab,
        n=n,
        constraint=constraint,
        expected=doc.get("expected", {}),
        description=doc.get("description", "user-defined scenario"),
    )
