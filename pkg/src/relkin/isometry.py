"""Metric-preserving operators generated by simple bivectors.

A bivector P^Q with (P^Q)^2 <= 1 generates the isometry

    L = id + M + M^2 / (gamma + 1),    M = P (x) gQ - Q (x) gP,

where gamma^2 = 1 - (P^Q)^2.  Construction always verifies the defining
property L* o g o L = g; an isometry that fails the check is never returned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateGammaError,
    InternalConsistencyError,
    MissingGeneratorError,
    NotInStabilizerError,
    NullVectorError,
    OutOfDomainError,
)
from .metric_core import (
    Covector,
    Endomorphism,
    MetricSpace,
    SimpleBivector,
    Vector,
    _frozen,
    lie_map,
    maxabs,
    same_space,
    scalar_product,
)

__all__ = [
    "Isometry",
    "covector_pair",
    "isometry_from_bivector",
    "isometry_residual",
    "minimal_poly_residual",
    "minimal_poly_residual_alt",
    "reflection",
    "stabilizer_element",
]


def isometry_residual(mapping: Endomorphism) -> float:
    """Max-norm of L* g L - g, the defect of the metric-preservation law."""
    g = mapping.space.g
    ent = mapping.entries
    return maxabs(ent.T @ g @ ent - g)


@dataclass(frozen=True, eq=False)
class Isometry:
    """A verified metric-preserving operator.

    ``generator`` and ``gamma`` record the bivector presentation when the
    operator was built from one; composite operators drop the record.  The
    stored gamma is the binomial coefficient of the construction, which for
    link-built operators can be negative (rotation by more than a quarter
    turn); gamma^2 = 1 - generator^2 always holds.
    """

    mapping: Endomorphism
    generator: SimpleBivector | None = None
    gamma: float | None = None

    def __post_init__(self):
        space = self.mapping.space
        scale = max(1.0, maxabs(space.g) * self.mapping.max_norm() ** 2)
        res = isometry_residual(self.mapping)
        if res > space.tol_rel * scale:
            raise InternalConsistencyError(
                f"operator fails the isometry law, residual {res:.3e}")
        if self.generator is not None and self.gamma is not None:
            m2 = self.generator.square()
            defect = abs(self.gamma ** 2 - (1.0 - m2))
            if defect > space.tol_rel * max(1.0, abs(m2), self.gamma ** 2):
                raise InternalConsistencyError(
                    f"gamma record inconsistent with generator, defect {defect:.3e}")

    @property
    def space(self) -> MetricSpace:
        return self.mapping.space

    def apply(self, v: Vector) -> Vector:
        return self.mapping.apply(v)

    def compose(self, other: "Isometry") -> "Isometry":
        """self o other; the presentation record does not survive composition."""
        return Isometry(self.mapping @ other.mapping)

    __matmul__ = compose

    def inverse(self) -> "Isometry":
        """g^-1 L* g, which inverts any isometry exactly.

        A generated operator keeps its record with the presentation reversed
        and the same gamma.
        """
        space = self.space
        ent = space.g_inv @ self.mapping.entries.T @ space.g
        inv_map = Endomorphism(_frozen(ent), space)
        if self.generator is None:
            return Isometry(inv_map)
        return Isometry(inv_map, self.generator.reversed(), self.gamma)

    def distance(self, other: "Isometry") -> float:
        """Max-norm distance between the two operators."""
        return maxabs(self.mapping.entries - other.mapping.entries)

    def __repr__(self):
        return f"Isometry({np.array2string(self.mapping.entries, separator=', ')})"


def reflection(p: Vector) -> Isometry:
    """Reflection id - 2 P (x) gP / P.P in the hyperplane orthogonal to P.

    Involutive, and maps P to -P.  P must be non-null.
    """
    if p.is_null():
        raise NullVectorError("reflection requires a non-null vector")
    space = p.space
    ent = np.eye(space.dim) - 2.0 * np.outer(p.components, space.g @ p.components) / p.square()
    return Isometry(Endomorphism(_frozen(ent), space))


def isometry_from_bivector(b: SimpleBivector) -> Isometry:
    """Binomial isometry id + M + M^2/(gamma+1) of a simple bivector.

    gamma is the principal root of gamma^2 = 1 - (P^Q)^2, so the domain is
    (P^Q)^2 <= 1; outside it the construction raises OutOfDomainError.  The
    zero bivector yields the identity with gamma = 1.
    """
    space = b.space
    m2 = b.square()
    if m2 > 1.0 + space.tol_abs:
        raise OutOfDomainError(f"(P^Q)^2 = {m2!r} exceeds 1")
    gamma = float(np.sqrt(max(0.0, 1.0 - m2)))
    if abs(gamma + 1.0) <= space.tol_abs:
        raise DegenerateGammaError("gamma + 1 vanishes")
    m = lie_map(b).entries
    ent = np.eye(space.dim) + m + (m @ m) / (gamma + 1.0)
    return Isometry(Endomorphism(_frozen(ent), space), b, gamma)


def covector_pair(b: SimpleBivector) -> tuple[Covector, Covector]:
    """Covectors (alpha, beta) with L = id - P (x) alpha - Q (x) beta.

    For the zero bivector both covectors are zero.  Otherwise

        (gamma+1) alpha = Q.Q gP - (P.Q + gamma + 1) gQ
        (gamma+1) beta  = P.P gQ - (P.Q - gamma - 1) gP

    with gamma the principal root; the pair reconstructs the binomial
    operator exactly, including for degenerate presentations.
    """
    space = b.space
    if b.is_zero():
        zero = space.covector(np.zeros(space.dim))
        return zero, zero
    p, q = b.first, b.second
    m2 = b.square()
    if m2 > 1.0 + space.tol_abs:
        raise OutOfDomainError(f"(P^Q)^2 = {m2!r} exceeds 1")
    gamma = float(np.sqrt(max(0.0, 1.0 - m2)))
    gp = space.g @ p.components
    gq = space.g @ q.components
    pq = scalar_product(p, q)
    alpha = (q.square() * gp - (pq + gamma + 1.0) * gq) / (gamma + 1.0)
    beta = (p.square() * gq - (pq - gamma - 1.0) * gp) / (gamma + 1.0)
    return space.covector(alpha), space.covector(beta)


def minimal_poly_residual(iso: Isometry) -> float:
    """Residual of the annihilating cubic (L - id)(L^2 - 2 gamma L + id).

    The quadratic factor is the characteristic polynomial of the restriction
    of L to the plane of its generator (trace 2 gamma, determinant 1), so the
    residual vanishes for every generated isometry.  Requires the generator
    record.
    """
    if iso.generator is None or iso.gamma is None:
        raise MissingGeneratorError("operator carries no generator record")
    ent = iso.mapping.entries
    eye = np.eye(iso.space.dim)
    quad = ent @ ent - 2.0 * iso.gamma * ent + eye
    return maxabs((ent - eye) @ quad)


def minimal_poly_residual_alt(iso: Isometry) -> float:
    """Residual of the variant cubic (L - id)(L^2 + 2(gamma-2)(L + id)).

    This variant factor does not annihilate generic generated isometries;
    it is evaluated alongside the corrected one so reports can show both.
    """
    if iso.generator is None or iso.gamma is None:
        raise MissingGeneratorError("operator carries no generator record")
    ent = iso.mapping.entries
    eye = np.eye(iso.space.dim)
    quad = ent @ ent + 2.0 * (iso.gamma - 2.0) * (ent + eye)
    return maxabs((ent - eye) @ quad)


def stabilizer_element(r: Vector, b: SimpleBivector) -> Isometry:
    """Isometry generated by a bivector whose legs are orthogonal to R.

    Such an operator fixes R, because the generator annihilates it.  Legs
    that are not orthogonal to R within tol_abs raise NotInStabilizerError.
    """
    space = same_space(r, b.first)
    scale_r = max(1.0, maxabs(r.components))
    for leg in (b.first, b.second):
        bound = space.tol_abs * scale_r * max(1.0, maxabs(leg.components))
        if abs(scalar_product(r, leg)) > bound:
            raise NotInStabilizerError("generator legs must be orthogonal to R")
    iso = isometry_from_bivector(b)
    res = maxabs(iso.apply(r).components - r.components)
    if res > space.tol_rel * max(1.0, maxabs(r.components)):
        raise InternalConsistencyError(
            f"stabilizer element moved its fixed vector by {res:.3e}")
    return iso
