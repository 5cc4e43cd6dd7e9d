"""Rotational structure of umbilical submanifolds and profile-curve sampling.

Every umbilical submanifold is generated by the action of block rotation
subgroups on a lower-dimensional piece; for H^n x S^1 (k = n) the piece is a
circle arc in an explicit plane, sampled here together with its image on the
product and the S^1 slice angle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import congruence, model
from .errors import InputError, MalformedSpec, NotSubstantial, WrongContext
from .lightcone import ModelContext, Sphere, encode
from .lorentz import DEFAULT_TOL, minkowski_dot


@dataclass(frozen=True)
class OrbitStructure:
    acting_block: str  # "W1", "W2", "BOTH" or "NONE"
    cohomogeneity: int
    orbit_dim_w1: int | None  # dimension of a principal W1-block orbit, if it acts
    orbit_dim_w2: int | None


@dataclass(frozen=True)
class ProfileCase:
    tag: str  # "HYPERBOLIC", "PARABOLIC" or "SPHERICAL"
    theta_min: float
    theta_max: float
    closed_min: bool
    closed_max: bool


@dataclass(frozen=True)
class ProfileSample:
    theta: float
    x: np.ndarray  # point of R^{n+1}
    theta_x: np.ndarray  # its image on H^n x S^1 inside the Lorentz space
    slice_angle: float
    membership_residual: float


def orbit_structure(
    ctx: ModelContext, V: congruence.SpacelikeSubspace, tol: float = DEFAULT_TOL
) -> OrbitStructure:
    """Which block rotation subgroups act, with cohomogeneity and orbit dims.

    The rotations of the hyperbolic factor fixing the tangential projections
    act when p <= k-1, those of the sphere factor when p <= n-k.
    """
    if not congruence.is_substantial(ctx, V, tol):
        raise NotSubstantial("orbit structure is described for substantial submanifolds")
    p = V.dim
    n, k = ctx.n, ctx.k
    w1_acts = p <= k - 1
    w2_acts = p <= n - k
    if w1_acts and w2_acts:
        return OrbitStructure("BOTH", p, k - p, n - k - p + 1)
    if w1_acts:
        return OrbitStructure("W1", n - k + 1, k - p, None)
    if w2_acts:
        return OrbitStructure("W2", k, None, n - k - p + 1)
    return OrbitStructure("NONE", n + 1 - p, None, None)


def _require_profile_context(ctx: ModelContext):
    if ctx.k != ctx.n:
        raise WrongContext("profile curves are described only for k = n")


def _profile_sphere(spec: congruence.UmbilicalSpec) -> Sphere:
    sph = spec.sphere
    if sph is None:
        raise MalformedSpec("profile curves need a sphere generator")
    return sph


def profile_case(
    ctx: ModelContext, spec: congruence.UmbilicalSpec, tol: float = DEFAULT_TOL
) -> ProfileCase:
    """Hyperbolic/parabolic/spherical case with its theta interval.

    The case is read off the causal type of the tangential part of the
    sphere's encoded vector rather than from the radius directly, so it also
    applies after recentering.
    """
    _require_profile_context(ctx)
    sph = _profile_sphere(spec)
    z = encode(ctx, sph)
    zt = model.split(ctx, z).tangential
    q = minkowski_dot(zt, zt)
    if abs(q) <= tol:
        return ProfileCase("PARABOLIC", -np.pi, np.pi, False, False)
    if q > 0:
        return ProfileCase("HYPERBOLIC", -np.pi, np.pi, False, True)
    r_eff = 1.0 / np.sqrt(1.0 - q)  # q = 1 - 1/r^2 on the canonical families
    a = np.arccos(min(1.0, r_eff))
    return ProfileCase("SPHERICAL", -np.pi + a, np.pi - a, True, True)


def _theta_grid(case: ProfileCase, samples: int) -> np.ndarray:
    length = case.theta_max - case.theta_min
    if case.closed_min and case.closed_max:
        return np.linspace(case.theta_min, case.theta_max, samples)
    if not case.closed_min and case.closed_max:
        step = length / samples
        grid = case.theta_min + step * np.arange(1, samples + 1)
        grid[-1] = case.theta_max  # keep the closed endpoint exact
        return grid
    # open on both sides: uniform interior grid
    step = length / (samples + 1)
    return case.theta_min + step * np.arange(1, samples + 1)


def canonical_profile_spec(
    ctx: ModelContext, spec: congruence.UmbilicalSpec, tol: float
) -> congruence.UmbilicalSpec:
    """Replace a spec by the canonical member of its congruence class."""
    p = spec.codim
    if p == 1:
        (obj,) = spec.generators
        if not isinstance(obj, Sphere):
            raise MalformedSpec("codimension-1 profile curves need a hypersphere")
        V = congruence.subspace_of(ctx, spec.generators, tol)
        lam = float(congruence.invariant_of(ctx, V, tol).perp_eigs[0])
        if lam <= tol:
            raise NotSubstantial("hypersphere centered on R^{k-1} has no profile curve")
        return congruence.make_spec(ctx, [congruence.canonical_codim1(ctx, lam)])
    if p == 2:
        V = congruence.subspace_of(ctx, spec.generators, tol)
        inv = congruence.invariant_of(ctx, V, tol)
        return congruence.canonical_codim2(ctx, inv)
    raise MalformedSpec("profile curves cover codimensions 1 and 2 only")


def profile_curve(
    ctx: ModelContext,
    spec: congruence.UmbilicalSpec,
    samples: int,
    tol: float = DEFAULT_TOL,
) -> list:
    """Uniform samples of the profile circle arc of a spec (k = n).

    The spec is first replaced by the canonical member of its congruence
    class, whose arc lies in the plane spanned by e_{n+1} and the unit vector
    of span{e_1, e_n} orthogonal to the hyperplane normal.  Each sample
    reports the Euclidean point, its image on H^n x S^1, the S^1 slice angle
    and the worst generator-membership residual.
    """
    _require_profile_context(ctx)
    if samples < 2:
        raise InputError("need samples >= 2")
    canon = canonical_profile_spec(ctx, spec, tol)
    sph = _profile_sphere(canon)
    n1 = ctx.n + 1
    x_c = np.asarray(sph.center, dtype=float)
    r = sph.radius
    e_np1 = np.zeros(n1)
    e_np1[n1 - 1] = 1.0
    e_n = np.zeros(n1)
    e_n[n1 - 2] = 1.0
    e_1 = np.zeros(n1)
    e_1[0] = 1.0

    planes = canon.hyperplanes
    if not planes:
        eta_dir = e_n
    else:
        (h,) = planes
        N = np.asarray(h.normal, dtype=float)
        # unit direction of span{e_1, e_n} orthogonal to the normal
        eta_dir = float(np.dot(N, e_n)) * e_1 - float(np.dot(N, e_1)) * e_n
        nrm = float(np.linalg.norm(eta_dir))
        if nrm <= tol:
            raise MalformedSpec("hyperplane normal leaves no profile plane")
        eta_dir = eta_dir / nrm
        if float(np.dot(eta_dir, e_1)) < -tol or (
            abs(float(np.dot(eta_dir, e_1))) <= tol and float(np.dot(eta_dir, e_n)) < 0
        ):
            eta_dir = -eta_dir

    case = profile_case(ctx, canon, tol)
    zs = [encode(ctx, g) for g in canon.generators]
    out = []
    for th in _theta_grid(case, samples):
        x = x_c + r * np.cos(th) * e_np1 + r * np.sin(th) * eta_dir
        u = model.theta(ctx, x, tol)
        angle = float(np.arctan2(u[ctx.n], u[ctx.n + 1]))
        res = max(abs(minkowski_dot(u, z)) for z in zs)
        out.append(
            ProfileSample(
                theta=float(th),
                x=x,
                theta_x=u,
                slice_angle=angle,
                membership_residual=float(res),
            )
        )
    return out
