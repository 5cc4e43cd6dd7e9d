"""Seeded random generators for test oracles and the selftest suites.

Everything takes an explicit numpy Generator so reports are reproducible.
"""
from __future__ import annotations

import numpy as np

from . import congruence, lorentz
from .errors import NotSpacelike
from .lightcone import Hyperplane, ModelContext, Sphere


def random_point(rng: np.random.Generator, ctx: ModelContext, scale: float = 2.0, min_perp: float = 0.2) -> np.ndarray:
    """Random point of R^{n+1} bounded away from the removed subspace."""
    while True:
        x = rng.uniform(-scale, scale, ctx.n + 1)
        _, xp = ctx.euclid_split(x)
        if np.linalg.norm(xp) >= min_perp:
            return x


def random_spacelike_subspace(
    rng: np.random.Generator, ctx: ModelContext, p: int, tol: float = 1e-9
) -> congruence.SpacelikeSubspace:
    """Random p-dimensional spacelike subspace of the Lorentz space."""
    while True:
        B = rng.standard_normal((p, ctx.dim))
        B[:, 0] *= 0.3  # damp the timelike coordinate to favor spacelike spans
        try:
            basis = lorentz.orthonormalize_spacelike(B, tol)
        except NotSpacelike:
            continue
        return congruence.SpacelikeSubspace(basis=basis, ctx=ctx)


def random_substantial_subspace(
    rng: np.random.Generator, ctx: ModelContext, p: int, tol: float = 1e-9
) -> congruence.SpacelikeSubspace:
    for _ in range(1000):
        V = random_spacelike_subspace(rng, ctx, p, tol)
        if congruence.is_substantial(ctx, V, tol):
            return V
    raise RuntimeError(f"no substantial subspace of dimension {p} found")


def random_substantial_hypersurface(rng: np.random.Generator, ctx: ModelContext):
    """Random substantial hypersphere or hyperplane of the conformal model."""
    n1 = ctx.n + 1
    if rng.uniform() < 0.5:
        while True:
            center = rng.uniform(-2.0, 2.0, n1)
            _, xp = ctx.euclid_split(center)
            if np.linalg.norm(xp) >= 0.2:
                return Sphere(center=center, radius=float(rng.uniform(0.3, 3.0)))
    while True:
        normal = rng.standard_normal(n1)
        normal /= np.linalg.norm(normal)
        nt, npx = ctx.euclid_split(normal)
        offset = float(rng.uniform(-2.0, 2.0))
        if np.linalg.norm(npx) >= 0.2 and (np.linalg.norm(nt) >= 0.2 or abs(offset) >= 0.2):
            return Hyperplane(normal=normal, offset=offset)


def random_codim2_spec(
    rng: np.random.Generator, ctx: ModelContext, tol: float = 1e-9
) -> congruence.UmbilicalSpec:
    """Random substantial codimension-2 spec with orthogonal generators."""
    n1 = ctx.n + 1
    for _ in range(1000):
        if rng.uniform() < 0.6:
            normal = rng.standard_normal(n1)
            normal /= np.linalg.norm(normal)
            offset = float(rng.uniform(-1.5, 1.5))
            # a sphere meets a hyperplane orthogonally iff its center lies on it
            shift = rng.uniform(-2.0, 2.0, n1)
            shift -= float(np.dot(shift, normal)) * normal
            center = offset * normal + shift
            spec_objs = [
                Sphere(center=center, radius=float(rng.uniform(0.3, 3.0))),
                Hyperplane(normal=normal, offset=offset),
            ]
        else:
            A = rng.standard_normal((n1, 2))
            Q, _ = np.linalg.qr(A)
            spec_objs = [
                Hyperplane(normal=Q[:, 0], offset=float(rng.uniform(-1.5, 1.5))),
                Hyperplane(normal=Q[:, 1], offset=float(rng.uniform(-1.5, 1.5))),
            ]
        try:
            spec = congruence.make_spec(ctx, spec_objs, tol)
            V = congruence.subspace_of(ctx, spec.generators, tol)
        except Exception:
            continue
        if congruence.is_substantial(ctx, V, tol):
            return spec
    raise RuntimeError("no substantial codimension-2 spec found")


def transformed_subspace(
    ctx: ModelContext, V: congruence.SpacelikeSubspace, T: np.ndarray
) -> congruence.SpacelikeSubspace:
    return congruence.SpacelikeSubspace(basis=V.basis @ np.asarray(T, dtype=float).T, ctx=ctx)
