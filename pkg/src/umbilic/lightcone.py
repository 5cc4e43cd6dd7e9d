"""Euclidean geometry inside the light cone of L^{n+3}.

Round objects of R^{n+1} (hyperspheres and affine hyperplanes) correspond to
unit spacelike vectors of the Lorentz space; the embedding ``psi`` carries
R^{n+1} onto the slice E^{n+1} of the light cone and ``pi_project`` projects
back.  A ``ModelContext`` pins down the ambient dimensions and the standard
triple (v, w, C) so every artifact is bit-reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import lorentz
from .errors import (
    DimensionMismatch,
    InputError,
    NotUnitSpacelike,
    OnAxis,
    PointAtInfinity,
)
from .lorentz import DEFAULT_TOL, minkowski_dot


@dataclass(frozen=True)
class ModelContext:
    """Fixed model data: dimensions (n, k) and the triple (v, w, C).

    The Lorentz space has dimension n+3 with coordinate 0 timelike.  The
    standard triple is w = (-1, 0, ..., 0, 1), v = (1/2, 0, ..., 0, 1/2) and
    C(e_i) = coordinate i for 1 <= i <= n+1.  The split of R^{n+1} into
    R^{k-1} (tangential, coordinates 1..k-1 of x) and its complement induces
    W1 = C(R^{k-1}) + span{v, w} and W2 = C(R^{n-k+2}) in the Lorentz space.
    """

    n: int
    k: int
    v: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)
    C: np.ndarray = field(repr=False)  # (n+3) x (n+1), columns C(e_i)

    @property
    def dim(self) -> int:
        return self.n + 3

    @property
    def w1_coords(self) -> tuple:
        return (0,) + tuple(range(1, self.k)) + (self.n + 2,)

    @property
    def w2_coords(self) -> tuple:
        return tuple(range(self.k, self.n + 2))

    def c_apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n + 1,):
            raise DimensionMismatch(f"expected a point of R^{self.n + 1}")
        return self.C @ x

    def c_invert(self, u) -> np.ndarray:
        """Pull a vector of C(R^{n+1}) back to R^{n+1}."""
        u = np.asarray(u, dtype=float)
        return self.C.T @ (lorentz.eta(self.dim) @ u)

    def euclid_split(self, x):
        """Split a point of R^{n+1} into (tangential, perpendicular) parts."""
        x = np.asarray(x, dtype=float)
        xt = x.copy()
        xt[self.k - 1:] = 0.0
        return xt, x - xt


def default_context(n: int, k: int) -> ModelContext:
    if n < 2:
        raise DimensionMismatch("need n >= 2")
    if not 1 <= k <= n + 1:
        raise DimensionMismatch("need 1 <= k <= n+1")
    dim = n + 3
    w = np.zeros(dim)
    w[0], w[-1] = -1.0, 1.0
    v = np.zeros(dim)
    v[0], v[-1] = 0.5, 0.5
    C = np.zeros((dim, n + 1))
    for i in range(n + 1):
        C[i + 1, i] = 1.0
    return ModelContext(n=n, k=k, v=v, w=w, C=C)


@dataclass(frozen=True)
class Sphere:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if not self.radius > 0:
            raise InputError("radius must be positive")


@dataclass(frozen=True)
class Hyperplane:
    normal: np.ndarray
    offset: float

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=float)
        nrm = float(np.linalg.norm(normal))
        if abs(nrm - 1.0) > 1e-6:
            raise InputError("hyperplane normal must be a unit vector")
        object.__setattr__(self, "normal", normal / nrm)
        object.__setattr__(self, "offset", float(self.offset))


RoundObject = Sphere | Hyperplane


def psi(ctx: ModelContext, x) -> np.ndarray:
    """Isometric embedding of R^{n+1} into the light cone."""
    x = np.asarray(x, dtype=float)
    return ctx.v + ctx.c_apply(x) - 0.5 * float(np.dot(x, x)) * ctx.w


def pi_project(ctx: ModelContext, u, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Projection u -> u / <u, w> onto the Euclidean slice of the cone."""
    u = np.asarray(u, dtype=float)
    h = minkowski_dot(u, ctx.w)
    if abs(h) <= tol * max(1.0, float(np.linalg.norm(u))):
        raise OnAxis("vector lies on the excluded ray R*w")
    return u / h


def encode(ctx: ModelContext, obj: RoundObject) -> np.ndarray:
    """Unit spacelike vector whose orthogonal slice of E^{n+1} is the object."""
    if isinstance(obj, Sphere):
        return psi(ctx, obj.center) / obj.radius + 0.5 * obj.radius * ctx.w
    if isinstance(obj, Hyperplane):
        return ctx.c_apply(obj.normal) - obj.offset * ctx.w
    raise InputError(f"not a round object: {obj!r}")


def decode(ctx: ModelContext, z, tol: float = DEFAULT_TOL) -> RoundObject:
    """Inverse of ``encode`` up to the sphere-orientation sign.

    ``|<z, w>| <= tol`` separates hyperplanes from (huge) spheres.
    """
    z = np.asarray(z, dtype=float)
    if abs(minkowski_dot(z, z) - 1.0) > max(tol, 1e-7):
        raise NotUnitSpacelike("decode expects a unit spacelike vector")
    h = minkowski_dot(z, ctx.w)
    if abs(h) <= tol:
        c = -minkowski_dot(z, ctx.v)
        normal = ctx.c_invert(z + c * ctx.w)
        return Hyperplane(normal=normal, offset=c)
    r = 1.0 / abs(h)
    sigma = 1.0 if h > 0 else -1.0
    # psi(x0) = v + C x0 - (|x0|^2/2) w, so the center is the C-part of
    # r*sigma*z - (r^2/2) w - v; C' kills both the v and w remainders.
    psi_center = r * sigma * z - 0.5 * r * r * ctx.w
    center = ctx.c_invert(psi_center - ctx.v)
    return Sphere(center=center, radius=r)


def conformal_apply(ctx: ModelContext, T, x, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Evaluate the conformal map of R^{n+1} induced by a Lorentz matrix."""
    T = np.asarray(T, dtype=float)
    if not lorentz.is_lorentz_orthogonal(T, max(tol, 1e-8)):
        raise InputError("matrix is not Lorentz orthogonal")
    u = T @ psi(ctx, x)
    h = minkowski_dot(u, ctx.w)
    if abs(h) <= tol * max(1.0, float(np.linalg.norm(u))):
        raise PointAtInfinity("image meets the excluded ray R*w")
    y = u / h
    return ctx.c_invert(y - ctx.v)
