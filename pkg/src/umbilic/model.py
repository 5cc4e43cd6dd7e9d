"""The conformal model (R^{n+1} \\ R^{k-1}, g) of H^k x S^{n-k+1}.

Contains the map ``theta`` onto the product of space forms inside the Lorentz
space, the W1/W2 block structure, generators and detection of block
isometries, and the Euclidean decomposition F = I o L of any block isometry
into a similarity followed by an inversion centered on the axis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lightcone, lorentz
from .errors import AtCenter, NotBlockIsometry, OnAxis
from .lightcone import ModelContext, conformal_apply, psi
from .lorentz import DEFAULT_TOL, minkowski_dot


@dataclass(frozen=True)
class SplitVec:
    tangential: np.ndarray  # component in W1
    perpendicular: np.ndarray  # component in W2


def split(ctx: ModelContext, u) -> SplitVec:
    """Orthogonal W1/W2 decomposition (coordinate masking in the standard context)."""
    u = np.asarray(u, dtype=float)
    tang = np.zeros_like(u)
    perp = np.zeros_like(u)
    w1 = list(ctx.w1_coords)
    w2 = list(ctx.w2_coords)
    tang[w1] = u[w1]
    perp[w2] = u[w2]
    return SplitVec(tangential=tang, perpendicular=perp)


def conformal_factor(ctx: ModelContext, x, tol: float = DEFAULT_TOL) -> float:
    """1 / distance(x, R^{k-1})."""
    _, xp = ctx.euclid_split(x)
    d = float(np.linalg.norm(xp))
    if d <= tol:
        raise OnAxis("point lies on the removed subspace R^{k-1}")
    return 1.0 / d


def theta(ctx: ModelContext, x, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Conformal diffeomorphism onto H^k x S^{n-k+1} in the Lorentz space."""
    return conformal_factor(ctx, x, tol) * psi(ctx, x)


def is_block_isometry(ctx: ModelContext, T, tol: float = DEFAULT_TOL) -> bool:
    """Lorentz orthogonal and preserving both W1 and W2."""
    T = np.asarray(T, dtype=float)
    if T.shape != (ctx.dim, ctx.dim):
        return False
    if not lorentz.is_lorentz_orthogonal(T, tol):
        return False
    w1 = list(ctx.w1_coords)
    w2 = list(ctx.w2_coords)
    off = max(
        float(np.abs(T[np.ix_(w2, w1)]).max()),
        float(np.abs(T[np.ix_(w1, w2)]).max()),
    )
    return off <= tol


def _null_rotation(ctx: ModelContext, q: np.ndarray, s: float) -> np.ndarray:
    """Parabolic isometry of W1 fixing w, with unit spacelike q in C(R^{k-1})."""
    dim = ctx.dim
    e = lorentz.eta(dim)
    v, w = ctx.v, ctx.w
    T = np.empty((dim, dim))
    for j in range(dim):
        u = np.zeros(dim)
        u[j] = 1.0
        uw = float(u @ e @ w)
        uq = float(u @ e @ q)
        T[:, j] = u + s * uw * q - s * uq * w - 0.5 * s * s * uw * w
    return T


def _boost(ctx: ModelContext, phi: float) -> np.ndarray:
    T = np.eye(ctx.dim)
    i, j = 0, ctx.dim - 1
    T[i, i] = T[j, j] = np.cosh(phi)
    T[i, j] = T[j, i] = np.sinh(phi)
    return T


def _haar_orthogonal(rng: np.random.Generator, m: int) -> np.ndarray:
    A = rng.standard_normal((m, m))
    Q, R = np.linalg.qr(A)
    return Q * np.sign(np.diag(R))


def random_block_isometry(ctx: ModelContext, seed: int) -> np.ndarray:
    """Seeded random composition of block isometries.

    Mixes a boost in span{v, w}, rotations inside W2 and inside C(R^{k-1}),
    and (for k >= 2) a null rotation of W1; deterministic for a fixed seed.
    """
    rng = np.random.default_rng(seed)
    dim = ctx.dim
    T = _boost(ctx, float(rng.uniform(-1.0, 1.0)))

    w2 = list(ctx.w2_coords)
    R2 = lorentz.embed_on_coords(dim, w2, _haar_orthogonal(rng, len(w2)))
    T = R2 @ T

    if ctx.k >= 2:
        v1 = list(range(1, ctx.k))
        R1 = lorentz.embed_on_coords(dim, v1, _haar_orthogonal(rng, len(v1)))
        q = np.zeros(dim)
        qc = rng.standard_normal(len(v1))
        q[v1] = qc / np.linalg.norm(qc)
        N = _null_rotation(ctx, q, float(rng.uniform(-1.0, 1.0)))
        T = N @ R1 @ T
    T = _boost(ctx, float(rng.uniform(-1.0, 1.0))) @ T
    return T


@dataclass(frozen=True)
class IsometryForm:
    """Euclidean form F = I o L of a block isometry.

    L(x) = ratio * A x + t with A orthogonal leaving R^{k-1} invariant and
    t in R^{k-1}; the optional inversion I has center on R^{k-1}.
    """

    kind: str  # "SIMILARITY" or "INVERSION_COMPOSITE"
    A: np.ndarray
    ratio: float
    t: np.ndarray
    inversion_center: np.ndarray | None = None
    inversion_radius: float | None = None


def identity_form(ctx: ModelContext) -> IsometryForm:
    return IsometryForm(
        kind="SIMILARITY",
        A=np.eye(ctx.n + 1),
        ratio=1.0,
        t=np.zeros(ctx.n + 1),
    )


def _similarity_parts(ctx: ModelContext, G, lam: float, tol: float):
    """Read (A, t) of the similarity x -> lam*A x + t induced by G (G w = lam w)."""
    n1 = ctx.n + 1
    t = conformal_apply(ctx, G, np.zeros(n1), tol)
    A = np.empty((n1, n1))
    for i in range(n1):
        e_i = np.zeros(n1)
        e_i[i] = 1.0
        A[:, i] = (conformal_apply(ctx, G, e_i, tol) - t) / lam
    return A, t


def euclidean_form(ctx: ModelContext, T, tol: float = DEFAULT_TOL) -> IsometryForm:
    """Decompose a block isometry as inversion o similarity.

    Follows the constructive proof: if T fixes the w direction the induced
    map is already a similarity; otherwise reflect through the unit spacelike
    vector z = Tw/<Tw, w> + w/2 to reduce to that case, the inversion being
    taken in the unit sphere whose encoded vector is z (centered on R^{k-1}).
    """
    T = np.asarray(T, dtype=float)
    if not is_block_isometry(ctx, T, max(tol, 1e-8)):
        raise NotBlockIsometry("matrix does not preserve the W1/W2 split")
    w = ctx.w
    wbar = T @ w
    if wbar[0] >= 0:
        raise NotBlockIsometry("time-orientation-reversing isometries unsupported")
    lam = minkowski_dot(wbar, ctx.v)  # = scaling if wbar is proportional to w
    if lam > 0 and np.abs(wbar - lam * w).max() <= max(tol, 1e-9) * max(
        1.0, float(np.abs(wbar).max())
    ):
        A, t = _similarity_parts(ctx, T, lam, tol)
        return IsometryForm(kind="SIMILARITY", A=A, ratio=lam, t=t)

    ww = minkowski_dot(wbar, w)  # < 0 since both are future lightlike
    z = wbar / ww + 0.5 * w
    e = lorentz.eta(ctx.dim)
    R = np.eye(ctx.dim) - 2.0 * np.outer(z, e @ z)
    G = R @ T
    lam = -0.5 * ww
    A, t = _similarity_parts(ctx, G, lam, tol)
    sphere = lightcone.decode(ctx, z, max(tol, 1e-9))
    return IsometryForm(
        kind="INVERSION_COMPOSITE",
        A=A,
        ratio=lam,
        t=t,
        inversion_center=np.asarray(sphere.center, dtype=float),
        inversion_radius=float(sphere.radius),
    )


def apply_isometry_form(ctx: ModelContext, F: IsometryForm, x, tol: float = DEFAULT_TOL) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    _, xp = ctx.euclid_split(x)
    if np.linalg.norm(xp) <= tol:
        raise OnAxis("point lies on the removed subspace R^{k-1}")
    y = F.ratio * (F.A @ x) + F.t
    if F.kind == "INVERSION_COMPOSITE":
        x0 = F.inversion_center
        d = y - x0
        d2 = float(np.dot(d, d))
        if d2 <= tol * tol:
            raise AtCenter("point maps to the inversion center")
        y = x0 + (F.inversion_radius ** 2) * d / d2
    return y


def isometry_pullback_residual(
    ctx: ModelContext, F: IsometryForm, x, h: float = 1e-5
) -> float:
    """Finite-difference check that F preserves the conformal metric g.

    Returns the max over coordinate pairs of
    |g_{F(x)}(dF e_i, dF e_j) - g_x(e_i, e_j)| with dF by central differences.
    """
    x = np.asarray(x, dtype=float)
    n1 = ctx.n + 1
    J = np.empty((n1, n1))
    for i in range(n1):
        dx = np.zeros(n1)
        dx[i] = h
        J[:, i] = (
            apply_isometry_form(ctx, F, x + dx) - apply_isometry_form(ctx, F, x - dx)
        ) / (2.0 * h)
    y = apply_isometry_form(ctx, F, x)
    gy = conformal_factor(ctx, y) ** 2
    gx = conformal_factor(ctx, x) ** 2
    M = gy * (J.T @ J) - gx * np.eye(n1)
    return float(np.abs(M).max())


def intersection_dim(basis: np.ndarray, coords, tol: float = DEFAULT_TOL) -> int:
    """dim(span(rows of basis) intersect coordinate subspace ``coords``)."""
    basis = np.asarray(basis, dtype=float)
    p = basis.shape[0]
    other = [j for j in range(basis.shape[1]) if j not in set(coords)]
    M = basis[:, other]
    s = np.linalg.svd(M, compute_uv=False)
    smax = s[0] if len(s) and s[0] > 0 else 1.0
    rank = int(np.sum(s > tol * max(1.0, smax)))
    return p - rank


def is_totally_geodesic(ctx: ModelContext, basis, tol: float = DEFAULT_TOL) -> bool:
    """True iff the spacelike span splits as (V n W1) + (V n W2)."""
    basis = np.asarray(basis, dtype=float)
    p = basis.shape[0]
    d1 = intersection_dim(basis, ctx.w1_coords, tol)
    d2 = intersection_dim(basis, ctx.w2_coords, tol)
    return d1 + d2 == p
