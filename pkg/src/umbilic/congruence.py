"""Congruence machinery for umbilical submanifolds of H^k x S^(n-k+1).

A submanifold of codimension p is presented either by p pairwise-orthogonal
round objects of R^{n+1} (an ``UmbilicalSpec``) or directly by the spacelike
subspace V of the Lorentz space spanned by their encoded vectors.  Congruence
under the block-isometry group is decided by the eigenvalue multiset of the
perpendicular Gram matrix; a realizing isometry is constructed explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lorentz, model
from .errors import (
    DependentGenerators,
    DimMismatch,
    InfeasibleInvariant,
    MalformedSpec,
    NonPositiveInvariant,
    NotCongruent,
    NotSubstantial,
    WrongContext,
)
from .lightcone import Hyperplane, ModelContext, RoundObject, Sphere, encode
from .lorentz import DEFAULT_TOL

EIG_TOL = 1e-8  # absolute tolerance for eigenvalue-multiset comparison at unit scale


@dataclass(frozen=True)
class SpacelikeSubspace:
    """Orthonormal spacelike basis (rows) of a subspace V of L^{n+3}."""

    basis: np.ndarray  # (p, n+3), Gram = identity
    ctx: ModelContext

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


@dataclass(frozen=True)
class CongruenceInvariant:
    perp_eigs: np.ndarray  # ascending eigenvalues of the perpendicular Gram
    tangential_rank: int
    tangential_degenerate: bool


@dataclass(frozen=True)
class TopologyType:
    kind: str  # "SPHERE", "EUCLIDEAN" or "PRODUCT"
    m: int  # submanifold dimension
    d: int = 0  # Euclidean factor dimension (PRODUCT only)

    def label(self) -> str:
        if self.kind == "SPHERE":
            return f"S^{self.m}"
        if self.kind == "EUCLIDEAN":
            return f"R^{self.m}"
        return f"S^{self.m - self.d} x R^{self.d}"


@dataclass(frozen=True)
class UmbilicalSpec:
    """At most one sphere plus pairwise-orthogonal hyperplanes, sphere first."""

    generators: tuple
    ctx: ModelContext

    @property
    def codim(self) -> int:
        return len(self.generators)

    @property
    def sphere(self) -> Sphere | None:
        g = self.generators[0]
        return g if isinstance(g, Sphere) else None

    @property
    def hyperplanes(self) -> tuple:
        return tuple(g for g in self.generators if isinstance(g, Hyperplane))


def make_spec(ctx: ModelContext, objects, tol: float = DEFAULT_TOL) -> UmbilicalSpec:
    """Validate and normalize a generator list into an UmbilicalSpec."""
    objects = list(objects)
    if not objects:
        raise MalformedSpec("need at least one generator")
    spheres = [o for o in objects if isinstance(o, Sphere)]
    planes = [o for o in objects if isinstance(o, Hyperplane)]
    if len(spheres) + len(planes) != len(objects):
        raise MalformedSpec("generators must be spheres or hyperplanes")
    if len(spheres) > 1:
        raise MalformedSpec("at most one sphere generator is allowed")
    zs = [encode(ctx, o) for o in objects]
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if abs(lorentz.minkowski_dot(zs[i], zs[j])) > max(tol, 1e-8) * 10:
                raise MalformedSpec(
                    "generators must intersect orthogonally "
                    "(encoded vectors must be Lorentz orthogonal)"
                )

    def plane_key(h: Hyperplane):
        _, np_ = ctx.euclid_split(h.normal)
        return (-float(np.linalg.norm(np_)), tuple(h.normal))

    planes.sort(key=plane_key)
    return UmbilicalSpec(generators=tuple(spheres + planes), ctx=ctx)


def subspace_of(ctx: ModelContext, generators, tol: float = DEFAULT_TOL) -> SpacelikeSubspace:
    """Orthonormalized span of the encoded generator vectors."""
    gens = list(generators)
    zs = np.array([encode(ctx, o) for o in gens])
    s = np.linalg.svd(zs, compute_uv=False)
    if s[-1] <= max(tol, 1e-10) * max(1.0, s[0]):
        raise DependentGenerators("generators encode to dependent vectors")
    basis = lorentz.orthonormalize_spacelike(zs, tol)
    return SpacelikeSubspace(basis=basis, ctx=ctx)


def is_substantial(ctx: ModelContext, V: SpacelikeSubspace, tol: float = DEFAULT_TOL) -> bool:
    """True iff V meets neither W1 nor W2 (no totally geodesic reduction)."""
    d1 = model.intersection_dim(V.basis, ctx.w1_coords, tol)
    d2 = model.intersection_dim(V.basis, ctx.w2_coords, tol)
    return d1 == 0 and d2 == 0


def max_substantial_codim(n: int, k: int) -> int:
    if not 1 <= k <= n:
        raise DimMismatch("need 1 <= k <= n")
    return min(k + 1, n - k + 2)


def _perp_gram(V: SpacelikeSubspace) -> np.ndarray:
    B2 = V.basis[:, list(V.ctx.w2_coords)]
    G = B2 @ B2.T
    return 0.5 * (G + G.T)


def invariant_of(ctx: ModelContext, V: SpacelikeSubspace, tol: float = DEFAULT_TOL) -> CongruenceInvariant:
    """Perpendicular-Gram spectrum plus tangential rank/degeneracy flags."""
    p = V.dim
    perp_eigs = np.sort(np.linalg.eigvalsh(_perp_gram(V)))
    Bt = V.basis[:, list(ctx.w1_coords)]
    s = np.linalg.svd(Bt, compute_uv=False)
    smax = s[0] if len(s) and s[0] > 0 else 1.0
    vec_rank = int(np.sum(s > tol * max(1.0, smax)))
    gram_t_eigs = 1.0 - perp_eigs  # <xi_i^T, xi_j^T> = delta_ij - <xi_i^perp, xi_j^perp>
    gram_rank = int(np.sum(np.abs(gram_t_eigs) > EIG_TOL))
    degenerate = vec_rank == p and gram_rank < p
    return CongruenceInvariant(
        perp_eigs=perp_eigs, tangential_rank=vec_rank, tangential_degenerate=degenerate
    )


def are_congruent(
    ctx: ModelContext,
    V: SpacelikeSubspace,
    W: SpacelikeSubspace,
    tol: float = EIG_TOL,
) -> bool:
    """Spectral congruence decision for substantial subspaces."""
    if V.dim != W.dim:
        raise DimMismatch("subspaces have different dimensions")
    if not is_substantial(ctx, V) or not is_substantial(ctx, W):
        raise NotSubstantial(
            "congruence is decided only for substantial submanifolds; "
            "non-substantial ones reduce to totally geodesic factors"
        )
    a = invariant_of(ctx, V).perp_eigs
    b = invariant_of(ctx, W).perp_eigs
    return bool(np.abs(a - b).max() <= tol)


def build_block_isometry(
    ctx: ModelContext,
    V: SpacelikeSubspace,
    W: SpacelikeSubspace,
    tol: float = EIG_TOL,
) -> np.ndarray:
    """Block isometry T with T(V) = W, built from matched Gram eigenframes."""
    if not are_congruent(ctx, V, W, tol):
        raise NotCongruent("subspaces have different congruence invariants")
    p = V.dim
    Ga = np.eye(p) - _perp_gram(V)
    Gb = np.eye(p) - _perp_gram(W)
    _, Qa = np.linalg.eigh(Ga)
    _, Qb = np.linalg.eigh(Gb)
    A = Qa @ Qb.T  # orthogonal with Ga = A Gb A'

    dim = ctx.dim
    sv = [model.split(ctx, V.basis[j]) for j in range(p)]
    sw = [model.split(ctx, W.basis[i]) for i in range(p)]
    pairs_t = []
    pairs_p = []
    for j in range(p):
        bar_t = sum(A[i, j] * sw[i].tangential for i in range(p))
        bar_p = sum(A[i, j] * sw[i].perpendicular for i in range(p))
        pairs_t.append((sv[j].tangential, bar_t))
        pairs_p.append((sv[j].perpendicular, bar_p))
    T1 = lorentz.extend_isometry(pairs_t, ctx.w1_coords, dim, DEFAULT_TOL)
    T2 = lorentz.extend_isometry(pairs_p, ctx.w2_coords, dim, DEFAULT_TOL)
    T = np.eye(dim)
    w1 = list(ctx.w1_coords)
    w2 = list(ctx.w2_coords)
    T[np.ix_(w1, w1)] = T1
    T[np.ix_(w2, w2)] = T2
    return T


def subspace_distance(V: SpacelikeSubspace, W: SpacelikeSubspace, T=None) -> float:
    """Max principal-angle sine between T(V) (or V) and W."""
    A = V.basis if T is None else V.basis @ np.asarray(T, dtype=float).T
    B = W.basis
    Qa, _ = np.linalg.qr(A.T)
    Qb, _ = np.linalg.qr(B.T)
    # component of T(V) orthogonal to W; its spectral norm is sin of the
    # largest principal angle, computed without the 1 - cos^2 cancellation
    R = Qa - Qb @ (Qb.T @ Qa)
    s = np.linalg.svd(R, compute_uv=False)
    return float(s[0]) if len(s) else 0.0


# ---------------------------------------------------------------------------
# Closed-form Euclidean criteria
# ---------------------------------------------------------------------------


def _hypersurface_data(ctx: ModelContext, obj: RoundObject):
    if isinstance(obj, Sphere):
        _, xp = ctx.euclid_split(obj.center)
        return "sphere", float(np.linalg.norm(xp)) / obj.radius, None, None
    _, npx = ctx.euclid_split(obj.normal)
    nt, _ = ctx.euclid_split(obj.normal)
    return "plane", float(np.linalg.norm(npx)), float(np.linalg.norm(nt)), obj.offset


def _check_hypersurface_substantial(ctx: ModelContext, obj: RoundObject, tol: float):
    if isinstance(obj, Sphere):
        _, xp = ctx.euclid_split(obj.center)
        if np.linalg.norm(xp) <= tol:
            raise NotSubstantial("hypersphere centered on R^{k-1} is totally geodesic")
    else:
        nt, npx = ctx.euclid_split(obj.normal)
        if np.linalg.norm(npx) <= tol:
            raise NotSubstantial("hyperplane containing the S-factor is totally geodesic")
        if np.linalg.norm(nt) <= tol and abs(obj.offset) <= tol:
            raise NotSubstantial("linear hyperplane with tangential normal zero is totally geodesic")


def congruent_codim1_euclid(
    ctx: ModelContext, a: RoundObject, b: RoundObject, tol: float = EIG_TOL
) -> bool:
    """Closed-form congruence test for umbilical hypersurfaces."""
    _check_hypersurface_substantial(ctx, a, tol)
    _check_hypersurface_substantial(ctx, b, tol)
    kind_a, ratio_a, nt_a, c_a = _hypersurface_data(ctx, a)
    kind_b, ratio_b, nt_b, c_b = _hypersurface_data(ctx, b)
    if abs(ratio_a - ratio_b) > tol:
        return False
    if kind_a == "plane" and kind_b == "plane" and nt_a <= tol:
        # both normals perpendicular: offsets must both vanish or both not
        return (abs(c_a) > tol) == (abs(c_b) > tol)
    return True


def _normalize_affine_pair(ctx: ModelContext, h1: Hyperplane, h2: Hyperplane, tol: float):
    """Rewrite an orthogonal hyperplane pair as (H(N1; c), H(N2; 0)).

    The foot of the perpendicular from the origin to the intersection fixes
    N1 when the distance c is positive; for c = 0 with dependent tangential
    normal parts the basis is rotated so the second tangential part vanishes.
    """
    n1, c1 = np.asarray(h1.normal, dtype=float), h1.offset
    n2, c2 = np.asarray(h2.normal, dtype=float), h2.offset
    if abs(float(np.dot(n1, n2))) > 1e-8:
        raise MalformedSpec("hyperplane generators must be orthogonal")
    q = c1 * n1 + c2 * n2
    c = float(np.linalg.norm(q))
    if c > tol:
        N1 = q / c
        N2 = c2 * n1 - c1 * n2
        N2 = N2 / np.linalg.norm(N2)
        i = int(np.argmax(np.abs(N2)))
        if N2[i] < 0:
            N2 = -N2
        return N1, c, N2
    t1, _ = ctx.euclid_split(n1)
    t2, _ = ctx.euclid_split(n2)
    M = np.vstack([t1, t2])
    s = np.linalg.svd(M, compute_uv=False)
    if s[-1] <= 1e-10 * max(1.0, s[0]):
        # dependent tangential parts: rotate so the second one vanishes
        a = float(np.linalg.norm(t1))
        bnorm = float(np.linalg.norm(t2))
        if a <= tol and bnorm <= tol:
            return n1, 0.0, n2
        d = np.sqrt(a * a + bnorm * bnorm)
        # align the first normal with the tangential direction
        sign = 1.0 if float(np.dot(t1, t2)) >= 0 or a <= tol else -1.0
        cth, sth = a / d, sign * bnorm / d
        N1 = cth * n1 + sth * n2
        N2 = -sth * n1 + cth * n2
        return N1 / np.linalg.norm(N1), 0.0, N2 / np.linalg.norm(N2)
    return n1, 0.0, n2


def _codim2_data(ctx: ModelContext, spec: UmbilicalSpec, tol: float):
    if spec.codim != 2:
        raise MalformedSpec("expected a codimension-2 spec")
    sph = spec.sphere
    planes = spec.hyperplanes
    if sph is not None:
        (h,) = planes
        return ("sphere", sph, h)
    h1, h2 = planes
    N1, c, N2 = _normalize_affine_pair(ctx, h1, h2, tol)
    return ("affine", Hyperplane(normal=N1, offset=c), Hyperplane(normal=N2, offset=0.0))


def congruent_codim2_euclid(
    ctx: ModelContext, a: UmbilicalSpec, b: UmbilicalSpec, tol: float = EIG_TOL
) -> bool:
    """Closed-form congruence test for codimension-2 umbilical submanifolds.

    Implements the trace/determinant systems for the three shape pairings
    (sphere-sphere, sphere-affine, affine-affine) with their case splits on
    vanishing tangential data.
    """
    ka, *ga = _codim2_data(ctx, a, tol)
    kb, *gb = _codim2_data(ctx, b, tol)

    def sphere_quantities(sph: Sphere, h: Hyperplane):
        _, xp = ctx.euclid_split(sph.center)
        nt, npx = ctx.euclid_split(h.normal)
        r = sph.radius
        trace = float(np.dot(xp, xp)) / r**2 + float(np.dot(npx, npx))
        det = (
            float(np.dot(xp, xp)) * float(np.dot(npx, npx))
            - float(np.dot(xp, npx)) ** 2
        ) / r**2
        tz = np.linalg.norm(nt) <= tol and abs(h.offset) <= tol
        return trace, det, tz, float(np.linalg.norm(xp)) / r

    def affine_quantities(h1: Hyperplane, h2: Hyperplane):
        t1, p1 = ctx.euclid_split(h1.normal)
        t2, p2 = ctx.euclid_split(h2.normal)
        trace = float(np.dot(p1, p1) + np.dot(p2, p2))
        det = float(np.dot(p1, p1) * np.dot(p2, p2) - np.dot(p1, p2) ** 2)
        n2t_zero = np.linalg.norm(t2) <= tol
        n1t_zero = np.linalg.norm(t1) <= tol
        return trace, det, n2t_zero, n1t_zero, float(np.linalg.norm(p1)), h1.offset

    if ka == "sphere" and kb == "sphere":
        tra, dea, tza, ratio_a = sphere_quantities(*ga)
        trb, deb, tzb, ratio_b = sphere_quantities(*gb)
        if tza and tzb:
            return abs(ratio_a - ratio_b) <= tol
        if tza != tzb:
            return False
        return abs(tra - trb) <= tol and abs(dea - deb) <= tol

    if ka == "affine" and kb == "affine":
        tra, dea, z2a, z1a, n1pa, ca = affine_quantities(*ga)
        trb, deb, z2b, z1b, n1pb, cb = affine_quantities(*gb)
        if z2a and z2b:
            if abs(n1pa - n1pb) > tol:
                return False
            if z1a:  # and hence z1b, since the perpendicular norms agree
                return (abs(ca) > tol) == (abs(cb) > tol)
            return True
        if z2a != z2b:
            return False
        return abs(tra - trb) <= tol and abs(dea - deb) <= tol

    # mixed sphere/affine pairing
    if ka == "affine":
        ga, gb = gb, ga
    trs, des, tzs, ratio_s = sphere_quantities(*ga)
    tra, dea, z2, z1, n1p, c1 = affine_quantities(*gb)
    if tzs:
        if not z2:
            return False
        if abs(ratio_s - n1p) > tol:
            return False
        if z1:
            return abs(c1) > tol
        return True
    if z2:
        return False
    return abs(trs - tra) <= tol and abs(des - dea) <= tol


# ---------------------------------------------------------------------------
# Canonical representatives
# ---------------------------------------------------------------------------


def canonical_codim1(ctx: ModelContext, lam: float) -> Sphere:
    """The unique hypersphere S(e_{n+1}, 1/sqrt(lam)) with invariant {lam}."""
    if not lam > 0:
        raise NonPositiveInvariant("codimension-1 invariant must be positive")
    center = np.zeros(ctx.n + 1)
    center[ctx.n] = 1.0  # e_{n+1}
    return Sphere(center=center, radius=1.0 / np.sqrt(lam))


def canonical_codim2(
    ctx: ModelContext, invariant, tol: float = EIG_TOL
) -> UmbilicalSpec:
    """Canonical sphere-and-hyperplane pair realizing a feasible invariant.

    ``invariant`` is a CongruenceInvariant or an ascending pair
    (lam_bar, lam_prime) with 0 <= lam_bar <= 1.
    """
    if isinstance(invariant, CongruenceInvariant):
        eigs = np.sort(np.asarray(invariant.perp_eigs, dtype=float))
    else:
        eigs = np.sort(np.asarray(invariant, dtype=float))
    if eigs.shape != (2,):
        raise InfeasibleInvariant("codimension-2 invariant needs two eigenvalues")
    lam_bar, lam_p = float(eigs[0]), float(eigs[1])
    if lam_bar < -tol or lam_bar > 1.0 + tol:
        raise InfeasibleInvariant("smallest eigenvalue must lie in [0, 1]")
    lam_bar = min(max(lam_bar, 0.0), 1.0)
    if lam_p <= tol:
        raise InfeasibleInvariant("largest eigenvalue must be positive")

    n1 = ctx.n + 1
    if ctx.k == 1:
        # S^n x R: families keyed by the same invariant
        x0 = np.zeros(n1)
        x0[n1 - 1] = 1.0
        if lam_bar <= tol:
            if lam_p <= 1.0 + tol:
                raise InfeasibleInvariant("k=1 singular invariant needs lam' > 1")
            r = 1.0 / np.sqrt(lam_p - 1.0)
            return make_spec(ctx, [Sphere(x0, r), Hyperplane(x0, 1.0)])
        if lam_p < 1.0 - tol:
            raise InfeasibleInvariant("k=1 invariant needs lam' >= 1")
        lam_p = max(lam_p, 1.0)
        c = float(np.sqrt(max(0.0, (1.0 - lam_bar) * (lam_p - 1.0) / (lam_bar * lam_p))))
        r = 1.0 / np.sqrt(lam_bar * lam_p)
        Nvec = np.zeros(n1)
        Nvec[n1 - 2] = 1.0
        return make_spec(ctx, [Sphere(x0 + c * Nvec, r), Hyperplane(Nvec, c)])

    if not 2 <= ctx.k <= ctx.n:
        raise WrongContext("codimension-2 canonical forms need 1 <= k <= n")
    p0 = np.zeros(n1)
    p0[n1 - 1] = 1.0  # e_{n+1}, perpendicular
    e_perp = np.zeros(n1)
    e_perp[n1 - 2] = 1.0  # e_n, perpendicular since k <= n
    eta_t = np.zeros(n1)
    eta_t[0] = 1.0  # e_1, tangential since k >= 2

    if lam_bar >= 1.0 - tol:
        if lam_p < 1.0 - tol:
            raise InfeasibleInvariant("lam_bar = 1 requires lam' >= 1")
        r = 1.0 / np.sqrt(lam_p)
        return make_spec(ctx, [Sphere(p0, r), Hyperplane(e_perp, 0.0)])
    if lam_bar <= tol:
        r = 1.0 / np.sqrt(lam_p)
        return make_spec(ctx, [Sphere(p0, r), Hyperplane(eta_t, 0.0)])
    c = float(np.sqrt(1.0 / lam_bar - 1.0))
    r = 1.0 / np.sqrt(lam_p)
    root = np.sqrt(1.0 + c * c)
    x_c = p0 + root * eta_t
    N_c = (e_perp + c * eta_t) / root
    return make_spec(ctx, [Sphere(x_c, r), Hyperplane(N_c, c)])


# ---------------------------------------------------------------------------
# Topology classification
# ---------------------------------------------------------------------------


def classify_topology(
    ctx: ModelContext, spec: UmbilicalSpec, tol: float = DEFAULT_TOL
) -> TopologyType:
    """Diffeomorphism type of the complete submanifold described by the spec."""
    p = spec.codim
    m = ctx.n + 1 - p
    if m < 1:
        raise MalformedSpec("submanifold dimension must be at least 1")
    kk = ctx.k

    planes = spec.hyperplanes
    Mt = np.array([ctx.euclid_split(h.normal)[0][: kk - 1] for h in planes]).reshape(
        len(planes), kk - 1
    )
    cs = np.array([h.offset for h in planes])

    if kk == 1:
        # the removed subspace is the origin
        axis_pt = np.zeros(ctx.n + 1)
        feasible = bool(np.abs(cs).max() <= tol) if len(cs) else True
        d_aff = 0
    else:
        if len(planes):
            y, res, rank, sv = np.linalg.lstsq(Mt, cs, rcond=None)
            feasible = bool(np.linalg.norm(Mt @ y - cs) <= max(tol, 1e-9))
        else:
            y = np.zeros(kk - 1)
            rank = 0
            feasible = True
        d_aff = (kk - 1) - int(rank)
        axis_pt = np.zeros(ctx.n + 1)
        axis_pt[: kk - 1] = y

    sph = spec.sphere
    if sph is None:
        if not feasible:
            return TopologyType(kind="EUCLIDEAN", m=m)
        d = d_aff + 1
        if d - 1 >= m + 1:
            raise MalformedSpec("carrier is contained in the removed subspace")
        return TopologyType(kind="PRODUCT", m=m, d=d)

    if not feasible:
        return TopologyType(kind="SPHERE", m=m)
    x0 = np.asarray(sph.center, dtype=float)
    r = sph.radius
    # foot of the center on the affine slice of R^{k-1} cut by the planes
    x0t = x0[: kk - 1]
    if kk == 1:
        foot = np.zeros(0)
        delta2 = float(np.dot(x0, x0))
    else:
        if len(planes):
            U = _null_basis(Mt, tol)
        else:
            U = np.eye(kk - 1)
        y0 = axis_pt[: kk - 1]
        foot = y0 + U @ (U.T @ (x0t - y0))
        _, xp = ctx.euclid_split(x0)
        delta2 = float(np.dot(foot - x0t, foot - x0t) + np.dot(xp, xp))
    delta = np.sqrt(delta2)
    scale = max(1.0, r)
    if delta > r + tol * scale:
        return TopologyType(kind="SPHERE", m=m)
    if abs(delta - r) <= tol * scale:
        return TopologyType(kind="EUCLIDEAN", m=m)
    if d_aff == 0:
        return TopologyType(kind="SPHERE", m=m)  # slice point strictly inside
    d = d_aff
    if d - 1 >= m + 1:
        raise MalformedSpec("carrier is contained in the removed subspace")
    return TopologyType(kind="PRODUCT", m=m, d=d)


def _null_basis(M: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal columns spanning the null space of M."""
    _, s, vt = np.linalg.svd(M, full_matrices=True)
    smax = s[0] if len(s) and s[0] > 0 else 1.0
    rank = int(np.sum(s > tol * max(1.0, smax)))
    return vt[rank:].T
