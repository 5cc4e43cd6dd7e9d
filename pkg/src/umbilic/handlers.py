"""Command implementations shared by the HTTP service and the CLI.

Each handler takes a validated request model and returns a response model;
domain and precondition errors from the core package propagate to the caller,
which maps them to HTTP status codes or process exit codes.
"""
from __future__ import annotations

import numpy as np

from . import congruence, model, rotational, selftest
from .errors import UmbilicError
from .lightcone import Hyperplane, ModelContext, Sphere, default_context
from .lorentz import DEFAULT_TOL, eta
from .schemas import (
    ClassifyRequest,
    ClassifyResponse,
    CongruentRequest,
    CongruentResponse,
    EncodeRequest,
    EncodeResponse,
    HyperplaneModel,
    InvariantModel,
    OrbitModel,
    ProfileRequest,
    ProfileResponse,
    ProfileRow,
    SelftestRequest,
    SelftestResponse,
    SphereModel,
    TopologyModel,
    WitnessModel,
)


def _context(req_ctx) -> ModelContext:
    return default_context(req_ctx.n, req_ctx.k)


def _to_object(m):
    if isinstance(m, SphereModel):
        return Sphere(center=np.asarray(m.center, dtype=float), radius=m.radius)
    return Hyperplane(normal=np.asarray(m.normal, dtype=float), offset=m.offset)


def _to_model(obj):
    if isinstance(obj, Sphere):
        return SphereModel(center=[float(c) for c in obj.center], radius=float(obj.radius))
    return HyperplaneModel(normal=[float(c) for c in obj.normal], offset=float(obj.offset))


def _tol(req) -> float:
    return req.tol if req.tol is not None else DEFAULT_TOL


def _invariant_model(inv: congruence.CongruenceInvariant) -> InvariantModel:
    return InvariantModel(
        perp_eigs=[float(e) for e in inv.perp_eigs],
        tangential_rank=inv.tangential_rank,
        tangential_degenerate=inv.tangential_degenerate,
    )


def handle_encode(req: EncodeRequest) -> EncodeResponse:
    ctx = _context(req.context)
    tol = _tol(req)
    spec = congruence.make_spec(ctx, [_to_object(o) for o in req.objects], tol)
    V = congruence.subspace_of(ctx, spec.generators, tol)
    e = eta(ctx.dim)
    G = V.basis @ e @ V.basis.T
    residual = float(np.abs(G - np.eye(V.dim)).max())
    return EncodeResponse(
        basis=[[float(c) for c in row] for row in V.basis],
        gram=[[float(c) for c in row] for row in G],
        gram_residual=residual,
    )


def handle_congruent(req: CongruentRequest) -> CongruentResponse:
    ctx = _context(req.context)
    tol = _tol(req)
    spec_a = congruence.make_spec(ctx, [_to_object(o) for o in req.a], tol)
    spec_b = congruence.make_spec(ctx, [_to_object(o) for o in req.b], tol)
    Va = congruence.subspace_of(ctx, spec_a.generators, tol)
    Vb = congruence.subspace_of(ctx, spec_b.generators, tol)
    eig_tol = req.tol if req.tol is not None else congruence.EIG_TOL
    verdict = congruence.are_congruent(ctx, Va, Vb, eig_tol)
    witness = None
    if req.witness and verdict:
        T = congruence.build_block_isometry(ctx, Va, Vb, eig_tol)
        e = eta(ctx.dim)
        w1 = list(ctx.w1_coords)
        w2 = list(ctx.w2_coords)
        block_res = max(
            float(np.abs(T[np.ix_(w1, w2)]).max()), float(np.abs(T[np.ix_(w2, w1)]).max())
        )
        witness = WitnessModel(
            matrix=[[float(c) for c in row] for row in T],
            lorentz_residual=float(np.abs(T.T @ e @ T - e).max()),
            block_residual=block_res,
            subspace_distance=congruence.subspace_distance(Va, Vb, T),
        )
    return CongruentResponse(
        congruent=verdict,
        invariant_a=_invariant_model(congruence.invariant_of(ctx, Va, tol)),
        invariant_b=_invariant_model(congruence.invariant_of(ctx, Vb, tol)),
        witness=witness,
    )


def handle_classify(req: ClassifyRequest) -> ClassifyResponse:
    ctx = _context(req.context)
    tol = _tol(req)
    spec = congruence.make_spec(ctx, [_to_object(o) for o in req.objects], tol)
    V = congruence.subspace_of(ctx, spec.generators, tol)
    substantial = congruence.is_substantial(ctx, V, tol)
    inv = congruence.invariant_of(ctx, V, tol)
    topo = congruence.classify_topology(ctx, spec, tol)
    orbit = None
    canonical = None
    if substantial:
        o = rotational.orbit_structure(ctx, V, tol)
        orbit = OrbitModel(
            acting_block=o.acting_block,
            cohomogeneity=o.cohomogeneity,
            orbit_dim_w1=o.orbit_dim_w1,
            orbit_dim_w2=o.orbit_dim_w2,
        )
        try:
            if V.dim == 1:
                canon = congruence.make_spec(
                    ctx, [congruence.canonical_codim1(ctx, float(inv.perp_eigs[0]))], tol
                )
            elif V.dim == 2:
                canon = congruence.canonical_codim2(ctx, inv)
            else:
                canon = None
        except UmbilicError:
            canon = None
        if canon is not None:
            canonical = [_to_model(g) for g in canon.generators]
    return ClassifyResponse(
        substantial=substantial,
        codim=V.dim,
        invariant=_invariant_model(inv),
        topology=TopologyModel(kind=topo.kind, m=topo.m, d=topo.d, label=topo.label()),
        orbit=orbit,
        canonical=canonical,
    )


def handle_profile(req: ProfileRequest) -> ProfileResponse:
    ctx = _context(req.context)
    tol = _tol(req)
    spec = congruence.make_spec(ctx, [_to_object(o) for o in req.objects], tol)
    canon = rotational.canonical_profile_spec(ctx, spec, tol)
    case = rotational.profile_case(ctx, canon, tol)
    rows = rotational.profile_curve(ctx, spec, req.samples, tol)
    return ProfileResponse(
        case=case.tag,
        theta_min=case.theta_min,
        theta_max=case.theta_max,
        rows=[
            ProfileRow(
                theta=r.theta,
                x=[float(c) for c in r.x],
                theta_x=[float(c) for c in r.theta_x],
                slice_angle=r.slice_angle,
                membership_residual=r.membership_residual,
            )
            for r in rows
        ],
    )


def handle_selftest(req: SelftestRequest) -> SelftestResponse:
    report = selftest.run_selftest(seed=req.seed, perturb=req.perturb)
    return SelftestResponse(**report)
