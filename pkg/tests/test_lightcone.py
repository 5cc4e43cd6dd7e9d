import numpy as np
import pytest

from umbilic import lightcone, lorentz, sampling
from umbilic.errors import DimensionMismatch, InputError, NotUnitSpacelike, OnAxis
from umbilic.lightcone import (
    Hyperplane,
    Sphere,
    conformal_apply,
    decode,
    default_context,
    encode,
    pi_project,
    psi,
)
from umbilic.lorentz import minkowski_dot


def test_default_context_coords():
    ctx = default_context(3, 2)
    assert ctx.dim == 6
    assert ctx.w1_coords == (0, 1, 5)
    assert ctx.w2_coords == (2, 3, 4)
    ctx = default_context(2, 2)
    assert ctx.w1_coords == (0, 1, 4)
    assert ctx.w2_coords == (2, 3)


def test_default_context_invariants():
    for n, k in ((2, 2), (3, 1), (3, 2), (5, 3), (4, 5)):
        ctx = default_context(n, k)
        assert abs(minkowski_dot(ctx.v, ctx.v)) < 1e-12
        assert abs(minkowski_dot(ctx.w, ctx.w)) < 1e-12
        assert abs(minkowski_dot(ctx.v, ctx.w) - 1.0) < 1e-12
        assert ctx.w[0] < 0
        G = ctx.C.T @ lorentz.eta(ctx.dim) @ ctx.C
        assert np.abs(G - np.eye(n + 1)).max() < 1e-12


def test_default_context_bad_dims():
    with pytest.raises(DimensionMismatch):
        default_context(1, 1)
    with pytest.raises(DimensionMismatch):
        default_context(3, 5)


def test_psi_examples():
    ctx = default_context(3, 2)
    assert np.allclose(psi(ctx, np.zeros(4)), ctx.v)
    assert np.allclose(psi(ctx, [1.0, 0, 0, 0]), [1, 1, 0, 0, 0, 0])
    assert np.allclose(psi(ctx, [1.0, 1.0, 0, 0]), [1.5, 1, 1, 0, 0, -0.5])


def test_psi_is_isometric_embedding():
    ctx = default_context(3, 2)
    rng = np.random.default_rng(7)
    for _ in range(100):
        x = rng.uniform(-5, 5, 4)
        y = rng.uniform(-5, 5, 4)
        d = psi(ctx, x) - psi(ctx, y)
        lhs = minkowski_dot(d, d)
        rhs = float(np.dot(x - y, x - y))
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, rhs)


def test_pi_project():
    ctx = default_context(3, 2)
    x = np.array([0.3, -1.0, 2.0, 0.5])
    assert np.allclose(pi_project(ctx, 2.0 * psi(ctx, x)), psi(ctx, x))
    assert np.allclose(pi_project(ctx, ctx.v + ctx.w), ctx.v + ctx.w)
    with pytest.raises(OnAxis):
        pi_project(ctx, ctx.w)


def test_encode_examples():
    ctx = default_context(3, 2)
    assert np.allclose(encode(ctx, Sphere(np.zeros(4), 1.0)), [0, 0, 0, 0, 0, 1])
    e2 = np.array([0.0, 1.0, 0.0, 0.0])
    assert np.allclose(encode(ctx, Sphere(e2, 1.0)), [0.5, 0, 1, 0, 0, 0.5])
    e1 = np.array([1.0, 0.0, 0.0, 0.0])
    assert np.allclose(encode(ctx, Hyperplane(e1, 3.0)), [3, 1, 0, 0, 0, -3])


def test_encode_unit_spacelike_and_membership():
    ctx = default_context(3, 2)
    rng = np.random.default_rng(8)
    for _ in range(200):
        obj = sampling.random_substantial_hypersurface(rng, ctx)
        z = encode(ctx, obj)
        assert abs(minkowski_dot(z, z) - 1.0) < 1e-9
        if isinstance(obj, Sphere):
            assert abs(minkowski_dot(z, ctx.w) - 1.0 / obj.radius) < 1e-9
            d = rng.standard_normal(4)
            x = obj.center + obj.radius * d / np.linalg.norm(d)
        else:
            assert abs(minkowski_dot(z, ctx.w)) < 1e-9
            d = rng.standard_normal(4)
            d -= float(np.dot(d, obj.normal)) * obj.normal
            x = obj.offset * obj.normal + d
        assert abs(minkowski_dot(psi(ctx, x), z)) < 1e-8


def test_decode_examples():
    ctx = default_context(3, 2)
    z = np.array([0.0, 0, 0, 0, 0, 1.0])
    out = decode(ctx, z)
    assert isinstance(out, Sphere)
    assert np.allclose(out.center, 0.0) and abs(out.radius - 1.0) < 1e-12
    out = decode(ctx, np.array([3.0, 1, 0, 0, 0, -3.0]))
    assert isinstance(out, Hyperplane)
    assert np.allclose(out.normal, [1, 0, 0, 0]) and abs(out.offset - 3.0) < 1e-12
    with pytest.raises(NotUnitSpacelike):
        decode(ctx, 2.0 * z)


def test_encode_decode_roundtrip():
    ctx = default_context(4, 2)
    rng = np.random.default_rng(9)
    for _ in range(500):
        obj = sampling.random_substantial_hypersurface(rng, ctx)
        back = decode(ctx, encode(ctx, obj))
        assert type(back) is type(obj)
        if isinstance(obj, Sphere):
            assert np.abs(back.center - obj.center).max() < 1e-9
            assert abs(back.radius - obj.radius) < 1e-9
        else:
            assert np.abs(back.normal - obj.normal).max() < 1e-9
            assert abs(back.offset - obj.offset) < 1e-9


def test_decode_handles_orientation_sign():
    ctx = default_context(3, 2)
    obj = Sphere(np.array([0.5, 1.0, 0.0, 2.0]), 1.5)
    z = encode(ctx, obj)
    back = decode(ctx, -z)
    assert np.abs(back.center - obj.center).max() < 1e-9
    assert abs(back.radius - obj.radius) < 1e-9


def test_sphere_validation():
    with pytest.raises(InputError):
        Sphere(np.zeros(4), -1.0)
    with pytest.raises(InputError):
        Hyperplane(np.array([1.0, 1.0, 0.0, 0.0]), 0.0)


def test_orthogonal_intersection_criterion():
    ctx = default_context(3, 2)
    # a sphere and a hyperplane through its center meet orthogonally
    normal = np.array([0.0, 1.0, 0.0, 0.0])
    sph = Sphere(np.array([1.0, 2.0, 0.0, 1.0]), 1.3)
    plane = Hyperplane(normal, 2.0)
    assert abs(minkowski_dot(encode(ctx, sph), encode(ctx, plane))) < 1e-12
    off_plane = Hyperplane(normal, 0.5)
    assert abs(minkowski_dot(encode(ctx, sph), encode(ctx, off_plane))) > 0.1


def test_conformal_apply_identity_and_rotation():
    ctx = default_context(3, 2)
    x = np.array([0.2, 1.0, -0.5, 0.7])
    assert np.allclose(conformal_apply(ctx, np.eye(6), x), x)
    A = np.eye(4)
    th = 0.4
    A[1, 1] = A[2, 2] = np.cos(th)
    A[1, 2], A[2, 1] = -np.sin(th), np.sin(th)
    T = np.eye(6)
    T[1:5, 1:5] = ctx.C[1:5] @ A @ ctx.C[1:5].T
    assert np.allclose(conformal_apply(ctx, T, x), A @ x)


def test_conformal_apply_unit_inversion():
    ctx = default_context(3, 2)
    z = encode(ctx, Sphere(np.zeros(4), 1.0))
    R = np.eye(6) - 2.0 * np.outer(z, lorentz.eta(6) @ z)
    rng = np.random.default_rng(10)
    for _ in range(100):
        x = rng.uniform(-2, 2, 4)
        if np.linalg.norm(x) < 0.1:
            continue
        y = conformal_apply(ctx, R, x)
        assert np.abs(y - x / np.dot(x, x)).max() < 1e-9


def test_conformal_apply_rejects_non_lorentz():
    ctx = default_context(3, 2)
    with pytest.raises(InputError):
        conformal_apply(ctx, np.diag([1.0, 1, 1, 1, 1, 2.0]), np.ones(4))
