"""Dense linear algebra on the Lorentz space L^d with signature (1, d-1).

Vectors are plain 1-D numpy arrays; coordinate 0 is the timelike one, so the
inner product is ``<u, v> = -u[0]*v[0] + u[1]*v[1] + ... + u[d-1]*v[d-1]``.
All matrices arising here are tiny (at most the ambient dimension on a side),
so robustness is preferred over asymptotics throughout.
"""
from __future__ import annotations

import enum

import numpy as np

from .errors import (
    DimensionMismatch,
    GramMismatch,
    HypothesisViolation,
    NonSymmetric,
    NotSpacelike,
)

DEFAULT_TOL = 1e-9


def eta(dim: int) -> np.ndarray:
    """Matrix of the Lorentz form, diag(-1, 1, ..., 1)."""
    m = np.eye(dim)
    m[0, 0] = -1.0
    return m


def minkowski_dot(u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionMismatch(f"incompatible shapes {u.shape} and {v.shape}")
    return float(-u[0] * v[0] + np.dot(u[1:], v[1:]))


class CausalClass(enum.Enum):
    SPACELIKE = "SPACELIKE"
    TIMELIKE = "TIMELIKE"
    LIGHTLIKE = "LIGHTLIKE"
    ZERO = "ZERO"


def causal_type(u, tol: float = DEFAULT_TOL) -> CausalClass:
    """Classify a vector by the sign of its Lorentz square.

    The square is compared against ``tol * max(1, |u|^2)`` where ``|u|`` is the
    Euclidean norm, so the classification is scale-aware.
    """
    u = np.asarray(u, dtype=float)
    nrm2 = float(np.dot(u, u))
    if np.sqrt(nrm2) <= tol:
        return CausalClass.ZERO
    s = minkowski_dot(u, u)
    thr = tol * max(1.0, nrm2)
    if abs(s) <= thr:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if s > 0 else CausalClass.TIMELIKE


def gram(vs) -> np.ndarray:
    """Gram matrix of a sequence of vectors under the Lorentz form."""
    B = np.asarray(vs, dtype=float)
    if B.ndim != 2 or B.shape[0] < 1:
        raise DimensionMismatch("need a nonempty sequence of equal-length vectors")
    G = B @ eta(B.shape[1]) @ B.T
    return 0.5 * (G + G.T)


def sym_eigs(G, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Ascending eigenvalues of a symmetric matrix, multiplicities repeated."""
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise NonSymmetric("matrix is not square")
    scale = max(1.0, float(np.abs(G).max()))
    if np.abs(G - G.T).max() > tol * scale:
        raise NonSymmetric("matrix is not symmetric within tolerance")
    return np.sort(np.linalg.eigvalsh(0.5 * (G + G.T)))


def orthonormalize_spacelike(vs, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Gram-Schmidt a spacelike frame into a Lorentz-orthonormal one.

    Uses the Cholesky factor of the Gram matrix, which reproduces classical
    Gram-Schmidt (first vector rescaled, later ones corrected against earlier
    ones) while keeping the span.  Raises ``NotSpacelike`` if the span's Gram
    has an eigenvalue below tolerance, i.e. the span is not positive definite.
    """
    B = np.asarray(vs, dtype=float)
    G = gram(B)
    scale = max(1.0, float(np.abs(G).max()))
    if np.linalg.eigvalsh(G).min() <= tol * scale:
        raise NotSpacelike("span is not spacelike (Gram not positive definite)")
    L = np.linalg.cholesky(G)
    return np.linalg.solve(L, B)


def is_lorentz_orthogonal(T, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``T' eta T = eta`` within ``tol`` in the max norm."""
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise DimensionMismatch("expected a square matrix")
    e = eta(T.shape[0])
    return bool(np.abs(T.T @ e @ T - e).max() <= tol)


def embed_on_coords(dim: int, coords, M) -> np.ndarray:
    """Extend a map on a coordinate subspace to the identity elsewhere."""
    coords = list(coords)
    M = np.asarray(M, dtype=float)
    T = np.eye(dim)
    T[np.ix_(coords, coords)] = M
    return T


def _sub_eta(coords) -> np.ndarray:
    coords = list(coords)
    e = np.eye(len(coords))
    for i, c in enumerate(coords):
        if c == 0:
            e[i, i] = -1.0
    return e


def _fix_sign(v: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(v)))
    return -v if v[i] < 0 else v


def _complete_frame(units, signs, lightlike, e, tol):
    """Complete mapped directions to a full pseudo-orthonormal frame.

    ``units`` are unit vectors with Lorentz squares ``signs`` (+-1), possibly
    accompanied by one nonzero ``lightlike`` vector when the mapped span is
    degenerate.  Returns (frame columns, pattern matrix) where the pattern is
    the Gram of the frame; it depends only on signs and degeneracy, so frames
    built for two Gram-matched sides can be matched column by column.
    """
    d = e.shape[0]
    cols = list(units)
    pattern_diag = list(signs)

    def complement(of):
        if not of:
            return np.eye(d)
        A = np.asarray(of, dtype=float) @ e  # rows: constraints <x, v> = 0
        _, s, vt = np.linalg.svd(A)
        rank = int(np.sum(s > tol * max(1.0, s[0] if len(s) else 1.0)))
        return vt[rank:].T  # columns span the complement

    if lightlike is not None:
        C = complement(units)  # contains the lightlike vector; Lorentzian
        M = C.T @ e @ C
        lam, Q = np.linalg.eigh(0.5 * (M + M.T))
        if lam[0] >= -tol:
            raise HypothesisViolation("degenerate span without timelike complement")
        t = C @ Q[:, 0] / np.sqrt(-lam[0])  # unit timelike
        tl = float(t @ e @ lightlike)
        if abs(tl) <= tol:
            raise HypothesisViolation("lightlike direction orthogonal to complement")
        if tl > 0:
            t = -t
            tl = -tl
        partner = (t + lightlike / (2.0 * tl)) / tl  # Witt partner: <p,p>=0, <p,l>=1
        cols = list(units) + [lightlike, partner]
    rest = complement(cols)

    frame = np.zeros((d, 0))
    if cols:
        frame = np.column_stack(cols)

    if rest.shape[1]:
        M = rest.T @ e @ rest
        lam, Q = np.linalg.eigh(0.5 * (M + M.T))
        extra = []
        extra_signs = []
        for i in range(len(lam)):
            if abs(lam[i]) <= tol:
                raise HypothesisViolation("degenerate complement in frame completion")
            v = _fix_sign(rest @ Q[:, i] / np.sqrt(abs(lam[i])))
            extra.append(v)
            extra_signs.append(1.0 if lam[i] > 0 else -1.0)
        frame = np.column_stack([frame] + extra) if frame.shape[1] else np.column_stack(extra)
    else:
        extra_signs = []

    m = frame.shape[1]
    pattern = np.zeros((m, m))
    idx = 0
    for s in pattern_diag:
        pattern[idx, idx] = s
        idx += 1
    if lightlike is not None:
        pattern[idx, idx + 1] = 1.0
        pattern[idx + 1, idx] = 1.0
        idx += 2
    for s in extra_signs:
        pattern[idx, idx] = s
        idx += 1
    return frame, pattern


def extend_isometry(pairs, coords, dim: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Linear isometry of a coordinate subspace mapping a_i to b_i.

    ``pairs`` is a sequence of (a_i, b_i) with equal Gram matrices; ``coords``
    names the coordinate subspace of the ambient space ``L^dim`` on which the
    map lives (the restriction of the Lorentz form to those coordinates is the
    relevant inner product).  Returns the map as a matrix on the subspace
    coordinates, built by diagonalizing the common Gram, matching eigen-images
    and completing both partial frames to pseudo-orthonormal bases; a Witt
    partner supplies the completion in the degenerate case.
    """
    coords = list(coords)
    d = len(coords)
    e = _sub_eta(coords)
    a_list = [np.asarray(a, dtype=float)[coords] if len(np.asarray(a)) == dim else np.asarray(a, dtype=float) for a, _ in pairs]
    b_list = [np.asarray(b, dtype=float)[coords] if len(np.asarray(b)) == dim else np.asarray(b, dtype=float) for _, b in pairs]
    m = len(a_list)
    A = np.column_stack(a_list)
    B = np.column_stack(b_list)
    Ga = A.T @ e @ A
    Gb = B.T @ e @ B
    scale = max(1.0, float(np.abs(Ga).max()), float(np.abs(Gb).max()))
    if np.abs(Ga - Gb).max() > tol * scale * 100:
        raise GramMismatch("Gram matrices of the two frames differ")

    G = 0.25 * (Ga + Ga.T + Gb + Gb.T)
    lam, Q = np.linalg.eigh(G)

    units_a, units_b, signs = [], [], []
    light_a = light_b = None
    for i in range(m):
        alpha = A @ Q[:, i]
        beta = B @ Q[:, i]
        na = float(np.linalg.norm(alpha))
        nb = float(np.linalg.norm(beta))
        if abs(lam[i]) > tol * scale:
            units_a.append(alpha / np.sqrt(abs(lam[i])))
            units_b.append(beta / np.sqrt(abs(lam[i])))
            signs.append(1.0 if lam[i] > 0 else -1.0)
        else:
            if na <= tol * 10 and nb <= tol * 10:
                continue  # genuinely dependent input vectors on both sides
            if na <= tol * 10 or nb <= tol * 10:
                raise HypothesisViolation(
                    "one span is degenerate, the other is not"
                )
            if light_a is not None:
                raise HypothesisViolation("more than one null direction in span")
            light_a, light_b = alpha, beta

    Fa, Pa = _complete_frame(units_a, signs, light_a, e, tol)
    Fb, Pb = _complete_frame(units_b, signs, light_b, e, tol)
    if Fa.shape != (d, d) or Fb.shape != (d, d) or np.abs(Pa - Pb).max() > tol:
        raise HypothesisViolation("frame completion signature mismatch")
    T = Fb @ np.linalg.solve(Fa, np.eye(d))
    if np.abs(T.T @ e @ T - e).max() > max(tol * 1e3, 1e-8):
        raise HypothesisViolation("constructed map failed the isometry residual")
    return T
