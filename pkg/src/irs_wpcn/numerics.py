"""Dense numerical primitives: Hermitian eigen-decomposition, the ellipsoid
method for non-smooth concave maximization over the nonnegative orthant, and
golden-section line search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


# ---------------------------------------------------------------------------
# Hermitian eigendecomposition


@dataclass
class EigenResult:
    eigenvalues: np.ndarray   # real, sorted descending
    eigenvectors: np.ndarray  # orthonormal columns, eigenvectors[:, k] <-> [k]


def hermitian_eig(A: np.ndarray) -> EigenResult:
    """Full spectrum of a Hermitian matrix, eigenvalues descending.

    The input is symmetrized; a deterministic sign convention makes the
    first significant component of every eigenvector real-positive so that
    repeated calls on equal inputs are bit-identical.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.all(np.isfinite(A.view(float))):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.max(np.abs(A - A.conj().T)) > 1e-10 * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    H = 0.5 * (A + A.conj().T)
    vals, vecs = np.linalg.eigh(H)
    vals = vals[::-1]
    vecs = vecs[:, ::-1]
    # phase convention: first component above threshold made real-positive
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        mags = np.abs(col)
        idx = np.argmax(mags > 1e-8 * mags.max()) if mags.max() > 0 else 0
        ref = col[idx]
        if np.abs(ref) > 0:
            vecs[:, k] = col * (ref.conj() / np.abs(ref))
    return EigenResult(eigenvalues=vals, eigenvectors=vecs)


def top_eigpair(A: np.ndarray) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and its unit eigenvector."""
    res = hermitian_eig(A)
    return float(res.eigenvalues[0]), res.eigenvectors[:, 0]


# ---------------------------------------------------------------------------
# ellipsoid method


@dataclass
class Ellipsoid:
    """Search ellipsoid {x : (x-c)^T P^{-1} (x-c) <= 1} with shape matrix P."""

    center: np.ndarray
    shape: np.ndarray

    def __post_init__(self):
        self.center = np.asarray(self.center, dtype=float)
        self.shape = np.asarray(self.shape, dtype=float)
        np.linalg.cholesky(self.shape)  # PD check

    @classmethod
    def ball(cls, center: np.ndarray, radius: float) -> "Ellipsoid":
        center = np.asarray(center, dtype=float)
        return cls(center, radius ** 2 * np.eye(center.size))

    def cut(self, g: np.ndarray) -> "Ellipsoid":
        """Central cut: keep the half {x : g^T (x - center) <= 0}."""
        g = np.asarray(g, dtype=float)
        n = self.center.size
        pg = self.shape @ g
        gamma = float(np.sqrt(g @ pg))
        if not np.isfinite(gamma) or gamma <= 0:
            raise ValueError("cut direction has no extent in the ellipsoid")
        d = pg / gamma
        if n == 1:
            # degenerate case: interval bisection
            return Ellipsoid(self.center - d / 2.0, self.shape / 4.0)
        center = self.center - d / (n + 1.0)
        shape = (n * n / (n * n - 1.0)) * (
            self.shape - (2.0 / (n + 1.0)) * np.outer(d, d)
        )
        shape = 0.5 * (shape + shape.T)
        return Ellipsoid(center, shape)

    def certificate(self, g: np.ndarray) -> float:
        """sqrt(g^T P g): bounds the objective variation over the ellipsoid."""
        g = np.asarray(g, dtype=float)
        return float(np.sqrt(max(g @ (self.shape @ g), 0.0)))


@dataclass
class EllipsoidResult:
    x: np.ndarray
    value: float
    converged: bool
    iterations: int


def ellipsoid_maximize(oracle: Callable, dim: int, init_center: np.ndarray,
                       init_radius: float, tol: float,
                       max_iters: int) -> EllipsoidResult:
    """Maximize a concave function over x >= 0 with the ellipsoid method.

    ``oracle(x)`` returns ``(value, g)`` where ``g`` is a subgradient of the
    *negated* objective (the direction to cut away). Nonnegativity is kept
    with feasibility cuts instead of projection, so the classical volume
    guarantee applies at every step. Returns the best feasible point seen;
    ``converged`` is False when the iteration cap ran out first.
    """
    ell = Ellipsoid.ball(np.asarray(init_center, dtype=float), init_radius)
    best_x = None
    best_val = -np.inf
    for it in range(max_iters):
        c = ell.center
        neg = np.where(c < 0)[0]
        if neg.size:
            g = np.zeros(dim)
            g[neg[np.argmin(c[neg])]] = -1.0  # cut the most violated bound
            ell = ell.cut(g)
            continue
        val, g = oracle(c)
        if val > best_val:
            best_val = float(val)
            best_x = c.copy()
        if ell.certificate(g) <= tol:
            return EllipsoidResult(best_x, best_val, True, it + 1)
        ell = ell.cut(g)
    if best_x is None:  # never reached the feasible orthant
        best_x = np.maximum(ell.center, 0.0)
        best_val = float(oracle(best_x)[0])
    return EllipsoidResult(best_x, best_val, False, max_iters)


# ---------------------------------------------------------------------------
# golden-section search

_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_section(f: Callable[[float], float], lo: float, hi: float,
                   tol: float) -> tuple[float, float]:
    """Maximize f over [lo, hi] by golden-section search.

    Shrinks the bracket to width <= tol and returns the best point actually
    evaluated (f is never called outside [lo, hi]). Assumes unimodality;
    callers that cannot guarantee it should pre-scan on a grid first.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    evals: list[tuple[float, float]] = []

    def probe(t: float) -> float:
        y = f(t)
        if not np.isfinite(y):
            raise ValueError(f"objective returned non-finite value at t={t}")
        evals.append((t, y))
        return y

    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    yc, yd = probe(c), probe(d)
    while b - a > tol:
        if yc >= yd:
            b, d, yd = d, c, yc
            c = b - _INV_PHI * (b - a)
            yc = probe(c)
        else:
            a, c, yc = c, d, yd
            d = a + _INV_PHI * (b - a)
            yd = probe(d)
    t_best, f_best = max(evals, key=lambda p: p[1])
    return t_best, f_best
