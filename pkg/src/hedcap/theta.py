"""Lovasz theta by a dense primal-dual interior-point method, with certificates.

For a graph ``H`` on ``n`` vertices the primal is

    maximize <J, X>  s.t.  tr X = 1,  X_ij = 0 for ij in E(H),  X psd

and the dual is ``minimize y0`` s.t. ``y0 I + sum_e y_e A_e - J`` psd, with
``A_e = e_i e_j^T + e_j e_i^T``.  The solver uses the HKM search direction
with Mehrotra predictor-corrector steps.

Returned bounds do not trust the iterates: the lower bound is the objective
of a repaired, exactly feasible primal matrix and the upper bound is the
largest eigenvalue of ``B = J - sum_e y_e A_e``, which satisfies
``<J, X> = <B, X> <= lambda_max(B)`` for every feasible ``X``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .graph import Graph, complement

__all__ = [
    "SolverConfig",
    "CertifiedValue",
    "EigenBound",
    "as_symmetric",
    "max_eigenvalue",
    "lovasz_theta",
    "theta_bar",
    "verify_certificate",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverConfig:
    target_gap: float = 1e-5
    eps_psd: float = 1e-8
    max_iterations: int = 200

    def __post_init__(self) -> None:
        if self.target_gap <= 0 or self.eps_psd <= 0 or self.max_iterations <= 0:
            raise ValueError("solver tolerances and iteration limit must be positive")


@dataclass(frozen=True)
class CertifiedValue:
    lower: float
    upper: float
    iterations: int
    status: str  # "converged" | "stalled" | "exact"
    primal: np.ndarray | None = field(default=None, repr=False, compare=False)
    dual: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    @property
    def value(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= x <= self.upper + tol


@dataclass(frozen=True)
class EigenBound:
    value: float  # computed largest eigenvalue
    rayleigh: float  # Rayleigh quotient of the returned eigenvector
    residual: float  # ||M v - rayleigh v|| for unit v
    upper: float  # guaranteed upper bound on lambda_max
    vector: np.ndarray = field(repr=False, compare=False)


def as_symmetric(a, tol: float = 1e-12) -> np.ndarray:
    m = np.array(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if np.abs(m - m.T).max(initial=0.0) > tol * scale:
        raise ValueError("matrix is not symmetric")
    return 0.5 * (m + m.T)


def _eig_error(m: np.ndarray, lam: np.ndarray, vecs: np.ndarray) -> float:
    """Bound on how far true eigenvalues can sit from the computed ones."""
    resid = np.linalg.norm(m @ vecs - vecs * lam)
    ortho = np.linalg.norm(vecs.T @ vecs - np.eye(len(lam)))
    spread = float(np.abs(lam).max(initial=0.0))
    return float(resid + spread * ortho) + 4 * np.finfo(float).eps * max(1.0, spread)


def max_eigenvalue(m) -> EigenBound:
    m = as_symmetric(m)
    n = m.shape[0]
    lam, vecs = np.linalg.eigh(m)
    v = vecs[:, -1]
    rayleigh = float(v @ m @ v / (v @ v))
    residual = float(np.linalg.norm(m @ v - rayleigh * v) / np.linalg.norm(v))
    weyl = float(lam[-1]) + _eig_error(m, lam, vecs)
    off = np.abs(m).sum(axis=1) - np.abs(np.diag(m))
    gershgorin = float((np.diag(m) + off).max()) if n else 0.0
    return EigenBound(float(lam[-1]), rayleigh, residual, min(weyl, gershgorin), v)


def _min_eigenvalue_lower(m: np.ndarray) -> float:
    """A value guaranteed not to exceed lambda_min(m)."""
    lam, vecs = np.linalg.eigh(m)
    return float(lam[0]) - _eig_error(m, lam, vecs)


class _ThetaProblem:
    def __init__(self, h: Graph):
        self.n = h.n
        edges = np.array(h.edges(), dtype=np.intp).reshape(-1, 2)
        self.i = edges[:, 0]
        self.j = edges[:, 1]
        self.m = len(edges) + 1
        self.b = np.zeros(self.m)
        self.b[0] = 1.0

    def op(self, y: np.ndarray) -> np.ndarray:
        """A^T y = y0 I + sum_e y_e A_e."""
        out = np.zeros((self.n, self.n))
        out[self.i, self.j] = y[1:]
        out[self.j, self.i] = y[1:]
        out[np.diag_indices(self.n)] = y[0]
        return out

    def apply(self, x: np.ndarray) -> np.ndarray:
        """A(X) for a possibly non-symmetric X."""
        out = np.empty(self.m)
        out[0] = np.trace(x)
        out[1:] = x[self.i, self.j] + x[self.j, self.i]
        return out

    def schur(self, x: np.ndarray, w: np.ndarray) -> np.ndarray:
        """M_kl = tr(A_k X A_l W)."""
        i, j = self.i, self.j
        m = np.empty((self.m, self.m))
        m[0, 0] = float(np.sum(x * w))
        wx = w @ x
        col = wx[j, i] + wx[i, j]
        m[0, 1:] = col
        m[1:, 0] = col
        block = x[np.ix_(j, i)] * w[np.ix_(j, i)].T
        block += x[np.ix_(j, j)] * w[np.ix_(i, i)]
        block += x[np.ix_(i, i)] * w[np.ix_(j, j)]
        block += x[np.ix_(i, j)] * w[np.ix_(i, j)].T
        m[1:, 1:] = block
        return 0.5 * (m + m.T)


def _max_step(x_chol: np.ndarray, dx: np.ndarray) -> float:
    """Largest alpha with X + alpha dX psd, given a Cholesky factor of X."""
    s = sla.solve_triangular(x_chol, dx, lower=True)
    s = sla.solve_triangular(x_chol, s.T, lower=True)
    lam = np.linalg.eigvalsh(0.5 * (s + s.T))[0]
    return math.inf if lam >= 0 else -1.0 / lam


def _certify_primal(prob: _ThetaProblem, x: np.ndarray) -> tuple[float, np.ndarray]:
    xs = 0.5 * (x + x.T)
    xs[prob.i, prob.j] = 0.0
    xs[prob.j, prob.i] = 0.0
    xs /= np.trace(xs)
    # shifting by cI keeps edge entries zero, unlike eigenvalue clipping
    shift = max(0.0, -_min_eigenvalue_lower(xs))
    if shift:
        xs = (xs + shift * np.eye(prob.n)) / (1.0 + prob.n * shift)
    return float(xs.sum()), xs


def _certify_dual(prob: _ThetaProblem, y: np.ndarray) -> tuple[float, np.ndarray]:
    bmat = np.ones((prob.n, prob.n))
    bmat[prob.i, prob.j] = 1.0 - y[1:]
    bmat[prob.j, prob.i] = 1.0 - y[1:]
    return float(max_eigenvalue(bmat).upper), bmat


def _solve(h: Graph, cfg: SolverConfig) -> CertifiedValue:
    n = h.n
    prob = _ThetaProblem(h)
    c = np.ones((n, n))
    x = np.eye(n) / n
    y = np.zeros(prob.m)
    y[0] = n + 1.0
    z = prob.op(y) - c
    best: tuple[float, float, np.ndarray | None, np.ndarray | None] = (1.0, float(n), None, None)
    status = "stalled"
    it = 0
    for it in range(1, cfg.max_iterations + 1):
        try:
            x_chol = np.linalg.cholesky(x)
            z_chol = np.linalg.cholesky(z)
        except np.linalg.LinAlgError:
            log.debug("iterate lost definiteness at iteration %d", it)
            break
        zinv_half = sla.solve_triangular(z_chol, np.eye(n), lower=True)
        w = zinv_half.T @ zinv_half
        mu = float(np.sum(x * z)) / n
        rp = prob.b - prob.apply(x)
        rd = c - prob.op(y) + z
        try:
            factor = sla.cho_factor(prob.schur(x, w))
        except (np.linalg.LinAlgError, ValueError):
            log.debug("Schur complement not positive definite at iteration %d", it)
            break
        xrdw = prob.apply(x @ rd @ w)

        def direction(g: np.ndarray):
            rhs = prob.apply(g) - xrdw - rp
            dy = sla.cho_solve(factor, rhs)
            dz = prob.op(dy) + rd
            dx = g - x @ dz @ w
            return 0.5 * (dx + dx.T), dy, dz

        dx_p, dy_p, dz_p = direction(-x)
        ap = min(1.0, _max_step(x_chol, dx_p))
        ad = min(1.0, _max_step(z_chol, dz_p))
        sigma = (float(np.sum((x + ap * dx_p) * (z + ad * dz_p))) / (n * mu)) ** 3
        sigma = min(1.0, max(0.0, sigma))
        g = (sigma * mu * np.eye(n) - dx_p @ dz_p) @ w - x
        dx, dy, dz = direction(g)
        ap = _max_step(x_chol, dx)
        ad = _max_step(z_chol, dz)
        tau = 0.9 + 0.09 * min(1.0, ap, ad)
        ap = min(1.0, tau * ap)
        ad = min(1.0, tau * ad)
        x = x + ap * dx
        x = 0.5 * (x + x.T)
        y = y + ad * dy
        z = z + ad * dz
        z = 0.5 * (z + z.T)

        pobj = float(x.sum())
        dobj = float(y[0])
        if abs(dobj - pobj) <= 10 * cfg.target_gap * max(1.0, abs(dobj)):
            lower, xcert = _certify_primal(prob, x)
            upper, bcert = _certify_dual(prob, y)
            if upper - lower < best[1] - best[0]:
                best = (lower, upper, xcert, bcert)
            if best[1] - best[0] <= cfg.target_gap * best[1]:
                status = "converged"
                break
    lower, upper, xcert, bcert = best
    if xcert is None:
        # no candidate made it to certification; certify the last iterate as is
        lower, xcert = _certify_primal(prob, x)
        upper, bcert = _certify_dual(prob, y)
        if upper > n:
            upper, bcert = float(n), np.ones((n, n))
    return CertifiedValue(lower, upper, it, status, xcert, bcert)


_CACHE: dict[tuple, CertifiedValue] = {}


def lovasz_theta(h: Graph, cfg: SolverConfig = SolverConfig()) -> CertifiedValue:
    """Certified interval for the Lovasz theta number of ``h``."""
    if h.n == 0:
        raise ValueError("theta is undefined for the empty vertex set")
    key = (h.rows, cfg)
    if key in _CACHE:
        return _CACHE[key]
    n = h.n
    if n == 1 or h.num_edges == 0:
        # X = J/n is feasible with value n and B = J has lambda_max n
        result = CertifiedValue(float(n), float(n), 0, "exact", np.full((n, n), 1.0 / n), np.ones((n, n)))
    else:
        result = _solve(h, cfg)
    _CACHE[key] = result
    return result


def theta_bar(g: Graph, cfg: SolverConfig = SolverConfig()) -> CertifiedValue:
    """Theta of the complement: an upper bound on the OR-capacity of ``g``."""
    return lovasz_theta(complement(g), cfg)


def verify_certificate(h: Graph, value: CertifiedValue, cfg: SolverConfig = SolverConfig()) -> bool:
    """Recheck both certificates of ``value`` against ``h`` from scratch."""
    x, b = value.primal, value.dual
    if x is None or b is None:
        return False
    x = np.asarray(x, dtype=float)
    b = np.asarray(b, dtype=float)
    n = h.n
    if x.shape != (n, n) or b.shape != (n, n):
        return False
    tol = max(cfg.eps_psd, 1e-12 * n)
    if np.abs(x - x.T).max() > tol or np.abs(b - b.T).max() > tol:
        return False
    if abs(np.trace(x) - 1.0) > tol:
        return False
    adj = h.adjacency_matrix().astype(bool)
    if np.abs(x[adj]).max(initial=0.0) > tol:
        return False
    if np.linalg.eigvalsh(0.5 * (x + x.T))[0] < -cfg.eps_psd:
        return False
    free = ~adj
    if np.abs(b[free] - 1.0).max(initial=0.0) > tol:
        return False
    if abs(float(x.sum()) - value.lower) > 1e-9 * max(1.0, value.lower):
        return False
    return max_eigenvalue(b).value <= value.upper + 1e-9 * max(1.0, value.upper)
