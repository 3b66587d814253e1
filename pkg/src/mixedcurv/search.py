"""Multi-restart residual minimization over the closed-form families.

The objective is the sum of squared moduli of the constancy identity

    4 beta Rhat_ijkl + alpha (Ric_ij g_kl + Ric_kj g_il + Ric_il g_kj + Ric_kl g_ij)
        - 2c (g_ij g_kl + g_il g_kj)

over all index quadruples, with ``c`` either fixed or read off at the first
frame vector.  Local descent is scipy's trust-region least squares with a
central-difference Jacobian; the curvature is quadratic in the family
parameters, so central differences are exact up to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .curvature import MixedParams, curvature_from_D, first_ricci, fitted_constant, mixed_residual_tensor, symmetrize
from .errors import InputError
from .families import (
    AlmostAbelianParams,
    Codim2Params,
    _codim2_tensors,
    almost_abelian_build,
    codim2_constraint_residuals,
    codim2_flags,
    commutator_star,
    project_unimodular,
    random_almost_abelian,
)

FAMILIES = ("almost_abelian", "codim2")
CONVERGED_RESIDUAL = 1e-40


@dataclass(frozen=True)
class SearchProblem:
    """A search over one family.

    ``target`` is ``None`` for a best-fit constant or a fixed number.
    ``x0`` optionally seeds the first restart with family parameters.
    """

    family: str
    n: int
    mp: MixedParams
    target: float | None = None
    seed: int = 0
    restarts: int = 20
    max_iters: int = 200
    unimodular: bool = True
    x0: AlmostAbelianParams | Codim2Params | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"family must be one of {FAMILIES}")
        if int(self.n) < 2:
            raise InputError("n must be at least 2")
        if int(self.restarts) < 1 or int(self.max_iters) < 1:
            raise InputError("restarts and max_iters must be positive")
        if not isinstance(self.mp, MixedParams):
            raise InputError("mp must be a MixedParams instance")


@dataclass
class SearchResult:
    params: AlmostAbelianParams | Codim2Params
    residual: float
    c: float
    distances: dict
    restart_residuals: list
    trace: list = field(default_factory=list)  # best feasible residual after each restart
    best_restart: int = 0
    feasible: bool = True

    @property
    def floor(self) -> float:
        """Smallest final residual over all restarts."""
        return min(self.restart_residuals)


# ---------------------------------------------------------------------------
# objective


def _identity_vector(R: np.ndarray, mp: MixedParams, c: float | None) -> np.ndarray:
    Ric = first_ricci(R)
    if c is None:
        c = fitted_constant(R, mp, Ric)
    return mixed_residual_tensor(R, mp, c, Ric, symmetrize(R)).ravel()


def _objective_from_D(D: np.ndarray, mp: MixedParams, c: float | None) -> float:
    r = _identity_vector(curvature_from_D(D), mp, c)
    return float(np.sum(r.real**2 + r.imag**2))


def deviation_objective(params: AlmostAbelianParams | Codim2Params, mp: MixedParams,
                        c: float | None = None, tol: float = 1e-9) -> float:
    """Sum of squared identity residuals; zero exactly when the mixed curvature is the constant."""
    if isinstance(params, AlmostAbelianParams):
        return _objective_from_D(almost_abelian_build(params).D, mp, c)
    if isinstance(params, Codim2Params):
        r1, r2 = codim2_constraint_residuals(params)
        if max(r1, r2) > tol:
            raise InputError(f"codimension-2 parameters violate the Jacobi constraints ({r1:.3e}, {r2:.3e})")
        return _objective_from_D(_codim2_tensors(params)[1], mp, c)
    raise InputError("params must be AlmostAbelianParams or Codim2Params")


def flat_distances(params: AlmostAbelianParams | Codim2Params) -> dict:
    if isinstance(params, AlmostAbelianParams):
        return {
            "lambda": abs(params.lam),
            "v": float(np.linalg.norm(params.v)),
            "[A,A*]": float(np.linalg.norm(commutator_star(params.A))),
        }
    Xs = params.X.conj().T
    return {
        "lambda": abs(params.lam),
        "v": float(np.linalg.norm(params.v)),
        "Z": float(np.linalg.norm(params.Z)),
        "[Y,Y*]": float(np.linalg.norm(commutator_star(params.Y))),
        "[Y,X*]": float(np.linalg.norm(params.Y @ Xs - Xs @ params.Y)),
    }


# ---------------------------------------------------------------------------
# almost abelian coordinates


def _split(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex).ravel()
    return np.concatenate([z.real, z.imag])


def _join(x: np.ndarray, shape) -> np.ndarray:
    k = x.size // 2
    return (x[:k] + 1j * x[k:]).reshape(shape)


class _AlmostAbelianChart:
    def __init__(self, n: int, unimodular: bool):
        self.n, self.m, self.unimodular = n, n - 1, unimodular
        self.size = 1 + 2 * self.m + 2 * self.m**2

    def decode(self, x: np.ndarray) -> AlmostAbelianParams:
        m = self.m
        v = _join(x[1:1 + 2 * m], (m,))
        A = _join(x[1 + 2 * m:], (m, m))
        p = AlmostAbelianParams(self.n, x[0], v, A)
        return project_unimodular(p) if self.unimodular else p

    def encode(self, p: AlmostAbelianParams) -> np.ndarray:
        return np.concatenate([[p.lam], _split(p.v), _split(p.A)])

    def random(self, rng: np.random.Generator) -> np.ndarray:
        return self.encode(random_almost_abelian(rng, self.n, self.unimodular))

    def residuals(self, x: np.ndarray, mp: MixedParams, c: float | None) -> np.ndarray:
        r = _identity_vector(curvature_from_D(almost_abelian_build(self.decode(x)).D), mp, c)
        return np.concatenate([r.real, r.imag])

    def objective(self, x, mp, c) -> tuple[float, bool]:
        r = self.residuals(x, mp, c)
        return float(r @ r), True


# ---------------------------------------------------------------------------
# codimension-2 coordinates


class _Codim2Chart:
    """Free coordinates ``(lam, v, Y, Z)``; ``X`` re-solved from the linear constraints.

    With ``W = X*`` the constraints ``lam W + WY - YW = Z conj(Z) - lam Y``,
    ``Z conj(W) = lam Z - YZ`` and (optionally) ``conj(tr W) = lam + tr Y``
    are real-linear in ``W`` and solved in the least-squares sense; what is
    left over is the infeasibility, added to the residual vector as a
    penalty.
    """

    penalty = 1e3

    def __init__(self, n: int, unimodular: bool):
        self.n, self.m, self.unimodular = n, n - 1, unimodular
        self.size = 1 + 2 * self.m + 4 * self.m**2

    def _unpack(self, x):
        m = self.m
        lam = abs(x[0])
        v = _join(x[1:1 + 2 * m], (m,))
        Y = _join(x[1 + 2 * m:1 + 2 * m + 2 * m * m], (m, m))
        Z = _join(x[1 + 2 * m + 2 * m * m:], (m, m))
        return lam, v, Y, Z

    @staticmethod
    def _linear(L):
        """Real form of ``w -> L w`` on ``(Re w, Im w)``."""
        return np.block([[L.real, -L.imag], [L.imag, L.real]])

    @staticmethod
    def _antilinear(K):
        """Real form of ``w -> K conj(w)`` on ``(Re w, Im w)``."""
        return np.block([[K.real, K.imag], [K.imag, -K.real]])

    def _solve_W(self, lam, Y, Z):
        m = self.m
        eye = np.eye(m)
        # row-major vec(A W B) = kron(A, B^T) vec(W)
        blocks = [self._linear(lam * np.eye(m * m) + np.kron(eye, Y.T) - np.kron(Y, eye)),
                  self._antilinear(np.kron(Z, eye))]
        rhs_parts = [Z @ Z.conj() - lam * Y, lam * Z - Y @ Z]
        if self.unimodular:
            tr = eye.reshape(1, -1).astype(complex)
            blocks.append(self._antilinear(tr))
            rhs_parts.append(np.array([lam + np.trace(Y)]))
        M = np.vstack(blocks)
        rhs = np.concatenate([_split(o) for o in rhs_parts])
        w, *_ = np.linalg.lstsq(M, rhs, rcond=None)
        W = _join(w, (m, m))
        return W, M @ w - rhs

    def decode_full(self, x):
        lam, v, Y, Z = self._unpack(x)
        W, infeas = self._solve_W(lam, Y, Z)
        return Codim2Params(self.n, lam, v, W.conj().T, Y, Z), infeas

    def decode(self, x):
        return self.decode_full(x)[0]

    def encode(self, p: Codim2Params) -> np.ndarray:
        return np.concatenate([[p.lam], _split(p.v), _split(p.Y), _split(p.Z)])

    def random(self, rng: np.random.Generator) -> np.ndarray:
        from .families import random_codim2
        return self.encode(random_codim2(rng, self.n, self.unimodular))

    def residuals(self, x, mp, c):
        p, infeas = self.decode_full(x)
        r = _identity_vector(curvature_from_D(_codim2_tensors(p)[1]), mp, c)
        return np.concatenate([r.real, r.imag, self.penalty * infeas])

    def objective(self, x, mp, c) -> tuple[float, bool]:
        p, infeas = self.decode_full(x)
        feasible = max(codim2_constraint_residuals(p)) <= 1e-9
        if self.unimodular:
            feasible = feasible and codim2_flags(p).unimodular
        return _objective_from_D(_codim2_tensors(p)[1], mp, c), feasible


# ---------------------------------------------------------------------------
# driver


def _chart(problem: SearchProblem):
    cls = _AlmostAbelianChart if problem.family == "almost_abelian" else _Codim2Chart
    return cls(int(problem.n), problem.unimodular)


class _Converged(Exception):
    def __init__(self, x):
        self.x = x


def _descend(chart, x0, mp, c, max_iters: int) -> np.ndarray:
    """One local least-squares run, cut short once the squared residual is negligible.

    Zeros of the objective are degenerate (the curvature is quadratic in the
    parameters), so relative stopping rules never fire there.
    """

    def fun(x):
        r = chart.residuals(x, mp, c)
        if r @ r <= CONVERGED_RESIDUAL:
            raise _Converged(np.array(x, copy=True))
        return r

    try:
        sol = least_squares(fun, x0, jac="3-point", method="trf",
                            ftol=None, gtol=None, xtol=1e-14, max_nfev=max_iters)
    except _Converged as done:
        return done.x
    return sol.x


def minimize(problem: SearchProblem) -> SearchResult:
    """Best point over ``restarts`` seeded local least-squares descents.

    Restart ``k`` draws its start from ``default_rng([seed, k])``; the first
    restart uses ``problem.x0`` when given.  Ties go to the lower restart
    index, so results are reproducible bit for bit.
    """
    chart = _chart(problem)
    mp, c = problem.mp, problem.target
    restart_res, trace = [], []
    best, best_feasible = None, np.inf
    for k in range(int(problem.restarts)):
        rng = np.random.default_rng([int(problem.seed), k])
        x0 = chart.encode(problem.x0) if (k == 0 and problem.x0 is not None) else chart.random(rng)
        f0, _ = chart.objective(x0, mp, c)
        x = x0 if f0 == 0.0 else _descend(chart, x0, mp, c, int(problem.max_iters))
        fx, feasible = chart.objective(x, mp, c)
        if fx > f0:
            # descent never increases the objective; keep the start point otherwise
            x, fx = x0, f0
            feasible = chart.objective(x0, mp, c)[1]
        restart_res.append(fx)
        key = (not feasible, fx)
        if best is None or key < best[0]:
            best = (key, k, x, feasible)
        if feasible:
            best_feasible = min(best_feasible, fx)
        trace.append(best_feasible)
    (_, fbest), kbest, xbest, feasible = best
    params = chart.decode(xbest)
    if isinstance(params, AlmostAbelianParams):
        D = almost_abelian_build(params).D
    else:
        D = _codim2_tensors(params)[1]
    R = curvature_from_D(D)
    cfit = fitted_constant(R, mp) if c is None else float(c)
    return SearchResult(params=params, residual=fbest, c=cfit, distances=flat_distances(params),
                        restart_residuals=restart_res, trace=trace, best_restart=kbest, feasible=feasible)
