"""Chern and Bismut connection, torsion and curvature under a unitary frame.

Index conventions follow :mod:`mixedcurv.algebra`:

* ``T[k, i, j]``   is the Chern torsion ``T^k_{ij}``;
* ``R[i, j, k, l]`` is ``R_{i jbar k lbar}``;
* connection coefficients ``P[i, j, k]``, ``Q[i, j, k]`` give
  ``theta_ij = sum_k P[i,j,k] phi_k + Q[i,j,k] conj(phi_k)`` with
  ``nabla e_i = sum_j theta_ij e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_TOL, HermitianLieAlgebra
from .errors import InputError, InternalError, PreconditionError
from .forms import dphi_squared_residual  # noqa: F401  (re-exported)

HERMITIAN_ABORT = 1e-9


@dataclass(frozen=True)
class ConnectionCoefficients:
    P: np.ndarray
    Q: np.ndarray


@dataclass(frozen=True)
class MixedParams:
    """Weights of ``alpha * Ric + beta * H``; not both zero."""

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if not (np.isfinite(a) and np.isfinite(b)):
            raise InputError("alpha and beta must be finite")
        if a == 0.0 and b == 0.0:
            raise InputError("(alpha, beta) = (0, 0) is excluded")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)


@dataclass(frozen=True)
class QuadraticTorsionTerms:
    """The quadratic torsion combinations attached to one index quadruple."""

    w: complex
    v_ji: complex
    v_li: complex
    v_jk: complex
    v_lk: complex

    @property
    def v_hat(self) -> complex:
        return (self.v_ji + self.v_lk + self.v_li + self.v_jk) / 4


@dataclass
class ConstantMixedResult:
    is_constant: bool
    c: float
    residual: float
    sampled_spread: float


@dataclass
class StreetsTian:
    B: np.ndarray
    rank: int


# ---------------------------------------------------------------------------
# torsion and curvature of the Chern connection


def chern_torsion(alg: HermitianLieAlgebra) -> np.ndarray:
    """``T^j_{ik} = -C^j_{ik} - D^j_{ik} + D^j_{ki}``, exactly antisymmetric."""
    D = alg.D
    return (D.transpose(0, 2, 1) - D) - alg.C


def chern_connection(alg: HermitianLieAlgebra) -> ConnectionCoefficients:
    D = alg.D
    P = np.einsum("jik->ijk", D)
    Q = -D.conj()
    return ConnectionCoefficients(P, Q)


def _check_hermitian(R: np.ndarray, what: str) -> None:
    err = hermitian_defect(R)
    if err > HERMITIAN_ABORT:
        raise InternalError(f"{what} violates Hermitian pair symmetry by {err:.3e}")


def hermitian_defect(R: np.ndarray) -> float:
    """``max |conj R_{i jbar k lbar} - R_{j ibar l kbar}|``."""
    return float(np.max(np.abs(R.conj() - R.transpose(1, 0, 3, 2)))) if R.size else 0.0


def chern_curvature(alg: HermitianLieAlgebra) -> np.ndarray:
    """Chern curvature ``R_{i jbar k lbar}`` from ``D`` alone."""
    R = curvature_from_D(alg.D)
    _check_hermitian(R, "Chern curvature")
    return R


def curvature_from_D(D: np.ndarray) -> np.ndarray:
    """Unchecked Chern curvature of a raw ``D`` array (inner loops)."""
    Dc = D.conj()
    return (np.einsum("ski,slj->ijkl", D, Dc)
            - np.einsum("lsi,ksj->ijkl", D, Dc)
            - np.einsum("jsi,kls->ijkl", D, Dc)
            - np.einsum("isj,lks->ijkl", Dc, D))


@dataclass
class DiagonalShortcuts:
    H: np.ndarray       # H[i]      = R_{i ibar i ibar}
    pair: np.ndarray    # pair[i,s] = R_{i ibar s sbar}
    Rhat: np.ndarray    # Rhat[i,k] = Rhat_{i ibar k kbar}


def diagonal_shortcuts(alg: HermitianLieAlgebra) -> DiagonalShortcuts:
    """Diagonal curvature entries straight from ``D``, bypassing the full tensor."""
    D = alg.D
    n = alg.n
    H = np.zeros(n)
    pair = np.zeros((n, n))
    Rhat = np.zeros((n, n))
    for i in range(n):
        H[i] = sum(abs(D[r, i, i]) ** 2 - abs(D[i, r, i]) ** 2
                   - 2 * (D[i, r, i] * np.conj(D[i, i, r])).real for r in range(n))
        for s in range(n):
            pair[i, s] = sum(abs(D[r, s, i]) ** 2 - abs(D[s, r, i]) ** 2
                             - 2 * (D[i, r, i] * np.conj(D[s, s, r])).real for r in range(n))
        for k in range(n):
            acc = 0.0
            for r in range(n):
                acc += (abs(D[r, k, i] + D[r, i, k]) ** 2 - abs(D[k, r, i]) ** 2 - abs(D[i, r, k]) ** 2
                        - 2 * (D[k, r, k] * np.conj(D[i, r, i])
                               + D[i, r, i] * np.conj(D[k, k, r])
                               + D[k, r, k] * np.conj(D[i, i, r])
                               + D[i, r, k] * np.conj(D[i, k, r])
                               + D[k, r, i] * np.conj(D[k, i, r])).real)
            Rhat[i, k] = acc / 4
    return DiagonalShortcuts(H, pair, Rhat)


def symmetrize(R: np.ndarray) -> np.ndarray:
    """Average over ``i <-> k`` and ``j <-> l``."""
    return 0.25 * (R
                   + np.einsum("kjil->ijkl", R)
                   + np.einsum("ilkj->ijkl", R)
                   + np.einsum("klij->ijkl", R))


def first_ricci(R: np.ndarray) -> np.ndarray:
    """``R_{i jbar} = sum_s R_{i jbar s sbar}``."""
    return np.einsum("ijss->ij", R)


# ---------------------------------------------------------------------------
# mixed curvature


def mixed_value(R: np.ndarray, Ric: np.ndarray, mp: MixedParams, X) -> float:
    """``alpha Ric(X, Xbar)/|X|^2 + beta R(X, Xbar, X, Xbar)/|X|^4``."""
    X = np.asarray(X, dtype=complex)
    norm2 = float(np.vdot(X, X).real)
    if norm2 == 0.0:
        raise InputError("mixed curvature is undefined at X = 0")
    Xc = X.conj()
    ric = np.einsum("i,j,ij->", X, Xc, Ric).real
    hol = np.einsum("i,j,k,l,ijkl->", X, Xc, X, Xc, R).real
    return float(mp.alpha * ric / norm2 + mp.beta * hol / norm2**2)


def mixed_residual_tensor(R: np.ndarray, mp: MixedParams, c: float, Ric: np.ndarray | None = None,
                          Rhat: np.ndarray | None = None) -> np.ndarray:
    """LHS - RHS of the pointwise constancy identity in a unitary frame."""
    n = R.shape[0]
    if Ric is None:
        Ric = first_ricci(R)
    if Rhat is None:
        Rhat = symmetrize(R)
    g = np.eye(n)
    ric_terms = (np.einsum("ij,kl->ijkl", Ric, g) + np.einsum("kj,il->ijkl", Ric, g)
                 + np.einsum("il,kj->ijkl", Ric, g) + np.einsum("kl,ij->ijkl", Ric, g))
    rhs = 2 * c * (np.einsum("ij,kl->ijkl", g, g) + np.einsum("il,kj->ijkl", g, g))
    return 4 * mp.beta * Rhat + mp.alpha * ric_terms - rhs


def fitted_constant(R: np.ndarray, mp: MixedParams, Ric: np.ndarray | None = None) -> float:
    """``c`` read off at the first frame vector: ``beta R_{1111} + alpha R_{11}``."""
    if Ric is None:
        Ric = first_ricci(R)
    return float((mp.beta * R[0, 0, 0, 0] + mp.alpha * Ric[0, 0]).real)


def sample_directions(n: int, seed: int = 0, count: int = 200) -> np.ndarray:
    """Seeded unit vectors plus the polarization set ``e_i, (e_i +- e_k)/sqrt2, (e_i +- i e_k)/sqrt2``."""
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    rows = [z]
    eye = np.eye(n, dtype=complex)
    rows.append(eye)
    pol = []
    for i in range(n):
        for k in range(i + 1, n):
            for ph in (1, -1, 1j, -1j):
                pol.append((eye[i] + ph * eye[k]) / np.sqrt(2))
    if pol:
        rows.append(np.array(pol))
    return np.vstack(rows)


VERDICT_BAND = 100.0


def sampled_spread(R: np.ndarray, mp: MixedParams, seed: int = 0) -> float:
    Ric = first_ricci(R)
    X = sample_directions(R.shape[0], seed)
    Xc = X.conj()
    ric = np.einsum("ai,aj,ij->a", X, Xc, Ric).real
    hol = np.einsum("ai,aj,ak,al,ijkl->a", X, Xc, X, Xc, R, optimize=True).real
    vals = mp.alpha * ric + mp.beta * hol
    return float(vals.max() - vals.min())


def constant_mixed_test_tensor(R: np.ndarray, mp: MixedParams, tol: float = DEFAULT_TOL,
                               seed: int = 0) -> ConstantMixedResult:
    """Decide constancy of the mixed curvature of a pointwise curvature tensor.

    The identity residual is the referee; the sampled spread over unit
    vectors is an independent cross-check.  Both scale with the distance
    from constancy but with different constants, so only a disagreement by
    more than a factor ``VERDICT_BAND`` is treated as an internal error.
    """
    Ric = first_ricci(R)
    c = fitted_constant(R, mp, Ric)
    residual = float(np.max(np.abs(mixed_residual_tensor(R, mp, c, Ric))))
    spread = sampled_spread(R, mp, seed)
    is_constant = residual <= tol
    if (is_constant and spread > VERDICT_BAND * tol) or (residual > VERDICT_BAND * tol and spread <= tol):
        raise InternalError(
            f"constancy verdicts disagree: identity residual {residual:.3e}, sampled spread {spread:.3e}")
    return ConstantMixedResult(is_constant, c, residual, spread)


def constant_mixed_test(alg: HermitianLieAlgebra, mp: MixedParams, tol: float = DEFAULT_TOL,
                        seed: int = 0) -> ConstantMixedResult:
    return constant_mixed_test_tensor(chern_curvature(alg), mp, tol, seed)


# ---------------------------------------------------------------------------
# torsion invariants and the Bismut connection


def streets_tian(T: np.ndarray, tol: float = DEFAULT_TOL) -> StreetsTian:
    """``B_{i jbar} = sum_{k,l} T^j_{kl} conj(T^i_{kl})`` and its numerical rank."""
    B = np.einsum("jkl,ikl->ij", T, T.conj())
    sv = np.linalg.svd(B, compute_uv=False)
    return StreetsTian(B, int(np.sum(sv > tol)))


def bismut_connection(alg: HermitianLieAlgebra) -> ConnectionCoefficients:
    """Chern coefficients plus ``gamma_ij = sum_k T^j_ik phi_k - conj(T^i_jk) conj(phi_k)``."""
    ch = chern_connection(alg)
    T = chern_torsion(alg)
    P = ch.P + np.einsum("jik->ijk", T)
    Q = ch.Q - T.conj()
    return ConnectionCoefficients(P, Q)


def _derivative(T: np.ndarray, A: np.ndarray) -> np.ndarray:
    """Covariant derivative of a left-invariant ``T`` along frame vector ``m``.

    ``A[i, j, m]`` is ``theta^b_ij`` evaluated on that vector.  The components
    are constant, so only connection terms remain::

        T^l_{ik;m} = sum_r T^r_ik A[r,l,m] - A[i,r,m] T^l_rk - A[k,r,m] T^l_ir

    Output is indexed ``[l, i, k, m]``.
    """
    return (np.einsum("rik,rlm->likm", T, A)
            - np.einsum("irm,lrk->likm", A, T)
            - np.einsum("krm,lir->likm", A, T))


@dataclass
class TorsionDerivative:
    holo: np.ndarray      # [l, i, k, m] = T^l_{ik;m}
    antiholo: np.ndarray  # [l, i, k, m] = T^l_{ik;mbar}

    @property
    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.holo)), np.max(np.abs(self.antiholo)))) if self.holo.size else 0.0

    def is_btp(self, tol: float = DEFAULT_TOL) -> bool:
        return self.max_abs <= tol


def covariant_torsion_derivative(alg: HermitianLieAlgebra) -> TorsionDerivative:
    """Bismut covariant derivative of the Chern torsion in both frame directions."""
    T = chern_torsion(alg)
    b = bismut_connection(alg)
    return TorsionDerivative(_derivative(T, b.P), _derivative(T, b.Q))


def is_btp(alg: HermitianLieAlgebra, tol: float = DEFAULT_TOL) -> bool:
    return covariant_torsion_derivative(alg).is_btp(tol)


def quadratic_torsion_arrays(T: np.ndarray) -> dict[str, np.ndarray]:
    """``w, v^j_i, v^l_i, v^j_k, v^l_k`` as ``[i, j, k, l]`` arrays."""
    Tc = T.conj()
    return {
        "w": np.einsum("rik,rjl->ijkl", T, Tc),
        "v_ji": np.einsum("jir,klr->ijkl", T, Tc),
        "v_li": np.einsum("lir,kjr->ijkl", T, Tc),
        "v_jk": np.einsum("jkr,ilr->ijkl", T, Tc),
        "v_lk": np.einsum("lkr,ijr->ijkl", T, Tc),
    }


def quadratic_torsion_terms(T: np.ndarray, i: int, j: int, k: int, l: int) -> QuadraticTorsionTerms:
    Tc = T.conj()
    return QuadraticTorsionTerms(
        w=complex(np.sum(T[:, i, k] * Tc[:, j, l])),
        v_ji=complex(np.sum(T[j, i, :] * Tc[k, l, :])),
        v_li=complex(np.sum(T[l, i, :] * Tc[k, j, :])),
        v_jk=complex(np.sum(T[j, k, :] * Tc[i, l, :])),
        v_lk=complex(np.sum(T[l, k, :] * Tc[i, j, :])),
    )


def bismut_curvature(alg: HermitianLieAlgebra) -> np.ndarray:
    """``(1,1)``-part ``R^b_{i jbar k lbar}`` of the Bismut curvature.

    ``R^b - R = T^l_{ik;jbar} + conj(T^k_{jl;ibar}) + v^l_i - v^j_i - v^l_k - w``.
    """
    R = chern_curvature(alg)
    T = chern_torsion(alg)
    dT = covariant_torsion_derivative(alg).antiholo
    q = quadratic_torsion_arrays(T)
    Rb = (R
          + np.einsum("likj->ijkl", dT)
          + np.einsum("kjli->ijkl", dT).conj()
          + q["v_li"] - q["v_ji"] - q["v_lk"] - q["w"])
    _check_hermitian(Rb, "Bismut curvature")
    return Rb


def btp_symmetrization_defect(alg: HermitianLieAlgebra) -> np.ndarray:
    """``Rhat^b - R^b - (w + v^j_i + v^l_k - v^l_i - v^j_k)/2`` for every quadruple."""
    Rb = bismut_curvature(alg)
    q = quadratic_torsion_arrays(chern_torsion(alg))
    return symmetrize(Rb) - Rb - 0.5 * (q["w"] + q["v_ji"] + q["v_lk"] - q["v_li"] - q["v_jk"])


def btp_symmetrization_residual(alg: HermitianLieAlgebra, tol: float = DEFAULT_TOL) -> float:
    if not is_btp(alg, tol):
        raise PreconditionError("symmetrization identity only holds when the torsion is Bismut-parallel")
    return float(np.max(np.abs(btp_symmetrization_defect(alg))))
