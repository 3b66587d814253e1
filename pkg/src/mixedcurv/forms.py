"""Left-invariant forms in the coframe ``(phi_1..phi_n, conj phi_1..conj phi_n)``.

A 1-form is a length-``2n`` coefficient vector, a 2-form an antisymmetric
``2n x 2n`` matrix ``F`` with ``omega = 1/2 sum F[a,b] e^a ^ e^b`` and a
3-form a fully antisymmetric array with the analogous ``1/6`` convention.
All coefficients are constant, so ``d`` only acts through the structure
equation.
"""

from __future__ import annotations

import numpy as np

from .algebra import HermitianLieAlgebra


def coframe_differentials(alg: HermitianLieAlgebra) -> np.ndarray:
    """``dE[c]`` is the 2-form ``d e^c`` for each basis 1-form.

    ``d phi_i = -1/2 sum C^i_jk phi_j^phi_k - sum conj(D^j_ik) phi_j ^ conj phi_k``
    and ``d conj phi_i`` is its conjugate.
    """
    n = alg.n
    N = 2 * n
    dE = np.zeros((N, N, N), dtype=complex)
    h, a = slice(0, n), slice(n, N)
    dE[h, h, h] = -alg.C
    mixed = -np.einsum("jik->ijk", alg.D.conj())  # [i, j, k]: coefficient of phi_j ^ conj phi_k
    dE[h, h, a] = mixed
    dE[h, a, h] = -mixed.transpose(0, 2, 1)
    swap = np.r_[np.arange(n, N), np.arange(0, n)]
    dE[a] = dE[h][:, swap][:, :, swap].conj()
    return dE


def wedge11(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    return np.multiply.outer(alpha, beta) - np.multiply.outer(beta, alpha)


def d1(w: np.ndarray, dE: np.ndarray) -> np.ndarray:
    return np.einsum("c,cab->ab", w, dE)


def d2(F: np.ndarray, dE: np.ndarray) -> np.ndarray:
    """Exterior derivative of a constant-coefficient 2-form.

    ``d omega = sum_{a,b} F[a,b] (d e^a) ^ e^b`` by antisymmetry of ``F``.
    """
    K = np.einsum("ab,axy->xyb", F, dE)
    return K + K.transpose(1, 2, 0) + K.transpose(2, 0, 1)


def dphi_squared_residual(alg: HermitianLieAlgebra) -> float:
    """Largest coefficient of ``d(d phi_i)`` over all ``i``."""
    dE = coframe_differentials(alg)
    return float(max(np.max(np.abs(d2(dE[c], dE))) for c in range(alg.n)))


def connection_forms(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """``theta[i, j]`` as 1-forms from ``theta_ij = sum_k P[i,j,k] phi_k + Q[i,j,k] conj phi_k``."""
    return np.concatenate([P, Q], axis=2)


def curvature_forms(theta: np.ndarray, dE: np.ndarray) -> np.ndarray:
    """``Theta = d theta - theta ^ theta`` as an ``(n, n, 2n, 2n)`` array of 2-forms."""
    dtheta = np.einsum("ijc,cab->ijab", theta, dE)
    tt = np.einsum("ika,kjb->ijab", theta, theta)
    return dtheta - (tt - tt.transpose(0, 1, 3, 2))


def curvature_from_connection(alg: HermitianLieAlgebra, P: np.ndarray, Q: np.ndarray):
    """``(1,1)`` and ``(2,0)`` parts of the curvature of a left-invariant connection.

    Returns ``(R11, R20)`` with ``R11[k, l, i, j]`` the coefficient of
    ``phi_k ^ conj phi_l`` in ``Theta_ij`` and ``R20[k, l, i, j]`` the
    coefficient matrix of ``phi_k ^ phi_l`` (antisymmetric in ``k, l``).
    """
    n = alg.n
    Theta = curvature_forms(connection_forms(P, Q), coframe_differentials(alg))
    R11 = np.einsum("ijkl->klij", Theta[:, :, :n, n:])
    R20 = np.einsum("ijkl->klij", Theta[:, :, :n, :n])
    return R11, R20
