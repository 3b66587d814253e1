"""Brute-force loop implementations used as reference values.

Everything here is written index by index from the defining formulas and
shares no code with the package beyond the input arrays.
"""

import itertools

import numpy as np


def torsion(C, D):
    n = C.shape[0]
    T = np.zeros((n, n, n), dtype=complex)
    for k, i, j in itertools.product(range(n), repeat=3):
        T[k, i, j] = -C[k, i, j] - D[k, i, j] + D[k, j, i]
    return T


def chern_curvature(D):
    n = D.shape[0]
    R = np.zeros((n, n, n, n), dtype=complex)
    cj = np.conj
    for i, j, k, l in itertools.product(range(n), repeat=4):
        acc = 0j
        for s in range(n):
            acc += (D[s, k, i] * cj(D[s, l, j])
                    - D[l, s, i] * cj(D[k, s, j])
                    - D[j, s, i] * cj(D[k, l, s])
                    - cj(D[i, s, j]) * D[l, k, s])
        R[i, j, k, l] = acc
    return R


def ricci(R):
    n = R.shape[0]
    return np.array([[sum(R[i, j, s, s] for s in range(n)) for j in range(n)] for i in range(n)])


def symmetrize(R):
    n = R.shape[0]
    S = np.zeros_like(R)
    for i, j, k, l in itertools.product(range(n), repeat=4):
        S[i, j, k, l] = (R[i, j, k, l] + R[k, j, i, l] + R[i, l, k, j] + R[k, l, i, j]) / 4
    return S


def holomorphic_sectional(R, X):
    X = np.asarray(X, dtype=complex)
    n = len(X)
    val = 0j
    for i, j, k, l in itertools.product(range(n), repeat=4):
        val += R[i, j, k, l] * X[i] * np.conj(X[j]) * X[k] * np.conj(X[l])
    return (val / np.vdot(X, X).real ** 2).real


def ricci_form(Ric, X):
    X = np.asarray(X, dtype=complex)
    n = len(X)
    val = sum(Ric[i, j] * X[i] * np.conj(X[j]) for i in range(n) for j in range(n))
    return (val / np.vdot(X, X).real).real


def bismut_antiholomorphic_coefficients(D, T):
    """``theta^b_ij(conj e_m)``: ``-conj(D^i_jm) - conj(T^i_jm)``."""
    n = D.shape[0]
    Q = np.zeros((n, n, n), dtype=complex)
    for i, j, m in itertools.product(range(n), repeat=3):
        Q[i, j, m] = -np.conj(D[i, j, m]) - np.conj(T[i, j, m])
    return Q


def torsion_derivative_antiholomorphic(D, T):
    """``dT[l, i, k, m] = T^l_{ik;mbar}`` from the Leibniz rule with constant components."""
    n = D.shape[0]
    Q = bismut_antiholomorphic_coefficients(D, T)
    dT = np.zeros((n, n, n, n), dtype=complex)
    for l, i, k, m in itertools.product(range(n), repeat=4):
        acc = 0j
        for r in range(n):
            acc += T[r, i, k] * Q[r, l, m] - Q[i, r, m] * T[l, r, k] - Q[k, r, m] * T[l, i, r]
        dT[l, i, k, m] = acc
    return dT


def quadratic_terms(T, i, j, k, l):
    n = T.shape[0]
    cj = np.conj
    w = sum(T[r, i, k] * cj(T[r, j, l]) for r in range(n))
    v_ji = sum(T[j, i, r] * cj(T[k, l, r]) for r in range(n))
    v_li = sum(T[l, i, r] * cj(T[k, j, r]) for r in range(n))
    v_jk = sum(T[j, k, r] * cj(T[i, l, r]) for r in range(n))
    v_lk = sum(T[l, k, r] * cj(T[i, j, r]) for r in range(n))
    return w, v_ji, v_li, v_jk, v_lk


def bismut_curvature(C, D):
    n = D.shape[0]
    T = torsion(C, D)
    R = chern_curvature(D)
    dT = torsion_derivative_antiholomorphic(D, T)
    Rb = np.zeros_like(R)
    for i, j, k, l in itertools.product(range(n), repeat=4):
        w, v_ji, v_li, v_jk, v_lk = quadratic_terms(T, i, j, k, l)
        Rb[i, j, k, l] = (R[i, j, k, l] + dT[l, i, k, j] + np.conj(dT[k, j, l, i])
                          + v_li - v_ji - v_lk - w)
    return Rb


def jacobi_brackets(C, D):
    """Largest Jacobi defect of the complexified bracket, computed with explicit vectors."""
    n = C.shape[0]
    m = 2 * n

    def br(x, y):
        # x, y as coefficient vectors in (e_1..e_n, conj e_1..conj e_n)
        out = np.zeros(m, dtype=complex)
        for p in range(m):
            for q in range(m):
                if x[p] == 0 or y[q] == 0:
                    continue
                out += x[p] * y[q] * basis_bracket(p, q)
        return out

    def basis_bracket(p, q):
        out = np.zeros(m, dtype=complex)
        if p < n and q < n:
            out[:n] = C[:, p, q]
        elif p >= n and q >= n:
            out[n:] = np.conj(C[:, p - n, q - n])
        elif p < n <= q:
            i, j = p, q - n
            # [e_i, conj e_j] = sum_k conj(D^i_jk)... expressed through D^j_ik
            for k in range(n):
                out[k] += np.conj(D[i, k, j])
                out[n + k] -= D[j, k, i]
        else:
            return -basis_bracket(q, p)
        return out

    basis = np.eye(m)
    worst = 0.0
    for a, b, c in itertools.combinations(range(m), 3):
        x, y, z = basis[a], basis[b], basis[c]
        jac = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
        worst = max(worst, float(np.max(np.abs(jac))))
    return worst
