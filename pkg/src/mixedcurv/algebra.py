"""Structure-constant model of a Hermitian Lie algebra under a unitary frame.

A left-invariant Hermitian structure ``(g, J, <,>)`` is encoded by a unitary
frame ``e_1..e_n`` of ``g^{1,0}`` and two complex rank-3 tensors::

    [e_i, e_k]    = sum_j C[j, i, k] e_j
    [e_i, conj e_j] = sum_k ( conj(D[i, k, j]) e_k - D[j, k, i] conj(e_k) )

Arrays are stored upper index first, then the lower indices in the order they
are written, 0-based.  ``C[j, i, k]`` is ``C^j_{ik}`` and ``D[j, i, k]`` is
``D^j_{ik}``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError

DEFAULT_TOL = 1e-9


class FrameKind(str, enum.Enum):
    """Which sparse normal form the frame is declared to be in."""

    GENERIC = "generic-unitary"
    SALAMON = "salamon"
    ALMOST_ABELIAN = "admissible-almost-abelian"
    CODIM2 = "admissible-codim2"
    SPECIAL_BTP = "special-btp"
    NONBALANCED_BTP = "admissible-nonbalanced-btp"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class HermitianLieAlgebra:
    """Complex dimension ``n`` with structure constants ``C`` and ``D``.

    On construction the antisymmetry ``C[j,i,k] = -C[j,k,i]`` is enforced:
    violations larger than ``antisym_tol`` raise :class:`InputError`, smaller
    ones are removed by antisymmetrizing.
    """

    n: int
    C: np.ndarray
    D: np.ndarray
    frame_kind: FrameKind = FrameKind.GENERIC
    antisym_tol: float = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise InputError(f"n must be a positive integer, got {self.n}")
        C = np.asarray(self.C, dtype=complex)
        D = np.asarray(self.D, dtype=complex)
        for name, a in (("C", C), ("D", D)):
            if a.shape != (n, n, n):
                raise InputError(f"{name} must have shape {(n, n, n)}, got {a.shape}")
            if not np.all(np.isfinite(a)):
                raise InputError(f"{name} has non-finite entries")
        skew = np.max(np.abs(C + C.transpose(0, 2, 1))) if n else 0.0
        if skew > self.antisym_tol:
            raise InputError(f"C is not antisymmetric in its lower indices (residual {skew:.3e})")
        C = 0.5 * (C - C.transpose(0, 2, 1))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "C", _frozen(C))
        object.__setattr__(self, "D", _frozen(D))
        object.__setattr__(self, "frame_kind", FrameKind(self.frame_kind))

    @classmethod
    def zeros(cls, n: int, frame_kind=FrameKind.GENERIC) -> "HermitianLieAlgebra":
        z = np.zeros((n, n, n), dtype=complex)
        return cls(n, z, z, frame_kind)

    def with_frame_kind(self, frame_kind) -> "HermitianLieAlgebra":
        return HermitianLieAlgebra(self.n, self.C, self.D, FrameKind(frame_kind))

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.C)), np.max(np.abs(self.D))))


@dataclass(frozen=True)
class RealPresentation:
    """Real Lie algebra of dimension ``2n`` with complex structure and metric.

    ``bracket[c, a, b]`` is the coefficient of ``x_c`` in ``[x_a, x_b]``.
    """

    bracket: np.ndarray
    J: np.ndarray
    gram: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.bracket, dtype=float)
        J = np.asarray(self.J, dtype=float)
        G = np.asarray(self.gram, dtype=float)
        m = J.shape[0] if J.ndim == 2 else -1
        if m <= 0 or m % 2 or J.shape != (m, m) or G.shape != (m, m) or f.shape != (m, m, m):
            raise InputError("real presentation needs bracket (2n,2n,2n), J and gram (2n,2n)")
        for name, a in (("bracket", f), ("J", J), ("gram", G)):
            if not np.all(np.isfinite(a)):
                raise InputError(f"real presentation {name} has non-finite entries")
        object.__setattr__(self, "bracket", f)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "gram", G)

    @property
    def dim(self) -> int:
        return self.J.shape[0]


@dataclass
class ValidationReport:
    antisymmetry_residual: float
    jacobi_residual: float
    pattern_residual: float
    frame_kind: FrameKind
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.antisymmetry_residual, self.jacobi_residual, self.pattern_residual) <= self.tol


@dataclass
class ClassificationFlags:
    is_nilpotent: bool
    is_solvable: bool
    commutator_J_invariant: bool
    commutator_plus_J_nilpotent: bool
    is_unimodular: bool
    commutator_dim: int = 0
    derived_dims: tuple = ()
    lower_central_dims: tuple = ()


# ---------------------------------------------------------------------------
# axioms


def jacobi_identity_terms(alg: HermitianLieAlgebra) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Left-hand sides of the three first-Bianchi identities.

    Returned arrays are indexed ``[i, j, k, l]`` as in the identities; the
    first one does not depend on ``j`` and is returned with shape ``(n, n, n)``
    indexed ``[i, j, k]`` with the free upper index last.
    """
    C, D = alg.C, alg.D
    Cc, Dc = C.conj(), D.conj()
    # sum_r C^r_ij C^l_rk + C^r_jk C^l_ri + C^r_ki C^l_rj
    first = (np.einsum("rij,lrk->ijkl", C, C)
             + np.einsum("rjk,lri->ijkl", C, C)
             + np.einsum("rki,lrj->ijkl", C, C))
    # sum_r C^r_ik D^l_jr + D^r_ji D^l_rk - D^r_jk D^l_ri
    second = (np.einsum("rik,ljr->ijkl", C, D)
              + np.einsum("rji,lrk->ijkl", D, D)
              - np.einsum("rjk,lri->ijkl", D, D))
    # sum_r C^r_ik conj D^r_jl - C^j_rk conj D^i_rl + C^j_ri conj D^k_rl
    #        - D^l_ri conj D^k_jr + D^l_rk conj D^i_jr
    third = (np.einsum("rik,rjl->ijkl", C, Dc)
             - np.einsum("jrk,irl->ijkl", C, Dc)
             + np.einsum("jri,krl->ijkl", C, Dc)
             - np.einsum("lri,kjr->ijkl", D, Dc)
             + np.einsum("lrk,ijr->ijkl", D, Dc))
    return first, second, third


def jacobi_residual(alg: HermitianLieAlgebra) -> float:
    """Largest modulus among the three Jacobi/first-Bianchi identities."""
    return float(max(np.max(np.abs(t)) for t in jacobi_identity_terms(alg)))


def unimodularity_vector(alg: HermitianLieAlgebra) -> np.ndarray:
    """``sum_r (C^r_{ri} + D^r_{ri})`` for each ``i``; equals ``-tr ad(e_i)``."""
    return np.einsum("rri->i", alg.C) + np.einsum("rri->i", alg.D)


def unimodularity_defect(alg: HermitianLieAlgebra) -> float:
    return float(np.max(np.abs(unimodularity_vector(alg))))


# ---------------------------------------------------------------------------
# frame changes


def change_frame(alg: HermitianLieAlgebra, U: np.ndarray, tol: float = DEFAULT_TOL) -> HermitianLieAlgebra:
    """Structure constants in the frame ``e~_i = sum_j U[i, j] e_j``.

    ``U`` must be unitary.  The result is tagged generic since sparse normal
    forms are not preserved in general.
    """
    U = np.asarray(U, dtype=complex)
    n = alg.n
    if U.shape != (n, n):
        raise InputError(f"frame change must be {n}x{n}")
    if np.max(np.abs(U @ U.conj().T - np.eye(n))) > tol:
        raise InputError("frame change is not unitary")
    Uc = U.conj()
    C = np.einsum("ia,jb,cab,kc->kij", U, U, alg.C, Uc)
    D = np.einsum("jb,kc,bac,ia->jik", Uc, U, alg.D, U)
    return HermitianLieAlgebra(n, C, D)


def permute_frame(alg: HermitianLieAlgebra, perm) -> HermitianLieAlgebra:
    """Reorder the frame so that new ``e_i`` is old ``e_{perm[i]}``."""
    perm = list(perm)
    P = np.eye(alg.n)[perm]
    return change_frame(alg, P)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


# ---------------------------------------------------------------------------
# complexified bracket and real presentation


def complex_bracket(alg: HermitianLieAlgebra) -> np.ndarray:
    """Bracket tensor on ``g^C`` in the basis ``(e_1..e_n, conj e_1..conj e_n)``.

    ``G[r, p, q]`` is the coefficient of basis vector ``r`` in ``[b_p, b_q]``.
    """
    n = alg.n
    C, D = alg.C, alg.D
    G = np.zeros((2 * n, 2 * n, 2 * n), dtype=complex)
    h, a = slice(0, n), slice(n, 2 * n)
    G[h, h, h] = C
    G[a, a, a] = C.conj()
    # [e_i, conj e_j] = sum_k conj(D[i,k,j]) e_k - D[j,k,i] conj e_k
    G[h, h, a] = np.einsum("ikj->kij", D.conj())
    G[a, h, a] = -np.einsum("jki->kij", D)
    G[:, a, h] = -G[:, h, a].transpose(0, 2, 1)
    return G


def _real_basis_matrix(n: int) -> np.ndarray:
    """Columns express ``x_{2i} = (e_i + conj e_i)/sqrt2``, ``x_{2i+1} = J x_{2i}``."""
    M = np.zeros((2 * n, 2 * n), dtype=complex)
    s = 1 / np.sqrt(2)
    for i in range(n):
        M[i, 2 * i] = s
        M[n + i, 2 * i] = s
        M[i, 2 * i + 1] = 1j * s
        M[n + i, 2 * i + 1] = -1j * s
    return M


def to_real_presentation(alg: HermitianLieAlgebra) -> RealPresentation:
    """Expand to a real basis ``x_0..x_{2n-1}`` with ``gram = I``."""
    n = alg.n
    G = complex_bracket(alg)
    M = _real_basis_matrix(n)
    Minv = np.linalg.inv(M)
    f = np.einsum("cr,rpq,pa,qb->cab", Minv, G, M, M)
    J = np.zeros((2 * n, 2 * n))
    for i in range(n):
        J[2 * i + 1, 2 * i] = 1.0
        J[2 * i, 2 * i + 1] = -1.0
    return RealPresentation(f.real.copy(), J, np.eye(2 * n))


def check_real_presentation(rp: RealPresentation, tol: float = DEFAULT_TOL) -> dict[str, float]:
    """Residual of each axiom; raises nothing."""
    f, J, G = rp.bracket, rp.J, rp.gram
    m = rp.dim
    res = {}
    res["J^2 = -I"] = float(np.max(np.abs(J @ J + np.eye(m))))
    res["gram symmetric"] = float(np.max(np.abs(G - G.T)))
    eig = np.linalg.eigvalsh(0.5 * (G + G.T))
    res["gram positive definite"] = 0.0 if eig.min() > tol else float(abs(eig.min()) + 2 * tol)
    res["gram J-compatible"] = float(np.max(np.abs(J.T @ G @ J - G)))
    res["bracket antisymmetric"] = float(np.max(np.abs(f + f.transpose(0, 2, 1))))
    jac = (np.einsum("rab,drc->dabc", f, f) + np.einsum("rbc,dra->dabc", f, f)
           + np.einsum("rca,drb->dabc", f, f))
    res["Jacobi identity"] = float(np.max(np.abs(jac)))
    # [x,y] - [Jx,Jy] + J[Jx,y] + J[x,Jy]
    fJJ = np.einsum("cpq,pa,qb->cab", f, J, J)
    fJ1 = np.einsum("cpb,pa->cab", f, J)
    fJ2 = np.einsum("caq,qb->cab", f, J)
    integ = f - fJJ + np.einsum("dc,cab->dab", J, fJ1) + np.einsum("dc,cab->dab", J, fJ2)
    res["integrability"] = float(np.max(np.abs(integ)))
    return res


def from_real_presentation(rp: RealPresentation, tol: float = DEFAULT_TOL) -> HermitianLieAlgebra:
    """Read off ``(C, D)`` in a unitary frame built from the ``+i`` eigenspace of ``J``.

    The frame is obtained by Gram-Schmidt (with one re-orthogonalization
    pass) applied to ``x_a - i J x_a`` in input basis order, using the
    Hermitian form ``h(u, v) = gram(u, conj v)``.
    """
    checks = check_real_presentation(rp, tol)
    for name, value in checks.items():
        if value > tol:
            raise InputError(f"real presentation violates {name} (residual {value:.3e})")
    f, J, G = rp.bracket, rp.J, rp.gram
    m = rp.dim
    n = m // 2

    def h(u, v):
        return u @ G @ v.conj()

    frame: list[np.ndarray] = []
    for a in range(m):
        x = np.zeros(m)
        x[a] = 1.0
        u = x - 1j * (J @ x)
        for _ in range(2):
            for e in frame:
                u = u - h(u, e) * e
        norm = np.sqrt(abs(h(u, u)))
        if norm > tol * 10:
            frame.append(u / norm)
        if len(frame) == n:
            break
    if len(frame) != n:
        raise InputError("could not build a unitary frame of the +i eigenspace")
    E = np.array(frame).T  # columns e_k
    Ec = E.conj()
    br = np.einsum("cab,ai,bk->cik", f.astype(complex), E, E)
    C = np.einsum("cik,cd,dj->jik", br, G, Ec)
    br2 = np.einsum("cab,aj,bk->cjk", f.astype(complex), Ec, E)
    D = np.einsum("cjk,cd,di->jik", br2, G, E)
    return HermitianLieAlgebra(n, C, D)


# ---------------------------------------------------------------------------
# classification


def _span(vectors: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis (columns) of the column span, relative SVD cutoff."""
    if vectors.size == 0:
        return np.zeros((vectors.shape[0], 0))
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    if s.size == 0 or s[0] <= tol:
        return np.zeros((vectors.shape[0], 0))
    keep = s > max(tol * s[0], tol)
    return u[:, keep]


def _bracket_span(f: np.ndarray, U: np.ndarray, V: np.ndarray, tol: float) -> np.ndarray:
    if U.shape[1] == 0 or V.shape[1] == 0:
        return np.zeros((f.shape[0], 0))
    w = np.einsum("cab,ai,bj->cij", f, U, V).reshape(f.shape[0], -1)
    return _span(w, tol)


def _contained(U: np.ndarray, V: np.ndarray, tol: float) -> bool:
    """Is span(U) inside span(V)? (V orthonormal columns)"""
    if U.shape[1] == 0:
        return True
    resid = U - V @ (V.T @ U)
    return float(np.max(np.abs(resid))) <= tol * max(1.0, float(np.max(np.abs(U))))


def _series(f: np.ndarray, start: np.ndarray, step, tol: float) -> tuple[bool, tuple]:
    dims = [start.shape[1]]
    S = start
    while S.shape[1] > 0:
        S_next = step(S)
        dims.append(S_next.shape[1])
        if S_next.shape[1] == S.shape[1]:
            return False, tuple(dims)
        S = S_next
    return True, tuple(dims)


def classify(alg: HermitianLieAlgebra, tol: float = DEFAULT_TOL) -> ClassificationFlags:
    """Nilpotency, solvability and commutator properties of the real algebra."""
    rp = to_real_presentation(alg)
    f, J = rp.bracket, rp.J
    m = rp.dim
    full = np.eye(m)
    solvable, derived = _series(f, full, lambda S: _bracket_span(f, S, S, tol), tol)
    nilpotent, lower = _series(f, full, lambda S: _bracket_span(f, full, S, tol), tol)
    comm = _bracket_span(f, full, full, tol)
    j_inv = _contained(J @ comm, comm, tol)
    h = _span(np.hstack([comm, J @ comm]), tol)
    closed = _contained(_bracket_span(f, h, h, tol), h, tol)
    h_nil = closed and _series(f, h, lambda S: _bracket_span(f, h, S, tol), tol)[0]
    return ClassificationFlags(
        is_nilpotent=nilpotent,
        is_solvable=solvable,
        commutator_J_invariant=j_inv,
        commutator_plus_J_nilpotent=h_nil,
        is_unimodular=unimodularity_defect(alg) <= tol,
        commutator_dim=comm.shape[1],
        derived_dims=derived,
        lower_central_dims=lower,
    )


# ---------------------------------------------------------------------------
# validation


def validate(alg: HermitianLieAlgebra, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Antisymmetry, Jacobi and frame-pattern residuals in one report."""
    from .families import pattern_residual

    C = alg.C
    return ValidationReport(
        antisymmetry_residual=float(np.max(np.abs(C + C.transpose(0, 2, 1)))),
        jacobi_residual=jacobi_residual(alg),
        pattern_residual=pattern_residual(alg),
        frame_kind=alg.frame_kind,
        tol=tol,
    )


def index_tuples(n: int, k: int):
    return itertools.product(range(n), repeat=k)
