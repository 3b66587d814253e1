"""Closed-form families, their curvature records, samplers and the fixture catalog.

Two families of admissible frames are covered.

Almost abelian, with ``2 <= i, j <= n``::

    D^1_11 = lam,  D^1_i1 = v_i,  D^j_i1 = A_ij,  C^j_1i = -conj(A_ji)

Codimension-2 ``J``-invariant abelian ideal::

    C^j_1i = X_ij,  D^1_11 = lam,  D^j_i1 = Y_ij,  D^1_ij = Z_ij,  D^1_i1 = v_i

Matrices ``A, X, Y, Z`` and vectors ``v`` are indexed from the second frame
vector, so ``A[0, 0]`` is ``A_22``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .algebra import DEFAULT_TOL, FrameKind, HermitianLieAlgebra, change_frame, random_unitary
from .curvature import chern_curvature, chern_torsion, first_ricci
from .errors import InputError

# ---------------------------------------------------------------------------
# parameters


def _vec(x, m, name):
    a = np.asarray(x, dtype=complex).reshape(-1)
    if a.shape != (m,):
        raise InputError(f"{name} must have length {m}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} has non-finite entries")
    return a


def _mat(x, m, name):
    a = np.asarray(x, dtype=complex)
    if a.shape != (m, m):
        raise InputError(f"{name} must be {m}x{m}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} has non-finite entries")
    return a


def _real(x, name):
    z = complex(x)
    if z.imag != 0.0 or not np.isfinite(z.real):
        raise InputError(f"{name} must be a finite real number")
    return z.real


@dataclass(frozen=True)
class AlmostAbelianParams:
    n: int
    lam: float
    v: np.ndarray
    A: np.ndarray

    def __post_init__(self):
        n = int(self.n)
        if n < 2:
            raise InputError("almost abelian family needs n >= 2")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "lam", _real(self.lam, "lambda"))
        object.__setattr__(self, "v", _vec(self.v, n - 1, "v"))
        object.__setattr__(self, "A", _mat(self.A, n - 1, "A"))

    @classmethod
    def zeros(cls, n: int) -> "AlmostAbelianParams":
        return cls(n, 0.0, np.zeros(n - 1), np.zeros((n - 1, n - 1)))


@dataclass(frozen=True)
class Codim2Params:
    n: int
    lam: float
    v: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray

    def __post_init__(self):
        n = int(self.n)
        if n < 2:
            raise InputError("codimension-2 family needs n >= 2")
        m = n - 1
        object.__setattr__(self, "n", n)
        lam = _real(self.lam, "lambda")
        if lam < 0:
            raise InputError("lambda must be >= 0 (the phase of e_1 is normalized)")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "v", _vec(self.v, m, "v"))
        for name in ("X", "Y", "Z"):
            object.__setattr__(self, name, _mat(getattr(self, name), m, name))

    @classmethod
    def zeros(cls, n: int) -> "Codim2Params":
        z = np.zeros((n - 1, n - 1))
        return cls(n, 0.0, np.zeros(n - 1), z, z, z)


def commutator_star(A: np.ndarray) -> np.ndarray:
    """``[A, A*]``."""
    As = A.conj().T
    return A @ As - As @ A


# ---------------------------------------------------------------------------
# almost abelian


def almost_abelian_build(p: AlmostAbelianParams) -> HermitianLieAlgebra:
    n = p.n
    C = np.zeros((n, n, n), dtype=complex)
    D = np.zeros((n, n, n), dtype=complex)
    D[0, 0, 0] = p.lam
    D[0, 1:, 0] = p.v
    D[1:, 1:, 0] = p.A.T
    C[1:, 0, 1:] = -p.A.conj()
    C[1:, 1:, 0] = p.A.conj()
    return HermitianLieAlgebra(n, C, D, FrameKind.ALMOST_ABELIAN)


def almost_abelian_torsion(p: AlmostAbelianParams) -> dict:
    """Nonzero torsion components ``{(k, i, j): T^k_ij}``, both orderings of ``(i, j)``."""
    out = {}
    S = p.A + p.A.conj().T
    for a in range(1, p.n):
        out[(0, 0, a)] = p.v[a - 1]
        for b in range(1, p.n):
            out[(b, 0, a)] = S[a - 1, b - 1]
    for (k, i, j), val in list(out.items()):
        out[(k, j, i)] = -val
    return {key: val for key, val in out.items() if val != 0}


def almost_abelian_curvature(p: AlmostAbelianParams) -> dict:
    """The only possibly nonzero Chern curvature components ``{(i, j, k, l): R}``.

    ``R_{1 1bar 1 ibar}`` is listed as the Hermitian partner of
    ``R_{1 1bar i 1bar}``.
    """
    lam, v, A = p.lam, p.v, p.A
    out = {(0, 0, 0, 0): complex(-2 * lam**2 - np.vdot(v, v).real)}
    col = -(A.conj().T @ v)  # -sum_k conj(A_ki) v_k
    M = np.outer(v, v.conj()) + commutator_star(A) - lam * (A + A.conj().T)
    for a in range(1, p.n):
        out[(0, 0, a, 0)] = complex(col[a - 1])
        out[(0, 0, 0, a)] = complex(np.conj(col[a - 1]))
        for b in range(1, p.n):
            out[(0, 0, a, b)] = complex(M[a - 1, b - 1])
    return out


def almost_abelian_ricci_11(p: AlmostAbelianParams) -> float:
    """``R_{1 1bar}``; equals ``-lam^2`` on the unimodular locus."""
    return float(-2 * p.lam**2 - p.lam * 2 * np.trace(p.A).real)


@dataclass
class FamilyFlags:
    unimodular: bool
    chern_flat: bool
    unimodular_defect: float
    flat_distance: float


def almost_abelian_flags(p: AlmostAbelianParams, tol: float = DEFAULT_TOL) -> FamilyFlags:
    defect = abs(p.lam + 2 * np.trace(p.A).real)
    dist = max(abs(p.lam), float(np.linalg.norm(p.v)), float(np.linalg.norm(commutator_star(p.A))))
    return FamilyFlags(defect <= tol, dist <= tol, defect, dist)


def almost_abelian_from_algebra(alg: HermitianLieAlgebra) -> AlmostAbelianParams:
    D = alg.D
    return AlmostAbelianParams(alg.n, D[0, 0, 0].real, D[0, 1:, 0], D[1:, 1:, 0].T)


# ---------------------------------------------------------------------------
# codimension 2


def codim2_constraint_residuals(p: Codim2Params) -> tuple[float, float]:
    """Max moduli of the two Jacobi constraint matrices."""
    lam, X, Y, Z = p.lam, p.X, p.Y, p.Z
    Xs = X.conj().T
    first = lam * (Xs + Y) + (Xs @ Y - Y @ Xs) - Z @ Z.conj()
    second = lam * Z - (Z @ X.T + Y @ Z)
    return float(np.max(np.abs(first))), float(np.max(np.abs(second)))


def _codim2_tensors(p: Codim2Params):
    n = p.n
    C = np.zeros((n, n, n), dtype=complex)
    D = np.zeros((n, n, n), dtype=complex)
    D[0, 0, 0] = p.lam
    D[0, 1:, 0] = p.v
    D[1:, 1:, 0] = p.Y.T
    D[0, 1:, 1:] = p.Z
    C[1:, 0, 1:] = p.X.T
    C[1:, 1:, 0] = -p.X.T
    return C, D


def codim2_build(p: Codim2Params, tol: float = DEFAULT_TOL) -> HermitianLieAlgebra:
    r1, r2 = codim2_constraint_residuals(p)
    if max(r1, r2) > tol:
        raise InputError(f"codimension-2 Jacobi constraints violated: residuals {r1:.3e}, {r2:.3e}")
    C, D = _codim2_tensors(p)
    return HermitianLieAlgebra(p.n, C, D, FrameKind.CODIM2)


def codim2_from_algebra(alg: HermitianLieAlgebra) -> Codim2Params:
    C, D = alg.C, alg.D
    return Codim2Params(alg.n, D[0, 0, 0].real, D[0, 1:, 0], C[1:, 0, 1:].T, D[1:, 1:, 0].T, D[0, 1:, 1:])


def codim2_torsion(p: Codim2Params) -> dict:
    """Nonzero torsion components ``{(k, i, j): T^k_ij}``, both orderings of ``(i, j)``."""
    out = {}
    for a in range(1, p.n):
        out[(0, 0, a)] = p.v[a - 1]
        for b in range(1, p.n):
            if a < b:
                out[(0, a, b)] = p.Z[b - 1, a - 1] - p.Z[a - 1, b - 1]
            out[(b, 0, a)] = p.Y[a - 1, b - 1] - p.X[a - 1, b - 1]
    for (k, i, j), val in list(out.items()):
        out[(k, j, i)] = -val
    return {key: val for key, val in out.items() if val != 0}


@dataclass
class Codim2Curvature:
    """Closed-form curvature data of a codimension-2 admissible frame.

    ``H_block[a]`` is ``R_{i ibar i ibar}`` and ``Rhat_block[a, b]`` is
    ``Rhat_{i ibar k kbar}`` (``i != k``) for ``i = a + 2``, ``k = b + 2``;
    the diagonal of ``Rhat_block`` is unused and set to ``nan``.
    """

    R1111: float
    H_block: np.ndarray
    Rhat_block: np.ndarray
    Rhat_11ij: np.ndarray
    Rhat_11_trace: float
    ricci_11: float
    ricci_block: np.ndarray
    unimodular_trace_residual: float


def codim2_curvature(p: Codim2Params) -> Codim2Curvature:
    lam, v, X, Y, Z = p.lam, p.v, p.X, p.Y, p.Z
    m = p.n - 1
    Ys = Y.conj().T
    vv = float(np.vdot(v, v).real)
    S = Z + Z.T
    Rhat_block = np.abs(S) ** 2 / 4
    np.fill_diagonal(Rhat_block, np.nan)
    M = (np.outer(v, v.conj()) + commutator_star(Y) - lam * (Ys + Y)
         - Z @ Z.conj() - Z.T @ Z.conj().T - Z.T @ Z.conj()) / 4
    trZZ = np.trace(Z @ Z.conj())
    normZ2 = float(np.sum(np.abs(Z) ** 2))
    trace_line = (vv - lam * np.trace(Y + Ys) - 2 * trZZ - normZ2) / 4
    return Codim2Curvature(
        R1111=-2 * lam**2 - vv,
        H_block=np.abs(np.diag(Z)) ** 2,
        Rhat_block=Rhat_block,
        Rhat_11ij=M,
        Rhat_11_trace=float(trace_line.real),
        ricci_11=float((-2 * lam**2 - lam * np.trace(Y + Ys)).real),
        ricci_block=np.zeros((m, m), dtype=complex),
        unimodular_trace_residual=float(abs(trZZ - lam * np.trace(Ys + Y) - lam**2)),
    )


def codim2_flags(p: Codim2Params, tol: float = DEFAULT_TOL) -> FamilyFlags:
    Xs = p.X.conj().T
    defect = abs(p.lam - np.trace(p.X) + np.trace(p.Y))
    dist = max(abs(p.lam), float(np.linalg.norm(p.v)), float(np.linalg.norm(p.Z)),
               float(np.linalg.norm(commutator_star(p.Y))), float(np.linalg.norm(p.Y @ Xs - Xs @ p.Y)))
    return FamilyFlags(defect <= tol, dist <= tol, float(defect), dist)


@dataclass
class OffdiagCheck:
    values: tuple[complex, complex, complex]
    expected: tuple[complex, complex, complex]
    residual: float


def codim2_offdiag_entry(p: Codim2Params, tol: float = DEFAULT_TOL) -> OffdiagCheck:
    """``(R_{1 1bar 1 2bar}, R_{1 2bar 1 1bar}, R_{1 2bar 2 2bar})`` against ``(-v conj Z, -v conj Z, v conj Z)``."""
    if p.n != 2:
        raise InputError("the off-diagonal check is defined for n = 2 only")
    R = chern_curvature(codim2_build(p, tol))
    vals = (complex(R[0, 0, 0, 1]), complex(R[0, 1, 0, 0]), complex(R[0, 1, 1, 1]))
    w = complex(p.v[0] * np.conj(p.Z[0, 0]))
    exp = (-w, -w, w)
    return OffdiagCheck(vals, exp, max(abs(a - b) for a, b in zip(vals, exp)))


# ---------------------------------------------------------------------------
# samplers


def _disk(rng: np.random.Generator, shape, scale=1.0) -> np.ndarray:
    """Uniform samples from the complex disk of radius ``scale``."""
    r = scale * np.sqrt(rng.uniform(size=shape))
    return r * np.exp(2j * np.pi * rng.uniform(size=shape))


def random_almost_abelian(rng: np.random.Generator, n: int, unimodular: bool = False,
                          scale: float = 1.0) -> AlmostAbelianParams:
    lam = scale * rng.uniform(-1, 1)
    v = _disk(rng, n - 1, scale)
    A = _disk(rng, (n - 1, n - 1), scale)
    p = AlmostAbelianParams(n, lam, v, A)
    return project_unimodular(p) if unimodular else p


def project_unimodular(p: AlmostAbelianParams) -> AlmostAbelianParams:
    """Shift ``Re diag(A)`` uniformly so that ``lam + 2 Re tr A = 0``."""
    m = p.n - 1
    shift = (p.lam + 2 * np.trace(p.A).real) / (2 * m)
    return AlmostAbelianParams(p.n, p.lam, p.v, p.A - shift * np.eye(m))


def random_normal_matrix(rng: np.random.Generator, m: int, scale: float = 1.0) -> np.ndarray:
    U = random_unitary(rng, m)
    return U @ np.diag(_disk(rng, m, scale)) @ U.conj().T


CODIM2_CHARTS = ("skew", "flat", "zblock")


def random_codim2(rng: np.random.Generator, n: int, unimodular: bool = False,
                  chart: str | None = None, scale: float = 1.0) -> Codim2Params:
    """A random point of the codimension-2 constraint variety.

    Charts (``W`` stands for ``X*``):

    ``skew``
        ``Z = 0``, ``lam > 0``, ``X = -Y*``; unimodular after shifting ``Re tr Y``.
    ``flat``
        ``Z = 0``, ``lam = 0``, ``W = a + bY + cY^2`` commuting with ``Y``.
    ``zblock``
        ``W = diag(lam I_p, -Y2)``, ``Y = diag(0, Y2)``,
        ``Z = diag(lam exp(iH), 0)`` with ``H`` real symmetric, so that
        ``Z conj(Z) = lam^2`` on the first block.

    The result is rotated by a random unitary change of ``e_2 .. e_n``,
    which keeps the frame admissible.
    """
    if n < 2:
        raise InputError("codimension-2 family needs n >= 2")
    m = n - 1
    if chart is None:
        chart = CODIM2_CHARTS[int(rng.integers(len(CODIM2_CHARTS)))]
    v = _disk(rng, m, scale)
    Y = _disk(rng, (m, m), scale)
    Z = np.zeros((m, m), dtype=complex)
    if chart == "skew":
        lam = scale * rng.uniform(0.05, 1)
        if unimodular:
            Y = Y - (lam + 2 * np.trace(Y).real) / (2 * m) * np.eye(m)
        W = -Y
    elif chart == "flat":
        lam = 0.0
        b, c = _disk(rng, 2)
        W = b * Y + c * Y @ Y
        if unimodular:
            # tr X = conj(tr W) must equal tr Y
            a = (np.conj(np.trace(Y)) - np.trace(W)) / m
        else:
            a = _disk(rng, 1, scale)[0]
        W = W + a * np.eye(m)
    elif chart == "zblock":
        lam = scale * rng.uniform(0.05, 1)
        p = int(rng.integers(1, m + 1))
        if unimodular and p == m and m > 1:
            p = 1
        q = m - p
        H = rng.normal(size=(p, p))
        Z[:p, :p] = lam * expm(1j * (H + H.T) / 2)
        Y = np.zeros((m, m), dtype=complex)
        W = np.zeros((m, m), dtype=complex)
        W[:p, :p] = lam * np.eye(p)
        if q:
            Y2 = _disk(rng, (q, q), scale)
            if unimodular:
                Y2 = Y2 - (np.trace(Y2).real - lam * (p - 1) / 2) / q * np.eye(q)
            Y[p:, p:] = Y2
            W[p:, p:] = -Y2
    else:
        raise InputError(f"unknown codimension-2 chart {chart!r}")
    base = Codim2Params(n, lam, v, W.conj().T, Y, Z)
    return rotate_codim2(base, random_unitary(rng, m))


def rotate_codim2(p: Codim2Params, U: np.ndarray) -> Codim2Params:
    """Apply ``e~_1 = e_1``, ``e~_i = sum_j U_ij e_j`` on the ideal directions."""
    C, D = _codim2_tensors(p)
    full = np.eye(p.n, dtype=complex)
    full[1:, 1:] = U
    rotated = change_frame(HermitianLieAlgebra(p.n, C, D), full)
    return codim2_from_algebra(rotated)


def near_flat_almost_abelian(rng: np.random.Generator, n: int, eps: float,
                             parts=("lam", "v", "A")) -> AlmostAbelianParams:
    """An ``O(1)`` point of the flat locus moved by ``eps`` in the listed parameter groups.

    The base ``A`` is normal with eigenvalues of modulus in ``[0.5, 1]`` and
    a nonzero Hermitian part, so every perturbation enters the curvature
    at first order.
    """
    m = n - 1
    U = random_unitary(rng, m)
    ev = (0.5 + 0.5 * rng.uniform(size=m)) * np.exp(1j * rng.uniform(-1, 1, size=m))
    A = U @ np.diag(ev) @ U.conj().T
    lam, v = 0.0, np.zeros(m, dtype=complex)
    if "lam" in parts:
        lam = eps * rng.choice([-1.0, 1.0])
    if "v" in parts:
        v = eps * _unit(rng, m)
    if "A" in parts and m > 1:
        A = A + eps * _unit(rng, m * m).reshape(m, m)
    return AlmostAbelianParams(n, lam, v, A)


def near_flat_codim2(rng: np.random.Generator, n: int, eps: float, part: str | None = None) -> Codim2Params:
    """An ``O(1)`` flat codimension-2 point moved off the flat locus by ``eps``.

    ``part`` selects the perturbation: ``"v"``, ``"lam"`` (skew chart with
    normal ``Y``), ``"Y"`` (non-normal perturbation of ``Y`` with
    ``X* = Y``-commuting), or ``None`` for an exactly flat point.
    """
    m = n - 1
    U = random_unitary(rng, m)
    ev = (0.5 + 0.5 * rng.uniform(size=m)) * np.exp(1j * rng.uniform(-1, 1, size=m))
    Y = U @ np.diag(ev) @ U.conj().T
    W = U @ np.diag(0.7 * ev + 0.3 * ev**2 + 0.2) @ U.conj().T
    lam, v = 0.0, np.zeros(m, dtype=complex)
    if part == "v":
        v = eps * _unit(rng, m)
    elif part == "lam":
        lam = eps
        W = -Y
    elif part == "Y":
        if m < 2:
            v = eps * _unit(rng, m)
        else:
            E = np.zeros((m, m), dtype=complex)
            E[0, 1] = eps
            Y = Y + U @ E @ U.conj().T
            W = Y.copy()  # X* = Y keeps [X*, Y] = 0 and leaves [Y, Y*] of order eps
            lam = 0.0
    elif part is not None:
        raise InputError(f"unknown perturbation {part!r}")
    return Codim2Params(n, lam, v, W.conj().T, Y, np.zeros((m, m)))


def _unit(rng: np.random.Generator, k: int) -> np.ndarray:
    z = rng.normal(size=k) + 1j * rng.normal(size=k)
    return z / np.linalg.norm(z)


# ---------------------------------------------------------------------------
# frame patterns


def salamon_pattern_residual(alg: HermitianLieAlgebra, r: int) -> float:
    """Largest entry violating the admissible pattern for the split ``r``.

    Directions beyond ``r`` must satisfy ``C^g_ab = D^a_gb = 0``; inside the
    first ``r`` directions ``C^j_ik`` vanishes unless ``j > i`` or ``j > k``
    and ``D^j_ik`` vanishes unless ``i > j``.
    """
    n = alg.n
    if not 1 <= r <= n:
        raise InputError(f"split r must satisfy 1 <= r <= {n}")
    C, D = np.abs(alg.C), np.abs(alg.D)
    worst = 0.0
    if r < n:
        worst = max(float(C[r:].max()), float(D[:, r:, :].max()))
    j, i, k = np.meshgrid(np.arange(r), np.arange(r), np.arange(r), indexing="ij")
    c_bad = ~((j > i) | (j > k))
    d_bad = ~(i > j)
    worst = max(worst, float(C[:r, :r, :r][c_bad].max(initial=0.0)), float(D[:r, :r, :r][d_bad].max(initial=0.0)))
    return worst


def best_salamon_split(alg: HermitianLieAlgebra) -> tuple[int, float]:
    """The split ``r`` with the smallest pattern residual (smallest ``r`` on ties)."""
    res = [(salamon_pattern_residual(alg, r), r) for r in range(1, alg.n + 1)]
    val, r = min(res)
    return r, val


def _support_residual(alg: HermitianLieAlgebra, C_ref, D_ref) -> float:
    C = alg.C - C_ref
    D = alg.D - D_ref
    return float(max(np.max(np.abs(C)), np.max(np.abs(D))))


def pattern_residual(alg: HermitianLieAlgebra) -> float:
    """Residual of the sparse normal form declared by ``alg.frame_kind``.

    Generic and special frames carry no structure-constant pattern and give 0.
    """
    kind = alg.frame_kind
    if kind == FrameKind.SALAMON:
        return best_salamon_split(alg)[1]
    if kind == FrameKind.ALMOST_ABELIAN:
        if alg.n < 2:
            return 0.0
        ref = almost_abelian_build(almost_abelian_from_algebra(alg))
        return _support_residual(alg, ref.C, ref.D)
    if kind == FrameKind.CODIM2:
        if alg.n < 2:
            return 0.0
        return _support_residual(alg, *_codim2_tensors(codim2_from_algebra(alg)))
    if kind == FrameKind.NONBALANCED_BTP:
        T = chern_torsion(alg)
        M = T[:, :, -1]  # M[j, i] = T^j_in
        a = np.diag(M)
        return float(max(np.max(np.abs(T[-1])), np.max(np.abs(M - np.diag(a))),
                         np.max(np.abs(a.imag)), abs(a[-1])))
    return 0.0


# ---------------------------------------------------------------------------
# fixtures


@dataclass(frozen=True)
class Fixture:
    """A named test object.

    ``algebra`` is ``None`` for pointwise-only fixtures, which instead carry
    the curvature tensor at a reference point together with its Ricci form.
    """

    name: str
    algebra: HermitianLieAlgebra | None = None
    curvature: np.ndarray | None = field(default=None, repr=False)
    ricci: np.ndarray | None = field(default=None, repr=False)
    description: str = ""

    @property
    def pointwise(self) -> bool:
        return self.algebra is None


def wallach_tensor() -> np.ndarray:
    """Chern curvature of the Wallach threefold at the reference point (0-based)."""
    R = np.zeros((3, 3, 3, 3), dtype=complex)
    for i in range(3):
        R[i, i, i, i] = 2
    R[1, 1, 0, 0] = R[1, 1, 2, 2] = 1
    R[0, 1, 1, 0] = R[2, 1, 1, 2] = 1
    R[0, 2, 2, 0] = -1
    # Hermitian partners conj(R_ijkl) = R_jilk
    R[1, 0, 0, 1] = R[1, 2, 2, 1] = 1
    R[2, 0, 0, 2] = -1
    return R


FIXTURE_NAMES = ("abelian", "heisenberg", "kodaira", "sl2c", "wallach")


def _parse_fixture_name(name: str) -> tuple[str, int | None]:
    s = name.strip().lower()
    for sep in (":", "("):
        if sep in s:
            base, arg = s.split(sep, 1)
            arg = arg.rstrip(")")
            try:
                return base, int(arg)
            except ValueError:
                raise InputError(f"bad fixture argument in {name!r}") from None
    return s, None


def fixture(name: str) -> Fixture:
    base, arg = _parse_fixture_name(name)
    if base not in FIXTURE_NAMES:
        raise InputError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    if arg is not None and base != "abelian":
        raise InputError(f"fixture {base!r} takes no argument")
    if base == "abelian":
        n = 3 if arg is None else arg
        if n < 1:
            raise InputError("abelian fixture needs n >= 1")
        return Fixture(f"abelian:{n}", HermitianLieAlgebra.zeros(n), description="zero brackets")
    if base == "heisenberg":
        C = np.zeros((3, 3, 3), dtype=complex)
        C[0, 1, 2], C[0, 2, 1] = 1, -1
        return Fixture("heisenberg", HermitianLieAlgebra(3, C, np.zeros_like(C)),
                       description="complex Heisenberg group, [e_2, e_3] = e_1")
    if base == "kodaira":
        D = np.zeros((2, 2, 2), dtype=complex)
        D[0, 1, 0] = -1
        return Fixture("kodaira", HermitianLieAlgebra(2, np.zeros_like(D), D),
                       description="Kodaira surface, D^1_21 = -1")
    if base == "sl2c":
        C = np.zeros((3, 3, 3), dtype=complex)
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            C[k, i, j], C[k, j, i] = 1, -1
        return Fixture("sl2c", HermitianLieAlgebra(3, C, np.zeros_like(C)),
                       description="C^k_ij = eps_ijk, D = 0")
    R = wallach_tensor()
    return Fixture("wallach", None, R, first_ricci(R), description="pointwise curvature of the Wallach threefold")
