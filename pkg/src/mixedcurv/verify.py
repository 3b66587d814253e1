"""Executable checks of the constant-mixed-curvature statements on concrete data.

Every check returns a :class:`VerificationReport`.  Failed checks are report
entries, never exceptions; only malformed input raises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import DEFAULT_TOL, FrameKind, HermitianLieAlgebra, classify
from .curvature import MixedParams, chern_curvature, constant_mixed_test, mixed_value
from .errors import InputError
from .families import fixture, pattern_residual, salamon_pattern_residual


@dataclass
class VerificationReport:
    """Outcome of one check.

    ``residuals`` maps a name to ``(value, tolerance)``; the check passes
    iff every value is within its tolerance.  Informational reports were
    run although the hypotheses of the statement were not met.
    """

    check: str
    residuals: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    informational: bool = False
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(val <= tol for val, tol in self.residuals.values())

    def require(self, name: str, value: float, tol: float) -> None:
        self.residuals[name] = (float(value), float(tol))

    def note(self, line: str) -> None:
        self.lines.append(line)


# ---------------------------------------------------------------------------
# constant mixed curvature on Lie algebras


def theorem1_hypotheses(alg: HermitianLieAlgebra, tol: float = DEFAULT_TOL) -> list[str]:
    """Names of the structural hypotheses satisfied by ``alg`` (empty if not unimodular)."""
    flags = classify(alg, tol)
    if not flags.is_unimodular:
        return []
    met = []
    if flags.is_nilpotent:
        met.append("nilpotent")
    if flags.is_solvable and flags.commutator_J_invariant:
        met.append("solvable with J-invariant commutator")
    if alg.frame_kind == FrameKind.ALMOST_ABELIAN and pattern_residual(alg) <= tol:
        met.append("almost abelian")
    if alg.frame_kind == FrameKind.CODIM2 and pattern_residual(alg) <= tol:
        met.append("J-invariant abelian ideal of codimension 2")
    if flags.commutator_plus_J_nilpotent:
        met.append("g' + Jg' nilpotent")
    return met


def verify_theorem1(alg: HermitianLieAlgebra, mp: MixedParams, tol: float = DEFAULT_TOL,
                    flat_tol: float | None = None, seed: int = 0,
                    hypotheses: list[str] | None = None) -> VerificationReport:
    """Constant mixed curvature forces ``c = 0``, and flatness when ``beta != 0``.

    ``hypotheses`` may be passed by callers that already know which
    structural assumptions hold, to skip the classification.
    """
    flat_tol = tol if flat_tol is None else flat_tol
    rep = VerificationReport("theorem1")
    met = theorem1_hypotheses(alg, tol) if hypotheses is None else hypotheses
    if met:
        rep.note("hypotheses met: " + ", ".join(met))
    else:
        rep.informational = True
        rep.note("hypotheses unmet, informational only")
    cm = constant_mixed_test(alg, mp, tol, seed)
    rep.data.update(is_constant=cm.is_constant, c=cm.c, residual=cm.residual)
    if not cm.is_constant:
        rep.note(f"mixed curvature is not constant (residual {cm.residual:.3e}); nothing to check")
        return rep
    rep.note(f"mixed curvature is constant with c = {cm.c:.6g}")
    rep.require("|c|", abs(cm.c), tol)
    if mp.beta != 0:
        rnorm = float(np.max(np.abs(chern_curvature(alg))))
        rep.data["R_max"] = rnorm
        rep.require("max |R|", rnorm, flat_tol)
        rep.note(f"beta != 0, so the metric must be Chern flat: max |R| = {rnorm:.3e}")
    else:
        rep.note("beta = 0: constant Ricci curvature does not force flatness")
    return rep


def verify_lemma_cd0(alg: HermitianLieAlgebra, mp: MixedParams, tol: float = DEFAULT_TOL,
                     r: int | None = None, seed: int = 0) -> VerificationReport:
    """``c = 0`` and vanishing of the ``D`` blocks ``D^g_je``, ``D^j_ik``, ``D^g_ij`` in an admissible frame.

    Latin indices run over the first ``r`` frame vectors and Greek ones
    over the rest.  When ``r`` is omitted the smallest split with zero
    pattern residual is used.
    """
    rep = VerificationReport("lemma-cd0")
    n = alg.n
    if r is None:
        splits = [s for s in range(1, n + 1) if salamon_pattern_residual(alg, s) <= tol]
        r = splits[0] if splits else n
    pat = salamon_pattern_residual(alg, r)
    cm = constant_mixed_test(alg, mp, tol, seed)
    rep.data.update(r=r, pattern_residual=pat, is_constant=cm.is_constant, c=cm.c)
    unmet = []
    if pat > tol:
        unmet.append(f"frame is not admissible for r = {r} (pattern residual {pat:.3e})")
    if mp.beta == 0:
        unmet.append("beta = 0")
    if not cm.is_constant:
        unmet.append(f"mixed curvature is not constant (residual {cm.residual:.3e})")
    if unmet:
        rep.informational = True
        for line in unmet:
            rep.note("precondition unmet: " + line)
        return rep
    D = np.abs(alg.D)
    blocks = {
        "D^g_je": D[r:, :r, r:],
        "D^j_ik": D[:r, :r, :r],
        "D^g_ij": D[r:, :r, :r],
    }
    rep.require("|c|", abs(cm.c), tol)
    for name, blk in blocks.items():
        rep.require(f"max |{name}|", float(blk.max(initial=0.0)), tol)
    rep.note(f"admissible split r = {r}; constant c = {cm.c:.6g}")
    return rep


# ---------------------------------------------------------------------------
# Wallach threefold


WALLACH_WITNESSES = (
    ("e1", np.array([1, 0, 0], dtype=complex)),
    ("e2", np.array([0, 1, 0], dtype=complex)),
    ("(e1+e3)/sqrt2", np.array([1, 0, 1], dtype=complex) / np.sqrt(2)),
    ("(e1+e2)/sqrt2", np.array([1, 1, 0], dtype=complex) / np.sqrt(2)),
)


def wallach_coefficient_system(alpha: Fraction, beta: Fraction) -> tuple[Fraction, list[Fraction]]:
    """Solve the coefficient equations of ``C(X) - c|X|^4`` in exact arithmetic.

    With ``t = |X1|^2 + |X3|^2`` and ``s = |X1 X3|^2`` the quartic is
    ``{2(2a+b) - c}|X2|^4 + t{3(2a+b) - 2c}|X2|^2 + t^2{2(a+b) - c} - 6bs``.
    ``c`` is read from the first coefficient; the remaining ones are
    returned and all vanish only when ``a = b = 0``.
    """
    c = 2 * (2 * alpha + beta)
    rest = [3 * (2 * alpha + beta) - 2 * c, 2 * (alpha + beta) - c, -6 * beta]
    return c, rest


def wallach_nonconstancy(mp: MixedParams, tol: float = DEFAULT_TOL) -> VerificationReport:
    rep = VerificationReport("wallach")
    fx = fixture("wallach")
    R, Ric = fx.curvature, fx.ricci
    vals = {name: mixed_value(R, Ric, mp, X) for name, X in WALLACH_WITNESSES}
    spread = max(vals.values()) - min(vals.values())
    # e1 vs e2 differ by 2 alpha and e1 vs (e1+e3)/sqrt2 by 3 beta / 2
    bound = max(2 * abs(mp.alpha), 1.5 * abs(mp.beta))
    rep.data.update(values=vals, spread=spread, bound=bound)
    for name, val in vals.items():
        rep.note(f"C({name}) = {val:.12g}")
    rep.note(f"spread {spread:.12g} >= bound {bound:.12g}")
    rep.require("bound - spread", bound - spread, tol)
    rep.require("tol - bound", tol - bound, 0.0)  # the bound itself must be positive
    a, b = Fraction(mp.alpha), Fraction(mp.beta)
    c, rest = wallach_coefficient_system(a, b)
    solvable = all(x == 0 for x in rest)
    rep.data["coefficient_system_solvable"] = solvable
    rep.note(f"exact coefficient system: c = {c}, remaining coefficients {[str(x) for x in rest]}")
    rep.require("coefficient system solvable", 1.0 if solvable else 0.0, 0.0)
    return rep


# ---------------------------------------------------------------------------
# middle type balanced BTP threefolds


@dataclass(frozen=True)
class MiddleTypeState:
    x: float
    y: float
    a1: float
    mp: MixedParams
    c: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.a1) and self.a1 > 0):
            raise InputError("a1 must be a positive number")
        if not (np.isfinite(self.x) and np.isfinite(self.y) and np.isfinite(self.c)):
            raise InputError("x, y and c must be finite")


MIDDLE_TYPE_EQUATIONS = (
    "c",
    "(2a+b)x - c",
    "(2a+2b)x - c - b a1^2",
    "4b y",
    "4a x + 6b a1^2 - 2c",
)


def middle_type_residuals(alpha, beta, x, y, a1, c=0.0) -> np.ndarray:
    """The five constraint residuals, broadcast over array arguments.

    The last axis of the result indexes :data:`MIDDLE_TYPE_EQUATIONS`.
    The final two are the imaginary and real parts of the identity at
    ``(i, j, k, l) = (2, 1, 1, 2)``.
    """
    alpha, beta, x, y, a1, c = np.broadcast_arrays(*(np.asarray(t, dtype=float) for t in (alpha, beta, x, y, a1, c)))
    a2 = a1 * a1
    return np.abs(np.stack([
        c,
        (2 * alpha + beta) * x - c,
        (2 * alpha + 2 * beta) * x - c - beta * a2,
        4 * beta * y,
        4 * alpha * x + 6 * beta * a2 - 2 * c,
    ], axis=-1))


def middle_type_feasibility(st: MiddleTypeState, tol: float = DEFAULT_TOL) -> VerificationReport:
    rep = VerificationReport("middle-type")
    res = middle_type_residuals(st.mp.alpha, st.mp.beta, st.x, st.y, st.a1, st.c)
    for name, val in zip(MIDDLE_TYPE_EQUATIONS, res):
        rep.require(name, val, tol)
        rep.note(f"|{name}| = {val:.6g}")
    feasible = rep.passed
    rep.data["feasible"] = feasible
    rep.note("feasible" if feasible else "infeasible")
    return rep


# ---------------------------------------------------------------------------
# non-balanced BTP admissible frames


@dataclass(frozen=True)
class NonBalancedBTPFrameData:
    """Torsion in an admissible frame of a non-balanced BTP manifold.

    Requires ``lam > 0``, ``a[-1] == 0``, ``sum(a) == lam`` (relative
    ``1e-12``), ``T^n_ij = 0`` and ``T^j_in = delta_ij a_i`` exactly.
    """

    n: int
    lam: float
    a: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        n = int(self.n)
        a = np.asarray(self.a, dtype=float)
        T = np.asarray(self.T, dtype=complex)
        if n < 2:
            raise InputError("n must be at least 2")
        if a.shape != (n,) or T.shape != (n, n, n):
            raise InputError("a must have length n and T shape (n, n, n)")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(T))):
            raise InputError("non-finite entries")
        if not self.lam > 0:
            raise InputError("lambda must be positive")
        if a[-1] != 0:
            raise InputError("a_n must vanish")
        if abs(math.fsum(a) - self.lam) > 1e-12 * max(1.0, abs(self.lam)):
            raise InputError("a_1 + ... + a_{n-1} must equal lambda")
        if np.any(T + T.transpose(0, 2, 1) != 0):
            raise InputError("torsion must be antisymmetric in its lower indices")
        if np.any(T[-1] != 0):
            raise InputError("T^n_ij must vanish")
        if np.any(T[:, :, -1] != np.diag(a)):
            raise InputError("T^j_in must equal delta_ij a_i")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "T", T)


def random_admissible_torsion(rng: np.random.Generator, n: int, lam: float | None = None) -> NonBalancedBTPFrameData:
    """Random torsion satisfying the admissible-frame constraints exactly."""
    lam = float(rng.uniform(0.5, 2.0)) if lam is None else float(lam)
    w = rng.uniform(0.1, 1.0, size=n - 1)
    a = np.zeros(n)
    a[: n - 1] = lam * w / w.sum()
    a[n - 2] = lam - math.fsum(a[: n - 2])  # exact closure of the sum
    T = np.zeros((n, n, n), dtype=complex)
    m = n - 1
    blk = rng.normal(size=(m, m, m)) + 1j * rng.normal(size=(m, m, m))
    T[:m, :m, :m] = blk - blk.transpose(0, 2, 1)
    T[:, :, -1] = np.diag(a)
    T[:, -1, :] = -np.diag(a)
    return NonBalancedBTPFrameData(n, lam, a, T)


def nonbalanced_btp_check(fd: NonBalancedBTPFrameData, mp: MixedParams | None = None) -> VerificationReport:
    """The double sum ``sum_{k,s} |T^k_ns|^2 - |T^s_nk|^2`` and the resulting ``c = 0``.

    Both sums run over the same multiset of squared moduli, so the
    correctly rounded ``math.fsum`` totals are identical and the
    difference is exactly zero.
    """
    rep = VerificationReport("thm3")
    n = fd.n
    T = fd.T
    sq = np.abs(T) ** 2
    first = math.fsum(float(sq[k, n - 1, s]) for k in range(n) for s in range(n))
    second = math.fsum(float(sq[s, n - 1, k]) for k in range(n) for s in range(n))
    identity = first - second
    rep.data.update(identity=identity, sum_Tk_ns=first, sum_Ts_nk=second)
    rep.require("identity (exact)", abs(identity), 0.0)
    rep.note(f"sum |T^k_ns|^2 = {first!r}, sum |T^s_nk|^2 = {second!r}, difference {identity!r}")
    rep.note("e_n is Bismut parallel, so R^b_{n nbar k kbar} = 0 for every k")
    ricci_nn = 0.0 - identity
    rep.note(f"summing over k: R_{{n nbar}} = -(difference) = {ricci_nn!r}")
    rep.note("T^n_** = 0 turns the diagonal identity at i = n into alpha R_{n nbar} = c")
    alpha = 1.0 if mp is None else mp.alpha
    c = alpha * ricci_nn
    rep.data.update(ricci_nn=ricci_nn, c=c)
    rep.require("|c|", abs(c), 0.0)
    rep.note(f"hence c = {c!r}: no non-zero constant is possible")
    return rep
