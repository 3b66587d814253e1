"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import io
from .algebra import DEFAULT_TOL, classify, validate
from .curvature import (
    MixedParams,
    bismut_curvature,
    btp_symmetrization_residual,
    chern_curvature,
    chern_torsion,
    constant_mixed_test_tensor,
    covariant_torsion_derivative,
    first_ricci,
    hermitian_defect,
    streets_tian,
    symmetrize,
)
from .errors import InputError, InternalError, PreconditionError
from .families import FIXTURE_NAMES, AlmostAbelianParams, fixture
from .search import SearchProblem, minimize
from .verify import (
    MiddleTypeState,
    middle_type_feasibility,
    nonbalanced_btp_check,
    random_admissible_torsion,
    verify_lemma_cd0,
    verify_theorem1,
    wallach_nonconstancy,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class Sparse:
    """A tensor shown as its nonzero entries."""

    def __init__(self, a: np.ndarray, label: str, keep=None):
        self.entries = io.sparse(a, keep)
        self.label = label

    def to_json(self):
        return self.entries

    def text_lines(self):
        if not self.entries:
            return ["  (all zero)"]
        return [f"  {self.label}[{','.join(map(str, idx))}] = {io.fmt_complex(complex(*val))}"
                for idx, val in self.entries]


def _clean_floats(obj):
    if isinstance(obj, float):
        return io._clean(obj) if np.isfinite(obj) else str(obj)
    if isinstance(obj, dict):
        return {k: _clean_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean_floats(v) for v in obj]
    return obj


def _text(report: dict, indent: str = "") -> list:
    lines = []
    for key, val in report.items():
        if isinstance(val, Sparse):
            lines.append(f"{indent}{key}:")
            lines.extend(indent + line for line in val.text_lines())
        elif isinstance(val, dict):
            lines.append(f"{indent}{key}:" if val else f"{indent}{key}: (none)")
            lines.extend(_text(val, indent + "  "))
        elif isinstance(val, list) and val and all(isinstance(v, str) for v in val):
            lines.append(f"{indent}{key}:")
            lines.extend(f"{indent}  {v}" for v in val)
        elif isinstance(val, float):
            lines.append(f"{indent}{key}: {io.fmt_number(val)}")
        elif isinstance(val, list):
            lines.append(f"{indent}{key}: {json.dumps(_clean_floats(val))}")
        else:
            lines.append(f"{indent}{key}: {val}")
    return lines


def emit(report: dict, as_json: bool, out) -> None:
    if as_json:
        # one top-level member per line keeps golden-file diffs readable
        report = _clean_floats({k: (v.to_json() if isinstance(v, Sparse) else v) for k, v in report.items()})
        body = ",\n".join(f" {json.dumps(k)}: {json.dumps(v, separators=(',', ':'))}" for k, v in report.items())
        out.write("{\n" + body + "\n}\n")
    else:
        out.write("\n".join(_text(report)) + "\n")


def _header(cmd, parsed, args) -> dict:
    rep = {"command": cmd}
    if parsed is not None:
        rep["input_digest"] = parsed.digest
    rep["tol"] = args.tol
    return rep


def _require_algebra(parsed, cmd):
    if parsed.algebra is None:
        raise InputError(f"'{cmd}' needs a Lie algebra document, not a pointwise tensor")
    return parsed.algebra


def _mp(args) -> MixedParams:
    return MixedParams(args.alpha, args.beta)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args, out):
    parsed = io.load(args.file, args.tol)
    alg = _require_algebra(parsed, "validate")
    v = validate(alg, args.tol)
    rep = _header("validate", parsed, args)
    rep.update({
        "n": alg.n,
        "frame_kind": v.frame_kind.value,
        "antisymmetry_residual": v.antisymmetry_residual,
        "jacobi_residual": v.jacobi_residual,
        "pattern_residual": v.pattern_residual,
        "passed": v.passed,
    })
    return rep, EXIT_OK if v.passed else EXIT_FAILED


def cmd_curvature(args, out):
    parsed = io.load(args.file, args.tol)
    rep = _header("curvature", parsed, args)
    if parsed.algebra is None:
        R = parsed.curvature
        rep["n"] = R.shape[0]
        rep["pointwise"] = True
        rep["hermitian_defect"] = hermitian_defect(R)
        if args.bismut:
            raise InputError("--bismut needs a Lie algebra document")
    else:
        alg = parsed.algebra
        T = chern_torsion(alg)
        R = chern_curvature(alg)
        rep["n"] = alg.n
        rep["torsion"] = Sparse(T, "T", keep=lambda idx: idx[1] < idx[2])
    rep["chern_curvature"] = Sparse(R, "R")
    rep["ricci"] = Sparse(first_ricci(R), "Ric")
    rep["symmetrized_curvature"] = Sparse(symmetrize(R), "Rhat")
    if parsed.algebra is not None:
        st = streets_tian(T, args.tol)
        rep["streets_tian"] = Sparse(st.B, "B")
        rep["streets_tian_rank"] = st.rank
        if args.bismut:
            dT = covariant_torsion_derivative(alg)
            btp = dT.is_btp(args.tol)
            rep["bismut_curvature"] = Sparse(bismut_curvature(alg), "Rb")
            rep["torsion_derivative_max"] = dT.max_abs
            rep["btp"] = btp
            if btp:
                rep["btp_symmetrization_residual"] = btp_symmetrization_residual(alg, args.tol)
    return rep, EXIT_OK


def cmd_mixed(args, out):
    parsed = io.load(args.file, args.tol)
    mp = _mp(args)
    R = parsed.curvature if parsed.algebra is None else chern_curvature(parsed.algebra)
    res = constant_mixed_test_tensor(R, mp, args.tol, args.seed)
    rep = _header("mixed", parsed, args)
    rep.update({
        "alpha": mp.alpha,
        "beta": mp.beta,
        "seed": args.seed,
        "is_constant": res.is_constant,
        "c": res.c,
        "residual": res.residual,
        "sampled_spread": res.sampled_spread,
    })
    code = EXIT_OK
    if args.c is not None or args.assert_constant:
        ok = res.is_constant and (args.c is None or abs(res.c - args.c) <= args.tol)
        if args.c is not None:
            rep["asserted_c"] = args.c
        rep["assertion_holds"] = ok
        code = EXIT_OK if ok else EXIT_FAILED
    return rep, code


def cmd_classify(args, out):
    parsed = io.load(args.file, args.tol)
    alg = _require_algebra(parsed, "classify")
    f = classify(alg, args.tol)
    rep = _header("classify", parsed, args)
    rep.update({
        "is_nilpotent": f.is_nilpotent,
        "is_solvable": f.is_solvable,
        "commutator_J_invariant": f.commutator_J_invariant,
        "commutator_plus_J_nilpotent": f.commutator_plus_J_nilpotent,
        "is_unimodular": f.is_unimodular,
        "commutator_dim": f.commutator_dim,
        "derived_series_dims": list(f.derived_dims),
        "lower_central_series_dims": list(f.lower_central_dims),
    })
    return rep, EXIT_OK


def cmd_verify(args, out):
    parsed = None
    th = args.theorem
    if th in ("1", "lemma-cd0"):
        if args.file is None:
            raise InputError(f"--theorem {th} needs an algebra file")
        parsed = io.load(args.file, args.tol)
        alg = _require_algebra(parsed, "verify")
        if th == "1":
            vr = verify_theorem1(alg, _mp(args), args.tol, seed=args.seed)
        else:
            vr = verify_lemma_cd0(alg, _mp(args), args.tol, r=args.r, seed=args.seed)
    elif th == "wallach":
        vr = wallach_nonconstancy(_mp(args), args.tol)
    elif th == "middle-type":
        vr = middle_type_feasibility(MiddleTypeState(args.x, args.y, args.a1, _mp(args), args.c), args.tol)
    else:
        fd = random_admissible_torsion(np.random.default_rng(args.seed), args.n)
        vr = nonbalanced_btp_check(fd, _mp(args))
    rep = _header("verify", parsed, args)
    rep.update({
        "check": vr.check,
        "passed": vr.passed,
        "informational": vr.informational,
        "residuals": {k: {"value": v, "tol": t} for k, (v, t) in vr.residuals.items()},
        "explanation": list(vr.lines),
    })
    return rep, EXIT_OK if vr.passed else EXIT_FAILED


def _params_document(p) -> dict:
    doc = {"n": p.n}
    if isinstance(p, AlmostAbelianParams):
        doc.update({"family": "almost_abelian", "lambda": p.lam, "v": io.dense(p.v), "A": io.dense(p.A)})
    else:
        doc.update({"family": "codim2", "lambda": p.lam, "v": io.dense(p.v),
                    "X": io.dense(p.X), "Y": io.dense(p.Y), "Z": io.dense(p.Z)})
    return doc


def cmd_search(args, out):
    prob = SearchProblem(args.family, args.n, _mp(args), target=args.target, seed=args.seed,
                         restarts=args.restarts, max_iters=args.max_iters,
                         unimodular=not args.no_unimodular)
    res = minimize(prob)
    rep = _header("search", None, args)
    rep.update({
        "family": args.family,
        "n": args.n,
        "alpha": prob.mp.alpha,
        "beta": prob.mp.beta,
        "target": "best-fit" if args.target is None else args.target,
        "seed": args.seed,
        "restarts": args.restarts,
        "residual": res.residual,
        "floor": res.floor,
        "c": res.c,
        "feasible": res.feasible,
        "best_restart": res.best_restart + 1,
        "flat_distances": res.distances,
        "trace": res.trace,
        "params": _params_document(res.params),
    })
    return rep, EXIT_OK


def cmd_fixtures(args, out):
    if args.emit:
        fx = fixture(args.emit)
        doc = io.pointwise_document(fx.curvature) if fx.pointwise else io.algebra_document(fx.algebra)
        out.write(json.dumps(doc) + "\n")
        return None, EXIT_OK
    rep = {"command": "fixtures", "fixtures": [f"{name}: {fixture(name).description}" for name in FIXTURE_NAMES]}
    return rep, EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _common(sub: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if sub else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol", type=float, default=default if sub else DEFAULT_TOL, help="absolute tolerance")
    p.add_argument("--json", action="store_true", default=default if sub else False, help="machine-readable output")
    p.add_argument("--seed", type=int, default=default if sub else 0, help="random seed")
    p.add_argument("--timing", action="store_true", default=default if sub else False,
                   help="include wall-clock time in the report")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(sub=True)
    parser = argparse.ArgumentParser(prog="mixedcurv", parents=[_common(sub=False)],
                                     description="Curvature of left-invariant Hermitian structures.")
    sp = parser.add_subparsers(dest="command", required=True)

    def mixed_flags(p, required=True):
        p.add_argument("--alpha", type=float, required=required, default=None if required else 0.0)
        p.add_argument("--beta", type=float, required=required, default=None if required else 1.0)

    p = sp.add_parser("validate", parents=[common], help="check antisymmetry, Jacobi identity and frame pattern")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sp.add_parser("curvature", parents=[common], help="torsion, curvature, Ricci and related tensors")
    p.add_argument("file")
    p.add_argument("--bismut", action="store_true", help="also report Bismut curvature and BTP status")
    p.set_defaults(func=cmd_curvature)

    p = sp.add_parser("mixed", parents=[common], help="test for constant mixed curvature")
    p.add_argument("file")
    mixed_flags(p)
    p.add_argument("--c", type=float, default=None, help="assert constancy with this value")
    p.add_argument("--assert-constant", action="store_true", help="fail unless the curvature is constant")
    p.set_defaults(func=cmd_mixed)

    p = sp.add_parser("classify", parents=[common], help="nilpotency, solvability and commutator flags")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sp.add_parser("verify", parents=[common], help="run a theorem check")
    p.add_argument("file", nargs="?")
    p.add_argument("--theorem", required=True, choices=["1", "lemma-cd0", "wallach", "middle-type", "thm3"])
    mixed_flags(p, required=False)
    p.add_argument("--r", type=int, default=None, help="admissible split for lemma-cd0")
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--a1", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--n", type=int, default=3, help="dimension for thm3")
    p.set_defaults(func=cmd_verify)

    p = sp.add_parser("search", parents=[common], help="minimize the constancy residual over a family")
    p.add_argument("--family", required=True, choices=["almost_abelian", "codim2"])
    p.add_argument("--n", type=int, required=True)
    mixed_flags(p)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--max-iters", type=int, default=200)
    p.add_argument("--target", type=float, default=None, help="fixed constant instead of best fit")
    p.add_argument("--no-unimodular", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sp.add_parser("fixtures", parents=[common], help="list or emit built-in fixtures")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", metavar="NAME")
    p.set_defaults(func=cmd_fixtures)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        report, code = args.func(args, out)
    except (InputError, PreconditionError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except InternalError as exc:
        err.write(f"internal consistency failure: {exc}\n")
        return EXIT_FAILED
    if report is not None:
        if args.timing:
            report["timing_s"] = time.perf_counter() - start
        emit(report, args.json, out)
    return code


def main() -> None:
    sys.exit(run())
