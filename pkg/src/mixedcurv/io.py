"""JSON documents: algebra input and report output.

Input documents carry ``"n"``, an optional ``"frame_kind"`` and exactly one
of

* ``"C"`` and ``"D"``: dense ``[j][i][k]`` arrays of ``[re, im]`` pairs;
* ``"family"``: ``"almost_abelian"`` with ``"lambda"``, ``"v"``, ``"A"`` or
  ``"codim2"`` with ``"lambda"``, ``"v"``, ``"X"``, ``"Y"``, ``"Z"``;
* ``"real_presentation"``: ``{"bracket", "J", "gram"}`` real arrays;
* ``"pointwise"``: ``{"R"}`` with a dense ``[i][j][k][l]`` curvature tensor
  at a point (no Lie algebra).

Complex output uses ``[re, im]`` pairs and 1-based indices.
"""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass

import numpy as np

from .algebra import FrameKind, HermitianLieAlgebra, RealPresentation, from_real_presentation
from .errors import InputError
from .families import AlmostAbelianParams, Codim2Params, almost_abelian_build, codim2_build

STYLES = ("C", "family", "real_presentation", "pointwise")
OUTPUT_ZERO = 1e-12


@dataclass
class ParsedDocument:
    doc: dict
    digest: str
    style: str
    algebra: HermitianLieAlgebra | None = None
    curvature: np.ndarray | None = None
    params: AlmostAbelianParams | Codim2Params | None = None


def canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def digest(doc) -> str:
    return "sha256:" + hashlib.sha256(canonical(doc).encode()).hexdigest()


def read_document(path: str) -> dict:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    return doc


# ---------------------------------------------------------------------------
# decoding


def _array(doc, key, shape, complex_=True):
    if key not in doc:
        raise InputError(f"missing member {key!r}")
    try:
        a = np.asarray(doc[key], dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"member {key!r} is not a numeric array") from None
    want = tuple(shape) + ((2,) if complex_ else ())
    if a.shape != want:
        raise InputError(f"member {key!r} has shape {a.shape}, expected {want}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"member {key!r} has non-finite entries")
    return a[..., 0] + 1j * a[..., 1] if complex_ else a


def _real_scalar(doc, key, default=None):
    if key not in doc:
        if default is None:
            raise InputError(f"missing member {key!r}")
        return default
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not np.isfinite(val):
        raise InputError(f"member {key!r} must be a finite real number")
    return float(val)


def parse_document(doc: dict, tol: float) -> ParsedDocument:
    present = [s for s in STYLES if s in doc]
    if "D" in doc and "C" not in doc:
        present.append("D")
    if len(present) != 1:
        if not present:
            raise InputError("document needs one of 'C'/'D', 'family', 'real_presentation', 'pointwise'")
        raise InputError(f"document mixes input styles: {', '.join(repr(p) for p in present)}")
    style = present[0]
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError("member 'n' must be a positive integer")
    kind = doc.get("frame_kind", FrameKind.GENERIC.value)
    try:
        kind = FrameKind(kind)
    except ValueError:
        raise InputError(f"member 'frame_kind' has unknown value {kind!r}") from None
    out = ParsedDocument(doc, digest(doc), style)
    if style == "D":
        raise InputError("missing member 'C'")
    if style == "C":
        C = _array(doc, "C", (n, n, n))
        D = _array(doc, "D", (n, n, n))
        out.algebra = HermitianLieAlgebra(n, C, D, kind, antisym_tol=tol)
    elif style == "family":
        fam = doc["family"]
        m = n - 1
        if n < 2:
            raise InputError("member 'n' must be at least 2 for a family")
        lam = _real_scalar(doc, "lambda")
        if fam == "almost_abelian":
            p = AlmostAbelianParams(n, lam, _array(doc, "v", (m,)), _array(doc, "A", (m, m)))
            out.algebra = almost_abelian_build(p)
        elif fam == "codim2":
            p = Codim2Params(n, lam, _array(doc, "v", (m,)), _array(doc, "X", (m, m)),
                             _array(doc, "Y", (m, m)), _array(doc, "Z", (m, m)))
            out.algebra = codim2_build(p, tol)
        else:
            raise InputError(f"member 'family' must be 'almost_abelian' or 'codim2', got {fam!r}")
        out.params = p
    elif style == "real_presentation":
        rp_doc = doc["real_presentation"]
        if not isinstance(rp_doc, dict):
            raise InputError("member 'real_presentation' must be an object")
        m = 2 * n
        rp = RealPresentation(_array(rp_doc, "bracket", (m, m, m), False),
                              _array(rp_doc, "J", (m, m), False),
                              _array(rp_doc, "gram", (m, m), False))
        out.algebra = from_real_presentation(rp, tol).with_frame_kind(kind)
    else:
        pw = doc["pointwise"]
        if not isinstance(pw, dict):
            raise InputError("member 'pointwise' must be an object")
        out.curvature = _array(pw, "R", (n, n, n, n))
    return out


def load(path: str, tol: float) -> ParsedDocument:
    return parse_document(read_document(path), tol)


# ---------------------------------------------------------------------------
# encoding


def _clean(x: float) -> float:
    x = float(x)
    return 0.0 if abs(x) <= OUTPUT_ZERO else x


def cpair(z) -> list:
    z = complex(z)
    return [_clean(z.real), _clean(z.imag)]


def dense(a: np.ndarray) -> list:
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def sparse(a: np.ndarray, keep=None) -> list:
    """``[[i, j, ...], [re, im]]`` entries with ``|z| > 1e-12``, 1-based, lexicographic."""
    a = np.asarray(a, dtype=complex)
    out = []
    for idx in np.ndindex(*a.shape):
        if keep is not None and not keep(idx):
            continue
        z = a[idx]
        if abs(z) > OUTPUT_ZERO:
            out.append([[i + 1 for i in idx], cpair(z)])
    return out


def algebra_document(alg: HermitianLieAlgebra) -> dict:
    return {"n": alg.n, "frame_kind": alg.frame_kind.value, "C": dense(alg.C), "D": dense(alg.D)}


def pointwise_document(R: np.ndarray) -> dict:
    return {"n": R.shape[0], "pointwise": {"R": dense(R)}}


def fmt_number(x: float) -> str:
    x = _clean(x)
    return f"{x:.12g}"


def fmt_complex(z) -> str:
    re, im = cpair(z)
    if im == 0.0:
        return f"{re:.12g}"
    if re == 0.0:
        return f"{im:.12g}i"
    return f"{re:.12g}{im:+.12g}i"
