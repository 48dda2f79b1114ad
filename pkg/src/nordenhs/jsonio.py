"""JSON wire format: point-cloud files, sample files and reports.

Floats are written with 17 significant digits so files round-trip doubles
exactly and repeated runs are byte-identical.
"""

import json
import math

import numpy as np

from .core import NordenSpace
from .errors import FormatError
from .hypersurface import NormalFrame, SurfaceSample
from .core import apply_J

VERSION = 1


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise FormatError(f"non-finite number {x!r} in output")
        return format(float(x), ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    if x is None:
        return "null"
    raise FormatError(f"unsupported scalar {type(x)}")


def dumps_canonical(obj, indent=0):
    """Deterministic JSON writer (17-significant-digit floats)."""
    pad = "  " * indent
    pad1 = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad1}{json.dumps(str(k))}: {dumps_canonical(v, indent + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(np.asarray(obj).tolist()) if isinstance(obj, np.ndarray) else list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and
               not isinstance(v, bool) for v in seq):
            return "[" + ", ".join(_fmt(v) for v in seq) + "]"
        items = [f"{pad1}{dumps_canonical(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _fmt(obj)


def write_json(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps_canonical(obj))
        fh.write("\n")


def points_to_doc(m, points):
    return {
        "version": VERSION,
        "m": int(m),
        "kind": "points",
        "points": [list(map(float, p)) for p in points],
    }


def samples_to_doc(m, samples):
    recs = []
    for s in samples:
        recs.append(
            {
                "point": list(map(float, s.point)),
                "xi": list(map(float, s.frame.xi)),
                "tangent_basis": [list(map(float, t)) for t in s.tangent_basis],
                "A": [list(map(float, row)) for row in np.asarray(s.A)],
            }
        )
    return {"version": VERSION, "m": int(m), "kind": "samples", "samples": recs}


def _require(cond, msg):
    if not cond:
        raise FormatError(msg)


def load_pointcloud(path):
    """Read and validate a PointCloudFile; returns (m, kind, payload).

    kind "points" yields a list of arrays; kind "samples" yields a list of
    SurfaceSample records.
    """
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    _require(isinstance(doc, dict), "top level must be an object")
    _require(doc.get("version") == VERSION, "unsupported or missing version")
    m = doc.get("m")
    _require(isinstance(m, int) and m >= 1, "missing complex dimension m")
    kind = doc.get("kind")
    dim = 2 * m
    if kind == "points":
        pts = doc.get("points")
        _require(isinstance(pts, list), "missing points array")
        out = []
        for p in pts:
            _require(
                isinstance(p, list) and len(p) == dim,
                f"point length must be {dim}",
            )
            out.append(np.asarray(p, dtype=float))
        return m, kind, out
    if kind == "samples":
        recs = doc.get("samples")
        _require(isinstance(recs, list), "missing samples array")
        out = []
        for rec in recs:
            _require(isinstance(rec, dict), "sample must be an object")
            for key in ("point", "xi", "tangent_basis", "A"):
                _require(key in rec, f"sample missing field {key}")
            p = np.asarray(rec["point"], dtype=float)
            xi = np.asarray(rec["xi"], dtype=float)
            _require(p.shape == (dim,), f"point length must be {dim}")
            _require(xi.shape == (dim,), f"xi length must be {dim}")
            tb = [np.asarray(t, dtype=float) for t in rec["tangent_basis"]]
            two_n = len(tb)
            _require(
                two_n == dim - 2 and all(t.shape == (dim,) for t in tb),
                f"tangent basis must hold {dim - 2} vectors of length {dim}",
            )
            A = np.asarray(rec["A"], dtype=float)
            _require(A.shape == (two_n, two_n), "A must be 2n x 2n")
            frame = NormalFrame(point=p, xi=xi, jxi=apply_J(xi))
            out.append(
                SurfaceSample(point=p, frame=frame, tangent_basis=tuple(tb), A=A)
            )
        return m, kind, out
    raise FormatError(f"unknown kind {kind!r}")


def load_matrix(path):
    """Read a square matrix from JSON ({"matrix": [[...]]} or a bare array)."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    raw = doc.get("matrix") if isinstance(doc, dict) else doc
    try:
        M = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"not a numeric matrix: {exc}") from exc
    _require(
        M.ndim == 2 and M.shape[0] == M.shape[1] and M.shape[0] % 2 == 0,
        "matrix must be square with even size",
    )
    return M
