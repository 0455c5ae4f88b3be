"""Deterministic table writers and the binary correlation-matrix format.

Binary layout: one ASCII header line with eight space-separated fields
``N spacing_m wavelength_m theta1 theta2 d1 d2 beta`` followed by ``N*N``
row-major complex entries stored as little-endian float64 ``(re, im)`` pairs.
"""

import io as _io
import json
import math

import numpy as np

from .correlation import CorrelationMatrix, ScatteringRegion
from .geometry import ArrayGeometry

_HEADER_FIELDS = 8


def fmt_float(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def _cell(x):
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return fmt_float(x)
    return "" if x is None else str(x)


def render_csv(columns, rows, config=None, comments=()) -> str:
    """CSV text with a ``# config:`` comment line, optional extra comments and a header row."""
    buf = _io.StringIO()
    if config is not None:
        buf.write("# config: " + json.dumps(config, sort_keys=True, separators=(",", ":")) + "\n")
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()


def _json_safe(x):
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def render_json(payload) -> str:
    return json.dumps(_json_safe(payload), sort_keys=True, indent=1) + "\n"


def write_correlation_binary(path, matrix: CorrelationMatrix):
    g, r = matrix.geom, matrix.region
    fields = [g.n_antennas, g.spacing_m, g.wavelength_m, r.theta1, r.theta2, r.d1, r.d2, r.beta]
    header = " ".join([str(fields[0])] + [fmt_float(f) for f in fields[1:]]) + "\n"
    data = np.ascontiguousarray(matrix.entries, dtype="<c16")
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(data.tobytes(order="C"))


def read_correlation_binary(path) -> CorrelationMatrix:
    with open(path, "rb") as fh:
        header = fh.readline().decode("ascii").split()
        if len(header) != _HEADER_FIELDS:
            raise ValueError(f"expected {_HEADER_FIELDS} header fields, got {len(header)}")
        n = int(header[0])
        vals = [float(x) for x in header[1:]]
        raw = fh.read()
    if len(raw) != n * n * 16:
        raise ValueError(f"payload size {len(raw)} does not match N = {n}")
    entries = np.frombuffer(raw, dtype="<c16").reshape(n, n).astype(np.complex128)
    geom = ArrayGeometry(n, vals[0], vals[1])
    region = ScatteringRegion(vals[2], vals[3], vals[4], vals[5], vals[6])
    return CorrelationMatrix(entries, region, None, geom)
