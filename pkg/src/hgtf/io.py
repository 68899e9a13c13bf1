"""Signal and grid file formats, PPM heatmaps and plain-text reports.

Signal formats
--------------
csv
    Header ``t,re`` or ``t,re,im``; one sample per row; ``t`` uniform
    (each step within 1e-9 relative of the first step).
f64le
    16-byte header: magic ``b"HGTF"``, format version as u32 little-endian,
    8 reserved zero bytes.  Then ``t0`` and ``dt`` as float64 LE, the sample
    count as u64 LE, then interleaved ``re, im`` float64 LE pairs.

Grid CSV
--------
First row ``omega\\T`` followed by the T values; every further row is one
Omega value followed by the cells at that Omega.  Real grids write one
number per cell, complex grids one ``re+imj`` token per cell.

All numbers are written with ``repr``, the shortest round-trip decimal.
"""

import csv
import math
import struct
from pathlib import Path

import numpy as np

from .signal import Signal

__all__ = [
    "InputDataError",
    "read_signal",
    "write_signal",
    "write_signal_csv",
    "write_signal_f64le",
    "read_signal_csv",
    "read_signal_f64le",
    "write_grid_csv",
    "read_grid_csv",
    "colormap",
    "ppm_bytes",
    "write_ppm",
    "write_report",
    "read_report",
    "fmt",
]

MAGIC = b"HGTF"
VERSION = 1
_HEADER = struct.Struct("<4sI8x")
_META = struct.Struct("<ddQ")
UNIFORM_TOL = 1e-9


class InputDataError(ValueError):
    """Malformed or inconsistent input data."""


def fmt(x):
    """Shortest round-trip decimal for a real or complex number."""
    if isinstance(x, (complex, np.complexfloating)):
        re, im = float(x.real), float(x.imag)
        sign = "-" if math.copysign(1.0, im) < 0 else "+"
        return f"{re!r}{sign}{abs(im)!r}j"
    return repr(float(x))


def _parse_complex(tok):
    try:
        return complex(tok)
    except ValueError:
        raise InputDataError(f"cannot parse complex value {tok!r}") from None


# --------------------------------------------------------------------------
# signals


def read_signal_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise InputDataError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if header not in (["t", "re"], ["t", "re", "im"]):
        raise InputDataError(f"{path}: header must be 't,re' or 't,re,im', got {','.join(header)!r}")
    body = [r for r in rows[1:] if r and any(c.strip() for c in r)]
    if len(body) < 2:
        raise InputDataError(f"{path}: need at least 2 samples")
    width = len(header)
    t = np.empty(len(body))
    samples = np.zeros(len(body), dtype=complex)
    for i, row in enumerate(body, start=1):
        if len(row) != width:
            raise InputDataError(f"{path}: row {i} has {len(row)} fields, expected {width}")
        try:
            vals = [float(c) for c in row]
        except ValueError:
            raise InputDataError(f"{path}: row {i} is not numeric") from None
        if not all(math.isfinite(v) for v in vals):
            raise InputDataError(f"{path}: row {i} holds a non-finite value")
        t[i - 1] = vals[0]
        samples[i - 1] = complex(vals[1], vals[2] if width == 3 else 0.0)
    step = t[1] - t[0]
    if not step > 0:
        raise InputDataError(f"{path}: time must be strictly increasing (row 2)")
    steps = np.diff(t)
    bad = np.nonzero(np.abs(steps - step) > UNIFORM_TOL * step)[0]
    if bad.size:
        row = int(bad[0]) + 2
        raise InputDataError(f"{path}: non-uniform time grid at row {row} (t={float(t[row - 1])!r})")
    dt = (t[-1] - t[0]) / (t.size - 1)
    return Signal(samples, float(t[0]), float(dt))


def read_signal_f64le(path):
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size + _META.size:
        raise InputDataError(f"{path}: file too short for the HGTF header")
    magic, version = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise InputDataError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise InputDataError(f"{path}: unsupported format version {version}")
    t0, dt, count = _META.unpack_from(data, _HEADER.size)
    payload = data[_HEADER.size + _META.size :]
    if len(payload) != 16 * count:
        raise InputDataError(f"{path}: expected {count} samples, found {len(payload) / 16:g}")
    arr = np.frombuffer(payload, dtype="<f8")
    if not np.all(np.isfinite(arr)):
        raise InputDataError(f"{path}: non-finite sample values")
    if not (math.isfinite(t0) and math.isfinite(dt) and dt > 0):
        raise InputDataError(f"{path}: invalid time grid t0={t0!r} dt={dt!r}")
    try:
        return Signal(arr[0::2] + 1j * arr[1::2], t0, dt)
    except ValueError as exc:
        raise InputDataError(f"{path}: {exc}") from None


def read_signal(path, format=None):
    """Read a signal; `format` is ``"csv"`` or ``"f64le"``, else taken from the suffix."""
    format = format or _format_from_suffix(path)
    if format == "csv":
        return read_signal_csv(path)
    if format == "f64le":
        return read_signal_f64le(path)
    raise InputDataError(f"unknown signal format {format!r}")


def _format_from_suffix(path):
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix in (".f64le", ".f64", ".bin"):
        return "f64le"
    raise InputDataError(f"cannot infer format of {path}; pass csv or f64le explicitly")


def write_signal_csv(signal, path):
    t = signal.times
    with open(path, "w", newline="") as fh:
        fh.write("t,re,im\n")
        for ti, s in zip(t, signal.samples):
            fh.write(f"{fmt(ti)},{fmt(s.real)},{fmt(s.imag)}\n")


def write_signal_f64le(signal, path):
    inter = np.empty(2 * len(signal), dtype="<f8")
    inter[0::2] = signal.samples.real
    inter[1::2] = signal.samples.imag
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION))
        fh.write(_META.pack(signal.t0, signal.dt, len(signal)))
        fh.write(inter.tobytes())


def write_signal(signal, path, format=None):
    format = format or _format_from_suffix(path)
    if format == "csv":
        write_signal_csv(signal, path)
    elif format == "f64le":
        write_signal_f64le(signal, path)
    else:
        raise ValueError(f"unknown signal format {format!r}")


# --------------------------------------------------------------------------
# grids


def write_grid_csv(T, Omega, values, path):
    """Write ``values[i_T, j_Omega]`` with one row per Omega value."""
    values = np.asarray(values)
    cplx = np.iscomplexobj(values)
    with open(path, "w", newline="") as fh:
        fh.write("omega\\T," + ",".join(fmt(x) for x in T) + "\n")
        for j, w in enumerate(Omega):
            col = values[:, j]
            cells = (fmt(complex(c)) for c in col) if cplx else (fmt(c) for c in col)
            fh.write(fmt(w) + "," + ",".join(cells) + "\n")


def read_grid_csv(path):
    """Inverse of :func:`write_grid_csv`: returns ``(T, Omega, values[i_T, j_Omega])``."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows or rows[0][0] != "omega\\T":
        raise InputDataError(f"{path}: not a grid CSV (first cell must be 'omega\\T')")
    T = np.array([float(x) for x in rows[0][1:]])
    Omega = np.array([float(r[0]) for r in rows[1:]])
    cplx = any("j" in c for r in rows[1:] for c in r[1:])
    conv = _parse_complex if cplx else float
    vals = np.array([[conv(c) for c in r[1:]] for r in rows[1:]])
    if vals.shape != (Omega.size, T.size):
        raise InputDataError(f"{path}: ragged grid")
    return T, Omega, vals.T


# --------------------------------------------------------------------------
# heatmaps

# black -> red -> yellow -> white; luminance increases monotonically
_ANCHORS = np.array([[0, 0, 0], [255, 0, 0], [255, 255, 0], [255, 255, 255]], dtype=float)


def colormap(u):
    """Map ``u`` in ``[0, 1]`` to RGB bytes along black-red-yellow-white."""
    u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
    pos = u * (len(_ANCHORS) - 1)
    idx = np.minimum(pos.astype(int), len(_ANCHORS) - 2)
    frac = (pos - idx)[..., None]
    rgb = _ANCHORS[idx] * (1.0 - frac) + _ANCHORS[idx + 1] * frac
    return np.rint(rgb).astype(np.uint8)


def _normalize(values, scale, floor):
    v = np.asarray(values, dtype=float)
    if scale == "log":
        mag = np.abs(v)
        peak = mag.max()
        if peak == 0:
            return np.zeros_like(v)
        clamped = np.maximum(mag, floor * peak)
        return 1.0 + np.log10(clamped / peak) / math.log10(1.0 / floor)
    if scale != "linear":
        raise ValueError(f"unknown color scale {scale!r}")
    lo = min(v.min(), 0.0)
    hi = v.max()
    if hi == lo:
        return np.zeros_like(v)
    return (v - lo) / (hi - lo)


def ppm_bytes(values, scale="linear", floor=1e-6):
    """Binary P6 image of ``values[i_T, j_Omega]``; T left to right, Omega bottom to top.

    Linear scale maps ``[min(0, min v), max v]`` onto the colormap; log scale
    maps ``log10(|v| / max|v|)`` with values clamped at ``floor * max``.
    """
    if not 0 < floor < 1:
        raise ValueError("floor must lie in (0, 1)")
    u = _normalize(values, scale, floor)
    img = colormap(u.T[::-1])  # rows: Omega descending
    h, w = img.shape[:2]
    return f"P6\n{w} {h}\n255\n".encode("ascii") + img.tobytes()


def write_ppm(values, path, scale="linear", floor=1e-6):
    Path(path).write_bytes(ppm_bytes(values, scale, floor))


# --------------------------------------------------------------------------
# reports


def write_report(items, path):
    """``key=value`` lines, floats in shortest round-trip form."""
    lines = []
    for key, val in items.items():
        if isinstance(val, (float, np.floating)):
            val = fmt(val)
        lines.append(f"{key}={val}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_report(path):
    out = {}
    for line in Path(path).read_text().splitlines():
        if "=" in line:
            key, val = line.split("=", 1)
            out[key] = val
    return out
