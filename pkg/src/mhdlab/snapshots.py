"""Field snapshot files: text header plus raw little-endian float64 block.

Layout:

    MHDLAB-FIELD 1
    field <name>
    time <17-digit float>
    shape <array shape, space separated>
    grid-shape <n1 n2 n3>
    extents <L1 L2 L3>
    end-header
    <C-order '<f8' bytes>

The payload is written bit-for-bit, so write/read round-trips exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .grid import Grid

MAGIC = "MHDLAB-FIELD 1"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_snapshot(path, grid: Grid, name: str, time: float, array: np.ndarray) -> None:
    arr = np.ascontiguousarray(array, dtype="<f8")
    lines = [
        MAGIC,
        f"field {name}",
        f"time {_fmt(time)}",
        "shape " + " ".join(str(n) for n in arr.shape),
        "grid-shape " + " ".join(str(n) for n in grid.shape),
        "extents " + " ".join(_fmt(L) for L in grid.extents),
        "end-header",
        "",
    ]
    with open(path, "wb") as f:
        f.write("\n".join(lines).encode("ascii"))
        f.write(arr.tobytes())


def read_snapshot(path):
    """Returns (grid, name, time, array)."""
    with open(path, "rb") as f:
        blob = f.read()
    head_end = blob.find(b"end-header\n")
    if head_end < 0 or not blob.startswith(MAGIC.encode("ascii")):
        raise ConfigError(f"{path}: not a field snapshot")
    header = blob[:head_end].decode("ascii").splitlines()
    fields = {}
    for line in header[1:]:
        key, _, rest = line.partition(" ")
        fields[key] = rest
    try:
        name = fields["field"]
        time = float(fields["time"])
        shape = tuple(int(s) for s in fields["shape"].split())
        gshape = tuple(int(s) for s in fields["grid-shape"].split())
        extents = tuple(float(s) for s in fields["extents"].split())
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"{path}: malformed snapshot header ({exc})") from exc
    payload = blob[head_end + len(b"end-header\n") :]
    count = int(np.prod(shape))
    if len(payload) != 8 * count:
        raise ConfigError(
            f"{path}: payload has {len(payload)} bytes, expected {8 * count}"
        )
    arr = np.frombuffer(payload, dtype="<f8").reshape(shape).copy()
    return Grid(shape=gshape, extents=extents), name, time, arr
