"""Embedding trajectories and their file interchange formats.

A trajectory is an ordered sequence of K-dimensional frame embeddings,
stored as a T x K float32 matrix (vision encoders emit 32-bit floats;
all downstream arithmetic widens to float64).

Two interchange formats are supported:

* ``binary`` (".uvdt"): magic bytes ``UVDT``, a little-endian uint32
  format version, T and K as little-endian uint64, then T*K IEEE-754
  float32 values, little-endian, row-major. Round-trips bit-exactly.
* ``csv``: one frame per line of comma-separated decimals, optional
  first line ``# K=<int>``, no quoting. Values are written with enough
  digits that a float32 survives one encode/decode cycle.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import TrajectoryFormatError, TrajectoryValidationError

MAGIC = b"UVDT"
FORMAT_VERSION = 1
FORMATS = ("binary", "csv")

_HEADER = struct.Struct("<4sIQQ")


@dataclass(frozen=True)
class EmbeddingTrajectory:
    """Immutable T x K matrix of frame embeddings plus a provenance tag."""

    frames: np.ndarray
    meta: str = ""

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=np.float32)
        if frames.ndim != 2:
            raise TrajectoryValidationError(
                f"frames must be 2-D (T x K), got ndim={frames.ndim}"
            )
        frames = np.ascontiguousarray(frames)
        frames.setflags(write=False)
        object.__setattr__(self, "frames", frames)
        violations = validate_frames(frames)
        if violations:
            raise TrajectoryValidationError("; ".join(violations))

    @property
    def T(self) -> int:
        return self.frames.shape[0]

    @property
    def K(self) -> int:
        return self.frames.shape[1]

    def frames64(self) -> np.ndarray:
        """Frames widened to float64 for distance arithmetic."""
        return self.frames.astype(np.float64)


def validate_frames(frames: np.ndarray) -> list[str]:
    """Return every invariant violation of a raw frame matrix.

    Violations are data, not failures: an empty list means valid.
    """
    violations: list[str] = []
    if frames.ndim != 2:
        return [f"frames must be 2-D (T x K), got ndim={frames.ndim}"]
    t, k = frames.shape
    if t < 2:
        violations.append(f"too short: T={t}, need T >= 2")
    if k < 1:
        violations.append(f"no embedding dims: K={k}, need K >= 1")
    bad = np.argwhere(~np.isfinite(frames))
    for r, c in bad[:16]:
        violations.append(f"non-finite at ({r},{c})")
    if len(bad) > 16:
        violations.append(f"... and {len(bad) - 16} more non-finite values")
    return violations


def validate(traj: EmbeddingTrajectory) -> list[str]:
    return validate_frames(np.asarray(traj.frames))


def save_trajectory(traj: EmbeddingTrajectory, path, format: str = "binary") -> None:
    """Write a trajectory so that load_trajectory recovers it.

    Binary round-trips bitwise; CSV round-trips after one decimal
    encode/decode cycle.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}, expected one of {FORMATS}")
    path = Path(path)
    if str(path) == "":
        raise OSError("empty path")
    frames = traj.frames
    if format == "binary":
        header = _HEADER.pack(MAGIC, FORMAT_VERSION, frames.shape[0], frames.shape[1])
        payload = np.ascontiguousarray(frames, dtype="<f4").tobytes()
        path.write_bytes(header + payload)
    else:
        lines = [f"# K={frames.shape[1]}"]
        for row in frames:
            # %.9g round-trips any float32 exactly
            lines.append(",".join(format_csv_value(v) for v in row))
        path.write_text("\n".join(lines) + "\n")


def format_csv_value(v: np.float32) -> str:
    return f"{float(v):.9g}"


def load_trajectory(path, format: str = "binary") -> EmbeddingTrajectory:
    """Load and validate a trajectory file.

    Raises TrajectoryFormatError with a byte or line location on any
    malformed input.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}, expected one of {FORMATS}")
    path = Path(path)
    if format == "binary":
        frames = _load_binary(path)
    else:
        frames = _load_csv(path)
    violations = validate_frames(frames)
    if violations:
        raise TrajectoryFormatError(f"{path}: " + "; ".join(violations))
    return EmbeddingTrajectory(frames=frames, meta=str(path))


def _load_binary(path: Path) -> np.ndarray:
    data = path.read_bytes()
    if len(data) < _HEADER.size:
        raise TrajectoryFormatError(
            f"{path}: truncated header at byte {len(data)}, need {_HEADER.size}"
        )
    magic, version, t, k = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise TrajectoryFormatError(f"{path}: bad magic {magic!r} at byte 0")
    if version != FORMAT_VERSION:
        raise TrajectoryFormatError(
            f"{path}: unsupported format version {version} at byte 4"
        )
    expected = _HEADER.size + t * k * 4
    if len(data) != expected:
        raise TrajectoryFormatError(
            f"{path}: payload size mismatch at byte {len(data)}: "
            f"header declares T={t}, K={k} ({expected} bytes total)"
        )
    flat = np.frombuffer(data, dtype="<f4", offset=_HEADER.size)
    return flat.reshape(t, k).astype(np.float32)


def _load_csv(path: Path) -> np.ndarray:
    rows: list[list[float]] = []
    declared_k: int | None = None
    width: int | None = None
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if lineno == 1 and "K=" in line:
                    try:
                        declared_k = int(line.split("K=", 1)[1])
                    except ValueError:
                        raise TrajectoryFormatError(
                            f"{path}:{lineno}: malformed header {line!r}"
                        ) from None
                continue
            parts = line.split(",")
            try:
                row = [float(p) for p in parts]
            except ValueError:
                raise TrajectoryFormatError(
                    f"{path}:{lineno}: unparseable value in row"
                ) from None
            if width is None:
                width = len(row)
                if declared_k is not None and width != declared_k:
                    raise TrajectoryFormatError(
                        f"{path}:{lineno}: row width {width} contradicts "
                        f"declared K={declared_k}"
                    )
            elif len(row) != width:
                raise TrajectoryFormatError(
                    f"{path}:{lineno}: ragged row of width {len(row)} "
                    f"in a width-{width} file"
                )
            rows.append(row)
    if not rows:
        raise TrajectoryFormatError(f"{path}: no data rows")
    return np.asarray(rows, dtype=np.float32)
