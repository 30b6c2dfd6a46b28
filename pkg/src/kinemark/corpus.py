"""Head-tracking recordings: loading, serialization and Sick/NotSick segmentation.

A corpus on disk is one CSV per participant (header ``X,Y,Z,Pitch,Roll,Yaw``
plus an optional time column ``t``) and a manifest CSV with header
``participant_id,outcome,path``. Paths in the manifest are resolved relative to
the manifest's directory.
"""
from __future__ import annotations

import csv
import io
import logging
import math
import os
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import (
    EmptyRecording,
    InvalidOutcome,
    MissingColumn,
    NonFiniteSample,
    RateMismatch,
    RecordingTooShort,
)

log = logging.getLogger(__name__)

CHANNELS = ("X", "Y", "Z", "Pitch", "Roll", "Yaw")
DEFAULT_RATE_HZ = 60.0
DEFAULT_SEGMENT_S = 10.0
MANIFEST_HEADER = ("participant_id", "outcome", "path")

Source = Union[str, os.PathLike, IO[bytes], IO[str], bytes]


class Outcome(str, Enum):
    WELL = "Well"
    SICK = "Sick"

    @classmethod
    def parse(cls, value) -> "Outcome":
        if isinstance(value, Outcome):
            return value
        text = str(value).strip().lower()
        for member in cls:
            if member.value.lower() == text:
                return member
        raise InvalidOutcome(f"outcome must be Well or Sick, got {value!r}")


class SegmentLabel(IntEnum):
    NOT_SICK = 0
    SICK = 1


@dataclass(frozen=True)
class MotionRecording:
    """One participant's 6-channel head signal, channels in canonical order."""

    participant_id: str
    channels: np.ndarray
    outcome: Outcome
    sample_rate_hz: float = DEFAULT_RATE_HZ

    def __post_init__(self):
        data = np.array(self.channels, dtype=np.float64)
        if data.ndim != 2 or data.shape[0] != len(CHANNELS):
            raise ValueError(f"channels must have shape (6, n), got {data.shape}")
        if data.shape[1] == 0:
            raise EmptyRecording(f"participant {self.participant_id!r} has no samples")
        if not self.sample_rate_hz > 0:
            raise ValueError("sample_rate_hz must be positive")
        bad = ~np.isfinite(data)
        if bad.any():
            raise NonFiniteSample(int(np.argwhere(bad.any(axis=0))[0, 0]))
        data.setflags(write=False)
        object.__setattr__(self, "channels", data)
        object.__setattr__(self, "outcome", Outcome.parse(self.outcome))
        object.__setattr__(self, "participant_id", str(self.participant_id))

    @property
    def n_samples(self) -> int:
        return self.channels.shape[1]

    @property
    def duration_s(self) -> float:
        return self.n_samples / self.sample_rate_hz

    def channel(self, name: str) -> np.ndarray:
        return self.channels[CHANNELS.index(name)]


@dataclass(frozen=True)
class ColumnMapping:
    """How a delimited table maps onto a :class:`MotionRecording`.

    ``columns`` maps canonical channel names to source column names; channels
    that are absent from the mapping are looked up under their canonical name.
    """

    participant_id: str
    outcome: Union[Outcome, str]
    sample_rate_hz: float = DEFAULT_RATE_HZ
    columns: Mapping[str, str] = field(default_factory=dict)
    time_column: str | None = "t"
    delimiter: str = ","

    def source_name(self, channel: str) -> str:
        return self.columns.get(channel, channel)


@dataclass(frozen=True)
class LabeledSegment:
    participant_id: str
    label: SegmentLabel
    start: int
    stop: int

    @property
    def length(self) -> int:
        return self.stop - self.start

    def slice(self, rec: MotionRecording) -> np.ndarray:
        return rec.channels[:, self.start:self.stop]


def _open_text(source: Source) -> tuple[IO[str], bool]:
    if isinstance(source, bytes):
        return io.StringIO(source.decode("utf-8")), True
    if isinstance(source, (str, os.PathLike)):
        return open(source, newline="", encoding="utf-8"), True
    if isinstance(source, io.TextIOBase):
        return source, False
    # binary stream
    return io.TextIOWrapper(source, encoding="utf-8", newline=""), False


def load_recording(source: Source, schema: ColumnMapping) -> MotionRecording:
    """Read one participant table into a :class:`MotionRecording`.

    Raises MissingColumn, NonFiniteSample (with the 0-based data row index),
    RateMismatch when a time column disagrees with the declared rate by more
    than 1 %, and EmptyRecording for a header-only table.
    """
    fh, owned = _open_text(source)
    try:
        reader = csv.reader(fh, delimiter=schema.delimiter)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise EmptyRecording(f"participant {schema.participant_id!r}: empty table") from None
        rows = [r for r in reader if r]
    finally:
        if owned:
            fh.close()

    position = {name: i for i, name in enumerate(header)}
    cols = []
    for ch in CHANNELS:
        src = schema.source_name(ch)
        if src not in position:
            raise MissingColumn(ch)
        cols.append(position[src])
    time_idx = position.get(schema.time_column) if schema.time_column else None

    if not rows:
        raise EmptyRecording(f"participant {schema.participant_id!r}: no data rows")

    data = np.empty((len(CHANNELS), len(rows)))
    times = np.empty(len(rows)) if time_idx is not None else None
    for r, row in enumerate(rows):
        try:
            data[:, r] = [float(row[c]) for c in cols]
            if times is not None:
                times[r] = float(row[time_idx])
        except (ValueError, IndexError) as exc:
            raise NonFiniteSample(r, f"unparsable value ({exc})") from None
    finite = np.isfinite(data).all(axis=0)
    if times is not None:
        finite &= np.isfinite(times)
    if not finite.all():
        raise NonFiniteSample(int(np.argmin(finite)))

    if times is not None and len(times) > 1:
        interval = (times[-1] - times[0]) / (len(times) - 1)
        expected = 1.0 / schema.sample_rate_hz
        if not interval > 0 or abs(interval - expected) > 0.01 * expected:
            observed = 1.0 / interval if interval > 0 else float("nan")
            raise RateMismatch(observed, schema.sample_rate_hz)

    return MotionRecording(
        participant_id=schema.participant_id,
        channels=data,
        outcome=Outcome.parse(schema.outcome),
        sample_rate_hz=schema.sample_rate_hz,
    )


def write_recording(rec: MotionRecording, dest: Union[str, os.PathLike, IO[str]],
                    include_time: bool = False) -> None:
    """Write ``rec`` in the canonical table format (17 significant digits)."""
    owned = isinstance(dest, (str, os.PathLike))
    fh = open(dest, "w", newline="", encoding="utf-8") if owned else dest
    try:
        header = (["t"] if include_time else []) + list(CHANNELS)
        fh.write(",".join(header) + "\n")
        dt = 1.0 / rec.sample_rate_hz
        for i in range(rec.n_samples):
            vals = [format(v, ".17g") for v in rec.channels[:, i]]
            if include_time:
                vals.insert(0, format(i * dt, ".17g"))
            fh.write(",".join(vals) + "\n")
    finally:
        if owned:
            fh.close()


@dataclass(frozen=True)
class ManifestEntry:
    participant_id: str
    outcome: Outcome
    path: Path


def load_manifest(path: Union[str, os.PathLike]) -> list[ManifestEntry]:
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in MANIFEST_HEADER if c not in (reader.fieldnames or [])]
        if missing:
            raise MissingColumn(missing[0])
        entries = []
        for row in reader:
            entries.append(ManifestEntry(
                participant_id=row["participant_id"].strip(),
                outcome=Outcome.parse(row["outcome"]),
                path=(path.parent / row["path"].strip()),
            ))
    ids = [e.participant_id for e in entries]
    if len(set(ids)) != len(ids):
        raise InvalidOutcome("manifest lists a participant more than once")
    return entries


def write_manifest(entries: Iterable[ManifestEntry], path: Union[str, os.PathLike]) -> None:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(MANIFEST_HEADER) + "\n")
        for e in entries:
            rel = os.path.relpath(e.path, path.parent)
            fh.write(f"{e.participant_id},{e.outcome.value},{Path(rel).as_posix()}\n")


def load_corpus(manifest_path: Union[str, os.PathLike],
                sample_rate_hz: float = DEFAULT_RATE_HZ) -> list[MotionRecording]:
    """Load every recording listed in a manifest, in manifest order."""
    recordings = []
    for entry in load_manifest(manifest_path):
        schema = ColumnMapping(entry.participant_id, entry.outcome, sample_rate_hz)
        recordings.append(load_recording(entry.path, schema))
    return recordings


def _segment_samples(segment_len_s: float, rate: float) -> int:
    length = segment_len_s * rate
    n = int(round(length))
    if n <= 0 or not math.isclose(length, n, rel_tol=0, abs_tol=1e-9):
        raise ValueError(f"segment of {segment_len_s} s is not a whole number of samples at {rate} Hz")
    return n


def label_segments(rec: MotionRecording,
                   segment_len_s: float = DEFAULT_SEGMENT_S) -> list[LabeledSegment]:
    """Carve the NotSick lead-in and (for Sick participants) the Sick tail.

    Every participant contributes ``[0, L)`` as NotSick; Sick participants also
    contribute ``[N - L, N)`` as Sick. The two spans never overlap, so a Sick
    recording must hold at least ``2 * segment_len_s`` seconds.
    """
    L = _segment_samples(segment_len_s, rec.sample_rate_hz)
    N = rec.n_samples
    need = 2 * L if rec.outcome is Outcome.SICK else L
    if N < need:
        raise RecordingTooShort(rec.participant_id, need / rec.sample_rate_hz, rec.duration_s)
    segments = [LabeledSegment(rec.participant_id, SegmentLabel.NOT_SICK, 0, L)]
    if rec.outcome is Outcome.SICK:
        segments.append(LabeledSegment(rec.participant_id, SegmentLabel.SICK, N - L, N))
    return segments


def segment_corpus(recordings: Sequence[MotionRecording],
                   segment_len_s: float = DEFAULT_SEGMENT_S
                   ) -> tuple[list[tuple[MotionRecording, LabeledSegment]], list[RecordingTooShort]]:
    """Segment a whole corpus; too-short recordings are reported and skipped."""
    out, skipped = [], []
    for rec in recordings:
        try:
            segs = label_segments(rec, segment_len_s)
        except RecordingTooShort as exc:
            log.warning("skipping %s", exc)
            skipped.append(exc)
            continue
        out.extend((rec, s) for s in segs)
    return out, skipped
