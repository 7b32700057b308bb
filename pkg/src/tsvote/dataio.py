"""Serialization: JSONL series files, CSV rate import, manifests.

One JSON object per line, keys sorted, no timestamps: identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import Label, LabeledDataset, Provenance, TimeSeries
from .errors import ConfigError
from .pipeline import RateSeries
from .synth import LatentSourceModel, NoiseSpec

SCHEMA_VERSION = 1


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=True, separators=(",", ": "))


def config_hash(config: dict) -> str:
    return hashlib.sha256(dumps_canonical(config).encode("utf-8")).hexdigest()


def write_jsonl(path, records: Iterable[dict]) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as f:
        for rec in records:
            f.write(dumps_canonical(rec))
            f.write("\n")


def read_jsonl(path) -> list[dict]:
    path = Path(path)
    records = []
    with path.open("r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
    return records


def series_to_record(
    ts: TimeSeries, label: Optional[Label] = None, provenance: Optional[Provenance] = None
) -> dict:
    rec = {"id": ts.id, "start_index": ts.start_index, "values": [float(v) for v in ts.values]}
    if label is not None:
        rec["label"] = int(label)
    if provenance is not None:
        rec["source_index"] = provenance.source_index
        rec["shift"] = provenance.shift
    return rec


def record_to_series(rec: dict, where: str = "") -> tuple:
    """(TimeSeries, label or None, Provenance or None) from one JSONL record."""
    try:
        ts = TimeSeries(int(rec["start_index"]), np.asarray(rec["values"], dtype=np.float64),
                        id=str(rec.get("id", "")))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: bad series record ({exc})") from exc
    label = Label.from_int(int(rec["label"])) if "label" in rec else None
    prov = None
    if "source_index" in rec:
        prov = Provenance(int(rec["source_index"]), int(rec.get("shift", 0)))
    return ts, label, prov


def write_dataset(path, data: LabeledDataset) -> None:
    pos_prov = data.positive_provenance or [None] * data.n_pos
    neg_prov = data.negative_provenance or [None] * data.n_neg
    records = [
        series_to_record(ts, Label.POSITIVE, p) for ts, p in zip(data.positives, pos_prov)
    ] + [series_to_record(ts, Label.NEGATIVE, p) for ts, p in zip(data.negatives, neg_prov)]
    write_jsonl(path, records)


def read_dataset(path) -> LabeledDataset:
    pos, neg, pos_prov, neg_prov = [], [], [], []
    has_prov = True
    for i, rec in enumerate(read_jsonl(path), start=1):
        ts, label, prov = record_to_series(rec, where=f"{path}:{i}")
        if label is None:
            raise ConfigError(f"{path}:{i}: dataset records must carry a label")
        if prov is None:
            has_prov = False
        if label == Label.POSITIVE:
            pos.append(ts)
            pos_prov.append(prov)
        else:
            neg.append(ts)
            neg_prov.append(prov)
    if not pos and not neg:
        raise ConfigError(f"{path}: dataset file is empty")
    return LabeledDataset(
        tuple(pos),
        tuple(neg),
        tuple(pos_prov) if has_prov else None,
        tuple(neg_prov) if has_prov else None,
    )


def read_series_file(path) -> list:
    """All (TimeSeries, label-or-None) pairs in a JSONL series file."""
    out = []
    for i, rec in enumerate(read_jsonl(path), start=1):
        ts, label, _ = record_to_series(rec, where=f"{path}:{i}")
        out.append((ts, label))
    if not out:
        raise ConfigError(f"{path}: no series found")
    return out


def write_model(directory, model: LatentSourceModel) -> tuple:
    """Writes model.json and sources.jsonl under directory; returns the two paths."""
    directory = Path(directory)
    meta = {
        "schema_version": SCHEMA_VERSION,
        "delta_max": model.delta_max,
        "noise": {"family": model.noise.family, "sigma": model.noise.sigma},
        "weights": list(model.weights) if model.weights is not None else None,
        "window_start": model.window_start,
        "window_length": model.window_length,
    }
    meta_path = directory / "model.json"
    meta_path.write_text(dumps_canonical(meta) + "\n", encoding="utf-8")
    sources_path = directory / "sources.jsonl"
    write_jsonl(sources_path, [series_to_record(src, lab) for src, lab in model.sources])
    return meta_path, sources_path


def read_model(directory) -> LatentSourceModel:
    directory = Path(directory)
    meta_path = directory / "model.json"
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{meta_path}: invalid JSON ({exc.msg})") from exc
    sources = []
    for i, rec in enumerate(read_jsonl(directory / "sources.jsonl"), start=1):
        ts, label, _ = record_to_series(rec, where=f"{directory / 'sources.jsonl'}:{i}")
        if label is None:
            raise ConfigError(f"{directory / 'sources.jsonl'}:{i}: source records need a label")
        sources.append((ts, label))
    weights = meta.get("weights")
    return LatentSourceModel(
        sources=tuple(sources),
        delta_max=int(meta["delta_max"]),
        noise=NoiseSpec(meta["noise"]["family"], float(meta["noise"]["sigma"])),
        window_start=int(meta["window_start"]),
        window_length=int(meta["window_length"]),
        weights=tuple(weights) if weights is not None else None,
    )


def rate_to_record(rate: RateSeries) -> dict:
    rec = {
        "topic_id": rate.topic_id,
        "bucket_width_minutes": rate.bucket_width_minutes,
        "counts": [float(c) for c in rate.counts],
    }
    if rate.onset_index is not None:
        rec["onset_index"] = rate.onset_index
    return rec


def record_to_rate(rec: dict, where: str = "") -> RateSeries:
    try:
        return RateSeries(
            np.asarray(rec["counts"], dtype=np.float64),
            float(rec.get("bucket_width_minutes", 2.0)),
            str(rec.get("topic_id", "")),
            onset_index=rec.get("onset_index"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: bad rate record ({exc})") from exc


def write_rates(path, rates: Sequence[RateSeries]) -> None:
    write_jsonl(path, [rate_to_record(r) for r in rates])


def read_rates(path) -> list[RateSeries]:
    return [
        record_to_rate(rec, where=f"{path}:{i}")
        for i, rec in enumerate(read_jsonl(path), start=1)
    ]


def read_rate_csv(
    path,
    bucket_width_minutes: float = 2.0,
    topic_id: str = "",
    onset_index: Optional[int] = None,
) -> RateSeries:
    """One topic from a t,value CSV; t must be consecutive integers."""
    path = Path(path)
    counts = []
    with path.open("r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        prev_t = None
        for lineno, row in enumerate(reader, start=1):
            if not row or not row[0].strip():
                continue
            if lineno == 1 and not row[0].strip().lstrip("-").isdigit():
                continue  # header row
            if len(row) < 2:
                raise ConfigError(f"{path}:{lineno}: expected 't,value' rows")
            try:
                t, value = int(row[0]), float(row[1])
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from exc
            if prev_t is not None and t != prev_t + 1:
                raise ConfigError(f"{path}:{lineno}: bucket index {t} is not {prev_t + 1}")
            prev_t = t
            counts.append(value)
    if not counts:
        raise ConfigError(f"{path}: no rate rows found")
    return RateSeries(
        np.asarray(counts), bucket_width_minutes, topic_id or path.stem, onset_index=onset_index
    )


def write_manifest(path, seed: int, config: dict, counts: dict, files: dict) -> dict:
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "seed": seed,
        "config_hash": config_hash(config),
        "config": config,
        "counts": counts,
        "files": files,
    }
    Path(path).write_text(dumps_canonical(manifest) + "\n", encoding="utf-8")
    return manifest
