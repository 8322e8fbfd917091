"""Search certificates, checkpoint files and the chunked sweep runner."""
from __future__ import annotations

import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from .hypergraph import Hypergraph
from .io import format_hypergraph, parse_hypergraphs

CHECKPOINT_FORMAT = "polycolor-checkpoint/1"


@dataclass(frozen=True)
class SearchSpec:
    """What a sweep enumerates and which predicates a survivor must pass."""

    name: str
    n: Optional[int] = None
    uniformity: Optional[int] = None
    max_edges: Optional[int] = None
    k: Optional[int] = None
    heavy_m: Optional[int] = None
    heavy_k: Optional[int] = None
    predicates: tuple[str, ...] = ()
    isomorphism_rejection: bool = False

    def as_dict(self) -> dict:
        d = asdict(self)
        d["predicates"] = list(self.predicates)
        return d


@dataclass
class SearchCertificate:
    spec: SearchSpec
    candidates: int
    counts: dict = field(default_factory=dict)
    survivors: list = field(default_factory=list)
    canonical: list = field(default_factory=list)
    result: str = ""
    notes: list = field(default_factory=list)
    elapsed: float = 0.0  # wall clock; kept out of the rendered text

    def render(self) -> str:
        lines = ["# polycolor search certificate", f"# search: {self.spec.name}"]
        for key, val in self.spec.as_dict().items():
            if key == "name" or val is None or val == []:
                continue
            if isinstance(val, list):
                val = ",".join(val)
            lines.append(f"# spec.{key}: {val}")
        lines.append(f"# candidates: {self.candidates}")
        for key, val in self.counts.items():
            lines.append(f"# count.{key}: {val}")
        lines.append(f"# survivors: {len(self.survivors)}")
        lines.append(f"# result: {self.result}")
        for note in self.notes:
            lines.append(f"# note: {note}")
        text = "\n".join(lines) + "\n"
        for i, h in enumerate(self.survivors):
            head = [f"survivor {i + 1}"]
            if self.canonical:
                head.append("canonical " + ",".join(str(e) for e in self.canonical[i][1]))
            text += format_hypergraph(h, head)
        return text


def parse_certificate(text: str) -> tuple[dict, list[Hypergraph]]:
    """Header fields (``key -> str``, notes collected in a list) and survivors."""
    header: dict = {"note": []}
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("vertices:"):
            break
        if not line.startswith("# ") or ": " not in line:
            continue
        key, _, val = line[2:].partition(": ")
        if key == "note":
            header["note"].append(val)
        else:
            header[key] = val
    return header, parse_hypergraphs(text)


def atomic_write(path, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class CheckpointMismatch(ValueError):
    pass


def load_checkpoint(path, spec: SearchSpec) -> list:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointMismatch(f"{path}: not a polycolor checkpoint")
    if data.get("spec") != spec.as_dict():
        raise CheckpointMismatch(f"{path}: checkpoint belongs to a different search")
    chunks = data["chunks"]
    if len(chunks) != data["watermark"]:
        raise CheckpointMismatch(f"{path}: watermark does not match stored chunks")
    return chunks


def save_checkpoint(path, spec: SearchSpec, chunks: list):
    data = {
        "format": CHECKPOINT_FORMAT,
        "spec": spec.as_dict(),
        "watermark": len(chunks),
        "chunks": chunks,
    }
    atomic_write(path, json.dumps(data, sort_keys=True) + "\n")


def run_chunks(
    spec: SearchSpec,
    task: Callable[[int], dict],
    n_chunks: int,
    jobs: int = 1,
    checkpoint: Optional[str] = None,
    resume: bool = False,
    stop: Optional[Callable[[dict], bool]] = None,
) -> tuple[list, float]:
    """Run ``task(i)`` for chunk indices in order and return the results.

    ``task`` must be a picklable module-level callable when ``jobs > 1``.
    The checkpoint holds the contiguous prefix of finished chunks (its
    length is the watermark). ``stop`` ends the run early after the first
    chunk whose result satisfies it; later chunks are discarded, so the
    output does not depend on ``jobs``.
    """
    t0 = time.perf_counter()
    done: list = []
    if resume and checkpoint and os.path.exists(checkpoint):
        done = load_checkpoint(checkpoint, spec)
    if stop is not None and any(stop(r) for r in done):
        cut = next(i for i, r in enumerate(done) if stop(r))
        return done[: cut + 1], time.perf_counter() - t0
    todo = range(len(done), n_chunks)

    def record(result):
        done.append(result)
        if checkpoint:
            save_checkpoint(checkpoint, spec, done)
        return stop is not None and stop(result)

    if jobs <= 1 or len(todo) <= 1:
        for i in todo:
            if record(task(i)):
                break
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(task, i) for i in todo]
            for fut in futures:
                if record(fut.result()):
                    for f in futures:
                        f.cancel()
                    break
    return done, time.perf_counter() - t0
