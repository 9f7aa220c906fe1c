"""Verification jobs and the VolumeReport pipeline.

The harness talks to the diagram engine only through its command line and
file formats: ``platforge generate`` writes PD code files and manifests,
the jobs feed the PD text to a geometry engine, and the collected volumes
go into a VolumeReport JSON consumed by ``platforge volume-chain``.
"""

from __future__ import annotations

import json
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .engine import Engine

__all__ = ["VerificationJob", "build_jobs", "run_jobs", "write_report"]

GENERATOR = "platforge"


@dataclass(frozen=True)
class VerificationJob:
    name: str  # VolumeReport entry name, e.g. "l_prime(g=1)" or "k_n(n=5)"
    pd_path: Path
    manifest_path: Path
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive and recorded")


def _generate(workdir: Path, stem: str, args: list[str]) -> tuple[Path, Path]:
    cmd = [GENERATOR, "generate", "--out", str(workdir), "--name", stem, *args]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError(
            f"{' '.join(cmd)} failed ({proc.returncode}): {proc.stderr.strip()}"
        )
    return workdir / f"{stem}.pd", workdir / f"{stem}.manifest.json"


def build_jobs(
    workdir: str | Path,
    g: int = 1,
    seed: int = 7,
    n_values: tuple[int, ...] = (5, 10),
    tolerance: float = 1e-6,
    generator: Optional[str] = None,
) -> list[VerificationJob]:
    """Export the links under test and collect one job per diagram.

    Jobs cover the parent augmented link, the filled three-component link,
    and the explicit twisted knots for the requested n.  n = 0 is excluded
    by construction: the untwisted corner circle is an unknot, which no
    hyperbolic engine should be asked about.
    """
    global GENERATOR
    if generator:
        GENERATOR = generator
    workdir = Path(workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    jobs = []
    pd, man = _generate(workdir, f"script_l_g{g}", ["--family", "script_l", "--g", str(g)])
    jobs.append(VerificationJob(f"script_l(g={g})", pd, man, tolerance))
    pd, man = _generate(
        workdir, f"l_prime_g{g}",
        ["--family", "l_prime", "--g", str(g), "--seed", str(seed)],
    )
    jobs.append(VerificationJob(f"l_prime(g={g})", pd, man, tolerance))
    for n in n_values:
        if n == 0:
            continue  # unknot: excluded by the job builder
        pd, man = _generate(
            workdir, f"k_n_{n}",
            ["--family", "k_n", "--g", str(g), "--seed", str(seed), "--n", str(n),
             "--explicit-limit", str(max(n_values))],
        )
        jobs.append(VerificationJob(f"k_n(n={n})", pd, man, tolerance))
    return jobs


def run_jobs(
    jobs: list[VerificationJob],
    engine: Engine,
    parallelism: int = 4,
) -> tuple[list[dict], list[dict]]:
    """Run every job; return (entries, errors).

    Entries follow the VolumeReport schema.  A failing job is recorded in
    ``errors`` and never aborts the batch.
    """

    def one(job: VerificationJob):
        try:
            pd_text = job.pd_path.read_text(encoding="utf-8")
            vol = engine.volume(pd_text)
            hyp = engine.is_hyperbolic(pd_text)
            return (
                {
                    "name": job.name,
                    "volume": float(vol),
                    "hyperbolic": bool(hyp),
                    "engine": engine.name,
                    "tolerance": job.tolerance,
                },
                None,
            )
        except Exception as exc:  # noqa: BLE001 - per-entry capture is the contract
            return None, {"name": job.name, "error": f"{type(exc).__name__}: {exc}"}

    entries, errors = [], []
    with ThreadPoolExecutor(max_workers=max(1, parallelism)) as pool:
        for entry, err in pool.map(one, jobs):
            if entry is not None:
                entries.append(entry)
            else:
                errors.append(err)
    return entries, errors


def write_report(path: str | Path, entries: list[dict], errors: list[dict]) -> Path:
    """Write the VolumeReport (and, beside it, any per-entry errors)."""
    path = Path(path)
    path.write_text(json.dumps(entries, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if errors:
        err_path = path.with_suffix(".errors.json")
        err_path.write_text(json.dumps(errors, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print(f"{len(errors)} job(s) failed; details in {err_path}", file=sys.stderr)
    return path
