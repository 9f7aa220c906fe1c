"""pyverify: drive an external hyperbolic-geometry engine over exported link
diagrams and emit VolumeReport files."""

from .engine import Engine, FunctionEngine, snappy_engine
from .jobs import VerificationJob, build_jobs, run_jobs, write_report

__version__ = "0.1.0"

__all__ = [
    "Engine",
    "FunctionEngine",
    "snappy_engine",
    "VerificationJob",
    "build_jobs",
    "run_jobs",
    "write_report",
]
