"""Command-line front end: ingestion, runs, analysis and studies."""

from .experiments import RunConfig, analyze, depth_study, kernel_demo, run, run_booster, toygen
from .ingest import ingest_csv, write_dataset_csv
from .trace_io import dump_trace, hypothesis_from_dict, load_run, load_trace

__all__ = [
    "RunConfig",
    "analyze",
    "depth_study",
    "dump_trace",
    "hypothesis_from_dict",
    "ingest_csv",
    "kernel_demo",
    "load_run",
    "load_trace",
    "run",
    "run_booster",
    "toygen",
]
