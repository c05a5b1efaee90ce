"""
MLflow tracking for experiment runs.

Uses a local file store under <project>/mlruns unless MLFLOW_TRACKING_URI is set.
"""

import logging
import math
import os
from pathlib import Path
from typing import Any, Iterable, Optional

import mlflow

from multiboost.config.settings import PROJECT_ROOT

logger = logging.getLogger(__name__)

DEFAULT_EXPERIMENT = "multiboost_depth_study"


def configure_tracking(experiment_name: str = DEFAULT_EXPERIMENT) -> str:
    """
    Point MLflow at the configured store and select the experiment.

    Returns:
        The tracking URI in use
    """
    tracking_uri_env = os.getenv("MLFLOW_TRACKING_URI")

    if not tracking_uri_env or tracking_uri_env.strip() == "":
        # Default to local file tracking
        local_mlruns = PROJECT_ROOT / "mlruns"
        local_mlruns.mkdir(exist_ok=True)
        tracking_uri = f"file://{local_mlruns.absolute()}"
        logger.info("No MLFLOW_TRACKING_URI set, using local file tracking")
    else:
        tracking_uri = tracking_uri_env
        logger.info(f"Using remote MLflow server: {tracking_uri}")

    mlflow.set_tracking_uri(tracking_uri)
    experiment = mlflow.set_experiment(experiment_name)
    logger.info(f"Using experiment: {experiment_name} (ID: {experiment.experiment_id})")
    return tracking_uri


def _finite_metrics(metrics: dict[str, Any]) -> dict[str, float]:
    # MLflow rejects non-finite values; a run that never cycles has T0 = inf
    return {k: float(v) for k, v in metrics.items() if v is not None and math.isfinite(float(v))}


def log_run(
    run_name: str,
    params: dict[str, Any],
    metrics: dict[str, Any],
    artifacts: Iterable[Path] = (),
    artifact_path: Optional[str] = None,
) -> str:
    """
    Log one run's params, metrics and artifact files.

    Returns:
        MLflow run id
    """
    with mlflow.start_run(run_name=run_name) as run:
        mlflow.log_params(params)
        mlflow.log_metrics(_finite_metrics(metrics))
        for path in artifacts:
            mlflow.log_artifact(str(path), artifact_path=artifact_path)
        logger.info(f"MLflow run {run_name} logged: {run.info.run_id}")
        return run.info.run_id
