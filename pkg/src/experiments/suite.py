"""
Suite runner: every seed of a config, merged in seed order and written to disk
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

from src import config
from src.errors import InvalidArgumentError, TrialError
from src.reports import build_report, write_report
from .config import ExperimentConfig
from .trial import TrialOutput, evaluate_trial

logger = logging.getLogger(__name__)


def _outcome(cfg: ExperimentConfig, seed: int):
    try:
        return evaluate_trial(cfg, seed)
    except TrialError as e:
        logger.error("%s", e)
        return e


def run_suite(
        cfg: ExperimentConfig,
        out_dir: Union[str, Path, None] = None,
        parallel: int = 1,
        progress_callback: Optional[Callable[[Dict], None]] = None,
):
    """
    Run one trial per seed and write rows, class rows and aggregates.

    Failed trials do not stop the suite; they are listed in the report's
    errors and mark it partial. Output bytes depend only on cfg.
    """
    if parallel < 1:
        raise InvalidArgumentError(f"parallel must be at least 1, got {parallel}")
    out_dir = Path(out_dir) if out_dir is not None else Path(config.OUTPUT_DIR)
    seeds = list(cfg.seed_list)
    logger.info("suite %s: %d seeds, %d workers", cfg.config_hash(), len(seeds), parallel)

    done = 0
    outcomes: Dict[int, object] = {}
    with ThreadPoolExecutor(max_workers=parallel) as pool:
        futures = {seed: pool.submit(_outcome, cfg, seed) for seed in seeds}
        for seed in seeds:
            outcomes[seed] = futures[seed].result()
            done += 1
            if progress_callback:
                progress_callback({'trials_done': done, 'trials_total': len(seeds), 'seed': seed})

    rows: List[Dict] = []
    class_rows: List[Dict] = []
    errors: List[Dict] = []
    for seed in seeds:
        outcome = outcomes[seed]
        if isinstance(outcome, TrialOutput):
            rows.extend(outcome.rows)
            class_rows.extend(outcome.class_rows)
        else:
            errors.append({'seed': seed, 'error': str(outcome)})

    provenance = {'config_hash': cfg.config_hash(), 'seeds': seeds}
    report = build_report(rows, class_rows, provenance, errors)
    write_report(report, out_dir)
    if errors:
        logger.warning("suite finished with %d failed trials", len(errors))
    return report
