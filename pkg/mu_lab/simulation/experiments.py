"""
Monte Carlo experiments on random subsets.

Each trial samples A, measures the largest non-principal coefficient of 1_A,
runs the alternating maximizer for a lower bound on mu(A), and evaluates the
bound formulas. Trials are independent, so they run on a thread pool and are
merged back in trial order.
"""
import json
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional

from mu_lab import config
from mu_lab.analysis.bounds import (
    alon_bound, conjecture_curve, hayes_coeff_bound, kiltz_bound, main_bound
)
from mu_lab.analysis.fourier import check_dense, max_nonprincipal_coeff
from mu_lab.analysis.group import parse_group_spec
from mu_lab.analysis.maximizer import alternating_maximize
from mu_lab.core.constants import TRANSFORM_TOLERANCE
from mu_lab.core.exceptions import ConfigError, TrialError
from mu_lab.models.models import ExperimentConfig, ExperimentRecord
from mu_lab.simulation.sampler import derive_seed, sample_subset
from mu_lab.utils.logging_config import get_logger

# Set up logging
logger = get_logger(__name__)


def load_experiment_config(path: str) -> ExperimentConfig:
    """
    Load an experiment config from a JSON file.

    Args:
        path: Path to a JSON object with the ExperimentConfig fields

    Returns:
        A validated ExperimentConfig
    """
    with open(path, 'r') as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    if 'group' not in data:
        raise ConfigError(f"{path}: missing 'group'")
    experiment = ExperimentConfig.from_dict(data, parse_group_spec(str(data['group'])))
    logger.info(f"Loaded experiment config from {path}: {experiment.group}, m={experiment.size}")
    return experiment


class MonteCarloExperiment:
    """
    Runs the trials of one ExperimentConfig.
    """

    def __init__(self, experiment: ExperimentConfig):
        """Initialize the experiment."""
        check_dense(experiment.group)
        self.config = experiment
        self.N = experiment.group.order
        self.m = experiment.size
        self.k = experiment.shore_size
        # Per-run constants, the same for every trial
        self.hayes_bound = hayes_coeff_bound(self.N, self.m, experiment.epsilon)
        self.main_bound = main_bound(self.N, self.m)
        self.kiltz_bound = kiltz_bound(self.N, self.m)
        self.conjecture_curve = conjecture_curve(self.N, self.m)
        self.alon_bound = alon_bound(self.N, self.m, self.m, experiment.alon_constant)

    def run_trial(self, trial_index: int) -> ExperimentRecord:
        """
        Run one trial.

        Args:
            trial_index: Index of the trial; its seed is derived from the master seed

        Returns:
            The trial's ExperimentRecord
        """
        cfg = self.config
        trial_seed = derive_seed(cfg.master_seed, trial_index)

        started = time.perf_counter()
        A = sample_subset(cfg.group, self.m, trial_seed, cfg.replacement)
        sampled = time.perf_counter()
        coeff, _ = max_nonprincipal_coeff(A)
        measured = time.perf_counter()
        result = alternating_maximize(A, self.k, restarts=cfg.restarts, seed=trial_seed,
                                      max_iters=cfg.max_iters)
        maximized = time.perf_counter()

        record = ExperimentRecord(
            trial_index=trial_index,
            trial_seed=trial_seed,
            N=self.N,
            m=self.m,
            max_nonprincipal=coeff,
            hayes_bound=self.hayes_bound,
            # Float noise on a vanishing spectrum (m = N) is not a violation
            bizu_violation=coeff > self.hayes_bound + TRANSFORM_TOLERANCE,
            mu_heuristic=result.count,
            main_bound=self.main_bound,
            bbb_violation=result.count > self.main_bound,
            kiltz_bound=self.kiltz_bound,
            conjecture_curve=self.conjecture_curve,
            alon_bound=self.alon_bound,
        )
        if cfg.record_timings:
            record.elapsed_ms_sample = (sampled - started) * 1000.0
            record.elapsed_ms_spectrum = (measured - sampled) * 1000.0
            record.elapsed_ms_maximize = (maximized - measured) * 1000.0

        if record.bizu_violation or record.bbb_violation:
            logger.warning(f"Trial {trial_index}: bound event violated "
                           f"(coefficient {coeff:.6g} vs {self.hayes_bound:.6g}, "
                           f"mu {result.count} vs {self.main_bound:.6g})")
        logger.info(f"Trial {trial_index} done: coefficient {coeff:.6g}, mu >= {result.count}")
        return record

    def _guarded_trial(self, trial_index: int) -> ExperimentRecord:
        try:
            return self.run_trial(trial_index)
        except Exception as e:
            raise TrialError(trial_index, e) from e

    def run(self) -> List[ExperimentRecord]:
        """
        Run every trial, in parallel when more than one worker is configured.

        Returns:
            Records ordered by trial_index
        """
        cfg = self.config
        workers = cfg.workers or config.DEFAULT_WORKERS
        logger.info(f"Running {cfg.trials} trials on {cfg.group} with m={self.m}, k={self.k}, "
                    f"{workers} worker(s)")
        indices = range(cfg.trials)
        if workers == 1:
            records = [self._guarded_trial(i) for i in indices]
        else:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                records = list(executor.map(self._guarded_trial, indices))
        records.sort(key=lambda r: r.trial_index)
        return records


def run_trials(experiment: ExperimentConfig) -> List[ExperimentRecord]:
    """Run all trials of `experiment`; a failing trial raises TrialError."""
    return MonteCarloExperiment(experiment).run()


def _max_ratio(pairs) -> Optional[float]:
    """Largest value / bound over pairs with a positive bound; None if there are none."""
    ratios = [value / bound for value, bound in pairs if bound > 0]
    return max(ratios) if ratios else None


def summarize(records: List[ExperimentRecord]) -> Dict[str, Any]:
    """
    Violation counts and worst ratios over a run.

    mu_heuristic is a lower bound on mu(A), so a bbb violation is conclusive
    while its absence is not. Ratios skip trials whose bound is zero (a full
    set has no room in its complement, so its coefficient bound vanishes) and
    are None when every trial has a zero bound.

    Args:
        records: Trial records

    Returns:
        A dictionary of summary statistics
    """
    if not records:
        raise ConfigError("cannot summarize an empty record list")
    return {
        'trials': len(records),
        'bizu_violations': sum(1 for r in records if r.bizu_violation),
        'bbb_violations': sum(1 for r in records if r.bbb_violation),
        'max_coeff_ratio': _max_ratio((r.max_nonprincipal, r.hayes_bound) for r in records),
        'max_mu_ratio': _max_ratio((r.mu_heuristic, r.main_bound) for r in records),
        'max_mu_heuristic': max(r.mu_heuristic for r in records),
        'mu_is_lower_bound': True,
    }
