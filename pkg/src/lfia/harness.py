"""
Monte Carlo driver: per-trial evaluation of every scheme, SNR sweeps,
aggregation and CSV output.

All schemes in a trial share the same channels, codebooks and alignment
targets, so comparisons between schemes are paired. Cells are 0-based here.
"""
import csv
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import sample_channels
from .codebook import generate_codebooks
from .errors import BudgetExceeded, DegenerateRun, InvalidConfig, Singular
from .rxdesign import (build_rx, cell_rates, final_ici, interference_gram,
                       optimal_receive_basis, perfect_feedback_rate, rho_k)
from .theory import (loss_bound_std_err, loss_upper_bound, min_rho_expectation,
                     summarize, wishart_spec_for, flop_estimate)
from .txdesign import ideal_alignment_tb, quantize_chordal, quantize_joint, random_target

log = logging.getLogger(__name__)

PROPOSED = "proposed"
BASELINE = "baseline-chordal"
PERFECT = "perfect-feedback"
LOWER_BOUND = "lower-bound"
SCHEMES = (PROPOSED, BASELINE, PERFECT, LOWER_BOUND)
NEEDS_SQUARE = (BASELINE, PERFECT, LOWER_BOUND)

MAX_REDRAWS = 16
DEFAULT_FLOP_CAP = 10 ** 12
CSV_HEADER = ("scheme", "snr_db", "mean_sum_rate", "std_err", "trials", "redraws")


@dataclass(frozen=True)
class SweepSpec:
    cfg: object
    snr_db_points: tuple
    trials: int
    seed: int
    schemes: tuple = (PROPOSED,)
    flop_cap: int = DEFAULT_FLOP_CAP

    def __post_init__(self):
        object.__setattr__(self, "snr_db_points", tuple(float(s) for s in self.snr_db_points))
        object.__setattr__(self, "schemes", tuple(self.schemes))
        if self.trials < 1:
            raise InvalidConfig("trials must be >= 1")
        if self.seed < 0:
            raise InvalidConfig("seed must be non-negative")
        if not self.snr_db_points:
            raise InvalidConfig("at least one SNR point is required")
        if not self.schemes:
            raise InvalidConfig("at least one scheme is required")
        unknown = set(self.schemes) - set(SCHEMES)
        if unknown:
            raise InvalidConfig(f"unknown schemes: {sorted(unknown)}")
        if self.cfg.n_r <= self.cfg.k_users:
            raise InvalidConfig("all schemes need n_r > K")
        square = [s for s in self.schemes if s in NEEDS_SQUARE]
        if square and self.cfg.n_t != self.cfg.n_r:
            raise InvalidConfig(f"{', '.join(square)} not applicable unless n_t == n_r")

    @property
    def snr_linear(self):
        return 10.0 ** (np.asarray(self.snr_db_points) / 10.0)

    @property
    def arms(self):
        """Schemes simulated per trial; the redraw decision covers all of them."""
        if self.cfg.n_t == self.cfg.n_r:
            return (PROPOSED, BASELINE, PERFECT)
        return (PROPOSED,)


@dataclass(frozen=True)
class SweepRecord:
    scheme: str
    snr_db: float
    mean_sum_rate: float
    std_err: float
    trials_used: int
    redraws: int


@dataclass
class TrialOutcome:
    """
    Everything measured in one trial.

    ``user_rates[s]`` has shape ``(2, K, n_snr)``; ``overall_ici[s]`` holds
    the residual interference in Col(U) per cell and ``final_ici[s]`` the
    per-user interference after the full receive cascade, ``(2, K)``.
    """
    trial: int
    redraws: int
    user_rates: dict = field(default_factory=dict)
    overall_ici: dict = field(default_factory=dict)
    final_ici: dict = field(default_factory=dict)
    objective: dict = field(default_factory=dict)

    def cell_rates(self, scheme):
        return self.user_rates[scheme].sum(axis=1)

    def sum_rate(self, scheme):
        return self.user_rates[scheme].sum(axis=(0, 1))


def _limited_feedback_arm(ch, selections, snr, k):
    rates, overall, final, objective = [], [], [], []
    for cell in range(2):
        nb = 1 - cell
        A = interference_gram(ch.cross[nb], selections[nb].vectors)
        U = optimal_receive_basis(A, k)
        rx = build_rx(U, ch.direct[cell], selections[cell].vectors,
                      ch.cross[nb], selections[nb].vectors)
        rates.append(cell_rates(rx, ch.direct[cell], selections[cell].vectors,
                                ch.cross[nb], selections[nb].vectors, snr))
        overall.append(rx.residual_ici)
        final.append(final_ici(rx, ch.cross[nb], selections[nb].vectors))
        objective.append(rho_k(A, k))
    return np.array(rates), np.array(overall), np.array(final), np.array(objective)


def _perfect_arm(ch, ideal, targets, snr):
    rates, overall, final = [], [], []
    for cell in range(2):
        nb = 1 - cell
        U = targets[cell].complement
        rx = build_rx(U, ch.direct[cell], ideal[cell], ch.cross[nb], ideal[nb])
        rates.append([perfect_feedback_rate(ch.direct[cell][k], ideal[cell][k], U,
                                            rx.filters[k], snr)
                      for k in range(len(ideal[cell]))])
        overall.append(rx.residual_ici)
        final.append(final_ici(rx, ch.cross[nb], ideal[nb]))
    return np.array(rates), np.array(overall), np.array(final)


def _attempt(spec, trial, attempt):
    cfg, k = spec.cfg, spec.cfg.k_users
    snr = spec.snr_linear
    ch = sample_channels(cfg, spec.seed, trial, attempt)
    cb = generate_codebooks(cfg, spec.seed, trial, attempt)
    out = TrialOutcome(trial=trial, redraws=attempt)
    arms = spec.arms

    # Selection for cell c's users is made by the other cell's base station.
    joint = [quantize_joint(ch.cross[c], cb, c) for c in range(2)]
    r, o, f, obj = _limited_feedback_arm(ch, joint, snr, k)
    out.user_rates[PROPOSED], out.overall_ici[PROPOSED] = r, o
    out.final_ici[PROPOSED], out.objective[PROPOSED] = f, obj

    if BASELINE in arms or PERFECT in arms:
        targets = [random_target(cfg.n_r, k, spec.seed, trial, c, attempt) for c in range(2)]
        ideal = [ideal_alignment_tb(ch.cross[c], targets[1 - c]) for c in range(2)]
        chordal = [quantize_chordal(ideal[c], cb, c) for c in range(2)]
        r, o, f, obj = _limited_feedback_arm(ch, chordal, snr, k)
        out.user_rates[BASELINE], out.overall_ici[BASELINE] = r, o
        out.final_ici[BASELINE], out.objective[BASELINE] = f, obj
        r, o, f = _perfect_arm(ch, ideal, targets, snr)
        out.user_rates[PERFECT], out.overall_ici[PERFECT], out.final_ici[PERFECT] = r, o, f
    return out


def evaluate_trial(spec, trial):
    """
    Run every applicable scheme on one trial, redrawing degenerate draws.

    Raises
    ------
    DegenerateRun
        If the trial is still degenerate after `MAX_REDRAWS` redraws.
    """
    for attempt in range(MAX_REDRAWS + 1):
        try:
            return _attempt(spec, trial, attempt)
        except Singular as exc:
            log.debug("trial %d attempt %d redrawn: %s", trial, attempt, exc)
    raise DegenerateRun(f"trial {trial} degenerate after {MAX_REDRAWS} redraws")


def run_trial(spec, trial, scheme):
    """Per-cell sum rates ``(2, n_snr)`` of one scheme in one trial."""
    if scheme not in spec.arms:
        raise InvalidConfig(f"{scheme!r} is not simulated per trial for this configuration")
    return evaluate_trial(spec, trial).cell_rates(scheme)


def _evaluate_chunk(args):
    spec, trials = args
    return [evaluate_trial(spec, t) for t in trials]


def run_trials(spec, workers=1):
    """Outcomes of all trials, ordered by trial index whatever the worker count."""
    indices = range(spec.trials)
    if workers <= 1:
        return [evaluate_trial(spec, t) for t in indices]
    size = max(1, -(-spec.trials // (4 * workers)))
    chunks = [(spec, indices[i:i + size]) for i in range(0, spec.trials, size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = [o for chunk in pool.map(_evaluate_chunk, chunks) for o in chunk]
    return sorted(results, key=lambda o: o.trial)


def check_budget(spec):
    if PROPOSED in spec.arms:
        flops = flop_estimate(spec.cfg) * 2 * spec.trials
        if flops > spec.flop_cap:
            raise BudgetExceeded(f"joint search needs ~{flops:.3g} flops, cap is {spec.flop_cap:.3g}")


def aggregate(spec, outcomes):
    """Collapse trial outcomes into one record per (scheme, SNR point)."""
    # Fixed summation order makes the result independent of completion order.
    outcomes = sorted(outcomes, key=lambda o: o.trial)
    redraws = sum(o.redraws for o in outcomes)
    n = len(outcomes)
    stats = {}
    for scheme in spec.arms:
        sums = np.array([o.sum_rate(scheme) for o in outcomes])
        mean = sums.mean(axis=0)
        se = sums.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else np.zeros_like(mean)
        stats[scheme] = (mean, se)
    if LOWER_BOUND in spec.schemes:
        stats[LOWER_BOUND] = lower_bound_curve(spec, *stats[PERFECT])

    records = []
    for scheme in spec.schemes:
        mean, se = stats[scheme]
        for j, snr_db in enumerate(spec.snr_db_points):
            records.append(SweepRecord(scheme, snr_db, float(mean[j]), float(se[j]), n, redraws))
    records.sort(key=lambda r: (r.scheme, r.snr_db))
    return records


def lower_bound_curve(spec, pfb_mean, pfb_se):
    """
    Lower bound on the mean sum rate of the proposed scheme.

    Every one of the 2K users loses at most the per-user bound relative to
    the perfect-feedback arm.
    """
    emin = min_rho_expectation(wishart_spec_for(spec.cfg, spec.trials), spec.seed)
    users = 2 * spec.cfg.k_users
    snr = spec.snr_linear
    mean = pfb_mean - users * loss_upper_bound(snr, emin.mean)
    se = np.sqrt(pfb_se ** 2 + (users * loss_bound_std_err(snr, emin.mean, emin.std_err)) ** 2)
    return mean, se


def run_sweep(spec, workers=1):
    check_budget(spec)
    return aggregate(spec, run_trials(spec, workers))


def _fmt(x):
    return f"{x:.10g}"


def write_csv(records, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow([r.scheme, _fmt(r.snr_db), _fmt(r.mean_sum_rate),
                             _fmt(r.std_err), r.trials_used, r.redraws])


def default_workers():
    return max(1, min(8, os.cpu_count() or 1))
