"""Multi-trial benchmark harness: single runs, sweeps, engine comparisons.

Trial k uses seed base_seed + k, so interrupted sweeps can resume and any
row can be reproduced in isolation. Results are emitted as a JSON summary
({instance, engine, params, trials, summary}) and a per-trial CSV.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict, replace

import numpy as np

from . import gset, hwsim, solver
from .ising import maxcut_to_ising
from .schedules import AnnealParams, LinearSchedule, QSchedule


class IntegrityError(RuntimeError):
    """A reported cut exceeds the registered best-known value."""


ENGINES = ("ssqa_ref", "ssqa_hw", "ssa", "psa")


@dataclass(frozen=True)
class RunConfig:
    instance: str = "G11"
    engine: str = "ssqa_ref"
    delay_kind: str = "dual_bram"
    replicas: int = 20
    steps: int = 500
    trials: int = 1
    seed: int = 1
    q_min: float = 0.0
    q_max: float = 2.0
    q_tau: int = 10
    q_beta: float = 0.05
    i0: str = "5"
    n_rnd: str = "6:0"
    sparse_bypass: bool = True
    f_clk: float = hwsim.DEFAULT_F_CLK
    power_w: float = hwsim.DEFAULT_POWER_W
    utilization: float = hwsim.DEFAULT_UTILIZATION
    workers: int = 1

    def anneal_params(self, seed: int) -> AnnealParams:
        return AnnealParams(
            steps=self.steps,
            replicas=self.replicas,
            q=QSchedule(self.q_min, self.q_max, self.q_tau, self.q_beta),
            i0=parse_ramp(self.i0),
            n_rnd=parse_ramp(self.n_rnd),
            seed=seed,
            integer_mode=self.engine != "psa",
        )


def parse_ramp(text: str) -> LinearSchedule:
    """'8' -> constant 8; '8:64' -> linear 8 to 64."""
    parts = str(text).split(":")
    if len(parts) == 1:
        return LinearSchedule.constant(float(parts[0]))
    if len(parts) == 2:
        return LinearSchedule(float(parts[0]), float(parts[1]))
    raise ValueError(f"bad ramp spec {text!r}; use 'v' or 'start:end'")


def default_config(**overrides) -> RunConfig:
    return replace(RunConfig(), **overrides)


def _load(instance: str):
    graph = gset.load_instance(instance)
    record = None
    try:
        record = gset.registry_lookup(instance)
    except gset.UnknownInstanceError:
        pass
    return graph, maxcut_to_ising(graph), record


def run_one_trial(config: RunConfig, trial_index: int) -> dict:
    graph, model, record = _load(config.instance)
    seed = config.seed + trial_index
    params = config.anneal_params(seed)
    cycles = hwsim.count_total_cycles(model, config.steps, config.sparse_bypass)
    if config.engine == "ssqa_ref":
        result = solver.run_ssqa(model, params, graph)
    elif config.engine == "ssa":
        result = solver.run_ssa(model, params, graph)
    elif config.engine == "psa":
        result = solver.run_psa(model, params, graph)
    elif config.engine == "ssqa_hw":
        result, report = hwsim.run_hw(
            model, params, config.delay_kind, graph=graph,
            sparse_bypass=config.sparse_bypass, f_clk=config.f_clk,
            power_w=config.power_w, utilization=config.utilization)
        cycles = report.total_cycles
    else:
        raise ValueError(f"unknown engine {config.engine!r}; choose from {ENGINES}")
    report = hwsim.estimate_report(cycles, config.f_clk, config.power_w,
                                   config.utilization)
    if record is not None and result.best_value > record.best_known_cut:
        raise IntegrityError(
            f"{config.instance}: cut {result.best_value} exceeds best known "
            f"{record.best_known_cut}; cut evaluation is broken")
    return {
        "trial": trial_index,
        "seed": seed,
        "best_cut": int(result.best_value),
        "best_replica": result.best_replica,
        "cycles": report.total_cycles,
        "latency_s": report.latency_s,
        "energy_j": report.energy_j,
    }


@dataclass
class TrialSummary:
    config: RunConfig
    trials: list
    best_known: int | None

    @property
    def cuts(self) -> np.ndarray:
        return np.array([t["best_cut"] for t in self.trials])

    def summary_dict(self) -> dict:
        cuts = self.cuts
        out = {
            "mean": float(cuts.mean()),
            "std": float(cuts.std(ddof=1)) if len(cuts) > 1 else 0.0,
            "max": int(cuts.max()),
            "min": int(cuts.min()),
            "total_latency_s": float(sum(t["latency_s"] for t in self.trials)),
            "total_energy_j": float(sum(t["energy_j"] for t in self.trials)),
        }
        if self.best_known:
            out["normalized_mean"] = float(cuts.mean() / self.best_known)
            out["best_known"] = self.best_known
        return out

    def as_json(self) -> str:
        return json.dumps({
            "instance": self.config.instance,
            "engine": self.config.engine,
            "params": asdict(self.config),
            "trials": self.trials,
            "summary": self.summary_dict(),
        }, indent=2)


def run_trials(config: RunConfig) -> TrialSummary:
    """Execute config.trials independent runs; ordering is by trial index."""
    if config.trials < 1:
        raise ValueError("trials must be >= 1")
    indices = range(config.trials)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(run_one_trial, [config] * config.trials, indices))
    else:
        rows = [run_one_trial(config, i) for i in indices]
    rows.sort(key=lambda r: r["trial"])
    _, _, record = _load(config.instance)
    return TrialSummary(config, rows, record.best_known_cut if record else None)


TRIAL_CSV_COLUMNS = ["trial", "seed", "best_cut", "best_replica", "cycles",
                     "latency_s", "energy_j"]


def write_trials_csv(path, summaries, extra_cols=()):
    """One row per trial; summaries may carry extra constant columns."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(extra_cols) + TRIAL_CSV_COLUMNS)
        for extras, summary in summaries:
            for row in summary.trials:
                writer.writerow(list(extras) + [row[c] for c in TRIAL_CSV_COLUMNS])


def sweep_replicas(config: RunConfig, r_list) -> list:
    """One TrialSummary per replica count, same trial seeds throughout."""
    return [((r,), run_trials(replace(config, replicas=r))) for r in r_list]


def sweep_steps(config: RunConfig, step_list) -> list:
    return [((s,), run_trials(replace(config, steps=s))) for s in step_list]


def compare(config_a: RunConfig, config_b: RunConfig) -> dict:
    """Paired comparison of two engine configurations on one instance."""
    sa, sb = run_trials(config_a), run_trials(config_b)
    out = {}
    for tag, s in (("a", sa), ("b", sb)):
        out[tag] = {
            "engine": s.config.engine,
            "steps": s.config.steps,
            "replicas": s.config.replicas,
            "summary": s.summary_dict(),
        }
    out["mean_diff_a_minus_b"] = out["a"]["summary"]["mean"] - out["b"]["summary"]["mean"]
    # Memory model: solution storage is one bit per spin per replica.
    for tag, cfg in (("a", config_a), ("b", config_b)):
        _, model, _ = _load(cfg.instance)
        out[tag]["final_state_bits"] = model.n * cfg.replicas
    return out, sa, sb
