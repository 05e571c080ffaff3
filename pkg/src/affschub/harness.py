"""
Cross-check of the essential-box minor test against the lattice oracle.

Each trial samples M = b_- · perm_to_matrix(u) · b_+ and several w of the
same index, runs both procedures and writes one record per (M, w) pair.  A
record is a discrepancy when the oracle says member and the width search is
undetermined, or the oracle says non-member and the search certifies.
Discrepancies are data: they are counted and dumped as reproducers, never
raised.
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .laurent import Laurent, LaurentMatrix
from .lattice_oracle import opposite_cell_of, oracle_dim
from .rank_engine import finitary_dim_search, theorem_membership_test
from .sampler import PRNG_NAME, Instance, SampleConfig, compose_flag, random_affine_perm, random_iwahori, rng_for

__all__ = ["CrosscheckConfig", "run_trial", "crosscheck_run", "pinned_gap", "write_outputs"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CrosscheckConfig:
    trials: int = 10
    n: int = 3
    k: int = 0
    seed: int = 0
    degree_bound: int = 1
    coeff_bound: int = 2
    spread: int = 1
    w_per_instance: int = 3
    identity_factors: bool = False
    l_max: int | None = None
    jobs: int = 1

    def sample_config(self, trial: int) -> SampleConfig:
        base = SampleConfig(self.n, self.k, self.seed, self.degree_bound, self.coeff_bound, self.spread)
        return base.for_trial(trial)


def pinned_gap() -> dict:
    """n = 1, M = 1 - t^{-1} at box (-1, 0): finitary value 0 but lattice dimension 1."""
    M = LaurentMatrix([[Laurent({0: 1, 1: -1})]])
    res = finitary_dim_search(M, -1, 0, 1, 1, 12)
    d = oracle_dim(M, -1, 0)
    cell = opposite_cell_of(M)
    ok = res.outcome == "exhausted" and res.best_value == 0 and d == 1 and cell.is_identity()
    return {"finitary_outcome": res.outcome, "finitary_best": res.best_value, "oracle_d": d,
            "opposite_cell": list(cell.window), "ok": ok}


def run_trial(config: CrosscheckConfig, trial: int) -> tuple[list[dict], list[dict]]:
    """Return (records, reproducers) for one trial."""
    cfg = config.sample_config(trial)
    u = random_affine_perm(cfg, rng_for(cfg, "u"))
    if config.identity_factors:
        b_minus = b_plus = LaurentMatrix.identity(cfg.n)
    else:
        b_minus = random_iwahori(cfg, "lower")
        b_plus = random_iwahori(cfg, "upper")
    M = compose_flag(u, b_minus, b_plus)
    records, repros = [], []
    for slot in range(config.w_per_instance):
        w = random_affine_perm(cfg, rng_for(cfg, f"w{slot}"))
        start = time.perf_counter()
        report = theorem_membership_test(M, w, config.l_max)
        boxes = []
        for b in report.boxes:
            boxes.append({
                "i": b.box.i, "j": b.box.j, "l_min": b.box.l_min, "r_target": b.box.r_target,
                "finitary_best": b.search.best_value, "l_witness": b.search.l_witness,
                "l_max": b.search.l_max, "oracle_d": oracle_dim(M, b.box.i, b.box.j),
            })
        oracle = all(x["oracle_d"] >= x["r_target"] for x in boxes)
        certified = report.certified
        discrepancy = (oracle and not certified) or (not oracle and certified)
        rec = {
            "trial": trial, "w_slot": slot,
            "config": {**cfg.to_json(), "prng": PRNG_NAME, "identity_factors": config.identity_factors},
            "u": u.to_json(), "w": w.to_json(), "matrix_id": report.matrix_id,
            "theorem_verdict": report.verdict, "oracle_verdict": oracle,
            "boxes": boxes, "discrepancy": discrepancy,
            "wall_time": round(time.perf_counter() - start, 6),
        }
        records.append(rec)
        if discrepancy:
            repros.append(Instance(w, u, b_minus, b_plus, M, oracle, cfg).to_json())
    return records, repros


def _run_one(args):
    return run_trial(*args)


def crosscheck_run(config: CrosscheckConfig) -> tuple[list[dict], dict, list[dict]]:
    """Run every trial and return (records, summary, reproducers), in trial order."""
    jobs = [(config, t) for t in range(config.trials)]
    if config.jobs > 1 and config.trials > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    records = [r for recs, _ in results for r in recs]
    repros = [r for _, rs in results for r in rs]
    summary = summarize(records, config)
    return records, summary, repros


def summarize(records: list[dict], config: CrosscheckConfig) -> dict:
    oracle_true = [r for r in records if r["oracle_verdict"]]
    certified = [r for r in records if r["theorem_verdict"] == "certified_member"]
    return {
        "config": {k: v for k, v in asdict(config).items() if k != "jobs"},
        "records": len(records),
        "oracle_member": len(oracle_true),
        "oracle_nonmember": len(records) - len(oracle_true),
        "certified": len(certified),
        "agree": sum(1 for r in records if not r["discrepancy"]),
        "discrepancies": sum(1 for r in records if r["discrepancy"]),
        # oracle non-member yet certified: the direction that must never occur
        "strict_violations": sum(1 for r in certified if not r["oracle_verdict"]),
        "pinned": pinned_gap(),
    }


def write_outputs(out_dir: str | Path, records: list[dict], summary: dict, repros: list[dict],
                  figure: bool = True) -> dict:
    """Write log.jsonl, summary.json, reproducers and the summary figure; return the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"log": str(out / "log.jsonl"), "summary": str(out / "summary.json")}
    with open(paths["log"], "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    repro_paths = []
    for idx, inst in enumerate(repros):
        p = out / f"repro_{idx:04d}.json"
        p.write_text(json.dumps(inst, sort_keys=True, indent=1) + "\n")
        repro_paths.append(str(p))
    summary = {**summary, "reproducers": repro_paths}
    Path(paths["summary"]).write_text(json.dumps(summary, sort_keys=True, indent=1) + "\n")
    if figure:
        from .render import crosscheck_figure, save_figure
        paths["figure"] = str(out / "finitary_vs_oracle.png")
        save_figure(crosscheck_figure(records), paths["figure"], "png")
    log.info("wrote %d records, %d reproducers to %s", len(records), len(repros), out)
    return paths

