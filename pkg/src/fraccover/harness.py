"""Experiment orchestration and CSV/JSONL result ledgers.

Modes:

* ``theorem2-random``: dense G(n, p) graphs (plus optional complete graphs);
  every instance that meets the order bound and the neighbourhood condition
  must be critical covered according to both engines.
* ``oracle-exhaustive``: every labelled graph on ``n_min..n_max`` vertices,
  or every graph in a graph6 corpus; the two engines must agree.
* ``oracle-random``: as above on random graphs of any density.
* ``sharpness-sweep``: the extremal family for each admissible t.

Rows are produced in a fixed instance order, so a given config and seed
always yield the same ledger apart from the ``wall_time`` column.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterator

from . import criterion, extremal, factor, neighborhood
from .errors import CapError, RegimeError
from .graph import DEFAULT_CAP, PRNG_NAME, Graph, as_fraction, complete, delete_vertices_mask, gnp
from .graphio import emit_graph6, iter_graph6_file
from .params import Params

log = logging.getLogger(__name__)

MODES = ("theorem2-random", "oracle-exhaustive", "oracle-random", "sharpness-sweep")

LEDGER_VERSION = "1"
LEDGER_COLUMNS = [
    "ledger_version",
    "index",
    "source",
    "graph_seed",
    "p",
    "graph6",
    "graph_hash",
    "n",
    "m",
    "a",
    "b",
    "k",
    "order_bound_ok",
    "hypothesis_holds",
    "degree_consequence_ok",
    "criterion_covered",
    "oracle_covered",
    "factors_checked",
    "factors_bad",
    "category",
    "certificate",
    "wall_time",
]
TIMING_COLUMNS = ("wall_time",)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_DISAGREEMENT = 3
EXIT_COUNTEREXAMPLE = 4

DENSE_SCHEDULE = (Fraction(9, 10), Fraction(19, 20), Fraction(1))


@dataclass
class ExperimentConfig:
    mode: str = "theorem2-random"
    params: list[Params] = field(default_factory=lambda: [Params(2, 3, 0)])
    n_min: int = 8
    n_max: int = 12
    densities: list[Fraction] = field(default_factory=lambda: list(DENSE_SCHEDULE))
    trials: int = 200
    seed: int = 0
    include_complete: bool = False
    corpus: str | None = None
    t_max: int = 15
    cap: int = DEFAULT_CAP
    output: str | None = None
    workers: int = 1
    # "all": run both engines on every instance; "premise": only where the
    # order bound and neighbourhood condition hold
    engines: str = "all"

    def validate(self) -> ExperimentConfig:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.engines not in ("all", "premise"):
            raise ValueError(f"engines must be 'all' or 'premise', got {self.engines!r}")
        if not 0 <= self.n_min <= self.n_max:
            raise ValueError(f"need 0 <= n_min <= n_max, got {self.n_min}..{self.n_max}")
        if not 0 <= self.cap <= 64:
            raise ValueError(f"cap must lie in 0..64, got {self.cap}")
        if self.mode == "oracle-exhaustive" and self.corpus is None and self.n_max > 7:
            raise ValueError("exhaustive labelled enumeration is limited to n_max <= 7")
        for p in self.densities:
            if not 0 <= p <= 1:
                raise ValueError(f"density {p} outside [0, 1]")
        for prm in self.params:
            prm.check_criterion()
        return self

    def describe(self) -> dict:
        return {
            "mode": self.mode,
            "params": [p.as_dict() for p in self.params],
            "n_min": self.n_min,
            "n_max": self.n_max,
            "densities": [str(p) for p in self.densities],
            "trials": self.trials,
            "seed": self.seed,
            "prng": PRNG_NAME,
            "include_complete": self.include_complete,
            "corpus": self.corpus,
            "t_max": self.t_max,
            "cap": self.cap,
            "engines": self.engines,
        }


# --- config files ---------------------------------------------------------


def parse_config_text(text: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _parse_bool(s: str) -> bool:
    low = s.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def parse_params_list(s: str) -> list[Params]:
    """``"2,3,0;2,3,1"`` -> Params list; a missing k means 0."""
    out = []
    for chunk in s.replace(" ", "").split(";"):
        if not chunk:
            continue
        vals = [int(x) for x in chunk.split(",")]
        if len(vals) not in (2, 3):
            raise ValueError(f"parameter triple must be a,b[,k]: {chunk!r}")
        out.append(Params(*vals))
    return out


def config_from_mapping(values: dict[str, str], base: ExperimentConfig | None = None) -> ExperimentConfig:
    cfg = base or ExperimentConfig()
    for key, raw in values.items():
        if key == "mode":
            cfg.mode = raw
        elif key == "params":
            cfg.params = parse_params_list(raw)
        elif key in ("n_min", "n_max", "trials", "seed", "t_max", "cap", "workers"):
            setattr(cfg, key, int(raw))
        elif key == "n":
            lo, _, hi = raw.partition("..")
            cfg.n_min, cfg.n_max = int(lo), int(hi or lo)
        elif key == "densities":
            cfg.densities = [as_fraction(x) for x in raw.replace(" ", "").split(",") if x]
        elif key == "include_complete":
            cfg.include_complete = _parse_bool(raw)
        elif key in ("corpus", "output"):
            setattr(cfg, key, raw or None)
        elif key == "engines":
            cfg.engines = raw
        else:
            raise ValueError(f"unknown config key {key!r}")
    return cfg.validate()


def load_config(path: str | Path, overrides: dict[str, str] | None = None) -> ExperimentConfig:
    """Read a config file, then apply ``overrides`` (command-line wins)."""
    values = parse_config_text(Path(path).read_text())
    values.update(overrides or {})
    return config_from_mapping(values)


def result_dir(cfg: ExperimentConfig) -> Path:
    return Path(cfg.output or os.environ.get("RESULT_DIR") or "results")


# --- instances ------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    index: int
    source: str
    graph: Graph
    graph_seed: int | None = None
    p: Fraction | None = None
    t: int | None = None


def graph_hash(G: Graph) -> str:
    return hashlib.sha256(emit_graph6(G).encode("ascii")).hexdigest()[:16]


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labelled simple graph on n vertices; edge subset i in binary order."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(pairs) if code >> i & 1])


def generate_instances(cfg: ExperimentConfig) -> Iterator[Instance]:
    idx = 0
    if cfg.mode in ("theorem2-random", "oracle-random"):
        master = random.Random(cfg.seed)
        for _ in range(cfg.trials):
            n = master.randint(cfg.n_min, cfg.n_max)
            p = cfg.densities[master.randrange(len(cfg.densities))]
            gseed = master.getrandbits(63)
            yield Instance(idx, "gnp", gnp(n, p, gseed), gseed, p)
            idx += 1
        if cfg.include_complete:
            for n in range(cfg.n_min, cfg.n_max + 1):
                yield Instance(idx, "complete", complete(n))
                idx += 1
    elif cfg.mode == "oracle-exhaustive":
        if cfg.corpus:
            for G in iter_graph6_file(cfg.corpus):
                yield Instance(idx, "corpus", G)
                idx += 1
        else:
            for n in range(cfg.n_min, cfg.n_max + 1):
                for G in all_labeled_graphs(n):
                    yield Instance(idx, "labeled", G)
                    idx += 1
    elif cfg.mode == "sharpness-sweep":
        seen = set()
        for prm in cfg.params:
            key = (prm.a, prm.b, prm.k)
            if key in seen:
                continue
            seen.add(key)
            for t in extremal.sharp_t_values(prm.a, prm.b, cfg.t_max):
                inst = extremal.build_extremal(prm.a, prm.b, prm.k, t)
                yield Instance(idx, f"extremal:{prm.a},{prm.b},{prm.k},t={t}", inst.graph, t=t)
                idx += 1


# --- per-instance evaluation ----------------------------------------------


def _check_factors(G: Graph, a: int, b: int, verdict: factor.ConstructiveVerdict) -> tuple[int, int]:
    """Re-verify every factor the oracle emitted; return (checked, bad)."""
    checked = bad = 0
    parts = verdict.parts or [((), verdict)]
    for Q, part in parts:
        H = delete_vertices_mask(G, sum(1 << q for q in Q))[0] if Q else G
        pins_of: dict[int, list] = {}
        for e, h in part.witnesses.items():
            pins_of.setdefault(id(h), []).append(e)
        for h in part.factors():
            checked += 1
            ok = factor.verify_factor(H, a, b, pins_of.get(id(h), []), h) and h.is_half_integral()
            bad += not ok
    return checked, bad


def _dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def evaluate(inst: Instance, prm: Params, cfg: ExperimentConfig) -> dict:
    """One ledger row (plus a ``_detail`` JSON document) for one instance."""
    G = inst.graph
    a, b, k = prm.a, prm.b, prm.k
    start = time.perf_counter()
    row = {
        "ledger_version": LEDGER_VERSION,
        "index": inst.index,
        "source": inst.source,
        "graph_seed": "" if inst.graph_seed is None else inst.graph_seed,
        "p": "" if inst.p is None else str(inst.p),
        "graph6": emit_graph6(G),
        "graph_hash": graph_hash(G),
        "n": G.n,
        "m": G.m,
        "a": a,
        "b": b,
        "k": k,
        "order_bound_ok": "",
        "hypothesis_holds": "",
        "degree_consequence_ok": "",
        "criterion_covered": "",
        "oracle_covered": "",
        "factors_checked": 0,
        "factors_bad": 0,
        "category": "",
        "certificate": "",
    }
    detail: dict = {"index": inst.index, "graph6": row["graph6"], "params": prm.as_dict()}

    premise = False
    theorem_mode = cfg.mode in ("theorem2-random", "sharpness-sweep")
    if theorem_mode and a >= 2 and k <= G.n:
        try:
            ob = neighborhood.order_bound_ok(G.n, a, b, k)
            mode = "disjunctive" if cfg.mode == "sharpness-sweep" else "threshold"
            rep = neighborhood.check_hypothesis(G, a, b, k, mode=mode, cap=cfg.cap)
            row["order_bound_ok"] = ob
            row["hypothesis_holds"] = rep.holds
            detail["hypothesis"] = rep.to_json()
            if cfg.mode == "theorem2-random":
                premise = ob and rep.holds
                if rep.holds:
                    row["degree_consequence_ok"] = neighborhood.degree_consequence_ok(G, a, b, k)
            else:
                strict = neighborhood.check_hypothesis(G, a, b, k, mode="threshold", cap=cfg.cap)
                detail["threshold_hypothesis"] = strict.to_json()
                premise = ob and strict.holds
        except RegimeError as exc:
            row["category"] = "regime-skip"
            detail["error"] = str(exc)
        except CapError as exc:
            row["category"] = "skipped-cap"
            detail["error"] = str(exc)

    run_engines = (cfg.engines == "all" or premise or cfg.mode.startswith("oracle")) and not row["category"]
    if run_engines and k > G.n:
        row["category"] = "k-exceeds-n"
        run_engines = False
    if run_engines:
        try:
            cv = criterion.is_critical_covered(G, a, b, k, cap=cfg.cap)
        except CapError as exc:
            row["category"] = "skipped-cap"
            detail["error"] = str(exc)
        else:
            ov = factor.is_critical_covered_constructive(G, a, b, k)
            checked, bad = _check_factors(G, a, b, ov)
            row["criterion_covered"] = cv.covered
            row["oracle_covered"] = ov.covered
            row["factors_checked"] = checked
            row["factors_bad"] = bad
            row["certificate"] = _dumps(cv.to_json())
            detail["criterion"] = cv.to_json()
            detail["oracle"] = {
                "covered": ov.covered,
                "failing_Q": list(ov.failing_Q) if ov.failing_Q is not None else None,
                "failing_edge": list(ov.failing_edge) if ov.failing_edge else None,
                "solves": ov.solves,
            }
            if cv.covered != ov.covered or bad:
                row["category"] = "disagreement"
            elif cfg.mode == "sharpness-sweep":
                row["category"] = "counterexample" if premise and not cv.covered else "sharpness"
            elif premise and not cv.covered:
                row["category"] = "counterexample"
            elif premise:
                row["category"] = "confirmed"
            elif cfg.mode == "theorem2-random":
                row["category"] = "premise-fails"
            else:
                row["category"] = "agree"
    if not row["category"]:
        row["category"] = "premise-fails"
    row["wall_time"] = f"{time.perf_counter() - start:.6f}"
    row["_detail"] = detail
    return row


def _tasks(cfg: ExperimentConfig) -> Iterator[tuple[Instance, Params, ExperimentConfig]]:
    for inst in generate_instances(cfg):
        for prm in cfg.params:
            if cfg.mode == "sharpness-sweep" and not inst.source.startswith(
                f"extremal:{prm.a},{prm.b},{prm.k},"
            ):
                continue
            yield inst, prm, cfg


def _evaluate_task(task) -> dict:
    return evaluate(*task)


@dataclass
class RunSummary:
    rows: int = 0
    premise_instances: int = 0
    confirmed: int = 0
    counterexamples: int = 0
    disagreements: int = 0
    sharpness: int = 0
    agree: int = 0
    skipped: int = 0
    degree_violations: int = 0
    factors_checked: int = 0
    factors_bad: int = 0
    exit_code: int = EXIT_OK
    ledger: str | None = None
    certificates: str | None = None
    aborted_at: int | None = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def run_experiment(cfg: ExperimentConfig, *, write: bool = True, keep_rows: bool = False):
    """Run ``cfg`` and write ``<mode>.csv`` plus ``<mode>.certificates.jsonl``.

    Returns ``(summary, rows)``; ``rows`` is empty unless ``keep_rows``.
    Stops at the first disagreement (exit 3) or counterexample (exit 4),
    after writing the offending row.
    """
    cfg.validate()
    summary = RunSummary()
    kept: list[dict] = []
    out_dir = result_dir(cfg)
    csv_fh = jsonl_fh = None
    if write:
        out_dir.mkdir(parents=True, exist_ok=True)
        ledger = out_dir / f"{cfg.mode}.csv"
        certs = out_dir / f"{cfg.mode}.certificates.jsonl"
        summary.ledger, summary.certificates = str(ledger), str(certs)
        csv_fh = open(ledger, "w", newline="", encoding="utf-8")
        jsonl_fh = open(certs, "w", encoding="utf-8")
        writer = csv.DictWriter(csv_fh, fieldnames=LEDGER_COLUMNS, lineterminator="\n")
        writer.writeheader()
        jsonl_fh.write(_dumps({"config": cfg.describe()}) + "\n")

    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        results = pool.map(_evaluate_task, _tasks(cfg), chunksize=16) if pool else map(_evaluate_task, _tasks(cfg))
        for row in results:
            detail = row.pop("_detail")
            summary.rows += 1
            cat = row["category"]
            if cat in ("confirmed", "counterexample"):
                summary.premise_instances += 1
            summary.confirmed += cat == "confirmed"
            summary.sharpness += cat == "sharpness"
            summary.agree += cat == "agree"
            summary.skipped += cat in ("skipped-cap", "regime-skip", "k-exceeds-n")
            summary.degree_violations += row["degree_consequence_ok"] is False
            summary.factors_checked += row["factors_checked"]
            summary.factors_bad += row["factors_bad"]
            if write:
                writer.writerow(row)
                jsonl_fh.write(_dumps(detail) + "\n")
            if keep_rows:
                kept.append(row | {"_detail": detail})
            if cat == "disagreement":
                summary.disagreements += 1
                summary.exit_code = EXIT_DISAGREEMENT
                summary.aborted_at = row["index"]
                log.error("engine disagreement on instance %s: %s", row["index"], _dumps(detail))
                break
            if cat == "counterexample":
                summary.counterexamples += 1
                summary.exit_code = EXIT_COUNTEREXAMPLE
                summary.aborted_at = row["index"]
                log.error("counterexample on instance %s: %s", row["index"], _dumps(detail))
                break
            if summary.rows % 5000 == 0:
                log.info("%d rows", summary.rows)
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
        if csv_fh:
            csv_fh.close()
            jsonl_fh.close()
    return summary, kept


def strip_timing(csv_text: str) -> str:
    """Ledger text with the timing columns blanked, for reproducibility checks."""
    rows = list(csv.DictReader(csv_text.splitlines()))
    lines = [",".join(LEDGER_COLUMNS)]
    for row in rows:
        for col in TIMING_COLUMNS:
            row[col] = ""
        lines.append(_dumps([row[c] for c in LEDGER_COLUMNS]))
    return "\n".join(lines)
