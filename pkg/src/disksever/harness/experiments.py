"""Experiment drivers: random-instance scaling study, snake study, calibration.

Every cell (instance x algorithm x k x repetition) is a pure function of the
config, so cells may run on a thread pool (``DISKSEVER_THREADS``) and the
rows are sorted before they are written.

Seeds are derived with :func:`derive_seed` from ``(base seed, role, instance
index, k, repetition)``; the trial index is folded in by
:func:`disksever.separators.sample_slopes`.  This schedule is part of the
file format and will not change.
"""

import csv
import hashlib
import json
import math
import os
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np
import yaml

from ..centerpoint import exact_centerpoint
from ..diskgraph import build_graph
from ..generators import gen_random, gen_random_disjoint, gen_snake
from ..separators import (TWO_THIRDS, axis_parallel_separator, crossings_through_point,
                          line_through_point_separator, optimal_line_separator,
                          random_line_separator, sample_slopes)
from .svg import scatter_svg

ROLE_INSTANCE = 0
ROLE_TRIALS = 1
ALGORITHMS = ("random", "axis", "optimal", "centerpoint")


def derive_seed(base, role, instance, k=0, repetition=0):
    seq = np.random.SeedSequence([int(base), role, int(instance), int(k), int(repetition)])
    return int(seq.generate_state(1, dtype=np.uint32)[0])


@dataclass
class ExperimentConfig:
    experiment: str = "exp1"           # "exp1" or "snake"
    n_values: list = field(default_factory=list)
    L: float = 25.0
    q_values: list = field(default_factory=list)
    algorithms: list = field(default_factory=lambda: ["random"])
    k_values: list = field(default_factory=lambda: [20])
    repetitions: int = 5
    seed: int = 0
    reduce: str = "mean"               # "mean" of k single-slope runs, or "min" over them
    nested_seeds: bool = False         # trial angles independent of k
    alpha: float = TWO_THIRDS
    require_connected: bool = True
    max_rejects: int = 1000
    timings: bool = False
    output: str = ""

    def __post_init__(self):
        if self.experiment not in ("exp1", "snake"):
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.reduce not in ("mean", "min"):
            raise ValueError(f"reduce must be 'mean' or 'min', got {self.reduce!r}")
        bad = set(self.algorithms) - set(ALGORITHMS)
        if bad:
            raise ValueError(f"unknown algorithms: {sorted(bad)}")
        if any(int(k) < 1 for k in self.k_values):
            raise ValueError("k values must be >= 1")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        data = dict(data)
        for key in ("n_values", "q_values"):
            if isinstance(data.get(key), dict):  # {start, stop, step}, stop inclusive
                r = data[key]
                data[key] = list(range(r["start"], r["stop"] + 1, r.get("step", 1)))
        return cls(**data)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            data = yaml.safe_load(fh)
        if not isinstance(data, dict):
            raise ValueError(f"{path}: config must be a mapping")
        return cls.from_dict(data)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ResultRow:
    instance_id: int
    n: int
    m: int
    algorithm: str
    k: int
    repetition: int
    size: float
    left: int
    right: int
    wall_ms: float = float("nan")

    def sort_key(self):
        return (self.instance_id, ALGORITHMS.index(self.algorithm), self.k, self.repetition)


ROW_FIELDS = [f.name for f in fields(ResultRow)]


def _threads():
    try:
        return max(1, int(os.environ.get("DISKSEVER_THREADS", "1")))
    except ValueError:
        return 1


def _run_cell(instance, algorithm, k, seed, reduce, alpha, centerpoint=None):
    """Size (float) plus the best separator of one cell."""
    if algorithm == "random":
        if reduce == "min":
            best = random_line_separator(instance, k, seed, alpha)
            return float(best.size), best
        runs = random_line_separator(instance, k, seed, alpha, reduce="all")
        runs = [r for r in runs if r is not None]
        return float(np.mean([r.size for r in runs])), min(runs, key=lambda r: r.size)
    if algorithm == "centerpoint":
        best = line_through_point_separator(instance, centerpoint, k, seed, alpha=alpha)
        if reduce == "min":
            return float(best.size), best
        angles = [s.angle for s in sample_slopes(seed, k)]
        return float(crossings_through_point(instance, centerpoint, angles).mean()), best
    if algorithm == "axis":
        best = axis_parallel_separator(instance)
    else:
        best = optimal_line_separator(instance, alpha)
    return float(best.size), best


def _cells(config, instances):
    for idx, (inst, m) in enumerate(instances):
        for algo in config.algorithms:
            randomized = algo in ("random", "centerpoint")
            ks = config.k_values if randomized else [0]
            reps = range(config.repetitions) if randomized else [0]
            for k in ks:
                for rep in reps:
                    yield idx, inst, m, algo, int(k), rep


def _run_cells(config, instances):
    centerpoints = {}
    if "centerpoint" in config.algorithms:
        centerpoints = {i: exact_centerpoint(inst.centers) for i, (inst, _) in enumerate(instances)}

    def work(cell):
        idx, inst, m, algo, k, rep = cell
        key_k = 0 if config.nested_seeds else k
        seed = derive_seed(config.seed, ROLE_TRIALS, idx, key_k, rep)
        start = time.perf_counter()
        size, best = _run_cell(inst, algo, k, seed, config.reduce, config.alpha,
                               centerpoints.get(idx))
        elapsed = (time.perf_counter() - start) * 1000.0
        best.validate(inst)
        return ResultRow(idx, inst.n, m, algo, k, rep, size, best.left, best.right,
                         elapsed if config.timings else float("nan"))

    cells = list(_cells(config, instances))
    threads = _threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(work, cells))
    else:
        rows = [work(c) for c in cells]
    return sorted(rows, key=ResultRow.sort_key)


def _random_instances(config):
    out = []
    for idx, n in enumerate(config.n_values):
        inst = gen_random(int(n), config.L, derive_seed(config.seed, ROLE_INSTANCE, idx),
                          config.require_connected, config.max_rejects)
        out.append((inst, build_graph(inst).m))
    return out


def run_experiment1(config):
    """Separator size versus edge count on random connected instances."""
    rows = _run_cells(config, _random_instances(config))
    if config.output:
        write_rows(config.output, rows)
        svg_path = Path(config.output).with_suffix(".svg")
        svg_path.write_text(plot_rows(rows, "Separator size on random instances"))
    return rows


def run_snake_experiment(config):
    """Minimum-of-k random separators (and optionally the optimum) on snakes."""
    instances = []
    for q in config.q_values:
        inst = gen_snake(int(q))
        instances.append((inst, build_graph(inst).m))
    rows = _run_cells(config, instances)
    if config.output:
        write_rows(config.output, rows)
        Path(config.output).with_suffix(".svg").write_text(
            plot_rows(rows, "Separator size on snake instances"))
    return rows


def run_config(config):
    if config.experiment == "exp1":
        return run_experiment1(config)
    return run_snake_experiment(config)


# --------------------------------------------------------------------------
# output

def _fmt_cell(v):
    if isinstance(v, float):
        return "NA" if math.isnan(v) else repr(v)
    return str(v)


def write_rows(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(ROW_FIELDS)
        for row in rows:
            w.writerow([_fmt_cell(getattr(row, f)) for f in ROW_FIELDS])


def read_rows(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        out = []
        for rec in reader:
            out.append(ResultRow(
                int(rec["instance_id"]), int(rec["n"]), int(rec["m"]), rec["algorithm"],
                int(rec["k"]), int(rec["repetition"]), float(rec["size"]),
                int(rec["left"]), int(rec["right"]),
                float("nan") if rec["wall_ms"] == "NA" else float(rec["wall_ms"])))
        return out


def summarize(rows):
    """Mean size over repetitions: ``{(algorithm, k): [(m, mean, variance), ...]}``."""
    groups = {}
    for r in rows:
        groups.setdefault((r.algorithm, r.k, r.instance_id, r.m), []).append(r.size)
    out = {}
    for (algo, k, _, m), sizes in sorted(groups.items()):
        var = statistics.pvariance(sizes) if len(sizes) > 1 else 0.0
        out.setdefault((algo, k), []).append((m, float(np.mean(sizes)), var))
    return out


def loglog_slope(points):
    """Least-squares slope of log(y) against log(x)."""
    pts = [(x, y) for x, y in points if x > 0 and y > 0]
    if len(pts) < 2:
        raise ValueError("need at least two positive points")
    lx = np.log([p[0] for p in pts])
    ly = np.log([p[1] for p in pts])
    return float(np.polyfit(lx, ly, 1)[0])


def plot_rows(rows, title):
    series = {}
    for (algo, k), pts in summarize(rows).items():
        label = algo if algo in ("axis", "optimal") else f"{algo} k={k}"
        series[label] = [(m, mean) for m, mean, _ in pts]
    return scatter_svg(series, title=title, xlabel="edges m", ylabel="average separator size")


# --------------------------------------------------------------------------
# calibration of hidden constants

@dataclass
class FamilySpec:
    name: str
    kind: str = "random"            # "random" or "disjoint"
    n_values: list = field(default_factory=lambda: [100, 200])
    L: float = 16.0
    instances_per_n: int = 1
    trials: int = 51
    bound: str = "general"         # "general": sqrt((m+n) ln n), "disjoint": sqrt(n)

    def scale(self, n, m):
        if self.bound == "disjoint":
            return math.sqrt(n)
        return math.sqrt((m + n) * math.log(n))


def family_samples(family, seed):
    """``(n, m, median crossing count through the centerpoint)`` per instance."""
    out = []
    idx = 0
    for n in family.n_values:
        for _ in range(family.instances_per_n):
            iseed = derive_seed(seed, ROLE_INSTANCE, idx)
            if family.kind == "disjoint":
                L = family.L if family.L > 0 else 3.0 * n
                inst = gen_random_disjoint(int(n), L, iseed)
            else:
                inst = gen_random(int(n), family.L, iseed, require_connected=False)
            m = build_graph(inst).m
            point = exact_centerpoint(inst.centers)
            angles = [s.angle for s in sample_slopes(derive_seed(seed, ROLE_TRIALS, idx),
                                                     family.trials)]
            counts = crossings_through_point(inst, point, angles)
            out.append((inst.n, m, float(np.median(counts)),
                        hashlib.sha256(inst.centers.tobytes()).hexdigest()))
            idx += 1
    return out


def calibrate_constants(families, seed=0, path=None):
    """Fit C in ``median size <= C * scale(n, m)`` as the largest observed ratio."""
    record = {"seed": seed, "constants": {}, "families": {}}
    digest = hashlib.sha256()
    for fam in families:
        samples = family_samples(fam, seed)
        ratios = [med / fam.scale(n, m) for n, m, med, _ in samples]
        for *_, h in samples:
            digest.update(h.encode())
        record["constants"][fam.name] = max(ratios)
        record["families"][fam.name] = {
            "family": asdict(fam),
            "samples": [[n, m, med] for n, m, med, _ in samples],
        }
    record["fingerprint"] = digest.hexdigest()
    if path:
        with open(path, "w", newline="\n") as fh:
            json.dump(record, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return record
