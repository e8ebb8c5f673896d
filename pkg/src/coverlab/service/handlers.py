"""Command handlers: ExperimentConfig in, result payload out.

Each handler is a pure function of its config (plus any files the
config points at), so identical config + seed reproduces identical
reports. Trials use per-trial derived generators and are aggregated
in trial order, which keeps results independent of any execution
interleaving.
"""

from __future__ import annotations

import itertools
import json
import math
import statistics
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from coverlab import moments, reports
from coverlab.colorings import (
    ClassProfile,
    Coloring,
    balance_check,
    count_proper,
    enumerate_proper,
    read_coloring,
)
from coverlab.core import (
    build_core,
    core_freeze_check,
    default_ell,
    expansion_bound_size,
    expansion_violation,
    freeze_delta,
)
from coverlab.covers import (
    check_cover_profile,
    cluster_separation,
    is_cover,
    valid_cover_census,
)
from coverlab.errors import DomainError
from coverlab.graphs import (
    MultiGraph,
    builtin_graph,
    m_for_average_degree,
    read_edgelist,
    sample_gnm,
    sample_gnm_multi,
    sample_planted,
    write_edgelist,
)
from coverlab.rng import trial_generator
from coverlab.service.models import ExperimentConfig
from coverlab.whitening import PartialColoring, is_delta_frozen, whiten


def _require(cfg: ExperimentConfig, *fields: str) -> None:
    missing = [f for f in fields if getattr(cfg, f) is None]
    if missing:
        raise DomainError(f"missing required field(s): {', '.join(missing)}")


def _require_seed(cfg: ExperimentConfig) -> int:
    if cfg.seed is None:
        raise DomainError("seed is required for stochastic runs")
    return cfg.seed


def _edge_budget(cfg: ExperimentConfig) -> int:
    return cfg.budget if cfg.budget is not None else 10**6


def _resolve_m(cfg: ExperimentConfig) -> int:
    if cfg.m is not None:
        return cfg.m
    if cfg.d is not None:
        _require(cfg, "n")
        return m_for_average_degree(cfg.n, cfg.d)
    raise DomainError("give exactly one of m or d")


def _resolve_graph(cfg: ExperimentConfig) -> MultiGraph:
    """Turn --edges into a graph: inline edge-list text, a file (raw
    edge list or a generate report), or a builtin name."""
    if cfg.edges is None:
        raise DomainError("this command needs edges (builtin name, file, or edge-list text)")
    text = cfg.edges
    if "\n" in text:
        graph = read_edgelist(text)
    else:
        path = Path(text)
        if path.is_file():
            raw = path.read_text()
            if raw.lstrip().startswith("{"):
                payload = json.loads(raw)
                raw = payload.get("result", {}).get("edgelist")
                if not isinstance(raw, str):
                    raise DomainError(f"{text} is not a report containing an edgelist")
            graph = read_edgelist(raw)
        else:
            graph = builtin_graph(text)
    if cfg.n is not None and cfg.n != graph.n:
        raise DomainError(f"n={cfg.n} disagrees with the graph, which has {graph.n} vertices")
    return graph


def _resolve_coloring(cfg: ExperimentConfig, n: int) -> Coloring:
    if cfg.colors is None:
        raise DomainError("this command needs colors (file or comma-separated values)")
    text = cfg.colors
    if "," in text or text.strip().isdigit():
        values = tuple(int(x) for x in text.replace(",", " ").split())
        k = cfg.k if cfg.k is not None else max(values, default=1)
        coloring = Coloring(values, k)
    else:
        path = Path(text)
        if not path.is_file():
            raise DomainError(f"colors file not found: {text}")
        coloring = read_coloring(path.read_text())
        if cfg.k is not None and cfg.k != coloring.k:
            raise DomainError(f"k={cfg.k} disagrees with the coloring file (k={coloring.k})")
    if coloring.n != n:
        raise DomainError(f"coloring has {coloring.n} entries but the graph has {n} vertices")
    return coloring


def _parse_nu(text: str) -> tuple[int, ...]:
    try:
        nu = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise DomainError(f"malformed profile {text!r}") from exc
    if not nu or any(x < 0 for x in nu):
        raise DomainError(f"profile entries must be nonnegative, got {text!r}")
    return nu


def _round_robin(n: int, k: int) -> tuple[int, ...]:
    return tuple((v - 1) % k + 1 for v in range(1, n + 1))


def _compositions(total: int, parts: int):
    """All ordered splits of total into `parts` nonnegative integers."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head, *rest)


# ---------------------------------------------------------------- commands


def handle_generate(cfg: ExperimentConfig) -> dict:
    _require(cfg, "n")
    seed = _require_seed(cfg)
    m = _resolve_m(cfg)
    if cfg.model == "gnm":
        graph = sample_gnm(cfg.n, m, seed)
    elif cfg.model == "multigraph":
        graph = sample_gnm_multi(cfg.n, m, seed)
    else:
        _require(cfg, "k")
        colors = _round_robin(cfg.n, cfg.k)
        graph = sample_planted(cfg.n, m, colors, seed)
    return {
        "model": cfg.model,
        "n": graph.n,
        "m": graph.m,
        "simple": graph.is_simple(),
        "average_degree": 2 * graph.m / graph.n,
        "edgelist": write_edgelist(graph),
    }


def handle_color(cfg: ExperimentConfig) -> dict:
    _require(cfg, "k")
    graph = _resolve_graph(cfg)
    profile = ClassProfile(_parse_nu(cfg.nu)) if cfg.nu is not None else None
    if profile is not None and profile.k != cfg.k:
        raise DomainError(f"profile has {profile.k} classes but k={cfg.k}")
    mode = cfg.mode or "count"
    if mode not in ("count", "enumerate"):
        raise DomainError(f"color supports mode count|enumerate, got {mode}")
    result: dict = {"n": graph.n, "m": graph.m, "k": cfg.k}
    if profile is not None:
        result["nu"] = list(profile.nu)
    if mode == "count":
        result["count"] = count_proper(graph, cfg.k, profile)
    else:
        colorings = [list(c.values) for c in enumerate_proper(graph, cfg.k, profile)]
        result["count"] = len(colorings)
        result["colorings"] = colorings
    return result


def handle_whiten(cfg: ExperimentConfig) -> dict:
    graph = _resolve_graph(cfg)
    coloring = _resolve_coloring(cfg, graph.n)
    image = whiten(graph, coloring)
    check = is_cover(graph, image)
    result = {
        "n": graph.n,
        "k": coloring.k,
        "input": list(coloring.values),
        "output": list(image.values),
        "zero_count": image.zero_count,
        "is_cover": bool(check),
    }
    if not check:
        result["violation"] = {"kind": check.violation, "witness": list(check.witness)}
    return result


def handle_census(cfg: ExperimentConfig) -> dict:
    _require(cfg, "k")
    graph = _resolve_graph(cfg)
    census = valid_cover_census(graph, cfg.k, budget=_edge_budget(cfg))
    result = census.to_json_dict(include_colorings=cfg.include_colorings)
    result["cluster_sizes"] = sorted(census.cluster_sizes())
    result["separation"] = cluster_separation(census)
    return result


def _core_check(cfg: ExperimentConfig) -> dict:
    graph = _resolve_graph(cfg)
    coloring = _resolve_coloring(cfg, graph.n)
    k = coloring.k
    ell = cfg.ell if cfg.ell is not None else default_ell(k)
    decomposition = build_core(graph, coloring, ell)
    image = whiten(graph, coloring)
    result = {
        "mode": "check",
        "n": graph.n,
        "k": k,
        "decomposition": decomposition.to_json_dict(),
        "freeze": core_freeze_check(graph, coloring, decomposition),
        "core_whitening_nonzero": all(image.value(v) != 0 for v in decomposition.core),
    }
    if k >= 3:
        max_size = min(expansion_bound_size(graph.n, k), graph.n)
        report = expansion_violation(graph, ell, max_size, subset_budget=_edge_budget(cfg))
        result["expansion"] = {
            "max_size": report.max_size,
            "violating_set": (
                list(report.violating_set) if report.violating_set is not None else None
            ),
            "method": report.method,
            "subsets_examined": report.subsets_examined,
        }
    delta = cfg.delta if cfg.delta is not None else freeze_delta(k)
    frozen_set = sorted(set(graph.vertices()) - set(decomposition.w) - set(decomposition.y))
    result["delta"] = delta
    result["frozen_candidate"] = frozen_set
    result["delta_frozen"] = is_delta_frozen(
        graph, coloring, frozen_set, delta, budget=_edge_budget(cfg)
    )
    return result


def _core_ensemble(cfg: ExperimentConfig) -> dict:
    _require(cfg, "n", "k", "trials")
    seed = _require_seed(cfg)
    m = _resolve_m(cfg)
    k = cfg.k
    ell = cfg.ell if cfg.ell is not None else default_ell(k)
    colors = _round_robin(cfg.n, k)
    coloring = Coloring(colors, k)
    per_trial = []
    for t in range(cfg.trials):
        graph = sample_planted(cfg.n, m, colors, trial_generator(seed, t))
        dec = build_core(graph, coloring, ell)
        per_trial.append(
            {
                "trial": t,
                "w": len(dec.w),
                "u": len(dec.u),
                "y": len(dec.y),
                "core": len(dec.core),
                "freeze": core_freeze_check(graph, coloring, dec),
            }
        )
    return {
        "mode": "ensemble",
        "model": "planted",
        "n": cfg.n,
        "m": m,
        "k": k,
        "ell": ell,
        "trials": cfg.trials,
        "per_trial": per_trial,
        "summary": {
            "w_mean": statistics.fmean(r["w"] for r in per_trial),
            "u_mean": statistics.fmean(r["u"] for r in per_trial),
            "y_mean": statistics.fmean(r["y"] for r in per_trial),
            "core_mean": statistics.fmean(r["core"] for r in per_trial),
            "freeze_fraction": statistics.fmean(float(r["freeze"]) for r in per_trial),
        },
    }


def handle_core(cfg: ExperimentConfig) -> dict:
    mode = cfg.mode or ("ensemble" if cfg.trials is not None else "check")
    if mode == "check":
        return _core_check(cfg)
    if mode == "ensemble":
        return _core_ensemble(cfg)
    raise DomainError(f"core supports mode check|ensemble, got {mode}")


def handle_bounds(cfg: ExperimentConfig) -> dict:
    ks = cfg.ks if cfg.ks else ([cfg.k] if cfg.k is not None else None)
    if not ks:
        raise DomainError("bounds needs at least one k")
    rows = [moments.bounds_table(k) for k in sorted(set(ks))]
    return {
        "columns": list(rows[0].COLUMNS),
        "rows": [row.as_dict() for row in rows],
        "csv": reports.bounds_csv(rows),
    }


def _expected_total(n: int, m: int, k: int) -> Fraction:
    total = Fraction(0)
    for nu in _compositions(n, k):
        total += moments.expected_colorings_exact(n, m, nu)
    return total


def handle_montecarlo(cfg: ExperimentConfig) -> dict:
    _require(cfg, "n", "k", "trials")
    seed = _require_seed(cfg)
    m = _resolve_m(cfg)
    n, k, trials = cfg.n, cfg.k, cfg.trials
    nu = _parse_nu(cfg.nu) if cfg.nu is not None else None
    if nu is not None:
        if len(nu) != k or sum(nu) != n:
            raise DomainError(f"profile {nu} does not split n={n} into k={k} classes")
        profile = ClassProfile(nu)
        expected = moments.expected_colorings_exact(n, m, nu)
    else:
        profile = None
        expected = _expected_total(n, m, k)

    counts = []
    balance_pass = 0
    profile_pass = 0
    enumerated = 0
    profile_stats = n <= 12
    for t in range(trials):
        graph = sample_gnm_multi(n, m, trial_generator(seed, t))
        counts.append(count_proper(graph, k, profile))
        if profile_stats:
            for coloring in enumerate_proper(graph, k):
                enumerated += 1
                if balance_check(coloring).passed:
                    balance_pass += 1
                if check_cover_profile(whiten(graph, coloring)).passed:
                    profile_pass += 1

    mean = statistics.fmean(counts)
    std = statistics.stdev(counts) if trials > 1 else 0.0
    stderr = std / math.sqrt(trials) if trials > 1 else 0.0
    z = (mean - float(expected)) / stderr if stderr > 0 else 0.0
    result = {
        "model": "multigraph",
        "n": n,
        "m": m,
        "k": k,
        "trials": trials,
        "nu": list(nu) if nu is not None else None,
        "mean": mean,
        "std": std,
        "stderr": stderr,
        "expected": float(expected),
        "expected_exact": str(expected),
        "z": z,
        "within_3_sigma": (
            abs(mean - float(expected)) <= 3 * stderr if stderr > 0 else mean == float(expected)
        ),
    }
    if profile_stats:
        result["coloring_statistics"] = {
            "colorings_seen": enumerated,
            "balance_pass_fraction": balance_pass / enumerated if enumerated else None,
            "cover_profile_pass_fraction": profile_pass / enumerated if enumerated else None,
        }
    return result


def _has_triangle(graph: MultiGraph) -> bool:
    neigh: list[set[int]] = [set() for _ in range(graph.n + 1)]
    pairs = set()
    for u, v in graph.edges:
        if u != v:
            neigh[u].add(v)
            neigh[v].add(u)
            pairs.add((min(u, v), max(u, v)))
    return any(neigh[u] & neigh[v] for u, v in pairs)


def handle_model_compare(cfg: ExperimentConfig) -> dict:
    _require(cfg, "n", "trials")
    seed = _require_seed(cfg)
    m = _resolve_m(cfg)
    n, trials = cfg.n, cfg.trials
    event: Callable[[MultiGraph], bool] = lambda g: not _has_triangle(g)

    simple_event = 0
    multi_event = 0
    multi_simple = 0
    multi_simple_event = 0
    for t in range(trials):
        rng = trial_generator(seed, t)
        g_simple = sample_gnm(n, m, rng)
        if event(g_simple):
            simple_event += 1
        g_multi = sample_gnm_multi(n, m, rng)
        ok = event(g_multi)
        if ok:
            multi_event += 1
        if g_multi.is_simple():
            multi_simple += 1
            if ok:
                multi_simple_event += 1

    d = 2 * m / n
    return {
        "event": cfg.event,
        "n": n,
        "m": m,
        "d": d,
        "trials": trials,
        "uniform_simple": {
            "event_count": simple_event,
            "p_event": simple_event / trials,
        },
        "independent_pairs": {
            "event_count": multi_event,
            "p_event": multi_event / trials,
            "simple_count": multi_simple,
            "p_simple": multi_simple / trials,
            "simple_event_count": multi_simple_event,
            "p_event_given_simple": (
                multi_simple_event / multi_simple if multi_simple else None
            ),
        },
        "simple_probability_floor": math.exp(-d - 2 * d * d),
        "transfer_ceiling": math.exp(d + 2 * d * d),
    }


def handle_ballsbins_check(cfg: ExperimentConfig) -> dict:
    cases = 0
    max_diff = 0.0
    for mu in range(1, cfg.max_mu + 1):
        for bins in range(1, cfg.max_nu + 1):
            for counts in _compositions(mu, bins):
                exact = float(moments.balls_bins_joint(mu, bins, counts))
                for lam in cfg.lambdas:
                    cases += 1
                    approx = moments.poisson_conditioned_joint(lam, counts, mu)
                    max_diff = max(max_diff, abs(exact - approx))
    overhead = [
        {
            "mu": mu,
            "value": moments.poissonization_overhead(mu),
            "within_cap": moments.poissonization_overhead(mu)
            <= moments.BALLS_BINS_OVERHEAD_CAP,
        }
        for mu in range(1, cfg.max_mu + 1)
    ]
    return {
        "max_mu": cfg.max_mu,
        "max_nu": cfg.max_nu,
        "lambdas": list(cfg.lambdas),
        "cases": cases,
        "max_abs_diff": max_diff,
        "identity_ok": max_diff <= 1e-12,
        "overhead": overhead,
        "overhead_cap": moments.BALLS_BINS_OVERHEAD_CAP,
        "overhead_ok": all(row["within_cap"] for row in overhead),
    }


HANDLERS: dict[str, Callable[[ExperimentConfig], dict]] = {
    "generate": handle_generate,
    "color": handle_color,
    "whiten": handle_whiten,
    "census": handle_census,
    "core": handle_core,
    "bounds": handle_bounds,
    "montecarlo": handle_montecarlo,
    "model-compare": handle_model_compare,
    "ballsbins-check": handle_ballsbins_check,
}


def run_command(command: str, cfg: ExperimentConfig) -> dict:
    """Execute one command and wrap the outcome in a report envelope.

    Failures become error envelopes instead of raising, so callers
    always get a schema-valid report.
    """
    if command not in HANDLERS:
        raise DomainError(f"unknown command {command!r}; known: {sorted(HANDLERS)}")
    try:
        if cfg.subcommand is not None and cfg.subcommand != command:
            raise DomainError(
                f"config names subcommand {cfg.subcommand!r} but {command!r} was called"
            )
        result = HANDLERS[command](cfg)
    except Exception as exc:  # noqa: BLE001 - converted to typed error records
        return reports.error_envelope(command, cfg.report_dict(), exc)
    return reports.envelope(command, cfg.report_dict(), result)
