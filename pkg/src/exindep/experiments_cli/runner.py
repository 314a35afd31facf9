"""Batch inequality audits and Monte Carlo maxima experiments.

Two workloads share this module:

* :func:`bound_audit_run` draws ``count`` random event systems and runs the
  full inequality audit on each, collecting per-system rows, any
  violations (expected none), and the worst signed residual of every
  inequality — the closer to 0 from below, the tighter the bound;
* :func:`run_max_experiment` samples random structures, takes the
  designated maximum statistic per trial, normalizes it with the matching
  constants, and measures the sup-grid distance to the chosen reference
  CDF.

Both are deterministic functions of their seeds: every trial/system gets an
independent counter-based stream keyed by ``(master seed, index)``, so
results are identical however work is batched.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .._rng import child_seed
from ..coefficients import AUDIT_TOL, BoundAudit, audit
from ..errors import DomainError, StructuralError
from ..gaussian_evt import GaussianSystem, sample
from ..gumbel_limits import (
    NormConstants,
    clique_constants,
    common_neighbour_constants,
    gumbel_cdf,
    norm_constants,
    product_max_cdf,
)
from ..random_structures import (
    clique_cond_expectation,
    clique_counts,
    codegrees,
    common_neighbours,
    gen_graph,
    gen_hypergraph,
    hyper_degrees,
    truncation_event,
)
from .config import EmpiricalResult, ExperimentConfig, SystemGenSpec
from .generators import generate_system

__all__ = [
    "AuditRow",
    "AuditRunSummary",
    "bound_audit_run",
    "run_max_experiment",
    "ks_distance",
    "two_sample_ks",
    "gaussian_max_rate",
]


# ---------------------------------------------------------------------------
# Inequality audits at scale
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AuditRow:
    """One audited system: identity, size, families, and the full audit."""

    system_id: int
    d: int
    atoms: int
    event_family: str
    dep_family: str
    audit: BoundAudit
    all_pass: bool


@dataclass(frozen=True)
class AuditRunSummary:
    """Aggregate of one audit run.

    ``violations`` lists human-readable descriptions of failed checks
    (expected empty).  ``worst_residuals`` maps each inequality to its
    worst signed residual over the corpus, oriented so that positive means
    violation: e.g. ``exact_gap - thm1_rhs`` for the two-sided bound.
    ``arratia_union`` tracks ``union_form - phi_tilde`` (the domination
    check) and ``chain`` the largest ordering defect of the declustering
    chains.
    """

    spec: SystemGenSpec
    count: int
    seed: int
    rows: tuple[AuditRow, ...]
    violations: tuple[str, ...]
    worst_residuals: dict[str, float]
    family_counts: dict[str, int] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return not self.violations


def bound_audit_run(spec: SystemGenSpec, count: int, seed: int) -> AuditRunSummary:
    """Audit ``count`` randomly generated systems drawn per ``spec``.

    Checks per system: the two-sided bound, both one-sided bounds, the
    zero-negative-mixing special case where applicable, the declustering
    chain orderings, and domination of the union form by ``phi_tilde``.
    """
    if count < 1:
        raise DomainError(f"count = {count!r} must be at least 1")
    rows: list[AuditRow] = []
    violations: list[str] = []
    worst = {
        "thm1": -math.inf,
        "upper": -math.inf,
        "lower": -math.inf,
        "dubickas": -math.inf,
        "chain": -math.inf,
        "arratia_union": -math.inf,
    }
    family_counts: dict[str, int] = {}

    for sys_id in range(count):
        drawn = generate_system(spec, child_seed(seed, sys_id))
        system, dep = drawn.system, drawn.dep
        result = audit(system, dep)
        coeffs = result.coefficients

        residuals = {
            "thm1": result.exact_gap - result.thm1_rhs,
            "upper": result.none_occur - result.upper_rhs,
            "lower": result.lower_rhs - result.none_occur,
            "chain": max(
                coeffs.delta1 - coeffs.delta1_prime,
                coeffs.delta1_prime - coeffs.delta1_dprime,
                coeffs.delta2 - coeffs.delta2_prime,
                coeffs.delta2_prime - coeffs.delta2_dprime,
            ),
            "arratia_union": result.arratia_union_lower - coeffs.phi_tilde,
        }
        if result.dubickas_applicable:
            residuals["dubickas"] = result.dubickas_rhs - result.none_occur
        ok = True
        for name, residual in residuals.items():
            worst[name] = max(worst[name], residual)
            if residual > AUDIT_TOL:
                ok = False
                violations.append(
                    f"system {sys_id} ({drawn.event_family}/{drawn.dep_family}): "
                    f"{name} residual {residual:.3e}"
                )
        label = f"{drawn.event_family}/{drawn.dep_family}"
        family_counts[label] = family_counts.get(label, 0) + 1
        rows.append(
            AuditRow(
                system_id=sys_id,
                d=system.d,
                atoms=system.space.n_atoms,
                event_family=drawn.event_family,
                dep_family=drawn.dep_family,
                audit=result,
                all_pass=ok,
            )
        )

    return AuditRunSummary(
        spec=spec,
        count=count,
        seed=seed,
        rows=tuple(rows),
        violations=tuple(violations),
        worst_residuals={k: v for k, v in worst.items() if v > -math.inf},
        family_counts=family_counts,
    )


# ---------------------------------------------------------------------------
# KS distances
# ---------------------------------------------------------------------------

def ks_distance(samples, reference, grid) -> float:
    """Sup over grid points of |empirical CDF - reference CDF|.

    ``reference`` may be a callable CDF, an object with a ``cdf`` method,
    or an array of CDF values aligned with ``grid``.
    """
    values = np.asarray(samples, dtype=np.float64).ravel()
    if values.size == 0:
        raise DomainError("ks_distance needs at least one sample")
    grid_arr = np.asarray(grid, dtype=np.float64).ravel()
    if hasattr(reference, "cdf"):
        reference = reference.cdf
    if callable(reference):
        ref = np.array([float(reference(x)) for x in grid_arr])
    else:
        ref = np.asarray(reference, dtype=np.float64).ravel()
        if ref.shape != grid_arr.shape:
            raise StructuralError(
                f"reference has {ref.size} values for {grid_arr.size} grid points"
            )
    ecdf = np.searchsorted(np.sort(values), grid_arr, side="right") / values.size
    return float(np.abs(ecdf - ref).max())


def two_sample_ks(first, second) -> float:
    """Classical two-sample sup distance between empirical CDFs."""
    a = np.sort(np.asarray(first, dtype=np.float64).ravel())
    b = np.sort(np.asarray(second, dtype=np.float64).ravel())
    if a.size == 0 or b.size == 0:
        raise DomainError("two_sample_ks needs nonempty samples on both sides")
    pooled = np.concatenate([a, b])
    pooled.sort(kind="mergesort")
    cdf_a = np.searchsorted(a, pooled, side="right") / a.size
    cdf_b = np.searchsorted(b, pooled, side="right") / b.size
    return float(np.abs(cdf_a - cdf_b).max())


# ---------------------------------------------------------------------------
# Maxima experiments
# ---------------------------------------------------------------------------

def _constants_for(cfg: ExperimentConfig) -> NormConstants:
    n, p = cfg.n, cfg.p
    if cfg.kind == "graph-maxdeg":
        return norm_constants(n, n - 1, p)
    if cfg.kind == "hypergraph-maxdeg":
        return norm_constants(n, math.comb(n - 1, cfg.k - 1), p)
    if cfg.kind == "hypergraph-codegree":
        return norm_constants(
            math.comb(n, cfg.s), math.comb(n - cfg.s, cfg.k - cfg.s), p
        )
    if cfg.kind == "clique-ext":
        return clique_constants(n, p, cfg.k)
    if cfg.kind == "common-neighbours":
        return common_neighbour_constants(n, p, cfg.h)
    raise AssertionError(f"unreachable kind {cfg.kind!r}")


def _reference_on_grid(cfg: ExperimentConfig, consts: NormConstants) -> np.ndarray:
    if cfg.reference == "gumbel":
        return np.array([gumbel_cdf(float(x)) for x in cfg.grid])
    n, p = cfg.n, cfg.p
    if cfg.kind == "graph-maxdeg":
        d, trials_n, prob = float(n), n - 1, p
    elif cfg.kind == "hypergraph-maxdeg":
        d, trials_n, prob = float(n), math.comb(n - 1, cfg.k - 1), p
    elif cfg.kind == "hypergraph-codegree":
        d, trials_n, prob = (
            float(math.comb(n, cfg.s)),
            math.comb(n - cfg.s, cfg.k - cfg.s),
            p,
        )
    elif cfg.kind == "common-neighbours":
        d, trials_n, prob = float(math.comb(n, cfg.h)), n - cfg.h, p**cfg.h
    else:  # clique-ext is validated to use the gumbel reference
        raise AssertionError(f"no product reference for kind {cfg.kind!r}")
    return np.array(
        [product_max_cdf(d, trials_n, prob, float(x), consts) for x in cfg.grid]
    )


def run_max_experiment(cfg: ExperimentConfig) -> EmpiricalResult:
    """Sample structures, extract maxima, normalize, and compare to the reference.

    Per-trial structures use streams keyed by ``(cfg.seed, trial)``; the
    result is a pure function of the config.  Kind-specific companions:
    ``clique-ext`` also records the per-trial maximum of the
    degree-conditional expected clique counts (and the two-sample distance
    between the two maxima families); ``common-neighbours`` records the
    fraction of trials whose lower-order counts stayed typical.
    """
    consts = _constants_for(cfg)
    raw = np.empty(cfg.trials, dtype=np.float64)
    aux_raw: np.ndarray | None = None
    aux_stats: dict[str, float] = {}

    if cfg.kind == "graph-maxdeg":
        for t in range(cfg.trials):
            g = gen_graph(cfg.n, cfg.p, child_seed(cfg.seed, t))
            raw[t] = g.degrees.max() if cfg.n > 1 else 0.0
    elif cfg.kind == "hypergraph-maxdeg":
        for t in range(cfg.trials):
            hg = gen_hypergraph(cfg.n, cfg.k, cfg.p, child_seed(cfg.seed, t))
            raw[t] = hyper_degrees(hg).values.max()
    elif cfg.kind == "hypergraph-codegree":
        for t in range(cfg.trials):
            hg = gen_hypergraph(cfg.n, cfg.k, cfg.p, child_seed(cfg.seed, t))
            raw[t] = codegrees(hg, cfg.s).values.max()
    elif cfg.kind == "clique-ext":
        aux_raw = np.empty(cfg.trials, dtype=np.float64)
        for t in range(cfg.trials):
            g = gen_graph(cfg.n, cfg.p, child_seed(cfg.seed, t))
            raw[t] = clique_counts(g, cfg.k).values.max()
            aux_raw[t] = clique_cond_expectation(g, cfg.k, cfg.p).values.max()
        aux_stats["cond_vs_count_ks"] = two_sample_ks(raw, aux_raw)
    elif cfg.kind == "common-neighbours":
        aux_raw = np.empty(cfg.trials, dtype=np.float64)
        for t in range(cfg.trials):
            g = gen_graph(cfg.n, cfg.p, child_seed(cfg.seed, t))
            raw[t] = common_neighbours(g, cfg.h).values.max()
            aux_raw[t] = 1.0 if truncation_event(g, cfg.h, cfg.p).holds else 0.0
        aux_stats["truncation_rate"] = float(aux_raw.mean())
    else:
        raise AssertionError(f"unreachable kind {cfg.kind!r}")

    normalized = (raw - consts.a) / consts.b
    reference = _reference_on_grid(cfg, consts)
    ks = ks_distance(normalized, reference, cfg.grid)
    return EmpiricalResult(
        config=cfg,
        raw_max=raw,
        normalized=normalized,
        ks_vs_reference=ks,
        constants=consts,
        seed=cfg.seed,
        aux_raw=aux_raw,
        aux_stats=aux_stats,
    )


# ---------------------------------------------------------------------------
# Gaussian maxima (streamed reduction, no trials × d matrix)
# ---------------------------------------------------------------------------

def gaussian_max_rate(
    system: GaussianSystem,
    level: float,
    trials: int,
    seed: int,
    *,
    block: int = 2048,
) -> float:
    """Empirical ``P(max_i X_i ≤ level)`` over ``trials`` samples.

    Streams the sampler in windows (``trial_offset`` keyed), so only
    ``block × d`` floats are alive at once; the estimate is a pure function
    of ``(system, level, trials, seed)`` regardless of ``block``.
    """
    if trials < 1:
        raise DomainError(f"trials = {trials!r} must be at least 1")
    below = 0
    for start in range(0, trials, block):
        take = min(block, trials - start)
        window = sample(system, take, seed, trial_offset=start)
        below += int((window.max(axis=1) <= level).sum())
    return below / trials
