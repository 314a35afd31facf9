"""Configuration and result records for batch experiments.

Three records travel through the harness:

* :class:`SystemGenSpec` — how to draw random finite event systems
  (dimension/atom ranges, event family, dependency-graph family) for
  inequality audits at scale;
* :class:`ExperimentConfig` — one Monte Carlo maxima experiment: the
  structure kind and parameters, trial count, master seed, the evaluation
  grid for distribution comparison, and the reference CDF choice;
* :class:`EmpiricalResult` — the samples of the maximum statistic, their
  normalized values ``(max - a) / b``, the sup-grid distance to the
  reference, the constants used, and enough echo to reproduce the run.

Experiment kinds
----------------
``graph-maxdeg``          maximum vertex degree of a binomial graph
``hypergraph-maxdeg``     maximum vertex degree of a binomial hypergraph
``hypergraph-codegree``   maximum codegree over ``s``-subsets
``clique-ext``            maximum per-vertex ``k``-clique count
``common-neighbours``     maximum common-neighbour count over ``h``-subsets

The default reference is the exact independent product of per-index
binomial CDFs; the Gumbel law is the secondary reference (finite-size
convergence to it is slow, so distribution gates use the product form).
``clique-ext`` has no product reference — its per-vertex counts are not
binomial — and therefore requires ``reference="gumbel"``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np

from ..errors import StructuralError
from ..gumbel_limits import NormConstants

__all__ = [
    "EVENT_FAMILIES",
    "DEP_FAMILIES",
    "EXPERIMENT_KINDS",
    "DEFAULT_GRID_START",
    "DEFAULT_GRID_STOP",
    "DEFAULT_GRID_STEP",
    "default_grid",
    "SystemGenSpec",
    "ExperimentConfig",
    "EmpiricalResult",
]

# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

DEFAULT_GRID_START = -3.0
DEFAULT_GRID_STOP = 6.0
DEFAULT_GRID_STEP = 0.05


def default_grid() -> np.ndarray:
    """Evaluation grid ``[-3, 6]`` with step ``0.05`` (181 points)."""
    steps = round((DEFAULT_GRID_STOP - DEFAULT_GRID_START) / DEFAULT_GRID_STEP)
    grid = DEFAULT_GRID_START + DEFAULT_GRID_STEP * np.arange(steps + 1)
    grid.flags.writeable = False
    return grid


# ---------------------------------------------------------------------------
# System generation spec
# ---------------------------------------------------------------------------

#: Event-system families; "mixed" draws one of the concrete families per
#: system (corpus mode for audits).
EVENT_FAMILIES = (
    "uniform-random",
    "product-space",
    "xor-parity",
    "monotone-increasing",
    "clustered",
    "mixed",
)

#: Dependency-graph families; "mixed" draws one per system.  The
#: "clustered" event family always carries its own block graph.
DEP_FAMILIES = ("empty", "complete", "random", "distance-band", "mixed")


@dataclass(frozen=True)
class SystemGenSpec:
    """Recipe for drawing random event systems with dependency graphs.

    ``d_range`` and ``atom_range`` are inclusive ``(lo, hi)`` bounds on the
    number of events and atoms.  ``dep_edge_prob`` parameterizes the
    "random" graph family, ``band_width`` the "distance-band" family.
    """

    d_range: tuple[int, int] = (1, 8)
    atom_range: tuple[int, int] = (4, 256)
    event_family: str = "mixed"
    dep_family: str = "mixed"
    dep_edge_prob: float = 0.5
    band_width: int = 1

    def __post_init__(self) -> None:
        for name, (lo, hi) in (
            ("d_range", self.d_range),
            ("atom_range", self.atom_range),
        ):
            if not (1 <= lo <= hi):
                raise StructuralError(f"{name} = ({lo}, {hi}) must satisfy 1 ≤ lo ≤ hi")
        if self.event_family not in EVENT_FAMILIES:
            raise StructuralError(
                f"unknown event family {self.event_family!r}; "
                f"expected one of {EVENT_FAMILIES}"
            )
        if self.dep_family not in DEP_FAMILIES:
            raise StructuralError(
                f"unknown dependency-graph family {self.dep_family!r}; "
                f"expected one of {DEP_FAMILIES}"
            )
        if not (0.0 <= self.dep_edge_prob <= 1.0):
            raise StructuralError(
                f"dep_edge_prob = {self.dep_edge_prob!r} must lie in [0, 1]"
            )
        if self.band_width < 0:
            raise StructuralError(f"band_width = {self.band_width!r} must be ≥ 0")

    def with_family(self, event_family: str, dep_family: str) -> "SystemGenSpec":
        """Copy of this spec with concrete (non-mixed) families."""
        return replace(self, event_family=event_family, dep_family=dep_family)


# ---------------------------------------------------------------------------
# Experiment configuration
# ---------------------------------------------------------------------------

EXPERIMENT_KINDS = (
    "graph-maxdeg",
    "hypergraph-maxdeg",
    "hypergraph-codegree",
    "clique-ext",
    "common-neighbours",
)

ReferenceName = Literal["independent_product", "gumbel"]


@dataclass(frozen=True)
class ExperimentConfig:
    """One Monte Carlo maxima experiment, fully specified.

    ``k``/``s``/``h`` are required only by the kinds that use them
    (hypergraph order, codegree subset size, common-neighbour set size).
    ``grid`` must be strictly increasing; the default covers ``[-3, 6]``
    in steps of ``0.05``.
    """

    kind: str
    n: int
    p: float
    trials: int
    seed: int
    k: int | None = None
    s: int | None = None
    h: int | None = None
    grid: np.ndarray = field(default_factory=default_grid)
    reference: ReferenceName = "independent_product"
    out_dir: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in EXPERIMENT_KINDS:
            raise StructuralError(
                f"unknown experiment kind {self.kind!r}; "
                f"expected one of {EXPERIMENT_KINDS}"
            )
        if self.n < 1:
            raise StructuralError(f"n = {self.n!r} must be at least 1")
        if not (0.0 <= self.p <= 1.0):
            raise StructuralError(f"p = {self.p!r} must lie in [0, 1]")
        if self.trials < 1:
            raise StructuralError(f"trials = {self.trials!r} must be at least 1")
        if self.reference not in ("independent_product", "gumbel"):
            raise StructuralError(f"unknown reference {self.reference!r}")
        grid = np.asarray(self.grid, dtype=np.float64)
        if grid.ndim != 1 or grid.size < 2:
            raise StructuralError("grid must be a 1-D array with ≥ 2 points")
        if not np.all(np.diff(grid) > 0):
            raise StructuralError("grid must be strictly increasing")
        grid = grid.copy()
        grid.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        self._check_kind_params()

    def _check_kind_params(self) -> None:
        kind = self.kind
        if kind in ("hypergraph-maxdeg", "hypergraph-codegree"):
            if self.k is None or not (2 <= self.k <= self.n):
                raise StructuralError(
                    f"{kind} needs 2 ≤ k ≤ n, got k = {self.k!r}"
                )
        if kind == "hypergraph-codegree":
            if self.s is None or self.k is None or not (1 <= self.s < self.k):
                raise StructuralError(
                    f"{kind} needs 1 ≤ s < k, got s = {self.s!r}, k = {self.k!r}"
                )
        if kind == "clique-ext":
            if self.k is None or self.k < 3:
                raise StructuralError(f"{kind} needs k ≥ 3, got k = {self.k!r}")
            if self.reference != "gumbel":
                raise StructuralError(
                    "clique-ext has no independent-product reference; "
                    'use reference="gumbel"'
                )
        if kind == "common-neighbours":
            if self.h is None or self.h < 1:
                raise StructuralError(f"{kind} needs h ≥ 1, got h = {self.h!r}")


# ---------------------------------------------------------------------------
# Result record
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EmpiricalResult:
    """Samples of a maximum statistic with their reference comparison.

    ``raw_max[t]`` is the statistic of trial ``t``; ``normalized`` is
    ``(raw_max - a) / b`` for the constants in ``constants``;
    ``ks_vs_reference`` is the sup-distance on the config grid between the
    empirical CDF of ``normalized`` and the chosen reference CDF.
    ``aux_raw``/``aux_stats`` carry kind-specific companions (conditional
    expectation maxima for ``clique-ext``; the typicality rate for
    ``common-neighbours``).
    """

    config: ExperimentConfig
    raw_max: np.ndarray
    normalized: np.ndarray
    ks_vs_reference: float
    constants: NormConstants
    seed: int
    aux_raw: np.ndarray | None = None
    aux_stats: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        raw = np.asarray(self.raw_max, dtype=np.float64)
        norm = np.asarray(self.normalized, dtype=np.float64)
        if raw.shape != (self.config.trials,) or norm.shape != raw.shape:
            raise StructuralError(
                f"sample count {raw.shape} does not match trials = "
                f"{self.config.trials}"
            )
        if not (0.0 <= self.ks_vs_reference <= 1.0):
            raise StructuralError(
                f"ks = {self.ks_vs_reference!r} must lie in [0, 1]"
            )
        raw.flags.writeable = False
        norm.flags.writeable = False
        object.__setattr__(self, "raw_max", raw)
        object.__setattr__(self, "normalized", norm)
