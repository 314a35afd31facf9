"""Random event-system generation for audit corpora.

Every draw comes from one counter-based stream keyed by the seed, so a
given ``(spec, seed)`` pair always yields the same system.  Families:

``uniform-random``
    Random positive atom masses; each event keeps each atom with a
    per-event inclusion rate (resampled if empty).
``product-space``
    ``d`` independent coordinate events on a ``{0,1}^d`` product space —
    the mixing coefficient of such a system is 0 up to rounding.
``xor-parity``
    ``d - 1`` uniform coordinate bits plus their parity event.  With
    ``d = 3`` this is exactly the reference system on four uniform atoms
    (events ``{1,3}``, ``{2,3}``, ``{1,2}``): any two events independent,
    the triple forced.
``monotone-increasing``
    Coordinate-count threshold events on an independent product space —
    all increasing, hence pairwise positively correlated.
``clustered``
    Independent blocks of nested events: one 4-level coordinate per block,
    each event a level exceedance of its block's coordinate.  Events in
    different blocks are independent, so with the block dependency graph
    the mixing coefficient vanishes (up to rounding) while declustering
    terms stay positive.  This family always carries its block graph,
    whatever dependency family the ``SystemGenSpec`` requests.

Dependency families (other event families): ``empty``, ``complete``,
``random`` (undirected, edge probability ``dep_edge_prob``) and
``distance-band`` (width ``band_width``).  A ``"mixed"`` entry in the
``SystemGenSpec`` picks a concrete family per system from the same stream.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._rng import stream
from ..prob_core import DependencyGraph, Event, EventSystem, ProbSpace
from .config import SystemGenSpec

__all__ = ["GeneratedSystem", "random_event_system", "generate_system"]

_CONCRETE_EVENT_FAMILIES = (
    "uniform-random",
    "product-space",
    "xor-parity",
    "monotone-increasing",
    "clustered",
)
_CONCRETE_DEP_FAMILIES = ("empty", "complete", "random", "distance-band")


@dataclass(frozen=True)
class GeneratedSystem:
    """A drawn system with the concrete families it came from."""

    system: EventSystem
    dep: DependencyGraph
    event_family: str
    dep_family: str


# ---------------------------------------------------------------------------
# Event-family builders (each returns (space, events) or (space, events, dep))
# ---------------------------------------------------------------------------

def _draw_d(spec: SystemGenSpec, rng: np.random.Generator) -> int:
    lo, hi = spec.d_range
    return int(rng.integers(lo, hi + 1))


def _uniform_random(
    spec: SystemGenSpec, rng: np.random.Generator
) -> tuple[ProbSpace, tuple[Event, ...]]:
    d = _draw_d(spec, rng)
    lo, hi = spec.atom_range
    m = int(rng.integers(lo, hi + 1))
    masses = rng.random(m) + 1e-3
    masses /= masses.sum()
    space = ProbSpace(tuple(masses.tolist()))
    events = []
    for _ in range(d):
        rate = rng.uniform(0.2, 0.8)
        mask = rng.random(m) < rate
        while not mask.any():
            mask = rng.random(m) < rate
        events.append(Event.of(np.flatnonzero(mask).tolist()))
    return space, tuple(events)


def _bit_product_space(bit_probs: np.ndarray) -> ProbSpace:
    """Product space over independent bits: atom = bit mask, colex bit 0 first."""
    c = bit_probs.size
    m = 1 << c
    masks = np.arange(m)
    probs = np.ones(m, dtype=np.float64)
    for t in range(c):
        bit = (masks >> t) & 1
        probs *= np.where(bit == 1, bit_probs[t], 1.0 - bit_probs[t])
    return ProbSpace(tuple(probs.tolist()))


def _coordinate_event(c: int, t: int) -> Event:
    return Event.of(int(mask) for mask in range(1 << c) if (mask >> t) & 1)


def _product_space(
    spec: SystemGenSpec, rng: np.random.Generator
) -> tuple[ProbSpace, tuple[Event, ...]]:
    cap = max(1, int(math.log2(max(2, spec.atom_range[1]))))
    d = min(_draw_d(spec, rng), cap)
    bit_probs = rng.uniform(0.2, 0.8, size=d)
    space = _bit_product_space(bit_probs)
    events = tuple(_coordinate_event(d, t) for t in range(d))
    return space, events


def _xor_parity(
    spec: SystemGenSpec, rng: np.random.Generator
) -> tuple[ProbSpace, tuple[Event, ...]]:
    cap = max(1, int(math.log2(max(2, spec.atom_range[1]))))
    d = max(2, min(_draw_d(spec, rng), cap + 1))
    c = d - 1
    space = _bit_product_space(np.full(c, 0.5))
    events = [_coordinate_event(c, t) for t in range(c)]
    parity = Event.of(
        int(mask) for mask in range(1 << c) if bin(mask).count("1") % 2 == 1
    )
    events.append(parity)
    return space, tuple(events)


def _monotone_increasing(
    spec: SystemGenSpec, rng: np.random.Generator
) -> tuple[ProbSpace, tuple[Event, ...]]:
    d = _draw_d(spec, rng)
    c = max(2, int(math.log2(max(2, spec.atom_range[1]))))
    bit_probs = rng.uniform(0.3, 0.8, size=c)
    space = _bit_product_space(bit_probs)
    thresholds = rng.integers(1, c + 1, size=d)
    events = tuple(
        Event.of(
            int(mask)
            for mask in range(1 << c)
            if bin(mask).count("1") >= int(t)
        )
        for t in thresholds
    )
    return space, events


_CLUSTER_LEVELS = 4


def _clustered(
    spec: SystemGenSpec, rng: np.random.Generator
) -> tuple[ProbSpace, tuple[Event, ...], DependencyGraph]:
    d = _draw_d(spec, rng)
    atom_hi = spec.atom_range[1]
    levels = _CLUSTER_LEVELS if atom_hi >= _CLUSTER_LEVELS else 2
    max_blocks = max(1, int(math.log(max(2, atom_hi)) / math.log(levels)))
    n_blocks = min(max(1, (d + 1) // 2), max_blocks)
    block_of = np.array_split(np.arange(d), n_blocks)
    # independent block coordinates, each with `levels` positive masses
    level_probs = rng.random((n_blocks, levels)) + 0.1
    level_probs /= level_probs.sum(axis=1, keepdims=True)
    m = levels**n_blocks
    atoms = np.arange(m)
    coords = np.empty((n_blocks, m), dtype=np.int64)
    rest = atoms.copy()
    for b in range(n_blocks):
        coords[b] = rest % levels
        rest //= levels
    masses = np.ones(m, dtype=np.float64)
    for b in range(n_blocks):
        masses *= level_probs[b, coords[b]]
    space = ProbSpace(tuple(masses.tolist()))
    events: list[Event] = [Event.of(()) for _ in range(d)]
    neighbor_sets: list[frozenset[int]] = [frozenset()] * d
    for b, members in enumerate(block_of):
        member_set = frozenset(int(i) for i in members)
        for i in members:
            threshold = int(rng.integers(1, levels))
            events[int(i)] = Event.of(np.flatnonzero(coords[b] >= threshold).tolist())
            neighbor_sets[int(i)] = member_set - {int(i)}
    return space, tuple(events), DependencyGraph(tuple(neighbor_sets))


# ---------------------------------------------------------------------------
# Dependency-family builders
# ---------------------------------------------------------------------------

def _random_dep(d: int, q: float, rng: np.random.Generator) -> DependencyGraph:
    sets: list[set[int]] = [set() for _ in range(d)]
    for i in range(d):
        for j in range(i):
            if rng.random() < q:
                sets[i].add(j)
                sets[j].add(i)
    return DependencyGraph(tuple(frozenset(s) for s in sets))


def _build_dep(
    family: str, d: int, spec: SystemGenSpec, rng: np.random.Generator
) -> DependencyGraph:
    if family == "empty":
        return DependencyGraph.empty(d)
    if family == "complete":
        return DependencyGraph.complete(d)
    if family == "random":
        return _random_dep(d, spec.dep_edge_prob, rng)
    if family == "distance-band":
        return DependencyGraph.distance_band(d, spec.band_width)
    raise AssertionError(f"unreachable dependency family {family!r}")


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------

def generate_system(spec: SystemGenSpec, seed: int) -> GeneratedSystem:
    """Draw one system, reporting the concrete families used."""
    rng = stream(seed)
    event_family = spec.event_family
    if event_family == "mixed":
        event_family = _CONCRETE_EVENT_FAMILIES[
            int(rng.integers(len(_CONCRETE_EVENT_FAMILIES)))
        ]
    dep_family = spec.dep_family
    if dep_family == "mixed":
        dep_family = _CONCRETE_DEP_FAMILIES[
            int(rng.integers(len(_CONCRETE_DEP_FAMILIES)))
        ]

    if event_family == "clustered":
        space, events, dep = _clustered(spec, rng)
        system = EventSystem(space, events)
        return GeneratedSystem(system, dep, "clustered", "block")

    if event_family == "uniform-random":
        space, events = _uniform_random(spec, rng)
    elif event_family == "product-space":
        space, events = _product_space(spec, rng)
    elif event_family == "xor-parity":
        space, events = _xor_parity(spec, rng)
    elif event_family == "monotone-increasing":
        space, events = _monotone_increasing(spec, rng)
    else:
        raise AssertionError(f"unreachable event family {event_family!r}")
    system = EventSystem(space, events)
    dep = _build_dep(dep_family, system.d, spec, rng)
    return GeneratedSystem(system, dep, event_family, dep_family)


def random_event_system(
    spec: SystemGenSpec, seed: int
) -> tuple[EventSystem, DependencyGraph]:
    """Draw one (system, dependency graph) pair, deterministic per seed."""
    drawn = generate_system(spec, seed)
    return drawn.system, drawn.dep
