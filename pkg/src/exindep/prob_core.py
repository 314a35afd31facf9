"""Exact finite probability spaces and ordered event systems.

Conventions
-----------
* A probability space is a finite list of atom probabilities summing to 1.
* An event is a set of atom indices; its probability is the exact
  (compensated) sum of its atoms' masses.
* An event system is an *ordered* list of events ``A_1, ..., A_d`` on one
  space.  Ordering matters: every downstream coefficient sums over
  predecessor indices ``[i-1]``.
* A dependency graph assigns each index ``i`` a set ``D_i ⊆ [d] \\ {i}`` of
  "strongly dependent" partners.  Directed graphs are allowed: ``j ∈ D_i``
  does not require ``i ∈ D_j``.

Events of zero probability are dropped when a system is built (with a
warning that reports their indices): every coefficient formula conditions
on the events, so zero-probability members are meaningless.  All values are
immutable after construction and safe to share across parallel workers.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ConditioningError, DroppedEventsWarning, StructuralError

__all__ = [
    "DEFAULT_ATOM_CAP",
    "PROB_SUM_TOL",
    "ProbSpace",
    "Event",
    "EventSystem",
    "DependencyGraph",
    "prob",
    "cond_prob",
    "none_occur",
    "indep_product",
    "load_system",
    "dump_system",
]

#: Default cap on the number of atoms: every coefficient iterates all atoms,
#: so exactness is bought by keeping spaces small.
DEFAULT_ATOM_CAP = 2**20

#: Tolerance for "atom probabilities sum to one".
PROB_SUM_TOL = 1e-12

#: Log-space product kicks in beyond this many factors.
_LOG_PRODUCT_THRESHOLD = 64


@dataclass(frozen=True)
class ProbSpace:
    """A finite probability space: atom ``a`` carries mass ``atom_probs[a]``.

    Invariants (checked at construction): every mass lies in ``[0, 1]``,
    the compensated sum of all masses equals 1 within ``PROB_SUM_TOL``, and
    the atom count does not exceed ``atom_cap``.
    """

    atom_probs: tuple[float, ...]
    atom_cap: int = field(default=DEFAULT_ATOM_CAP, repr=False, compare=False)

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.atom_probs)
        object.__setattr__(self, "atom_probs", probs)
        if len(probs) == 0:
            raise StructuralError("a probability space needs at least one atom")
        if len(probs) > self.atom_cap:
            raise StructuralError(
                f"{len(probs)} atoms exceed the configured cap {self.atom_cap}"
            )
        for a, p in enumerate(probs):
            if not (0.0 <= p <= 1.0) or math.isnan(p):
                raise StructuralError(f"atom {a} has probability {p!r} outside [0, 1]")
        total = math.fsum(probs)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise StructuralError(f"atom probabilities sum to {total!r}, not 1")

    @property
    def n_atoms(self) -> int:
        return len(self.atom_probs)

    @cached_property
    def weights(self) -> np.ndarray:
        """Atom masses as a read-only float64 vector."""
        w = np.asarray(self.atom_probs, dtype=np.float64)
        w.flags.writeable = False
        return w


@dataclass(frozen=True)
class Event:
    """A measurable event: a set of atom indices of some :class:`ProbSpace`."""

    atoms: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", frozenset(int(a) for a in self.atoms))

    @classmethod
    def of(cls, atoms: Iterable[int]) -> "Event":
        return cls(frozenset(atoms))

    def validate_for(self, space: ProbSpace) -> None:
        for a in self.atoms:
            if not (0 <= a < space.n_atoms):
                raise StructuralError(
                    f"atom index {a} out of range for a {space.n_atoms}-atom space"
                )

    def intersect(self, other: "Event") -> "Event":
        return Event(self.atoms & other.atoms)


@dataclass(frozen=True)
class EventSystem:
    """An ordered system ``A_1, ..., A_d`` of positive-probability events.

    Events of zero probability are removed at construction — every mixing
    and declustering formula conditions on the events, so zero-probability
    members carry no information — and a :class:`DroppedEventsWarning`
    reports the dropped positions.
    ``kept_indices`` maps each surviving event back to its position in the
    input list, so callers can remap auxiliary per-event structures.
    """

    space: ProbSpace
    events: tuple[Event, ...]
    kept_indices: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        events = tuple(self.events)
        if len(events) == 0:
            raise StructuralError("an event system needs at least one event")
        for e in events:
            e.validate_for(self.space)
        kept: list[int] = []
        dropped: list[int] = []
        surviving: list[Event] = []
        for idx, e in enumerate(events):
            if prob(self.space, e) > 0.0:
                kept.append(idx)
                surviving.append(e)
            else:
                dropped.append(idx)
        if dropped:
            warnings.warn(
                f"dropped zero-probability events at indices {dropped}",
                DroppedEventsWarning,
                stacklevel=2,
            )
        object.__setattr__(self, "events", tuple(surviving))
        object.__setattr__(self, "kept_indices", tuple(kept))

    @property
    def d(self) -> int:
        """Number of (surviving) events."""
        return len(self.events)

    @cached_property
    def event_probs(self) -> np.ndarray:
        """``P(A_i)`` for every event, as a read-only vector."""
        p = np.array([prob(self.space, e) for e in self.events], dtype=np.float64)
        p.flags.writeable = False
        return p

    @cached_property
    def indicator_matrix(self) -> np.ndarray:
        """Boolean ``d × n_atoms`` matrix: row ``i`` marks the atoms of ``A_i``."""
        m = np.zeros((self.d, self.space.n_atoms), dtype=bool)
        for i, e in enumerate(self.events):
            if e.atoms:
                m[i, sorted(e.atoms)] = True
        m.flags.writeable = False
        return m


@dataclass(frozen=True)
class DependencyGraph:
    """Per-index neighbour sets ``D_i ⊆ [d] \\ {i}`` (directed allowed)."""

    neighbor_sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        sets = tuple(frozenset(int(j) for j in s) for s in self.neighbor_sets)
        object.__setattr__(self, "neighbor_sets", sets)
        d = len(sets)
        for i, s in enumerate(sets):
            if i in s:
                raise StructuralError(f"D_{i} contains its own index")
            for j in s:
                if not (0 <= j < d):
                    raise StructuralError(f"D_{i} contains out-of-range index {j}")

    @property
    def d(self) -> int:
        return len(self.neighbor_sets)

    @classmethod
    def empty(cls, d: int) -> "DependencyGraph":
        return cls(tuple(frozenset() for _ in range(d)))

    @classmethod
    def complete(cls, d: int) -> "DependencyGraph":
        full = frozenset(range(d))
        return cls(tuple(full - {i} for i in range(d)))

    @classmethod
    def distance_band(cls, d: int, width: int) -> "DependencyGraph":
        """``D_i = {j ≠ i : |i - j| ≤ width}``."""
        return cls(
            tuple(
                frozenset(
                    j for j in range(max(0, i - width), min(d, i + width + 1)) if j != i
                )
                for i in range(d)
            )
        )

    def validate_for(self, system: EventSystem) -> None:
        if self.d != system.d:
            raise StructuralError(
                f"dependency graph has {self.d} entries for a {system.d}-event system"
            )


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def prob(space: ProbSpace, e: Event) -> float:
    """Exact probability ``P(e)`` via compensated summation of atom masses."""
    e.validate_for(space)
    return math.fsum(space.atom_probs[a] for a in e.atoms)


def cond_prob(space: ProbSpace, e: Event, given: Event) -> float:
    """Conditional probability ``P(e | given) = P(e ∩ given) / P(given)``."""
    p_given = prob(space, given)
    if p_given <= 0.0:
        raise ConditioningError("cannot condition on an event of zero probability")
    return prob(space, e.intersect(given)) / p_given


def none_occur(system: EventSystem) -> float:
    """Exact ``P(∩_i Ā_i)``: total mass of atoms outside every event."""
    if system.d == 0:
        return 1.0
    occupied = system.indicator_matrix.any(axis=0)
    free = np.flatnonzero(~occupied)
    return math.fsum(system.space.atom_probs[a] for a in free)


def indep_product(system: EventSystem) -> float:
    """``∏_i (1 - P(A_i))`` — the value the system would have under independence.

    Accumulated in log space once the system has more than 64 events, to
    keep long products from losing relative accuracy.
    """
    p = system.event_probs
    if p.size == 0:
        return 1.0
    if np.any(p >= 1.0):
        return 0.0
    if p.size <= _LOG_PRODUCT_THRESHOLD:
        out = 1.0
        for q in p:
            out *= 1.0 - q
        return out
    return math.exp(math.fsum(math.log1p(-q) for q in p))


# ---------------------------------------------------------------------------
# JSON-compatible loading / dumping
# ---------------------------------------------------------------------------

def load_system(
    doc: Mapping | str, *, atom_cap: int = DEFAULT_ATOM_CAP
) -> tuple[EventSystem, DependencyGraph | None]:
    """Build a system (and optional dependency graph) from a JSON document.

    Schema: ``{"atoms": [p, ...], "events": [[atom_idx, ...], ...],
    "dep": [[j, ...], ...]}`` — ``dep`` optional.  If zero-probability
    events are dropped, dependency entries are remapped onto the surviving
    indices.
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    if "atoms" not in doc or "events" not in doc:
        raise StructuralError('document must contain "atoms" and "events"')
    space = ProbSpace(tuple(doc["atoms"]), atom_cap=atom_cap)
    events = tuple(Event.of(idxs) for idxs in doc["events"])
    system = EventSystem(space, events)
    dep_doc = doc.get("dep")
    if dep_doc is None:
        return system, None
    if len(dep_doc) != len(events):
        raise StructuralError(
            f'"dep" has {len(dep_doc)} entries for {len(events)} events'
        )
    remap = {old: new for new, old in enumerate(system.kept_indices)}
    sets = tuple(
        frozenset(remap[j] for j in dep_doc[old] if j in remap)
        for old in system.kept_indices
    )
    return system, DependencyGraph(sets)


def dump_system(
    system: EventSystem, dep: DependencyGraph | None = None
) -> dict[str, list]:
    """Inverse of :func:`load_system` (for the surviving events)."""
    doc: dict[str, list] = {
        "atoms": [float(p) for p in system.space.atom_probs],
        "events": [sorted(e.atoms) for e in system.events],
    }
    if dep is not None:
        dep.validate_for(system)
        doc["dep"] = [sorted(s) for s in dep.neighbor_sets]
    return doc
