"""Exact mixing/declustering coefficients and inequality audits.

For an ordered event system ``A_1, ..., A_d`` with dependency sets ``D_i``,
this module computes — by exact atom enumeration — the quantities that
control how far ``P(no event occurs)`` can drift from the independent
product ``∏ (1 - P(A_i))``:

* the mixing coefficient
  ``phi = max_i |P(U_i | A_i) - P(U_i)|`` where
  ``U_i = ∪ {A_j : j < i, j ∉ D_i}`` is the union of *weakly* dependent
  predecessors, together with its one-sided positive/negative parts;
* declustering coefficients ``delta1``/``delta2`` penalising clusters of
  strongly dependent exceedances, plus their union-bound relaxations
  (``*_prime``, summed over strongly dependent predecessors) and the
  variants summed over all of ``D_i`` (``*_dprime``);
* the total-variation mixing coefficient
  ``phi_tilde = Σ_i P(A_i) · Σ_k |P(Z^i = k | A_i) - P(Z^i = k)|`` where
  ``Z^i`` counts occurrences among events outside ``D_i ∪ {i}``;
* every bound right-hand side assembled from them, with pass flags.

Conventions: empty unions have probability 0, empty products equal 1, and
event ordering is taken verbatim from the system (all formulas sum over
predecessor ranges ``[i-1]``; see :func:`reorder` for explicit
permutations — none is ever applied implicitly).  All right-hand sides are
reported unclamped (they may exceed 1 or drop below 0): the audit flags
compare the raw algebraic values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import StructuralError
from .prob_core import DependencyGraph, Event, EventSystem, indep_product, none_occur

__all__ = [
    "CoefficientReport",
    "BoundAudit",
    "mixing_phi",
    "declustering",
    "arratia_phi_tilde",
    "arratia_union_form",
    "coefficient_report",
    "audit",
    "reorder",
    "AUDIT_TOL",
    "ONE_SIDED_ZERO_TOL",
]

#: Residual tolerance used by every inequality pass flag.
AUDIT_TOL = 1e-9

#: ``phi_minus`` below this is treated as exactly zero for the special-case
#: lower bound that requires the one-sided mixing term to vanish.
ONE_SIDED_ZERO_TOL = 1e-12

#: Slack for internal consistency checks (orderings that hold exactly in
#: real arithmetic and may wobble only by rounding).
_CONSISTENCY_TOL = 1e-12


@dataclass(frozen=True)
class CoefficientReport:
    """All mixing/declustering coefficients of one (system, graph) pair.

    Invariants (checked): every field is ≥ 0,
    ``phi = max(phi_plus, phi_minus)``, and each declustering family is
    ordered ``delta ≤ delta_prime ≤ delta_dprime``.
    """

    phi: float
    phi_plus: float
    phi_minus: float
    delta1: float
    delta2: float
    delta1_prime: float
    delta2_prime: float
    delta1_dprime: float
    delta2_dprime: float
    phi_tilde: float

    def __post_init__(self) -> None:
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if value < 0.0 or math.isnan(value):
                raise StructuralError(f"coefficient {name} is {value!r}, expected ≥ 0")
        if abs(self.phi - max(self.phi_plus, self.phi_minus)) > _CONSISTENCY_TOL:
            raise StructuralError("phi must equal max(phi_plus, phi_minus)")
        for lo, mid, hi in (
            (self.delta1, self.delta1_prime, self.delta1_dprime),
            (self.delta2, self.delta2_prime, self.delta2_dprime),
        ):
            if lo > mid + _CONSISTENCY_TOL or mid > hi + _CONSISTENCY_TOL:
                raise StructuralError("declustering chain ordering violated")


@dataclass(frozen=True)
class BoundAudit:
    """Every bound right-hand side for one (system, graph) pair, with flags.

    ``dubickas_applicable`` records whether the zero-negative-mixing special
    case applies (``phi_minus ≤ ONE_SIDED_ZERO_TOL``); ``dubickas_pass`` is
    ``None`` when it does not.  ``arratia_rhs`` is a comparison value quoted
    from a different framework — its hypotheses are not checked here, so it
    carries no pass flag.  ``arratia_union_lower`` is the union-form lower
    bound that ``phi_tilde`` provably dominates.
    """

    coefficients: CoefficientReport
    none_occur: float
    indep_product: float
    exact_gap: float
    thm1_rhs: float
    upper_rhs: float
    lower_rhs: float
    dubickas_rhs: float
    dubickas_applicable: bool
    arratia_rhs: float
    arratia_union_lower: float
    sum_p_sq: float
    thm1_pass: bool
    upper_pass: bool
    lower_pass: bool
    dubickas_pass: bool | None


# ---------------------------------------------------------------------------
# Internal plumbing
# ---------------------------------------------------------------------------

def _arrays(
    system: EventSystem, dep: DependencyGraph
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Validated (event probabilities, indicator matrix, atom weights)."""
    dep.validate_for(system)
    return system.event_probs, system.indicator_matrix, system.space.weights


def _mass(weights: np.ndarray, mask: np.ndarray) -> float:
    """Probability of the atom set marked by ``mask``."""
    return float(np.dot(weights, mask))


def _signed_mixing_terms(
    probs: np.ndarray, indicators: np.ndarray, weights: np.ndarray, dep: DependencyGraph
) -> np.ndarray:
    """Per-index signed differences ``P(U_i | A_i) - P(U_i)``."""
    d = probs.size
    terms = np.zeros(d)
    for i in range(d):
        weak = [j for j in range(i) if j not in dep.neighbor_sets[i]]
        if not weak:
            continue
        union = indicators[weak[0]].copy()
        for j in weak[1:]:
            union |= indicators[j]
        p_union = _mass(weights, union)
        p_union_given = _mass(weights, union & indicators[i]) / probs[i]
        terms[i] = p_union_given - p_union
    return terms


def _tail_products(probs: np.ndarray) -> np.ndarray:
    """``tail[i] = ∏_{k > i} (1 - P(A_k))`` (empty product = 1)."""
    comp = 1.0 - probs
    tail = np.ones(probs.size)
    if probs.size > 1:
        tail[:-1] = np.cumprod(comp[::-1])[::-1][1:]
    return tail


# ---------------------------------------------------------------------------
# Coefficients
# ---------------------------------------------------------------------------

def mixing_phi(
    system: EventSystem, dep: DependencyGraph
) -> tuple[float, float, float]:
    """``(phi, phi_plus, phi_minus)`` for the system under ``dep``.

    ``phi`` is the worst absolute change in the probability of the union of
    weakly dependent predecessors when conditioning on the current event;
    ``phi_plus``/``phi_minus`` keep only the positive/negative excursions,
    each floored at 0.  Indices with no weakly dependent predecessor
    contribute 0 (both union probabilities are 0 for an empty union).
    """
    probs, indicators, weights = _arrays(system, dep)
    terms = _signed_mixing_terms(probs, indicators, weights, dep)
    phi_plus = max(0.0, float(terms.max()))
    phi_minus = max(0.0, float(-terms.min()))
    return max(phi_plus, phi_minus), phi_plus, phi_minus


def declustering(
    system: EventSystem, dep: DependencyGraph
) -> tuple[float, float, float, float, float, float]:
    """All six declustering coefficients.

    Returns ``(delta1, delta2, delta1_prime, delta2_prime, delta1_dprime,
    delta2_dprime)``:

    * ``delta1 = Σ_i P(A_i ∩ V_i) · ∏_{k>i} (1 - P(A_k))`` and
      ``delta2 = Σ_i P(A_i) · P(V_i) · ∏_{k>i} (1 - P(A_k))`` with
      ``V_i = ∪ {A_j : j < i, j ∈ D_i}`` the union of *strongly* dependent
      predecessors (trailing products over empty ranges equal 1);
    * the primed variants replace each union by its union bound,
      ``Σ_{j<i, j∈D_i} P(A_i ∩ A_j)`` resp. ``Σ P(A_i)P(A_j)``, without the
      trailing products;
    * the double-primed variants extend those sums over *all* of ``D_i``
      (not only predecessors).
    """
    probs, indicators, weights = _arrays(system, dep)
    d = probs.size
    tail = _tail_products(probs)
    weighted = indicators * weights  # row i holds the masses of A_i's atoms
    pair_probs = weighted @ indicators.T  # P(A_i ∩ A_j), exact to rounding

    delta1 = 0.0
    delta2 = 0.0
    d1p = 0.0
    d2p = 0.0
    d1pp = 0.0
    d2pp = 0.0
    for i in range(d):
        strong_pred = [j for j in range(i) if j in dep.neighbor_sets[i]]
        if strong_pred:
            union = indicators[strong_pred[0]].copy()
            for j in strong_pred[1:]:
                union |= indicators[j]
            delta1 += _mass(weights, union & indicators[i]) * tail[i]
            delta2 += probs[i] * _mass(weights, union) * tail[i]
            d1p += float(pair_probs[i, strong_pred].sum())
            d2p += float(probs[i] * probs[strong_pred].sum())
        strong_all = sorted(dep.neighbor_sets[i])
        if strong_all:
            d1pp += float(pair_probs[i, strong_all].sum())
            d2pp += float(probs[i] * probs[strong_all].sum())
    return delta1, delta2, d1p, d2p, d1pp, d2pp


def arratia_phi_tilde(system: EventSystem, dep: DependencyGraph) -> float:
    """Total-variation mixing coefficient over exceedance counts.

    ``Σ_i P(A_i) · Σ_k |P(Z^i = k | A_i) - P(Z^i = k)|`` where
    ``Z^i = Σ_{j ∉ D_i ∪ {i}} 1(A_j)`` counts occurrences among the events
    weakly dependent on ``A_i``.  The distribution of ``Z^i`` is computed by
    exact atom enumeration.
    """
    probs, indicators, weights = _arrays(system, dep)
    d = probs.size
    total = 0.0
    for i in range(d):
        outside = [j for j in range(d) if j != i and j not in dep.neighbor_sets[i]]
        if not outside:
            continue  # Z^i ≡ 0 on both measures: zero variation
        z = indicators[outside].sum(axis=0)
        n_bins = len(outside) + 1
        marginal = np.bincount(z, weights=weights, minlength=n_bins)
        in_i = indicators[i]
        conditional = (
            np.bincount(z[in_i], weights=weights[in_i], minlength=n_bins) / probs[i]
        )
        total += float(probs[i] * np.abs(conditional - marginal).sum())
    return total


def arratia_union_form(system: EventSystem, dep: DependencyGraph) -> float:
    """Union-form expression that :func:`arratia_phi_tilde` dominates.

    ``Σ_i P(A_i) · |P(W_i | A_i) - P(W_i)|`` with
    ``W_i = ∪ {A_j : j ∉ D_i ∪ {i}}``; since ``{W_i} = {Z^i ≥ 1}``, each
    term is at most the total-variation distance in ``phi_tilde``.
    """
    probs, indicators, weights = _arrays(system, dep)
    d = probs.size
    total = 0.0
    for i in range(d):
        outside = [j for j in range(d) if j != i and j not in dep.neighbor_sets[i]]
        if not outside:
            continue
        union = indicators[outside[0]].copy()
        for j in outside[1:]:
            union |= indicators[j]
        p_union = _mass(weights, union)
        p_union_given = _mass(weights, union & indicators[i]) / probs[i]
        total += float(probs[i] * abs(p_union_given - p_union))
    return total


def coefficient_report(system: EventSystem, dep: DependencyGraph) -> CoefficientReport:
    """Compute every coefficient once and return the validated bundle."""
    phi, phi_plus, phi_minus = mixing_phi(system, dep)
    d1, d2, d1p, d2p, d1pp, d2pp = declustering(system, dep)
    return CoefficientReport(
        phi=phi,
        phi_plus=phi_plus,
        phi_minus=phi_minus,
        delta1=d1,
        delta2=d2,
        delta1_prime=d1p,
        delta2_prime=d2p,
        delta1_dprime=d1pp,
        delta2_dprime=d2pp,
        phi_tilde=arratia_phi_tilde(system, dep),
    )


# ---------------------------------------------------------------------------
# Audit
# ---------------------------------------------------------------------------

def audit(system: EventSystem, dep: DependencyGraph) -> BoundAudit:
    """Evaluate every bound and compare it against the exact probabilities.

    Right-hand sides (``q0 = ∏ (1 - P(A_i))``):

    * two-sided:   ``thm1_rhs = (1 - q0)·phi + max(delta1, delta2)`` must
      dominate ``|P(∩ Ā) - q0|``;
    * upper:       ``upper_rhs = q0 + phi_plus·(1 - q0) + delta1`` must
      dominate ``P(∩ Ā)``;
    * lower:       ``lower_rhs = q0 - phi_minus·(1 - q0) - delta2`` must be
      dominated by ``P(∩ Ā)``;
    * special case ``dubickas_rhs = q0 - delta2`` — the lower bound with the
      mixing term dropped, valid only when ``phi_minus`` vanishes;
    * comparison:  ``arratia_rhs = 2·phi_tilde + 4·delta1_dprime +
      4·delta2_dprime + 4·Σ P(A_i)²`` (quoted from a different framework;
      reported, never asserted).
    """
    coeffs = coefficient_report(system, dep)
    p_none = none_occur(system)
    q0 = indep_product(system)
    exact_gap = abs(p_none - q0)
    phi_weight = 1.0 - q0

    thm1_rhs = phi_weight * coeffs.phi + max(coeffs.delta1, coeffs.delta2)
    upper_rhs = q0 + coeffs.phi_plus * phi_weight + coeffs.delta1
    lower_rhs = q0 - coeffs.phi_minus * phi_weight - coeffs.delta2
    dubickas_rhs = q0 - coeffs.delta2
    dubickas_applicable = coeffs.phi_minus <= ONE_SIDED_ZERO_TOL
    sum_p_sq = float(np.dot(system.event_probs, system.event_probs))
    arratia_rhs = (
        2.0 * coeffs.phi_tilde
        + 4.0 * coeffs.delta1_dprime
        + 4.0 * coeffs.delta2_dprime
        + 4.0 * sum_p_sq
    )

    return BoundAudit(
        coefficients=coeffs,
        none_occur=p_none,
        indep_product=q0,
        exact_gap=exact_gap,
        thm1_rhs=thm1_rhs,
        upper_rhs=upper_rhs,
        lower_rhs=lower_rhs,
        dubickas_rhs=dubickas_rhs,
        dubickas_applicable=dubickas_applicable,
        arratia_rhs=arratia_rhs,
        arratia_union_lower=arratia_union_form(system, dep),
        sum_p_sq=sum_p_sq,
        thm1_pass=exact_gap <= thm1_rhs + AUDIT_TOL,
        upper_pass=p_none <= upper_rhs + AUDIT_TOL,
        lower_pass=p_none >= lower_rhs - AUDIT_TOL,
        dubickas_pass=(
            p_none >= dubickas_rhs - AUDIT_TOL if dubickas_applicable else None
        ),
    )


# ---------------------------------------------------------------------------
# Ordering utility
# ---------------------------------------------------------------------------

def reorder(
    system: EventSystem, dep: DependencyGraph, order: Sequence[int]
) -> tuple[EventSystem, DependencyGraph]:
    """Apply an explicit permutation to the events (and remap ``dep``).

    Coefficients depend on the event ordering; this helper exists so that
    callers can study that dependence — it is never applied implicitly.
    ``order[new_pos] = old_pos`` must be a permutation of ``range(d)``.
    """
    dep.validate_for(system)
    if sorted(order) != list(range(system.d)):
        raise StructuralError("order must be a permutation of range(d)")
    new_events = tuple(system.events[old] for old in order)
    old_to_new = {old: new for new, old in enumerate(order)}
    new_sets = tuple(
        frozenset(old_to_new[j] for j in dep.neighbor_sets[old]) for old in order
    )
    return EventSystem(system.space, new_events), DependencyGraph(new_sets)
