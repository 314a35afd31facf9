"""Closed-form concentration bounds for count statistics.

Three ingredients used when taming strong dependencies among clique-type
counts:

* two Chernoff-style deviation bounds for a sum with mean ``mu``;
* overlap bookkeeping for ``(k-1)``-subsets of a ``j``-element neighbourhood
  (:func:`clique_overlap`): how many subsets share at least one pair with a
  fixed subset (``delta``), and the expected number of distinct
  edge-sharing subset pairs (``deltabar_pairs``);
* Janson's lower-tail bound and a weak upper-tail companion, both
  parameterized by those overlap quantities.

The pairwise overlap expectation alone omits the diagonal term the
classical Janson inequality needs (for ``k = 3`` it is identically zero and
the bound would degenerate), so both readings are exposed:
``deltabar_pairs`` (strictly distinct pairs) and ``deltabar_total = mu +
deltabar_pairs`` (the classical parameter, used by
:func:`janson_lower_tail`).  All bounds are clamped to 1 — they bound
probabilities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import DomainError

__all__ = [
    "CliqueOverlap",
    "chernoff_dev",
    "clique_overlap",
    "janson_lower_tail",
    "janson_upper_weak",
]

ChernoffForm = Literal["paper51", "paper53"]


@dataclass(frozen=True)
class CliqueOverlap:
    """Overlap bookkeeping for ``(k-1)``-subsets of a ``j``-set.

    ``delta``: number of ``(k-1)``-subsets sharing ≥ 2 elements with a fixed
    one (itself included); ``deltabar_pairs``: expected number of distinct
    pairs of edge-sharing subsets that both span cliques;
    ``mu``: expected number of ``(k-1)``-subsets spanning cliques;
    ``deltabar_total = mu + deltabar_pairs`` — the classical Janson
    parameter.
    """

    delta: int
    deltabar_pairs: float
    mu: float
    deltabar_total: float

    def __post_init__(self) -> None:
        if self.delta < 0 or self.deltabar_pairs < 0 or self.mu < 0:
            raise DomainError("overlap quantities must be nonnegative")


def chernoff_dev(mu: float, t: float, form: ChernoffForm = "paper51") -> float:
    """Two-sided Chernoff deviation bound ``P(|X - mu| ≥ t)``, clamped to 1.

    ``form="paper51"`` uses ``2·exp(-t² / (2·mu + t))``;
    ``form="paper53"`` uses ``2·exp(-t² / (2·(mu + t/3)))``.
    """
    if mu < 0.0 or t < 0.0:
        raise DomainError(f"need mu ≥ 0 and t ≥ 0, got mu = {mu!r}, t = {t!r}")
    if t == 0.0:
        return 1.0
    if form == "paper51":
        denom = 2.0 * mu + t
    elif form == "paper53":
        denom = 2.0 * (mu + t / 3.0)
    else:
        raise DomainError(f"unknown Chernoff form {form!r}")
    return min(1.0, 2.0 * math.exp(-t * t / denom))


def clique_overlap(j: int, k: int, p: float) -> CliqueOverlap:
    """Exact overlap quantities for ``(k-1)``-subsets of a ``j``-set.

    ``delta = C(j,k-1) - C(j-k+1,k-1) - (k-1)·C(j-k+1,k-2)`` counts the
    subsets sharing at least two elements with a fixed ``(k-1)``-subset
    (complement: disjoint subsets plus single-element overlaps).

    ``deltabar_pairs = C(j,k-1) · Σ_{l=2}^{k-2} C(k-1,l)·C(j-k+1,k-1-l)
    · p^{(k-1)(k-2) - C(l,2)}`` is the expected number of ordered
    edge-sharing pairs of distinct clique-spanning subsets (empty sum for
    ``k = 3``), and ``mu = C(j,k-1)·p^{C(k-1,2)}``.
    """
    if k < 3:
        raise DomainError(f"k = {k!r} must be at least 3")
    if j < k - 1:
        raise DomainError(f"need j ≥ k-1, got j = {j!r}, k = {k!r}")
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"p = {p!r} must lie in [0, 1]")
    delta = (
        math.comb(j, k - 1)
        - math.comb(j - k + 1, k - 1)
        - (k - 1) * math.comb(j - k + 1, k - 2)
    )
    pairs = 0.0
    for overlap in range(2, k - 1):
        pairs += (
            math.comb(k - 1, overlap)
            * math.comb(j - k + 1, k - 1 - overlap)
            * p ** ((k - 1) * (k - 2) - math.comb(overlap, 2))
        )
    deltabar_pairs = math.comb(j, k - 1) * pairs
    mu = math.comb(j, k - 1) * p ** math.comb(k - 1, 2)
    return CliqueOverlap(
        delta=delta,
        deltabar_pairs=deltabar_pairs,
        mu=mu,
        deltabar_total=mu + deltabar_pairs,
    )


def janson_lower_tail(deltabar_total: float, t: float) -> float:
    """Janson's lower-tail bound ``exp(-t² / (2·deltabar_total))``, clamped to 1."""
    if deltabar_total <= 0.0:
        raise DomainError(f"deltabar_total = {deltabar_total!r} must be positive")
    if t < 0.0:
        raise DomainError(f"t = {t!r} must be nonnegative")
    return min(1.0, math.exp(-t * t / (2.0 * deltabar_total)))


def janson_upper_weak(delta: int, mu: float, t: float) -> float:
    """Weak upper-tail bound ``(delta+1)·exp(-t² / (4(delta+1)(mu + t/3)))``.

    Clamped to 1 (at ``t = 0`` the raw value ``delta + 1`` exceeds it).
    """
    if delta < 0 or mu < 0.0 or t < 0.0:
        raise DomainError(
            f"need delta, mu, t ≥ 0; got delta = {delta!r}, mu = {mu!r}, t = {t!r}"
        )
    if t == 0.0:
        return 1.0
    exponent = -t * t / (4.0 * (delta + 1) * (mu + t / 3.0))
    return min(1.0, (delta + 1) * math.exp(exponent))
