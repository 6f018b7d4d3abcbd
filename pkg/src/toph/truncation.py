"""Truncation samplers: the entropy-budgeted greedy rule and four baselines.

Every method works on a common footing: tokens are ordered by descending
probability (ties broken by ascending index), the vocabulary is pre-cut to
the ``candidate_cap`` most probable tokens and renormalized, and the method
then picks a prefix or threshold set of that order.  Entropies reported in
the result refer to the capped, renormalized working distribution.

Conventions that pin down exact outputs:

- the greedy rule stops at the first token whose inclusion pushes the
  subset entropy strictly above ``alpha * H(p) + entropy_slack``; equality
  keeps the token, and the over-budget token is rolled back by subtraction;
- cumulative-mass truncation treats "exceeds" inclusively (first prefix
  with mass >= the target);
- scaled-max truncation keeps tokens with p >= p_base * max(p);
- the entropy-scaled rule keeps tokens with p >= min(eta, sqrt(eta) *
  exp(-H(p))), following the eta-sampling rule from the literature, and
  always keeps the top token.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .distributions import (
    EntropyAccumulator,
    ProbabilityDistribution,
    SubsetDistribution,
    _entropy_of,
)
from .errors import (
    AlphaOutOfRange,
    EtaOutOfRange,
    NucleusOutOfRange,
    PBaseOutOfRange,
    ZeroK,
)
from .rng import u01


class Method(str, enum.Enum):
    TOP_H = "top_h"
    TOP_K = "top_k"
    TOP_P = "top_p"
    MIN_P = "min_p"
    ETA = "eta"


@dataclass(frozen=True)
class TruncationConfig:
    """Parameters for all methods; only the chosen method's fields are read.

    Defaults follow the common experimental settings: alpha 0.4, k 20,
    nucleus mass 0.9, base threshold 0.1, eta 2e-4, candidate cap 100.
    """

    method: Method = Method.TOP_H
    alpha: float = 0.4
    k: int = 20
    p_nucleus: float = 0.9
    p_base: float = 0.1
    eta: float = 0.0002
    candidate_cap: int = 100
    entropy_slack: float = 0.0

    def with_method(self, method: Method) -> "TruncationConfig":
        return replace(self, method=method)


@dataclass(frozen=True)
class TraceStep:
    """One greedy step: the token just kept, and the running mass/entropy."""

    index: int
    gamma: float
    entropy: float


@dataclass(frozen=True)
class TruncationResult:
    """Outcome of a truncation call.

    ``selected`` lists original token indices in descending-probability
    order (ascending index among ties); ``threshold`` is alpha * H(p) for
    the entropy-budgeted method and None otherwise.
    """

    selected: tuple[int, ...]
    subset: SubsetDistribution
    h_p: float
    h_q: float
    threshold: float | None = None
    trace: tuple[TraceStep, ...] | None = None


def _descending_order(probs: np.ndarray) -> np.ndarray:
    # primary key: probability descending; secondary: index ascending
    return np.lexsort((np.arange(probs.shape[0]), -probs))


def _capped_view(
    p: ProbabilityDistribution, cap: int
) -> tuple[np.ndarray, np.ndarray]:
    """Descending-order original indices and capped renormalized probabilities."""
    if cap < 1:
        raise ZeroK(f"candidate_cap must be >= 1, got {cap}")
    order = _descending_order(p.probs)[: min(cap, p.n)]
    kept = p.probs[order]
    total = float(np.sum(kept))
    if abs(total - 1.0) <= 1e-9:
        # cap did not bite (or only cut exact zeros): keep entries bit-exact
        return order, kept
    return order, kept / total


def _result_from_prefix(
    order: np.ndarray,
    work: np.ndarray,
    count: int,
    parent_n: int,
    h_p: float,
    h_q: float | None = None,
    threshold: float | None = None,
    trace: tuple[TraceStep, ...] | None = None,
) -> TruncationResult:
    sel = order[:count]
    chunk = work[:count]
    gamma = float(np.sum(chunk))
    subset = SubsetDistribution(
        parent_n=parent_n,
        parent_indices=tuple(int(i) for i in sel),
        q=chunk / gamma,
        gamma=gamma,
    )
    if h_q is None:
        h_q = _entropy_of(subset.q)
    return TruncationResult(
        selected=subset.parent_indices,
        subset=subset,
        h_p=h_p,
        h_q=h_q,
        threshold=threshold,
        trace=trace,
    )


def top_h_truncate(
    p: ProbabilityDistribution,
    config: TruncationConfig,
    collect_trace: bool = False,
    implementation: str = "incremental",
) -> TruncationResult:
    """Greedy prefix selection under the entropy budget alpha * H(p).

    Tokens are appended in descending-probability order; after each append
    the subset entropy is recomputed and the first token that pushes it
    strictly over the budget is removed, ending the scan.  At least one
    token is always selected (a singleton has entropy 0).  The budget is
    recomputed from the working distribution on every call.

    ``implementation`` selects how the per-step entropy is obtained:
    ``"incremental"`` uses the running-mass accumulator, ``"batch"``
    renormalizes the prefix and evaluates -sum q ln q from scratch.  Both
    must select identical sets.
    """
    if not 0.0 < config.alpha < 1.0:
        raise AlphaOutOfRange(f"alpha must be in (0, 1), got {config.alpha!r}")
    if implementation not in ("incremental", "batch"):
        raise ValueError(f"unknown implementation {implementation!r}")
    order, work = _capped_view(p, config.candidate_cap)
    h_p = _entropy_of(work)
    threshold = config.alpha * h_p
    budget = threshold + config.entropy_slack

    acc = EntropyAccumulator()
    count = 0
    h_q = 0.0
    steps: list[TraceStep] = []
    for pos in range(work.shape[0]):
        p_j = float(work[pos])
        if p_j <= 0.0:
            break
        acc.push(p_j)
        if implementation == "incremental":
            h = acc.entropy()
        else:
            prefix = work[: pos + 1]
            q = prefix / float(np.sum(prefix))
            h = float(-np.dot(q, np.log(q)))
        if h > budget and count > 0:
            acc.pop(p_j)
            break
        count += 1
        h_q = h
        if collect_trace:
            steps.append(TraceStep(index=int(order[pos]), gamma=acc.gamma, entropy=h))
    return _result_from_prefix(
        order,
        work,
        count,
        p.n,
        h_p,
        h_q=h_q,
        threshold=threshold,
        trace=tuple(steps) if collect_trace else None,
    )


def top_k_truncate(p: ProbabilityDistribution, config: TruncationConfig) -> TruncationResult:
    """Keep the k most probable tokens (all of them when k >= n)."""
    if config.k < 1:
        raise ZeroK(f"k must be >= 1, got {config.k}")
    order, work = _capped_view(p, config.candidate_cap)
    count = min(config.k, work.shape[0])
    return _result_from_prefix(order, work, count, p.n, _entropy_of(work))


def top_p_truncate(p: ProbabilityDistribution, config: TruncationConfig) -> TruncationResult:
    """Shortest descending-order prefix whose cumulative mass reaches p_nucleus."""
    if not 0.0 < config.p_nucleus <= 1.0:
        raise NucleusOutOfRange(
            f"p_nucleus must be in (0, 1], got {config.p_nucleus!r}"
        )
    order, work = _capped_view(p, config.candidate_cap)
    cum = np.cumsum(work)
    count = int(np.searchsorted(cum, config.p_nucleus, side="left")) + 1
    count = min(count, work.shape[0])
    return _result_from_prefix(order, work, count, p.n, _entropy_of(work))


def min_p_truncate(p: ProbabilityDistribution, config: TruncationConfig) -> TruncationResult:
    """Keep tokens with p >= p_base * max(p); the top token always survives."""
    if not 0.0 < config.p_base < 1.0:
        raise PBaseOutOfRange(f"p_base must be in (0, 1), got {config.p_base!r}")
    order, work = _capped_view(p, config.candidate_cap)
    cutoff = config.p_base * float(work[0])
    count = max(1, int(np.count_nonzero(work >= cutoff)))
    return _result_from_prefix(order, work, count, p.n, _entropy_of(work))


def eta_truncate(p: ProbabilityDistribution, config: TruncationConfig) -> TruncationResult:
    """Entropy-scaled cutoff: keep p >= min(eta, sqrt(eta) * exp(-H(p)))."""
    if not 0.0 < config.eta < 1.0:
        raise EtaOutOfRange(f"eta must be in (0, 1), got {config.eta!r}")
    order, work = _capped_view(p, config.candidate_cap)
    h_p = _entropy_of(work)
    epsilon = min(config.eta, math.sqrt(config.eta) * math.exp(-h_p))
    count = max(1, int(np.count_nonzero(work >= epsilon)))
    return _result_from_prefix(order, work, count, p.n, h_p)


_DISPATCH = {
    Method.TOP_K: top_k_truncate,
    Method.TOP_P: top_p_truncate,
    Method.MIN_P: min_p_truncate,
    Method.ETA: eta_truncate,
}


def truncate(
    p: ProbabilityDistribution,
    config: TruncationConfig,
    collect_trace: bool = False,
) -> TruncationResult:
    """Dispatch to the configured truncation method."""
    if config.method == Method.TOP_H:
        return top_h_truncate(p, config, collect_trace=collect_trace)
    return _DISPATCH[config.method](p, config)


def sample_token(result: TruncationResult, seed: int, draw_index: int = 0) -> int:
    """Draw one token from the truncated distribution, reproducibly.

    Inverse-CDF over the subset in its stored (descending-probability)
    order, driven by the documented counter-based generator: the uniform
    variate for a draw is ``u01(seed, stream=0, counter=draw_index)``.
    Identical (seed, draw_index, result) triples give identical tokens
    on every platform.
    """
    u = u01(seed, 0, draw_index)
    cum = 0.0
    q = result.subset.q
    indices = result.subset.parent_indices
    for i in range(len(indices)):
        cum += float(q[i])
        if u < cum:
            return indices[i]
    return indices[-1]
