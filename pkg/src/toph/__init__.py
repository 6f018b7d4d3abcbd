"""Entropy-bounded truncation sampling on explicit probability vectors.

The package has five pillars:

- ``distributions``: validated probability vectors, Shannon entropy,
  subset renormalization, the Jensen-Shannon divergence (both from the
  definition and in the mass-only closed form), and an O(1)-per-item
  incremental entropy accumulator;
- ``truncation``: the top-H greedy selector, which grows the candidate
  set in descending probability until the renormalized subset's entropy
  would exceed alpha * H(p), plus top-k / top-p / min-p / eta baselines
  and seeded token sampling;
- ``oracle``: exact solutions of the underlying entropy-constrained mass
  maximization by exhaustive subset enumeration, and the greedy-vs-optimal
  gap harness;
- ``hardness``: a constructive reduction from cardinality-constrained
  subset sum to the entropy-constrained mass decision problem, in exact
  rational arithmetic, with structural verifiers and small-instance
  deciders;
- ``synthgen``: seeded synthetic distribution generators and JSONL
  dataset I/O.

The ``toph`` console script exposes all of it as reproducible commands.
"""

__version__ = "0.1.0"

from .distributions import (
    EntropyAccumulator,
    ProbabilityDistribution,
    SubsetDistribution,
    entropy,
    jsd_closed_form,
    jsd_direct,
    make_distribution,
    renormalize,
    uniform_distribution,
)
from .oracle import EcmmInstance, EcmmSolution, GapReport, exact_ecmm, optimality_gap
from .synthgen import GeneratorSpec, generate, read_dataset, write_dataset
from .truncation import (
    Method,
    TruncationConfig,
    TruncationResult,
    eta_truncate,
    min_p_truncate,
    sample_token,
    top_h_truncate,
    top_k_truncate,
    top_p_truncate,
    truncate,
)

__all__ = [
    "__version__",
    "EntropyAccumulator",
    "ProbabilityDistribution",
    "SubsetDistribution",
    "entropy",
    "jsd_closed_form",
    "jsd_direct",
    "make_distribution",
    "renormalize",
    "uniform_distribution",
    "EcmmInstance",
    "EcmmSolution",
    "GapReport",
    "exact_ecmm",
    "optimality_gap",
    "GeneratorSpec",
    "generate",
    "read_dataset",
    "write_dataset",
    "Method",
    "TruncationConfig",
    "TruncationResult",
    "truncate",
    "top_h_truncate",
    "top_k_truncate",
    "top_p_truncate",
    "min_p_truncate",
    "eta_truncate",
    "sample_token",
]
