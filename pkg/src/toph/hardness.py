"""Constructive reduction from cardinality-constrained subset sum (CCSS) to
the entropy-constrained mass decision problem (ECME), with verifiers.

Pipeline: ``pad_to_narrow_range`` shifts every weight by the same constant
so that all weights land strictly inside (tau/(K+1), tau/(K-1));
``scale_to_k20`` duplicates weights to force K >= 20 and re-pads;
``reduce_to_ecme`` turns the result into a probability vector consisting of
m "heavy" items (the weights) plus an implicitly stored block of B
identical low-probability "booster" items, together with an exact mass
target beta and a high-precision entropy budget.

Arithmetic discipline: weights and derived counts are arbitrary-precision
integers, probabilities are exact rationals, and only the transcendental
entropy/log terms are evaluated in high-precision floating point (mpmath,
default 50 significant digits).

Well-posedness note.  The analytic budget construction assumes the heavy
ratios w_i/tau form a near-uniform probability vector, which pins the heavy
item count to m = K (the narrow range makes any other count impossible once
sum(w) ~ tau).  ``reduce_to_ecme`` enforces this through the theta bounds
check; instances with m > K are rejected there.  Deficit instances
(sum(w) < tau, i.e. NO instances of the m = K family) pass through with the
pseudo-entropy of the w_i/tau ratios, which stays inside the theta window
as long as the deficit is below ~20% of tau.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import mpmath as mp
import numpy as np

from .errors import (
    InvalidParameters,
    KTooSmall,
    MalformedRecord,
    NarrowRangeViolated,
    PrecisionInsufficient,
    ThetaOutOfBounds,
    TooManyHeavyItems,
    WrongCardinality,
    WrongMass,
)

SCHEMA_VERSION = 1

#: Working precision (significant decimal digits) for entropy terms.
DEFAULT_DPS = 50

#: ``decide_ecme_small`` refuses instances with more heavy items than this.
MAX_HEAVY_ITEMS = 24

#: Full-space cross-validation enumerates 2**m subsets; capped lower.
MAX_FULL_SPACE_ITEMS = 22

# Calibration constants of the booster-count exponent, taken verbatim as
# exact decimals.
_C_EPS = Fraction(384, 10000)     # 0.0384
_C_NUM = Fraction(7333, 10000)    # 0.7333
_C_DEN = Fraction(133, 1000)      # 0.133


def _mpf(x: int | Fraction) -> mp.mpf:
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


@dataclass(frozen=True)
class CcssInstance:
    """Positive integer weights, an integer target, and a cardinality K."""

    weights: tuple[int, ...]
    tau: int
    k: int

    def __post_init__(self):
        if len(self.weights) == 0:
            raise InvalidParameters("need at least one weight")
        if any(w < 1 for w in self.weights):
            raise InvalidParameters("weights must be positive integers")
        if self.tau < 1:
            raise InvalidParameters("tau must be a positive integer")
        if not 3 <= self.k <= len(self.weights):
            raise InvalidParameters(
                f"need 3 <= K <= m, got K={self.k}, m={len(self.weights)}"
            )

    @property
    def m(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)

    def narrow_range_holds(self) -> bool:
        """tau/(K+1) < w_i < tau/(K-1) for every weight, checked exactly."""
        lo = Fraction(self.tau, self.k + 1)
        hi = Fraction(self.tau, self.k - 1)
        return all(lo < w < hi for w in self.weights)


@dataclass(frozen=True)
class ReductionConstants:
    gamma_k: Fraction          # 1 / (16 K^2)
    theta_k: mp.mpf            # ln K - H(w/tau), the uniformity deficit
    delta_k: mp.mpf            # 5 theta / (2 ln K)
    epsilon_k: mp.mpf          # (0.0384 + gamma) / ln K
    lambda_k: int              # ceil((0.7333 - eps + delta) / 0.133)
    lambda_raw: mp.mpf         # the same quantity before the ceiling
    booster_count: int         # B = K ** lambda_k
    w_b: Fraction              # booster weight tau / (2B)
    normalizer: Fraction       # W = sum(w) + tau/2


@dataclass(frozen=True)
class EcmeInstance:
    """Reduction output: heavy probabilities plus an implicit booster block.

    ``heavy_probs[i] = weights[i] / W`` and ``booster_prob = w_b / W`` with
    W the exact total weight, so the full vector sums to 1 exactly.  The
    mass target ``beta = tau / W`` corresponds to subsets of weight exactly
    tau; it equals 2/3 exactly whenever sum(weights) == tau.  Boosters are
    never materialized: all their mass/entropy contributions are computed
    from (count, unit probability).
    """

    weights: tuple[int, ...]
    tau: int
    k: int
    heavy_probs: tuple[Fraction, ...]
    booster_count: int
    booster_prob: Fraction
    beta: Fraction
    budget: mp.mpf
    constants: ReductionConstants

    @property
    def m(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class WindowCheck:
    holds: bool
    lower_margin: mp.mpf   # budget - (ln K - gamma_K)
    upper_margin: mp.mpf   # ln(K+1) - budget


@dataclass(frozen=True)
class EcmeDecision:
    is_yes: bool
    witness: tuple[int, ...] | None            # heavy indices
    witness_boosters: int = 0                  # only the full-space mode uses this


# --- instance preparation ---------------------------------------------------

def pad_to_narrow_range(instance: CcssInstance) -> CcssInstance:
    """Shift every weight by M = (K+1) tau; the K-subset sums are preserved.

    The padded instance (w_i + M; tau + K M; K) always satisfies the narrow
    range, and a K-subset sums to tau in the original exactly when the
    corresponding subset sums to the new target.
    """
    m_shift = (instance.k + 1) * instance.tau
    return CcssInstance(
        weights=tuple(w + m_shift for w in instance.weights),
        tau=instance.tau + instance.k * m_shift,
        k=instance.k,
    )


def scale_to_k20(instance: CcssInstance) -> CcssInstance:
    """Force K >= 20 by duplicating every weight d = ceil(20/K) times.

    Feasibility transfers between (K, tau) and (dK, d tau).  Plain
    duplication can break the narrow range, so the padding step is applied
    again afterwards.  Instances already at K >= 20 are returned unchanged.
    """
    if instance.k >= 20:
        return instance
    d = -(-20 // instance.k)
    duplicated = CcssInstance(
        weights=tuple(w for w in instance.weights for _ in range(d)),
        tau=d * instance.tau,
        k=d * instance.k,
    )
    return pad_to_narrow_range(duplicated)


def prepare(instance: CcssInstance) -> CcssInstance:
    """The canonical preprocessing: pad, then scale (which re-pads)."""
    return scale_to_k20(pad_to_narrow_range(instance))


# --- the reduction -----------------------------------------------------------

def _heavy_pseudo_entropy(weights: Sequence[int], tau: int) -> mp.mpf:
    """-sum (w/tau) ln(w/tau), grouped by repeated weight values."""
    counts: dict[int, int] = {}
    for w in weights:
        counts[w] = counts.get(w, 0) + 1
    total = mp.mpf(0)
    ln_tau = mp.log(tau)
    for w, c in counts.items():
        r = mp.mpf(w) / tau
        total += c * r * (ln_tau - mp.log(w))
    return total


def lambda_exponent(k: int, theta: mp.mpf) -> tuple[int, mp.mpf]:
    """Booster-count exponent for budget coefficient K and deficit theta.

    Returns (ceil value, raw value).  Raises if the raw value sits too
    close to an integer for the ceiling to be trustworthy at the working
    precision.
    """
    ln_k = mp.log(k)
    gamma = Fraction(1, 16 * k * k)
    delta = 5 * theta / (2 * ln_k)
    eps = (_mpf(_C_EPS) + _mpf(gamma)) / ln_k
    raw = (_mpf(_C_NUM) - eps + delta) / _mpf(_C_DEN)
    nearest = mp.nint(raw)
    if abs(raw - nearest) < mp.mpf(10) ** (-(mp.mp.dps - 10)) and raw != nearest:
        raise PrecisionInsufficient(
            f"lambda expression {raw} is too close to an integer to ceil safely"
        )
    return int(mp.ceil(raw)), raw


def reduce_to_ecme(instance: CcssInstance, dps: int = DEFAULT_DPS) -> EcmeInstance:
    """Map a narrow-range CCSS instance with K >= 20 to an ECME instance.

    The booster block has B = K**lambda identical items of weight
    tau/(2B), so the booster mass is exactly tau/2 regardless of B.  The
    entropy budget is computed analytically from the decomposition
    H = H_heavy + H_booster with

        H_heavy   = (2/3) (H(w/tau) + ln(2/3))
        H_booster = (1/3) (ln 3 + lambda_raw ln K)

    and budget = 0.4 * H.  With the pre-ceiling exponent this lands
    strictly between ln K and ln(K+1) for K in the working range (20..120),
    which is what the decision equivalence needs: every weight-tau heavy
    K-subset (entropy <= ln K) is feasible, while any mass-beta subset
    containing boosters overshoots the budget.  See the decisions notes for
    why the ceiled exponent must not be used here.
    """
    if instance.k < 20:
        raise KTooSmall(f"reduction requires K >= 20, got K={instance.k}")
    if not instance.narrow_range_holds():
        raise NarrowRangeViolated(
            "weights must lie strictly inside (tau/(K+1), tau/(K-1)); "
            "apply pad_to_narrow_range/scale_to_k20 first"
        )
    k, tau = instance.k, instance.tau
    with mp.workdps(dps):
        ln_k = mp.log(k)
        pseudo_h = _heavy_pseudo_entropy(instance.weights, tau)
        theta = ln_k - pseudo_h
        theta_cap = mp.mpf(1) / (2 * k * k)
        if not 0 < theta < theta_cap:
            raise ThetaOutOfBounds(
                f"theta={mp.nstr(theta, 8)} outside (0, 1/(2K^2)={mp.nstr(theta_cap, 8)}); "
                "the construction needs near-uniform heavy ratios (m == K)"
            )
        gamma = Fraction(1, 16 * k * k)
        delta = 5 * theta / (2 * ln_k)
        eps = (_mpf(_C_EPS) + _mpf(gamma)) / ln_k
        lam, lam_raw = lambda_exponent(k, theta)
        booster_count = k ** lam
        w_b = Fraction(tau, 2 * booster_count)
        normalizer = Fraction(sum(instance.weights)) + Fraction(tau, 2)
        heavy_probs = tuple(Fraction(w) / normalizer for w in instance.weights)
        booster_prob = w_b / normalizer
        beta = Fraction(tau) / normalizer

        h_heavy = Fraction(2, 3) * (pseudo_h + mp.log(mp.mpf(2) / 3))
        h_boost = Fraction(1, 3) * (mp.log(3) + lam_raw * ln_k)
        budget = Fraction(2, 5) * (h_heavy + h_boost)

        constants = ReductionConstants(
            gamma_k=gamma,
            theta_k=theta,
            delta_k=delta,
            epsilon_k=eps,
            lambda_k=lam,
            lambda_raw=lam_raw,
            booster_count=booster_count,
            w_b=w_b,
            normalizer=normalizer,
        )
        return EcmeInstance(
            weights=instance.weights,
            tau=tau,
            k=k,
            heavy_probs=heavy_probs,
            booster_count=booster_count,
            booster_prob=booster_prob,
            beta=beta,
            budget=+budget,
            constants=constants,
        )


# --- verifiers ---------------------------------------------------------------

def verify_budget_window(instance: EcmeInstance, dps: int = DEFAULT_DPS) -> WindowCheck:
    """Check ln K - gamma_K < budget < ln(K+1) with explicit margins."""
    k = instance.k
    with mp.workdps(dps):
        lower_bound = mp.log(k) - _mpf(instance.constants.gamma_k)
        upper_bound = mp.log(k + 1)
        lower_margin = instance.budget - lower_bound
        upper_margin = upper_bound - instance.budget
        tol = mp.mpf(10) ** (-(dps - 10))
        for margin in (lower_margin, upper_margin):
            if abs(margin) < tol:
                raise PrecisionInsufficient(
                    f"window margin {mp.nstr(margin, 5)} below resolvable scale at dps={dps}"
                )
        return WindowCheck(
            holds=bool(lower_margin > 0 and upper_margin > 0),
            lower_margin=+lower_margin,
            upper_margin=+upper_margin,
        )


def subset_weight(instance: EcmeInstance, heavy_indices: Iterable[int]) -> int:
    return sum(instance.weights[i] for i in heavy_indices)


def heavy_subset_entropy(
    instance: EcmeInstance, heavy_indices: Sequence[int], dps: int = DEFAULT_DPS
) -> mp.mpf:
    """Entropy of the renormalized heavy subset (no boosters)."""
    total = subset_weight(instance, heavy_indices)
    with mp.workdps(dps):
        ln_total = mp.log(total)
        h = mp.mpf(0)
        for i in heavy_indices:
            w = instance.weights[i]
            h += (mp.mpf(w) / total) * (ln_total - mp.log(w))
        return +h


def verify_entropy_gap(
    instance: EcmeInstance, heavy_subset: Sequence[int], dps: int = DEFAULT_DPS
) -> bool:
    """Does the K-subset's entropy clear the gap bound ln K - gamma_K?

    The subset must have exactly K heavy items summing to tau.  Note the
    bound only holds when the subset ratios are spread out; padded
    instances sit so close to uniform that their entropy exceeds the bound
    (their feasibility instead follows from budget > ln K).
    """
    idx = tuple(heavy_subset)
    if len(set(idx)) != len(idx) or any(not 0 <= i < instance.m for i in idx):
        raise WrongCardinality("subset indices must be distinct and in range")
    if len(idx) != instance.k:
        raise WrongCardinality(f"need exactly K={instance.k} items, got {len(idx)}")
    if subset_weight(instance, idx) != instance.tau:
        raise WrongMass("subset must sum exactly to tau")
    with mp.workdps(dps):
        bound = mp.log(instance.k) - _mpf(instance.constants.gamma_k)
        return bool(heavy_subset_entropy(instance, idx, dps=dps) <= bound)


def mixed_subset_entropy(
    instance: EcmeInstance,
    heavy_indices: Sequence[int],
    booster_count: int,
    dps: int = DEFAULT_DPS,
) -> mp.mpf:
    """Entropy of a renormalized subset of heavy items plus b boosters.

    Booster contributions enter analytically as count * per-item term; the
    booster block itself is never expanded.
    """
    if booster_count < 0 or booster_count > instance.booster_count:
        raise InvalidParameters("booster count out of range")
    total = Fraction(subset_weight(instance, heavy_indices)) + booster_count * instance.constants.w_b
    if total <= 0:
        raise WrongMass("subset carries no weight")
    with mp.workdps(dps):
        total_mp = _mpf(total)
        ln_total = mp.log(total_mp)
        h = mp.mpf(0)
        for i in heavy_indices:
            w = instance.weights[i]
            h += (mp.mpf(w) / total_mp) * (ln_total - mp.log(w))
        if booster_count:
            r_b = _mpf(instance.constants.w_b) / total_mp
            h += booster_count * r_b * (ln_total - mp.log(_mpf(instance.constants.w_b)))
        return +h


def verify_booster_blowup(
    instance: EcmeInstance,
    heavy_indices: Sequence[int],
    booster_count: int,
    dps: int = DEFAULT_DPS,
) -> bool:
    """Numeric check of the exclusion property: the mixed set overshoots the budget."""
    if booster_count < 1:
        raise InvalidParameters("need at least one booster for the blow-up check")
    with mp.workdps(dps):
        return bool(
            mixed_subset_entropy(instance, heavy_indices, booster_count, dps=dps)
            > instance.budget
        )


def _subset_sum_tables(weights: Sequence[int]) -> tuple["np.ndarray", "np.ndarray"]:
    """(weight, popcount) for every subset mask, by doubling; int64 throughout."""
    if sum(weights) >= 2**62:
        raise TooManyHeavyItems("weights too large for the vectorized enumerator")
    sums = np.zeros(1, dtype=np.int64)
    sizes = np.zeros(1, dtype=np.int64)
    for w in weights:
        sums = np.concatenate([sums, sums + w])
        sizes = np.concatenate([sizes, sizes + 1])
    return sums, sizes


def verify_cardinality_lock(weights: Sequence[int], tau: int, k: int) -> bool:
    """Exhaustively confirm that booster-free subsets of weight tau have size K.

    Works on any narrow-range weight family (not only reduction outputs);
    2**m subsets are enumerated exactly in int64.
    """
    if len(weights) > MAX_HEAVY_ITEMS:
        raise TooManyHeavyItems(
            f"m={len(weights)} exceeds the exhaustive limit {MAX_HEAVY_ITEMS}"
        )
    sums, sizes = _subset_sum_tables(weights)
    hits = sums == tau
    return bool(np.all(sizes[hits] == k))


# --- decision ----------------------------------------------------------------

def decide_ecme_small(
    instance: EcmeInstance, mode: str = "structural", dps: int = DEFAULT_DPS
) -> EcmeDecision:
    """Decide the constructed instance by exhaustive search.

    ``structural`` mode applies the structural facts (booster-containing
    mass-beta subsets overshoot the budget; booster-free ones must have
    exactly K items of total weight tau) and therefore enumerates only the
    C(m, K) heavy K-subsets, checking exact mass == beta and entropy <=
    budget.  ``full`` mode cross-validates on tiny instances by walking
    every heavy subset and solving for the booster count that reaches the
    mass target exactly.

    The witness is the lexicographically first qualifying subset.
    """
    if mode == "structural":
        if instance.m > MAX_HEAVY_ITEMS:
            raise TooManyHeavyItems(
                f"m={instance.m} exceeds the decision limit {MAX_HEAVY_ITEMS}"
            )
        with mp.workdps(dps):
            for subset in combinations(range(instance.m), instance.k):
                if subset_weight(instance, subset) != instance.tau:
                    continue
                mass = sum(instance.heavy_probs[i] for i in subset)
                if mass != instance.beta:
                    continue
                if heavy_subset_entropy(instance, subset, dps=dps) <= instance.budget:
                    return EcmeDecision(is_yes=True, witness=subset)
        return EcmeDecision(is_yes=False, witness=None)
    if mode == "full":
        if instance.m > MAX_FULL_SPACE_ITEMS:
            raise TooManyHeavyItems(
                f"m={instance.m} exceeds the full-space limit {MAX_FULL_SPACE_ITEMS}"
            )
        # Mass target as weight: subset weight + b * w_b == tau, i.e. the
        # booster count must be b = 2B * deficit / tau, a non-negative
        # integer at most B.  Every mass-exact candidate renormalizes over
        # total weight exactly tau, so its entropy is
        #     ln(tau) - (sum_{i in S} w ln w + b * w_b ln(w_b)) / tau.
        # That is screened vectorized in float64; only candidates within
        # float noise of the budget are confirmed in high precision.
        big_b = instance.booster_count
        if 2 * big_b * instance.tau >= 2**62:
            raise TooManyHeavyItems("booster count too large for the vectorized screen")
        sums, _ = _subset_sum_tables(instance.weights)
        deficit = instance.tau - sums
        scaled = 2 * big_b * deficit
        valid = (deficit >= 0) & (scaled % instance.tau == 0) & (scaled // instance.tau <= big_b)
        valid[0] = False  # a sampler set cannot be empty
        wlogw = np.zeros(1)
        for w in instance.weights:
            wlogw = np.concatenate([wlogw, wlogw + w * math.log(w)])
        w_b = float(instance.constants.w_b)
        b_counts = np.where(valid, scaled // instance.tau, 0)
        h_float = math.log(instance.tau) - (
            wlogw + b_counts * (w_b * math.log(w_b))
        ) / instance.tau
        candidates = np.nonzero(valid & (h_float <= float(instance.budget) + 1e-6))[0]
        with mp.workdps(dps):
            for mask in sorted(int(m) for m in candidates):
                subset = tuple(i for i in range(instance.m) if mask >> i & 1)
                b = 2 * big_b * (instance.tau - subset_weight(instance, subset)) // instance.tau
                h = mixed_subset_entropy(instance, subset, int(b), dps=dps)
                if h <= instance.budget:
                    return EcmeDecision(is_yes=True, witness=subset, witness_boosters=int(b))
        return EcmeDecision(is_yes=False, witness=None)
    raise ValueError(f"unknown mode {mode!r}")


def brute_force_ccss(instance: CcssInstance) -> tuple[bool, tuple[int, ...] | None]:
    """Independent CCSS oracle: enumerate K-subsets with exact integer sums."""
    for subset in combinations(range(instance.m), instance.k):
        if sum(instance.weights[i] for i in subset) == instance.tau:
            return True, subset
    return False, None


# --- JSON serialization -------------------------------------------------------

def _frac_to_json(f: Fraction) -> dict:
    return {"num": str(f.numerator), "den": str(f.denominator)}


def _frac_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def ccss_to_json(instance: CcssInstance) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "ccss",
        "weights": [str(w) for w in instance.weights],
        "tau": str(instance.tau),
        "k": instance.k,
    }


def ccss_from_json(obj: dict) -> CcssInstance:
    try:
        if obj.get("kind") != "ccss":
            raise KeyError("kind")
        return CcssInstance(
            weights=tuple(int(w) for w in obj["weights"]),
            tau=int(obj["tau"]),
            k=int(obj["k"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRecord(0, f"not a valid CCSS object: {exc}") from exc


def ecme_to_json(instance: EcmeInstance) -> dict:
    c = instance.constants
    with mp.workdps(DEFAULT_DPS):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "ecme",
            "weights": [str(w) for w in instance.weights],
            "tau": str(instance.tau),
            "k": instance.k,
            "heavy_probs": [_frac_to_json(f) for f in instance.heavy_probs],
            "booster_count": str(instance.booster_count),
            "booster_prob": _frac_to_json(instance.booster_prob),
            "beta": _frac_to_json(instance.beta),
            "budget": mp.nstr(instance.budget, DEFAULT_DPS - 5),
            "constants": {
                "gamma_k": _frac_to_json(c.gamma_k),
                "theta_k": mp.nstr(c.theta_k, DEFAULT_DPS - 5),
                "delta_k": mp.nstr(c.delta_k, DEFAULT_DPS - 5),
                "epsilon_k": mp.nstr(c.epsilon_k, DEFAULT_DPS - 5),
                "lambda_k": c.lambda_k,
                "lambda_raw": mp.nstr(c.lambda_raw, DEFAULT_DPS - 5),
                "booster_count": str(c.booster_count),
                "w_b": _frac_to_json(c.w_b),
                "normalizer": _frac_to_json(c.normalizer),
            },
        }


def ecme_from_json(obj: dict) -> EcmeInstance:
    try:
        if obj.get("kind") != "ecme":
            raise KeyError("kind")
        cj = obj["constants"]
        with mp.workdps(DEFAULT_DPS):
            constants = ReductionConstants(
                gamma_k=_frac_from_json(cj["gamma_k"]),
                theta_k=mp.mpf(cj["theta_k"]),
                delta_k=mp.mpf(cj["delta_k"]),
                epsilon_k=mp.mpf(cj["epsilon_k"]),
                lambda_k=int(cj["lambda_k"]),
                lambda_raw=mp.mpf(cj["lambda_raw"]),
                booster_count=int(cj["booster_count"]),
                w_b=_frac_from_json(cj["w_b"]),
                normalizer=_frac_from_json(cj["normalizer"]),
            )
            return EcmeInstance(
                weights=tuple(int(w) for w in obj["weights"]),
                tau=int(obj["tau"]),
                k=int(obj["k"]),
                heavy_probs=tuple(_frac_from_json(f) for f in obj["heavy_probs"]),
                booster_count=int(obj["booster_count"]),
                booster_prob=_frac_from_json(obj["booster_prob"]),
                beta=_frac_from_json(obj["beta"]),
                budget=mp.mpf(obj["budget"]),
                constants=constants,
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRecord(0, f"not a valid ECME object: {exc}") from exc


def save_json(obj: dict, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def load_json(path: str | os.PathLike) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
