"""Covering and packing bounds, the adesign block-count window, and level-lowering feasibility."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from adesign.errors import BoundsError
from adesign.incidence import IncidenceStructure, replication_histogram

logger = logging.getLogger(__name__)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_range(v: int, k: int, lam: int, min_k: int = 2) -> None:
    if not min_k <= k < v:
        raise BoundsError(f"Need {min_k} <= k < v, got v={v}, k={k}.")
    if lam < 1:
        raise BoundsError(f"Need λ >= 1, got λ={lam}.")


def schonheim(v: int, k: int, lam: int) -> int:
    """⌈(v/k)⌈λ(v-1)/(k-1)⌉⌉, the classical covering lower bound."""
    _check_range(v, k, lam)
    return _ceil_div(v * _ceil_div(lam * (v - 1), k - 1), k)


def johnson(v: int, k: int, lam: int) -> int:
    """⌊(v/k)⌊λ(v-1)/(k-1)⌋⌋, the classical packing upper bound."""
    _check_range(v, k, lam)
    return v * (lam * (v - 1) // (k - 1)) // k


@dataclass(frozen=True)
class HorsleyValue:
    value: int
    r: int
    d: int

    def to_dict(self) -> dict:
        return {"value": self.value, "r": self.r, "d": self.d}


def horsley_covering(v: int, k: int, lam: int) -> Optional[HorsleyValue]:
    """⌈v(r+1)/(k+1)⌉ where λ(v-1) = r(k-1) - d, 0 <= d < k-1, applicable when d < r - λ."""
    _check_range(v, k, lam, min_k=3)
    r = _ceil_div(lam * (v - 1), k - 1)
    d = r * (k - 1) - lam * (v - 1)
    if d >= r - lam:
        return None
    return HorsleyValue(_ceil_div(v * (r + 1), k + 1), r, d)


def horsley_packing(v: int, k: int, lam: int) -> Optional[HorsleyValue]:
    """⌊v(r-1)/(k-1)⌋ where λ(v-1) = r(k-1) + d, 0 <= d < k-1, applicable when d < r - λ."""
    _check_range(v, k, lam, min_k=3)
    r, d = divmod(lam * (v - 1), k - 1)
    if d >= r - lam:
        return None
    return HorsleyValue(v * (r - 1) // (k - 1), r, d)


def covering_lower_bound(v: int, k: int, lam: int) -> int:
    """Largest applicable lower bound on the size of a (v, k, λ)-covering."""
    value = schonheim(v, k, lam)
    if k >= 3:
        improved = horsley_covering(v, k, lam)
        if improved is not None:
            value = max(value, improved.value)
    return value


def packing_upper_bound(v: int, k: int, lam: int) -> int:
    """Smallest applicable upper bound on the size of a (v, k, λ)-packing."""
    value = johnson(v, k, lam)
    if k >= 3:
        improved = horsley_packing(v, k, lam)
        if improved is not None:
            value = min(value, improved.value)
    return value


@dataclass(frozen=True)
class BoundReport:
    """Every bound on b for a 2-(v,k,λ) adesign, which is a λ-covering and a (λ+1)-packing.

    lower is the largest applicable covering bound and upper the smallest
    applicable packing bound; lower > upper means no such adesign exists.
    """

    v: int
    k: int
    lam: int
    schonheim: int
    johnson: int
    horsley_covering: Optional[HorsleyValue]
    horsley_packing: Optional[HorsleyValue]
    lower: int
    upper: int

    def contains(self, b: int) -> bool:
        return self.lower <= b <= self.upper

    @property
    def is_empty(self) -> bool:
        return self.lower > self.upper

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "k": self.k,
            "lambda": self.lam,
            "schonheim": self.schonheim,
            "johnson": self.johnson,
            "horsley_covering": self.horsley_covering.to_dict() if self.horsley_covering else None,
            "horsley_packing": self.horsley_packing.to_dict() if self.horsley_packing else None,
            "window": [self.lower, self.upper],
        }


def adesign_block_window(v: int, k: int, lam: int) -> BoundReport:
    _check_range(v, k, lam, min_k=3)
    report = BoundReport(
        v=v,
        k=k,
        lam=lam,
        schonheim=schonheim(v, k, lam),
        johnson=johnson(v, k, lam + 1),
        horsley_covering=horsley_covering(v, k, lam),
        horsley_packing=horsley_packing(v, k, lam + 1),
        lower=covering_lower_bound(v, k, lam),
        upper=packing_upper_bound(v, k, lam + 1),
    )
    logger.debug("block window for (%d,%d,%d): [%d, %d]", v, k, lam, report.lower, report.upper)
    return report


@dataclass(frozen=True)
class FeasibilityReport:
    """What a (t+1)-(v,k,λ) adesign forces one level down.

    With (k-t)/(v-t) > 1/2 the structure is a t-adesign with λ' = lam_prime or a
    t-design with λ' among design_candidates. The block count lies strictly
    inside block_interval either way.
    """

    v: int
    k: int
    t: int
    lam: int
    ratio: Fraction
    applies: bool
    lam_prime: int
    design_candidates: tuple[int, ...]
    block_interval: tuple[Fraction, Fraction]

    @property
    def note(self) -> str:
        if self.applies:
            return "ratio exceeds 1/2: the level below is forced"
        return "ratio at most 1/2: the condition is sufficient, not necessary, so nothing is forced"

    def admits(self, b: int) -> bool:
        low, high = self.block_interval
        return low < b < high

    def to_dict(self) -> dict:
        low, high = self.block_interval
        return {
            "v": self.v,
            "k": self.k,
            "t": self.t,
            "lambda": self.lam,
            "ratio": str(self.ratio),
            "applies": self.applies,
            "adesign_lambda_prime": self.lam_prime,
            "design_lambda_prime": list(self.design_candidates),
            "block_interval": [str(low), str(high)],
            "note": self.note,
        }


def feasibility(v: int, k: int, t: int, lam: int) -> FeasibilityReport:
    if not 0 < t < k < v:
        raise BoundsError(f"Need 0 < t < k < v, got v={v}, k={k}, t={t}.")
    if lam < 0:
        raise BoundsError(f"Need λ >= 0, got λ={lam}.")
    ratio = Fraction(k - t, v - t)
    lam_prime = _ceil_div(lam * (v - t), k - t)
    candidates = tuple(
        x for x in (lam_prime, lam_prime + 1) if x * (k - t) // (v - t) == lam
    )
    subsets, per_block = comb(v, t + 1), comb(k, t + 1)
    interval = (Fraction(lam * subsets, per_block), Fraction((lam + 1) * subsets, per_block))
    return FeasibilityReport(v, k, t, lam, ratio, ratio > Fraction(1, 2), lam_prime, candidates, interval)


@dataclass(frozen=True)
class LemmaCheck:
    floor_identity: bool  # λ = ⌊λ'(k-t)/(v-t)⌋
    strict_blocks: bool  # λ C(v,t+1) < b C(k,t+1) < (λ+1) C(v,t+1)

    @property
    def holds(self) -> bool:
        return self.floor_identity and self.strict_blocks


def lemma_consistency(v: int, k: int, lam: int, lam_prime: int, b: int, t: int = 2) -> LemmaCheck:
    """Check a t-(v,k,λ') design against a claimed (t+1)-(v,k,λ) adesign with b blocks."""
    if not 0 < t < k < v:
        raise BoundsError(f"Need 0 < t < k < v, got v={v}, k={k}, t={t}.")
    subsets, per_block = comb(v, t + 1), comb(k, t + 1)
    return LemmaCheck(
        lam == lam_prime * (k - t) // (v - t),
        lam * subsets < b * per_block < (lam + 1) * subsets,
    )


def is_minimal_covering(structure: IncidenceStructure, lam: int) -> bool:
    """True iff structure covers every pair at least λ times and b meets the covering bound."""
    k = structure.k
    if k is None:
        raise BoundsError("A covering needs a uniform block size.")
    histogram = replication_histogram(structure, 2)
    if min(histogram) < lam:
        raise BoundsError(f"Not a {lam}-covering: some pair lies in only {min(histogram)} blocks.")
    return structure.b == covering_lower_bound(structure.v, k, lam)
