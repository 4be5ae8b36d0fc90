"""Finite incidence structures and their exact t-design / t-adesign classification."""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import comb
from typing import Iterable, Optional

import numpy as np

from adesign.errors import IncidenceError

logger = logging.getLogger(__name__)

Block = tuple[int, ...]


@dataclass(frozen=True)
class IncidenceStructure:
    """Point set 0..v-1 with a canonically ordered list of blocks.

    Blocks are stored sorted, and the block list is sorted lexicographically, so
    two structures with the same blocks compare equal. Repeated blocks are only
    accepted when allow_multiset is set.
    """

    v: int
    blocks: tuple[Block, ...]
    labels: Optional[tuple[str, ...]] = None
    allow_multiset: bool = False

    def __post_init__(self):
        if not isinstance(self.v, int) or self.v < 1:
            raise IncidenceError(f"Point count must be a positive integer, got {self.v}.")
        canonical = []
        for raw in self.blocks:
            block = tuple(sorted(int(x) for x in raw))
            if not block:
                raise IncidenceError("Blocks must be nonempty.")
            if block[0] < 0 or block[-1] >= self.v:
                raise IncidenceError(f"Block {block} has a point outside 0..{self.v - 1}.")
            if len(set(block)) != len(block):
                raise IncidenceError(f"Block {block} repeats a point.")
            canonical.append(block)
        canonical.sort()
        if not self.allow_multiset:
            for a, b in zip(canonical, canonical[1:]):
                if a == b:
                    raise IncidenceError(f"Block {a} is repeated in a simple structure.")
        object.__setattr__(self, "blocks", tuple(canonical))
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.v:
                raise IncidenceError(f"Expected {self.v} point labels, got {len(labels)}.")
            object.__setattr__(self, "labels", labels)

    @property
    def b(self) -> int:
        return len(self.blocks)

    @cached_property
    def point_masks(self) -> list[int]:
        """Bit j of point_masks[i] is set iff point i lies in block j."""
        masks = [0] * self.v
        for j, block in enumerate(self.blocks):
            bit = 1 << j
            for x in block:
                masks[x] |= bit
        return masks

    @property
    def block_sizes(self) -> list[int]:
        return sorted({len(block) for block in self.blocks})

    @property
    def k(self) -> Optional[int]:
        """The common block size, or None if blocks differ in size or there are none."""
        sizes = self.block_sizes
        return sizes[0] if len(sizes) == 1 else None

    @property
    def is_simple(self) -> bool:
        return len(set(self.blocks)) == len(self.blocks)

    @property
    def point_replications(self) -> list[int]:
        return [mask.bit_count() for mask in self.point_masks]

    def label(self, point: int) -> str:
        return self.labels[point] if self.labels else str(point)


def from_blocks(
    v: int,
    blocks: Iterable[Iterable[int]],
    allow_multiset: bool = False,
    labels: Optional[Iterable[str]] = None,
) -> IncidenceStructure:
    return IncidenceStructure(
        v,
        tuple(tuple(block) for block in blocks),
        tuple(labels) if labels is not None else None,
        allow_multiset,
    )


def replication(structure: IncidenceStructure, subset: Iterable[int]) -> int:
    """Number of blocks containing every point of subset, counted with multiplicity."""
    points = set(subset)
    acc = (1 << structure.b) - 1
    for x in points:
        if not 0 <= x < structure.v:
            raise IncidenceError(f"Point {x} is outside 0..{structure.v - 1}.")
        acc &= structure.point_masks[x]
    return acc.bit_count()


def replication_histogram(structure: IncidenceStructure, t: int) -> Counter:
    """Map r -> number of t-subsets Y with r_Y = r, over all C(v, t) subsets."""
    if t < 0 or t > structure.v:
        raise IncidenceError(f"Subset size t={t} is outside 0..{structure.v}.")
    masks = structure.point_masks
    v = structure.v
    histogram: Counter = Counter()
    if t == 0:
        histogram[structure.b] = 1
        return histogram

    if t == 2:
        for i in range(v):
            mi = masks[i]
            for j in range(i + 1, v):
                histogram[(mi & masks[j]).bit_count()] += 1
        return histogram

    def extend(start: int, depth: int, acc: int) -> None:
        for p in range(start, v - (t - depth) + 1):
            current = acc & masks[p]
            if depth + 1 == t:
                histogram[current.bit_count()] += 1
            elif current == 0:
                # every completion of this prefix lies in no block
                histogram[0] += comb(v - p - 1, t - depth - 1)
            else:
                extend(p + 1, depth + 1, current)

    extend(0, 0, (1 << structure.b) - 1)
    return histogram


class Verdict(Enum):
    DESIGN = "Design"
    ADESIGN = "Adesign"
    NEITHER = "Neither"
    NOT_UNIFORM = "NotUniformBlockSize"


@dataclass(frozen=True)
class Classification:
    t: int
    verdict: Verdict
    lam: Optional[int]
    r_min: Optional[int]
    r_max: Optional[int]
    count_low: Optional[int]
    count_high: Optional[int]
    v: int
    b: int
    k: Optional[int]

    @property
    def is_design(self) -> bool:
        return self.verdict is Verdict.DESIGN

    @property
    def is_adesign(self) -> bool:
        return self.verdict is Verdict.ADESIGN

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "verdict": self.verdict.value,
            "lambda": self.lam,
            "r_min": self.r_min,
            "r_max": self.r_max,
            "count_low": self.count_low,
            "count_high": self.count_high,
            "v": self.v,
            "b": self.b,
            "k": self.k,
        }

    def summary(self) -> str:
        if self.lam is None:
            return f"{self.verdict.value}, b={self.b}"
        return f"{self.verdict.value}, λ={self.lam}, b={self.b}"


def classify(structure: IncidenceStructure, t: int) -> Classification:
    """Decide whether structure is a t-design, a t-adesign or neither.

    Every t-subset is counted. A structure with blocks of several sizes gets the
    NOT_UNIFORM verdict rather than an error.
    """
    if structure.b == 0:
        raise IncidenceError("Cannot classify a structure with no blocks.")
    k = structure.k
    if k is None:
        return Classification(
            t, Verdict.NOT_UNIFORM, None, None, None, None, None, structure.v, structure.b, None
        )
    if t < 1 or t > k:
        raise IncidenceError(f"Subset size t={t} must satisfy 1 <= t <= k={k}.")

    logger.debug("classify: scanning C(%d, %d) = %d subsets", structure.v, t, comb(structure.v, t))
    histogram = replication_histogram(structure, t)
    r_min, r_max = min(histogram), max(histogram)
    if r_max == r_min:
        verdict, lam = Verdict.DESIGN, r_min
    elif r_max == r_min + 1:
        verdict, lam = Verdict.ADESIGN, r_min
    else:
        verdict, lam = Verdict.NEITHER, None
    return Classification(
        t=t,
        verdict=verdict,
        lam=lam,
        r_min=r_min,
        r_max=r_max,
        count_low=histogram[r_min],
        count_high=histogram[r_min + 1],
        v=structure.v,
        b=structure.b,
        k=k,
    )


@dataclass(frozen=True)
class DesignIdentities:
    blocks_points: bool  # bk = vr
    pairs: bool  # r(k-1) = (v-1)λ

    @property
    def holds(self) -> bool:
        return self.blocks_points and self.pairs


def design_identities(v: int, k: int, lam: int, b: int, r: int) -> DesignIdentities:
    return DesignIdentities(b * k == v * r, r * (k - 1) == (v - 1) * lam)


def dual(structure: IncidenceStructure) -> IncidenceStructure:
    """Swap points and blocks: point j of the dual is block j, block i is the support of point i."""
    supports = [[j for j, block in enumerate(structure.blocks) if i in block] for i in range(structure.v)]
    for i, support in enumerate(supports):
        if not support:
            raise IncidenceError(f"Point {i} lies in no block, so its dual block is empty.")
    multiset = len({tuple(s) for s in supports}) != len(supports)
    return from_blocks(structure.b, supports, allow_multiset=multiset)


def complement_blocks(structure: IncidenceStructure) -> IncidenceStructure:
    points = set(range(structure.v))
    complements = []
    for block in structure.blocks:
        rest = points.difference(block)
        if not rest:
            raise IncidenceError(f"Block {block} is the whole point set; its complement is empty.")
        complements.append(rest)
    return from_blocks(structure.v, complements, structure.allow_multiset, structure.labels)


def union(
    first: IncidenceStructure,
    second: IncidenceStructure,
    allow_multiset: Optional[bool] = None,
) -> IncidenceStructure:
    """Concatenate block lists over the same point set."""
    if first.v != second.v:
        raise IncidenceError(f"Cannot unite structures on {first.v} and {second.v} points.")
    if allow_multiset is None:
        allow_multiset = first.allow_multiset or second.allow_multiset
    return from_blocks(first.v, first.blocks + second.blocks, allow_multiset, first.labels)


def contraction(structure: IncidenceStructure, point: int) -> IncidenceStructure:
    """Blocks through point, with point removed, on the remaining v-1 points.

    Points above the removed one shift down by one.
    """
    if not 0 <= point < structure.v:
        raise IncidenceError(f"Point {point} is outside 0..{structure.v - 1}.")
    if structure.v == 1:
        raise IncidenceError("Cannot contract the only point of a structure.")
    through = [block for block in structure.blocks if point in block]
    if not through:
        raise IncidenceError(f"Point {point} lies in no block.")
    contracted = []
    for block in through:
        rest = [x if x < point else x - 1 for x in block if x != point]
        if not rest:
            raise IncidenceError(f"Block {block} becomes empty after removing point {point}.")
        contracted.append(rest)
    labels = None
    if structure.labels:
        labels = structure.labels[:point] + structure.labels[point + 1 :]
    return from_blocks(structure.v - 1, contracted, structure.allow_multiset, labels)


def incidence_matrix(structure: IncidenceStructure) -> np.ndarray:
    """v x b 0/1 matrix with entry (i, j) = 1 iff point i lies in block j."""
    matrix = np.zeros((structure.v, structure.b), dtype=np.int64)
    for j, block in enumerate(structure.blocks):
        matrix[list(block), j] = 1
    return matrix


@dataclass(frozen=True)
class MatrixCheck:
    kind: str
    holds: bool
    r: Optional[int] = None
    lam: Optional[int] = None
    reason: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "holds": self.holds, "r": self.r, "lambda": self.lam, "reason": self.reason}


def _gram(structure: IncidenceStructure, kind: str) -> tuple[np.ndarray, np.ndarray, int] | MatrixCheck:
    """Return (A, AA^T, r), or a failing MatrixCheck if the preconditions are not met."""
    if structure.b == 0 or structure.v < 2:
        return MatrixCheck(kind, False, reason="need at least two points and one block")
    k = structure.k
    if k is None:
        return MatrixCheck(kind, False, reason="block sizes are not uniform")
    a = incidence_matrix(structure)
    rows = a.sum(axis=1)
    if not np.all(rows == rows[0]):
        return MatrixCheck(kind, False, reason="point replication is not constant")
    r = int(rows[0])
    ones = np.ones((structure.v, structure.v), dtype=np.int64)
    if not np.array_equal(a.T @ ones, k * np.ones((structure.b, structure.v), dtype=np.int64)):
        return MatrixCheck(kind, False, r=r, reason="A^T J differs from kJ")
    return a, a @ a.T, r


def check_design_matrix_identity(structure: IncidenceStructure) -> MatrixCheck:
    """Verify AA^T = rI + λ(J - I) and A^T J = kJ for the incidence matrix A."""
    gram = _gram(structure, "design")
    if isinstance(gram, MatrixCheck):
        return gram
    _, product, r = gram
    v = structure.v
    off = np.unique(product[~np.eye(v, dtype=bool)])
    if len(off) != 1:
        return MatrixCheck("design", False, r=r, reason=f"off-diagonal values {off.tolist()}")
    lam = int(off[0])
    identity = np.eye(v, dtype=np.int64)
    expected = r * identity + lam * (np.ones((v, v), dtype=np.int64) - identity)
    return MatrixCheck("design", bool(np.array_equal(product, expected)), r=r, lam=lam)


def check_adesign_matrix_identity(structure: IncidenceStructure) -> MatrixCheck:
    """Verify AA^T = rI + λS + (λ+1)(J - I - S) for a 0/1 matrix S with zero diagonal.

    S is read off the off-diagonal entries of AA^T equal to λ; exactly the two
    values λ and λ+1 must occur there.
    """
    gram = _gram(structure, "adesign")
    if isinstance(gram, MatrixCheck):
        return gram
    _, product, r = gram
    v = structure.v
    off_mask = ~np.eye(v, dtype=bool)
    off = np.unique(product[off_mask])
    if len(off) != 2 or off[1] != off[0] + 1:
        return MatrixCheck("adesign", False, r=r, reason=f"off-diagonal values {off.tolist()}")
    lam = int(off[0])
    s = ((product == lam) & off_mask).astype(np.int64)
    identity = np.eye(v, dtype=np.int64)
    ones = np.ones((v, v), dtype=np.int64)
    expected = r * identity + lam * s + (lam + 1) * (ones - identity - s)
    return MatrixCheck("adesign", bool(np.array_equal(product, expected)), r=r, lam=lam)
