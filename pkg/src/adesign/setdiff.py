"""Difference sets, almost difference sets and partial difference sets in abelian groups."""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from adesign.algebra import (
    AbelianGroup,
    FieldGroup,
    GroupElement,
    cyclotomic_indices,
    field_line,
    field_of_order,
    field_plane,
)
from adesign.errors import SetDiffError
from adesign.incidence import IncidenceStructure, from_blocks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupSubset:
    """A subset D of an abelian group, kept sorted in the group's enumeration order."""

    group: AbelianGroup
    elements: tuple[GroupElement, ...]

    def __post_init__(self):
        checked = [self.group.check(g) for g in self.elements]
        if len(set(checked)) != len(checked):
            raise SetDiffError("Subset elements must be distinct.")
        object.__setattr__(self, "elements", tuple(sorted(checked, key=self.group.index)))

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def v(self) -> int:
        return self.group.order

    def __contains__(self, g: GroupElement) -> bool:
        return tuple(g) in set(self.elements)

    def indices(self) -> list[int]:
        return [self.group.index(g) for g in self.elements]

    def translate(self, g: GroupElement) -> frozenset[int]:
        return frozenset(self.group.index(self.group.add(d, g)) for d in self.elements)


def make_subset(group: AbelianGroup, elements: Iterable[Iterable[int] | int]) -> GroupSubset:
    """Build a GroupSubset, accepting bare integers for cyclic groups."""
    normalized = [(g,) if isinstance(g, int) else tuple(g) for g in elements]
    return GroupSubset(group, tuple(normalized))


def complement_subset(subset: GroupSubset) -> GroupSubset:
    members = set(subset.elements)
    return GroupSubset(subset.group, tuple(g for g in subset.group.elements() if g not in members))


def _require_proper(subset: GroupSubset) -> None:
    if not 2 <= subset.k < subset.v:
        raise SetDiffError(f"Subset size {subset.k} must satisfy 2 <= k < v={subset.v}.")


def difference_spectrum(subset: GroupSubset) -> Counter:
    """Multiplicity of every nonidentity element among the differences x - y, x != y in D.

    Elements that never occur are present with count 0.
    """
    if subset.k < 2:
        raise SetDiffError(f"Need at least two elements for differences, got {subset.k}.")
    group = subset.group
    spectrum = Counter({g: 0 for g in group.elements() if g != group.zero})
    for x in subset.elements:
        for y in subset.elements:
            if x != y:
                spectrum[group.sub(x, y)] += 1
    return spectrum


def is_difference_set(subset: GroupSubset) -> Optional[int]:
    _require_proper(subset)
    values = set(difference_spectrum(subset).values())
    return values.pop() if len(values) == 1 else None


@dataclass(frozen=True)
class AlmostDifferenceSetParams:
    v: int
    k: int
    lam: int
    s: int  # number of nonidentity elements at multiplicity lam

    @property
    def counting_identity_holds(self) -> bool:
        """(v-1)(λ+1) - s = k(k-1): the spectrum has mass k(k-1) over v-1 nonzero elements."""
        return (self.v - 1) * (self.lam + 1) - self.s == self.k * (self.k - 1)

    @property
    def is_perfect(self) -> bool:
        return self.s == self.v - 1

    def readings(self) -> list[tuple[int, int]]:
        """(λ, s) readings; a perfect difference set reads as s = v-1 or s = 0."""
        if self.is_perfect:
            return [(self.lam, self.s), (self.lam - 1, 0)]
        return [(self.lam, self.s)]

    def to_dict(self) -> dict:
        return {"v": self.v, "k": self.k, "lambda": self.lam, "s": self.s, "readings": self.readings()}


def is_almost_difference_set(subset: GroupSubset) -> Optional[AlmostDifferenceSetParams]:
    """Return (v, k, λ, s) when the spectrum takes only the values λ and λ+1.

    A perfect difference set is reported with s = v-1.
    """
    _require_proper(subset)
    histogram = Counter(difference_spectrum(subset).values())
    low, high = min(histogram), max(histogram)
    if high > low + 1:
        return None
    v, k = subset.v, subset.k
    s = histogram[low] if high == low + 1 else v - 1
    params = AlmostDifferenceSetParams(v, k, low, s)
    if not params.counting_identity_holds:
        raise SetDiffError(f"Spectrum mass disagrees with {params}.")
    return params


def is_partial_difference_set(subset: GroupSubset) -> Optional[tuple[int, int]]:
    """Return (λ, μ) for a symmetric PDS not containing 0, None otherwise.

    Differences landing in D occur λ times, those landing outside D ∪ {0} occur μ times.
    """
    group = subset.group
    members = set(subset.elements)
    if group.zero in members or any(group.neg(g) not in members for g in members):
        return None
    spectrum = difference_spectrum(subset)
    inside = {spectrum[g] for g in members}
    outside = {spectrum[g] for g in spectrum if g not in members}
    if len(inside) != 1 or len(outside) != 1:
        return None
    return inside.pop(), outside.pop()


def development(subset: GroupSubset) -> IncidenceStructure:
    """The translates D + g for every g in G, one block per group element."""
    _require_proper(subset)
    blocks = [subset.translate(g) for g in subset.group.elements()]
    collided = len(set(blocks)) != len(blocks)
    if collided:
        logger.warning(
            "Development of %s in Z%s has repeated translates; keeping them as a multiset.",
            subset.elements,
            subset.group.factors,
        )
    return from_blocks(subset.v, blocks, allow_multiset=collided)


def cayley_graph(subset: GroupSubset) -> np.ndarray:
    """Adjacency matrix with (g, h) = 1 iff g - h lies in D, indexed by group enumeration."""
    group = subset.group
    members = set(subset.elements)
    if group.zero in members:
        raise SetDiffError("The connection set of a Cayley graph cannot contain 0.")
    if any(group.neg(g) not in members for g in members):
        raise SetDiffError("The connection set of an undirected Cayley graph must satisfy -D = D.")
    adjacency = np.zeros((subset.v, subset.v), dtype=np.int64)
    for h in group.elements():
        j = group.index(h)
        for d in subset.elements:
            adjacency[group.index(group.add(h, d)), j] = 1
    return adjacency


def quadratic_residue_set(q: int) -> GroupSubset:
    """Nonzero squares of GF(q) inside its additive group."""
    field = field_of_order(q)
    line = field_line(field)
    return GroupSubset(
        line.group, tuple(line.to_group(x) for x in cyclotomic_indices(field, 2, 0))
    )


def _appendix_pair(q: int) -> tuple[FieldGroup, set[int], set[int]]:
    field = field_of_order(q)
    return field_plane(field), set(cyclotomic_indices(field, 2, 0)), set(cyclotomic_indices(field, 2, 1))


def appendix_D(q: int) -> GroupSubset:
    """Pairs (a, b) of GF(q)^2 with a and b both squares or both nonsquares."""
    plane, squares, nonsquares = _appendix_pair(q)
    pairs = [(a, b) for a in squares for b in squares] + [(a, b) for a in nonsquares for b in nonsquares]
    return GroupSubset(plane.group, tuple(plane.to_group(a, b) for a, b in pairs))


def appendix_D_tilde(q: int) -> GroupSubset:
    """Pairs (a, b) of GF(q)^2 with exactly one of a, b a square, neither zero."""
    plane, squares, nonsquares = _appendix_pair(q)
    pairs = [(a, b) for a in squares for b in nonsquares] + [(a, b) for a in nonsquares for b in squares]
    return GroupSubset(plane.group, tuple(plane.to_group(a, b) for a, b in pairs))
