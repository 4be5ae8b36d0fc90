"""Strongly regular graphs, doubly regular tournaments and conference matrices."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from adesign.algebra import cyclotomic_indices, field_of_order
from adesign.errors import GraphError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    lam: int
    mu: int

    @property
    def is_feasible(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.n - self.k - 1) * self.mu

    @property
    def is_paley_type(self) -> bool:
        return 2 * self.k == self.n - 1 and 4 * self.lam == self.n - 5 and 4 * self.mu == self.n - 1

    def complement(self) -> "SrgParams":
        n, k, lam, mu = self.n, self.k, self.lam, self.mu
        return SrgParams(n, n - k - 1, n - 2 * k + mu - 2, n - 2 * k + lam)

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "lambda": self.lam, "mu": self.mu}

    def __str__(self) -> str:
        return f"SRG({self.n},{self.k},{self.lam},{self.mu})"


@dataclass(frozen=True)
class TournamentParams:
    n: int
    common_out: int  # common out-neighbours of any two distinct vertices

    def to_dict(self) -> dict:
        return {"n": self.n, "common_out": self.common_out}


def is_paley_type(params: SrgParams) -> bool:
    return params.is_paley_type


def _as_square(matrix, allowed: set[int], what: str) -> np.ndarray:
    a = np.asarray(matrix, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise GraphError(f"{what} must be square, got shape {a.shape}.")
    bad = set(np.unique(a).tolist()) - allowed
    if bad:
        raise GraphError(f"{what} has entries {sorted(bad)} outside {sorted(allowed)}.")
    return a


def validate_adjacency(matrix) -> np.ndarray:
    """Return matrix as an int64 array after checking it is a simple undirected graph."""
    a = _as_square(matrix, {0, 1}, "Adjacency matrix")
    if np.any(np.diag(a)):
        raise GraphError("Adjacency matrix has a nonzero diagonal entry.")
    if not np.array_equal(a, a.T):
        raise GraphError("Adjacency matrix is not symmetric.")
    return a


def srg_identity_holds(matrix, params: SrgParams) -> bool:
    """A^2 = kI + λA + μ(J - I - A) and AJ = kJ, in exact integer arithmetic."""
    a = np.asarray(matrix, dtype=np.int64)
    n = a.shape[0]
    identity = np.eye(n, dtype=np.int64)
    ones = np.ones((n, n), dtype=np.int64)
    expected = params.k * identity + params.lam * a + params.mu * (ones - identity - a)
    return bool(np.array_equal(a @ a, expected) and np.array_equal(a @ ones, params.k * ones))


def is_srg(matrix) -> Optional[SrgParams]:
    """Read (n, k, λ, μ) off A and A^2, then confirm the identity literally.

    Returns None when degrees or common-neighbour counts are not constant.
    """
    a = validate_adjacency(matrix)
    n = a.shape[0]
    if n < 4:
        raise GraphError(f"Strong regularity needs at least 4 vertices, got {n}.")
    degrees = a.sum(axis=1)
    k = int(degrees[0])
    if not np.all(degrees == k):
        return None
    if k == 0 or k == n - 1:
        raise GraphError("Complete and empty graphs are excluded.")
    square = a @ a
    off = ~np.eye(n, dtype=bool)
    lams = np.unique(square[a == 1])
    mus = np.unique(square[(a == 0) & off])
    if len(lams) != 1 or len(mus) != 1:
        return None
    params = SrgParams(n, k, int(lams[0]), int(mus[0]))
    return params if srg_identity_holds(a, params) else None


def complement_graph(matrix) -> np.ndarray:
    """J - I - A; an SRG's complement carries the complementary parameters."""
    a = validate_adjacency(matrix)
    n = a.shape[0]
    complement = np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64) - a
    if n >= 4 and 0 < int(a[0].sum()) < n - 1:
        params = is_srg(a)
        if params is not None and is_srg(complement) != params.complement():
            raise GraphError(f"Complement of {params} is not {params.complement()}.")
    return complement


def is_doubly_regular_tournament(matrix) -> Optional[TournamentParams]:
    """Test SS^T = nI - J for S = 2A + I - J on a tournament adjacency A."""
    a = _as_square(matrix, {0, 1}, "Tournament matrix")
    n = a.shape[0]
    identity = np.eye(n, dtype=np.int64)
    ones = np.ones((n, n), dtype=np.int64)
    if not np.array_equal(a + a.T, ones - identity):
        raise GraphError("Not a tournament: A + A^T differs from J - I.")
    s = 2 * a + identity - ones
    if not np.array_equal(s @ s.T, n * identity - ones):
        return None
    return TournamentParams(n, (n - 3) // 4)


class ConferenceType(Enum):
    SYMMETRIC = "symmetric"
    SKEW = "skew"
    NONE = "none"


def normalize_conference(matrix) -> np.ndarray:
    """Negate row i when C[i][0] = -1, then column j when C[0][j] = -1."""
    c = np.array(matrix, dtype=np.int64)
    for i in range(1, c.shape[0]):
        if c[i, 0] == -1:
            c[i] = -c[i]
    for j in range(1, c.shape[0]):
        if c[0, j] == -1:
            c[:, j] = -c[:, j]
    return c


def is_conference_matrix(matrix) -> ConferenceType:
    """Check CC^T = (n-1)I with zero diagonal and ±1 elsewhere; classify the normalized core."""
    c = _as_square(matrix, {-1, 0, 1}, "Conference matrix")
    n = c.shape[0]
    off = ~np.eye(n, dtype=bool)
    if n < 2 or np.any(np.diag(c)) or np.any(c[off] == 0):
        return ConferenceType.NONE
    if not np.array_equal(c @ c.T, (n - 1) * np.eye(n, dtype=np.int64)):
        return ConferenceType.NONE
    core = normalize_conference(c)[1:, 1:]
    if np.array_equal(core, core.T):
        return ConferenceType.SYMMETRIC
    if np.array_equal(core, -core.T):
        return ConferenceType.SKEW
    return ConferenceType.NONE


def conference_core_graph(matrix) -> np.ndarray:
    """Normalize C, drop its first row and column, and map -1 to 1 and 1 to 0.

    A symmetric core yields a Paley-type SRG, a skew core a doubly regular tournament.
    """
    kind = is_conference_matrix(matrix)
    if kind is ConferenceType.NONE:
        raise GraphError("Input is not a conference matrix.")
    c = np.asarray(matrix)
    if c.shape[0] < 4:
        raise GraphError(f"Conference matrix of order {c.shape[0]} is too small for a core graph.")
    core = normalize_conference(c)[1:, 1:]
    graph = (core == -1).astype(np.int64)
    if kind is ConferenceType.SYMMETRIC:
        params = is_srg(graph)
        if params is None or not params.is_paley_type:
            raise GraphError(f"Symmetric core is not a Paley-type SRG: {params}.")
    elif is_doubly_regular_tournament(graph) is None:
        raise GraphError("Skew core is not a doubly regular tournament.")
    return graph


def conference_from_graph(matrix) -> np.ndarray:
    """Border a Paley-type SRG or a doubly regular tournament into a conference matrix.

    Symmetric input gives [[0, j^T], [j, J - I - 2A]]; a tournament gives
    [[0, j^T], [-j, 2A + I - J]]. conference_core_graph inverts both.
    """
    a = _as_square(matrix, {0, 1}, "Adjacency matrix")
    n = a.shape[0]
    identity = np.eye(n, dtype=np.int64)
    ones = np.ones((n, n), dtype=np.int64)
    c = np.zeros((n + 1, n + 1), dtype=np.int64)
    c[0, 1:] = 1
    if np.array_equal(a, a.T):
        c[1:, 0] = 1
        c[1:, 1:] = ones - identity - 2 * a
    elif np.array_equal(a + a.T, ones - identity):
        c[1:, 0] = -1
        c[1:, 1:] = 2 * a + identity - ones
    else:
        raise GraphError("Input is neither symmetric nor a tournament.")
    if is_conference_matrix(c) is ConferenceType.NONE:
        raise GraphError("Bordered matrix is not a conference matrix; the input is not of Paley type.")
    return c


def _residue_adjacency(q: int) -> np.ndarray:
    field = field_of_order(q)
    squares = cyclotomic_indices(field, 2, 0)
    a = np.zeros((q, q), dtype=np.int64)
    for x in range(q):
        for r in squares:
            a[x, field.add(x, r)] = 1
    return a


def paley_graph(q: int) -> np.ndarray:
    """x ~ y iff x - y is a nonzero square of GF(q); vertices are field indices."""
    if q % 4 != 1:
        raise GraphError(f"Paley graphs need q ≡ 1 (mod 4), got q={q}.")
    return _residue_adjacency(q)


def paley_tournament(q: int) -> np.ndarray:
    """Arc x -> y iff y - x is a nonzero square of GF(q)."""
    if q % 4 != 3:
        raise GraphError(f"Paley tournaments need q ≡ 3 (mod 4), got q={q}.")
    return _residue_adjacency(q)


def paley_conference_matrix(q: int) -> np.ndarray:
    """Conference matrix of order q+1: symmetric for q ≡ 1, skew-type for q ≡ 3 (mod 4)."""
    if q % 4 == 1:
        return conference_from_graph(paley_graph(q))
    return conference_from_graph(paley_tournament(q))


def latin_square_graph(q: int, d: int) -> np.ndarray:
    """Graph on GF(q)^2 from an orthogonal array with d constraints.

    Vertex (x, y) has index x*q + y. Two vertices are adjacent when they share a
    row x, a column y, or a value of a*x + y for one of the slopes a = 1..d-2
    (field indices). The result is SRG(q^2, d(q-1), d^2-3d+q, d(d-1)).
    """
    field = field_of_order(q)
    if not 2 <= d <= q:
        raise GraphError(f"Latin-square graph needs 2 <= d <= q={q}, got d={d}.")
    vertices = [(x, y) for x in range(q) for y in range(q)]
    coordinates = [
        lambda x, y: x,
        lambda x, y: y,
        *[(lambda a: lambda x, y: field.add(field.mul(a, x), y))(a) for a in range(1, d - 1)],
    ]
    n = q * q
    a = np.zeros((n, n), dtype=np.int64)
    for coordinate in coordinates:
        classes: dict[int, list[int]] = {}
        for index, (x, y) in enumerate(vertices):
            classes.setdefault(coordinate(x, y), []).append(index)
        for members in classes.values():
            a[np.ix_(members, members)] = 1
    np.fill_diagonal(a, 0)
    logger.debug("latin_square_graph(q=%d, d=%d): %d edges", q, d, int(a.sum()) // 2)
    return a
