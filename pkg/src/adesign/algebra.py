"""Exact arithmetic in GF(q) and finite abelian groups, plus cyclotomy of order e."""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint, isprime
from sympy.ntheory import primitive_root
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_pow_mod

from adesign.errors import FieldError, GroupError

logger = logging.getLogger(__name__)

ORDER_CAP = 2**20  # Largest field or group order we enumerate exhaustively

GroupElement = tuple[int, ...]


class FiniteField:
    """GF(p^m), p odd, with elements addressed by a canonical index in 0..q-1.

    The index of an element is its coefficient vector (the coefficient of x^i
    weighted by p^i) read as a base-p integer, so the prime subfield keeps its
    residues as indices and 0 is the zero element. Products go through exp/log
    tables built from the primitive element gamma.
    """

    def __init__(self, p: int, m: int = 1):
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise FieldError(f"Characteristic {p} is not prime.")
        if p == 2:
            raise FieldError("Characteristic 2 fields are not supported.")
        if not isinstance(m, int) or m < 1:
            raise FieldError(f"Extension degree must be a positive integer, got {m}.")
        if p**m > ORDER_CAP:
            raise FieldError(f"Field order {p}^{m} exceeds the cap {ORDER_CAP}.")

        self.p = p
        self.m = m
        self.q = p**m

        if m == 1:
            self.modulus: tuple[int, ...] = (1, 0)
            self.gamma = int(primitive_root(p))
        else:
            self.modulus = _primitive_modulus(p, m)
            self.gamma = p  # the class of x

        self._exp, self._log = self._build_tables()
        logger.debug("GF(%d): modulus %s, gamma index %d", self.q, self.modulus, self.gamma)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    # coefficient vectors

    def coefficients(self, index: int) -> list[int]:
        """Little-endian coefficients c_0..c_{m-1} of the element at index."""
        self._check(index)
        coeffs = []
        for _ in range(self.m):
            index, c = divmod(index, self.p)
            coeffs.append(c)
        return coeffs

    def from_coefficients(self, coeffs: list[int]) -> int:
        index = 0
        for c in reversed(coeffs):
            index = index * self.p + c % self.p
        return index

    def digits(self, index: int) -> tuple[int, ...]:
        """Big-endian base-p digits, so that a mixed-radix read gives index back."""
        return tuple(reversed(self.coefficients(index)))

    def from_digits(self, digits: tuple[int, ...]) -> int:
        return self.from_coefficients(list(reversed(digits)))

    # arithmetic on indices

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self.from_coefficients(
            [x + y for x, y in zip(self.coefficients(a), self.coefficients(b))]
        )

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self.from_coefficients([-x for x in self.coefficients(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("Zero has no multiplicative inverse.")
        return self._exp[-self.log(a) % (self.q - 1)]

    def power(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise FieldError("Zero has no multiplicative inverse.")
            return 1 if n == 0 else 0
        return self._exp[self.log(a) * n % (self.q - 1)]

    def exp(self, k: int) -> int:
        """Index of gamma^k."""
        return self._exp[k % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete logarithm of a nonzero element to base gamma."""
        self._check(a)
        if a == 0:
            raise FieldError("Zero has no discrete logarithm.")
        return self._log[a]

    def quadratic_character(self, a: int) -> int:
        if a == 0:
            return 0
        return 1 if self.log(a) % 2 == 0 else -1

    # element views

    def element(self, index: int) -> "FieldElement":
        return FieldElement(self, index)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, i) for i in range(self.q)]

    def describe(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "q": self.q,
            "modulus": list(self.modulus),
            "gamma": self.gamma,
        }

    # internals

    def _check(self, index: int) -> None:
        if not 0 <= index < self.q:
            raise FieldError(f"Index {index} is not an element of GF({self.q}).")

    def _times_gamma(self, index: int) -> int:
        if self.m == 1:
            return index * self.gamma % self.p
        coeffs = self.coefficients(index)
        top = coeffs[-1]
        shifted = [0, *coeffs[:-1]]
        # x^m = -(c_{m-1} x^{m-1} + ... + c_0) modulo the defining polynomial
        tail = list(reversed(self.modulus[1:]))
        return self.from_coefficients([s - top * c for s, c in zip(shifted, tail)])

    def _build_tables(self) -> tuple[list[int], list[int]]:
        exp = [0] * (self.q - 1)
        log = [-1] * self.q
        current = 1
        for k in range(self.q - 1):
            if log[current] != -1:
                raise FieldError(f"gamma index {self.gamma} is not primitive in GF({self.q}).")
            exp[k] = current
            log[current] = k
            current = self._times_gamma(current)
        if current != 1:
            raise FieldError(f"gamma index {self.gamma} is not primitive in GF({self.q}).")
        return exp, log


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    index: int

    def __post_init__(self):
        self.field._check(self.index)

    def _other(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldError(f"Cannot combine an element of {self.field} with {other!r}.")
        return other.index

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.add(self.index, self._other(other)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.sub(self.index, self._other(other)))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.mul(self.index, self._other(other)))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        inverse = self.field.inv(self._other(other))
        return FieldElement(self.field, self.field.mul(self.index, inverse))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.index))

    def __pow__(self, n: int) -> "FieldElement":
        return FieldElement(self.field, self.field.power(self.index, n))

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"{self.field!r}[{self.index}]"


def _primitive_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree m in which x is primitive.

    Candidates are (1, c_{m-1}, ..., c_0) taken in itertools.product order.
    """
    order = p**m - 1
    cofactors = [order // int(ell) for ell in factorint(order)]
    x = [ZZ(1), ZZ(0)]
    for tail in itertools.product(range(p), repeat=m):
        if tail[-1] == 0:
            continue
        poly = [ZZ(c) for c in (1, *tail)]
        if not gf_irreducible_p(poly, p, ZZ):
            continue
        if all(gf_pow_mod(x, e, poly, p, ZZ) != [1] for e in cofactors):
            return (1, *tail)
    raise FieldError(f"No primitive polynomial of degree {m} over GF({p}).")


@lru_cache(maxsize=64)
def field_new(p: int, m: int = 1) -> FiniteField:
    return FiniteField(p, m)


def field_of_order(q: int) -> FiniteField:
    if not isinstance(q, int) or q < 3:
        raise FieldError(f"{q} is not an odd prime power.")
    factors = factorint(q)
    if len(factors) != 1:
        raise FieldError(f"{q} is not a prime power.")
    ((p, m),) = factors.items()
    return field_new(int(p), int(m))


def _check_cyclotomic_order(field: FiniteField, e: int) -> None:
    if e < 1 or (field.q - 1) % e:
        raise FieldError(f"Order e={e} does not divide q-1={field.q - 1}.")


def cyclotomic_indices(field: FiniteField, e: int, i: int) -> frozenset[int]:
    _check_cyclotomic_order(field, e)
    if not 0 <= i < e:
        raise FieldError(f"Class index {i} is outside 0..{e - 1}.")
    return frozenset(field.exp(i + j * e) for j in range((field.q - 1) // e))


def cyclotomic_class(field: FiniteField, e: int, i: int) -> frozenset[FieldElement]:
    """D_i = gamma^i <gamma^e>."""
    return frozenset(field.element(x) for x in cyclotomic_indices(field, e, i))


def cyclotomic_number(field: FiniteField, e: int, i: int, j: int) -> int:
    """(i,j)_e = |(D_i + 1) ∩ D_j|, the number of x in D_i with x + 1 in D_j."""
    shifted = {field.add(x, 1) for x in cyclotomic_indices(field, e, i)}
    return len(shifted & cyclotomic_indices(field, e, j))


def cyclotomic_matrix(field: FiniteField, e: int) -> list[list[int]]:
    return [[cyclotomic_number(field, e, i, j) for j in range(e)] for i in range(e)]


def order2_closed_form(q: int) -> dict[tuple[int, int], int]:
    """Closed forms of the order-2 cyclotomic numbers for an odd prime power q."""
    if q % 2 == 0:
        raise FieldError(f"q={q} is even.")
    if q % 4 == 1:
        rest = (q - 1) // 4
        return {(0, 0): (q - 5) // 4, (0, 1): rest, (1, 0): rest, (1, 1): rest}
    rest = (q - 3) // 4
    return {(0, 0): rest, (0, 1): (q + 1) // 4, (1, 0): rest, (1, 1): rest}


@dataclass(frozen=True)
class AbelianGroup:
    """Direct product Z_{n_1} x ... x Z_{n_r}, written additively."""

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        if not self.factors or any(n < 2 for n in self.factors):
            raise GroupError(f"Cyclic factors must all be at least 2, got {self.factors}.")
        if self.order > ORDER_CAP:
            raise GroupError(f"Group order {self.order} exceeds the cap {ORDER_CAP}.")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.factors)

    @property
    def zero(self) -> GroupElement:
        return (0,) * len(self.factors)

    def elements(self) -> list[GroupElement]:
        """All elements in lexicographic order; position i has index(g) == i."""
        return list(itertools.product(*(range(n) for n in self.factors)))

    def contains(self, g: GroupElement) -> bool:
        return len(g) == len(self.factors) and all(
            0 <= x < n for x, n in zip(g, self.factors)
        )

    def check(self, g: GroupElement) -> GroupElement:
        g = tuple(g)
        if not self.contains(g):
            raise GroupError(f"{g} is not an element of Z{self.factors}.")
        return g

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return tuple((x + y) % n for x, y, n in zip(g, h, self.factors))

    def neg(self, g: GroupElement) -> GroupElement:
        return tuple((-x) % n for x, n in zip(g, self.factors))

    def sub(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return tuple((x - y) % n for x, y, n in zip(g, h, self.factors))

    def index(self, g: GroupElement) -> int:
        i = 0
        for x, n in zip(g, self.factors):
            i = i * n + x
        return i

    def element(self, i: int) -> GroupElement:
        if not 0 <= i < self.order:
            raise GroupError(f"Index {i} is outside 0..{self.order - 1}.")
        digits = []
        for n in reversed(self.factors):
            i, x = divmod(i, n)
            digits.append(x)
        return tuple(reversed(digits))


def group_elements(group: AbelianGroup) -> list[GroupElement]:
    return group.elements()


class FieldGroup:
    """The additive group of GF(q)^dim, as dim*m copies of Z_p, labelled by field indices.

    The point index of (a_1, ..., a_dim) is the base-q number a_1 a_2 ... a_dim,
    which is also its position in the group's lexicographic enumeration.
    """

    def __init__(self, field: FiniteField, dim: int):
        self.field = field
        self.dim = dim
        self.group = AbelianGroup((field.p,) * (field.m * dim))

    def to_group(self, *coords: int) -> GroupElement:
        if len(coords) != self.dim:
            raise GroupError(f"Expected {self.dim} field coordinates, got {len(coords)}.")
        return tuple(d for c in coords for d in self.field.digits(c))

    def from_group(self, g: GroupElement) -> tuple[int, ...]:
        m = self.field.m
        return tuple(self.field.from_digits(tuple(g[i : i + m])) for i in range(0, len(g), m))

    def point(self, *coords: int) -> int:
        return self.group.index(self.to_group(*coords))

    def labels(self) -> list[str]:
        return [
            "(" + ",".join(str(c) for c in self.from_group(g)) + ")"
            for g in self.group.elements()
        ]


def field_line(field: FiniteField) -> FieldGroup:
    return FieldGroup(field, 1)


def field_plane(field: FiniteField) -> FieldGroup:
    return FieldGroup(field, 2)
