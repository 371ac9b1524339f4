"""Root data for osp(1,2n) and its even part sp(2n).

Weights are written in the basis delta_1..delta_n of the dual Cartan
subalgebra. The invariant form is normalised by (delta_i, delta_j) = [i == j];
with this choice lambda(h_alpha) = 2(lambda, alpha)/(alpha, alpha) for every
non-isotropic root, and the constant table of the odd-part Lemma is reproduced
verbatim for type B(0, n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

from .errors import ConsistencyError, DomainError
from .linalg import solve

EVEN = "even"
ODD = "odd"


@dataclass(frozen=True, order=True)
class Weight:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def of(cls, *coords) -> "Weight":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)

    @classmethod
    def delta(cls, n: int, i: int, mult=1) -> "Weight":
        """``mult * delta_i`` (1-based index)."""
        c = [0] * n
        c[i - 1] = mult
        return cls(tuple(c))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, c) -> "Weight":
        return Weight(tuple(a * c for a in self.coords))

    __rmul__ = __mul__

    def _check(self, other: "Weight"):
        if len(other.coords) != len(self.coords):
            raise DomainError("weights of different rank")

    def key(self) -> tuple:
        """Hashable plain tuple (ints where integral)."""
        return tuple(int(c) if c.denominator == 1 else c for c in self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.key()) + ")"


@dataclass(frozen=True, order=True)
class Root:
    weight: Weight
    parity: str

    @property
    def is_odd(self) -> bool:
        return self.parity == ODD

    def __neg__(self) -> "Root":
        return Root(-self.weight, self.parity)

    def __str__(self) -> str:
        return f"{self.weight}{'*' if self.is_odd else ''}"


@dataclass(frozen=True)
class CartanElement:
    """Element of the Cartan subalgebra, coordinates over h_1..h_n."""

    coeffs: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    def h_prime(self) -> tuple[Fraction, ...]:
        """Coordinates over H'_1..H'_n (the diagonal matrix units)."""
        n = len(self.coeffs)
        return tuple(sum(self.coeffs[i] * self.basis[i][j] for i in range(n)) for j in range(n))

    def pair(self, lam: Weight) -> Fraction:
        return sum((a * b for a, b in zip(lam.coords, self.h_prime())), Fraction(0))


def form(lam: Weight, mu: Weight) -> Fraction:
    lam._check(mu)
    return sum((a * b for a, b in zip(lam.coords, mu.coords)), Fraction(0))


@dataclass(frozen=True)
class RootSystem:
    n: int
    is_super: bool
    positive_even: tuple[Root, ...]
    positive_odd: tuple[Root, ...]
    simple: tuple[Root, ...]
    cartan_A: tuple[tuple[Fraction, ...], ...]
    sym_B: tuple[tuple[Fraction, ...], ...]
    diag_D: tuple[Fraction, ...]
    h_basis: tuple[tuple[Fraction, ...], ...]
    kac_root: Root | None
    rho: Weight
    rho0: Weight
    rho1: Weight

    @property
    def positive(self) -> tuple[Root, ...]:
        return self.positive_even + self.positive_odd

    @property
    def roots(self) -> tuple[Root, ...]:
        return self.positive + tuple(-a for a in self.positive)

    @property
    def odd_simple_index(self) -> int | None:
        """1-based index s of the odd simple root (None for sp(2n))."""
        for i, a in enumerate(self.simple, 1):
            if a.is_odd:
                return i
        return None

    def find_root(self, weight: Weight) -> Root | None:
        for a in self.roots:
            if a.weight == weight:
                return a
        return None

    def simple_coefficients(self, weight: Weight) -> list[Fraction]:
        """Coefficients k_i with weight = sum k_i alpha_i."""
        return solve([a.weight.coords for a in self.simple], weight.coords)

    def h(self, i: int) -> CartanElement:
        c = [Fraction(0)] * self.n
        c[i - 1] = Fraction(1)
        return CartanElement(tuple(c), self.h_basis)

    def pairing(self, lam: Weight, i: int) -> Fraction:
        """lambda(h_i)."""
        return self.h(i).pair(lam)


def _positive_roots(n: int, is_super: bool):
    even = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            even.append(Root(Weight.delta(n, i) - Weight.delta(n, j), EVEN))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            even.append(Root(Weight.delta(n, i) + Weight.delta(n, j), EVEN))
    for p in range(1, n + 1):
        even.append(Root(Weight.delta(n, p, 2), EVEN))
    odd = [Root(Weight.delta(n, p), ODD) for p in range(1, n + 1)] if is_super else []
    return tuple(even), tuple(odd)


@lru_cache(maxsize=None)
def build_root_system(n: int, even: bool = False) -> RootSystem:
    """Distinguished root system of osp(1,2n), or of sp(2n) if ``even``."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"rank must be a positive integer, got {n!r}")
    is_super = not even
    pos_even, pos_odd = _positive_roots(n, is_super)
    simple = [Root(Weight.delta(n, i) - Weight.delta(n, i + 1), EVEN) for i in range(1, n)]
    if is_super:
        simple.append(Root(Weight.delta(n, n), ODD))
    else:
        simple.append(Root(Weight.delta(n, n, 2), EVEN))
    simple = tuple(simple)

    B = tuple(tuple(form(a.weight, b.weight) for b in simple) for a in simple)
    D = tuple(Fraction(2) / B[i][i] for i in range(n))
    A = tuple(tuple(D[i] * B[i][j] for j in range(n)) for i in range(n))
    # h_i corresponds to the coroot 2 alpha_i / (alpha_i, alpha_i) under the form
    h_basis = tuple(tuple(D[i] * c for c in simple[i].weight.coords) for i in range(n))

    half = Fraction(1, 2)
    rho0 = Weight.zero(n)
    for a in pos_even:
        rho0 = rho0 + a.weight * half
    rho1 = Weight.zero(n)
    for a in pos_odd:
        rho1 = rho1 + a.weight * half
    kac_root = Root(Weight.delta(n, n, 2), EVEN) if is_super else None
    return RootSystem(
        n=n,
        is_super=is_super,
        positive_even=pos_even,
        positive_odd=pos_odd,
        simple=simple,
        cartan_A=A,
        sym_B=B,
        diag_D=D,
        h_basis=h_basis,
        kac_root=kac_root,
        rho=rho0 - rho1,
        rho0=rho0,
        rho1=rho1,
    )


def bilinear(rs: RootSystem, lam: Weight, mu: Weight) -> Fraction:
    if lam.rank != rs.n or mu.rank != rs.n:
        raise DomainError("weight rank does not match the root system")
    return form(lam, mu)


def coroot(rs: RootSystem, alpha: Root | Weight) -> CartanElement:
    """h_alpha = d_alpha * sum_i k_i d_i^{-1} h_i."""
    weight = alpha.weight if isinstance(alpha, Root) else alpha
    root = rs.find_root(weight)
    if root is None:
        raise DomainError(f"{weight} is not a root")
    norm = form(weight, weight)
    if norm != 0:
        d_alpha = Fraction(2) / norm
    else:
        # isotropic roots do not occur for osp(1,2n); kept for completeness
        s = rs.odd_simple_index
        d_alpha = rs.diag_D[s - 1]
    k = rs.simple_coefficients(weight)
    coeffs = tuple(d_alpha * k[i] / rs.diag_D[i] for i in range(rs.n))
    return CartanElement(coeffs, rs.h_basis)


def is_dominant(lam: Weight) -> bool:
    """Integer coordinates a_1 >= ... >= a_n >= 0."""
    c = lam.coords
    if any(x.denominator != 1 for x in c):
        return False
    return all(c[i] >= c[i + 1] for i in range(len(c) - 1)) and c[-1] >= 0


def _require_dominant(rs: RootSystem, lam: Weight):
    if lam.rank != rs.n:
        raise DomainError("weight rank does not match the root system")
    if not is_dominant(lam):
        raise DomainError(f"{lam} is not dominant")


def kac_dimension(rs: RootSystem, lam: Weight) -> int:
    """dim V(lambda) = 2^|R1+| prod_{alpha in R0+} (lambda+rho, alpha)/(rho0, alpha).

    For the even system this is the Weyl dimension formula (rho = rho0, no
    odd roots).
    """
    _require_dominant(rs, lam)
    shifted = lam + rs.rho
    value = Fraction(2 ** len(rs.positive_odd))
    for a in rs.positive_even:
        value *= form(shifted, a.weight) / form(rs.rho0, a.weight)
    if value.denominator != 1 or value <= 0:
        raise ConsistencyError(f"dimension formula gave {value} at {lam}")
    return int(value)


def even_dimension(n: int, k: int) -> int:
    """dim of the irreducible sp(2n)-module of highest weight k delta_1."""
    return comb(k + 2 * n - 1, 2 * n - 1)


@dataclass
class HalfIntegerReport:
    weight: Weight
    values: dict[Root, Fraction]
    violations: list[Root]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_half_integer(rs: RootSystem, lam: Weight) -> HalfIntegerReport:
    """Table of 2(lambda+rho)(h_alpha) over the positive even roots."""
    _require_dominant(rs, lam)
    shifted = lam + rs.rho
    values = {}
    bad = []
    for a in rs.positive_even:
        v = 2 * coroot(rs, a).pair(shifted)
        values[a] = v
        if v.denominator != 1 or v <= 0:
            bad.append(a)
    return HalfIntegerReport(lam, values, bad)


def tuple_dimension(rs: RootSystem, weights) -> int:
    return prod(kac_dimension(rs, w) for w in weights)


# ((rho, gamma), (gamma, gamma)) per type, kept as reference data only.
GAMMA_CONSTANTS = {
    "B(m,n)": lambda m: (-2 * (m - 1) - 1, 4),
    "D(m,n)": lambda m: (-2 * (m - 1), 4),
    "F(4)": lambda: (9, -6),
    "G(3)": lambda: (10, -8),
    "D(2,1;a)": lambda a: (1 + a, -2 * (1 + a)),
}
