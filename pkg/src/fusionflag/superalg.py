"""Matrix realisation of osp(1,2n) (and of its even part sp(2n)).

Rows and columns of the (2n+1)x(2n+1) matrices are labelled
0, 1, ..., n, -1, ..., -n and stored in that order. Label 0 spans the even
line of C^{1|2n}; the labels +-i are odd. The even part sp(2n) is realised on
the 2n labels +-i alone.

Generator ids are plain tuples: ``("x", coords)`` is the root vector of the
root with delta-coordinates ``coords`` (positive roots give x^+, negative
roots x^-), and ``("h", i)`` is the Cartan element h_i (1-based).
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import DomainError
from .rootdata import Root, RootSystem, Weight, build_root_system, coroot

GenId = tuple


def gen_x(weight: Weight) -> GenId:
    return ("x", weight.key())


def gen_h(i: int) -> GenId:
    return ("h", i)


def gen_weight(gen: GenId, n: int) -> Weight:
    if gen[0] == "h":
        return Weight.zero(n)
    return Weight(gen[1])


def gen_is_odd(gen: GenId) -> bool:
    """Root vectors of the delta_p-type roots are odd (coordinate sum is odd)."""
    return gen[0] == "x" and sum(gen[1]) % 2 == 1


def gen_label(gen: GenId) -> str:
    if gen[0] == "h":
        return f"h{gen[1]}"
    coords = gen[1]
    positive = next(c for c in coords if c != 0) > 0
    w = ",".join(str(c if positive else -c) for c in coords)
    return f"x{'+' if positive else '-'}[{w}]"


def labels(n: int, even: bool = False) -> list[int]:
    base = list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
    return base if even else [0] + base


class SuperMatrix:
    """Square matrix over Q with a parity attached to each row/column label."""

    __slots__ = ("entries", "index_parity")

    def __init__(self, entries: np.ndarray, index_parity: tuple[int, ...]):
        self.entries = entries
        self.index_parity = index_parity

    @classmethod
    def zero(cls, index_parity) -> "SuperMatrix":
        size = len(index_parity)
        e = np.empty((size, size), dtype=object)
        e.fill(Fraction(0))
        return cls(e, tuple(index_parity))

    @property
    def size(self) -> int:
        return len(self.index_parity)

    def _like(self, entries) -> "SuperMatrix":
        return SuperMatrix(entries, self.index_parity)

    def _mask(self, par: int) -> np.ndarray:
        p = np.array(self.index_parity)
        return (p[:, None] + p[None, :]) % 2 == par

    def even_part(self) -> "SuperMatrix":
        e = self.entries.copy()
        e[~self._mask(0)] = Fraction(0)
        return self._like(e)

    def odd_part(self) -> "SuperMatrix":
        e = self.entries.copy()
        e[~self._mask(1)] = Fraction(0)
        return self._like(e)

    @property
    def parity(self) -> str:
        even = self.even_part().is_zero()
        odd = self.odd_part().is_zero()
        if even and odd:
            return "zero"
        if odd:
            return "even"
        if even:
            return "odd"
        return "mixed"

    def is_zero(self) -> bool:
        return not any(x != 0 for x in self.entries.flat)

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        return self._like(self.entries + other.entries)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        return self._like(self.entries - other.entries)

    def __neg__(self) -> "SuperMatrix":
        return self._like(-self.entries)

    def scale(self, c) -> "SuperMatrix":
        c = Fraction(c)
        return self._like(self.entries * c)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        return self._like(self.entries.dot(other.entries))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.index_parity == other.index_parity and (self - other).is_zero()

    __hash__ = None

    def _check(self, other: "SuperMatrix"):
        if self.index_parity != other.index_parity:
            raise DomainError("size mismatch between super matrices")

    def supertrace(self) -> Fraction:
        return sum(
            (self.entries[i, i] * (-1 if p else 1) for i, p in enumerate(self.index_parity)),
            Fraction(0),
        )

    def ratio_to(self, other: "SuperMatrix") -> Fraction | None:
        """c with self == c * other, or None if not proportional (other nonzero)."""
        flat_o = list(other.entries.flat)
        idx = next((i for i, x in enumerate(flat_o) if x != 0), None)
        if idx is None:
            return None
        c = Fraction(list(self.entries.flat)[idx]) / flat_o[idx]
        return c if self == other.scale(c) else None

    def to_lists(self) -> list[list[Fraction]]:
        return [[Fraction(x) for x in row] for row in self.entries]


def matrix_unit(index_parity, pos: dict, a: int, b: int) -> SuperMatrix:
    m = SuperMatrix.zero(index_parity)
    m.entries[pos[a], pos[b]] = Fraction(1)
    return m


def bracket(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """Superbracket xy - (-1)^{|x||y|} yx, extended bilinearly over parity parts."""
    if x.index_parity != y.index_parity:
        raise DomainError("size mismatch between super matrices")
    out = SuperMatrix.zero(x.index_parity)
    for px, xx in ((0, x.even_part()), (1, x.odd_part())):
        if xx.is_zero():
            continue
        for py, yy in ((0, y.even_part()), (1, y.odd_part())):
            if yy.is_zero():
                continue
            sign = -1 if px and py else 1
            out = out + (xx @ yy) - (yy @ xx).scale(sign)
    return out


def in_algebra(m: SuperMatrix, n: int, even: bool = False) -> bool:
    """Block symmetry conditions of osp(1,2n) (or sp(2n) when ``even``)."""
    pos = {lab: i for i, lab in enumerate(labels(n, even))}
    e = m.entries

    def at(a, b):
        return e[pos[a], pos[b]]

    if not even:
        if at(0, 0) != 0:
            return False
        for i in range(1, n + 1):
            if at(i, 0) != -at(0, -i) or at(-i, 0) != at(0, i):
                return False
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if at(-i, -j) != -at(j, i):
                return False
            if at(i, -j) != at(j, -i) or at(-i, j) != at(-j, i):
                return False
    return True


@dataclass
class ChevalleyBasis:
    rs: RootSystem
    elements: dict  # GenId -> SuperMatrix
    constants: dict  # (GenId, GenId) -> Fraction

    @property
    def n(self) -> int:
        return self.rs.n

    @property
    def even(self) -> bool:
        return not self.rs.is_super

    def x(self, weight: Weight) -> SuperMatrix:
        return self.elements[gen_x(weight)]

    def h(self, i: int) -> SuperMatrix:
        return self.elements[gen_h(i)]

    def cartan_matrix(self, coeffs) -> SuperMatrix:
        out = SuperMatrix.zero(self.h(1).index_parity)
        for i, c in enumerate(coeffs, 1):
            out = out + self.h(i).scale(c)
        return out

    def generator_ids(self) -> list[GenId]:
        return list(self.elements)

    def chevalley_generators(self) -> list[GenId]:
        """x^+ and x^- of the simple roots."""
        out = []
        for a in self.rs.simple:
            out.append(gen_x(a.weight))
            out.append(gen_x(-a.weight))
        return out

    def negative_simple(self) -> list[GenId]:
        return [gen_x(-a.weight) for a in self.rs.simple]


def _height(rs: RootSystem, w: Weight) -> Fraction:
    return sum(rs.simple_coefficients(w))


def _primitive_scale(m: SuperMatrix) -> Fraction:
    """Positive c such that c*m is an integer matrix with coprime entries."""
    vals = [Fraction(x) for x in m.entries.flat if x != 0]
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    g = 0
    for v in vals:
        g = gcd(g, abs(int(v * den)))
    return Fraction(den, g)


def _simple_generators(n: int, even: bool):
    lab = labels(n, even)
    par = tuple(0 if (l == 0 or even) else 1 for l in lab)
    pos = {l: i for i, l in enumerate(lab)}

    def E(a, b):
        return matrix_unit(par, pos, a, b)

    plus, minus = {}, {}
    for r in range(1, n):
        plus[r] = E(r, r + 1) - E(-(r + 1), -r)
        minus[r] = E(r + 1, r) - E(-r, -(r + 1))
    if even:
        plus[n] = E(n, -n)
        minus[n] = E(-n, n)
    else:
        plus[n] = (E(n, 0) - E(0, -n)).scale(2)
        minus[n] = E(-n, 0) + E(0, n)
    hprime = {j: E(j, j) - E(-j, -j) for j in range(1, n + 1)}
    return par, plus, minus, hprime


def matrix_realization(n: int, even: bool = False) -> ChevalleyBasis:
    """Chevalley basis of osp(1,2n) (or sp(2n)) realised by matrices.

    The result is built once per (n, even); callers get their own dicts, so
    editing a returned basis does not touch the cached one.
    """
    base = _matrix_realization(n, even)
    return ChevalleyBasis(base.rs, dict(base.elements), dict(base.constants))


@lru_cache(maxsize=None)
def _matrix_realization(n: int, even: bool) -> ChevalleyBasis:
    rs = build_root_system(n, even=even)
    par, plus, minus, hprime = _simple_generators(n, even)
    elements = {}
    for i in range(1, n + 1):
        h = SuperMatrix.zero(par)
        for j, c in enumerate(rs.h_basis[i - 1], 1):
            if c:
                h = h + hprime[j].scale(c)
        elements[gen_h(i)] = h

    pos_plus, pos_minus = {}, {}
    for i, a in enumerate(rs.simple, 1):
        pos_plus[a.weight] = plus[i]
        pos_minus[a.weight] = minus[i]
    simple_w = [a.weight for a in rs.simple]
    for a in sorted(rs.positive, key=lambda r: (_height(rs, r.weight), rs.positive.index(r))):
        w = a.weight
        if w in pos_plus:
            continue
        i = next(i for i, s in enumerate(simple_w) if (w - s) in pos_plus)
        rest = w - simple_w[i]
        X = bracket(pos_plus[simple_w[i]], pos_plus[rest])
        Y = bracket(pos_minus[simple_w[i]], pos_minus[rest])
        Y = Y.scale(_primitive_scale(Y))
        h_alpha = _cartan_from(elements, coroot(rs, a).coeffs, par)
        c = h_alpha.ratio_to(bracket(X, Y))
        if c is None:
            raise AssertionError(f"[x+, x-] not proportional to h for {w}")
        pos_plus[w] = X.scale(c)
        pos_minus[w] = Y
    for a in rs.positive:
        elements[gen_x(a.weight)] = pos_plus[a.weight]
        elements[gen_x(-a.weight)] = pos_minus[a.weight]
    base = ChevalleyBasis(rs, elements, {})
    base_constants = structure_constants(base)
    exps = _integral_rescaling(rs, base_constants)
    for a in rs.positive:
        s = Fraction(2) ** exps[a.weight]
        elements[gen_x(a.weight)] = pos_plus[a.weight].scale(s)
        elements[gen_x(-a.weight)] = pos_minus[a.weight].scale(1 / s)
    basis = ChevalleyBasis(rs, elements, {})
    basis.constants.update(structure_constants(basis))
    return basis


_EXPONENTS = (0, 1, -1, 2, -2, 3, -3)


def _integral_rescaling(rs: RootSystem, base_constants: dict) -> dict:
    """Exponents e_alpha with x^+ -> 2^e x^+, x^- -> 2^-e x^- making every c integral.

    Simple roots keep e = 0. Depth-first search in height order, preferring
    small |e| (then positive); the first consistent assignment is returned.
    Such rescalings leave [x^+, x^-] = h_alpha intact and act on the constants
    by c_{a,b} -> c_{a,b} s_a s_b / s_{a+b}.
    """
    simple = {a.weight for a in rs.simple}
    order = sorted(
        (a.weight for a in rs.positive if a.weight not in simple),
        key=lambda w: (_height(rs, w), [a.weight for a in rs.positive].index(w)),
    )
    positive = {a.weight for a in rs.positive}
    pairs = []
    for (ga, gb), c in base_constants.items():
        pairs.append((Weight(ga[1]), Weight(gb[1]), c))

    def sign_key(w):
        return (w, 1) if w in positive else (-w, -1)

    def check(exps):
        for a, b, c in pairs:
            keys = [sign_key(a), sign_key(b), sign_key(a + b)]
            if any(k[0] not in exps for k in keys):
                continue
            val = c
            for (w, sg), power in zip(keys, (1, 1, -1)):
                val *= Fraction(2) ** (sg * power * exps[w])
            if val == 0 or val.denominator != 1:
                return False
        return True

    exps = {w: 0 for w in simple}

    def search(i):
        if i == len(order):
            return True
        for e in _EXPONENTS:
            exps[order[i]] = e
            if check(exps) and search(i + 1):
                return True
        del exps[order[i]]
        return False

    if not check(exps) or not search(0):
        raise AssertionError("no integral rescaling of the root vectors found")
    return exps


def _cartan_from(elements, coeffs, par) -> SuperMatrix:
    out = SuperMatrix.zero(par)
    for i, c in enumerate(coeffs, 1):
        out = out + elements[gen_h(i)].scale(c)
    return out


def structure_constants(basis: ChevalleyBasis) -> dict:
    """c_{alpha,beta} for all root pairs with alpha+beta a root."""
    out = {}
    roots = [a.weight for a in basis.rs.roots]
    for a in roots:
        for b in roots:
            s = a + b
            if s not in roots:
                continue
            br = bracket(basis.x(a), basis.x(b))
            out[(gen_x(a), gen_x(b))] = br.ratio_to(basis.x(s)) if not br.is_zero() else Fraction(0)
    return out


def root_vector(basis: ChevalleyBasis, alpha: Root | Weight) -> SuperMatrix:
    w = alpha.weight if isinstance(alpha, Root) else alpha
    gid = gen_x(w)
    if gid not in basis.elements:
        raise DomainError(f"{w} is not a root")
    return basis.elements[gid]


def verify_chevalley(basis: ChevalleyBasis) -> list[str]:
    """Exhaustive check of the Chevalley axioms; returns the violations."""
    rs = basis.rs
    n = rs.n
    bad = []
    from .linalg import rank

    hs = [basis.h(i) for i in range(1, n + 1)]
    for i, h in enumerate(hs, 1):
        off = h.entries.copy()
        np.fill_diagonal(off, Fraction(0))
        if any(x != 0 for x in off.flat):
            bad.append(f"h{i} is not diagonal")
    if rank([list(h.entries.flat) for h in hs]) != n:
        bad.append("h_1..h_n are not linearly independent")
    for i in range(n):
        for j in range(n):
            if not bracket(hs[i], hs[j]).is_zero():
                bad.append(f"[h{i + 1}, h{j + 1}] != 0")
    for a in rs.positive:
        for sign in (1, -1):
            w = a.weight * sign
            x = basis.x(w)
            for i in range(1, n + 1):
                expect = x.scale(rs.pairing(w, i))
                if bracket(hs[i - 1], x) != expect:
                    bad.append(f"[h{i}, x{w}] != {rs.pairing(w, i)} x{w}")
        h_alpha = basis.cartan_matrix(coroot(rs, a).coeffs)
        if bracket(basis.x(a.weight), basis.x(-a.weight)) != h_alpha:
            bad.append(f"[x+, x-] != h_alpha for {a.weight}")
    roots = [a.weight for a in rs.roots]
    for a in roots:
        for b in roots:
            if a == -b:
                continue
            br = bracket(basis.x(a), basis.x(b))
            s = a + b
            if s in roots:
                c = br.ratio_to(basis.x(s))
                if c is None or c == 0 or c.denominator != 1:
                    bad.append(f"c({a},{b}) = {c} is not a nonzero integer")
            elif not br.is_zero():
                bad.append(f"[x{a}, x{b}] != 0 although {s} is not a root")
    for gid, m in basis.elements.items():
        if not in_algebra(m, n, basis.even):
            bad.append(f"{gen_label(gid)} is not in the algebra")
        expected = "odd" if gen_is_odd(gid) else "even"
        if m.parity != expected:
            bad.append(f"{gen_label(gid)} has parity {m.parity}")
    return bad


def random_element(basis: ChevalleyBasis, rng: random.Random, parity: str | None = None) -> SuperMatrix:
    """Random integer combination of basis elements of the given parity."""
    out = None
    for gid, m in basis.elements.items():
        odd = gen_is_odd(gid)
        if parity == "even" and odd or parity == "odd" and not odd:
            continue
        term = m.scale(rng.randint(-3, 3))
        out = term if out is None else out + term
    return out


def spot_check_identities(basis: ChevalleyBasis, rng: random.Random, samples: int = 10) -> list[str]:
    """Super Jacobi identity and supertrace invariance on random homogeneous triples."""
    bad = []
    parities = ("even",) if basis.even else ("even", "odd")
    for t in range(samples):
        pars = [rng.choice(parities) for _ in range(3)]
        x, y, z = (random_element(basis, rng, p) for p in pars)
        px, py = (int(p == "odd") for p in pars[:2])
        lhs = bracket(x, bracket(y, z))
        rhs = bracket(bracket(x, y), z) + bracket(y, bracket(x, z)).scale((-1) ** (px * py))
        if lhs != rhs:
            bad.append(f"super Jacobi fails on sample {t} with parities {pars}")
        if (bracket(x, y) @ z).supertrace() != (x @ bracket(y, z)).supertrace():
            bad.append(f"supertrace invariance fails on sample {t} with parities {pars}")
    return bad


def constants_csv(basis: ChevalleyBasis) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha", "beta", "c"])
    for (a, b), c in sorted(basis.constants.items(), key=lambda kv: (kv[0][0][1], kv[0][1][1])):
        w.writerow([_coords(a[1]), _coords(b[1]), str(c)])
    return buf.getvalue()


def _coords(c) -> str:
    return "[" + ",".join(str(x) for x in c) + "]"
