"""Evaluation modules, the fusion filtration and graded characters.

The tensor product V_1^{z_1} (x) ... (x) V_k^{z_k} is stored weight space by
weight space. Every operator used here (root vectors and Cartan elements
tensored with t^r) maps weight spaces to weight spaces, and every vector met
while building the filtration is a weight vector, so all linear algebra
happens inside a single weight space.

Generators act on the tensor product through the super coproduct:

    (x (x) t^r)(v_1 (x) ... (x) v_k)
        = sum_j (-1)^{|x|(|v_1|+...+|v_{j-1}|)} z_j^r (v_1 (x) ... x.v_j ... (x) v_k).
"""

from __future__ import annotations

import csv
import io
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial, prod

import numpy as np

from .errors import ConsistencyError, DomainError, ParameterError
from .linalg import ONE, ZERO, Echelon, q, to_fraction, zeros
from .modcon import ModuleRep
from .rootdata import Weight
from .superalg import gen_is_odd, gen_label, matrix_realization


@dataclass(frozen=True)
class EvalParams:
    z: tuple[Fraction, ...]

    def __post_init__(self):
        z = tuple(Fraction(x) for x in self.z)
        if len(set(z)) != len(z):
            raise ParameterError(f"evaluation points must be pairwise distinct, got {z}")
        object.__setattr__(self, "z", z)

    @property
    def k(self) -> int:
        return len(self.z)

    @classmethod
    def default(cls, k: int) -> "EvalParams":
        return cls(tuple(range(k)))


def independence_tuples(k: int) -> list[EvalParams]:
    """(0,1,2,...), (0,-1,2,-3,...) and (1,3,7,15,...)."""
    return [
        EvalParams(tuple(range(k))),
        EvalParams(tuple(i if i % 2 == 0 else -i for i in range(k))),
        EvalParams(tuple(2 ** (i + 1) - 1 for i in range(k))),
    ]


class TensorSpace:
    """Basis, weights and lifted generator actions for a tensor product."""

    def __init__(self, factors: list[ModuleRep]):
        if not factors:
            raise DomainError("need at least one factor")
        n, even = factors[0].n, factors[0].even
        if any(f.n != n or f.even != even for f in factors):
            raise DomainError("all factors must be modules over the same algebra")
        self.factors = list(factors)
        self.k = len(factors)
        self.n = n
        self.even = even
        self.dims = [f.dim for f in factors]
        self.total_dim = prod(self.dims)
        self._fw = [[w.key() for w in f.weights] for f in factors]
        self.spaces: dict[tuple, list[tuple]] = defaultdict(list)
        self.local: dict[tuple, tuple[tuple, int]] = {}
        for idx in product(*(range(d) for d in self.dims)):
            w = tuple(sum(c) for c in zip(*(self._fw[j][i] for j, i in enumerate(idx))))
            self.local[idx] = (w, len(self.spaces[w]))
            self.spaces[w].append(idx)
        self.spaces = dict(self.spaces)
        self._lifted: dict = {}
        self._combined: dict = {}

    def top_index(self) -> tuple:
        return tuple(f.highest_vector for f in self.factors)

    def parity(self, idx) -> int:
        return sum(f.parities[i] for f, i in zip(self.factors, idx)) % 2

    def lifted(self, gen, j: int) -> dict:
        """Action of ``gen`` on factor j: {weight: (target weight, entries)}."""
        key = (gen, j)
        if key in self._lifted:
            return self._lifted[key]
        mat = self.factors[j].matrix(gen)
        odd = gen_is_odd(gen)
        cols = [[(a, mat[a, b]) for a in range(mat.shape[0]) if mat[a, b]] for b in range(mat.shape[1])]
        out = {}
        for w, basis in self.spaces.items():
            entries = []
            target = None
            for src, idx in enumerate(basis):
                sign = -1 if odd and sum(self.factors[i].parities[idx[i]] for i in range(j)) % 2 else 1
                for a, val in cols[idx[j]]:
                    new = idx[:j] + (a,) + idx[j + 1 :]
                    tw, dst = self.local[new]
                    target = tw
                    entries.append((dst, src, val * sign))
            if entries:
                out[w] = (target, entries)
        self._lifted[key] = out
        return out

    def operator(self, gen, r: int, z: EvalParams) -> dict:
        """(gen (x) t^r) as {weight: (target weight, dst array, src array, values)}."""
        key = (gen, r, z.z)
        if key in self._combined:
            return self._combined[key]
        if z.k != self.k:
            raise ParameterError(f"{z.k} evaluation points for {self.k} factors")
        merged: dict = {}
        for j in range(self.k):
            zr = q(z.z[j] ** r)
            if not zr:
                continue
            for w, (tw, entries) in self.lifted(gen, j).items():
                acc = merged.setdefault(w, (tw, {}))[1]
                for dst, src, val in entries:
                    acc[(dst, src)] = acc.get((dst, src), ZERO) + val * zr
        out = {}
        for w, (tw, acc) in merged.items():
            items = [(d, s, v) for (d, s), v in acc.items() if v]
            if items:
                out[w] = (tw, items)
        self._combined[key] = out
        return out

    def apply(self, gen, r: int, z: EvalParams, weight: tuple, vec: np.ndarray):
        """Apply gen (x) t^r to a weight vector; returns (weight, vector) or None."""
        op = self.operator(gen, r, z).get(weight)
        if op is None:
            return None
        tw, items = op
        out = zeros(len(self.spaces[tw]))
        hit = False
        for d, s, v in items:
            c = vec[s]
            if c:
                out[d] += v * c
                hit = True
        if not hit:
            return None
        return tw, out


@dataclass
class TensorState:
    """A weight vector of the tensor product, in local weight-space coordinates."""

    space: TensorSpace
    weight: tuple
    coords: np.ndarray
    degree: int = 0

    @classmethod
    def cyclic(cls, space: TensorSpace) -> "TensorState":
        w, i = space.local[space.top_index()]
        v = zeros(len(space.spaces[w]))
        v[i] = ONE
        return cls(space, w, v, 0)

    @classmethod
    def zero(cls, space: TensorSpace, weight: tuple, degree: int = 0) -> "TensorState":
        size = len(space.spaces.get(weight, ()))
        return cls(space, weight, zeros(size), degree)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def coefficients(self) -> dict:
        """Multi-index -> Fraction, nonzero entries only."""
        basis = self.space.spaces.get(self.weight, [])
        return {basis[i]: to_fraction(c) for i, c in enumerate(self.coords) if c}

    def __add__(self, other: "TensorState") -> "TensorState":
        if other.weight != self.weight:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise DomainError("adding vectors of different weights")
        return TensorState(self.space, self.weight, self.coords + other.coords, max(self.degree, other.degree))

    def scale(self, c) -> "TensorState":
        return TensorState(self.space, self.weight, self.coords * q(c), self.degree)


def current_action(factors, z: EvalParams, x, r: int):
    """The operator x (x) t^r on the tensor product, as a function on TensorState."""
    if r < 0:
        raise DomainError("t-power must be nonnegative")
    space = factors if isinstance(factors, TensorSpace) else TensorSpace(factors)
    if z.k != space.k:
        raise ParameterError(f"{z.k} evaluation points for {space.k} factors")

    def act(state: TensorState) -> TensorState:
        gw = _gen_weight(x, space.n)
        target = tuple(a + b for a, b in zip(state.weight, gw))
        res = space.apply(x, r, z, state.weight, state.coords)
        if res is None:
            return TensorState.zero(space, target, state.degree + r)
        return TensorState(space, res[0], res[1], state.degree + r)

    return act


def _gen_weight(gen, n: int) -> tuple:
    if gen[0] == "h":
        return (0,) * n
    return tuple(gen[1])


# -- the filtration ------------------------------------------------------------


@dataclass
class FusionFiltration:
    space: TensorSpace
    z: EvalParams
    echelons: dict  # weight -> Echelon with levels = filtration degree
    graded_dims: list[int]
    counts: Counter  # (weight, degree) -> multiplicity
    new_vectors: list  # degree -> list of (weight, row)
    complete: bool
    diagnostics: list[str] = field(default_factory=list)

    @property
    def total_dim(self) -> int:
        return sum(self.graded_dims)

    @property
    def top_degree(self) -> int:
        return len(self.graded_dims) - 1

    @property
    def graded_bases(self) -> list[list[TensorState]]:
        return [
            [TensorState(self.space, w, row, d) for w, row in vecs]
            for d, vecs in enumerate(self.new_vectors)
        ]

    def in_lower(self, state: TensorState, degree: int) -> bool:
        """Whether the state lies in V^{degree-1}."""
        ech = self.echelons.get(state.weight)
        if ech is None:
            return state.is_zero()
        return ech.contains(state.coords, below=degree)

    def reduce(self, state: TensorState, degree: int) -> TensorState:
        """Image of the state in V^degree / V^{degree-1}, as a reduced representative."""
        ech = self.echelons.get(state.weight)
        if ech is None:
            return state
        return TensorState(self.space, state.weight, ech.reduce(state.coords, below=degree), degree)


def fusion_filtration(factors, z: EvalParams | None = None, guard: int | None = None) -> FusionFiltration:
    """Degree filtration V^0 (z) <= V^1 (z) <= ... of the cyclic tensor product.

    V^0 is the g-module generated by the tensor product of the highest
    vectors. V^d is spanned by V^{d-1} together with (e (x) t^r) V^{d-r} for
    Chevalley generators e and 1 <= r <= min(d, k-1), closed under g. Powers
    t^r with r >= k reduce to lower powers modulo prod (t - z_j), and g is
    generated by its Chevalley generators, so this is the whole filtration.
    """
    space = factors if isinstance(factors, TensorSpace) else TensorSpace(factors)
    k = space.k
    z = z or EvalParams.default(k)
    if z.k != k:
        raise ParameterError(f"{z.k} evaluation points for {k} factors")
    gens = matrix_realization(space.n, space.even).chevalley_generators()
    if guard is None:
        hw = sum(sum(abs(c) for c in f.highest_weight.key()) for f in space.factors)
        guard = k * int(hw) + 1

    echelons: dict = {}
    counts: Counter = Counter()
    new_vectors: list[list] = []
    total = 0

    def insert(w, vec, level, queue):
        nonlocal total
        ech = echelons.get(w)
        if ech is None:
            ech = echelons[w] = Echelon(len(space.spaces[w]))
        if ech.insert(vec, level):
            row = ech.rows[-1]
            new_vectors[level].append((w, row))
            queue.append((w, row))
            counts[(w, level)] += 1
            total += 1

    def close(queue, level):
        while queue:
            w, vec = queue.pop()
            for g in gens:
                res = space.apply(g, 0, z, w, vec)
                if res is not None:
                    insert(res[0], res[1], level, queue)

    cyc = TensorState.cyclic(space)
    new_vectors.append([])
    queue: list = []
    insert(cyc.weight, cyc.coords, 0, queue)
    close(queue, 0)
    idle = 0
    d = 0
    diagnostics = []
    while total < space.total_dim:
        d += 1
        if d > guard:
            raise ConsistencyError(
                f"filtration exceeded degree bound {guard} at dim {total}/{space.total_dim}"
            )
        new_vectors.append([])
        queue = []
        for r in range(1, min(d, k - 1) + 1):
            for w, vec in list(new_vectors[d - r]):
                for g in gens:
                    res = space.apply(g, r, z, w, vec)
                    if res is not None:
                        insert(res[0], res[1], d, queue)
        close(queue, d)
        if new_vectors[d]:
            idle = 0
        else:
            idle += 1
            if idle >= max(k - 1, 1):
                diagnostics.append(
                    f"cyclicity violated: span stopped at {total} < {space.total_dim}"
                )
                break
    while len(new_vectors) > 1 and not new_vectors[-1]:
        new_vectors.pop()
    graded = [len(v) for v in new_vectors]
    return FusionFiltration(
        space, z, echelons, graded, counts, new_vectors, total == space.total_dim, diagnostics
    )


# -- q-characters --------------------------------------------------------------


@dataclass(frozen=True)
class QCharacter:
    """(weight key, degree) -> multiplicity."""

    table: tuple[tuple[tuple, int, int], ...]

    @classmethod
    def from_counts(cls, counts) -> "QCharacter":
        rows = sorted(
            ((tuple(w), d, m) for (w, d), m in counts.items() if m),
            key=lambda t: (t[1], tuple(-c for c in t[0])),
        )
        return cls(tuple(rows))

    def as_dict(self) -> dict:
        return {(w, d): m for w, d, m in self.table}

    @property
    def total(self) -> int:
        return sum(m for _, _, m in self.table)

    def graded_dims(self) -> list[int]:
        top = max((d for _, d, _ in self.table), default=-1)
        out = [0] * (top + 1)
        for _, d, m in self.table:
            out[d] += m
        return out

    def shift(self, s: int) -> "QCharacter":
        return QCharacter.from_counts({(w, d + s): m for w, d, m in self.table})

    def __add__(self, other: "QCharacter") -> "QCharacter":
        acc = Counter(self.as_dict())
        acc.update(other.as_dict())
        return QCharacter.from_counts(acc)

    def degree_slice(self, d: int) -> dict:
        return {w: m for w, dd, m in self.table if dd == d}

    def rows(self) -> list[dict]:
        return [{"weight": [int(c) for c in w], "degree": d, "mult": m} for w, d, m in self.table]

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["weight", "degree", "mult"])
        for w, d, m in self.table:
            wr.writerow([" ".join(str(c) for c in w), d, m])
        return buf.getvalue()


def graded_character(F: FusionFiltration) -> QCharacter:
    if not F.complete:
        raise ConsistencyError("filtration did not reach the full tensor product")
    return QCharacter.from_counts(F.counts)


@dataclass
class IndependenceReport:
    z_list: list[EvalParams]
    characters: list[QCharacter]

    @property
    def independent(self) -> bool:
        return all(c == self.characters[0] for c in self.characters)


def check_parameter_independence(factors, z_list) -> IndependenceReport:
    space = factors if isinstance(factors, TensorSpace) else TensorSpace(factors)
    chars = [graded_character(fusion_filtration(space, z)) for z in z_list]
    return IndependenceReport(list(z_list), chars)


# -- operators on the fusion product -------------------------------------------


def _monomial_degree(monomial) -> int:
    return sum(r * e for _, r, e in monomial)


def apply_monomial(F: FusionFiltration, monomial, state: TensorState) -> TensorState:
    """Apply an ordered monomial (rightmost factor first) in the tensor product."""
    space = F.space
    w, vec = state.weight, state.coords
    for gen, r, e in reversed(monomial):
        if gen_is_odd(gen) and e >= 2:
            raise DomainError(f"odd generator {gen_label(gen)} raised to power {e}")
        for _ in range(e):
            target = tuple(a + b for a, b in zip(w, _gen_weight(gen, space.n)))
            res = space.apply(gen, r, F.z, w, vec)
            if res is None:
                return TensorState.zero(space, target, state.degree + _monomial_degree(monomial))
            w, vec = res
    return TensorState(space, w, vec, state.degree + _monomial_degree(monomial))


def apply_operator(
    F: FusionFiltration, G, state: TensorState | None = None, graded: bool = True
) -> TensorState:
    """Image of G.state in the associated graded space.

    G is a GarlandElement (terms of coefficient and monomial). All terms must
    have the same t-degree s; the result is reduced modulo V^{d+s-1}, where d is
    the filtration degree of ``state`` (the cyclic vector by default). With
    ``graded=False`` the plain tensor-product image is returned.
    """
    state = state or TensorState.cyclic(F.space)
    terms = [(c, mono) for c, mono in G.terms if c]
    if not terms:
        return TensorState.zero(F.space, state.weight, state.degree)
    degrees = {_monomial_degree(m) for _, m in terms}
    if len(degrees) != 1:
        raise DomainError("terms of different t-degree")
    out = None
    for c, mono in terms:
        part = apply_monomial(F, mono, state).scale(c)
        out = part if out is None else out + part
    deg = state.degree + degrees.pop()
    return F.reduce(out, deg) if graded else out


def garland_on_cyclic(
    F: FusionFiltration, alpha_gen, r: int, s: int, p: int = 0, graded: bool = True
) -> TensorState:
    """p x^-_alpha(r, s) applied to the cyclic vector, via a generating function.

    For an even root vector x acting as X_j on factor j, sum over compositions
    r = r_1 + ... + r_k of prod_j z_j^{p r_j} X_j^{r_j} / r_j! applied to v_j,
    times the coefficient of u^{s - p r} in prod_j (1 - u z_j)^{-r_j}.
    The result is reduced modulo V^{s-1} unless ``graded`` is False.
    """
    space = F.space
    if gen_is_odd(alpha_gen):
        raise DomainError("Garland elements use even root vectors")
    target = tuple(a * r for a in _gen_weight(alpha_gen, space.n))
    top_w = space.local[space.top_index()][0]
    weight = tuple(a + b for a, b in zip(top_w, target))
    out = TensorState.zero(space, weight, s)
    if r == 0:
        if s == 0:
            return TensorState.cyclic(space)
        return out
    if s < p * r:
        return out
    powers = []
    for f in space.factors:
        mat = f.matrix(alpha_gen)
        v = zeros(f.dim)
        v[f.highest_vector] = ONE
        seq = [v]
        while len(seq) <= r:
            v = mat.dot(v)
            if not any(v):
                break
            seq.append(v)
        powers.append(seq)
    z = F.z.z
    if weight not in space.spaces:
        return out
    coords = zeros(len(space.spaces[weight]))
    for comp in _compositions(r, [len(p_) - 1 for p_ in powers]):
        coeff = Fraction(1)
        for zj, rj in zip(z, comp):
            coeff *= zj ** (p * rj) / factorial(rj)
        coeff *= _series_coeff(z, comp, s - p * r)
        if not coeff:
            continue
        vecs = [powers[j][rj] for j, rj in enumerate(comp)]
        supports = [[(i, c) for i, c in enumerate(v) if c] for v in vecs]
        cq = q(coeff)
        for combo in product(*supports):
            idx = tuple(i for i, _ in combo)
            val = cq
            for _, c in combo:
                val = val * c
            _, loc = space.local[idx]
            coords[loc] += val
    state = TensorState(space, weight, coords, s)
    return F.reduce(state, s) if graded else state


def _compositions(r: int, caps: list[int]):
    if not caps:
        if r == 0:
            yield ()
        return
    for first in range(min(r, caps[0]) + 1):
        for rest in _compositions(r - first, caps[1:]):
            yield (first,) + rest


def _series_coeff(z, exps, m: int) -> Fraction:
    """Coefficient of u^m in prod_j (1 - u z_j)^{-e_j}."""
    if m < 0:
        return Fraction(0)
    poly = [Fraction(1)] + [Fraction(0)] * m
    for zj, e in zip(z, exps):
        if e == 0:
            continue
        # (1 - u z)^{-e} = sum_i binom(e+i-1, i) z^i u^i
        series = [Fraction(comb(e + i - 1, i)) * Fraction(zj) ** i for i in range(m + 1)]
        poly = [sum(poly[a] * series[b - a] for a in range(b + 1)) for b in range(m + 1)]
    return poly[m]


def fusion_product(factors, z: EvalParams | None = None) -> FusionFiltration:
    F = fusion_filtration(factors, z)
    if not F.complete:
        raise ConsistencyError("; ".join(F.diagnostics) or "fusion filtration incomplete")
    return F


def weight_of(key) -> Weight:
    return Weight(tuple(key))
