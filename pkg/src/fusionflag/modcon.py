"""Finite-dimensional modules V(m delta_1) of osp(1,2n) and V(k delta_1) of sp(2n).

A module is stored as a list of basis vectors, each with a weight and a
parity, together with one exact action matrix per Chevalley basis element.
Action matrices are numpy object arrays of ``gmpy2.mpq``; column ``j`` holds
the image of basis vector ``j``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from .errors import ConsistencyError, DomainError
from .linalg import ONE, ZERO, Echelon, q, zeros
from .rootdata import Weight, build_root_system, coroot, kac_dimension, even_dimension
from .superalg import (
    ChevalleyBasis,
    gen_h,
    gen_is_odd,
    gen_label,
    gen_x,
    labels,
    matrix_realization,
)


@dataclass
class ModuleRep:
    n: int
    even: bool  # True for an sp(2n)-module
    basis_labels: list
    parities: list[int]
    weights: list[Weight]
    action: dict  # GenId -> dim x dim mpq matrix
    highest_vector: int
    name: str = ""
    construction: str = "direct"
    notes: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def highest_weight(self) -> Weight:
        return self.weights[self.highest_vector]

    @property
    def algebra(self) -> ChevalleyBasis:
        return matrix_realization(self.n, self.even)

    def matrix(self, gen) -> np.ndarray:
        try:
            return self.action[gen]
        except KeyError:
            raise DomainError(f"{gen!r} is not a generator of this module") from None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "algebra": "sp" if self.even else "osp",
            "dim": self.dim,
            "dim_even": self.parities.count(0),
            "dim_odd": self.parities.count(1),
            "highest_weight": [str(c) for c in self.highest_weight.key()],
            "construction": self.construction,
            "weights": [
                {"weight": [str(c) for c in w.key()], "parity": p}
                for w, p in zip(self.weights, self.parities)
            ],
        }


def _mpq_matrix(rows) -> np.ndarray:
    size = len(rows)
    m = np.empty((size, len(rows[0]) if size else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            m[i, j] = q(x)
    return m


def _trivial(n: int, even: bool, name: str) -> ModuleRep:
    basis = matrix_realization(n, even)
    action = {}
    for gid in basis.generator_ids():
        z = np.empty((1, 1), dtype=object)
        z[0, 0] = ZERO
        action[gid] = z
    return ModuleRep(n, even, [()], [0], [Weight.zero(n)], action, 0, name=name)


def defining_rep(n: int, even: bool = False) -> ModuleRep:
    """The natural module C^{1|2n} (or C^{2n} for sp(2n))."""
    basis = matrix_realization(n, even)
    labs = labels(n, even)
    weights = []
    for lab in labs:
        w = [0] * n
        if lab:
            w[abs(lab) - 1] = 1 if lab > 0 else -1
        weights.append(Weight(tuple(w)))
    parities = [0 if (lab == 0 or even) else 1 for lab in labs]
    action = {gid: _mpq_matrix(m.entries) for gid, m in basis.elements.items()}
    return ModuleRep(
        n,
        even,
        list(labs),
        parities,
        weights,
        action,
        labs.index(1),
        name=f"{'sp' if even else 'osp'}-defining(n={n})",
    )


def sym_power_even(n: int, k: int) -> ModuleRep:
    """V(k delta_1) of sp(2n), the k-th symmetric power of C^{2n}.

    A matrix X acts on polynomials in y_a as the derivation sum X_ab y_a d/dy_b.
    Basis: monomials, with y_1^k first.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k == 0:
        return _trivial(n, True, f"sp-sym^0(n={n})")
    basis = matrix_realization(n, True)
    labs = labels(n, True)
    size = len(labs)
    monos = sorted(combinations_with_replacement(range(size), k))
    index = {m: i for i, m in enumerate(monos)}
    weights = []
    for m in monos:
        w = [0] * n
        for a in m:
            lab = labs[a]
            w[abs(lab) - 1] += 1 if lab > 0 else -1
        weights.append(Weight(tuple(w)))
    action = {}
    for gid, X in basis.elements.items():
        E = X.entries
        mat = np.empty((len(monos), len(monos)), dtype=object)
        mat.fill(ZERO)
        for j, m in enumerate(monos):
            # derivation: replace one factor y_b by sum_a X_ab y_a
            for pos, b in enumerate(m):
                if pos and m[pos - 1] == b:
                    continue
                mult = m.count(b)
                rest = list(m)
                rest.remove(b)
                for a in range(size):
                    if E[a, b] == 0:
                        continue
                    target = tuple(sorted(rest + [a]))
                    mat[index[target], j] += q(E[a, b]) * mult
        action[gid] = mat
    return ModuleRep(
        n, True, monos, [0] * len(monos), weights, action, 0, name=f"sp-sym^{k}(n={n})"
    )


# -- tensor powers of the defining module ------------------------------------


def _sparse_columns(mat: np.ndarray) -> list[list[tuple[int, object]]]:
    cols = []
    for j in range(mat.shape[1]):
        cols.append([(i, mat[i, j]) for i in range(mat.shape[0]) if mat[i, j]])
    return cols


class _TensorPower:
    """V^{(x)m} with the super tensor action; basis indexed by flat mixed radix."""

    def __init__(self, base: ModuleRep, m: int):
        self.base = base
        self.m = m
        self.d = base.dim
        self.size = self.d**m
        self.cols = {g: _sparse_columns(mat) for g, mat in base.action.items()}

    def digits(self, flat: int) -> list[int]:
        out = []
        for _ in range(self.m):
            flat, r = divmod(flat, self.d)
            out.append(r)
        return out[::-1]

    def flat(self, digits) -> int:
        f = 0
        for x in digits:
            f = f * self.d + x
        return f

    def weight(self, flat: int) -> Weight:
        w = Weight.zero(self.base.n)
        for x in self.digits(flat):
            w = w + self.base.weights[x]
        return w

    def parity(self, flat: int) -> int:
        return sum(self.base.parities[x] for x in self.digits(flat)) % 2

    def apply(self, gen, v: np.ndarray) -> np.ndarray:
        odd = gen_is_odd(gen)
        cols = self.cols[gen]
        out = zeros(self.size)
        for flat in np.nonzero(v)[0]:
            c = v[flat]
            digs = self.digits(int(flat))
            sign = 1
            for j, b in enumerate(digs):
                for a, val in cols[b]:
                    new = list(digs)
                    new[j] = a
                    out[self.flat(new)] += c * val * sign
                if odd and self.base.parities[b]:
                    sign = -sign
        return out


def _span_module(space: _TensorPower, top: int, lowering, gens) -> tuple:
    """Cyclic U(n^-)-span of basis vector ``top``; returns (echelon, action)."""
    ech = Echelon(space.size)
    v = zeros(space.size)
    v[top] = ONE
    ech.insert(v)
    frontier = [ech.rows[0]]
    while frontier:
        nxt = []
        for w in frontier:
            for g in lowering:
                u = space.apply(g, w)
                if ech.insert(u):
                    nxt.append(ech.rows[-1])
        frontier = nxt
    dim = len(ech)
    action = {}
    for g in gens:
        mat = np.empty((dim, dim), dtype=object)
        mat.fill(ZERO)
        for j, row in enumerate(ech.rows):
            coords = ech.coordinates(space.apply(g, row))
            if coords is None:
                raise ConsistencyError(f"span is not stable under {gen_label(g)}")
            for i, c in enumerate(coords):
                mat[i, j] = c
        action[g] = mat
    return ech, action


def highest_weight_module(n: int, m: int) -> ModuleRep:
    """The irreducible osp(1,2n)-module V(m delta_1).

    Built as the cyclic span of the m-th tensor power of the top defining
    vector. Parities are normalised so that the highest vector is even. If the
    span has the wrong dimension, the irreducible quotient is taken instead.
    """
    if not isinstance(m, int) or m < 0:
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")
    rs = build_root_system(n)
    expected = kac_dimension(rs, Weight.delta(n, 1, m))
    if m == 0:
        return _trivial(n, False, f"V(0)(n={n})")
    base = defining_rep(n)
    space = _TensorPower(base, m)
    top = space.flat([base.highest_vector] * m)
    basis = matrix_realization(n)
    lowering = basis.negative_simple()
    ech, action = _span_module(space, top, lowering, basis.generator_ids())
    top_parity = space.parity(top)
    weights = [space.weight(p) for p in ech.pivots]
    parities = [(space.parity(p) - top_parity) % 2 for p in ech.pivots]
    mod = ModuleRep(
        n,
        False,
        [tuple(space.digits(p)) for p in ech.pivots],
        parities,
        weights,
        action,
        0,
        name=f"V({m})(n={n})",
        construction="tensor-span",
    )
    if mod.dim != expected:
        mod = irreducible_quotient(mod)
        mod.notes.append("cyclic span was reducible; radical quotient taken")
        if mod.dim != expected:
            raise ConsistencyError(
                f"V({m} delta_1) for n={n}: got dim {mod.dim}, expected {expected}"
            )
    return mod


def irreducible_quotient(M: ModuleRep) -> ModuleRep:
    """Quotient of the cyclic submodule at the highest vector by its radical.

    The functional f = (coefficient of the highest vector) is closed under
    f -> f o x for all generators x. A vector w lies in the radical of the
    contravariant form iff every such functional vanishes on it, so the span
    F of the functionals is the dual of the irreducible quotient. On the
    coordinates (phi_i(w))_i a generator x acts by the matrix C_x with
    phi_i o x = sum_j C_x[i, j] phi_j.
    """
    dim = M.dim
    ech = Echelon(dim)
    f = zeros(dim)
    f[M.highest_vector] = ONE
    ech.insert(f)
    frontier = [ech.rows[0]]
    gens = list(M.action)
    while frontier:
        nxt = []
        for phi in frontier:
            for g in gens:
                if ech.insert(phi.dot(M.action[g])):
                    nxt.append(ech.rows[-1])
        frontier = nxt
    d = len(ech)
    action = {}
    for g in gens:
        C = np.empty((d, d), dtype=object)
        C.fill(ZERO)
        for i, phi in enumerate(ech.rows):
            coords = ech.coordinates(phi.dot(M.action[g]))
            if coords is None:
                raise ConsistencyError("functional span not closed")
            for j, c in enumerate(coords):
                C[i, j] = c
        action[g] = C
    weights = [M.weights[p] for p in ech.pivots]
    top_parity = M.parities[M.highest_vector]
    parities = [(M.parities[p] - top_parity) % 2 for p in ech.pivots]
    return ModuleRep(
        M.n,
        M.even,
        [M.basis_labels[p] for p in ech.pivots],
        parities,
        weights,
        action,
        0,
        name=M.name,
        construction="radical-quotient",
    )


def weight_character(M: ModuleRep) -> dict:
    return dict(Counter(M.weights))


def verify_module(M: ModuleRep) -> list[str]:
    """Check the representation axioms on all generator pairs; return violations."""
    basis = M.algebra
    rs = basis.rs
    n = M.n
    bad = []
    hs = [M.matrix(gen_h(i)) for i in range(1, n + 1)]
    for i, h in enumerate(hs, 1):
        for j in range(M.dim):
            for k in range(M.dim):
                expect = q(rs.pairing(M.weights[j], i)) if j == k else ZERO
                if h[k, j] != expect:
                    bad.append(f"h{i} is not diagonal with the declared weights")
                    break
    for gid, mat in M.action.items():
        odd = gen_is_odd(gid)
        for i, j in zip(*np.nonzero(mat)):
            if (M.parities[i] != M.parities[j]) != odd:
                bad.append(f"{gen_label(gid)} does not respect the parity grading")
                break
    gens = list(basis.elements)

    def image(a, b):
        """Matrix of [a, b] from the structure constants."""
        wa, wb = a[1] if a[0] == "x" else None, b[1] if b[0] == "x" else None
        zero = np.empty((M.dim, M.dim), dtype=object)
        zero.fill(ZERO)
        if a[0] == "h" and b[0] == "h":
            return zero
        if a[0] == "h":
            return M.matrix(b) * q(rs.pairing(Weight(wb), a[1]))
        if b[0] == "h":
            return M.matrix(a) * (-q(rs.pairing(Weight(wa), b[1])))
        s = Weight(wa) + Weight(wb)
        if all(c == 0 for c in s.coords):
            if rs.find_root(Weight(wa)) in rs.positive:
                coeffs = coroot(rs, Weight(wa)).coeffs
                sign = 1
            else:
                coeffs = coroot(rs, Weight(wb)).coeffs
                # [x-, x+] = -(-1)^{|x||x|}[x+, x-]
                sign = 1 if gen_is_odd(a) else -1
            out = zero
            for i, c in enumerate(coeffs, 1):
                out = out + M.matrix(gen_h(i)) * q(c * sign)
            return out
        c = basis.constants.get((a, b))
        if c is None or c == 0:
            return zero
        return M.matrix(gen_x(s)) * q(c)

    for a in gens:
        for b in gens:
            A, B = M.matrix(a), M.matrix(b)
            sign = -1 if gen_is_odd(a) and gen_is_odd(b) else 1
            lhs = A.dot(B) - B.dot(A) * sign
            if any(lhs.flat != image(a, b).flat):
                bad.append(f"[{gen_label(a)}, {gen_label(b)}] is not represented correctly")
    return bad


# -- presentation relations -------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class PresentationReport:
    n: int
    m: int
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "ok": self.ok,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def _power_kills(M: ModuleRep, gen, e: int, v: np.ndarray) -> bool:
    mat = M.matrix(gen)
    for _ in range(e):
        v = mat.dot(v)
    return not any(v)


def verify_presentation_relations(M: ModuleRep, m: int) -> PresentationReport:
    """Defining relations of V(m delta_1) on its highest vector.

    Besides the stated relations this records tightness: the exponent cannot
    be lowered by one.
    """
    n = M.n
    rs = build_root_system(n, M.even)
    lam = Weight.delta(n, 1, m)
    v = zeros(M.dim)
    v[M.highest_vector] = ONE
    checks = []
    for a in rs.positive:
        g = gen_x(a.weight)
        checks.append(Check(f"{gen_label(g)} v = 0", not any(M.matrix(g).dot(v))))
    for i in range(1, n + 1):
        lhs = M.matrix(gen_h(i)).dot(v)
        expect = v * q(rs.pairing(lam, i))
        checks.append(Check(f"h{i} v = {rs.pairing(lam, i)} v", all(lhs == expect)))
    powers = []
    for i, a in enumerate(rs.simple, 1):
        if not a.is_odd:
            powers.append((a.weight, int(rs.pairing(lam, i))))
    if rs.kac_root is not None and rs.kac_root.weight not in [w for w, _ in powers]:
        powers.append((rs.kac_root.weight, int(coroot(rs, rs.kac_root).pair(lam))))
    for w, e in powers:
        g = gen_x(-w)
        checks.append(Check(f"({gen_label(g)})^{e + 1} v = 0", _power_kills(M, g, e + 1, v)))
        checks.append(
            Check(f"({gen_label(g)})^{e} v != 0", not _power_kills(M, g, e, v), "tightness")
        )
    return PresentationReport(n, m, checks)


def tensor_dims(n: int, parts) -> list[int]:
    rs = build_root_system(n)
    return [kac_dimension(rs, Weight.delta(n, 1, p)) for p in parts]


def even_dims(n: int, parts) -> list[int]:
    return [even_dimension(n, p) for p in parts]


__all__ = [
    "ModuleRep",
    "defining_rep",
    "sym_power_even",
    "highest_weight_module",
    "irreducible_quotient",
    "weight_character",
    "verify_module",
    "verify_presentation_relations",
    "PresentationReport",
    "Check",
]
