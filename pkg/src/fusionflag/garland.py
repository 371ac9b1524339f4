"""Divided-power Garland elements and the relation families they generate.

A Garland element is a rational combination of ordered monomials in the
current algebra; a monomial is a tuple of ``(generator id, t-power, exponent)``
read left to right (so the rightmost factor acts first). Relations are checked
on the cyclic vector of a fusion product, in the associated graded space: an
element of t-degree s annihilates the cyclic vector there iff it maps it into
V^{s-1}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, factorial

from .errors import DomainError, ParameterError
from .fusion import (
    EvalParams,
    FusionFiltration,
    TensorState,
    apply_operator,
    fusion_product,
    garland_on_cyclic,
)
from .modcon import highest_weight_module, sym_power_even
from .rootdata import Weight, build_root_system, coroot
from .superalg import gen_h, gen_label, gen_x, matrix_realization


@dataclass(frozen=True)
class CompositionSet:
    r: int
    s: int
    p: int
    elements: tuple[tuple[int, ...], ...]  # each is (b_p, ..., b_s)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_empty(self) -> bool:
        return not self.elements


def _sequences(r: int, s: int, lo: int, hi: int):
    """Tuples (b_lo..b_hi) of nonnegative ints with sum r and sum k*b_k = s."""
    if lo > hi:
        if r == 0 and s == 0:
            yield ()
        return
    if lo == hi:
        if r * lo == s:
            yield (r,)
        return
    for b in range(r + 1):
        rest_s = s - lo * b
        rest_r = r - b
        # remaining parts are each >= lo + 1 and <= hi
        if rest_s < rest_r * (lo + 1) or rest_s > rest_r * hi:
            continue
        for tail in _sequences(rest_r, rest_s, lo + 1, hi):
            yield (b,) + tail


def composition_set(r: int, s: int, p: int = 0) -> CompositionSet:
    if min(r, s, p) < 0:
        raise DomainError("r, s and p must be nonnegative")
    elements = tuple(sorted(_sequences(r, s, p, s)))
    return CompositionSet(r, s, p, elements)


@dataclass(frozen=True)
class GarlandElement:
    terms: tuple  # ((Fraction, monomial), ...)
    label: str = ""

    @property
    def is_zero(self) -> bool:
        return not any(c for c, _ in self.terms)

    def degree(self) -> int | None:
        degs = {sum(r * e for _, r, e in m) for c, m in self.terms if c}
        return degs.pop() if len(degs) == 1 else None

    def __add__(self, other: "GarlandElement") -> "GarlandElement":
        return GarlandElement(self.terms + other.terms, self.label)

    def scale(self, c) -> "GarlandElement":
        return GarlandElement(tuple((Fraction(c) * a, m) for a, m in self.terms), self.label)


def identity_element() -> GarlandElement:
    return GarlandElement(((Fraction(1), ()),), "1")


def power_element(gen, r: int, e: int) -> GarlandElement:
    """(gen (x) t^r)^e."""
    if e == 0:
        return identity_element()
    return GarlandElement(((Fraction(1), ((gen, r, e),)),), f"({gen_label(gen)}(x)t^{r})^{e}")


def garland_element(alpha: Weight, r: int, s: int, p: int = 0) -> GarlandElement:
    """p x^-_alpha(r, s): sum over pS(r,s) of prod_k (x^-_alpha (x) t^k)^{(b_k)}."""
    gen = gen_x(-alpha)
    cs = composition_set(r, s, p)
    terms = []
    for b in cs.elements:
        mono = []
        coeff = Fraction(1)
        for offset, bk in enumerate(b):
            if bk:
                mono.append((gen, p + offset, bk))
                coeff /= factorial(bk)
        terms.append((coeff, tuple(mono)))
    return GarlandElement(tuple(terms), f"{p}x-[{alpha}]({r},{s})")


# -- relation families ----------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """One generator of a relation family.

    kind is "garland" (alpha, r, s, p), "power" (gen, r, e) or "eigen"
    (gen, r, eigenvalue): the last asks that (gen (x) t^r) v = eigenvalue v.
    """

    kind: str
    data: tuple

    def describe(self) -> str:
        if self.kind == "garland":
            alpha, r, s, p = self.data
            return f"{p}x-_{alpha}({r},{s})"
        if self.kind == "power":
            gen, r, e = self.data
            return f"({gen_label(gen)} t^{r})^{e}"
        gen, r, val = self.data
        return f"{gen_label(gen)} t^{r} - {val}"

    def element(self) -> GarlandElement:
        if self.kind == "garland":
            alpha, r, s, p = self.data
            return garland_element(alpha, r, s, p)
        if self.kind == "power":
            return power_element(*self.data)
        gen, r, val = self.data
        terms = [(Fraction(1), ((gen, r, 1),))]
        if val:
            terms.append((-Fraction(val), ()))
        return GarlandElement(tuple(terms), self.describe())


@dataclass
class RelationSet:
    name: str
    params: dict
    n: int
    even: bool
    generators: list[Relation]
    bounds: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.generators)


FAMILIES = ("K", "I", "N", "Weyl", "TruncWeyl", "Demazure")


def _delta1_pairing(rs, alpha: Weight) -> int:
    return int(coroot(rs, alpha).pair(Weight.delta(rs.n, 1)))


def _check_partition(m) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if not m or any(x < 0 for x in m) or any(m[i] < m[i + 1] for i in range(len(m) - 1)):
        raise ParameterError(f"{m} is not a weakly decreasing tuple of nonnegative integers")
    return m


def garland_condition(m, r: int, s: int, p: int, d1: int) -> bool:
    """s + r >= 1 + r p + sum_{j >= p+1} m_j delta_1(h_alpha)."""
    tail = sum(m[p:]) if p < len(m) else 0
    return s + r >= 1 + r * p + tail * d1


def relation_set(name: str, params: dict, bound_multiplier: int = 1) -> RelationSet:
    """Finite truncation of a relation family.

    K, I, N take params {"n", "m"}; Weyl takes {"n", "N", "k"}; TruncWeyl takes
    {"weight", "N", "k"}; Demazure takes {"level", "weight", "k"}. The last two
    live on osp(1,2) with alpha = 2 delta_1. ``k`` is the number of tensor
    factors of the module the set will be checked against; it fixes how many
    t-powers are listed.
    """
    if name not in FAMILIES:
        raise ParameterError(f"unknown relation family {name!r}")
    mult = int(bound_multiplier)
    if mult < 1:
        raise ParameterError("bound multiplier must be at least 1")
    if name in ("K", "I", "N"):
        return _garland_family(name, int(params.get("n", 1)), _check_partition(params["m"]), mult)
    if name == "Weyl":
        return _weyl_family(int(params.get("n", 1)), int(params["N"]), int(params["k"]), mult)
    if name == "TruncWeyl":
        return _trunc_weyl(int(params["weight"]), int(params["N"]), int(params["k"]), mult)
    return _demazure(int(params["level"]), int(params["weight"]), int(params["k"]), mult)


def _garland_family(name: str, n: int, m: tuple, mult: int) -> RelationSet:
    even = name in ("I", "N")
    rs = build_root_system(n, even=even)
    k = len(m)
    size = sum(m)
    r_max = (size + 1) * mult
    s_max = k * r_max
    p_max = k * mult
    gens = []
    for a in rs.positive_even:
        d1 = _delta1_pairing(rs, a.weight)
        for r in range(1, r_max + 1):
            for s in range(s_max + 1):
                ok_p = [p for p in range(p_max + 1) if garland_condition(m, r, s, p, d1)]
                if not ok_p:
                    continue
                if name == "I":
                    gens.append(Relation("garland", (a.weight, r, s, 0)))
                else:
                    for p in ok_p:
                        gens.append(Relation("garland", (a.weight, r, s, p)))
    return RelationSet(
        name, {"n": n, "m": list(m)}, n, even, gens, {"r_max": r_max, "s_max": s_max, "p_max": p_max}
    )


def _annihilation(rs, k: int, mult: int, lam: Weight, even: bool) -> list[Relation]:
    gens = []
    roots = rs.positive_even if even else rs.positive
    for r in range(k * mult):
        for a in roots:
            gens.append(Relation("eigen", (gen_x(a.weight), r, 0)))
        for i in range(1, rs.n + 1):
            val = rs.pairing(lam, i) if r == 0 else 0
            gens.append(Relation("eigen", (gen_h(i), r, val)))
    return gens


def _weyl_family(n: int, N: int, k: int, mult: int) -> RelationSet:
    rs = build_root_system(n)
    lam = Weight.delta(n, 1, N)
    gens = _annihilation(rs, k, mult, lam, False)
    for a in rs.positive_even:
        e = int(coroot(rs, a).pair(lam)) + 1
        gens.append(Relation("power", (gen_x(-a.weight), 0, e)))
    return RelationSet("Weyl", {"n": n, "N": N}, n, False, gens, {"t_max": k * mult - 1})


def _trunc_weyl(weight: int, N: int, k: int, mult: int) -> RelationSet:
    if N < 1 or weight < 0:
        raise ParameterError("TruncWeyl needs N >= 1 and a nonnegative weight")
    rs = build_root_system(1)
    alpha = Weight.delta(1, 1, 2)
    gens = _annihilation(rs, k, mult, Weight.delta(1, 1, weight), False)
    gens.append(Relation("power", (gen_x(-alpha), 0, weight + 1)))
    basis = matrix_realization(1)
    for r in range(N, max(N, k - 1) + (mult - 1) * k + 1):
        for g in basis.generator_ids():
            gens.append(Relation("eigen", (g, r, 0)))
    return RelationSet("TruncWeyl", {"n": weight, "N": N}, 1, False, gens, {"t_cut": N})


def demazure_range(level: int, weight: int, k: int, mult: int = 1) -> int:
    """Largest t-power listed for the Demazure power relations."""
    return max(k - 1, ceil(weight / level)) * mult


def _demazure(level: int, weight: int, k: int, mult: int) -> RelationSet:
    if level < 1 or weight < 0:
        raise ParameterError("Demazure needs level >= 1 and a nonnegative weight")
    rs = build_root_system(1)
    alpha = Weight.delta(1, 1, 2)
    gens = _annihilation(rs, k, mult, Weight.delta(1, 1, weight), False)
    for r in range(demazure_range(level, weight, k, mult) + 1):
        e = max(0, weight - level * r) + 1
        gens.append(Relation("power", (gen_x(-alpha), r, e)))
    return RelationSet("Demazure", {"level": level, "n": weight}, 1, False, gens, {})


# -- checking ---------------------------------------------------------------------


@dataclass
class RelationReport:
    family: str
    params: dict
    rows: list[dict]

    @property
    def ok(self) -> bool:
        return all(r["residual_norm"] == "zero" for r in self.rows)

    @property
    def failures(self) -> list[dict]:
        return [r for r in self.rows if r["residual_norm"] != "zero"]

    def to_json(self) -> list[dict]:
        return self.rows

    def dumps(self) -> str:
        return json.dumps(self.rows, sort_keys=True)


def evaluate_relation(F: FusionFiltration, rel: Relation, direct: bool = False) -> TensorState:
    """Image of the relation applied to the cyclic vector, in the graded space."""
    if rel.kind == "garland" and not direct:
        alpha, r, s, p = rel.data
        return garland_on_cyclic(F, gen_x(-alpha), r, s, p)
    return apply_operator(F, rel.element())


def check_relations(F: FusionFiltration, S: RelationSet, direct: bool = False) -> RelationReport:
    rows = []
    top = F.top_degree
    for rel in S.generators:
        deg = _relation_degree(rel)
        if deg is not None and deg > top:
            # lands in V^{deg-1}, which is the whole space
            zero = True
        else:
            zero = evaluate_relation(F, rel, direct).is_zero()
        rows.append(
            {
                "family": S.name,
                "params": S.params,
                "generator": rel.describe(),
                "residual_norm": "zero" if zero else "nonzero",
            }
        )
    return RelationReport(S.name, S.params, rows)


def _relation_degree(rel: Relation) -> int | None:
    if rel.kind == "garland":
        return rel.data[2]
    if rel.kind == "power":
        return rel.data[1] * rel.data[2]
    return rel.data[1]


# -- convenience constructors -------------------------------------------------------


def super_fusion(n: int, m, z: EvalParams | None = None) -> FusionFiltration:
    """V(m_1 delta_1) * ... * V(m_k delta_1) for osp(1,2n)."""
    return fusion_product([highest_weight_module(n, int(x)) for x in m], z)


def even_fusion(n: int, m, z: EvalParams | None = None) -> FusionFiltration:
    """The same product of sp(2n)-modules V(m_j delta_1)."""
    return fusion_product([sym_power_even(n, int(x)) for x in m], z)


@dataclass
class SurjectionReport:
    m: tuple
    n: tuple
    comparable: bool
    relations: RelationReport | None

    @property
    def ok(self) -> bool:
        return self.comparable and self.relations is not None and self.relations.ok


def check_surjection_order(m, nn, rank: int = 1, bound_multiplier: int = 1) -> SurjectionReport:
    """Check that K(nn) kills the cyclic vector of the fusion product for m.

    Requires m <= nn in the order defined through r_{beta,l}; this witnesses
    the surjection from the fusion product for nn onto the one for m.
    """
    from .flags import preceq

    m = tuple(sorted((int(x) for x in m), reverse=True))
    nn = tuple(sorted((int(x) for x in nn), reverse=True))
    if len(m) != len(nn) or sum(m) != sum(nn):
        raise ParameterError("tuples must have the same length and total")
    rs = build_root_system(rank)
    lam = [Weight.delta(rank, 1, x) for x in m]
    mu = [Weight.delta(rank, 1, x) for x in nn]
    if not preceq(rs, lam, mu):
        raise ParameterError(f"{m} is not below {nn}")
    F = super_fusion(rank, m)
    S = relation_set("K", {"n": rank, "m": nn}, bound_multiplier)
    return SurjectionReport(m, nn, True, check_relations(F, S))
