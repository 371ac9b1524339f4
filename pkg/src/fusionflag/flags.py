"""Fusion flags of osp(1,2n) fusion products and the dimension poset.

Partitions are tuples m_1 >= ... >= m_k with an implicit m_{k+1} = 0. The
operator phi_l lowers the first descent at or after position l+1; composing
such operators along a subset {i_1 < ... < i_l} of {0..k-1} gives the
sp(2n) fusion products that appear as subquotients of the flag.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import cache, cmp_to_key
from itertools import combinations, product
from math import prod

from .errors import DomainError, ParameterError
from .fusion import QCharacter, TensorState, apply_operator, graded_character
from .garland import GarlandElement, even_fusion, super_fusion
from .linalg import Echelon
from .rootdata import RootSystem, Weight, build_root_system, coroot, even_dimension, is_dominant, kac_dimension
from .superalg import gen_x


def check_partition(m) -> tuple[int, ...]:
    """Validate a partition: weakly decreasing positive integers."""
    try:
        parts = tuple(int(x) for x in m)
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"not a partition: {m!r}") from exc
    if not parts:
        raise ParameterError("empty partition")
    if any(x <= 0 for x in parts):
        raise ParameterError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ParameterError(f"partition must be weakly decreasing: {parts}")
    return parts


# -- phi operators and flag pieces ------------------------------------------


def phi(ell: int, m) -> tuple[int, ...]:
    """Lower m_p by one, p the first index q >= ell+1 with m_q > m_{q+1}."""
    m = tuple(int(x) for x in m)
    k = len(m)
    if not 0 <= ell < k:
        raise DomainError(f"phi index {ell} out of range for k={k}")
    ext = m + (0,)
    for q in range(ell + 1, k + 1):
        if ext[q - 1] > ext[q]:
            return m[: q - 1] + (m[q - 1] - 1,) + m[q:]
    raise DomainError(f"phi_{ell} undefined on {m}: no descent from position {ell + 1}")


@dataclass(frozen=True)
class FlagPiece:
    indices: tuple[int, ...]
    partition_image: tuple[int, ...]
    degree_shift: int

    def even_dims_product(self, n: int) -> int:
        return prod(even_dimension(n, x) for x in self.partition_image)

    def to_json(self, n: int) -> dict:
        return {
            "indices": list(self.indices),
            "partition_image": list(self.partition_image),
            "degree_shift": self.degree_shift,
            "even_dims_product": self.even_dims_product(n),
        }


def compose_phi(indices, m) -> tuple[int, ...]:
    """phi_{i_1} o ... o phi_{i_l} (m); the last index acts first."""
    out = tuple(m)
    for i in reversed(tuple(indices)):
        out = phi(i, out)
    return out


def flag_pieces(m) -> list[FlagPiece]:
    """All 2^k pieces, one per subset of {0..k-1}, ordered by size then indices."""
    m = check_partition(m)
    k = len(m)
    pieces = []
    for ell in range(k + 1):
        for idx in combinations(range(k), ell):
            img = compose_phi(idx, m)
            if sum(img) != sum(m) - ell or any(img[i] < img[i + 1] for i in range(k - 1)):
                raise DomainError(f"phi composition {idx} left the partitions: {img}")
            pieces.append(FlagPiece(idx, img, sum(idx)))
    return pieces


def flag_table(m, n: int) -> list[dict]:
    return [p.to_json(n) for p in flag_pieces(m)]


def dimension_identity(m, n: int) -> bool:
    """Sum over pieces of the sp(2n) dimensions equals the osp(1,2n) product."""
    m = check_partition(m)
    rs = build_root_system(n)
    lhs = sum(p.even_dims_product(n) for p in flag_pieces(m))
    rhs = prod(kac_dimension(rs, Weight.delta(n, 1, x)) for x in m)
    return lhs == rhs


@cache
def even_qcharacter(n: int, image: tuple[int, ...]) -> QCharacter:
    """q-character of the sp(2n) fusion product for a phi-image.

    Trivial factors (zero parts) do not change the fusion product and are
    dropped; an all-zero image is the trivial module in degree 0.
    """
    parts = tuple(x for x in image if x) or (0,)
    return graded_character(even_fusion(n, parts))


def predicted_qcharacter(m, n: int) -> QCharacter:
    """Sum over flag pieces of q^shift times the even fusion q-character."""
    total = QCharacter.from_counts({})
    for piece in flag_pieces(m):
        total = total + even_qcharacter(n, piece.partition_image).shift(piece.degree_shift)
    return total


@dataclass
class MainTheoremReport:
    m: tuple
    n: int
    predicted: QCharacter
    computed: QCharacter

    @property
    def ok(self) -> bool:
        return self.predicted == self.computed

    def to_json(self) -> dict:
        return {
            "m": list(self.m),
            "n": self.n,
            "equal": self.ok,
            "predicted": self.predicted.rows(),
            "computed": self.computed.rows(),
            "predicted_graded_dims": self.predicted.graded_dims(),
            "computed_graded_dims": self.computed.graded_dims(),
        }


def check_main_theorem(m, n: int) -> MainTheoremReport:
    m = check_partition(m)
    return MainTheoremReport(m, n, predicted_qcharacter(m, n), graded_character(super_fusion(n, m)))


# -- PBW basis for osp(1,2) -------------------------------------------------

READINGS = ("upper-k", "as-written")


def in_S(j, image, reading: str = "upper-k") -> bool:
    """Membership of (j_1..j_k) in the inequality system for a phi-image.

    For 2 <= r <= k+1 and 1 <= s <= r-1 (with j_{k+1} = 0):
        s j_{r-1} + (s+1) j_r + 2 sum_{p=r+1}^{u} j_p <= sum_{p=r-s}^{k} image_p,
    where u = k for "upper-k" and u = s for "as-written" (an empty sum
    whenever s < r+1).
    """
    if reading not in READINGS:
        raise ParameterError(f"unknown reading {reading!r}")
    k = len(image)
    jj = tuple(j) + (0,)
    for r in range(2, k + 2):
        for s in range(1, r):
            upper = k if reading == "upper-k" else s
            lhs = s * jj[r - 2] + (s + 1) * jj[r - 1] + 2 * sum(jj[p - 1] for p in range(r + 1, upper + 1))
            rhs = sum(image[p - 1] for p in range(r - s, k + 1))
            if lhs > rhs:
                return False
    return True


@dataclass(frozen=True)
class PBWElement:
    indices: tuple[int, ...]
    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(p * e for p, e in enumerate(self.exponents)) + sum(self.indices)

    @property
    def weight(self) -> int:
        """Coefficient of delta_1 lost from the highest weight."""
        return 2 * sum(self.exponents) + len(self.indices)

    def monomial(self) -> tuple:
        even = gen_x(Weight.of(-2))
        odd = gen_x(Weight.of(-1))
        mono = [(even, p, e) for p, e in enumerate(self.exponents) if e]
        mono += [(odd, i, 1) for i in self.indices]
        return tuple(mono)


@dataclass
class PBWBasis:
    m: tuple
    reading: str
    elements: list[PBWElement]
    expected: int
    alternative_count: int  # count under the other reading, for the record

    @property
    def count(self) -> int:
        return len(self.elements)

    @property
    def ok(self) -> bool:
        return self.count == self.expected

    def to_json(self) -> dict:
        return {
            "m": list(self.m),
            "reading": self.reading,
            "count": self.count,
            "expected": self.expected,
            "alternative_count": self.alternative_count,
            "ok": self.ok,
        }


def _pbw_elements(m, reading: str) -> list[PBWElement]:
    k = len(m)
    out = []
    for piece in flag_pieces(m):
        img = piece.partition_image
        bound = sum(img)
        for j in product(range(bound + 1), repeat=k):
            if in_S(j, img, reading):
                out.append(PBWElement(piece.indices, j))
    return out


def pbw_basis_osp12(m, reading: str = "upper-k") -> PBWBasis:
    """Enumerate the PBW-type monomials for the osp(1,2) fusion product.

    The default reading takes the inner sum up to k; the displayed range
    (up to s) is counted as well and kept in ``alternative_count``.
    """
    m = check_partition(m)
    other = "as-written" if reading == "upper-k" else "upper-k"
    elements = _pbw_elements(m, reading)
    expected = prod(2 * x + 1 for x in m)
    return PBWBasis(m, reading, elements, expected, len(_pbw_elements(m, other)))


def pbw_independence(basis: PBWBasis) -> bool:
    """Whether the monomials applied to the cyclic vector are independent in gr.

    Images are reduced modulo the lower filtration piece and ranked per
    (weight, degree).
    """
    F = super_fusion(1, basis.m)
    groups: dict = {}
    for el in basis.elements:
        state = apply_operator(F, GarlandElement(((1, el.monomial()),)), TensorState.cyclic(F.space))
        ech = groups.get((state.weight, el.degree))
        if ech is None:
            ech = groups[(state.weight, el.degree)] = Echelon(len(state.coords))
        if not ech.insert(state.coords):
            return False
    return True


# -- the poset on tuples of dominant weights --------------------------------


def _pair(rs: RootSystem, lam: Weight, beta: Weight) -> int:
    v = coroot(rs, beta).pair(lam)
    if v.denominator != 1 or v < 0:
        raise DomainError(f"{lam} paired with h_{beta} gave {v}")
    return int(v)


def r_beta_ell(rs: RootSystem, lam_list, beta: Weight, ell: int) -> int:
    """Minimum over l-subsets of the summed pairings with h_beta."""
    k = len(lam_list)
    if not 1 <= ell <= k:
        raise DomainError(f"l={ell} out of range 1..{k}")
    values = sorted(_pair(rs, lam, beta) for lam in lam_list)
    return sum(values[:ell])


def r_vector(rs: RootSystem, lam_list) -> tuple[int, ...]:
    """All r_{beta,l} over the positive even roots and 1 <= l <= k."""
    out = []
    for beta in rs.positive_even:
        values = sorted(_pair(rs, lam, beta.weight) for lam in lam_list)
        acc = 0
        for v in values:
            acc += v
            out.append(acc)
    return tuple(out)


def _same_total(lam_list, mu_list):
    if len(lam_list) != len(mu_list):
        raise ParameterError("tuples of different length")
    if sum(lam_list[1:], lam_list[0]) != sum(mu_list[1:], mu_list[0]):
        raise ParameterError("tuples with different total weight")


def preceq(rs: RootSystem, lam_list, mu_list) -> bool:
    _same_total(lam_list, mu_list)
    return all(a <= b for a, b in zip(r_vector(rs, lam_list), r_vector(rs, mu_list)))


def equivalent(rs: RootSystem, lam_list, mu_list) -> bool:
    _same_total(lam_list, mu_list)
    return r_vector(rs, lam_list) == r_vector(rs, mu_list)


def dominant_weights_below(lam: Weight) -> list[Weight]:
    """Dominant weights with coordinates between 0 and those of lam."""
    c = [int(x) for x in lam.coords]
    return [Weight(w) for w in product(*(range(x + 1) for x in c)) if is_dominant(Weight(w))]


def dominant_tuples(lam: Weight, k: int) -> list[tuple[Weight, ...]]:
    """P^+(lam, k) up to permutation, each tuple weakly decreasing."""
    if not is_dominant(lam):
        raise DomainError(f"{lam} is not dominant")
    cands = sorted(dominant_weights_below(lam), reverse=True)
    zero = Weight.zero(lam.rank)
    out = []

    def rec(rest: Weight, left: int, start: int, acc: list):
        if left == 0:
            if rest == zero:
                out.append(tuple(acc))
            return
        for i in range(start, len(cands)):
            w = cands[i]
            d = rest - w
            if all(x >= 0 for x in d.coords):
                rec(d, left - 1, i, acc + [w])

    rec(lam, k, 0, [])
    return out


@dataclass
class MonotonicityReport:
    weight: Weight
    k: int
    n: int
    rows: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> list[dict]:
        return [r for r in self.rows if not r["ok"]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def comparable_pairs(self) -> list[tuple]:
        return [(r["lambda"], r["mu"]) for r in self.rows if r["preceq"]]

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["lambda", "mu", "preceq", "equivalent", "dim_lambda", "dim_mu", "ok"])
        for r in self.rows:
            wr.writerow(
                [
                    " | ".join(str(w) for w in r["lambda"]),
                    " | ".join(str(w) for w in r["mu"]),
                    int(r["preceq"]),
                    int(r["equivalent"]),
                    r["dim_lambda"],
                    r["dim_mu"],
                    int(r["ok"]),
                ]
            )
        return buf.getvalue()


def monotonicity_scan(lam: Weight, k: int, n: int) -> MonotonicityReport:
    """Check: lam_tuple <= mu_tuple implies dim products compare, equality iff ~."""
    rs = build_root_system(n)
    if lam.rank != n:
        raise DomainError("weight rank does not match n")
    tuples = dominant_tuples(lam, k)
    dims = {t: prod(kac_dimension(rs, w) for w in t) for t in tuples}
    rvec = {t: r_vector(rs, t) for t in tuples}
    report = MonotonicityReport(lam, k, n)
    for a in tuples:
        for b in tuples:
            le = all(x <= y for x, y in zip(rvec[a], rvec[b]))
            eq = rvec[a] == rvec[b]
            ok = True
            if le:
                ok = dims[a] <= dims[b] and ((dims[a] == dims[b]) == eq)
            report.rows.append(
                {
                    "lambda": a,
                    "mu": b,
                    "preceq": le,
                    "equivalent": eq,
                    "dim_lambda": dims[a],
                    "dim_mu": dims[b],
                    "ok": ok,
                }
            )
    return report


# -- order on strictly increasing index tuples ------------------------------


def _check_increasing(a):
    a = tuple(int(x) for x in a)
    if any(a[i] >= a[i + 1] for i in range(len(a) - 1)):
        raise DomainError(f"index tuple must be strictly increasing: {a}")
    return a


def monomial_cmp(a, b) -> int:
    """-1, 0 or 1 as a precedes, equals or follows b.

    Shorter tuples come first. For equal lengths, a precedes b iff the
    reversed b is lexicographically smaller than the reversed a.
    """
    a = _check_increasing(a)
    b = _check_increasing(b)
    if a == b:
        return 0
    if len(a) != len(b):
        return -1 if len(a) < len(b) else 1
    return -1 if a[::-1] > b[::-1] else 1


monomial_key = cmp_to_key(monomial_cmp)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def partitions(total: int, max_parts: int | None = None, max_part: int | None = None):
    """Partitions of ``total`` in weakly decreasing order, largest first."""
    if max_parts is None:
        max_parts = total
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for a in range(min(total, max_part), 0, -1):
        for rest in partitions(total - a, max_parts - 1, a):
            yield (a,) + rest


def partitions_up_to(size: int, max_parts: int | None = None) -> list[tuple[int, ...]]:
    return [m for t in range(1, size + 1) for m in partitions(t, max_parts)]
