"""Independent reference computations used by the tests.

Nothing here reuses the package's linear algebra or tensor machinery: the
fusion oracle works with dense Fraction matrices on the full tensor product
and with every basis element of the algebra (not only Chevalley generators).
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations, product
from math import comb


def rank(rows) -> int:
    """Rank of a list of Fraction vectors by plain Gaussian elimination."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _matvec(mat, v):
    return [sum((mat[i][j] * v[j] for j in range(len(v)) if v[j] != 0), Fraction(0)) for i in range(len(mat))]


def tensor_operator(factors, gen, odd: bool, coeffs):
    """Dense matrix of sum_j coeffs[j] * (1 x .. x gen_j x .. x 1) with super signs."""
    dims = [f.dim for f in factors]
    index = list(product(*(range(d) for d in dims)))
    pos = {t: i for i, t in enumerate(index)}
    N = len(index)
    out = [[Fraction(0)] * N for _ in range(N)]
    mats = [[[Fraction(x) for x in row] for row in f.matrix(gen).tolist()] for f in factors]
    for col, t in enumerate(index):
        for j, f in enumerate(factors):
            if coeffs[j] == 0:
                continue
            sign = -1 if odd and sum(factors[i].parities[t[i]] for i in range(j)) % 2 else 1
            m = mats[j]
            for a in range(dims[j]):
                c = m[a][t[j]]
                if c != 0:
                    s = list(t)
                    s[j] = a
                    out[pos[tuple(s)]][col] += sign * coeffs[j] * c
    return out, index


def brute_fusion(factors, z, gens, odd_of, weight_of):
    """Graded multiplicities {(weight, degree): mult} of the fusion product.

    ``gens`` lists every algebra basis element to use; ``odd_of(gen)`` gives
    its parity; ``weight_of(factor, basis index)`` gives basis weights.
    """
    k = len(factors)
    ops = []
    index = None
    for g in gens:
        for r in range(k):
            mat, index = tensor_operator(factors, g, odd_of(g), [Fraction(x) ** r for x in z])
            ops.append((r, mat))
    N = len(index)
    top = tuple(f.highest_vector for f in factors)
    v0 = [Fraction(0)] * N
    v0[index.index(top)] = Fraction(1)
    weights = [tuple(sum(weight_of(factors[j], t[j])[c] for j in range(k)) for c in range(len(weight_of(factors[0], 0)))) for t in index]

    layers = []  # layers[d] = spanning vectors of V^d
    span = []
    d = 0
    idle = 0
    while True:
        cur = list(span) + ([v0] if d == 0 else [])
        for r, mat in ops:
            if 1 <= r <= d:
                cur += [_matvec(mat, v) for v in layers[d - r]]
        cur = _basis(cur)
        while True:
            grown = cur + [_matvec(mat, v) for r, mat in ops if r == 0 for v in cur]
            nb = _basis(grown)
            if len(nb) == len(cur):
                break
            cur = nb
        idle = idle + 1 if d and len(cur) == len(span) else 0
        layers.append(cur)
        if len(cur) == N or idle >= k:
            break
        span = cur
        d += 1
    counts = Counter()
    prev = Counter()
    for dd, layer in enumerate(layers):
        now = Counter()
        for w in set(weights):
            cols = [i for i in range(N) if weights[i] == w]
            now[w] = rank([[v[i] for i in cols] for v in layer])
        for w in now:
            if now[w] - prev[w]:
                counts[(w, dd)] = now[w] - prev[w]
        prev = now
    return counts, len(layers[-1]), N


def _basis(vectors):
    out = []
    for v in vectors:
        if rank(out + [v]) > len(out):
            out.append(v)
    return out


def sl2_pair_character(a: int, b: int) -> dict:
    """Graded sl2 character of V(a)*V(b): V(a+b-2d) in degree d, d=0..min(a,b)."""
    out = Counter()
    for d in range(min(a, b) + 1):
        top = a + b - 2 * d
        for w in range(-top, top + 1, 2):
            out[((w,), d)] += 1
    return dict(out)


def osp_dimension_via_restriction(n: int, m: int) -> int:
    """V(m delta_1) restricts to V_sp(m delta_1) + V_sp((m-1) delta_1)."""
    even = comb(m + 2 * n - 1, 2 * n - 1)
    odd = comb(m - 1 + 2 * n - 1, 2 * n - 1) if m >= 1 else 0
    return even + odd


def sym_weights(n: int, m: int) -> Counter:
    """Weights of the m-th symmetric power of C^{2n} (monomials in y_{+-i})."""
    letters = [tuple(1 if c == i else 0 for c in range(n)) for i in range(n)]
    letters += [tuple(-1 if c == i else 0 for c in range(n)) for i in range(n)]
    out = Counter()
    for mono in _multisets(len(letters), m):
        w = tuple(sum(letters[i][c] for i in mono) for c in range(n))
        out[w] += 1
    return out


def _multisets(size: int, m: int):
    if m == 0:
        yield ()
        return

    def rec(start, left):
        if left == 0:
            yield ()
            return
        for i in range(start, size):
            for rest in rec(i, left - 1):
                yield (i,) + rest

    yield from rec(0, m)


def r_beta_ell_bruteforce(values, ell: int) -> int:
    """Min over ell-subsets of the given pairings."""
    return min(sum(c) for c in combinations(values, ell))


def precedes_by_definition(j, i) -> bool:
    """(j_s..j_1) before (i_l..i_1): shorter first, else reversed i lex-smaller than reversed j."""
    if len(j) != len(i):
        return len(j) < len(i)
    return tuple(reversed(i)) < tuple(reversed(j))


def compositions_bruteforce(r: int, s: int, p: int = 0) -> set:
    """Tuples (b_p..b_s) of nonnegative integers, sum b = r, sum j b_j = s."""
    out = set()
    for bs in product(range(r + 1), repeat=s - p + 1):
        if sum(bs) == r and sum((p + idx) * b for idx, b in enumerate(bs)) == s:
            out.add(bs)
    return out


def kac_dimension_n1(m: int) -> int:
    return 2 * m + 1
