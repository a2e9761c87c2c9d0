"""Root-system engine: Cartan matrices, positive-root enumeration with
heights, exponents, the Coxeter element and its characteristic polynomial,
the derived arithmetic functions, and a brute-force Weyl-group oracle.

Built instances are immutable and freely shareable across workers; building
itself is single-threaded per instance.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd

from .errors import GroupTooLarge, InvalidRank, MethodMismatch, ReconstructionMismatch
from .exactalg import Polynomial, _context
from .linalg import charpoly_int
from .numth import cyclotomic_poly, divisors, mobius, ramanujan_sum

FAMILIES = "ABCDEFG"

DEFAULT_BFS_CAP = 1152

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True)
class RootSystemId:
    family: str
    rank: int

    def __str__(self):
        return f"{self.family}{self.rank}"


def validate_id(rsid):
    fam, n = rsid.family, rsid.rank
    if fam in _MIN_RANK:
        if n < _MIN_RANK[fam]:
            raise InvalidRank(f"{fam} needs rank >= {_MIN_RANK[fam]}, got {n}")
    elif fam == "E":
        if n not in (6, 7, 8):
            raise InvalidRank(f"E needs rank 6, 7 or 8, got {n}")
    elif fam == "F":
        if n != 4:
            raise InvalidRank(f"F needs rank 4, got {n}")
    elif fam == "G":
        if n != 2:
            raise InvalidRank(f"G needs rank 2, got {n}")
    else:
        raise InvalidRank(f"unknown family {fam!r}")


def cartan_matrix(rsid):
    """Integer Cartan matrix; row i is the pairing of all simple roots
    against the i-th simple coroot.

    Conventions: B has the short root last, C the long root last, D the fork
    at the end, E-family the standard numbering with the branch node second.
    These choices affect root coordinates only, never heights.
    """
    validate_id(rsid)
    fam, n = rsid.family, rsid.rank
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j):
        m[i][j] = -1
        m[j][i] = -1

    if fam in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if fam == "B":
            m[n - 1][n - 2] = -2
        elif fam == "C":
            m[n - 2][n - 1] = -2
    elif fam == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif fam == "E":
        chain = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]
        for i, j in chain[: n - 2]:
            bond(i, j)
        bond(1, 3)
    elif fam == "F":
        bond(0, 1)
        bond(1, 2)
        bond(2, 3)
        m[2][1] = -2
    elif fam == "G":
        bond(0, 1)
        m[1][0] = -3
    return m


class RootSystem:
    """A built irreducible root system with all derived invariants.

    Fields follow the engine contract: ``positive_roots`` in simple-root
    coordinates ordered by height, ``h`` the Coxeter number, ``exponents``
    ascending, ``b[k-1]`` the number of positive roots of height k,
    ``m[k]`` the multiplicity of the k-th eigenvalue of the Coxeter element,
    ``e_of_d`` the cyclic factorization exponents, and ``p[k]`` the power
    sums of the Coxeter eigenvalues.
    """

    __slots__ = ("id", "cartan", "positive_roots", "heights", "h",
                 "exponents", "b", "m", "e_of_d", "p", "_coxeter")

    def __init__(self, rsid, cartan, positive_roots, heights, h, exponents,
                 b, m, e_of_d, p):
        self.id = rsid
        self.cartan = cartan
        self.positive_roots = positive_roots
        self.heights = heights
        self.h = h
        self.exponents = exponents
        self.b = b
        self.m = m
        self.e_of_d = e_of_d
        self.p = p
        self._coxeter = None

    def __repr__(self):
        return f"RootSystem({self.id}, h={self.h})"


def _close_positive_roots(cartan):
    """Height-by-height closure from the simple roots.

    A candidate alpha + alpha_i is accepted exactly when p - c > 0, where c
    is the pairing of alpha against the i-th coroot and p is the number of
    steps alpha - alpha_i, alpha - 2*alpha_i, ... that stay inside the set
    built so far (all of which have smaller height, hence are known).
    """
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    known = set(simple)
    levels = [simple]
    current = simple
    while current:
        nxt = set()
        for alpha in current:
            for i in range(n):
                row = cartan[i]
                c = sum(row[j] * alpha[j] for j in range(n) if alpha[j])
                p = 0
                beta = list(alpha)
                while True:
                    beta[i] -= 1
                    if beta[i] < 0 or tuple(beta) not in known:
                        break
                    p += 1
                if p - c > 0:
                    cand = list(alpha)
                    cand[i] += 1
                    nxt.add(tuple(cand))
        current = sorted(nxt)
        if current:
            known.update(current)
            levels.append(current)
    return levels


def build(rsid, *, check=True):
    """Construct the root system and derive every stored invariant."""
    validate_id(rsid)
    n = rsid.rank
    cartan = cartan_matrix(rsid)
    levels = _close_positive_roots(cartan)
    b = [len(level) for level in levels]
    h = len(b) + 1
    roots = []
    heights = []
    for k, level in enumerate(levels, start=1):
        roots.extend(level)
        heights.extend([k] * len(level))

    # Exponents are the conjugate of the height-count partition.
    assert all(b[i] >= b[i + 1] for i in range(len(b) - 1)), "heights not unimodal"
    exponents = [sum(1 for bk in b if bk >= j) for j in range(n, 0, -1)]

    m = [0] * h
    for e in exponents:
        m[e % h] += 1

    divs = divisors(h)
    e_of_d = {}
    for d in divs:
        e_of_d[d] = sum(mobius(dp // d) * m[(h // dp) % h]
                        for dp in divs if dp % d == 0)

    p = [sum(d * e_of_d[d] for d in divisors(gcd(k, h))) for k in range(h)]

    rs = RootSystem(rsid, cartan, roots, heights, h, exponents, b, m, e_of_d, p)
    if check:
        _check_invariants(rs)
    return rs


def _check_invariants(rs):
    n, h, b = rs.id.rank, rs.h, rs.b
    assert b[0] == n, "rank-many simple roots expected at height 1"
    assert len(rs.positive_roots) == n * h // 2
    assert b[-1] == 1, "unique root of maximal height"
    if h >= 3:
        assert b[1] == n - 1

    def b_at(k):
        return b[k - 1] if 1 <= k <= h - 1 else 0

    assert all(b_at(k) + b_at(h + 1 - k) == n for k in range(1, h + 1))
    e = rs.exponents
    assert all(e[k] + e[n - 1 - k] == h for k in range(n))
    assert rs.m[0] == 0 and sum(rs.m) == n
    assert all(b_at(k) == sum(1 for ei in e if ei >= k) for k in range(1, h))
    assert rs.p[0] == n


def multiplicities(rs):
    """Eigenvalue multiplicities m(k) of the Coxeter element, from the
    exponents (each exponent lies in 1..h-1)."""
    m = [0] * rs.h
    for e in rs.exponents:
        m[e % rs.h] += 1
    return m


# -- Coxeter element ---------------------------------------------------------


@dataclass(frozen=True)
class CoxeterElement:
    matrix: tuple
    charpoly: Polynomial


def _reflection_matrix(cartan, i):
    n = len(cartan)
    rows = []
    for k in range(n):
        if k != i:
            rows.append(tuple(1 if j == k else 0 for j in range(n)))
        else:
            rows.append(tuple((1 if j == i else 0) - cartan[i][j] for j in range(n)))
    return tuple(rows)


def mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n))
                 for i in range(n))


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def coxeter_element(rs):
    """Product of the simple reflections in index order, with its exact
    characteristic polynomial.  Cached on the root system."""
    if rs._coxeter is not None:
        return rs._coxeter
    n = rs.id.rank
    mat = mat_identity(n)
    for i in range(n):
        mat = mat_mul(mat, _reflection_matrix(rs.cartan, i))
    charpoly = charpoly_int([list(row) for row in mat])

    power = mat_identity(n)
    for _ in range(rs.h):
        power = mat_mul(power, mat)
    if power != mat_identity(n):
        raise MethodMismatch(f"{rs.id}: Coxeter element order is not h")

    expected = Polynomial((1,))
    for d in divisors(rs.h):
        mult = rs.m[(rs.h // d) % rs.h]
        if mult:
            expected = expected * cyclotomic_poly(d) ** mult
    if charpoly != expected:
        raise MethodMismatch(f"{rs.id}: charpoly does not match eigenvalue data")

    cox = CoxeterElement(mat, charpoly)
    rs._coxeter = cox
    return cox


def factor_exponents(rs):
    """Exponents e(d) of the factorization of the Coxeter characteristic
    polynomial into binomials q**d - 1, by Moebius inversion over the
    divisor lattice; verified by exact reconstruction."""
    h = rs.h
    divs = divisors(h)
    e_of_d = {d: sum(mobius(dp // d) * rs.m[(h // dp) % h]
                     for dp in divs if dp % d == 0) for d in divs}

    num = Polynomial((1,))
    den = Polynomial((1,))
    for d, e in e_of_d.items():
        if e == 0:
            continue
        factor = Polynomial((-1,) + (0,) * (d - 1) + (1,)) ** abs(e)
        if e > 0:
            num = num * factor
        else:
            den = den * factor
    rebuilt = num.divexact(den)
    if rebuilt != coxeter_element(rs).charpoly:
        raise ReconstructionMismatch(f"{rs.id}: e(d) reconstruction failed")
    return e_of_d


def power_sums(rs):
    """Power sums p(k) of the Coxeter eigenvalues, computed from the divisor
    sum over e(d) and cross-checked against the direct root-of-unity sum and
    the Ramanujan-sum transform of m."""
    h = rs.h
    out = [sum(d * rs.e_of_d[d] for d in divisors(gcd(k, h))) for k in range(h)]

    ctx = _context(h)
    for k in range(h):
        acc = [0] * ctx.phi
        for e in rs.exponents:
            row = ctx.powers[(e * k) % h]
            for t, rt in enumerate(row):
                if rt:
                    acc[t] += rt
        if any(acc[1:]) or acc[0] != out[k]:
            raise MethodMismatch(f"{rs.id}: p({k}) disagrees with eigenvalue sum")

    for k in range(h):
        dft = sum(rs.m[(h // d) % h] * ramanujan_sum(d, k) for d in divisors(h))
        if dft != out[k]:
            raise MethodMismatch(f"{rs.id}: p({k}) disagrees with transform of m")
    return out


# -- Weyl group oracle --------------------------------------------------------


def weyl_order(rs):
    out = 1
    for e in rs.exponents:
        out *= e + 1
    return out


def weyl_length_gf_bruteforce(rs, cap=DEFAULT_BFS_CAP):
    """Length generating function by breadth-first search over the Cayley
    graph on the simple reflections; BFS depth equals word length."""
    order = weyl_order(rs)
    if order > cap:
        raise GroupTooLarge(f"|W({rs.id})| = {order} exceeds cap {cap}")
    gens = [_reflection_matrix(rs.cartan, i) for i in range(rs.id.rank)]
    ident = mat_identity(rs.id.rank)
    seen = {ident}
    level = [ident]
    counts = [1]
    while level:
        nxt = []
        for g in level:
            for s in gens:
                gs = mat_mul(g, s)
                if gs not in seen:
                    seen.add(gs)
                    nxt.append(gs)
        if nxt:
            counts.append(len(nxt))
        level = nxt
    assert sum(counts) == order
    return Polynomial(counts)


def weyl_length_gf_product(rs):
    """The two product forms of the length generating function, as exact
    rational functions: over positive roots in terms of heights, and over
    the exponents."""
    from .exactalg import RationalFunction

    counts = Counter()
    for k, bk in enumerate(rs.b, start=1):
        counts[k + 1] += bk
        counts[k] -= bk
    num = Polynomial((1,))
    den = Polynomial((1,))
    for j, c in sorted(counts.items()):
        if c == 0:
            continue
        factor = Polynomial((1,) + (0,) * (j - 1) + (-1,)) ** abs(c)
        if c > 0:
            num = num * factor
        else:
            den = den * factor
    by_heights = RationalFunction(num, den)

    num2 = Polynomial((1,))
    for e in rs.exponents:
        num2 = num2 * Polynomial((1,) + (0,) * e + (-1,))
    den2 = Polynomial((1, -1)) ** rs.id.rank
    by_exponents = RationalFunction(num2, den2)
    return by_heights, by_exponents


# -- catalog -------------------------------------------------------------------


def default_catalog():
    """The default system list: A1-A10, B2-B8, C2-C8, D4-D8, E6-E8, F4, G2."""
    ids = [RootSystemId("A", n) for n in range(1, 11)]
    ids += [RootSystemId("B", n) for n in range(2, 9)]
    ids += [RootSystemId("C", n) for n in range(2, 9)]
    ids += [RootSystemId("D", n) for n in range(4, 9)]
    ids += [RootSystemId("E", n) for n in (6, 7, 8)]
    ids += [RootSystemId("F", 4), RootSystemId("G", 2)]
    return ids


def factorization_string(rs):
    """Render the Coxeter characteristic polynomial as a quotient of
    binomials q**d - 1 according to the signs of e(d)."""
    def fmt(d, e):
        base = "q-1" if d == 1 else f"q^{d}-1"
        return f"({base})" + (f"^{e}" if e > 1 else "")

    items = sorted(rs.e_of_d.items(), key=lambda kv: -kv[0])
    num = "".join(fmt(d, e) for d, e in items if e > 0)
    den = "".join(fmt(d, -e) for d, e in items if e < 0)
    return f"{num}/({den})" if den else num
