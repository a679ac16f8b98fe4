"""Exact projective geometry of the lines, independent of the residue rules.

Every coefficient lives in Z[x]/(x^(2d) - 1), with x standing for a primitive
2d-th root of unity zeta (so eta = zeta^2 and v = zeta^c').  A quantity is
zero in the cyclotomic field iff its representative is divisible by the
cyclotomic polynomial Phi_2d.  No floating point is used anywhere.

Lines of L^0 are labelled so that L^0_{k,i} = Z(y - eta^k x, w - eta^i z).
This is the labelling under which the L^0 incidence rules in
:func:`fermatlines.lines.meets` hold; the other two families are
L^1_{k,i} = Z(x - eta^(k+i) z, y - eta^i w) and
L^2_{k,i} = Z(x - v eta^i w, y - v eta^(k+i) z).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import NamedTuple, Sequence

from .errors import IdenticalLineError, InvalidLineError, InvalidPrimeError
from .lines import LineId, check_line, enumerate_lines, meets
from .residue import SurfaceParams

Poly = list[int]  # integer coefficients, lowest degree first


def _trim(p: Poly) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for x, ca in enumerate(a):
        if ca:
            for y, cb in enumerate(b):
                out[x + y] += ca * cb
    return _trim(out)


def poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[Poly, Poly]:
    """Division by a monic integer polynomial; exact over Z."""
    den = _trim(list(den))
    if not den or den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = _trim(list(num))
    if len(rem) < len(den):
        return [], rem
    quot = [0] * (len(rem) - len(den) + 1)
    for shift in range(len(rem) - len(den), -1, -1):
        coef = rem[shift + len(den) - 1]
        if coef:
            quot[shift] = coef
            for x, cd in enumerate(den):
                rem[shift + x] -= coef * cd
    return _trim(quot), _trim(rem[: len(den) - 1])


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    den: Poly = [1]
    for m in range(1, n):
        if n % m == 0:
            den = poly_mul(den, _cyclotomic(m))
    quot, rem = poly_divmod(num, den)
    assert not rem
    return tuple(quot)


def cyclotomic_polynomial(n: int) -> Poly:
    """Phi_n as a coefficient list, from x^n - 1 = prod_{m | n} Phi_m."""
    if n < 1:
        raise ValueError(f"cyclotomic polynomial needs n >= 1, got {n}")
    return list(_cyclotomic(n))


class CycloElem:
    """Element of Z[x]/(x^n - 1), stored sparsely as {exponent: coefficient}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[int, int] | None = None):
        self.n = n
        self.terms = {e % n: c for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, n: int, exponent: int, coef: int = 1) -> "CycloElem":
        return cls(n, {exponent % n: coef})

    @classmethod
    def const(cls, n: int, value: int) -> "CycloElem":
        return cls(n, {0: value})

    def _merge(self, other: "CycloElem", sign: int) -> "CycloElem":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + sign * c
        return CycloElem(self.n, out)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return CycloElem(self.n, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloElem(self.n, {e: c * other for e, c in self.terms.items()})
        out: dict[int, int] = {}
        n = self.n
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1 + e2) % n
                out[e] = out.get(e, 0) + c1 * c2
        return CycloElem(n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycloElem":
        result = CycloElem.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_structurally_zero(self) -> bool:
        return not self.terms

    def to_poly(self) -> Poly:
        out = [0] * self.n
        for e, c in self.terms.items():
            out[e] = c
        return _trim(out)

    def is_zero(self) -> bool:
        """Zero in Q(zeta_n), i.e. the representative is divisible by Phi_n."""
        if not self.terms:
            return True
        _, rem = poly_divmod(self.to_poly(), _cyclotomic(self.n))
        return not rem

    def evaluate_mod(self, g: int, p: int) -> int:
        return sum(c * pow(g, e, p) for e, c in self.terms.items()) % p

    def __repr__(self):
        body = " + ".join(f"{c}*z^{e}" for e, c in sorted(self.terms.items())) or "0"
        return f"CycloElem(n={self.n}: {body})"


Plane = tuple[CycloElem, CycloElem, CycloElem, CycloElem]  # coefficients of x, y, z, w


class PlanePair(NamedTuple):
    first: Plane
    second: Plane


def v_exponent(params: SurfaceParams) -> int:
    """Odd c' with v = zeta^c' and v^2 = eta^c (c' = d for odd d canonically)."""
    d, c = params.d, params.c
    return c if c % 2 else c + d


def _plane(n: int, coefs: dict[int, tuple[int, int]]) -> Plane:
    # coefs: coordinate index -> (sign, zeta exponent)
    out = []
    for idx in range(4):
        if idx in coefs:
            sign, e = coefs[idx]
            out.append(CycloElem.monomial(n, e, sign))
        else:
            out.append(CycloElem(n))
    return tuple(out)


X, Y, Z, W = range(4)


def planes_of(params: SurfaceParams, line: LineId) -> PlanePair:
    check_line(params, line)
    n = 2 * params.d
    s, k, i = line
    if s == 0:
        first = _plane(n, {Y: (1, 0), X: (-1, 2 * k)})
        second = _plane(n, {W: (1, 0), Z: (-1, 2 * i)})
    elif s == 1:
        first = _plane(n, {X: (1, 0), Z: (-1, 2 * (k + i))})
        second = _plane(n, {Y: (1, 0), W: (-1, 2 * i)})
    else:
        cp = v_exponent(params)
        first = _plane(n, {X: (1, 0), W: (-1, cp + 2 * i)})
        second = _plane(n, {Y: (1, 0), Z: (-1, cp + 2 * (k + i))})
    return PlanePair(first, second)


def plane_pair_from_ints(params: SurfaceParams, first: Sequence[int], second: Sequence[int]) -> PlanePair:
    """Build a plane pair with plain integer coefficients (for ad-hoc checks)."""
    n = 2 * params.d
    return PlanePair(
        tuple(CycloElem.const(n, v) for v in first),
        tuple(CycloElem.const(n, v) for v in second),
    )


def det(rows: Sequence[Sequence[CycloElem]]) -> CycloElem:
    """Determinant by cofactor expansion along the first row, skipping zeros."""
    size = len(rows)
    n = rows[0][0].n
    if size == 1:
        return rows[0][0]
    if size == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = CycloElem(n)
    for col, entry in enumerate(rows[0]):
        if entry.is_structurally_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in rows[1:]]
        term = entry * det(minor)
        total = total - term if col % 2 else total + term
    return total


def _minors2(a: Sequence[CycloElem], b: Sequence[CycloElem]) -> list[CycloElem]:
    return [a[p] * b[q] - a[q] * b[p] for p, q in combinations(range(4), 2)]


def _is_rank_two(pair: PlanePair) -> bool:
    return any(not m.is_zero() for m in _minors2(pair.first, pair.second))


def _kernel_point(pair: PlanePair, a: int) -> list[CycloElem]:
    """A point of the line orthogonal to e_a: p_m = det[first; second; e_a; e_m]."""
    n = pair.first[0].n
    one, zero = CycloElem.const(n, 1), CycloElem(n)
    unit = lambda idx: tuple(one if j == idx else zero for j in range(4))
    base = [tuple(pair.first), tuple(pair.second), unit(a)]
    return [det(base + [unit(m)]) for m in range(4)]


def _line_points(pair: PlanePair) -> tuple[list[CycloElem], list[CycloElem]]:
    points = [_kernel_point(pair, a) for a in range(4)]
    for p, q in combinations(points, 2):
        if any(not m.is_zero() for m in _minors2(p, q)):
            return p, q
    raise InvalidLineError("plane pair does not cut out a line")


SURFACE_SIGNS = (1, -1, -1, 1)  # x^d - y^d - z^d + w^d


def on_surface(params: SurfaceParams, line: LineId | PlanePair) -> bool:
    """True iff the line lies on x^d - y^d - z^d + w^d = 0.

    The line is parametrised as s*P + t*Q for two independent points P, Q
    found without division; the form vanishes identically iff every
    coefficient of s^j t^(d-j) is zero in the cyclotomic field.
    """
    pair = planes_of(params, line) if isinstance(line, LineId) else line
    if not _is_rank_two(pair):
        raise InvalidLineError("degenerate plane pair (rank < 2)")
    return _on_surface_pair(params.d, pair)


def _on_surface_pair(d: int, pair: PlanePair) -> bool:
    p, q = _line_points(pair)
    n = pair.first[0].n
    p_pows = [[CycloElem.const(n, 1)] for _ in range(4)]
    q_pows = [[CycloElem.const(n, 1)] for _ in range(4)]
    for m in range(4):
        for _ in range(d):
            p_pows[m].append(p_pows[m][-1] * p[m])
            q_pows[m].append(q_pows[m][-1] * q[m])
    for j in range(d + 1):
        coef = CycloElem(n)
        for m, sign in enumerate(SURFACE_SIGNS):
            coef = coef + p_pows[m][j] * q_pows[m][d - j] * (sign * comb(d, j))
        if not coef.is_zero():
            return False
    return True


@lru_cache(maxsize=4096)
def _line_on_surface(params: SurfaceParams, line: LineId) -> bool:
    return on_surface(params, line)


def _stacked(params: SurfaceParams, a: LineId, b: LineId) -> list[Plane]:
    pa, pb = planes_of(params, a), planes_of(params, b)
    return [pa.first, pa.second, pb.first, pb.second]


def _check_pair(params: SurfaceParams, a: LineId, b: LineId) -> None:
    if a == b:
        raise IdenticalLineError(f"same line {tuple(a)} given twice")
    for line in (a, b):
        if not _line_on_surface(params, line):
            raise InvalidLineError(f"line {tuple(line)} is not on the surface")


def meets_geometric(params: SurfaceParams, a: LineId, b: LineId) -> bool:
    """Two lines of P^3 meet iff the 4x4 matrix of their four planes is singular."""
    _check_pair(params, a, b)
    return det(_stacked(params, a, b)).is_zero()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def primes_one_mod(m: int, count: int) -> list[int]:
    """The first ``count`` primes congruent to 1 modulo ``m``."""
    out = []
    p = m + 1
    while len(out) < count:
        if _is_prime(p):
            out.append(p)
        p += m
    return out


def _prime_factors(n: int) -> set[int]:
    out, f = set(), 2
    while f * f <= n:
        while n % f == 0:
            out.add(f)
            n //= f
        f += 1
    if n > 1:
        out.add(n)
    return out


@lru_cache(maxsize=None)
def root_of_unity_mod(order: int, p: int) -> int:
    """Smallest-base element of exact multiplicative order ``order`` in F_p."""
    if (p - 1) % order:
        raise InvalidPrimeError(f"{p} is not 1 mod {order}")
    factors = _prime_factors(order)
    for a in range(2, p):
        g = pow(a, (p - 1) // order, p)
        if all(pow(g, order // q, p) != 1 for q in factors):
            return g
    raise InvalidPrimeError(f"no element of order {order} mod {p}")


def _det_mod(rows: list[list[int]], p: int) -> int:
    m = [row[:] for row in rows]
    size, result = len(m), 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        result = result * m[col][col] % p
        inv = pow(m[col][col], -1, p)
        for r in range(col + 1, size):
            f = m[r][col] * inv % p
            if f:
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[col])]
    return result % p


def validate_primes(params: SurfaceParams, primes: Sequence[int]) -> None:
    order = 2 * params.d
    if len(primes) < 3:
        raise InvalidPrimeError("at least 3 primes are required")
    for p in primes:
        if not _is_prime(p) or (p - 1) % order:
            raise InvalidPrimeError(f"{p} is not a prime congruent to 1 mod {order}")


def meets_modular(params: SurfaceParams, a: LineId, b: LineId, primes: Sequence[int]) -> bool:
    """Fast incidence test: a nonzero determinant mod any prime proves the lines skew.

    All-zero residues are confirmed with :func:`meets_geometric` before
    answering True.
    """
    validate_primes(params, primes)
    _check_pair(params, a, b)
    rows = _stacked(params, a, b)
    order = 2 * params.d
    for p in primes:
        g = root_of_unity_mod(order, p)
        values = [[e.evaluate_mod(g, p) for e in row] for row in rows]
        if _det_mod(values, p):
            return False
    return meets_geometric(params, a, b)


def disagreements(params: SurfaceParams, primes: Sequence[int] | None = None) -> list[tuple[LineId, LineId]]:
    """All distinct pairs on which the geometric test and :func:`meets` differ."""
    lines = enumerate_lines(params)
    for line in lines:
        if not _line_on_surface(params, line):
            raise InvalidLineError(f"line {tuple(line)} is not on the surface")
    if primes is not None:
        validate_primes(params, primes)
        test = lambda a, b: meets_modular(params, a, b, primes)
    else:
        test = lambda a, b: meets_geometric(params, a, b)
    return [(a, b) for a, b in combinations(lines, 2) if test(a, b) != meets(params, a, b)]
