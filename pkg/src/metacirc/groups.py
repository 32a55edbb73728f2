"""Exact arithmetic in odd-order split metacyclic groups.

The groups handled here are G = <c> x (<a> : <b>) with presentation

    a^m = b^n = c^ell = 1,   a^b = a^r,   c central,

where m, n, ell are odd and r^n = 1 (mod m).  Every element has a unique
normal form a^u b^v c^w with 0 <= u < m, 0 <= v < n, 0 <= w < ell, stored
as an :class:`Element` triple.  All operations are pure functions of
immutable values.

Vertex indexing is fixed at u + m*v + m*n*w and is part of the external
report contract.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, NamedTuple


class Element(NamedTuple):
    """Normal-form exponent triple a^u b^v c^w."""

    u: int
    v: int
    w: int


IDENTITY = Element(0, 0, 0)


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    out = n
    for p in prime_factors(n):
        out -= out // p
    return out


def multiplicative_order(x: int, m: int) -> int:
    """Least k >= 1 with x^k = 1 (mod m); requires gcd(x, m) = 1."""
    if m == 1:
        return 1
    if gcd(x, m) != 1:
        raise ValueError(f"{x} is not a unit mod {m}")
    acc = x % m
    k = 1
    while acc != 1:
        acc = acc * x % m
        k += 1
    return k


@dataclass(frozen=True)
class GroupSpec:
    """Presentation parameters (m, n, r, ell) of G = <c> x (<a> : <b>).

    Derived data computed at construction:

    * ``n0``: multiplicative order of r mod m (1 when m = 1); <b^n0> is the
      central part of <b>.
    * ``sylow_cyclic``: all Sylow subgroups of G are cyclic, i.e.
      gcd(m, n) = 1 and gcd(ell, m*n) = 1.
    * ``hypothesis_star``: no Sylow p-subgroup of <b> is central, i.e. every
      prime dividing n also divides n0.
    """

    m: int
    n: int
    r: int
    ell: int = 1
    n0: int = field(init=False, compare=False, repr=False)
    _r_pow: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        for name in ("m", "n", "ell"):
            val = getattr(self, name)
            if val < 1 or val % 2 == 0:
                raise ValueError(f"{name} must be a positive odd integer, got {val}")
        object.__setattr__(self, "r", self.r % self.m)
        if gcd(self.r, self.m) != 1:
            raise ValueError(f"gcd(r, m) must be 1, got r={self.r}, m={self.m}")
        if pow(self.r, self.n, self.m) != 1 % self.m:
            raise ValueError(f"r^n must be 1 mod m, got r={self.r}, n={self.n}, m={self.m}")
        object.__setattr__(self, "n0", multiplicative_order(self.r, self.m))
        # power table; ord(r) divides n, so r^-v = r^((n-v) mod n)
        pows = [1 % self.m]
        for _ in range(self.n - 1):
            pows.append(pows[-1] * self.r % self.m)
        object.__setattr__(self, "_r_pow", tuple(pows))

    @property
    def order(self) -> int:
        return self.m * self.n * self.ell

    @property
    def sylow_cyclic(self) -> bool:
        return gcd(self.m, self.n) == 1 and gcd(self.ell, self.m * self.n) == 1

    @property
    def hypothesis_star(self) -> bool:
        return all(self.n0 % p == 0 for p in prime_factors(self.n))

    @property
    def is_abelian(self) -> bool:
        return self.m == 1 or self.r == 1

    @property
    def central_a_order(self) -> int:
        """Order of <a> ∩ Z(G), i.e. gcd(r-1, m); 1 means <a> meets the centre trivially."""
        return gcd(self.r - 1, self.m)

    def rpow(self, v: int) -> int:
        """r^v mod m for any integer v."""
        return self._r_pow[v % self.n] if self.n > 1 else 1 % self.m

    def rpow_inv(self, v: int) -> int:
        """r^-v mod m."""
        return self.rpow(-v)

    def element(self, u: int, v: int, w: int = 0) -> Element:
        return Element(u % self.m, v % self.n, w % self.ell)

    def index(self, g: Element) -> int:
        """Fixed vertex index u + m*v + m*n*w."""
        return g.u + self.m * (g.v + self.n * g.w)

    def at_index(self, i: int) -> Element:
        u = i % self.m
        i //= self.m
        return Element(u, i % self.n, i // self.n)

    def elements(self) -> Iterable[Element]:
        """All group elements in vertex-index order."""
        for w in range(self.ell):
            for v in range(self.n):
                for u in range(self.m):
                    yield Element(u, v, w)

    def generator_a(self) -> Element:
        return self.element(1, 0, 0)

    def generator_b(self) -> Element:
        return self.element(0, 1, 0)

    def generator_c(self) -> Element:
        return self.element(0, 0, 1)

    def to_json_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "r": self.r, "ell": self.ell, "n0": self.n0}


def mul(g: Element, h: Element, spec: GroupSpec) -> Element:
    """Product g*h in normal form.

    The a-before-b normal form of (a^u1 b^v1)(a^u2 b^v2) is
    a^(u1 + u2*r^-v1) b^(v1+v2): the b-first product rule pushed back through
    a^x b^v = b^v a^(x r^v).  The central c-exponents simply add.
    """
    return Element(
        (g.u + h.u * spec.rpow_inv(g.v)) % spec.m,
        (g.v + h.v) % spec.n,
        (g.w + h.w) % spec.ell,
    )


def inv(g: Element, spec: GroupSpec) -> Element:
    """Inverse: (a^u b^v c^w)^-1 = a^(-u r^v) b^-v c^-w."""
    return Element(
        (-g.u * spec.rpow(g.v)) % spec.m,
        -g.v % spec.n,
        -g.w % spec.ell,
    )


def rsum(x: int, k: int, spec: GroupSpec) -> int:
    """Geometric sum x + x^2 + ... + x^k mod m, evaluated without division.

    Recursive doubling: S(2t) = S(t)*(1 + x^t), S(2t+1) = S(2t) + x^(2t+1).
    This is the exponent bracket appearing in the power rule; dividing by
    (x - 1) would be wrong whenever x - 1 is not invertible mod m.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    m = spec.m
    x %= m

    def go(k: int) -> int:
        if k == 0:
            return 0
        if k % 2 == 0:
            half = go(k // 2)
            return half * (1 + pow(x, k // 2, m)) % m
        return (go(k - 1) + pow(x, k, m)) % m

    return go(k)


def power(g: Element, k: int, spec: GroupSpec) -> Element:
    """k-th power via the closed form (a^u b^v)^k = b^(kv) a^(u * sum_i (r^v)^i)."""
    if k < 0:
        return power(inv(g, spec), -k, spec)
    exponent = g.u * rsum(spec.rpow(g.v), k, spec) % spec.m
    # convert b^(kv) a^exponent back to a-first form
    return Element(
        exponent * spec.rpow_inv(k * g.v) % spec.m,
        k * g.v % spec.n,
        k * g.w % spec.ell,
    )


def element_order(g: Element, spec: GroupSpec) -> int:
    """Least k >= 1 with g^k = identity."""
    for d in divisors(spec.order):
        if power(g, d, spec) == IDENTITY:
            return d
    raise AssertionError("unreachable: order divides |G|")


def closure_size(gens: Iterable[Element], spec: GroupSpec) -> int:
    """Size of the subgroup generated by gens, by breadth-first closure."""
    return len(closure(gens, spec))


def closure(gens: Iterable[Element], spec: GroupSpec) -> set[Element]:
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = mul(g, h, spec)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return seen


def is_generating_pair(i1: int, i2: int, j: int, spec: GroupSpec) -> bool:
    """Whether {a^i1 b^j, a^i2 b^j} generates all of G (ell = 1 only).

    Closed form: gcd(j, n) = 1 and gcd(i2 - i1, i1 * rsum(r, n), m) = 1.
    The modulus must take part in the gcd: a^(i2-i1) and (a^i1 b^j)^n
    together generate a^d with d the three-way gcd.
    """
    if spec.ell != 1:
        raise ValueError("generating-pair criterion applies to ell = 1 specs")
    if gcd(j, spec.n) != 1:
        return False
    return gcd(gcd(i2 - i1, i1 * rsum(spec.r, spec.n, spec)), spec.m) == 1


def regular_representation(spec: GroupSpec) -> list[list[int]]:
    """Right-multiplication permutations of the generators a, b, c.

    Returns three permutations of the vertex indices; x -> x*a, x -> x*b,
    x -> x*c under the fixed indexing.  Together they generate the regular
    copy of G inside the symmetric group on the vertices.
    """
    perms = []
    for gen in (spec.generator_a(), spec.generator_b(), spec.generator_c()):
        perms.append([spec.index(mul(x, gen, spec)) for x in spec.elements()])
    return perms


def right_multiplication_perm(g: Element, spec: GroupSpec) -> list[int]:
    """Permutation x -> x*g on vertex indices."""
    return [spec.index(mul(x, g, spec)) for x in spec.elements()]


def canonical_r(m: int, n: int, r: int) -> int:
    """Least r' among {r^u mod m : gcd(u, n) = 1} presenting an isomorphic group.

    Replacing b by b^u (u a unit mod n) turns the conjugation multiplier r
    into r^u, so specs sharing this value present isomorphic groups.
    """
    r %= m
    best = r
    for u in range(1, n):
        if gcd(u, n) == 1:
            best = min(best, pow(r, u, m))
    return best


def iter_specs(max_order: int) -> Iterable[GroupSpec]:
    """All nonabelian (m, n, r) specs with ell = 1, m*n <= max_order, hypothesis (*).

    One spec per isomorphism class: r is canonicalized over unit powers, and
    n runs over odd multiples of n0 all of whose prime factors divide n0.
    """
    for m in range(3, max_order // 3 + 1, 2):
        seen_r: set[int] = set()
        for r in range(2, m):
            if gcd(r, m) != 1:
                continue
            n0 = multiplicative_order(r, m)
            if n0 % 2 == 0 or n0 < 3:
                continue
            if canonical_r(m, n0, r) in seen_r:
                continue
            seen_r.add(r)
            for k in itertools.count(1, 2):
                n = n0 * k
                if m * n > max_order:
                    break
                spec = GroupSpec(m, n, r)
                if spec.hypothesis_star:
                    yield spec
