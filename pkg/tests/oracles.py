"""Independent oracles used by the test suite.

Everything here is deliberately written from first principles (single-relation
actions, exhaustive search, naive permutation composition) and must not call
into the package's own arithmetic, so that the two routes stay independent.
"""

from __future__ import annotations

from itertools import permutations
from math import gcd


def perm_apply(p: list[int], i: int) -> int:
    return p[i]


def perm_compose(p: list[int], q: list[int]) -> list[int]:
    """Apply p first, then q."""
    return [q[x] for x in p]


def perm_power(p: list[int], k: int) -> list[int]:
    out = list(range(len(p)))
    for _ in range(k):
        out = perm_compose(out, p)
    return out


def regular_generator_perms(m: int, n: int, r: int, ell: int = 1):
    """Right-multiplication permutations for a, b, c on u + m*v + m*n*w.

    Built from the single defining relation only: b a b^-1 = a^(r^-1), so
    (a^u b^v c^w) * a = a^(u + r^-v) b^v c^w, while right-multiplying by b or
    c just increments v or w.
    """
    size = m * n * ell
    rinv = pow(r % m, -1, m) if m > 1 else 0

    def idx(u, v, w):
        return u + m * (v + n * w)

    pa = [0] * size
    pb = [0] * size
    pc = [0] * size
    for w in range(ell):
        for v in range(n):
            shift = pow(rinv, v, m) if m > 1 else 0
            for u in range(m):
                i = idx(u, v, w)
                pa[i] = idx((u + shift) % m, v, w)
                pb[i] = idx(u, (v + 1) % n, w)
                pc[i] = idx(u, v, (w + 1) % ell)
    return pa, pb, pc


def oracle_mul_index(i: int, j: int, m: int, n: int, r: int, ell: int = 1) -> int:
    """Index of (element i) * (element j), by permutation composition only."""
    pa, pb, pc = regular_generator_perms(m, n, r, ell)
    u = j % m
    rest = j // m
    v = rest % n
    w = rest // n
    x = i
    for _ in range(u):
        x = pa[x]
    for _ in range(v):
        x = pb[x]
    for _ in range(w):
        x = pc[x]
    return x


def brute_force_graph_automorphisms(adjacency: list[list[int]]) -> list[tuple[int, ...]]:
    """All automorphisms of a small graph by exhausting S_n.  n <= 10 or so."""
    n = len(adjacency)
    adj = [set(row) for row in adjacency]
    out = []
    for p in permutations(range(n)):
        if all({p[x] for x in adj[v]} == adj[p[v]] for v in range(n)):
            out.append(p)
    return out


def backtracking_automorphism_count(adjacency: list[list[int]]) -> int:
    """Count automorphisms by depth-first assignment with adjacency checks.

    Positions are assigned in vertex order; a partial map is extended only
    while it preserves adjacency and non-adjacency among assigned vertices.
    Practical up to a dozen vertices.
    """
    n = len(adjacency)
    adj = [set(row) for row in adjacency]
    deg = [len(row) for row in adjacency]
    count = 0
    image = [-1] * n
    used = [False] * n

    def extend(v: int) -> None:
        nonlocal count
        if v == n:
            count += 1
            return
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            ok = True
            for u in range(v):
                if (u in adj[v]) != (image[u] in adj[w]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
                image[v] = -1

    extend(0)
    return count


def brute_force_isomorphic(adj1: list[list[int]], adj2: list[list[int]]) -> bool:
    """Exhaustive isomorphism test for graphs on <= 8 vertices."""
    n = len(adj1)
    if n != len(adj2):
        return False
    a1 = [set(row) for row in adj1]
    a2 = [set(row) for row in adj2]
    if sorted(map(len, a1)) != sorted(map(len, a2)):
        return False
    for p in permutations(range(n)):
        if all({p[x] for x in a1[v]} == a2[p[v]] for v in range(n)):
            return True
    return False


def parse_graph6(data: bytes) -> list[list[int]]:
    """Decode graph6 into adjacency lists (hand-rolled, independent decoder)."""
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    vals = [c - 63 for c in data]
    if vals[0] == 63:
        if vals[1] == 63:
            n = 0
            for v in vals[2:8]:
                n = n * 64 + v
            body = vals[8:]
        else:
            n = vals[1] * 64 * 64 + vals[2] * 64 + vals[3]
            body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    bits = []
    for v in body:
        for k in range(5, -1, -1):
            bits.append((v >> k) & 1)
    adjacency = [[] for _ in range(n)]
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                adjacency[i].append(j)
                adjacency[j].append(i)
            idx += 1
    return adjacency


def sample_hypothesis_star_specs(rng, count: int, max_order: int):
    """Random (m, n, r) pools for the element-order law, as parameter triples.

    Samples nonabelian specs with gcd(m, n) = 1, every prime of n dividing
    n0, and gcd(r-1, m) = 1, i.e. groups that are not direct products.
    """
    pool = []
    for m in range(3, max_order // 3 + 1, 2):
        for r in range(2, m):
            if gcd(r, m) != 1 or gcd(r - 1, m) != 1:
                continue
            n0 = order_mod(r, m)
            if n0 % 2 == 0 or n0 < 3:
                continue
            k = 1
            while m * n0 * k <= max_order:
                n = n0 * k
                if all(n0 % p == 0 for p in _prime_divisors(n)):
                    pool.append((m, n, r))
                k += 2
    return rng.sample(pool, count)


def order_mod(x: int, m: int) -> int:
    acc = x % m
    k = 1
    while acc != 1:
        acc = acc * x % m
        k += 1
    return k


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
