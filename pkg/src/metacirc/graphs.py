"""Connection sets, Cayley graphs, quotients, orbital graphs, serialization."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from metacirc.groups import Element, GroupSpec, IDENTITY, inv, mul


@dataclass(frozen=True)
class Graph:
    """Simple graph (or digraph) as per-vertex sorted neighbor tuples."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    directed: bool = False

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length must equal n")
        for v, row in enumerate(self.adjacency):
            if list(row) != sorted(set(row)):
                raise ValueError(f"neighbor list of {v} must be sorted and duplicate-free")
            if v in row:
                raise ValueError(f"loop at vertex {v}")
            if any(u < 0 or u >= self.n for u in row):
                raise ValueError("neighbor out of range")
        if not self.directed:
            nbrs = [set(row) for row in self.adjacency]
            for v, row in enumerate(self.adjacency):
                if any(v not in nbrs[u] for u in row):
                    raise ValueError("adjacency is not symmetric")

    @property
    def n_edges(self) -> int:
        total = sum(len(row) for row in self.adjacency)
        return total if self.directed else total // 2

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edge list, each as (u, v) with u < v."""
        if self.directed:
            raise ValueError("edge list is for undirected graphs")
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u]]

    def degrees(self) -> list[int]:
        return [len(row) for row in self.adjacency]

    def bit_rows(self) -> list[int]:
        """Adjacency as one int bitmask per vertex (bit u set iff u adjacent)."""
        rows = []
        for nbrs in self.adjacency:
            mask = 0
            for u in nbrs:
                mask |= 1 << u
            rows.append(mask)
        return rows

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under vertex map v -> perm[v]."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for v, row in enumerate(self.adjacency):
            adj[perm[v]] = sorted(perm[u] for u in row)
        return Graph(self.n, tuple(tuple(row) for row in adj), self.directed)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "adj": [list(row) for row in self.adjacency]}


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            continue
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in adj))


# ---------------------------------------------------------- connection sets

def validate_connection_set(S: Iterable[Element], spec: GroupSpec) -> tuple[Element, ...]:
    """Check the tetravalent connection-set invariants; return S sorted by index."""
    elems = sorted(set(S), key=spec.index)
    if len(elems) != 4:
        raise ValueError(f"connection set must have exactly 4 distinct elements, got {len(elems)}")
    if IDENTITY in elems:
        raise ValueError("connection set must not contain the identity")
    if any(inv(x, spec) not in elems for x in elems):
        raise ValueError("connection set must be inverse-closed")
    return tuple(elems)


def standard_connection_set(j: int, spec: GroupSpec) -> tuple[Element, ...]:
    """The distinguished set {c b^j, c^-1 a b^j, c^-1 b^-j, c (a b^j)^-1}.

    For ell = 1 this is S_j = {b^j, a b^j, b^-j, (a b^j)^-1}.  Valid for
    1 <= j < n0 with gcd(j, n) = 1.
    """
    if not 1 <= j < spec.n0:
        raise ValueError(f"j must satisfy 1 <= j < n0 = {spec.n0}, got {j}")
    if gcd(j, spec.n) != 1:
        raise ValueError(f"j must be coprime to n = {spec.n}, got {j}")
    c = spec.generator_c()
    x = mul(c, spec.element(0, j, 0), spec)
    y = mul(inv(c, spec), spec.element(1, j, 0), spec)
    return validate_connection_set([x, y, inv(x, spec), inv(y, spec)], spec)


def build_cayley(S: Iterable[Element], spec: GroupSpec) -> Graph:
    """Cayley graph on the vertex indexing: x ~ y iff y * x^-1 in S, i.e. y = s*x."""
    S = validate_connection_set(S, spec)
    adjacency = []
    for x in spec.elements():
        adjacency.append(tuple(sorted(spec.index(mul(s, x, spec)) for s in S)))
    return Graph(spec.order, tuple(adjacency))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for u in g.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return len(seen) == g.n


def connected_components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in range(g.n):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for u in g.adjacency[v]:
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                        nxt.append(u)
            frontier = nxt
        comps.append(sorted(comp))
    return comps


def quotient_graph(g: Graph, blocks: Sequence[Sequence[int]]) -> Graph:
    """Simple graph on the blocks; B ~ B' iff some edge joins them."""
    block_of = [-1] * g.n
    for b, block in enumerate(blocks):
        for v in block:
            if v < 0 or v >= g.n or block_of[v] != -1:
                raise ValueError("blocks must partition the vertex set")
            block_of[v] = b
    if any(b == -1 for b in block_of):
        raise ValueError("blocks must partition the vertex set")
    edges = set()
    for v in range(g.n):
        for u in g.adjacency[v]:
            bu, bv = block_of[u], block_of[v]
            if bu != bv:
                edges.add((min(bu, bv), max(bu, bv)))
    return graph_from_edges(len(blocks), edges)


def orbital_graph(
    gens: Sequence[Sequence[int]], seed: tuple[int, int]
) -> tuple[Graph, bool]:
    """Orbital (di)graph: arc set = orbit of the seed pair under <gens>.

    Returns the graph and whether the orbital is self-paired (the reversed
    seed lies in the orbit).  Self-paired orbitals come back undirected.
    """
    if not gens:
        raise ValueError("need at least one permutation")
    n = len(gens[0])
    a, b = seed
    if a == b:
        raise ValueError("seed must be a pair of distinct vertices")
    arcs = {(a, b)}
    frontier = [(a, b)]
    while frontier:
        nxt = []
        for (x, y) in frontier:
            for p in gens:
                arc = (p[x], p[y])
                if arc not in arcs:
                    arcs.add(arc)
                    nxt.append(arc)
        frontier = nxt
    self_paired = (b, a) in arcs
    adj: list[set[int]] = [set() for _ in range(n)]
    for (x, y) in arcs:
        adj[x].add(y)
    return (
        Graph(n, tuple(tuple(sorted(s)) for s in adj), directed=not self_paired),
        self_paired,
    )


# ------------------------------------------------------------------ formats

def to_graph6(g: Graph) -> bytes:
    """Bit-exact graph6: size bytes, then the upper triangle column by column."""
    if g.directed:
        raise ValueError("graph6 encodes undirected graphs")
    out = bytearray(_graph6_size(g.n))
    bits = 0
    nbits = 0
    rows = g.bit_rows()
    for j in range(1, g.n):
        row = rows[j]
        for i in range(j):
            bits = (bits << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(63 + bits)
                bits = nbits = 0
    if nbits:
        out.append(63 + (bits << (6 - nbits)))
    return bytes(out)


def _graph6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    if n <= 68719476735:
        return bytes([126, 126] + [63 + ((n >> k) & 63) for k in range(30, -1, -6)])
    raise ValueError("graph too large for graph6")


def from_graph6(data: bytes | str) -> Graph:
    """Parse graph6 (the inverse of to_graph6)."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    vals = [c - 63 for c in data]
    if any(v < 0 or v > 63 for v in vals):
        raise ValueError("invalid graph6 byte")
    if vals and vals[0] == 63:
        if len(vals) > 1 and vals[1] == 63:
            n = 0
            for v in vals[2:8]:
                n = (n << 6) | v
            body = vals[8:]
        else:
            n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
            body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body length {len(body)}, expected {need}")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if (body[idx // 6] >> (5 - idx % 6)) & 1:
                edges.append((i, j))
            idx += 1
    return graph_from_edges(n, edges)


def to_dot(g: Graph) -> str:
    kind, sep = ("digraph", "->") if g.directed else ("graph", "--")
    lines = [f"{kind} G {{"]
    for v in range(g.n):
        lines.append(f"  {v};")
    if g.directed:
        for u, v in g.arcs():
            lines.append(f"  {u} {sep} {v};")
    else:
        for u, v in g.edges():
            lines.append(f"  {u} {sep} {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
