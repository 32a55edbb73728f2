"""Full graph automorphism groups and canonical forms.

Colour refinement plus individualization backtracking, with automorphism
(orbit) pruning.  One tree search produces both the automorphism generators
and the canonical labeling: every leaf is an ordering of the vertices, leaves
are compared by the relabeled adjacency matrix, equal keys yield
automorphisms, and the lexicographically least key over the surviving leaves
is the canonical form (emitted as graph6).

Known automorphisms may be seeded into the search; they only ever prune
branches that are provably equivalent, so the result is unchanged but e.g.
Cayley graphs (with their regular translations supplied) search a single
root branch instead of one per vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from metacirc.graphs import Graph, to_graph6
from metacirc.permgroup import PermGroup

MAX_DEGREE = 2000


@dataclass
class SearchResult:
    generators: list[tuple[int, ...]]  # includes any seeds
    canonical_order: list[int]         # position -> vertex
    canonical_key: tuple[int, ...]


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _initial_partition(g: Graph) -> list[list[int]]:
    """Cells by (degree, neighbor degrees, distance-2 degrees), an
    isomorphism-invariant starting colouring."""
    deg = g.degrees()
    sigs = []
    for v in range(g.n):
        nbrs = g.adjacency[v]
        two = set()
        for u in nbrs:
            two.update(g.adjacency[u])
        two.discard(v)
        two.difference_update(nbrs)
        sigs.append(
            (
                deg[v],
                tuple(sorted(deg[u] for u in nbrs)),
                tuple(sorted(deg[u] for u in two)),
            )
        )
    order = sorted(range(g.n), key=lambda v: (sigs[v], v))
    cells: list[list[int]] = []
    for v in order:
        if cells and sigs[cells[-1][-1]] == sigs[v]:
            cells[-1].append(v)
        else:
            cells.append([v])
    # keep each cell in vertex-index order (sorted by construction)
    return cells


def _refine(adj_bits: list[int], cells: list[list[int]], active: list[int] | None) -> list[list[int]]:
    """Equitable refinement; fragments are ordered by ascending neighbor count."""
    queue: deque[int] = deque(_mask(c) for c in cells) if active is None else deque(active)
    while queue:
        smask = queue.popleft()
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            buckets: dict[int, list[int]] = {}
            for v in cell:
                buckets.setdefault((adj_bits[v] & smask).bit_count(), []).append(v)
            if len(buckets) == 1:
                out.append(cell)
            else:
                for k in sorted(buckets):
                    frag = buckets[k]
                    out.append(frag)
                    queue.append(_mask(frag))
        cells = out
    return cells


def _individualize(cells: list[list[int]], target_idx: int, v: int) -> tuple[list[list[int]], list[int]]:
    """Split the target cell into [v] and the rest; return new cells and the
    active splitter masks for the follow-up refinement."""
    out = []
    active = []
    for i, cell in enumerate(cells):
        if i != target_idx:
            out.append(cell)
            continue
        rest = [u for u in cell if u != v]
        out.append([v])
        out.append(rest)
        active.append(1 << v)
        active.append(_mask(rest))
    return out, active


def _target_cell(cells: list[list[int]]) -> int:
    """Index of the first smallest non-singleton cell."""
    best = -1
    best_len = None
    for i, cell in enumerate(cells):
        if len(cell) > 1 and (best_len is None or len(cell) < best_len):
            best, best_len = i, len(cell)
    return best


def _leaf_key(order: Sequence[int], g: Graph) -> tuple[int, ...]:
    """Relabeled adjacency matrix, one row-mask per new position.

    Bit (n-1-k) of row i encodes adjacency between new positions i and k, so
    tuple comparison is row-major lexicographic comparison of the matrices.
    """
    n = g.n
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    top = n - 1
    key = []
    for v in order:
        row = 0
        for u in g.adjacency[v]:
            row |= 1 << (top - pos[u])
        key.append(row)
    return tuple(key)


def _is_automorphism(g: Graph, p: Sequence[int]) -> bool:
    rows = [set(r) for r in g.adjacency]
    return all({p[u] for u in rows[v]} == rows[p[v]] for v in range(g.n))


def analyze(g: Graph, seeds: Sequence[Sequence[int]] = ()) -> SearchResult:
    """Run the search once, returning generators and the canonical labeling."""
    if g.directed:
        raise ValueError("automorphism search expects an undirected graph")
    if g.n > MAX_DEGREE:
        raise ValueError(f"graph too large (n = {g.n} > {MAX_DEGREE})")
    if g.n == 0:
        return SearchResult([], [], ())

    gens: list[tuple[int, ...]] = []
    gen_set: set[tuple[int, ...]] = set()
    for p in seeds:
        p = tuple(p)
        if len(p) != g.n or sorted(p) != list(range(g.n)) or not _is_automorphism(g, p):
            raise ValueError("seed is not an automorphism")
        if any(i != x for i, x in enumerate(p)) and p not in gen_set:
            gens.append(p)
            gen_set.add(p)

    adj_bits = g.bit_rows()
    first: tuple[tuple[int, ...], list[int]] | None = None
    best: tuple[tuple[int, ...], list[int]] | None = None

    def orbit_hits(v: int, fixed: list[int], processed: list[int]) -> bool:
        relevant = [p for p in gens if all(p[x] == x for x in fixed)]
        if not relevant:
            return False
        seen = {v}
        frontier = [v]
        targets = set(processed)
        while frontier:
            nxt = []
            for x in frontier:
                for p in relevant:
                    y = p[x]
                    if y in targets:
                        return True
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return False

    def handle_leaf(cells: list[list[int]]) -> None:
        nonlocal first, best
        order = [c[0] for c in cells]
        key = _leaf_key(order, g)
        if first is None:
            first = (key, order)
            best = (key, order)
            return
        for ref in (first, best):
            if ref is not None and ref[0] == key and ref[1] != order:
                p = [0] * g.n
                for k, v in enumerate(order):
                    p[v] = ref[1][k]
                p = tuple(p)
                if p not in gen_set:
                    gens.append(p)
                    gen_set.add(p)
                break
        if key < best[0]:
            best = (key, order)

    def rec(cells: list[list[int]], fixed: list[int]) -> None:
        t = _target_cell(cells)
        if t < 0:
            handle_leaf(cells)
            return
        processed: list[int] = []
        for v in cells[t]:
            if orbit_hits(v, fixed, processed):
                continue
            child, active = _individualize(cells, t, v)
            rec(_refine(adj_bits, child, active), fixed + [v])
            processed.append(v)

    rec(_refine(adj_bits, _initial_partition(g), None), [])
    assert best is not None
    return SearchResult(gens, best[1], best[0])


def automorphism_group(g: Graph) -> PermGroup:
    """Generators of the full automorphism group of a simple graph."""
    return PermGroup(g.n, analyze(g).generators)


def canonical_graph(g: Graph, result: SearchResult | None = None) -> Graph:
    result = result or analyze(g)
    pos = [0] * g.n
    for i, v in enumerate(result.canonical_order):
        pos[v] = i
    return g.relabel(pos)


def canonical_form(g: Graph, result: SearchResult | None = None) -> bytes:
    """Complete isomorphism invariant: graph6 of the canonical labeling."""
    return to_graph6(canonical_graph(g, result))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.n_edges != g2.n_edges:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)
