"""The automorphism group of G = <c> x (<a> : <b>), odd order.

For Sylow-cyclic specs every automorphism acts as

    a -> a^s,   b -> a^t b^(1+l*n0),   c -> c^sc,

with gcd(s, m) = 1, gcd(1+l*n0, n) = 1, gcd(sc, ell) = 1 and
t * rsum(r, n) = 0 (mod m).  The t-constraint is vacuous when <a> meets the
centre trivially (then rsum(r, n) = 0 mod m and the count is
phi(m) * m * (n/n0) * phi(ell)); on decomposable presentations it restricts t
to multiples of m / gcd(r-1, m).

Outside the Sylow-cyclic case <a> need not be characteristic and this shape
misses automorphisms, so :func:`enumerate_aut` refuses and callers fall back
to :func:`brute_force_automorphisms`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence, Union

from metacirc.groups import (
    IDENTITY,
    Element,
    GroupSpec,
    closure_size,
    element_order,
    euler_phi,
    inv,
    mul,
    power,
    rsum,
)


@dataclass(frozen=True)
class AutoMap:
    """Parametrized automorphism (s, t, l, s_c).

    Parameters are stored as given; images are always reduced mod the spec,
    so two maps are interchangeable iff their images agree.  enumerate_aut
    produces normalized parameters, making dataclass equality match equality
    of action.
    """

    s: int
    t: int
    l: int
    s_c: int = 1

    def images(self, spec: GroupSpec) -> tuple[Element, Element, Element]:
        v = (1 + self.l * spec.n0) % spec.n
        return (
            spec.element(self.s, 0, 0),
            spec.element(self.t, v, 0),
            spec.element(0, 0, self.s_c),
        )

    def normalized(self, spec: GroupSpec) -> AutoMap:
        """Canonical parameters: reduced mod (m, m, n/n0, ell).

        Degenerate moduli alias parameters (e.g. s_c is irrelevant when
        ell = 1); normalized maps compare equal iff they act identically.
        """
        l = self.l % (spec.n // spec.n0) if spec.n > 1 else 0
        return AutoMap(self.s % spec.m, self.t % spec.m, l, self.s_c % spec.ell)


@dataclass(frozen=True)
class GeneratorImages:
    """Automorphism given directly by the images of a, b, c.

    Used where the parametrized shape does not apply (brute-force fallback).
    """

    img_a: Element
    img_b: Element
    img_c: Element

    def images(self, spec: GroupSpec) -> tuple[Element, Element, Element]:
        return (self.img_a, self.img_b, self.img_c)


Automorphism = Union[AutoMap, GeneratorImages]


def apply_aut(f: Automorphism, g: Element, spec: GroupSpec) -> Element:
    """Image of g = a^u b^v c^w, computed as f(a)^u f(b)^v f(c)^w."""
    img_a, img_b, img_c = f.images(spec)
    out = mul(power(img_a, g.u, spec), power(img_b, g.v, spec), spec)
    return mul(out, power(img_c, g.w, spec), spec)


def identity_map(spec: GroupSpec) -> AutoMap:
    return AutoMap(1, 0, 0, 1).normalized(spec)


def _verify(f: Automorphism, spec: GroupSpec) -> None:
    img_a, img_b, img_c = f.images(spec)
    assert element_order(img_a, spec) == spec.m
    assert element_order(img_b, spec) == spec.n
    assert element_order(img_c, spec) == spec.ell
    conj = mul(mul(inv(img_b, spec), img_a, spec), img_b, spec)
    assert conj == power(img_a, spec.r, spec) if spec.m > 1 else True


def enumerate_aut(spec: GroupSpec, *, verify: bool = False) -> list[AutoMap]:
    """All automorphisms of a Sylow-cyclic spec, in parametrized form.

    Raises ValueError for non-Sylow-cyclic specs, where the (s, t, l, s_c)
    shape is incomplete; use brute_force_automorphisms there.
    """
    if not spec.sylow_cyclic:
        raise ValueError(
            f"Aut parametrization needs a Sylow-cyclic spec; {spec} is not "
            "(use brute_force_automorphisms)"
        )
    m, n, ell, n0 = spec.m, spec.n, spec.ell, spec.n0
    t_step = m // gcd(rsum(spec.r, n, spec), m)
    s_values = [s for s in range(m) if gcd(s, m) == 1]
    t_values = range(0, m, t_step)
    l_values = [l for l in range(n // n0) if gcd(1 + l * n0, n) == 1]
    c_values = [s for s in range(ell) if gcd(s, ell) == 1]
    out = [
        AutoMap(s, t, l, s_c)
        for s in s_values
        for t in t_values
        for l in l_values
        for s_c in c_values
    ]
    if verify:
        for f in out:
            _verify(f, spec)
    return out


def parametrized_count(spec: GroupSpec) -> int:
    """|Aut(G)| for a Sylow-cyclic spec, without enumerating."""
    if not spec.sylow_cyclic:
        raise ValueError("count formula needs a Sylow-cyclic spec")
    m, n, n0 = spec.m, spec.n, spec.n0
    t_count = gcd(rsum(spec.r, n, spec), m)
    l_count = sum(1 for l in range(n // n0) if gcd(1 + l * n0, n) == 1)
    return euler_phi(m) * t_count * l_count * euler_phi(spec.ell)


def compose_aut(f: Automorphism, g: Automorphism, spec: GroupSpec) -> AutoMap:
    """The composite map x -> g(f(x)), re-expressed in parametrized form."""
    fa, fb, fc = f.images(spec)
    img_a = apply_aut(g, fa, spec)
    img_b = apply_aut(g, fb, spec)
    img_c = apply_aut(g, fc, spec)
    assert img_a.v == 0 and img_a.w == 0 and img_b.w == 0
    assert img_c.u == 0 and img_c.v == 0
    if spec.n == 1:
        l = 0
    else:
        assert (img_b.v - 1) % spec.n0 == 0
        l = ((img_b.v - 1) // spec.n0) % (spec.n // spec.n0)
    return AutoMap(img_a.u, img_b.u, l, img_c.w)


def involutions(spec: GroupSpec) -> list[AutoMap]:
    """All parametrized automorphisms of order exactly 2."""
    ident = identity_map(spec)
    out = []
    for f in enumerate_aut(spec):
        if f == ident:
            continue
        if compose_aut(f, f, spec) == ident:
            out.append(f)
    return out


def brute_force_automorphisms(spec: GroupSpec, max_order: int = 4000) -> list[GeneratorImages]:
    """Exhaustive automorphism search over candidate generator images.

    Independent of the parametrized route: searches all elements of the right
    orders, checks the defining relations, and confirms the images generate.
    """
    if spec.order > max_order:
        raise ValueError(f"group order {spec.order} exceeds brute-force bound {max_order}")
    elements = list(spec.elements())
    orders = {g: element_order(g, spec) for g in elements}
    a_cands = [g for g in elements if orders[g] == spec.m]
    b_cands = [g for g in elements if orders[g] == spec.n]
    c_cands = [
        g
        for g in elements
        if orders[g] == spec.ell
        and mul(g, spec.generator_a(), spec) == mul(spec.generator_a(), g, spec)
        and mul(g, spec.generator_b(), spec) == mul(spec.generator_b(), g, spec)
    ]
    out = []
    for img_a in a_cands:
        target = power(img_a, spec.r, spec)
        for img_b in b_cands:
            if mul(mul(inv(img_b, spec), img_a, spec), img_b, spec) != target:
                continue
            for img_c in c_cands:
                if closure_size([img_a, img_b, img_c], spec) == spec.order:
                    out.append(GeneratorImages(img_a, img_b, img_c))
    return out


def automorphism_maps(spec: GroupSpec, max_order: int = 4000) -> list[Automorphism]:
    """Aut(G) via the parametrized route when valid, else by brute force."""
    if spec.sylow_cyclic:
        return list(enumerate_aut(spec))
    return list(brute_force_automorphisms(spec, max_order=max_order))


def aut_vertex_permutations(
    spec: GroupSpec, maps: Sequence[Automorphism] | None = None
) -> list[list[int]]:
    """Action of Aut(G) on vertex indices, one permutation per map."""
    if maps is None:
        maps = automorphism_maps(spec)
    perms = []
    for f in maps:
        img_a, img_b, img_c = f.images(spec)
        a_pow = _power_table(img_a, spec.m, spec)
        b_pow = _power_table(img_b, spec.n, spec)
        c_pow = _power_table(img_c, spec.ell, spec)
        perm = [0] * spec.order
        for g in spec.elements():
            image = mul(mul(a_pow[g.u], b_pow[g.v], spec), c_pow[g.w], spec)
            perm[spec.index(g)] = spec.index(image)
        perms.append(perm)
    return perms


def _power_table(g: Element, count: int, spec: GroupSpec) -> list[Element]:
    out = [IDENTITY]
    for _ in range(count - 1):
        out.append(mul(out[-1], g, spec))
    return out


def aut_stabilizer(
    S: Iterable[Element], spec: GroupSpec, maps: Sequence[Automorphism] | None = None
) -> list[Automorphism]:
    """Aut(G, S): the automorphisms fixing the connection set S setwise."""
    S = frozenset(S)
    if maps is None:
        maps = automorphism_maps(spec)
    return [f for f in maps if frozenset(apply_aut(f, x, spec) for x in S) == S]


def set_orbit_canonical(
    S: Iterable[Element], spec: GroupSpec, maps: Sequence[Automorphism] | None = None
) -> tuple[Element, ...]:
    """Lexicographically least Aut(G)-image of S under the vertex-index order.

    Two sets canonicalize identically iff they lie in one Aut(G)-orbit, which
    classifies Cayley-graph isomorphism whenever the CI property holds.
    """
    S = list(S)
    if maps is None:
        maps = automorphism_maps(spec)
    best = min(
        tuple(sorted(spec.index(apply_aut(f, x, spec)) for x in S)) for f in maps
    )
    return tuple(spec.at_index(i) for i in best)
