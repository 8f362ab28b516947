"""Bounded proper chain complexes of finite groups and their homology."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groups import (
    Embedding,
    FiniteGroup,
    GroupHom,
    QuotientPresentation,
    image,
    kernel,
    normal_closure,
    quotient,
    subgroup,
    whole,
)


class ComplexViolation(Exception):
    pass


class IndexOutOfRange(Exception):
    pass


class LiftFailure(Exception):
    pass


@dataclass(frozen=True, eq=False)
class ProperChainComplex:
    """Objects ``C_0..C_N`` with ``differentials[n-1] = d_n : C_n -> C_{n-1}``."""

    objects: tuple[FiniteGroup, ...]
    differentials: tuple[GroupHom, ...]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != len(self.objects) - 1:
            raise ComplexViolation("need exactly one differential per positive degree")
        for n, d in enumerate(self.differentials, start=1):
            if d.dom != self.objects[n] or d.cod != self.objects[n - 1]:
                raise ComplexViolation(f"d_{n} has the wrong domain or codomain")
        for n in range(1, self.length):
            if not (self.d(n) @ self.d(n + 1)).is_zero:
                raise ComplexViolation(f"d_{n} ∘ d_{n + 1} is not zero")
        for n in range(1, self.length + 1):
            if not image(self.d(n)).is_normal():
                raise ComplexViolation(f"image of d_{n} is not normal")

    @property
    def length(self) -> int:
        return len(self.objects) - 1

    def d(self, n: int) -> GroupHom:
        """``d_n``; zero outside ``1..N``."""
        if 1 <= n <= self.length:
            return self.differentials[n - 1]
        if n == 0:
            return GroupHom.zero(self.objects[0], FiniteGroup([[0]]))
        if n == self.length + 1:
            return GroupHom.zero(FiniteGroup([[0]]), self.objects[self.length])
        raise IndexOutOfRange(n)


@dataclass(frozen=True, eq=False)
class Homology:
    """``H_n`` as the quotient of the cycle subgroup ``K[d_n] ⊆ C_n``."""

    degree: int
    cycles: Embedding
    presentation: QuotientPresentation

    @property
    def group(self) -> FiniteGroup:
        return self.presentation.quotient

    @property
    def order(self) -> int:
        return self.presentation.order

    def class_of(self, x: int) -> int:
        """Class of a cycle given as an element of ``C_n``."""
        return self.presentation.projection.map[self.cycles.index[x]]

    def representative(self, q: int) -> int:
        """Minimal cycle (as an element of ``C_n``) in class ``q``."""
        return self.cycles.element_set[self.presentation.coset_reps[q]]

    def fibers(self) -> list[tuple[int, ...]]:
        """Classes as sets of elements of ``C_n``."""
        es = self.cycles.element_set
        return [tuple(es[k] for k in f) for f in self.presentation.fibers]


def _check_degree(c: ProperChainComplex, n: int):
    if not 0 <= n <= c.length:
        raise IndexOutOfRange(f"degree {n} outside 0..{c.length}")


def homology(c: ProperChainComplex, n: int) -> Homology:
    _check_degree(c, n)
    cyc = whole(c.objects[0]) if n == 0 else kernel(c.d(n))
    if n < c.length:
        bounds = set(c.d(n + 1).map)
    else:
        bounds = {0}
    inside = subgroup(cyc.carrier, (cyc.index[b] for b in bounds))
    return Homology(n, cyc, quotient(cyc.carrier, normal_closure(inside)))


def homology_at(c: ProperChainComplex, n: int) -> QuotientPresentation:
    return homology(c, n).presentation


def is_exact_at(c: ProperChainComplex, n: int) -> tuple[bool, int | None]:
    """Whether ``Im d_{n+1} = K[d_n]``, with the least element of the symmetric difference."""
    _check_degree(c, n)
    ker = set(range(c.objects[n].order)) if n == 0 else set(kernel(c.d(n)).element_set)
    im = set(c.d(n + 1).map) if n < c.length else {0}
    diff = ker ^ im
    return (not diff, min(diff) if diff else None)


def is_chain_map(c: ProperChainComplex, d: ProperChainComplex, maps: Sequence[GroupHom]) -> bool:
    if len(maps) != len(c.objects) or len(d.objects) != len(c.objects):
        return False
    for n in range(1, c.length + 1):
        if (d.d(n) @ maps[n]).map != (maps[n - 1] @ c.d(n)).map:
            return False
    return True


def induced_homology_map(hc: Homology, hd: Homology, f: GroupHom) -> GroupHom:
    """``H_n f`` computed by pushing minimal representatives through ``f_n``."""
    images = tuple(hd.class_of(f.map[hc.representative(q)]) for q in range(hc.order))
    return GroupHom(hc.group, hd.group, images)


@dataclass(frozen=True, eq=False)
class ComplexSES:
    sub: ProperChainComplex
    total: ProperChainComplex
    quot: ProperChainComplex
    inclusion: tuple[GroupHom, ...]
    projection: tuple[GroupHom, ...]

    def __post_init__(self):
        object.__setattr__(self, "inclusion", tuple(self.inclusion))
        object.__setattr__(self, "projection", tuple(self.projection))
        if not (len(self.sub.objects) == len(self.total.objects) == len(self.quot.objects)):
            raise ComplexViolation("complexes of different lengths")
        if not is_chain_map(self.sub, self.total, self.inclusion):
            raise ComplexViolation("inclusion is not a chain map")
        if not is_chain_map(self.total, self.quot, self.projection):
            raise ComplexViolation("projection is not a chain map")
        for n, (i, p) in enumerate(zip(self.inclusion, self.projection)):
            if not i.is_injective:
                raise ComplexViolation(f"inclusion not injective in degree {n}")
            if set(i.map) != set(kernel(p).element_set):
                raise ComplexViolation(f"degree {n} is not exact in the middle")


def _lift_table(p: GroupHom, n: int) -> dict[int, int]:
    lift: dict[int, int] = {}
    for a in p.dom:
        lift.setdefault(p.map[a], a)
    if len(lift) != p.cod.order:
        raise LiftFailure(f"projection not surjective in degree {n}")
    return lift


def snake_delta(s: ComplexSES, n: int) -> GroupHom:
    """Connecting map ``H_n(quot) -> H_{n-1}(sub)`` by the zig-zag.

    A class is represented by its minimal cycle ``z``; ``z`` is lifted to
    the minimal ``a`` in the total complex with ``p(a) = z``; ``d_n(a)`` then
    lies in the image of the inclusion and its preimage is a cycle whose
    class is returned.
    """
    if not 1 <= n <= s.total.length:
        raise IndexOutOfRange(n)
    hq = homology(s.quot, n)
    hk = homology(s.sub, n - 1)
    lift = _lift_table(s.projection[n], n)
    back = {v: b for b, v in enumerate(s.inclusion[n - 1].map)}
    d = s.total.d(n)
    images = []
    for q in range(hq.order):
        a = lift[hq.representative(q)]
        images.append(hk.class_of(back[d.map[a]]))
    return GroupHom(hq.group, hk.group, tuple(images))


def snake_delta_independent(s: ComplexSES, n: int) -> tuple[bool, tuple[int, int] | None]:
    """Recompute the connecting map from every cycle and every lift.

    Returns ``(True, None)`` when all choices agree with :func:`snake_delta`,
    otherwise ``(False, (z, a))`` for the first disagreeing cycle/lift pair.
    """
    delta = snake_delta(s, n)
    hq = homology(s.quot, n)
    hk = homology(s.sub, n - 1)
    p = s.projection[n]
    back = {v: b for b, v in enumerate(s.inclusion[n - 1].map)}
    d = s.total.d(n)
    cyc = set(hq.cycles.element_set)
    for a in p.dom:
        z = p.map[a]
        if z in cyc and hk.class_of(back[d.map[a]]) != delta.map[hq.class_of(z)]:
            return False, (z, a)
    return True, None


@dataclass
class LESNode:
    name: str
    degree: int
    group: FiniteGroup


@dataclass
class LongExactSequence:
    """Nodes from ``H_top(sub)`` down to ``H_0(quot)``; ``maps[i]`` goes from node i to node i+1."""

    nodes: list[LESNode]
    maps: list[GroupHom]
    incoming: GroupHom | None
    exact_at: list[bool]
    tail_surjective: bool

    @property
    def exact(self) -> bool:
        return all(self.exact_at) and self.tail_surjective


def exact_between(incoming: GroupHom | None, outgoing: GroupHom | None, node: FiniteGroup) -> bool:
    im = set(incoming.map) if incoming is not None else {0}
    ker = set(kernel(outgoing).element_set) if outgoing is not None else set(node)
    return im == ker


def long_exact_sequence(s: ComplexSES, top: int | None = None) -> LongExactSequence:
    """Assemble ``H_n(sub) -> H_n(total) -> H_n(quot) -> H_{n-1}(sub) -> ...``.

    Degrees ``top..0`` are listed. When ``top < N`` the connecting map
    ``δ_{top+1}`` is kept as the incoming map so exactness at the first
    node is still checked.
    """
    N = s.total.length
    top = N if top is None else top
    hs = [homology(s.sub, n) for n in range(top + 1)]
    ht = [homology(s.total, n) for n in range(top + 1)]
    hq = [homology(s.quot, n) for n in range(top + 1)]
    nodes: list[LESNode] = []
    maps: list[GroupHom] = []
    for n in range(top, -1, -1):
        nodes += [
            LESNode("sub", n, hs[n].group),
            LESNode("total", n, ht[n].group),
            LESNode("quot", n, hq[n].group),
        ]
        maps += [
            induced_homology_map(hs[n], ht[n], s.inclusion[n]),
            induced_homology_map(ht[n], hq[n], s.projection[n]),
        ]
        if n > 0:
            maps.append(snake_delta(s, n))
    incoming = snake_delta(s, top + 1) if top < N else None
    exact_at = []
    for i, node in enumerate(nodes):
        inc = incoming if i == 0 else maps[i - 1]
        out = maps[i] if i < len(maps) else None
        exact_at.append(exact_between(inc, out, node.group))
    return LongExactSequence(nodes, maps, incoming, exact_at, maps[-1].is_surjective)
