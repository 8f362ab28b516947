"""Finite groups as Cayley tables, and the limits/colimits built from them.

Elements of a group of order ``n`` are the integers ``0..n-1`` and ``0`` is
always the identity. Every construction here relabels its output
canonically (subgroups keep the ambient order, quotients are ordered by
minimal coset representative, products are ordered lexicographically) so
results are deterministic and can be compared element for element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class GroupError(Exception):
    """Base class for errors raised by the group backend."""


class AxiomViolation(GroupError):
    def __init__(self, axiom: str, witness: tuple[int, ...]):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} axiom fails at {witness}")


class HomViolation(GroupError):
    pass


class CodomainMismatch(GroupError):
    pass


class OrderCap(GroupError):
    pass


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a][b]`` is the index of ``a*b``. The constructor trusts its
    input; use :func:`validate_group` for untrusted tables.
    """

    def __init__(self, table: Sequence[Sequence[int]], label: str | None = None):
        self.table = tuple(tuple(row) for row in table)
        self.label = label

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __iter__(self) -> Iterator[int]:
        return iter(range(len(self.table)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverses[g]]

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        n = len(t)
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(a) for a in range(self.order))

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or self.table == other.table

    @cached_property
    def _hash(self) -> int:
        return hash(self.table)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        name = self.label or "FiniteGroup"
        return f"<{name} of order {self.order}>"


def validate_group(table: Sequence[Sequence[int]], label: str | None = None) -> FiniteGroup:
    """Check the group axioms on a square table and return the group.

    Identity is checked first, then inverses (every row and column is a
    permutation), then associativity. The first failing element or triple
    is reported in the raised :class:`AxiomViolation`.
    """
    n = len(table)
    if n == 0:
        raise AxiomViolation("shape", ())
    for a, row in enumerate(table):
        if len(row) != n:
            raise AxiomViolation("shape", (a,))
        for b, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise AxiomViolation("shape", (a, b))
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            raise AxiomViolation("identity", (a,))
    full = set(range(n))
    for a in range(n):
        if set(table[a]) != full or {table[b][a] for b in range(n)} != full:
            raise AxiomViolation("inverse", (a,))
    if not _light_test(table):
        for a in range(n):
            ra = table[a]
            for b in range(n):
                ab = ra[b]
                rb = table[b]
                for c in range(n):
                    if table[ab][c] != ra[rb[c]]:
                        raise AxiomViolation("associativity", (a, b, c))
    return FiniteGroup(table, label)


def _light_test(table: Sequence[Sequence[int]]) -> bool:
    """Associativity of a loop table via Light's test.

    Elements ``g`` with ``(x g) y = x (g y)`` for all ``x, y`` are closed
    under multiplication, so checking a multiplicatively generating set
    suffices: ``O(n^2 log n)`` instead of ``O(n^3)``.
    """
    n = len(table)
    reached = {0}
    gens: list[int] = []
    while len(reached) < n:
        g = min(set(range(n)) - reached)
        gens.append(g)
        frontier = list(reached)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = table[x][s]
                    if y not in reached:
                        reached.add(y)
                        nxt.append(y)
            frontier = nxt
    for g in gens:
        rg = table[g]
        for x in range(n):
            xg = table[table[x][g]]
            rx = table[x]
            for y in range(n):
                if xg[y] != rx[rg[y]]:
                    return False
    return True


def trivial_group(label: str = "0") -> FiniteGroup:
    return FiniteGroup([[0]], label)


@dataclass(frozen=True, eq=False)
class GroupHom:
    dom: FiniteGroup
    cod: FiniteGroup
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    @classmethod
    def checked(cls, dom: FiniteGroup, cod: FiniteGroup, images: Sequence[int]) -> "GroupHom":
        if len(images) != dom.order:
            raise HomViolation(f"map has length {len(images)}, domain has order {dom.order}")
        for v in images:
            if not 0 <= v < cod.order:
                raise HomViolation(f"value {v} outside codomain of order {cod.order}")
        if images[0] != 0:
            raise HomViolation("identity not preserved")
        dt, ct = dom.table, cod.table
        for a in range(dom.order):
            fa = images[a]
            for b in range(dom.order):
                if images[dt[a][b]] != ct[fa][images[b]]:
                    raise HomViolation(f"multiplication not preserved at ({a}, {b})")
        return cls(dom, cod, tuple(images))

    @classmethod
    def identity(cls, g: FiniteGroup) -> "GroupHom":
        return cls(g, g, tuple(range(g.order)))

    @classmethod
    def zero(cls, dom: FiniteGroup, cod: FiniteGroup) -> "GroupHom":
        return cls(dom, cod, (0,) * dom.order)

    def __call__(self, a: int) -> int:
        return self.map[a]

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        """Composite ``self ∘ other``."""
        if other.cod != self.dom:
            raise CodomainMismatch("composite of non-composable homs")
        m = self.map
        return GroupHom(other.dom, self.cod, tuple(m[x] for x in other.map))

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return self.map == other.map and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        return hash(self.map)

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.cod.order

    @property
    def is_bijective(self) -> bool:
        return self.dom.order == self.cod.order and self.is_injective

    @property
    def is_zero(self) -> bool:
        return not any(self.map)

    def is_hom(self) -> bool:
        try:
            GroupHom.checked(self.dom, self.cod, self.map)
        except HomViolation:
            return False
        return True


@dataclass(frozen=True, eq=False)
class Embedding:
    """A subgroup of ``ambient`` together with its canonical relabeling."""

    carrier: FiniteGroup
    into: GroupHom
    element_set: tuple[int, ...]

    @property
    def ambient(self) -> FiniteGroup:
        return self.into.cod

    @property
    def order(self) -> int:
        return len(self.element_set)

    @cached_property
    def index(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.element_set)}

    def __contains__(self, x: int) -> bool:
        return x in self.index

    def is_normal(self) -> bool:
        g = self.ambient
        members = self.index
        return all(g.conj(a, x) in members for a in g for x in self.element_set)


def subgroup(ambient: FiniteGroup, elements: Iterable[int], label: str | None = None) -> Embedding:
    """Embedding for a subset already known to be a subgroup."""
    elems = tuple(sorted(set(elements)))
    pos = {x: i for i, x in enumerate(elems)}
    t = ambient.table
    table = [[pos[t[a][b]] for b in elems] for a in elems]
    carrier = FiniteGroup(table, label)
    return Embedding(carrier, GroupHom(carrier, ambient, elems), elems)


def whole(g: FiniteGroup) -> Embedding:
    return Embedding(g, GroupHom.identity(g), tuple(range(g.order)))


def generated_subgroup(g: FiniteGroup, gens: Iterable[int]) -> Embedding:
    return subgroup(g, _closure(g, gens))


def _closure(g: FiniteGroup, gens: Iterable[int]) -> set[int]:
    gens = [x for x in set(gens) if x != 0]
    seen = {0}
    frontier = [0]
    t = g.table
    while frontier:
        nxt = []
        for x in frontier:
            row = t[x]
            for s in gens:
                y = row[s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def intersection(embs: Sequence[Embedding], ambient: FiniteGroup | None = None) -> Embedding:
    if not embs:
        if ambient is None:
            raise ValueError("empty intersection needs an ambient group")
        return whole(ambient)
    common = set(embs[0].element_set)
    for e in embs[1:]:
        common &= set(e.element_set)
    return subgroup(embs[0].ambient, common)


def normal_closure(e: Embedding) -> Embedding:
    """Smallest normal subgroup of the ambient group containing ``e``."""
    g = e.ambient
    current = set(e.element_set) | {0}
    while True:
        conjugates = {g.conj(a, x) for a in g for x in current}
        closed = _closure(g, conjugates)
        if closed == current:
            return subgroup(g, current)
        current = closed


def normal_closure_of(g: FiniteGroup, elements: Iterable[int]) -> Embedding:
    return normal_closure(subgroup(g, _closure(g, elements)))


@dataclass(frozen=True, eq=False)
class QuotientPresentation:
    """``total`` modulo a normal subgroup, with its projection."""

    total: FiniteGroup
    projection: GroupHom
    coset_reps: tuple[int, ...]

    @property
    def quotient(self) -> FiniteGroup:
        return self.projection.cod

    @property
    def order(self) -> int:
        return self.projection.cod.order

    @cached_property
    def fibers(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.order)]
        for a, q in enumerate(self.projection.map):
            out[q].append(a)
        return tuple(tuple(f) for f in out)

    @property
    def kernel_elements(self) -> tuple[int, ...]:
        return self.fibers[0]


def quotient(g: FiniteGroup, normal: Embedding | Iterable[int], label: str | None = None) -> QuotientPresentation:
    """Quotient by a subgroup the caller guarantees to be normal."""
    elems = normal.element_set if isinstance(normal, Embedding) else tuple(sorted(set(normal)))
    t = g.table
    proj = [-1] * g.order
    reps: list[int] = []
    for a in g:
        if proj[a] == -1:
            q = len(reps)
            reps.append(a)
            row = t[a]
            for k in elems:
                proj[row[k]] = q
    table = [[proj[t[r][s]] for s in reps] for r in reps]
    qg = FiniteGroup(table, label)
    return QuotientPresentation(g, GroupHom(g, qg, tuple(proj)), tuple(reps))


def kernel(f: GroupHom) -> Embedding:
    return subgroup(f.dom, (a for a in f.dom if f.map[a] == 0))


def image(f: GroupHom) -> Embedding:
    return subgroup(f.cod, set(f.map))


def corestriction(f: GroupHom, target: Embedding) -> GroupHom:
    """``f`` viewed as a map into the carrier of ``target``."""
    idx = target.index
    try:
        return GroupHom(f.dom, target.carrier, tuple(idx[v] for v in f.map))
    except KeyError as exc:
        raise CodomainMismatch(f"value {exc.args[0]} not in target subgroup") from None


def restrict(f: GroupHom, source: Embedding, target: Embedding | None = None) -> GroupHom:
    """``f`` restricted to ``source`` and optionally corestricted to ``target``."""
    if source.ambient != f.dom:
        raise CodomainMismatch("source subgroup does not live in the domain")
    m = f.map
    values = tuple(m[x] for x in source.element_set)
    if target is None:
        return GroupHom(source.carrier, f.cod, values)
    idx = target.index
    try:
        return GroupHom(source.carrier, target.carrier, tuple(idx[v] for v in values))
    except KeyError as exc:
        raise CodomainMismatch(f"value {exc.args[0]} not in target subgroup") from None


def cokernel(f: GroupHom) -> QuotientPresentation:
    return quotient(f.cod, normal_closure(image(f)))


@dataclass(frozen=True, eq=False)
class Product:
    group: FiniteGroup
    factors: tuple[FiniteGroup, ...]
    projections: tuple[GroupHom, ...]

    @cached_property
    def tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*(range(g.order) for g in self.factors)))

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        s = 1
        for g in reversed(self.factors):
            strides.append(s)
            s *= g.order
        return tuple(reversed(strides))

    def index_of(self, t: Sequence[int]) -> int:
        return sum(x * s for x, s in zip(t, self._strides))

    def __iter__(self):
        # allows ``group, projections = product(...)``
        return iter((self.group, self.projections))


def product(gs: Sequence[FiniteGroup], label: str | None = None) -> Product:
    """Direct product with lexicographically ordered tuples."""
    gs = tuple(gs)
    tuples = list(itertools.product(*(range(g.order) for g in gs)))
    strides = []
    s = 1
    for g in reversed(gs):
        strides.append(s)
        s *= g.order
    strides.reverse()
    tabs = [g.table for g in gs]
    k = len(gs)
    table = []
    for t in tuples:
        rows = [tabs[i][t[i]] for i in range(k)]
        table.append([
            sum(rows[i][u[i]] * strides[i] for i in range(k)) for u in tuples
        ])
    pg = FiniteGroup(table, label)
    projections = tuple(
        GroupHom(pg, g, tuple(t[i] for t in tuples)) for i, g in enumerate(gs)
    )
    return Product(pg, gs, projections)


class SubProduct:
    """A subgroup of a product of factors, stored as its coordinate tuples.

    This is the jointly monic family of projections out of a subobject of
    the product; the product itself is only materialized on request
    through :meth:`embedding`, since it can be far larger than the
    subgroup (cycle objects live in ``A_n^(n+2)``).
    """

    def __init__(self, factors: Sequence[FiniteGroup], tuples: Iterable[Sequence[int]], label: str | None = None):
        self.factors = tuple(factors)
        self.tuples = tuple(sorted(tuple(t) for t in tuples))
        self.label = label

    @property
    def order(self) -> int:
        return len(self.tuples)

    def __len__(self):
        return len(self.tuples)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.tuples)}

    def index_of(self, t: Sequence[int]) -> int:
        return self.index[tuple(t)]

    def __contains__(self, t) -> bool:
        return tuple(t) in self.index

    @cached_property
    def carrier(self) -> FiniteGroup:
        tabs = [g.table for g in self.factors]
        idx = self.index
        k = len(tabs)
        rng = range(k)
        table = []
        for s in self.tuples:
            rows = [tabs[i][s[i]] for i in rng]
            table.append([idx[tuple(rows[i][u[i]] for i in rng)] for u in self.tuples])
        return FiniteGroup(table, self.label)

    @cached_property
    def projections(self) -> tuple[GroupHom, ...]:
        c = self.carrier
        return tuple(
            GroupHom(c, g, tuple(t[i] for t in self.tuples)) for i, g in enumerate(self.factors)
        )

    def embedding(self) -> Embedding:
        p = product(self.factors)
        return subgroup(p.group, (p.index_of(t) for t in self.tuples), self.label)

    def is_subgroup(self) -> bool:
        tabs = [g.table for g in self.factors]
        idx = self.index
        if tuple(0 for _ in self.factors) not in idx:
            return False
        for s in self.tuples:
            for u in self.tuples:
                if tuple(tabs[i][s[i]][u[i]] for i in range(len(tabs))) not in idx:
                    return False
        return True


def pullback(f: GroupHom, g: GroupHom) -> SubProduct:
    """``{(a, b) : f(a) = g(b)}`` inside ``dom f × dom g``."""
    if f.cod != g.cod:
        raise CodomainMismatch("pullback needs a common codomain")
    fibers: dict[int, list[int]] = {}
    for b in g.dom:
        fibers.setdefault(g.map[b], []).append(b)
    pairs = [(a, b) for a in f.dom for b in fibers.get(f.map[a], ())]
    return SubProduct((f.dom, g.dom), pairs)


def kernel_pair(f: GroupHom) -> SubProduct:
    return pullback(f, f)


def equalizer(f: GroupHom, g: GroupHom) -> Embedding:
    if f.dom != g.dom or f.cod != g.cod:
        raise CodomainMismatch("equalizer needs parallel homs")
    return subgroup(f.dom, (a for a in f.dom if f.map[a] == g.map[a]))


def coequalizer_pair(f: GroupHom, g: GroupHom) -> QuotientPresentation:
    """Quotient of the codomain by the normal closure of ``f(a) g(a)^-1``."""
    if f.dom != g.dom or f.cod != g.cod:
        raise CodomainMismatch("coequalizer needs parallel homs")
    c = f.cod
    diffs = {c.mul(f.map[a], c.inv(g.map[a])) for a in f.dom}
    return quotient(c, normal_closure_of(c, diffs))


def induced_on_quotients(f: GroupHom, src: QuotientPresentation, dst: QuotientPresentation) -> GroupHom:
    """The map ``src.quotient -> dst.quotient`` induced by ``f`` on representatives."""
    pm = dst.projection.map
    images = tuple(pm[f.map[r]] for r in src.coset_reps)
    return GroupHom(src.quotient, dst.quotient, images)


def normal_subgroups(g: FiniteGroup) -> list[Embedding]:
    """All normal subgroups, ordered by (order, element set)."""
    found: set[tuple[int, ...]] = set()
    base = [normal_closure_of(g, [x]).element_set for x in g]
    frontier = set(base)
    found |= frontier
    while frontier:
        nxt = set()
        for a in frontier:
            for b in base:
                j = normal_closure_of(g, set(a) | set(b)).element_set
                if j not in found:
                    found.add(j)
                    nxt.add(j)
        frontier = nxt
    return [subgroup(g, s) for s in sorted(found, key=lambda s: (len(s), s))]


def generating_set(g: FiniteGroup) -> list[int]:
    """Greedy generating set: repeatedly add the least element not yet generated."""
    gens: list[int] = []
    span = {0}
    for x in g:
        if x not in span:
            gens.append(x)
            span = _closure(g, gens)
            if len(span) == g.order:
                break
    return gens


def _extend(dom: FiniteGroup, cod: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> dict[int, int] | None:
    """Extend generator images to a hom on the subgroup they span, or None.

    Consistency along every edge of the Cayley graph for ``gens`` forces
    the resulting map to be multiplicative.
    """
    m = {0: 0}
    queue = [0]
    dt, ct = dom.table, cod.table
    for x in queue:
        mx = m[x]
        for s, t in zip(gens, imgs):
            y = dt[x][s]
            v = ct[mx][t]
            got = m.get(y)
            if got is None:
                m[y] = v
                queue.append(y)
            elif got != v:
                return None
    return m


def _hom_search(dom: FiniteGroup, cod: FiniteGroup, candidates, gens=None) -> Iterator[GroupHom]:
    gens = generating_set(dom) if gens is None else gens
    if not gens:
        yield GroupHom.zero(dom, cod)
        return

    def rec(k: int, imgs: list[int]):
        for t in candidates(gens[k]):
            imgs.append(t)
            m = _extend(dom, cod, gens[: k + 1], imgs)
            if m is not None:
                if k + 1 == len(gens):
                    yield GroupHom(dom, cod, tuple(m[a] for a in dom))
                else:
                    yield from rec(k + 1, imgs)
            imgs.pop()

    yield from rec(0, [])


def homomorphisms(dom: FiniteGroup, cod: FiniteGroup) -> Iterator[GroupHom]:
    """Every hom ``dom -> cod``, in lexicographic order of generator images."""
    cod_orders = cod.element_orders

    def candidates(s):
        n = dom.element_order(s)
        return [t for t in cod if n % cod_orders[t] == 0]

    yield from _hom_search(dom, cod, candidates)


DEFAULT_ISO_CAP = 64


def is_isomorphic(g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_ISO_CAP) -> GroupHom | None:
    """Return the first isomorphism ``g -> h`` in search order, or None."""
    if g.order > cap or h.order > cap:
        raise OrderCap(f"isomorphism search capped at order {cap}")
    if g.order != h.order:
        return None
    if g == h:
        return GroupHom.identity(g)
    if sorted(g.element_orders) != sorted(h.element_orders) or g.is_abelian != h.is_abelian:
        return None
    h_orders = h.element_orders

    def candidates(s):
        n = g.element_orders[s]
        return [t for t in h if h_orders[t] == n]

    for f in _hom_search(g, h, candidates):
        if f.is_injective:
            return f
    return None
