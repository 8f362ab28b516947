"""Seeded generators of commuting squares and short-exact ladders."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .catalog import group_pool
from .groups import FiniteGroup, GroupHom, QuotientPresentation, homomorphisms, induced_on_quotients, normal_subgroups, quotient, restrict, trivial_group
from .homotopy import CommutingSquare

SQUARE_ORDER_CAP = 12


def _small_pool() -> list[FiniteGroup]:
    return [g for g in group_pool() if g.order <= SQUARE_ORDER_CAP]


def degenerate_square(g: FiniteGroup) -> CommutingSquare:
    """Top ``0 ↠ 0``, bottom ``G ↠ 0``; never a regular pushout when G is nontrivial."""
    z = trivial_group()
    return CommutingSquare(
        top=GroupHom.identity(z),
        bottom=GroupHom.zero(g, z),
        left=GroupHom.zero(z, g),
        right=GroupHom.identity(z),
    )


def identity_square(g: FiniteGroup) -> CommutingSquare:
    i = GroupHom.identity(g)
    return CommutingSquare(i, i, i, i)


def _quotient_square(src: FiniteGroup, m, dst: FiniteGroup, l, v: GroupHom) -> CommutingSquare | None:
    """Square ``A'/M`` over ``A/L`` induced by ``v``, or None when ``v(M) ⊄ L``."""
    if not all(v.map[x] in set(l.element_set) for x in m.element_set):
        return None
    qt, qb = quotient(src, m), quotient(dst, l)
    w = induced_on_quotients(v, qt, qb)
    return CommutingSquare(qt.projection, qb.projection, v, w)


def random_squares(seed: int = 0, count: int = 60) -> list[CommutingSquare]:
    """``count`` commuting squares with surjective horizontals, the first ones fixed:
    the degenerate negative square and an identity square."""
    rng = random.Random(seed)
    pool = _small_pool()
    out = [degenerate_square(pool[1]), degenerate_square(pool[7]), identity_square(pool[7])]
    homs_cache: dict[tuple[int, int], list[GroupHom]] = {}
    normals = {i: normal_subgroups(g) for i, g in enumerate(pool)}
    while len(out) < count:
        i, j = rng.randrange(len(pool)), rng.randrange(len(pool))
        if (i, j) not in homs_cache:
            homs_cache[(i, j)] = list(homomorphisms(pool[i], pool[j]))
        v = rng.choice(homs_cache[(i, j)])
        m = rng.choice(normals[i])
        l = rng.choice(normals[j])
        sq = _quotient_square(pool[i], m, pool[j], l, v)
        if sq is not None:
            out.append(sq)
    return out


@dataclass
class Ladder:
    """Two short exact sequences ``K -> B -> Q`` with vertical maps ``u, v, w``."""

    top: tuple[GroupHom, GroupHom]
    bottom: tuple[GroupHom, GroupHom]
    u: GroupHom
    v: GroupHom
    w: GroupHom


def _ses(g: FiniteGroup, n) -> tuple[GroupHom, GroupHom, QuotientPresentation]:
    q = quotient(g, n)
    return n.into, q.projection, q


def random_ladders(seed: int = 0, count: int = 40) -> list[Ladder]:
    rng = random.Random(seed)
    pool = _small_pool()
    normals = {i: normal_subgroups(g) for i, g in enumerate(pool)}
    out: list[Ladder] = []
    while len(out) < count:
        i = rng.randrange(len(pool))
        j = i if rng.random() < 0.6 else rng.randrange(len(pool))
        v = rng.choice(list(homomorphisms(pool[i], pool[j])))
        n1, n2 = rng.choice(normals[i]), rng.choice(normals[j])
        target = set(n2.element_set)
        if not all(v.map[x] in target for x in n1.element_set):
            continue
        k1, p1, q1 = _ses(pool[i], n1)
        k2, p2, q2 = _ses(pool[j], n2)
        u = restrict(v, n1, n2)
        w = induced_on_quotients(v, q1, q2)
        out.append(Ladder((k1, p1), (k2, p2), u, v, w))
    return out
