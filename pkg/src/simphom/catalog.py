"""Named small groups and a structure description used in reports."""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Sequence

from .groups import FiniteGroup, is_isomorphic, product


def from_elements(elements: Sequence[Hashable], mul: Callable, label: str | None = None) -> FiniteGroup:
    """Cayley table of ``elements`` under ``mul``; ``elements[0]`` must be the identity."""
    pos = {x: i for i, x in enumerate(elements)}
    table = [[pos[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, label)


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], f"C{n}" if n > 1 else "0")


def _perm_mul(p, q):
    # (p*q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def permutation_group(perms: Sequence[tuple[int, ...]], label: str) -> FiniteGroup:
    ident = tuple(range(len(perms[0])))
    elems = [ident] + sorted(p for p in set(perms) if p != ident)
    return from_elements(elems, _perm_mul, label)


def _generate_perms(gens: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _perm_mul(p, g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def symmetric(n: int) -> FiniteGroup:
    return permutation_group(list(itertools.permutations(range(n))), f"S{n}")


def alternating(n: int) -> FiniteGroup:
    def even(p):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inv % 2 == 0

    return permutation_group([p for p in itertools.permutations(range(n)) if even(p)], f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return permutation_group(_generate_perms([rot, ref]), f"D{n}")


def quaternion() -> FiniteGroup:
    # unit quaternions as (sign, axis), axis 0 = 1, 1 = i, 2 = j, 3 = k
    def mul(a, b):
        sa, xa = a
        sb, xb = b
        if xa == 0:
            return (sa * sb, xb)
        if xb == 0:
            return (sa * sb, xa)
        if xa == xb:
            return (-sa * sb, 0)
        third = 6 - xa - xb
        sign = 1 if (xb - xa) % 3 == 1 else -1
        return (sa * sb * sign, third)

    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    return from_elements(elems, mul, "Q8")


def klein_four() -> FiniteGroup:
    g = product([cyclic(2), cyclic(2)]).group
    g.label = "K4"
    return g


def abelian_invariants(g: FiniteGroup) -> list[int]:
    """Primary-power cyclic factors of an abelian group, sorted ascending."""
    if not g.is_abelian:
        raise ValueError("group is not abelian")
    orders = g.element_orders
    n = g.order
    factors: list[int] = []
    p = 2
    m = n
    primes = []
    while m > 1:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    for p in primes:
        # |{x : x^(p^k) = 1}| = p^(sum_i min(k, e_i)); differences give the
        # number of cyclic factors of exponent >= k
        counts = []
        k = 0
        while True:
            k += 1
            c = sum(1 for o in orders if (p ** k) % o == 0)
            counts.append(c)
            if k > 1 and counts[-1] == counts[-2]:
                break
        logs = [0] + [_log(c, p) for c in counts]
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        for k in range(len(at_least)):
            exactly = at_least[k] - (at_least[k + 1] if k + 1 < len(at_least) else 0)
            factors.extend([p ** (k + 1)] * exactly)
    return sorted(factors)


def _log(c: int, p: int) -> int:
    e = 0
    while c > 1:
        c //= p
        e += 1
    return e


_NONABELIAN = [symmetric(3), dihedral(4), quaternion(), dihedral(5), alternating(4), dihedral(6)]


def describe(g: FiniteGroup) -> str:
    """Human-readable isomorphism type, e.g. ``"0"``, ``"C2 x C4"``, ``"S3"``."""
    if g.order == 1:
        return "0"
    if g.is_abelian:
        return " x ".join(f"C{k}" for k in abelian_invariants(g))
    for named in _NONABELIAN:
        if named.order == g.order and g.order <= 64 and is_isomorphic(g, named) is not None:
            return named.label
    return f"nonabelian group of order {g.order}"


def group_pool() -> list[FiniteGroup]:
    """Small groups used as fixtures and as targets in exhaustive searches."""
    c2c4 = product([cyclic(2), cyclic(4)]).group
    c2c4.label = "C2xC4"
    return [
        cyclic(1), cyclic(2), cyclic(3), cyclic(4), klein_four(), cyclic(5), cyclic(6),
        symmetric(3), cyclic(8), c2c4, dihedral(4), quaternion(), alternating(4),
    ]
