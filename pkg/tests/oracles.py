"""Brute-force reference computations used to cross-check the library.

Everything here works on raw multiplication tables and face arrays and
avoids the library's subgroup, quotient and homology machinery.
"""

from __future__ import annotations

from collections import Counter
from itertools import product


def table_of(g):
    return g.table


def closure(table, gens) -> frozenset[int]:
    """Subgroup generated by ``gens`` (finite, so closing under products suffices)."""
    elems = {0, *gens}
    frontier = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for b in list(elems):
                for c in (table[a][b], table[b][a]):
                    if c not in elems:
                        elems.add(c)
                        new.append(c)
        frontier = new
    return frozenset(elems)


def inverse(table, a):
    return table[a].index(0)


def normal_closure(table, gens) -> frozenset[int]:
    n = len(table)
    current = closure(table, gens)
    while True:
        conj = {table[table[g][x]][inverse(table, g)] for g in range(n) for x in current}
        nxt = closure(table, conj | current)
        if nxt == current:
            return current
        current = nxt


def is_associative(table) -> bool:
    n = len(table)
    return all(table[table[a][b]][c] == table[a][table[b][c]]
               for a in range(n) for b in range(n) for c in range(n))


def is_group_table(table) -> bool:
    n = len(table)
    if any(sorted(row) != list(range(n)) for row in table):
        return False
    if any(table[0][a] != a or table[a][0] != a for a in range(n)):
        return False
    return is_associative(table)


def quotient_signature(table, cycles, bounds) -> tuple:
    """Isomorphism-invariant fingerprint of ``cycles / bounds``: order,
    commutativity and the multiset of element orders."""
    cycles, bounds = list(cycles), frozenset(bounds)
    coset = {}
    for x in cycles:
        coset[x] = frozenset(table[x][b] for b in bounds)
    reps = {c: min(c) for c in coset.values()}
    orders = Counter()
    for c, r in reps.items():
        k, y = 1, r
        while y not in bounds:
            y = table[y][r]
            k += 1
        orders[k] += 1
    abelian = all(coset[table[a][b]] == coset[table[b][a]] for a in reps.values() for b in reps.values())
    return (len(reps), abelian, tuple(sorted(orders.items())))


def group_signature(g) -> tuple:
    return quotient_signature(g.table, range(g.order), {0})


def moore_sets(A) -> list[frozenset[int]]:
    """``N_n = {a : ∂_i a = e for i < n}`` straight from the face arrays."""
    out = [frozenset(A.levels[0])]
    for n in range(1, A.depth + 1):
        faces = [A.face(n, i).map for i in range(n)]
        out.append(frozenset(a for a in A.levels[n] if all(f[a] == 0 for f in faces)))
    return out


def homology_data(A, n):
    """Cycles and boundaries of the Moore complex in degree ``n`` as subsets of ``A_n``."""
    N = moore_sets(A)
    if n == 0:
        cycles = N[0]
    else:
        dn = A.face(n, n).map
        cycles = frozenset(a for a in N[n] if dn[a] == 0)
    up = A.face(n + 1, n + 1).map
    bounds = frozenset(up[a] for a in N[n + 1])
    return cycles, bounds


def homology_signature(A, n) -> tuple:
    cycles, bounds = homology_data(A, n)
    return quotient_signature(A.levels[n].table, cycles, bounds)


def homology_order(A, n) -> int:
    cycles, bounds = homology_data(A, n)
    return len(cycles) // len(bounds)


def coequalizer_signature(f, g) -> tuple:
    """``Coeq(f, g)`` as the quotient of the codomain by the normal closure of ``f(x) g(x)^-1``."""
    t = f.cod.table
    rel = {t[f.map[x]][inverse(t, g.map[x])] for x in range(f.dom.order)}
    return quotient_signature(t, range(f.cod.order), normal_closure(t, rel))


def compatible_horns(A, n, k) -> list[tuple[int, ...]]:
    """All ``(x_i)_{i≠k}`` in ``A_{n-1}`` with ``∂_i x_j = ∂_{j-1} x_i`` for i < j, by exhaustion."""
    idx = [i for i in range(n + 1) if i != k]
    g = A.levels[n - 1]
    out = []
    for xs in product(range(g.order), repeat=len(idx)):
        x = dict(zip(idx, xs))
        ok = n == 1 or all(A.face(n - 1, i).map[x[j]] == A.face(n - 1, j - 1).map[x[i]]
                           for i in idx for j in idx if i < j)
        if ok:
            out.append(xs)
    return out


def is_normal_in(table, sub, ambient) -> bool:
    return all(table[table[g][x]][inverse(table, g)] in sub for g in ambient for x in sub)


def all_maps_homs(dom, cod) -> int:
    """Count homomorphisms by testing every function ``dom -> cod``."""
    td, tc = dom.table, cod.table
    count = 0
    for images in product(range(cod.order), repeat=dom.order):
        if all(images[td[a][b]] == tc[images[a]][images[b]] for a in range(dom.order) for b in range(dom.order)):
            count += 1
    return count
