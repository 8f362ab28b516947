"""Truncated simplicial groups, simplicial homs, and fixture generators.

A truncated simplicial group of depth ``N`` stores levels ``A_0..A_N`` with
``faces[n-1][i] = ∂_i : A_n -> A_{n-1}`` and
``degeneracies[n][i] = σ_i : A_n -> A_{n+1}``. Identities are only checked
where both sides exist inside the truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .groups import (
    Embedding,
    FiniteGroup,
    GroupHom,
    kernel,
    product,
    quotient,
    restrict,
    subgroup,
)


class SimplicialError(Exception):
    pass


class IdentityViolation(SimplicialError):
    def __init__(self, family: str, n: int, i: int, j: int | None, element: int):
        self.family, self.n, self.i, self.j, self.element = family, n, i, j, element
        super().__init__(f"{family} fails at level {n}, i={i}, j={j}, element {element}")


class NonAbelianNerve(SimplicialError):
    pass


class DepthTooSmall(SimplicialError):
    pass


class ShapeError(SimplicialError):
    pass


@dataclass(frozen=True, eq=False)
class TruncatedSimplicialGroup:
    levels: tuple[FiniteGroup, ...]
    faces: tuple[tuple[GroupHom, ...], ...]
    degeneracies: tuple[tuple[GroupHom, ...], ...]
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "faces", tuple(tuple(f) for f in self.faces))
        object.__setattr__(self, "degeneracies", tuple(tuple(s) for s in self.degeneracies))

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def face(self, n: int, i: int) -> GroupHom:
        """``∂_i : A_n -> A_{n-1}``"""
        return self.faces[n - 1][i]

    def degeneracy(self, n: int, i: int) -> GroupHom:
        """``σ_i : A_n -> A_{n+1}``"""
        return self.degeneracies[n][i]

    def __repr__(self):
        sizes = ", ".join(str(g.order) for g in self.levels)
        return f"<simplicial {self.label or 'group'} depth {self.depth}: [{sizes}]>"


def validate_simplicial(
    levels: Sequence[FiniteGroup],
    faces: Sequence[Sequence[GroupHom]],
    degeneracies: Sequence[Sequence[GroupHom]],
    label: str | None = None,
) -> TruncatedSimplicialGroup:
    """Check shapes, hom-ness and every simplicial identity elementwise."""
    N = len(levels) - 1
    if N < 0 or len(faces) != N or len(degeneracies) != N:
        raise ShapeError("depth N needs N+1 levels, N face rows and N degeneracy rows")
    for n in range(1, N + 1):
        if len(faces[n - 1]) != n + 1:
            raise ShapeError(f"level {n} needs {n + 1} faces")
        for i, f in enumerate(faces[n - 1]):
            if f.dom != levels[n] or f.cod != levels[n - 1]:
                raise ShapeError(f"face ∂_{i} at level {n} has wrong domain or codomain")
            if not f.is_hom():
                raise ShapeError(f"face ∂_{i} at level {n} is not a homomorphism")
    for n in range(N):
        if len(degeneracies[n]) != n + 1:
            raise ShapeError(f"level {n} needs {n + 1} degeneracies")
        for i, s in enumerate(degeneracies[n]):
            if s.dom != levels[n] or s.cod != levels[n + 1]:
                raise ShapeError(f"degeneracy σ_{i} at level {n} has wrong domain or codomain")
            if not s.is_hom():
                raise ShapeError(f"degeneracy σ_{i} at level {n} is not a homomorphism")
    A = TruncatedSimplicialGroup(levels, faces, degeneracies, label)
    check_identities(A)
    return A


def _first_difference(lhs: Sequence[int], rhs: Sequence[int]) -> int | None:
    for x, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            return x
    return None


def check_identities(A: TruncatedSimplicialGroup) -> None:
    N = A.depth
    d, s = A.face, A.degeneracy

    def composite(g: GroupHom, f: GroupHom) -> tuple[int, ...]:
        return tuple(g.map[v] for v in f.map)

    # ∂_i ∂_j = ∂_{j-1} ∂_i, i < j, on A_n
    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                x = _first_difference(composite(d(n - 1, i), d(n, j)), composite(d(n - 1, j - 1), d(n, i)))
                if x is not None:
                    raise IdentityViolation("face-face", n, i, j, x)
    for n in range(N):
        for j in range(n + 1):
            sj = s(n, j)
            for i in range(n + 2):
                lhs = composite(d(n + 1, i), sj)
                if i == j or i == j + 1:
                    rhs = tuple(range(A.levels[n].order))
                    family = "face-degeneracy (identity)"
                elif n == 0:
                    continue
                elif i < j:
                    rhs = composite(s(n - 1, j - 1), d(n, i))
                    family = "face-degeneracy (i<j)"
                else:
                    rhs = composite(s(n - 1, j), d(n, i - 1))
                    family = "face-degeneracy (i>j+1)"
                x = _first_difference(lhs, rhs)
                if x is not None:
                    raise IdentityViolation(family, n + 1, i, j, x)
    # σ_i σ_j = σ_{j+1} σ_i, i <= j, on A_n
    for n in range(N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                x = _first_difference(composite(s(n + 1, i), s(n, j)), composite(s(n + 1, j + 1), s(n, i)))
                if x is not None:
                    raise IdentityViolation("degeneracy-degeneracy", n, i, j, x)


@dataclass(frozen=True, eq=False)
class SimplicialHom:
    dom: TruncatedSimplicialGroup
    cod: TruncatedSimplicialGroup
    level_maps: tuple[GroupHom, ...]
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "level_maps", tuple(self.level_maps))

    @property
    def depth(self) -> int:
        return self.dom.depth

    def __getitem__(self, n: int) -> GroupHom:
        return self.level_maps[n]

    @property
    def is_levelwise_surjective(self) -> bool:
        return all(f.is_surjective for f in self.level_maps)

    @property
    def is_levelwise_injective(self) -> bool:
        return all(f.is_injective for f in self.level_maps)

    def __matmul__(self, other: "SimplicialHom") -> "SimplicialHom":
        return SimplicialHom(other.dom, self.cod, [f @ g for f, g in zip(self.level_maps, other.level_maps)])


def validate_simplicial_hom(dom, cod, level_maps, label=None) -> SimplicialHom:
    if dom.depth != cod.depth or len(level_maps) != dom.depth + 1:
        raise ShapeError("simplicial hom needs equal depths and one map per level")
    for n, f in enumerate(level_maps):
        if f.dom != dom.levels[n] or f.cod != cod.levels[n]:
            raise ShapeError(f"level map {n} has wrong domain or codomain")
        if not f.is_hom():
            raise ShapeError(f"level map {n} is not a homomorphism")
    for n in range(1, dom.depth + 1):
        for i in range(n + 1):
            if (level_maps[n - 1] @ dom.face(n, i)).map != (cod.face(n, i) @ level_maps[n]).map:
                raise ShapeError(f"level maps do not commute with ∂_{i} at level {n}")
    for n in range(dom.depth):
        for i in range(n + 1):
            if (level_maps[n + 1] @ dom.degeneracy(n, i)).map != (cod.degeneracy(n, i) @ level_maps[n]).map:
                raise ShapeError(f"level maps do not commute with σ_{i} at level {n}")
    return SimplicialHom(dom, cod, level_maps, label)


def identity_hom(A: TruncatedSimplicialGroup) -> SimplicialHom:
    return SimplicialHom(A, A, [GroupHom.identity(g) for g in A.levels])


@dataclass(frozen=True, eq=False)
class SimplicialSES:
    sub: TruncatedSimplicialGroup
    total: TruncatedSimplicialGroup
    quot: TruncatedSimplicialGroup
    inclusion: SimplicialHom
    projection: SimplicialHom
    label: str | None = None


def validate_ses(inclusion: SimplicialHom, projection: SimplicialHom, label=None) -> SimplicialSES:
    if inclusion.cod is not projection.dom and inclusion.cod.levels != projection.dom.levels:
        raise ShapeError("inclusion and projection do not compose")
    for n, (i, p) in enumerate(zip(inclusion.level_maps, projection.level_maps)):
        if not i.is_injective:
            raise ShapeError(f"inclusion not injective at level {n}")
        if not p.is_surjective:
            raise ShapeError(f"projection not surjective at level {n}")
        if set(i.map) != set(kernel(p).element_set):
            raise ShapeError(f"level {n} not exact in the middle")
    return SimplicialSES(inclusion.dom, inclusion.cod, projection.cod, inclusion, projection, label)


# ---------------------------------------------------------------- generators


def constant(g: FiniteGroup, depth: int, label: str | None = None) -> TruncatedSimplicialGroup:
    ident = GroupHom.identity(g)
    return TruncatedSimplicialGroup(
        [g] * (depth + 1),
        [[ident] * (n + 1) for n in range(1, depth + 1)],
        [[ident] * (n + 1) for n in range(depth)],
        label or f"constant({g.label})",
    )


def _tuple_map(src, dst, fn) -> GroupHom:
    return GroupHom(src.group, dst.group, tuple(dst.index_of(fn(t)) for t in src.tuples))


def codiscrete(g: FiniteGroup, depth: int, label: str | None = None) -> TruncatedSimplicialGroup:
    """Level n is ``G^(n+1)``; ∂_i deletes coordinate i, σ_i repeats it."""
    prods = [product([g] * (n + 1)) for n in range(depth + 1)]
    for n, p in enumerate(prods):
        p.group.label = f"{g.label}^{n + 1}"
    faces = [
        [_tuple_map(prods[n], prods[n - 1], lambda t, i=i: t[:i] + t[i + 1:]) for i in range(n + 1)]
        for n in range(1, depth + 1)
    ]
    degs = [
        [_tuple_map(prods[n], prods[n + 1], lambda t, i=i: t[: i + 1] + t[i:]) for i in range(n + 1)]
        for n in range(depth)
    ]
    return TruncatedSimplicialGroup([p.group for p in prods], faces, degs, label or f"codiscrete({g.label})")


def nerve(g: FiniteGroup, depth: int, label: str | None = None) -> TruncatedSimplicialGroup:
    """Bar construction: level n is ``G^n``.

    ∂_0 drops the first entry, ∂_n drops the last, inner faces multiply
    neighbours; σ_i inserts the identity at position i. Faces are only
    homomorphisms when ``G`` is abelian.
    """
    if not g.is_abelian:
        raise NonAbelianNerve(f"nerve of {g.label} would have non-homomorphic faces")
    prods = [product([g] * n) for n in range(depth + 1)]
    for n, p in enumerate(prods):
        p.group.label = f"{g.label}^{n}"

    def face(t, i):
        n = len(t)
        if i == 0:
            return t[1:]
        if i == n:
            return t[:-1]
        return t[: i - 1] + (g.mul(t[i - 1], t[i]),) + t[i + 1:]

    faces = [
        [_tuple_map(prods[n], prods[n - 1], lambda t, i=i: face(t, i)) for i in range(n + 1)]
        for n in range(1, depth + 1)
    ]
    degs = [
        [_tuple_map(prods[n], prods[n + 1], lambda t, i=i: t[:i] + (0,) + t[i:]) for i in range(n + 1)]
        for n in range(depth)
    ]
    return TruncatedSimplicialGroup([p.group for p in prods], faces, degs, label or f"nerve({g.label})")


def product_of(A: TruncatedSimplicialGroup, B: TruncatedSimplicialGroup, label=None):
    """Levelwise product, with its two projections."""
    if A.depth != B.depth:
        raise ShapeError("product needs equal depths")
    prods = [product([a, b]) for a, b in zip(A.levels, B.levels)]

    def pair_map(n_src, n_dst, f, g):
        src, dst = prods[n_src], prods[n_dst]
        return _tuple_map(src, dst, lambda t: (f.map[t[0]], g.map[t[1]]))

    N = A.depth
    faces = [[pair_map(n, n - 1, A.face(n, i), B.face(n, i)) for i in range(n + 1)] for n in range(1, N + 1)]
    degs = [[pair_map(n, n + 1, A.degeneracy(n, i), B.degeneracy(n, i)) for i in range(n + 1)] for n in range(N)]
    P = TruncatedSimplicialGroup([p.group for p in prods], faces, degs, label or f"{A.label}x{B.label}")
    pa = SimplicialHom(P, A, [p.projections[0] for p in prods])
    pb = SimplicialHom(P, B, [p.projections[1] for p in prods])
    return P, pa, pb


def truncate(A: TruncatedSimplicialGroup, depth: int) -> TruncatedSimplicialGroup:
    if depth > A.depth:
        raise DepthTooSmall(f"cannot extend depth {A.depth} to {depth}")
    if depth == A.depth:
        return A
    return TruncatedSimplicialGroup(A.levels[: depth + 1], A.faces[:depth], A.degeneracies[:depth], A.label)


def truncate_hom(f: SimplicialHom, depth: int) -> SimplicialHom:
    return SimplicialHom(truncate(f.dom, depth), truncate(f.cod, depth), f.level_maps[: depth + 1], f.label)


def shift_minus(A: TruncatedSimplicialGroup) -> TruncatedSimplicialGroup:
    """Drop ``A_0`` with every ∂_0 and σ_0: level n becomes ``A_{n+1}``."""
    if A.depth < 1:
        raise DepthTooSmall("shift needs depth >= 1")
    N = A.depth - 1
    faces = [[A.face(n + 1, i + 1) for i in range(n + 1)] for n in range(1, N + 1)]
    degs = [[A.degeneracy(n + 1, i + 1) for i in range(n + 1)] for n in range(N)]
    return TruncatedSimplicialGroup(A.levels[1:], faces, degs, f"{A.label}⁻")


def first_face_hom(A: TruncatedSimplicialGroup) -> SimplicialHom:
    """The simplicial hom ``∂ = (∂_0)_n : A⁻ -> A`` (A truncated to depth N-1)."""
    minus = shift_minus(A)
    return SimplicialHom(minus, truncate(A, A.depth - 1), [A.face(n + 1, 0) for n in range(A.depth)])


def sub_simplicial(A: TruncatedSimplicialGroup, subs: Sequence[Embedding], label=None):
    """Restriction of the structure maps to levelwise subgroups closed under them."""
    N = A.depth
    faces = [[restrict(A.face(n, i), subs[n], subs[n - 1]) for i in range(n + 1)] for n in range(1, N + 1)]
    degs = [[restrict(A.degeneracy(n, i), subs[n], subs[n + 1]) for i in range(n + 1)] for n in range(N)]
    S = TruncatedSimplicialGroup([e.carrier for e in subs], faces, degs, label)
    return S, SimplicialHom(S, A, [e.into for e in subs])


def levelwise_kernel(f: SimplicialHom, label=None):
    """Kernel of a simplicial hom, with its inclusion."""
    return sub_simplicial(f.dom, [kernel(g) for g in f.level_maps], label or f"ker({f.label or 'f'})")


def lambda_of(A: TruncatedSimplicialGroup):
    """``ΛA``, the kernel of ``∂ : A⁻ -> A``, with its inclusion into ``A⁻``."""
    if A.depth < 1:
        raise DepthTooSmall("ΛA needs depth >= 1")
    K, inc = levelwise_kernel(first_face_hom(A), f"Λ{A.label}")
    return K, inc


def levelwise_quotient(A: TruncatedSimplicialGroup, normals: Sequence[Embedding], label=None):
    """Quotient by a simplicial normal subgroup, with its projection."""
    qs = [quotient(g, e) for g, e in zip(A.levels, normals)]

    def induced(f, src, dst):
        return GroupHom(src.quotient, dst.quotient, tuple(dst.projection.map[f.map[r]] for r in src.coset_reps))

    N = A.depth
    faces = [[induced(A.face(n, i), qs[n], qs[n - 1]) for i in range(n + 1)] for n in range(1, N + 1)]
    degs = [[induced(A.degeneracy(n, i), qs[n], qs[n + 1]) for i in range(n + 1)] for n in range(N)]
    B = TruncatedSimplicialGroup([q.quotient for q in qs], faces, degs, label or f"{A.label}/N")
    return B, SimplicialHom(A, B, [q.projection for q in qs])


def ses_from_surjection(p: SimplicialHom, label=None) -> SimplicialSES:
    K, inc = levelwise_kernel(p)
    return validate_ses(inc, p, label)


def ses_from_normal(A: TruncatedSimplicialGroup, normals: Sequence[Embedding], label=None) -> SimplicialSES:
    S, inc = sub_simplicial(A, normals)
    B, proj = levelwise_quotient(A, normals)
    return validate_ses(inc, proj, label)


def lambda_sequence(A: TruncatedSimplicialGroup, label=None) -> SimplicialSES:
    """``0 -> ΛA -> A⁻ -> A -> 0`` with ``A`` truncated to depth N-1."""
    K, inc = lambda_of(A)
    return validate_ses(inc, first_face_hom(A), label)


def diagonal(A_group: FiniteGroup, depth: int) -> list[Embedding]:
    """Levelwise diagonal of ``codiscrete(G)``: a copy of ``constant(G)``."""
    out = []
    for n in range(depth + 1):
        p = product([A_group] * (n + 1))
        out.append(subgroup(p.group, (p.index_of((g,) * (n + 1)) for g in A_group)))
    return out


# ------------------------------------------------------- maps from group homs


def constant_map(f: GroupHom, depth: int, dom=None, cod=None) -> SimplicialHom:
    dom = dom or constant(f.dom, depth)
    cod = cod or constant(f.cod, depth)
    return SimplicialHom(dom, cod, [f] * (depth + 1))


def _power_map(f: GroupHom, src_powers, dst_powers) -> list[GroupHom]:
    out = []
    for n, (ps, pd) in enumerate(zip(src_powers, dst_powers)):
        out.append(GroupHom(ps.group, pd.group, tuple(pd.index_of(tuple(f.map[x] for x in t)) for t in ps.tuples)))
    return out


def codiscrete_map(f: GroupHom, depth: int, dom=None, cod=None) -> SimplicialHom:
    dom = dom or codiscrete(f.dom, depth)
    cod = cod or codiscrete(f.cod, depth)
    src = [_Powers(f.dom, n + 1, dom.levels[n]) for n in range(depth + 1)]
    dst = [_Powers(f.cod, n + 1, cod.levels[n]) for n in range(depth + 1)]
    return SimplicialHom(dom, cod, _power_map(f, src, dst))


def nerve_map(f: GroupHom, depth: int, dom=None, cod=None) -> SimplicialHom:
    dom = dom or nerve(f.dom, depth)
    cod = cod or nerve(f.cod, depth)
    src = [_Powers(f.dom, n, dom.levels[n]) for n in range(depth + 1)]
    dst = [_Powers(f.cod, n, cod.levels[n]) for n in range(depth + 1)]
    return SimplicialHom(dom, cod, _power_map(f, src, dst))


class _Powers:
    """Lexicographic tuple indexing for a power ``G^k`` already built as ``group``."""

    def __init__(self, g: FiniteGroup, k: int, group: FiniteGroup):
        self.group = group
        self.k = k
        self.n = g.order
        self.tuples = list(itertools.product(range(g.order), repeat=k))

    def index_of(self, t):
        i = 0
        for x in t:
            i = i * self.n + x
        return i
