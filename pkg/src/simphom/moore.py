"""Structural calculus of a simplicial group: Moore complex, cycle objects ∇_n,
the coequalizer description of homology, and the augmented-fork test."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import chain
from .chain import Homology, IndexOutOfRange, ProperChainComplex
from .groups import (
    Embedding,
    FiniteGroup,
    GroupHom,
    QuotientPresentation,
    SubProduct,
    cokernel,
    coequalizer_pair,
    homomorphisms,
    intersection,
    kernel,
    pullback,
    restrict,
    subgroup,
    whole,
)
from .simplicial import SimplicialHom, TruncatedSimplicialGroup

DEFAULT_BUDGET = 10_000_000


class EnumerationCap(Exception):
    pass


class ShapeMismatch(Exception):
    pass


class Budget:
    """Counter of partial tuples visited by a backtracking search."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1):
        self.used += k
        if self.used > self.limit:
            raise EnumerationCap(f"search exceeded the node budget of {self.limit}")


# ---------------------------------------------------------------- Moore


def moore_subgroups(A: TruncatedSimplicialGroup) -> list[Embedding]:
    """``N_n A = ⋂_{i<n} K[∂_i]`` as subgroups of ``A_n``."""
    out = [whole(A.levels[0])]
    for n in range(1, A.depth + 1):
        out.append(intersection([kernel(A.face(n, i)) for i in range(n)], A.levels[n]))
    return out


@dataclass(frozen=True, eq=False)
class MooreComplex:
    complex: ProperChainComplex
    subgroups: tuple[Embedding, ...]


def moore_data(A: TruncatedSimplicialGroup) -> MooreComplex:
    subs = moore_subgroups(A)
    diffs = [restrict(A.face(n, n), subs[n], subs[n - 1]) for n in range(1, A.depth + 1)]
    return MooreComplex(ProperChainComplex([e.carrier for e in subs], diffs), tuple(subs))


def moore(A: TruncatedSimplicialGroup) -> ProperChainComplex:
    return moore_data(A).complex


def moore_maps(f: SimplicialHom, src: MooreComplex | None = None, dst: MooreComplex | None = None) -> list[GroupHom]:
    src = src or moore_data(f.dom)
    dst = dst or moore_data(f.cod)
    return [restrict(g, s, t) for g, s, t in zip(f.level_maps, src.subgroups, dst.subgroups)]


def _check_certifiable(A: TruncatedSimplicialGroup, n: int):
    if not 0 <= n <= A.depth - 1:
        raise IndexOutOfRange(f"degree {n} outside the certifiable range 0..{A.depth - 1}")


@dataclass(frozen=True, eq=False)
class LevelHomology:
    """Homology in degree ``n`` with classes expressed as elements of ``A_n``."""

    degree: int
    homology: Homology
    level_elements: tuple[int, ...]  # N_n A inside A_n

    @property
    def group(self) -> FiniteGroup:
        return self.homology.group

    @property
    def order(self) -> int:
        return self.homology.order

    def fibers(self) -> list[frozenset[int]]:
        es = self.level_elements
        return [frozenset(es[x] for x in f) for f in self.homology.fibers()]

    def class_of(self, a: int) -> int:
        """Class of a cycle ``a ∈ Z_n A ⊆ A_n``."""
        return self.homology.class_of(self._positions[a])

    @cached_property
    def _positions(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.level_elements)}


def moore_homology(A: TruncatedSimplicialGroup, n: int, data: MooreComplex | None = None) -> LevelHomology:
    _check_certifiable(A, n)
    data = data or moore_data(A)
    return LevelHomology(n, chain.homology(data.complex, n), data.subgroups[n].element_set)


def homology_moore(A: TruncatedSimplicialGroup, n: int) -> QuotientPresentation:
    return moore_homology(A, n).homology.presentation


def homology_map(f: SimplicialHom, n: int) -> GroupHom:
    """``H_n f`` by chasing minimal representatives through the Moore complexes."""
    src, dst = moore_data(f.dom), moore_data(f.cod)
    maps = moore_maps(f, src, dst)
    return chain.induced_homology_map(
        moore_homology(f.dom, n, src).homology, moore_homology(f.cod, n, dst).homology, maps[n]
    )


# ---------------------------------------------------------------- cycles ∇_n


def nabla(A: TruncatedSimplicialGroup, n: int, budget: Budget | None = None) -> SubProduct:
    """``∇_n A``: tuples ``(x_0..x_{n+1})`` in ``A_n`` with ``∂_i x_j = ∂_{j-1} x_i`` for i < j.

    Coordinates are fixed left to right; each new coordinate is drawn from
    the fiber of ∂_0 over ``∂_{j-1} x_0`` and checked against every earlier
    coordinate at once.
    """
    if not 0 <= n <= A.depth:
        raise IndexOutOfRange(f"∇_{n} needs level {n}")
    g = A.levels[n]
    if n == 0:
        return SubProduct((g, g), ((a, b) for a in g for b in g), f"∇0")
    budget = budget or Budget()
    faces = [A.face(n, i).map for i in range(n + 1)]
    by_first: dict[int, list[int]] = {}
    for a in g:
        by_first.setdefault(faces[0][a], []).append(a)
    k = n + 2
    out: list[tuple[int, ...]] = []
    xs: list[int] = []

    def rec(j: int):
        if j == k:
            out.append(tuple(xs))
            return
        if j == 0:
            cands = range(g.order)
        else:
            cands = by_first.get(faces[j - 1][xs[0]], ())
        for x in cands:
            budget.spend()
            if all(faces[i][x] == faces[j - 1][xs[i]] for i in range(1, j)):
                xs.append(x)
                rec(j + 1)
                xs.pop()

    rec(0)
    return SubProduct([g] * k, out, f"∇{n}")


def boundary_into_nabla(A: TruncatedSimplicialGroup, n: int, target: SubProduct | None = None) -> GroupHom:
    """``a ↦ (∂_0 a, ..., ∂_{n+1} a)`` from ``A_{n+1}`` into the carrier of ``∇_n A``."""
    _check_certifiable(A, n)
    target = target or nabla(A, n)
    faces = [A.face(n + 1, i).map for i in range(n + 2)]
    idx = target.index
    images = tuple(idx[tuple(f[a] for f in faces)] for a in A.levels[n + 1])
    return GroupHom(A.levels[n + 1], target.carrier, images)


def nabla_map(f: SimplicialHom, n: int, src: SubProduct | None = None, dst: SubProduct | None = None) -> GroupHom:
    """``∇_n f``: apply ``f_n`` coordinatewise."""
    src = src or nabla(f.dom, n)
    dst = dst or nabla(f.cod, n)
    m = f.level_maps[n].map
    idx = dst.index
    return GroupHom(src.carrier, dst.carrier, tuple(idx[tuple(m[x] for x in t)] for t in src.tuples))


# ----------------------------------------------- coequalizer route to H_n


def z_object(A: TruncatedSimplicialGroup, n: int) -> Embedding:
    """``Z_n A = ⋂_{i∈[n]} K[∂_i] ⊆ A_n`` (all of ``A_0`` when n = 0)."""
    if n == 0:
        return whole(A.levels[0])
    return intersection([kernel(A.face(n, i)) for i in range(n + 1)], A.levels[n])


def s_object(A: TruncatedSimplicialGroup, m: int) -> Embedding:
    """``S_m A = ⋂_{i∈[m-2]} K[∂_i] ⊆ A_m``, with ``S_1 A = A_1``."""
    if m == 1:
        return whole(A.levels[1])
    return intersection([kernel(A.face(m, i)) for i in range(m - 1)], A.levels[m])


@dataclass(frozen=True, eq=False)
class CoequalizerHomology:
    degree: int
    z: Embedding
    s: Embedding
    inverse_image: SubProduct  # pairs (s, z) with ∂_n s = z
    d_n: GroupHom
    d_n1: GroupHom
    section: GroupHom
    presentation: QuotientPresentation

    @property
    def group(self) -> FiniteGroup:
        return self.presentation.quotient

    @property
    def order(self) -> int:
        return self.presentation.order

    def fibers(self) -> list[frozenset[int]]:
        es = self.z.element_set
        return [frozenset(es[x] for x in f) for f in self.presentation.fibers]


def coequalizer_homology(A: TruncatedSimplicialGroup, n: int) -> CoequalizerHomology:
    """``H_n A`` as the coequalizer of the last two faces restricted to ``∂_n^{-1} Z_n A``.

    Never consults the Moore complex. The restricted degeneracy σ_n is
    built and checked to be a common section of both restricted faces.
    """
    _check_certifiable(A, n)
    Z = z_object(A, n)
    S = s_object(A, n + 1)
    dn_on_s = restrict(A.face(n + 1, n), S)
    pb = pullback(dn_on_s, Z.into)
    P = pb.carrier
    to_s, to_z = pb.projections
    d_n = to_z
    s_elems = S.element_set
    dn1 = A.face(n + 1, n + 1).map
    zidx = Z.index
    d_n1 = GroupHom(P, Z.carrier, tuple(zidx[dn1[s_elems[t[0]]]] for t in pb.tuples))
    sig = A.degeneracy(n, n).map
    sidx = S.index
    section = GroupHom(
        Z.carrier, P, tuple(pb.index_of((sidx[sig[z]], zi)) for zi, z in enumerate(Z.element_set))
    )
    ident = tuple(range(Z.order))
    if (d_n @ section).map != ident or (d_n1 @ section).map != ident:
        raise ShapeMismatch("restricted σ_n is not a common section")
    return CoequalizerHomology(n, Z, S, pb, d_n, d_n1, section, coequalizer_pair(d_n, d_n1))


def homology_coequalizer(A: TruncatedSimplicialGroup, n: int) -> QuotientPresentation:
    return coequalizer_homology(A, n).presentation


# ---------------------------------------------------------------- forks


def _is_quotient_by(e: GroupHom, q: QuotientPresentation) -> bool:
    """Whether ``e = u ∘ q.projection`` for an isomorphism ``u``.

    Searches every hom ``u`` out of ``q.quotient``; mutual factorization
    alone is not enough (a zero map into a nontrivial group factors both
    ways through a trivial quotient).
    """
    if e.cod.order != q.order:
        return False
    return any(u.is_bijective and (u @ q.projection).map == e.map for u in homomorphisms(q.quotient, e.cod))


def fork_check(d0: GroupHom, d1: GroupHom, sigma: GroupHom, e: GroupHom, cap: int = 12) -> tuple[bool, bool]:
    """For an augmented reflexive graph, return (e is Coeq[∂0,∂1], e is Coker(∂1 ∘ ker ∂0))."""
    B = d0.cod
    if d1.dom != d0.dom or d1.cod != B or sigma.dom != B or sigma.cod != d0.dom or e.dom != B:
        raise ShapeMismatch("not an augmented reflexive graph")
    ident = tuple(range(B.order))
    if (d0 @ sigma).map != ident or (d1 @ sigma).map != ident:
        raise ShapeMismatch("σ is not a common section")
    if e.cod.order > cap:
        raise EnumerationCap(f"codomain order {e.cod.order} exceeds the fork-check cap {cap}")
    coeq = coequalizer_pair(d0, d1)
    as_coeq = (e @ d0).map == (e @ d1).map and _is_quotient_by(e, coeq)
    k = kernel(d0)
    coker = cokernel(restrict(d1, k))
    as_coker = (e @ restrict(d1, k)).is_zero and _is_quotient_by(e, coker)
    return as_coeq, as_coker


def h0_coequalizer(A: TruncatedSimplicialGroup) -> QuotientPresentation:
    """``Coeq[∂_0, ∂_1 : A_1 -> A_0]``, straight from the faces."""
    return coequalizer_pair(A.face(1, 0), A.face(1, 1))


def nabla_pullback_comparison(A: TruncatedSimplicialGroup, n: int, budget: Budget | None = None):
    """Comparison from ``∇_{n+1} A`` to the pullback of ``(∂_i) : A_{n+1} -> ∇_n A``
    along ``∇_n ∂ : ∇_n A⁻ -> ∇_n A``.

    Returns the list of comparison images and the set of pullback pairs;
    the square is a pullback exactly when the comparison is a bijection.
    """
    from .simplicial import first_face_hom

    if not 0 <= n <= A.depth - 1:
        raise IndexOutOfRange(n)
    top = nabla(A, n + 1, budget)
    dpart = first_face_hom(A)  # A⁻ -> A, depth N-1
    minus = dpart.dom
    nab_minus = nabla(minus, n, budget)
    faces = [A.face(n + 1, i).map for i in range(n + 2)]
    d0 = A.face(n + 1, 0).map
    # pullback pairs (a, y) with (∂_i a)_i = (∂_0 y_i)_i
    by_boundary: dict[tuple[int, ...], list[int]] = {}
    for a in A.levels[n + 1]:
        by_boundary.setdefault(tuple(f[a] for f in faces), []).append(a)
    pairs = set()
    for y in nab_minus.tuples:
        key = tuple(d0[v] for v in y)
        for a in by_boundary.get(key, ()):
            pairs.add((a, y))
    images = [(x[0], tuple(x[1:])) for x in top.tuples]
    return images, pairs
