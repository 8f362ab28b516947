"""Kan conditions, fibrations, regular pushouts, acyclicity, homotopy groups
and the long exact homology sequence, as executable predicates.

Each predicate that has two provably equivalent characterizations computes
both; a disagreement is recorded as a fault (an implementation bug), never
as a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import chain
from .catalog import describe
from .groups import GroupHom, kernel, pullback
from .moore import (
    Budget,
    ShapeMismatch,
    boundary_into_nabla,
    moore_data,
    moore_homology,
    moore_maps,
    nabla,
    nabla_map,
    homology_map,
    z_object,
)
from .simplicial import SimplicialHom, SimplicialSES, TruncatedSimplicialGroup, levelwise_kernel


class MooreSurjectivityFailure(Exception):
    pass


@dataclass
class Report:
    check: str
    range: list[int]
    verdict: Any
    witnesses: list = field(default_factory=list)
    faults: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "range": list(self.range),
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "faults": self.faults,
            "details": self.details,
        }


def certifiable_range(A: TruncatedSimplicialGroup) -> list[int]:
    return [0, A.depth - 1]


# ---------------------------------------------------------------- horns


def horns(A: TruncatedSimplicialGroup, n: int, k: int, budget: Budget | None = None):
    """Every (n,k)-horn: tuples indexed by ``[n] minus {k}`` of elements of ``A_{n-1}``
    with ``∂_i x_j = ∂_{j-1} x_i`` for i < j."""
    budget = budget or Budget()
    g = A.levels[n - 1]
    idxs = [i for i in range(n + 1) if i != k]
    faces = [A.face(n - 1, i).map for i in range(n)] if n >= 2 else []
    xs: list[int] = []
    out = []

    def rec(p: int):
        if p == len(idxs):
            out.append(tuple(xs))
            return
        j = idxs[p]
        for x in g:
            budget.spend()
            ok = True
            for q in range(p):
                i = idxs[q]
                if faces[i][x] != faces[j - 1][xs[q]]:
                    ok = False
                    break
            if ok:
                xs.append(x)
                rec(p + 1)
                xs.pop()

    rec(0)
    return out


def _faces_except(A: TruncatedSimplicialGroup, n: int, k: int) -> list[tuple[int, ...]]:
    fs = [A.face(n, i).map for i in range(n + 1) if i != k]
    return [tuple(f[y] for f in fs) for y in A.levels[n]]


def is_kan(A: TruncatedSimplicialGroup, budget: Budget | None = None) -> Report:
    """Exhaustive horn filling for every ``1 <= n <= N`` and ``k ∈ [n]``."""
    budget = budget or Budget()
    counts = {}
    witnesses = []
    for n in range(1, A.depth + 1):
        for k in range(n + 1):
            achieved = set(_faces_except(A, n, k))
            hs = horns(A, n, k, budget)
            filled = sum(1 for h in hs if h in achieved)
            counts[f"{n},{k}"] = [len(hs), filled]
            for h in hs:
                if h not in achieved:
                    witnesses.append({"n": n, "k": k, "horn": list(h)})
                    break
    total = sum(c[0] for c in counts.values())
    filled = sum(c[1] for c in counts.values())
    return Report("kan", [1, A.depth], total == filled, witnesses, [],
                  {"horns": total, "filled": filled, "per_level": counts})


def is_kan_fibration(f: SimplicialHom, budget: Budget | None = None) -> Report:
    """For each horn ``x`` of the domain and each ``b`` with ``∂_i b = f(x_i)``,
    search ``a`` with ``f(a) = b`` and ``∂_i a = x_i``."""
    budget = budget or Budget()
    A, B = f.dom, f.cod
    if A.depth != B.depth:
        raise ShapeMismatch("fibration check needs equal depths")
    instances = solved = 0
    witnesses = []
    for n in range(1, A.depth + 1):
        fprev = f.level_maps[n - 1].map
        fn = f.level_maps[n].map
        for k in range(n + 1):
            a_faces = _faces_except(A, n, k)
            liftable = {(fn[a], a_faces[a]) for a in A.levels[n]}
            b_by_faces: dict[tuple[int, ...], list[int]] = {}
            for b, fb in enumerate(_faces_except(B, n, k)):
                b_by_faces.setdefault(fb, []).append(b)
            for h in horns(A, n, k, budget):
                image = tuple(fprev[x] for x in h)
                for b in b_by_faces.get(image, ()):
                    budget.spend()
                    instances += 1
                    if (b, h) in liftable:
                        solved += 1
                    elif len(witnesses) < 5:
                        witnesses.append({"n": n, "k": k, "horn": list(h), "b": b})
    return Report("kan_fibration", [1, A.depth], instances == solved, witnesses, [],
                  {"instances": instances, "solved": solved})


# ---------------------------------------------------------------- squares


@dataclass(frozen=True, eq=False)
class CommutingSquare:
    """``top: A' -> B'``, ``bottom: A -> B``, ``left: A' -> A``, ``right: B' -> B``."""

    top: GroupHom
    bottom: GroupHom
    left: GroupHom
    right: GroupHom

    def __post_init__(self):
        t, b, l, r = self.top, self.bottom, self.left, self.right
        if l.dom != t.dom or l.cod != b.dom or r.dom != t.cod or r.cod != b.cod:
            raise ShapeMismatch("square maps do not fit together")
        if (r @ t).map != (b @ l).map:
            raise ShapeMismatch("square does not commute")
        if not (t.is_surjective and b.is_surjective):
            raise ShapeMismatch("horizontal maps must be surjective")


def is_regular_pushout(s: CommutingSquare) -> bool:
    """Whether ``a' ↦ (v a', f' a')`` maps onto ``A ×_B B'``."""
    pb = pullback(s.bottom, s.right)
    hit = {(s.left.map[a], s.top.map[a]) for a in s.top.dom}
    return len(hit) == pb.order


def regular_pushout_via_kernels(s: CommutingSquare) -> bool:
    """Whether the induced map ``K[f'] -> K[f]`` is surjective."""
    k_top = kernel(s.top).element_set
    k_bottom = kernel(s.bottom).element_set
    return {s.left.map[a] for a in k_top} == set(k_bottom)


# ---------------------------------------------------------------- acyclicity


def is_acyclic(A: TruncatedSimplicialGroup, budget: Budget | None = None) -> Report:
    """Boundary-surjectivity route and zero-homology route, degree by degree."""
    budget = budget or Budget()
    data = moore_data(A)
    by_boundary, by_homology, faults = [], [], []
    for n in range(A.depth):
        surj = boundary_into_nabla(A, n, nabla(A, n, budget)).is_surjective
        zero = moore_homology(A, n, data).order == 1
        by_boundary.append(surj)
        by_homology.append(zero)
        if surj != zero:
            faults.append({"degree": n, "boundary_surjective": surj, "homology_zero": zero})
    witnesses = [n for n, ok in enumerate(by_homology) if not ok]
    return Report("acyclic", certifiable_range(A), all(by_boundary) and all(by_homology), witnesses, faults,
                  {"boundary_surjective": by_boundary, "homology_zero": by_homology})


# ---------------------------------------------------------------- homology isos


def homology_iso_degrees(f: SimplicialHom) -> list[bool]:
    return [homology_map(f, n).is_bijective for n in range(f.depth)]


def is_homology_iso(f: SimplicialHom) -> Report:
    degs = homology_iso_degrees(f)
    return Report("homology_iso", certifiable_range(f.dom), all(degs),
                  [n for n, ok in enumerate(degs) if not ok], [], {"degrees": degs})


def boundary_square(p: SimplicialHom, n: int, budget: Budget | None = None):
    """Square ``p_{n+1}`` over ``∇_n p`` with boundary verticals, or None when
    ``∇_n p`` is not surjective (then it cannot be a regular pushout)."""
    E, B = p.dom, p.cod
    nE, nB = nabla(E, n, budget), nabla(B, n, budget)
    bottom = nabla_map(p, n, nE, nB)
    if not bottom.is_surjective:
        return None
    return CommutingSquare(p.level_maps[n + 1], bottom, boundary_into_nabla(E, n, nE), boundary_into_nabla(B, n, nB))


def regular_epi_homology_iso_check(p: SimplicialHom, budget: Budget | None = None) -> Report:
    """Compare, for a levelwise surjective ``p``, the three characterizations of
    a homology isomorphism.

    Raw per-degree vectors are reported, but the paper-level equivalences
    only line up cumulatively: with ``K`` the kernel,

    * squares regular pushouts in all degrees ``<= n``
    * ``H_i K = 0`` for all ``i <= n``
    * ``H_i p`` bijective for all ``i <= n`` and ``H_{n+1} p`` surjective

    are equivalent for every ``n``. The first two are compared on
    ``0..N-1``, the third joins on ``0..N-2`` (it needs ``H_{n+1}``).
    """
    if not p.is_levelwise_surjective:
        raise ShapeMismatch("p must be levelwise surjective")
    budget = budget or Budget()
    N = p.depth
    K, _ = levelwise_kernel(p)
    squares, pushout_vs_kernels = [], []
    faults = []
    for n in range(N):
        sq = boundary_square(p, n, budget)
        if sq is None:
            squares.append(False)
            pushout_vs_kernels.append(None)
            continue
        rp = is_regular_pushout(sq)
        rk = regular_pushout_via_kernels(sq)
        if rp != rk:
            faults.append({"degree": n, "regular_pushout": rp, "kernel_map_surjective": rk})
        squares.append(rp)
    kernel_report = is_acyclic(K, budget)
    faults += [dict(f, object="kernel") for f in kernel_report.faults]
    kernel_zero = kernel_report.details["homology_zero"]
    maps = [homology_map(p, n) for n in range(N)]
    bij = [m.is_bijective for m in maps]
    surj = [m.is_surjective for m in maps]

    def upto(v, n):
        return all(v[: n + 1])

    cum_squares = [upto(squares, n) for n in range(N)]
    cum_kernel = [upto(kernel_zero, n) for n in range(N)]
    cum_iso = [upto(bij, n) and surj[n + 1] for n in range(N - 1)]
    for n in range(N):
        if cum_squares[n] != cum_kernel[n]:
            faults.append({"degree": n, "squares_upto": cum_squares[n], "kernel_acyclic_upto": cum_kernel[n]})
        if n < N - 1 and cum_iso[n] != cum_squares[n]:
            faults.append({"degree": n, "homology_iso_upto": cum_iso[n], "squares_upto": cum_squares[n]})
    return Report(
        "regular_epi_homology_iso", [0, N - 1], all(squares), [n for n, ok in enumerate(squares) if not ok], faults,
        {
            "squares_regular_pushout": squares,
            "kernel_homology_zero": kernel_zero,
            "homology_bijective": bij,
            "homology_surjective": surj,
            "cumulative_squares": cum_squares,
            "cumulative_kernel_acyclic": cum_kernel,
            "cumulative_homology_iso": cum_iso,
        },
    )


def is_acyclic_fibration(p: SimplicialHom, budget: Budget | None = None) -> Report:
    """Levelwise surjective with every boundary square a regular pushout.

    Certified on ``0..N-2``; cross-checked there against
    Kan fibration + homology isomorphism.
    """
    budget = budget or Budget()
    N = p.depth
    window = N - 2
    surjective = p.is_levelwise_surjective
    faults = []
    if surjective:
        rep = regular_epi_homology_iso_check(p, budget)
        faults += rep.faults
        squares_ok = all(rep.details["squares_regular_pushout"][: window + 1])
    else:
        rep = None
        squares_ok = False
    verdict = surjective and squares_ok
    fib = is_kan_fibration(p, budget).verdict
    maps = [homology_map(p, n) for n in range(N)]
    iso = all(m.is_bijective for m in maps[: window + 1]) and maps[window + 1].is_surjective
    if verdict != (fib and iso):
        faults.append({"acyclic_fibration": verdict, "kan_fibration": fib, "homology_iso_upto": iso})
    details = {"levelwise_surjective": surjective, "kan_fibration": fib, "homology_iso_upto_window": iso}
    if rep is not None:
        details["squares_regular_pushout"] = rep.details["squares_regular_pushout"]
    return Report("acyclic_fibration", [0, window], verdict, [], faults, details)


# ---------------------------------------------------------------- homotopy groups


def _iterated_degeneracy(A: TruncatedSimplicialGroup, x: int, level: int) -> int:
    for m in range(level):
        x = A.degeneracy(m, 0).map[x]
    return x


@dataclass
class HomotopySet:
    degree: int
    basepoint: int
    cycles: list[int]
    relation: set[tuple[int, int]]
    classes: list[tuple[int, ...]]
    is_equivalence: bool


def homotopy_set(A: TruncatedSimplicialGroup, x: int, n: int) -> HomotopySet:
    """Set-level ``π_n(A, x)``: the homotopy relation on ``Z_n(A, x)`` and its classes."""
    if not 0 <= n <= A.depth - 1:
        raise chain.IndexOutOfRange(n)
    if n == 0:
        cycles = list(A.levels[0])
    else:
        xb = _iterated_degeneracy(A, x, n - 1)
        faces = [A.face(n, i).map for i in range(n + 1)]
        cycles = [z for z in A.levels[n] if all(f[z] == xb for f in faces)]
    zset = set(cycles)
    xn = _iterated_degeneracy(A, x, n)
    up = [A.face(n + 1, i).map for i in range(n + 2)]
    rel = set()
    for y in A.levels[n + 1]:
        if all(up[i][y] == xn for i in range(n)):
            z, z2 = up[n][y], up[n + 1][y]
            if z in zset and z2 in zset:
                rel.add((z, z2))
    reflexive = all((z, z) in rel for z in cycles)
    symmetric = all((b, a) in rel for a, b in rel)
    succ: dict[int, set[int]] = {}
    for a, b in rel:
        succ.setdefault(a, set()).add(b)
    transitive = all((a, c) in rel for a, b in rel for c in succ.get(b, ()))
    equivalence = reflexive and symmetric and transitive
    classes = []
    seen = set()
    for z in cycles:
        if z in seen:
            continue
        cls = tuple(sorted(w for w in succ.get(z, {z}) | {z}))
        seen.update(cls)
        classes.append(cls)
    return HomotopySet(n, x, cycles, rel, classes, equivalence)


def pi_n(A: TruncatedSimplicialGroup, n: int):
    """Group ``π_n(A, e) = Z_n / {∂_{n+1} y : y ∈ N_{n+1}}`` read off the levels directly."""
    from .groups import normal_closure, quotient, subgroup

    if not 0 <= n <= A.depth - 1:
        raise chain.IndexOutOfRange(n)
    Z = z_object(A, n)
    up = [A.face(n + 1, i).map for i in range(n + 2)]
    bounds = {up[n + 1][y] for y in A.levels[n + 1] if all(up[i][y] == 0 for i in range(n + 1))}
    inside = subgroup(Z.carrier, (Z.index[b] for b in bounds))
    return Z, quotient(Z.carrier, normal_closure(inside))


def homotopy_homology_bridge(A: TruncatedSimplicialGroup, n: int) -> Report:
    """Classes of ∼ at the identity basepoint against ``π_n`` and ``H_n``."""
    hs = homotopy_set(A, 0, n)
    Z, pres = pi_n(A, n)
    h = moore_homology(A, n)
    q_fibers = sorted(tuple(sorted(Z.element_set[k] for k in f)) for f in pres.fibers)
    faults = []
    if not hs.is_equivalence:
        faults.append({"degree": n, "issue": "homotopy relation is not an equivalence"})
    same_fibers = sorted(hs.classes) == q_fibers
    counts_agree = len(hs.classes) == pres.order == h.order
    verdict = hs.is_equivalence and same_fibers and counts_agree
    return Report("homotopy_homology_bridge", [n, n], verdict, [], faults, {
        "classes": len(hs.classes), "pi_order": pres.order, "homology_order": h.order,
        "relation_is_fiber_relation": same_fibers,
    })


def pi_map_bijective(f: SimplicialHom, x: int, n: int) -> bool:
    """Whether ``[z] ↦ [f z]`` is a well-defined bijection ``π_n(A,x) -> π_n(B,f x)``."""
    src = homotopy_set(f.dom, x, n)
    dst = homotopy_set(f.cod, f.level_maps[0].map[x], n)
    cls_of = {}
    for i, c in enumerate(dst.classes):
        for z in c:
            cls_of[z] = i
    fn = f.level_maps[n].map
    images = []
    for c in src.classes:
        targets = {cls_of.get(fn[z]) for z in c}
        if len(targets) != 1 or None in targets:
            return False
        images.append(targets.pop())
    return len(set(images)) == len(images) == len(dst.classes)


# ---------------------------------------------------------------- LES


def moore_ses(s: SimplicialSES) -> chain.ComplexSES:
    """Apply the Moore functor levelwise; the projection must stay surjective."""
    ds, dt, dq = moore_data(s.sub), moore_data(s.total), moore_data(s.quot)
    inc = moore_maps(s.inclusion, ds, dt)
    proj = moore_maps(s.projection, dt, dq)
    for n, p in enumerate(proj):
        if not p.is_surjective:
            raise MooreSurjectivityFailure(f"Moore projection not surjective in degree {n}")
    return chain.ComplexSES(ds.complex, dt.complex, dq.complex, inc, proj)


@dataclass
class LESReport:
    nodes: list[dict]
    maps: list[dict]
    exact_at: list[bool]
    tail_surjective: bool
    delta_independent: list[bool]
    verified_range: list[int]
    faults: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(self.exact_at) and self.tail_surjective and all(self.delta_independent) and not self.faults

    def to_json(self) -> dict:
        return {
            "check": "les",
            "range": self.verified_range,
            "verdict": self.exact,
            "nodes": self.nodes,
            "maps": self.maps,
            "exact_at": self.exact_at,
            "tail_surjective": self.tail_surjective,
            "delta_independent": self.delta_independent,
            "faults": self.faults,
        }


def long_exact_sequence(s: SimplicialSES) -> LESReport:
    N = s.total.depth
    try:
        cs = moore_ses(s)
    except MooreSurjectivityFailure as exc:
        return LESReport([], [], [], False, [], [0, N - 1], [{"fault": str(exc)}])
    les = chain.long_exact_sequence(cs, top=N - 1)
    nodes = [{"object": nd.name, "degree": nd.degree, "order": nd.group.order, "type": describe(nd.group)}
             for nd in les.nodes]
    maps = []
    for i, m in enumerate(les.maps):
        kind = ["H(k)", "H(f)", "delta"][i % 3]
        maps.append({"kind": kind, "from": i, "to": i + 1, "map": list(m.map)})
    delta_ok = [chain.snake_delta_independent(cs, n)[0] for n in range(1, N + 1)]
    return LESReport(nodes, maps, les.exact_at, les.tail_surjective, delta_ok, [0, N - 1])


# ---------------------------------------------------------------- weak equivalences


def weak_equivalence_verdict(f: SimplicialHom) -> Report:
    """Homology isomorphism on the certifiable range; for levelwise surjective
    homs the homotopy-set route is cross-checked degree by degree."""
    degs = homology_iso_degrees(f)
    faults = []
    details: dict = {"homology_iso_degrees": degs}
    if f.is_levelwise_surjective:
        basepoints = list(f.dom.levels[0]) if f.dom.levels[0].order <= 8 else [0]
        pi_route = []
        for n in range(f.depth):
            ok = all(pi_map_bijective(f, x, n) for x in basepoints)
            pi_route.append(ok)
            if ok != degs[n]:
                faults.append({"degree": n, "homology_iso": degs[n], "pi_bijective": ok})
        details["pi_bijective_degrees"] = pi_route
        details["basepoints"] = basepoints
    return Report("weak_equivalence", certifiable_range(f.dom), all(degs),
                  [n for n, ok in enumerate(degs) if not ok], faults, details)
