"""``verify all``: every invariant of every module, run over a fixture set.

Two kinds of negative outcome are kept apart. A check *fails* when a
property that should hold does not. A *fault* is a disagreement between two
routes that are proven equivalent; it points at an implementation bug.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import chain, generate, homotopy as ht, moore as mo
from .catalog import cyclic, klein_four, symmetric
from .groups import (
    GroupHom,
    coequalizer_pair,
    corestriction,
    homomorphisms,
    image,
    is_isomorphic,
    kernel,
    kernel_pair,
    normal_subgroups,
    quotient,
)
from .serialize import FixtureSet, builtin_fixture_dir, canonical_dumps, dump_fixture_set, load_fixtures
from .simplicial import check_identities, lambda_of, validate_simplicial_hom

EXIT_OK, EXIT_FAILED, EXIT_FAULT, EXIT_USAGE = 0, 1, 2, 3


@dataclass
class CheckResult:
    name: str
    description: str
    fixtures: int = 0
    range: list[int] = field(default_factory=list)
    passed: bool = True
    faults: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def fail(self, item):
        self.passed = False
        if len(self.failures) < 20:
            self.failures.append(item)

    def fault(self, item):
        if len(self.faults) < 20:
            self.faults.append(item)

    def widen(self, lo: int, hi: int):
        self.range = [min(self.range[0], lo), max(self.range[1], hi)] if self.range else [lo, hi]

    @property
    def status(self) -> str:
        if self.faults:
            return "FAULT"
        return "ok" if self.passed else "FAILED"

    def to_json(self, with_time: bool = True) -> dict:
        out = {
            "check": self.name,
            "description": self.description,
            "fixtures": self.fixtures,
            "range": self.range,
            "verdict": self.passed and not self.faults,
            "faults": self.faults,
            "failures": self.failures,
            "details": self.details,
        }
        if with_time:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class SuiteReport:
    seed: int
    fixtures: str
    results: list[CheckResult]

    @property
    def exit_status(self) -> int:
        if any(r.faults for r in self.results):
            return EXIT_FAULT
        if not all(r.passed for r in self.results):
            return EXIT_FAILED
        return EXIT_OK

    def to_json(self, with_time: bool = True) -> dict:
        return {
            "seed": self.seed,
            "fixtures": self.fixtures,
            "exit_status": self.exit_status,
            "checks": [r.to_json(with_time) for r in self.results],
        }

    def summary_lines(self) -> list[str]:
        lines = [f"{r.status:6} {r.name:28} {r.description} ({r.fixtures} fixtures, range {r.range})" for r in self.results]
        lines.append(f"{sum(r.passed and not r.faults for r in self.results)}/{len(self.results)} checks passed, seed {self.seed}")
        return lines


@dataclass
class Context:
    fs: FixtureSet
    seed: int = 0
    budget: int = mo.DEFAULT_BUDGET

    def fresh_budget(self) -> mo.Budget:
        return mo.Budget(self.budget)


CHECKS: dict[str, tuple[str, Callable[[Context, CheckResult], None]]] = {}


def check(name: str, description: str):
    def deco(fn):
        CHECKS[name] = (description, fn)
        return fn

    return deco


def _small_homs(fs: FixtureSet, cap: int = 64):
    """Named homs plus every structure map whose domain has at most ``cap`` elements."""
    for name, f in sorted(fs.homs.items()):
        yield name, f
    for name, A in sorted(fs.simplicial_groups.items()):
        for n in range(1, A.depth + 1):
            for i in range(n + 1):
                f = A.face(n, i)
                if f.dom.order <= cap:
                    yield f"{name}.d[{n}][{i}]", f


def _iso(g, h) -> bool:
    return g.order == h.order and is_isomorphic(g, h) is not None


# ---------------------------------------------------------------- group-core


@check("G1-image-factorization", "every hom factors as surjection then injection")
def _g1(ctx, r):
    for name, f in _small_homs(ctx.fs):
        r.fixtures += 1
        im = image(f)
        e = corestriction(f, im)
        if not (e.is_surjective and im.into.is_injective and (im.into @ e).map == f.map):
            r.fail(name)


@check("G2-normal-is-kernel", "normal subgroups are kernels of their quotient maps")
def _g2(ctx, r):
    for name, g in sorted(ctx.fs.groups.items()):
        r.fixtures += 1
        for n in normal_subgroups(g):
            if kernel(quotient(g, n).projection).element_set != n.element_set:
                r.fail({"group": name, "normal": list(n.element_set)})


@check("G3-short-five", "u, w bijective implies v bijective on generated ladders")
def _g3(ctx, r):
    ladders = generate.random_ladders(ctx.seed)
    hits = 0
    for k, lad in enumerate(ladders):
        r.fixtures += 1
        for (i, p), lbl in ((lad.top, "top"), (lad.bottom, "bottom")):
            if set(i.map) != set(kernel(p).element_set) or not p.is_surjective:
                r.fail({"ladder": k, "row": lbl, "issue": "not short exact"})
        if (lad.v @ lad.top[0]).map != (lad.bottom[0] @ lad.u).map or (lad.w @ lad.top[1]).map != (lad.bottom[1] @ lad.v).map:
            r.fail({"ladder": k, "issue": "does not commute"})
        if lad.u.is_bijective and lad.w.is_bijective:
            hits += 1
            if not lad.v.is_bijective:
                r.fail({"ladder": k})
    r.details = {"ladders": len(ladders), "with_outer_isos": hits}


@check("G4-coequalizer-universal", "Coeq projection coequalizes and every coequalizing map factors uniquely")
def _g4(ctx, r):
    targets = [cyclic(2), cyclic(3), cyclic(4), klein_four(), symmetric(3)]
    pairs = []
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        if A.levels[1].order <= 24:
            pairs.append((name, A.face(1, 0), A.face(1, 1)))
    for name, f in sorted(ctx.fs.homs.items()):
        pairs.append((name, f, GroupHom.zero(f.dom, f.cod)))
    for name, f, g in pairs:
        r.fixtures += 1
        q = coequalizer_pair(f, g)
        e = q.projection
        if (e @ f).map != (e @ g).map:
            r.fail({"pair": name, "issue": "does not coequalize"})
            continue
        for t in targets:
            factors = {}
            for u in homomorphisms(q.quotient, t):
                factors.setdefault((u @ e).map, 0)
                factors[(u @ e).map] += 1
            for h in homomorphisms(f.cod, t):
                if (h @ f).map == (h @ g).map and factors.get(h.map) != 1:
                    r.fail({"pair": name, "target": t.label, "h": list(h.map)})


@check("G5-kernel-pair-coequalizer", "Coeq of the kernel pair is the image")
def _g5(ctx, r):
    for name, f in _small_homs(ctx.fs, cap=32):
        r.fixtures += 1
        kp = kernel_pair(f)
        p0, p1 = kp.projections
        q = coequalizer_pair(p0, p1)
        images = [f.map[rep] for rep in q.coset_reps]
        if sorted(images) != list(image(f).element_set):
            r.fail(name)


# ---------------------------------------------------------------- chain-homology


@check("C1-moore-properness", "image of d_n is normal in N_{n-1} for every fixture and degree")
def _c1(ctx, r):
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        r.fixtures += 1
        r.widen(1, A.depth)
        c = mo.moore(A)
        for n in range(1, A.depth + 1):
            if not image(c.d(n)).is_normal():
                r.fail({"fixture": name, "degree": n})


@check("C2-snake-delta", "connecting maps are homomorphisms independent of choices")
def _c2(ctx, r):
    for name, s in sorted(ctx.fs.ses_list.items()):
        r.fixtures += 1
        cs = ht.moore_ses(s)
        N = cs.total.length
        r.widen(1, N)
        for n in range(1, N + 1):
            if not chain.snake_delta(cs, n).is_hom():
                r.fail({"ses": name, "degree": n, "issue": "not a hom"})
            ok, wit = chain.snake_delta_independent(cs, n)
            if not ok:
                r.fail({"ses": name, "degree": n, "witness": list(wit)})


@check("C3-homology-vs-exactness", "H_n trivial iff the complex is exact at n")
def _c3(ctx, r):
    complexes = [(n, mo.moore(A)) for n, A in sorted(ctx.fs.simplicial_groups.items())]
    complexes += sorted(ctx.fs.chain_complexes.items())
    for name, c in complexes:
        r.fixtures += 1
        r.widen(0, c.length)
        for n in range(c.length + 1):
            zero = chain.homology(c, n).order == 1
            exact, _ = chain.is_exact_at(c, n)
            if zero != exact:
                r.fault({"complex": name, "degree": n, "homology_zero": zero, "exact": exact})


# ---------------------------------------------------------------- simplicial-core


@check("S1-simplicial-identities", "fixtures satisfy the simplicial identities; homs commute with structure maps")
def _s1(ctx, r):
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        r.fixtures += 1
        check_identities(A)
    for name, f in sorted(ctx.fs.simplicial_homs.items()):
        r.fixtures += 1
        validate_simplicial_hom(f.dom, f.cod, f.level_maps)


@check("S2-dual-route-homology", "Moore homology equals coequalizer homology")
def _s2(ctx, r):
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        r.fixtures += 1
        r.widen(0, A.depth - 1)
        data = mo.moore_data(A)
        for n in range(A.depth):
            hm = mo.moore_homology(A, n, data)
            hc = mo.coequalizer_homology(A, n)
            same_classes = sorted(map(sorted, hm.fibers())) == sorted(map(sorted, hc.fibers()))
            if not (_iso(hm.group, hc.group) and same_classes):
                r.fault({"fixture": name, "degree": n, "moore": hm.order, "coequalizer": hc.order})


@check("S3-h0-coequalizer", "H_0 is Coeq of the two faces out of level 1")
def _s3(ctx, r):
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        r.fixtures += 1
        r.widen(0, 0)
        hm = mo.moore_homology(A, 0)
        q = mo.h0_coequalizer(A)
        if not _iso(hm.group, q.quotient) or sorted(map(sorted, hm.fibers())) != sorted(map(sorted, q.fibers)):
            r.fault({"fixture": name})


@check("S4-lambda-shift", "N(ΛA) is N(A) shifted; H_n(ΛA) ≅ H_{n+1}(A) for n >= 1, an extension at n = 0")
def _s4(ctx, r):
    boundary = {}
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        if A.depth < 2:
            continue
        r.fixtures += 1
        L, inc = lambda_of(A)
        r.widen(0, L.depth - 1)
        ml, ma = mo.moore_data(L), mo.moore_data(A)
        for n in range(L.depth + 1):
            # N_n(ΛA) and N_{n+1}(A) are the same subgroup of A_{n+1}
            inside = {inc.level_maps[n].map[x] for x in ml.subgroups[n].element_set}
            if inside != set(ma.subgroups[n + 1].element_set):
                r.fail({"fixture": name, "moore_level": n})
        for n in range(1, L.depth):
            if not _iso(mo.moore_homology(L, n, ml).group, mo.moore_homology(A, n + 1, ma).group):
                r.fail({"fixture": name, "degree": n})
        h0 = mo.moore_homology(L, 0, ml).order
        h1 = mo.moore_homology(A, 1, ma).order
        d1 = len(set(ma.complex.d(1).map))
        boundary[name] = {"H0_lambda": h0, "H1": h1, "image_d1": d1}
        if h0 != h1 * d1:
            r.fail({"fixture": name, "degree": 0, **boundary[name]})
    r.details = {"degree_zero": boundary}


@check("S5-pullback-lemma", "the cycle square over the first face is a pullback for n >= 1")
def _s5(ctx, r):
    degree_zero = {}
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        if A.depth < 2:
            continue
        r.fixtures += 1
        r.widen(0, A.depth - 2)
        for n in range(A.depth - 1):
            images, pairs = mo.nabla_pullback_comparison(A, n, ctx.fresh_budget())
            injective = len(set(images)) == len(images)
            if n >= 1:
                if not injective or set(images) != pairs:
                    r.fail({"fixture": name, "degree": n, "cycles": len(images), "pullback": len(pairs)})
                continue
            # ∇_0 of A⁻ carries no constraint, so the comparison only hits
            # pullback pairs whose two A⁻ coordinates agree under ∂_1
            d1 = A.face(1, 1).map
            expected = {(a, y) for a, y in pairs if d1[y[0]] == d1[y[1]]}
            degree_zero[name] = {"cycles": len(images), "pullback": len(pairs)}
            if not injective or set(images) != expected:
                r.fail({"fixture": name, "degree": 0, **degree_zero[name]})
    r.details = {"degree_zero": degree_zero}


@check("S6-boundaries-and-forks", "boundary components are the faces; both fork tests agree")
def _s6(ctx, r):
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        r.fixtures += 1
        r.widen(0, A.depth - 1)
        for n in range(A.depth):
            nab = mo.nabla(A, n, ctx.fresh_budget())
            b = mo.boundary_into_nabla(A, n, nab)
            for a in A.levels[n + 1]:
                t = nab.tuples[b.map[a]]
                if any(t[i] != A.face(n + 1, i).map[a] for i in range(n + 2)):
                    r.fail({"fixture": name, "degree": n, "element": a})
                    break
        d0, d1, sigma = A.face(1, 0), A.face(1, 1), A.degeneracy(0, 0)
        B = d0.cod
        if B.order > 12:
            continue
        candidates = [mo.h0_coequalizer(A).projection, GroupHom.identity(B), GroupHom.zero(B, cyclic(1))]
        for e in candidates:
            as_coeq, as_coker = mo.fork_check(d0, d1, sigma, e)
            if as_coeq != as_coker:
                r.fault({"fixture": name, "e_order": e.cod.order, "coequalizer": as_coeq, "cokernel": as_coker})


# ---------------------------------------------------------------- homotopy-analysis


@check("H1-kan-universality", "every horn in every fixture has a filler")
def _h1(ctx, r):
    horns = filled = 0
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        r.fixtures += 1
        r.widen(1, A.depth)
        rep = ht.is_kan(A, ctx.fresh_budget())
        horns += rep.details["horns"]
        filled += rep.details["filled"]
        if not rep.verdict:
            r.fail({"fixture": name, "witness": rep.witnesses[:1]})
    r.details = {"horns": horns, "filled": filled}


@check("H2-fibration-bridge", "levelwise surjections are Kan fibrations and conversely under H_0 surjectivity")
def _h2(ctx, r):
    verdicts = {}
    for name, f in sorted(ctx.fs.simplicial_homs.items()):
        r.fixtures += 1
        r.widen(1, f.depth)
        fib = ht.is_kan_fibration(f, ctx.fresh_budget()).verdict
        verdicts[name] = fib
        surj = f.is_levelwise_surjective
        if surj and not fib:
            r.fail({"hom": name, "issue": "levelwise surjective but not a fibration"})
        if fib and not surj and mo.homology_map(f, 0).is_surjective:
            r.fail({"hom": name, "issue": "fibration with surjective H_0 map but not levelwise surjective"})
    r.details = {"fibration": verdicts}


def _squares(ctx) -> list[ht.CommutingSquare]:
    out = generate.random_squares(ctx.seed)
    for name, f in sorted(ctx.fs.simplicial_homs.items()):
        if not f.is_levelwise_surjective:
            continue
        for n in range(f.depth):
            sq = ht.boundary_square(f, n, ctx.fresh_budget())
            if sq is not None:
                out.append(sq)
    return out


@check("H3-regular-pushouts", "comparison surjectivity equals kernel-map surjectivity")
def _h3(ctx, r):
    counts = {"squares": 0, "regular": 0, "not_regular": 0}
    for k, sq in enumerate(_squares(ctx)):
        r.fixtures += 1
        a, b = ht.is_regular_pushout(sq), ht.regular_pushout_via_kernels(sq)
        counts["squares"] += 1
        counts["regular" if a else "not_regular"] += 1
        if a != b:
            r.fault({"square": k, "comparison": a, "kernels": b})
    r.details = counts


@check("H4-acyclicity", "boundary surjectivity and vanishing homology agree degreewise")
def _h4(ctx, r):
    verdicts = {}
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        r.fixtures += 1
        r.widen(0, A.depth - 1)
        rep = ht.is_acyclic(A, ctx.fresh_budget())
        verdicts[name] = rep.verdict
        for f in rep.faults:
            r.fault(dict(f, fixture=name))
    r.details = {"acyclic": verdicts}


@check("H5-homology-iso-triple", "homology isos, regular-pushout squares and acyclic kernels agree")
def _h5(ctx, r):
    verdicts = {}
    for name, f in sorted(ctx.fs.simplicial_homs.items()):
        if not f.is_levelwise_surjective:
            continue
        r.fixtures += 1
        r.widen(0, f.depth - 1)
        rep = ht.regular_epi_homology_iso_check(f, ctx.fresh_budget())
        for x in rep.faults:
            r.fault(dict(x, hom=name))
        d = rep.details
        window = f.depth - 2
        iso = all(d["homology_bijective"][: window + 1]) and d["homology_surjective"][window + 1]
        squares = all(d["squares_regular_pushout"][: window + 1])
        kern = all(d["kernel_homology_zero"][: window + 1])
        if not iso == squares == kern:
            r.fault({"hom": name, "homology_iso": iso, "squares": squares, "kernel_acyclic": kern})
        af = ht.is_acyclic_fibration(f, ctx.fresh_budget())
        for x in af.faults:
            r.fault(dict(x, hom=name, check="acyclic_fibration"))
        verdicts[name] = {"homology_iso": iso, "squares": squares, "kernel_acyclic": kern,
                          "cumulative_squares": d["cumulative_squares"]}
    r.details = verdicts


@check("H6-homotopy-homology", "homotopy classes at the identity match H_n; the relation is an equivalence")
def _h6(ctx, r):
    for name, A in sorted(ctx.fs.simplicial_groups.items()):
        r.fixtures += 1
        r.widen(0, A.depth - 1)
        for n in range(A.depth):
            rep = ht.homotopy_homology_bridge(A, n)
            for x in rep.faults:
                r.fail(dict(x, fixture=name))
            if n >= 1 and not rep.verdict:
                r.fail({"fixture": name, "degree": n, **rep.details})


@check("H7-long-exact-sequence", "every shipped short exact sequence gives an exact long sequence")
def _h7(ctx, r):
    for name, s in sorted(ctx.fs.ses_list.items()):
        r.fixtures += 1
        rep = ht.long_exact_sequence(s)
        r.widen(*rep.verified_range)
        for x in rep.faults:
            r.fault(dict(x, ses=name))
        if not rep.exact:
            r.fail({"ses": name, "exact_at": rep.exact_at, "tail": rep.tail_surjective,
                    "delta_independent": rep.delta_independent})


@check("H8-weak-equivalences", "homology route and homotopy route agree on surjective homs")
def _h8(ctx, r):
    verdicts = {}
    for name, f in sorted(ctx.fs.simplicial_homs.items()):
        r.fixtures += 1
        r.widen(0, f.depth - 1)
        rep = ht.weak_equivalence_verdict(f)
        verdicts[name] = rep.verdict
        for x in rep.faults:
            r.fault(dict(x, hom=name))
    r.details = {"weak_equivalence": verdicts}


# ---------------------------------------------------------------- cli-io


@check("R1-round-trip", "serializing parsed fixtures reproduces the files byte for byte")
def _r1(ctx, r):
    dumped = dump_fixture_set(ctx.fs)
    for fname, doc in sorted(ctx.fs.sources.items()):
        r.fixtures += 1
        if dumped.get(fname) != canonical_dumps(doc):
            r.fail(fname)


# ---------------------------------------------------------------- runner


def run_check(name: str, ctx: Context) -> CheckResult:
    description, fn = CHECKS[name]
    r = CheckResult(name, description)
    t = time.perf_counter()
    try:
        fn(ctx, r)
    except mo.EnumerationCap as exc:
        r.fail({"error": f"EnumerationCap: {exc}"})
    except Exception as exc:  # a crash inside a check is an implementation fault
        r.fault({"error": f"{type(exc).__name__}: {exc}"})
    r.seconds = time.perf_counter() - t
    return r


def _worker(args) -> CheckResult:
    name, path, seed, budget = args
    return run_check(name, Context(load_fixtures(path), seed, budget))


def run_suite(fixtures: str | Path | None = None, seed: int = 0, budget: int = mo.DEFAULT_BUDGET,
              jobs: int = 1, only: list[str] | None = None, fs: FixtureSet | None = None) -> SuiteReport:
    path = Path(fixtures) if fixtures else builtin_fixture_dir()
    names = [n for n in CHECKS if not only or n in only or n.split("-")[0] in only]
    if jobs <= 1:
        ctx = Context(fs or load_fixtures(path), seed, budget)
        results = [run_check(n, ctx) for n in names]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_worker, [(n, path, seed, budget) for n in names]))
    return SuiteReport(seed, str(path), results)
