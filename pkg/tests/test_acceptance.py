"""Acceptance criteria, one group of tests per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary ends
with one PASS/FAIL line per criterion. ``python tests/test_acceptance.py``
does the same.
"""

from __future__ import annotations

import sys

import pytest

import oracles
from simphom import generate, homotopy as ht, moore as mo
from simphom.groups import image, is_isomorphic
from simphom.simplicial import lambda_of, levelwise_kernel

criterion = pytest.mark.criterion


def _iso(g, h) -> bool:
    return g.order == h.order and is_isomorphic(g, h) is not None


def _partition(fibers) -> list[list[int]]:
    return sorted(sorted(f) for f in fibers)


def _deep(fs, min_depth=2):
    return [(k, A) for k, A in sorted(fs.simplicial_groups.items()) if A.depth >= min_depth]


# 1 ------------------------------------------------------------------------


@criterion(1, "dual-route homology")
def test_dual_route_homology(fs):
    disagreements = []
    for name, A in sorted(fs.simplicial_groups.items()):
        data = mo.moore_data(A)
        lo, hi = ht.certifiable_range(A)
        for n in range(lo, hi + 1):
            hm = mo.moore_homology(A, n, data)
            hc = mo.coequalizer_homology(A, n)
            expected = oracles.homology_signature(A, n)
            ok = (
                _iso(hm.group, hc.group)
                and _partition(hm.fibers()) == _partition(hc.fibers())
                and oracles.group_signature(hm.group) == expected
                and oracles.group_signature(hc.group) == expected
            )
            if not ok:
                disagreements.append((name, n))
    assert disagreements == []


# 2 ------------------------------------------------------------------------


@criterion(2, "H0 coequalizer law")
def test_h0_coequalizer(fs):
    bad = []
    for name, A in sorted(fs.simplicial_groups.items()):
        h0 = mo.moore_homology(A, 0)
        q = mo.h0_coequalizer(A)
        oracle = oracles.coequalizer_signature(A.face(1, 0), A.face(1, 1))
        if not (_iso(h0.group, q.quotient) and oracles.group_signature(q.quotient) == oracle
                and _partition(h0.fibers()) == _partition(q.fibers)):
            bad.append(name)
    assert bad == []


# 3 ------------------------------------------------------------------------


def _lambda_pairs(fs):
    for name, A in _deep(fs):
        L, inc = lambda_of(A)
        yield name, A, L, inc


@criterion(3, "Lambda-shift", variant="all n as stated")
@pytest.mark.xfail(strict=True, raises=AssertionError, reason="fails at n = 0 on fixtures with nonzero d_1")
def test_lambda_shift_as_stated(fs):
    """H_n(ΛA) ≅ H_{n+1}(A) for every certifiable n, including n = 0.

    N_n(ΛA) and N_{n+1}(A) are the same subgroup of A_{n+1} with the same
    differential, but in degree 0 the ΛA complex has no d_0 constraint:
    H_0(ΛA) = N_1 A / im d_2, which surjects onto im d_1 with kernel H_1 A.
    So |H_0 ΛA| = |H_1 A| · |im d_1| and the shift fails whenever d_1 ≠ 0,
    for instance codiscrete(C2) has H_0 ΛA ≅ C2 and H_1 A = 0.
    """
    bad = []
    for name, A, L, _ in _lambda_pairs(fs):
        for n in range(L.depth):
            if not _iso(mo.moore_homology(L, n).group, mo.moore_homology(A, n + 1).group):
                bad.append((name, n))
    assert bad == []


@criterion(3, "Lambda-shift", variant="n >= 1 plus degree-0 extension")
def test_lambda_shift_corrected(fs):
    bad = []
    for name, A, L, inc in _lambda_pairs(fs):
        ml, ma = mo.moore_data(L), mo.moore_data(A)
        for n in range(L.depth + 1):
            inside = {inc.level_maps[n].map[x] for x in ml.subgroups[n].element_set}
            if inside != set(ma.subgroups[n + 1].element_set):
                bad.append((name, "moore", n))
        for n in range(1, L.depth):
            if not _iso(mo.moore_homology(L, n, ml).group, mo.moore_homology(A, n + 1, ma).group):
                bad.append((name, n))
            if oracles.homology_signature(L, n) != oracles.homology_signature(A, n + 1):
                bad.append((name, "oracle", n))
        im_d1 = len(set(ma.complex.d(1).map))
        if oracles.homology_order(L, 0) != oracles.homology_order(A, 1) * im_d1:
            bad.append((name, 0))
    assert bad == []


def test_lambda_shift_counterexample(fs):
    A = fs.simplicial("codiscreteC2")
    L, _ = lambda_of(A)
    assert mo.moore_homology(L, 0).order == 2
    assert mo.moore_homology(A, 1).order == 1


# 4 ------------------------------------------------------------------------


@criterion(4, "acyclicity equivalence")
def test_acyclicity_equivalence(fs):
    bad = []
    verdicts = {}
    for name, A in sorted(fs.simplicial_groups.items()):
        rep = ht.is_acyclic(A)
        d = rep.details
        oracle_zero = [oracles.homology_order(A, n) == 1 for n in range(A.depth)]
        if d["boundary_surjective"] != d["homology_zero"] or d["homology_zero"] != oracle_zero or rep.faults:
            bad.append(name)
        verdicts[name] = rep.verdict
    assert bad == []
    assert verdicts["codiscreteC2"] is True
    assert verdicts["constantC2"] is False
    assert verdicts["nerveC2"] is False


# 5 ------------------------------------------------------------------------


def _oracle_regular(sq) -> tuple[bool, bool]:
    top, bottom, left, right = sq.top.map, sq.bottom.map, sq.left.map, sq.right.map
    pairs = {(a, b) for a in range(len(bottom)) for b in range(len(right)) if bottom[a] == right[b]}
    hit = {(left[x], top[x]) for x in range(len(top))}
    k_top = [x for x in range(len(top)) if top[x] == 0]
    k_bottom = {a for a in range(len(bottom)) if bottom[a] == 0}
    return hit == pairs, {left[x] for x in k_top} == k_bottom


@criterion(5, "regular-pushout equivalence")
def test_regular_pushout_equivalence(fs):
    squares = generate.random_squares(seed=0)
    assert len(squares) >= 50
    assert ht.is_regular_pushout(squares[0]) is False
    kinds = set()
    for sq in squares:
        a, b = ht.is_regular_pushout(sq), ht.regular_pushout_via_kernels(sq)
        assert a == b
        assert (a, b) == _oracle_regular(sq)
        kinds.add(a)
    assert kinds == {True, False}


# 6 ------------------------------------------------------------------------


@criterion(6, "pullback lemma", variant="n <= N-2 as stated")
@pytest.mark.xfail(strict=True, raises=AssertionError, reason="fails at n = 0: ∇_0 of A⁻ is unconstrained")
def test_pullback_lemma_as_stated(fs):
    """∇_{n+1}A -> A_{n+1} ×_{∇_n A} ∇_n A⁻ bijective for every n ≤ N-2.

    At n = 0, ∇_0 A⁻ = A_1 × A_1 while a point of ∇_1 A also forces
    ∂_1 y_0 = ∂_1 y_1. The comparison is injective but misses the pullback
    pairs violating that equation (codiscrete(C2): 8 cycles, 16 pairs).
    For n ≥ 1 the extra equations are implied and the square is a pullback.
    """
    bad = []
    for name, A in _deep(fs):
        for n in range(A.depth - 1):
            images, pairs = mo.nabla_pullback_comparison(A, n)
            if len(set(images)) != len(images) or set(images) != pairs:
                bad.append((name, n))
    assert bad == []


@criterion(6, "pullback lemma", variant="n >= 1 plus degree-0 image")
def test_pullback_lemma_corrected(fs):
    bad = []
    for name, A in _deep(fs):
        d1 = A.face(1, 1).map
        for n in range(A.depth - 1):
            images, pairs = mo.nabla_pullback_comparison(A, n)
            if len(set(images)) != len(images):
                bad.append((name, n, "not injective"))
            expected = pairs if n else {(a, y) for a, y in pairs if d1[y[0]] == d1[y[1]]}
            if set(images) != expected:
                bad.append((name, n))
    assert bad == []


def test_pullback_counterexample(fs):
    images, pairs = mo.nabla_pullback_comparison(fs.simplicial("codiscreteC2"), 0)
    assert (len(images), len(pairs)) == (8, 16)


# 7 ------------------------------------------------------------------------


@criterion(7, "Kan universality and fibration bridge")
def test_kan_universality(fs):
    for name, A in sorted(fs.simplicial_groups.items()):
        rep = ht.is_kan(A)
        assert rep.verdict, name
        assert rep.details["filled"] == rep.details["horns"]
        if all(A.levels[n].order <= 8 for n in range(A.depth)):
            for n in range(1, A.depth + 1):
                for k in range(n + 1):
                    ref = oracles.compatible_horns(A, n, k)
                    assert rep.details["per_level"][f"{n},{k}"] == [len(ref), len(ref)], (name, n, k)


@criterion(7, "Kan universality and fibration bridge")
def test_surjections_are_fibrations(fs):
    surj = [(k, f) for k, f in sorted(fs.simplicial_homs.items()) if f.is_levelwise_surjective]
    assert len(surj) >= 10
    for name, f in surj:
        rep = ht.is_kan_fibration(f)
        assert rep.verdict and rep.details["instances"] == rep.details["solved"], name


# 8 ------------------------------------------------------------------------


@criterion(8, "acyclic-fibration triple agreement")
def test_triple_agreement(fs):
    """Degreewise agreement read cumulatively: for each n, 'squares regular up
    to n', 'H_i K = 0 for i ≤ n' and 'H_i p bijective for i ≤ n with H_{n+1} p
    onto' coincide. Raw single-degree vectors can differ (see test below)."""
    count = 0
    for name, f in sorted(fs.simplicial_homs.items()):
        if not f.is_levelwise_surjective:
            continue
        count += 1
        rep = ht.regular_epi_homology_iso_check(f)
        d = rep.details
        assert rep.faults == [], name
        assert d["cumulative_squares"] == d["cumulative_kernel_acyclic"], name
        assert d["cumulative_homology_iso"] == d["cumulative_squares"][: f.depth - 1], name
        K, _ = levelwise_kernel(f)
        oracle = [oracles.homology_order(K, n) == 1 for n in range(K.depth)]
        assert d["kernel_homology_zero"] == oracle, name
    assert count >= 10


def test_single_degree_vectors_can_differ(fs):
    rep = ht.regular_epi_homology_iso_check(fs.simplicial_hom("codiscreteC2ToQuotient"))
    d = rep.details
    assert d["squares_regular_pushout"] == [False, False, True]
    assert d["kernel_homology_zero"] == [False, True, True]
    assert d["homology_bijective"] == [True, False, True]
    assert rep.faults == []


# 9 ------------------------------------------------------------------------


@criterion(9, "homotopy/homology bridge")
def test_homotopy_homology_bridge(fs):
    for name, A in sorted(fs.simplicial_groups.items()):
        for n in range(1, A.depth):
            rep = ht.homotopy_homology_bridge(A, n)
            assert rep.faults == [], (name, n)
            assert rep.verdict, (name, n, rep.details)
            assert rep.details["classes"] == oracles.homology_order(A, n)
            hs = ht.homotopy_set(A, 0, n)
            assert hs.is_equivalence


# 10 -----------------------------------------------------------------------


def _exact_from_maps(rep) -> bool:
    maps = [m["map"] for m in rep.maps]
    for i in range(1, len(rep.nodes) - 1):
        im = set(maps[i - 1])
        ker = {x for x, y in enumerate(maps[i]) if y == 0}
        if im != ker:
            return False
    return True


@criterion(10, "LES exactness")
def test_les_exactness(fs):
    assert len(fs.ses_list) >= 5
    assert "nerveC2C4C2" in fs.ses_list
    for name, s in sorted(fs.ses_list.items()):
        rep = ht.long_exact_sequence(s)
        assert rep.faults == [], name
        assert all(rep.exact_at), name
        assert rep.tail_surjective, name
        assert all(rep.delta_independent), name
        assert _exact_from_maps(rep), name
        last = rep.maps[-1]["map"]
        assert set(last) == set(range(rep.nodes[-1]["order"])), name


# 11 -----------------------------------------------------------------------


@criterion(11, "Moore properness")
def test_moore_properness(fs):
    for name, A in sorted(fs.simplicial_groups.items()):
        c = mo.moore(A)
        N = oracles.moore_sets(A)
        for n in range(1, A.depth + 1):
            assert image(c.d(n)).is_normal(), (name, n)
            dn = A.face(n, n).map
            bounds = {dn[a] for a in N[n]}
            assert oracles.is_normal_in(A.levels[n - 1].table, bounds, N[n - 1]), (name, n)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
