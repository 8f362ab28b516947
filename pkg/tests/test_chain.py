import pytest
from hypothesis import given, settings, strategies as st

import oracles
from simphom import catalog, chain
from simphom.chain import ComplexSES, ComplexViolation, IndexOutOfRange, LiftFailure, ProperChainComplex
from simphom.groups import GroupHom, is_isomorphic


def mult(m: int, k: int, dom=None, cod=None) -> GroupHom:
    dom = dom or catalog.cyclic(m)
    cod = cod or catalog.cyclic(m)
    return GroupHom.checked(dom, cod, [(k * x) % cod.order for x in dom])


def brute_homology_order(c: ProperChainComplex, n: int) -> int:
    obj = c.objects[n]
    cycles = [x for x in obj if n == 0 or c.d(n).map[x] == 0]
    bounds = set(c.d(n + 1).map) if n < c.length else {0}
    return len(cycles) // len(bounds)


def test_concentrated_complex():
    g = catalog.symmetric(3)
    z = catalog.cyclic(1)
    c = ProperChainComplex([g, z, z], [GroupHom.zero(z, g), GroupHom.zero(z, z)])
    assert is_isomorphic(chain.homology(c, 0).group, g) is not None
    assert chain.homology(c, 1).order == chain.homology(c, 2).order == 1


def test_z4_doubling_complex():
    """Z/4 ← Z/4 ← Z/4 with both differentials ×2.

    ker(×2) = im(×2) = {0, 2}, so the middle homology vanishes; the ends
    carry Z/4 / {0,2} and {0,2}, both of order 2.
    """
    c4 = catalog.cyclic(4)
    c = ProperChainComplex([c4, c4, c4], [mult(4, 2), mult(4, 2)])
    orders = [chain.homology(c, n).order for n in range(3)]
    assert orders == [brute_homology_order(c, n) for n in range(3)] == [2, 1, 2]
    assert chain.is_exact_at(c, 1) == (True, None)
    assert chain.is_exact_at(c, 0) == (False, 1)


def test_identity_complex_is_exact():
    g = catalog.cyclic(3)
    z = catalog.cyclic(1)
    c = ProperChainComplex([g, g, z], [GroupHom.identity(g), GroupHom.zero(z, g)])
    assert chain.homology(c, 0).order == chain.homology(c, 1).order == 1
    assert chain.is_exact_at(c, 1) == (True, None)


def test_zero_differentials_not_exact():
    g = catalog.cyclic(2)
    c = ProperChainComplex([g, g, g], [GroupHom.zero(g, g)] * 2)
    ok, witness = chain.is_exact_at(c, 1)
    assert not ok and witness == 1


def test_complex_violations():
    c4 = catalog.cyclic(4)
    with pytest.raises(ComplexViolation):
        ProperChainComplex([c4, c4, c4], [GroupHom.identity(c4), GroupHom.identity(c4)])
    s3 = catalog.symmetric(3)
    c2 = catalog.cyclic(2)
    t = next(x for x in s3 if s3.element_order(x) == 2)
    inc = GroupHom.checked(c2, s3, [0, t])
    with pytest.raises(ComplexViolation, match="normal"):
        ProperChainComplex([s3, c2], [inc])
    with pytest.raises(IndexOutOfRange):
        chain.homology(ProperChainComplex([c4], []), 3)


def _delta_example():
    z, g = catalog.cyclic(1), catalog.cyclic(2)
    sub = ProperChainComplex([g, z], [GroupHom.zero(z, g)])
    total = ProperChainComplex([g, g], [GroupHom.identity(g)])
    quot = ProperChainComplex([z, g], [GroupHom.zero(g, z)])
    inc = [GroupHom.identity(g), GroupHom.zero(z, g)]
    proj = [GroupHom.zero(g, z), GroupHom.identity(g)]
    return ComplexSES(sub, total, quot, inc, proj)


def test_snake_delta_isomorphism():
    s = _delta_example()
    d = chain.snake_delta(s, 1)
    assert d.dom.order == d.cod.order == 2 and d.is_bijective
    assert chain.snake_delta_independent(s, 1) == (True, None)
    les = chain.long_exact_sequence(s)
    assert les.exact


def test_delta_zero_for_trivial_sub_or_quot():
    c4 = catalog.cyclic(4)
    z = catalog.cyclic(1)
    c = ProperChainComplex([c4, c4, c4], [mult(4, 2), mult(4, 2)])
    zero = ProperChainComplex([z, z, z], [GroupHom.zero(z, z)] * 2)
    ident = [GroupHom.identity(c4)] * 3
    s = ComplexSES(zero, c, c, [GroupHom.zero(z, c4)] * 3, ident)
    for n in (1, 2):
        assert chain.snake_delta(s, n).is_zero
    s = ComplexSES(c, c, zero, ident, [GroupHom.zero(c4, z)] * 3)
    for n in (1, 2):
        assert chain.snake_delta(s, n).dom.order == 1
    assert chain.long_exact_sequence(s).exact


def test_ses_rejects_bad_data():
    s = _delta_example()
    with pytest.raises(ComplexViolation):
        ComplexSES(s.sub, s.total, s.quot, s.inclusion, [GroupHom.identity(s.total.objects[0]), s.projection[1]])


def test_lift_failure():
    z, g = catalog.cyclic(1), catalog.cyclic(2)
    total = ProperChainComplex([g, g], [GroupHom.identity(g)])
    quot = ProperChainComplex([z, g], [GroupHom.zero(g, z)])
    s = object.__new__(ComplexSES)
    object.__setattr__(s, "sub", ProperChainComplex([g, z], [GroupHom.zero(z, g)]))
    object.__setattr__(s, "total", total)
    object.__setattr__(s, "quot", quot)
    object.__setattr__(s, "inclusion", (GroupHom.identity(g), GroupHom.zero(z, g)))
    object.__setattr__(s, "projection", (GroupHom.zero(g, z), GroupHom.zero(g, g)))
    with pytest.raises(LiftFailure):
        chain.snake_delta(s, 1)


@st.composite
def cyclic_complexes(draw):
    """Complexes Z/m_N -> ... -> Z/m_0 with multiplication-style differentials."""
    length = draw(st.integers(1, 3))
    orders = [draw(st.sampled_from([1, 2, 3, 4, 6, 8, 12])) for _ in range(length + 1)]
    groups = [catalog.cyclic(m) for m in orders]
    diffs = []
    for n in range(1, length + 1):
        dom, cod = groups[n], groups[n - 1]
        choices = []
        for k in range(cod.order):
            images = [(k * x) % cod.order for x in dom]
            f = GroupHom(dom, cod, tuple(images))
            if f.is_hom() and (n == 1 or (diffs[-1] @ f).is_zero):
                choices.append(f)
        diffs.append(draw(st.sampled_from(choices)))
    return ProperChainComplex(groups, diffs)


@settings(max_examples=80, deadline=None)
@given(cyclic_complexes())
def test_homology_matches_oracle(c):
    for n in range(c.length + 1):
        h = chain.homology(c, n)
        assert h.order == brute_homology_order(c, n)
        exact, _ = chain.is_exact_at(c, n)
        assert exact == (h.order == 1)
        cycles = [x for x in c.objects[n] if n == 0 or c.d(n).map[x] == 0]
        bounds = set(c.d(n + 1).map) if n < c.length else {0}
        assert oracles.group_signature(h.group) == oracles.quotient_signature(c.objects[n].table, cycles, bounds)


@settings(max_examples=40, deadline=None)
@given(cyclic_complexes())
def test_identity_ses_les_is_exact(c):
    """0 -> C -> C -> 0 -> 0 gives an exact sequence with zero connecting maps."""
    z = catalog.cyclic(1)
    zero = ProperChainComplex([z] * (c.length + 1), [GroupHom.zero(z, z)] * c.length)
    s = ComplexSES(c, c, zero, [GroupHom.identity(g) for g in c.objects], [GroupHom.zero(g, z) for g in c.objects])
    les = chain.long_exact_sequence(s)
    assert les.exact
    assert all(chain.snake_delta(s, n).is_zero for n in range(1, c.length + 1))


def _power(g, k):
    images = []
    for x in g:
        y = 0
        for _ in range(k):
            y = g.table[y][x]
        images.append(y)
    return GroupHom(g, g, tuple(images))


@pytest.mark.parametrize("k", [2, 3])
def test_delta_is_natural_for_power_maps(fs, k):
    """On abelian sequences x ↦ x^k is a ladder from the sequence to itself;
    the connecting maps must commute with the maps it induces on homology."""
    from simphom import homotopy as ht

    checked = 0
    for name, s in sorted(fs.ses_list.items()):
        if not all(g.is_abelian for A in (s.sub, s.total, s.quot) for g in A.levels):
            continue
        cs = ht.moore_ses(s)
        for n in range(1, cs.total.length + 1):
            hq, hk = chain.homology(cs.quot, n), chain.homology(cs.sub, n - 1)
            delta = chain.snake_delta(cs, n)
            on_q = chain.induced_homology_map(hq, hq, _power(cs.quot.objects[n], k))
            on_k = chain.induced_homology_map(hk, hk, _power(cs.sub.objects[n - 1], k))
            assert (delta @ on_q).map == (on_k @ delta).map, (name, n)
            checked += 1
    assert checked >= 10
