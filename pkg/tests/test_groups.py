import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from simphom import catalog
from simphom.groups import (
    AxiomViolation,
    FiniteGroup,
    GroupHom,
    HomViolation,
    OrderCap,
    cokernel,
    coequalizer_pair,
    equalizer,
    generated_subgroup,
    homomorphisms,
    image,
    is_isomorphic,
    kernel,
    kernel_pair,
    normal_closure_of,
    normal_subgroups,
    product,
    pullback,
    quotient,
    subgroup,
    validate_group,
)

POOL = catalog.group_pool()
SMALL = [g for g in POOL if g.order <= 8]


def groups(max_order=12):
    return st.sampled_from([g for g in POOL if g.order <= max_order])


@st.composite
def relabelled(draw, max_order=12):
    """A pool group with its non-identity elements renamed by a random permutation."""
    g = draw(groups(max_order))
    rest = draw(st.permutations(range(1, g.order)))
    perm = [0, *rest]
    inv = {v: k for k, v in enumerate(perm)}
    table = [[perm[g.table[inv[a]][inv[b]]] for b in range(g.order)] for a in range(g.order)]
    return g, table


@st.composite
def homs(draw, max_order=8):
    g = draw(groups(max_order))
    h = draw(groups(max_order))
    return draw(st.sampled_from(list(homomorphisms(g, h))))


# ---------------------------------------------------------------- validation


def test_trivial_and_z2_tables():
    assert validate_group([[0]]).order == 1
    assert validate_group([[0, 1], [1, 0]]).order == 2


def test_inverse_violation():
    with pytest.raises(AxiomViolation) as exc:
        validate_group([[0, 1], [1, 1]])
    assert exc.value.axiom == "inverse"
    assert exc.value.witness == (1,)


def test_identity_and_shape_violations():
    with pytest.raises(AxiomViolation, match="identity"):
        validate_group([[1, 0], [0, 1]])
    with pytest.raises(AxiomViolation, match="shape"):
        validate_group([[0, 1], [1]])
    with pytest.raises(AxiomViolation, match="shape"):
        validate_group([[0, 2], [1, 0]])


def _reduced_latin_squares(n):
    """All n x n Latin squares with identity row and column ``0..n-1``."""
    rows = [list(range(n))]

    def rec(r):
        if r == n:
            yield [row[:] for row in rows]
            return
        used_cols = [{rows[i][c] for i in range(r)} for c in range(n)]
        for perm in itertools.permutations(range(n)):
            if perm[0] != r:
                continue
            if all(perm[c] not in used_cols[c] for c in range(n)):
                rows.append(list(perm))
                yield from rec(r + 1)
                rows.pop()

    yield from rec(1)


def _first_nonassociative(t):
    n = len(t)
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return (a, b, c)
    return None


@pytest.mark.parametrize("n", [3, 4, 5])
def test_every_reduced_latin_square(n):
    squares = list(_reduced_latin_squares(n))
    seen_bad = 0
    for t in squares:
        bad = _first_nonassociative(t)
        if bad is None:
            assert validate_group(t).order == n
        else:
            seen_bad += 1
            with pytest.raises(AxiomViolation) as exc:
                validate_group(t)
            assert exc.value.axiom == "associativity"
            assert exc.value.witness == bad
    if n == 5:
        assert len(squares) == 56 and seen_bad > 0


@st.composite
def intercalate_swaps(draw):
    """A group table with one 2x2 Latin subsquare flipped; usually non-associative."""
    g = draw(st.sampled_from([g for g in POOL if 4 <= g.order <= 12]))
    t = [list(r) for r in g.table]
    n = g.order
    cands = [(r1, r2, c1, c2)
             for r1, r2 in itertools.combinations(range(1, n), 2)
             for c1, c2 in itertools.combinations(range(1, n), 2)
             if t[r1][c1] == t[r2][c2] and t[r1][c2] == t[r2][c1]]
    if not cands:
        return t
    r1, r2, c1, c2 = draw(st.sampled_from(cands))
    t[r1][c1], t[r1][c2] = t[r1][c2], t[r1][c1]
    t[r2][c1], t[r2][c2] = t[r2][c2], t[r2][c1]
    return t


@settings(max_examples=60, deadline=None)
@given(intercalate_swaps())
def test_validation_matches_brute_force(t):
    if oracles.is_group_table(t):
        validate_group(t)
    else:
        with pytest.raises(AxiomViolation) as exc:
            validate_group(t)
        assert exc.value.witness == _first_nonassociative(t)


@settings(max_examples=40, deadline=None)
@given(relabelled())
def test_relabelled_tables_are_isomorphic_groups(data):
    g, t = data
    h = validate_group(t)
    f = is_isomorphic(g, h)
    assert f is not None and f.is_bijective and f.is_hom()


# ---------------------------------------------------------------- kernels, images, quotients


def test_kernel_examples():
    c4, c2 = catalog.cyclic(4), catalog.cyclic(2)
    mod2 = GroupHom.checked(c4, c2, [0, 1, 0, 1])
    k = kernel(mod2)
    assert k.element_set == (0, 2)
    assert is_isomorphic(k.carrier, c2) is not None
    s3 = catalog.symmetric(3)
    assert kernel(GroupHom.identity(s3)).element_set == (0,)
    assert kernel(GroupHom.zero(s3, c4)).element_set == tuple(range(6))


def test_image_and_cokernel_examples():
    s3 = catalog.symmetric(3)
    a3 = subgroup(s3, [x for x in s3 if s3.element_order(x) != 2])
    assert image(a3.into).order == 3
    assert cokernel(a3.into).order == 2
    c4 = catalog.cyclic(4)
    z = GroupHom.zero(s3, c4)
    assert image(z).order == 1
    assert is_isomorphic(cokernel(z).quotient, c4) is not None
    assert cokernel(GroupHom.identity(s3)).order == 1


def test_normal_closure_examples():
    s3 = catalog.symmetric(3)
    z = catalog.cyclic(1)
    assert normal_closure_of(z, [0]).element_set == (0,)
    t = next(x for x in s3 if s3.element_order(x) == 2)
    assert generated_subgroup(s3, [t]).order == 2
    assert normal_closure_of(s3, [t]).order == 6
    c6 = catalog.cyclic(6)
    assert normal_closure_of(c6, [2]).element_set == generated_subgroup(c6, [2]).element_set


def test_product_pullback_equalizer():
    c2 = catalog.cyclic(2)
    p = product([c2, c2]).group
    assert p.order == 4 and set(p.element_orders) == {1, 2}
    s3 = catalog.symmetric(3)
    i = GroupHom.identity(s3)
    pb = pullback(i, i)
    assert pb.order == 6 and all(a == b for a, b in pb.tuples)
    f = GroupHom.zero(s3, c2)
    assert equalizer(f, f).order == 6


def test_coequalizer_examples():
    s3 = catalog.symmetric(3)
    g, (p0, p1) = product([s3, s3])
    assert coequalizer_pair(p0, p1).order == 1
    sign = next(f for f in homomorphisms(s3, catalog.cyclic(2)) if not f.is_zero)
    q = coequalizer_pair(sign, sign)
    assert q.order == 2 and q.projection.is_bijective
    c2, c4 = catalog.cyclic(2), catalog.cyclic(4)
    q = coequalizer_pair(GroupHom.zero(c2, c4), GroupHom.checked(c2, c4, [0, 2]))
    assert q.order == 2 and q.kernel_elements == (0, 2)


def test_isomorphism_examples():
    c2, c3, c4 = catalog.cyclic(2), catalog.cyclic(3), catalog.cyclic(4)
    assert is_isomorphic(c4, catalog.klein_four()) is None
    s3 = catalog.symmetric(3)
    assert is_isomorphic(s3, s3).map == tuple(range(6))
    f = is_isomorphic(catalog.cyclic(6), product([c2, c3]).group)
    assert f is not None and f.is_bijective and f.is_hom()
    with pytest.raises(OrderCap):
        is_isomorphic(catalog.cyclic(70), catalog.cyclic(70), cap=64)


def test_checked_hom_rejects_non_homs():
    c2, c3 = catalog.cyclic(2), catalog.cyclic(3)
    with pytest.raises(HomViolation):
        GroupHom.checked(c3, c2, [0, 1, 1])
    with pytest.raises(HomViolation):
        GroupHom.checked(c2, c3, [1, 0])


@pytest.mark.parametrize("dom,cod", [(a, b) for a in SMALL[:6] for b in SMALL[:6]])
def test_hom_enumeration_counts(dom, cod):
    found = list(homomorphisms(dom, cod))
    assert len({f.map for f in found}) == len(found)
    assert all(f.is_hom() for f in found)
    assert len(found) == oracles.all_maps_homs(dom, cod)


def test_hom_count_s3_to_s3():
    s3 = catalog.symmetric(3)
    assert len(list(homomorphisms(s3, s3))) == oracles.all_maps_homs(s3, s3) == 10


def test_abelian_invariants_and_describe():
    c2c4 = product([catalog.cyclic(2), catalog.cyclic(4)]).group
    assert catalog.abelian_invariants(c2c4) == [2, 4]
    assert catalog.abelian_invariants(catalog.cyclic(6)) == [2, 3]
    assert catalog.describe(catalog.cyclic(1)) == "0"
    assert catalog.describe(catalog.klein_four()) == "C2 x C2"
    assert catalog.describe(catalog.quaternion()) == "Q8"
    assert catalog.describe(catalog.symmetric(3)) == "S3"


# ---------------------------------------------------------------- properties


@settings(max_examples=40, deadline=None)
@given(homs())
def test_first_isomorphism_theorem(f):
    k, im = kernel(f), image(f)
    assert k.is_normal()
    assert f.dom.order == k.order * im.order
    q = quotient(f.dom, k)
    assert is_isomorphic(q.quotient, im.carrier) is not None
    brute = tuple(x for x in f.dom if f.map[x] == 0)
    assert k.element_set == brute


@settings(max_examples=40, deadline=None)
@given(homs())
def test_kernel_pair_coequalizer_is_image(f):
    p0, p1 = kernel_pair(f).projections
    q = coequalizer_pair(p0, p1)
    assert q.order == image(f).order
    assert set(q.kernel_elements) == set(kernel(f).element_set)


@settings(max_examples=30, deadline=None)
@given(groups(12))
def test_normal_subgroups_are_normal_and_complete(g):
    found = {n.element_set for n in normal_subgroups(g)}
    assert all(oracles.is_normal_in(g.table, set(n), range(g.order)) for n in found)
    for gens in itertools.combinations(range(1, g.order), 1):
        nc = oracles.normal_closure(g.table, gens)
        assert tuple(sorted(nc)) in found


@settings(max_examples=30, deadline=None)
@given(groups(12), st.data())
def test_quotient_matches_oracle(g, data):
    n = data.draw(st.sampled_from(normal_subgroups(g)))
    q = quotient(g, n)
    assert oracles.group_signature(q.quotient) == oracles.quotient_signature(g.table, range(g.order), n.element_set)
    for fiber in q.fibers:
        a = fiber[0]
        assert set(fiber) == {g.table[a][x] for x in n.element_set}


def test_group_equality_is_by_table():
    assert FiniteGroup([[0, 1], [1, 0]]) == catalog.cyclic(2)
    assert catalog.cyclic(2) != catalog.cyclic(3)
