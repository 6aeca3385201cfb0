"""Group construction: orders, classes, abelian structure, reflection groups."""
from fractions import Fraction

import pytest

from mckay import klein
from mckay.exact import Cyclo
from conftest import A_TRIPLES, DE_TRIPLES


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_order_matches_schwarz_formula(triple, ctx_factory):
    K = ctx_factory(triple).K
    s = sum(Fraction(1, p) for p in triple) - 1
    assert K.order == 4 / s
    assert K.order == klein.predicted_order(triple)


def test_infinite_group_rejected():
    with pytest.raises(klein.GroupError, match="infinite group"):
        klein.build_group((7, 3, 2))


def test_closure_overflow():
    with pytest.raises(klein.GroupError, match="closure overflow"):
        klein.build_group((5, 3, 2), bound=50)


def test_insufficient_conductor():
    with pytest.raises(Exception, match="conductor"):
        klein.build_group((5, 3, 2), conductor=12)


def test_conductor_override_multiple_works():
    K = klein.build_group((3, 3, 2), conductor=48)
    assert K.order == 24 and K.conductor == 48


@pytest.mark.parametrize("triple,n_classes", [
    ((2, 2, 2), 5), ((3, 2, 2), 6), ((8, 2, 2), 11),
    ((3, 3, 2), 7), ((4, 3, 2), 8), ((5, 3, 2), 9),
])
def test_class_count(triple, n_classes, ctx_factory):
    ctx = ctx_factory(triple)
    assert len(ctx.classes) == n_classes
    assert n_classes == sum(triple) - 1
    # identity and -1 are singletons; sizes divide the order
    assert ctx.classes[0].size == 1 and ctx.classes[0].order == 1
    for c in ctx.classes:
        assert ctx.K.order % c.size == 0


def test_group_axioms_sampled(e8):
    K = e8.K
    import random
    rng = random.Random(1)
    for _ in range(300):
        a, b, c = (rng.randrange(K.order) for _ in range(3))
        assert K.table[K.table[a][b]][c] == K.table[a][K.table[b][c]]
    for x in range(K.order):
        assert K.table[x][K.inverse[x]] == K.identity
    # all elements are unitary with determinant 1
    for x in range(0, K.order, 17):
        m = K.elements[x]
        assert m.is_unitary() and m.det() == 1


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_triangle_generators(triple, ctx_factory):
    K = ctx_factory(triple).K
    ea, eb, ec = K.e_indices
    for e, p in zip((ea, eb, ec), triple):
        assert K.element_order(e) == 2 * p
    assert K.table[K.table[ea][eb]][ec] == K.minus_one


def test_q8_classes(ctx_factory):
    ctx = ctx_factory((2, 2, 2))
    sizes = sorted(c.size for c in ctx.classes)
    assert sizes == [1, 1, 2, 2, 2]


def test_icosahedral_class_sizes(e8):
    assert sorted(c.size for c in e8.classes) == [1, 1, 12, 12, 12, 12, 20, 20, 30]


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_maximal_abelian_structure(triple, ctx_factory):
    ctx = ctx_factory(triple)
    K = ctx.K
    mas = klein.maximal_abelian(K)
    for ma, p in zip(mas, triple):
        assert len(ma.members) == 2 * p
        # lambda(e_X) is a primitive 2p-th root of unity
        lam = ma.eigenvalue
        assert lam ** (2 * p) == 1
        assert not lam ** p == 1 or p == 1
        # the stored eigenline really is an eigenline
        m = K.elements[ma.generator]
        vx, vy = ma.line_plus
        assert m.apply((vx, vy)) == (lam * vx, lam * vy)
    for i in range(3):
        for j in range(i + 1, 3):
            inter = set(mas[i].members) & set(mas[j].members)
            assert inter == {K.identity, K.minus_one}


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_every_noncentral_element_in_exactly_one_abelian(triple, ctx_factory):
    K = ctx_factory(triple).K
    subs = list(klein.all_maximal_abelians(K))
    count = {x: 0 for x in range(K.order)}
    for s in subs:
        for m in s:
            count[m] += 1
    for x in range(K.order):
        if x in (K.identity, K.minus_one):
            assert count[x] == len(subs)
        else:
            assert count[x] == 1


@pytest.mark.parametrize("triple,expected_two_cycles", [
    ((3, 3, 2), 2),                      # coupled branches with two nodes
    ((3, 2, 2), 1), ((5, 2, 2), 1), ((7, 2, 2), 1),   # odd dihedral
    ((2, 2, 2), 0), ((4, 2, 2), 0), ((8, 2, 2), 0),
    ((4, 3, 2), 0), ((5, 3, 2), 0),
])
def test_inversion_involution_pattern(triple, expected_two_cycles, ctx_factory):
    ctx = ctx_factory(triple)
    inv = klein.inversion_involution(ctx.classes)
    assert all(inv[inv[c]] == c for c in inv)
    moved = [c for c in inv if inv[c] != c]
    assert len(moved) == 2 * expected_two_cycles
    # the class of -1 is always fixed
    for c in ctx.classes:
        if c.order == 2:
            assert inv[c.id] == c.id


def test_e6_coupling_relation(e6):
    # conjugation by e_C sends the class of e_A to the class of e_B^{-1}
    K = e6.K
    ea, eb, ec = K.e_indices
    where = klein.class_index_map(e6.classes)
    assert where[K.conj_by(ec, ea)] == where[K.inverse[eb]]


@pytest.mark.parametrize("triple,kp_order,n_refl,degs", [
    ((2, 2, 2), 16, 6, (4, 4)),
    ((3, 2, 2), 24, 8, (6, 4)),
    ((8, 2, 2), 64, 18, (16, 4)),
    ((3, 3, 2), 48, 12, (8, 6)),
    ((4, 3, 2), 96, 18, (12, 8)),
    ((5, 3, 2), 240, 30, (20, 12)),
])
def test_reflection_groups(triple, kp_order, n_refl, degs, ctx_factory):
    ctx = ctx_factory(triple)
    Kp = ctx.Kp
    assert Kp.order == kp_order == 2 * ctx.K.order
    assert len(Kp.reflections) == n_refl
    assert klein.degrees(Kp) == degs
    # reflections square to one and fix a line pointwise
    ident = klein.mat_identity(Kp.conductor)
    for r in Kp.reflections[:4]:
        m = Kp.elements[r]
        assert (m * m).key() == ident.key()
        assert m.det() == -1 and m.trace().is_zero()
    # K is normal in K'
    s = Kp.coset_rep
    for g in range(0, ctx.K.order, 7):
        assert Kp.sigma[g] < ctx.K.order


@pytest.mark.parametrize("m,degs", [(3, (3, 2)), (6, (6, 2)), (9, (9, 2))])
def test_cyclic_reflection_groups(m, degs, ctx_factory):
    ctx = ctx_factory((m,))
    assert ctx.Kp.order == 2 * m
    assert klein.degrees(ctx.Kp) == degs
    assert len(ctx.Kp.reflections) == m


@pytest.mark.parametrize("triple,terms", [
    ((5, 3, 2), [24, 20, 15]),
    ((3, 3, 2), [8, 3]),          # coupled branches contribute one term
    ((2, 2, 2), [1, 1, 1]),
])
def test_class_equation(triple, terms, ctx_factory):
    rep = klein.check_class_equation(ctx_factory(triple).K)
    assert rep["holds"]
    assert sorted(rep["terms"], reverse=True) == sorted(terms, reverse=True)
    assert rep["total"] == rep["order_bar"]


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_kprime_acts_by_inversion(triple, ctx_factory):
    ctx = ctx_factory(triple)
    rep = klein.check_inversion_action(ctx.Kp, ctx.classes)
    assert rep["matches_inversion"]


@pytest.mark.parametrize("triple", A_TRIPLES)
def test_cyclic_groups(triple, ctx_factory):
    ctx = ctx_factory(triple)
    assert ctx.K.order == triple[0]
    assert len(ctx.classes) == triple[0]
    assert ctx.K.is_cyclic


def test_doubled_vs_coupled(ctx_factory):
    for triple, doubled in [((5, 3, 2), [True, True, True]),
                            ((3, 3, 2), [False, False, True]),
                            ((5, 2, 2), [True, False, False])]:
        mas = klein.maximal_abelian(ctx_factory(triple).K)
        assert [ma.doubled for ma in mas] == doubled
