"""Character oracle: exactness, orthogonality, McKay matrices, restrictions."""
from fractions import Fraction

import pytest

from mckay import characters, klein
from mckay.exact import Cyclo
from conftest import A_TRIPLES, DE_TRIPLES


def test_q8_table_is_the_classical_one(ctx_factory):
    ctx = ctx_factory((2, 2, 2))
    tab = ctx.table
    assert sorted(tab.degrees) == [1, 1, 1, 1, 2]
    # the classical table: the 2-dim row is (2, -2, 0, 0, 0)
    two = tab.degrees.index(2)
    K = ctx.K
    where = klein.class_index_map(ctx.classes)
    assert tab.values[two][where[K.identity]] == 2
    assert tab.values[two][where[K.minus_one]] == -2
    for c in ctx.classes:
        if c.order == 4:
            assert tab.values[two][c.id].is_zero()
    # each 1-dim row has values +-1 with product structure
    for i in range(tab.size):
        if tab.degrees[i] == 1:
            for v in tab.values[i]:
                assert v == 1 or v == -1


@pytest.mark.parametrize("triple,degs", [
    ((5, 3, 2), [1, 2, 2, 3, 3, 4, 4, 5, 6]),
    ((4, 3, 2), [1, 1, 2, 2, 2, 3, 3, 4]),
    ((3, 3, 2), [1, 1, 1, 2, 2, 2, 3]),
    ((6, 2, 2), [1, 1, 1, 1, 2, 2, 2, 2, 2]),
])
def test_degree_multisets(triple, degs, ctx_factory):
    assert sorted(ctx_factory(triple).table.degrees) == degs


def test_trivial_character_is_all_ones(e8):
    tab = e8.table
    assert all(v == 1 for v in tab.values[tab.trivial_index])


@pytest.mark.parametrize("triple", DE_TRIPLES + A_TRIPLES)
def test_orthogonality_both_ways(triple, ctx_factory):
    ctx = ctx_factory(triple)
    tab = ctx.table
    # row orthogonality
    for i in range(tab.size):
        for j in range(i, tab.size):
            assert tab.inner(tab.values[i], tab.values[j]) == (1 if i == j else 0)
    # column orthogonality
    for s, c in enumerate(tab.classes):
        for s2 in range(tab.size):
            tot = Cyclo.zero(tab.conductor)
            for i in range(tab.size):
                tot = tot + tab.values[i][s] * tab.values[i][s2].conj()
            assert tot == (Fraction(ctx.K.order, c.size) if s2 == s else 0)
    assert sum(d * d for d in tab.degrees) == ctx.K.order


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_conjugate_values_on_inverse_classes(triple, ctx_factory):
    tab = ctx_factory(triple).table
    for i in range(tab.size):
        for c in tab.classes:
            assert tab.values[i][c.inverse_class] == tab.values[i][c.id].conj()


def test_natural_character(e8):
    K, tab = e8.K, e8.table
    nat = characters.natural_character(K, e8.classes)
    where = klein.class_index_map(e8.classes)
    assert nat[where[K.identity]] == 2
    assert nat[where[K.minus_one]] == -2
    # chi(e_A) = tau for the icosahedral type
    ea = K.e_indices[0]
    z10 = Cyclo.root_of_unity(K.conductor // 10, K.conductor)
    assert nat[where[ea]] == z10 + z10.inverse()
    ec = K.e_indices[2]
    assert nat[where[ec]].is_zero()
    # the natural character is one of the oracle rows
    assert tab.natural_index is not None
    assert tab.degrees[tab.natural_index] == 2


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_mckay_matrix_properties(triple, ctx_factory):
    ctx = ctx_factory(triple)
    M, tab = ctx.mckay, ctx.table
    n = len(M)
    for i in range(n):
        assert M[i][i] == 0
        for j in range(n):
            assert M[i][j] == M[j][i]
            assert M[i][j] in (0, 1, 2)
        assert sum(M[i][j] * tab.degrees[j] for j in range(n)) == 2 * tab.degrees[i]
    # trivial row: a single 1 at the natural character
    row = M[tab.trivial_index]
    assert sum(row) == 1 and row[tab.natural_index] == 1


def test_mckay_matrix_cyclic(ctx_factory):
    ctx = ctx_factory((5,))
    nat = characters.natural_character(ctx.K, ctx.classes)
    M = characters.mckay_matrix(ctx.table, natural=nat)
    assert all(sum(row) == 2 for row in M)


def test_perturbed_table_breaks_orthogonality(e6):
    tab = e6.table
    vals = [row[:] for row in tab.values]
    vals[1][2] = vals[1][2] + 1
    broken = characters.CharacterTable(
        classes=tab.classes, values=vals, degrees=tab.degrees,
        trivial_index=tab.trivial_index, natural_index=tab.natural_index,
        conductor=tab.conductor)
    bad = sum(
        1 for i in range(broken.size) for j in range(broken.size)
        if broken.inner(broken.values[i], broken.values[j]) != (1 if i == j else 0))
    assert bad > 0


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_restriction(triple, ctx_factory):
    ctx = ctx_factory(triple)
    rep = characters.restriction_check(ctx.Kp, ctx.K, ctx.table_p, ctx.table)
    assert rep["holds"]
    # the trivial character of K' restricts to the trivial of K
    tp = ctx.table_p
    assert rep["restrictions"][tp.trivial_index] == [ctx.table.trivial_index]


def test_e6_coupled_pair_from_one_kprime_character(e6):
    rep = characters.restriction_check(e6.Kp, e6.K, e6.table_p, e6.table)
    conj = characters._conjugate_row(e6.table)
    pairs = [r for r in rep["restrictions"] if len(r) == 2]
    # the two coupled degree-1 characters arise from a single K'-character
    one_dim_pair = [r for r in pairs if e6.table.degrees[r[0]] == 1]
    assert len(one_dim_pair) == 1
    i, j = one_dim_pair[0]
    assert conj[i] == j


def test_e8_all_restrictions_stay_irreducible(e8):
    rep = characters.restriction_check(e8.Kp, e8.K, e8.table_p, e8.table)
    assert all(len(r) == 1 for r in rep["restrictions"])
    assert rep["counts"] == [2] * e8.table.size
