import pytest
from hypothesis import given
from hypothesis import strategies as st

import config
from relcat import helper
from relcat import relations as rel
from relcat.errors import ArityMismatch, DomainMismatch, NotDaggerKernel


@st.composite
def relations(draw, dom=None, cod=None):
    if dom is None:
        dom = rel.finset("X", draw(st.integers(min_value=0, max_value=3)))
    if cod is None:
        cod = rel.finset("Y", draw(st.integers(min_value=0, max_value=3)))
    rows = draw(st.lists(st.integers(min_value=0, max_value=cod.full_mask), min_size=len(dom), max_size=len(dom)))
    return rel.Relation(dom, cod, tuple(rows))


X3 = rel.finset("X", 3)
Y1 = rel.FinSet("Y", ("y",))


def test_relation_rows_must_fit():
    with pytest.raises(DomainMismatch):
        rel.Relation(X3, Y1, (0, 0))
    with pytest.raises(DomainMismatch):
        rel.Relation(X3, Y1, (0, 2, 0))


def test_set_equality_ignores_labels():
    assert rel.finset("A", 2) == rel.finset("B", 2)
    assert rel.FinSet("I", ("*",)) == rel.UNIT


def test_from_pairs_and_pairs():
    r = rel.Relation.from_pairs(X3, Y1, [("a", "y")])
    assert r.rows == (1, 0, 0)
    assert r.pairs == {("a", "y")}
    assert r.related("a", "y") and not r.related("b", "y")


def test_compose_mismatch():
    with pytest.raises(DomainMismatch):
        rel.compose(rel.identity(X3), rel.identity(Y1))


@given(relations(), st.data())
def test_identity_is_neutral(r, data):
    assert rel.compose(r, rel.identity(r.dom)) == r
    assert rel.compose(rel.identity(r.cod), r) == r


@given(st.data())
def test_compose_is_associative(data):
    r = data.draw(relations())
    s = data.draw(relations(dom=r.cod))
    t = data.draw(relations(dom=s.cod))
    assert rel.compose(t, rel.compose(s, r)) == rel.compose(rel.compose(t, s), r)


@given(st.data())
def test_dagger_reverses_composition(data):
    r = data.draw(relations())
    s = data.draw(relations(dom=r.cod))
    assert rel.dagger(rel.compose(s, r)) == rel.compose(rel.dagger(r), rel.dagger(s))
    assert rel.dagger(rel.dagger(r)) == r


def test_kernel_is_the_unrelated_subset():
    r = rel.Relation.from_pairs(X3, Y1, [("a", "y")])
    w = rel.kernel(r)
    rel.check_dagger_kernel(w)
    assert w.m.dom.elements == ("b", "c")
    assert w.m.dom.label == "X[011]"
    assert rel.compose(r, w.m).is_zero


def test_complement_of_kernel():
    r = rel.Relation.from_pairs(X3, Y1, [("a", "y")])
    comp = rel.complement(rel.kernel(r))
    assert comp.m.dom.elements == ("a",)
    assert rel.is_orthogonal(rel.kernel(r).m, comp.m)


def test_bad_kernel_witness():
    r = rel.Relation.from_pairs(X3, Y1, [("a", "y")])
    with pytest.raises(NotDaggerKernel):
        rel.check_dagger_kernel(rel.DaggerKernelWitness(rel.identity(X3), r))


def test_cokernel():
    r = rel.Relation.from_pairs(X3, Y1, [("a", "y")])
    assert len(rel.cokernel(r).cod) == 0
    assert len(rel.cokernel(rel.zero_morphism(X3, Y1)).cod) == 1


@pytest.mark.parametrize("n", range(5))
def test_points_and_atoms(n):
    X = rel.finset("X", n)
    points = rel.points(X)
    assert len(points) == 2 ** n
    assert [p.mask for p in points] == list(range(2 ** n))
    assert len(rel.atoms(X)) == n


def test_meet_is_intersection():
    a = rel.point(X3, ["a", "b"])
    b = rel.point(X3, ["b", "c"])
    assert rel.meet(a, b).subset() == ("b",)


@pytest.mark.parametrize("n", range(5))
def test_meet_formula_everywhere(n):
    X = rel.finset("X", n)
    for a in rel.points(X):
        for b in rel.points(X):
            assert rel.meet(a, b).mask == a.mask & b.mask


def test_negation():
    a = rel.point(X3, ["a"])
    assert rel.neg(a).subset() == ("b", "c")
    assert rel.join([a, rel.neg(a)]) == rel.top(X3)


def test_join_needs_signature_when_empty():
    with pytest.raises(DomainMismatch):
        rel.join([])
    assert rel.join([], X3, Y1).is_zero


@given(st.lists(relations(dom=X3, cod=rel.finset("Y", 2)), max_size=4))
def test_join_matches_biproduct_sum(rs):
    Y = rel.finset("Y", 2)
    assert rel.join(rs, X3, Y) == rel.diagonal_sum(rs, X3, Y)


@pytest.mark.parametrize("sizes", [[], [0], [1, 2], [2, 0, 1]])
def test_biproduct_equations(sizes):
    Xs = [rel.finset("X%d" % k, n) for k, n in enumerate(sizes)]
    S, inj, proj = rel.biproduct(Xs)
    for i, p in zip(inj, proj):
        assert rel.dagger(i) == p
        assert rel.compose(p, i) == rel.identity(i.dom)
    assert rel.join([rel.compose(i, p) for i, p in zip(inj, proj)], S, S) == rel.identity(S)


def test_structural_arity():
    assert rel.structural("braiding", [X3, Y1]) == rel.braiding(X3, Y1)
    with pytest.raises(ArityMismatch):
        rel.structural("associator", [X3, Y1])


def test_braiding_is_an_involution():
    beta = rel.braiding(X3, Y1)
    assert rel.compose(rel.braiding(Y1, X3), beta) == rel.identity(beta.dom)


@pytest.mark.parametrize("n", range(4))
def test_snake_composites_are_identities(n):
    X = rel.finset("X", n)
    first, second = rel.snake_composites(X)
    assert first == rel.identity(X)
    assert second == rel.identity(X)


def test_trace_detects_fixed_points():
    assert rel.trace(rel.identity(X3))
    assert not rel.trace(rel.zero_morphism(X3, X3))
    assert not rel.trace(rel.identity(rel.EMPTY))
    with pytest.raises(DomainMismatch):
        rel.trace(rel.zero_morphism(X3, Y1))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_trace_is_fixed_point_existence(n):
    X = rel.finset("X", n)
    for r in rel.homs(X, X):
        assert rel.trace(r) == any(r.rows[i] >> i & 1 for i in range(n))


def test_join_matches_biproduct_sum_on_seeded_families():
    rng = helper.make_rng(0)
    for _ in range(config.ENRICHMENT_FAMILIES):
        n = int(rng.integers(1, 6))
        m, k = (int(v) for v in rng.integers(0, config.ENRICHMENT_MAX_SIZE + 1, size=2))
        X, Y = rel.finset("X", m), rel.finset("Y", k)
        rs = [rel.Relation(X, Y, tuple(int(v) for v in rng.integers(0, 1 << k, size=m))) for _ in range(n)]
        assert rel.join(rs, X, Y) == rel.diagonal_sum(rs, X, Y)


@given(relations())
def test_breve_round_trip(r):
    p = rel.breve(r)
    assert p.is_point
    assert rel.un_breve(p, r.dom, r.cod) == r


def test_dagger_iso():
    assert rel.is_dagger_iso(rel.braiding(X3, Y1))
    assert not rel.is_dagger_iso(rel.diagonal(X3))
