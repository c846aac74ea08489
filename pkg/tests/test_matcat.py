import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import config
from relcat.errors import DomainMismatch, RigMismatch, SearchExhausted
from relcat.formats import load_rig
from relcat.matcat import MatObject, MatrixCategory, RigMatrix, mat_ops


def matrices(rig, dom, cod):
    return st.lists(st.integers(min_value=0, max_value=rig.size - 1),
                    min_size=dom * cod, max_size=dom * cod).map(
        lambda entries: RigMatrix(rig, MatObject(dom), MatObject(cod), np.array(entries).reshape(cod, dom)))


@pytest.fixture
def cat():
    return MatrixCategory(load_rig("chain3"))


def test_from_labels(cat):
    m = RigMatrix.from_labels(cat.rig, [["0", "½"], ["1", "0"]])
    assert m.dom == MatObject(2)
    assert m.labels() == [["0", "½"], ["1", "0"]]


@pytest.mark.parametrize("entries", [
    np.zeros((2, 3), dtype=np.int64),
    np.zeros(6, dtype=np.int64),
    np.zeros((3, 2, 1), dtype=np.int64),
])
def test_rejects_wrongly_shaped_entries(cat, entries):
    # a 2 -> 3 matrix must be stored as 3 rows of 2
    with pytest.raises(ValueError, match="shape"):
        RigMatrix(cat.rig, MatObject(2), MatObject(3), entries)


def test_empty_matrix_accepts_flat_entries(cat):
    m = RigMatrix(cat.rig, MatObject(0), MatObject(3), np.zeros(0, dtype=np.int64))
    assert m.entries.shape == (3, 0)
    assert m.is_zero


def test_entries_outside_carrier(cat):
    with pytest.raises(ValueError, match="carrier"):
        RigMatrix(cat.rig, MatObject(1), MatObject(1), np.array([[3]]))


def test_compose_uses_rig_tables(cat):
    s = RigMatrix.from_labels(cat.rig, [["½", "1"]])
    r = RigMatrix.from_labels(cat.rig, [["1"], ["½"]])
    assert cat.compose(s, r).labels() == [["½"]]
    with pytest.raises(DomainMismatch):
        cat.compose(r, r)


def test_rig_mismatch(cat):
    other = MatrixCategory(load_rig("bool"))
    with pytest.raises(RigMismatch):
        cat.compose(cat.identity(MatObject(1)), other.identity(MatObject(1)))


@pytest.mark.parametrize("name", ["bool", "chain3", "trunc3", "gf2"])
@given(data=st.data())
def test_composition_laws(name, data):
    rig = load_rig(name)
    cat = MatrixCategory(rig)
    r = data.draw(matrices(rig, 2, 3))
    s = data.draw(matrices(rig, 3, 1))
    t = data.draw(matrices(rig, 1, 2))
    assert cat.compose(t, cat.compose(s, r)) == cat.compose(cat.compose(t, s), r)
    assert cat.compose(r, cat.identity(r.dom)) == r
    assert cat.dagger(cat.compose(s, r)) == cat.compose(cat.dagger(r), cat.dagger(s))


@given(data=st.data())
def test_tensor_is_kronecker(data):
    rig = load_rig("trunc3")
    cat = MatrixCategory(rig)
    r = data.draw(matrices(rig, 2, 2))
    s = data.draw(matrices(rig, 1, 2))
    t = cat.tensor(r, s)
    assert t.dom == MatObject(2) and t.cod == MatObject(4)
    for i in range(2):
        for k in range(2):
            for j in range(2):
                expected = rig.mul_table[r.entries[i, j], s.entries[k, 0]]
                assert t.entries[i * 2 + k, j] == expected


def test_tensor_of_identities(cat):
    assert cat.tensor(cat.identity(MatObject(2)), cat.identity(MatObject(3))) == cat.identity(MatObject(6))


@given(data=st.data())
def test_sum_via_diagonal_is_addition(data):
    rig = load_rig("gf2")
    cat = MatrixCategory(rig)
    rs = [data.draw(matrices(rig, 2, 2)) for _ in range(3)]
    expected = cat.add(cat.add(rs[0], rs[1]), rs[2])
    assert cat.sum_via_diagonal(rs) == expected


def test_biproduct_injections(cat):
    S, inj, proj = cat.biproduct([MatObject(1), MatObject(2)])
    assert S == MatObject(3)
    total = cat.add(cat.compose(inj[0], proj[0]), cat.compose(inj[1], proj[1]))
    assert total == cat.identity(S)
    assert cat.compose(proj[1], inj[0]).is_zero


def test_braiding(cat):
    beta = cat.braiding(MatObject(2), MatObject(3))
    assert cat.compose(cat.braiding(MatObject(3), MatObject(2)), beta) == cat.identity(MatObject(6))


def test_hom_stack(cat):
    stack = cat.hom_stack(MatObject(2), MatObject(1))
    assert stack.shape == (9, 1, 2)
    assert cat.hom_count(MatObject(2), MatObject(1)) == 9
    assert len(cat.points(MatObject(2))) == 9
    assert not stack.flags.writeable


@pytest.mark.parametrize("name, n, count", [("bool", 2, 2), ("bool", 3, 6), ("trunc3", 2, 2), ("chain3", 2, 2)])
def test_dagger_isos_are_permutations(name, n, count):
    assert len(MatrixCategory(load_rig(name)).dagger_isos(n)) == count


def test_kernel_of_half_is_zero_object(cat):
    r = RigMatrix.from_labels(cat.rig, [["½"]])
    found = cat.find_kernel(r, 2)
    assert found.witness.m.dom == MatObject(0)
    assert cat.cokernel(r, 2).cod == MatObject(0)


def test_kernel_of_boolean_row():
    cat = MatrixCategory(load_rig("bool"))
    r = RigMatrix.from_labels(cat.rig, [["1", "0", "0"]])
    m = cat.find_kernel(r, 3).witness.m
    assert m.dom == MatObject(2)
    assert cat.compose(cat.dagger(m), m) == cat.identity(MatObject(2))
    assert cat.compose(r, m).is_zero
    assert m.labels()[0] == ["0", "0"]


def test_kernel_search_bound(cat):
    r = cat.identity(MatObject(2))
    with pytest.raises(ValueError):
        cat.find_kernel(r, 1)


def test_kernel_search_ceiling(cat, monkeypatch):
    monkeypatch.setattr(config, "KERNEL_SEARCH_CEILING", 5)
    with pytest.raises(SearchExhausted):
        cat.find_kernel(cat.identity(MatObject(2)), 2)


@pytest.mark.parametrize("name", ["bool", "chain3", "trunc3", "gf2"])
@pytest.mark.parametrize("n", range(4))
def test_dagger_duals(name, n):
    assert MatrixCategory(load_rig(name)).check_dagger_dual(MatObject(n)).holds


@given(data=st.data())
def test_breve_round_trip(data):
    rig = load_rig("chain3")
    cat = MatrixCategory(rig)
    r = data.draw(matrices(rig, 2, 3))
    assert cat.un_breve_mat(cat.breve_mat(r), r.dom, r.cod) == r


def test_structural(cat):
    assert cat.structural("left-unitor", [MatObject(2)]) == cat.identity(MatObject(2))
    assert cat.structural("zero-morphism", [MatObject(1), MatObject(2)]).is_zero


def test_operation_table(cat):
    ops = mat_ops(cat)
    assert ops["compose"] == cat.compose
