import pytest
from hypothesis import given
from hypothesis import strategies as st

from relcat.errors import InfiniteUnsupported, MalformedTable
from relcat.formats import load_rig, rig_names
from relcat.rig import (INFINITE, CollapseKind, FamilyDescriptor, FiniteRig, division_collapse_check,
                        inverse, multiple, order_leq, sum_family, validate_rig)


BUNDLED = ["bool", "chain3", "gf2", "trivial", "trunc3"]


def test_bundled_rigs_are_listed():
    assert rig_names() == BUNDLED


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_rigs_satisfy_the_laws(name):
    report = validate_rig(load_rig(name))
    assert report.ok, report.laws()


def test_validate_reports_first_witness():
    rig = FiniteRig.from_tables("lopsided", ["0", "1"], "0", "1",
                                [["0", "1"], ["0", "1"]], [["0", "0"], ["0", "1"]])
    report = validate_rig(rig)
    assert "additive commutativity" in report.laws()
    assert report.witness("additive commutativity") == ("0", "1")


def test_short_table_is_malformed():
    with pytest.raises(MalformedTable):
        FiniteRig.from_tables("short", ["0", "1"], "0", "1", [["0", "1"], ["1"]], [["0", "0"], ["0", "1"]])


def test_unknown_label_is_malformed():
    with pytest.raises(MalformedTable):
        FiniteRig.from_tables("odd", ["0", "1"], "0", "1", [["0", "1"], ["1", "2"]], [["0", "0"], ["0", "1"]])


def test_rig_lookup():
    rig = load_rig("chain3")
    assert rig.add("½", "1") == "1"
    assert rig.mul("½", "1") == "½"
    assert rig.is_idempotent
    assert not load_rig("trunc3").is_idempotent


def test_multiple_saturates():
    trunc3 = load_rig("trunc3")
    assert multiple(trunc3, "1", 0) == "0"
    assert multiple(trunc3, "1", 1) == "1"
    assert multiple(trunc3, "1", 5) == "2"
    assert multiple(load_rig("gf2"), "1", 3) == "1"
    assert multiple(load_rig("gf2"), "1", 4) == "0"


@pytest.mark.parametrize("name", BUNDLED)
@given(m=st.integers(min_value=0, max_value=50), n=st.integers(min_value=0, max_value=50), data=st.data())
def test_multiple_is_additive(name, m, n, data):
    rig = load_rig(name)
    a = data.draw(st.sampled_from(rig.carrier))
    assert multiple(rig, a, m + n) == rig.add(multiple(rig, a, m), multiple(rig, a, n))


def test_infinite_families():
    bool_rig = load_rig("bool")
    assert sum_family(bool_rig, FamilyDescriptor({"1": INFINITE})) == "1"
    assert sum_family(bool_rig, FamilyDescriptor({"0": INFINITE})) == "0"
    assert sum_family(load_rig("chain3"), FamilyDescriptor({"½": INFINITE, "0": 3})) == "½"
    with pytest.raises(InfiniteUnsupported):
        sum_family(load_rig("gf2"), FamilyDescriptor({"1": INFINITE}))


def test_finite_family_uses_multiplicities():
    assert sum_family(load_rig("gf2"), FamilyDescriptor({"1": 3})) == "1"
    assert sum_family(load_rig("trunc3"), FamilyDescriptor({"1": 1, "2": 1})) == "2"


def test_descriptor_rejects_zero_multiplicity():
    with pytest.raises(ValueError):
        FamilyDescriptor({"1": 0})


def test_descriptor_merge_and_map():
    fam = FamilyDescriptor({"1": 2}).merge(FamilyDescriptor({"1": 1, "0": 1}))
    assert dict(fam.items()) == {"0": 1, "1": 3}
    assert dict(fam.map(lambda a: "0").items()) == {"0": 4}


def test_order_and_inverse():
    chain3 = load_rig("chain3")
    assert order_leq(chain3, "½", "1")
    assert not order_leq(chain3, "1", "½")
    assert inverse(chain3, "½") is None
    assert inverse(load_rig("gf2"), "1") == "1"


@pytest.mark.parametrize("name, kind, witness", [
    ("chain3", CollapseKind.NOT_DIVISION_RIG, "½"),
    ("trunc3", CollapseKind.NOT_DIVISION_RIG, "2"),
    ("trivial", CollapseKind.NOT_DIVISION_RIG, "0"),
    ("gf2", CollapseKind.NOT_INFINITARY, None),
])
def test_collapse_rejections(name, kind, witness):
    verdict = division_collapse_check(load_rig(name))
    assert verdict.kind is kind
    assert verdict.witness == witness


def test_booleans_collapse():
    verdict = division_collapse_check(load_rig("bool"))
    assert verdict.kind is CollapseKind.COLLAPSED
    assert verdict.omega == "1"
    assert verdict.kind.value == "Collapsed"
