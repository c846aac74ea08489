import re

import pytest

import config
from relcat import checker
from relcat import relations as rel
from relcat.checker import (AXIOM_CONDITIONS, EQUATIONS, POINT_CONDITIONS, Counterexample, check_axioms,
                            check_biproducts, check_kernels, check_monoidal_separator, check_point_conditions,
                            check_scalars, check_scalars_invertible, check_separator, check_sum_idempotence,
                            check_unique_top, replay, run_suite, separating_points, verify_decomposition_lemmas,
                            verify_hom_lattice, violation)


def test_axioms_hold_for_relations(rel_model):
    report = check_axioms(rel_model, 2)
    assert list(report.verdicts) == [cid for cid, _ in AXIOM_CONDITIONS]
    assert report.holds, report.failures()
    assert report.model == "rel"


def test_point_conditions_hold_for_relations(rel_model):
    report = check_point_conditions(rel_model, 2)
    assert list(report.verdicts) == [cid for cid, _ in POINT_CONDITIONS]
    assert report.holds, report.failures()


def test_monoidal_separator_for_relations(rel_model):
    verdict = check_monoidal_separator(rel_model, 2)
    assert verdict.holds
    assert "pairs examined" in verdict.detail


def test_decomposition_lemmas_for_relations(rel_model):
    report = verify_decomposition_lemmas(rel_model, 4)
    assert set(report.verdicts) == {"projector-sum", "atom-resolution", "point-factorization",
                                    "atom-existence", "cokernel-top", "meet-formula"}
    assert report.holds


@pytest.mark.parametrize("fixture, witness", [("chain3", "½"), ("trunc3", "2")])
def test_scalar_witnesses(request, fixture, witness):
    model = request.getfixturevalue(fixture)
    verdict = check_scalars_invertible(model, 2)
    assert not verdict.holds
    cx = verdict.counterexample
    name, s = cx.morphisms[0]
    assert name == "s"
    assert s.labels() == [[witness]]
    assert (cx.lhs, cx.rhs) == ("not invertible", "invertible")
    assert replay(model, cx)


def test_chain_has_several_zero_cokernel_points(chain3):
    verdict = check_unique_top(chain3, 2)
    assert not verdict.holds
    assert verdict.counterexample.lhs == "2 zero-cokernel points"


def test_chain_scalars(chain3, rel_model):
    assert check_scalars(rel_model, 1).holds
    cx = check_scalars(chain3, 1).counterexample
    assert cx.lhs == "scalars 0 ½ 1; 1+1=1"


def test_field_is_not_idempotent(gf2):
    verdict = check_sum_idempotence(gf2, 1)
    assert not verdict.holds
    assert verdict.counterexample.equation == "sum-idempotence"


def test_field_lacks_infinite_sums(gf2):
    verdict = check_biproducts(gf2, 1)
    assert not verdict.holds
    assert verdict.counterexample.lhs == "undefined"


def test_boolean_matrices_have_kernels(bool_mat):
    assert check_kernels(bool_mat, 2).holds
    assert check_separator(bool_mat, 2).holds


def test_counterexample_survives_the_file_format(gf2):
    cx = check_sum_idempotence(gf2, 1).counterexample
    parsed = tuple(gf2.parse(gf2.serialize(list(cx.morphisms))))
    assert replay(gf2, Counterexample(parsed, cx.equation, cx.lhs, cx.rhs, cx.bound))
    assert not replay(gf2, Counterexample(parsed, cx.equation, cx.lhs, "something else", cx.bound))


def test_violation_is_none_when_equal(rel_model):
    idx = rel_model.identity(rel_model.obj(2))
    assert violation(rel_model, "sum-idempotence", (("r", idx),), 2) is None
    assert "sum-idempotence" in EQUATIONS


def test_render(rel_model):
    r = rel.Relation.from_pairs(rel.finset("X", 2), rel.finset("Y", 1), [("b", "a")])
    assert checker.render(rel_model, r) == "2->1 [0 1]"
    assert checker.render(rel_model, None) == "none"


def test_separating_points(rel_model):
    X, Y, Z = rel_model.obj(2), rel_model.obj(1), rel_model.obj(1)
    XY = rel_model.tensor_obj(X, Y)
    f = rel_model.zero(XY, Z)
    g = rel_model.top(Z)
    g = rel_model.compose(g, rel_model.dagger(rel_model.top(XY)))
    a, b = separating_points(rel_model, f, g, X, Y)
    assert a.mask == 1 and b.mask == 1
    assert separating_points(rel_model, f, f, X, Y) is None


@pytest.mark.parametrize("n", range(4))
def test_relation_lattice_is_boolean(rel_model, n):
    report = verify_hom_lattice(rel_model, rel_model.obj(n))
    assert report.holds, report.failing()
    assert (report.points, report.atoms) == (2 ** n, n)


def test_sampled_lattice(rel_model):
    report = verify_hom_lattice(rel_model, rel_model.obj(4), mode="sampled", samples=1000, seed=7)
    assert report.mode == "sampled"
    assert report.laws["distributivity"].holds
    assert report.holds


def test_chain_lattice_is_not_complemented(chain3):
    report = verify_hom_lattice(chain3, chain3.obj(1))
    assert report.failing() == ["complementation"]
    cx = report.laws["complementation"].counterexample
    assert cx.equation == "complement-join"
    assert chain3.point_pattern(cx.morphisms[0][1]) == "½"


def test_unknown_lattice_mode(rel_model):
    with pytest.raises(ValueError):
        verify_hom_lattice(rel_model, rel_model.obj(1), mode="partial")


def test_suite_needs_a_positive_bound(rel_model):
    with pytest.raises(ValueError):
        run_suite(rel_model, 0, [])


def test_suite_attaches_partial_report(chain3):
    def exhausted(model, bound, seed=None):
        raise checker.SearchExhausted("too many candidates")

    entries = checker.condition_entries((("4-unit-nonzero", checker.check_unit_nonzero),
                                         ("2-kernels", exhausted)), chain3, 1)
    with pytest.raises(checker.SearchExhausted) as e:
        run_suite(chain3, 1, entries)
    assert list(e.value.report.verdicts) == ["4-unit-nonzero"]


def test_report_header_names_the_caps():
    header = checker.report_header(3, seed=5)
    assert any("seed 5" in line for line in header)
    assert any("size <= 3" in line for line in header)


def _count(verdict, what):
    return int(re.search(r"(\d+) %s" % what, verdict.detail).group(1))


def test_separator_sample_count_is_an_argument(rel_model):
    default = check_monoidal_separator(rel_model, 3, seed=0)
    fewer = check_monoidal_separator(rel_model, 3, seed=0, samples=3)
    assert default.holds and fewer.holds
    assert _count(default, "sampled") > 0
    assert _count(fewer, "pairs examined") < _count(default, "pairs examined")
    assert config.SEPARATOR_SAMPLES == 200


def test_suite_header_records_the_sample_override(rel_model):
    entries = checker.condition_entries((("monoidal-separator", check_monoidal_separator),), rel_model, 1,
                                        samples=7)
    report = run_suite(rel_model, 1, entries, samples=7)
    assert any("else 7 samples" in line for line in report.header)
    assert report.holds


def test_biproduct_sum_families_reach_size_four(rel_model):
    verdict = checker.check_sum_diagonal(rel_model, 1)
    assert verdict.holds
    assert verdict.detail == "%d families, sizes <= 4" % config.ENRICHMENT_FAMILIES
