import json

import pytest

from choilab.harness import SuiteId, TheoremSuite, run_all, run_suite


def _run(sid, dims, trials, seed, **kw):
    return run_suite(TheoremSuite(sid, dims, trials, seed, **kw))


def test_suite_id_parse():
    assert SuiteId.parse("choi") is SuiteId.CHOI
    assert SuiteId.parse("lemma1-t") is SuiteId.LEMMA1_T
    assert SuiteId.parse("BASIS_DEPENDENCE_C") is SuiteId.BASIS_DEPENDENCE_C
    with pytest.raises(ValueError):
        SuiteId.parse("Stormer")


def test_choi_suite_example():
    res = _run("Choi", [(2, 2)], 100, 42)
    assert res.failed == 0 and res.passed == 100
    assert res.controls_checked > 0 and res.controls_rejected == res.controls_checked


def test_de_pillis_suite_example():
    res = _run("DePillis", [(2, 3)], 100, 7)
    assert res.failed == 0 and res.ok


def test_jordan_structure_suite_example():
    res = _run("JordanStructure", [(3, 3)], 200, 1)
    assert res.failed == 0 and res.ok


@pytest.mark.parametrize("sid", list(SuiteId))
def test_every_suite_passes_small(sid):
    res = _run(sid, [(2, 2), (3, 2)], 10, 3)
    assert res.ok, res.counterexamples
    assert res.passed == 20


def test_biconditional_suites_have_negative_controls():
    biconditional = [
        SuiteId.DE_PILLIS,
        SuiteId.JAMIOLKOWSKI_A,
        SuiteId.JAMIOLKOWSKI_B,
        SuiteId.CHOI,
        SuiteId.CHOI_REFORMULATED,
        SuiteId.LEMMA1_T,
        SuiteId.BASIS_DEPENDENCE_C,
    ]
    for sid in biconditional:
        res = _run(sid, [(2, 2)], 5, 0)
        assert res.controls_checked >= 5, sid
        assert res.controls_rejected == res.controls_checked, sid


def test_suite_is_reproducible():
    a = _run("Jamiolkowski_a", [(2, 3)], 10, 11)
    b = _run("Jamiolkowski_a", [(2, 3)], 10, 11)
    assert a.to_dict(wallclock=False) == b.to_dict(wallclock=False)


def test_injected_fault_is_caught():
    res = _run("Choi", [(2, 2)], 10, 42, inject_fault=True)
    assert res.failed > 0 and not res.ok
    ce = res.counterexamples[0]
    assert ce["seed"] == 42 and ce["dims"] == [2, 2]
    assert isinstance(ce["check"], str)
    json.dumps(res.to_dict())


def test_run_all_and_report_shape():
    results = run_all(["VariantLadder", "TimeOrientation"], dims=[(2, 2)], trials=3, seed=5)
    assert [r.id for r in results] == [SuiteId.VARIANT_LADDER, SuiteId.TIME_ORIENTATION]
    d = results[0].to_dict()
    assert set(d) == {"id", "passed", "failed", "counterexamples", "controls_checked", "controls_rejected", "wallclock"}
