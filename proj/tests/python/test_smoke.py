"""End-to-end smoke tests for the Python face of the workbench."""

import os

import pytest

import qaw

CORPUS = os.path.join(os.path.dirname(__file__), "..", "..", "corpus")


def corpus(name):
    with open(os.path.join(CORPUS, name), encoding="utf-8") as f:
        return f.read()


def test_validate_and_explore():
    text = corpus("double_word.qa")
    assert qaw.validate(text) == []
    lts = qaw.explore(text, depth=4, max_queue=8)
    assert lts["states"][lts["root"]]["desc"] == "(s0,-)"
    assert any(s["final"] for s in lts["states"])
    assert any(e["label"] == "tau" for e in lts["edges"])


def test_accepts_doubled_words():
    text = corpus("double_word.qa")
    assert qaw.accepts(text, ["a", "b", "a", "b"])["accepted"]
    assert qaw.accepts(text, [])["accepted"]
    assert not qaw.accepts(text, ["a", "b", "b"])["accepted"]


def test_bisim_relates_a_machine_to_itself():
    text = corpus("queue_always.qa")
    res = qaw.bisim(text, text, depth=4, max_queue=8)
    assert res["verdict"] in ("related", "related-up-to-bound")
    assert res["reason"] == ""


def test_bisim_distinguishes_different_languages():
    res = qaw.bisim(
        corpus("double_word.qa"), corpus("anbncn.qa"), depth=6, max_queue=12
    )
    assert res["verdict"] == "distinguished"
    assert not res["witness_touches_frontier"]


def test_transform_normalize_checks_out():
    res = qaw.transform(
        corpus("doubler.qa"), "normalize", check_depth=5, max_queue=24
    )
    assert res["certificate_ok"]
    assert all(line.startswith("ok:") for line in res["certificate"])
    assert res["check"]["verdict"] == "related-up-to-bound"


def test_run_doubles_its_input():
    res = qaw.run(corpus("doubler.qa"), ["a", "b"])
    assert res["status"] == "completed"
    assert res["output"] == ["a", "b", "a", "b"]
    assert qaw.check_computation(corpus("doubler.qa"))["ok"]


def test_queue_spec_text():
    text = qaw.queue_spec(["d"])
    assert "Q_io" in text and "o!eps" in text
    with pytest.raises(ValueError):
        qaw.queue_spec([])


def test_control_and_compose():
    text = corpus("queue_always.qa")
    ctrl = qaw.control(text)
    assert any(e["tag"] == "port" for e in ctrl["edges"])
    composed = qaw.compose(text, depth=3, max_queue=8)
    assert any(e["tag"] == "comm" and e["label"] == "tau" for e in composed["edges"])


def test_criteria_filter():
    results = qaw.criteria(CORPUS, only="fifo")
    assert [r["id"] for r in results] == [3]
    assert results[0]["passed"]


def test_parse_error_is_a_value_error():
    with pytest.raises(ValueError):
        qaw.validate("qa\ndata: d\nnonsense")
