"""Smoke tests for the python surface: every main operation is reachable and
returns the frozen fixture values."""

import json

import pytest

import essdist


@pytest.fixture
def line():
    return essdist.line_space()


@pytest.fixture
def kappa(line):
    return essdist.Kappa(line.metric())


def test_space_and_metric_validation(line):
    assert line.n == 3
    assert line.labels == ["p0", "p1", "p2"]
    report = essdist.validate_metric(line)
    assert report["all_pass"]

    bad = essdist.Space(["a", "b", "c"], [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    report = essdist.validate_metric(bad)
    assert not report["all_pass"]
    assert report["verdicts"]["metric"]["witness"]["points"] == [0, 1, 2]


def test_classification(kappa):
    report = essdist.classify(kappa)
    assert report["verdicts"]["is_e0_distance"]["pass"]
    assert essdist.sequence_oracle_tau3(kappa, 3)["pass"]


def test_point_and_set_distances(line, kappa):
    assert essdist.point_to_set(kappa, 0, [1, 2]) == 1.0
    assert essdist.xi(kappa, [0, 1], [2]) == 3.0
    assert essdist.dkappa(kappa, [0, 1], [2]) == 3.0
    assert essdist.hausdorff(line, [0, 2], [1]) == 2.0
    report = essdist.check_theorem13(kappa)
    assert report["all_pass"] and report["exhaustive"]


def test_gauges():
    g = essdist.Gauge.constant(0.5)
    assert essdist.is_mt(g)
    assert essdist.right_limsup(g, 2.0) == 0.5
    report = essdist.check_all_statements(g)
    assert report["all_pass"] and report["agree"]

    two = essdist.Gauge.constant(1.0, 2.0)
    assert essdist.scale_to_unit(two).value_at(0.0) == 0.5

    sup, seq = essdist.sequence_sampler(g, "strictly-decreasing", 7, 4)
    assert sup == 0.5
    assert all(a > b for a, b in zip(seq, seq[1:]))

    with pytest.raises(ValueError):
        essdist.Gauge(1.0, [0.0], [1.0], [1.0], [0.0])  # attains lambda


def test_fixpoint_surface(kappa):
    t = essdist.MultiMap([[1], [1], [2]])
    assert essdist.fixed_points(t) == [1, 2]
    mu = essdist.Gauge.constant(0.875)
    assert essdist.check_s1(kappa, t, mu)["pass"]
    assert essdist.check_s3(kappa, t, mu)["pass"]
    phi = essdist.SelfMap.identity(3)
    assert essdist.check_s4(phi, t)["pass"]
    assert essdist.coincidence_points(phi, t) == [1, 2]

    trace = essdist.iterate(kappa, t, 0, 10)
    assert trace["outcome"] == "fixed-point"
    assert trace["points"] == [0, 1]
    assert trace["cauchy_bound"][-1] == 0.0


def test_generate_verify_roundtrip():
    inst = essdist.generate("seed=5,n=6,kappa=asymmetric-closure,target=s3")
    report = essdist.verify(inst, "T2.2")
    assert report["hypotheses_pass"]
    assert report["conclusion_pass"]
    assert report["exit_code"] == 0

    text = inst.to_json()
    again = essdist.parse(text)
    assert again.to_json() == text
    assert again.hash() == inst.hash()
    assert json.loads(text)["schema_version"] == "1"

    twin = essdist.generate("seed=5,n=6,kappa=asymmetric-closure,target=s3")
    assert twin.hash() == inst.hash()


def test_mutation_surface():
    inst = essdist.generate("seed=9,n=6,target=s1")
    applied, mutant, delta = essdist.mutate(inst, "drop-z", 3)
    assert applied
    assert delta
    report = essdist.verify(mutant, "T2.1")
    assert not report["hypotheses_pass"]
    assert report["exit_code"] == 1
