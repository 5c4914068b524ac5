import math
from pathlib import Path

import pytest

import singode

DATA = Path(__file__).resolve().parents[2] / "data"


def test_ex4_directions():
    eq = singode.Equation.load(str(DATA / "ex4.json"))
    report = singode.analyze(eq, 0.0, 0.0)
    assert [d["p"] for d in report["directions"]] == [-1.0, 0.0, 1.0]
    assert [d["lambda"] for d in report["directions"]] == pytest.approx([2.0, -1.0, 2.0])
    assert report["oscillation"] == "excluded"


def test_off_locus():
    eq = singode.Equation.load(str(DATA / "ex4.json"))
    assert singode.analyze(eq, 0.5, 0.0)["verdict"] == "NotSingular"


def test_metric_input():
    eq = singode.Equation.load(str(DATA / "metric_c_y.json"))
    assert eq.is_geodesic
    assert singode.analyze(eq, 0.0, 0.0)["mu"] == [0.0, 0.0, -1.0, 0.0]


def test_spectrum():
    eq = singode.Equation.load(str(DATA / "ex4.json"))
    assert sorted(singode.spectrum(eq, 0.0, 0.0, 1.0)) == pytest.approx([0.0, 1.0, 2.0], abs=1e-9)


def test_trace_exponent():
    eq = singode.Equation.load(str(DATA / "ex4_sqrt2.json"))
    a = math.sqrt(2.0)
    s = 1e-3
    offsets = [1.0 / math.sqrt(1.0 + c * s ** (2 * a)) - 1.0 for c in (0.5, 1.0, 2.0, 5.0)]
    trajs = singode.trace(eq, 0.0, 0.0, 1.0, "plus", offsets)
    assert len(trajs) == 4
    assert all(len(t) > 20 for t in trajs)
    assert singode.estimate_exponent(trajs, 0.0, 0.0, 1.0) == pytest.approx(2 * a, rel=1e-2)


def test_scalars():
    assert singode.resonance_find(1.0, -2.0) == (2, 1)
    assert singode.resonance_find(1.0, 2.0) is None
    assert singode.samovol_order(1, 1.0, -math.sqrt(2.0)) == 10
    assert singode.best_rational(0.75) == (3, 4)


def test_corpus_verify():
    assert "ex5" in singode.corpus_ids()
    assert all(r["passed"] for r in singode.verify("ex5"))


def test_errors_translate():
    with pytest.raises(singode.SingodeError):
        singode.Equation.from_json("{not json")
    eq = singode.Equation.load(str(DATA / "ex2.json"))
    with pytest.raises(singode.SingodeError):
        singode.trace(eq, 0.0, 0.0, 0.0, "plus", [1e-3])
