import json

import pytest

from LINZ.MonomialDynamics.AnalyseSystem import EXIT_INPUT, EXIT_LIMIT, EXIT_MISMATCH, EXIT_OK, main
from LINZ.MonomialDynamics.Classify import classify
from LINZ.MonomialDynamics.SystemFile import parseSystem

from .helpers import dataFile


def _run(capsys, *argv, **kwargs):
    status = main(list(argv), **kwargs)
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def _structured(capsys, *argv):
    status, out, err = _run(capsys, *(argv + ("--format", "structured")))
    assert status == EXIT_OK, err
    return json.loads(out), out


def _flipped(system):
    verdict = classify(system)
    return verdict._replace(isFixedPointSystem=not verdict.isFixedPointSystem)


def test_analyzeExample2(capsys):
    report, text = _structured(capsys, "analyze", dataFile("example2.txt"))
    assert report["n"] == 11
    assert report["verdict"] is True
    assert [c["loop_number"] for c in report["components"]] == [3, 1, 1, 0]
    assert [c["vertices"] for c in report["components"]] == [[1, 2, 10], [3, 4, 6, 7], [5, 8, 9], [11]]
    assert report["components"][0]["status"] == "ReachesZero"
    assert report["vertex_criteria"]["11"] == "WalkToZero"
    assert report["oracle"] is None
    assert report["timings_ms"] is None
    assert parseSystem(report["system"]) == parseSystem(open(dataFile("example2.txt")).read())
    again, textAgain = _structured(capsys, "analyze", dataFile("example2.txt"))
    assert textAgain == text


def test_analyzeHuman(capsys):
    status, out, err = _run(capsys, "analyze", dataFile("example1.txt"))
    assert status == EXIT_OK
    assert "Verdict: not a fixed-point system" in out
    assert "Component a1,a3,a4: loop number 3, reaches zero no, Obstructs" in out
    status, out, err = _run(capsys, "analyze", dataFile("allones.txt"))
    assert "Verdict: fixed-point system" in out


def test_analyzeTimings(capsys):
    report, text = _structured(capsys, "analyze", "--timings", dataFile("trigon.txt"))
    assert set(report["timings_ms"]) == {"parse", "classify"}


def test_simulate(capsys):
    report, text = _structured(capsys, "simulate", dataFile("example2.txt"))
    assert report["oracle"]["cycle_counts"] == {"1": 3}
    assert report["oracle"]["fixed_points"] == 3
    report, text = _structured(capsys, "simulate", "--threads", "4", dataFile("trigon.txt"))
    assert report["oracle"] == {"cycle_counts": {"1": 2, "3": 2}, "fixed_points": 2, "max_transient": 0}
    assert report["verdict"] is False


def test_simulateOutputFile(capsys, tmp_path):
    out = tmp_path / "report.txt"
    status, text, err = _run(capsys, "simulate", "--out", str(out), dataFile("trigon.txt"))
    assert status == EXIT_OK and text == ""
    assert "cycle counts 1:2 3:2" in out.read_text()


def test_simulateLimits(capsys, monkeypatch):
    status, out, err = _run(capsys, "simulate", dataFile("dimension25.txt"))
    assert status == EXIT_LIMIT
    assert "Limit exceeded" in err
    status, out, err = _run(capsys, "simulate", "--max-n", "10", dataFile("example2.txt"))
    assert status == EXIT_LIMIT
    monkeypatch.setenv("MONOMIAL_MAX_N", "3")
    assert _run(capsys, "simulate", dataFile("example1.txt"))[0] == EXIT_LIMIT
    assert _run(capsys, "simulate", dataFile("trigon.txt"))[0] == EXIT_OK
    monkeypatch.setenv("MONOMIAL_MAX_N", "many")
    assert _run(capsys, "simulate", dataFile("trigon.txt"))[0] == EXIT_INPUT


@pytest.mark.parametrize("name", ["example1.txt", "example2.txt", "triangular.txt", "trigon.txt", "allones.txt"])
def test_checkAgrees(capsys, name):
    status, out, err = _run(capsys, "check", dataFile(name))
    assert status == EXIT_OK
    assert "agree" in out


def test_checkDetectsBrokenClassifier(capsys):
    status, out, err = _run(capsys, "check", dataFile("example1.txt"), classifier=_flipped)
    assert status == EXIT_MISMATCH
    assert "DISAGREE" in out


def test_exportDependencyGraph(capsys):
    status, out, err = _run(capsys, "export", dataFile("example1.txt"))
    assert status == EXIT_OK
    assert out.count("->") == 5
    status, out, err = _run(capsys, "export", "--what", "depgraph", dataFile("example2.txt"))
    assert "a11 -> eps" in out


def test_exportStateSpace(capsys):
    status, out, err = _run(capsys, "export", "--what", "statespace", dataFile("trigon.txt"))
    assert status == EXIT_OK
    assert out.count("->") == 8
    status, out, err = _run(capsys, "export", "--what", "statespace", dataFile("dimension25.txt"))
    assert status == EXIT_LIMIT


def test_generateIsReproducible(capsys):
    first = _run(capsys, "generate", "--n", "8", "--seed", "7")
    second = _run(capsys, "generate", "--n", "8", "--seed", "7")
    assert first[0] == EXIT_OK
    assert first[1] == second[1]
    assert parseSystem(first[1]).n() == 8


def test_generateRequirements(capsys):
    status, out, err = _run(capsys, "generate", "--n", "5", "--zero-prob", "1", "--seed", "1")
    assert all(c.isZero() for c in parseSystem(out).components())
    status, out, err = _run(capsys, "generate", "--n", "6", "--seed", "3", "--require", "fps")
    assert classify(parseSystem(out)).isFixedPointSystem
    status, out, err = _run(capsys, "generate", "--n", "6", "--seed", "3", "--density", "0.4", "--require", "non-fps")
    assert status == EXIT_OK
    assert not classify(parseSystem(out)).isFixedPointSystem
    status, out, err = _run(capsys, "generate", "--require", "non-fps", "--density", "0", "--attempts", "20")
    assert status == EXIT_LIMIT


def test_inputErrors(capsys, tmp_path):
    status, out, err = _run(capsys, "analyze", dataFile("badvariable.txt"))
    assert status == EXIT_INPUT
    assert "line 3 column 7" in err
    assert _run(capsys, "analyze", "--bogus", dataFile("example1.txt"))[0] == EXIT_INPUT
    assert _run(capsys, "analyze", str(tmp_path / "missing.txt"))[0] == EXIT_INPUT
    assert _run(capsys)[0] == EXIT_INPUT
    assert _run(capsys, "generate", "--n", "0")[0] == EXIT_INPUT
    assert _run(capsys, "generate", "--density", "2")[0] == EXIT_INPUT
