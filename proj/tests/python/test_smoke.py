import json
import math

import pytest

import pcmk

SINGLE_ATOM = json.dumps({
    "version": "1",
    "cone": "Q2",
    "weight": {"kind": "height-power", "q": 1.5},
    "measure": [{"direction": [-1, -1], "mass": 1}],
})


def test_quadrant_closed_form():
    c = pcmk.quadrant_cone()
    w = pcmk.Weight("height-power", 1.5, c)
    r = pcmk.solve(c, w, [[-1.0, -1.0]], [1.0])
    assert r["converged"]
    assert r["support_numbers"][0] == pytest.approx(4.0, rel=1e-8)
    assert r["lambda"] == pytest.approx(0.125, rel=1e-10)


def test_slab_measures():
    c = pcmk.quadrant_cone()
    w = pcmk.Weight("height-power", 1.5, c)
    k = pcmk.PseudoCone(c, [[-1.0, -1.0]], [1.0], tightened=True)
    assert pcmk.surface_measure(k, w)[0] == pytest.approx(2.0, rel=1e-12)
    assert pcmk.covolume(k, w) == pytest.approx(4.0, rel=1e-12)
    assert pcmk.covolume(k, w, method="radial") == pytest.approx(4.0, rel=1e-10)
    est, err = pcmk.mc_surface_measure(k, w, 200000, 7)[0]
    assert err > 0 and abs(est - 2.0) <= 3 * err


def test_cone_queries():
    c = pcmk.square_pyramid_cone()
    assert c.dim == 3
    assert c.delta([0.0, 0.0, -1.0]) == pytest.approx(math.asin(1 / math.sqrt(3)), rel=1e-12)
    assert c.contains([0.1, 0.2, 1.0])


def test_errors_raise():
    c = pcmk.quadrant_cone()
    w = pcmk.Weight("height-power", 2.5, c)
    with pytest.raises(pcmk.PcmkError, match="InvalidExponent"):
        pcmk.solve(c, w, [[-1.0, -1.0]], [1.0])
    with pytest.raises(ValueError):
        pcmk.PseudoCone(c, [[-1.0, 0.0]], [1.0])


def test_nonuniqueness():
    c = pcmk.quadrant_cone()
    p = pcmk.nonuniqueness_pair(c, pcmk.Weight("height-power", 1.5, c))
    assert p["passed"]
    assert p["t0"] == pytest.approx(4.0, abs=1e-12)


def test_run_matches_cli_codes():
    code, report, diag = pcmk.run("solve", SINGLE_ATOM)
    assert code == 0, diag
    assert json.loads(report)["result"]["converged"]
    bad = SINGLE_ATOM.replace("1.5", "2.5")
    code, _, diag = pcmk.run("solve", bad)
    assert code == 2 and "InvalidExponent" in diag
    code, _, diag = pcmk.run("solve", "{")
    assert code == 2 and "line" in diag
