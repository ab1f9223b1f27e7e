import csv
import io
import os
import subprocess

import numpy as np
import pytest

import lgi


def test_names():
    assert "rigid_body_sphere" in lgi.problem_names()
    assert "cf4" in lgi.method_names()


def test_rodrigues_is_orthogonal():
    a = np.array([[0.0, -0.3, 0.2], [0.3, 0.0, -0.1], [-0.2, 0.1, 0.0]])
    g = lgi.group_exp(a, "so")
    assert np.allclose(g.T @ g, np.eye(3), atol=1e-14)
    assert np.allclose(lgi.cayley(a, "so").T @ lgi.cayley(a, "so"), np.eye(3), atol=1e-14)


def test_wrong_algebra_raises():
    with pytest.raises(lgi.LgiError):
        lgi.group_exp(np.eye(3), "so")


def test_counts():
    assert [len(lgi.trees(n)) for n in range(1, 6)] == [1, 1, 2, 5, 14]
    assert [lgi.dim_free_lie(n) for n in range(1, 6)] == [1, 1, 3, 8, 25]
    assert lgi.c_kappa([1, 1, 1]) == "2"


def test_cf4_order():
    rep = lgi.check_order("cf4", 4)
    assert rep["pass"] and rep["checked"] == 23 and rep["independent"] == 13
    assert not lgi.check_order("cf4", 5)["pass"]


def test_convergence_and_drift():
    rows = lgi.run_converge(problem="rigid_body_sphere", method="cf4", h0=0.2, halvings=3)
    assert abs(rows[-1][3] - 4.0) < 0.3
    d = lgi.run_drift(problem="rigid_body_sphere", method="dg_gonzalez", h=0.05, steps=500)
    assert d["H"] < 1e-12


def test_integrate_shapes():
    times, states, names, inv = lgi.integrate({"problem": "toda_isospectral", "method": "cf4", "h": "0.1", "T": "1"})
    assert len(times) == len(states) == len(inv) == 11
    assert names == ["trace1", "trace2", "trace3"]


def test_unknown_config_key():
    with pytest.raises(lgi.LgiLookupError):
        lgi.converge({"bogus": "1"})


@pytest.mark.skipif("LGI_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_trees_csv():
    out = subprocess.run([os.environ["LGI_CLI"], "trees", "--max-order", "3"], capture_output=True, text=True, check=True)
    rows = list(csv.reader(io.StringIO(out.stdout)))
    assert rows[0] == ["order", "nodes", "count", "free_lie_dim", "trees"]
    assert [r[2] for r in rows[1:]] == ["1", "1", "2", "5"]
    bad = subprocess.run([os.environ["LGI_CLI"], "integrate", "--problem", "nope"], capture_output=True)
    assert bad.returncode == 1
