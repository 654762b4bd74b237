#-------------------------------------------------------------------------------
#
# Command line tests.
#
# Authors: Martin Paces <martin.paces@eox.at>
#
#-------------------------------------------------------------------------------
# Copyright (C) 2016 EOX IT Services GmbH
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies of this Software or works derived from this Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
# THE SOFTWARE.
#-------------------------------------------------------------------------------
# pylint: disable=missing-docstring

import json
import pytest
from bratteli import catalog
from bratteli.cli import run, EXIT_OK, EXIT_FAILURE, EXIT_USAGE

WALK = {
    "name": "walk",
    "matrix": {
        "kind": "banded", "index_set": "integers",
        "entries": {"-1": 1, "0": 2, "1": 1},
    },
}


@pytest.fixture
def walk_file(tmpdir):
    path = tmpdir.join("walk.json")
    path.write(json.dumps(WALK))
    return str(path)


def test_report_layout(cli):
    status, lines = cli("catalog", "list")
    assert status == EXIT_OK
    assert len(lines) == 1
    report = lines[0]
    assert sorted(report) == ["command", "config", "result", "version"]
    assert report["command"] == "catalog"
    assert report["config"]["seed"] == 0
    assert report["config"]["defaults"]["horizon"] == 60
    assert [item["id"] for item in report["result"]] == list(catalog.ENTRIES)


def test_catalog_show(cli):
    status, lines = cli("catalog", "show", "A1", "--params", "a=2")
    assert status == EXIT_OK
    result = lines[0]["result"]
    assert result["lambda"] == 4
    assert result["reference"] == "catalog:A1?a=2&b=1"
    assert result["xi"]["0"] == 1
    assert result["xi"]["1"] == 0.5
    _, lines = cli("catalog", "show", "A1", "--exact")
    assert lines[0]["result"]["xi"]["2"] == "1/4"


@pytest.mark.parametrize("argv", [
    ("catalog", "show", "A9"),
    ("catalog", "show"),
    ("catalog", "show", "A1", "--params", "a"),
    ("heights", "-d", "catalog:Nope"),
    ("heights", "-d", "missing-file.json"),
    ("measure", "-d", "catalog:A2", "--mode", "closed-form"),
])
def test_usage_errors(cli, argv):
    status, lines = cli(*argv)
    assert status == EXIT_USAGE
    assert "error" in lines[0]["result"]


@pytest.mark.parametrize("argv", [
    ("analyze",),
    ("analyze", "-d", "catalog:A5", "--window=a:b"),
    ("witness", "-d", "catalog:A1", "--kind", "unknown"),
])
def test_argument_errors(cli, argv):
    assert cli(*argv) == (EXIT_USAGE, [])


def test_version():
    assert run(["--version"]) == EXIT_OK


def test_analyze(cli):
    status, lines = cli("analyze", "-d", "catalog:A5")
    assert status == EXIT_OK
    result = lines[0]["result"]
    assert result["lambda"] == 2
    assert result["lambda_source"] == "closed-form"
    assert result["estimate"] == pytest.approx(2, rel=0.01)
    assert result["class"]["variant"] == "PositiveRecurrent"
    assert result["xi_sum"]["value"] == 1
    assert result["first_return"]["mass"] == pytest.approx(1, abs=1e-9)


def test_measure_closed_form(cli):
    status, lines = cli(
        "measure", "-d", "catalog:A5", "--mode", "closed-form", "--level", "2"
    )
    assert status == EXIT_OK
    result = lines[0]["result"]
    assert result["normalization"] == {"type": "Probability"}
    assert result["vectors"][0]["1"] == 0.5
    assert result["vectors"][2]["3"] == 0.03125
    assert result["towers"]["3"] == 0.125
    assert result["normalized"]["lambda"] == [2, 2]
    assert result["normalized"]["valid"]


def test_measure_cone_collapse(cli):
    status, lines = cli(
        "measure", "-d", "catalog:NoMeasure", "--window=1:10", "--level", "0"
    )
    assert status == EXIT_FAILURE
    assert lines[0]["result"]["error"] == "ConeCollapse"


def test_vershik_orbit(cli):
    status, lines = cli(
        "vershik", "-d", "catalog:A5", "--vertex", "1", "--level", "3",
        "--steps", "7",
    )
    assert status == EXIT_OK
    result, orbit = lines[0]["result"], lines[1:]
    assert result["steps"] == 7
    assert result["stopped"] is None
    assert [item["step"] for item in orbit] == list(range(8))
    assert [item["start"] for item in orbit] == [1, 2, 1, 3, 1, 2, 1, 4]
    assert all(item["vertices"][3] == 1 for item in orbit)


def test_heights_from_file(cli, walk_file):
    status, lines = cli(
        "heights", "-d", walk_file, "--level", "2", "--window=-2:2"
    )
    assert status == EXIT_OK
    assert lines[0]["result"]["levels"] == 2
    assert lines[3] == {"level": 2, "heights": dict(
        (str(vertex), 16) for vertex in range(-2, 3)
    )}


def test_walk_requires_catalog(cli, walk_file):
    status, lines = cli("walk", "-d", walk_file)
    assert status == EXIT_USAGE
    assert lines[0]["result"]["error"] == "ConfigError"


def test_walk(cli):
    status, lines = cli(
        "walk", "-d", "catalog:A5", "--steps", "4000", "--seed", "1"
    )
    assert status == EXIT_OK
    result, visits = lines[0]["result"], lines[1:]
    assert result["steps"] == 4000
    assert result["seed"] == 1
    first = visits[0]
    assert first["vertex"] == 1
    assert first["expected"] == 0.5
    assert first["frequency"] == pytest.approx(0.5, abs=0.05)


def test_witness_transitivity(cli):
    status, lines = cli(
        "witness", "-d", "catalog:A1", "--kind", "transitivity",
        "--vertex", "3", "--target", "0",
    )
    assert status == EXIT_OK
    result = lines[0]["result"]
    assert result["return_length"] == 1
    assert result["path"]["edges"] == [
        [0, 3, 2, 0], [1, 2, 1, 0], [2, 1, 0, 0],
    ]


def test_witness_discontinuity(cli):
    status, lines = cli(
        "witness", "-d", "catalog:UniformBand", "--kind", "discontinuity"
    )
    assert status == EXIT_OK
    result = lines[0]["result"]
    assert result["gap"] == 2
    assert result["distance"] == 1


def test_witness_continuity(cli):
    status, lines = cli(
        "witness", "-d", "catalog:ContinuousVershik", "--kind", "continuity",
        "--window=-40:40", "--level", "2", "--depth", "3",
    )
    assert status == EXIT_OK
    result = lines[0]["result"]
    assert result["flagged"] == 0
    assert result["samples"] > 0
    assert result["distances"] == {"2": [0.25], "3": [0.125]}


def test_witness_compressibility(cli):
    status, lines = cli(
        "witness", "-d", "catalog:Compressible", "--kind", "compressibility",
        "--steps", "300", "--window=1:8",
    )
    assert status == EXIT_OK
    result = lines[0]["result"]
    assert result["cylinder_vertex"] == 1
    assert result["steps"] == 300
    assert result["entries"] == 0


def test_verify(cli):
    status, lines = cli("verify", "-d", "catalog:A1")
    assert status == EXIT_OK
    assert lines[0]["result"]["passed"]
    status, lines = cli(
        "verify", "-d", "catalog:A1", "--check", "zero-lines",
        "--check", "band",
    )
    assert sorted(lines[0]["result"]["checks"]) == ["band", "zero-lines"]


def test_render_json(cli):
    status, lines = cli(
        "render", "-d", "catalog:A1", "--levels", "1", "--window=-1:1"
    )
    assert status == EXIT_OK
    edges = dict(
        ((item["source"], item["target"]), item["multiplicity"])
        for item in lines[0]["result"]["edges"]
    )
    assert edges == {
        (-1, -1): 1, (0, -1): 1, (-1, 0): 1, (0, 0): 1, (1, 0): 1, (0, 1): 2,
    }


def test_render_dot(raw_cli):
    status, text = raw_cli(
        "render", "-d", "catalog:A1", "--levels", "1", "--window=-1:1",
        "--output", "dot",
    )
    assert status == EXIT_OK
    assert text.startswith("digraph A1")
    assert text.count("n0_0 -> n1_1") == 2
    assert "n0_m1 -> n1_m1" in text


def test_table_output(raw_cli):
    status, text = raw_cli("catalog", "show", "A5", "--output", "table")
    assert status == EXIT_OK
    assert "id\tA5\n" in text
