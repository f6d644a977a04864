from __future__ import annotations

import json

import pytest

from ngraph import fixtures
from ngraph.cli import main
from ngraph.graph import GraphBuilder, load, save
from ngraph.lk import dumps as dump_derivation
from ngraph.lk import loads as load_derivation
from ngraph.lk import lk_check


@pytest.fixture
def graph_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        save(fixtures.ALL[name](), path)
        return str(path)
    return write


def test_check_sound_and_unsound(graph_file, capsys):
    assert main(["check", graph_file("flagship")]) == 0
    assert main(["check", graph_file("cycle_and")]) == 1
    assert "Unsound(Cyclic)" in capsys.readouterr().out


def test_witness_dot_is_written(graph_file, tmp_path):
    out = tmp_path / "witness.dot"
    assert main(["check", graph_file("bad_discharge"), "--witness-dot", str(out)]) == 1
    assert out.read_text().startswith("digraph")


def test_invalid_files_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"nodes": [{"id": "a", "formula": "A &"}], "links": []}')
    assert main(["check", str(bad)]) == 2
    assert main(["check", str(tmp_path / "missing.json")]) == 2
    b = GraphBuilder()
    b.link("OrIL", [b.node("A")], [b.node("B | C")])
    save(b.build(check=False), tmp_path / "mismatch.json")
    assert main(["check", str(tmp_path / "mismatch.json")]) == 2


def test_resource_limit_exits_3(graph_file):
    assert main(["check", graph_file("flagship"), "--max-switchables", "0"]) == 3


def test_empire_output(graph_file, capsys):
    assert main(["empire", graph_file("flagship"), "--node", "A1", "--side", "north", "--oracle"]) == 0
    out = capsys.readouterr().out
    for n in ("A1", "A2", "AvA"):
        assert n in out
    assert main(["empire", graph_file("flagship"), "--node", "ghost"]) == 2


def test_split_and_preconditions(graph_file, capsys):
    assert main(["split", graph_file("flagship")]) == 0
    assert "A3" in capsys.readouterr().out
    assert main(["split", graph_file("or_contraction")]) == 4


def test_sequentialize_json_round_trips_through_verify_lk(graph_file, tmp_path):
    out = tmp_path / "d.json"
    assert main(["sequentialize", graph_file("flagship"), "--format", "json", "--verify", "--out", str(out)]) == 0
    assert lk_check(load_derivation(out.read_text())).sound
    assert main(["verify-lk", str(out)]) == 0


def test_verify_lk_rejects_a_broken_derivation(graph_file, tmp_path):
    out = tmp_path / "d.json"
    main(["sequentialize", graph_file("or_contraction"), "--format", "json", "--out", str(out)])
    obj = json.loads(out.read_text())
    obj["rule"] = "LC"
    out.write_text(json.dumps(obj))
    assert main(["verify-lk", str(out)]) == 1


def test_sequentialize_refuses_unsound_graphs(graph_file):
    assert main(["sequentialize", graph_file("cycle_and")]) == 1


def test_gen_writes_graphs_and_a_manifest(tmp_path):
    out = tmp_path / "corpus"
    assert main(["gen", "--sound", "--seed", "5", "--count", "3", "--max-links", "8", "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert [e["seed"] for e in manifest] == [5, 6, 7]
    for entry in manifest:
        assert main(["check", str(out / entry["file"])]) == 0
    assert main(["gen", "--unsound", "--count", "2", "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert all(e["mutations"] for e in manifest)
    for entry in manifest:
        assert main(["check", str(out / entry["file"])]) == 1


def test_dot_verb(graph_file, tmp_path):
    out = tmp_path / "g.dot"
    assert main(["dot", graph_file("flagship"), "--node", "A3", "--out", str(out)]) == 0
    assert "tomato" in out.read_text()
    assert main(["dot", graph_file("flagship"), "--split", "--out", str(out)]) == 0
    assert "cluster_north" in out.read_text()


def test_saved_fixture_loads_back(graph_file):
    assert load(graph_file("discharge_or")) == fixtures.discharge_or()
