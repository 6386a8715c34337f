import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out, stderr=StringIO())
    return out.getvalue()


def test_catalog_json():
    data = json.loads(run("catalog", "--json"))
    assert data["lattices"] == ["12A2", "24A1", "6A4", "6D4", "8A3", "Leech"]
    configs = {c["name"]: c for c in data["configs"]}
    assert configs["6D4#1"]["replanted_from"] == "24A1#11"
    assert "24A1#10" not in configs
    assert {s["class"] for s in data["sets"]} == {"285", "261", "249"}
    assert list(data["unavailable"]) == ["Lmisc2"]
    assert "Lmisc2" not in {s["name"] for s in data["sets"]}


def test_catalog_text():
    out = run("catalog", "--kind", "configs")
    assert "8A3#2: N(8A3) (replanted from 24A1#12)" in out


@pytest.mark.parametrize(
    "args",
    [
        ("enumerate", "24A1#10"),
        ("catalog", "--threads", "0"),
        ("verify",),
        ("verify", "Lmisc2"),
        ("graph", "aut", "no-such-input"),
    ],
)
def test_input_errors(args):
    with pytest.raises(CommandError) as exc:
        run(*args)
    assert exc.value.returncode == 2


@pytest.fixture
def graph_files(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"n": 3, "edges": [[0, 1, 1], [1, 2, 2]]}))
    b.write_text(json.dumps({"n": 3, "edges": [[1, 2, 1], [0, 1, 2]]}))
    return a, b


def test_graph_iso(graph_files):
    a, b = graph_files
    assert json.loads(run("graph", "iso", str(a), str(b), "--json")) == {"isomorphic": True}


def test_graph_export_and_import(graph_files, tmp_path):
    a, _ = graph_files
    target = tmp_path / "a.txt"
    run("graph", "export", str(a), "--output", str(target), "--format", "text")
    data = json.loads(run("graph", "import", str(target), "--json"))
    assert data["graphs"][0]["n"] == 3
    assert data["graphs"][0]["edges"] == 2
    assert json.loads(run("graph", "aut", str(a), "--json")) == {"aut": {str(a): 1}}


def test_invalid_graph_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "edges": [[0, 1, 3]]}))
    with pytest.raises(CommandError) as exc:
        run("graph", "aut", str(bad))
    assert exc.value.returncode == 2


@pytest.mark.django_db
def test_export_empty_journal(tmp_path):
    path = tmp_path / "out.json"
    data = json.loads(run("export_journal", str(path), "--journal", "empty", "--json"))
    assert data == {"path": str(path), "entries": 0, "summary": []}
    assert json.loads(path.read_text()) == []


@pytest.mark.slow
def test_enumerate_expectations():
    data = json.loads(run("enumerate", "12A2#2", "--json"))
    assert data["rank"] == 21
    assert data["stabilizer_order"] == 720
    assert data["roots"] == 72


@pytest.mark.slow
def test_verify_all_lists_unshipped_sets():
    data = json.loads(run("verify", "--all", "--skip-aut", "--json"))
    assert len(data["sets"]) == 11
    assert list(data["skipped"]) == ["Lmisc2"]
    assert data["mismatches"] == []
