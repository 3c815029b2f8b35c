import io
import json

import pytest

from zfthrottle.cli import EXIT_GUARD, EXIT_OK, EXIT_SUITE, EXIT_USAGE, main, read_graph
from zfthrottle.graph import cartesian_product_complete_path, generate


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_generator_specs():
    assert read_graph("P9") == generate("path", 9)
    assert read_graph("W7") == generate("wheel", 7)
    assert read_graph("KxP:3,3") == cartesian_product_complete_path(3, 3)
    assert read_graph("-", stdin=io.StringIO("\nBw\n")) == generate("complete", 3)


def test_graph_file(tmp_path):
    f = tmp_path / "g.g6"
    f.write_text("Bg\n")
    assert read_graph(str(f)) == generate("path", 3)


def test_throttle_cycles():
    code, out = run("throttle", "--rule", "floorZ", "C9")
    assert code == EXIT_OK and json.loads(out)["value"] == 5
    code, out = run("throttle", "--rule", "Z", "C16")
    assert code == EXIT_OK and json.loads(out)["value"] == 7


def test_catalog_exact_two():
    code, out = run("catalog", "--rule", "floorZ", "--t", "2", "--exact", "--format", "text")
    assert code == EXIT_OK
    assert sorted(out.split()) == ["A?", "A_"]
    code, out = run("catalog", "--rule", "floorZ", "--t", "2", "--exact", "--format", "csv")
    assert out.splitlines()[0] == "order,graph6"


@pytest.mark.parametrize("rule,graph", [("floorZ", "KxP:3,3"), ("Z", "C10"), ("floorZl", "Dhc"), ("Z+", "S6")])
def test_reports_replay_through_pt(rule, graph):
    _, out = run("throttle", "--rule", rule, graph)
    rep = json.loads(out)
    blue = ",".join(map(str, rep["blue"]))
    forces = json.dumps(rep["schedule"]["forces"])
    _, again = run("pt", "--rule", rule, graph, "--blue", blue, "--forces", forces)
    assert json.loads(again)["pt"] == rep["pt"]
    _, best = run("pt", "--rule", rule, graph, "--blue", blue)
    assert json.loads(best)["pt"] == rep["pt"]


def test_forcing_number_and_extend():
    code, out = run("forcing-number", "C6")
    assert code == EXIT_OK and json.loads(out)["number"] == 2
    code, out = run("extend", "C4", "--blue", "0,1")
    assert code == EXIT_OK and json.loads(out)["layout"] == [[0, 3], [1, 2]]


def test_char_test():
    code, out = run("char-test", "--rule", "floorZ", "--t", "3", "C4")
    rep = json.loads(out)
    assert rep["obtainable"] and rep["witness"]["a"] == 2
    _, out = run("char-test", "--rule", "Z", "--t", "3", "S4")
    assert json.loads(out) ["obtainable"] is False


def test_exit_codes():
    assert run("throttle", "P40")[0] == EXIT_GUARD
    assert run("throttle", "--rule", "floorZ", "P11")[0] == EXIT_GUARD
    assert run("throttle", "--rule", "floorZ", "--max-n", "11", "P11")[0] == EXIT_GUARD
    assert run("throttle", "B~")[0] == EXIT_USAGE
    assert run("throttle", "--rule", "nope", "P3")[0] == EXIT_USAGE
    assert run("pt", "P3", "--blue", "7")[0] == EXIT_USAGE
    assert run("throttle", "--format", "csv", "P3")[0] == EXIT_USAGE
    assert run("verify", "no-such-suite")[0] == EXIT_USAGE


def test_verify_exit_status():
    code, out = run("verify", "star-wheel", "--format", "text")
    assert code == EXIT_OK and out.startswith("PASS")
    code, out = run("verify", "catalog-three", "--format", "json")
    assert code == EXIT_OK and json.loads(out)[0]["passed"]


def test_verify_reports_failures():
    code, out = run("verify", "oracle-equivalence", "--format", "json")
    rep = json.loads(out)[0]
    assert code == (EXIT_OK if rep["passed"] else EXIT_SUITE)
