import json

import pytest

from ggdkit.cli import main
from ggdkit.cli.common import EXIT_BAD_INPUT, EXIT_INVALID, EXIT_OK, EXIT_UNPROVEN, EXIT_USAGE
from ggdkit.geometry import CostCoefficients
from ggdkit.instances import wiggle_path_cost
from ggdkit.serialization import dump, graph_to_dict
from ggdkit.testutils import assert_metric_diff, save_registry


def run(capsys, *argv):
    code = main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


@pytest.fixture
def wiggle(tmp_path, capsys):
    code, _ = run(capsys, "gen", "wiggle", "--k", "10", "--out-dir", str(tmp_path))
    assert code == EXIT_OK
    return tmp_path


class TestGgd:
    def test_wiggle(self, wiggle, capsys):
        code, report = run(capsys, "ggd", str(wiggle / "g.json"), str(wiggle / "h.json"), "--cv", "1", "--ce", "2")
        assert code == EXIT_OK
        assert report["results"]["value"] == 2.0
        assert report["results"]["proven_optimal"] is True
        assert report["results"]["lower_bound"] == 0.0
        assert set(report["inputs"]) == {"g", "h"}
        assert len(report["inputs"]["g"]["sha256"]) == 64

    def test_same_file_twice(self, wiggle, capsys):
        g = str(wiggle / "g.json")
        code, report = run(capsys, "ggd", g, g)
        assert code == EXIT_OK
        assert report["results"]["value"] == 0.0

    def test_oracle(self, tmp_path, capsys):
        run(capsys, "gen", "random", "--seed", "3", "--vertices", "4", "--edges", "3", "--out-dir", str(tmp_path))
        code, report = run(capsys, "ggd", str(tmp_path / "g.json"), str(tmp_path / "h.json"), "--oracle")
        assert code == EXIT_OK
        assert report["results"]["oracle_agrees"] is True
        assert report["results"]["oracle_value"] == report["results"]["value"]

    def test_witness_reprices_to_the_value(self, wiggle, capsys):
        witness = wiggle / "witness.json"
        g, h = str(wiggle / "g.json"), str(wiggle / "h.json")
        _, solved = run(capsys, "ggd", g, h, "--ce", "3", "--emit-witness", str(witness))
        code, priced = run(capsys, "price", g, h, "--ce", "3", "--matching", str(witness))
        assert code == EXIT_OK
        assert priced["results"]["total"] == pytest.approx(solved["results"]["value"], abs=1e-12)
        assert solved["outputs"]["witness"] == str(witness)

    def test_require_optimal(self, tmp_path, capsys):
        run(capsys, "gen", "random", "--seed", "1", "--vertices", "6", "--edges", "5", "--out-dir", str(tmp_path))
        g, h = str(tmp_path / "g.json"), str(tmp_path / "h.json")
        code, report = run(capsys, "ggd", g, h, "--budget-nodes", "1", "--require-optimal")
        assert code == EXIT_UNPROVEN
        assert report["results"]["proven_optimal"] is False
        code, _ = run(capsys, "ggd", g, h, "--budget-nodes", "1")
        assert code == EXIT_OK

    def test_decision(self, wiggle, capsys):
        g, h = str(wiggle / "g.json"), str(wiggle / "h.json")
        _, yes = run(capsys, "ggd", g, h, "--ce", "2", "--decision", "2.0")
        _, no = run(capsys, "ggd", g, h, "--ce", "2", "--decision", "1.0")
        assert yes["results"]["answer"] is True
        assert no["results"]["answer"] is False
        assert no["results"]["proven"] is True

    def test_decision_with_incumbent(self, tmp_path, capsys):
        instance = tmp_path / "inst.json"
        instance.write_text(json.dumps({"n": 2, "b": 6, "s": [2, 2, 2, 2, 2, 2]}))
        code, gen = run(capsys, "gen", "reduction", "--instance", str(instance), "--tau", "100", "--witness",
                        "--out-dir", str(tmp_path))
        assert code == EXIT_OK
        assert gen["results"]["vertices_g"] == gen["results"]["vertices_h"] == 24
        assert gen["results"]["edges_g"] == 18
        assert gen["results"]["edges_h"] == 22
        assert gen["results"]["witness_cost"] <= 100
        code, report = run(capsys, "ggd", gen["outputs"]["g"], gen["outputs"]["h"], "--decision", "100",
                           "--incumbent", gen["outputs"]["witness"])
        assert code == EXIT_OK
        assert report["results"]["answer"] is True
        assert "incumbent" in report["inputs"]

    def test_negative_decision_threshold(self, wiggle, capsys):
        code, _ = run(capsys, "ggd", str(wiggle / "g.json"), str(wiggle / "h.json"), "--decision", "-1")
        assert code == EXIT_USAGE

    def test_bad_coefficients(self, wiggle, capsys):
        code, _ = run(capsys, "ggd", str(wiggle / "g.json"), str(wiggle / "h.json"), "--cv", "0")
        assert code == EXIT_USAGE

    def test_parse_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"dim": 2, "vertices": [], "extra": 1}')
        code, report = run(capsys, "ggd", str(bad), str(bad))
        assert code == EXIT_USAGE
        assert any("error" in message for message in report["messages"])

    def test_counts_handled_errors_by_type(self, wiggle, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        registry = save_registry()
        code, _ = run(capsys, "ggd", str(bad), str(bad))
        assert code == EXIT_USAGE
        assert_metric_diff(registry, 1, "ggdkit_cli_errors_total", command="ggd", type="DocumentError")

        registry = save_registry()
        code, _ = run(capsys, "ggd", str(wiggle / "g.json"), str(wiggle / "h.json"), "--cv", "-1")
        assert code == EXIT_USAGE
        assert_metric_diff(registry, 1, "ggdkit_cli_errors_total", command="ggd", type="UsageError")

    def test_binary_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_bytes(b'{"dim": 2, "vertices": [], "x": "\xff\xfe"}')
        code, report = run(capsys, "ggd", str(bad), str(bad))
        assert code == EXIT_USAGE
        assert any("not UTF-8" in message for message in report["messages"])

    def test_missing_file(self, tmp_path, capsys):
        code, _ = run(capsys, "ggd", str(tmp_path / "nope.json"), str(tmp_path / "nope.json"))
        assert code == EXIT_USAGE

    def test_counts_commands(self, wiggle, capsys):
        registry = save_registry()
        run(capsys, "ggd", str(wiggle / "g.json"), str(wiggle / "h.json"))
        assert_metric_diff(registry, 1, "ggdkit_cli_commands_total", command="ggd")


class TestBounds:
    def test_wiggle(self, wiggle, capsys):
        code, report = run(capsys, "bounds", str(wiggle / "g.json"), str(wiggle / "h.json"), "--ce", "2")
        assert code == EXIT_OK
        assert report["results"]["lower_bound"] == 0.0
        assert report["results"]["trivial_upper_bound"] == 4.0
        assert report["results"]["assignment_upper_bound"] == 2.0

    def test_tight(self, tmp_path, capsys):
        run(capsys, "gen", "tight", "--d", "1", "--out-dir", str(tmp_path))
        _, report = run(capsys, "bounds", str(tmp_path / "g.json"), str(tmp_path / "h.json"))
        assert report["results"]["lower_bound"] == pytest.approx(0.0, abs=1e-12)
        assert report["results"]["assignment_upper_bound"] >= 1.0 - 1e-9


class TestPrice:
    def test_wiggle_path(self, wiggle, capsys):
        code, report = run(capsys, "price", str(wiggle / "g.json"), str(wiggle / "h.json"), "--ce", "2",
                           "--path", str(wiggle / "path.json"))
        assert code == EXIT_OK
        assert report["results"]["total"] == pytest.approx(wiggle_path_cost(10, CostCoefficients(1.0, 2.0)), rel=1e-12)
        assert report["results"]["lower_bound"] <= report["results"]["total"]
        assert report["results"]["induced_matching_cost"] == pytest.approx(2.0)
        assert report["results"]["orbits"]["total"] <= report["results"]["total"] * (1 + 1e-12)

    def test_tight_path(self, tmp_path, capsys):
        run(capsys, "gen", "tight", "--d", "2", "--ce", "3", "--out-dir", str(tmp_path))
        _, report = run(capsys, "price", str(tmp_path / "g.json"), str(tmp_path / "h.json"), "--ce", "3",
                        "--path", str(tmp_path / "path.json"))
        assert report["results"]["total"] == pytest.approx((1 + 3.0) * 2.0, rel=1e-12)

    def test_trivial_matching(self, wiggle, capsys):
        matching = wiggle / "m.json"
        dump({"pairs": [["u1", None], ["u2", None], [None, "v1"], [None, "v2"]]}, matching)
        code, report = run(capsys, "price", str(wiggle / "g.json"), str(wiggle / "h.json"), "--ce", "2",
                           "--matching", str(matching))
        assert code == EXIT_OK
        assert report["results"]["total"] == 4.0

    def test_invalid_matching(self, wiggle, capsys):
        matching = wiggle / "m.json"
        dump({"pairs": [["u1", "v1"], ["u2", "v1"], [None, "v2"]]}, matching)
        code, report = run(capsys, "price", str(wiggle / "g.json"), str(wiggle / "h.json"),
                           "--matching", str(matching))
        assert code == EXIT_BAD_INPUT
        assert report["results"]["valid"] is False
        assert report["results"]["violations"][0]["kind"] == "duplicate-right"

    def test_invalid_matching_diagnostic_goes_to_stderr(self, wiggle, capsys):
        matching = wiggle / "m.json"
        dump({"pairs": [["u1", "v1"], ["u2", "v1"], [None, "v2"]]}, matching)
        code = main(["price", str(wiggle / "g.json"), str(wiggle / "h.json"), "--matching", str(matching)])
        captured = capsys.readouterr()
        assert code == EXIT_BAD_INPUT
        assert "duplicate-right" in captured.err
        assert "duplicate-right: " not in captured.out
        assert "valid: False" in captured.out

    def test_path_ending_elsewhere(self, wiggle, capsys):
        g = str(wiggle / "g.json")
        code, report = run(capsys, "price", g, g, "--path", str(wiggle / "path.json"))
        assert code == EXIT_BAD_INPUT
        assert report["results"]["violations"][0]["kind"] == "wrong-target"

    def test_illegal_path(self, wiggle, capsys):
        path = wiggle / "bad_path.json"
        dump({"ops": [{"op": "delete_vertex", "id": "u1"}]}, path)
        code, report = run(capsys, "price", str(wiggle / "g.json"), str(wiggle / "h.json"), "--path", str(path))
        assert code == EXIT_BAD_INPUT
        assert report["results"]["violations"][0]["kind"] == "illegal-op"

    def test_needs_one_of_matching_or_path(self, wiggle):
        with pytest.raises(SystemExit) as e:
            main(["price", str(wiggle / "g.json"), str(wiggle / "h.json")])
        assert e.value.code == EXIT_USAGE


class TestGen:
    def test_random_is_deterministic(self, tmp_path, capsys):
        for name in ("a", "b"):
            run(capsys, "gen", "random", "--seed", "7", "--out-dir", str(tmp_path / name))
        for name in ("g.json", "h.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        assert (tmp_path / "a" / "g.json").read_bytes() != (tmp_path / "a" / "h.json").read_bytes()

    @pytest.mark.parametrize(
        "argv,files",
        [
            (["wiggle", "--k", "3"], ["g.json", "h.json", "path.json"]),
            (["tight", "--d", "0.5", "--cv", "2"], ["g.json", "h.json", "path.json"]),
            (["blob", "--size", "4"], ["blob.json"]),
            (["random", "--seed", "2", "--planar", "--connected"], ["g.json", "h.json"]),
        ],
    )
    def test_generated_files_validate(self, tmp_path, capsys, argv, files):
        code, report = run(capsys, "gen", *argv, "--out-dir", str(tmp_path))
        assert code == EXIT_OK
        for name in files:
            assert (tmp_path / name).exists()
        for name in files:
            if name == "path.json":
                code, _ = run(capsys, "validate", str(tmp_path / name), "--kind", "path",
                              "--g", str(tmp_path / "g.json"), "--h", str(tmp_path / "h.json"), "--tol", "1e-9")
            else:
                code, _ = run(capsys, "validate", str(tmp_path / name))
            assert code == EXIT_OK, name

    def test_reduction_needs_instance(self, tmp_path, capsys):
        code, _ = run(capsys, "gen", "reduction", "--tau", "10", "--out-dir", str(tmp_path))
        assert code == EXIT_USAGE

    def test_invalid_instance(self, tmp_path, capsys):
        instance = tmp_path / "inst.json"
        instance.write_text(json.dumps({"n": 2, "b": 6, "s": [1, 2, 3, 2, 2, 2]}))
        code, _ = run(capsys, "gen", "reduction", "--instance", str(instance), "--tau", "10",
                      "--out-dir", str(tmp_path))
        assert code == EXIT_USAGE

    def test_bad_k(self, tmp_path, capsys):
        code, _ = run(capsys, "gen", "wiggle", "--k", "0", "--out-dir", str(tmp_path))
        assert code == EXIT_USAGE


class TestValidate:
    def test_crossing_graph(self, tmp_path, capsys):
        graph = tmp_path / "x.json"
        dump(
            {
                "dim": 2,
                "vertices": [
                    {"id": "a", "coords": [0, 0]},
                    {"id": "b", "coords": [2, 2]},
                    {"id": "c", "coords": [0, 2]},
                    {"id": "d", "coords": [2, 0]},
                ],
                "edges": [["a", "b"], ["c", "d"]],
            },
            graph,
        )
        code, report = run(capsys, "validate", str(graph))
        assert code == EXIT_INVALID
        (violation,) = report["results"]["violations"]
        assert violation["kind"] == "crossing"
        assert violation["subjects"] == [["a", "b"], ["c", "d"]]

    def test_double_assigned_matching(self, wiggle, capsys):
        matching = wiggle / "m.json"
        dump({"pairs": [["u1", "v1"], ["u2", "v1"], [None, "v2"]]}, matching)
        code, _ = run(capsys, "validate", str(matching), "--kind", "matching",
                      "--g", str(wiggle / "g.json"), "--h", str(wiggle / "h.json"))
        assert code == EXIT_INVALID

    def test_matching_needs_both_graphs(self, wiggle, capsys):
        code, _ = run(capsys, "validate", str(wiggle / "m.json"), "--kind", "matching", "--g", str(wiggle / "g.json"))
        assert code == EXIT_USAGE

    def test_human_output(self, wiggle, capsys):
        code = main(["validate", str(wiggle / "g.json")])
        assert code == EXIT_OK
        assert "valid: True" in capsys.readouterr().out


class TestMetricsFile:
    def test_export(self, wiggle, capsys):
        target = wiggle / "metrics" / "ggdkit.prom"
        main(["ggd", str(wiggle / "g.json"), str(wiggle / "h.json"), "--metrics-file", str(target)])
        capsys.readouterr()
        text = target.read_text()
        assert "ggdkit_solver_runs_total" in text
        assert 'ggdkit_cli_commands_total{command="ggd"}' in text


def test_graph_files_from_the_library(tmp_path, capsys, path3):
    dump(graph_to_dict(path3), tmp_path / "g.json")
    code, report = run(capsys, "ggd", str(tmp_path / "g.json"), str(tmp_path / "g.json"))
    assert code == EXIT_OK
    assert report["results"]["value"] == 0.0
