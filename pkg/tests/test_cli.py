import json

import pytest
from click.testing import CliRunner

from conelift import gr2n
from conelift.cli import main
from conelift.polyring import (
    ideal_to_json,
    order_to_json,
    parse_polynomial,
    ring_to_json,
)

RAYS24 = [[0, 1, 1, 1, 1, 0], [0, 1, 0, 0, 1, 0]]


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def files(tmp_path):
    ring = gr2n.plucker_ring(4)
    ideal = gr2n.plucker_ideal(4)
    paths = {
        "ring": tmp_path / "ring.json",
        "ideal": tmp_path / "ideal.json",
        "order": tmp_path / "order.json",
        "rays": tmp_path / "rays.json",
        "seed": tmp_path / "seed.json",
        "dir": tmp_path,
    }
    paths["ring"].write_text(json.dumps(ring_to_json(ring)))
    paths["ideal"].write_text(
        json.dumps(ideal_to_json(ring, ideal.generators))
    )
    paths["order"].write_text(
        json.dumps(order_to_json(gr2n.compatible_order(4)))
    )
    paths["rays"].write_text(
        json.dumps({"rows": RAYS24, "tvars": ["t1", "t2"]})
    )
    paths["seed"].write_text(
        json.dumps({"matrix": [[0, 1], [-1, 0]], "names": ["x1", "x2"]})
    )
    return {k: str(v) for k, v in paths.items()}


def tail_json(output):
    lines = output.splitlines(keepends=True)
    for i, line in enumerate(lines):
        if line.startswith("{"):
            return json.loads("".join(lines[i:]))
    raise AssertionError("no JSON object in output")


def run_ok(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


class TestGb:
    def test_happy_path(self, runner, files):
        result = run_ok(
            runner,
            ["gb", "--ideal", files["ideal"], "--order", files["order"]],
        )
        report = tail_json(result.output)
        assert report["format"] == 1
        assert report["count"] == 1
        assert report["initial_monomials"] == ["p13*p24"]
        assert len(report["vars"]) == 6
        first = result.output.splitlines()[0]
        assert first.startswith("p13*p24")

    def test_ring_and_generators_split(self, runner, files, tmp_path):
        bare = tmp_path / "bare.json"
        bare.write_text(
            json.dumps(
                {"generators": ["p13*p24 - p12*p34 - p14*p23"]}
            )
        )
        result = run_ok(
            runner,
            ["gb", "--ring", files["ring"], "--ideal", str(bare)],
        )
        assert tail_json(result.output)["count"] == 1

    def test_deterministic_across_runs_and_threads(self, runner, files):
        args = ["gb", "--ideal", files["ideal"], "--order", files["order"]]
        base = run_ok(runner, args).output
        assert run_ok(runner, args).output == base
        assert run_ok(runner, args + ["--threads", "4"]).output == base

    def test_json_file_matches_stdout(self, runner, files, tmp_path):
        out = tmp_path / "report.json"
        result = run_ok(
            runner,
            ["gb", "--ideal", files["ideal"], "--json", str(out)],
        )
        written = out.read_text()
        assert result.output.endswith(written)
        assert json.loads(written) == tail_json(result.output)

    def test_zero_threads_rejected(self, runner, files):
        result = runner.invoke(
            main, ["gb", "--ideal", files["ideal"], "--threads", "0"]
        )
        assert result.exit_code == 2

    def test_missing_file_rejected(self, runner, files):
        result = runner.invoke(main, ["gb", "--ideal", "/no/such.json"])
        assert result.exit_code == 2

    def test_bad_json_rejected(self, runner, files, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        result = runner.invoke(main, ["gb", "--ideal", str(bad)])
        assert result.exit_code == 2

    def test_empty_generators_rejected(self, runner, files, tmp_path):
        empty = tmp_path / "empty.json"
        empty.write_text(
            json.dumps({"vars": ["x", "y"], "generators": []})
        )
        result = runner.invoke(main, ["gb", "--ideal", str(empty)])
        assert result.exit_code == 2


class TestInitialAndFiber:
    def test_initial_interior_weight(self, runner, files):
        result = run_ok(
            runner,
            [
                "initial",
                "--ideal",
                files["ideal"],
                "--point",
                "4,0,4,4,0,4",
            ],
        )
        report = json.loads(result.output)
        assert report["generators"] == ["p13*p24"]
        assert report["weight"] == [4, 0, 4, 4, 0, 4]

    def test_initial_output_feeds_gb(self, runner, files, tmp_path):
        out = tmp_path / "init.json"
        run_ok(
            runner,
            [
                "initial",
                "--ideal",
                files["ideal"],
                "--point",
                "4,0,4,4,0,4",
                "--json",
                str(out),
            ],
        )
        result = run_ok(runner, ["gb", "--ideal", str(out)])
        assert tail_json(result.output)["initial_monomials"] == ["p13*p24"]

    def test_initial_wrong_length_rejected(self, runner, files):
        result = runner.invoke(
            main,
            ["initial", "--ideal", files["ideal"], "--point", "1,2"],
        )
        assert result.exit_code == 2

    def test_initial_bad_entry_rejected(self, runner, files):
        result = runner.invoke(
            main,
            [
                "initial",
                "--ideal",
                files["ideal"],
                "--point",
                "1,0,1,1,0,zz",
            ],
        )
        assert result.exit_code == 2

    def test_fiber_at_one_is_plucker_relation(self, runner, files):
        result = run_ok(
            runner,
            [
                "fiber",
                "--ideal",
                files["ideal"],
                "--rays",
                files["rays"],
                "--point",
                "1,1",
            ],
        )
        report = json.loads(result.output)
        ring = gr2n.plucker_ring(4)
        order = gr2n.compatible_order(4)
        got = {
            str(parse_polynomial(ring, s).monic(order))
            for s in report["generators"]
        }
        want = {
            str(g.monic(order))
            for g in gr2n.plucker_ideal(4).generators
        }
        assert got == want

    def test_fiber_at_zero_matches_initial(self, runner, files):
        fib = run_ok(
            runner,
            [
                "fiber",
                "--ideal",
                files["ideal"],
                "--rays",
                files["rays"],
                "--point",
                "0,0",
            ],
        )
        weight = [sum(col) for col in zip(*RAYS24)]
        init = run_ok(
            runner,
            [
                "initial",
                "--ideal",
                files["ideal"],
                "--point",
                ",".join(str(x) for x in weight),
            ],
        )
        ring = gr2n.plucker_ring(4)
        order = gr2n.compatible_order(4)

        def norm(report):
            return {
                str(parse_polynomial(ring, s).monic(order))
                for s in json.loads(report.output)["generators"]
            }

        assert norm(fib) == norm(init)

    def test_fiber_wrong_point_length(self, runner, files):
        result = runner.invoke(
            main,
            [
                "fiber",
                "--ideal",
                files["ideal"],
                "--rays",
                files["rays"],
                "--point",
                "1",
            ],
        )
        assert result.exit_code == 2


class TestLift:
    def test_happy_path(self, runner, files):
        result = run_ok(
            runner,
            ["lift", "--ideal", files["ideal"], "--rays", files["rays"]],
        )
        report = tail_json(result.output)
        assert report["tvars"] == ["t1", "t2"]
        assert len(report["vars"]) == 8
        assert len(report["w_prime"]) == 8
        assert report["generators"] == [result.output.splitlines()[0]]
        assert "t" in report["generators"][0]

    def test_outside_ray_rejected(self, runner, files, tmp_path):
        bad = tmp_path / "badrays.json"
        bad.write_text(json.dumps({"rows": [[1, 1, 0, 0, 1, 1]]}))
        result = runner.invoke(
            main,
            [
                "lift",
                "--ideal",
                files["ideal"],
                "--order",
                files["order"],
                "--rays",
                str(bad),
            ],
        )
        assert result.exit_code == 2

    def test_rays_without_rows_rejected(self, runner, files, tmp_path):
        bad = tmp_path / "norows.json"
        bad.write_text(json.dumps({"tvars": ["t1"]}))
        result = runner.invoke(
            main,
            ["lift", "--ideal", files["ideal"], "--rays", str(bad)],
        )
        assert result.exit_code == 2


class TestFlatnessAndTrop:
    def test_flatness_ok(self, runner, files):
        result = run_ok(
            runner,
            [
                "flatness",
                "--ideal",
                files["ideal"],
                "--rays",
                files["rays"],
                "--max-degree",
                "2",
                "--point",
                "0,0",
                "--point",
                "1,1",
                "--point",
                "1,1/2",
            ],
        )
        report = json.loads(result.output)
        assert report["ok"] is True
        assert report["expected"] == {"0": 1, "1": 6, "2": 20}
        assert report["mismatches"] == []

    def test_flatness_default_point(self, runner, files):
        result = run_ok(
            runner,
            [
                "flatness",
                "--ideal",
                files["ideal"],
                "--rays",
                files["rays"],
                "--max-degree",
                "1",
            ],
        )
        assert json.loads(result.output)["points"] == [[1, 1]]

    def test_flatness_zero_degree_rejected(self, runner, files):
        result = runner.invoke(
            main,
            [
                "flatness",
                "--ideal",
                files["ideal"],
                "--rays",
                files["rays"],
                "--max-degree",
                "0",
            ],
        )
        assert result.exit_code == 2

    def test_trop_check_boundary_weight_passes(self, runner, files):
        result = runner.invoke(
            main,
            [
                "trop-check",
                "--ideal",
                files["ideal"],
                "--point",
                "0,1,0,0,1,0",
            ],
            catch_exceptions=False,
        )
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["monomial_free"] is True
        assert report["positive_witness"] is False

    def test_trop_check_interior_weight_fails(self, runner, files):
        result = runner.invoke(
            main,
            [
                "trop-check",
                "--ideal",
                files["ideal"],
                "--point",
                "4,0,4,4,0,4",
            ],
        )
        assert result.exit_code == 1
        assert json.loads(result.output)["monomial_free"] is False


class TestCluster:
    def test_mutate(self, runner, files):
        result = run_ok(
            runner,
            ["cluster", "--seed", files["seed"], "mutate", "1"],
        )
        report = json.loads(result.output)
        assert report["direction"] == 1
        assert report["matrix"] == [[0, -1], [1, 0]]
        assert "(x2 + 1)/x1" in report["cluster"][0].replace(" ", "") or (
            "x2" in report["cluster"][0]
        )

    def test_mutate_out_of_range(self, runner, files):
        result = runner.invoke(
            main, ["cluster", "--seed", files["seed"], "mutate", "3"]
        )
        assert result.exit_code == 2

    def test_graph_counts(self, runner, files):
        result = run_ok(
            runner, ["cluster", "--seed", files["seed"], "graph"]
        )
        report = json.loads(result.output)
        assert report["seeds"] == 5
        assert report["variables"] == 5
        assert len(report["edges"]) == 5

    def test_g_vectors_fan(self, runner, files):
        result = run_ok(
            runner, ["cluster", "--seed", files["seed"], "g-vectors"]
        )
        report = json.loads(result.output)
        assert report["count"] == 5
        assert report["g_vectors"] == [
            [-1, 0],
            [-1, 1],
            [0, -1],
            [0, 1],
            [1, 0],
        ]

    def test_b_univ_rows(self, runner, files):
        result = run_ok(
            runner, ["cluster", "--seed", files["seed"], "b-univ"]
        )
        report = json.loads(result.output)
        assert report["mutable"] == 2
        assert len(report["matrix"]) == 7

    def test_sr_ideal_pentagon(self, runner, files):
        result = run_ok(
            runner, ["cluster", "--seed", files["seed"], "sr-ideal"]
        )
        report = json.loads(result.output)
        assert len(report["vars"]) == 5
        assert report["vars"][:2] == ["x1", "x2"]
        assert len(report["generators"]) == 5
        for g in report["generators"]:
            assert g.count("*") == 1

    def test_seed_without_matrix_rejected(self, runner, tmp_path):
        bad = tmp_path / "noseed.json"
        bad.write_text(json.dumps({"names": ["a"]}))
        result = runner.invoke(
            main, ["cluster", "--seed", str(bad), "graph"]
        )
        assert result.exit_code == 2

    def test_non_skew_matrix_rejected(self, runner, tmp_path):
        bad = tmp_path / "skew.json"
        bad.write_text(json.dumps({"matrix": [[0, 1], [1, 0]]}))
        result = runner.invoke(
            main, ["cluster", "--seed", str(bad), "graph"]
        )
        assert result.exit_code == 2


class TestGr2nGroup:
    def test_ideal_command(self, runner):
        result = run_ok(runner, ["gr2n", "--n", "5", "ideal"])
        report = json.loads(result.output)
        assert report["n"] == 5
        assert len(report["vars"]) == 10
        assert len(report["generators"]) == 5

    def test_triangulation_count(self, runner):
        result = run_ok(runner, ["gr2n", "--n", "6", "triangulations"])
        report = json.loads(result.output)
        assert report["count"] == 14
        assert len(report["triangulations"]) == 14

    def test_g_vectors_deterministic(self, runner):
        args = ["gr2n", "--n", "6", "g-vectors", "--T", "24,25,26"]
        a = run_ok(runner, args).output
        b = run_ok(runner, args).output
        assert a == b
        report = json.loads(a)
        assert len(report["basis_arcs"]) == 9
        assert len(report["g_vectors"]) == 15
        assert report["g_vectors"]["2-4"] == [
            1 if arc == "2-4" else 0 for arc in report["basis_arcs"]
        ]

    def test_weights_with_triangulation(self, runner):
        result = run_ok(
            runner, ["gr2n", "--n", "5", "weights", "--T", "13,14"]
        )
        report = json.loads(result.output)
        assert len(report["u_weight"]) == 10
        assert report["monomial_cone_weight"] == [
            (2 * (j - i) - 5) ** 2 for i, j in gr2n.polygon_arcs(5)
        ]
        assert len(report["tree_weight"]) == 10
        assert len(report["w_T"]) == 10

    def test_lift_command(self, runner):
        result = run_ok(runner, ["gr2n", "--n", "5", "lift"])
        report = tail_json(result.output)
        assert len(report["generators"]) == 5
        assert len(report["tvars"]) == 5

    def test_small_n_rejected(self, runner):
        result = runner.invoke(main, ["gr2n", "--n", "3", "ideal"])
        assert result.exit_code == 2

    def test_bad_triangulation_rejected(self, runner):
        result = runner.invoke(
            main, ["gr2n", "--n", "5", "g-vectors", "--T", "13,24"]
        )
        assert result.exit_code == 2


class TestNobody:
    def test_single_flip_ok(self, runner):
        result = run_ok(
            runner,
            ["nobody", "--n", "5", "--T1", "13,14", "--T2", "14,24"],
        )
        report = json.loads(result.output)
        assert report["ok"] is True
        assert report["per_coordinate"] is True
        assert report["mapped_vertices"] == report["vertices_T2"]
        assert len(report["vertices_T1"]) == 10

    def test_group_alias_matches(self, runner):
        a = run_ok(
            runner,
            ["nobody", "--n", "5", "--T1", "13,14", "--T2", "14,24"],
        ).output
        b = run_ok(
            runner,
            [
                "gr2n",
                "--n",
                "5",
                "nobody",
                "--T1",
                "13,14",
                "--T2",
                "14,24",
            ],
        ).output
        assert a == b

    def test_non_adjacent_rejected(self, runner):
        result = runner.invoke(
            main,
            ["nobody", "--n", "5", "--T1", "13,14", "--T2", "24,25"],
        )
        assert result.exit_code == 2


class TestGr36Group:
    def test_regression_step(self, runner):
        result = run_ok(runner, ["gr36", "verify", "--step", "regression"])
        report = tail_json(result.output)
        assert report["format"] == 1
        assert len(report["steps"]) == 1
        assert report["steps"][0]["ok"] is True
        lines = [
            l for l in result.output.splitlines() if l.startswith("[")
        ]
        assert lines
        assert all(l.startswith("[ ok ] regression:") for l in lines)

    def test_unknown_step_rejected(self, runner):
        result = runner.invoke(main, ["gr36", "verify", "--step", "bogus"])
        assert result.exit_code == 2
