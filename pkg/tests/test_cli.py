import json
import socket
import subprocess
import sys
import time

import pytest

from coverlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_census_example(capsys):
    code, out = run_cli(capsys, "census", "--n", "6", "--edges", "K222", "--k", "3")
    assert code == 0
    report = json.loads(out)
    assert report["result"]["cover_count"] == 6
    assert report["result"]["cluster_sizes"] == [1, 1, 1, 1, 1, 1]
    assert report["result"]["separation"] == 4


def test_bounds_example(capsys):
    code, out = run_cli(capsys, "bounds", "--k", "3")
    assert code == 0
    row = json.loads(out)["result"]["rows"][0]
    assert row["d_first"] == pytest.approx(5.49306, abs=1e-5)


def test_montecarlo_example(capsys):
    code, out = run_cli(
        capsys,
        "montecarlo", "--n", "2", "--m", "1", "--k", "2", "--trials", "800", "--seed", "1",
    )
    assert code == 0
    res = json.loads(out)["result"]
    assert res["expected"] == 1.0
    assert res["within_3_sigma"] is True


def test_output_file_and_determinism(tmp_path, capsys):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["census", "--edges", "K222", "--k", "3", "--output", str(f1)]) == 0
    assert main(["census", "--edges", "K222", "--k", "3", "--output", str(f2)]) == 0
    capsys.readouterr()
    assert f1.read_bytes() == f2.read_bytes()
    report = json.loads(f1.read_text())
    assert report["config"]["subcommand"] == "census"


def test_progress_goes_to_stderr_not_stdout(capsys):
    main(["bounds", "--k", "3"])
    captured = capsys.readouterr()
    assert "running bounds" in captured.err
    assert "running" not in captured.out


def test_unknown_graph_exits_2(capsys):
    code, out = run_cli(capsys, "census", "--edges", "mystery", "--k", "3")
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "domain"


def test_budget_exhaustion_exits_3(capsys):
    code, out = run_cli(
        capsys, "census", "--edges", "two-triangles", "--k", "3", "--budget", "3"
    )
    assert code == 3
    assert json.loads(out)["error"]["kind"] == "resource"


def test_csv_only_for_bounds(capsys):
    code, out = run_cli(capsys, "whiten", "--edges", "triangle", "--colors", "1,2,3",
                        "--format", "csv")
    assert code == 2
    assert "csv" in json.loads(out)["error"]["message"]


def test_bounds_csv_output(tmp_path, capsys):
    path = tmp_path / "table.csv"
    code = main(["bounds", "--k", "3", "--k", "4", "--format", "csv",
                 "--output", str(path)])
    capsys.readouterr()
    assert code == 0
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "k,d_first,d_AN,d_second,d_cavity,d_cover"
    assert lines[1].startswith("3,")
    assert lines[2].startswith("4,")


def test_generate_is_seed_deterministic(capsys):
    code, out1 = run_cli(capsys, "generate", "--n", "10", "--d", "3.8", "--seed", "5")
    assert code == 0
    _, out2 = run_cli(capsys, "generate", "--n", "10", "--d", "3.8", "--seed", "5")
    assert out1 == out2
    res = json.loads(out1)["result"]
    assert res["n"] == 10 and res["m"] == 19  # ceil(3.8*10/2)
    assert res["simple"] is True


def test_generate_missing_seed_exits_2(capsys):
    code, out = run_cli(capsys, "generate", "--n", "5", "--m", "4")
    assert code == 2


def test_m_and_d_conflict_is_caught_before_transport(capsys):
    code, out = run_cli(
        capsys, "montecarlo", "--n", "4", "--m", "3", "--d", "1.5",
        "--k", "2", "--trials", "5", "--seed", "1",
    )
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "domain"


def test_whiten_file_inputs(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    graph.write_text("3 3\n1 2\n1 3\n2 3\n")
    colors = tmp_path / "c.txt"
    colors.write_text("3 3\n1 2 3\n")
    code, out = run_cli(capsys, "whiten", "--edges", str(graph), "--colors", str(colors))
    assert code == 0
    assert json.loads(out)["result"]["output"] == [0, 0, 0]


def _free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def test_remote_server_round_trip(tmp_path, capsys):
    port = _free_port()
    proc = subprocess.Popen(
        [sys.executable, "-m", "coverlab.cli", "serve", "--port", str(port)],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    try:
        import httpx

        deadline = time.time() + 15
        up = False
        while time.time() < deadline:
            try:
                if httpx.get(f"http://127.0.0.1:{port}/v1/health", timeout=1).status_code == 200:
                    up = True
                    break
            except Exception:
                time.sleep(0.2)
        if not up:
            pytest.skip("local http server did not come up")
        code, remote = run_cli(
            capsys, "census", "--edges", "K222", "--k", "3",
            "--server", f"http://127.0.0.1:{port}",
        )
        assert code == 0
        _, local = run_cli(capsys, "census", "--edges", "K222", "--k", "3")
        assert remote == local  # same bytes either way
    finally:
        proc.terminate()
        proc.wait(timeout=10)
