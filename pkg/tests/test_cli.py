import json

import pytest

from vcgen.cli import main
from vcgen.graphs import (
    Instance,
    complete_graph,
    cycle_graph,
    format_graph,
    format_instance,
    petersen_graph,
)


@pytest.fixture()
def k4_instance(tmp_path):
    p = tmp_path / "k4.vc"
    p.write_text(format_instance(Instance(complete_graph(4), 3)))
    return p


def gen_tables(tmp_path, *extra):
    out = tmp_path / "tables"
    rc = main([
        "generate", "--measure", "k-mode", "a=1", "--mode", "det",
        "--subspace", "P19", "--subspace", "P7", "--subspace", "P6",
        "--out", str(out), *extra,
    ])
    assert rc == 0
    return out


def test_generate_solve_roundtrip(tmp_path, capsys, k4_instance):
    out = gen_tables(tmp_path)
    assert (out / "P19.json").exists() and (out / "P7.json").exists()
    rc = main(["solve", "--instance", str(k4_instance), "--tables", str(out),
               "--mode", "det", "--show-cover"])
    captured = capsys.readouterr().out
    assert rc == 0
    assert "YES" in captured
    # K4 with k=2 answers NO with exit code 1
    low = tmp_path / "k4lo.vc"
    low.write_text(format_instance(Instance(complete_graph(4), 2)))
    rc = main(["solve", "--instance", str(low), "--tables", str(out), "--mode", "det"])
    assert rc == 1
    assert "NO" in capsys.readouterr().out


def test_generate_infeasible_measure_exits_3(tmp_path, capsys):
    rc = main(["generate", "--measure", "k-mode", "a=1", "b2=0.1",
               "--out", str(tmp_path / "t")])
    assert rc == 3
    assert "infeasible measure" in capsys.readouterr().out


def test_generate_weak_measure_fails_with_chain(tmp_path, capsys):
    rc = main([
        "generate", "--measure", "n-mode", "b3=0.001", "--mode", "rand",
        "--subspace", "P19", "--depth", "3", "--out", str(tmp_path / "t"),
    ])
    assert rc == 2
    out = capsys.readouterr().out
    assert "generation aborted" in out and "blocking chain" in out


def test_solve_randomized_with_trace(tmp_path, capsys):
    out = tmp_path / "tables"
    rc = main(["generate", "--measure", "n-mode", "b3=0.25", "--mode", "rand",
               "--out", str(out)])
    assert rc == 0
    capsys.readouterr()
    inst = tmp_path / "pet.vc"
    inst.write_text(format_instance(Instance(petersen_graph(), 6)))
    rc = main(["solve", "--instance", str(inst), "--tables", str(out),
               "--mode", "rand", "--seed", "7", "--trace"])
    captured = capsys.readouterr().out
    assert rc == 0
    assert "YES" in captured and "mu =" in captured and "trials =" in captured
    assert "trial 0: P" in captured


def test_solve_refuses_tampered_table(tmp_path, capsys, k4_instance):
    out = gen_tables(tmp_path)
    path = out / "P19.json"
    doc = json.loads(path.read_text())
    for node in doc["nodes"]:
        if node["kind"] == "leaf" and node["leaf"]["kind"] == "rule":
            node["leaf"]["entries"] = node["leaf"]["entries"][:1]
    path.write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    rc = main(["solve", "--instance", str(k4_instance), "--tables", str(out),
               "--mode", "det"])
    assert rc == 3
    assert "refusing" in capsys.readouterr().out


def test_verify_command(tmp_path, capsys, k4_instance):
    out = gen_tables(tmp_path)
    rc = main(["verify", "--table", str(out / "P19.json")])
    captured = capsys.readouterr().out
    assert rc == 0
    assert "PASS" in captured and "objective" in captured
    # tamper and expect FAIL with the leaf named
    path = out / "P19.json"
    doc = json.loads(path.read_text())
    for node in doc["nodes"]:
        if node["kind"] == "leaf" and node["leaf"]["kind"] == "rule":
            node["leaf"]["entries"] = node["leaf"]["entries"][:1]
    path.write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    rc = main(["verify", "--table", str(path)])
    captured = capsys.readouterr().out
    assert rc == 2
    assert "FAIL" in captured


def test_classify_and_oracle_commands(tmp_path, capsys):
    c8 = tmp_path / "c8.vc"
    c8.write_text(format_graph(cycle_graph(8)))
    assert main(["classify", "--instance", str(c8)]) == 0
    assert capsys.readouterr().out.strip() == "P6"
    c5 = tmp_path / "c5.vc"
    c5.write_text(format_graph(cycle_graph(5)))
    assert main(["oracle", "--instance", str(c5)]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_bound_command(capsys):
    assert main(["bound", "--combine", "a=0.59303", "b=0.03958", "base_n=1.13735"]) == 0
    out = capsys.readouterr().out
    base = float(out.splitlines()[1].split("=")[-1])
    assert abs(base - 1.21103) < 1.5e-4
    assert main(["bound", "--vector", "1:1,1:3"]) == 0
    out = capsys.readouterr().out
    assert abs(float(out.split("=")[-1]) - 1.46558) < 1e-4
    assert main(["bound", "--combine", "a=1", "b=0", "base_n=1"]) == 0
    out = capsys.readouterr().out
    assert "base = e^d = 1.000000" in out


def test_feasibility_command(capsys):
    assert main(["feasibility", "--measure", "n-mode", "b3=0.106"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["feasibility", "--measure", "k-mode", "a=1"]) == 2
    assert "FAIL" in capsys.readouterr().out


def test_generation_byte_identical_across_processes(tmp_path):
    # hash randomization must not leak into serialized tables
    import subprocess
    import sys

    outs = []
    for seed in ("0", "424242"):
        out_dir = tmp_path / f"t{seed}"
        env = {"PYTHONHASHSEED": seed, "PATH": "/usr/bin:/bin"}
        subprocess.run(
            [sys.executable, "-m", "vcgen.cli", "generate", "--measure", "n-mode",
             "b3=0.2", "--mode", "rand", "--subspace", "P2", "--subspace", "P19",
             "--out", str(out_dir)],
            check=True, env=env, capture_output=True,
        )
        outs.append((out_dir / "P2.json").read_bytes() + (out_dir / "P19.json").read_bytes())
    assert outs[0] == outs[1]


def test_deterministic_cli_output(tmp_path, capsys, k4_instance):
    out = gen_tables(tmp_path)
    capsys.readouterr()  # drop the generation log
    main(["solve", "--instance", str(k4_instance), "--tables", str(out), "--mode", "det"])
    first = capsys.readouterr().out
    main(["solve", "--instance", str(k4_instance), "--tables", str(out), "--mode", "det"])
    assert capsys.readouterr().out == first
