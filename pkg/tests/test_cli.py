import pytest

import gemsurf as gs
from gemsurf import fileio
from gemsurf.cli import main


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def t1_file(tmp_path):
    return write(tmp_path, "t1.gem", fileio.write_graph(gs.make_T1()))


def test_validate_ok(tmp_path, capsys):
    assert main(["validate", t1_file(tmp_path)]) == 0
    assert capsys.readouterr().out == "valid, n=6\n"


def test_validate_positioned_error(tmp_path, capsys):
    path = write(tmp_path, "bad.gem",
                 "gem 1 2\nedge 0 1 1\nedge 1 1 2\nedge 2 1 2\n")
    assert main(["validate", path]) == 3
    err = capsys.readouterr().err
    assert "line 2" in err and "loop" in err


def test_validate_arity_error(tmp_path, capsys):
    text = fileio.write_graph(gs.make_T1()).splitlines()[:-1]
    path = write(tmp_path, "short.gem", "\n".join(text) + "\n")
    assert main(["validate", path]) == 3
    assert "3n/2" in capsys.readouterr().err


def test_info_t1(tmp_path, capsys):
    assert main(["info", t1_file(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "contracted bipartite χ=0 T(1) orientable genus 1" in out
    assert "cycles: {0,1}=1 {0,2}=1 {1,2}=1" in out


def test_info_l_and_p2(tmp_path, capsys):
    lf = write(tmp_path, "l.gem", fileio.write_graph(gs.make_L()))
    assert main(["info", lf]) == 0
    assert "χ=2 L sphere" in capsys.readouterr().out
    pf = write(tmp_path, "p2.gem", fileio.write_graph(gs.make_P2()))
    assert main(["info", pf]) == 0
    assert "non-bipartite χ=0 P(2) non-orientable genus 2" in capsys.readouterr().out


def test_gen_and_info(tmp_path, capsys):
    out = str(tmp_path / "t2.gem")
    assert main(["gen", "T", "2", "-o", out]) == 0
    capsys.readouterr()
    assert main(["info", out]) == 0
    assert "contracted bipartite χ=-2 T(2)" in capsys.readouterr().out


def test_gen_requires_index(tmp_path, capsys):
    assert main(["gen", "P", "-o", str(tmp_path / "x.gem")]) == 2


def test_enum_summary_and_files(tmp_path, capsys):
    out_dir = tmp_path / "classes"
    assert main(["enum", "6", "--out-dir", str(out_dir)]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "6\t2\t1\tP2,T1"
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == ["class_000.gem", "class_001.gem", "summary.tsv"]
    graphs = [fileio.parse_graph((out_dir / f).read_text()) for f in files[:2]]
    assert all(gs.is_contracted(g) for g in graphs)


def test_iso_negative_and_positive(tmp_path, capsys):
    a = t1_file(tmp_path)
    b = write(tmp_path, "p2.gem", fileio.write_graph(gs.make_P2()))
    assert main(["iso", a, b]) == 1
    assert capsys.readouterr().out == "non-isomorphic\n"
    shuffled = gs.relabel(gs.make_T1(), {1: 3, 2: 4, 3: 5, 4: 6, 5: 1, 6: 2})
    c = write(tmp_path, "t1s.gem", fileio.write_graph(shuffled))
    assert main(["iso", a, c]) == 0
    assert capsys.readouterr().out.startswith("isomorphic: 1->")


def test_reduce_verify_round_trip(tmp_path, capsys):
    g = gs.connected_sum(gs.make_P1(), 1, gs.make_T1(), 4)
    gf = write(tmp_path, "g.gem", fileio.write_graph(g))
    tf = str(tmp_path / "g.trace")
    assert main(["reduce", gf, "-o", tf]) == 0
    assert capsys.readouterr().out == "P(3)\n"
    assert main(["verify", gf, tf]) == 0
    assert capsys.readouterr().out == "verified: P(3)\n"


def test_reduce_t1_emits_bare_conclusion(tmp_path, capsys):
    gf = t1_file(tmp_path)
    tf = str(tmp_path / "t1.trace")
    assert main(["reduce", gf, "-o", tf]) == 0
    assert capsys.readouterr().out == "T(1)\n"
    lines = (tmp_path / "t1.trace").read_text().splitlines()
    assert len(lines) == 2 and lines[1].startswith("conclude T1")
    assert main(["verify", gf, tf]) == 0
    assert capsys.readouterr().out == "verified: T(1)\n"


def test_reduce_catalog_class_file(tmp_path, capsys):
    out_dir = tmp_path / "classes8"
    main(["enum", "8", "--out-dir", str(out_dir)])
    capsys.readouterr()
    gf = str(out_dir / "class_000.gem")
    tf = str(tmp_path / "c.trace")
    assert main(["reduce", gf, "-o", tf]) == 0
    assert capsys.readouterr().out == "P(3)\n"
    assert main(["verify", gf, tf]) == 0
    assert capsys.readouterr().out == "verified: P(3)\n"


def test_verify_tampered_named_step(tmp_path, capsys):
    g = gs.make_T(2)
    sp = gs.split_off_T1(g)
    gf = write(tmp_path, "g.gem", fileio.write_graph(g))
    lines = fileio.write_trace(sp.trace).splitlines()
    head, _, _ = lines[2].rpartition(" ")
    lines[2] = head + " tampered"
    tf = write(tmp_path, "g.trace", "\n".join(lines) + "\n")
    assert main(["verify", gf, tf]) == 1
    assert "step 2" in capsys.readouterr().err


def test_verify_pure_trace(tmp_path, capsys):
    g = gs.make_T(2)
    sp = gs.split_off_T1(g)
    gf = write(tmp_path, "g.gem", fileio.write_graph(g))
    tf = write(tmp_path, "g.trace", fileio.write_trace(sp.trace))
    assert main(["verify", gf, tf]) == 0
    assert capsys.readouterr().out == "verified: final n=10 T(2)\n"


def test_apply_writes_final_graph(tmp_path, capsys):
    g = gs.connected_sum(gs.make_P1(), 1, gs.make_T1(), 4)
    trace = gs.rewrite_TP1_to_P3(g, gs.reduction.tp1_seam(g))
    gf = write(tmp_path, "g.gem", fileio.write_graph(g))
    tf = write(tmp_path, "g.trace", fileio.write_trace(trace))
    out = str(tmp_path / "final.gem")
    assert main(["apply", gf, tf, "-o", out]) == 0
    final = fileio.parse_graph((tmp_path / "final.gem").read_text())
    assert gs.are_isomorphic(final, gs.make_P(3)) is not None


def test_apply_rejects_certificate(tmp_path, capsys):
    g = gs.make_P(3)
    form, cert = gs.reduce(g)
    gf = write(tmp_path, "g.gem", fileio.write_graph(g))
    tf = write(tmp_path, "g.cert", fileio.write_certificate(g, cert))
    out = str(tmp_path / "x.gem")
    assert main(["apply", gf, tf, "-o", out]) == 3
    assert "plain move trace" in capsys.readouterr().err


def test_missing_file_is_usage_error(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "nope.gem")]) == 2


def test_outputs_deterministic(tmp_path, capsys):
    gf = t1_file(tmp_path)
    main(["info", gf])
    first = capsys.readouterr().out
    main(["info", gf])
    assert capsys.readouterr().out == first
    d1, d2 = tmp_path / "e1", tmp_path / "e2"
    main(["enum", "6", "--out-dir", str(d1)])
    capsys.readouterr()
    main(["enum", "6", "--out-dir", str(d2)])
    capsys.readouterr()
    for name in ("class_000.gem", "class_001.gem", "summary.tsv"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


def test_usage_error_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
