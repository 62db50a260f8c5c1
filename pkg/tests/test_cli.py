import os
import subprocess
import sys

import numpy as np
import pytest

from gcis import cli
from gcis.format import deserialize, serialize
from gcis.grammar import compress


def run(*argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture()
def sample(tmp_path):
    path = tmp_path / "sample.txt"
    path.write_bytes(b"how much wood would a woodchuck chuck " * 50)
    return path


def read_u64(path):
    return list(np.fromfile(path, dtype="<u8"))


def test_compress_decompress_default_names(sample, tmp_path):
    assert run("c", sample) == 0
    packed = tmp_path / "sample.txt.gcis"
    assert packed.exists()
    deserialize(packed.read_bytes())

    restored = tmp_path / "restored.bin"
    assert run("d", packed, restored) == 0
    assert restored.read_bytes() == sample.read_bytes()

    # without an output argument the .gcis suffix is stripped back off
    other = tmp_path / "copy.gcis"
    other.write_bytes(packed.read_bytes())
    assert run("d", other) == 0
    assert (tmp_path / "copy").read_bytes() == sample.read_bytes()
    # and a foreign name gains .out instead of being clobbered
    plain = tmp_path / "plainname"
    plain.write_bytes(packed.read_bytes())
    assert run("d", plain) == 0
    assert (tmp_path / "plainname.out").read_bytes() == sample.read_bytes()


def test_compress_reports_a_csv_record(sample, capfd):
    assert run("c", sample, "--no-header") == 0
    lines = capfd.readouterr().out.strip().splitlines()
    assert len(lines) == 1
    assert lines[0].split(",")[0] == "sample.txt"


def test_extract_needs_the_random_access_profile(sample, tmp_path, capfd):
    data = sample.read_bytes()
    packed = tmp_path / "sample.txt.gcis"
    assert run("c", sample, "--profile", "ef") == 0
    capfd.readouterr()

    assert run("x", packed, "-q", "1,9", "-q", "5,8;11,11") == 0
    out = capfd.readouterr()
    assert out.out.encode() == b"".join(
        data[l - 1 : r] + b"\n" for l, r in [(1, 9), (5, 8), (11, 11)]
    )

    assert run("c", sample) == 0  # default profile carries no index
    capfd.readouterr()
    assert run("x", packed, "-q", "1,3") == 1
    assert "random access" in capfd.readouterr().err


def test_extract_rejects_bad_queries(sample, tmp_path, capfd):
    assert run("c", sample, "--profile", "ef") == 0
    packed = tmp_path / "sample.txt.gcis"
    assert run("x", packed, "-q", "0,5") == 1
    assert "out of bounds" in capfd.readouterr().err
    assert run("x", packed, "-q", "five") == 1
    capfd.readouterr()


def test_suffix_and_lcp_files(tmp_path):
    src = tmp_path / "t"
    src.write_bytes(b"banana")
    assert run("c", src) == 0
    assert run("salcp", str(src) + ".gcis") == 0
    # files drop the terminator entry and use 0-based positions
    assert read_u64(tmp_path / "t.sa") == [5, 3, 1, 0, 4, 2]
    assert read_u64(tmp_path / "t.lcp") == [0, 1, 3, 0, 0, 2]

    assert run("sa", str(src) + ".gcis", tmp_path / "only.sa") == 0
    assert read_u64(tmp_path / "only.sa") == [5, 3, 1, 0, 4, 2]


def test_suffix_files_for_empty_input(tmp_path):
    src = tmp_path / "e"
    src.write_bytes(b"")
    assert run("c", src) == 0
    assert run("salcp", str(src) + ".gcis") == 0
    assert read_u64(tmp_path / "e.sa") == []
    assert read_u64(tmp_path / "e.lcp") == []


def test_info_reports_every_block(sample, tmp_path, capfd):
    assert run("c", sample, "--profile", "ef") == 0
    packed = tmp_path / "sample.txt.gcis"
    capfd.readouterr()
    assert run("info", packed) == 0
    out = capfd.readouterr().out
    assert "profile: ef" in out
    assert "child offsets" in out
    assert f"file: {os.path.getsize(packed)} bytes" in out


def test_generator_is_deterministic(tmp_path):
    seed = tmp_path / "seed"
    seed.write_bytes(
        bytes(np.random.default_rng(5).integers(0, 256, 500, dtype=np.uint8))
    )
    a = tmp_path / "a"
    b = tmp_path / "b"
    args = ("--copies", 20, "--rate", "0.01")
    assert run("gen", seed, a, *args, "--seed", 9) == 0
    assert run("gen", seed, b, *args, "--seed", 9) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_bytes()) == 20 * 500
    assert run("gen", seed, b, *args, "--seed", 10) == 0
    assert a.read_bytes() != b.read_bytes()
    assert run("gen", seed, b, "--copies", 0) == 1  # usage error


def test_bench_prints_csv_and_writes_nothing(sample, tmp_path, capfd):
    before = sorted(os.listdir(tmp_path))
    assert run("bench", sample) == 0
    assert sorted(os.listdir(tmp_path)) == before
    lines = capfd.readouterr().out.strip().splitlines()
    assert lines[0] == cli.BenchRecord.CSV_HEADER
    fields = lines[1].split(",")
    assert fields[0] == "sample.txt"
    assert int(fields[1]) == os.path.getsize(sample)
    blob = serialize(compress(sample.read_bytes()), "s8b")
    assert int(fields[2]) == len(blob)
    assert 0.0 < float(fields[3]) < 100.0
    float(fields[4]), float(fields[5]), int(fields[6])

    assert run("bench", sample, "--no-header") == 0
    assert len(capfd.readouterr().out.strip().splitlines()) == 1


def test_exit_codes(tmp_path, capfd):
    missing = tmp_path / "nope"
    assert run("c", missing) == 1
    assert "error:" in capfd.readouterr().err

    junk = tmp_path / "junk.gcis"
    junk.write_bytes(b"PK\x03\x04" + b"\x00" * 40)
    assert run("d", junk) == 2
    assert "not a GCIS container" in capfd.readouterr().err

    blob = serialize(compress(b"banana" * 100), "s8b")
    cut = tmp_path / "cut.gcis"
    cut.write_bytes(blob[:40])
    assert run("d", cut) == 2
    capfd.readouterr()

    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(["frobnicate"])
    assert run() == 1  # no subcommand
    assert run("c", "--bogus-flag") == 1
    capfd.readouterr()


def test_console_entry_point(sample):
    proc = subprocess.run(
        [sys.executable, "-m", "gcis.cli", "--help"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    for sub in ("c", "d", "x", "sa", "salcp", "info", "gen", "bench"):
        assert sub in proc.stdout
