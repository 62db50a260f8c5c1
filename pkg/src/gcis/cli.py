"""Command-line front end.

Subcommands: c (compress), d (decompress), x (extract substrings),
sa / salcp (suffix and lcp arrays from a container), info (container
inspection), gen (repetitive-corpus generator), bench (compress +
verify round trip without writing).

Exit codes: 0 on success, 1 for usage or I/O problems, 2 for a corrupt
or unreadable container.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from .decode import decompress
from .extract import extract
from .format import PROFILE_EF, ContainerError, describe, deserialize, serialize
from .grammar import compress
from .salcp import decompress_with_sa, decompress_with_sa_lcp


@dataclass
class BenchRecord:
    """One CSV row of compression metrics."""

    name: str
    input_bytes: int
    output_bytes: int
    seconds: float
    peak_mem_bytes: int

    CSV_HEADER = "name,input_bytes,output_bytes,ratio_pct,seconds,mb_per_s,peak_mem_bytes"

    @property
    def ratio_pct(self) -> float:
        if self.input_bytes == 0:
            return 0.0
        return 100.0 * self.output_bytes / self.input_bytes

    @property
    def mb_per_s(self) -> float:
        if self.seconds <= 0:
            return 0.0
        return self.input_bytes / 1e6 / self.seconds

    def csv_line(self) -> str:
        return (
            f"{self.name},{self.input_bytes},{self.output_bytes},"
            f"{self.ratio_pct:.3f},{self.seconds:.4f},{self.mb_per_s:.2f},"
            f"{self.peak_mem_bytes}"
        )


def _peak_mem_bytes() -> int:
    try:
        import resource

        return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
    except Exception:
        return 0


def _print_record(record: BenchRecord, no_header: bool):
    if not no_header:
        print(BenchRecord.CSV_HEADER)
    print(record.csv_line())


def _load_container(path: str):
    with open(path, "rb") as fh:
        return deserialize(fh.read())


def _default_out(in_path: str, suffix: str) -> str:
    base = in_path[:-5] if in_path.endswith(".gcis") else in_path
    return base + suffix


def cmd_compress(in_path, out_path, profile="s8b", no_header=False) -> int:
    with open(in_path, "rb") as fh:
        data = fh.read()
    start = time.perf_counter()
    blob = serialize(compress(data), profile)
    elapsed = time.perf_counter() - start
    out_path = out_path or in_path + ".gcis"
    with open(out_path, "wb") as fh:
        fh.write(blob)
    record = BenchRecord(
        name=os.path.basename(in_path),
        input_bytes=len(data),
        output_bytes=len(blob),
        seconds=elapsed,
        peak_mem_bytes=_peak_mem_bytes(),
    )
    _print_record(record, no_header)
    return 0


def cmd_decompress(in_path, out_path) -> int:
    grammar, _ = _load_container(in_path)
    out_path = out_path or _default_out(in_path, "" if in_path.endswith(".gcis") else ".out")
    data = decompress(grammar)
    with open(out_path, "wb") as fh:
        fh.write(data)
    return 0


def _parse_queries(raw_queries) -> list:
    pairs = []
    for raw in raw_queries:
        for piece in raw.split(";"):
            piece = piece.strip()
            if not piece:
                continue
            left, sep, right = piece.partition(",")
            if not sep:
                raise ValueError(f"bad query {piece!r}, expected l,r")
            pairs.append((int(left), int(right)))
    if not pairs:
        raise ValueError("no queries given")
    return pairs


def cmd_extract(in_path, queries) -> int:
    grammar, index = _load_container(in_path)
    if index is None:
        print("error: profile lacks random access", file=sys.stderr)
        return 1
    out = sys.stdout.buffer
    for left, right in _parse_queries(queries):
        out.write(extract(index, grammar, left, right))
        out.write(b"\n")
    out.flush()
    return 0


def _write_u64(path: str, values: np.ndarray):
    with open(path, "wb") as fh:
        fh.write(np.ascontiguousarray(values, dtype="<u8").tobytes())


def cmd_sa(in_path, out) -> int:
    grammar, _ = _load_container(in_path)
    _, sa = decompress_with_sa(grammar)
    # drop the terminator entry and rebase to 0 for interop
    _write_u64(out or _default_out(in_path, ".sa"), sa[1:] - 1)
    return 0


def cmd_salcp(in_path, out_sa, out_lcp) -> int:
    grammar, _ = _load_container(in_path)
    _, sa, lcp = decompress_with_sa_lcp(grammar)
    _write_u64(out_sa or _default_out(in_path, ".sa"), sa[1:] - 1)
    file_lcp = np.concatenate(([0], lcp[2:])) if lcp.size > 1 else lcp[:0]
    _write_u64(out_lcp or _default_out(in_path, ".lcp"), file_lcp)
    return 0


def cmd_info(in_path) -> int:
    with open(in_path, "rb") as fh:
        data = fh.read()
    summary, blocks = describe(data)
    print(f"input bytes: {summary['n']}")
    print(f"levels: {summary['levels']}")
    print(f"profile: {summary['profile']}")
    print(f"lcp reset period: {summary['reset']}")
    for meta in summary["level_meta"]:
        print(
            f"level {meta['level']}: sigma {meta['sigma']}, "
            f"rules {meta['rules']}"
        )
    total = 0
    for label, size in blocks:
        print(f"  {label}: {size} bytes")
        total += size
    print(f"total: {total} bytes (file: {len(data)} bytes)")
    return 0


def mutate_copies(seed: bytes, copies: int, rate: float, rng_seed: int) -> bytes:
    """copies concatenated copies of seed, each byte resampled with prob rate."""
    rng = np.random.default_rng(rng_seed)
    base = np.frombuffer(seed, dtype=np.uint8)
    chunks = []
    for _ in range(copies):
        cur = base.copy()
        mask = rng.random(cur.size) < rate
        hits = int(mask.sum())
        if hits:
            cur[mask] = rng.integers(0, 256, size=hits, dtype=np.uint8)
        chunks.append(cur)
    return b"".join(c.tobytes() for c in chunks)


def gen_repetitive(seed_path, copies, mutation_rate, rng_seed, out_path) -> int:
    if copies < 1 or not 0 <= mutation_rate <= 1:
        raise ValueError("copies must be >= 1 and rate within [0, 1]")
    with open(seed_path, "rb") as fh:
        seed = fh.read()
    with open(out_path, "wb") as fh:
        fh.write(mutate_copies(seed, copies, mutation_rate, rng_seed))
    return 0


def cmd_bench(in_path, profile="s8b", no_header=False) -> int:
    with open(in_path, "rb") as fh:
        data = fh.read()
    start = time.perf_counter()
    blob = serialize(compress(data), profile)
    elapsed = time.perf_counter() - start
    grammar, _ = deserialize(blob)
    if decompress(grammar) != data:
        print("error: round trip mismatch", file=sys.stderr)
        return 1
    record = BenchRecord(
        name=os.path.basename(in_path),
        input_bytes=len(data),
        output_bytes=len(blob),
        seconds=elapsed,
        peak_mem_bytes=_peak_mem_bytes(),
    )
    _print_record(record, no_header)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcis",
        description="Grammar compressor with random access and SA/LCP output.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("c", help="compress a file into a .gcis container")
    c.add_argument("input")
    c.add_argument("output", nargs="?", help="default: INPUT.gcis")
    c.add_argument("--profile", choices=("s8b", "ef"), default="s8b")
    c.add_argument("--no-header", action="store_true",
                   help="omit the CSV header line")

    d = sub.add_parser("d", help="decompress a container")
    d.add_argument("input")
    d.add_argument("output", nargs="?")

    x = sub.add_parser("x", help="extract substrings (EF profile only)")
    x.add_argument("input")
    x.add_argument("-q", "--query", action="append", required=True,
                   metavar="L,R", help="1-based inclusive range; repeatable, "
                   "';' separates multiple ranges in one flag")

    sa = sub.add_parser("sa", help="write the suffix array of a container")
    sa.add_argument("input")
    sa.add_argument("output", nargs="?", help="default: INPUT-stem.sa")

    salcp = sub.add_parser("salcp", help="write suffix and lcp arrays")
    salcp.add_argument("input")
    salcp.add_argument("out_sa", nargs="?")
    salcp.add_argument("out_lcp", nargs="?")

    info = sub.add_parser("info", help="show container structure")
    info.add_argument("input")

    gen = sub.add_parser("gen", help="generate a mutated-copies corpus")
    gen.add_argument("seed", help="seed file to copy and mutate")
    gen.add_argument("output")
    gen.add_argument("--copies", type=int, default=1000)
    gen.add_argument("--rate", type=float, default=0.001)
    gen.add_argument("--seed", type=int, default=0, dest="rng_seed",
                     metavar="N", help="random generator seed")

    bench = sub.add_parser("bench", help="compress in memory and report stats")
    bench.add_argument("input")
    bench.add_argument("--profile", choices=("s8b", "ef"), default="s8b")
    bench.add_argument("--no-header", action="store_true")
    return parser


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "c":
        return cmd_compress(args.input, args.output, args.profile, args.no_header)
    if cmd == "d":
        return cmd_decompress(args.input, args.output)
    if cmd == "x":
        return cmd_extract(args.input, args.query)
    if cmd == "sa":
        return cmd_sa(args.input, args.output)
    if cmd == "salcp":
        return cmd_salcp(args.input, args.out_sa, args.out_lcp)
    if cmd == "info":
        return cmd_info(args.input)
    if cmd == "gen":
        return gen_repetitive(args.seed, args.copies, args.rate,
                              args.rng_seed, args.output)
    if cmd == "bench":
        return cmd_bench(args.input, args.profile, args.no_header)
    raise AssertionError(cmd)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return _dispatch(args)
    except ContainerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if str(exc).startswith("corrupt") else 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())