"""Command-line entry point: ``treecode <subcommand> ...``.

Exit status is 0 on success, 2 for invalid input (bad flags, malformed
trees or codes) and 1 for internal errors.  Multi-object output is JSON
lines.  Randomized subcommands report their seed on stderr and embed it in
each output object.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, TextIO

import numpy as np

from . import formats, oracle, sampling, statistics, verify
from .bijection import (
    decode_degree,
    decode_forest,
    decode_marked,
    decode_rooted,
    decode_unrooted,
    encode_degree,
    encode_forest,
    encode_marked,
    encode_rooted,
    encode_unrooted,
)
from .growth import decode_modified, encode_modified, grow_dary_chain, shape_to_str
from .rng import default_seed, make_rng, metadata, run_streams
from .trees import (
    DegreeSequence,
    DegreeTree,
    MarkedTree,
    RootedForest,
    RootedTree,
    TreeValidationError,
    TypeVector,
    UnrootedTree,
    discovery_order,
    type_of,
)

FAMILIES = ("rooted", "unrooted", "marked", "type", "forest", "degree")


class UsageError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _type_vector(text: str) -> TypeVector:
    try:
        return TypeVector.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected c:count pairs, got {text!r}") from None


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--roots", type=_int_list)
    p.add_argument("--degrees", type=_int_list)
    p.add_argument("--type", type=_type_vector, dest="type_vector")


def _add_random_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="default: $TREECODE_SEED or 0")
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treecode", description="Line-breaking codes for labeled trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="tree JSON lines on stdin -> codes")
    p.add_argument("--context", choices=formats.CONTEXTS)
    p.add_argument("--variant", choices=("root1", "path"), default="root1")
    p.add_argument("--tree", help="a single tree JSON object instead of stdin")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("decode", help="codes -> trees")
    p.add_argument("--context", choices=formats.CONTEXTS)
    p.add_argument("--variant", choices=("root1", "path"), default="root1")
    p.add_argument("--seq", help="space-separated code; otherwise read lines from stdin")
    _add_family_args(p)
    p.add_argument("--format", choices=("json", "edgelist", "dot", "order"), default="json")

    p = sub.add_parser("sample", help="uniform random trees")
    p.add_argument("--family", choices=FAMILIES, required=True)
    _add_family_args(p)
    _add_random_args(p)
    p.add_argument("--format", choices=("json", "edgelist", "dot"), default="json")

    p = sub.add_parser("grow", help="chain of uniform d-ary trees")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--emit", choices=("shapes", "labeled"), default="shapes")

    p = sub.add_parser("count", help="closed-form counts")
    p.add_argument("--family", choices=FAMILIES, required=True)
    _add_family_args(p)

    p = sub.add_parser("enumerate", help="brute-force enumeration (JSON lines)")
    p.add_argument("--family", choices=("rooted", "unrooted", "type", "forest", "degree"), required=True)
    _add_family_args(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "edgelist", "dot"), default="json")

    p = sub.add_parser("stats", help="depth and height laws")
    p.add_argument("--stat", choices=("leafdepth", "vertexdepth", "height", "rayleigh", "dominance"), required=True)
    p.add_argument("--mode", choices=("exact", "mc"), default="mc")
    p.add_argument("--family", choices=("rooted", "type", "degree", "forest"), default="rooted")
    p.add_argument("--sim", choices=("birthday", "tree"), default="birthday", help="vertex-depth simulation route")
    p.add_argument("--cover", type=_int_list, help="covering move a,b for --stat dominance")
    _add_family_args(p)
    _add_random_args(p)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    return parser


# ---------------------------------------------------------------------------
# Helpers


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required here")
    return value


def _emit_tree(t, fmt: str, out: TextIO, meta: dict | None = None) -> None:
    if fmt == "json":
        out.write(formats.dumps(formats.tree_to_json(t, meta)) + "\n")
    elif fmt == "edgelist":
        out.write("\n".join(formats.edge_list(t)) + "\n\n")
    elif fmt == "dot":
        out.write(formats.to_dot(t) + "\n")
    elif fmt == "order":
        out.write(" ".join(str(v) for v in discovery_order(t)) + "\n")


def _input_lines(stdin: TextIO) -> Iterable[str]:
    for line in stdin:
        if line.strip():
            yield line


def _infer_context(t) -> str:
    if isinstance(t, MarkedTree):
        return "marked"
    if isinstance(t, RootedForest):
        return "forest"
    if isinstance(t, UnrootedTree):
        return "unrooted"
    if isinstance(t, DegreeTree):
        return "degree"
    return "rooted"


def _seed(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    print(f"# seed={seed}", file=sys.stderr)
    return seed


# ---------------------------------------------------------------------------
# Subcommands


def cmd_encode(args, stdin: TextIO, out: TextIO) -> None:
    lines = [args.tree] if args.tree else _input_lines(stdin)
    for line in lines:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TreeValidationError(f"malformed JSON: {exc}") from None
        meta = obj.get("meta")
        t = formats.tree_from_json(obj)
        ctx = args.context or _infer_context(t)
        extra: dict = {}
        if ctx == "rooted":
            seq, extra = encode_rooted(t), {"n": t.n}
        elif ctx == "unrooted":
            if isinstance(t, RootedTree):
                t = t.unrooted()
            seq, extra = encode_unrooted(t, args.variant), {"n": t.n}
        elif ctx == "marked":
            seq, extra = encode_marked(t), {"n": t.tree.n, "r": len(t.marks)}
        elif ctx == "forest":
            seq, extra = encode_forest(t), {"n": t.n, "roots": t.roots}
        elif ctx in ("degree", "modified"):
            if not isinstance(t, DegreeTree):
                raise TreeValidationError("degree contexts need a degree-tree JSON object")
            seq = encode_degree(t) if ctx == "degree" else encode_modified(t)
            extra = {"degrees": t.degrees.d}
        if args.format == "text":
            out.write(formats.code_to_text(seq) + "\n")
        else:
            wrapper = formats.code_to_json(ctx, seq, meta=meta, **extra)
            if ctx == "unrooted" and args.variant != "root1":
                wrapper["variant"] = args.variant
            out.write(formats.dumps(wrapper) + "\n")


def _decode_one(ctx: str, seq, params: dict, variant: str):
    n = params.get("n")
    if ctx == "rooted":
        return decode_rooted(seq, n)
    if ctx == "unrooted":
        return decode_unrooted(seq, n, variant)
    if ctx == "marked":
        return decode_marked(seq, _need(params.get("r"), "--r"), n)
    if ctx == "forest":
        return decode_forest(seq, _need(n, "--n"), _need(params.get("roots"), "--roots"))
    degrees = DegreeSequence(tuple(_need(params.get("degrees"), "--degrees")))
    return decode_degree(seq, degrees) if ctx == "degree" else decode_modified(seq, degrees)


def cmd_decode(args, stdin: TextIO, out: TextIO) -> None:
    flags = {"n": args.n, "r": args.r, "roots": args.roots, "degrees": args.degrees}
    if args.seq is not None:
        items = [({}, formats.code_from_text(args.seq))]
    else:
        items = []
        for line in _input_lines(stdin):
            if line.lstrip().startswith("{"):
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise TreeValidationError(f"malformed JSON: {exc}") from None
                items.append((obj, tuple(obj.get("seq", ()))))
            else:
                items.append(({}, formats.code_from_text(line)))
    for obj, seq in items:
        params = {k: obj.get(k, v) if v is None else v for k, v in flags.items()}
        ctx = args.context or obj.get("context") or "rooted"
        variant = obj.get("variant", args.variant)
        t = _decode_one(ctx, seq, params, variant)
        if args.format == "order" and not isinstance(t, DegreeTree):
            raise UsageError("--format order applies to degree contexts only")
        _emit_tree(t, args.format, out, obj.get("meta"))


def _sample_one(args, rng: np.random.Generator):
    fam = args.family
    if fam == "rooted":
        return sampling.sample_uniform_rooted(_need(args.n, "--n"), rng)
    if fam == "unrooted":
        return sampling.sample_uniform_unrooted(_need(args.n, "--n"), rng)
    if fam == "marked":
        return sampling.sample_uniform_marked(_need(args.n, "--n"), _need(args.r, "--r"), rng)
    if fam == "type":
        return sampling.sample_uniform_type(_need(args.type_vector, "--type"), rng)
    if fam == "forest":
        return sampling.sample_uniform_forest(_need(args.n, "--n"), _need(args.roots, "--roots"), rng)
    return sampling.sample_uniform_degree(DegreeSequence(tuple(_need(args.degrees, "--degrees"))), rng)


def cmd_sample(args, stdin, out: TextIO) -> None:
    seed = _seed(args)
    rng = make_rng(seed, 0)
    for i in range(args.samples):
        t = _sample_one(args, rng)
        meta = {**metadata(seed, 0), "index": i}
        _emit_tree(t, args.format, out, meta)


def cmd_grow(args, stdin, out: TextIO) -> None:
    seed = _seed(args)
    rng = make_rng(seed, 0)
    chain = grow_dary_chain(args.d, args.m_max, rng, labeled=args.emit == "labeled")
    for step, t in enumerate(chain, 1):
        if args.emit == "labeled":
            obj = {"step": step, **formats.tree_to_json(t)}
        else:
            obj = {"step": step, "shape": shape_to_str(t)}
        obj["meta"] = metadata(seed, 0)
        out.write(formats.dumps(obj) + "\n")


def cmd_count(args, stdin, out: TextIO) -> None:
    fam = args.family
    if fam == "rooted":
        value = oracle.count_rooted(_need(args.n, "--n"))
    elif fam == "unrooted":
        value = oracle.count_unrooted(_need(args.n, "--n"))
    elif fam == "marked":
        value = oracle.count_marked(_need(args.n, "--n"), _need(args.r, "--r"))
    elif fam == "type":
        t = _need(args.type_vector, "--type")
        t.check()
        value = oracle.count_type(t)
    elif fam == "forest":
        value = oracle.count_forests(_need(args.n, "--n"), len(set(_need(args.roots, "--roots"))))
    else:
        value = oracle.count_degree(DegreeSequence(tuple(_need(args.degrees, "--degrees"))))
    out.write(f"{value}\n")


def cmd_enumerate(args, stdin, out: TextIO) -> None:
    fam = args.family
    if fam == "rooted":
        it = oracle.enumerate_rooted(_need(args.n, "--n"), workers=args.workers)
    elif fam == "unrooted":
        it = oracle.enumerate_unrooted(_need(args.n, "--n"))
    elif fam == "type":
        wanted = _need(args.type_vector, "--type")
        it = (x for x in oracle.enumerate_rooted(wanted.n, workers=args.workers) if type_of(x) == wanted)
    elif fam == "forest":
        it = oracle.enumerate_forests(_need(args.n, "--n"), _need(args.roots, "--roots"))
    else:
        it = oracle.enumerate_degree_trees(DegreeSequence(tuple(_need(args.degrees, "--degrees"))))
    for t in it:
        _emit_tree(t, args.format, out)


def _family_from_args(args) -> statistics.Family:
    return statistics.Family(
        args.family,
        n=args.n,
        type=args.type_vector,
        degrees=tuple(args.degrees) if args.degrees else None,
        roots=tuple(args.roots) if args.roots else None,
    )


def _write_pmf(pmf: statistics.Pmf, out: TextIO) -> None:
    out.write("value,count,prob\n")
    for v, p in zip(pmf.support, pmf.probs):
        out.write(f"{v},,{float(p)!r}\n")


def cmd_stats(args, stdin, out: TextIO) -> None:
    stat = args.stat
    if args.mode == "exact" and stat in ("leafdepth", "vertexdepth", "height"):
        n = _need(args.n, "--n")
        if stat == "leafdepth":
            pmf = statistics.pmf_min_repeat(n).shift(-1)
        elif stat == "vertexdepth":
            pmf = statistics.pmf_uniform_vertex_depth(n)
        else:
            if args.family != "rooted":
                raise UsageError("exact heights are available for --family rooted only")
            pmf = statistics.Pmf.from_mapping(oracle.exact_height_distribution(n))
        _write_pmf(pmf, out)
        return

    seed = _seed(args)
    meta = {"seed": seed, "workers": args.workers}
    if stat == "rayleigh":
        n = _need(args.n, "--n")
        ks = statistics.rayleigh_ks(n, args.samples, make_rng(seed, 0), args.sim)
        out.write(formats.dumps({"n": n, "samples": args.samples, "sim": args.sim, "ks": ks, "meta": metadata(seed, 0)}) + "\n")
        return
    if stat == "dominance":
        t = _need(args.type_vector, "--type")
        a, b = _need(args.cover, "--cover")
        move = sampling.CoveringMove(a, b)
        hn, hm = statistics.coupled_heights(t, move, args.samples, make_rng(seed, 0))
        rep = statistics.dominance_report(statistics.EmpiricalDist.from_values(hn), statistics.EmpiricalDist.from_values(hm))
        obj = {"stat": "height", "type_a": str(t), "type_b": str(move.apply(t)), **rep.as_dict(), "meta": metadata(seed, 0)}
        out.write(formats.dumps(obj) + "\n")
        return

    if stat == "leafdepth":
        parts = run_streams(statistics.leaf_depth_samples, args.samples, seed, args.workers, (_need(args.n, "--n"),))
    elif stat == "vertexdepth":
        parts = run_streams(statistics.vertex_depth_samples, args.samples, seed, args.workers, (_need(args.n, "--n"), args.sim))
    else:
        parts = run_streams(statistics.height_samples, args.samples, seed, args.workers, (_family_from_args(args),))
    dist = statistics.EmpiricalDist.from_values(np.concatenate(parts), meta)
    out.write("\n".join(dist.csv_rows()) + "\n")


def cmd_verify(args, stdin, out: TextIO) -> int:
    results = verify.run_suite(args.suite)
    for r in results:
        out.write(r.line() + "\n")
    ok = all(r.passed for r in results)
    out.write(f"{'PASS' if ok else 'FAIL'}  suite {args.suite}\n")
    return 0 if ok else 1


COMMANDS = {
    "encode": cmd_encode,
    "decode": cmd_decode,
    "sample": cmd_sample,
    "grow": cmd_grow,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "stats": cmd_stats,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return 2
    try:
        rc = COMMANDS[args.command](args, stdin, stdout)
    except (TreeValidationError, UsageError, oracle.CapExceeded, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
