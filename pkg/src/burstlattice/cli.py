"""Command-line entry point: ``burstlattice <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 unsupported parameters,
3 nothing found, 4 resource limit, 5 parse error, 64 usage error.
"""
from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import codec, constructions, search
from .errorball import BallSpec, ball_size, enumerate_ball
from .errors import BurstLatticeError, ParseError
from .gf import field_of_order
from .groups import (AbelianGroup, SplittingSequence, enumerate_abelian_groups, first_collision,
                     is_perfect_splitting, parse_group)

EXIT_OK, EXIT_VERIFY, EXIT_UNSUPPORTED, EXIT_NONE, EXIT_RESOURCE, EXIT_PARSE, EXIT_USAGE = 0, 1, 2, 3, 4, 5, 64


class UsageError(Exception):
    pass


# -- text formats ---------------------------------------------------------------------

_BALL_KEYS = ("n", "b", "kplus", "kminus", "cyclic")
_BOOL = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def format_ball(spec: BallSpec) -> str:
    return (f"ball n={spec.n} b={spec.b} kplus={spec.k_plus} kminus={spec.k_minus} "
            f"cyclic={'true' if spec.cyclic else 'false'}")


def parse_ball(text: str) -> BallSpec:
    """``ball n=3 b=2 kplus=1 kminus=0 cyclic=true`` (leading word optional),
    or the short forms ``E(3,2,1,0)``, ``E°(3,2,1,0)`` / ``Ec(3,2,1,0)``."""
    t = text.strip()
    m = re.fullmatch(r"E(°|c|o)?\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)", t)
    if m:
        n, b, kp, km = (int(g) for g in m.groups()[1:])
        return BallSpec(n, b, kp, km, m.group(1) is not None)
    words = t.split()
    if words and words[0] == "ball":
        words = words[1:]
    fields = {}
    for w in words:
        key, sep, val = w.partition("=")
        if not sep or key not in _BALL_KEYS or key in fields:
            raise ParseError(f"bad ball field {w!r} in {text!r}")
        fields[key] = val
    if set(fields) != set(_BALL_KEYS):
        raise ParseError(f"ball spec {text!r} needs fields {', '.join(_BALL_KEYS)}")
    try:
        nums = [int(fields[k]) for k in _BALL_KEYS[:4]]
        cyc = _BOOL[fields["cyclic"].lower()]
    except (ValueError, KeyError) as exc:
        raise ParseError(f"bad value in ball spec {text!r}") from exc
    return BallSpec(*nums, cyc)


def format_sequence(s: SplittingSequence) -> str:
    if len(s.group.moduli) == 1:
        return ",".join(str(v) for v in s.values())
    return ";".join(",".join(str(c) for c in t) for t in s.values())


def parse_sequence(G: AbelianGroup, text: str) -> SplittingSequence:
    t = text.strip().replace(" ", "")
    try:
        if len(G.moduli) == 1:
            vals = [int(x) for x in t.split(",")]
        else:
            vals = [tuple(int(c) for c in part.strip("()").split(",")) for part in t.split(";")]
    except ValueError as exc:
        raise ParseError(f"cannot parse sequence {text!r} for {G}") from exc
    for v in vals:
        coords = (v,) if isinstance(v, int) else v
        if len(coords) != len(G.moduli) or any(not 0 <= c < m for c, m in zip(coords, G.moduli)):
            raise ParseError(f"{v!r} is not a reduced element of {G}")
    return SplittingSequence.from_values(G, vals)


def parse_int_vector(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError as exc:
        raise ParseError(f"cannot parse integer vector {text!r}") from exc


@dataclass(frozen=True)
class CodeSpecFile:
    spec: BallSpec
    sequence: SplittingSequence

    @property
    def group(self) -> AbelianGroup:
        return self.sequence.group

    def format(self) -> str:
        return f"{format_ball(self.spec)}\n{self.group}\n{format_sequence(self.sequence)}\n"

    @classmethod
    def parse(cls, text: str) -> "CodeSpecFile":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if len(lines) != 3:
            raise ParseError(f"code spec needs 3 lines (ball, group, sequence), got {len(lines)}")
        spec = parse_ball(lines[0])
        G = parse_group(lines[1])
        return cls(spec, parse_sequence(G, lines[2]))

    @classmethod
    def read(cls, path) -> "CodeSpecFile":
        try:
            return cls.parse(Path(path).read_text())
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc


def _vec(v) -> str:
    return ",".join(str(int(x)) for x in v)


# -- subcommands -------------------------------------------------------------------------

def _ball_from_args(a) -> BallSpec:
    if a.ball:
        return parse_ball(a.ball)
    if a.n is None or a.b is None:
        raise UsageError("give --ball or at least --n and --b")
    return BallSpec(a.n, a.b, a.kplus, a.kminus, a.cyclic)


def cmd_ball(a, out) -> int:
    spec = _ball_from_args(a)
    print(f"{spec} size={ball_size(spec)} e={spec.e}", file=out)
    if a.list:
        for row in enumerate_ball(spec):
            print(_vec(row), file=out)
    return EXIT_OK


def _code_input(a) -> CodeSpecFile:
    if a.code:
        return CodeSpecFile.read(a.code)
    if not (a.ball and a.group and a.seq):
        raise UsageError("give --code FILE or all of --ball, --group and --seq")
    G = parse_group(a.group)
    return CodeSpecFile(parse_ball(a.ball), parse_sequence(G, a.seq))


def cmd_verify(a, out) -> int:
    cs = _code_input(a)
    spec, s = cs.spec, cs.sequence
    if len(s) != spec.n:
        print(f"FAIL: sequence length {len(s)} differs from n={spec.n}", file=out)
        return EXIT_VERIFY
    hit = first_collision(spec, s)
    size = ball_size(spec)
    if hit is not None:
        dense = enumerate_ball(spec) if spec.n * size <= 10**7 else None
        i, j = hit
        print(f"FAIL: {s.group} with {format_sequence(s)} does not split {spec}", file=out)
        if dense is not None:
            print(f"collision: {_vec(dense[i])} and {_vec(dense[j])}", file=out)
        else:
            print(f"collision: ball rows {i} and {j}", file=out)
        return EXIT_VERIFY
    if size != s.group.order:
        print(f"FAIL: splitting but not perfect: |{spec}|={size}, |{s.group}|={s.group.order}", file=out)
        return EXIT_VERIFY
    print(f"OK: perfect splitting of {s.group} by {spec}", file=out)
    return EXIT_OK


def cmd_construct(a, out) -> int:
    kind = a.kind
    if kind in ("nc210", "c210"):
        if a.n is None:
            raise UsageError(f"--kind {kind} needs --n")
        if kind == "nc210":
            s, spec = constructions.construct_noncyclic_2_10(a.n), BallSpec(a.n, 2, 1, 0, False)
        else:
            s, spec = constructions.construct_cyclic_2_10(a.n), BallSpec(a.n, 2, 1, 0, True)
    else:
        if a.q is None:
            raise UsageError(f"--kind {kind} needs --q")
        F = field_of_order(a.q)
        fam = constructions.R_ALPHA if kind == "ralpha" else constructions.resolve_family((a.b, a.kplus, a.kminus))
        fam.check_admissible(F.q)
        if a.alpha is not None:
            alpha = a.alpha
        else:
            hit = constructions.find_primitive(F, fam)
            if hit is None:
                print(f"none: no primitive element of {F} satisfies the condition for {fam.name}", file=out)
                return EXIT_NONE
            alpha = hit[0]
        if kind == "ralpha":
            s = constructions.construct_ralpha(F, alpha, verify=False)
            spec = BallSpec(len(s), 2, 1, 1, True)
        else:
            s = constructions.construct_salpha(F, a.b, a.kplus, a.kminus, alpha, verify=False)
            spec = BallSpec(len(s), a.b, a.kplus, a.kminus, True)
    if a.verify and first_collision(spec, s) is not None:
        print(f"FAIL: construction does not split {spec}", file=out)
        return EXIT_VERIFY
    text = CodeSpecFile(spec, s).format()
    if a.out:
        Path(a.out).write_text(text)
    out.write(text)
    return EXIT_OK


def cmd_search(a, out) -> int:
    spec = _ball_from_args(a)
    opts = search.SearchOptions(prune_orbit=not a.no_prune_orbit, prune_rotation=not a.no_prune_rotation,
                                node_budget=a.node_budget, checkpoint=a.checkpoint, jobs=a.jobs)
    if a.group:
        groups = [parse_group(a.group)]
    elif a.group_order is not None:
        groups = enumerate_abelian_groups(a.group_order)
        if not a.all_groups:
            groups = groups[:1]
    else:
        raise UsageError("give --group or --group-order")
    found = False
    for G in groups:
        rep = search.search_splitting(spec, G, opts)
        if rep.found:
            found = True
            out.write(CodeSpecFile(spec, rep.sequence).format())
        else:
            print(f"none: {G} is not split by {spec}", file=out)
        print(f"# nodes={rep.nodes_visited}", file=out)
    return EXIT_OK if found else EXIT_NONE


def table_report(which: str, q_max: int = 1000, confirm_search: bool = False) -> str:
    """Plain-text report, one record per line."""
    lines = []
    if which == "2":
        for thm in search.TABLE2_ROWS:
            good, bad = search.reproduce_table2(thm, q_max)
            lines.append(f"{thm} q_max={q_max} good_count={len(good)} bad_count={len(bad)}")
            lines.append(f"{thm} bad={_vec(bad)}")
            lines.append(f"{thm} good={_vec(good)}")
    elif which == "goodq220":
        good = search.scan_good_q_220(q_max)
        lines.append(f"goodq220 q_max={q_max} count={len(good)}")
        lines.append(f"goodq220 good={_vec(good)}")
    elif which in ("3", "4", "5"):
        for spec, G, seq in search.table_rows(int(which)):
            s = SplittingSequence.from_values(G, seq)
            ok = is_perfect_splitting(spec, s)
            line = f"table={which} n={spec.n} group={G} ball={spec} seq={_vec(seq)} verified={'yes' if ok else 'no'}"
            if confirm_search:
                rep = search.search_splitting(spec, G)
                line += f" search={format_sequence(rep.sequence) if rep.found else 'none'}"
            lines.append(line)
    else:
        raise UsageError(f"unknown table {which!r}")
    return "\n".join(lines) + "\n"


def cmd_tables(a, out) -> int:
    text = table_report(a.which, a.qmax, a.search)
    out.write(text)
    if "verified=no" in text:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_decode(a, out) -> int:
    cs = CodeSpecFile.read(a.code)
    code = codec.code_from_splitting(cs.spec, cs.sequence)
    x, e = codec.decode(code, parse_int_vector(a.y))
    print(f"codeword {_vec(x)}", file=out)
    print(f"error {_vec(e)}", file=out)
    return EXIT_OK


def cmd_simulate(a, out) -> int:
    cs = CodeSpecFile.read(a.code)
    code = codec.code_from_splitting(cs.spec, cs.sequence)
    rng = np.random.default_rng(a.seed)
    k = len(code.free_positions)
    fails = 0
    for _ in range(a.trials):
        x = codec.encode(code, rng.integers(-a.magnitude, a.magnitude + 1, size=k))
        y = codec.inject_burst(cs.spec, x, rng=rng)
        xh, eh = codec.decode(code, y)
        if not (np.array_equal(xh, x) and np.array_equal(x + eh, y)):
            fails += 1
    print(f"trials {a.trials}", file=out)
    print(f"successes {a.trials - fails}", file=out)
    print(f"fails {fails}", file=out)
    return EXIT_OK if fails == 0 else EXIT_VERIFY


# -- parser -------------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_ball_args(p):
    p.add_argument("--ball", help='e.g. "n=3 b=2 kplus=1 kminus=0 cyclic=true" or "E°(3,2,1,0)"')
    p.add_argument("--n", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--kplus", type=int, default=1)
    p.add_argument("--kminus", type=int, default=0)
    p.add_argument("--cyclic", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="burstlattice", description="Perfect lattice codes for limited-magnitude bursts.")
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)

    p = sub.add_parser("ball", help="size (and optionally all vectors) of an error ball")
    _add_ball_args(p)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("verify", help="check a perfect splitting")
    p.add_argument("--code", help="code spec file")
    p.add_argument("--ball")
    p.add_argument("--group")
    p.add_argument("--seq")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="explicit constructions")
    p.add_argument("--kind", required=True, choices=["nc210", "c210", "salpha", "ralpha"])
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--kplus", type=int, default=1)
    p.add_argument("--kminus", type=int, default=0)
    p.add_argument("--alpha", type=int, help="field element index (default: first suitable primitive)")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", help="also write the code spec file here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="exhaustive splitting search")
    _add_ball_args(p)
    p.add_argument("--group")
    p.add_argument("--group-order", type=int)
    p.add_argument("--all-groups", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checkpoint")
    p.add_argument("--node-budget", type=int, default=search.DEFAULT_NODE_BUDGET)
    p.add_argument("--no-prune-orbit", action="store_true")
    p.add_argument("--no-prune-rotation", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("tables", help="reproduce the reference tables")
    p.add_argument("--which", required=True, choices=["2", "3", "4", "5", "goodq220"])
    p.add_argument("--qmax", type=int, default=1000)
    p.add_argument("--search", action="store_true", help="also confirm rows 3-5 by search")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("decode", help="syndrome-decode one received vector")
    p.add_argument("--code", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="encode / inject a burst / decode round trips")
    p.add_argument("--code", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--magnitude", type=int, default=1000, help="message entries drawn from [-M, M]")
    p.set_defaults(func=cmd_simulate)
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.cmd is None:
            raise UsageError("missing subcommand")
        return args.func(args, out)
    except UsageError as exc:
        print(ap.format_usage().rstrip(), file=err)
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except BurstLatticeError as exc:
        print(f"error: {exc}", file=err)
        return exc.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
