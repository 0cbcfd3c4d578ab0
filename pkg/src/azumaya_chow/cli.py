"""Command-line front end.

Subcommands::

    run SCRIPT [--json OUT] [--seed K] [--fail-fast]
    selftest [--seeds N] [--dims-max D]
    sweep-pairing [--n-max N] [--genus-list g0,g1,...]

Exit status is 0 when every entry passes, 1 when some check fails and 2 on
usage or syntax errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .checks import DEFAULT_DIMS_MAX, LEMMAS
from .runner import Report, RunOptions, execute
from .script import ScriptSyntaxError, UseBeforeDeclare, parse_and_resolve


def pairing_sweep_source(n_max: int = 8, genera=(0, 1, 2, 3)) -> str:
    genus_list = ", ".join(str(g) for g in genera)
    return f"""\
# c1 of the A-Deligne pairing against -pi_*(c1^A(M) c1^A(N))
tangent T
sweep n in 1 .. {n_max} {{
  sweep g in [{genus_list}] {{
    azumaya A rank n^2
    module M over A rank n^2
    module N over A rank n^2
    check pairing(M, N, A, T, g=g)
  }}
}}
"""


def selftest_source(seeds: int = 100, dims_max: int = DEFAULT_DIMS_MAX) -> str:
    lemma_checks = "\n".join(f"check isometry({lemma}, seeds={seeds})" for lemma in LEMMAS)
    return (
        pairing_sweep_source()
        + f"""\
# closed forms for ch(A)^(-1/2), c1^A and ch(A)
sweep n in 1 .. 8 {{
  azumaya A rank n^2
  module M over A rank n^2
  check ch_inverse_sqrt(A)
  check a_c1(M, A)
  check azumaya_ch(A)
}}
# isometry lemmas on seeded Hermitian spaces (dims <= {dims_max}, <= 3 for natiso)
{lemma_checks}
# rank-2 Chern character / Todd class against the splitting principle
check splitting(seeds=50)
# ring axioms and unit inversion
check ring(seeds=200)
"""
    )


def _emit(report: Report, json_path: str | None, quiet: bool = False) -> int:
    for line in report.output:
        print(line)
    if not quiet:
        print(report.summary())
    if json_path:
        Path(json_path).write_text(report.dumps() + "\n")
    return 0 if report.ok else 1


def _run_source(source: str, options: RunOptions, json_path: str | None, where: str) -> int:
    try:
        script = parse_and_resolve(source)
    except (ScriptSyntaxError, UseBeforeDeclare) as exc:
        print(f"{where}:{exc}", file=sys.stderr)
        return 2
    return _emit(execute(script, options), json_path)


def _genus_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="azumaya-chow", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a .akv script")
    run.add_argument("script")
    run.add_argument("--json", metavar="OUT", help="write the JSON report here")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--fail-fast", action="store_true")

    st = sub.add_parser("selftest", help="run the built-in verification suite")
    st.add_argument("--seeds", type=int, default=100, help="instances per isometry lemma")
    st.add_argument("--dims-max", type=int, default=DEFAULT_DIMS_MAX)
    st.add_argument("--json", metavar="OUT")

    sw = sub.add_parser("sweep-pairing", help="check the pairing identity over n and g")
    sw.add_argument("--n-max", type=int, default=8)
    sw.add_argument("--genus-list", type=_genus_list, default=[0, 1, 2, 3])
    sw.add_argument("--json", metavar="OUT")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        try:
            source = Path(args.script).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"cannot read {args.script}: {exc}", file=sys.stderr)
            return 2
        options = RunOptions(seed=args.seed, fail_fast=args.fail_fast)
        return _run_source(source, options, args.json, args.script)
    if args.command == "selftest":
        if args.seeds < 1 or args.dims_max < 1:
            print("--seeds and --dims-max must be positive", file=sys.stderr)
            return 2
        source = selftest_source(args.seeds, args.dims_max)
        return _run_source(source, RunOptions(dims_max=args.dims_max), args.json, "<selftest>")
    if args.n_max < 1:
        print("--n-max must be positive", file=sys.stderr)
        return 2
    source = pairing_sweep_source(args.n_max, args.genus_list)
    return _run_source(source, RunOptions(), args.json, "<sweep-pairing>")


if __name__ == "__main__":
    sys.exit(main())
