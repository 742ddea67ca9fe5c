"""``tango`` command line.

    tango verify [--profile quick|full] [--claim ID ...] [--window lo..hi]
                 [--json out.json] [--threads n] [--scenario FILE]
    tango run FILE                 execute the jobs of a scenario file
    tango table NAME [--window lo..hi]
    tango bbw [C|Sym2C] [--window lo..hi]
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional, Sequence, Tuple

from .. import bbw, chow
from ..gb import SubmoduleOfFree
from ..module import GradedModule, free_resolution, hilbert_polynomial
from ..qpoly import format_qpoly
from ..sheafcoh import cohomology_table, render_table
from .objects import Objects
from .report import emit_report
from .scenario import DERIVED, Job, Scenario, ScenarioError, load_default, load_scenario
from .suite import PROFILES, run_verification_suite

log = logging.getLogger("tango")


def parse_window(text: str) -> Tuple[int, int]:
    """'lo..hi' -> (lo, hi)."""
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"window must look like lo..hi, got {text!r}")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window bounds must be integers, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty window {text!r}")
    return a, b


def _module(objects: Objects, name: str) -> GradedModule:
    if name in DERIVED:
        return objects.get(name)
    if name in objects.scenario.matrices:
        return GradedModule(objects.scenario.matrices[name])
    raise ScenarioError(f"{name!r} does not name a module")


def bbw_lines(bundle: str, window: Tuple[int, int]) -> List[str]:
    weight = {"C": bbw.cayley_weight, "Sym2C": bbw.sym2_cayley_weight}[bundle]
    lines = [f"{bundle}(t)   i  dim"]
    for t, i, d in bbw.bbw_table(weight(0), range(window[0], window[1] + 1)):
        lines.append(f"{t:>6}  {'-' if i is None else i:>3}  {d:>3}")
    return lines


def run_job(job: Job, objects: Objects, out=None) -> int:
    """Execute one scenario job, printing its result; returns an exit code."""
    out = out if out is not None else sys.stdout
    a = job.args
    if job.kind == "gb":
        A = objects.scenario.matrices[a[0]]
        sub = SubmoduleOfFree(A.ring, A.tgt, A.cols)
        gb = sub.engine_gb()
        print(f"gb {a[0]}: {len(gb.lead_exps)} elements", file=out)
    elif job.kind == "res":
        print(free_resolution(_module(objects, a[0])).betti().render(), file=out)
    elif job.kind == "coh":
        lo, hi = (int(a[1]), int(a[2])) if len(a) >= 3 else (-4, 4)
        print(render_table(cohomology_table(_module(objects, a[0]), lo, hi)), file=out)
    elif job.kind == "chern":
        M = _module(objects, a[0])
        hp = hilbert_polynomial(M)
        ambient = chow.Q5 if M.ring.relation is not None else chow.P5
        rank = int(hp.coeffs[-1] * 120 / ambient.degree) if hp.coeffs else 0
        cv = chow.chern_from_hilbert(hp, ambient, rank)
        print(f"chern {a[0]}: rank {rank}, classes {tuple(int(x) for x in cv.coordinates())}, "
              f"chi = {format_qpoly(hp)}", file=out)
    elif job.kind == "bbw":
        bundle = a[0] if a else "C"
        window = parse_window(a[1]) if len(a) > 1 else (-6, 4)
        print("\n".join(bbw_lines(bundle, window)), file=out)
    elif job.kind == "monad":
        spec = objects.monad_specs[0]
        res = objects.monad
        print(f"monad: left {spec.left}, middle {spec.middle}; beta*alpha = 0: {res.beta_alpha_zero}; "
              f"cohomology {res.cohomology}", file=out)
        for d in spec.diagnostics:
            print(f"  note: {d}", file=out)
    elif job.kind == "pushforward":
        parity = int(a[1]) if len(a) > 1 else 0
        pf = objects.pushforward(a[0], parity)
        print(f"pushforward {a[0]} parity {parity}: generators {pf.generator_degrees()}, "
              f"relations {pf.relation_degrees()}", file=out)
    elif job.kind == "verify-paper":
        profile = a[0] if a else "quick"
        text, code = emit_report(run_verification_suite(profile, objects=objects))
        out.write(text)
        return code
    return 0


def with_fixtures(sc: Scenario) -> Scenario:
    """The shipped fixtures overlaid with the declarations of ``sc``."""
    base = load_default()
    return Scenario({**base.rings, **sc.rings}, {**base.matrices, **sc.matrices},
                    {**base.maps, **sc.maps}, {**base.exteriors, **sc.exteriors}, list(sc.jobs))


def run_scenario(sc: Scenario, out=None) -> int:
    objects = Objects(with_fixtures(sc))
    code = 0
    for job in sc.jobs:
        code = max(code, run_job(job, objects, out))
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tango", description="Tango bundle on P^5 in characteristic 2")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--profile", choices=PROFILES, default="quick")
    v.add_argument("--claim", action="append", default=None, metavar="ID")
    v.add_argument("--window", type=parse_window, default=None)
    v.add_argument("--json", dest="json_path", default=None, metavar="OUT")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--scenario", default=None, help="fixture file (default: the shipped tango.scn)")
    v.add_argument("--no-timing", action="store_true", help="zero the timing fields (byte-stable output)")

    r = sub.add_parser("run", help="execute the jobs of a scenario file")
    r.add_argument("file")

    t = sub.add_parser("table", help="render a cohomology table")
    t.add_argument("name", choices=DERIVED)
    t.add_argument("--window", type=parse_window, default=(-4, 4))

    b = sub.add_parser("bbw", help="Borel-Bott-Weil table on Q_5")
    b.add_argument("bundle", nargs="?", choices=("C", "Sym2C"), default="C")
    b.add_argument("--window", type=parse_window, default=(-6, 4))
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "verify":
            sc = load_scenario(args.scenario) if args.scenario else load_default()
            verdicts = run_verification_suite(args.profile, only=args.claim, window=args.window,
                                              threads=args.threads, objects=Objects(sc))
            text, code = emit_report(verdicts, args.json_path, timing=not args.no_timing)
            sys.stdout.write(text)
            return code
        if args.command == "run":
            return run_scenario(load_scenario(args.file))
        if args.command == "table":
            M = Objects().get(args.name)
            print(render_table(cohomology_table(M, *args.window)))
            return 0
        if args.command == "bbw":
            print("\n".join(bbw_lines(args.bundle, args.window)))
            return 0
    except (ScenarioError, KeyError, OSError) as exc:
        print(f"tango: error: {exc}", file=sys.stderr)
        return 2
    return 0
