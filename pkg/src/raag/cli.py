"""Command-line front end.

Four subcommands: build (construct and transform complexes), homology (exact
homology tables), classify (entropy verdict with certificate), growth (mod-p
betti numbers of finite covers).  Machine-readable output goes to stdout or
the -o file; human-readable summaries go to stderr, so pipes stay clean.

Exit codes: 0 success or classified; 3 undetermined; 10 malformed input or
unknown fixture; 11 input not flag; 12 witness rejected; 13 degenerate
quotient; 14 bad cover spec or prime; 15 internal consistency failure;
20 unexpected error.  RAAG_THREADS > 1 parallelizes cover computations.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from typing import List, Optional, Sequence, Tuple

from . import io as rio
from .classify import UNDETERMINED, classify, report
from .errors import (CorruptComplexError, CoverSpecError, FixtureError,
                     MalformedComplexError, NotFlagError, QuotientDegenerateError,
                     RaagError, WitnessRejectedError)
from .fixtures import FIXTURE_NAMES, fixture
from .growth import growth_experiment
from .homology import homology_summary, uct_betti_fp
from .linalg import prime_factors
from .models import standard_spec
from .simplicial import (SimplicialComplex, barycentric_subdivision, cone,
                         flag_completion, is_flag, join, simplicial_quotient)

_FLAG_COMPLETION_NOTICE = (
    "NOTE: --flag-completion replaces the input by the clique complex of its "
    "1-skeleton; missing higher faces are filled in, which defines a "
    "different group than the raw input would.")


class _PipelineStep(argparse.Action):
    """Record transform flags in the order they appear on the command line."""

    def __call__(self, parser, namespace, values, option_string=None):
        steps = list(getattr(namespace, "pipeline", None) or [])
        steps.append((self.dest, values if values else None))
        namespace.pipeline = steps


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", default=None,
                   help="facet-list JSON file (alternative to --fixture)")
    p.add_argument("--fixture", default=None, metavar="NAME",
                   help=f"named fixture; one of: {', '.join(FIXTURE_NAMES)}")
    p.add_argument("--n", type=int, default=None,
                   help="size parameter for parametrized fixtures")
    p.add_argument("--q", type=int, default=None,
                   help="torsion order for moore fixtures")
    p.add_argument("-o", "--output", default=None, metavar="PATH",
                   help="write the machine-readable result here instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raag",
        description="classify right-angled Artin groups by minimal volume "
                    "entropy and run homology-growth experiments on finite "
                    "covers of their cube complexes")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a complex and apply transforms")
    _add_input_args(b)
    b.add_argument("--sd", nargs=0, action=_PipelineStep,
                   help="barycentric subdivision (pipeline step)")
    b.add_argument("--cone", nargs=0, action=_PipelineStep,
                   help="cone with a fresh apex (pipeline step)")
    b.add_argument("--join", action=_PipelineStep, metavar="PATH",
                   help="join with the complex in PATH (pipeline step)")
    b.add_argument("--quotient", action=_PipelineStep, metavar="MAPFILE",
                   help="simplicial quotient along a JSON vertex map (pipeline step)")
    b.add_argument("--flag-completion", nargs=0, action=_PipelineStep,
                   help="replace a graph by its clique complex (pipeline step; "
                        "changes the group, prints a notice)")

    h = sub.add_parser("homology", help="exact homology over Z and F_p")
    _add_input_args(h)
    h.add_argument("--primes", default=None, metavar="P,P,...",
                   help="comma-separated primes for mod-p tables "
                        "(default: 2 plus every torsion prime)")

    c = sub.add_parser("classify", help="entropy verdict with certificate")
    _add_input_args(c)
    c.add_argument("--witness", default=None, metavar="PATH",
                   help="embedding-witness JSON for the dimension-2 gap")
    c.add_argument("--budget", type=int, default=64,
                   help="randomized collapse restarts (default 64)")
    c.add_argument("--flag-completion", action="store_true",
                   help="classify the clique complex of the input's 1-skeleton "
                        "(changes the group, prints a notice)")

    g = sub.add_parser("growth", help="mod-p betti growth over finite covers")
    _add_input_args(g)
    g.add_argument("--prime", type=int, required=True, help="coefficient prime p")
    g.add_argument("--moduli", required=True, metavar="K,K,...",
                   help="comma-separated moduli; modulus k means the cover "
                        "with every generator sent to its own Z/k factor")
    return parser


def _int_list(text: str, what: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise MalformedComplexError(f"{what} must be a comma-separated integer list, got {text!r}")


def _resolve_input(ns) -> SimplicialComplex:
    if ns.fixture is not None and ns.input is not None:
        raise MalformedComplexError("give either an input file or --fixture, not both")
    if ns.fixture is not None:
        return fixture(ns.fixture, n=ns.n, q=ns.q)
    if ns.input is not None:
        return rio.load_complex(ns.input)
    raise MalformedComplexError("no input: give a facet-list JSON file or --fixture NAME")


def _emit(ns, text: str) -> None:
    if ns.output:
        with open(ns.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _flag_line(x: SimplicialComplex) -> str:
    ok, witness = is_flag(x)
    return "flag: yes" if ok else f"flag: no (minimal non-face {witness})"


def cmd_build(ns) -> int:
    x = _resolve_input(ns)
    for step, arg in getattr(ns, "pipeline", None) or []:
        if step == "sd":
            x = barycentric_subdivision(x).complex
        elif step == "cone":
            x = cone(x)
        elif step == "join":
            x = join(x, rio.load_complex(arg))
        elif step == "quotient":
            x = simplicial_quotient(x, rio.load_vertex_map(arg))
        elif step == "flag_completion":
            print(_FLAG_COMPLETION_NOTICE, file=sys.stderr)
            x = flag_completion(x)
    _emit(ns, rio.complex_json(x))
    print(f"f-vector {x.f_vector()}; {_flag_line(x)}", file=sys.stderr)
    return 0


def cmd_homology(ns) -> int:
    x = _resolve_input(ns)
    base = homology_summary(x)
    if ns.primes is None:
        primes = sorted({2} | {p for degree in base.torsion for t in degree
                              for p in prime_factors(t)})
    else:
        primes = _validated_primes(_int_list(ns.primes, "--primes"))
    summary = homology_summary(x, primes=tuple(primes))
    uct_ok = all(summary.betti_fp(p) == uct_betti_fp(summary.betti, summary.torsion, p)
                 for p in primes)

    name = x.name or (ns.input or "complex")
    lines = [f"complex {name}: f-vector {x.f_vector()}, chi {x.euler_characteristic()}"]
    header = "degree  H_i(Z)          b(Q)" + "".join(f"  b(F_{p})" for p in primes)
    lines.append(header)
    for i in range(summary.dim + 1):
        rank, torsion = summary.group(i)
        group = _group_text(rank, torsion)
        row = f"{i:<7} {group:<15} {rank:<4}"
        for p in primes:
            row += f"  {summary.betti_fp(p)[i]:<6}"
        lines.append(row)
    lines.append("universal-coefficient cross-check: " + ("ok" if uct_ok else "MISMATCH"))
    if ns.output:
        payload = {"complex": name, "f_vector": list(x.f_vector()),
                   "chi": x.euler_characteristic(),
                   "summary": summary.to_json_dict(),
                   "uct_check": "ok" if uct_ok else "mismatch"}
        _emit(ns, json.dumps(payload, indent=2, sort_keys=True))
        print("\n".join(lines), file=sys.stderr)
    else:
        print("\n".join(lines))
    if not uct_ok:
        raise CorruptComplexError("universal-coefficient cross-check failed")
    return 0


def _group_text(rank: int, torsion: Tuple[int, ...]) -> str:
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    parts.extend(f"Z/{t}" for t in torsion)
    return " + ".join(parts) if parts else "0"


def _validated_primes(ps: Sequence[int]) -> List[int]:
    for p in ps:
        if p < 2 or prime_factors(p) != (p,):
            raise CoverSpecError(f"{p} is not prime")
    return sorted(set(ps))


def cmd_classify(ns) -> int:
    x = _resolve_input(ns)
    if ns.flag_completion:
        print(_FLAG_COMPLETION_NOTICE, file=sys.stderr)
        x = flag_completion(x)
    witness = rio.load_witness(ns.witness) if ns.witness else None
    verdict = classify(x, witness=witness, budget=ns.budget)
    _emit(ns, verdict.to_json())
    print(report(x, verdict), file=sys.stderr)
    return 3 if verdict.outcome == UNDETERMINED else 0


def cmd_growth(ns) -> int:
    x = _resolve_input(ns)
    moduli = _int_list(ns.moduli, "--moduli")
    if any(k < 1 for k in moduli):
        raise CoverSpecError(f"moduli must be >= 1, got {moduli}")
    specs = [standard_spec(x, k) for k in moduli]
    series = growth_experiment(x, specs, prime=ns.prime)
    _emit(ns, series.to_csv())
    print(series.render_report(), file=sys.stderr)
    return 0


_DISPATCH = {
    "build": cmd_build,
    "homology": cmd_homology,
    "classify": cmd_classify,
    "growth": cmd_growth,
}

_ERROR_CODES: Tuple[Tuple[type, int], ...] = (
    (WitnessRejectedError, 12),
    (NotFlagError, 11),
    (QuotientDegenerateError, 13),
    (CoverSpecError, 14),
    (CorruptComplexError, 15),
    (FixtureError, 10),
    (MalformedComplexError, 10),
    (RaagError, 10),
)


def _exit_code(e: RaagError) -> int:
    for etype, code in _ERROR_CODES:
        if isinstance(e, etype):
            return code
    return 10


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if not e.code else 10
    try:
        return _DISPATCH[ns.command](ns)
    except RaagError as e:
        print(f"error: {e}", file=sys.stderr)
        return _exit_code(e)
    except Exception:
        traceback.print_exc()
        return 20


if __name__ == "__main__":
    sys.exit(main())
