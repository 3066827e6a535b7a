"""Command-line interface: ``ldoi <command> ...``.

Triples travel as JSON (file path or ``-`` for stdin). Exit codes: 0 success,
2 validation failure, 3 numeric-tolerance failure, 4 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__, io
from .discriminate import EQUAL_SPECTRUM, NotUnitaryError as DiscriminateNotUnitary
from .discriminate import k_bound, k_copies, local_range_sample
from .embed import NotLDOIError, embed
from .entangle import NotUnitaryError as EntangleNotUnitary
from .entangle import fourier_matrix, profile
from .hadamardness import SearchRangeError, SignMatrix, exhaustive_min, h_measure
from .reproduce import SUITES
from .schmidt import make_rank, schmidt_coefficients, schmidt_rank
from .special import DualFamily, check_special, make_dual, random_projection
from .triples import InvarianceClass, TripleError, validate
from .unitary import Field, check_unitary, random_unitary

EXIT_OK, EXIT_VALIDATION, EXIT_TOLERANCE, EXIT_USAGE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class ToleranceFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    command_line: list
    seeds: dict
    version: str
    wall_time: float
    output_digest: str


def digest(text):
    return hashlib.sha256(text.encode()).hexdigest()


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _triple(path, check=True):
    t = io.load_triple(_read(path))
    if check:
        rep = validate(t)
        if not rep.ok:
            raise TripleError("invalid LDOI triple: " + "; ".join(rep.violations))
    return t


def _emit(out, text):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _complex(text):
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    if len(parts) == 1:
        parts.append(0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    return complex(*parts)


def _k_json(k):
    return "equal-spectrum" if k is EQUAL_SPECTRUM else k


# commands


def cmd_embed(args):
    X = embed(_triple(args.triple))
    if args.format == "csv":
        _emit(args.output, io.dense_to_csv(X))
    else:
        _emit(args.output, io.dumps({"dim": X.shape[0], "matrix": io.complex_grid(X)}))


def cmd_sample(args):
    t = random_unitary(args.dim, InvarianceClass.parse(args.cls), Field.parse(args.field), seed=args.seed)
    _emit(args.output, io.dump_triple(t))


def cmd_check(args):
    t = _triple(args.triple, check=False)
    rep = validate(t, InvarianceClass.parse(args.cls))
    if not rep.ok:
        raise TripleError("invalid triple: " + "; ".join(rep.violations))
    _emit(args.output, io.dumps(check_unitary(t, Field.parse(args.field)).to_dict()))


def cmd_dual_make(args):
    family = DualFamily.parse(args.family)
    d = args.dim
    if family is DualFamily.LDUI_PHASES:
        if args.seed is None:
            C = fourier_matrix(d)
        else:
            rng = np.random.default_rng(args.seed)
            C = np.exp(2j * np.pi * rng.random((d, d)))
        t = make_dual(d, family, C=C)
    else:
        if args.seed is None:
            raise UsageError(f"--seed is required for the {family.value} family")
        rng = np.random.default_rng(args.seed)
        rank = args.proj_rank if args.proj_rank is not None else int(rng.integers(0, d + 1))
        if not 0 <= rank <= d:
            raise UsageError("--proj-rank must lie in 0..d")
        P = random_projection(d, rank, seed=int(rng.integers(2**63)))
        t = make_dual(d, family, P=P, omega=args.omega)
    _emit(args.output, io.dump_triple(t))


def cmd_dual_check(args):
    _emit(args.output, io.dumps(check_special(_triple(args.triple)).to_dict()))


def cmd_schmidt_rank(args):
    _emit(args.output, io.dumps({"rank": schmidt_rank(_triple(args.triple))}))


def cmd_schmidt_spectrum(args):
    _emit(args.output, io.dumps(schmidt_coefficients(_triple(args.triple)).to_dict()))


def cmd_schmidt_make(args):
    try:
        t = make_rank(args.dim, args.rank, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(args.output, io.dump_triple(t))


def cmd_entangle_profile(args):
    _emit(args.output, io.dumps(profile(_triple(args.triple), oracle=args.oracle).to_dict()))


def cmd_hadamardness_min(args):
    res = exhaustive_min(args.dim, workers=args.workers, backend=args.backend)
    out = res.to_dict()
    if not args.timing:
        out.pop("elapsed")
    _emit(args.output, io.dumps(out))


def cmd_hadamardness_eval(args):
    M = io.load_matrix(_read(args.matrix))
    h = h_measure(M)
    d = M.dim if isinstance(M, SignMatrix) else M.shape[0]
    _emit(args.output, io.dumps({"dim": d, "h": h, "lower_bound": d ** 3}))


def cmd_discriminate_k(args):
    t1, t2 = _triple(args.a), _triple(args.b)
    out = {"k": _k_json(k_copies(t1, t2)), "k_bound": _k_json(k_bound(t1, t2))}
    _emit(args.output, io.dumps(out))


def cmd_discriminate_local_range(args):
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    t = _triple(args.triple)
    try:
        res = local_range_sample(t, args.samples, args.seed)
    except AssertionError as exc:
        raise ToleranceFailure(str(exc))
    _emit(args.output, io.values_to_csv(res.values))
    summary = {
        "samples": args.samples,
        "min_abs": res.min_abs,
        "argmin": res.argmin,
        "witness_v": [[z.real, z.imag] for z in res.witness_v],
        "witness_w": [[z.real, z.imag] for z in res.witness_w],
    }
    if args.summary:
        _emit(args.summary, io.dumps(summary))
    else:
        sys.stderr.write(f"min_abs={io.fmt_float(res.min_abs)} argmin={res.argmin}\n")


def cmd_reproduce(args, argv):
    t0 = time.perf_counter()
    kwargs = {}
    seeds = {}
    if args.name in ("schmidt-coverage", "perfect-none"):
        kwargs["seed"] = seeds["seed"] = args.seed
    if args.name == "table1":
        kwargs["workers"] = args.workers
    rows = SUITES[args.name](**kwargs)
    body = io.dumps(rows)
    manifest = RunManifest(
        command_line=["ldoi"] + list(argv),
        seeds=seeds,
        version=__version__,
        wall_time=round(time.perf_counter() - t0, 3),
        output_digest=digest(body),
    )
    ok = all(r["pass"] for r in rows)
    report = {"suite": args.name, "passed": ok, "rows": rows, "manifest": asdict(manifest)}
    _emit(args.output or f"reproduce-{args.name}.json", io.dumps(report))
    for r in rows:
        sys.stderr.write(f"[{'PASS' if r['pass'] else 'FAIL'}] {r['quantity']}\n")
    if not ok:
        raise ToleranceFailure(f"suite {args.name} has failing rows")


# parser


def build_parser():
    p = _Parser(prog="ldoi", description="Local diagonal invariant bipartite operators as matrix triples.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name, func, help_, triple=True):
        q = parent.add_parser(name, help=help_)
        if triple:
            q.add_argument("triple", nargs="?", default="-", help="triple JSON file, '-' for stdin")
        q.add_argument("-o", "--output", default=None, help="output file (default stdout)")
        q.set_defaults(func=func)
        return q

    q = leaf(sub, "embed", cmd_embed, "dense d^2 x d^2 matrix of a triple")
    q.add_argument("--format", choices=["json", "csv"], default="json")

    q = leaf(sub, "sample", cmd_sample, "random unitary triple", triple=False)
    q.add_argument("--class", dest="cls", default="ldoi", choices=["ldoi", "ldui", "cldui"])
    q.add_argument("--field", default="c", choices=["c", "r", "complex", "real"])
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)

    q = leaf(sub, "check", cmd_check, "unitarity report")
    q.add_argument("--class", dest="cls", default="ldoi", choices=["ldoi", "ldui", "cldui"])
    q.add_argument("--field", default="c", choices=["c", "r", "complex", "real"])

    dual = sub.add_parser("dual", help="dual unitary families").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    q = leaf(dual, "make", cmd_dual_make, "build a dual unitary triple", triple=False)
    q.add_argument("--family", required=True, choices=["projection", "phase-projection", "ldui"])
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--omega", type=_complex, default=1.0, help="phase as re,im")
    q.add_argument("--seed", type=int)
    q.add_argument("--proj-rank", type=int, help="rank of the random projection (default drawn from seed)")
    leaf(dual, "check", cmd_dual_check, "duality / PT unitarity report")

    sch = sub.add_parser("schmidt", help="operator Schmidt rank").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    leaf(sch, "rank", cmd_schmidt_rank, "operator Schmidt rank")
    leaf(sch, "spectrum", cmd_schmidt_spectrum, "operator Schmidt coefficients")
    q = leaf(sch, "make", cmd_schmidt_make, "real orthogonal triple of given rank", triple=False)
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)

    ent = sub.add_parser("entangle", help="entanglement measures").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    q = leaf(ent, "profile", cmd_entangle_profile, "E(X), E(XS), e_p, g_t")
    q.add_argument("--oracle", action="store_true", help="use the dense computation")

    had = sub.add_parser("hadamardness", help="Hadamardness of sign matrices").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    q = leaf(had, "min", cmd_hadamardness_min, "exhaustive minimum over dephased sign matrices", triple=False)
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--workers", type=int, default=1)
    q.add_argument("--backend", choices=["compiled", "python"], default=None)
    q.add_argument("--timing", action="store_true", help="include elapsed seconds")
    q = leaf(had, "eval", cmd_hadamardness_eval, "evaluate h on a matrix", triple=False)
    q.add_argument("matrix", nargs="?", default="-", help="JSON grid or +- text grid")

    dis = sub.add_parser("discriminate", help="unitary discrimination").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    q = leaf(dis, "k", cmd_discriminate_k, "copies needed for perfect discrimination", triple=False)
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q = leaf(dis, "local-range", cmd_discriminate_local_range, "sample the local numerical range")
    q.add_argument("--samples", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--summary", help="write the min_abs summary JSON here")

    q = sub.add_parser("reproduce", help="run a reproduction suite and write a report")
    q.add_argument("name", choices=sorted(SUITES))
    q.add_argument("-o", "--output", help="report path (default reproduce-<name>.json)")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--workers", type=int, default=1)
    q.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.func is cmd_reproduce:
            args.func(args, argv)
        else:
            args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"ldoi: error: {exc}\n")
        return EXIT_USAGE
    except SearchRangeError as exc:
        sys.stderr.write(f"ldoi: error: {exc}\n")
        return EXIT_USAGE
    except (TripleError, NotLDOIError, EntangleNotUnitary, DiscriminateNotUnitary) as exc:
        sys.stderr.write(f"ldoi: validation failure: {exc}\n")
        return EXIT_VALIDATION
    except ToleranceFailure as exc:
        sys.stderr.write(f"ldoi: tolerance failure: {exc}\n")
        return EXIT_TOLERANCE
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"ldoi: error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
