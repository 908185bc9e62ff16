"""Command-line interface: ``channelforge {convert,check,apply,random,basis}``.

Exit codes: 0 success, 2 parse or shape error, 3 property-check failure,
4 numerical failure.  ``CHANNELFORGE_TOL`` overrides the default tolerance.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import ChannelError, DomainError, NotCPError, NumericError
from .fileformat import (
    BASIS_FORMAT,
    FORMAT_VERSION,
    channel_from_dict,
    channel_to_dict,
    dumps,
    encode_basis,
    named_basis,
    read_json,
    state_from_dict,
    state_to_dict,
    write_text,
)
from .representations import (
    KrausRep,
    apply_channel,
    hp_residual,
    is_cp,
    is_hp,
    is_tp,
    min_choi_eigenvalue,
    tp_residual,
)
from .sampling import RNG_NAME, random_cptp, random_state, random_unitary
from .tensor import DEFAULT_TOL
from .transforms import REPRESENTATIONS, convert, default_basis
from .vectorize import VecConvention

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PROPERTY = 3
EXIT_NUMERIC = 4

BUILTIN_BASES = {
    "pauli": "normalized n-qubit Pauli products, lexicographic I,X,Y,Z order (dim = 2**n)",
    "elementary-col": "matrix units |i><j| at index i + d*j (col-stacking order)",
    "elementary-row": "matrix units |i><j| at index d*i + j (row-stacking order)",
}


class PropertyFailure(Exception):
    pass


def default_tol():
    raw = os.environ.get("CHANNELFORGE_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise DomainError(f"CHANNELFORGE_TOL={raw!r} is not a number") from None


def _metadata(**extra):
    return {"tool": "channelforge", "tool_version": __version__, **extra}


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        write_text(out, text)


def _info(msg, args):
    # keep stdout clean when the document itself goes there
    stream = sys.stderr if args.output in (None, "-") else sys.stdout
    print(msg, file=stream)


def _tol(args):
    return default_tol() if args.tol is None else args.tol


def cmd_convert(args):
    tol = _tol(args)
    rep = channel_from_dict(read_json(args.input))
    basis = vec_conv = None
    if args.basis is not None:
        basis = named_basis(args.basis, rep.dx, rep.dy)
    if args.vec is not None:
        vec_conv = args.vec if args.vec in ("col", "row") else VecConvention(
            "basis", named_basis(args.vec, rep.dx, rep.dx))
    try:
        out, path = convert(rep, args.to, basis=basis, vec_conv=vec_conv,
                            choi_convention=args.choi_convention, rank_tol=args.rank_tol, tol=tol)
    except NotCPError as exc:
        print(f"error: not CP: most negative Choi eigenvalue {exc.min_eigenvalue:.17g}",
              file=sys.stderr)
        raise PropertyFailure() from exc
    meta = _metadata(source=os.path.basename(args.input), path=path)
    _emit(dumps(channel_to_dict(out, meta)), args.output)
    _info("path: " + " -> ".join(path), args)
    return EXIT_OK


def check_report(rep, flags, tol):
    """List of ``(flag, passed, witness_name, witness_value)``."""
    rows = []
    if "hp" in flags:
        rows.append(("hp", is_hp(rep, tol), "hermiticity residual", hp_residual(rep)))
    if "tp" in flags:
        rows.append(("tp", is_tp(rep, tol), "trace-preservation residual", tp_residual(rep)))
    if "cp" in flags:
        rows.append(("cp", is_cp(rep, tol), "min Choi eigenvalue", min_choi_eigenvalue(rep)))
    return rows


def cmd_check(args):
    tol = _tol(args)
    flags = [f for f in ("cp", "tp", "hp") if getattr(args, f)] or ["cp", "tp", "hp"]
    failed = False
    for path in args.inputs:
        rep = channel_from_dict(read_json(path))
        for flag, ok, wname, wval in check_report(rep, flags, tol):
            failed |= not ok
            status = "pass" if ok else "FAIL"
            print(f"{path}: {flag}: {status} ({wname} = {wval:.6e}, tol = {tol:g})")
    return EXIT_PROPERTY if failed else EXIT_OK


def cmd_apply(args):
    tol = _tol(args)
    rep = channel_from_dict(read_json(args.channel))
    rho = state_from_dict(read_json(args.state), tol=tol)
    out = apply_channel(rep, rho)
    tr = np.trace(out)
    meta = _metadata(channel=os.path.basename(args.channel), state=os.path.basename(args.state),
                     trace=[tr.real, tr.imag])
    _emit(dumps(state_to_dict(out, meta)), args.output)
    _info(f"trace: {tr.real:.17g}{tr.imag:+.3g}j", args)
    return EXIT_OK


def cmd_random(args):
    dim = args.dim
    meta = _metadata(rng=RNG_NAME, seed=args.seed, type=args.type)
    if args.type == "state":
        text = dumps(state_to_dict(random_state(dim, args.seed), meta))
    elif args.type == "unitary":
        u = random_unitary(dim, args.seed)
        text = dumps(channel_to_dict(KrausRep([u]), meta))
    else:
        dy = dim if args.dim_out is None else args.dim_out
        rank = dim * dy if args.kraus_rank is None else args.kraus_rank
        meta["kraus_rank"] = rank
        text = dumps(channel_to_dict(random_cptp(dim, dy, rank, args.seed), meta))
    _emit(text, args.output)
    return EXIT_OK


def cmd_basis(args):
    if args.action == "list":
        for name, desc in BUILTIN_BASES.items():
            print(f"{name}: {desc}")
        return EXIT_OK
    if args.name is None or args.dim is None:
        raise DomainError("basis export needs a basis name and --dim")
    basis = named_basis(args.name, args.dim, args.dim if args.dim_out is None else args.dim_out)
    doc = {"format": BASIS_FORMAT, "version": FORMAT_VERSION, "dx": basis.dx, "dy": basis.dy,
           **encode_basis(basis), "metadata": _metadata()}
    _emit(dumps(doc), args.output)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="channelforge",
                                     description="Convert, check and apply quantum channels.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tol(p):
        p.add_argument("--tol", type=float, default=None,
                       help="relative tolerance (default 1e-10 or $CHANNELFORGE_TOL)")

    p = sub.add_parser("convert", help="convert a channel file to another representation")
    p.add_argument("input")
    p.add_argument("--to", required=True, choices=REPRESENTATIONS + ("sysenv",))
    p.add_argument("-o", "--output")
    p.add_argument("--basis", choices=sorted(BUILTIN_BASES), help="operator basis for chi targets")
    p.add_argument("--vec", choices=["col", "row"] + sorted(BUILTIN_BASES),
                   help="vectorization convention for superoperator targets")
    p.add_argument("--choi-convention", choices=["col", "row"], default="col")
    p.add_argument("--rank-tol", type=float, default=1e-12)
    add_tol(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("check", help="verify CP/TP/HP structure")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--cp", action="store_true")
    p.add_argument("--tp", action="store_true")
    p.add_argument("--hp", action="store_true")
    add_tol(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("apply", help="evolve a state file under a channel file")
    p.add_argument("channel")
    p.add_argument("state")
    p.add_argument("-o", "--output")
    add_tol(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("random", help="generate a seeded random unitary, CPTP channel or state")
    p.add_argument("--type", required=True, choices=["unitary", "cptp", "state"])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--dim-out", type=int)
    p.add_argument("--kraus-rank", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("basis", help="list or export built-in operator bases")
    p.add_argument("action", choices=["list", "export"])
    p.add_argument("name", nargs="?", choices=sorted(BUILTIN_BASES))
    p.add_argument("--dim", type=int)
    p.add_argument("--dim-out", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_basis)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "to", None) == "sysenv":
        args.to = "stinespring"
    try:
        return args.func(args)
    except PropertyFailure:
        return EXIT_PROPERTY
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ChannelError, OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
