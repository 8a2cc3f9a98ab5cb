"""Command-line front end.

Every verb is a thin wrapper over library calls. Sources are either a JSON
file path or ``catalog:KEY``. Exit status: 0 success, 1 a check or
verification failed, 2 bad usage or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import catalog
from .algebra import NotQuasiRegularError, multiply, quasi_inverse_neg, quasi_regular_certificate
from .canonical import semi_canonicalize
from .exactnum import PreconditionError, format_rational, parse_rational, sym_signature
from .fileformat import (
    InputError,
    dumps,
    is_surface_json,
    metrised_from_json,
    metrised_to_json,
    read_json,
    surface_from_json,
    surface_to_json,
)
from .metrised import MetrisedAlgebra, dimension_bound_check, direct_sum, orthogonal_split_scan, skew_derivation_dim, validate
from .surface import MODES, Surface, SingularHessianError, generate_surface, is_improper_hypersphere, verify_pde

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- source loading ------------------------------------------------------------


def load_source(src: str, alpha=None) -> MetrisedAlgebra | Surface:
    if src.startswith("catalog:"):
        key = src[len("catalog:"):]
        try:
            return catalog.builtin(key, alpha)
        except catalog.CatalogError as exc:
            raise UsageError(str(exc)) from None
    obj = read_json(src)
    if is_surface_json(obj):
        return surface_from_json(obj)
    return metrised_from_json(obj)


def load_algebra(src: str, alpha=None) -> MetrisedAlgebra:
    value = load_source(src, alpha)
    if isinstance(value, Surface):
        if value.source is None:
            raise UsageError(f"{src}: expected an algebra, got a surface without a source algebra")
        return value.source
    return value


def _alpha(args):
    if getattr(args, "param_alpha", None) is None:
        return None
    try:
        return parse_rational(args.param_alpha)
    except ValueError as exc:
        raise UsageError(f"--param-alpha: {exc}") from None


# -- output helpers --------------------------------------------------------------


def _emit(args, payload: dict, human: Sequence[str]) -> None:
    if args.json:
        print(dumps(payload))
    else:
        for line in human:
            print(line)


def _fmt_bool(v) -> str:
    return "yes" if v else "no"


# -- verbs -------------------------------------------------------------------------


def cmd_check(args) -> int:
    M = load_algebra(args.src, _alpha(args))
    report = validate(M)
    payload = report.to_json()
    lines = [
        f"jordan:      {_fmt_bool(report.jordan)}",
        f"associative: {_fmt_bool(report.associative)}",
        f"trace form:  {_fmt_bool(report.trace_form)}",
        f"nilpotent:   {_fmt_bool(report.nilpotent)}",
        f"signature:   {report.signature[0]},{report.signature[1]} (negated form: {report.signature_negated[0]},{report.signature_negated[1]})",
        f"det gamma:   {format_rational(report.det_gamma)}",
        f"split found: {_fmt_bool(report.splits and report.splits['found'])}",
        "status:      " + ("ok" if report.ok else "FAILED: " + ", ".join(report.failures)),
    ]
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_canonicalize(args) -> int:
    M = load_algebra(args.src, _alpha(args))
    R = semi_canonicalize(M)
    payload = R.to_json()
    lines = ["basis change (columns are the new basis vectors):"]
    lines += ["  " + "  ".join(format_rational(v) for v in row) for row in R.basis_change]
    lines.append("partition: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in R.partition))
    lines.append("structure constants (alpha beta delta value):")
    lines += [f"  {a} {b} {d} {format_rational(c)}" for (a, b, d), c in R.result.algebra.structure.items()]
    lines.append("gamma:")
    lines += ["  " + "  ".join(format_rational(v) for v in row) for row in R.result.gamma]
    if R.non_unit_diagonal:
        lines.append("note: non-unit diagonal entries remain (no rational square root)")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_surface(args) -> int:
    M = load_algebra(args.src, _alpha(args))
    S = generate_surface(M, args.mode, args.max_degree)
    _emit(args, surface_to_json(S), [str(S.F)])
    return EXIT_OK


def _surface_for(args, mode: str) -> Surface:
    value = load_source(args.src, _alpha(args))
    if isinstance(value, Surface):
        return value
    return generate_surface(value, mode, getattr(args, "max_degree", None))


def cmd_verify(args) -> int:
    S = _surface_for(args, args.mode or args.pde)
    report = verify_pde(S, args.pde, args.points, args.seed, args.symbolic)
    if args.symbolic:
        lines = [f"pde {args.pde} (symbolic): " + ("identity holds" if report.ok else "identity FAILS")]
    else:
        lines = [f"pde {args.pde}, seed {args.seed}, {len(report.points)} points, {report.skipped} singular draws skipped"]
        for p in report.points:
            pt = ",".join(format_rational(v) for v in p.point)
            lines.append(f"  #{p.index} ({pt}) max |residual| = {format_rational(p.max_abs_residual)}")
        lines.append("result: " + ("all residuals zero" if report.ok else "NONZERO residual"))
    _emit(args, report.to_json(), lines)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_hypersphere(args) -> int:
    S = _surface_for(args, args.mode)
    ok, det = is_improper_hypersphere(S)
    payload = {"improper_hypersphere": ok, "det_hessian": str(det)}
    _emit(args, payload, [f"det F'' = {det}", "improper hypersphere: " + _fmt_bool(ok)])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_invariants(args) -> int:
    M = load_algebra(args.src, _alpha(args))
    pos, neg, _ = sym_signature(M.gamma)
    split = orthogonal_split_scan(M)
    payload = {
        "signature": [pos, neg],
        "derivation_dim": skew_derivation_dim(M),
        "split": split.to_json(),
        "bounds": None,
    }
    lines = [
        f"signature: {pos},{neg}",
        f"skew derivation dim: {payload['derivation_dim']}",
        f"split: " + (f"{split.method} {list(split.block_a)} | {list(split.block_b)}" if split.found else "none detected"),
    ]
    if split.witness is not None:
        lines.append("annihilator witness: (" + ",".join(format_rational(v) for v in split.witness) + ")")
    try:
        bounds = dimension_bound_check(M)
    except PreconditionError as exc:
        lines.append(f"bounds: not applicable ({exc})")
    else:
        payload["bounds"] = bounds.to_json()
        lines.append(f"bounds: n={bounds.n} <= k(k+5)/2={bounds.dimension_bound} with k={bounds.k}: {_fmt_bool(bounds.dimension_ok)}")
        lines.append(f"        2-blocks m={bounds.two_blocks} meets threshold: {_fmt_bool(bounds.threshold_ok)}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_sum(args) -> int:
    alpha = _alpha(args)
    Ms = [load_algebra(s, alpha) for s in args.srcs]
    M = direct_sum(Ms)
    payload = metrised_to_json(M)
    # human output is the same JSON: a sum is only useful as a file
    print(dumps(payload))
    return EXIT_OK


def cmd_quasi_inverse(args) -> int:
    M = load_algebra(args.src, _alpha(args))
    try:
        x = tuple(parse_rational(p) for p in args.at.split(","))
    except ValueError as exc:
        raise UsageError(f"--at: {exc}") from None
    if len(x) != M.dim:
        raise UsageError(f"--at: expected {M.dim} coordinates, got {len(x)}")
    det, _ = quasi_regular_certificate(M.algebra, x)
    try:
        y = quasi_inverse_neg(M.algebra, x)
    except NotQuasiRegularError as exc:
        _emit(args, {"quasi_regular": False, "det": format_rational(det)}, [str(exc)])
        return EXIT_FAIL
    check = multiply(M.algebra, x, y) == tuple(a - b for a, b in zip(x, y))
    payload = {
        "x": [format_rational(v) for v in x],
        "quasi_inverse": [format_rational(v) for v in y],
        "det": format_rational(det),
        "identity_holds": check,
    }
    lines = [
        "(-x)^(-1) = (" + ",".join(format_rational(v) for v in y) + ")",
        f"det(I + 2L_x + U_x) = {format_rational(det)}",
        "x * y = x - y: " + _fmt_bool(check),
    ]
    _emit(args, payload, lines)
    return EXIT_OK if check else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = catalog.list_catalog()
        payload = {"entries": [e.to_json() for e in entries]}
        lines = []
        for e in entries:
            flags = [name for name, v in (("jordan", e.jordan), ("associative", e.associative), ("nilpotent", e.nilpotent), ("irreducible", e.irreducible)) if v]
            extra = f" derivation_dim={e.derivation_dim}" if e.derivation_dim is not None else ""
            extra += " (needs --param-alpha)" if e.parametric else ""
            lines.append(f"{e.key:<12} {' '.join(flags)}{extra}")
        _emit(args, payload, lines)
        return EXIT_OK
    if not args.key:
        raise UsageError("catalog export needs a KEY")
    key = args.key[len("catalog:"):] if args.key.startswith("catalog:") else args.key
    try:
        M = catalog.builtin(key, _alpha(args))
    except catalog.CatalogError as exc:
        raise UsageError(str(exc)) from None
    print(dumps(metrised_to_json(M)))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable JSON output")

    parser = argparse.ArgumentParser(prog="parcubic", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def alpha_opt(p):
        p.add_argument("--param-alpha", metavar="P/Q", help="alpha for parametric catalog entries")

    p = add("check", cmd_check, "validate a metrised algebra")
    p.add_argument("src")
    alpha_opt(p)

    p = add("canonicalize", cmd_canonicalize, "bring a nilpotent metrised Jordan algebra to semi-canonical form")
    p.add_argument("src")
    alpha_opt(p)

    p = add("surface", cmd_surface, "generate the defining polynomial of the hypersurface")
    p.add_argument("src")
    p.add_argument("--mode", choices=MODES, default="hatC")
    p.add_argument("--max-degree", type=int, default=None, help="truncation degree for non-nilpotent algebras")
    alpha_opt(p)

    p = add("verify", cmd_verify, "check the parallelism PDE exactly")
    p.add_argument("src")
    p.add_argument("--pde", choices=("hatC", "nablaK"), required=True)
    p.add_argument("--mode", choices=MODES, default=None, help="generator for algebra sources (default: same as --pde)")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symbolic", action="store_true", help="check the polynomial identity instead of sampling")
    alpha_opt(p)

    p = add("hypersphere", cmd_hypersphere, "test det F'' = ±1")
    p.add_argument("src")
    p.add_argument("--mode", choices=MODES, default="hatC")
    p.add_argument("--max-degree", type=int, default=None)
    alpha_opt(p)

    p = add("invariants", cmd_invariants, "signature, derivation dimension, split scan and bounds")
    p.add_argument("src")
    alpha_opt(p)

    p = add("sum", cmd_sum, "orthogonal direct sum, printed as an algebra file")
    p.add_argument("srcs", nargs="+")
    alpha_opt(p)

    p = add("quasi-inverse", cmd_quasi_inverse, "compute (-x)^(-1)")
    p.add_argument("src")
    p.add_argument("--at", required=True, metavar="P/Q,...")
    alpha_opt(p)

    p = add("catalog", cmd_catalog, "list or export built-in algebras")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("key", nargs="?")
    alpha_opt(p)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if not hasattr(args, "json"):
        args.json = False
    try:
        return args.func(args)
    except (UsageError, InputError, PreconditionError, catalog.CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularHessianError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
