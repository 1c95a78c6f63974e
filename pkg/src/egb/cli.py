"""Command-line surface: egg-beater tables, barcodes, spreads, bounds.

Exit codes: 0 success, 1 malformed input, 2 partial validation.  All
machine-readable output keeps rationals as exact strings; identical inputs
produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import eggbeater as eb
from . import freegroup as fg
from . import model as mdl
from . import serialize as ser
from .bottleneck import bottleneck
from .equivariant import (
    EquivariantComplex,
    full_power_check,
    mu_p,
    mu_p_zeta,
    spread_lower_bound_from_gaps,
    w_hat,
    w_spread,
)
from .field import cyclo_zeta
from .persistence import barcode_of_complex, is_inf


class InputError(ValueError):
    pass


def _parse_frac_arg(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad rational {s!r}") from e


def _parse_frac_list(s: str) -> tuple[Fraction, ...]:
    return tuple(_parse_frac_arg(part) for part in s.split(",") if part)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise InputError(f"no such file: {path}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON in {path}: {e}") from e


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# -- eggbeater -----------------------------------------------------------------


def _run_eggbeater_once(p, L, mu, nu, lam, out_dir: Path | None, degree: int):
    params = eb.EggBeaterParams(p, L, lam, mu, nu, degree=degree)
    records = eb.enumerate_records(params)
    valid = [r for r in records if r.valid]
    gap = eb.min_action_gap(records)
    diag = {
        "p": p,
        "L": ser.frac_str(L),
        "lambda": ser.frac_str(lam),
        "mu": [ser.frac_str(v) for v in mu],
        "nu": [ser.frac_str(v) for v in nu],
        "windings_m": [params.winding_m(j) for j in range(p)],
        "windings_n": [params.winding_n(j) for j in range(p)],
        "valid_count": len(valid),
        "expected_count": 4 ** p,
        "min_action_gap": ser.frac_str(gap),
        "min_leading_gap_per_lambda": ser.frac_str(
            eb.min_leading_gap(p, mu, nu) / 2
        ),
        "det_values": {r.label(): ser.frac_str(r.det) for r in records},
        "records": [ser.record_to_obj(r) for r in records],
    }
    csv_text = ser.records_to_csv(records)
    if out_dir is not None:
        stem = f"eggbeater_lam_{lam.numerator}_{lam.denominator}"
        (out_dir / f"{stem}.csv").write_text(csv_text)
        (out_dir / f"{stem}.json").write_text(_dump(diag) + "\n")
    else:
        sys.stdout.write(csv_text)
        sys.stdout.write(_dump(diag) + "\n")
    return len(valid) == 4 ** p


def cmd_eggbeater(args) -> int:
    p = args.p
    L = _parse_frac_arg(args.L)
    if args.mu and args.nu:
        mu = _parse_frac_list(args.mu)
        nu = _parse_frac_list(args.nu)
    elif args.fixture or (not args.mu and not args.nu):
        if p != 2:
            raise InputError("the frozen fixture is for p=2; pass --mu/--nu")
        mu, nu = eb.FIXTURE_P2_MU, eb.FIXTURE_P2_NU
    else:
        raise InputError("--mu and --nu must be given together")
    if len(mu) != p or len(nu) != p:
        raise InputError(f"need {p} mu and {p} nu coefficients")

    if args.lam == "auto":
        lams = eb.lambda_lattice(L, mu, nu, args.count)
    else:
        lams = [_parse_frac_arg(args.lam)]
    out_dir = None
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
    all_valid = True
    for lam in lams:
        try:
            ok = _run_eggbeater_once(p, L, mu, nu, lam, out_dir, args.degree)
        except ValueError as e:
            raise InputError(str(e)) from e
        all_valid = all_valid and ok
    return 0 if all_valid else 2


def cmd_eggbeater_2d(args) -> int:
    mu = _parse_frac_arg(args.mu)
    nu = _parse_frac_arg(args.nu)
    lam = _parse_frac_arg(args.lam)
    L = _parse_frac_arg(args.L)
    try:
        records = eb.solve_2d(mu, nu, lam, L)
    except ValueError as e:
        raise InputError(str(e)) from e
    if args.format == "csv":
        _emit(ser.records_to_csv(records), args.out)
    else:
        obj = {
            "mu": ser.frac_str(mu),
            "nu": ser.frac_str(nu),
            "lambda": ser.frac_str(lam),
            "records": [ser.record_to_obj(r) for r in records],
        }
        _emit(_dump(obj), args.out)
    return 0


# -- barcode ---------------------------------------------------------------------


def cmd_barcode(args) -> int:
    if args.subcommand == "decompose":
        cx = ser.complex_from_obj(_load_json(args.files[0]))
        barcode = barcode_of_complex(cx)
        _emit(ser.barcode_to_json(barcode), args.out)
        return 0
    if args.subcommand == "bottleneck":
        if len(args.files) != 2:
            raise InputError("bottleneck needs exactly two barcode files")
        b = ser.barcode_from_obj(_load_json(args.files[0]))
        c = ser.barcode_from_obj(_load_json(args.files[1]))
        _emit(_dump({"bottleneck": ser.frac_str(bottleneck(b, c))}), args.out)
        return 0
    if args.subcommand == "mu":
        module = ser.zp_module_from_obj(_load_json(args.files[0]))
        zi = args.zeta_index
        if not 1 <= zi <= module.p - 1:
            raise InputError(f"zeta index must lie in 1..{module.p - 1}")
        zeta = cyclo_zeta(module.p, zi)
        from .equivariant import eigenspace_module
        from .persistence import barcode_of_module

        barcode = barcode_of_module(eigenspace_module(module, zeta))
        report = {
            "zeta_index": zi,
            "barcode": ser.barcode_to_obj(barcode),
            "mu_p_zeta": ser.frac_str(mu_p_zeta(module, zeta)),
            "mu_p": ser.frac_str(mu_p(module)),
            "w_hat": ser.frac_str(w_hat(module)),
            "verdict": full_power_check(module, zeta),
        }
        _emit(_dump(report), args.out)
        return 0
    raise InputError(f"unknown barcode subcommand {args.subcommand!r}")


# -- spread ---------------------------------------------------------------------


def cmd_spread(args) -> int:
    obj = _load_json(args.file)
    try:
        cx = ser.complex_from_obj(obj["complex"])
        p = int(obj["p"])
        n = len(cx.generators)
        chain_map = ser.matrix_from_obj(cx.field, obj["chain_map"], n, n)
        eq = EquivariantComplex(p, cx, chain_map)
        value = w_spread(eq, args.k if args.k else p)
    except (KeyError, ValueError) as e:
        raise InputError(str(e)) from e
    out = {"w_spread": ser.frac_str(value)}
    if is_inf(value):
        out["note"] = "model-degenerate, use spread_lower_bound_from_gaps"
        out["spread_lower_bound_from_gaps"] = ser.frac_str(
            spread_lower_bound_from_gaps(cx.generators)
        )
    _emit(_dump(out), args.out)
    return 0


# -- bounds ---------------------------------------------------------------------


def cmd_bounds(args) -> int:
    p = args.p
    eps = _parse_frac_arg(args.epsilon_frac)
    k = args.k if args.k else p
    stabilize = None
    if args.stabilize:
        try:
            stabilize = [int(x) for x in args.stabilize.split(",")]
        except ValueError as e:
            raise InputError(f"bad betti vector {args.stabilize!r}") from e
    if args.file:
        obj = _load_json(args.file)
        try:
            tuples = tuple(
                (ser.parse_frac(t["action"]), int(t.get("degree", 0)))
                for t in obj["tuples"]
            )
            model_input = mdl.ModelInput(p, tuples)
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"bad tuples file: {e}") from e
        if not tuples:
            raise InputError("tuples file is empty")
        provenance = {"source": args.file}
        lam = None
    else:
        if p != 2:
            raise InputError("the frozen fixture is for p=2; pass --file")
        L, mu, nu = eb.FIXTURE_L, eb.FIXTURE_P2_MU, eb.FIXTURE_P2_NU
        if args.lam == "auto" or not args.lam:
            lam, records = eb.validation_threshold(2, L, mu, nu)
        else:
            lam = _parse_frac_arg(args.lam)
            records = eb.enumerate_records(eb.EggBeaterParams(2, L, lam, mu, nu))
            if not all(r.valid for r in records):
                raise InputError(f"lambda {lam} does not fully validate; use auto")
        model_input = mdl.model_input_from_records(records, p)
        provenance = {
            "source": "fixture-p2",
            "L": ser.frac_str(L),
            "mu": [ser.frac_str(v) for v in mu],
            "nu": [ser.frac_str(v) for v in nu],
            "lambda": ser.frac_str(lam),
        }
    try:
        report = mdl.bounds_report(model_input, k=k, eps_frac=eps, lam=lam,
                                   stabilize=stabilize)
    except ValueError as e:
        raise InputError(str(e)) from e
    _emit(_dump(ser.bounds_report_to_obj(report, provenance)), args.out)
    if args.svg:
        family = mdl.eigenspace_family(model_input)
        merged = None
        for bc in family.values():
            merged = bc if merged is None else merged.union(bc)
        from .persistence import Barcode

        Path(args.svg).write_text(ser.barcode_svg(merged or Barcode.empty()))
    return 0


# -- freegroup --------------------------------------------------------------------


def _parse_itinerary(text: str) -> fg.Itinerary:
    segments = []
    for tok in text.split():
        parts = tok.split(":")
        if len(parts) != 3 or "-" not in parts[1]:
            raise InputError(
                f"bad segment {tok!r}; expected FLOW:SRC-DST:WINDING like V:A-A:3"
            )
        flow, ends, wind = parts
        src, dst = ends.split("-", 1)
        try:
            segments.append(fg.Segment(flow, src, dst, int(wind)))
        except ValueError as e:
            raise InputError(str(e)) from e
    try:
        return fg.Itinerary(tuple(segments))
    except ValueError as e:
        raise InputError(str(e)) from e


def cmd_freegroup(args) -> int:
    try:
        if args.subcommand == "reduce":
            word = fg.parse_word(args.args[0])
            if args.cyclic:
                word = fg.cyclic_reduce(word)
            print(fg.format_word(word))
            return 0
        if args.subcommand == "conjugate":
            w1 = fg.parse_word(args.args[0])
            w2 = fg.parse_word(args.args[1])
            print("true" if fg.conjugate_eq(w1, w2) else "false")
            return 0
        if args.subcommand == "itinerary":
            itinerary = _parse_itinerary(args.args[0])
            print(fg.format_word(fg.itinerary_to_word(itinerary)))
            return 0
        if args.subcommand == "si":
            m, n = int(args.args[0]), int(args.args[1])
            print(fg.self_intersection(m, n))
            return 0
    except (ValueError, IndexError) as e:
        raise InputError(str(e)) from e
    raise InputError(f"unknown freegroup subcommand {args.subcommand!r}")


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="egb",
        description="Exact egg-beater periodic orbits and equivariant persistence bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eb = sub.add_parser("eggbeater", help="solve the 2^{2p} sign-indexed fixed points")
    p_eb.add_argument("--p", type=int, default=2)
    p_eb.add_argument("--L", default="4")
    p_eb.add_argument("--mu", default="", help="comma-separated rationals")
    p_eb.add_argument("--nu", default="", help="comma-separated rationals")
    p_eb.add_argument("--fixture", action="store_true", help="use the frozen p=2 fixture")
    p_eb.add_argument("--lambda", dest="lam", default="auto")
    p_eb.add_argument("--count", type=int, default=1, help="lattice points for --lambda auto")
    p_eb.add_argument("--degree", type=int, default=0)
    p_eb.add_argument("--out", default="", help="output directory")
    p_eb.set_defaults(func=cmd_eggbeater)

    p_2d = sub.add_parser("eggbeater-2d", help="the four fixed points of the single block")
    p_2d.add_argument("--mu", required=True)
    p_2d.add_argument("--nu", required=True)
    p_2d.add_argument("--lambda", dest="lam", required=True)
    p_2d.add_argument("--L", default="4")
    p_2d.add_argument("--format", choices=("json", "csv"), default="json")
    p_2d.add_argument("--out", default="")
    p_2d.set_defaults(func=cmd_eggbeater_2d)

    p_bc = sub.add_parser("barcode", help="decompose | bottleneck | mu")
    p_bc.add_argument("subcommand", choices=("decompose", "bottleneck", "mu"))
    p_bc.add_argument("files", nargs="+")
    p_bc.add_argument("--zeta-index", dest="zeta_index", type=int, default=1)
    p_bc.add_argument("--out", default="")
    p_bc.set_defaults(func=cmd_barcode)

    p_sp = sub.add_parser("spread", help="two-window spread of an equivariant complex")
    p_sp.add_argument("file")
    p_sp.add_argument("--k", type=int, default=0)
    p_sp.add_argument("--out", default="")
    p_sp.set_defaults(func=cmd_spread)

    p_bd = sub.add_parser("bounds", help="certified Hofer-distance lower bounds")
    p_bd.add_argument("--p", type=int, default=2)
    p_bd.add_argument("--file", default="", help="tuples JSON instead of the fixture")
    p_bd.add_argument("--lambda", dest="lam", default="auto")
    p_bd.add_argument("--k", type=int, default=0)
    p_bd.add_argument("--epsilon-frac", dest="epsilon_frac", default="1/100")
    p_bd.add_argument("--stabilize", default="", help="betti vector b0,b1,...")
    p_bd.add_argument("--svg", default="", help="write the model barcode as SVG")
    p_bd.add_argument("--out", default="")
    p_bd.set_defaults(func=cmd_bounds)

    p_fg = sub.add_parser("freegroup", help="reduce | conjugate | itinerary | si")
    p_fg.add_argument("subcommand", choices=("reduce", "conjugate", "itinerary", "si"))
    p_fg.add_argument("args", nargs="+")
    p_fg.add_argument("--cyclic", action="store_true", help="cyclically reduce")
    p_fg.set_defaults(func=cmd_freegroup)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, KeyError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
