"""Command-line front end: emit bases and operator families, run the
validation suite, and scan configurations for validity of the construction.

Exit codes: 0 success, 1 check failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import GmrkError, ConfigError, UnsupportedSpaceError
from .halfint import HalfInt
from .operators import (
    GellMannConfig,
    build_K,
    build_M,
    build_T_closed,
    build_T_gellmann,
    build_U,
)
from .repspace import SpaceSpec, enumerate_basis
from .tensormaps import TensorComponentMap
from .validator import (
    check_casimir_equality,
    check_little_group_conditions,
    check_MK,
    check_MM,
    check_MT,
    check_TT,
    check_UU,
    default_scan_grid,
    fit_T_equivalence,
    validity_scan,
)

FAIL_FLOOR = 1e-2

_FAMILY_BUILDERS = ("M", "K", "U", "T")


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _state_fields(state):
    return (
        " ".join(str(p) for p in state.J.parts),
        " ".join(str(v) for v in state.k),
        " ".join(str(v) for v in state.m),
    )


def _state_record(state) -> dict:
    j, k, m = _state_fields(state)
    return {"J": j, "k": k, "m": m}


def _component_tag(family: str, key) -> str:
    parts = []
    for p in key:
        if isinstance(p, str):
            parts.append(p)
        else:
            parts.append(f"{int(p):+d}")
    return f"{family}_" + "".join(parts)


def _parse_sigma(text: str) -> complex:
    try:
        val = complex(text)
    except ValueError as exc:
        raise ConfigError(f"cannot parse sigma value {text!r}") from exc
    return val


def _resolve_tolerance(args) -> float:
    if args.tolerance is not None:
        return args.tolerance
    env = os.environ.get("GMRK_TOLERANCE")
    if env is not None:
        try:
            return float(env)
        except ValueError as exc:
            raise ConfigError(f"bad GMRK_TOLERANCE value {env!r}") from exc
    return 1e-10


def _config_dict(args, tolerance: float) -> dict:
    out = {
        "subcommand": args.subcommand,
        "n": args.n,
        "j_max": str(HalfInt.of(args.j_max)),
        "mode": getattr(args, "mode", "coset"),
        "m_split": args.m_split,
        "tolerance": tolerance,
        "margin": str(HalfInt.of(args.margin)),
        "format": args.format,
    }
    if hasattr(args, "sigma"):
        sig = _parse_sigma(args.sigma)
        out["sigma_re"] = float(sig.real)
        out["sigma_im"] = float(sig.imag)
    return out


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)


def _emit_json(payload: dict, path: str | None) -> None:
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _operator_entries(op, basis):
    coo = op.mat.tocoo()
    order = np.lexsort((coo.col, coo.row))
    entries = []
    for idx in order:
        r, c = int(coo.row[idx]), int(coo.col[idx])
        v = complex(coo.data[idx])
        entries.append((basis.states[r], basis.states[c], v))
    return entries


def run_basis(args) -> int:
    tolerance = _resolve_tolerance(args)
    spec = SpaceSpec(args.n, HalfInt.of(args.j_max), args.mode, args.m_split)
    basis = enumerate_basis(spec)
    if args.format == "json":
        payload = {
            "config": _config_dict(args, tolerance),
            "basis": [_state_record(s) for s in basis.states],
        }
        _emit_json(payload, args.output)
    else:
        lines = ["J,k,m"]
        for s in basis.states:
            j, k, m = _state_fields(s)
            lines.append(f"{j},{k},{m}")
        _write_text(args.output, "\n".join(lines) + "\n")
    return 0


def _build_families(args, basis, cfg):
    requested = [f.strip() for f in args.families.split(",") if f.strip()]
    for fam in requested:
        if fam not in _FAMILY_BUILDERS:
            raise ConfigError(f"unknown family {fam!r} (choose from M,K,U,T)")
    out = {}
    for fam in requested:
        if fam == "M":
            out["M"] = build_M(basis)
        elif fam == "K":
            out["K"] = build_K(basis)
        elif fam == "U":
            out["U"] = build_U(basis, cfg, check_x=basis.spec.mode == "coset")
        elif fam == "T":
            if args.t_construction == "closed":
                out["T"] = build_T_closed(basis, cfg)  # raises on full mode
            else:
                out["T"] = build_T_gellmann(
                    basis, cfg, check_x=basis.spec.mode == "coset"
                )
    return out


def run_generators(args) -> int:
    tolerance = _resolve_tolerance(args)
    spec = SpaceSpec(args.n, HalfInt.of(args.j_max), args.mode, args.m_split)
    basis = enumerate_basis(spec)
    tmap = TensorComponentMap(args.n)
    cfg = GellMannConfig(args.n, args.m_split, sigma=_parse_sigma(args.sigma),
                         tmap=tmap)
    if args.families is None:
        args.families = "M,K,U,T" if spec.mode == "coset" else "M,K,U"
    families = _build_families(args, basis, cfg)

    if args.format == "json":
        operators = []
        for fam in sorted(families):
            for key in sorted(families[fam]):
                op = families[fam][key]
                entries = [
                    {
                        "row": _state_record(r),
                        "col": _state_record(c),
                        "re": v.real,
                        "im": v.imag,
                    }
                    for r, c, v in _operator_entries(op, basis)
                ]
                operators.append(
                    {"component_tag": _component_tag(fam, key), "entries": entries}
                )
        payload = {
            "config": _config_dict(args, tolerance),
            "basis": [_state_record(s) for s in basis.states],
            "operators": operators,
        }
        _emit_json(payload, args.output)
        return 0

    # CSV: one file per component, in an output directory.
    if args.output is None or args.output == "-":
        raise ConfigError("csv generator output needs --output DIRECTORY")
    os.makedirs(args.output, exist_ok=True)
    header = "row_J,row_k,row_m,col_J,col_k,col_m,re,im"
    for fam in sorted(families):
        for key in sorted(families[fam]):
            op = families[fam][key]
            lines = [header]
            for r, c, v in _operator_entries(op, basis):
                rj, rk, rm = _state_fields(r)
                cj, ck, cm = _state_fields(c)
                lines.append(
                    f"{rj},{rk},{rm},{cj},{ck},{cm},{_fmt(v.real)},{_fmt(v.imag)}"
                )
            path = os.path.join(args.output, _component_tag(fam, key) + ".csv")
            _write_text(path, "\n".join(lines) + "\n")
    return 0


def _report_rows(reports):
    rows = []
    for rep, expected in reports:
        d = rep.to_dict()
        ok = rep.passed if expected == "pass" else rep.max_abs_residual >= FAIL_FLOOR
        d["expected"] = expected
        d["ok"] = bool(ok)
        rows.append(d)
    return rows


def run_validate(args) -> int:
    tolerance = _resolve_tolerance(args)
    spec = SpaceSpec(args.n, HalfInt.of(args.j_max), args.mode, args.m_split)
    basis = enumerate_basis(spec)
    tmap = TensorComponentMap(args.n)
    cfg = GellMannConfig(args.n, args.m_split, sigma=_parse_sigma(args.sigma),
                         tmap=tmap)
    margin = HalfInt.of(args.margin)
    coset = spec.mode == "coset"
    T = build_T_gellmann(basis, cfg, check_x=coset)

    reports = [
        (check_MM(basis, tolerance=tolerance), "pass"),
        (check_UU(basis, cfg, tolerance=tolerance, margin=margin), "pass"),
        (check_MT(basis, cfg, T, tolerance=tolerance, margin=2), "pass"),
        (check_MK(basis, tolerance=tolerance), "pass"),
        (check_casimir_equality(basis), "pass"),
        (
            check_TT(basis, cfg, T, tolerance=tolerance, margin=margin),
            "pass" if coset else "fail",
        ),
    ]
    if coset:
        reports.append((check_little_group_conditions(cfg), "pass"))
        _, fit_rep = fit_T_equivalence(basis, cfg, margin=2)
        reports.append((fit_rep, "pass"))

    rows = _report_rows(reports)
    payload = {"config": _config_dict(args, tolerance), "reports": rows}
    if args.format == "json":
        _emit_json(payload, args.output)
    else:
        lines = ["check_name,max_abs_residual,tolerance,pass,expected,ok"]
        for d in rows:
            lines.append(
                f"{d['check_name']},{_fmt(d['max_abs_residual'])},"
                f"{_fmt(d['tolerance'])},{d['pass']},{d['expected']},{d['ok']}"
            )
        _write_text(args.output, "\n".join(lines) + "\n")
    return 0 if all(d["ok"] for d in rows) else 1


def run_scan(args) -> int:
    tolerance = _resolve_tolerance(args)
    if args.n not in (3, 4):
        raise ConfigError(f"unsupported n={args.n}")
    grid = default_scan_grid(args.n)
    tt_tol = max(tolerance, 1e-9)
    reports = validity_scan(
        grid,
        HalfInt.of(args.j_max),
        margin=HalfInt.of(args.margin),
        sigma=_parse_sigma(args.sigma),
        tolerance=tt_tol,
        fail_floor=FAIL_FLOOR,
    )
    rows = []
    ok_all = True
    for (n, mode, m_split), rep in zip(grid, reports):
        expected = "valid" if mode == "coset" else "invalid"
        got = rep.details["classification"]
        ok = got == expected
        ok_all = ok_all and ok
        d = rep.to_dict()
        d.update({"expected": expected, "ok": ok})
        rows.append(d)
    payload = {"config": _config_dict(args, tolerance), "reports": rows}
    if args.format == "json":
        _emit_json(payload, args.output)
    else:
        lines = ["n,mode,m_split,max_abs_residual,classification,expected,ok"]
        for d in rows:
            c = d["config"]
            lines.append(
                f"{c['n']},{c['mode']},{c['m_split']},"
                f"{_fmt(d['max_abs_residual'])},"
                f"{d['details']['classification']},{d['expected']},{d['ok']}"
            )
        _write_text(args.output, "\n".join(lines) + "\n")
    return 0 if ok_all else 1


def _add_common(p, with_sigma=True, with_mode=True):
    p.add_argument("--n", type=int, required=True, help="dimension (3 or 4)")
    p.add_argument("--j-max", dest="j_max", default="4",
                   help="spin cutoff (integer or fraction like 7/2)")
    if with_mode:
        p.add_argument("--mode", choices=("full", "coset"), default="coset")
    p.add_argument("--m-split", dest="m_split", type=int, default=1,
                   help="coset split m in Spin(m) x Spin(n-m)")
    if with_sigma:
        p.add_argument("--sigma", default="0", help="free shift parameter")
    p.add_argument("--tolerance", type=float, default=None,
                   help="pass tolerance (env GMRK_TOLERANCE also honored)")
    p.add_argument("--margin", default="4", help="interior margin in J")
    p.add_argument("--output", default=None, help="output path ('-' = stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmrk",
        description="Construct and certify decontracted sl(n,R) generator "
        "matrices over truncated Spin(n) function spaces.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("basis", help="emit the ordered basis listing")
    _add_common(p, with_sigma=False)

    p = sub.add_parser("generators", help="emit operator family matrices")
    _add_common(p)
    p.add_argument("--families", default=None,
                   help="comma list from M,K,U,T (default depends on mode)")
    p.add_argument("--t-construction", dest="t_construction",
                   choices=("closed", "gellmann"), default="closed")

    p = sub.add_parser("validate", help="run the certification suite")
    _add_common(p)

    p = sub.add_parser("scan", help="classify full and coset configurations")
    _add_common(p, with_mode=False)

    return parser


_RUNNERS = {
    "basis": run_basis,
    "generators": run_generators,
    "validate": run_validate,
    "scan": run_scan,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _RUNNERS[args.subcommand](args)
    except (GmrkError, UnsupportedSpaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
