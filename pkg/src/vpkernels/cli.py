"""Command-line client for the kernel service.

The CLI never computes anything itself: each subcommand posts a request to
the service and renders the JSON it gets back.  By default the service app
runs in-process (no network, no server to start); ``--server URL`` targets a
running instance instead.

Output contract: fixed field order, floats at 15 significant digits in
machine formats (json, csv) and 9 in human format, so identical invocations
produce byte-identical output.  Exit codes: 0 success, 1 validation error,
2 verification failure, 3 numerical/budget failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings

from . import __version__

TOL_ENV_VAR = "VPKERNELS_TOL"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFY_FAILED = 2
EXIT_NUMERICAL = 3


# ----------------------------- rendering helpers -----------------------------

def _fmt_machine(v: float) -> str:
    return format(v, ".15g")


def _fmt_human(v: float) -> str:
    return format(v, ".9g")


def _json_render(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _fmt_machine(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f"{pad}  {json.dumps(str(k))}: {_json_render(v, indent + 1)}" for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        inner = ",\n".join(f"{pad}  {_json_render(v, indent + 1)}" for v in obj)
        return "[\n" + inner + "\n" + pad + "]"
    raise TypeError(f"cannot render {type(obj).__name__}")


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_machine(v)
    return str(v)


def _csv_render(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buf.getvalue().rstrip("\n")


def _human_table(rows: list[dict], columns: list[str]) -> str:
    cells = [[c for c in columns]]
    for row in rows:
        rendered = []
        for c in columns:
            v = row.get(c)
            if isinstance(v, float):
                rendered.append(_fmt_human(v))
            elif v is None:
                rendered.append("-")
            else:
                rendered.append(str(v))
        cells.append(rendered)
    widths = [max(len(line[i]) for line in cells) for i in range(len(columns))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in cells)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ------------------------------ service client -------------------------------

def _request(args, method: str, path: str, payload: dict | None = None):
    """POST/GET against the configured service; returns (status, json body)."""
    if args.server:
        import httpx

        with httpx.Client(base_url=args.server, timeout=600.0) as client:
            resp = client.request(method, path, json=payload)
            return resp.status_code, resp.json()
    with warnings.catch_warnings():
        # starlette is mid-transition between httpx major versions; the
        # in-process client works fine with either.
        warnings.simplefilter("ignore", Warning)
        from starlette.testclient import TestClient

    from .service.app import app

    with TestClient(app, raise_server_exceptions=False) as client:
        resp = client.request(method, path, json=payload)
        return resp.status_code, resp.json()


def _failure_exit(status: int, body) -> int:
    err_type = "internal"
    message = f"service returned status {status}"
    if isinstance(body, dict):
        if isinstance(body.get("error"), dict):
            err_type = body["error"].get("type", err_type)
            message = body["error"].get("message", message)
        elif "detail" in body:
            err_type = "validation"
            message = json.dumps(body["detail"])
    print(f"error ({err_type}): {message}", file=sys.stderr)
    if status == 422 or err_type == "validation":
        return EXIT_VALIDATION
    return EXIT_NUMERICAL


def _tol_or_env(value: float | None) -> float | None:
    if value is not None:
        return value
    env = os.environ.get(TOL_ENV_VAR)
    return float(env) if env else None


# -------------------------------- subcommands --------------------------------

def _cmd_eval(args) -> int:
    payload = {"r": args.r, "s": args.s, "N": args.N}
    if args.xs is not None:
        payload["xs"] = args.xs
    if args.grid is not None:
        payload["grid"] = args.grid
    status, body = _request(args, "POST", "/eval", payload)
    if status != 200:
        return _failure_exit(status, body)
    rows = body["rows"]
    if args.format == "json":
        _emit(args, _json_render(body))
    elif args.format == "csv":
        _emit(args, _csv_render(rows, ["x", "value"]))
    else:
        head = f"V({args.r * args.N},{args.s * args.N})  (r={args.r}, s={args.s}, N={args.N})"
        _emit(args, head + "\n" + _human_table(rows, ["x", "value"]))
    return EXIT_OK


def _cmd_coeffs(args) -> int:
    payload = {"r": args.r, "s": args.s, "N": args.N}
    if args.j_max is not None:
        payload["j_max"] = args.j_max
    status, body = _request(args, "POST", "/coeffs", payload)
    if status != 200:
        return _failure_exit(status, body)
    if args.format == "json":
        _emit(args, _json_render(body))
    elif args.format == "csv":
        _emit(args, _csv_render(body["rows"], ["j", "value"]))
    else:
        _emit(args, _human_table(body["rows"], ["j", "value"]))
    return EXIT_OK


_ZERO_COLUMNS = ["numerator", "denominator", "location", "kind", "multiplicity", "derivative_sign"]


def _cmd_zeros(args) -> int:
    status, body = _request(args, "POST", "/zeros", {"r": args.r, "s": args.s, "N": args.N})
    if status != 200:
        return _failure_exit(status, body)
    if args.format == "json":
        _emit(args, _json_render(body))
    elif args.format == "csv":
        _emit(args, _csv_render(body["entries"], _ZERO_COLUMNS))
    else:
        head = (
            f"zeros of V({args.r * args.N},{args.s * args.N}) in (0,1): "
            f"total multiplicity {body['total_multiplicity']}"
        )
        _emit(args, head + "\n" + _human_table(body["entries"], _ZERO_COLUMNS))
    return EXIT_OK


_NORM_COLUMNS = ["method", "value", "area_plus", "area_minus", "imag_residual", "error_estimate"]


def _cmd_norm(args) -> int:
    payload = {"r": args.r, "s": args.s, "N": args.N, "method": args.method}
    tol = _tol_or_env(args.tol)
    if tol is not None:
        payload["abs_tol"] = tol
    status, body = _request(args, "POST", "/norm", payload)
    if status != 200:
        return _failure_exit(status, body)
    if args.format == "json":
        _emit(args, _json_render(body))
    elif args.format == "csv":
        _emit(args, _csv_render(body["reports"], _NORM_COLUMNS))
    else:
        lines = [
            f"V({args.r * args.N},{args.s * args.N})  (r={args.r}, s={args.s}, N={args.N})",
            f"bounds: [{_fmt_human(body['norm_lower_bound'])}, {_fmt_human(body['norm_upper_bound'])}]",
            _human_table(body["reports"], _NORM_COLUMNS),
        ]
        if body.get("max_pairwise_deviation") is not None:
            lines.append(f"max pairwise deviation: {_fmt_human(body['max_pairwise_deviation'])}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def _cmd_lebesgue(args) -> int:
    payload = {"n": args.n}
    tol = _tol_or_env(args.tol)
    if tol is not None:
        payload["abs_tol"] = tol
    status, body = _request(args, "POST", "/lebesgue", payload)
    if status != 200:
        return _failure_exit(status, body)
    if args.format == "json":
        _emit(args, _json_render(body))
    elif args.format == "csv":
        _emit(args, _csv_render([body], ["n", "value"]))
    else:
        _emit(args, f"L_{body['n']} = {_fmt_human(body['value'])}")
    return EXIT_OK


_CELL_COLUMNS = ["r", "s", "N", "closed", "piecewise", "quadrature", "max_deviation", "bounds_ok", "ok"]


def _cmd_verify(args) -> int:
    payload = {"max_s": args.max_s, "max_N": args.max_N, "tol": args.tol}
    quad_tol = _tol_or_env(args.quad_tol)
    if quad_tol is not None:
        payload["quad_tol"] = quad_tol
    status, body = _request(args, "POST", "/verify", payload)
    if status != 200:
        return _failure_exit(status, body)
    if args.format == "json":
        _emit(args, _json_render(body))
    elif args.format == "csv":
        _emit(args, _csv_render(body["cells"], _CELL_COLUMNS))
    else:
        cells = body["cells"]
        pairs = body["pairs"]
        worst = max(cells, key=lambda c: c["max_deviation"])
        lines = [
            f"verify sweep: max_s={body['max_s']} max_N={body['max_N']} tol={_fmt_human(body['tol'])}",
            f"cells ok: {sum(c['ok'] for c in cells)}/{len(cells)}"
            f"   pairs ok: {sum(p['ok'] for p in pairs)}/{len(pairs)}",
            f"worst cell deviation: {_fmt_human(worst['max_deviation'])} "
            f"at (r={worst['r']}, s={worst['s']}, N={worst['N']})",
        ]
        for c in cells:
            if not c["ok"]:
                lines.append(
                    f"FAIL cell (r={c['r']}, s={c['s']}, N={c['N']}): "
                    f"deviation {_fmt_human(c['max_deviation'])}"
                )
        for p in pairs:
            if not p["ok"]:
                lines.append(f"FAIL pair (r={p['r']}, s={p['s']})")
        lines.append("ALL OK" if body["all_ok"] else "FAILURES DETECTED")
        _emit(args, "\n".join(lines))
    return EXIT_OK if body["all_ok"] else EXIT_VERIFY_FAILED


_APPROX_COLUMNS = ["x", "value", "value_imag", "exact", "abs_error"]


def _cmd_approx(args) -> int:
    if args.list:
        status, body = _request(args, "GET", "/catalog")
        if status != 200:
            return _failure_exit(status, body)
        if args.format == "json":
            _emit(args, _json_render(body))
        else:
            _emit(args, "\n".join(body["functions"]))
        return EXIT_OK
    if args.tails:
        if args.r is None or args.s is None:
            print("error (validation): --tails requires --r and --s", file=sys.stderr)
            return EXIT_VALIDATION
        payload = {
            "r": args.r,
            "s": args.s,
            "delta": args.delta,
            "N_list": args.N_list or [1, 2, 4, 8, 16],
        }
        tol = _tol_or_env(args.tol)
        if tol is not None:
            payload["abs_tol"] = tol
        status, body = _request(args, "POST", "/approx/tails", payload)
        if status != 200:
            return _failure_exit(status, body)
        if args.format == "json":
            _emit(args, _json_render(body))
        elif args.format == "csv":
            _emit(args, _csv_render(body["entries"], ["N", "mass"]))
        else:
            head = (
                f"tail mass of V({args.r}N,{args.s}N) over [{_fmt_human(args.delta)}, "
                f"{_fmt_human(1 - args.delta)}]"
            )
            tag = "strictly decreasing" if body["strictly_decreasing"] else "NOT decreasing"
            _emit(args, head + "\n" + _human_table(body["entries"], ["N", "mass"]) + "\n" + tag)
        return EXIT_OK
    if args.function is None:
        print("error (validation): --function is required (or use --list / --tails)", file=sys.stderr)
        return EXIT_VALIDATION
    payload = {"function": args.function, "mode": args.mode, "n": args.n}
    if args.p is not None:
        payload["p"] = args.p
    if args.xs is not None:
        payload["xs"] = args.xs
    if args.grid is not None:
        payload["grid"] = args.grid
    status, body = _request(args, "POST", "/approx", payload)
    if status != 200:
        return _failure_exit(status, body)
    if args.format == "json":
        _emit(args, _json_render(body))
    elif args.format == "csv":
        _emit(args, _csv_render(body["rows"], _APPROX_COLUMNS))
    else:
        head = f"{args.mode} mean of '{args.function}' (n={args.n}" + (
            f", p={args.p})" if args.p is not None else ")"
        )
        _emit(args, head + "\n" + _human_table(body["rows"], _APPROX_COLUMNS))
    return EXIT_OK


def _cmd_export_plot(args) -> int:
    payload = {"r": args.r, "s": args.s, "N": args.N, "grid": args.grid}
    status, body = _request(args, "POST", "/export-plot", payload)
    if status != 200:
        return _failure_exit(status, body)
    curve_path = args.prefix + ".csv"
    zeros_path = args.prefix + ".zeros.csv"
    profile_path = args.prefix + ".profile.csv"
    curve_rows = [{"x": row["x"], "kernel_value": row["value"]} for row in body["curve"]]
    try:
        with open(curve_path, "w", encoding="utf-8") as fh:
            fh.write(_csv_render(curve_rows, ["x", "kernel_value"]) + "\n")
        with open(zeros_path, "w", encoding="utf-8") as fh:
            fh.write(_csv_render(body["zeros"], _ZERO_COLUMNS) + "\n")
        with open(profile_path, "w", encoding="utf-8") as fh:
            fh.write(_csv_render(body["profile_nodes"], ["u", "value"]) + "\n")
    except OSError as exc:
        print(f"error (io): {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    files = [curve_path, zeros_path, profile_path]
    if args.format == "json":
        _emit(args, _json_render({"files": files}))
    else:
        _emit(args, "\n".join(f"wrote {p}" for p in files))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


# --------------------------------- arg parser ---------------------------------

def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r", type=int, required=True, help="flat-top index r >= 0")
    parser.add_argument("--s", type=int, required=True, help="cutoff index s > r, coprime to r")
    parser.add_argument("--N", type=int, default=1, help="family index N >= 1 (default 1)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("human", "json", "csv"), default="human", help="output format"
    )
    common.add_argument("--server", default=None, help="URL of a running service (default: in-process)")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(
        prog="vpkernels",
        description="Summability kernels: evaluation, zero census, exact L1 norms, and verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate the kernel at points or on a grid")
    _add_params(p)
    p.add_argument("--x", dest="xs", type=float, action="append", help="sample point (repeatable)")
    p.add_argument("--grid", type=int, help="K equispaced points j/K, j = 0..K-1")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("coeffs", parents=[common], help="Fourier coefficients of the kernel")
    _add_params(p)
    p.add_argument("--j-max", dest="j_max", type=int, help="emit j = -j_max..j_max (default sN)")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("zeros", parents=[common], help="exact zeros in (0,1) with multiplicities")
    _add_params(p)
    p.set_defaults(func=_cmd_zeros)

    p = sub.add_parser("norm", parents=[common], help="L1 norm by one or all methods")
    _add_params(p)
    p.add_argument("--method", choices=("closed", "piecewise", "quad", "all"), default="all")
    p.add_argument("--tol", type=float, default=None, help="quadrature tolerance")
    p.set_defaults(func=_cmd_norm)

    p = sub.add_parser("lebesgue", parents=[common], help="Lebesgue constant L_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=None, help="quadrature tolerance")
    p.set_defaults(func=_cmd_lebesgue)

    p = sub.add_parser("verify", parents=[common], help="cross-method verification sweep")
    p.add_argument("--max-s", dest="max_s", type=int, default=7)
    p.add_argument("--max-N", dest="max_N", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-7, help="cross-method agreement tolerance")
    p.add_argument("--quad-tol", dest="quad_tol", type=float, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("approx", parents=[common], help="Fourier summation of catalog functions")
    p.add_argument("--function", default=None, help="catalog function name")
    p.add_argument("--mode", choices=("partial", "fejer", "delayed"), default="delayed")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--p", type=int, default=None, help="ramp width for mode=delayed")
    p.add_argument("--x", dest="xs", type=float, action="append")
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--list", action="store_true", help="list catalog functions and exit")
    p.add_argument("--tails", action="store_true", help="kernel tail masses instead of summation")
    p.add_argument("--r", type=int, default=None, help="(tails) flat-top index")
    p.add_argument("--s", type=int, default=None, help="(tails) cutoff index")
    p.add_argument("--delta", type=float, default=0.1, help="(tails) window distance from integers")
    p.add_argument(
        "--N-list",
        dest="N_list",
        type=lambda t: [int(v) for v in t.split(",")],
        default=None,
        help="(tails) comma-separated family indices",
    )
    p.add_argument("--tol", type=float, default=None, help="(tails) quadrature tolerance")
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("export-plot", parents=[common], help="CSV export: curve, zeros, multiplier")
    _add_params(p)
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--prefix", required=True, help="output path prefix for the three CSV files")
    p.set_defaults(func=_cmd_export_plot)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
