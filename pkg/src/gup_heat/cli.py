"""Command-line front end.

The CLI is a thin client of the HTTP service: requests go through httpx
against the in-process ASGI app by default, or against a remote server via
--server-url.  All numerical work happens behind the service endpoints.

Exit codes: 0 success, 1 check failure (oracle/scan gates), 2 usage or
domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from typing import Any

import httpx

PROG = "gup-heat"

CSV_SCHEMA_VERSION = "1"

CURVE_COLUMNS = ["temperature_K", "cv_standard", "cv_correction", "cv_total",
                 "relative_delta", "status"]
CHAIN_COLUMNS = ["amplitude", "omega_measured", "omega_standard", "shift",
                 "energy_drift", "status"]


def fail(code: str, message: str, context: dict | None = None,
         exit_code: int = 2) -> int:
    print(json.dumps({"code": code, "message": message,
                      "context": context or {}}), file=sys.stderr)
    return exit_code


def fmt(value: Any) -> str:
    """Shortest round-trip decimal for floats; deterministic output."""
    if value is None:
        return "nan"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def write_atomic(path: str, text: str) -> None:
    """Single-writer atomic file emission via temp-file rename."""
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        raise FileNotFoundError(f"output directory does not exist: {directory}")
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gup-heat-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def to_csv(header: list[str], rows: list[list[Any]]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def make_client(server_url: str | None) -> httpx.Client:
    if server_url:
        return httpx.Client(base_url=server_url, timeout=600.0)
    # in-process client: same HTTP surface, no running server needed
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service.app import app  # deferred: importing fastapi is not free
    return TestClient(app, base_url="http://gup-heat.local")


def load_config(path: str | None, allowed: set[str]) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    unknown = set(data) - allowed
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return data


def resolve(args: argparse.Namespace, config: dict, defaults: dict) -> dict:
    """Flags override config file values; hard defaults fill the rest."""
    out = {}
    for key, default in defaults.items():
        cli_val = getattr(args, key, None)
        out[key] = cli_val if cli_val is not None else config.get(key, default)
    return out


def parse_float_list(text: str | list) -> list[float]:
    if isinstance(text, list):
        return [float(v) for v in text]
    return [float(v) for v in text.split(",") if v.strip()]


EINSTEIN_DEFAULTS = {
    "theta_e": 240.0, "n_atoms": 1, "kb_gamma2": 0.0,
    "t_min": 1.0, "t_max": 700.0, "n_points": 700, "spacing": "linear",
}

DEBYE_DEFAULTS = {
    "theta_d": 343.0, "n_atoms": 1, "kb_gamma2": 0.0, "amp_factor": 0.0,
    "t_min": 1.0, "t_max": 700.0, "n_points": 700, "spacing": "linear",
    "rel_tol": 1e-10, "abs_tol": 1e-14, "max_subdivisions": 2000,
    "normalization": "9NkB",
}

ORACLE_DEFAULTS = {"delta": 1.0, "b_values": [1e-3, 5e-4, 2.5e-4]}

CHAIN_DEFAULTS = {
    "n_atoms": 64, "beta": 1.0, "gamma2": 1e-3, "mode_index": 8,
    "steps_per_period": 200, "n_periods": 20,
    "amplitudes": [0.05, 0.1, 0.2, 0.4],
}


def curve_rows_to_table(rows: list[dict]) -> list[list[Any]]:
    return [[r["temperature_K"], r.get("cv_standard"), r.get("cv_correction"),
             r.get("cv_total"), r.get("relative_delta"), r["status"]]
            for r in rows]


def emit_curve(resolved: dict, payload: dict, endpoint: str,
               args: argparse.Namespace, client: httpx.Client) -> int:
    resp = client.post(endpoint, json=payload)
    if resp.status_code != 200:
        err = resp.json()
        return fail(err.get("code", "service_error"), err.get("message", ""),
                    err.get("context", {}))
    body = resp.json()
    for w in body.get("warnings", []):
        print(json.dumps({"code": "warning", "message": w, "context": {}}),
              file=sys.stderr)
    table = curve_rows_to_table(body["rows"])
    if args.format == "json":
        text = json.dumps({"schema_version": CSV_SCHEMA_VERSION,
                           "model": body["model"],
                           "normalization": body["normalization"],
                           "columns": CURVE_COLUMNS,
                           "rows": table}, indent=2) + "\n"
    else:
        text = to_csv(CURVE_COLUMNS, table)
    if args.out:
        write_atomic(args.out, text)
        meta = {"schema_version": CSV_SCHEMA_VERSION, "model": body["model"],
                "normalization": body["normalization"], "request": payload}
        write_atomic(args.out + ".meta.json",
                     json.dumps(meta, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    return 0


def cmd_einstein(args: argparse.Namespace) -> int:
    config = load_config(args.config, set(EINSTEIN_DEFAULTS))
    r = resolve(args, config, EINSTEIN_DEFAULTS)
    payload = {
        "params": {"theta_e": r["theta_e"], "n_atoms": r["n_atoms"],
                   "kb_gamma2": r["kb_gamma2"]},
        "grid": {"t_min": r["t_min"], "t_max": r["t_max"],
                 "n_points": r["n_points"], "spacing": r["spacing"]},
    }
    with make_client(args.server_url) as client:
        return emit_curve(r, payload, "/v1/einstein/curve", args, client)


def cmd_debye(args: argparse.Namespace) -> int:
    config = load_config(args.config, set(DEBYE_DEFAULTS))
    r = resolve(args, config, DEBYE_DEFAULTS)
    payload = {
        "params": {"theta_d": r["theta_d"], "n_atoms": r["n_atoms"],
                   "kb_gamma2": r["kb_gamma2"], "amp_factor": r["amp_factor"]},
        "grid": {"t_min": r["t_min"], "t_max": r["t_max"],
                 "n_points": r["n_points"], "spacing": r["spacing"]},
        "quadrature": {"rel_tol": r["rel_tol"], "abs_tol": r["abs_tol"],
                       "max_subdivisions": r["max_subdivisions"]},
        "normalization": r["normalization"],
    }
    with make_client(args.server_url) as client:
        return emit_curve(r, payload, "/v1/debye/curve", args, client)


def cmd_oracle_check(args: argparse.Namespace) -> int:
    config = load_config(args.config, set(ORACLE_DEFAULTS))
    r = resolve(args, config, ORACLE_DEFAULTS)
    b_values = parse_float_list(r["b_values"])
    if len(b_values) < 2:
        return fail("usage_error",
                    "need at least 2 b values to fit a discrepancy order")
    payload = {"delta": r["delta"], "b_values": b_values}
    with make_client(args.server_url) as client:
        resp = client.post("/v1/oracle/check", json=payload)
    if resp.status_code != 200:
        err = resp.json()
        return fail(err.get("code", "service_error"), err.get("message", ""),
                    err.get("context", {}))
    body = resp.json()
    text = json.dumps(body, indent=2) + "\n"
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0 if body["passed"] else 1


def cmd_chain(args: argparse.Namespace) -> int:
    config = load_config(args.config, set(CHAIN_DEFAULTS))
    r = resolve(args, config, CHAIN_DEFAULTS)
    payload = dict(r)
    payload["amplitudes"] = parse_float_list(r["amplitudes"])
    with make_client(args.server_url) as client:
        resp = client.post("/v1/chain/scan", json=payload)
    if resp.status_code != 200:
        err = resp.json()
        return fail(err.get("code", "service_error"), err.get("message", ""),
                    err.get("context", {}))
    body = resp.json()
    table = [[res["amplitude"], res["omega_measured"], res["omega_standard"],
              res["shift"], res["energy_drift"], res["status"]]
             for res in body["results"]]
    sidecar = {"exponent": body["exponent"], "no_signal": body["no_signal"],
               "drift_gate": body["drift_gate"],
               "drift_gate_passed": body["drift_gate_passed"]}
    if args.format == "json":
        text = json.dumps({"columns": CHAIN_COLUMNS, "rows": table,
                           **sidecar}, indent=2) + "\n"
    else:
        text = to_csv(CHAIN_COLUMNS, table)
    if args.out:
        write_atomic(args.out, text)
        write_atomic(args.out + ".scan.json",
                     json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
        print(json.dumps(sidecar, sort_keys=True))
    return 0 if body["drift_gate_passed"] else 1


def cmd_figures(args: argparse.Namespace) -> int:
    ids = ["fig1", "fig2", "fig3", "fig4"] if args.figure_id == "all" \
        else [args.figure_id]
    out_dir = args.out_dir
    if not os.path.isdir(out_dir):
        return fail("usage_error", f"output directory does not exist: {out_dir}")
    with make_client(args.server_url) as client:
        for fid in ids:
            resp = client.get(f"/v1/figures/{fid}")
            if resp.status_code != 200:
                err = resp.json()
                return fail(err.get("code", "service_error"),
                            err.get("message", ""), err.get("context", {}))
            body = resp.json()
            write_atomic(os.path.join(out_dir, f"{fid}.csv"),
                         to_csv(body["header"], body["rows"]))
        # full spec table every time, so any subset of figN.csv is renderable
        specs = client.get("/v1/figure-specs").json()
        write_atomic(os.path.join(out_dir, "figure_specs.json"),
                     json.dumps(specs, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--out", help="output file path (stdout when omitted)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--server-url",
                   help="talk to a running gup-heat service instead of "
                        "the in-process app")


def add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t-min", type=float, dest="t_min")
    p.add_argument("--t-max", type=float, dest="t_max")
    p.add_argument("--n-points", type=int, dest="n_points")
    p.add_argument("--spacing", choices=["linear", "logarithmic"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Standard and GUP-corrected specific heat of solids "
                    "(Einstein and Debye models)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("einstein", help="Einstein-model curve")
    p.add_argument("--theta-e", type=float, dest="theta_e")
    p.add_argument("--n-atoms", type=int, dest="n_atoms")
    p.add_argument("--kb-gamma2", type=float, dest="kb_gamma2")
    add_grid_flags(p)
    add_common(p)
    p.set_defaults(func=cmd_einstein)

    p = sub.add_parser("debye", help="Debye-model curve")
    p.add_argument("--theta-d", type=float, dest="theta_d")
    p.add_argument("--n-atoms", type=int, dest="n_atoms")
    p.add_argument("--kb-gamma2", type=float, dest="kb_gamma2")
    p.add_argument("--amp-factor", type=float, dest="amp_factor")
    p.add_argument("--rel-tol", type=float, dest="rel_tol")
    p.add_argument("--abs-tol", type=float, dest="abs_tol")
    p.add_argument("--max-subdivisions", type=int, dest="max_subdivisions")
    p.add_argument("--normalization", choices=["9NkB", "3NkB"])
    add_grid_flags(p)
    add_common(p)
    p.set_defaults(func=cmd_debye)

    p = sub.add_parser("oracle-check",
                       help="closed-form vs brute-force O(b^2) scaling check")
    p.add_argument("--delta", type=float)
    p.add_argument("--b", dest="b_values",
                   help="comma-separated list of b values")
    add_common(p)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("chain", help="lattice-chain amplitude scan")
    p.add_argument("--n-atoms", type=int, dest="n_atoms")
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma2", type=float)
    p.add_argument("--mode-index", type=int, dest="mode_index")
    p.add_argument("--steps-per-period", type=int, dest="steps_per_period")
    p.add_argument("--n-periods", type=int, dest="n_periods")
    p.add_argument("--amplitudes", help="comma-separated amplitudes")
    add_common(p)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("figures", help="emit the data behind figures 1-4")
    p.add_argument("figure_id", choices=["fig1", "fig2", "fig3", "fig4", "all"])
    p.add_argument("--out-dir", default=".", dest="out_dir")
    p.add_argument("--server-url")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (FileNotFoundError, ValueError) as exc:
        return fail("usage_error", str(exc))
    except httpx.HTTPError as exc:
        return fail("transport_error", str(exc))


if __name__ == "__main__":
    sys.exit(main())
