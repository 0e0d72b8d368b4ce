"""Command-line front end: ``cwlab verify | kernel | wavelet-slice | transform``.

Exit codes: 0 success or passing suite, 1 failing suite, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import group, hilbert4d, verify, wavelet
from .hilbert4d import CoeffVector
from .matrices import in_cartan, in_tube

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    return "%.17g" % x


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _csv(header_lines, rows):
    out = ["# " + h for h in header_lines]
    out += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(out) + "\n"


def _matrix_arg(vals, name):
    """Eight floats ``re(z00) re(z01) re(z10) re(z11) im(z00) ... im(z11)``."""
    if len(vals) != 8:
        raise UsageError(f"--{name} needs 8 numbers")
    v = np.asarray(vals, dtype=float)
    return (v[:4] + 1j * v[4:]).reshape(2, 2)


def _flat(M):
    M = np.asarray(M).reshape(-1)
    return list(M.real) + list(M.imag)


# verify

def cmd_verify(args) -> int:
    try:
        report = verify.run_suite(args.suite, lam=args.lam, seed=args.seed, tol=args.tol, degree=args.degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        sys.stdout.write(json.dumps(report.to_dict(), sort_keys=True, default=str) + "\n")
    else:
        sys.stdout.write(report.line() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


# kernel grid

def kernel_table(lam, domain, anchor, direction, xs, ys):
    """Rows ``(re Z..., im Z..., re K, im K)`` for ``Z = (x + iy) E``; NaN outside the domain."""
    rows = []
    for y in ys:
        for x in xs:
            Z = (x + 1j * y) * direction
            if domain == "cartan":
                inside = bool(in_cartan(Z))
                K = hilbert4d.bergman_kernel(lam, Z, anchor) if inside else np.nan
            else:
                inside = bool(in_tube(Z))
                K = hilbert4d.tube_kernel(lam, Z, anchor) if inside else np.nan
            K = complex(K)
            rows.append(_flat(Z) + [K.real, K.imag])
    return rows


def cmd_kernel(args) -> int:
    lam = 4 if args.lam is None else args.lam
    if args.anchor is not None:
        anchor = _matrix_arg(args.anchor, "anchor")
    else:
        anchor = np.zeros((2, 2), complex) if args.domain == "cartan" else 1j * np.eye(2)
    direction = np.eye(2, dtype=complex) if args.direction is None else _matrix_arg(args.direction, "direction")
    ok = in_cartan(anchor) if args.domain == "cartan" else in_tube(anchor)
    if not ok:
        raise UsageError(f"anchor is outside the {args.domain} domain")
    try:
        hilbert4d.c_lambda(lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    xs = np.linspace(args.xmin, args.xmax, args.nx)
    ys = np.linspace(args.ymin, args.ymax, args.ny)
    coord = "z" if args.domain == "cartan" else "w"
    names = [f"{p}({coord}{i}{j})" for p in ("re", "im") for i in (0, 1) for j in (0, 1)]
    header = [
        f"kernel domain={args.domain} lambda={lam}",
        "anchor=" + " ".join(_fmt(v) for v in _flat(anchor)),
        "direction=" + " ".join(_fmt(v) for v in _flat(direction)),
        ",".join(names + ["re(K)", "im(K)"]),
    ]
    _write(args.out, _csv(header, kernel_table(lam, args.domain, anchor, direction, xs, ys)))
    return EXIT_OK


# mother wavelet slice

def cmd_wavelet_slice(args) -> int:
    lam = 1 if args.lam is None else args.lam
    try:
        table = wavelet.mother_slice(lam, args.xmin, args.xmax, args.ymin, args.ymax, args.nx, args.ny)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    header = [f"mother wavelet on W = w I, lambda={lam}", "x,y,abs,arg"]
    _write(args.out, _csv(header, table))
    return EXIT_OK


# transform

def load_coefficients(path, lam=None) -> CoeffVector:
    """Parse ``{"lambda": int, "terms": [{"j2", "m", "q1_2", "q2_2", "re", "im"}]}``."""
    try:
        with open(path) as fh:
            data = json.load(fh)
        file_lam = int(data["lambda"])
        coeffs = {}
        for t in data["terms"]:
            key = (int(t["j2"]), int(t["m"]), int(t["q1_2"]), int(t["q2_2"]))
            coeffs[key] = coeffs.get(key, 0) + complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))
        if lam is not None and lam != file_lam:
            raise UsageError(f"--lambda {lam} does not match the file's lambda {file_lam}")
        return CoeffVector(file_lam, coeffs)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read coefficients: {exc}") from exc


def cmd_transform(args) -> int:
    signal = load_coefficients(args.input, args.lam)
    lam = signal.lam
    rng = np.random.default_rng(args.seed)
    Phi = wavelet.analyze(lam, signal)
    if args.action == "analyze":
        params = [group.LieParams()] + [group.random_lie_params(rng) for _ in range(args.samples - 1)]
        out = []
        for u in params:
            v = complex(Phi(group.upsilon(group.exp_element(u))))
            out.append({"lie_params": u.to_dict(), "value": [v.real, v.imag]})
        _write(args.out, json.dumps(out, indent=1) + "\n")
        return EXIT_OK
    Z = verify.interior_points(rng, args.samples)
    rec = wavelet.synthesize(lam, Phi, Z)
    err = np.abs(rec - signal(Z))
    out = {
        "lambda": lam,
        "seed": args.seed,
        "max_error": float(np.max(err)),
        "points": [{"z": _flat(z), "error": float(e)} for z, e in zip(Z, err)],
    }
    _write(args.out, json.dumps(out, indent=1) + "\n")
    return EXIT_OK


# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cwlab", description="Conformal wavelet laboratory.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=list(verify.SUITES) + list(verify.EXTRA_SUITES))
    v.add_argument("--lambda", dest="lam", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float)
    v.add_argument("--degree", type=int)
    v.add_argument("--json", action="store_true", help="print the report as JSON")
    v.set_defaults(func=cmd_verify)

    def grid(sp, ymin):
        sp.add_argument("--xmin", type=float, default=-1.0)
        sp.add_argument("--xmax", type=float, default=1.0)
        sp.add_argument("--ymin", type=float, default=ymin)
        sp.add_argument("--ymax", type=float, default=1.0)
        sp.add_argument("--nx", type=int, default=21)
        sp.add_argument("--ny", type=int, default=21)
        sp.add_argument("--out", help="output file (default: stdout)")

    k = sub.add_parser("kernel", help="tabulate a reproducing kernel on a complex line")
    k.add_argument("--lambda", dest="lam", type=int)
    k.add_argument("--domain", choices=("cartan", "tube"), default="cartan")
    k.add_argument("--anchor", type=float, nargs=8, metavar="X", help="re parts of 4 entries, then im parts")
    k.add_argument("--direction", type=float, nargs=8, metavar="X", help="matrix E of Z = w E (default I)")
    grid(k, -1.0)
    k.set_defaults(func=cmd_kernel)

    w = sub.add_parser("wavelet-slice", help="tabulate the mother wavelet on W = w I")
    w.add_argument("--lambda", dest="lam", type=int)
    grid(w, 0.05)
    w.set_defaults(func=cmd_wavelet_slice)

    t = sub.add_parser("transform", help="analyze a signal or check the reconstruction")
    t.add_argument("action", choices=("analyze", "roundtrip"))
    t.add_argument("--input", required=True, help="coefficients JSON file")
    t.add_argument("--lambda", dest="lam", type=int)
    t.add_argument("--samples", type=int, default=10)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--out", help="output file (default: stdout)")
    t.set_defaults(func=cmd_transform)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "nx", 1) < 1 or getattr(args, "ny", 1) < 1 or getattr(args, "samples", 1) < 1:
        parser.error("grid sizes and sample counts must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"cwlab: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"cwlab: I/O error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
