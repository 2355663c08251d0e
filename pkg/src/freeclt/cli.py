"""Command-line front end.

Every invocation prints its result payload (JSON or CSV) on stdout and a
single-line run manifest on stderr: the argv, sha256 of each input file,
the tool version, the RNG seed when one is used, and the wall time.
Result payloads are deterministic for identical inputs; the manifest's
wall time is the only varying field.

Exit codes: 0 success, 1 runtime or selftest failure, 2 usage error,
3 malformed input payload (message names the offending field), 4 size
cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .algebra import QSqrt2, two_pow_half
from .clt import (
    DEFAULT_MATRIX_CAP,
    apply_T,
    build_lin_matrix,
    chi_moments,
    eigencheck,
    iterate_T,
)
from .cumulants import (
    SchemaError,
    Sequence,
    cumulants_to_moments,
    gateaux_derivative,
    moments_to_cumulants,
    sequence_from_payload,
    sequence_to_payload,
)
from .partitions import (
    DEFAULT_MAX_GROUND_SIZE,
    BlockProfile,
    SizeLimitError,
    block_size_profiles,
    classical_profile_count,
    count_profile,
    kreweras_count,
)
from . import analytic
from .analytic import (
    CHI,
    EigenParameter,
    cauchy_transform,
    classical_fourier_check,
    descriptor_from_payload,
    dt_action_on_psi,
    eigen_density,
    free_convolve,
    pde_theorem_check,
    transition_omega,
)
from .special_functions import (
    chebyshev_density_moments,
    chebyshev_density_value,
    hermite_density_moments,
    hermite_density_value,
    hermite_fourier_pair,
    lemma_Fn_identity,
    rothe_identity,
)

ENV_GROUND_CAP = "FREECLT_MAX_GROUND_SIZE"


def _ground_cap() -> int:
    raw = os.environ.get(ENV_GROUND_CAP)
    if raw is None:
        return DEFAULT_MAX_GROUND_SIZE
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"environment variable {ENV_GROUND_CAP} must be an integer")


def _read_json(path: str, inputs: dict) -> object:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read input file {path!r}: {exc}") from exc
    inputs[path] = hashlib.sha256(raw).hexdigest()
    return json.loads(raw.decode("utf-8"))


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _float_cell(value: float) -> str:
    return format(float(value), ".17g")


def _qsqrt2_pair(value: QSqrt2) -> list[str]:
    return list(value.as_strings())


def _int_cell(value: QSqrt2) -> str:
    if value.irr != 0 or value.rat.denominator != 1:
        raise ValueError(f"expected an integer matrix cell, got {value!r}")
    return str(value.rat.numerator)


# ---------------------------------------------------------------------------
# argv helper types
# ---------------------------------------------------------------------------


def _grid_type(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must look like lo:hi:n")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError("grid must look like lo:hi:n with numbers")
    if n < 2 or not hi > lo:
        raise argparse.ArgumentTypeError("grid needs hi > lo and n >= 2")
    return np.linspace(lo, hi, n)


def _complex_type(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("point must look like re,im")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError("point must look like re,im with numbers")


def _psi_type(text: str):
    if not text.startswith("poly:"):
        raise argparse.ArgumentTypeError("direction must look like poly:c0,c1,...")
    try:
        coeffs = [float(c) for c in text[len("poly:") :].split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("polynomial coefficients must be numbers")
    if not coeffs:
        raise argparse.ArgumentTypeError("polynomial needs at least one coefficient")

    def psi(w: complex) -> complex:
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * w + c
        return acc

    def psi_prime(w: complex) -> complex:
        acc = 0j
        for j in range(len(coeffs) - 1, 0, -1):
            acc = acc * w + j * coeffs[j]
        return acc

    return psi, psi_prime


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_partitions_count(args, inputs: dict) -> int:
    profile = BlockProfile(args.n, args.k)
    if args.oracle:
        value = count_profile(profile, args.flavor, max_ground_size=_ground_cap())
    elif args.flavor == "free":
        value = kreweras_count(args.n, args.k)
    else:
        value = classical_profile_count(args.n, args.k)
    sys.stdout.write(f"{value}\n")
    return 0


def _cmd_transform(args, inputs: dict) -> int:
    seq = sequence_from_payload(_read_json(args.input, inputs))
    if seq.flavor != args.flavor:
        raise SchemaError(
            f"field 'flavor' is {seq.flavor!r} but the command asked for {args.flavor!r}"
        )
    if args.direction == "c2m":
        if seq.kind != "cumulants":
            raise SchemaError("field 'kind' must be 'cumulants' for direction c2m")
        out = cumulants_to_moments(seq)
    else:
        if seq.kind != "moments":
            raise SchemaError("field 'kind' must be 'moments' for direction m2c")
        out = moments_to_cumulants(seq)
    _emit_json(sequence_to_payload(out))
    return 0


def _cmd_clt_iterate(args, inputs: dict) -> int:
    seq = sequence_from_payload(_read_json(args.input, inputs))
    if seq.flavor != args.flavor:
        raise SchemaError(
            f"field 'flavor' is {seq.flavor!r} but the command asked for {args.flavor!r}"
        )
    if seq.kind != "moments":
        raise SchemaError("field 'kind' must be 'moments' for clt iterate")
    report = iterate_T(seq, args.steps)
    payload = {
        "flavor": report.flavor,
        "steps": report.steps,
        "moments": [_qsqrt2_pair(v) for v in report.moments],
        "gap_to_normal": [_qsqrt2_pair(v) for v in report.gap_to_normal],
        "initial_cumulants": [_qsqrt2_pair(v) for v in report.initial_cumulants],
        "final_cumulants": [_qsqrt2_pair(v) for v in report.final_cumulants],
        "decay_factors": [_qsqrt2_pair(v) for v in report.decay_factors],
        "decay_exact": report.decay_exact,
    }
    _emit_json(payload)
    return 0


def _cmd_clt_matrix(args, inputs: dict) -> int:
    matrix = build_lin_matrix(args.flavor, args.size, cap=max(args.size, DEFAULT_MATRIX_CAP))
    if args.csv:
        for i in range(1, args.size + 1):
            cells = [_int_cell(matrix.entry(i, j)) for j in range(1, i + 1)]
            sys.stdout.write(",".join(cells) + "\n")
    else:
        rows = [
            [_int_cell(matrix.entry(i, j)) for j in range(1, i + 1)]
            for i in range(1, args.size + 1)
        ]
        _emit_json({"flavor": args.flavor, "size": args.size, "rows": rows})
    return 0


def _cmd_clt_eigencheck(args, inputs: dict) -> int:
    verdicts = eigencheck(args.flavor, args.size, cap=max(args.size, DEFAULT_MATRIX_CAP))
    payload = {
        "flavor": args.flavor,
        "size": args.size,
        "columns": [
            {
                "column": v.column,
                "eigenvalue": _qsqrt2_pair(v.eigenvalue),
                "exact": v.exact,
            }
            for v in verdicts
        ],
        "all_exact": all(v.exact for v in verdicts),
    }
    _emit_json(payload)
    return 0 if payload["all_exact"] else 1


def _cmd_eigenfn(args, inputs: dict) -> int:
    if args.flavor == "classical":
        moments = hermite_density_moments(args.n, args.orders)
    else:
        moments = chebyshev_density_moments(args.n, args.orders)
    payload = {
        "flavor": args.flavor,
        "n": args.n,
        "moments": [_qsqrt2_pair(v) for v in moments.entries],
    }
    if args.density_samples:
        count = args.density_samples
        if args.flavor == "classical":
            xs = np.linspace(-5.0, 5.0, count)
            values = [hermite_density_value(args.n, x) for x in xs]
        else:
            # open interval: the density has inverse square-root edges
            xs = np.linspace(-2.0, 2.0, count + 2)[1:-1]
            values = [chebyshev_density_value(args.n, x) for x in xs]
        payload["density"] = [[float(x), float(v)] for x, v in zip(xs, values)]
    _emit_json(payload)
    return 0


def _cmd_analytic_freeconv(args, inputs: dict) -> int:
    mu = descriptor_from_payload(_read_json(args.a, inputs))
    nu = descriptor_from_payload(_read_json(args.b, inputs))
    table = free_convolve(mu, nu, args.grid)
    sys.stdout.write("x,density\n")
    for x, v in zip(table.grid, table.values):
        sys.stdout.write(f"{_float_cell(x)},{_float_cell(v)}\n")
    return 0


def _cmd_analytic_pdecheck(args, inputs: dict) -> int:
    if args.nu is None:
        nu = CHI
    else:
        nu = descriptor_from_payload(_read_json(args.nu, inputs))
    psi, psi_prime = args.psi
    residual = pde_theorem_check(nu, psi, args.z, psi_prime=psi_prime)
    _emit_json({"residual": float(residual)})
    return 0


def _cmd_analytic_eigden(args, inputs: dict) -> int:
    params = EigenParameter(args.x, args.y, args.phi)
    sys.stdout.write("x,density\n")
    for x in args.grid:
        value = eigen_density(params, float(x))
        sys.stdout.write(f"{_float_cell(x)},{_float_cell(value)}\n")
    return 0


# ---------------------------------------------------------------------------
# selftest: curated exact identities across all layers
# ---------------------------------------------------------------------------


def _selftest_checks(seed: int):
    rng = np.random.default_rng(seed)

    def random_qsqrt2() -> QSqrt2:
        return QSqrt2(
            Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 8))),
            Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 8))),
        )

    def check_algebra() -> bool:
        for _ in range(100):
            a, b = random_qsqrt2(), random_qsqrt2()
            if (a + b) * (a - b) != a * a - b * b:
                return False
            if b != QSqrt2.coerce(0) and (a / b) * b != a:
                return False
        return two_pow_half(3) == QSqrt2(0, 2) and two_pow_half(-2) == QSqrt2(Fraction(1, 2))

    def check_partitions() -> bool:
        bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
        catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
        for k in range(1, 9):
            full = sum(c for _, c in block_size_profiles(k, False))
            nc = sum(c for _, c in block_size_profiles(k, True))
            if full != bell[k] or nc != catalan[k]:
                return False
        for n in range(1, 5):
            for k in range(0, 3):
                if n + 2 * k > 8:
                    continue
                prof = BlockProfile(n, k)
                if count_profile(prof, "free") != kreweras_count(n, k):
                    return False
                if count_profile(prof, "classical") != classical_profile_count(n, k):
                    return False
        return True

    def check_transforms() -> bool:
        for flavor in ("free", "classical"):
            for _ in range(25):
                entries = tuple(random_qsqrt2() for _ in range(8))
                seq = Sequence(flavor, "cumulants", entries)
                back = moments_to_cumulants(cumulants_to_moments(seq))
                if back.entries != seq.entries:
                    return False
        return True

    def check_clt() -> bool:
        for flavor in ("free", "classical"):
            chi = chi_moments(flavor, 8)
            if apply_T(chi).entries != chi.entries:
                return False
            if not all(v.exact for v in eigencheck(flavor, 6)):
                return False
        bern = Sequence("free", "moments", [0, 1, 0, 1, 0, 1])
        gap = iterate_T(bern, 4).gap_to_normal[3]
        if gap != QSqrt2(Fraction(-1, 16)):
            return False
        bern_c = Sequence("classical", "moments", [0, 1, 0, 1, 0, 1])
        gap_c = iterate_T(bern_c, 4).gap_to_normal[3]
        return gap_c == QSqrt2(Fraction(-1, 8))

    def check_eigenfunctions() -> bool:
        for n in range(1, 7):
            for k in range(0, (20 - n) // 2 + 1):
                lhs, rhs = hermite_fourier_pair(n, k)
                if lhs != rhs:
                    return False
            if not lemma_Fn_identity(min(n, 4), 16):
                return False
        for n in range(1, 7):
            for m in range(1, 7):
                for t in range(0, 7):
                    lhs, rhs = rothe_identity(n, m, t)
                    if lhs != rhs:
                        return False
        return True

    def check_analytic() -> bool:
        beta = 1.0 / math.sqrt(2.0)
        for _ in range(5):
            z = complex(rng.uniform(-2, 2), rng.uniform(0.3, 3))
            omega = transition_omega(z)
            if abs(cauchy_transform(CHI, omega) - beta * cauchy_transform(CHI, z)) > 1e-9:
                return False
        for n in (1, 2, 3):
            lam = 2.0 ** (1.0 - n / 2.0)
            psi = analytic.chi_eigenfunction(n)
            z = complex(rng.uniform(-2, 2), rng.uniform(0.5, 2))
            got = dt_action_on_psi(psi, z)
            if abs(got - lam * psi(z)) > 1e-6 * abs(lam * psi(z)):
                return False
            if classical_fourier_check(n, 1.3) > 1e-12:
                return False
        return pde_theorem_check(CHI, lambda w: w * w, 1 + 2j) <= 1e-6

    return [
        ("algebra", check_algebra),
        ("partitions", check_partitions),
        ("transforms", check_transforms),
        ("clt", check_clt),
        ("eigenfunctions", check_eigenfunctions),
        ("analytic", check_analytic),
    ]


def _cmd_selftest(args, inputs: dict) -> int:
    failures = 0
    for name, check in _selftest_checks(args.seed):
        ok = check()
        sys.stdout.write(f"{'ok' if ok else 'FAIL'} {name}\n")
        failures += 0 if ok else 1
    sys.stdout.write(f"{'all checks passed' if not failures else 'FAILED'}\n")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# parser and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freeclt",
        description="Exact and analytic calculus for the central limit step "
        "in the classical and free flavors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_part = sub.add_parser("partitions", help="partition profile counting")
    part_sub = p_part.add_subparsers(dest="subcommand", required=True)
    p_count = part_sub.add_parser("count", help="count partitions with one size-n block and k pairs")
    p_count.add_argument("--n", type=int, required=True)
    p_count.add_argument("--k", type=int, required=True)
    p_count.add_argument("--flavor", choices=("free", "classical"), required=True)
    p_count.add_argument(
        "--oracle",
        action="store_true",
        help="count by brute-force enumeration instead of the closed form",
    )
    p_count.set_defaults(handler=_cmd_partitions_count)

    p_tr = sub.add_parser("transform", help="moment/cumulant transforms")
    p_tr.add_argument("--flavor", choices=("free", "classical"), required=True)
    p_tr.add_argument("--direction", choices=("m2c", "c2m"), required=True)
    p_tr.add_argument("--input", required=True, help="sequence JSON file")
    p_tr.set_defaults(handler=_cmd_transform)

    p_clt = sub.add_parser("clt", help="central limit step operations")
    clt_sub = p_clt.add_subparsers(dest="subcommand", required=True)
    p_it = clt_sub.add_parser("iterate", help="apply the limit step repeatedly")
    p_it.add_argument("--flavor", choices=("free", "classical"), required=True)
    p_it.add_argument("--input", required=True, help="moment sequence JSON file")
    p_it.add_argument("--steps", type=int, required=True)
    p_it.set_defaults(handler=_cmd_clt_iterate)
    p_mx = clt_sub.add_parser("matrix", help="linearization matrix at the normal law")
    p_mx.add_argument("--flavor", choices=("free", "classical"), required=True)
    p_mx.add_argument("--size", type=int, required=True)
    p_mx.add_argument("--csv", action="store_true")
    p_mx.set_defaults(handler=_cmd_clt_matrix)
    p_ec = clt_sub.add_parser("eigencheck", help="verify the eigenvalue relation exactly")
    p_ec.add_argument("--flavor", choices=("free", "classical"), required=True)
    p_ec.add_argument("--size", type=int, required=True)
    p_ec.set_defaults(handler=_cmd_clt_eigencheck)

    p_ef = sub.add_parser("eigenfn", help="eigenfunction moments and density samples")
    p_ef.add_argument("--flavor", choices=("free", "classical"), required=True)
    p_ef.add_argument("--n", type=int, required=True)
    p_ef.add_argument("--orders", type=int, required=True)
    p_ef.add_argument("--density-samples", type=int, default=0)
    p_ef.set_defaults(handler=_cmd_eigenfn)

    p_an = sub.add_parser("analytic", help="transform-side numerics")
    an_sub = p_an.add_subparsers(dest="subcommand", required=True)
    p_fc = an_sub.add_parser("freeconv", help="free additive convolution density")
    p_fc.add_argument("--a", required=True, help="descriptor JSON file")
    p_fc.add_argument("--b", required=True, help="descriptor JSON file")
    p_fc.add_argument("--grid", type=_grid_type, required=True, help="lo:hi:n")
    p_fc.set_defaults(handler=_cmd_analytic_freeconv)
    p_pde = an_sub.add_parser("pdecheck", help="evolution identity residual")
    p_pde.add_argument("--psi", type=_psi_type, required=True, help="poly:c0,c1,...")
    p_pde.add_argument("--z", type=_complex_type, required=True, help="re,im")
    p_pde.add_argument("--nu", default=None, help="descriptor JSON file (default: semicircle chi)")
    p_pde.set_defaults(handler=_cmd_analytic_pdecheck)
    p_ed = an_sub.add_parser("eigden", help="boundary eigenfunction density")
    p_ed.add_argument("--x", type=float, required=True)
    p_ed.add_argument("--y", type=float, default=0.0)
    p_ed.add_argument("--phi", type=float, default=0.0)
    p_ed.add_argument("--grid", type=_grid_type, required=True, help="lo:hi:n")
    p_ed.set_defaults(handler=_cmd_analytic_eigden)

    p_st = sub.add_parser("selftest", help="run the curated exact-identity suite")
    p_st.add_argument("--seed", type=int, default=20260818)
    p_st.set_defaults(handler=_cmd_selftest)

    return parser


# option values that may begin with '-' (grid specs, complex points); argparse
# would misread them as flags, so fold them into --opt=value form up front
_DASH_VALUE_FLAGS = ("--grid", "--z")


def _fold_dash_values(argv: list[str]) -> list[str]:
    folded = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in _DASH_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            folded.append(arg + "=" + argv[i + 1])
            i += 2
        else:
            folded.append(arg)
            i += 1
    return folded


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_fold_dash_values(argv))
    except SystemExit as exc:
        # argparse has already printed usage; normalize the exit code
        return 2 if exc.code not in (0, None) else 0
    start = time.monotonic()
    inputs: dict[str, str] = {}
    seed = getattr(args, "seed", None)
    try:
        return args.handler(args, inputs)
    except SchemaError as exc:
        sys.stderr.write(f"schema error: {exc}\n")
        return 3
    except json.JSONDecodeError as exc:
        sys.stderr.write(f"schema error: malformed JSON: {exc}\n")
        return 3
    except SizeLimitError as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return 4
    except (ValueError, RuntimeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    finally:
        manifest = {
            "command": ["freeclt"] + argv,
            "inputs": inputs,
            "tool_version": __version__,
            "seed": seed,
            "wall_time_s": round(time.monotonic() - start, 6),
        }
        sys.stderr.write(json.dumps(manifest) + "\n")


def run() -> None:
    sys.exit(main())
