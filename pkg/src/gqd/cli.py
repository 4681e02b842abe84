"""Command-line interface.

Subcommands:

* ``compute``: discord of a single state document (JSON), numeric or closed
  form, result printed as one JSON record on stdout;
* ``figure1``: CSV of the GHZ-mixture discord versus noise weight for a list
  of qubit counts, ``inf`` selecting the asymptotic line;
* ``dephase-scan``: CSV of the closed-form discord along a phase-damping
  grid plus a structure report (transition, kinks, plateaus) on stdout;
* ``verify``: run the self-check suites and report margins.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 qubit limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from .checks import SCOPES, run_checks
from .discord import (
    GqdResult,
    InvalidParamsError,
    OptimizerOptions,
    PauliDiagonalParams,
    QubitLimitError,
    WernerGhzParams,
    gqd_numeric,
    gqd_pauli_diagonal,
    gqd_werner_ghz,
    gqd_werner_ghz_asymptotic,
    pauli_diagonal_state,
    require_valid_pauli_params,
    werner_ghz_state,
)
from .dynamics import scan_gqd_vs_p
from .qcore import DensityMatrix, StateValidationError

__all__ = [
    "DocumentError",
    "StateDocument",
    "load_state_document",
    "save_state_document",
    "main",
]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_QUBIT_LIMIT = 3


class DocumentError(ValueError):
    """A state document is malformed or used with the wrong method."""


@dataclass(frozen=True)
class StateDocument:
    """Parsed state description: a dense matrix or family parameters."""

    kind: str
    n_qubits: int
    mu: float | None = None
    coefficients: tuple[float, float, float] | None = None
    matrix: np.ndarray | None = None

    def to_density_matrix(self) -> DensityMatrix:
        if self.kind == "dense":
            return DensityMatrix(self.matrix)
        if self.kind == "werner_ghz":
            return werner_ghz_state(WernerGhzParams(self.n_qubits, self.mu))
        params = PauliDiagonalParams(self.n_qubits, *self.coefficients)
        return pauli_diagonal_state(params)

    def closed_form(self) -> tuple[float, str]:
        if self.kind == "werner_ghz":
            return gqd_werner_ghz(WernerGhzParams(self.n_qubits, self.mu)), "werner_ghz"
        if self.kind == "pauli_diagonal":
            params = PauliDiagonalParams(self.n_qubits, *self.coefficients)
            require_valid_pauli_params(params)
            return gqd_pauli_diagonal(params), "pauli_diagonal"
        raise DocumentError("closed form unavailable for dense state documents")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DocumentError(message)


def _parse_matrix(raw, n_qubits: int) -> np.ndarray:
    d = 2**n_qubits
    arr = np.asarray(raw, dtype=float)
    _require(
        arr.shape == (d, d, 2),
        f"dense matrix must be a {d}x{d} grid of [re, im] pairs, "
        f"got shape {arr.shape}",
    )
    return arr[..., 0] + 1j * arr[..., 1]


def state_document_from_dict(data: dict) -> StateDocument:
    _require(isinstance(data, dict), "state document must be a JSON object")
    kind = data.get("kind")
    _require(
        kind in ("dense", "werner_ghz", "pauli_diagonal"),
        f"unknown document kind {kind!r}",
    )
    n = data.get("n_qubits")
    _require(isinstance(n, int) and n >= 1, f"n_qubits must be a positive integer, got {n!r}")
    if kind == "dense":
        _require("matrix" in data, "dense document needs a 'matrix' field")
        return StateDocument(kind, n, matrix=_parse_matrix(data["matrix"], n))
    if kind == "werner_ghz":
        mu = data.get("mu")
        _require(isinstance(mu, (int, float)), "werner_ghz document needs numeric 'mu'")
        return StateDocument(kind, n, mu=float(mu))
    coeffs = []
    for key in ("c1", "c2", "c3"):
        v = data.get(key)
        _require(isinstance(v, (int, float)), f"pauli_diagonal document needs numeric {key!r}")
        coeffs.append(float(v))
    return StateDocument(kind, n, coefficients=tuple(coeffs))


def load_state_document(path: str) -> StateDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read state document: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"state document is not valid JSON: {exc}") from exc
    return state_document_from_dict(data)


def save_state_document(path: str, doc: StateDocument) -> None:
    """Write a document as JSON; floats keep their exact repr round-trip."""
    data: dict = {"kind": doc.kind, "n_qubits": doc.n_qubits}
    if doc.kind == "dense":
        mat = np.asarray(doc.matrix, dtype=np.complex128)
        data["matrix"] = [
            [[float(v.real), float(v.imag)] for v in row] for row in mat
        ]
    elif doc.kind == "werner_ghz":
        data["mu"] = float(doc.mu)
    else:
        data["c1"], data["c2"], data["c3"] = (float(c) for c in doc.coefficients)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(data, fh)
        fh.write("\n")


def _fmt(x: float) -> str:
    """Fixed CSV float format: 12 significant digits, '.' decimal separator."""
    return f"{x:.12g}"


def _optimizer_options(args) -> OptimizerOptions:
    kwargs = {"seed": args.seed, "max_qubits": args.max_n}
    if args.starts is not None:
        kwargs["starts"] = args.starts
    if args.tol is not None:
        kwargs["f_tol"] = args.tol
    return OptimizerOptions(**kwargs)


def _result_record(result: GqdResult, seed: int, wall_time: float) -> dict:
    measurement = None
    if result.optimal_measurement is not None:
        measurement = [
            [d.x, d.y, d.z] for d in result.optimal_measurement.directions
        ]
    return {
        "value": result.value,
        "method": result.method,
        "optimal_measurement": measurement,
        "seed": seed,
        "wall_time_s": wall_time,
        "diagnostics": asdict(result.diagnostics) if result.diagnostics else None,
    }


def cmd_compute(args) -> int:
    doc = load_state_document(args.input)
    method = args.method
    if method == "auto":
        method = "numeric" if doc.kind == "dense" else "closed"
    t0 = time.perf_counter()
    if method == "closed":
        value, tag = doc.closed_form()
        result = GqdResult(value=max(value, 0.0), method=tag)
    else:
        if doc.n_qubits > args.max_n:
            raise QubitLimitError(
                f"document has {doc.n_qubits} qubits, above the dense limit "
                f"of {args.max_n}"
            )
        result = gqd_numeric(doc.to_density_matrix(), _optimizer_options(args))
    record = _result_record(result, args.seed, time.perf_counter() - t0)
    print(json.dumps(record))
    return EXIT_OK


def _parse_n_list(text: str) -> list[object]:
    out: list[object] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token == "inf":
            out.append("inf")
            continue
        try:
            n = int(token)
        except ValueError:
            raise DocumentError(f"n list entries must be integers or 'inf', got {token!r}")
        if n < 2:
            raise DocumentError(f"qubit counts must be >= 2, got {n}")
        out.append(n)
    if not out:
        raise DocumentError("n list must not be empty")
    return out


def cmd_figure1(args) -> int:
    n_list = _parse_n_list(args.n_list)
    if args.mu_steps < 2:
        raise DocumentError(f"mu-steps must be >= 2, got {args.mu_steps}")
    mus = np.linspace(0.0, 1.0, args.mu_steps)
    lines = ["mu,n,gqd_bits"]
    for n in n_list:
        for mu in mus:
            if n == "inf":
                value = gqd_werner_ghz_asymptotic(float(mu))
                label = "inf"
            else:
                value = gqd_werner_ghz(WernerGhzParams(n, float(mu)))
                label = str(n)
            lines.append(f"{_fmt(float(mu))},{label},{_fmt(value)}")
    _write_lines(args.out, lines)
    return EXIT_OK


def _write_lines(path: str, lines: list[str]) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise DocumentError(f"cannot write output file: {exc}") from exc


def cmd_dephase_scan(args) -> int:
    if args.p_steps < 3:
        raise DocumentError(f"p-steps must be >= 3, got {args.p_steps}")
    params = PauliDiagonalParams(args.n, args.c1, args.c2, args.c3)
    grid = np.linspace(0.0, 1.0, args.p_steps)
    records, report = scan_gqd_vs_p(params, grid)
    lines = ["p,c1_p,c2_p,c3_p,gqd_bits,active_branch"]
    for r in records:
        lines.append(
            f"{_fmt(r.p)},{_fmt(r.c1_p)},{_fmt(r.c2_p)},{_fmt(r.c3_p)},"
            f"{_fmt(r.gqd)},{r.active_branch}"
        )
    _write_lines(args.out, lines)
    if report.predicted_transition_p is None:
        print("predicted transition: none")
    else:
        print(f"predicted transition: p* = {_fmt(report.predicted_transition_p)}")
    if report.kinks:
        print("detected kinks: " + ", ".join(f"p = {_fmt(k)}" for k in report.kinks))
    else:
        print("detected kinks: none")
    if report.plateaus:
        for pl in report.plateaus:
            print(
                f"plateau: p in [{_fmt(pl.p_start)}, {_fmt(pl.p_end)}], "
                f"value {_fmt(pl.value)}, spread {pl.max_deviation:.3e}"
            )
    else:
        print("plateaus: none")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_checks(scope=args.scope, seed=args.seed, trials=args.trials)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"[{status}] {r.name:<28s} margin {r.margin:.12g}  tol {r.tolerance:g}"
        if r.detail:
            line += f"  ({r.detail})"
        print(line)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        print(f"first failing check: {failed[0].name}")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gqd",
        description="Global quantum discord of multi-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_out=False):
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        p.add_argument("--starts", type=int, default=None, help="optimizer starts")
        p.add_argument("--tol", type=float, default=None, help="optimizer objective tolerance")
        p.add_argument("--max-n", type=int, default=12, help="dense qubit limit (default 12)")
        if needs_out:
            p.add_argument("--out", required=True, help="output CSV path")

    p_compute = sub.add_parser("compute", help="discord of one state document")
    p_compute.add_argument("--input", required=True, help="state document (JSON)")
    p_compute.add_argument(
        "--method", choices=("auto", "numeric", "closed"), default="auto"
    )
    add_common(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_fig = sub.add_parser("figure1", help="GHZ-mixture discord vs noise weight")
    p_fig.add_argument(
        "--n-list", default="2,3,5,inf",
        help="comma list of qubit counts, 'inf' for the asymptote",
    )
    p_fig.add_argument("--mu-steps", type=int, default=101, help="grid points on [0, 1]")
    add_common(p_fig, needs_out=True)
    p_fig.set_defaults(func=cmd_figure1)

    p_scan = sub.add_parser("dephase-scan", help="discord along a phase-damping grid")
    p_scan.add_argument("--n", type=int, required=True, help="number of qubits")
    p_scan.add_argument("--c1", type=float, required=True)
    p_scan.add_argument("--c2", type=float, required=True)
    p_scan.add_argument("--c3", type=float, required=True)
    p_scan.add_argument("--p-steps", type=int, default=101, help="grid points on [0, 1]")
    add_common(p_scan, needs_out=True)
    p_scan.set_defaults(func=cmd_dephase_scan)

    p_verify = sub.add_parser("verify", help="run the self-check suites")
    p_verify.add_argument("--scope", choices=SCOPES, default="all")
    p_verify.add_argument("--trials", type=int, default=100)
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QubitLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_QUBIT_LIMIT
    except (DocumentError, InvalidParamsError, StateValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
