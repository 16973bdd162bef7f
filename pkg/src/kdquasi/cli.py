"""Command-line front end.

    kdquasi analyze --state rho.json --model qubit-z [--p 0.75] [--tol 1e-9] [--out DIR]
    kdquasi tomography --state rho.json
    kdquasi demo qubit | bell
    kdquasi sample-classical --model incoherent -n 5 --seed 1

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 degenerate input
(state not detected by the chosen witness source).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import chain as chainmod
from . import qcore, quasiprob, resources, weakval, witness
from .errors import (DegenerateInputError, DimensionError, KDError, NotDetectedError,
                     StateFileError, ValidationError)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_DEGENERATE = 0, 1, 2, 3
DEFAULT_TOL = 1e-9
TOL_ENV = "QKD_TOL"


# --- state files -----------------------------------------------------------

def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def parse_state_data(data, tol: float = DEFAULT_TOL) -> np.ndarray:
    if not isinstance(data, dict) or "matrix" not in data:
        raise StateFileError('state file needs a "matrix" field')
    try:
        arr = np.asarray(data["matrix"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"matrix entries must be [re, im] pairs: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise StateFileError(f"matrix must be a square nested array of [re, im] pairs, got shape {arr.shape}")
    if "dim" in data and data["dim"] != arr.shape[0]:
        raise StateFileError(f'"dim" = {data["dim"]} does not match matrix size {arr.shape[0]}')
    return qcore.density_matrix(arr[..., 0] + 1j * arr[..., 1], tol)


def parse_state_file(path, fmt: str = "json-matrix", tol: float = DEFAULT_TOL) -> np.ndarray:
    """Read a density matrix stored as ``{"matrix": [[[re, im], ...], ...], "dim": n}``."""
    if fmt != "json-matrix":
        raise StateFileError(f"unsupported state format {fmt!r}")
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_state_data(data, tol)


def write_state_file(path, rho):
    Path(path).write_text(json.dumps({"dim": len(rho), "matrix": matrix_to_json(rho)}))


def digest(rho) -> str:
    m = np.ascontiguousarray(np.asarray(rho, dtype=complex))
    return hashlib.sha256(m.tobytes()).hexdigest()[:16]


# --- reports ---------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, complex):
        return f"{x.real:.12g}{x.imag:+.12g}j"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    if isinstance(x, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


@dataclass
class AnalysisReport:
    input_digest: str
    model: str
    witness_source: str
    witness_spectrum: list
    scale: float
    chain_slots: int
    chain_residual: float
    witness_event: float
    total_negativity: float
    distribution_sum: float
    distance_estimate: float
    closest_distance: float | None = None
    p_param: float = weakval.DEFAULT_P
    terms: list = field(default_factory=list)
    anomalous: list = field(default_factory=list)
    decomposition_sum: float = 0.0
    decomposition_partial: bool = False
    tomography_error: float | None = None

    def numeric_fields_finite(self) -> bool:
        xs = [self.scale, self.chain_residual, self.witness_event, self.total_negativity,
              self.distribution_sum, self.distance_estimate, self.decomposition_sum]
        xs += list(self.witness_spectrum)
        for extra in (self.closest_distance, self.tomography_error):
            if extra is not None:
                xs.append(extra)
        return bool(np.all(np.isfinite(xs)))

    def items(self):
        yield "input_digest", self.input_digest
        yield "model", self.model
        yield "witness.source", self.witness_source
        yield "witness.spectrum", self.witness_spectrum
        yield "witness.scale", self.scale
        yield "chain.slots", self.chain_slots
        yield "chain.residual", self.chain_residual
        yield "distribution.sum", self.distribution_sum
        yield "distribution.witness_event", self.witness_event
        yield "distribution.total_negativity", self.total_negativity
        yield "distribution.distance_estimate", self.distance_estimate
        if self.closest_distance is not None:
            yield "distribution.closest_classical_distance", self.closest_distance
        yield "weak_values.p", self.p_param
        for t in self.terms:
            tag = f"weak_values.{t.label}"
            yield f"{tag}.eigenvalue", t.eigenvalue
            yield f"{tag}.coefficient", t.coefficient
            yield f"{tag}.value", "undefined" if t.value is None else t.value
        yield "weak_values.sum", self.decomposition_sum
        yield "weak_values.partial", self.decomposition_partial
        yield "weak_values.anomalous", [self.terms[i].label for i in self.anomalous]
        if self.tomography_error is not None:
            yield "tomography.roundtrip_error", self.tomography_error

    def to_text(self) -> str:
        return "".join(f"{k}: {_fmt(v)}\n" for k, v in self.items())


def analyze_state(rho, model: resources.ClassicalSetModel, p: float = weakval.DEFAULT_P,
                  tol: float = DEFAULT_TOL, user_w=None, tomography: bool = False):
    """Run witness -> chain -> distribution -> weak values on ``rho``.

    Returns ``(report, distribution)``.
    """
    rho = qcore.density_matrix(rho, tol)
    if user_w is not None:
        w = witness.user_witness(user_w)
    elif model.has_exact_solver:
        w = witness.geometric_witness(rho, model, tol)
    else:
        w = witness.witness_for(rho, model)
    ew = witness.extend_and_scale(w)
    chain, dist = quasiprob.witness_distribution(rho, ew)
    residual = chainmod.verify_chain(chain, ew)
    dec = weakval.conical_decomposition(ew, rho, p)
    anomalies = weakval.detect_anomalous(dec.terms, tol)
    closest = None
    if model.has_exact_solver and rho.shape[0] == model.dim:
        closest = resources.closest_classical(rho, model)[1]
    tomo = None
    if tomography and rho.shape == (2, 2):
        tomo = qcore.frobenius_distance(
            quasiprob.reconstruct_state(quasiprob.sic_marginals(rho)), rho)
    report = AnalysisReport(
        input_digest=digest(rho),
        model=model.describe(),
        witness_source=w.source,
        witness_spectrum=[float(v) for v in w.spectrum()],
        scale=ew.scale,
        chain_slots=len(chain),
        chain_residual=residual,
        witness_event=dist.all_zeros,
        total_negativity=quasiprob.total_negativity(dist),
        distribution_sum=dist.total(),
        distance_estimate=-dist.all_zeros / ew.scale,
        closest_distance=closest,
        p_param=p,
        terms=dec.terms,
        anomalous=anomalies.flags,
        decomposition_sum=dec.total,
        decomposition_partial=dec.partial,
        tomography_error=tomo,
    )
    return report, dist


# --- argument parsing ------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def resolve_tol(flag: float | None) -> float:
    if flag is not None:
        return flag
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise ValidationError("tolerance", message=f"{TOL_ENV}={env!r} is not a number") from None
    return DEFAULT_TOL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kdquasi", description="Certify quantum resources with Kirkwood-Dirac type quasiprobabilities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="witness, chain, distribution and weak values for a state")
    a.add_argument("--state", required=True)
    a.add_argument("--model", required=True)
    a.add_argument("--witness", help="JSON matrix file with a user-supplied Hermitian witness")
    a.add_argument("--p", type=float, default=weakval.DEFAULT_P)
    a.add_argument("--tol", type=float)
    a.add_argument("--out")
    a.add_argument("--tomography", action="store_true", help="also report the SIC round-trip error (qubits)")

    t = sub.add_parser("tomography", help="informationally complete distribution and SIC reconstruction")
    t.add_argument("--state", required=True)
    t.add_argument("--model", default="qubit-z")
    t.add_argument("--witness", help="reference witness (needed for classical states)")
    t.add_argument("--tol", type=float)
    t.add_argument("--out")

    d = sub.add_parser("demo", help="worked examples")
    d.add_argument("which", choices=["qubit", "bell"])
    d.add_argument("--p", type=float, default=weakval.DEFAULT_P)
    d.add_argument("--out")

    s = sub.add_parser("sample-classical", help="emit classical states as JSON")
    s.add_argument("--model", required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dim", type=int, default=2, help="dimension for the incoherent model")
    s.add_argument("--out")
    return parser


def _read_witness(path):
    try:
        data = json.loads(Path(path).read_text())
        arr = np.asarray(data["matrix"], dtype=float)
        return arr[..., 0] + 1j * arr[..., 1]
    except (OSError, KeyError, ValueError, TypeError, IndexError) as exc:
        raise StateFileError(f"cannot read witness file {path}: {exc}") from None


def _emit(text: str, out_dir, name: str):
    sys.stdout.write(text)
    if out_dir:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        (Path(out_dir) / name).write_text(text)


def _cmd_analyze(args) -> int:
    tol = resolve_tol(args.tol)
    rho = parse_state_file(args.state, tol=tol)
    model = resources.model_from_name(args.model, dim=rho.shape[0])
    user_w = _read_witness(args.witness) if args.witness else None
    report, dist = analyze_state(rho, model, args.p, tol, user_w, args.tomography)
    _emit(report.to_text(), args.out, "report.txt")
    if args.out:
        dist.write_csv(Path(args.out) / "distribution.csv")
    return EXIT_OK


def _cmd_tomography(args) -> int:
    tol = resolve_tol(args.tol)
    rho = parse_state_file(args.state, tol=tol)
    model = resources.model_from_name(args.model, dim=rho.shape[0])
    ref = witness.user_witness(_read_witness(args.witness)) if args.witness else None
    ic = quasiprob.build_infocomplete(rho, model, ref)
    rec = quasiprob.reconstruct_state(ic.marginals)
    lines = [
        ("input_digest", digest(rho)),
        ("model", model.describe()),
        ("witness.scale", ic.ew.scale),
        ("distribution.slots", ic.dist.num_slots),
        ("distribution.sum", ic.dist.total()),
        ("sic_marginals", ic.marginals),
        ("py", ic.py),
        ("py.witness_event", ic.witness_event),
        ("py.remainder", ic.py[-1]),
        ("tomography.roundtrip_error", qcore.frobenius_distance(rec, rho)),
        ("note", "only py.witness_event certifies the resource; the remainder can be "
                 "negative for classical states because SIC marginal events overlap"),
    ]
    _emit("".join(f"{k}: {_fmt(v)}\n" for k, v in lines), args.out, "tomography.txt")
    if args.out:
        ic.dist.write_csv(Path(args.out) / "distribution.csv")
    return EXIT_OK


def _cmd_sample(args) -> int:
    model = resources.model_from_name(args.model, dim=args.dim)
    states = resources.sample_classical(model, args.n, args.seed)
    payload = {"model": model.describe(), "seed": args.seed,
               "states": [{"dim": len(s), "matrix": matrix_to_json(s)} for s in states]}
    text = json.dumps(payload, indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_demo(args) -> int:
    from . import demos
    text, dist = demos.qubit_demo(args.p) if args.which == "qubit" else demos.bell_demo(args.p)
    _emit(text, args.out, f"demo_{args.which}.txt")
    if args.out:
        dist.write_csv(Path(args.out) / f"demo_{args.which}.csv")
    return EXIT_OK


COMMANDS = {
    "analyze": _cmd_analyze,
    "tomography": _cmd_tomography,
    "demo": _cmd_demo,
    "sample-classical": _cmd_sample,
}


def run_command(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DegenerateInputError, NotDetectedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValidationError, StateFileError, DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KDError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main(argv=None):
    try:
        code = run_command(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    sys.exit(code)


if __name__ == "__main__":
    main()
