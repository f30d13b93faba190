# Copyright 2026 The polynorm Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Command-line entry point: ``polynorm {certify,approximate,fit,jsr,sos}``.

Every subcommand writes one JSON report (stdout, or ``--report``) and returns an exit code:

- 0: certified / SOS / fit succeeded
- 2: refuted by a sampled witness
- 3: not certified, or numerically not SOS
- 4: solver trouble (iteration limit, no usable margin)
- 64: malformed input
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, NoReturn, Optional

import yaml
from pydantic import BaseModel, ValidationError

from polynorm.approx import (
    ApproxMethod,
    TargetNorm,
    approximate_target,
    emit_level_set,
    fit_polynomial_norm,
    read_samples,
    write_points,
)
from polynorm.certify import certify_pd_hessian, certify_polynomial_norm
from polynorm.common import THREADS_ENV, ReportCollector, load_run_file
from polynorm.conic import SolverStatus, export_sdpa
from polynorm.errors import InputFormatError, PolynormError, SolverError
from polynorm.forms import Form, read_form, write_form
from polynorm.jsr import (
    emit_contraction_figure,
    jsr_certify,
    jsr_lower_bound,
    jsr_upper_bound,
    read_matrices,
    write_contraction_figure,
)
from polynorm.jsr.certify import LOWER_BOUND_LENGTH
from polynorm.schema.config import RunConfig, Subcommand
from polynorm.schema.norms import NormVerdict
from polynorm.sos import SosVerdict, is_r_sos, is_r_sos_convex, sos_program

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REFUTED = 2
EXIT_NOT_CERTIFIED = 3
EXIT_SOLVER = 4
EXIT_INPUT = 64

DEFAULT_DEGREE = 6
TOLERANCE_OPTIONS = ("eig_tol", "res_tol", "not_sos_margin", "solver_tol", "max_iters")
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

INPUT_ERRORS = (PolynormError, ValidationError, yaml.YAMLError, OSError)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the malformed-input code so they never read as a verdict."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _degree_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=Path, help="YAML run file with defaults for any option")
    common.add_argument("--report", type=Path, help="write the JSON report here instead of stdout")
    common.add_argument("--seed", type=int, help="seed for every random draw (default: 0)")
    common.add_argument("--threads", type=int, help=f"worker threads; overrides {THREADS_ENV}")
    common.add_argument(
        "-v", "--verbose", dest="verbosity", action="count", help="log INFO to stderr; repeat for DEBUG"
    )
    tolerances = common.add_argument_group("tolerances")
    tolerances.add_argument("--eig-tol", dest="eig_tol", type=float, help="Gram eigenvalue floor (default: 1e-7)")
    tolerances.add_argument("--res-tol", dest="res_tol", type=float, help="relative residual (default: 1e-7)")
    tolerances.add_argument(
        "--not-sos-margin", dest="not_sos_margin", type=float, help="infeasibility margin (default: 1e-6)"
    )
    tolerances.add_argument("--solver-tol", dest="solver_tol", type=float, help="solver accuracy (default: 1e-8)")
    tolerances.add_argument("--max-iters", dest="max_iters", type=int, help="solver iterations (default: 200)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(prog="polynorm", description="Certify, fit and use polynomial norms.")
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text, argument_default=argparse.SUPPRESS)

    certify = add(Subcommand.CERTIFY, "decide whether f^(1/d) is a norm")
    certify.add_argument("--form", type=Path, help="form JSON")
    certify.add_argument("--r-max", dest="r_max", type=int, help="largest multiplier degree r (default: 3)")
    certify.add_argument("--deg-q", dest="deg_q", type=int, help="first degree of the q multiplier (default: 0)")
    certify.add_argument("--max-deg-q", dest="max_deg_q", type=int, help="last degree of q (default: 4)")
    certify.add_argument("--hessian", action="store_true", help="certify a positive definite Hessian instead")
    certify.add_argument("--emit-cert", dest="emit_cert", type=Path, help="write the certificate JSON here")

    approximate = add(Subcommand.APPROXIMATE, "approximate a norm by a polynomial norm")
    approximate.add_argument("--target", help="p:<p>, polytope:<vertices.json> or octagon:<seed>")
    approximate.add_argument("--dimension", type=int, help="number of variables for p-norm targets (default: 2)")
    approximate.add_argument("--degree", type=int, help=f"even degree d (default: {DEFAULT_DEGREE})")
    approximate.add_argument("--method", choices=[m.value for m in ApproxMethod], help="fit or moment (default: fit)")
    approximate.add_argument("--n-samples", dest="n_samples", type=int, help="fit samples (default: 200)")
    approximate.add_argument("--emit-levelset", dest="emit_levelset", type=Path, help="unit level set CSV (n=2)")
    approximate.add_argument("--resolution", type=int, help="level set points (default: 360)")
    approximate.add_argument("--emit-cert", dest="emit_cert", type=Path, help="write the fitted form JSON here")

    fit = add(Subcommand.FIT, "fit an sos-convex form to sampled norm values")
    fit.add_argument("--samples", type=Path, help="CSV: coordinates then the value, one point per line")
    fit.add_argument("--degree", type=int, help=f"even degree d (default: {DEFAULT_DEGREE})")
    fit.add_argument("--emit-levelset", dest="emit_levelset", type=Path, help="unit level set CSV (n=2)")
    fit.add_argument("--resolution", type=int, help="level set points (default: 360)")
    fit.add_argument("--emit-cert", dest="emit_cert", type=Path, help="write the fitted form JSON here")

    jsr = add(Subcommand.JSR, "certify a joint spectral radius below one")
    jsr.add_argument("--matrices", type=Path, help='JSON: {"n": int, "matrices": [...]}')
    jsr.add_argument("--degrees", type=_degree_list, help="comma-separated even degrees (default: 2,4,6,8)")
    jsr.add_argument("--r", type=int, help="multiplier degree for r-sos-convexity (default: 0)")
    jsr.add_argument("--upper-bound", dest="upper_bound", action="store_true", help="bisect for an upper bound")
    jsr.add_argument("--tol", type=float, help="bisection tolerance (default: 1e-3)")
    jsr.add_argument("--emit-figure", dest="emit_figure", type=Path, help="level set and images CSV (n=2)")
    jsr.add_argument("--resolution", type=int, help="level set points (default: 360)")
    jsr.add_argument("--emit-cert", dest="emit_cert", type=Path, help="write the certificate JSON here")

    sos = add(Subcommand.SOS, "decide whether (sum x_i^2)^r f is a sum of squares")
    sos.add_argument("--form", type=Path, help="form JSON")
    sos.add_argument("--r", type=int, help="multiplier degree (default: 0)")
    sos.add_argument("--convex", action="store_true", help="ask about sos-convexity instead")
    sos.add_argument("--emit-cert", dest="emit_cert", type=Path, help="write the Gram certificate JSON here")
    sos.add_argument("--export-sdpa", dest="export_sdpa", type=Path, help="write the compiled problem in SDPA format")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merges the YAML run file (if any) with the flags given on the command line; flags win."""
    given = dict(vars(args))
    config_path: Optional[Path] = given.pop("config", None)
    values = load_run_file(config_path, RunConfig.model_fields) if config_path is not None else {}
    tolerances = values.pop("tolerances", None) or {}
    if not isinstance(tolerances, dict):
        raise InputFormatError(str(config_path), "tolerances must be a mapping", field="tolerances")
    tolerances = {str(k).replace("-", "_"): v for k, v in tolerances.items()}
    for key in TOLERANCE_OPTIONS:
        if key in given:
            tolerances[key] = given.pop(key)
    values.update(given)
    values["tolerances"] = tolerances
    return RunConfig.model_validate(values)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format=LOG_FORMAT, force=True)


def _required(value: Optional[Any], subcommand: str, option: str) -> Any:
    if value is None:
        raise InputFormatError("command line", f"{subcommand} needs {option}")
    return value


def _write_json(model: BaseModel, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def _degree(config: RunConfig) -> int:
    d = DEFAULT_DEGREE if config.degree is None else config.degree
    if d < 2 or d % 2:
        raise InputFormatError("command line", f"--degree must be even and >= 2, got {d}")
    return d


def _emit_form_artifacts(f: Optional[Form], config: RunConfig, collector: ReportCollector) -> None:
    if f is None:
        if config.emit_levelset or config.emit_cert:
            logger.warning("no form was produced; skipping the requested artifacts")
        return
    if config.emit_cert:
        write_form(f, config.emit_cert)
        collector.record("certificate_path", str(config.emit_cert))
    if config.emit_levelset:
        points = emit_level_set(f, 1.0, config.resolution)
        write_points(config.emit_levelset, points, header=["x1", "x2"])
        collector.record("levelset_path", str(config.emit_levelset))


def _run_certify(config: RunConfig, collector: ReportCollector) -> int:
    form_path = _required(config.form, "certify", "--form")
    f = read_form(form_path)
    collector.record("input", str(form_path))
    with collector.timed("certify"):
        if config.hessian:
            result: Any = certify_pd_hessian(f, r_max=config.r_max, tolerances=config.tolerances, seed=config.seed)
        else:
            result = certify_polynomial_norm(
                f,
                r_max=config.r_max,
                deg_q=config.deg_q,
                max_deg_q=config.max_deg_q,
                tolerances=config.tolerances,
                seed=config.seed,
            )
    kind = "positive definite Hessian" if config.hessian else "polynomial norm"
    collector.update(
        {"verdict": result.verdict, "rungs": result.rungs, "bounds": result.bounds, "witness": result.witness}
    )
    if result.note:
        collector.record("note", result.note)
    cert = result.certificate
    if cert is not None:
        deg_q = getattr(cert, "deg_q", 0)
        collector.record("summary", f"{kind} certified with multiplier r={cert.r}, deg_q={deg_q}")
        collector.update({"r": cert.r, "c": cert.c})
        if config.emit_cert:
            collector.record("certificate_path", str(_write_json(cert, config.emit_cert)))
    elif result.verdict == NormVerdict.REFUTED:
        witness = result.witness.kind if result.witness is not None else "sampled"
        collector.record("summary", f"not a {kind}: {witness} witness found")
    else:
        collector.record("summary", f"{kind} not certified up to r={config.r_max}")

    if result.verdict == NormVerdict.CERTIFIED:
        return EXIT_OK
    if result.verdict == NormVerdict.REFUTED:
        return EXIT_REFUTED
    return EXIT_SOLVER if result.solver_trouble else EXIT_NOT_CERTIFIED


def _run_sos(config: RunConfig, collector: ReportCollector) -> int:
    form_path = _required(config.form, "sos", "--form")
    f = read_form(form_path)
    collector.record("input", str(form_path))
    if config.export_sdpa:
        export_sdpa(sos_program(f, config.r, config.convex).compile(), config.export_sdpa)
        collector.record("sdpa_path", str(config.export_sdpa))
    with collector.timed("solve"):
        check = is_r_sos_convex if config.convex else is_r_sos
        result = check(f, config.r, config.tolerances)
    kind = "SOS-convex" if config.convex else "SOS"
    collector.update({"verdict": result.verdict, "r": result.r, "margin": result.margin, "solver": result.solver})
    if result.note:
        collector.record("note", result.note)
    if result.verdict == SosVerdict.SOS:
        collector.record("summary", f"{kind} with multiplier r={result.r}")
    elif result.verdict == SosVerdict.NOT_SOS:
        collector.record("summary", f"not {kind} with multiplier r={result.r}")
    else:
        collector.record("summary", f"undecided at multiplier r={result.r}")
    if result.certificate is not None and config.emit_cert:
        collector.record("certificate_path", str(_write_json(result.certificate, config.emit_cert)))

    if result.verdict == SosVerdict.SOS:
        return EXIT_OK
    if result.status == SolverStatus.ITER_LIMIT or (result.verdict == SosVerdict.UNDECIDED and result.margin is None):
        return EXIT_SOLVER
    return EXIT_NOT_CERTIFIED


def _run_approximate(config: RunConfig, collector: ReportCollector) -> int:
    text = _required(config.target, "approximate", "--target")
    try:
        target = TargetNorm.parse(text, config.dimension)
    except ValueError as e:
        raise InputFormatError("--target", str(e)) from e
    d = _degree(config)
    method = ApproxMethod(config.method)
    with collector.timed("approximate"):
        report = approximate_target(target, d, method, config.n_samples, config.seed, config.tolerances)
    collector.update({"target": target.name, "approximation": report, "approx_factor": report.approx_factor})
    _emit_form_artifacts(report.form, config, collector)
    if method == ApproxMethod.FIT and (report.fit is None or report.fit.form is None):
        return EXIT_SOLVER
    return EXIT_OK


def _run_fit(config: RunConfig, collector: ReportCollector) -> int:
    samples = _required(config.samples, "fit", "--samples")
    points, values = read_samples(samples)
    collector.record("input", str(samples))
    d = _degree(config)
    with collector.timed("fit"):
        result = fit_polynomial_norm(points, values, d, config.tolerances)
    collector.update({"fit": result, "bound_holds": result.bound_holds})
    _emit_form_artifacts(result.form, config, collector)
    return EXIT_OK if result.form is not None else EXIT_SOLVER


def _run_jsr(config: RunConfig, collector: ReportCollector) -> int:
    matrices = _required(config.matrices, "jsr", "--matrices")
    family = read_matrices(matrices)
    if config.emit_figure and family.n != 2:
        raise InputFormatError(str(matrices), f"figures are drawn for 2x2 families only, got n={family.n}")
    collector.record("input", str(matrices))
    collector.record("lower_bound", jsr_lower_bound(family, LOWER_BOUND_LENGTH))
    with collector.timed("certify"):
        result = jsr_certify(family, config.degrees, config.r, config.tolerances, config.seed)
    outcomes = result.outcomes()
    collector.update(
        {
            "verdict": result.verdict,
            "degrees": {str(d): outcome for d, outcome in outcomes.items()},
            "degree_reports": result.degrees,
        }
    )
    cert = result.certificate
    if cert is not None:
        collector.record("summary", f"contracting polynomial norm of degree {cert.d}")
        collector.record("contraction_margin", cert.contraction_margin)
        if config.emit_cert:
            collector.record("certificate_path", str(_write_json(cert, config.emit_cert)))
        if config.emit_figure:
            figure = emit_contraction_figure(cert, family, config.resolution)
            write_contraction_figure(figure, config.emit_figure)
            collector.update({"figure_path": str(config.emit_figure), "figure_margin": figure.margin})
    else:
        collector.record("summary", f"no contracting norm at degrees {config.degrees}")
        if config.emit_figure:
            logger.warning("no certificate; skipping the contraction figure")
    if config.upper_bound:
        d = cert.d if cert is not None else max(config.degrees)
        with collector.timed("upper_bound"):
            bound = jsr_upper_bound(family, d, config.tol, config.r, config.tolerances, config.seed)
        collector.record("upper_bound", bound)
    return EXIT_OK if cert is not None else EXIT_NOT_CERTIFIED


HANDLERS: dict[Subcommand, Callable[[RunConfig, ReportCollector], int]] = {
    Subcommand.CERTIFY: _run_certify,
    Subcommand.APPROXIMATE: _run_approximate,
    Subcommand.FIT: _run_fit,
    Subcommand.JSR: _run_jsr,
    Subcommand.SOS: _run_sos,
}


def _diagnostic(exc: BaseException) -> str:
    """One line naming where the input went wrong."""
    if isinstance(exc, ValidationError):
        first = exc.errors()[0]
        loc = ".".join(str(p) for p in first["loc"])
        return f"{loc}: {first['msg']}" if loc else str(first["msg"])
    if isinstance(exc, yaml.MarkedYAMLError) and exc.problem_mark is not None:
        mark = exc.problem_mark
        return f"{mark.name}:{mark.line + 1}:{mark.column + 1}: {exc.problem}"
    if isinstance(exc, OSError) and exc.strerror:
        return f"{exc.filename}: {exc.strerror}" if exc.filename else exc.strerror
    return " ".join(str(exc).split())


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT
    _configure_logging(getattr(args, "verbosity", 0))
    try:
        config = resolve_config(args)
        if config.verbosity:
            _configure_logging(config.verbosity)
        if config.threads is not None:
            os.environ[THREADS_ENV] = str(config.threads)
        collector = ReportCollector(output_path=config.report)
        collector.update({"subcommand": config.subcommand, "seed": config.seed, "tolerances": config.tolerances})
        with collector.timed("total"):
            code = HANDLERS[config.subcommand](config, collector)
    except SolverError as e:
        print(f"polynorm: solver failure: {_diagnostic(e)}", file=sys.stderr)
        return EXIT_SOLVER
    except INPUT_ERRORS as e:
        print(f"polynorm: error: {_diagnostic(e)}", file=sys.stderr)
        return EXIT_INPUT
    collector.record("exit_code", code)
    text = collector.finalize()
    if config.report is None:
        sys.stdout.write(text)
    else:
        logger.info("report written to %s", config.report)
    return code


def main() -> None:
    sys.exit(run())
