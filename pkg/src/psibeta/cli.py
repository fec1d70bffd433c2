"""Command-line front end: bound tables, verification reports and dumps.

Reports are CSV with a header row and 17 significant digits, written to
standard output or --out. Diagnostics go to the log on standard error.
"""

import csv
import json
import logging
import math
import os
import sys
from argparse import ArgumentParser
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import TextIO

from . import __version__
from .best_approx import NORMS, BestApproxOptions, best_trig_poly, method_from_poly
from .bounds import error_fourier, error_triangular, error_vdp
from .core import (
    DEFAULT_TOL,
    BetaSequence,
    GeometricPsi,
    NoConvergence,
    ParseError,
    PsiBetaError,
    PsiSequence,
    TriangularMethod,
    fejer_method,
    fourier_method,
    parse_beta,
    parse_method,
    parse_psi,
    periodic_grid,
    vdp_method,
)
from .kernels import KernelSpec, kernel_samples
from .oracle import verification_report

logger = logging.getLogger(__name__)

THREADS_VAR = "PSIBETA_THREADS"
VERIFY_TOL = 1e-10

Row = Sequence[str]


def _fmt(value: float) -> str:
    return format(value, ".17g")


@dataclass(frozen=True)
class RunConfig:
    """Everything one run needs, as given on the command line."""

    command: str
    psi_spec: str | None = None
    beta_spec: str = "const:0"
    method_spec: str | None = None
    kind: str = "fourier"
    n: int | None = None
    m: int | None = None
    m_list: tuple[int, ...] = ()
    q_list: tuple[float, ...] = ()
    p: str = "2"
    grid: int = 4096
    tol: float | None = None
    samples: int = 256
    show_method: bool = False
    out: str | None = None
    threads: int = 1
    verbose: bool = False

    @property
    def tolerance(self) -> float:
        if self.tol is not None:
            return self.tol
        return VERIFY_TOL if self.command == "verify" else DEFAULT_TOL

    def psi(self) -> PsiSequence:
        if self.psi_spec is None:
            raise ParseError("psi", f"{self.command} needs --psi")
        return parse_psi(self.psi_spec)

    def beta(self) -> BetaSequence:
        return parse_beta(self.beta_spec)

    def method(self) -> TriangularMethod | None:
        if self.method_spec is None:
            return None
        return parse_method(self.method_spec)

    def order(self, method: TriangularMethod | None = None) -> int:
        if self.n is not None:
            return self.n
        if method is not None:
            return method.n
        raise ParseError("n", f"{self.command} needs --n")

    def validate(self) -> None:
        """Parse every literal given, before any computation starts."""
        if self.psi_spec is not None:
            self.psi()
        self.beta()
        self.method()
        if self.n is not None and self.n < 0:
            raise ParseError("n", f"must be nonnegative, got {self.n}")
        if self.m is not None and not 0 <= self.m <= self.order(self.method()):
            raise ParseError("m", f"need 0 <= m <= n, got m={self.m}")
        if any(m < 0 for m in self.m_list):
            raise ParseError("m", "entries must be nonnegative")
        if self.p not in NORMS:
            raise ParseError("p", f"must be one of 1, 2, inf, got {self.p!r}")
        if self.samples < 2 or self.samples % 2:
            raise ParseError("samples", f"must be even and at least 2: {self.samples}")
        if not self.tolerance > 0:
            raise ParseError("tol", f"must be positive, got {self.tolerance!r}")


def _int_list(text: str, field_name: str) -> tuple[int, ...]:
    try:
        return tuple(int(item) for item in text.split(",") if item.strip())
    except ValueError as e:
        raise ParseError(field_name, f"expected integers, got {text!r}") from e


def _float_list(text: str, field_name: str) -> tuple[float, ...]:
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError as e:
        raise ParseError(field_name, f"expected numbers, got {text!r}") from e


def _threads_from_env() -> int:
    raw = os.environ.get(THREADS_VAR)
    if raw is None:
        return os.cpu_count() or 1
    try:
        threads = int(raw)
    except ValueError as e:
        raise ParseError(THREADS_VAR, f"expected an integer, got {raw!r}") from e
    if threads < 1:
        raise ParseError(THREADS_VAR, f"must be positive, got {threads}")
    return threads


def _parser() -> ArgumentParser:
    parser = ArgumentParser(prog="psibeta", description=__doc__)
    parser.add_argument("-v", "--version", action="version", version=__version__)
    parser.add_argument(
        "--verbose", action="store_true", help="Log truncation decisions"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, summary: str) -> ArgumentParser:
        p = sub.add_parser(name, help=summary)
        p.add_argument(
            "--psi", dest="psi_spec", help="geometric:q=.., power:r=.. or file:<path>"
        )
        p.add_argument(
            "--beta",
            dest="beta_spec",
            default="const:0",
            help="const:.., linear:c=.. or file:<path>",
        )
        p.add_argument("--tol", type=float, help="Absolute tolerance")
        p.add_argument("--out", help="Write the report here instead of stdout")
        return p

    bound = command("bound", "Print the exact constant of one method")
    bound.add_argument("kind", choices=["fourier", "vdp", "method"])
    bound.add_argument("--n", type=int)
    bound.add_argument("--m", type=int)
    bound.add_argument("--method", dest="method_spec", help="JSON or a path")

    table = command("table", "Sweep n (and m, q) into CSV")
    table.add_argument("kind", choices=["fourier", "vdp"])
    table.add_argument("--n", type=int, required=True, help="Largest n")
    table.add_argument("--m", dest="m_list", default="", help="Comma separated m")
    table.add_argument(
        "--q", dest="q_list", default="", help="Comma separated q of geometric psi"
    )

    verify = command("verify", "Check the closed form against the oracles")
    verify.add_argument("--n", type=int)
    verify.add_argument("--m", type=int)
    verify.add_argument("--method", dest="method_spec", help="JSON or a path")

    best = command("best", "Best approximation of the kernel in L_p")
    best.add_argument("--p", choices=list(NORMS), default="2")
    best.add_argument("--n", type=int, required=True)
    best.add_argument("--grid", type=int, default=4096)
    best.add_argument("--show-method", action="store_true")

    kernel = command("kernel", "Dump samples of the kernel")
    kernel.add_argument("--samples", type=int, default=256)

    compare = command("compare", "Fourier, Fejer, Vallee Poussin and a method")
    compare.add_argument("--n", type=int)
    compare.add_argument("--m", dest="m_list", default="", help="Comma separated m")
    compare.add_argument("--method", dest="method_spec", help="JSON or a path")
    return parser


def parse_args(args: Sequence[str] | None = None) -> RunConfig:
    """Return the RunConfig for args; ParseError on a bad list or environment."""
    ns = vars(_parser().parse_args(args))
    fields = {key: value for key, value in ns.items() if value is not None}
    if isinstance(fields.get("m_list"), str):
        fields["m_list"] = _int_list(fields["m_list"], "m")
    if isinstance(fields.get("q_list"), str):
        fields["q_list"] = _float_list(fields["q_list"], "q")
    fields["threads"] = _threads_from_env()
    return RunConfig(**fields)


@contextmanager
def _output(config: RunConfig) -> Iterator[TextIO]:
    if config.out is None:
        yield sys.stdout
    else:
        with Path(config.out).open("w", newline="") as stream:
            yield stream


def _write_csv(config: RunConfig, header: Row, rows: Sequence[Row]) -> None:
    with _output(config) as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _selected_method(config: RunConfig) -> TriangularMethod:
    method = config.method()
    if method is not None:
        return method
    n = config.order()
    return fourier_method(n) if config.m is None else vdp_method(n, config.m)


def _bound(config: RunConfig) -> int:
    psi, tol = config.psi(), config.tolerance
    if config.kind == "method":
        method = config.method()
        if method is None:
            raise ParseError("method", "bound method needs --method")
        value = error_triangular(psi, method, tol)
    elif config.kind == "vdp":
        value = error_vdp(psi, config.order(), config.m or 0, tol)
    else:
        value = error_fourier(psi, config.order(), tol)
    with _output(config) as stream:
        stream.write(_fmt(value) + "\n")
    return 0


def _table(config: RunConfig) -> int:
    tol = config.tolerance
    sweeps: list[tuple[str, PsiSequence]]
    if config.q_list:
        sweeps = [
            (f"{config.kind}[q={q:g}]", GeometricPsi(q)) for q in config.q_list
        ]
    else:
        sweeps = [(config.kind, config.psi())]

    cells: list[tuple[int, int, str, Callable[[], float]]] = []
    for label, psi in sweeps:
        for n in range(config.order() + 1):
            if config.kind == "fourier":
                cells.append((n, 0, label, partial(error_fourier, psi, n, tol)))
                continue
            ms = [m for m in config.m_list if m <= n] if config.m_list else range(n + 1)
            for m in ms:
                cells.append((n, m, label, partial(error_vdp, psi, n, m, tol)))

    logger.debug("table of %d cells on %d threads", len(cells), config.threads)
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        values = list(pool.map(lambda cell: cell[3](), cells))
    rows = [
        (str(n), str(m), label, _fmt(value))
        for (n, m, label, _), value in zip(cells, values)
    ]
    _write_csv(config, ("n", "m", "method", "value"), rows)
    return 0


def _verify(config: RunConfig) -> int:
    spec = KernelSpec(config.psi(), config.beta())
    report = verification_report(
        spec, _selected_method(config), tol=config.tolerance
    )
    rows = [
        (row.label, _fmt(row.oracle), _fmt(row.closed_form), _fmt(row.abs_diff))
        for row in report
    ]
    _write_csv(config, ("N", "oracle_value", "closed_form", "abs_diff"), rows)
    return 0 if all(row.ok for row in report) else 1


def _best(config: RunConfig) -> int:
    spec = KernelSpec(config.psi(), config.beta())
    opts = BestApproxOptions(p=NORMS[config.p], grid_size=config.grid)
    n = config.order()
    result = best_trig_poly(spec, n, opts)
    rows = [
        ("E_n", _fmt(result.error)),
        ("class_bound", _fmt(result.error / math.pi)),
        ("certificate", _fmt(result.certificate)),
    ]
    if config.show_method:
        method = method_from_poly(result.poly, spec, n)
        rows.append(("method", json.dumps(method.as_dict())))
    _write_csv(config, ("quantity", "value"), rows)
    return 0


def _kernel(config: RunConfig) -> int:
    spec = KernelSpec(config.psi(), config.beta())
    ts = periodic_grid(config.samples)
    values = kernel_samples(spec, ts, config.tolerance)
    rows = [(_fmt(t), _fmt(v)) for t, v in zip(ts.tolist(), values.tolist())]
    _write_csv(config, ("t", "psi_beta"), rows)
    return 0


def _compare(config: RunConfig) -> int:
    psi, tol = config.psi(), config.tolerance
    user = config.method()
    n = config.order(user)
    rows = [
        ("fourier", _fmt(error_fourier(psi, n, tol))),
        ("fejer", _fmt(error_triangular(psi, fejer_method(n), tol))),
    ]
    for m in config.m_list:
        rows.append((f"vdp[m={m}]", _fmt(error_vdp(psi, n, m, tol))))
    if user is not None:
        rows.append(("method", _fmt(error_triangular(psi, user, tol))))
    _write_csv(config, ("method", "value"), rows)
    return 0


HANDLERS: dict[str, Callable[[RunConfig], int]] = {
    "bound": _bound,
    "table": _table,
    "verify": _verify,
    "best": _best,
    "kernel": _kernel,
    "compare": _compare,
}


def run(config: RunConfig) -> int:
    """Run one command and return its exit status.

    2 for a parse or validation error, 1 when a solver does not converge or a
    verification check fails, 0 otherwise.
    """
    try:
        config.validate()
        return HANDLERS[config.command](config)
    except NoConvergence as e:
        print(f"psibeta: {e}", file=sys.stderr)
        return 1
    except (PsiBetaError, ValueError) as e:
        print(f"psibeta: error: {e}", file=sys.stderr)
        return 2


def main(args: Sequence[str] | None = None) -> int:
    try:
        config = parse_args(args)
    except ParseError as e:
        print(f"psibeta: error: {e}", file=sys.stderr)
        return 2
    logging.basicConfig(
        level=logging.DEBUG if config.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    return run(config)
