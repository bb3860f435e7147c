"""Command-line frontend: exact/decimal input parsing, the core runs,
and reproducible JSON/CSV artifacts.

Every run produces a report: command, inputs, an input digest, outputs,
tool version, and a timing block. The timing block is the only
nondeterministic field and is excluded from the digest, so identical
argv + seed + precision give byte-identical JSON after dropping it.
"""

from __future__ import annotations

import csv as _csv
import datetime
import hashlib
import json
import re
import sys
import time
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Optional, Sequence

import click

from . import __version__
from . import _config
from .bounds import bound_constants, feasible_uniform_exponent, g_root
from .errors import DiophlabError
from .exactnum import ExactArithmeticError, ExactScalar
from .exponents import exponent_bound_report, exponent_estimates, span_rank_tail
from .game import (
    Ball,
    CenterCopy,
    DeepSide,
    HawConfig,
    Hugging,
    LazyMinimal,
    RandomHaw,
    RandomSchmidt,
    Retreating,
    SchmidtConfig,
    generate_irrational_matrix,
    manifold_escape_haw,
    manifold_escape_schmidt,
)
from .polynomials import parse_polynomial
from .records import bad_constant_estimate, best_approximations
from .subspaces import irrationality_profile, plucker_coordinates, rational_dimension
from .targets import TargetMatrix, algebraic_subspace, matrix_subspace_basis


class SpecGrammarError(DiophlabError):
    """Matrix-spec text that does not match the entry grammar."""


# ---------------------------------------------------------------------------
# MatrixSpec


_DECIMAL_RE = re.compile(r"^~[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


@dataclass(frozen=True)
class MatrixSpec:
    """Entry grid as canonical strings; inexact entries carry a ~ prefix."""

    m: int
    n: int
    entries: tuple[tuple[str, ...], ...]

    def serialize(self) -> str:
        return "; ".join(", ".join(row) for row in self.entries)

    @property
    def has_inexact(self) -> bool:
        return any(e.startswith("~") for row in self.entries for e in row)

    @property
    def has_exact(self) -> bool:
        return any(not e.startswith("~") for row in self.entries for e in row)


def _exact_str(v: ExactScalar) -> str:
    def frac(x: Fraction) -> str:
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    if v.is_rational:
        return frac(v.a)
    sign = "-" if v.b < 0 else "+"
    return f"{frac(v.a)}{sign}{frac(abs(v.b))}*sqrt({v.D})"


def _canon_entry(raw: str, line: int, col: int) -> str:
    text = raw.strip()
    if not text:
        raise SpecGrammarError(f"line {line}, column {col}: empty entry")
    if text.startswith("~"):
        if not _DECIMAL_RE.match(text):
            raise SpecGrammarError(
                f"line {line}, column {col}: bad decimal literal {text!r}"
            )
        return "~" + text[1:].strip()
    try:
        v = ExactScalar.parse(text)
    except ExactArithmeticError as e:
        raise SpecGrammarError(f"line {line}, column {col}: {e}") from None
    return _exact_str(v)


def parse_matrix_spec(text: str) -> MatrixSpec:
    """Rows split on ';' or newline, entries on ','."""
    raw_rows = [r for r in re.split(r"[;\n]", text) if r.strip()]
    if not raw_rows:
        raise SpecGrammarError("line 1, column 1: empty matrix spec")
    rows = []
    for i, raw in enumerate(raw_rows, start=1):
        cells = raw.split(",")
        rows.append(
            tuple(_canon_entry(c, i, j) for j, c in enumerate(cells, start=1))
        )
    width = len(rows[0])
    for i, row in enumerate(rows, start=1):
        if len(row) != width:
            raise SpecGrammarError(
                f"line {i}, column {len(row)}: ragged row, expected {width} entries"
            )
    return MatrixSpec(m=len(rows), n=width, entries=tuple(rows))


def _decimal_fraction(literal: str) -> tuple[Fraction, Fraction]:
    """(value, half-ulp error) of a decimal literal."""
    try:
        dec = Decimal(literal)
    except InvalidOperation:
        raise SpecGrammarError(f"bad decimal literal {literal!r}") from None
    value = Fraction(dec)
    exp = dec.as_tuple().exponent
    ulp = Fraction(10) ** exp
    return value, ulp / 2


def spec_to_target(
    spec: MatrixSpec, precision: Optional[int], allow_mixed: bool
) -> TargetMatrix:
    if spec.has_inexact and spec.has_exact and not allow_mixed:
        raise DiophlabError(
            "mixed exact and inexact entries need --allow-mixed"
        )
    bits = precision if precision is not None else _config.default_precision()
    if not spec.has_inexact:
        rows = [[ExactScalar.parse(e) for e in row] for row in spec.entries]
        return TargetMatrix.from_exact(rows, bits)
    approx: list[list[Fraction]] = []
    err = Fraction(0)
    for row in spec.entries:
        arow = []
        for e in row:
            if e.startswith("~"):
                v, h = _decimal_fraction(e[1:])
                arow.append(v)
                err = max(err, h)
            else:
                ex = ExactScalar.parse(e)
                if ex.is_rational:
                    arow.append(ex.a)
                else:
                    lo, hi = ex.dyadic_bounds(bits + 2)
                    arow.append((lo + hi) / 2)
                    err = max(err, (hi - lo) / 2)
        approx.append(arow)
    if err == 0:
        err = Fraction(1, 2**bits)
    return TargetMatrix.from_approx(approx, err)


def _exact_target(spec: MatrixSpec, precision: Optional[int]) -> TargetMatrix:
    if spec.has_inexact:
        raise DiophlabError("this command needs exact entries (no ~ decimals)")
    return spec_to_target(spec, precision, allow_mixed=False)


def _scan_bits(theta: TargetMatrix, requested: Optional[int]) -> Optional[int]:
    # fixed-precision targets cannot be refined past their input accuracy;
    # only an explicit --precision-bits is allowed to over-ask (and fail)
    if requested is not None:
        return requested
    if theta.refiner is None:
        return min(_config.default_precision(), theta.precision)
    return None


# ---------------------------------------------------------------------------
# Serialization helpers


def _fs(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _err_json(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def _write_report(
    command: str,
    inputs: dict,
    outputs: dict,
    t0: float,
    json_path: Optional[str],
) -> dict:
    report = {
        "command": command,
        "inputs": inputs,
        "inputs_digest": _digest({"command": command, "inputs": inputs}),
        "seed": inputs.get("seed"),
        "precision_bits": inputs.get("precision_bits"),
        "outputs": outputs,
        "tool_version": __version__,
        "timing": {
            "started_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "wall_s": round(time.time() - t0, 6),
        },
    }
    if json_path:
        text = _dumps(report)
        if json_path == "-":
            sys.stdout.write(text)
        else:
            with open(json_path, "w") as fh:
                fh.write(text)
    return report


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        w = _csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _no_csv(csv_path: Optional[str]) -> None:
    if csv_path:
        raise DiophlabError("CSV output is only available for record sequences")


# ---------------------------------------------------------------------------
# Shared options


def _global_options(f):
    for opt in reversed(
        [
            click.option("--seed", type=int, default=0, show_default=True),
            click.option(
                "--precision-bits",
                type=int,
                default=None,
                help="Working precision in bits (default: DIOPHLAB_PRECISION_BITS or 256).",
            ),
            click.option("--height", type=int, default=None, help="Height bound."),
            click.option("--tmax", type=int, default=None, help="Scan bound T."),
            click.option("--json", "json_path", type=str, default=None, help="Write the run report as JSON (use - for stdout)."),
            click.option("--csv", "csv_path", type=str, default=None, help="Write flat record rows as CSV (sequence commands only)."),
            click.option("--workers", type=int, default=1, show_default=True),
        ]
    ):
        f = opt(f)
    return f


def _seq_inputs(target, metric, tmax, seed, precision_bits, workers):
    return {
        "target": target.serialize(),
        "metric": metric,
        "tmax": tmax,
        "seed": seed,
        "precision_bits": precision_bits,
        "workers": workers,
    }


def _record_rows(seq):
    rows = []
    for i, r in enumerate(seq.records):
        rows.append(
            {
                "index": i,
                "x": list(r.x),
                "y": list(r.y),
                "M": r.M,
                "psi_lo": _fs(r.psi_lo),
                "psi_hi": _fs(r.psi_hi),
                "psi": r.psi,
                "exact_hit": r.exact_hit,
                "tied": r.tied,
            }
        )
    return rows


def _seq_outputs(seq):
    return {
        "label": seq.label,
        "metric": seq.metric,
        "n": seq.n,
        "m": seq.m,
        "T": seq.T,
        "records": _record_rows(seq),
        "tie_flag": seq.tie_flag,
        "exact_hit": seq.exact_hit,
        "scanned": seq.scanned,
        "tail_window_start": seq.tail_window_start,
        "precision_bits": seq.precision_bits,
        "kernel": seq.kernel,
    }


def _seq_csv(path, seq):
    header = ["index", "M", "x", "y", "psi_lo", "psi_hi", "psi", "exact_hit", "tied"]
    rows = []
    for i, r in enumerate(seq.records):
        rows.append(
            [
                i,
                r.M,
                " ".join(map(str, r.x)),
                " ".join(map(str, r.y)),
                _fs(r.psi_lo),
                _fs(r.psi_hi),
                r.psi,
                int(r.exact_hit),
                int(r.tied),
            ]
        )
    _write_csv(path, header, rows)


# ---------------------------------------------------------------------------
# Commands


@click.group()
def cli():
    """Certified Diophantine-approximation toolkit."""


@cli.command()
@click.option("--target", "target_text", required=True, help="Matrix spec, rows ';'-separated.")
@_global_options
def plucker(target_text, seed, precision_bits, height, tmax, json_path, csv_path, workers):
    """Exact Plucker coordinates of the graph subspace of an exact target."""
    t0 = time.time()
    _no_csv(csv_path)
    spec = parse_matrix_spec(target_text)
    theta = _exact_target(spec, precision_bits)
    basis = matrix_subspace_basis(theta)
    pv = plucker_coordinates(basis)
    dim = rational_dimension(pv.entries)
    outputs = {
        "d": basis.d,
        "n": basis.n,
        "coordinates": [_exact_str(e) for e in pv.entries],
        "rational_dimension": dim,
        "independent": dim == len(pv.entries),
    }
    inputs = {"target": spec.serialize(), "seed": seed, "precision_bits": precision_bits}
    _write_report("plucker", inputs, outputs, t0, json_path)
    click.echo(f"d={basis.d} n={basis.n} rational_dimension={dim}/{len(pv.entries)}")


@cli.command()
@click.option("--target", "target_text", required=True)
@_global_options
def profile(target_text, seed, precision_bits, height, tmax, json_path, csv_path, workers):
    """Certified irrationality profile of an exact target up to a height."""
    t0 = time.time()
    _no_csv(csv_path)
    H = height if height is not None else 10
    spec = parse_matrix_spec(target_text)
    theta = _exact_target(spec, precision_bits)
    basis = matrix_subspace_basis(theta)
    prof = irrationality_profile(basis, H)
    outputs = {
        "d": prof.d,
        "n": prof.n,
        "height_bound": prof.height_bound,
        "certified_m": prof.certified_m,
        "plucker_certificate": prof.certificate is not None,
        "blocker": None if prof.blocker is None else [list(r) for r in prof.blocker.rows],
        "blocker_dimension": prof.blocker_dimension,
        "partial": prof.partial,
        "candidates_examined": prof.candidates_examined,
    }
    inputs = {
        "target": spec.serialize(),
        "height": H,
        "seed": seed,
        "precision_bits": precision_bits,
    }
    _write_report("profile", inputs, outputs, t0, json_path)
    click.echo(
        f"certified_m={prof.certified_m} of {prof.d - prof.n}"
        + ("" if prof.blocker is None else f" blocked at dim {prof.blocker_dimension}")
    )


@cli.command()
@click.option("--target", "target_text", required=True)
@click.option("--metric", type=click.Choice(["form", "subspace"]), default="form", show_default=True)
@click.option("--allow-mixed", is_flag=True, default=False)
@_global_options
def bestapprox(target_text, metric, allow_mixed, seed, precision_bits, height, tmax, json_path, csv_path, workers):
    """Best-approximation record scan up to T."""
    t0 = time.time()
    T = tmax if tmax is not None else 100
    spec = parse_matrix_spec(target_text)
    theta = spec_to_target(spec, precision_bits, allow_mixed)
    seq = best_approximations(
        theta, metric=metric, T=T, precision=_scan_bits(theta, precision_bits), workers=workers
    )
    outputs = _seq_outputs(seq)
    try:
        outputs["bad_constant"] = float(bad_constant_estimate(seq, seq.n, seq.m))
    except DiophlabError:
        outputs["bad_constant"] = None
    inputs = _seq_inputs(spec, metric, T, seed, precision_bits, workers)
    _write_report("bestapprox", inputs, outputs, t0, json_path)
    if csv_path:
        _seq_csv(csv_path, seq)
    click.echo(
        f"{len(seq.records)} records to T={T} (metric={metric}, kernel={seq.kernel})"
    )


@cli.command()
@click.option("--target", "target_text", required=True)
@click.option("--metric", type=click.Choice(["form", "subspace"]), default="form", show_default=True)
@click.option("--allow-mixed", is_flag=True, default=False)
@click.option("--tail-fraction", type=float, default=0.2, show_default=True)
@_global_options
def exponents(target_text, metric, allow_mixed, tail_fraction, seed, precision_bits, height, tmax, json_path, csv_path, workers):
    """Ordinary and uniform exponent estimates from the record sequence."""
    t0 = time.time()
    T = tmax if tmax is not None else 100
    spec = parse_matrix_spec(target_text)
    theta = spec_to_target(spec, precision_bits, allow_mixed)
    seq = best_approximations(
        theta, metric=metric, T=T, precision=_scan_bits(theta, precision_bits), workers=workers
    )
    est = exponent_estimates(seq, tail_fraction=tail_fraction)
    rows = [
        {
            "index": r.index,
            "M": r.M,
            "psi": r.psi,
            "ratio_point": r.ratio_point,
            "ratio_uniform": r.ratio_uniform,
            "slope": r.slope,
        }
        for r in est.rows
    ]
    outputs = {
        "omega_est": est.omega_est,
        "omega_hat_est": est.omega_hat_est,
        "T": est.T,
        "tail_start": est.tail_start,
        "rows": rows,
        "records": len(seq.records),
    }
    inputs = _seq_inputs(spec, metric, T, seed, precision_bits, workers)
    inputs["tail_fraction"] = tail_fraction
    _write_report("exponents", inputs, outputs, t0, json_path)
    if csv_path:
        header = ["index", "M", "psi", "ratio_point", "ratio_uniform", "slope"]
        _write_csv(
            csv_path,
            header,
            [[r["index"], r["M"], r["psi"], r["ratio_point"], r["ratio_uniform"], r["slope"]] for r in rows],
        )
    click.echo(f"omega~{est.omega_est:.4f} omega_hat~{est.omega_hat_est:.4f} from {len(seq.records)} records")


@cli.command()
@click.option("--target", "target_text", required=True)
@click.option("--allow-mixed", is_flag=True, default=False)
@_global_options
def rtheta(target_text, allow_mixed, seed, precision_bits, height, tmax, json_path, csv_path, workers):
    """Rank of the best-approximation tail span."""
    t0 = time.time()
    _no_csv(csv_path)
    T = tmax if tmax is not None else 100
    spec = parse_matrix_spec(target_text)
    theta = spec_to_target(spec, precision_bits, allow_mixed)
    seq = best_approximations(theta, metric="form", T=T, precision=_scan_bits(theta, precision_bits), workers=workers)
    rep = span_rank_tail(seq)
    outputs = {
        "T": rep.T,
        "d": rep.d,
        "ranks": list(rep.ranks),
        "stabilized_R": rep.stabilized_R,
        "stable": rep.stable,
        "tail_index": rep.tail_index,
        "records": len(seq.records),
    }
    inputs = _seq_inputs(spec, "form", T, seed, precision_bits, workers)
    _write_report("rtheta", inputs, outputs, t0, json_path)
    click.echo(f"R={rep.stabilized_R} (stable={rep.stable}) over {len(seq.records)} records")


@cli.command()
@click.option("--n", "n_", type=int, required=True)
@click.option("--d", "d_", type=int, required=True)
@_global_options
def bounds(n_, d_, seed, precision_bits, height, tmax, json_path, csv_path, workers):
    """Closed-form exponent bound constants for the (n, d) pair."""
    t0 = time.time()
    _no_csv(csv_path)
    bs = bound_constants(n_, d_)

    def enc(e):
        if e is None:
            return None
        return {
            "lo": _fs(e.lo),
            "hi": _fs(e.hi),
            "value": e.value,
            "residual": _fs(e.residual),
            "coefficients": [_fs(c) for c in e.coefficients],
        }

    outputs = {
        "n": bs.n,
        "d": bs.d,
        "ordinary": _fs(bs.ordinary),
        "ordinary_value": float(bs.ordinary),
        "uniform": enc(bs.uniform),
        "subspace": enc(bs.subspace),
        "uniform_poly": [_fs(c) for c in bs.uniform_poly],
        "subspace_poly": [_fs(c) for c in bs.subspace_poly],
        "degenerate": bs.degenerate,
        "double_root": None if bs.double_root is None else _fs(bs.double_root),
        "warnings": list(bs.warnings),
    }
    inputs = {"n": n_, "d": d_, "seed": seed, "precision_bits": precision_bits}
    _write_report("bounds", inputs, outputs, t0, json_path)
    uni = "degenerate" if bs.degenerate else (f"{bs.uniform.value:.10f}" if bs.uniform else "-")
    sub = f"{bs.subspace.value:.10f}" if bs.subspace else ("1/2 (double root)" if bs.degenerate else "-")
    click.echo(f"w={_fs(bs.ordinary)} uniform={uni} subspace={sub}")


@cli.command()
@click.option("--r", "r_", type=int, default=None, help="Subspace-count parameter for the root identity.")
@click.option("--omega-hat", "omega_hat", type=str, required=True, help="Exact rational, e.g. 9/16.")
@click.option("--n", "n_", type=int, default=None)
@click.option("--d", "d_", type=int, default=None)
@_global_options
def gcheck(r_, omega_hat, n_, d_, seed, precision_bits, height, tmax, json_path, csv_path, workers):
    """Root of the tail-growth identity and/or the feasibility predicate."""
    t0 = time.time()
    _no_csv(csv_path)
    om = Fraction(omega_hat)
    outputs = {"omega_hat": _fs(om)}
    if r_ is None and (n_ is None or d_ is None):
        raise DiophlabError("need --r and/or both --n and --d")
    if r_ is not None:
        e = g_root(r_, om)
        outputs["g_root"] = {
            "r": r_,
            "lo": _fs(e.lo),
            "hi": _fs(e.hi),
            "value": e.value,
            "residual": _fs(e.residual),
            "coefficients": [_fs(c) for c in e.coefficients],
        }
    if n_ is not None and d_ is not None:
        outputs["feasible"] = feasible_uniform_exponent(n_, d_, om)
        outputs["n"] = n_
        outputs["d"] = d_
    inputs = {
        "r": r_,
        "n": n_,
        "d": d_,
        "omega_hat": _fs(om),
        "seed": seed,
        "precision_bits": precision_bits,
    }
    _write_report("gcheck", inputs, outputs, t0, json_path)
    bits = []
    if "g_root" in outputs:
        bits.append(f"G~{outputs['g_root']['value']:.6f}")
    if "feasible" in outputs:
        bits.append(f"feasible={outputs['feasible']}")
    click.echo(" ".join(bits))


@cli.group()
def game():
    """Escaping games on shrinking balls."""


_SCHMIDT_OPPONENTS = {
    "center-copy": CenterCopy,
    "random": RandomSchmidt,
    "retreating": Retreating,
    "hugging": Hugging,
}
_HAW_OPPONENTS = {
    "deep-side": DeepSide,
    "lazy": LazyMinimal,
    "random": RandomHaw,
}


def _make_opponent(kind: str, name: Optional[str], seed: int):
    table = _SCHMIDT_OPPONENTS if kind == "schmidt" else _HAW_OPPONENTS
    if name is None:
        return None
    if name not in table:
        raise DiophlabError(
            f"unknown opponent {name!r} for {kind}; choose from {sorted(table)}"
        )
    cls = table[name]
    if name == "random":
        return cls(seed)
    return cls()


def _ball_json(ball: Ball) -> dict:
    return {
        "center": [_fs(c) for c in ball.center],
        "radius": _fs(ball.radius),
    }


def _transcript_json(transcript) -> list:
    moves = []
    for mv in transcript.moves:
        rec = {
            "mover": mv.mover,
            "note": mv.note,
            "ok": None if mv.verdict is None else mv.verdict.ok,
            "violations": [] if mv.verdict is None else list(mv.verdict.violations),
        }
        if mv.ball is not None:
            rec["ball"] = _ball_json(mv.ball)
        if mv.removal is not None:
            rec["removal"] = {
                "normal": [_fs(c) for c in mv.removal.normal],
                "anchor": [_fs(c) for c in mv.removal.anchor],
                "epsilon": _fs(mv.removal.epsilon),
            }
        moves.append(rec)
    return moves


@game.command()
@click.option("--kind", type=click.Choice(["schmidt", "haw"]), default="schmidt", show_default=True)
@click.option("--poly", "poly_text", required=True, help="Polynomial in z1..zr, e.g. 'z1^2 - 2'.")
@click.option("--vars", "r_vars", type=int, default=None, help="Number of variables (default: highest index used).")
@click.option("--alpha", type=str, default="1/4", show_default=True)
@click.option("--beta", type=str, default="1/4", show_default=True)
@click.option("--opponent", type=str, default=None, help="Opponent strategy name.")
@click.option("--transcript/--no-transcript", "with_transcript", default=True, show_default=True)
@_global_options
def escape(kind, poly_text, r_vars, alpha, beta, opponent, with_transcript, seed, precision_bits, height, tmax, json_path, csv_path, workers):
    """Escape the zero set of a polynomial with a certified margin."""
    t0 = time.time()
    _no_csv(csv_path)
    try:
        f = parse_polynomial(poly_text, r_vars)
    except ValueError as e:
        raise DiophlabError(f"bad polynomial: {e}") from None
    r = f.r
    opp = _make_opponent(kind, opponent, seed)
    if kind == "schmidt":
        cfg = SchmidtConfig(r, Fraction(alpha), Fraction(beta))
        out = manifold_escape_schmidt(f, cfg, opponent=opp, seed=seed)
    else:
        cfg = HawConfig(r, Fraction(beta))
        out = manifold_escape_haw(f, cfg, opponent=opp, seed=seed)
    outputs = {
        "kind": kind,
        "polynomial": str(f),
        "vars": r,
        "epsilon": _fs(out.epsilon),
        "epsilon_value": float(out.epsilon),
        "rounds": out.rounds,
        "range_budget": out.range_budget,
        "final_ball": _ball_json(out.ball),
        "certificates": len(out.transcript.certificates),
    }
    if with_transcript:
        outputs["transcript"] = _transcript_json(out.transcript)
    inputs = {
        "kind": kind,
        "poly": str(f),
        "vars": r,
        "alpha": alpha if kind == "schmidt" else None,
        "beta": beta,
        "opponent": opponent,
        "seed": seed,
        "precision_bits": precision_bits,
    }
    _write_report("game escape", inputs, outputs, t0, json_path)
    click.echo(
        f"escaped in {out.rounds} rounds, epsilon~{float(out.epsilon):.3e} "
        f"(certificates: {len(out.transcript.certificates)})"
    )


@game.command()
@click.option("--n", "n_", type=int, required=True)
@click.option("--m", "m_", type=int, required=True)
@click.option("--kind", type=click.Choice(["schmidt", "haw"]), default="schmidt", show_default=True)
@click.option("--opponent", type=str, default=None)
@_global_options
def generate(n_, m_, kind, opponent, seed, precision_bits, height, tmax, json_path, csv_path, workers):
    """Construct a matrix whose graph avoids all low rational subspaces
    up to the height bound, with one certificate per subspace."""
    t0 = time.time()
    _no_csv(csv_path)
    H = height if height is not None else 3
    opp = _make_opponent(kind, opponent, seed)
    gen = generate_irrational_matrix(
        n_, m_, H, game=kind, opponent=opp, seed=seed
    )
    theta_rows = gen.target.exact_rows()
    certs = [
        {
            "subspace": [list(r) for r in c.subspace.rows],
            "dimension": c.subspace.m,
            "height": c.subspace.height,
            "polynomial": str(c.polynomial),
            "epsilon": _fs(c.epsilon),
        }
        for c in gen.certificates
    ]
    outputs = {
        "n": gen.n,
        "m": gen.m,
        "height": gen.height,
        "kind": kind,
        "theta": [[_fs(v.a) for v in row] for row in theta_rows],
        "theta_values": [[float(v.a) for v in row] for row in theta_rows],
        "epsilon_min": _fs(gen.epsilon_min),
        "certificates": certs,
        "rounds": gen.outcome.rounds,
        "post_check": True,
    }
    inputs = {
        "n": n_,
        "m": m_,
        "height": H,
        "kind": kind,
        "opponent": opponent,
        "seed": seed,
        "precision_bits": precision_bits,
    }
    _write_report("game generate", inputs, outputs, t0, json_path)
    click.echo(
        f"theta*={[[float(v.a) for v in row] for row in theta_rows]} "
        f"with {len(certs)} certificates, epsilon_min~{float(gen.epsilon_min):.3e}"
    )


@cli.group()
def report():
    """Aggregated consistency reports."""


@report.command("bound-check")
@click.option("--minpoly", type=str, default=None, help="Comma-separated integer coefficients, ascending.")
@click.option("--n", "n_", type=int, default=None, help="Subspace dimension for --minpoly.")
@click.option("--target", "target_text", type=str, default=None)
@click.option("--samples", type=int, default=10, show_default=True)
@_global_options
def bound_check(minpoly, n_, target_text, samples, seed, precision_bits, height, tmax, json_path, csv_path, workers):
    """Sampled exponent estimates of a subspace against the closed-form
    thresholds; a consistency check, not a proof."""
    t0 = time.time()
    _no_csv(csv_path)
    T = tmax if tmax is not None else 1000
    if (minpoly is None) == (target_text is None):
        raise DiophlabError("need exactly one of --minpoly or --target")
    if minpoly is not None:
        if n_ is None:
            raise DiophlabError("--minpoly needs --n")
        coeffs = [int(c) for c in minpoly.split(",")]
        L = algebraic_subspace(coeffs, n_, precision=precision_bits)
        target_desc = f"minpoly {coeffs} n={n_}"
    else:
        spec = parse_matrix_spec(target_text)
        L = spec_to_target(spec, precision_bits, allow_mixed=False)
        target_desc = spec.serialize()
    scan_bits = precision_bits
    if isinstance(L, TargetMatrix):
        scan_bits = _scan_bits(L, precision_bits)
    rep = exponent_bound_report(
        L, samples, T, seed, precision=scan_bits, workers=workers
    )
    sample_rows = [
        {
            "coefficients": [_fs(c) for c in s.coefficients],
            "exact_hit": s.exact_hit,
            "omega_est": None if s.estimate is None else s.estimate.omega_est,
            "omega_hat_est": None if s.estimate is None else s.estimate.omega_hat_est,
        }
        for s in rep.samples
    ]
    outputs = {
        "n": rep.n,
        "d": rep.d,
        "T": rep.T,
        "seed": rep.seed,
        "samples": sample_rows,
        "resamples": rep.resamples,
        "max_omega_hat": rep.max_omega_hat,
        "ordinary_bound": rep.ordinary_bound,
        "uniform_bound": rep.uniform_bound,
        "subspace_bound": rep.subspace_bound,
    }
    inputs = {
        "target": target_desc,
        "samples": samples,
        "tmax": T,
        "seed": seed,
        "precision_bits": precision_bits,
        "workers": workers,
    }
    _write_report("report bound-check", inputs, outputs, t0, json_path)
    click.echo(
        f"max omega_hat ~ {rep.max_omega_hat} vs uniform bound {rep.uniform_bound}"
    )


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as e:
        sys.exit(e.exit_code)
    except click.UsageError as e:
        _err_json("UsageError", e.format_message())
        sys.exit(2)
    except DiophlabError as e:
        _err_json(type(e).__name__, str(e))
        sys.exit(e.exit_code)
    except (ValueError, ZeroDivisionError) as e:
        _err_json(type(e).__name__, str(e))
        sys.exit(2)
    sys.exit(0)


if __name__ == "__main__":
    main()
