"""Command-line front end.

    extres extend  --model anharmonic --order 2
    extres sum     --model anharmonic --order 1-5 --lambda 2,4,8
    extres strong  --model anharmonic --order 1-5
    extres predict --series my_series.json --order 3

Exit codes: 0 success, 2 input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .extension import (
    ExtensionResult,
    OrderReductionError,
    coefficient_at,
    extend,
    predict_next,
    strong_coupling_head,
)
from .gamma_kernel import InfiniteFactorialError
from .models import (
    MODELS,
    CoefficientUnavailable,
    OracleError,
    bender_wu_generate,
    model_series,
    oracle_ground_state,
    oracle_strong_limit,
    oracle_zero_dim,
    oracle_zero_dim_strong_limit,
    zero_dim_series,
)
from .quadrature import QuadratureError
from .resummation import DEFAULT_TOL, resum_coupling
from .signature import OmegaValuedError, Signature, WeakSeries

EXIT_INPUT = 2
EXIT_NUMERIC = 3

NUMERIC_ERRORS = (
    QuadratureError,
    OrderReductionError,
    OracleError,
    OmegaValuedError,
    InfiniteFactorialError,
    ZeroDivisionError,
)


class InputError(ValueError):
    pass


@dataclass
class Source:
    """A loaded series: either a named model or explicit coefficients."""

    sig: Signature
    coeff_text: list[str] | None = None
    model: str | None = None
    generated: bool = False

    def series(self, p: int) -> WeakSeries:
        if self.model is not None:
            try:
                return model_series(self.model, p, "generated" if self.generated else "printed")
            except CoefficientUnavailable as exc:
                raise InputError(f"{exc} (--generated)") from None
        if p > len(self.coeff_text) - 1:
            raise InputError(
                f"order {p} needs {p + 1} coefficients, file has {len(self.coeff_text)}"
            )
        return WeakSeries(self.sig, [_parse_coeff(c, i) for i, c in enumerate(self.coeff_text[: p + 1])])

    @property
    def max_order(self) -> int | None:
        if self.coeff_text is not None:
            return len(self.coeff_text) - 1
        return None


def _parse_coeff(text, index):
    if isinstance(text, bool):
        raise InputError(f"coefficients[{index}]: not a number")
    if isinstance(text, (int, float)):
        return text
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"coefficients[{index}]: cannot parse {text!r}") from None


def load_series_file(path: str, signature: str | None = None) -> Source:
    """Read a JSON series file ``{"signature": "g|a|d", "coefficients": [...]}``.

    ``{"model": name}`` may replace the coefficients.  Extra keys are ignored,
    so the JSON written by ``extend`` can be read back.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    has_coeffs, has_model = "coefficients" in data, "model" in data
    if has_coeffs == has_model:
        raise InputError(f"{path}: give exactly one of 'coefficients' or 'model'")
    sig_text = signature or data.get("signature")
    if has_model:
        name = data["model"]
        if name not in MODELS:
            raise InputError(f"{path}: field 'model': unknown model {name!r}")
        sig = MODELS[name].sig
        if sig_text is not None and _parse_sig(sig_text, f"{path}: field 'signature'") != sig:
            raise InputError(f"{path}: field 'signature' contradicts model {name!r}")
        return Source(sig, model=name)
    if sig_text is None:
        raise InputError(f"{path}: field 'signature' is required with coefficients")
    coeffs = data["coefficients"]
    if not isinstance(coeffs, list) or len(coeffs) < 2:
        raise InputError(f"{path}: field 'coefficients' must be a list of at least two entries")
    for i, c in enumerate(coeffs):
        _parse_coeff(c, i)
    return Source(_parse_sig(sig_text, f"{path}: field 'signature'"), coeff_text=list(coeffs))


def _parse_sig(text, where="--signature") -> Signature:
    try:
        return Signature.parse(text)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}: {exc}") from None


def _parse_orders(text: str | None, default: int | None) -> list[int]:
    if text is None:
        if default is None:
            raise InputError("--order is required")
        return [default]
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            if "-" in part:
                lo, hi = part.split("-")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise InputError(f"--order: cannot parse {text!r}") from None
    if any(p < 1 for p in out):
        raise InputError("--order: orders must be >= 1")
    return out


def _parse_floats(text: str, flag: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"{flag}: cannot parse {text!r}") from None
    if any(not v > 0 for v in vals):
        raise InputError(f"{flag}: values must be positive")
    return vals


def _source(args) -> Source:
    if args.model and args.series:
        raise InputError("give either --model or --series, not both")
    if args.model:
        if args.model not in MODELS:
            raise InputError(f"--model: unknown model {args.model!r}")
        sig = MODELS[args.model].sig
        if args.signature and _parse_sig(args.signature) != sig:
            raise InputError(f"--signature contradicts model {args.model!r}")
        return Source(sig, model=args.model, generated=args.generated)
    if args.series:
        return load_series_file(args.series, args.signature)
    raise InputError("one of --model or --series is required")


# ---------------------------------------------------------------- formatting


def fmt_pm(z: complex, digits: int) -> str:
    """``re`` or ``re ± |im|i`` at ``digits`` decimals."""
    z = complex(z)
    re = f"{z.real:.{digits}f}"
    if round(abs(z.imag), digits) == 0:
        return re
    return f"{re} ± {abs(z.imag):.{digits}f}i"


def fmt_signed(z: complex, digits: int) -> str:
    z = complex(z)
    if round(abs(z.imag), digits) == 0:
        return f"{z.real:.{digits}f}"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.{digits}f}{sign}{abs(z.imag):.{digits}f}i"


def _fmt_weight(w: float) -> str:
    return f"{w:.0f}" if w >= 10 or w == 0 else f"{w:.3g}"


def fmt_rel(x: float | None) -> str:
    return "" if x is None else f"({x:.0e})"


def _cplx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _emit(rows: list[dict], columns: list[str], fmt: str, text_lines: list[str], payload) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        return buf.getvalue()
    return "\n".join(text_lines) + "\n"


def _exact_coefficient(src: Source, n: int):
    """Known value of ``B_{delta n}`` for a named model, else ``None``."""
    if src.model == "anharmonic":
        return bender_wu_generate(n)[n]
    if src.model == "zero-dim":
        return zero_dim_series(max(n, 1)).coeffs[n]
    return None


def _coeff_strings(series: WeakSeries) -> list[str]:
    out = []
    for c in series.coeffs:
        if isinstance(c, Fraction):
            out.append(str(c))
        else:
            out.append(repr(float(c)))
    return out


# ---------------------------------------------------------------- commands


def cmd_extend(src: Source, orders: Sequence[int], args) -> tuple[str, int]:
    d, terms = args.digits, args.terms
    payload, rows, lines = [], [], []
    for p in orders:
        series = src.series(p)
        ext = extend(series)
        sig = ext.sig
        right = {sig.delta * N: coefficient_at(ext, sig.delta * N) for N in range(p + 1 + terms)}
        left = {
            -sig.alpha - sig.gamma * N: coefficient_at(ext, -sig.alpha - sig.gamma * N)
            for N in range(terms)
        }
        payload.append(
            {
                "signature": str(sig),
                "order": p,
                "coefficients": src.coeff_text[: p + 1] if src.coeff_text else _coeff_strings(series),
                "extension": {
                    "roots": [_cplx(r) for r in ext.roots],
                    "weights": [float(w) for w in ext.weights],
                    "chosen": ext.chosen,
                    "omega": _cplx(ext.omega),
                    "a_coeffs": [_cplx(a) for a in ext.a_coeffs],
                    "right": {str(k): _cplx(v) for k, v in right.items()},
                    "left": {str(k): _cplx(v) for k, v in left.items()},
                },
            }
        )
        cells = [
            f"{fmt_signed(r, d)} ({_fmt_weight(w)})" + (" *" if i == ext.chosen else "")
            for i, (r, w) in enumerate(zip(ext.roots, ext.weights))
        ]
        rows.append(
            {
                "order": p,
                "omega": fmt_signed(ext.omega, d),
                "roots": " ".join(fmt_signed(r, d) for r in ext.roots),
                "weights": " ".join(f"{w:.6g}" for w in ext.weights),
                "a_coeffs": " ".join(fmt_signed(a, d) for a in ext.a_coeffs),
            }
        )
        lines.append(f"signature {sig}  order {p}")
        lines.append("  roots (weight): " + "  ".join(cells))
        lines.append(f"  omega = {fmt_signed(ext.omega, d)}")
        lines.append("  A^i(omega): " + ", ".join(fmt_signed(a, d) for a in ext.a_coeffs) + ", 0")
        lines.append("  right: " + "  ".join(f"B[{k}]={fmt_pm(v, d)}" for k, v in right.items()))
        lines.append("  left:  " + "  ".join(f"B[{k}]={fmt_pm(v, d)}" for k, v in left.items()))
    out_payload = payload[0] if len(payload) == 1 else payload
    return _emit(rows, ["order", "omega", "roots", "weights", "a_coeffs"], args.format, lines, out_payload), 0


def _sum_oracle(src: Source, lam: float):
    if src.model == "anharmonic":
        return oracle_ground_state(lam)
    if src.model == "zero-dim":
        return oracle_zero_dim(lam)
    return None


def cmd_sum(src: Source, orders: Sequence[int], lambdas: Sequence[float], args) -> tuple[str, int]:
    d = args.digits
    rows, lines, status = [], [], 0
    lines.append(f"{'p':>3}  {'lambda':>10}  estimate")
    oracles = {}
    for lam in lambdas:
        try:
            oracles[lam] = _sum_oracle(src, lam)
        except OracleError:
            oracles[lam] = None
            status = EXIT_NUMERIC
    for p in orders:
        ext = extend(src.series(p))
        for lam in lambdas:
            exact = oracles[lam]
            row = {"order": p, "lambda": lam, "oracle": exact}
            try:
                est = resum_coupling(ext, lam, args.tol)
            except QuadratureError as exc:
                status = EXIT_NUMERIC
                row.update(value=None, quad_error=exc.error, converged=False, rel_precision=None)
                rows.append(row)
                lines.append(f"{p:>3}  {lam:>10g}  FAILED ({exc})")
                continue
            rel = None if exact is None else abs(est.value - exact) / abs(exact)
            row.update(
                value=_cplx(est.value),
                estimate=fmt_pm(est.value, d),
                real=est.value.real,
                imag=est.value.imag,
                quad_error=est.quad_error,
                converged=est.converged,
                rel_precision=rel,
            )
            rows.append(row)
            lines.append(f"{p:>3}  {lam:>10g}  {fmt_pm(est.value, d)} {fmt_rel(rel)}".rstrip())
    for lam in lambdas:
        if oracles[lam] is not None:
            lines.append(f"  E({lam:g}) = {oracles[lam]:.{d}f} (oracle)")
    columns = ["order", "lambda", "real", "imag", "quad_error", "converged", "oracle", "rel_precision"]
    return _emit(rows, columns, args.format, lines, rows), status


def cmd_strong(src: Source, orders: Sequence[int], args) -> tuple[str, int]:
    d = args.digits
    exact = None
    if src.model == "anharmonic":
        exact = oracle_strong_limit()
    elif src.model == "zero-dim":
        exact = oracle_zero_dim_strong_limit()
    rows, lines = [], []
    for p in orders:
        head = strong_coupling_head(extend(src.series(p)), 0)
        rel = None if exact is None else abs(head - exact) / abs(exact)
        rows.append(
            {"order": p, "value": _cplx(head), "real": head.real, "imag": head.imag,
             "oracle": exact, "rel_precision": rel}
        )
        lines.append(f"{p:>3}  {fmt_pm(head, d)} {fmt_rel(rel)}".rstrip())
    if exact is not None:
        lines.append(f"  exact {exact:.{d}f} (oracle)")
    return _emit(rows, ["order", "real", "imag", "oracle", "rel_precision"], args.format, lines, rows), 0


def cmd_predict(src: Source, orders: Sequence[int], args) -> tuple[str, int]:
    d = args.digits
    rows, lines = [], []
    for p in orders:
        ext = extend(src.series(p))
        preds = [predict_next(ext.at_root(i)) for i in range(len(ext.roots))]
        exact = _exact_coefficient(src, p + 1)
        rows.append(
            {
                "order": p,
                "index": ext.sig.delta * (p + 1),
                "predictions": [_cplx(v) for v in preds],
                "roots": [_cplx(r) for r in ext.roots],
                "selected": ext.chosen,
                "selected_value": fmt_pm(preds[ext.chosen], d),
                "exact": None if exact is None else float(exact),
            }
        )
        # conjugate partners duplicate each other in the table
        shown, seen = [], []
        for i, (r, v) in enumerate(zip(ext.roots, preds)):
            if any(abs(complex(r) - np.conj(s)) < 1e-9 for s in seen) and i != ext.chosen:
                continue
            seen.append(complex(r))
            shown.append(fmt_pm(v, d) + (" (selected)" if i == ext.chosen else ""))
        line = f"{p:>3}  " + ", ".join(shown)
        if exact is not None:
            line += f"; exact {float(exact):.{d}f}"
        lines.append(line)
    return _emit(rows, ["order", "index", "selected_value", "exact"], args.format, lines, rows), 0


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extres", description="Extension resummation of divergent series.")
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--model", help="named model: zero-dim | anharmonic")
    src.add_argument("--series", help="JSON series file")
    common.add_argument("--signature", help="signature g|a|d (required for coefficient files without one)")
    common.add_argument("--order", help="order p, a list 1,3 or a range 1-5")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--digits", type=int, default=7)
    common.add_argument("--generated", action="store_true",
                        help="use generated rather than printed model coefficients")
    sub = parser.add_subparsers(dest="command", required=True)
    ext = sub.add_parser("extend", parents=[common], help="roots, weights and extended coefficients")
    ext.add_argument("--terms", type=int, default=3, help="extra coefficients shown on each side")
    s = sub.add_parser("sum", parents=[common], help="finite-coupling estimates")
    s.add_argument("--lambda", dest="lambdas", required=True, help="couplings v[,v...]")
    sub.add_parser("strong", parents=[common], help="strong-coupling head estimates")
    sub.add_parser("predict", parents=[common], help="forthcoming-coefficient predictions per root")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        source = _source(args)
        default = source.max_order if source.max_order is not None else None
        orders = _parse_orders(args.order, default)
        if args.command == "extend":
            text, status = cmd_extend(source, orders, args)
        elif args.command == "sum":
            text, status = cmd_sum(source, orders, _parse_floats(args.lambdas, "--lambda"), args)
        elif args.command == "strong":
            text, status = cmd_strong(source, orders, args)
        else:
            text, status = cmd_predict(source, orders, args)
    except InputError as exc:
        print(f"extres: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NUMERIC_ERRORS as exc:
        print(f"extres: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
