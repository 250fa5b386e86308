"""Acceptance criteria, one test per criterion.

Each test checks every sub-case of its criterion at the stated tolerance and
records a single PASS/FAIL line, printed in the pytest terminal summary (or
directly when this file is run as a script).  Sub-cases that disagree with
the printed tables are listed in the line; see the decisions ledger for the
rows where the printed value itself is inconsistent.
"""

import math
import time
from fractions import Fraction

import numpy as np

from extres.extension import (
    coefficient_at,
    coordinate_polynomial,
    extend,
    phi,
    phi_star,
    predict_next,
    strong_coupling_head,
)
from extres.gamma_kernel import generalized_binomial
from extres.models import (
    ANHARMONIC_PRINTED,
    anharmonic_series,
    bender_wu_generate,
    oracle_ground_state,
    oracle_strong_limit,
    oracle_zero_dim,
    zero_dim_series,
)
from extres.resummation import (
    left_right_consistency,
    resum_coupling,
    resum_first_order_closed_form,
    weak_expansion_fit,
)

RESULTS: dict[int, str] = {}


class Checks:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.total, self.failed = 0, []

    def check(self, ok, label):
        self.total += 1
        if not ok:
            self.failed.append(label)

    def finish(self):
        status = "PASS" if not self.failed else "FAIL"
        line = f"criterion {self.number} [{self.title}]: {status} ({self.total - len(self.failed)}/{self.total} checks)"
        if self.failed:
            line += "; failing: " + "; ".join(self.failed)
        RESULTS[self.number] = line
        print(line)
        assert not self.failed, line


def last_digit(text):
    """Unit of the last printed decimal of ``text``."""
    return 10.0 ** -len(text.split(".")[1]) if "." in text else 1.0


def close_printed(value, text, units=1):
    """``value`` within ``units`` of the last printed digit of ``text``."""
    return abs(value - float(text)) <= units * last_digit(text) * (1 + 1e-9)


def exponent(x):
    """Decimal exponent of ``x`` after rounding to one significant digit."""
    return int(f"{x:.0e}".split("e")[1])


_EXT = {}


def anharmonic(p):
    if p not in _EXT:
        _EXT[p] = extend(anharmonic_series(p))
    return _EXT[p]


# ---------------------------------------------------------------- criterion 1


def test_criterion_1_zero_dim_exactness():
    c = Checks(1, "zero-dim exactness")
    start = time.perf_counter()
    ext = extend(zero_dim_series(1))
    for lam in (0.1, 1.0, 10.0):
        est = resum_coupling(ext, lam).value
        exact = oracle_zero_dim(lam)
        c.check(abs(est - exact) < 1e-10, f"lambda={lam}: |{est.real!r} - {exact!r}| >= 1e-10")
    elapsed = time.perf_counter() - start
    c.check(elapsed < 1.0, f"runtime {elapsed:.2f}s >= 1s")
    c.finish()


# ---------------------------------------------------------------- criterion 2

ROOT_TABLE = {
    # p: [(real, imag, weight, underlined)]
    2: [("1.062", "0", 191, True), ("1.135", "0", 191, False)],
    3: [("1.053", "0.061", 113, True), ("1.189", "0", 90, False)],
    4: [("1.043", "0.102", 135, False), ("1.071", "0", 216, True), ("1.236", "0", 79, False)],
    5: [("1.034", "0.14", 135, False), ("1.073", "0.033", 355, True), ("1.279", "0", 71, False)],
}


def test_criterion_2_root_weight_table():
    c = Checks(2, "root/weight table")
    for p, rows in ROOT_TABLE.items():
        ext = anharmonic(p)
        for re, im, w, underlined in rows:
            target = float(re) + 1j * float(im)
            i = int(np.argmin(np.abs(ext.roots - target)))
            r = ext.roots[i]
            ok = abs(r.real - float(re)) <= 1e-3 and abs(abs(r.imag) - float(im)) <= 1e-3
            c.check(ok, f"p={p} root {re}±{im}i: got {r:.4f}")
            c.check(abs(round(ext.weights[i]) - w) <= 1, f"p={p} weight {w}: got {ext.weights[i]:.1f}")
            if underlined:
                c.check(abs(ext.omega - r) < 1e-12 or abs(ext.omega - np.conj(r)) < 1e-12,
                        f"p={p} selected {ext.omega:.4f}, printed {re}±{im}i")
    c.finish()


# ---------------------------------------------------------------- criterion 3

PREDICTION_TABLE = {
    # p: ([(real, |imag| or None, underlined)], exact)
    2: ([("0.3223", None, True), ("0.3211", None, False)], "0.3252"),
    3: ([("-0.9411", "0.0035", True), ("-0.9552", None, False)], "-0.9425"),
    4: ([("3.5034", "0.008", False), ("3.4948", None, True), ("3.4269", None, False)], "3.4970"),
    5: ([("-15.6620", "0.0049", False), ("-15.6165", "0.0034", True), ("-16.2018", None, False)], "-15.6208"),
}


def test_criterion_3_prediction_table():
    c = Checks(3, "prediction table")
    generated = bender_wu_generate(6)
    for p, (entries, exact_text) in PREDICTION_TABLE.items():
        ext = anharmonic(p)
        preds = [predict_next(ext.at_root(i)) for i in range(p)]
        selected = predict_next(ext)
        for re, im, underlined in entries:
            im_val = 0.0 if im is None else float(im)
            match = [
                v for v in preds
                if close_printed(v.real, re) and (im is None and abs(v.imag) < last_digit(re) or im is not None and close_printed(abs(v.imag), im))
            ]
            c.check(bool(match), f"p={p} estimate {re}±{im_val}: got {[f'{v:.4f}' for v in preds]}")
            if underlined:
                c.check(close_printed(selected.real, re), f"p={p} selected {selected:.4f}, underlined {re}")
        # the exact column is B_{3p+3} of the series itself
        exact = ANHARMONIC_PRINTED[p + 1] if p + 1 < len(ANHARMONIC_PRINTED) else generated[p + 1]
        c.check(isinstance(exact, Fraction) and exact == generated[p + 1], f"p={p} exact rational mismatch")
        c.check(close_printed(float(exact), exact_text), f"p={p} exact {float(exact):.5f} vs printed {exact_text}")
    c.finish()


# ---------------------------------------------------------------- criterion 4

STRONG_TABLE = {1: ("0.420139", None), 2: ("0.4205216", None), 3: ("0.4208109", "0.0000952"),
                4: ("0.4207976", None), 5: ("0.4208087", "0.0000033")}


def test_criterion_4_strong_coupling_table():
    c = Checks(4, "strong-coupling table")
    for p, (re, im) in STRONG_TABLE.items():
        head = strong_coupling_head(anharmonic(p), 0)
        ok = close_printed(head.real, re)
        ok &= abs(head.imag) < last_digit(re) if im is None else close_printed(abs(head.imag), im)
        c.check(ok, f"p={p}: got {head.real:.7f}±{abs(head.imag):.7f}i, printed {re}" + (f"±{im}i" if im else ""))
    e0 = oracle_strong_limit()
    c.check(abs(e0 - 0.4208049) < 1e-6, f"oracle_strong_limit {e0:.8f}")
    c.finish()


# ---------------------------------------------------------------- criterion 5

FINITE_TABLE = {
    2.0: [("0.6957043", None, 7e-4), ("0.6950365", None, 2e-4), ("0.6951801", "0.0000363", 6e-5),
          ("0.6961732", None, 3e-6), ("0.6961768", "0.0000008", 1e-6)],
    4.0: [("0.8030005", None, 1e-3), ("0.8035264", None, 3e-4), ("0.8037776", "0.0000698", 8e-5),
          ("0.8037655", None, 6e-5), ("0.8037727", "0.0000019", 4e-5)],
    8.0: [("0.9504142", None, 1e-3), ("0.9501856", None, 4e-4), ("0.9505784", "0.0001160", 1e-4),
          ("0.9515597", None, 1e-5), ("0.9515723", "0.0000034", 5e-6)],
}


def test_criterion_5_finite_coupling_tables():
    c = Checks(5, "finite-coupling tables")
    for lam, rows in FINITE_TABLE.items():
        exact = oracle_ground_state(lam)
        for p, (re, im, prec) in enumerate(rows, start=1):
            est = resum_coupling(anharmonic(p), lam).value
            ok = close_printed(est.real, re, units=2)
            ok &= abs(est.imag) < 2e-7 if im is None else close_printed(abs(est.imag), im, units=2)
            c.check(ok, f"lambda={lam:g} p={p}: got {est.real:.7f}±{abs(est.imag):.7f}i, printed {re}" + (f"±{im}i" if im else ""))
            rel = abs(est - exact) / exact
            c.check(exponent(rel) == exponent(prec), f"lambda={lam:g} p={p}: precision {rel:.1e} vs printed {prec:.0e}")
    c.finish()


# ---------------------------------------------------------------- criterion 6


def test_criterion_6_first_order_closed_form():
    c = Checks(6, "first-order closed form")
    ext = anharmonic(1)
    c.check(abs(ext.omega - 1.09954) < 5e-6, f"parameter {ext.omega:.6f} vs 1.09954")
    for lam in (2.0, 4.0, 8.0):
        a, b = resum_coupling(ext, lam).value, resum_first_order_closed_form(lam)
        c.check(abs(a - b) < 1e-9, f"lambda={lam:g}: |{a.real!r} - {b!r}| >= 1e-9")
    c.finish()


# ---------------------------------------------------------------- criterion 7


def test_criterion_7_property_suites():
    c = Checks(7, "property suites")
    rng = np.random.default_rng(2024)
    for p in range(9):
        for _ in range(25):
            a = [Fraction(int(rng.integers(-999, 1000)), int(rng.integers(1, 200))) for _ in range(p + 1)]
            c.check(phi_star(phi(a)) == a and phi(phi_star(a)) == a, f"round trip p={p} {a}")
            if p >= 1:
                top = coordinate_polynomial(a, p)
                deriv = [k * top[k] for k in range(1, p + 1)]
                c.check(deriv == [-p * v for v in coordinate_polynomial(a, p - 1)], f"derivative relation p={p}")
        for n in range(p + 1):
            for k in range(p + 1):
                s = sum(Fraction((-1) ** (i - n), math.factorial(i - n) * math.factorial(k - i)) for i in range(n, k + 1))
                c.check(s == (n == k), f"Kronecker p={p} n={n} k={k}")
    for i in range(6):
        for N in range(-10, 11):
            terms = [math.comb(i + 1, k) * (-1) ** k * generalized_binomial(N - k, i) for k in range(i + 2)]
            c.check(abs(math.fsum(terms)) <= 1e-13 * sum(map(abs, terms)), f"annihilation i={i} N={N}")
    for p in range(1, 6):
        ext = anharmonic(p)
        for N, b in enumerate(ext.series.coeffs):
            c.check(abs(coefficient_at(ext, 3 * N) - float(b)) <= 1e-9 * abs(float(b)), f"extension property p={p} N={N}")
    for model, ext in (("anharmonic", anharmonic(5)), ("zero-dim", extend(zero_dim_series(1)))):
        rec = weak_expansion_fit(ext)
        for N, (got, b) in enumerate(zip(rec, ext.series.coeffs)):
            c.check(abs(got - float(b)) <= 1e-6 * abs(float(b)), f"weak recovery {model} N={N}: {got!r} vs {float(b)!r}")
    for p in range(2, 6):
        base = anharmonic(p)
        for scale in (-3.7, 1e-3, 250.0):
            other = extend(anharmonic_series(p).scaled(scale))
            c.check(other.chosen == base.chosen and np.allclose(other.roots, base.roots, rtol=1e-10),
                    f"scaling invariance p={p} x{scale}")
    c.finish()


# ---------------------------------------------------------------- criterion 8


def test_criterion_8_left_right_consistency():
    c = Checks(8, "left/right consistency")
    gap = left_right_consistency(anharmonic(5), 1e4 ** (1 / 3), terms=2)
    c.check(gap < 1e-3, f"relative gap {gap:.2e} >= 1e-3")
    c.finish()


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
