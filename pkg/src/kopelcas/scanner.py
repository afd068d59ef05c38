"""Parameter grid scans comparing certificate classes against enumeration.

Every cell is classified twice, by independent routes: once by evaluating
the frozen parameter-space certificates, once by actually isolating the
fixed points at that cell and certifying their signs and stability.  The
two answers land side by side in the emitted table; any off-boundary
disagreement is a bug in one of the routes, never a rounding artifact,
because both run in exact arithmetic.

Cells too close to a certificate's zero set are flagged near_boundary and
exempted from the agreement check: the class there is decided by a sign
that a neighbouring cell flips, so both answers are legitimate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .certificates import (
    EquilibriumCountClass, StableCountClass,
    classify_equilibrium_count, classify_stable_best_response,
    classify_stable_homogeneous,
    _count_discriminant_value, _modulus_full_speed_value,
    _modulus_homogeneous_value, _stable_cut_quadratic_value,
)
from .model import ModelParams, _CD_ON_LOCUS, equilibria
from .rational import coerce_rational, format_rational
from .realroots import _sign_dense_at

SCAN_KINDS = ("count", "stable", "homogeneous")

EXPECTED_POSITIVE = {
    EquilibriumCountClass.THREE_POSITIVE: 3,
    EquilibriumCountClass.ONE_POSITIVE: 1,
    EquilibriumCountClass.TWO_POSITIVE_BOUNDARY: 2,
    EquilibriumCountClass.ONE_POSITIVE_TRIPLE: 1,
    EquilibriumCountClass.NONE_OR_DEGENERATE: 0,
}

EXPECTED_STABLE = {
    StableCountClass.TWO_STABLE: 2,
    StableCountClass.ONE_STABLE: 1,
    StableCountClass.THEOREM_SILENT: None,
}


@dataclass(frozen=True)
class ScanSpec:
    u_range: tuple
    v_range: tuple
    resolution: int
    a_value: Fraction | None = None
    boundary_epsilon: Fraction = Fraction(1, 1000)

    def __post_init__(self):
        u = tuple(coerce_rational(t) for t in self.u_range)
        v = tuple(coerce_rational(t) for t in self.v_range)
        object.__setattr__(self, "u_range", u)
        object.__setattr__(self, "v_range", v)
        object.__setattr__(self, "boundary_epsilon", coerce_rational(self.boundary_epsilon))
        if self.a_value is not None:
            object.__setattr__(self, "a_value", coerce_rational(self.a_value))
            if not (0 < self.a_value <= 1):
                raise ValueError("adjustment speeds must satisfy 0 < a <= 1 and 0 < b <= 1")
        for lo, hi in (u, v):
            if lo <= 0:
                raise ValueError("scan ranges must stay strictly positive")
            if lo >= hi:
                raise ValueError("scan range lower bound must be below the upper bound")
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        if self.boundary_epsilon <= 0:
            raise ValueError("boundary epsilon must be positive")


@dataclass(frozen=True)
class ScanCell:
    u: Fraction
    v: Fraction
    a: Fraction | None
    cert_class: str
    numeric_positive: int
    numeric_stable: int
    agree: bool
    near_boundary: bool


@dataclass
class ScanGrid:
    spec: ScanSpec
    kind: str
    cells: list

    def disagreements(self):
        return [c for c in self.cells if not c.agree]


def grid_points(lo, hi, resolution: int) -> list:
    """resolution exact rationals from lo to hi inclusive, evenly spaced."""
    lo = coerce_rational(lo)
    hi = coerce_rational(hi)
    span = hi - lo
    return [lo + Fraction(k, resolution - 1) * span for k in range(resolution)]


def _boundary_values(kind: str, u, v, a):
    disc = _count_discriminant_value(u, v)
    threshold = u * v - 1
    if kind == "count":
        return (disc, threshold)
    if kind == "stable":
        return (disc, threshold, _modulus_full_speed_value(u, v),
                u * v - 15, _stable_cut_quadratic_value(u, v))
    return (disc, threshold, _modulus_homogeneous_value(u, v, a))


class _StabilityDense:
    """Per-scan sign machinery for the three stability conditions.

    The speeds are fixed for a whole scan; binding them once and keeping
    flat term lists turns each cell into a handful of rational multiplies
    instead of a full symbolic evaluation.
    """

    def __init__(self, a, b):
        bound = [cd.evaluate({"a": a, "b": b}) for cd in _CD_ON_LOCUS]
        self.first_two_equal = bound[0] == bound[1]
        self.term_lists = []
        self.x_degrees = []
        max_ku = max_kv = 0
        for poly in bound:
            terms = [(coeff, expo[0], expo[2], expo[3]) for expo, coeff in poly.terms()]
            self.term_lists.append(terms)
            self.x_degrees.append(max(t[1] for t in terms))
            max_ku = max(max_ku, max(t[2] for t in terms))
            max_kv = max(max_kv, max(t[3] for t in terms))
        self.max_ku = max_ku
        self.max_kv = max_kv

    def dense_at(self, u, v):
        u_pows = [Fraction(1)]
        for _ in range(self.max_ku):
            u_pows.append(u_pows[-1] * u)
        v_pows = [Fraction(1)]
        for _ in range(self.max_kv):
            v_pows.append(v_pows[-1] * v)
        out = []
        for terms, deg in zip(self.term_lists, self.x_degrees):
            dense = [Fraction(0)] * (deg + 1)
            for coeff, kx, ku, kv in terms:
                dense[kx] += coeff * u_pows[ku] * v_pows[kv]
            out.append(dense)
        return out


def _certified_stable_count(sd: _StabilityDense, u, v, positives) -> int:
    d1, d2, d3 = sd.dense_at(u, v)
    count = 0
    for eq in positives:
        s1 = _sign_dense_at(d1, eq.x_root)
        if s1 <= 0:
            continue
        s2 = s1 if sd.first_two_equal else _sign_dense_at(d2, eq.x_root)
        if s2 <= 0:
            continue
        if _sign_dense_at(d3, eq.x_root) > 0:
            count += 1
    return count


def _scan(kind: str, spec: ScanSpec) -> ScanGrid:
    if kind not in SCAN_KINDS:
        raise ValueError(f"unknown scan kind: {kind}")
    a_val = spec.a_value if kind == "homogeneous" else None
    if kind == "homogeneous" and a_val is None:
        raise ValueError("homogeneous scans need a_value set on the ScanSpec")
    eps = spec.boundary_epsilon
    us = grid_points(*spec.u_range, spec.resolution)
    vs = grid_points(*spec.v_range, spec.resolution)
    speed = a_val if kind == "homogeneous" else Fraction(1)
    sd = _StabilityDense(speed, speed)
    cells = []
    for u in us:
        for v in vs:
            if kind == "count":
                label = classify_equilibrium_count(u, v)
                expected = EXPECTED_POSITIVE[label]
            elif kind == "stable":
                label = classify_stable_best_response(u, v)
                expected = EXPECTED_STABLE[label]
            else:
                label = classify_stable_homogeneous(u, v, a_val)
                expected = EXPECTED_STABLE[label]

            if kind == "homogeneous":
                params = ModelParams(u, v, a=a_val, b=a_val)
            else:
                params = ModelParams(u, v)
            eqs = equilibria(params)
            positives = [e for e in eqs if e.is_positive]
            numeric_positive = len(positives)
            numeric_stable = _certified_stable_count(sd, u, v, positives)

            near = any(abs(val) < eps for val in _boundary_values(kind, u, v, a_val))
            if kind == "count":
                agree = near or numeric_positive == expected
            else:
                agree = near or expected is None or numeric_stable == expected
            cells.append(ScanCell(u, v, a_val, label.value, numeric_positive,
                                  numeric_stable, agree, near))
    return ScanGrid(spec, kind, cells)


def scan_equilibrium_count(spec: ScanSpec) -> ScanGrid:
    return _scan("count", spec)


def scan_stability_best_response(spec: ScanSpec) -> ScanGrid:
    return _scan("stable", spec)


def scan_stability_homogeneous(spec: ScanSpec) -> ScanGrid:
    return _scan("homogeneous", spec)


# -- emission --------------------------------------------------------------

def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


def _cell_row(cell: ScanCell, with_a: bool) -> list:
    row = [format_rational(cell.u), repr(float(cell.u)),
           format_rational(cell.v), repr(float(cell.v))]
    if with_a:
        row += [format_rational(cell.a), repr(float(cell.a))]
    row += [cell.cert_class, str(cell.numeric_positive), str(cell.numeric_stable),
            _bool_str(cell.agree), _bool_str(cell.near_boundary)]
    return row


def emit_grid(grid: ScanGrid, fmt: str = "csv", path=None) -> str:
    """Serialize deterministically; identical grids emit identical bytes."""
    with_a = grid.kind == "homogeneous"
    if fmt == "csv":
        header = ["u", "u_float", "v", "v_float"]
        if with_a:
            header += ["a", "a_float"]
        header += ["cert_class", "numeric_positive", "numeric_stable",
                   "agree", "near_boundary"]
        lines = [",".join(header)]
        lines += [",".join(_cell_row(c, with_a)) for c in grid.cells]
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        cells = []
        for c in grid.cells:
            entry = {"u": format_rational(c.u), "u_float": float(c.u),
                     "v": format_rational(c.v), "v_float": float(c.v)}
            if with_a:
                entry["a"] = format_rational(c.a)
                entry["a_float"] = float(c.a)
            entry.update({"cert_class": c.cert_class,
                          "numeric_positive": c.numeric_positive,
                          "numeric_stable": c.numeric_stable,
                          "agree": c.agree,
                          "near_boundary": c.near_boundary})
            cells.append(entry)
        doc = {
            "schema_version": 1,
            "kind": grid.kind,
            "resolution": grid.spec.resolution,
            "u_range": [format_rational(t) for t in grid.spec.u_range],
            "v_range": [format_rational(t) for t in grid.spec.v_range],
            "a_value": (format_rational(grid.spec.a_value)
                        if grid.spec.a_value is not None else None),
            "boundary_epsilon": format_rational(grid.spec.boundary_epsilon),
            "cells": cells,
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        raise ValueError(f"unknown emission format: {fmt}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
