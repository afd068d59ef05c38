"""Sparse exact polynomial arithmetic in the six model variables.

Polynomials live in Q[x, y, u, v, a, b].  A polynomial is a mapping from
exponent tuples ``(ex, ey, eu, ev, ea, eb)`` to nonzero Fraction coefficients;
the zero polynomial is the empty mapping.  The monomial order is lexicographic
with x > y > u > v > a > b, which exponent tuples inherit from plain tuple
comparison, so "leading term" below always means the max exponent tuple.

The resultant is a Sylvester-matrix determinant evaluated by fraction-free
(Bareiss) elimination after clearing rational coefficients to integers; every
intermediate division in that elimination is exact, so no rounding or
fraction blow-up occurs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from .rational import coerce_rational

VARS: tuple[str, ...] = ("x", "y", "u", "v", "a", "b")
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}
_ZERO_EXP = (0, 0, 0, 0, 0, 0)
# Within a printed monomial, factors appear alphabetically: a b u v x y.
_PRINT_ORDER = tuple(sorted(range(len(VARS)), key=lambda i: VARS[i]))

NEG_INF = float("-inf")


def _check_var(name: str) -> int:
    if name not in _VAR_INDEX:
        raise ValueError(f"unknown variable {name!r}; expected one of {VARS}")
    return _VAR_INDEX[name]


class MPoly:
    """Immutable sparse polynomial over Q in the variables x, y, u, v, a, b."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = coerce_rational(coeff)
                if c:
                    clean[tuple(exp)] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "MPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "MPoly":
        return cls({_ZERO_EXP: coerce_rational(c)})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        i = _check_var(name)
        exp = [0] * len(VARS)
        exp[i] = 1
        return cls({tuple(exp): Fraction(1)})

    # -- predicates and views ---------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def as_fraction(self) -> Fraction:
        """The value of a constant polynomial; error if any variable remains."""
        if not self._terms:
            return Fraction(0)
        if self.is_constant():
            return self._terms[_ZERO_EXP]
        raise ValueError(f"not a constant polynomial: {self}")

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending monomial order (canonical)."""
        return sorted(self._terms.items(), reverse=True)

    def num_terms(self) -> int:
        return len(self._terms)

    def variables(self) -> set[str]:
        used: set[str] = set()
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(VARS[i])
        return used

    def degree(self, name: str):
        """Degree in one variable; the zero polynomial has degree -inf."""
        i = _check_var(name)
        if not self._terms:
            return NEG_INF
        return max(exp[i] for exp in self._terms)

    def total_degree(self):
        if not self._terms:
            return NEG_INF
        return max(sum(exp) for exp in self._terms)

    def coefficient_of(self, name: str, power: int) -> "MPoly":
        """Coefficient of name**power, viewing self as univariate in name."""
        i = _check_var(name)
        out: dict[tuple[int, ...], Fraction] = {}
        for exp, c in self._terms.items():
            if exp[i] == power:
                reduced = list(exp)
                reduced[i] = 0
                out[tuple(reduced)] = c
        return MPoly(out)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms)
        return exp, self._terms[exp]

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "MPoly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return _raw({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other) -> "MPoly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MPoly.zero()
            return _raw({exp: k * c for exp, k in self._terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = (
                    e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2],
                    e1[3] + e2[3], e1[4] + e2[4], e1[5] + e2[5],
                )
                s = out.get(exp, 0) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- calculus and substitution ----------------------------------------

    def derivative(self, name: str) -> "MPoly":
        i = _check_var(name)
        out: dict[tuple[int, ...], Fraction] = {}
        for exp, c in self._terms.items():
            e = exp[i]
            if e:
                reduced = list(exp)
                reduced[i] = e - 1
                out[tuple(reduced)] = c * e
        return _raw(out)

    def evaluate(self, binding: Mapping[str, object]) -> "MPoly":
        """Substitute exact rational values for a subset of the variables."""
        idx_vals = [(_check_var(name), coerce_rational(val)) for name, val in binding.items()]
        out: dict[tuple[int, ...], Fraction] = {}
        for exp, c in self._terms.items():
            reduced = list(exp)
            for i, val in idx_vals:
                e = reduced[i]
                if e:
                    c = c * val ** e
                    reduced[i] = 0
            if c:
                key = tuple(reduced)
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return _raw(out)

    def substitute(self, name: str, replacement: "MPoly") -> "MPoly":
        """Replace a variable by a polynomial (composition), exactly."""
        i = _check_var(name)
        if not isinstance(replacement, MPoly):
            replacement = MPoly.constant(replacement)
        d = self.degree(name)
        if d is NEG_INF or d == 0:
            return self
        # Horner in the replaced variable: ((c_d q + c_{d-1}) q + ...) q + c_0
        result = MPoly.zero()
        for power in range(int(d), -1, -1):
            result = result * replacement + self.coefficient_of(name, power)
        return result

    # -- text form ---------------------------------------------------------

    def to_str(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exp, c in self.terms():
            factors: list[str] = []
            for i in _PRINT_ORDER:
                e = exp[i]
                if e == 1:
                    factors.append(VARS[i])
                elif e > 1:
                    factors.append(f"{VARS[i]}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __str__ = to_str

    def __repr__(self) -> str:
        return f"MPoly({self.to_str()!r})"


def _raw(terms: dict[tuple[int, ...], Fraction]) -> MPoly:
    """Build an MPoly from an already-normalized term dict (no copying checks)."""
    p = MPoly.__new__(MPoly)
    object.__setattr__(p, "_terms", terms)
    return p


def _coerce_poly(value):
    if isinstance(value, MPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MPoly.constant(value)
    return NotImplemented


# Generators, for building polynomials as expressions.
X, Y, U, V, A, B = (MPoly.var(name) for name in VARS)
ONE = MPoly.constant(1)


# -- free-function aliases over the operator forms -------------------------

def add(p: MPoly, q: MPoly) -> MPoly:
    return p + q


def mul(p: MPoly, q: MPoly) -> MPoly:
    return p * q


def neg(p: MPoly) -> MPoly:
    return -p


def scale(p: MPoly, c) -> MPoly:
    return p * coerce_rational(c)


def derivative(p: MPoly, name: str) -> MPoly:
    return p.derivative(name)


def evaluate(p: MPoly, binding: Mapping[str, object]) -> MPoly:
    return p.evaluate(binding)


def substitute(p: MPoly, name: str, replacement: MPoly) -> MPoly:
    return p.substitute(name, replacement)


def degree(p: MPoly, name: str):
    return p.degree(name)


# -- exact division --------------------------------------------------------

def exact_divide(p: MPoly, q: MPoly) -> MPoly:
    """Return p / q when q divides p exactly; raise ValueError otherwise."""
    if q.is_zero():
        raise ValueError("division by the zero polynomial")
    if p.is_zero():
        return MPoly.zero()
    if q.is_constant():
        inv = 1 / q.as_fraction()
        return p * inv
    lt_q_exp, lt_q_coeff = q.leading_term()
    quotient: dict[tuple[int, ...], Fraction] = {}
    rest = p
    while not rest.is_zero():
        lt_exp, lt_coeff = rest.leading_term()
        diff = tuple(a - b for a, b in zip(lt_exp, lt_q_exp))
        if any(e < 0 for e in diff):
            raise ValueError("not divisible")
        c = lt_coeff / lt_q_coeff
        quotient[diff] = c
        rest = rest - _raw({diff: c}) * q
    return _raw(quotient)


# -- resultants ------------------------------------------------------------

def _denominator_lcm(p: MPoly) -> int:
    d = 1
    for c in p._terms.values():
        d = lcm(d, c.denominator)
    return d


def sylvester_matrix(p: MPoly, q: MPoly, name: str) -> list[list[MPoly]]:
    """The (m+n) x (m+n) Sylvester matrix of p and q in the variable name."""
    m = int(p.degree(name))
    n = int(q.degree(name))
    if m < 1 or n < 1:
        raise ValueError("sylvester_matrix needs positive degree in the eliminated variable")
    pc = [p.coefficient_of(name, m - j) for j in range(m + 1)]
    qc = [q.coefficient_of(name, n - j) for j in range(n + 1)]
    size = m + n
    rows: list[list[MPoly]] = []
    for i in range(n):
        row = [MPoly.zero()] * size
        row[i:i + m + 1] = pc
        rows.append(row)
    for i in range(m):
        row = [MPoly.zero()] * size
        row[i:i + n + 1] = qc
        rows.append(row)
    return rows


def _bareiss_determinant(matrix: list[list[MPoly]]) -> MPoly:
    """Fraction-free determinant; every division below is exact."""
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return MPoly.constant(1)
    sign = 1
    prev = MPoly.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return MPoly.zero()
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            head = row_i[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - head * m[k][j]
                row_i[j] = exact_divide(num, prev)
            row_i[k] = MPoly.zero()
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p: MPoly, q: MPoly, name: str) -> MPoly:
    """Resultant of p and q with respect to one variable.

    Conventions: res(p, c, name) = c**deg(p) when c has degree 0 in name
    (c may involve the other variables); the resultant of two degree-0
    arguments is 1; a single zero argument gives 0; two zero arguments are
    an error.
    """
    _check_var(name)
    if p.is_zero() and q.is_zero():
        raise ValueError("resultant of two zero polynomials is undefined")
    if p.is_zero() or q.is_zero():
        return MPoly.zero()
    m = int(p.degree(name))
    n = int(q.degree(name))
    if m == 0 and n == 0:
        return MPoly.constant(1)
    if m == 0:
        return p ** n
    if n == 0:
        return q ** m
    cp = _denominator_lcm(p)
    cq = _denominator_lcm(q)
    det = _bareiss_determinant(sylvester_matrix(p * cp, q * cq, name))
    scale_back = Fraction(1, cp ** n * cq ** m)
    return det * scale_back


# -- univariate gcd --------------------------------------------------------

def _single_var(p: MPoly, q: MPoly, name: str) -> None:
    extra = (p.variables() | q.variables()) - {name}
    if extra:
        raise ValueError(f"gcd_univariate: arguments involve {sorted(extra)}, expected only {name!r}")


def gcd_univariate(p: MPoly, q: MPoly, name: str) -> MPoly:
    """Monic gcd of two univariate polynomials in the same variable."""
    _check_var(name)
    _single_var(p, q, name)
    a = _dense_coeffs(p, name)
    b = _dense_coeffs(q, name)
    g = _dense_gcd(a, b)
    return dense_to_mpoly(g, name)


def _dense_coeffs(p: MPoly, name: str) -> list[Fraction]:
    """Ascending coefficient list of a univariate polynomial; [] for zero."""
    d = p.degree(name)
    if d is NEG_INF:
        return []
    i = _VAR_INDEX[name]
    out = [Fraction(0)] * (int(d) + 1)
    for exp, c in p._terms.items():
        out[exp[i]] = c
    return out


def dense_to_mpoly(coeffs: Iterable, name: str) -> MPoly:
    i = _check_var(name)
    out: dict[tuple[int, ...], Fraction] = {}
    for power, c in enumerate(coeffs):
        c = coerce_rational(c)
        if c:
            exp = [0] * len(VARS)
            exp[i] = power
            out[tuple(exp)] = c
    return _raw(out)


def _dense_trim(c: list[Fraction]) -> list[Fraction]:
    while c and not c[-1]:
        c.pop()
    return c


def _dense_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = a[:]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        t = r[i + len(b) - 1] * inv
        if t:
            q[i] = t
            for j, bc in enumerate(b):
                r[i + j] -= t * bc
    return _dense_trim(q), _dense_trim(r)


def _dense_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _dense_trim(a[:]), _dense_trim(b[:])
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    if a:
        inv = 1 / a[-1]
        a = [c * inv for c in a]
    return a


# -- parsing ---------------------------------------------------------------

def parse_poly(text: str) -> MPoly:
    """Parse the canonical text form (as produced by to_str) back to an MPoly.

    Grammar: signed terms joined by + or -, each term a '*'-separated product
    of an optional rational coefficient and variable powers like x^3.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    pos = 0
    result = MPoly.zero()
    sign = 1
    # optional leading sign
    if tokens[pos][0] == "op":
        sign = -1 if tokens[pos][1] == "-" else 1
        pos += 1
    while True:
        term, pos = _parse_term(tokens, pos)
        result = result + term * sign
        if pos == len(tokens):
            return result
        kind, val = tokens[pos]
        if kind != "op" or val not in "+-":
            raise ValueError(f"expected + or - at token {pos} in {text!r}")
        sign = -1 if val == "-" else 1
        pos += 1


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-":
            tokens.append(("op", ch))
            i += 1
        elif ch == "*":
            if text[i:i + 2] == "**":
                tokens.append(("pow", "^"))
                i += 2
            else:
                tokens.append(("mul", "*"))
                i += 1
        elif ch == "^":
            tokens.append(("pow", "^"))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and (text[j].isdigit() or text[j] in "/."):
                j += 1
            tokens.append(("num", text[i:j]))
            i = j
        elif ch.isalpha():
            tokens.append(("var", ch))
            i += 1
        else:
            raise ValueError(f"unexpected character {ch!r} in polynomial text")
    return tokens


def _parse_term(tokens: list[tuple[str, str]], pos: int) -> tuple[MPoly, int]:
    factors: list[MPoly] = []
    while True:
        if pos >= len(tokens):
            raise ValueError("dangling term in polynomial text")
        kind, val = tokens[pos]
        if kind == "num":
            factors.append(MPoly.constant(Fraction(val)))
            pos += 1
        elif kind == "var":
            base = MPoly.var(val)
            pos += 1
            if pos < len(tokens) and tokens[pos][0] == "pow":
                pos += 1
                if pos >= len(tokens) or tokens[pos][0] != "num":
                    raise ValueError("exponent expected after ^")
                exp_text = tokens[pos][1]
                if not exp_text.isdigit():
                    raise ValueError(f"exponent must be a nonnegative integer, got {exp_text!r}")
                base = base ** int(exp_text)
                pos += 1
            factors.append(base)
        else:
            raise ValueError(f"unexpected token {val!r} in term")
        if pos < len(tokens) and tokens[pos][0] == "mul":
            pos += 1
            continue
        break
    term = MPoly.constant(1)
    for f in factors:
        term = term * f
    return term, pos
