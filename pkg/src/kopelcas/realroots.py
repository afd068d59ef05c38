"""Real-root isolation and exact sign evaluation for univariate polynomials.

A real algebraic number is stored as a square-free defining polynomial with
integer coefficients plus an isolating interval with rational endpoints.  The
stored interval always has non-root endpoints, so the root lies strictly
inside (lo, hi); a rational root is stored exactly as lo == hi.  Root counting
uses Sturm sequences and interval splitting uses plain bisection; a bisection
point that happens to hit a root exactly is snapped to an exact rational root
on the spot, which is also what keeps every interval endpoint off the roots.

All decisions below (membership, signs, comparisons) are certified by exact
rational arithmetic; floats appear only as a cached approximation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from math import lcm

from .exactpoly import (
    MPoly, _dense_coeffs, _dense_divmod, _dense_gcd, _dense_trim,
    dense_to_mpoly,
)

# Rational-root snapping is attempted only when divisor enumeration is cheap:
# both cleared end coefficients at most _SNAP_VALUE_LIMIT and at most
# _SNAP_PAIR_LIMIT candidate fractions.  Beyond that, isolation falls back to
# pure bisection, which is still exact (the root just stays an interval).
_SNAP_VALUE_LIMIT = 10**6
_SNAP_PAIR_LIMIT = 256

_REFINE_CAP = 4000  # safety valve; no certified path needs anywhere near this


def _sign(value) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def _univar(p: MPoly) -> tuple[str | None, list[Fraction]]:
    used = p.variables()
    if len(used) > 1:
        raise ValueError(f"expected a univariate polynomial, got variables {sorted(used)}")
    if not used:
        return None, ([p.as_fraction()] if not p.is_zero() else [])
    name = next(iter(used))
    return name, _dense_coeffs(p, name)


def _int_clear(dense: list[Fraction]) -> tuple[int, ...]:
    """Scale by a positive rational to primitive integer coefficients."""
    if not dense:
        return ()
    mult = lcm(*[c.denominator for c in dense])
    ints = [int(c * mult) for c in dense]
    content = 0
    for c in ints:
        content = int_gcd(content, abs(c))
    if content > 1:
        ints = [c // content for c in ints]
    return tuple(ints)


def _dense_derivative(coeffs):
    return [coeffs[k] * k for k in range(1, len(coeffs))]


def _int_derivative(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(coeffs[k] * k for k in range(1, len(coeffs)))


def _eval_int_at(coeffs, num: int, den: int) -> int:
    """Sign-faithful scaled value: den**deg * p(num/den), den > 0."""
    it = reversed(coeffs)
    acc = next(it)
    dp = 1
    for c in it:
        dp *= den
        acc = acc * num + c * dp
    return acc


def _sign_int_at(coeffs, point: Fraction) -> int:
    if not coeffs:
        return 0
    return _sign(_eval_int_at(coeffs, point.numerator, point.denominator))


def _sturm_chain(dense: list[Fraction]) -> list[tuple[int, ...]]:
    """Sturm sequence of a square-free polynomial, int-cleared per element."""
    chain_fr = [dense, _dense_derivative(dense)]
    while len(_dense_trim(chain_fr[-1][:])) > 1:
        _, r = _dense_divmod(chain_fr[-2], chain_fr[-1])
        if not r:
            break
        chain_fr.append([-c for c in r])
    return [_int_clear(c) for c in chain_fr if _dense_trim(c[:])]

def _variations(chain, point: Fraction) -> int:
    count = 0
    prev = 0
    for coeffs in chain:
        s = _sign_int_at(coeffs, point)
        if s and prev and s != prev:
            count += 1
        if s:
            prev = s
    return count


def _count_open(chain, lo: Fraction, hi: Fraction) -> int:
    """Roots of chain[0] in (lo, hi); endpoints must not be roots."""
    return _variations(chain, lo) - _variations(chain, hi)


def _cauchy_bound(coeffs: tuple[int, ...]) -> Fraction:
    top = abs(coeffs[-1])
    rest = max(abs(c) for c in coeffs[:-1]) if len(coeffs) > 1 else 0
    return 1 + Fraction(rest, top)


def _interval_eval(coeffs, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Conservative bounds of the polynomial's range over [lo, hi] (interval Horner)."""
    alo = ahi = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        p1, p2, p3, p4 = alo * lo, alo * hi, ahi * lo, ahi * hi
        alo = min(p1, p2, p3, p4) + c
        ahi = max(p1, p2, p3, p4) + c
    return alo, ahi


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out


def _divide_out_root(coeffs: tuple[int, ...], root: Fraction) -> tuple[int, ...]:
    """Exact synthetic division of an integer polynomial by (x - root)."""
    fr = [Fraction(c) for c in coeffs]
    out = []
    acc = Fraction(0)
    for c in reversed(fr):
        acc = acc * root + c if out else Fraction(c)
        out.append(acc)
    # out holds the Horner prefix values; the last is p(root), which must be 0
    assert out[-1] == 0
    quot = out[:-1]
    quot.reverse()
    return _int_clear(quot)


def _strip_rational_roots(coeffs: tuple[int, ...]) -> tuple[list[Fraction], tuple[int, ...]]:
    """Snap rational roots of a square-free integer polynomial, within budget."""
    roots: list[Fraction] = []
    work = list(coeffs)
    while work and work[0] == 0:
        roots.append(Fraction(0))
        work.pop(0)
    work_t = tuple(work)
    if len(work_t) <= 1:
        return roots, work_t
    a0, an = abs(work_t[0]), abs(work_t[-1])
    if a0 > _SNAP_VALUE_LIMIT or an > _SNAP_VALUE_LIMIT:
        return roots, work_t
    num_divs = _divisors(a0)
    den_divs = _divisors(an)
    if 2 * len(num_divs) * len(den_divs) > _SNAP_PAIR_LIMIT:
        return roots, work_t
    candidates = set()
    for p in num_divs:
        for q in den_divs:
            candidates.add(Fraction(p, q))
            candidates.add(Fraction(-p, q))
    for r in sorted(candidates):
        if len(work_t) <= 1:
            break
        if _eval_int_at(work_t, r.numerator, r.denominator) == 0:
            roots.append(r)
            work_t = _divide_out_root(work_t, r)
    return roots, work_t


class AlgebraicReal:
    """A real root of a square-free integer polynomial, isolated exactly.

    lo == hi means the root is the exact rational lo.  Otherwise the single
    root sits strictly inside (lo, hi) and the endpoints are not roots.
    """

    __slots__ = ("_var", "_coeffs", "_lo", "_hi", "_mult", "_approx", "_poly")

    def __init__(self, var: str, coeffs: tuple[int, ...], lo: Fraction, hi: Fraction,
                 multiplicity: int = 1):
        self._var = var
        self._coeffs = coeffs
        self._lo = lo
        self._hi = hi
        self._mult = multiplicity
        self._approx = None
        self._poly = None

    @classmethod
    def from_rational(cls, value, var: str = "x", multiplicity: int = 1) -> "AlgebraicReal":
        value = Fraction(value)
        coeffs = _int_clear([-value, Fraction(1)])
        return cls(var, coeffs, value, value, multiplicity)

    @property
    def var(self) -> str:
        return self._var

    @property
    def lo(self) -> Fraction:
        return self._lo

    @property
    def hi(self) -> Fraction:
        return self._hi

    @property
    def multiplicity_in_source(self) -> int:
        return self._mult

    @property
    def is_rational(self) -> bool:
        return self._lo == self._hi

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not an exactly known rational root")
        return self._lo

    @property
    def defining_poly(self) -> MPoly:
        if self._poly is None:
            self._poly = dense_to_mpoly([Fraction(c) for c in self._coeffs], self._var)
        return self._poly

    @property
    def approx(self) -> float:
        """Double float within one rounding step of the root (cached)."""
        if self._approx is None:
            if self.is_rational:
                self._approx = float(self._lo)
            else:
                lo, hi = self._lo, self._hi
                slo = _sign_int_at(self._coeffs, lo)
                while True:
                    scale = max(Fraction(1), min(abs(lo), abs(hi))) if lo * hi > 0 else Fraction(1)
                    if hi - lo <= scale * Fraction(1, 2**53):
                        break
                    mid = (lo + hi) / 2
                    smid = _sign_int_at(self._coeffs, mid)
                    if smid == 0:
                        lo = hi = mid
                        break
                    if smid == slo:
                        lo = mid
                    else:
                        hi = mid
                self._approx = float((lo + hi) / 2)
        return self._approx

    def __float__(self) -> float:
        return self.approx

    def _step(self) -> "AlgebraicReal":
        """One bisection step; snaps to exact if the midpoint is the root."""
        if self.is_rational:
            return self
        mid = (self._lo + self._hi) / 2
        smid = _sign_int_at(self._coeffs, mid)
        if smid == 0:
            return AlgebraicReal(self._var, self._coeffs, mid, mid, self._mult)
        if smid == _sign_int_at(self._coeffs, self._lo):
            return AlgebraicReal(self._var, self._coeffs, mid, self._hi, self._mult)
        return AlgebraicReal(self._var, self._coeffs, self._lo, mid, self._mult)

    def _adopt(self, other: "AlgebraicReal") -> None:
        """Keep a tighter window found while answering a query.

        The represented number is unchanged, so cached values stay valid;
        only a defining-polynomial swap invalidates the MPoly cache.
        """
        if other._coeffs is not self._coeffs:
            self._poly = other._poly
            self._coeffs = other._coeffs
        self._lo = other._lo
        self._hi = other._hi
        if self._approx is None and other._approx is not None:
            self._approx = other._approx

    def refine(self, width_bound) -> "AlgebraicReal":
        """Shrink the isolating interval to at most the given width."""
        width_bound = Fraction(width_bound)
        if width_bound <= 0:
            raise ValueError("width bound must be positive")
        current = self
        steps = 0
        while not current.is_rational and current._hi - current._lo > width_bound:
            current = current._step()
            steps += 1
            if steps > _REFINE_CAP:
                raise RuntimeError("refinement failed to converge")
        return current

    def compare_rational(self, other) -> int:
        """Sign of (self - other) for an exact rational other."""
        other = Fraction(other)
        if self.is_rational:
            return _sign(self._lo - other)
        current = self
        try:
            while True:
                if other <= current._lo:
                    return 1
                if other >= current._hi:
                    return -1
                if _sign_int_at(current._coeffs, other) == 0:
                    # the only root of the defining polynomial in (lo, hi)
                    current = AlgebraicReal(self._var, current._coeffs, other,
                                            other, self._mult)
                    return 0
                current = current._step()
        finally:
            if current is not self:
                self._adopt(current)

    def __repr__(self) -> str:
        if self.is_rational:
            return f"AlgebraicReal({self._var}={self._lo})"
        return f"AlgebraicReal({self._var} in ({self._lo}, {self._hi}])"


def _isolate_square_free(coeffs: tuple[int, ...]):
    """Isolate all real roots of a square-free integer polynomial.

    Returns (exact_roots, intervals, final_coeffs): rational roots snapped
    when a bisection point hits one, open isolating intervals for the rest,
    and the (possibly deflated) defining polynomial valid for every interval.
    """
    exact_roots: list[Fraction] = []
    intervals: list[tuple[Fraction, Fraction]] = []
    if len(coeffs) <= 1:
        return exact_roots, intervals, coeffs
    chain = _sturm_chain([Fraction(c) for c in coeffs])
    bound = _cauchy_bound(coeffs)
    total = _count_open(chain, -bound, bound)
    stack = [(-bound, bound, total)]
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            intervals.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _sign_int_at(coeffs, mid) == 0:
            # bisection landed on a root: snap it and deflate
            exact_roots.append(mid)
            coeffs = _divide_out_root(coeffs, mid)
            chain = _sturm_chain([Fraction(c) for c in coeffs])
            stack.append((lo, hi, _count_open(chain, lo, hi)))
            continue
        left = _count_open(chain, lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, cnt - left))
    return exact_roots, intervals, coeffs


def _overlaps(a: AlgebraicReal, b: AlgebraicReal) -> bool:
    if a.is_rational and b.is_rational:
        return False  # distinct exact values never clash
    if a.is_rational:
        return b.lo < a.lo < b.hi
    if b.is_rational:
        return a.lo < b.lo < a.hi
    return max(a.lo, b.lo) < min(a.hi, b.hi)


def _make_disjoint(items: list[AlgebraicReal]) -> list[AlgebraicReal]:
    guard = 0
    while True:
        items.sort(key=lambda r: (r.lo, r.hi))
        clashes = False
        for i in range(len(items) - 1):
            a, b = items[i], items[i + 1]
            if _overlaps(a, b):
                items[i] = a._step()
                items[i + 1] = b._step()
                clashes = True
        if not clashes:
            return items
        guard += 1
        if guard > _REFINE_CAP:
            raise RuntimeError("failed to separate root intervals")


def square_free_decompose(p: MPoly) -> list[tuple[MPoly, int]]:
    """Split a univariate polynomial into coprime square-free factors.

    Returns (factor, multiplicity) pairs with monic factors; the product of
    factor**multiplicity equals p up to a nonzero constant.
    """
    var, dense = _univar(p)
    if var is None:
        if not dense:
            raise ValueError("cannot decompose the zero polynomial")
        return []
    factors = _square_free_dense(dense)
    return [(dense_to_mpoly(f, var), m) for f, m in factors]


def _square_free_dense(dense: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm over Q; factors come back monic."""
    f = _dense_trim(dense[:])
    if len(f) <= 1:
        return []
    df = _dense_derivative(f)
    a0 = _dense_gcd(f, df)
    if len(a0) == 1:
        inv = 1 / f[-1]
        return [([c * inv for c in f], 1)]
    b, _ = _dense_divmod(f, a0)
    c, _ = _dense_divmod(df, a0)
    d = _dense_trim([ci - bi for ci, bi in
                     zip_longest_zero(c, _dense_derivative(b))])
    out: list[tuple[list[Fraction], int]] = []
    i = 1
    while len(b) > 1:
        ai = _dense_gcd(b, d)
        if len(ai) > 1:
            out.append((ai, i))
        b, _ = _dense_divmod(b, ai)
        cnext, _ = _dense_divmod(d, ai)
        d = _dense_trim([ci - bi for ci, bi in
                         zip_longest_zero(cnext, _dense_derivative(b))])
        i += 1
    return out


def zip_longest_zero(a, b):
    n = max(len(a), len(b))
    zero = Fraction(0)
    for i in range(n):
        yield (a[i] if i < len(a) else zero), (b[i] if i < len(b) else zero)


def isolate_real_roots(p: MPoly) -> list[AlgebraicReal]:
    """All real roots of a univariate polynomial, sorted ascending.

    Roots carry their multiplicity; isolating intervals are pairwise disjoint.
    Rational roots are snapped to exact form when candidate testing is within
    budget (always the case at small coefficients).
    """
    var, dense = _univar(p)
    if var is None:
        if not dense:
            raise ValueError("cannot isolate roots of the zero polynomial")
        return []
    items: list[AlgebraicReal] = []
    for factor, mult in _square_free_dense(dense):
        fi = _int_clear(factor)
        rational, rest = _strip_rational_roots(fi)
        for r in rational:
            items.append(AlgebraicReal.from_rational(r, var, mult))
        if len(rest) > 1:
            exacts, intervals, final = _isolate_square_free(rest)
            for r in exacts:
                items.append(AlgebraicReal.from_rational(r, var, mult))
            for lo, hi in intervals:
                items.append(AlgebraicReal(var, final, lo, hi, mult))
    return _make_disjoint(items)


def sturm_sign_count(p: MPoly, lo, hi) -> int:
    """Number of distinct real roots of a square-free p in (lo, hi].

    The endpoints must not be roots (then (lo, hi] holds the same roots as
    the open interval, and the Sturm count is exact).
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise ValueError("need lo < hi")
    var, dense = _univar(p)
    if var is None:
        if not dense:
            raise ValueError("zero polynomial")
        return 0
    ints = _int_clear(dense)
    if _sign_int_at(ints, lo) == 0 or _sign_int_at(ints, hi) == 0:
        raise ValueError("interval endpoint is a root")
    chain = _sturm_chain(dense)
    return _count_open(chain, lo, hi)


def sign_at(q: MPoly, alpha: AlgebraicReal) -> int:
    """Certified sign of q at an algebraic real; exact zero detection included."""
    var, dense = _univar(q)
    if var is not None and var != alpha.var:
        raise ValueError(f"q is in {var!r} but the point is in {alpha.var!r}")
    return _sign_dense_at(_dense_trim(dense[:]), alpha)


def _sign_dense_at(dense, alpha: AlgebraicReal) -> int:
    """Sign query on ascending rational coefficients; tightens alpha in place."""
    if not dense:
        return 0
    if len(dense) == 1:
        return _sign(dense[0])
    qi = _int_clear(dense)
    if alpha.is_rational:
        return _sign_int_at(qi, alpha.value)
    current = alpha
    try:
        for round_no in range(_REFINE_CAP):
            blo, bhi = _interval_eval(qi, current.lo, current.hi)
            if blo > 0:
                return 1
            if bhi < 0:
                return -1
            if round_no == 2:
                # interval bounds refuse to settle: rule exact zero in or out
                d = _dense_gcd([Fraction(c) for c in dense],
                               [Fraction(c) for c in current._coeffs])
                if len(d) > 1:
                    di = _int_clear(d)
                    if _sign_int_at(di, current.lo) * _sign_int_at(di, current.hi) < 0:
                        return 0
            current = current._step()
            if current.is_rational:
                return _sign_int_at(qi, current.value)
        raise RuntimeError("sign determination failed to converge")
    finally:
        if current is not alpha:
            alpha._adopt(current)


def refine(alpha: AlgebraicReal, width_bound) -> AlgebraicReal:
    return alpha.refine(width_bound)


def algebraic_image(alpha: AlgebraicReal, q: MPoly, out_var: str) -> AlgebraicReal:
    """The value q(alpha) as an AlgebraicReal in out_var, exactly.

    The defining polynomial comes from eliminating alpha's variable between
    its defining polynomial and out_var - q; the right root is picked by
    shrinking alpha until the interval image of q pins a unique candidate.
    """
    from .exactpoly import resultant  # local import to keep module load light

    var, dense = _univar(q)
    if var is not None and var != alpha.var:
        raise ValueError("q must be univariate in the point's variable")
    if alpha.is_rational:
        val = sum(c * alpha.value**k for k, c in enumerate(dense)) if dense else Fraction(0)
        return AlgebraicReal.from_rational(val, out_var, alpha.multiplicity_in_source)
    image_poly = resultant(alpha.defining_poly, MPoly.var(out_var) - q, alpha.var)
    out_dense = _dense_coeffs(image_poly, out_var)
    # keep one copy of each distinct root
    parts = _square_free_dense(out_dense)
    sq_free = [Fraction(1)]
    for f, _ in parts:
        acc = [Fraction(0)] * (len(sq_free) + len(f) - 1)
        for i, ci in enumerate(sq_free):
            for j, cj in enumerate(f):
                acc[i + j] += ci * cj
        sq_free = acc
    candidates = isolate_real_roots(dense_to_mpoly(sq_free, out_var))
    # evaluate with the original coefficients: rescaling would shift the value
    # box away from the candidate roots and select a wrong preimage
    qv = tuple(dense)
    current = alpha
    try:
        for _ in range(_REFINE_CAP):
            ylo, yhi = _interval_eval(qv, current.lo, current.hi)
            live = []
            for cand in candidates:
                if cand.is_rational:
                    if ylo <= cand.value <= yhi:
                        live.append(cand)
                elif cand.hi >= ylo and cand.lo <= yhi:
                    live.append(cand)
            if len(live) == 1:
                found = live[0]
                return AlgebraicReal(out_var, found._coeffs, found.lo, found.hi,
                                     alpha.multiplicity_in_source)
            candidates = [c._step() for c in candidates]
            current = current._step()
            if current.is_rational:
                return algebraic_image(current, q, out_var)
        raise RuntimeError("image root selection failed to converge")
    finally:
        if current is not alpha:
            alpha._adopt(current)
