"""Parameter-space sign certificates for counting and stability.

A handful of polynomials in the parameters decide, before any root is
isolated, how many positive fixed points exist and how many of those are
stable.  Their expanded forms are frozen below as literals.  None of the
classification code trusts the literals blindly: verify_all() re-derives
every certificate from the model polynomials with exact resultant
arithmetic and compares term by term, so a transcription slip in either
copy is a loud test failure, not a silent misclassification.

Derivation route for the chain resultants: eliminate y from a stability
condition using the fixed point relation y = v x (1 - x), then eliminate
x using the equilibrium cubic.  What remains involves parameters only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exactpoly import A, B, MPoly, U, V, X, Y, resultant
from .model import equilibrium_cubic, stability_conditions, y_relation
from .rational import coerce_rational


class EquilibriumCountClass(Enum):
    THREE_POSITIVE = "ThreePositive"
    ONE_POSITIVE = "OnePositive"
    TWO_POSITIVE_BOUNDARY = "TwoPositiveBoundary"
    ONE_POSITIVE_TRIPLE = "OnePositiveTriple"
    NONE_OR_DEGENERATE = "NoneOrDegenerate"


class StableCountClass(Enum):
    TWO_STABLE = "TwoStable"
    ONE_STABLE = "OneStable"
    THEOREM_SILENT = "TheoremSilent"


def _expand(terms, gens):
    total = MPoly.zero()
    for coeff, *powers in terms:
        mono = MPoly.constant(coeff)
        for g, p in zip(gens, powers):
            if p:
                mono = mono * g**p
        total = total + mono
    return total


# discriminant factor of the equilibrium cubic: positive gives three distinct
# positive fixed points, negative gives one real root, zero is the merge locus
COUNT_DISCRIMINANT = U**2 * V**2 - 4 * U**2 * V - 4 * U * V**2 + 18 * U * V - 27

# sign of u v - 1 controls whether the cubic's roots sit on the positive side
POSITIVITY_THRESHOLD = U * V - 1

# second factor of the inflection resultant; together with the discriminant
# it pins the unique parameter point carrying a triple root
TRIPLE_ROOT_COMPANION = 2 * U * V**2 - 9 * U * V + 27

# chain resultant of the flip condition, general speeds (terms: coeff, u, v, a, b)
FLIP_CHAIN = _expand([
    (1, 3, 3, 3, 3), (-4, 3, 2, 3, 3), (-4, 2, 3, 3, 3), (17, 2, 2, 3, 3),
    (4, 2, 1, 3, 3), (4, 1, 2, 3, 3), (-2, 2, 2, 3, 2), (-2, 2, 2, 2, 3),
    (-45, 1, 1, 3, 3), (8, 2, 1, 3, 2), (8, 1, 2, 3, 2), (8, 2, 1, 2, 3),
    (8, 1, 2, 2, 3), (4, 2, 2, 2, 2), (-36, 1, 1, 3, 2), (-36, 1, 1, 2, 3),
    (-16, 2, 1, 2, 2), (-16, 1, 2, 2, 2), (27, 0, 0, 3, 3), (-4, 1, 1, 3, 1),
    (64, 1, 1, 2, 2), (-4, 1, 1, 1, 3), (54, 0, 0, 3, 2), (54, 0, 0, 2, 3),
    (16, 1, 1, 2, 1), (16, 1, 1, 1, 2), (36, 0, 0, 3, 1), (-36, 0, 0, 2, 2),
    (36, 0, 0, 1, 3), (-16, 1, 1, 1, 1), (8, 0, 0, 3, 0), (-120, 0, 0, 2, 1),
    (-120, 0, 0, 1, 2), (8, 0, 0, 0, 3), (-48, 0, 0, 2, 0), (48, 0, 0, 1, 1),
    (-48, 0, 0, 0, 2), (96, 0, 0, 1, 0), (96, 0, 0, 0, 1), (-64, 0, 0, 0, 0),
], (U, V, A, B))

# chain resultant of the modulus condition, general speeds
MODULUS_CHAIN = _expand([
    (1, 3, 3, 3, 3), (-4, 3, 2, 3, 3), (-4, 2, 3, 3, 3), (17, 2, 2, 3, 3),
    (4, 2, 1, 3, 3), (4, 1, 2, 3, 3), (-1, 2, 2, 3, 2), (-1, 2, 2, 2, 3),
    (-45, 1, 1, 3, 3), (4, 2, 1, 3, 2), (4, 1, 2, 3, 2), (4, 2, 1, 2, 3),
    (4, 1, 2, 2, 3), (-18, 1, 1, 3, 2), (-18, 1, 1, 2, 3), (27, 0, 0, 3, 3),
    (-1, 1, 1, 3, 1), (-2, 1, 1, 2, 2), (-1, 1, 1, 1, 3), (27, 0, 0, 3, 2),
    (27, 0, 0, 2, 3), (9, 0, 0, 3, 1), (18, 0, 0, 2, 2), (9, 0, 0, 1, 3),
    (1, 0, 0, 3, 0), (3, 0, 0, 2, 1), (3, 0, 0, 1, 2), (1, 0, 0, 0, 3),
], (U, V, A, B))

# full-speed restrictions (a = b = 1)
FLIP_FULL_SPEED = (
    U**3 * V**3 - 4 * U**3 * V**2 - 4 * U**2 * V**3 + 17 * U**2 * V**2
    + 4 * U**2 * V + 4 * U * V**2 - 45 * U * V + 27
)
MODULUS_FULL_SPEED = (
    U**3 * V**3 - 4 * U**3 * V**2 - 4 * U**2 * V**3 + 15 * U**2 * V**2
    + 12 * U**2 * V + 12 * U * V**2 - 85 * U * V + 125
)

# extra cuts needed to carve the two-stable region out of the sign chart
STABLE_CUT_LINEAR = U * V - 15
STABLE_CUT_QUADRATIC = (
    U**2 * V**2 - 4 * U**2 * V - 5 * U * V**2 + 21 * U * V + 11 * V - 60
)

# homogeneous speeds (b = a): the modulus chain collapses onto this cubic in a
MODULUS_HOMOGENEOUS = _expand([
    (1, 3, 3, 3), (-4, 3, 2, 3), (-4, 2, 3, 3), (17, 2, 2, 3),
    (4, 2, 1, 3), (4, 1, 2, 3), (-2, 2, 2, 2), (-45, 1, 1, 3),
    (8, 2, 1, 2), (8, 1, 2, 2), (-36, 1, 1, 2), (27, 0, 0, 3),
    (-4, 1, 1, 1), (54, 0, 0, 2), (36, 0, 0, 1), (8, 0, 0, 0),
], (U, V, A))


@dataclass(frozen=True)
class NamedCertificate:
    name: str
    poly: MPoly
    role: str


def build_certificates() -> dict:
    entries = [
        NamedCertificate("count_discriminant", COUNT_DISCRIMINANT,
                         "separates one from three positive fixed points"),
        NamedCertificate("positivity_threshold", POSITIVITY_THRESHOLD,
                         "roots cross zero exactly on u v = 1"),
        NamedCertificate("triple_root_companion", TRIPLE_ROOT_COMPANION,
                         "vanishes with the discriminant only at the triple root point"),
        NamedCertificate("flip_chain", FLIP_CHAIN,
                         "flip condition eliminated onto parameter space"),
        NamedCertificate("modulus_chain", MODULUS_CHAIN,
                         "modulus condition eliminated onto parameter space"),
        NamedCertificate("flip_full_speed", FLIP_FULL_SPEED,
                         "flip chain at a = b = 1"),
        NamedCertificate("modulus_full_speed", MODULUS_FULL_SPEED,
                         "modulus chain at a = b = 1"),
        NamedCertificate("stable_cut_linear", STABLE_CUT_LINEAR,
                         "extra cut for the two-stable region"),
        NamedCertificate("stable_cut_quadratic", STABLE_CUT_QUADRATIC,
                         "extra cut for the two-stable region"),
        NamedCertificate("modulus_homogeneous", MODULUS_HOMOGENEOUS,
                         "modulus chain at b = a, common cubic factor removed"),
    ]
    return {e.name: e for e in entries}


# -- identity verification -------------------------------------------------

@dataclass(frozen=True)
class IdentityResult:
    name: str
    passed: bool
    pairs: tuple  # (derived, expected) comparisons, all of which must agree

    @property
    def derived(self) -> MPoly:
        return self.pairs[0][0]

    @property
    def expected(self) -> MPoly:
        return self.pairs[0][1]

    @property
    def difference(self) -> MPoly:
        for lhs, rhs in self.pairs:
            if lhs != rhs:
                return lhs - rhs
        return MPoly.zero()


def _chain_resultant(condition: MPoly) -> MPoly:
    inner = resultant(condition, y_relation(), "y")
    return resultant(inner, equilibrium_cubic(), "x")


def _identity_pairs(name: str) -> list:
    cubic = equilibrium_cubic()
    cd1, cd2, cd3 = stability_conditions()
    if name == "cubic-at-origin":
        return [(resultant(cubic, X, "x"), U * V - 1)]
    if name == "cubic-at-one":
        return [(resultant(cubic, 1 - X, "x"), MPoly.constant(1))]
    if name == "cubic-discriminant":
        return [(resultant(cubic, cubic.derivative("x"), "x"),
                 -(U**3 * V**6) * COUNT_DISCRIMINANT)]
    if name == "cubic-inflection":
        second = cubic.derivative("x").derivative("x")
        return [(resultant(cubic, second, "x"),
                 -8 * U**3 * V**6 * TRIPLE_ROOT_COMPANION)]
    if name == "fold-chain-resultant":
        expected = -(A**3 * B**3 * U**3 * V**6) * (U * V - 1) * COUNT_DISCRIMINANT
        return [(_chain_resultant(cd1), expected)]
    if name == "flip-chain-resultant":
        return [(_chain_resultant(cd2), -(U**3 * V**6) * FLIP_CHAIN)]
    if name == "modulus-chain-resultant":
        return [(_chain_resultant(cd3), (U**3 * V**6) * MODULUS_CHAIN)]
    if name == "flip-full-speed-factorization":
        restricted = FLIP_CHAIN.evaluate({"a": 1, "b": 1})
        return [(restricted, FLIP_FULL_SPEED),
                (FLIP_FULL_SPEED, (U * V - 1) * COUNT_DISCRIMINANT)]
    if name == "modulus-full-speed-restriction":
        return [(MODULUS_CHAIN.evaluate({"a": 1, "b": 1}), MODULUS_FULL_SPEED)]
    if name == "modulus-homogeneous-restriction":
        # the restriction keeps a positive cubic factor in the speed, so the
        # two sides agree only after that factor is made explicit
        return [(MODULUS_CHAIN.substitute("b", A), A**3 * MODULUS_HOMOGENEOUS)]
    if name == "triangular-substitution":
        fixed_x = X - U * Y * (1 - Y)
        return [(fixed_x.substitute("y", V * X - V * X**2), X * cubic)]
    raise ValueError(f"unknown identity name: {name}")


IDENTITY_NAMES = (
    "cubic-at-origin",
    "cubic-at-one",
    "cubic-discriminant",
    "cubic-inflection",
    "fold-chain-resultant",
    "flip-chain-resultant",
    "modulus-chain-resultant",
    "flip-full-speed-factorization",
    "modulus-full-speed-restriction",
    "modulus-homogeneous-restriction",
    "triangular-substitution",
)


def verify_identity(name: str) -> IdentityResult:
    pairs = tuple(_identity_pairs(name))
    return IdentityResult(name, all(l == r for l, r in pairs), pairs)


def verify_all() -> list:
    return [verify_identity(name) for name in IDENTITY_NAMES]


def all_identities_hold() -> bool:
    return all(r.passed for r in verify_all())


# -- classification --------------------------------------------------------
#
# The evaluators below are hand-expanded for speed on dense scans; tests pin
# them against the frozen polynomial forms on random rational inputs.

def _count_discriminant_value(u: Fraction, v: Fraction) -> Fraction:
    uv = u * v
    return uv * uv - 4 * u * uv - 4 * v * uv + 18 * uv - 27


def _modulus_full_speed_value(u: Fraction, v: Fraction) -> Fraction:
    uv = u * v
    uv2 = uv * uv
    return (uv2 * uv - 4 * u * uv2 - 4 * v * uv2 + 15 * uv2
            + 12 * u * uv + 12 * v * uv - 85 * uv + 125)


def _stable_cut_quadratic_value(u: Fraction, v: Fraction) -> Fraction:
    uv = u * v
    return uv * uv - 4 * u * uv - 5 * v * uv + 21 * uv + 11 * v - 60


def _modulus_homogeneous_value(u: Fraction, v: Fraction, a: Fraction) -> Fraction:
    uv = u * v
    uv2 = uv * uv
    c3 = uv2 * uv - 4 * u * uv2 - 4 * v * uv2 + 17 * uv2 + 4 * u * uv + 4 * v * uv - 45 * uv + 27
    c2 = -2 * uv2 + 8 * u * uv + 8 * v * uv - 36 * uv + 54
    c1 = -4 * uv + 36
    return ((c3 * a + c2) * a + c1) * a + 8


def _check_uv(u, v):
    u = coerce_rational(u)
    v = coerce_rational(v)
    if u <= 0 or v <= 0:
        raise ValueError("reaction intensities must satisfy u > 0 and v > 0")
    return u, v


def classify_equilibrium_count(u, v) -> EquilibriumCountClass:
    """Number of positive fixed points from parameter signs alone."""
    u, v = _check_uv(u, v)
    if u == 3 and v == 3:
        return EquilibriumCountClass.ONE_POSITIVE_TRIPLE
    disc = _count_discriminant_value(u, v)
    if disc == 0:
        return EquilibriumCountClass.TWO_POSITIVE_BOUNDARY
    if disc > 0:
        return EquilibriumCountClass.THREE_POSITIVE
    if u * v > 1:
        return EquilibriumCountClass.ONE_POSITIVE
    return EquilibriumCountClass.NONE_OR_DEGENERATE


def classify_stable_best_response(u, v) -> StableCountClass:
    """Stable positive fixed point count at full adjustment speed.

    The sufficient sign patterns do not cover the whole parameter set; the
    silent value means no conclusion, not a count of zero.
    """
    u, v = _check_uv(u, v)
    disc = _count_discriminant_value(u, v)
    mod = _modulus_full_speed_value(u, v)
    if (disc > 0 and mod > 0 and u * v - 15 < 0
            and _stable_cut_quadratic_value(u, v) > 0):
        return StableCountClass.TWO_STABLE
    if u * v > 1 and ((disc < 0 and mod > 0) or (disc > 0 and mod < 0)):
        return StableCountClass.ONE_STABLE
    return StableCountClass.THEOREM_SILENT


def classify_stable_homogeneous(u, v, a) -> StableCountClass:
    """Stable count when both players share the adjustment speed a."""
    u, v = _check_uv(u, v)
    a = coerce_rational(a)
    if not (0 < a <= 1):
        raise ValueError("adjustment speeds must satisfy 0 < a <= 1 and 0 < b <= 1")
    disc = _count_discriminant_value(u, v)
    mod = _modulus_homogeneous_value(u, v, a)
    if u * v > 1 and ((disc < 0 and mod > 0) or (disc > 0 and mod < 0)):
        return StableCountClass.ONE_STABLE
    return StableCountClass.THEOREM_SILENT
