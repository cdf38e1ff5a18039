"""Exact period vectors over imaginary quadratic fields.

A period ω = re + √D·im (D squarefree, negative) spans the line that a
weight-zero K3-type Hodge structure puts in bidegree (-1, 1).  Membership
in the period domain means ψ(ω, ω) = 0 and ψ(ω, ω̄) > 0; the algebraic
part of the lattice is everything orthogonal to ω and the transcendental
part is its complement.  Restricting coefficients to a quadratic field
keeps the whole computation in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import (
    BadParameter,
    DegenerateRestriction,
    HodgeClosureMismatch,
    NotIsotropic,
    NotPositive,
    WrongSignature,
)
from .lattice import Lattice, lattice_from_json, lattice_to_json, pair, signature
from .linalg import IntMatrix, det_exact, kernel_basis
from .embeddings import SublatticeEmbedding, induced_gram, orthogonal_complement, saturate


def _check_field_discriminant(d: int) -> None:
    if d >= 0:
        raise BadParameter("field discriminant must be negative")
    m = -d
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            raise BadParameter(f"{d} is not squarefree")
        k += 1


@dataclass(frozen=True)
class QuadScalar:
    """Element a + b·√d of an imaginary quadratic field (d squarefree, < 0)."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        _check_field_discriminant(self.d)
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, other: "QuadScalar") -> "QuadScalar":
        self._same_field(other)
        return QuadScalar(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other: "QuadScalar") -> "QuadScalar":
        self._same_field(other)
        return QuadScalar(self.a - other.a, self.b - other.b, self.d)

    def __mul__(self, other: "QuadScalar") -> "QuadScalar":
        self._same_field(other)
        return QuadScalar(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def __neg__(self) -> "QuadScalar":
        return QuadScalar(-self.a, -self.b, self.d)

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.d)

    def is_rational(self) -> bool:
        return self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def _same_field(self, other: "QuadScalar") -> None:
        if self.d != other.d:
            raise BadParameter("mixed quadratic fields")


@dataclass(frozen=True)
class PeriodVector:
    """ω = re + √d·im with rational coordinate rows over a fixed lattice."""

    lattice: Lattice
    d: int
    re: tuple[Fraction, ...]
    im: tuple[Fraction, ...]

    def __post_init__(self):
        _check_field_discriminant(self.d)
        object.__setattr__(self, "re", tuple(Fraction(x) for x in self.re))
        object.__setattr__(self, "im", tuple(Fraction(x) for x in self.im))
        n = self.lattice.rank
        if len(self.re) != n or len(self.im) != n:
            raise BadParameter("coordinate length does not match lattice rank")
        if all(x == 0 for x in self.im):
            raise BadParameter("period must be genuinely non-real (im != 0)")


@dataclass(frozen=True)
class HodgeSplit:
    """Orthogonal pair: algebraic (ns) and transcendental (trans) sublattices."""

    ns: SublatticeEmbedding
    trans: SublatticeEmbedding


def period_pairing(omega: PeriodVector, re2, im2) -> QuadScalar:
    """ψ(ω, v) for v = re2 + √d·im2, as an exact quadratic scalar."""
    g = omega.lattice.gram
    rational = pair(g, omega.re, re2) + omega.d * pair(g, omega.im, im2)
    irrational = pair(g, omega.re, im2) + pair(g, omega.im, re2)
    return QuadScalar(Fraction(rational), Fraction(irrational), omega.d)


def validate_period(omega: PeriodVector) -> PeriodVector:
    """Check period-domain membership: plus-part 2, ψ(ω,ω) = 0, ψ(ω,ω̄) > 0."""
    if signature(omega.lattice).plus != 2:
        raise WrongSignature("period domain needs a lattice with exactly two positive squares")
    self_pairing = period_pairing(omega, omega.re, omega.im)
    if not self_pairing.is_zero():
        raise NotIsotropic("period is not isotropic: ψ(ω, ω) != 0")
    conj = period_pairing(omega, omega.re, tuple(-x for x in omega.im))
    # conjugation-symmetry forces ψ(ω, ω̄) into ℚ; assert exactly
    assert conj.is_rational()
    if conj.a <= 0:
        raise NotPositive("ψ(ω, ω̄) must be positive")
    return omega


def pairing_with_conjugate(omega: PeriodVector) -> Fraction:
    """ψ(ω, ω̄), an exact positive rational for valid periods."""
    validate_period(omega)
    conj = period_pairing(omega, omega.re, tuple(-x for x in omega.im))
    return conj.a


def _scaled_int_rows(rows: list[tuple[Fraction, ...]], n: int) -> IntMatrix:
    # per-row scaling preserves the span, which is all that matters here
    out = []
    for row in rows:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return IntMatrix(out, ncols=n)


def neron_severi(omega: PeriodVector) -> SublatticeEmbedding:
    """Sublattice of classes orthogonal to ω (both field components).

    Saturated by construction, hence primitive.
    """
    validate_period(omega)
    n = omega.lattice.rank
    cols = _scaled_int_rows([omega.re, omega.im], n)
    m = omega.lattice.gram @ cols.transpose()  # x is algebraic iff x·m = 0
    return SublatticeEmbedding(omega.lattice, kernel_basis(m))


def transcendental(omega: PeriodVector) -> HodgeSplit:
    """Split the lattice into its algebraic part and the orthogonal complement.

    Requires the restriction of the form to the algebraic part to be
    non-degenerate (always true for validated periods).
    """
    ns = neron_severi(omega)
    if det_exact(induced_gram(ns)) == 0:
        raise DegenerateRestriction("form restricted to the algebraic part is degenerate")
    trans = orthogonal_complement(ns)
    # ω must have coordinates inside the rational span of the complement
    assert _in_row_span(trans.basis, omega.re) and _in_row_span(trans.basis, omega.im)
    return HodgeSplit(ns, trans)


def _in_row_span(basis: IntMatrix, vec: tuple[Fraction, ...]) -> bool:
    if all(x == 0 for x in vec):
        return True
    if basis.nrows == 0:
        return False
    n = basis.ncols
    ker = kernel_basis(basis.transpose())  # rows span the plain-dot complement
    return all(
        sum(ker[i][j] * vec[j] for j in range(n)) == 0 for i in range(ker.nrows)
    )


def minimal_hodge_sublattice(omega: PeriodVector) -> SublatticeEmbedding:
    """Smallest primitive sublattice whose rational span contains ω.

    Computed as the saturation of the span of re and im (rank 2 for
    quadratic periods).  When the algebraic restriction is
    non-degenerate this must coincide with the transcendental part; a
    disagreement raises a structured report rather than being silently
    accepted.
    """
    validate_period(omega)
    n = omega.lattice.rank
    plane = _scaled_int_rows([omega.re, omega.im], n)
    span_closure = saturate(SublatticeEmbedding(omega.lattice, plane))
    assert span_closure.rank == 2
    ns = neron_severi(omega)
    if det_exact(induced_gram(ns)) != 0:
        complement_closure = transcendental(omega).trans
        if span_closure.basis != complement_closure.basis:
            raise HodgeClosureMismatch(
                "span-closure and complement-closure disagree",
                span_closure,
                complement_closure,
            )
    return span_closure


def period_to_json(omega: PeriodVector) -> dict:
    """JSON payload with rationals as exact "p/q" strings."""
    return {
        "lattice": lattice_to_json(omega.lattice),
        "D": omega.d,
        "re": [str(x) for x in omega.re],
        "im": [str(x) for x in omega.im],
    }


def period_from_json(data: dict) -> PeriodVector:
    if not isinstance(data, dict):
        raise BadParameter("period JSON must be an object")
    try:
        lattice = lattice_from_json(data["lattice"])
        d = int(data["D"])
        re = tuple(Fraction(x) for x in data["re"])
        im = tuple(Fraction(x) for x in data["im"])
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise BadParameter(f"malformed period JSON: {exc}") from exc
    return PeriodVector(lattice, d, re, im)
