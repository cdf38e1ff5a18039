"""Sublattices, orthogonal complements, and primitive embeddings.

Contains the sufficient-condition check for embedding an even lattice
primitively into an even unimodular one, the canonical embedding of the
rank-21 polarized-K3 lattice into the rank-28 even unimodular lattice of
signature (2, 26), and the isometry extension that acts trivially on the
orthogonal complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod

from .errors import (
    BadParameter,
    DimensionMismatch,
    NotAnIsometry,
    NotDefinite,
    NotInTildeO,
    NotRepresented,
    NotSpecialOrthogonal,
    OddLattice,
    ParityViolation,
)
from .lattice import (
    Lattice,
    Signature,
    discriminant_group,
    is_even,
    make_lattice,
    min_generators,
    signature,
    standard,
)
from .linalg import (
    IntMatrix,
    RatMatrix,
    block_diag,
    det_exact,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
    solve_rational,
)


@dataclass(frozen=True)
class SublatticeEmbedding:
    """Sublattice of an ambient lattice, given by basis rows in ambient coordinates.

    Rows must be linearly independent.  The induced form may be
    degenerate (quotient computations need that); operations requiring a
    non-degenerate restriction check it themselves.
    """

    ambient: Lattice
    basis: IntMatrix

    def __post_init__(self):
        b = self.basis
        if not isinstance(b, IntMatrix):
            object.__setattr__(self, "basis", IntMatrix(b, ncols=self.ambient.rank))
            b = self.basis
        if b.ncols != self.ambient.rank:
            raise DimensionMismatch("basis width does not match ambient rank")
        if b.nrows:
            _, S, _ = smith_normal_form(b)
            if any(S[i][i] == 0 for i in range(b.nrows)):
                raise BadParameter("basis rows are linearly dependent")

    @property
    def rank(self) -> int:
        return self.basis.nrows


def induced_gram(E: SublatticeEmbedding) -> IntMatrix:
    """Gram matrix of the sublattice in its own basis."""
    return E.basis @ E.ambient.gram @ E.basis.transpose()


def as_lattice(E: SublatticeEmbedding, label: str | None = None) -> Lattice:
    """The sublattice as an abstract lattice (requires non-degenerate restriction)."""
    return make_lattice(induced_gram(E), label)


@dataclass(frozen=True)
class NikulinVerdict:
    """Outcome of the primitive-embedding criterion.

    The criterion is sufficient only, so the negative answer is
    "Unknown", never "impossible".
    """

    failed_conditions: tuple[str, ...]

    @property
    def guaranteed(self) -> bool:
        return not self.failed_conditions

    @property
    def outcome(self) -> str:
        return "Guaranteed" if self.guaranteed else "Unknown"


def nikulin_check(L: Lattice, target: Signature) -> NikulinVerdict:
    """Test the three conditions guaranteeing a primitive embedding of the
    even lattice L into an even unimodular lattice of the target signature:

      (i)   target.plus - target.minus ≡ 0 (mod 8)
      (ii)  target.plus ≥ plus(L) and target.minus ≥ minus(L)
      (iii) corank ≥ minimal number of generators of the discriminant group
    """
    if not is_even(L):
        raise OddLattice("the embedding criterion applies to even lattices")
    sig = signature(L)
    failed = []
    if (target.plus - target.minus) % 8 != 0:
        failed.append("i")
    if target.plus < sig.plus or target.minus < sig.minus:
        failed.append("ii")
    corank = (target.plus + target.minus) - (sig.plus + sig.minus)
    if corank < min_generators(discriminant_group(L)):
        failed.append("iii")
    return NikulinVerdict(tuple(failed))


def saturate(E: SublatticeEmbedding) -> SublatticeEmbedding:
    """Saturation: the intersection of the rational span with the ambient lattice.

    From U·B·V = S in Smith form, the first rank(B) rows of V^{-1} are a
    ℤ-basis of the saturation; they are HNF-normalized for determinism.
    """
    k = E.basis.nrows
    n = E.ambient.rank
    if k == 0:
        return E
    _, _, V = smith_normal_form(E.basis)
    vinv = solve_rational(V, IntMatrix.identity(n)).to_int()
    rows = [vinv[i] for i in range(k)]
    H, _ = hermite_normal_form(IntMatrix(rows, ncols=n))
    return SublatticeEmbedding(E.ambient, H)


def saturation_index(E: SublatticeEmbedding) -> int:
    """Index of the sublattice inside its saturation (product of invariant factors)."""
    if E.basis.nrows == 0:
        return 1
    _, S, _ = smith_normal_form(E.basis)
    return prod(S[i][i] for i in range(E.basis.nrows))


def is_primitive(E: SublatticeEmbedding) -> bool:
    return saturation_index(E) == 1


def orthogonal_complement(E: SublatticeEmbedding) -> SublatticeEmbedding:
    """Vectors of the ambient lattice pairing to zero with the sublattice.

    Primitive by construction (it is a kernel sublattice).
    """
    n = E.ambient.rank
    if E.basis.nrows == 0:
        return SublatticeEmbedding(E.ambient, IntMatrix.identity(n))
    m = E.ambient.gram @ E.basis.transpose()  # n x k; complement = left kernel
    return SublatticeEmbedding(E.ambient, kernel_basis(m))


# ---------------------------------------------------------------------------
# Short-vector enumeration in definite lattices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _udu(gram: IntMatrix) -> tuple[tuple[Fraction, ...], tuple[tuple[Fraction, ...], ...]]:
    # G = U·D·Uᵀ with U unit upper-triangular, computed by completing the
    # square from the last coordinate.  For positive-definite G every
    # pivot is positive, giving Q(x) = Σ_k d_k (x_k + Σ_{i<k} u_ik x_i)².
    n = gram.nrows
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    diag = [Fraction(0)] * n
    coef = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n - 1, -1, -1):
        d = a[k][k]
        diag[k] = d
        for i in range(k):
            coef[i][k] = a[i][k] / d
        for i in range(k):
            ci = coef[i][k]
            if ci:
                for j in range(k):
                    a[i][j] -= ci * coef[j][k] * d
    return tuple(diag), tuple(tuple(row) for row in coef)


def _coord_range(d: Fraction, mu: Fraction, budget: Fraction) -> tuple[int, int]:
    # Integer solutions of d·(x + mu)² ≤ budget.  With mu = s/t the
    # substitution y = t·x + s turns this into y² ≤ floor(budget·t²/d),
    # solved exactly with isqrt.
    if budget < 0:
        return 1, 0
    bound = budget / d
    s, t = mu.numerator, mu.denominator
    m = bound.numerator * t * t // bound.denominator
    r = isqrt(m)
    lo = -((r + s) // t)
    hi = (r - s) // t
    return lo, hi


def _norm_vectors(gram_pos: IntMatrix, target: int):
    """Yield every x ∈ ℤⁿ with x·G·xᵀ = target, G positive definite, in
    lexicographic order."""
    n = gram_pos.nrows
    if n == 0:
        if target == 0:
            yield ()
        return
    diag, coef = _udu(gram_pos)
    x = [0] * n
    goal = Fraction(target)

    def descend(level: int, budget: Fraction):
        if level == n:
            if budget == 0:
                yield tuple(x)
            return
        d = diag[level]
        mu = Fraction(0)
        for k in range(level):
            if x[k]:
                mu += coef[k][level] * x[k]
        lo, hi = _coord_range(d, mu, budget)
        for v in range(lo, hi + 1):
            x[level] = v
            rem = budget - d * (v + mu) ** 2
            if rem >= 0:
                yield from descend(level + 1, rem)
        x[level] = 0

    yield from descend(0, goal)


def _definite_data(L: Lattice) -> tuple[IntMatrix, int]:
    sig = signature(L)
    if sig.minus == 0:
        return L.gram, 1
    if sig.plus == 0:
        return L.gram.scale(-1), -1
    raise NotDefinite(f"lattice has indefinite signature {(sig.plus, sig.minus)}")


def find_primitive_vector(L: Lattice, norm: int) -> tuple[int, ...]:
    """Lexicographically least primitive vector of the given self-pairing.

    Depth-first branch-and-bound over the exact square-completed form;
    deterministic because coordinates are scanned in increasing order.
    """
    g, sgn = _definite_data(L)
    if is_even(L) and norm % 2 != 0:
        raise ParityViolation(f"norm {norm} is odd but the lattice is even")
    target = norm * sgn
    if target <= 0:
        raise NotRepresented(f"definite lattice cannot represent {norm}")
    for vec in _norm_vectors(g, target):
        if gcd(*vec) == 1:
            return vec
    raise NotRepresented(f"no primitive vector of norm {norm}")


def count_norm_vectors(L: Lattice, norm: int) -> int:
    """Full count of lattice vectors with the given self-pairing."""
    g, sgn = _definite_data(L)
    if is_even(L) and norm % 2 != 0:
        raise ParityViolation(f"norm {norm} is odd but the lattice is even")
    target = norm * sgn
    if target < 0:
        return 0
    return sum(1 for _ in _norm_vectors(g, target))


# ---------------------------------------------------------------------------
# The canonical rank-21 -> rank-28 embedding and its isometry extension
# ---------------------------------------------------------------------------

def build_iota2d(d: int) -> SublatticeEmbedding:
    """Canonical primitive embedding Lambda2d(d) -> LambdaSharp.

    The two E8(-1) summands and the two hyperbolic planes map identically
    onto the matching summands of the ambient; the rank-one gen(-2d)
    summand maps onto the lexicographically least primitive vector of
    norm -2d inside the third E8(-1) summand.
    """
    if d < 1:
        raise BadParameter("d must be a positive integer")
    sharp = standard("LambdaSharp")
    v = find_primitive_vector(standard("E8", -1), -2 * d)
    rows = []
    for i in range(16):  # E8(-1)^2 occupies ambient coordinates 0..15
        rows.append([1 if j == i else 0 for j in range(28)])
    for i in range(4):  # the U^2 block sits at ambient coordinates 24..27
        rows.append([1 if j == 24 + i else 0 for j in range(28)])
    rows.append([0] * 16 + list(v) + [0] * 4)  # third E8(-1): coordinates 16..23
    emb = SublatticeEmbedding(sharp, IntMatrix(rows, ncols=28))
    # block bookkeeping makes this isometric onto Lambda2d(d); verify exactly
    assert induced_gram(emb) == standard("Lambda2d", d).gram
    return emb


def is_isometry(L: Lattice, g: IntMatrix) -> bool:
    """True when g preserves the form (and hence has determinant ±1)."""
    if g.nrows != g.ncols or g.nrows != L.rank:
        raise DimensionMismatch("matrix size does not match lattice rank")
    if g @ L.gram @ g.transpose() != L.gram:
        return False
    return det_exact(g) in (1, -1)  # implied by form preservation; checked anyway


def in_tilde_O(L: Lattice, g: IntMatrix) -> bool:
    """True when g is an isometry acting trivially on the discriminant group."""
    if not is_isometry(L, g):
        return False
    lifts = discriminant_group(L).generator_lifts
    for i in range(lifts.nrows):
        row = lifts[i]
        moved = (RatMatrix([row]) @ g)[0]
        if any((a - b).denominator != 1 for a, b in zip(moved, row)):
            return False
    return True


def extend_isometry(E: SublatticeEmbedding, g: IntMatrix) -> IntMatrix:
    """Extend an isometry of the embedded lattice to the ambient lattice,
    acting as the identity on the orthogonal complement.

    Requires det g = +1 and triviality on the discriminant group; the
    integrality of the candidate extension is verified directly rather
    than trusting the sufficient condition, and failure raises
    NotInTildeO.
    """
    sub = as_lattice(E)
    if g.nrows != g.ncols or g.nrows != sub.rank:
        raise DimensionMismatch("matrix size does not match sublattice rank")
    if not is_isometry(sub, g):
        raise NotAnIsometry("matrix does not preserve the sublattice form")
    if det_exact(g) != 1:
        raise NotSpecialOrthogonal("extension requires determinant +1")
    comp = orthogonal_complement(E)
    m = E.basis.stack(comp.basis)  # square: the restriction is non-degenerate
    block = block_diag(g, IntMatrix.identity(comp.rank))
    # rows of m are the sub/complement basis vectors: want m·R = block·m
    r = solve_rational(m, block @ m)
    if not r.is_integral():
        raise NotInTildeO("extension is not integral on the ambient lattice")
    result = r.to_int()
    assert result @ E.ambient.gram @ result.transpose() == E.ambient.gram
    return result
