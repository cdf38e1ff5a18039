"""Lattices with exact Gram data: signatures, duals, discriminant forms.

A lattice here is a free ℤ-module of finite rank together with a
non-degenerate symmetric integer Gram matrix.  Vectors are row vectors
in the basis implicit in the Gram matrix, and the pairing of x with y is
x·G·yᵀ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Iterator, Sequence

from .errors import (
    BadParameter,
    Degenerate,
    NotSymmetric,
    OddLattice,
    TooLarge,
    UnknownAtom,
)
from .linalg import (
    IntMatrix,
    RatMatrix,
    block_diag,
    det_exact,
    invert_rational,
    smith_normal_form,
    solve_rational,
)

#: Default ceiling on |A| for the exhaustive finite-group searches
#: (discriminant-form isomorphism, glue enumeration).
BRUTE_FORCE_CAP = 10_000

# Gram matrix of the rank-8 even unimodular positive-definite lattice in
# its simple-root basis, Bourbaki numbering.  This basis choice is part
# of the package contract: vector coordinates, canonical embeddings and
# the expression atom "E8" all refer to it.  Diagram (node 2 hangs off
# node 4):
#
#   1 - 3 - 4 - 5 - 6 - 7 - 8
#           |
#           2
_E8_GRAM = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)

_U_GRAM = ((0, 1), (1, 0))


@dataclass(frozen=True)
class Signature:
    """Inertia of a non-degenerate symmetric form: (positive, negative) counts."""

    plus: int
    minus: int

    @property
    def rank(self) -> int:
        return self.plus + self.minus

    def __iter__(self):
        yield self.plus
        yield self.minus


@dataclass(frozen=True)
class Lattice:
    """Validated lattice: symmetric non-degenerate integer Gram matrix."""

    gram: IntMatrix
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        g = self.gram
        if not isinstance(g, IntMatrix):
            object.__setattr__(self, "gram", IntMatrix(g))
            g = self.gram
        if g.nrows != g.ncols or not g.is_symmetric():
            raise NotSymmetric("Gram matrix must be square and symmetric")
        d = det_exact(g)
        if d == 0:
            raise Degenerate("Gram matrix is singular")
        object.__setattr__(self, "det", d)

    @property
    def rank(self) -> int:
        return self.gram.nrows


def pair(gram: IntMatrix, x: Sequence, y: Sequence):
    """Evaluate the bilinear form x·gram·yᵀ on row vectors (int or Fraction)."""
    n = gram.nrows
    total = 0
    for i in range(n):
        xi = x[i]
        if xi:
            row = gram[i]
            total += xi * sum(row[j] * y[j] for j in range(n) if y[j])
    return total


def make_lattice(gram, label: str | None = None) -> Lattice:
    """Validate a Gram matrix and wrap it as a Lattice."""
    if not isinstance(gram, IntMatrix):
        gram = IntMatrix(gram)
    return Lattice(gram, label)


def rescale(L: Lattice, n: int) -> Lattice:
    """Multiply the form by a nonzero integer (the twist L(n))."""
    if n == 0:
        raise BadParameter("rescaling factor must be nonzero")
    return Lattice(L.gram.scale(n))


def direct_sum(*lattices: Lattice) -> Lattice:
    """Orthogonal direct sum (block-diagonal Gram)."""
    if not lattices:
        raise BadParameter("direct sum of nothing")
    return Lattice(block_diag(*(L.gram for L in lattices)))


def standard(name: str, *params: int) -> Lattice:
    """Construct one of the named lattices.

    U, E8 and An accept an optional trailing scale factor; gen(k) is the
    rank-one lattice ⟨k⟩; Lambda2d(d) = E8(-1)^2 + U^2 + gen(-2d);
    LambdaSharp = E8(-1)^3 + U^2; LambdaK3 = E8(-1)^2 + U^3.
    """
    def scaled(gram_rows, scale_params, base_label):
        if len(scale_params) > 1:
            raise BadParameter(f"too many parameters for {name}")
        s = scale_params[0] if scale_params else 1
        if s == 0:
            raise BadParameter("scale factor must be nonzero")
        g = IntMatrix(gram_rows)
        if s != 1:
            g = g.scale(s)
            base_label = f"{base_label}({s})"
        return Lattice(g, base_label)

    if name == "U":
        return scaled(_U_GRAM, params, "U")
    if name == "E8":
        return scaled(_E8_GRAM, params, "E8")
    if name == "An":
        if not params:
            raise BadParameter("An needs its rank")
        n = params[0]
        if n < 1:
            raise BadParameter("An needs rank >= 1")
        rows = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]
        return scaled(rows, params[1:], f"An({n})")
    if name == "gen":
        if len(params) != 1:
            raise BadParameter("gen takes exactly one parameter")
        k = params[0]
        if k == 0:
            raise BadParameter("gen(0) is degenerate")
        return Lattice(IntMatrix([[k]]), f"gen({k})")
    if name == "Lambda2d":
        if len(params) != 1:
            raise BadParameter("Lambda2d takes exactly one parameter")
        d = params[0]
        if d < 1:
            raise BadParameter("Lambda2d needs d >= 1")
        e8m = standard("E8", -1)
        u = standard("U")
        L = direct_sum(e8m, e8m, u, u, standard("gen", -2 * d))
        return Lattice(L.gram, f"Lambda2d({d})")
    if name == "LambdaSharp":
        if params:
            raise BadParameter("LambdaSharp takes no parameters")
        e8m = standard("E8", -1)
        u = standard("U")
        return Lattice(direct_sum(e8m, e8m, e8m, u, u).gram, "LambdaSharp")
    if name == "LambdaK3":
        if params:
            raise BadParameter("LambdaK3 takes no parameters")
        e8m = standard("E8", -1)
        u = standard("U")
        return Lattice(direct_sum(e8m, e8m, u, u, u).gram, "LambdaK3")
    raise UnknownAtom(f"unknown lattice name {name!r}")


def signature(L: Lattice) -> Signature:
    """Exact inertia by symmetric congruence reduction over ℚ.

    Diagonal pivots are used when available; when every remaining
    diagonal entry vanishes, a nonzero off-diagonal entry spans a
    hyperbolic 2x2 block contributing (1, 1).
    """
    n = L.rank
    a = [[Fraction(x) for x in row] for row in L.gram]
    active = list(range(n))
    plus = minus = 0
    while active:
        piv = next((i for i in active if a[i][i]), None)
        if piv is not None:
            d = a[piv][piv]
            if d > 0:
                plus += 1
            else:
                minus += 1
            rest = [j for j in active if j != piv]
            for s in rest:
                c = a[s][piv] / d
                if c:
                    row_p = a[piv]
                    row_s = a[s]
                    for t in rest:
                        if row_p[t]:
                            row_s[t] -= c * row_p[t]
            active = rest
            continue
        blk = next(
            ((i, j) for i in active for j in active if j > i and a[i][j]),
            None,
        )
        if blk is None:
            break  # remaining block is identically zero (degenerate input)
        i0, j0 = blk
        b = a[i0][j0]
        plus += 1
        minus += 1
        rest = [k for k in active if k not in (i0, j0)]
        for s in rest:
            alpha = a[s][j0] / b
            beta = a[s][i0] / b
            if alpha or beta:
                row_i, row_j, row_s = a[i0], a[j0], a[s]
                for t in rest:
                    row_s[t] -= alpha * row_i[t] + beta * row_j[t]
        active = rest
    return Signature(plus, minus)


def is_even(L: Lattice) -> bool:
    """True when every vector has even self-pairing (even diagonal suffices)."""
    return all(L.gram[i][i] % 2 == 0 for i in range(L.rank))


def dual_basis(L: Lattice) -> RatMatrix:
    """Rows spanning the dual lattice in L-coordinates: the Gram inverse."""
    return invert_rational(L.gram)


@dataclass(frozen=True)
class DiscriminantGroup:
    """Finite quotient (dual lattice)/(lattice).

    ``invariant_factors`` are the cyclic orders d1 | d2 | ... (each > 1);
    row i of ``generator_lifts`` is a dual vector generating the i-th
    cyclic summand.
    """

    invariant_factors: tuple[int, ...]
    generator_lifts: RatMatrix

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)


@dataclass(frozen=True)
class DiscriminantForm:
    """Discriminant group with its ℚ/2ℤ quadratic and ℚ/ℤ bilinear data.

    q values live in [0, 2), b values in [0, 1); both are exact
    rationals.  ``lattice`` records the source so glue constructions can
    refer back to its coordinates.
    """

    group: DiscriminantGroup
    q_values: tuple[Fraction, ...]
    b_values: RatMatrix
    lattice: Lattice = field(compare=False)

    @property
    def order(self) -> int:
        return self.group.order

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All group elements as coefficient tuples over the generators."""
        return itertools.product(*(range(d) for d in self.group.invariant_factors))

    def q_of(self, element: Sequence[int]) -> Fraction:
        """Quadratic value of a coefficient tuple, reduced into [0, 2)."""
        total = Fraction(0)
        qs = self.q_values
        bs = self.b_values
        for i, c in enumerate(element):
            if c:
                total += c * c * qs[i]
                for j in range(i + 1, len(element)):
                    if element[j]:
                        total += 2 * c * element[j] * bs[i][j]
        return total % 2

    def b_of(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        """Bilinear value of two coefficient tuples, reduced into [0, 1)."""
        total = Fraction(0)
        bs = self.b_values
        for i, c in enumerate(x):
            if c:
                total += c * sum(bs[i][j] * y[j] for j in range(len(y)) if y[j])
        return total % 1


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    """Invariant factors and generator lifts of (dual)/(lattice).

    Writing U·G·V = S in Smith form, the rows w_i of V^{-1} with
    invariant factor d_i > 1 generate ℤⁿ/ℤⁿG ≅ ⊕ ℤ/d_i; pulling back
    along x ↦ x·G turns w_i into the dual vector w_i·G^{-1} of order d_i.
    """
    g = L.gram
    n = L.rank
    _, S, V = smith_normal_form(g)
    vinv = solve_rational(V, IntMatrix.identity(n)).to_int()
    factors = []
    kept_rows = []
    for i in range(n):
        d = S[i][i]
        if d > 1:
            factors.append(d)
            kept_rows.append(vinv[i])
    if not kept_rows:
        return DiscriminantGroup((), RatMatrix([], ncols=n))
    w = IntMatrix(kept_rows, ncols=n)
    # lift_i = w_i · G^{-1}; G symmetric so solve G·xᵀ = w_iᵀ and transpose
    lifts = solve_rational(g, w.transpose()).transpose()
    return DiscriminantGroup(tuple(factors), lifts)


def discriminant_form(L: Lattice) -> DiscriminantForm:
    """Quadratic/bilinear discriminant data; defined for even lattices only."""
    if not is_even(L):
        raise OddLattice("discriminant form needs an even lattice")
    group = discriminant_group(L)
    lifts = group.generator_lifts
    s = lifts.nrows
    q = tuple(pair(L.gram, lifts[i], lifts[i]) % 2 for i in range(s))
    b = RatMatrix(
        [[pair(L.gram, lifts[i], lifts[j]) % 1 for j in range(s)] for i in range(s)],
        ncols=s,
    )
    return DiscriminantForm(group, q, b, L)


def min_generators(A: DiscriminantGroup) -> int:
    """Smallest size of a generating set (number of invariant factors)."""
    return len(A.invariant_factors)


def _element_order(element: Sequence[int], factors: Sequence[int]) -> int:
    o = 1
    for c, d in zip(element, factors):
        o = lcm(o, d // gcd(d, c))
    return o


def _add_elements(x, y, factors):
    return tuple((a + b) % d for a, b, d in zip(x, y, factors))


def disc_form_isomorphic(
    F1: DiscriminantForm,
    F2: DiscriminantForm,
    negate: bool = False,
    cap: int = BRUTE_FORCE_CAP,
) -> bool:
    """Decide whether F1 ≅ F2 (or F1 ≅ -F2 when ``negate``) as finite quadratic forms.

    Exhaustive search over generator images, pruned by element order and
    by the quadratic/bilinear compatibility conditions.  Groups larger
    than ``cap`` are rejected.
    """
    factors = F1.group.invariant_factors
    if factors != F2.group.invariant_factors:
        return False
    if F1.order > cap:
        raise TooLarge(f"|A| = {F1.order} exceeds the brute-force cap {cap}")
    sign = -1 if negate else 1
    s = len(factors)
    if s == 0:
        return True
    all_elements = list(itertools.product(*(range(d) for d in factors)))
    # per-generator candidate images: same order, matching quadratic value
    candidates = []
    for i in range(s):
        want_q = (sign * F1.q_values[i]) % 2
        cand = [
            y
            for y in all_elements
            if _element_order(y, factors) == factors[i] and F2.q_of(y) == want_q
        ]
        if not cand:
            return False
        candidates.append(cand)

    chosen: list[tuple[int, ...]] = []

    def _generates_all() -> bool:
        zero = (0,) * s
        seen = {zero}
        frontier = [zero]
        while frontier:
            e = frontier.pop()
            for g in chosen:
                nxt = _add_elements(e, g, factors)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return len(seen) == F1.order

    def search(i: int) -> bool:
        if i == s:
            return _generates_all()
        gi = tuple(1 if k == i else 0 for k in range(s))
        for y in candidates[i]:
            ok = True
            for j, yj in enumerate(chosen):
                gj = tuple(1 if k == j else 0 for k in range(s))
                if F2.b_of(y, yj) != (sign * F1.b_of(gi, gj)) % 1:
                    ok = False
                    break
            if ok:
                chosen.append(y)
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    return search(0)


def lattice_to_json(L: Lattice) -> dict:
    """Canonical JSON payload: {"label": string?, "gram": [[int]]}."""
    out: dict = {"gram": L.gram.tolist()}
    if L.label is not None:
        out["label"] = L.label
    return out


def lattice_from_json(data: dict) -> Lattice:
    if not isinstance(data, dict) or "gram" not in data:
        raise BadParameter("lattice JSON needs a 'gram' key")
    return make_lattice(data["gram"], data.get("label"))
