"""Overlattices via isotropic glue subgroups, and reduced binary forms.

An even overlattice of L sits between L and its dual and corresponds to
a subgroup of the discriminant group on which the quadratic form
vanishes.  Enumeration here is exhaustive at desk scale; results are
ordered lexicographically on their element sets so output is
deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameter, NotIsotropic, TooLarge
from .lattice import (
    BRUTE_FORCE_CAP,
    DiscriminantForm,
    Lattice,
    discriminant_form,
    make_lattice,
)
from .linalg import RatMatrix, hermite_normal_form

#: Default ceiling on |det| for the binary-form enumeration.
BINARY_DET_CAP = 10_000


@dataclass(frozen=True)
class GlueSubgroup:
    """Isotropic subgroup of a discriminant group, given by generator lifts.

    Rows of ``generators`` are dual vectors in base-lattice coordinates;
    each must pair integrally with the base lattice.
    """

    base: Lattice
    generators: RatMatrix

    def __post_init__(self):
        gens = self.generators
        if not isinstance(gens, RatMatrix):
            object.__setattr__(self, "generators", RatMatrix(gens, ncols=self.base.rank))
            gens = self.generators
        if gens.ncols != self.base.rank:
            raise BadParameter("generator width does not match base rank")
        for i in range(gens.nrows):
            moved = (RatMatrix([gens[i]]) @ self.base.gram)[0]
            if any(x.denominator != 1 for x in moved):
                raise BadParameter("generator does not lie in the dual lattice")


def _zero(factors) -> tuple[int, ...]:
    return (0,) * len(factors)


def _add(x, y, factors):
    return tuple((a + b) % d for a, b, d in zip(x, y, factors))


def _span(gens, factors) -> frozenset:
    elems = {_zero(factors)}
    frontier = [_zero(factors)]
    while frontier:
        e = frontier.pop()
        for g in gens:
            s = _add(e, g, factors)
            if s not in elems:
                elems.add(s)
                frontier.append(s)
    return frozenset(elems)


def _greedy_generators(elements: frozenset, factors) -> list[tuple[int, ...]]:
    gens: list[tuple[int, ...]] = []
    span = frozenset([_zero(factors)])
    for e in sorted(elements):
        if e not in span:
            gens.append(e)
            span = _span(gens, factors)
            if span == elements:
                break
    return gens


def isotropic_subgroups(F: DiscriminantForm, cap: int = BRUTE_FORCE_CAP) -> list[GlueSubgroup]:
    """Every subgroup of the discriminant group on which q vanishes mod 2ℤ.

    (The bilinear form then vanishes mod ℤ automatically, since
    2·b(x, y) = q(x+y) - q(x) - q(y).)  Includes the trivial subgroup;
    ordered by size then lexicographically on sorted element tuples.
    """
    factors = F.group.invariant_factors
    if F.order > cap:
        raise TooLarge(f"|A| = {F.order} exceeds the brute-force cap {cap}")
    iso_elems = [
        e
        for e in itertools.product(*(range(d) for d in factors))
        if F.q_of(e) == 0
    ]
    trivial = frozenset([_zero(factors)])
    found = {trivial}
    worklist = [trivial]
    while worklist:
        H = worklist.pop()
        for e in iso_elems:
            if e in H:
                continue
            K = _span(list(H) + [e], factors)
            if K in found:
                continue
            if all(F.q_of(x) == 0 for x in K):
                found.add(K)
                worklist.append(K)
    ordered = sorted(found, key=lambda s: (len(s), sorted(s)))
    lifts_of = F.group.generator_lifts
    n = F.lattice.rank
    result = []
    for elements in ordered:
        gens = _greedy_generators(elements, factors)
        rows = []
        for g in gens:
            row = [Fraction(0)] * n
            for i, c in enumerate(g):
                if c:
                    for j in range(n):
                        row[j] += c * lifts_of[i][j]
            rows.append(row)
        result.append(GlueSubgroup(F.lattice, RatMatrix(rows, ncols=n)))
    return result


def subgroup_elements(G: GlueSubgroup) -> frozenset[tuple[Fraction, ...]]:
    """Elements of the glue subgroup as dual vectors reduced mod the base lattice."""
    n = G.base.rank
    zero = tuple(Fraction(0) for _ in range(n))
    elems = {zero}
    frontier = [zero]
    gens = [tuple(G.generators[i]) for i in range(G.generators.nrows)]
    while frontier:
        e = frontier.pop()
        for g in gens:
            s = tuple((a + b) % 1 for a, b in zip(e, g))
            if s not in elems:
                elems.add(s)
                frontier.append(s)
    return frozenset(elems)


def glue_order(G: GlueSubgroup) -> int:
    return len(subgroup_elements(G))


def overlattice_from_glue(G: GlueSubgroup) -> Lattice:
    """Lattice generated by the base and the glue lifts, with induced Gram.

    Raises NotIsotropic when the result fails to be an even integral
    lattice (which happens exactly when the glue subgroup is not
    isotropic).
    """
    base = G.base
    n = base.rank
    stacked = RatMatrix.identity(n).stack(G.generators)
    den = stacked.common_denominator()
    scaled = stacked.scale(den).to_int()
    H, _ = hermite_normal_form(scaled)
    rows = [H[i] for i in range(n)]  # full rank: contains den·identity
    basis = RatMatrix(rows, ncols=n).scale(Fraction(1, den))
    gram = basis @ base.gram @ basis.transpose()
    if not gram.is_integral():
        raise NotIsotropic("glue subgroup is not isotropic: non-integral pairing")
    gram_int = gram.to_int()
    if any(gram_int[i][i] % 2 for i in range(n)):
        raise NotIsotropic("glue subgroup is not isotropic: odd vector norm")
    return make_lattice(gram_int)


def even_overlattices(L: Lattice, cap: int = BRUTE_FORCE_CAP) -> list[Lattice]:
    """One even overlattice per isotropic glue subgroup of L.

    Index i of the result corresponds to index i of
    ``isotropic_subgroups(discriminant_form(L))``.  Overlattices are not
    deduplicated up to isometry.
    """
    return [overlattice_from_glue(G) for G in isotropic_subgroups(discriminant_form(L), cap)]


def enumerate_even_binary(det: int, definite_sign: int, cap: int = BINARY_DET_CAP) -> list[Lattice]:
    """All even definite rank-2 lattices with the given Gram determinant,
    one per isometry class.

    Gram [[2a, b], [b, 2c]] is reduced to 0 ≤ b ≤ a ≤ c, the unique
    representative of its GL2(ℤ)-class; then det = 4ac - b² ≥ 3a².
    Definite rank-2 Gram determinants are positive, so a non-positive
    ``det`` yields the empty list.
    """
    if definite_sign not in (1, -1):
        raise BadParameter("definite_sign must be +1 or -1")
    if abs(det) > cap:
        raise BadParameter(f"|det| = {abs(det)} exceeds the enumeration cap {cap}")
    if det <= 0:
        return []
    out = []
    a = 1
    while 3 * a * a <= det:
        for b in range(0, a + 1):
            num = det + b * b
            if num % (4 * a) == 0:
                c = num // (4 * a)
                if c >= a:
                    gram = [[2 * a, b], [b, 2 * c]]
                    if definite_sign < 0:
                        gram = [[-x for x in row] for row in gram]
                    out.append(make_lattice(gram))
        a += 1
    return out
