"""Affine toric charts (N, sigma): boundary ideals, orbit bookkeeping,
face localization and torus-factor splitting.

A chart is a strongly convex rational cone sigma in a lattice N together
with the dual monoid sigma-dual cap M.  All computations are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cone import (
    ConeError,
    Face,
    RationalCone,
    _grlex_key,
    cone_from_generators,
    dual_cone,
    faces as cone_faces,
)
from .lattice import (
    Sublattice,
    Vec,
    complement,
    coordinates_in,
    dot,
    is_zero,
    saturate_sublattice,
    sublattice_from_vectors,
    vec_neg,
    vec_sub,
)
from .monoid import (
    AffineMonoid,
    MonoidError,
    NatTupleSet,
    _nat_decompositions,
    _positive_grading,
    _QuotientSplit,
    affine_monoid,
    hilbert_basis,
    minimal_elements,
    monoid_contains,
    monoid_from_cone,
    sharpen,
)


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class ToricChart:
    """The data (N, sigma) with the dual monoid sigma-dual cap M."""

    lattice_rank: int
    cone: RationalCone
    dual_monoid: AffineMonoid

    def __post_init__(self):
        if self.cone.ambient_rank != self.lattice_rank:
            raise ChartError("cone does not live in the chart lattice")
        if not self.cone.is_strongly_convex:
            raise ChartError("chart cone must be strongly convex")
        if not self.dual_monoid.saturated:
            raise ChartError("dual monoid must be saturated")


def toric_chart(lattice_rank: int, cone_generators) -> ToricChart:
    """Build the chart of the cone spanned by the given ray generators."""
    sigma = cone_from_generators(lattice_rank, cone_generators)
    dual = monoid_from_cone(dual_cone(sigma))
    return ToricChart(lattice_rank, sigma, dual)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal in a monoid algebra, given by exponent vectors."""

    monoid: AffineMonoid
    generator_exponents: tuple[Vec, ...]

    def __post_init__(self):
        for m in self.generator_exponents:
            if not monoid_contains(self.monoid, m):
                raise ChartError("ideal exponent outside the monoid")
        for a in self.generator_exponents:
            for b in self.generator_exponents:
                if a != b and monoid_contains(self.monoid, vec_sub(a, b)):
                    raise ChartError("ideal generators are not an antichain")


@dataclass(frozen=True)
class OrbitData:
    """Orbit dimension and closure monoid attached to a face of sigma."""

    face: Face
    orbit_dimension: int
    closure_monoid: AffineMonoid


@dataclass(frozen=True)
class SplitResult:
    """Decomposition N = N1 + N2 with the cone inside N1."""

    n1: Sublattice
    n2: Sublattice
    factor_monoid: AffineMonoid
    torus_rank: int


def chart_faces(c: ToricChart) -> list[Face]:
    """Faces of the chart cone, with defining normals taken from the dual
    Hilbert basis: the normal of a face is the sum of the dual-monoid
    generators vanishing on it."""
    out = []
    for f in cone_faces(c.cone):
        active = [m for m in c.dual_monoid.generators
                  if all(dot(m, g) == 0 for g in f.generators)]
        normal = tuple(sum(m[i] for m in active) for i in range(c.lattice_rank)) \
            if active else (0,) * c.lattice_rank
        out.append(Face(c.cone, normal, f.generators))
    return out


def _require_face(c: ToricChart, f: Face):
    if f.parent != c.cone:
        raise ChartError("not a face of this chart's cone")


def orbit_data(c: ToricChart, f: Face) -> OrbitData:
    """Dimension and closure monoid of the torus orbit of a face.

    The closure monoid is the face of the dual monoid perpendicular to f,
    generated by the dual generators vanishing on f.
    """
    _require_face(c, f)
    gens = [m for m in c.dual_monoid.generators
            if all(dot(m, g) == 0 for g in f.generators)]
    closure = affine_monoid(c.lattice_rank, gens)
    return OrbitData(
        face=f,
        orbit_dimension=c.lattice_rank - f.dim(),
        closure_monoid=closure,
    )


def face_localization(c: ToricChart, f: Face) -> ToricChart:
    """The chart (N, f): same lattice, the cone replaced by the face."""
    _require_face(c, f)
    return toric_chart(c.lattice_rank, f.generators)


def triviality_locus_group(c: ToricChart) -> Sublattice:
    """Group completion of the dual monoid (the character lattice of the
    open locus where the boundary is absent)."""
    return c.dual_monoid.group_completion_lattice()


def _ray_pairing_rows(c: ToricChart, split: _QuotientSplit | None):
    """Pairing of (sharp) dual-monoid vectors with the cone's ray
    generators, one row per ray."""
    rays = c.cone.generators
    if split is None:
        return [tuple(r) for r in rays]
    # pairing with a ray vanishes on the unit part, so it descends to the
    # sharp quotient: evaluate on the section of each quotient basis vector
    q_rank = c.lattice_rank - split.sub_rank
    rows = []
    for r in rays:
        rows.append(tuple(dot(r, split.section(
            tuple(1 if j == i else 0 for j in range(q_rank))))
            for i in range(q_rank)))
    return rows


def boundary_ideal_generators(c: ToricChart) -> MonomialIdeal:
    """Dickson-minimal generators of the ideal of monoid elements that
    pair >= 1 with every ray generator of the cone.

    Ideal members inside a degree bound are written as natural-number
    combinations of the dual Hilbert basis; the minimal coefficient
    tuples are converted back to exponents and re-minimalized under
    monoid divisibility (representations are not unique).  The bound is
    doubled until the generator set stabilizes twice.
    """
    dual = c.dual_monoid
    rays = list(c.cone.generators)
    if not rays:
        return MonomialIdeal(dual, ())
    units = dual.unit_sublattice
    if units.rank:
        split = _QuotientSplit(units)
        sharp, _ = sharpen(dual)
        lift = split.section
        proj = split.project
    else:
        split = None
        sharp = dual
        lift = lambda v: v
        proj = lambda v: v
    hb = list(sharp.generators)
    pair_rows = _ray_pairing_rows(c, split)
    pair = lambda v: [dot(row, v) for row in pair_rows]
    grading = tuple(sum(row[i] for row in pair_rows)
                    for i in range(sharp.ambient_rank))
    max_pair = max(max(pair(h)) for h in hb)
    bound = 2 * max(max_pair, 1)
    prev: tuple[Vec, ...] | None = None
    stable = 0
    while True:
        # breadth-first enumeration of sharp monoid elements by degree
        frontier = {(0,) * sharp.ambient_rank}
        elements = set(frontier)
        while frontier:
            new = set()
            for v in frontier:
                for h in hb:
                    w = tuple(a + b for a, b in zip(v, h))
                    if dot(grading, w) <= bound and w not in elements:
                        new.add(w)
            elements |= new
            frontier = new
        members = [v for v in elements if all(p >= 1 for p in pair(v))]
        tuples = set()
        for v in members:
            reps = _nat_decompositions(hb, v, sharp.cone, first_only=True)
            if not reps:
                raise ChartError("enumerated element failed to decompose")
            tuples.add(reps[0])
        minima = minimal_elements(NatTupleSet(len(hb), frozenset(tuples)))
        exps = sorted({tuple(sum(t[j] * hb[j][i] for j in range(len(hb)))
                             for i in range(sharp.ambient_rank))
                       for t in minima.tuples}, key=_grlex_key)
        # representation choice is not canonical: re-minimalize in
        # exponent space under monoid divisibility
        kept = []
        for e in exps:
            if not any(monoid_contains(sharp, vec_sub(e, o))
                       for o in exps if o != e):
                kept.append(e)
        gens = tuple(kept)
        if gens == prev:
            stable += 1
            if stable >= 2:
                break
        else:
            stable = 0
            prev = gens
        bound *= 2
    return MonomialIdeal(dual, tuple(lift(g) for g in gens))


def split_torus_factor(c: ToricChart) -> SplitResult:
    """Split off the torus factor of a non-full-dimensional cone.

    n1 is the saturation of the span of the cone generators, n2 the
    canonical complement; the factor monoid is the dual monoid of the
    cone rewritten inside n1.
    """
    n = c.lattice_rank
    span = sublattice_from_vectors(n, c.cone.generators)
    n1, _ = saturate_sublattice(span)
    if n1.rank == n:
        n2 = sublattice_from_vectors(n, [])
        return SplitResult(n1, n2, c.dual_monoid, 0)
    n2 = complement(n1)
    coords = [coordinates_in(n1, g) for g in c.cone.generators]
    if any(q is None for q in coords):
        raise ChartError("cone generator outside the saturated span")
    tau1 = cone_from_generators(n1.rank, coords)
    factor = monoid_from_cone(dual_cone(tau1))
    return SplitResult(n1, n2, factor, n - n1.rank)


def reassembled_generators(c: ToricChart, s: SplitResult) -> list[Vec]:
    """Generators of (factor monoid + Z^torus_rank) carried into M by the
    dual of the basis change [n1 | n2]."""
    from .monoid import _unimodular_inverse

    n = c.lattice_rank
    cols = s.n1.basis_vectors() + s.n2.basis_vectors()
    dual_rows = _unimodular_inverse(cols, n)
    k = s.n1.rank
    out = []
    for q in s.factor_monoid.generators:
        out.append(tuple(sum(q[j] * dual_rows[j][i] for j in range(k))
                         for i in range(n)))
    for j in range(k, n):
        out.append(tuple(dual_rows[j]))
        out.append(vec_neg(dual_rows[j]))
    return sorted(set(out), key=_grlex_key)


def verify_split_reassembly(c: ToricChart, s: SplitResult) -> bool:
    """Check that the reassembled generators and the dual-monoid
    generators present the same monoid, matching bijectively modulo the
    torus-character units."""
    from .lattice import lattices_equal

    reassembled = reassembled_generators(c, s)
    if len(reassembled) != len(c.dual_monoid.generators):
        return False
    for g in reassembled:
        if not monoid_contains(c.dual_monoid, g):
            return False
    units = c.dual_monoid.unit_sublattice
    # units among the reassembled generators: those whose negative is
    # also a generator
    gen_set = set(reassembled)
    unit_vecs = [g for g in gen_set if vec_neg(g) in gen_set]
    reass_units = sublattice_from_vectors(c.lattice_rank, unit_vecs) \
        if unit_vecs else sublattice_from_vectors(c.lattice_rank, [])
    if not lattices_equal(units, reass_units):
        return False
    if units.rank == 0:
        return gen_set == set(c.dual_monoid.generators)
    split = _QuotientSplit(saturate_sublattice(units)[0])
    zero = (0,) * (c.lattice_rank - split.sub_rank)
    sharp_reass = {split.project(g) for g in gen_set} - {zero}
    sharp_orig = {split.project(g)
                  for g in c.dual_monoid.generators} - {zero}
    return sharp_reass == sharp_orig
