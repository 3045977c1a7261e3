"""Rational polyhedral cones with exact dualization and face enumeration.

Cones are stored in double description: extreme ray generators together
with the facet normals (and, for cones containing lines, an explicit
lineality basis plus span equations).  All vectors are primitive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .lattice import (
    LatticeMap,
    Sublattice,
    Vec,
    complement,
    dot,
    is_zero,
    kernel,
    primitive,
    sublattice_from_vectors,
    vec_neg,
)


class ConeError(ValueError):
    pass


def _grlex_key(v: Vec):
    return (sum(abs(a) for a in v), v)


def _sorted_vecs(vectors) -> tuple[Vec, ...]:
    return tuple(sorted({tuple(v) for v in vectors}, key=_grlex_key))


def _sign_normalized(v: Vec) -> Vec:
    for a in v:
        if a > 0:
            return tuple(v)
        if a < 0:
            return vec_neg(v)
    return tuple(v)


def extreme_rays_of_halfspaces(rows, ambient_rank: int):
    """Extreme rays and lineality of {x : <a, x> >= 0 for every row a}.

    Returns (rays, lineality_basis).  Rays are primitive and only defined
    modulo lineality; a deterministic complement of the lineality makes
    the choice reproducible.
    """
    rows = [tuple(r) for r in rows]
    for r in rows:
        if len(r) != ambient_rank:
            raise ConeError("halfspace normal has wrong dimension")
    rows = [r for r in rows if not is_zero(r)]
    n = ambient_rank
    if not rows:
        return [], sublattice_from_vectors(n, LatticeMap.identity(n).columns()).basis_vectors()
    lin = kernel(LatticeMap(n, len(rows), rows))
    lin_basis = lin.basis_vectors()
    d = n - lin.rank
    if d == 0:
        return [], lin_basis
    comp = complement(lin) if lin.rank else None
    wcols = comp.basis_vectors() if comp is not None else LatticeMap.identity(n).columns()
    # inequalities restricted to the complement coordinates
    arows = [tuple(dot(r, w) for w in wcols) for r in rows]
    cands = set()
    if d == 1:
        w = (1,)
        if all(a[0] >= 0 for a in arows):
            cands.add(w)
        if all(a[0] <= 0 for a in arows):
            cands.add((-1,))
    else:
        seen = set()
        for subset in combinations(range(len(arows)), d - 1):
            sub = [arows[i] for i in subset]
            ker = kernel(LatticeMap(d, d - 1, sub))
            if ker.rank != 1:
                continue
            w = primitive(ker.basis_vectors()[0])
            if w in seen or vec_neg(w) in seen:
                continue
            seen.add(w)
            vals = [dot(a, w) for a in arows]
            if all(v >= 0 for v in vals):
                cands.add(w)
            elif all(v <= 0 for v in vals):
                cands.add(vec_neg(w))
    rays = []
    for w in sorted(cands):
        x = tuple(sum(wcols[j][i] * w[j] for j in range(d)) for i in range(n))
        rays.append(primitive(x))
    return _sorted_vecs(rays), lin_basis


@dataclass(frozen=True)
class RationalCone:
    """A rational polyhedral cone in double description.

    generators: extreme rays (primitive, irredundant).
    facet_normals: supporting inequalities <a, x> >= 0.
    equations: normals vanishing identically on the cone (span cutout).
    lineality: basis of the largest linear subspace inside the cone;
               empty iff the cone is strongly convex.
    """

    ambient_rank: int
    generators: tuple[Vec, ...]
    facet_normals: tuple[Vec, ...]
    equations: tuple[Vec, ...] = ()
    lineality: tuple[Vec, ...] = ()

    def __post_init__(self):
        for v in self.generators + self.facet_normals + self.equations + self.lineality:
            if len(v) != self.ambient_rank:
                raise ConeError("vector dimension does not match ambient rank")
        for g in self.generators:
            for a in self.facet_normals:
                if dot(a, g) < 0:
                    raise ConeError("generator violates a facet inequality")
            for a in self.equations:
                if dot(a, g) != 0:
                    raise ConeError("generator violates a span equation")

    @property
    def is_strongly_convex(self) -> bool:
        return not self.lineality

    def dim(self) -> int:
        vecs = list(self.generators) + list(self.lineality)
        if not vecs:
            return 0
        return sublattice_from_vectors(self.ambient_rank, vecs).rank

    def contains(self, v: Vec) -> bool:
        if len(v) != self.ambient_rank:
            raise ConeError("vector dimension does not match ambient rank")
        return (all(dot(a, v) >= 0 for a in self.facet_normals)
                and all(dot(a, v) == 0 for a in self.equations))

    def generating_rays(self) -> list[Vec]:
        """Generators plus +-lineality basis: a full generating set."""
        out = list(self.generators)
        for l in self.lineality:
            out.append(l)
            out.append(vec_neg(l))
        return out


def cone_from_generators(ambient_rank: int, vectors,
                         strongly_convex: bool = True) -> RationalCone:
    """Cone generated by the vectors, reduced to primitive extreme rays.

    With strongly_convex=True (the default) a cone containing a line is
    rejected.
    """
    vecs = [tuple(int(x) for x in v) for v in vectors]
    for v in vecs:
        if len(v) != ambient_rank:
            raise ConeError("generator dimension does not match ambient rank")
    vecs = [v for v in vecs if not is_zero(v)]
    n = ambient_rank
    if not vecs:
        eqs = tuple(LatticeMap.identity(n).columns())
        return RationalCone(n, (), (), eqs, ())
    dual_rays, dual_lin = extreme_rays_of_halfspaces(vecs, n)
    # the dual cone's rays/lineality are the facets/equations of the primal
    facet_rows = list(dual_rays)
    eq_rows = [_sign_normalized(l) for l in dual_lin]
    hrows = facet_rows + eq_rows + [vec_neg(e) for e in eq_rows]
    rays, lin = extreme_rays_of_halfspaces(hrows, n) if hrows else ([], LatticeMap.identity(n).columns())
    if strongly_convex and lin:
        raise ConeError("cone contains a line (not strongly convex)")
    return RationalCone(
        ambient_rank=n,
        generators=_sorted_vecs(rays),
        facet_normals=_sorted_vecs(facet_rows),
        equations=tuple(sorted(eq_rows)),
        lineality=tuple(lin),
    )


def dual_cone(c: RationalCone) -> RationalCone:
    """Exact dual cone {m : <m, x> >= 0 on c}."""
    n = c.ambient_rank
    hrows = list(c.generators)
    for l in c.lineality:
        hrows.append(l)
        hrows.append(vec_neg(l))
    if not hrows:
        # dual of the zero cone is the whole space
        lin = LatticeMap.identity(n).columns()
        return RationalCone(n, (), (), (), tuple(lin))
    rays, lin = extreme_rays_of_halfspaces(hrows, n)
    eq_rows = [_sign_normalized(l) for l in c.lineality]
    return RationalCone(
        ambient_rank=n,
        generators=_sorted_vecs(rays),
        facet_normals=_sorted_vecs(c.generators),
        equations=tuple(sorted(eq_rows)),
        lineality=tuple(lin),
    )


@dataclass(frozen=True)
class Face:
    """A face of a strongly convex cone, cut out by a supporting normal."""

    parent: RationalCone
    defining_normal: Vec
    generators: tuple[Vec, ...]

    def __post_init__(self):
        m = self.defining_normal
        for g in self.parent.generators:
            v = dot(m, g)
            if v < 0:
                raise ConeError("defining normal is negative on the parent")
            if (v == 0) != (g in self.generators):
                raise ConeError("defining normal does not cut out the face")

    def dim(self) -> int:
        if not self.generators:
            return 0
        return sublattice_from_vectors(self.parent.ambient_rank,
                                       self.generators).rank

    def as_cone(self) -> RationalCone:
        return cone_from_generators(self.parent.ambient_rank, self.generators)


def faces(c: RationalCone) -> list[Face]:
    """All faces of a strongly convex cone, from {0} up to c itself.

    Every face is an intersection of facets; the stored defining normal
    is the sum of all facet normals vanishing on the face.
    """
    if not c.is_strongly_convex:
        raise ConeError("face enumeration requires a strongly convex cone")
    n = c.ambient_rank
    normals = list(c.facet_normals) + list(c.equations) + \
        [vec_neg(e) for e in c.equations]
    seen: dict[tuple[Vec, ...], tuple[Vec, ...]] = {}
    for k in range(len(c.facet_normals) + 1):
        for subset in combinations(range(len(c.facet_normals)), k):
            gens = tuple(g for g in c.generators
                         if all(dot(c.facet_normals[i], g) == 0 for i in subset))
            if gens in seen:
                continue
            active = [a for a in c.facet_normals
                      if all(dot(a, g) == 0 for g in gens)]
            m = tuple(sum(a[i] for a in active) for i in range(n)) if active \
                else (0,) * n
            # validity: m must vanish exactly on gens among all generators
            if any(dot(m, g) == 0 and g not in gens for g in c.generators):
                continue
            seen[gens] = m
    out = [Face(c, m, gens) for gens, m in seen.items()]
    out.sort(key=lambda f: (len(f.generators), f.generators))
    return out


def is_face_of(c: RationalCone, f: Face) -> bool:
    return f.parent == c


def contains(c: RationalCone, v) -> bool:
    """Membership test: v pairs >= 0 with every facet normal of c."""
    return c.contains(tuple(int(x) for x in v))
