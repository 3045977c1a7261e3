"""Saturated base change of monoid charts.

Given theta: P -> Q (a dominant chart) and phi: P -> P', the pushout of
groups (Q^gp + P'^gp) / <(theta(p), -phi(p))> is computed by Smith
normal form.  The submonoid generated by the images of Q and P' in the
torsion-free quotient is integralized and saturated; the result is the
chart of the component of the fibre product dominating the base, and
the reported torsion order counts the components permuted by characters
of the torsion subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .lattice import (
    LatticeMap,
    Vec,
    _snf_full,
    complement,
    coordinates_in,
    dot,
    rank as matrix_rank,
    saturate_sublattice,
)
from .monoid import (
    AffineMonoid,
    MonoidError,
    monoids_equal,
    saturated_hull,
)
from .log_morphism import (
    ChartMapError,
    MonoidChart,
    is_dominant,
    is_log_smooth,
)


class BaseChangeError(ValueError):
    pass


@dataclass(frozen=True)
class PushoutPresentation:
    """The group pushout (Q^gp + P'^gp) / antidiagonal image of P^gp,
    split into a free part and torsion divisors."""

    group_pushout_rank: int
    torsion_divisors: tuple[int, ...]
    q_images: tuple[Vec, ...]
    p2_images: tuple[Vec, ...]
    torsion_order: int

    def __post_init__(self):
        if self.torsion_order != prod(self.torsion_divisors):
            raise BaseChangeError("torsion order does not match divisors")


@dataclass(frozen=True)
class SatBaseChangeResult:
    main_monoid: AffineMonoid
    structural_map: MonoidChart
    torsion_order: int
    fibre_dim: int


def _gp_coords(m: AffineMonoid):
    """(basis vectors, coordinate function) for the group completion."""
    gp = m.group_completion_lattice()

    def coords(v):
        q = coordinates_in(gp, v)
        if q is None:
            raise BaseChangeError("vector outside the group completion")
        return q

    return gp, coords


def monoid_pushout(theta: MonoidChart, phi: MonoidChart) -> PushoutPresentation:
    """Pushout of theta: P -> Q along phi: P -> P' at group level.

    Returns the free rank, the torsion divisors, and the images of the
    generators of Q and P' in the torsion-free quotient of the pushout
    group.
    """
    presentation, _ = _pushout_with_rows(theta, phi)
    return presentation


def _pushout_with_rows(theta: MonoidChart, phi: MonoidChart):
    """monoid_pushout plus the projection rows onto the free quotient."""
    if not monoids_equal(theta.source, phi.source):
        raise BaseChangeError("charts must share the same source monoid")
    p = theta.source
    gp_p, _ = _gp_coords(p)
    gp_q, coords_q = _gp_coords(theta.target)
    gp_p2, coords_p2 = _gp_coords(phi.target)
    rp, rq, rp2 = gp_p.rank, gp_q.rank, gp_p2.rank
    n = rq + rp2
    cols = []
    for b in gp_p.basis_vectors():
        top = coords_q(theta.map.apply(b))
        bot = coords_p2(phi.map.apply(b))
        cols.append(tuple(top) + tuple(-x for x in bot))
    rows = tuple(tuple(cols[j][i] for j in range(rp)) for i in range(n))
    U, D, _, _, _ = _snf_full(rows, n, rp)
    r = sum(1 for i in range(min(n, rp)) if D[i][i] != 0)
    divisors = tuple(abs(D[i][i]) for i in range(r) if abs(D[i][i]) > 1)
    free_rows = []
    for i in range(r, n):
        row = U[i]
        for x in row:
            if x > 0:
                break
            if x < 0:
                row = tuple(-y for y in row)
                break
        free_rows.append(tuple(row))

    def to_free(y: Vec) -> Vec:
        return tuple(dot(row, y) for row in free_rows)

    zero_q = (0,) * rq
    zero_p2 = (0,) * rp2
    q_images = tuple(to_free(tuple(coords_q(g)) + zero_p2)
                     for g in theta.target.generators)
    p2_images = tuple(to_free(zero_q + tuple(coords_p2(g)))
                      for g in phi.target.generators)
    # both routes from P must agree in the quotient
    for g in p.generators:
        via_q = to_free(tuple(coords_q(theta.map.apply(g))) + zero_p2)
        via_p2 = to_free(zero_q + tuple(coords_p2(phi.map.apply(g))))
        if via_q != via_p2:
            raise BaseChangeError("pushout routes disagree in the quotient")
    return PushoutPresentation(
        group_pushout_rank=n - r,
        torsion_divisors=divisors,
        q_images=q_images,
        p2_images=p2_images,
        torsion_order=prod(divisors),
    ), free_rows


def _ambient_extension(m: AffineMonoid, basis_images: list[Vec],
                       target_rank: int) -> LatticeMap:
    """Extend a map defined on gp(m) basis vectors to the ambient lattice.

    Vectors in the saturation of gp(m) get the unique divisible value; a
    complement of the saturation is sent to zero.
    """
    from .monoid import _unimodular_inverse

    n = m.ambient_rank
    gp = m.group_completion_lattice()
    sat, index = saturate_sublattice(gp)
    s = sat.rank
    if s < n:
        comp = complement(sat)
        cols = sat.basis_vectors() + comp.basis_vectors()
    else:
        cols = sat.basis_vectors()
    inv_rows = _unimodular_inverse(cols, n)
    img_cols = []
    for v in sat.basis_vectors():
        scaled = tuple(index * x for x in v)
        c = coordinates_in(gp, scaled)
        if c is None:
            raise BaseChangeError("saturation index does not clear torsion")
        img = tuple(sum(c[j] * basis_images[j][i] for j in range(gp.rank))
                    for i in range(target_rank))
        if any(x % index for x in img):
            raise BaseChangeError(
                "structural map has no integral extension to the ambient "
                "lattice")
        img_cols.append(tuple(x // index for x in img))
    for _ in range(n - s):
        img_cols.append((0,) * target_rank)
    entries = tuple(
        tuple(sum(img_cols[j][i] * inv_rows[j][b] for j in range(n))
              for b in range(n))
        for i in range(target_rank))
    return LatticeMap(n, target_rank, entries)


def saturated_base_change(theta: MonoidChart,
                          phi: MonoidChart) -> SatBaseChangeResult:
    """Chart of the saturated fibre product's component dominating the
    base of phi.

    The submonoid of the torsion-free pushout quotient generated by the
    images of Q and P' is saturated; the structural map sends P' to its
    images.  Requires theta dominant.
    """
    if not is_dominant(theta):
        raise BaseChangeError(
            "saturated base change requires a dominant first chart")
    po, free_rows = _pushout_with_rows(theta, phi)
    f = po.group_pushout_rank
    main = saturated_hull(f, list(po.q_images) + list(po.p2_images))
    p2 = phi.target
    gp_p2 = p2.group_completion_lattice()
    rq = theta.target.group_completion_lattice().rank
    basis_images = [
        tuple(dot(row, (0,) * rq + tuple(b)) for row in free_rows)
        for b in (tuple(1 if j == i else 0 for j in range(gp_p2.rank))
                  for i in range(gp_p2.rank))
    ]
    smap = _ambient_extension(p2, basis_images, f)
    structural = MonoidChart(source=p2, target=main, map=smap)
    image_cols = [smap.apply(b) for b in gp_p2.basis_vectors()]
    image_rank = matrix_rank(LatticeMap.from_columns(image_cols, f)) \
        if image_cols else 0
    fibre_dim = main.group_completion_lattice().rank - image_rank
    return SatBaseChangeResult(
        main_monoid=main,
        structural_map=structural,
        torsion_order=po.torsion_order,
        fibre_dim=fibre_dim,
    )


def verify_base_change(r: SatBaseChangeResult, theta: MonoidChart) -> dict:
    """Check the stability assertions for a base-change result.

    Returns a report with one boolean per assertion: the main monoid is
    saturated, the structural map is log-smooth and dominant, and the
    fibre dimension equals the group-rank difference.
    """
    saturated_ok = r.main_monoid.saturated
    smooth_ok, certificate = is_log_smooth(r.structural_map)
    dominant_ok = is_dominant(r.structural_map)
    rank_main = r.main_monoid.group_completion_lattice().rank
    rank_src = r.structural_map.source.group_completion_lattice().rank
    fibre_ok = r.fibre_dim == rank_main - rank_src if dominant_ok \
        else r.fibre_dim >= rank_main - rank_src
    report = {
        "main_monoid_saturated": saturated_ok,
        "structural_map_log_smooth": smooth_ok,
        "structural_map_dominant": dominant_ok,
        "fibre_dim_matches_rank_difference": fibre_ok,
        "passed": saturated_ok and smooth_ok and dominant_ok and fibre_ok,
    }
    if not smooth_ok:
        report["kernel_certificate"] = certificate
    return report
