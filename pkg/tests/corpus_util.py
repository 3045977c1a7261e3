"""Deterministic random corpora shared between unit and acceptance tests."""

from __future__ import annotations

import random

from logtoric.cone import ConeError, RationalCone, cone_from_generators
from logtoric.lattice import LatticeMap
from logtoric.log_morphism import (
    ChartMapError,
    MonoidChart,
    from_toric_morphism,
)
from logtoric.monoid import affine_monoid
from logtoric.toric_chart import ToricChart, toric_chart


def random_vector(rng: random.Random, rank: int, max_entry: int):
    return tuple(rng.randint(-max_entry, max_entry) for _ in range(rank))


def random_pointed_cone(rng: random.Random, rank: int, max_entry: int,
                        max_gens: int) -> RationalCone:
    """A random strongly convex cone with at least one ray."""
    while True:
        gens = [random_vector(rng, rank, max_entry)
                for _ in range(rng.randint(2, max_gens))]
        try:
            c = cone_from_generators(rank, gens)
        except ConeError:
            continue
        if c.generators:
            return c


def cone_corpus(seed: int, count: int, max_rank: int = 3,
                max_entry: int = 4, max_gens: int = 4):
    """The fixed 100-cone corpus used by the Hilbert-basis and dual
    involution acceptance criteria."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        rank = rng.randint(2, max_rank)
        out.append(random_pointed_cone(rng, rank, max_entry, max_gens))
    return out


def random_monoid_chart(rng: random.Random) -> MonoidChart:
    """A random chart between pointed affine monoids: the target is
    generated by the generator images plus noise, so containment holds
    by construction."""
    while True:
        sr = rng.randint(1, 3)
        tr = rng.randint(1, 3)
        src_cone = random_pointed_cone(rng, sr, 3, 3) if sr > 1 else \
            cone_from_generators(1, [(1,)])
        source = affine_monoid(sr, src_cone.generators)
        entries = tuple(tuple(rng.randint(-2, 2) for _ in range(sr))
                        for _ in range(tr))
        m = LatticeMap(sr, tr, entries)
        images = [m.apply(g) for g in source.generators]
        extra = [random_vector(rng, tr, 2) for _ in range(rng.randint(0, 2))]
        target = affine_monoid(tr, images + extra)
        try:
            return MonoidChart(source, target, m)
        except ChartMapError:
            continue


def random_toric_pair(rng: random.Random):
    """(theta, phi) with theta a dominant chart, phi arbitrary, built
    from toric morphisms W -> V and U -> V of rank <= 3."""
    while True:
        dv = rng.randint(1, 2)
        dw = rng.randint(dv, 3)
        du = rng.randint(1, min(3, 4 + dv - dw))
        # dominant toric morphism W -> V: full-row-rank lattice map
        entries = tuple(tuple(rng.randint(-2, 2) for _ in range(dw))
                        for _ in range(dv))
        fmap = LatticeMap(dw, dv, entries)
        from logtoric.lattice import rank as lrank
        if lrank(fmap) != dv:
            continue
        try:
            sigma_w = random_pointed_cone(rng, dw, 2, dw + 1)
            w_chart = toric_chart(dw, sigma_w.generators)
            v_gens = [fmap.apply(u) for u in sigma_w.generators]
            v_chart = toric_chart(dv, v_gens)
        except ConeError:
            continue
        try:
            theta = from_toric_morphism(w_chart, v_chart, fmap)
        except ChartMapError:
            continue
        # arbitrary morphism U -> V with cone containment
        gmap = LatticeMap(du, dv,
                          tuple(tuple(rng.randint(-2, 2) for _ in range(du))
                                for _ in range(dv)))
        candidates = [v for v in
                      ([random_vector(rng, du, 2) for _ in range(12)])
                      if any(v) and v_chart.cone.contains(gmap.apply(v))]
        u_gens = candidates[:rng.randint(0, du + 1)]
        try:
            u_chart = toric_chart(du, u_gens)
            phi = from_toric_morphism(u_chart, v_chart, gmap)
        except (ConeError, ChartMapError):
            continue
        return theta, phi
