"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import random
from itertools import combinations
from math import gcd

from tropfan.exact import RingTag
from tropfan.fans import WeightedFan, build_fan
from tropfan.matroids import Matroid, bergman_fan

Z = RingTag.Z()
Q = RingTag.Q()
F2 = RingTag.Fp(2)
F3 = RingTag.Fp(3)


def weighted(fan, weights, ring=Z):
    return WeightedFan(fan, ring, dict(zip(fan.top_faces(), weights)))


def cross_fan():
    return build_fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [[0], [1], [2], [3]])


def curve_fan():
    return build_fan(3, [(1, 0, 2), (-1, 0, 0), (0, -1, 0), (0, 1, -2)], [[0], [1], [2], [3]])


def line_fan(rank=1):
    e = tuple([1] + [0] * (rank - 1))
    ne = tuple(-x for x in e)
    return build_fan(rank, [e, ne], [[0], [1]])


def _content(vec):
    g = 0
    for x in vec:
        g = gcd(g, x)
    return g


def random_balanced_curve(rng: random.Random):
    """A random balanced one-dimensional fan: 3-8 rays in rank 2-4 with
    weights from {+-1, +-2, +-3}."""
    while True:
        rank = rng.randint(2, 4)
        m = rng.randint(3, 8)
        rays = []
        weights = []
        ok = True
        for _ in range(m - 1):
            for _attempt in range(50):
                v = tuple(rng.randint(-3, 3) for _ in range(rank))
                c = _content(v)
                if c == 0:
                    continue
                v = tuple(x // c for x in v)
                if v not in rays:
                    rays.append(v)
                    weights.append(rng.choice([1, -1, 2, -2, 3, -3]))
                    break
            else:
                ok = False
                break
        if not ok:
            continue
        s = [sum(w * r[i] for w, r in zip(weights, rays)) for i in range(rank)]
        g = _content(s)
        if g == 0 or g > 3:
            continue
        last = tuple(-x // g for x in s)
        if last in rays:
            continue
        rays.append(last)
        weights.append(g)
        fan = build_fan(rank, rays, [[i] for i in range(len(rays))])
        return fan, weights


BASE_MATROIDS = [
    Matroid(3, [[0, 1, 2]]),  # Boolean on 3 elements
    Matroid.uniform(3, 4),
    Matroid.uniform(3, 5),
]


def stellar_subdivide(wf: WeightedFan, cone_index: int) -> WeightedFan:
    """Subdivide one two-dimensional cone at the primitive sum of its rays."""
    fan = wf.fan
    tops = fan.top_faces()
    fid = tops[cone_index % len(tops)]
    i, j = fan.faces[fid].ray_indices
    rays = [list(r) for r in fan.rays]
    s = [a + b for a, b in zip(rays[i], rays[j])]
    c = _content(s)
    s = [x // c for x in s]
    if tuple(s) in {tuple(r) for r in rays}:
        return wf
    rays.append(s)
    k = len(rays) - 1
    cones = []
    weights = []
    for t in tops:
        w = wf.weight(t)
        if t == fid:
            cones.extend([[i, k], [k, j]])
            weights.extend([w, w])
        else:
            cones.append(list(fan.faces[t].ray_indices))
            weights.append(w)
    new_fan = build_fan(fan.ambient_rank, rays, cones)
    return WeightedFan(new_fan, wf.ring, {new_fan.face_by_rays(c): w for c, w in zip(cones, weights)})


def random_surface(rng: random.Random) -> WeightedFan:
    """A random balanced two-dimensional fan: a Bergman fan with a few
    stellar subdivisions and a global weight scale."""
    wf = bergman_fan(rng.choice(BASE_MATROIDS))
    for _ in range(rng.randint(0, 2)):
        wf = stellar_subdivide(wf, rng.randrange(100))
    scale = rng.choice([1, -1, 2, -2, 3])
    weights = {fid: w * scale for fid, w in wf.weights.items()}
    return WeightedFan(wf.fan, Z, weights)


# ---------------------------------------------------------------------------
# Independent oracles


def contraction_oracle(x, y, p1, p2, m):
    """The permutation-sum definition of the interior product, evaluated
    term by term over shuffles (independent of the lex basis formula)."""
    k_subsets = list(combinations(range(m), p1))
    j_subsets = list(combinations(range(m), p2))
    out_subsets = list(combinations(range(m), p2 - p1))
    out_index = {s: i for i, s in enumerate(out_subsets)}
    out = [0] * len(out_subsets)
    base_sign = (-1) ** (p1 * (p1 - 1) // 2)
    for ki, K in enumerate(k_subsets):
        if x[ki] == 0:
            continue
        for ji, J in enumerate(j_subsets):
            if y[ji] == 0:
                continue
            # Sum over shuffles of positions 0..p2-1.
            for first in combinations(range(p2), p1):
                rest = tuple(t for t in range(p2) if t not in first)
                perm = list(first) + list(rest)
                inv = sum(
                    1
                    for a in range(p2)
                    for b in range(a + 1, p2)
                    if perm[a] > perm[b]
                )
                sign = (-1) ** inv
                # Product of dual pairings f_{K_i}(e_{J_{perm[i]}}).
                prod = 1
                for idx, kk in enumerate(K):
                    if J[perm[idx]] != kk:
                        prod = 0
                        break
                if prod == 0:
                    continue
                tail = tuple(J[t] for t in rest)
                wedge_sign = _sort_sign(tail)
                out[out_index[tuple(sorted(tail))]] += (
                    base_sign * sign * wedge_sign * x[ki] * y[ji]
                )
    return out


def _sort_sign(seq):
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1) ** inv
