"""Matroids, their lattices of flats, and Bergman fans.

A matroid is stored by its list of bases. The Bergman fan lives in the
quotient of Z^{ground} by the all-ones vector, realized concretely by
substituting -(e_0 + ... + e_{n-1}) for the last coordinate vector: a
deterministic unimodular choice (homology does not depend on it).
"""

from __future__ import annotations

from itertools import combinations

from .exact import RingTag
from .fans import Fan, WeightedFan, build_fan


class Matroid:
    def __init__(self, ground_size, bases):
        self.ground_size = int(ground_size)
        bases = [frozenset(int(x) for x in b) for b in bases]
        if not bases:
            raise ValueError("a matroid needs at least one basis")
        sizes = {len(b) for b in bases}
        if len(sizes) != 1:
            raise ValueError("bases must all have the same size")
        for b in bases:
            if any(x < 0 or x >= self.ground_size for x in b):
                raise ValueError("basis element out of range")
        self.bases = sorted(set(bases), key=sorted)
        self.rank = sizes.pop()
        self._check_exchange()

    @classmethod
    def uniform(cls, rank, ground_size):
        return cls(ground_size, [set(c) for c in combinations(range(ground_size), rank)])

    def _check_exchange(self):
        for b1 in self.bases:
            for b2 in self.bases:
                for x in b1 - b2:
                    if not any((b1 - {x}) | {y} in set(self.bases) for y in b2 - b1):
                        raise ValueError("bases violate the exchange property")

    def rank_of(self, subset):
        s = frozenset(subset)
        return max(len(s & b) for b in self.bases)

    def closure(self, subset):
        s = set(subset)
        r = self.rank_of(s)
        return frozenset(
            x for x in range(self.ground_size) if x in s or self.rank_of(s | {x}) == r
        )

    def loops(self):
        return self.closure(())

    def flats(self):
        """All flats, sorted by (rank, elements); plus the covering relation.

        Returns (flats, covering) with covering pairs (i, j) meaning
        flats[i] is covered by flats[j] in the lattice of flats.
        """
        by_rank = {0: {self.closure(())}}
        for r in range(self.rank):
            nxt = set()
            for f in by_rank[r]:
                for x in range(self.ground_size):
                    if x not in f:
                        nxt.add(self.closure(f | {x}))
            by_rank[r + 1] = {g for g in nxt if self.rank_of(g) == r + 1}
        flats = []
        for r in range(self.rank + 1):
            flats.extend(sorted(by_rank[r], key=sorted))
        index = {f: i for i, f in enumerate(flats)}
        covering = []
        for f in flats:
            rf = self.rank_of(f)
            for g in flats:
                if rf + 1 == self.rank_of(g) and f < g:
                    covering.append((index[f], index[g]))
        return flats, covering


def matroid_flats(m: Matroid):
    return m.flats()


def _ray_vector(flat, ground_size):
    n = ground_size - 1  # ambient rank after the quotient
    vec = [0] * n
    for i in flat:
        if i < n:
            vec[i] += 1
        else:
            for j in range(n):
                vec[j] -= 1
    return vec


def bergman_fan(m: Matroid) -> WeightedFan:
    """The Bergman fan of a loopless matroid, with constant weight 1 over Z.

    One ray per proper nonempty flat, one cone per chain of proper flats.
    """
    if m.loops():
        raise ValueError("matroid has loops; its Bergman fan is not defined here")
    flats, covering = m.flats()
    proper = [f for f in flats if 0 < len(f) < m.ground_size]
    proper.sort(key=lambda f: (len(f), sorted(f)))
    ray_index = {f: i for i, f in enumerate(proper)}
    rays = [_ray_vector(f, m.ground_size) for f in proper]

    # Maximal chains of proper flats, built by walking the covering relation.
    maximal_chains = []

    def extend(chain, last):
        supersets = [g for g in proper if last < g]
        tight = [g for g in supersets if m.rank_of(g) == m.rank_of(last) + 1]
        if not tight:
            maximal_chains.append(chain)
            return
        for g in tight:
            extend(chain + [ray_index[g]], g)

    rank1 = [f for f in proper if m.rank_of(f) == 1]
    for f in rank1:
        extend([ray_index[f]], f)

    fan = build_fan(m.ground_size - 1, rays, maximal_chains)
    weights = {fid: 1 for fid in fan.top_faces()}
    return WeightedFan(fan, RingTag.Z(), weights)
