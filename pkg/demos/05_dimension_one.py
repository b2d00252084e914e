"""One-dimensional fans: duality is unique balancing plus unit weights.

A curve fan satisfies duality over a ring exactly when its balancing weight
vector is unique up to scale, generates the top homology, and consists of
units. The same fan can therefore pass over Q and fail over Z.
"""

import random
from math import gcd

from tropfan import RingTag, build_fan, classify_dim1, is_tpd
from tropfan.fans import WeightedFan

Z, Q = RingTag.Z(), RingTag.Q()

# A curve in rank 3 whose rays sum to zero with unit weights.
fan = build_fan(3, [(1, 0, 2), (-1, 0, 0), (0, -1, 0), (0, 1, -2)], [[0], [1], [2], [3]])
wf = WeightedFan(fan, Z, {f: 1 for f in fan.top_faces()})
print("unit-weight curve over Z:", classify_dim1(wf), "== full certificate:", is_tpd(wf).verdict)

# Doubling every weight keeps the balancing but destroys duality over Z only.
line = build_fan(1, [(1,), (-1,)], [[0], [1]])
for ring in (Z, Q):
    w2 = WeightedFan(line, ring, {f: 2 for f in line.top_faces()})
    print(f"doubled line over {ring}: classification = {classify_dim1(w2)}")


def random_balanced_curve(rng):
    """Sample rays and weights, then close them up with one balancing ray."""
    while True:
        rank = rng.randint(2, 4)
        rays, weights = [], []
        for _ in range(rng.randint(2, 7)):
            v = tuple(rng.randint(-3, 3) for _ in range(rank))
            c = 0
            for x in v:
                c = gcd(c, x)
            if c == 0:
                continue
            v = tuple(x // c for x in v)
            if v not in rays:
                rays.append(v)
                weights.append(rng.choice([1, -1, 2, -2, 3]))
        s = [sum(w * r[i] for w, r in zip(weights, rays)) for i in range(rank)]
        g = 0
        for x in s:
            g = gcd(g, x)
        if len(rays) < 2 or g == 0 or g > 3:
            continue
        last = tuple(-x // g for x in s)
        if last in rays:
            continue
        rays.append(last)
        weights.append(g)
        return build_fan(rank, rays, [[i] for i in range(len(rays))]), weights


# The classification agrees with the cap-product certificate on random fans.
rng = random.Random(5)
checked = 0
for _ in range(20):
    fan, weights = random_balanced_curve(rng)
    wf = WeightedFan(fan, Z, dict(zip(fan.top_faces(), weights)))
    assert classify_dim1(wf) == is_tpd(wf).verdict
    checked += 1
print(f"random curves checked: {checked}, all classifications agree")
