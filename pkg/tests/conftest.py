"""Shared fixtures: deterministic random cones and a corpus of valid fans."""

import random
from functools import cmp_to_key

import pytest

from torfan.cone import classify, cone_from_generators, zero_cone
from torfan.exact_linalg import primitive
from torfan.fan import validate_fan

SEED = 20250810


def make_rng(salt=0):
    return random.Random(SEED + salt)


def random_strongly_convex_cone(r, rank, bound=5, nondegenerate=False, max_gens=None):
    while True:
        k = r.randint(1, max_gens or rank + 2)
        gens = [tuple(r.randint(-bound, bound) for _ in range(rank)) for _ in range(k)]
        c = cone_from_generators(rank, gens)
        cl = classify(c)
        if not cl.strongly_convex or not c.rays:
            continue
        if nondegenerate and not cl.nondegenerate:
            continue
        return c


# --- named fixtures ---------------------------------------------------------


def quadrant_fan():
    return validate_fan(2, [cone_from_generators(2, [(1, 0), (0, 1)])])


def p1_fan():
    return validate_fan(
        1, [cone_from_generators(1, [(1,)]), cone_from_generators(1, [(-1,)])]
    )


def p2_fan():
    return validate_fan(
        2,
        [
            cone_from_generators(2, [(1, 0), (0, 1)]),
            cone_from_generators(2, [(0, 1), (-1, -1)]),
            cone_from_generators(2, [(-1, -1), (1, 0)]),
        ],
    )


def p1xp1_fan():
    quads = [
        [(1, 0), (0, 1)],
        [(0, 1), (-1, 0)],
        [(-1, 0), (0, -1)],
        [(0, -1), (1, 0)],
    ]
    return validate_fan(2, [cone_from_generators(2, g) for g in quads])


def upper_half_fan():
    return validate_fan(
        2,
        [
            cone_from_generators(2, [(1, 0), (0, 1)]),
            cone_from_generators(2, [(-1, 0), (0, 1)]),
        ],
    )


def blowup_fan():
    return validate_fan(
        2,
        [
            cone_from_generators(2, [(1, 0), (1, 1)]),
            cone_from_generators(2, [(1, 1), (0, 1)]),
        ],
    )


def axes_fan():
    # valid fan whose support is not closed under addition
    return validate_fan(
        2, [cone_from_generators(2, [(1, 0)]), cone_from_generators(2, [(0, 1)])]
    )


def embedded_ray_fan():
    return validate_fan(2, [cone_from_generators(2, [(1, 0)])])


def scaled_ray_fan():
    return validate_fan(2, [cone_from_generators(2, [(2, 2)])])


def torus_fan(rank=2):
    return validate_fan(rank, [])


def octant_fan():
    return validate_fan(3, [cone_from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])])


def star_octant_fan():
    e1, e2, e3, s = (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)
    return validate_fan(
        3,
        [
            cone_from_generators(3, [e1, e2, s]),
            cone_from_generators(3, [e1, e3, s]),
            cone_from_generators(3, [e2, e3, s]),
        ],
    )


def p3_fan():
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
    cones = []
    for skip in range(4):
        cones.append(cone_from_generators(3, [rays[i] for i in range(4) if i != skip]))
    return validate_fan(3, cones)


def p1_line_fan():
    # complete rank-1 picture embedded degenerately in rank 2
    return validate_fan(
        2, [cone_from_generators(2, [(1, 0)]), cone_from_generators(2, [(-1, 0)])]
    )


FIXTURE_FANS = [
    quadrant_fan,
    p1_fan,
    p2_fan,
    p1xp1_fan,
    upper_half_fan,
    blowup_fan,
    axes_fan,
    embedded_ray_fan,
    scaled_ray_fan,
    torus_fan,
    octant_fan,
    star_octant_fan,
    p3_fan,
    p1_line_fan,
]


# --- random fans ------------------------------------------------------------


def _half(v):
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def random_rank2_fan(r, bound=5, max_rays=6):
    rays = set()
    for _ in range(r.randint(1, max_rays)):
        v = (r.randint(-bound, bound), r.randint(-bound, bound))
        if any(v):
            rays.add(primitive(v))
    rays = sorted(rays, key=cmp_to_key(_angle_cmp))
    cones = []
    covered = set()
    for a, b in zip(rays, rays[1:]):
        if a[0] * b[1] - a[1] * b[0] > 0 and r.random() < 0.85:
            cones.append(cone_from_generators(2, [a, b]))
            covered.update((a, b))
    for v in rays:
        if v not in covered:
            cones.append(cone_from_generators(2, [v]))
    return validate_fan(2, cones)


def random_unimodular(r, rank, ops=6):
    m = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for _ in range(ops):
        kind = r.randint(0, 2)
        i, j = r.randint(0, rank - 1), r.randint(0, rank - 1)
        if kind == 0 and i != j:
            c = r.randint(-2, 2)
            m[j] = [a + c * b for a, b in zip(m[j], m[i])]
        elif kind == 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return tuple(tuple(row) for row in m)


def transform_fan(f, u):
    def apply(v):
        return tuple(sum(v[i] * u[i][j] for i in range(len(u))) for j in range(len(u)))

    cones = [cone_from_generators(f.rank, [apply(r) for r in c.rays]) for c in f.cones]
    return validate_fan(f.rank, cones)


def embed_fan(f, rank):
    pad = rank - f.rank
    cones = [
        cone_from_generators(rank, [r + (0,) * pad for r in c.rays]) for c in f.cones
    ]
    return validate_fan(rank, cones)


def build_fan_corpus():
    fans = [fn() for fn in FIXTURE_FANS]
    r = make_rng(1)
    for _ in range(20):
        fans.append(random_rank2_fan(r))
    bases = [octant_fan(), star_octant_fan(), p3_fan()]
    for i in range(9):
        fans.append(transform_fan(bases[i % 3], random_unimodular(r, 3)))
    for _ in range(6):
        c = random_strongly_convex_cone(r, 4, bound=3, max_gens=4)
        fans.append(validate_fan(4, [c]))
    for _ in range(4):
        f2 = random_rank2_fan(r, bound=3, max_rays=4)
        fans.append(transform_fan(embed_fan(f2, 3), random_unimodular(r, 3)))
    for _ in range(2):
        f2 = random_rank2_fan(r, bound=2, max_rays=3)
        fans.append(embed_fan(f2, 4))
    return fans


@pytest.fixture(scope="session")
def fan_corpus():
    return build_fan_corpus()


@pytest.fixture(scope="session")
def cone_corpus():
    r = make_rng(2)
    cones = [
        zero_cone(1),
        zero_cone(2),
        cone_from_generators(2, [(1, 0), (0, 1)]),
        cone_from_generators(2, [(1, 0), (1, 2)]),
        cone_from_generators(2, [(1, 0)]),
        cone_from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
        cone_from_generators(3, [(1, 0, 0), (0, 1, 0)]),
    ]
    for _ in range(30):
        rank = r.randint(1, 4)
        cones.append(random_strongly_convex_cone(r, rank, bound=4))
    return cones
