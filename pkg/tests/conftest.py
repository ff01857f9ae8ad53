import random
from fractions import Fraction as Q

import pytest

from gaudin import (
    BethePoint,
    ParitySequence,
    Poly,
    ProblemData,
    Weight,
    populate,
)
from gaudin.linalg import solve_linear


@pytest.fixture(scope="session")
def worked_problem():
    """gl(2|1), three sites at the cube roots of unity, weight (1,1,0) each.

    The evaluation points are irrational, so the problem is pinned by its
    standard-parity weight polynomials (x^3-1, x^3-1, 1).
    """
    x = Poly.x()
    t = x**3 - 1
    return ProblemData(2, 1, [Weight(2, 1, (1, 1, 0))] * 3, ts=[t, t, Poly.one()])


@pytest.fixture(scope="session")
def worked_seed(worked_problem):
    return BethePoint(
        worked_problem, ParitySequence.standard(2, 1), [Poly.one(), Poly.one()]
    )


@pytest.fixture(scope="session")
def worked_population(worked_seed):
    return populate(worked_seed, [0, 1, 2])


@pytest.fixture(scope="session")
def rational_gl21_problem():
    """Same shape as the worked example but with rational points 0, 1, 2."""
    return ProblemData(2, 1, [Weight(2, 1, (1, 1, 0))] * 3, points=[0, 1, 2])


def solve_levels_for_roots(zs, roots, bound=30):
    """Positive integer level parameters whose master polynomial has the
    given roots; returns None when the sign pattern or the size bound
    does not allow it."""
    rows = []
    for t in roots:
        row = []
        for k in range(len(zs)):
            prod = Q(1)
            for j, z in enumerate(zs):
                if j != k:
                    prod *= t - z
            row.append(prod)
        rows.append(row)
    _, null = solve_linear(rows, [Q(0)] * len(rows))
    if len(null) != 1:
        return None
    h = null[0]
    scale = 1
    for f in h:
        scale = scale * f.denominator // _gcd(scale, f.denominator)
    ints = [int(f * scale) for f in h]
    common = 0
    for v in ints:
        common = _gcd(common, v)
    if common:
        ints = [v // common for v in ints]
    if all(v < 0 for v in ints):
        ints = [-v for v in ints]
    if any(v <= 0 for v in ints) or sum(ints) > bound:
        return None
    return ints


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def random_gl11_system(rng: random.Random):
    """Random typical 3-site gl(1|1) data with rational master roots.

    Roots interlace the points, which keeps the level parameters positive;
    small denominators keep the weight polynomials desk-sized.
    """
    while True:
        zs = sorted(rng.sample(range(-3, 7), 3))
        zs = [Q(z) for z in zs]
        t1 = zs[0] + Q(rng.randint(1, 2), rng.choice([2, 3]))
        t2 = zs[1] + Q(rng.randint(1, 2), rng.choice([2, 3]))
        if not (zs[0] < t1 < zs[1] < t2 < zs[2]):
            continue
        hs = solve_levels_for_roots(zs, [t1, t2])
        if hs is None:
            continue
        pqs = []
        for h in hs:
            p = rng.randint(1, h)
            pqs.append((p, h - p))
        return pqs, zs, sorted([t1, t2])
