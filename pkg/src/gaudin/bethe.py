"""Bethe-ansatz tuples, reproduction procedures and populations.

A solution candidate is a tuple of monic polynomials, one per simple root,
together with a parity sequence and the problem data.  Reproductions move
between candidates: same-parity directions produce a one-parameter family
through a first-order Wronskian equation, mixed-parity directions produce
a single partner by exact division and flip the parity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CriterionFailed,
    DegenerateReproduction,
    InvalidConfiguration,
    InvalidInput,
    NotAdmissible,
    NotGeneric,
)
from .linalg import column_span_contains, solve_linear
from .rational import Poly, Q, RatFun, log_deriv, poly_gcd, qq
from .skew import CompleteFactorization, OreFraction
from .weights import (
    ParitySequence,
    ProblemData,
    cartan_pairing,
    pair_eps,
    pair_weight_alpha,
    ratio_poly,
    step_radical,
)


class BethePoint:
    """Monic polynomial tuple (y_1 .. y_{M+N-1}) at a parity sequence."""

    __slots__ = ("problem", "parity", "ys")

    def __init__(self, problem: ProblemData, parity: ParitySequence, ys):
        ys = tuple(y if isinstance(y, Poly) else Poly(y) for y in ys)
        if len(ys) != problem.m + problem.n - 1:
            raise InvalidInput("tuple length must be M+N-1")
        if any(y.is_zero() for y in ys):
            raise InvalidInput("zero entry in a Bethe tuple")
        ys = tuple(y.monic() for y in ys)
        object.__setattr__(self, "problem", problem)
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "ys", ys)

    def y(self, i: int) -> Poly:
        """Entry y_i with the boundary convention y_0 = y_{M+N} = 1."""
        if i == 0 or i == self.problem.m + self.problem.n:
            return Poly.one()
        return self.ys[i - 1]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(y.degree for y in self.ys)

    def key(self):
        return (self.parity.entries, tuple(y.coeffs for y in self.ys))

    def __eq__(self, other):
        return isinstance(other, BethePoint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"BethePoint({[y.to_str() for y in self.ys]}, parity={list(self.parity.entries)})"

    def ts(self) -> tuple[Poly, ...]:
        return self.problem.ts_at(self.parity)


def genericity_check(point: BethePoint) -> tuple[bool, list[str]]:
    """The three genericity conditions; returns (ok, failure descriptions)."""
    s = point.parity
    size = len(s) - 1
    ts = point.ts()
    failures = []
    for i in range(1, size + 1):
        yi = point.y(i)
        if s[i] * s[i + 1] == 1 and yi.degree > 0:
            if poly_gcd(yi, yi.derivative()).degree > 0:
                failures.append(f"y_{i} has a repeated root")
        rp = ratio_poly(ts, s, i)
        if yi.degree > 0 and rp.degree > 0 and poly_gcd(yi, rp).degree > 0:
            failures.append(f"y_{i} meets the weight-poly ratio at position {i}")
    for i in range(1, size + 1):
        for j in range(i + 1, size + 1):
            if cartan_pairing(s, i, j) != 0:
                if point.y(i).degree > 0 and point.y(j).degree > 0:
                    if poly_gcd(point.y(i), point.y(j)).degree > 0:
                        failures.append(f"y_{i} and y_{j} share a root")
    return (not failures, failures)


def _wronskian_system(y: Poly, rhs: Poly):
    """Polynomial solutions of  y w' - y' w = rhs  up to the degree bound.

    Returns (particular or None, homogeneous basis); the homogeneous
    solutions are exactly the multiples of y.
    """
    dbound = max(rhs.degree - y.degree + 1, y.degree, 0)
    yp = y.derivative()
    nrows = max(y.degree + max(dbound - 1, 0), yp.degree + dbound, rhs.degree) + 1
    rows = []
    vec = []
    for k in range(nrows):
        row = []
        for j in range(dbound + 1):
            c = Q(0)
            if j >= 1:
                c += j * y.coeff(k - j + 1)
            c -= yp.coeff(k - j)
            row.append(c)
        rows.append(row)
        vec.append(rhs.coeff(k))
    sol, null = solve_linear(rows, vec)
    particular = None if sol is None else Poly(sol)
    homogeneous = [Poly(v) for v in null]
    return particular, homogeneous


def bosonic_rhs(point: BethePoint, i: int) -> Poly:
    ts = point.ts()
    return ratio_poly(ts, point.parity, i) * point.y(i - 1) * point.y(i + 1)


def fermionic_rhs(point: BethePoint, i: int) -> RatFun:
    """Right side of the mixed-parity relation, as a rational function."""
    ts = point.ts()
    s = point.parity
    arg = RatFun(ts[i - 1] * ts[i] * point.y(i - 1), point.y(i + 1))
    if arg.derivative().is_zero():
        raise DegenerateReproduction(
            f"constant logarithmic-derivative argument in direction {i}"
        )
    pi_i = step_radical(ts, s, i)
    return log_deriv(arg) * RatFun(pi_i * point.y(i - 1) * point.y(i + 1))


@dataclass(frozen=True)
class ReproductionFamily:
    """One-parameter family produced by a same-parity reproduction.

    Members are particular - c * homogeneous; the value c = infinity
    degenerates to the original entry y_i.
    """

    direction: int
    kind: str
    particular: Poly
    homogeneous: Poly
    target_parity: ParitySequence

    def member(self, c) -> Poly:
        return (self.particular - self.homogeneous * qq(c)).monic()


def bosonic_reproduce(point: BethePoint, i: int) -> ReproductionFamily:
    s = point.parity
    if s[i] != s[i + 1]:
        raise InvalidInput(f"direction {i} is not same-parity")
    particular, homogeneous = _wronskian_system(point.y(i), bosonic_rhs(point, i))
    if particular is None:
        raise CriterionFailed(f"no polynomial Wronskian partner in direction {i}")
    if len(homogeneous) != 1 or homogeneous[0].monic() != point.y(i).monic():
        raise InvalidInput("unexpected homogeneous solution space")
    return ReproductionFamily(
        direction=i,
        kind="bosonic",
        particular=particular,
        homogeneous=point.y(i),
        target_parity=s,
    )


def fermionic_reproduce(point: BethePoint, i: int) -> BethePoint:
    s = point.parity
    if s[i] == s[i + 1]:
        raise InvalidInput(f"direction {i} is not mixed-parity")
    rhs = fermionic_rhs(point, i)
    if not rhs.is_polynomial():
        raise CriterionFailed(f"division data not polynomial in direction {i}")
    quo = rhs.as_poly().try_exact_div(point.y(i))
    if quo is None or quo.is_zero():
        raise CriterionFailed(f"entry y_{i} does not divide the partner product")
    ys = list(point.ys)
    ys[i - 1] = quo.monic()
    return BethePoint(point.problem, s.swapped(i), ys)


def bae_check_criterion(point: BethePoint) -> bool:
    """Solvability of the reproduction relation in every direction.

    This is the reformulated Bethe-ansatz check for generic tuples; a
    non-generic input raises :class:`NotGeneric`.
    """
    ok, failures = genericity_check(point)
    if not ok:
        raise NotGeneric("; ".join(failures))
    s = point.parity
    for i in range(1, len(s)):
        if s[i] == s[i + 1]:
            particular, _ = _wronskian_system(point.y(i), bosonic_rhs(point, i))
            if particular is None:
                return False
        else:
            try:
                rhs = fermionic_rhs(point, i)
            except DegenerateReproduction:
                continue  # zero right side: the zero polynomial solves the relation
            if not rhs.is_polynomial():
                return False
            if rhs.as_poly().try_exact_div(point.y(i)) is None:
                return False
    return True


def bae_check_direct(problem: ProblemData, parity: ParitySequence, tlists) -> bool:
    """Exact residue check of the Bethe equations for explicit rational roots.

    ``tlists`` groups the roots by colour.  Colours whose simple root pairs
    to zero with itself follow the multiplicity convention: repeats are
    allowed up to the root's multiplicity in the single-variable equation.
    """
    if problem.points is None:
        raise InvalidInput("direct residue check needs rational evaluation points")
    s = parity
    size = len(s) - 1
    if len(tlists) != size:
        raise InvalidInput("one root list per colour is required")
    tlists = [[qq(t) for t in ts] for ts in tlists]
    coords = [w.coords_at(s) for w in problem.weights]
    zs = problem.points

    def weight_pair(k: int, colour: int) -> Fraction:
        return pair_weight_alpha(coords[k], s, colour)

    # non-coincidence conditions
    flat = [(t, c + 1) for c, ts in enumerate(tlists) for t in ts]
    for j, (tj, cj) in enumerate(flat):
        for r, (tr, cr) in enumerate(flat):
            if r != j and cartan_pairing(s, cr, cj) != 0 and tj == tr and cr != cj:
                raise InvalidConfiguration("roots of interacting colours coincide")
        for k, z in enumerate(zs):
            if tj == z and weight_pair(k, cj) != 0:
                raise InvalidConfiguration("root collides with an evaluation point")
    for colour in range(1, size + 1):
        ts_c = tlists[colour - 1]
        if not ts_c:
            continue
        if cartan_pairing(s, colour, colour) != 0:
            if len(set(ts_c)) != len(ts_c):
                raise InvalidConfiguration("repeated root of a self-interacting colour")
            for j, tj in enumerate(ts_c):
                total = Q(0)
                for k, z in enumerate(zs):
                    total -= weight_pair(k, colour) / (tj - z)
                for cr in range(1, size + 1):
                    pairing = cartan_pairing(s, cr, colour)
                    if pairing == 0:
                        continue
                    for r, tr in enumerate(tlists[cr - 1]):
                        if cr == colour and r == j:
                            continue
                        total += pairing / (tj - tr)
                if total != 0:
                    return False
        else:
            # single-variable equation shared by the whole colour:
            # sum of -c_k/(t-z_k) plus the cross-colour interaction terms
            terms: list[tuple[Fraction, Fraction]] = []
            for k, z in enumerate(zs):
                c = weight_pair(k, colour)
                if c != 0:
                    terms.append((-c, z))
            for cr in range(1, size + 1):
                if cr == colour:
                    continue
                pairing = cartan_pairing(s, cr, colour)
                if pairing == 0:
                    continue
                for tr in tlists[cr - 1]:
                    terms.append((Q(pairing), tr))
            num = Poly.zero()
            den = Poly.one()
            for c, pole in terms:
                num = num * Poly((-pole, 1)) + c * den
                den = den * Poly((-pole, 1))
            if num.is_zero():
                continue  # identically satisfied
            for t in set(ts_c):
                count = sum(1 for x in ts_c if x == t)
                mult = 0
                probe = num
                while probe.degree >= 0 and probe(t) == 0:
                    probe = probe.exact_div(Poly((-t, 1)))
                    mult += 1
                if count > mult:
                    return False
    return True


def population_factorization(point: BethePoint) -> CompleteFactorization:
    """Signed first-order factorization attached to a tuple.

    Factor i has primitive (T_i^s y_{i-1} / y_i)^(s_i); the fraction it
    folds to is the population operator.
    """
    s = point.parity
    ts = point.ts()
    prims = []
    for i in range(1, len(s) + 1):
        g = RatFun(ts[i - 1] * point.y(i - 1), point.y(i))
        prims.append(g if s[i] == 1 else RatFun.one() / g)
    return CompleteFactorization.from_primitives(s, prims)


def population_operator(point: BethePoint) -> OreFraction:
    return population_factorization(point).to_fraction()


@dataclass(frozen=True)
class Edge:
    source: tuple
    target: tuple
    direction: int
    kind: str
    scalar: Fraction | None = None


class Population:
    """Closure of a seed tuple under reproductions, with dedup and edges."""

    def __init__(self, problem: ProblemData):
        self.problem = problem
        self.nodes: dict[tuple, BethePoint] = {}
        self.edges: list[Edge] = []
        self.diagnostics: list[str] = []
        self.generic_flags: dict[tuple, bool] = {}

    def add(self, point: BethePoint) -> tuple:
        key = point.key()
        if key not in self.nodes:
            self.nodes[key] = point
            self.generic_flags[key] = genericity_check(point)[0]
        return key

    def points(self) -> list[BethePoint]:
        return list(self.nodes.values())

    def by_parity(self) -> dict[tuple, list[BethePoint]]:
        out: dict[tuple, list[BethePoint]] = {}
        for p in self.nodes.values():
            out.setdefault(p.parity.entries, []).append(p)
        return out

    def operator(self) -> OreFraction:
        first = next(iter(self.nodes.values()))
        return population_operator(first)


def _family_sibling_exists(pop: Population, point: BethePoint, i: int, family: ReproductionFamily) -> bool:
    """Whether another known node already lies on this family's projective line.

    Re-sampling such a family from a second basepoint would scatter fresh
    points over the same line forever, so exploration stops once the line
    is witnessed by any other member.
    """
    width = max(family.particular.degree, family.homogeneous.degree) + 1
    span = [
        list(family.particular.coeffs) + [Q(0)] * (width - len(family.particular.coeffs)),
        list(family.homogeneous.coeffs) + [Q(0)] * (width - len(family.homogeneous.coeffs)),
    ]
    for other in pop.nodes.values():
        if other is point or other.parity != point.parity:
            continue
        if any(other.ys[j] != point.ys[j] for j in range(len(point.ys)) if j != i - 1):
            continue
        cand = other.ys[i - 1]
        if cand.degree + 1 > width:
            continue
        vec = list(cand.coeffs) + [Q(0)] * (width - len(cand.coeffs))
        if column_span_contains(span, vec):
            return True
    return False


def populate(seed: BethePoint, samples, max_depth: int = 16) -> Population:
    """Breadth-first closure of a seed under all reproductions.

    Same-parity families are materialized at the supplied scalar samples
    (the degeneration member is the node itself); each projective family
    line is sampled only once.  Reproductions are applied wherever the
    defining formulas stay exact; failures and genericity findings are
    recorded as diagnostics instead of aborting the whole exploration.
    """
    samples = [qq(c) for c in samples]
    if not samples:
        raise InvalidInput("population runs need at least one sample scalar")
    if not bae_check_criterion(seed):
        raise CriterionFailed("seed fails the Bethe criterion")
    pop = Population(seed.problem)
    seed_key = pop.add(seed)
    frontier = [(seed_key, 0)]
    enqueued = {seed_key}
    qpos = 0
    while qpos < len(frontier):
        key, depth = frontier[qpos]
        qpos += 1
        if depth >= max_depth:
            continue
        point = pop.nodes[key]
        s = point.parity

        def _record(child: BethePoint, direction: int, kind: str, scalar=None):
            ckey = pop.add(child)
            pop.edges.append(Edge(key, ckey, direction, kind, scalar))
            if ckey not in enqueued:
                enqueued.add(ckey)
                frontier.append((ckey, depth + 1))

        for i in range(1, len(s)):
            if s[i] == s[i + 1]:
                try:
                    family = bosonic_reproduce(point, i)
                except CriterionFailed as exc:
                    pop.diagnostics.append(f"{key} dir {i}: {exc}")
                    continue
                if _family_sibling_exists(pop, point, i, family):
                    continue
                for c in samples:
                    ys = list(point.ys)
                    ys[i - 1] = family.member(c)
                    _record(BethePoint(point.problem, s, ys), i, "bosonic", c)
            else:
                try:
                    child = fermionic_reproduce(point, i)
                except (CriterionFailed, DegenerateReproduction) as exc:
                    pop.diagnostics.append(f"{key} dir {i}: {exc}")
                    continue
                _record(child, i, "fermionic")
    return pop


def verify_r_invariance(pop: Population) -> bool:
    """Whether the population operator agrees across all nodes."""
    pts = pop.points()
    if not pts:
        raise InvalidInput("empty population")
    base = population_operator(pts[0])
    return all(population_operator(p).same_operator(base) for p in pts[1:])


def admissible_sites(point: BethePoint) -> list[int]:
    """Sites k (1-based) where the eigenvalue formula is well defined."""
    problem = point.problem
    if problem.points is None:
        raise InvalidInput("admissibility needs rational evaluation points")
    s = point.parity
    ts = point.ts()
    out = []
    for k, z in enumerate(problem.points, start=1):
        ok = True
        for i in range(1, len(s)):
            rp = ratio_poly(ts, s, i)
            if rp.degree > 0 and rp(z) == 0 and point.y(i)(z) == 0:
                ok = False
                break
        if ok:
            out.append(k)
    return out


def gaudin_eigenvalue(point: BethePoint, k: int) -> Fraction:
    """Quadratic-Hamiltonian eigenvalue at site k from the tuple.

    Root sums enter through logarithmic derivatives of the y-entries, so
    no root extraction is needed.
    """
    problem = point.problem
    if problem.points is None:
        raise InvalidInput("eigenvalues need rational evaluation points")
    if k not in admissible_sites(point):
        raise NotAdmissible(k)
    s = point.parity
    zs = problem.points
    coords = [w.coords_at(s) for w in problem.weights]
    eps = [w.eps_at(s) for w in problem.weights]
    zk = zs[k - 1]
    total = Q(0)
    for r, zr in enumerate(zs, start=1):
        if r != k:
            total += pair_eps(eps[k - 1], eps[r - 1], problem.m) / (zk - zr)
    for i in range(1, len(s)):
        pairing = pair_weight_alpha(coords[k - 1], s, i)
        if pairing == 0:
            continue
        yi = point.y(i)
        if yi.degree == 0:
            continue
        if yi(zk) == 0:
            raise NotAdmissible(k)
        total -= pairing * yi.derivative()(zk) / yi(zk)
    return total


def gaudin_eigenvalues(point: BethePoint) -> list[Fraction]:
    return [gaudin_eigenvalue(point, k) for k in range(1, point.problem.n_points + 1)]


def eigenvalue_conservation(pop: Population) -> bool:
    """Eigenvalue equality across every edge, at mutually admissible sites."""
    for edge in pop.edges:
        a = pop.nodes[edge.source]
        b = pop.nodes[edge.target]
        shared = set(admissible_sites(a)) & set(admissible_sites(b))
        for k in sorted(shared):
            if gaudin_eigenvalue(a, k) != gaudin_eigenvalue(b, k):
                return False
    return True
