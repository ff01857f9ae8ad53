"""Graded spaces of rational functions, superflags and the generating map.

The even part is the kernel of the numerator operator of the population
fraction, the odd part the kernel of its denominator.  Exponent data is
collected per *place* (a monic squarefree irreducible-over-the-data
polynomial), so conjugate irrational ramification points, such as roots of
unity, are handled exactly through their minimal polynomials.
"""

from __future__ import annotations

from itertools import combinations

from .bethe import BethePoint, Population, population_factorization
from .errors import (
    AtypicalUnsupported,
    InternalInconsistency,
    InvalidFlag,
    InvalidInput,
    TheoremViolation,
    UnsupportedIrrationalRamification,
)
from .linalg import rank
from .rational import (
    Poly,
    Q,
    RatFun,
    coprime_basis,
    log_deriv,
    order_at_place,
    poly_gcd,
    poly_lcm,
    qq,
    wronskian,
)
from .skew import CompleteFactorization, DiffOp, rational_kernel, refactor_to_parity
from .weights import ParitySequence, collision_poly


def _as_place(place) -> Poly:
    if isinstance(place, Poly):
        return place.monic()
    return Poly((-qq(place), 1))


def exponents(basis, place) -> list[int]:
    """Strictly increasing vanishing orders a space realizes at a place.

    Uses the subset-Wronskian characterization: the minimum over k-subsets
    of a basis of (order of the subset Wronskian) equals e_1+...+e_k minus
    the staircase correction, which pins the exponents one by one without
    leaving exact rational arithmetic.
    """
    place = _as_place(place)
    basis = [f if isinstance(f, RatFun) else RatFun(f) for f in basis]
    if not basis:
        raise InvalidInput("exponents of the empty space")
    d = len(basis)
    mins = [0] * (d + 1)
    for k in range(1, d + 1):
        best = None
        for subset in combinations(basis, k):
            w = wronskian(subset)
            if w.is_zero():
                raise InvalidFlag("dependent basis in exponent computation")
            o = order_at_place(w, place)
            if best is None or o < best:
                best = o
        mins[k] = best
    out = []
    for k in range(1, d + 1):
        out.append(mins[k] - mins[k - 1] + (k - 1))
    if any(out[i] >= out[i + 1] for i in range(d - 1)):
        raise UnsupportedIrrationalRamification(
            f"inconsistent exponent ladder at place {place.to_str()}"
        )
    return out


class RationalSpace:
    """Even/odd pair of rational-function bases, with optional problem data."""

    def __init__(self, vbasis, ubasis, problem=None):
        self.vbasis = tuple(f if isinstance(f, RatFun) else RatFun(f) for f in vbasis)
        self.ubasis = tuple(f if isinstance(f, RatFun) else RatFun(f) for f in ubasis)
        self.problem = problem

    @property
    def m(self) -> int:
        return len(self.vbasis)

    @property
    def n(self) -> int:
        return len(self.ubasis)

    def __repr__(self):
        return f"RationalSpace({self.m}|{self.n})"


def detect_places(space: RationalSpace, extra=()) -> list[Poly]:
    """Coprime places where exponent data can be nontrivial.

    Every subset Wronskian of each graded part (and every even/odd pair
    Wronskian) seeds the refinement, so each resulting place carries one
    uniform exponent ladder.
    """
    polys = []
    for basis in (space.vbasis, space.ubasis):
        for k in range(1, len(basis) + 1):
            for subset in combinations(basis, k):
                w = wronskian(subset)
                polys += [w.num, w.den]
    for v in space.vbasis:
        for u in space.ubasis:
            w = wronskian([v, u])
            if not w.is_zero():
                polys += [w.num, w.den]
    for e in extra:
        polys.append(_as_place(e))
    if space.problem is not None and space.problem.points is not None:
        for z in space.problem.points:
            polys.append(Poly((-z, 1)))
    return coprime_basis([p for p in polys if p.degree > 0])


def _exponent_table(basis, places):
    return {pl: exponents(basis, pl) for pl in places}


def _denominator_from_exponents(table, places) -> Poly:
    p = Poly.one()
    for pl in places:
        e1 = table[pl][0]
        if e1 < 0:
            p = p * pl ** (-e1)
    return p


def space_weight_polys(space: RationalSpace, extra_places=()) -> list[Poly]:
    """The weight polynomials a graded space of rational functions carries.

    Entries follow the even-block/odd-block assembly: even entries are
    exponent staircases of the even part with the last one denominated
    through, the first odd entry is the denominator ratio, and the
    remaining odd entries carry the odd staircase.
    """
    m, n = space.m, space.n
    places = detect_places(space, extra_places)
    ev = _exponent_table(space.vbasis, places) if m else {}
    od = _exponent_table(space.ubasis, places) if n else {}
    pv = _denominator_from_exponents(ev, places) if m else Poly.one()
    pu = _denominator_from_exponents(od, places) if n else Poly.one()

    def tv(i: int) -> RatFun:  # 1-based even index
        out = RatFun.one()
        for pl in places:
            e = ev[pl][m - i] - (m - i)
            out = out * RatFun(pl) ** e
        return out

    def tu(i: int) -> RatFun:  # 1-based odd index
        out = RatFun.one()
        for pl in places:
            e = -od[pl][i - 1] + (i - 1)
            out = out * RatFun(pl) ** e
        return out

    out: list[Poly] = []
    for i in range(1, m):
        out.append(tv(i).as_poly())
    if m:
        out.append((tv(m) * RatFun(pv)).as_poly())
    if n:
        ratio = RatFun(pu) / RatFun(pv)
        out.append(ratio.as_poly())
        for i in range(2, n + 1):
            out.append(tu(i).as_poly())
    return [p.monic() if not p.is_zero() else p for p in out]


def is_gl_space(space: RationalSpace, extra_places=()) -> tuple[bool, list[str]]:
    """The four equivalent membership conditions, with failure reports."""
    m, n = space.m, space.n
    places = detect_places(space, extra_places)
    ev = _exponent_table(space.vbasis, places) if m else {}
    od = _exponent_table(space.ubasis, places) if n else {}
    pv = _denominator_from_exponents(ev, places) if m else Poly.one()
    pu = _denominator_from_exponents(od, places) if n else Poly.one()
    failures = []
    ratio = RatFun(pu) / RatFun(pv)
    if not ratio.is_polynomial():
        failures.append("denominator ratio is not a polynomial")
    elif pv.degree > 0 and ratio.as_poly().degree > 0:
        if poly_gcd(ratio.as_poly(), pv).degree > 0:
            failures.append("denominator ratio shares a root with the even denominator")
    if m >= 2:
        vbar = [f * RatFun(pv) for f in space.vbasis]
        evbar = _exponent_table(vbar, places)
        t_m1 = RatFun.one()
        for pl in places:
            e = evbar[pl][1] - 1  # second exponent of the cleared even part
            t_m1 = t_m1 * RatFun(pl) ** e
        if not (t_m1 / RatFun(pv)).is_polynomial():
            failures.append("second even staircase entry not divisible by the denominator")
    if n:
        # last odd entry must be polynomial
        t_last = RatFun.one()
        for pl in places:
            e = -od[pl][n - 1] + (n - 1)
            t_last = t_last * RatFun(pl) ** e
        if not t_last.is_polynomial():
            failures.append("top odd exponent exceeds its staircase bound")
    if n >= 2:
        ubar = [f * RatFun(pu) for f in space.ubasis]
        odbar = _exponent_table(ubar, places)
        for i in range(2, n + 1):
            for pl in places:
                e = -odbar[pl][i - 1] + (i - 1)
                if e > 0 and (not ratio.is_polynomial() or order_at_place(ratio, pl) <= 0):
                    failures.append(
                        f"odd staircase zero at {pl.to_str()} not matched by the denominator ratio"
                    )
    if m and n and pv.degree > 0:
        for pl in places:
            if order_at_place(RatFun(pv), pl) <= 0:
                continue
            for v in space.vbasis:
                for u in space.ubasis:
                    w = wronskian([v, u]) * RatFun(pv)
                    if not w.is_zero() and order_at_place(w, pl) < 0:
                        failures.append(
                            f"pair Wronskian stays singular at {pl.to_str()}"
                        )
    return (not failures, failures)


class SuperFlag:
    """Ordered even and odd bases plus the parity interleaving them."""

    def __init__(self, parity: ParitySequence, vorder, uorder):
        self.parity = parity
        self.vorder = tuple(f if isinstance(f, RatFun) else RatFun(f) for f in vorder)
        self.uorder = tuple(f if isinstance(f, RatFun) else RatFun(f) for f in uorder)
        if parity.m != len(self.vorder) or parity.n != len(self.uorder):
            raise InvalidInput("flag sizes must match the parity sequence")

    def __repr__(self):
        return f"SuperFlag(parity={list(self.parity.entries)})"


def interleave_basis(parity: ParitySequence, vorder, uorder):
    """Homogeneous ordered basis: position i takes v_{s_i^+ +1} or u_{s_i^- +1}."""
    if len(vorder) != parity.m or len(uorder) != parity.n:
        raise InvalidInput("basis sizes must match the parity sequence")
    out = []
    for i in range(1, len(parity) + 1):
        if parity[i] == 1:
            out.append(vorder[parity.ones_after(i)])
        else:
            out.append(uorder[parity.minus_before(i)])
    return out


def flag_polynomial(space: RationalSpace, flag: SuperFlag, a: int, b: int) -> Poly:
    """Monic polynomial from the (a, b) partial Wronskian of a flag.

    The Wronskian of the first a even and first b odd flag members, cleared
    by the collision correction and the space's weight polynomials, is a
    polynomial whenever the space satisfies the membership conditions.
    """
    tw = space_weight_polys(space)
    m, n = space.m, space.n
    places = detect_places(space)
    ev = _exponent_table(space.vbasis, places) if m else {}
    pv = _denominator_from_exponents(ev, places) if m else Poly.one()
    w = wronskian(list(flag.vorder[:a]) + list(flag.uorder[:b])) if a + b else RatFun.one()
    if w.is_zero():
        raise InvalidFlag("dependent flag members")
    corr = collision_poly(tw, m, n, a, b)
    val = w * RatFun(corr) * RatFun(pv)
    for j in range(1, b + 1):
        val = val * RatFun(tw[m + j - 1])
    for j in range(0, a):
        val = val / RatFun(tw[m - 1 - j])
    if not val.is_polynomial():
        raise InternalInconsistency(f"flag polynomial is not polynomial at ({a},{b})")
    return val.as_poly().monic()


def generating_tuple(space: RationalSpace, flag: SuperFlag) -> tuple[Poly, ...]:
    """Monic tuple the generating map assigns to a superflag."""
    s = flag.parity
    out = []
    for i in range(1, len(s)):
        a = s.ones_after(i)
        b = s.minus_before(i)
        if s[i] == -1:
            b += 1
        out.append(flag_polynomial(space, flag, a, b))
    return tuple(out)


def generating_map(space: RationalSpace, flag: SuperFlag) -> BethePoint:
    if space.problem is None:
        raise InvalidInput("generating map into tuples needs problem data")
    return BethePoint(space.problem, flag.parity, generating_tuple(space, flag))


def flag_factorization(space: RationalSpace, flag: SuperFlag) -> CompleteFactorization:
    """Complete factorization attached to a superflag via Wronskian ratios."""
    s = flag.parity
    prims = []
    prev_cache: dict[tuple[int, int], RatFun] = {}

    def wr(a: int, b: int) -> RatFun:
        key = (a, b)
        if key not in prev_cache:
            fam = list(flag.vorder[:a]) + list(flag.uorder[:b])
            prev_cache[key] = wronskian(fam) if fam else RatFun.one()
        return prev_cache[key]

    for i in range(1, len(s) + 1):
        a = s.ones_after(i)
        b = s.minus_before(i)
        if s[i] == 1:
            num, den = wr(a + 1, b), wr(a, b)
        else:
            num, den = wr(a, b + 1), wr(a, b)
        if num.is_zero() or den.is_zero():
            raise InvalidFlag("dependent flag members")
        prims.append(num / den)
    return CompleteFactorization.from_primitives(s, prims)


def kernel_spaces(pop: Population) -> RationalSpace:
    """Even/odd kernels of the population fraction at a standard-parity node."""
    problem = pop.problem
    if not problem.typical():
        raise AtypicalUnsupported("kernel spaces need a typical weight sequence")
    std = None
    for p in pop.points():
        if p.parity.is_standard():
            std = p
            break
    if std is None:
        raise InvalidInput("population has no standard-parity node")
    fac = population_factorization(std)
    m, n = problem.m, problem.n
    prims = list(fac.primitives)
    d0 = DiffOp.one()
    for i in range(m):
        d0 = d0 * DiffOp.first_order(fac.coefficients[i])
    vbasis = rational_kernel(d0, prims[:m])
    if n:
        d1 = DiffOp.one()
        rev = list(reversed(prims[m:]))
        for g in rev:
            d1 = d1 * DiffOp.first_order(log_deriv(g))
        ubasis = rational_kernel(d1, rev)
    else:
        ubasis = []
    if len(vbasis) != m or len(ubasis) != n:
        raise InternalInconsistency("kernel dimension mismatch")
    _assert_direct_sum(vbasis, ubasis)
    return RationalSpace(vbasis, ubasis, problem=problem)


def _assert_direct_sum(vbasis, ubasis):
    fams = list(vbasis) + list(ubasis)
    den = Poly.one()
    for f in fams:
        den = poly_lcm(den, f.den)
    cleared = [(f * RatFun(den)).as_poly() for f in fams]
    width = max(p.degree for p in cleared) + 1
    rows = [list(p.coeffs) + [Q(0)] * (width - len(p.coeffs)) for p in cleared]
    if rank(rows) != len(fams):
        raise AtypicalUnsupported("even and odd kernels intersect")


def flag_from_factorization(space: RationalSpace, fac: CompleteFactorization) -> SuperFlag:
    """Reconstruct the flag whose Wronskian-ratio factorization is given.

    Transport to the standard parity, read the even flag off the kernel
    chain of the numerator factors and the odd flag off the reversed
    denominator factors, then reattach the original parity.
    """
    if fac.primitives is None:
        raise InvalidInput("flag reconstruction needs factor primitives")
    m, n = space.m, space.n
    std = refactor_to_parity(fac, ParitySequence.standard(m, n))
    prims = list(std.primitives)
    vorder = rational_kernel(None, prims[:m]) if m else []
    uorder = rational_kernel(None, list(reversed(prims[m:]))) if n else []
    return SuperFlag(fac.parity, vorder, uorder)


def verify_operator_to_population(pop: Population) -> dict:
    """Check the flag/factorization/tuple triangle on every node.

    For each node: rebuild the flag from its factorization, confirm the
    generating map returns the node, and confirm the flag factorization
    agrees with the node factorization both factorwise and as a fraction.
    Any mismatch raises :class:`TheoremViolation`.
    """
    space = kernel_spaces(pop)
    tw = space_weight_polys(space)
    expected = [t.monic() for t in pop.problem.ts_standard]
    report = {
        "space_polys_match": [p.monic() if p.degree >= 0 else p for p in tw] == expected,
        "nodes": [],
    }
    if not report["space_polys_match"]:
        raise TheoremViolation("space weight polynomials do not match the problem data")
    for point in pop.points():
        fac = population_factorization(point)
        flag = flag_from_factorization(space, fac)
        gen = generating_tuple(space, flag)
        if gen != point.ys:
            raise TheoremViolation(f"generating map mismatch at {point!r}")
        ffac = flag_factorization(space, flag)
        if ffac.coefficients != fac.coefficients:
            raise TheoremViolation(f"factorization mismatch at {point!r}")
        if not ffac.to_fraction().same_operator(fac.to_fraction()):
            raise TheoremViolation(f"fraction mismatch at {point!r}")
        report["nodes"].append({"parity": list(point.parity.entries), "matched": True})
    return report


def sampled_degree_bounds(space: RationalSpace, flags) -> list[int]:
    """Minimal generating-tuple degrees over the supplied flags.

    The true per-direction minimum ranges over the whole flag variety;
    this reports the minimum over the flags actually provided, which is an
    upper-bound certificate for it.
    """
    flags = list(flags)
    if not flags:
        raise InvalidInput("degree bounds need at least one flag")
    mins: list[int] | None = None
    for flag in flags:
        degs = [p.degree for p in generating_tuple(space, flag)]
        mins = degs if mins is None else [min(a, b) for a, b in zip(mins, degs)]
    return mins


def basis_change_invariance(basis, place, trials, rng) -> bool:
    """Exponent sets are invariant under random invertible recombination."""
    base = exponents(basis, place)
    d = len(basis)
    for _ in range(trials):
        mat = [[Q(rng.randint(-3, 3)) for _ in range(d)] for _ in range(d)]
        if rank(mat) != d:
            continue
        new_basis = []
        for row in mat:
            f = RatFun.zero()
            for c, b in zip(row, basis):
                f = f + RatFun(Poly.const(c)) * b
            new_basis.append(f)
        if exponents(new_basis, place) != base:
            return False
    return True
