"""Exact scalars, dense univariate polynomials and reduced rational functions.

Scalars are :class:`fractions.Fraction` throughout; nothing in the engine
ever rounds.  Polynomials are dense coefficient tuples in ascending degree
with trailing zeros trimmed, so the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import (
    DegenerateInput,
    InternalInconsistency,
    NonRationalAntiderivative,
    UnsupportedFactorization,
)

Q = Fraction


def qq(value) -> Fraction:
    """Coerce ints, strings like ``p/q`` and Fractions to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


class Poly:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [qq(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def const(c) -> "Poly":
        return Poly((qq(c),))

    @staticmethod
    def x() -> "Poly":
        return Poly((0, 1))

    @staticmethod
    def from_roots(roots) -> "Poly":
        p = Poly.one()
        for r in roots:
            p = p * Poly((-qq(r), 1))
        return p

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Q(0)
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Q(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({self.to_str()})"

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c == 0:
                continue
            if k == 0:
                term = str(c)
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                sign = "-" if c < 0 else ""
                term = f"{sign}{mag}{var}" + (f"^{k}" if k > 1 else "")
                if c < 0 and parts:
                    term = term[1:]
            if parts:
                parts.append(" - " if c < 0 and k > 0 else " + " if k > 0 else (" - " if c < 0 else " + "))
                parts.append(term if k > 0 else str(abs(c)))
            else:
                parts.append(term)
        return "".join(parts)

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly.zero()
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise DegenerateInput("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lcb = other.lc
        quot = [Q(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lcb
            quot[k - dq] = f
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= f * b
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def try_exact_div(self, other):
        """Quotient when ``other`` divides exactly, else None."""
        q, r = divmod(self, other)
        if not r.is_zero():
            return None
        return q

    def exact_div(self, other) -> "Poly":
        q = self.try_exact_div(other)
        if q is None:
            raise InternalInconsistency(
                f"expected exact division: ({self.to_str()}) / ({_as_poly(other).to_str()})"
            )
        return q

    # -- calculus and normal forms --------------------------------------

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def nth_derivative(self, n: int) -> "Poly":
        p = self
        for _ in range(n):
            p = p.derivative()
        return p

    def monic(self) -> "Poly":
        if self.is_zero():
            raise DegenerateInput("the zero polynomial has no monic form")
        if self.lc == 1:
            return self
        return self * (1 / self.lc)

    def __call__(self, z) -> Fraction:
        z = qq(z)
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    raise TypeError(f"not a polynomial: {value!r}")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    a, b = _as_poly(a), _as_poly(b)
    if a.is_zero() and b.is_zero():
        raise DegenerateInput("gcd of two zero polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly.zero()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def radical(f: Poly) -> Poly:
    """Monic squarefree polynomial with the same root set as ``f``."""
    f = _as_poly(f)
    if f.is_zero():
        raise DegenerateInput("radical of the zero polynomial")
    if f.degree == 0:
        return Poly.one()
    return f.exact_div(poly_gcd(f, f.derivative())).monic()


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree parts with multiplicities, f = lc * prod g_i^i."""
    f = _as_poly(f)
    if f.is_zero():
        raise DegenerateInput("squarefree decomposition of zero")
    f = f.monic()
    out = []
    i = 1
    while f.degree > 0:
        g = poly_gcd(f, f.derivative())
        part = f.exact_div(g)
        f = g
        # part = product of squarefree factors of multiplicity >= i
        nxt = poly_gcd(part, f) if f.degree > 0 else Poly.one()
        factor = part.exact_div(nxt)
        if factor.degree > 0:
            out.append((factor.monic(), i))
        i += 1
    return out


def multiplicity(f: Poly, q: Poly) -> int:
    """Exact multiplicity of the factor q in f (f nonzero, deg q >= 1)."""
    if f.is_zero():
        raise DegenerateInput("multiplicity in the zero polynomial")
    if q.degree < 1:
        raise DegenerateInput("multiplicity of a constant factor")
    count = 0
    while True:
        g = f.try_exact_div(q)
        if g is None:
            return count
        f = g
        count += 1


def coprime_basis(polys) -> list[Poly]:
    """Pairwise-coprime squarefree monic polynomials refining the inputs.

    Every nonconstant input is a product of powers of basis elements (up to
    a constant), and roots of a basis element share the same multiplicity
    in every input.  Seeding the refinement with the squarefree parts, one
    per multiplicity class, is what guarantees the second property; the
    plain radical would merge roots of unequal multiplicity.
    """
    work = []
    for p in polys:
        p = _as_poly(p)
        if p.is_zero() or p.degree < 1:
            continue
        for part, _mult in squarefree_decomposition(p):
            work.append(part)
    basis: list[Poly] = []
    while work:
        p = work.pop()
        if p.degree < 1:
            continue
        for i, b in enumerate(basis):
            g = poly_gcd(p, b)
            if g.degree > 0:
                if g.degree < b.degree:
                    basis[i] = g
                    work.append(b.exact_div(g).monic())
                rest = p.exact_div(g)
                if rest.degree > 0:
                    work.append(rest.monic())
                break
        else:
            basis.append(p)
            continue
    return sorted(set(basis), key=lambda b: (b.degree, b.coeffs))


def rational_roots(f: Poly) -> tuple[list[tuple[Fraction, int]], Poly]:
    """All rational roots with multiplicities plus the root-free remainder."""
    f = _as_poly(f)
    if f.is_zero():
        raise DegenerateInput("roots of the zero polynomial")
    roots: list[tuple[Fraction, int]] = []
    # pull out x^k first
    k = 0
    while f.coeff(0) == 0 and f.degree > 0:
        f = Poly(f.coeffs[1:])
        k += 1
    if k:
        roots.append((Q(0), k))
    if f.degree == 0:
        return roots, f
    den_lcm = 1
    for c in f.coeffs:
        den_lcm = den_lcm * c.denominator // _gcd_int(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in f.coeffs]
    a0, an = abs(ints[0]), abs(ints[-1])
    cands = set()
    for p in _divisors(a0):
        for q in _divisors(an):
            cands.add(Q(p, q))
            cands.add(Q(-p, q))
    for r in sorted(cands):
        m = 0
        while f.degree > 0 and f(r) == 0:
            f = f.exact_div(Poly((-r, 1)))
            m += 1
        if m:
            roots.append((r, m))
    return roots, f


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) if a else 1


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def factor_rational_quadratic(f: Poly) -> list[tuple[Poly, int]]:
    """Factor into monic irreducibles, allowing quadratic irrational factors.

    Anything leaving an irreducible remainder of degree >= 3 raises
    :class:`UnsupportedFactorization`.
    """
    f = _as_poly(f)
    if f.is_zero():
        raise DegenerateInput("factorization of the zero polynomial")
    factors: list[tuple[Poly, int]] = []
    roots, rem = rational_roots(f.monic())
    for r, m in roots:
        factors.append((Poly((-r, 1)), m))
    if rem.degree > 0:
        for part, mult in squarefree_decomposition(rem):
            if part.degree > 2:
                raise UnsupportedFactorization(
                    f"irreducible factor of degree {part.degree}: {part.to_str()}"
                )
            factors.append((part.monic(), mult))
    return sorted(factors, key=lambda t: (t[0].degree, t[0].coeffs))


class RatFun:
    """Reduced fraction of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=Poly.one()):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise DegenerateInput("zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", Poly.zero())
            object.__setattr__(self, "den", Poly.one())
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @staticmethod
    def const(c) -> "RatFun":
        return RatFun(Poly.const(c))

    @staticmethod
    def zero() -> "RatFun":
        return RatFun(Poly.zero())

    @staticmethod
    def one() -> "RatFun":
        return RatFun(Poly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise InternalInconsistency(f"not a polynomial: {self!r}")
        return self.num

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _as_ratfun_or_none(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFun", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        if self.is_polynomial():
            return f"RatFun({self.num.to_str()})"
        return f"RatFun(({self.num.to_str()})/({self.den.to_str()}))"

    def __add__(self, other):
        other = _as_ratfun(other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_ratfun(other))

    def __rsub__(self, other):
        return _as_ratfun(other) - self

    def __mul__(self, other):
        other = _as_ratfun(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other.is_zero():
            raise DegenerateInput("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_ratfun(other) / self

    def __pow__(self, n: int):
        if n >= 0:
            return RatFun(self.num**n, self.den**n)
        if self.is_zero():
            raise DegenerateInput("negative power of zero")
        return RatFun(self.den ** (-n), self.num ** (-n))

    def derivative(self) -> "RatFun":
        return RatFun(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def nth_derivative(self, n: int) -> "RatFun":
        f = self
        for _ in range(n):
            f = f.derivative()
        return f

    def __call__(self, z) -> Fraction:
        z = qq(z)
        d = self.den(z)
        if d == 0:
            raise DegenerateInput(f"pole at {z}")
        return self.num(z) / d


def _as_ratfun(value) -> RatFun:
    f = _as_ratfun_or_none(value)
    if f is None:
        raise TypeError(f"not a rational function: {value!r}")
    return f


def _as_ratfun_or_none(value):
    if isinstance(value, RatFun):
        return value
    if isinstance(value, Poly):
        return RatFun(value)
    if isinstance(value, (int, Fraction)):
        return RatFun(Poly.const(value))
    return None


def log_deriv(f) -> RatFun:
    """Logarithmic derivative f'/f in reduced form."""
    f = _as_ratfun(f)
    if f.is_zero():
        raise DegenerateInput("logarithmic derivative of zero")
    return f.derivative() / f


def wronskian(fs) -> RatFun:
    """Determinant of the derivative matrix (f_j^(i-1))_{i,j}."""
    fs = [_as_ratfun(f) for f in fs]
    if not fs:
        raise DegenerateInput("Wronskian of an empty family")
    r = len(fs)
    rows = [list(fs)]
    for _ in range(r - 1):
        rows.append([f.derivative() for f in rows[-1]])
    # Gaussian elimination over the rational-function field
    det = RatFun.one()
    mat = [row[:] for row in rows]
    for col in range(r):
        piv = None
        for i in range(col, r):
            if not mat[i][col].is_zero():
                piv = i
                break
        if piv is None:
            return RatFun.zero()
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det = det * mat[col][col]
        inv = RatFun.one() / mat[col][col]
        for i in range(col + 1, r):
            if mat[i][col].is_zero():
                continue
            factor = mat[i][col] * inv
            for j in range(col, r):
                mat[i][j] = mat[i][j] - factor * mat[col][j]
    return det


def zero_pole_radical(f) -> Poly:
    """Monic polynomial with simple roots exactly at the zeros and poles of f.

    This is the minimal monic denominator of the logarithmic derivative.
    """
    f = _as_ratfun(f)
    if f.is_zero():
        raise DegenerateInput("zero/pole support of zero")
    prod = f.num * f.den
    if prod.degree == 0:
        return Poly.one()
    return radical(prod)


def order_at(f, z) -> int:
    """Order of vanishing of f at z; negative for a pole."""
    f = _as_ratfun(f)
    if f.is_zero():
        raise DegenerateInput("order of the zero function")
    lin = Poly((-qq(z), 1))
    return multiplicity(f.num, lin) - multiplicity(f.den, lin)


def order_at_place(f, place: Poly) -> int:
    """Order of f along an irreducible place (a monic squarefree factor)."""
    f = _as_ratfun(f)
    if f.is_zero():
        raise DegenerateInput("order of the zero function")
    return multiplicity(f.num, place) - multiplicity(f.den, place)


def _poly_antiderivative(p: Poly) -> Poly:
    return Poly([Q(0)] + [c / (k + 1) for k, c in enumerate(p.coeffs)])


def rational_antiderivative(f) -> RatFun:
    """Rational g with g' = f, integration constant fixed to 0.

    Found by undetermined coefficients: the denominator ansatz lowers each
    squarefree multiplicity of den(f) by one; a surviving simple-pole part
    means the antiderivative has a logarithm and
    :class:`NonRationalAntiderivative` is raised.
    """
    f = _as_ratfun(f)
    if f.is_zero():
        return RatFun.zero()
    whole, rem = divmod(f.num, f.den)
    result = RatFun(_poly_antiderivative(whole))
    if rem.is_zero():
        out = result
    else:
        den = f.den
        b = Poly.one()
        for part, mult in squarefree_decomposition(den):
            b = b * part ** (mult - 1)
        if b.degree == 0:
            raise NonRationalAntiderivative(f"simple poles only: {f!r}")
        dmax = b.degree - 1
        # unknowns a_0..a_dmax in a/b with (a' b - a b') * den == rem * b^2
        bq = b * den
        bpq = b.derivative() * den
        rhs = rem * b * b
        ncols = dmax + 1
        deg_bound = max(bq.degree + max(dmax - 1, 0), bpq.degree + dmax, rhs.degree)
        rows = []
        rvec = []
        for k in range(deg_bound + 1):
            row = []
            for j in range(ncols):
                c = Q(0)
                # coefficient of x^k in (x^j)' * bq  =  j * bq[k - j + 1]
                if j >= 1:
                    c += j * bq.coeff(k - j + 1)
                # minus coefficient of x^k in x^j * bpq
                c -= bpq.coeff(k - j)
                row.append(c)
            rows.append(row)
            rvec.append(rhs.coeff(k))
        from .linalg import solve_linear

        sol, _null = solve_linear(rows, rvec)
        if sol is None:
            raise NonRationalAntiderivative(f"logarithmic part present: {f!r}")
        a = Poly(sol)
        out = result + RatFun(a, b)
    if out.derivative() != f:
        raise InternalInconsistency("antiderivative verification failed")
    return out


def binomial(n: int, k: int) -> int:
    if k < 0:
        return 0
    return comb(n, k)
