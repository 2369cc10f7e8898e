"""Classical sl(2) coupling data over exact scalars.

Clebsch-Gordan coefficients in the Condon-Shortley convention, Racah W and 6j
coefficients, the triangle coefficient nabla used by the symplecton product
law, and the monomial basis of weight polynomials in two commuting variables.

All values are RadicalSum (a single term q*sqrt(r) for every individual
coefficient here), computed from the standard single-sum closed forms.
"""

from fractions import Fraction
from functools import lru_cache

from .scalar import HalfInt, RadicalSum, half_range, sqrt_fraction, weights


def fact(x):
    """Factorial of a nonnegative integer-valued HalfInt / int / Fraction."""
    if isinstance(x, HalfInt):
        n = x.as_int()
    else:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"factorial of non-integer {x}")
        n = int(f)
    if n < 0:
        raise ValueError(f"factorial of negative {n}")
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def triangle_ok(a, b, c):
    """Whether (a, b, c) can couple: |a-b| <= c <= a+b with integer perimeter."""
    a, b, c = HalfInt.of(a), HalfInt.of(b), HalfInt.of(c)
    if (a + b + c).twice % 2:
        return False
    return abs(a.twice - b.twice) <= c.twice <= a.twice + b.twice


def _delta2(a, b, c):
    """Square of the triangle factor: (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!."""
    return Fraction(fact(a + b - c) * fact(a - b + c) * fact(-a + b + c),
                    fact(a + b + c + 1))


@lru_cache(maxsize=None)
def _cgc_cached(j1t, j2t, jt, m1t, m2t):
    j1, j2, j = HalfInt(j1t), HalfInt(j2t), HalfInt(jt)
    m1, m2 = HalfInt(m1t), HalfInt(m2t)
    m = m1 + m2
    if not triangle_ok(j1, j2, j) or abs(m.twice) > j.twice:
        return RadicalSum.zero()
    if abs(m1.twice) > j1.twice or abs(m2.twice) > j2.twice:
        return RadicalSum.zero()
    if (j1 + m1).twice % 2 or (j2 + m2).twice % 2 or (j + m).twice % 2:
        return RadicalSum.zero()
    pre2 = Fraction(jt + 1) * _delta2(j1, j2, j) * (
        fact(j + m) * fact(j - m) * fact(j1 + m1) * fact(j1 - m1)
        * fact(j2 + m2) * fact(j2 - m2))
    total = Fraction(0)
    k = 0
    while True:
        d = [k,
             (j1 + j2 - j).as_int() - k,
             (j1 - m1).as_int() - k,
             (j2 + m2).as_int() - k,
             (j - j2 + m1).as_int() + k,
             (j - j1 - m2).as_int() + k]
        if d[1] < 0 or d[2] < 0 or d[3] < 0:
            break
        if all(x >= 0 for x in d):
            term = Fraction(1)
            for x in d:
                term /= fact(x)
            total += -term if k % 2 else term
        k += 1
        if k > (j1 + j2 + j).as_int() + 1:
            break
    return sqrt_fraction(pre2) * total


def cgc(j1, j2, j, m1, m2, m=None):
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | j, m1+m2>, Condon-Shortley."""
    j1, j2, j = HalfInt.of(j1), HalfInt.of(j2), HalfInt.of(j)
    m1, m2 = HalfInt.of(m1), HalfInt.of(m2)
    if m is not None and HalfInt.of(m) != m1 + m2:
        return RadicalSum.zero()
    return _cgc_cached(j1.twice, j2.twice, j.twice, m1.twice, m2.twice)


@lru_cache(maxsize=None)
def _sixj_cached(at, bt, ct, dt, et, ft):
    a, b, c = HalfInt(at), HalfInt(bt), HalfInt(ct)
    d, e, f = HalfInt(dt), HalfInt(et), HalfInt(ft)
    triads = [(a, b, c), (a, e, f), (d, b, f), (d, e, c)]
    if not all(triangle_ok(*t) for t in triads):
        return RadicalSum.zero()
    pre2 = Fraction(1)
    for t in triads:
        pre2 *= _delta2(*t)
    triad_sums = [(x + y + z).as_int() for x, y, z in triads]
    pair_sums = [(a + b + d + e).as_int(), (b + c + e + f).as_int(),
                 (c + a + f + d).as_int()]
    total = Fraction(0)
    for t in range(max(triad_sums), min(pair_sums) + 1):
        term = Fraction(fact(t + 1))
        for s in triad_sums:
            term /= fact(t - s)
        for s in pair_sums:
            term /= fact(s - t)
        total += -term if t % 2 else term
    return sqrt_fraction(pre2) * total


def sixj(a, b, c, d, e, f):
    """Wigner 6j symbol {a b c; d e f}."""
    vals = [HalfInt.of(x) for x in (a, b, c, d, e, f)]
    return _sixj_cached(*(v.twice for v in vals))


def racah_w(a, b, c, d, e, f):
    """Racah coefficient W(abcd; ef) = (-1)^(a+b+c+d) {a b e; d c f}."""
    a, b, c, d = HalfInt.of(a), HalfInt.of(b), HalfInt.of(c), HalfInt.of(d)
    sign = -1 if (a + b + c + d).as_int() % 2 else 1
    return sixj(a, b, e, d, c, f) * sign


def nabla(a, b, c):
    """Triangle coefficient sqrt((a+b+c+1)! / ((a+b-c)!(a-b+c)!(-a+b+c)!))."""
    a, b, c = HalfInt.of(a), HalfInt.of(b), HalfInt.of(c)
    if not triangle_ok(a, b, c):
        return RadicalSum.zero()
    return sqrt_fraction(Fraction(1) / _delta2(a, b, c))


def bracket_coeff(k, j, jp):
    """Reduced product coefficient 2^(k-j-j') (2k+1)^(-1/2) nabla(k, j, j')."""
    k, j, jp = HalfInt.of(k), HalfInt.of(j), HalfInt.of(jp)
    if not triangle_ok(k, j, jp):
        return RadicalSum.zero()
    two_pow = Fraction(2) ** (k - j - jp).as_int()
    return nabla(k, j, jp) * sqrt_fraction(Fraction(1, k.twice + 1)) * two_pow


class PhiPoly:
    """Commutative polynomial in two variables xi, eta with RadicalSum coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if not isinstance(c, RadicalSum):
                    c = RadicalSum.from_rational(c)
                if not c.is_zero():
                    self.terms[key] = c

    @staticmethod
    def zero():
        return PhiPoly()

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, RadicalSum.zero()) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return PhiPoly(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        out = {}
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                key = (p1 + p2, q1 + q2)
                s = out.get(key, RadicalSum.zero()) + c1 * c2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return PhiPoly(out)

    def scale(self, c):
        if not isinstance(c, RadicalSum):
            c = RadicalSum.from_rational(c)
        return PhiPoly({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, PhiPoly) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (p, q) in sorted(self.terms, reverse=True):
            c = str(self.terms[(p, q)])
            if " " in c:
                c = f"({c})"
            mono = "*".join(s for s, e in (("xi", p), ("eta", q)) if e
                            for s in [s if e == 1 else f"{s}^{e}"])
            if not mono:
                parts.append(c)
            else:
                parts.append(mono if c == "1" else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def phi_basis(j, m):
    """Normalized weight monomial xi^(j+m) eta^(j-m) / sqrt((j+m)!(j-m)!)."""
    j, m = HalfInt.of(j), HalfInt.of(m)
    p, q = (j + m).as_int(), (j - m).as_int()
    if p < 0 or q < 0:
        raise ValueError(f"|m| > j: j={j}, m={m}")
    return PhiPoly({(p, q): sqrt_fraction(Fraction(1, fact(p) * fact(q)))})


def verify_racah_identity(a, b, c, e):
    """Check the recoupling of three spins against Racah W, exactly.

    For every admissible intermediate spin d and all magnetic labels, the
    double-coupling through d must expand in the cross-couplings through f
    with coefficients sqrt((2d+1)(2f+1)) W(a, b, e, c; d, f).  Returns
    (ok, ncases) where ncases counts the (d, alpha, beta, gamma) tuples.
    """
    a, b, c, e = HalfInt.of(a), HalfInt.of(b), HalfInt.of(c), HalfInt.of(e)
    ncases = 0
    ds = [d for d in half_range(HalfInt(abs(a.twice - b.twice)), a + b)
          if triangle_ok(d, c, e)]
    fs = [f for f in half_range(HalfInt(abs(b.twice - c.twice)), b + c)
          if triangle_ok(a, f, e)]
    for d in ds:
        for alpha in weights(a):
            for beta in weights(b):
                for gamma in weights(c):
                    eps = alpha + beta + gamma
                    if abs(eps.twice) > e.twice:
                        continue
                    delta = alpha + beta
                    lhs = cgc(d, c, e, delta, gamma) * cgc(a, b, d, alpha, beta)
                    rhs = RadicalSum.zero()
                    for f in fs:
                        rho = beta + gamma
                        w = racah_w(a, b, e, c, d, f)
                        dim = sqrt_fraction(Fraction((d.twice + 1) * (f.twice + 1)))
                        rhs = rhs + (cgc(a, f, e, alpha, rho)
                                     * cgc(b, c, f, beta, gamma) * dim * w)
                    if lhs != rhs:
                        return False, ncases
                    ncases += 1
    return True, ncases
