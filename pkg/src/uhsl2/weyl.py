"""The Weyl algebra [abar, a] = 1 and its h-deformed oscillator partner.

Two presentations of the same algebra:

  WeylElement  normal-ordered polynomials sum c_{pq} a^p abar^q with the
               undeformed relation abar a = a abar + 1.
  OscElement   normal-ordered polynomials in the dressed pair
               A = a exp(s/2), Abar = abar exp(-s/2) with
               [Abar, A] = 1 - h A^2, where s = -log(1 + h a^2).

Coefficients are HSeries, so every computation is exact modulo h^(order+1).
The twist exponentials exp(m*s) are (1 + h a^2)^(-m) on the Weyl side and
(1 - h A^2)^m on the oscillator side; both are computed from the generalized
binomial series and agree under the conversion maps below.
"""

from fractions import Fraction
from functools import lru_cache

from .scalar import HalfInt, HSeries, RadicalSum, sqrt_fraction, weights
from .su2data import fact


def _as_series(c, order):
    if isinstance(c, HSeries):
        if c.order != order:
            raise ValueError(f"coefficient order {c.order} != element order {order}")
        return c
    return HSeries.constant(c, order)


def _gen_binom(alpha, k):
    """Generalized binomial coefficient alpha*(alpha-1)*...*(alpha-k+1)/k!."""
    alpha = Fraction(alpha)
    out = Fraction(1)
    for i in range(k):
        out *= alpha - i
    return out / fact(k)


def _scalar_of(m):
    if isinstance(m, HalfInt):
        return m.as_fraction()
    return Fraction(m)


class _NormalPoly:
    """Shared machinery for normal-ordered two-generator polynomials."""

    __slots__ = ("terms", "order")

    def __init__(self, terms, order):
        self.order = order
        self.terms = {}
        for key, c in (terms or {}).items():
            c = _as_series(c, order)
            if not c.is_zero():
                self.terms[key] = c

    @classmethod
    def zero(cls, order):
        return cls({}, order)

    @classmethod
    def one(cls, order):
        return cls({(0, 0): HSeries.one(order)}, order)

    @classmethod
    def monomial(cls, p, q, order, coeff=1):
        return cls({(p, q): _as_series(coeff, order)}, order)

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if not isinstance(other, type(self)):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.order != other.order:
            raise ValueError(f"order mismatch {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, RadicalSum, HSeries)):
            other = type(self).monomial(0, 0, self.order, other)
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return type(self)(out, self.order)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, RadicalSum, HSeries)):
            other = type(self).monomial(0, 0, self.order, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _as_series(c, self.order)
        return type(self)({k: v * c for k, v in self.terms.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RadicalSum, HSeries)):
            return self.scale(other)
        self._check(other)
        out = {}
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                c12 = c1 * c2
                if c12.is_zero():
                    continue
                for (p, q), extra in self._reorder_terms(p1, q1, p2, q2):
                    c = _resolve_extra(c12, extra)
                    if c.is_zero():
                        continue
                    s = out.get((p, q))
                    s = c if s is None else s + c
                    out[(p, q)] = s
        return type(self)(out, self.order)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RadicalSum, HSeries)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"bad power {n}")
        out = type(self).one(self.order)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def commutator(self, other):
        return self * other - other * self

    def truncate(self, new_order):
        return type(self)({k: c.truncate(new_order) for k, c in self.terms.items()},
                          new_order)

    def max_degree(self):
        return max((p + q for p, q in self.terms), default=None)

    def coeff(self, p, q):
        return self.terms.get((p, q), HSeries.zero(self.order))

    def _str_names(self):
        raise NotImplementedError

    def __str__(self):
        if not self.terms:
            return "0"
        na, nb = self._str_names()
        parts = []
        for (p, q) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(p, q)]
            if all(x.is_zero() for x in c.coeffs[1:]):
                body = str(c.coeffs[0])
            else:
                body = str(c).split(" (mod")[0]
            cs = f"({body})" if " " in body else body
            mono = "*".join(n if e == 1 else f"{n}^{e}"
                            for n, e in ((na, p), (nb, q)) if e)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self):
        na, nb = self._str_names()
        return {"vars": [na, nb], "order": self.order,
                "terms": [{"powers": [p, q], "coeff": c.to_json()}
                          for (p, q), c in sorted(self.terms.items())]}


class WeylElement(_NormalPoly):
    """Normal-ordered element of the Weyl algebra, abar a = a abar + 1."""

    @staticmethod
    def _reorder_terms(p1, q1, p2, q2):
        # abar^q a^p = sum_k k! C(q,k) C(p,k) a^(p-k) abar^(q-k)
        out = []
        for k in range(min(q1, p2) + 1):
            extra = fact(k) * _gen_binom(q1, k) * _gen_binom(p2, k)
            out.append(((p1 + p2 - k, q1 + q2 - k),
                        None if extra == 1 else Fraction(extra)))
        return out

    def _str_names(self):
        return "a", "abar"


class OscElement(_NormalPoly):
    """Normal-ordered element of the deformed oscillator, [Abar, A] = 1 - h A^2."""

    def _str_names(self):
        return "A", "Abar"

    @staticmethod
    def _reorder_terms(p1, q1, p2, q2):
        out = []
        for (p, q, t), coeff in _osc_reorder(q1, p2).items():
            out.append(((p1 + p, q + q2), _h_monomial(t, coeff)))
        return out

    def substitute_abar(self, shift):
        """Apply the algebra map A -> A, Abar -> Abar + shift*A (shift a scalar series)."""
        shift = _as_series(shift, self.order)
        lin = OscElement({(0, 1): HSeries.one(self.order), (1, 0): shift}, self.order)
        out = OscElement.zero(self.order)
        for (p, q), c in self.terms.items():
            out = out + (OscElement.monomial(p, 0, self.order) * lin ** q).scale(c)
        return out


class _HMono:
    """Lazy h^t * coeff marker, resolved against the element order at use."""
    __slots__ = ("t", "coeff")

    def __init__(self, t, coeff):
        self.t, self.coeff = t, coeff


def _h_monomial(t, coeff):
    return _HMono(t, coeff)


def _resolve_extra(c12, extra):
    """Multiply a coefficient by a reorder factor (None, Fraction, or h-monomial)."""
    if extra is None:
        return c12
    if isinstance(extra, _HMono):
        if extra.t > c12.order:
            return HSeries.zero(c12.order)
        return c12 * HSeries.h_power(extra.t, c12.order, extra.coeff)
    return c12 * extra


@lru_cache(maxsize=None)
def _osc_reorder(q, p):
    """Normal ordering of Abar^q A^p, as {(p', q', hpower): Fraction}.

    Uses [Abar, A^p] = p A^(p-1) (1 - h A^2), i.e.
    Abar A^p = A^p Abar + p A^(p-1) - p h A^(p+1).
    """
    if q == 0 or p == 0:
        return {(p, q, 0): Fraction(1)}
    prev = _osc_reorder(q - 1, p)
    out = {}

    def put(key, val):
        out[key] = out.get(key, Fraction(0)) + val
        if not out[key]:
            del out[key]

    for (pp, qq, t), c in prev.items():
        put((pp, qq + 1, t), c)
    for (pp, qq, t), c in _osc_reorder(q - 1, p - 1).items():
        put((pp, qq, t), c * p)
    for (pp, qq, t), c in _osc_reorder(q - 1, p + 1).items():
        put((pp, qq, t + 1), -c * p)
    return out


def weyl_multiply(x, y):
    """Product of two Weyl-algebra elements (also available as x * y)."""
    return x * y


def weyl_commutator(x, y):
    return x * y - y * x


def a_gen(order):
    return WeylElement.monomial(1, 0, order)


def abar_gen(order):
    return WeylElement.monomial(0, 1, order)


def j_plus(order):
    """Raising generator, -a^2/2."""
    return WeylElement.monomial(2, 0, order, Fraction(-1, 2))


def j_minus(order):
    """Lowering generator, abar^2/2."""
    return WeylElement.monomial(0, 2, order, Fraction(1, 2))


def j_zero(order):
    """Weight generator, (a abar + abar a)/2 = a abar + 1/2."""
    return WeylElement({(1, 1): HSeries.one(order),
                        (0, 0): HSeries.constant(Fraction(1, 2), order)}, order)


def sigma_weyl(order):
    """The nilpotent-free twist exponent s = -log(1 + h a^2) as a series."""
    terms = {}
    for k in range(1, order + 1):
        sign = Fraction(-1, k) if k % 2 else Fraction(1, k)
        terms[(2 * k, 0)] = HSeries.h_power(k, order, sign)
    return WeylElement(terms, order)


def exp_m_sigma(m, order):
    """exp(m*s) = (1 + h a^2)^(-m) in the Weyl presentation."""
    alpha = -_scalar_of(m)
    terms = {}
    for k in range(order + 1):
        c = _gen_binom(alpha, k)
        if c:
            terms[(2 * k, 0)] = HSeries.h_power(k, order, c)
    return WeylElement(terms, order)


def exp_m_sigma_osc(m, order):
    """exp(m*s) = (1 - h A^2)^m in the oscillator presentation."""
    alpha = _scalar_of(m)
    terms = {}
    for k in range(order + 1):
        c = _gen_binom(alpha, k) * (-1) ** k
        if c:
            terms[(2 * k, 0)] = HSeries.h_power(k, order, c)
    return OscElement(terms, order)


def to_oscillator(w):
    """Rewrite a Weyl element in the dressed generators A, Abar.

    The inverse dressing is a = A exp(-s/2), abar = Abar exp(s/2), and
    exp(alpha*s) commutes with A, so a^p = A^p exp(-p s/2).
    """
    order = w.order
    dressed_abar = OscElement.monomial(0, 1, order) * exp_m_sigma_osc(Fraction(1, 2), order)
    out = OscElement.zero(order)
    for (p, q), c in sorted(w.terms.items()):
        piece = OscElement.monomial(p, 0, order) * exp_m_sigma_osc(Fraction(-p, 2), order)
        piece = piece * dressed_abar ** q
        out = out + piece.scale(c)
    return out


def from_oscillator(o):
    """Rewrite an oscillator element back in the plain Weyl generators."""
    order = o.order
    dressed_abar = WeylElement.monomial(0, 1, order) * exp_m_sigma(Fraction(-1, 2), order)
    out = WeylElement.zero(order)
    for (p, q), c in sorted(o.terms.items()):
        piece = WeylElement.monomial(p, 0, order) * exp_m_sigma(Fraction(p, 2), order)
        piece = piece * dressed_abar ** q
        out = out + piece.scale(c)
    return out


@lru_cache(maxsize=None)
def _classical_coeffs(jt, mt, form):
    """Normal-form coefficients {(p, q): RadicalSum} of the classical polynomial."""
    j, m = HalfInt(jt), HalfInt(mt)
    jp, jm = (j + m).as_int(), (j - m).as_int()
    if jp < 0 or jm < 0:
        raise ValueError(f"|m| > j: j={j}, m={m}")
    order = 0
    if form == "A":
        pre = sqrt_fraction(Fraction(fact(2 * j) * fact(jm), fact(jp))) / (2 ** jm)
        total = WeylElement.zero(order)
        for s in range(jm + 1):
            mono = (WeylElement.monomial(0, jm - s, order)
                    * WeylElement.monomial(jp, 0, order)
                    * WeylElement.monomial(0, s, order))
            total = total + mono.scale(Fraction(1, fact(s) * fact(jm - s)))
    elif form == "B":
        pre = sqrt_fraction(Fraction(fact(2 * j) * fact(jp), fact(jm))) / (2 ** jp)
        total = WeylElement.zero(order)
        for s in range(jp + 1):
            mono = (WeylElement.monomial(s, 0, order)
                    * WeylElement.monomial(0, jm, order)
                    * WeylElement.monomial(jp - s, 0, order))
            total = total + mono.scale(Fraction(1, fact(s) * fact(jp - s)))
    else:
        raise ValueError(f"unknown form {form!r}")
    return {key: c.at_h0() * pre for key, c in total.terms.items()}


def classical_symplecton(j, m, order, form="A"):
    """The weight-2m spin-j polynomial in a, abar, in normal order."""
    j, m = HalfInt.of(j), HalfInt.of(m)
    coeffs = _classical_coeffs(j.twice, m.twice, form)
    return WeylElement({key: HSeries.constant(c, order) for key, c in coeffs.items()},
                       order)


def symplecton_pivot(j, m):
    """Coefficient of the top monomial a^(j+m) abar^(j-m), a single radical."""
    j, m = HalfInt.of(j), HalfInt.of(m)
    return sqrt_fraction(Fraction(fact(2 * j), fact(j + m) * fact(j - m)))


def h_symplecton(j, m, order):
    """Twisted polynomial P_j^m exp(m*s) in the Weyl presentation."""
    return classical_symplecton(j, m, order) * exp_m_sigma(HalfInt.of(m), order)


def decompose_symplecton_basis(w):
    """Expand a Weyl element exactly over the classical spin basis.

    Returns {(j, m): HSeries} with HalfInt keys.  Works degree by degree:
    the top monomials of the input can only come from basis elements of the
    same top degree, whose leading coefficients are single radicals.
    """
    order = w.order
    rest = w
    out = {}
    while not rest.is_zero():
        d = rest.max_degree()
        layer = [(p, q) for (p, q) in rest.terms if p + q == d]
        for (p, q) in sorted(layer):
            j, m = HalfInt(p + q), HalfInt(p - q)
            c = rest.terms[(p, q)] * symplecton_pivot(j, m).invert()
            out[(j, m)] = out.get((j, m), HSeries.zero(order)) + c
            rest = rest - classical_symplecton(j, m, order).scale(c)
        if not rest.is_zero() and rest.max_degree() >= d:
            raise RuntimeError("basis elimination failed to reduce the degree")
    return {key: c for key, c in out.items() if not c.is_zero()}


def ad_j0(t):
    """Deformed adjoint action of the weight generator: [J0, t] exp(-s)."""
    order = t.order
    return j_zero(order).commutator(t) * exp_m_sigma(-1, order)


def ad_jplus(t):
    """Deformed adjoint action of the raising generator: exp(-s) [J+ exp(s), t]."""
    order = t.order
    dressed = j_plus(order) * exp_m_sigma(1, order)
    return exp_m_sigma(-1, order) * dressed.commutator(t)


def ad_jminus(t):
    """Deformed adjoint action of the lowering generator."""
    order = t.order
    h1 = HSeries.h_power(1, order)
    j0 = j_zero(order)
    head = j_minus(order) + j0.scale(h1) + (j0 * j0).scale(h1 * HSeries.constant(Fraction(1, 2), order))
    em1, em2 = exp_m_sigma(-1, order), exp_m_sigma(-2, order)
    out = head.commutator(t) * em1
    out = out - j0.commutator(t) * em2.scale(h1)
    out = out - j0.commutator(j0.commutator(t)) * em2.scale(h1 * HSeries.constant(Fraction(1, 2), order))
    return out


def ladder_coeff(j, m, direction):
    """sqrt((j -+ m)(j +- m + 1)) for raising (+1) or lowering (-1)."""
    j, m = HalfInt.of(j), HalfInt.of(m)
    if direction == +1:
        n = (j - m).as_int() * (j + m + 1).as_int()
    elif direction == -1:
        n = (j + m).as_int() * (j - m + 1).as_int()
    else:
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    return sqrt_fraction(Fraction(n))
