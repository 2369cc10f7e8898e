"""Exact scalar arithmetic.

Three layers, all built on fractions.Fraction:

  RadicalSum  rational linear combinations of square roots of distinct
              square-free positive integers (the key 1 stands for sqrt(1)).
  HSeries     polynomial in the deformation parameter h, truncated at a
              fixed order, with RadicalSum coefficients.
  HalfInt     half-integer spin / weight labels, stored as twice the value.

RadicalSum is an exact ring; general division is not defined, but a sum
consisting of a single term q*sqrt(r) has the exact inverse (1/(q*r))*sqrt(r).
That is the only inversion the rest of the package ever needs.
"""

from fractions import Fraction


def _square_free_split(n):
    """Return (s, r) with n = s*s*r and r square-free, for n >= 1."""
    if n <= 0:
        raise ValueError(f"need a positive integer under the square root, got {n}")
    s, r, m, d = 1, 1, n, 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                r *= d
        d += 1 if d == 2 else 2
    return s, r * m


def radical_normalize(n, q=1):
    """Exact q*sqrt(n) as a RadicalSum, e.g. sqrt(8) -> 2*sqrt(2)."""
    s, r = _square_free_split(n)
    return RadicalSum({r: Fraction(q) * s})


def sqrt_fraction(value):
    """Exact sqrt of a nonnegative Fraction as a RadicalSum."""
    value = Fraction(value)
    if value < 0:
        raise ValueError(f"sqrt of negative rational {value}")
    if value == 0:
        return RadicalSum({})
    # sqrt(p/q) = sqrt(p*q)/q
    return radical_normalize(value.numerator * value.denominator,
                             Fraction(1, value.denominator))


class RadicalSum:
    """Finite sum sum_r q_r*sqrt(r), r square-free positive, q_r rational."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for r, q in terms.items():
                q = Fraction(q)
                if q:
                    self.terms[r] = q

    @staticmethod
    def from_rational(q):
        return RadicalSum({1: Fraction(q)})

    @staticmethod
    def zero():
        return RadicalSum({})

    @staticmethod
    def one():
        return RadicalSum({1: Fraction(1)})

    def is_zero(self):
        return not self.terms

    def is_rational(self):
        return all(r == 1 for r in self.terms)

    def rational_part(self):
        return self.terms.get(1, Fraction(0))

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms.get(1, Fraction(0))

    def _coerced(self, other):
        if isinstance(other, RadicalSum):
            return other
        if isinstance(other, (int, Fraction)):
            return RadicalSum({1: Fraction(other)})
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for r, q in other.terms.items():
            out[r] = out.get(r, Fraction(0)) + q
        return RadicalSum(out)

    __radd__ = __add__

    def __neg__(self):
        return RadicalSum({r: -q for r, q in self.terms.items()})

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        out = {}
        for r1, q1 in self.terms.items():
            for r2, q2 in other.terms.items():
                # sqrt(r1)*sqrt(r2) = g*sqrt(r1*r2/g^2) with g = gcd(r1, r2)
                s, r = _square_free_split(r1 * r2)
                out[r] = out.get(r, Fraction(0)) + q1 * q2 * s
        return RadicalSum(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"bad radical power {k}")
        out = RadicalSum.one()
        for _ in range(k):
            out = out * self
        return out

    def invert(self):
        """Exact inverse; defined only when the sum has a single term."""
        if len(self.terms) != 1:
            raise ValueError(f"cannot invert multi-term radical sum {self}")
        [(r, q)] = self.terms.items()
        return RadicalSum({r: Fraction(1, 1) / (q * r)})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("radical division by zero")
            return self * RadicalSum({1: Fraction(1) / Fraction(other)})
        if isinstance(other, RadicalSum):
            return self * other.invert()
        return NotImplemented

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for r in sorted(self.terms):
            q = self.terms[r]
            if r == 1:
                parts.append(str(q))
            elif q == 1:
                parts.append(f"sqrt({r})")
            elif q == -1:
                parts.append(f"-sqrt({r})")
            else:
                parts.append(f"{q}*sqrt({r})")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__

    def to_json(self):
        """List of [numerator, denominator, radicand] triples, sorted by radicand."""
        return [[self.terms[r].numerator, self.terms[r].denominator, r]
                for r in sorted(self.terms)]


_R_ZERO = RadicalSum()


class HSeries:
    """Truncated polynomial sum_{k<=order} c_k*h^k with RadicalSum coefficients.

    Arithmetic requires both operands to carry the same truncation order;
    mixing orders silently would hide loss of precision, so it is an error.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        coeffs = list(coeffs)
        if len(coeffs) != order + 1:
            raise ValueError(f"need {order + 1} coefficients, got {len(coeffs)}")
        self.coeffs = [c if isinstance(c, RadicalSum) else RadicalSum({1: Fraction(c)})
                       for c in coeffs]
        self.order = order

    @staticmethod
    def zero(order):
        return HSeries([_R_ZERO] * (order + 1), order)

    @staticmethod
    def one(order):
        return HSeries.constant(1, order)

    @staticmethod
    def constant(value, order):
        out = HSeries.zero(order)
        v = value if isinstance(value, RadicalSum) else RadicalSum({1: Fraction(value)})
        out.coeffs[0] = v
        return out

    @staticmethod
    def h_power(k, order, value=1):
        """value * h^k at the given truncation order."""
        out = HSeries.zero(order)
        if k <= order:
            v = value if isinstance(value, RadicalSum) else RadicalSum({1: Fraction(value)})
            out.coeffs[k] = v
        return out

    def _check(self, other):
        if self.order != other.order:
            raise ValueError(f"series order mismatch: {self.order} vs {other.order}")

    def _coerced(self, other):
        if isinstance(other, HSeries):
            return other
        if isinstance(other, (int, Fraction, RadicalSum)):
            return HSeries.constant(other, self.order)
        return None

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        self._check(other)
        return HSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return HSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out = [_R_ZERO] * (self.order + 1)
        left = [(i, c) for i, c in enumerate(self.coeffs) if not c.is_zero()]
        right = [(j, c) for j, c in enumerate(other.coeffs) if not c.is_zero()]
        for i, a in left:
            for j, b in right:
                if i + j <= self.order:
                    out[i + j] = out[i + j] + a * b
        return HSeries(out, self.order)

    __rmul__ = __mul__

    def scale(self, value):
        v = value if isinstance(value, RadicalSum) else RadicalSum({1: Fraction(value)})
        return HSeries([c * v for c in self.coeffs], self.order)

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        self._check(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, tuple(self.coeffs)))

    def truncate(self, new_order):
        """Drop coefficients above new_order (new_order <= order)."""
        if new_order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} -> {new_order}")
        return HSeries(self.coeffs[:new_order + 1], new_order)

    def divide_exact(self, k):
        """Exact division by h^k.  The result only carries order - k.

        The low coefficients must vanish; the information above order - k
        simply does not exist in the operand, so the result is shorter.
        """
        if k == 0:
            return self
        if k < 0 or k > self.order:
            raise ValueError(f"cannot divide order-{self.order} series by h^{k}")
        for i in range(k):
            if not self.coeffs[i].is_zero():
                raise ValueError(f"series not divisible by h^{k}: h^{i} term is {self.coeffs[i]}")
        return HSeries(self.coeffs[k:], self.order - k)

    def valuation(self):
        """Lowest k with a nonzero h^k coefficient, or None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return None

    def at_h0(self):
        return self.coeffs[0]

    def invert_unit(self):
        """Exact inverse of a series whose constant term is a single radical term."""
        c0inv = self.coeffs[0].invert()
        out = HSeries.constant(c0inv, self.order)
        rest = HSeries([_R_ZERO] + self.coeffs[1:], self.order)
        # Neumann series in the nilpotent part rest/c0
        term = HSeries.one(self.order)
        acc = HSeries.one(self.order)
        for _ in range(self.order):
            term = term * rest.scale(-c0inv)
            if term.is_zero():
                break
            acc = acc + term
        return acc * out

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if " " in cs:
                cs = f"({cs})"
            if k == 0:
                parts.append(cs)
            else:
                hk = "h" if k == 1 else f"h^{k}"
                parts.append(hk if cs == "1" else f"-{hk}" if cs == "-1" else f"{cs}*{hk}")
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return f"{body} (mod h^{self.order + 1})"

    __repr__ = __str__

    def to_json(self):
        return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}


class HalfInt:
    """Half-integer stored as twice its value, so it hashes and compares exactly."""

    __slots__ = ("twice",)

    def __init__(self, twice):
        if not isinstance(twice, int):
            raise TypeError(f"HalfInt wants twice-the-value as an int, got {twice!r}")
        self.twice = twice

    @staticmethod
    def of(value):
        """Build from an int, a Fraction with denominator 1 or 2, or a HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return HalfInt(2 * value)
        f = Fraction(value)
        if f.denominator not in (1, 2):
            raise ValueError(f"{value} is not a half-integer")
        return HalfInt(int(f * 2))

    @staticmethod
    def parse(text):
        """Parse '2', '-1/2', '3/2'."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            if int(den) != 2:
                raise ValueError(f"bad half-integer literal {text!r}")
            return HalfInt(int(num))
        return HalfInt(2 * int(text))

    def is_integer(self):
        return self.twice % 2 == 0

    def as_int(self):
        if self.twice % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def as_fraction(self):
        return Fraction(self.twice, 2)

    def __add__(self, other):
        other = HalfInt.of(other)
        return HalfInt(self.twice + other.twice)

    __radd__ = __add__

    def __sub__(self, other):
        other = HalfInt.of(other)
        return HalfInt(self.twice - other.twice)

    def __rsub__(self, other):
        return HalfInt.of(other) - self

    def __neg__(self):
        return HalfInt(-self.twice)

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfInt(self.twice * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (HalfInt, int, Fraction)):
            return self.as_fraction() == HalfInt.of(other).as_fraction()
        return NotImplemented

    def __lt__(self, other):
        return self.twice < HalfInt.of(other).twice

    def __le__(self, other):
        return self.twice <= HalfInt.of(other).twice

    def __gt__(self, other):
        return self.twice > HalfInt.of(other).twice

    def __ge__(self, other):
        return self.twice >= HalfInt.of(other).twice

    def __hash__(self):
        return hash(self.as_fraction())

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    __repr__ = __str__


def half_range(lo, hi):
    """HalfInt values lo, lo+1, ..., hi (unit steps)."""
    lo, hi = HalfInt.of(lo), HalfInt.of(hi)
    return [HalfInt(t) for t in range(lo.twice, hi.twice + 1, 2)]


def weights(j):
    """Weights -j, -j+1, ..., j of the spin-j module."""
    j = HalfInt.of(j)
    return [HalfInt(t) for t in range(-j.twice, j.twice + 1, 2)]


def spins_up_to(max_j, start=0):
    """Spins start, start+1/2, ..., max_j."""
    lo, hi = HalfInt.of(start), HalfInt.of(max_j)
    return [HalfInt(t) for t in range(lo.twice, hi.twice + 1)]
