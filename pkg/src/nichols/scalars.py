"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as a polynomial in zeta_N of degree < phi(N), reduced
modulo the N-th cyclotomic polynomial.  Coefficients are kept as a tuple of
integers over one positive common denominator, which keeps multiplication in
the hot loops down to integer work plus one gcd.

N = 1 is the field of rationals.  Scalars of different moduli never mix
implicitly; use :func:`embed` or :func:`embed_all` to move them into a
common field first.
"""

import math
import re
from fractions import Fraction
from functools import lru_cache

from .errors import InputError, ModulusMismatch

__all__ = [
    "ExactScalar",
    "cyclotomic_polynomial",
    "euler_phi",
    "zeta",
    "embed",
    "embed_all",
    "common_modulus",
    "as_scalar",
    "parse_scalar",
]


def euler_phi(n):
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num, den):
    # exact division of integer polynomials, den monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            out[k - dd] = c
            for i, b in enumerate(den):
                num[k - dd + i] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise InputError(f"cyclotomic modulus must be positive, got {n}")
    xn1 = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    return tuple(_poly_divexact(xn1, den))


@lru_cache(maxsize=None)
def _reduction_table(n):
    # rows[k] = coefficients of t^(phi + k) mod Phi_n, for k < phi - 1
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    rows = []
    cur = [-c for c in phi_poly[:deg]]  # t^deg
    for _ in range(max(deg - 1, 0)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi_poly[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _power_table(n):
    # coefficients of t^j mod Phi_n for j = 0..n-1
    deg = euler_phi(n)
    phi_poly = cyclotomic_polynomial(n)
    out = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(n):
        out.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi_poly[i]
    return tuple(out)


def _reduce_long(n, coeffs):
    """Reduce an arbitrary-length integer polynomial mod Phi_n."""
    deg = euler_phi(n)
    powers = _power_table(n)
    out = [0] * deg
    for j, c in enumerate(coeffs):
        if c:
            row = powers[j % n]
            for i in range(deg):
                out[i] += c * row[i]
    return out


def _normalize(num, den):
    g = math.gcd(den, *num)
    if g != 1:
        num = tuple(x // g for x in num)
        den //= g
    if den < 0:
        num = tuple(-x for x in num)
        den = -den
    return num, den


class ExactScalar:
    """An element of Q(zeta_N).

    Construct from a coefficient sequence (ints, Fractions or strings such
    as ``"3/4"``); sequences longer than phi(N) are reduced mod Phi_N.

    >>> z = ExactScalar.zeta(4)
    >>> z * z == -1
    True
    """

    __slots__ = ("modulus", "num", "den")

    def __init__(self, coeffs=(0,), modulus=1):
        if modulus < 1:
            raise InputError(f"modulus must be positive, got {modulus}")
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        ints = [f.numerator * (den // f.denominator) for f in fracs]
        deg = euler_phi(modulus)
        if len(ints) > deg:
            ints = _reduce_long(modulus, ints)
        ints = tuple(ints) + (0,) * (deg - len(ints))
        self.modulus = modulus
        self.num, self.den = _normalize(ints, den)

    @classmethod
    def _raw(cls, modulus, num, den):
        obj = object.__new__(cls)
        obj.modulus = modulus
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def zeta(cls, modulus, power=1):
        """The root of unity zeta_N^power."""
        row = _power_table(modulus)[power % modulus]
        return cls._raw(modulus, row, 1)

    @classmethod
    def one(cls, modulus=1):
        return cls.zeta(modulus, 0)

    @classmethod
    def zero(cls, modulus=1):
        return cls._raw(modulus, (0,) * euler_phi(modulus), 1)

    @classmethod
    def rational(cls, value, modulus=1):
        f = Fraction(value)
        deg = euler_phi(modulus)
        return cls._raw(modulus, (f.numerator,) + (0,) * (deg - 1), f.denominator)

    @property
    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self):
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def _coerce(self, other):
        if isinstance(other, ExactScalar):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"cannot combine scalars mod {self.modulus} and mod {other.modulus} "
                    "without an explicit embedding"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar.rational(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            num = tuple(a + b for a, b in zip(self.num, other.num))
            den = self.den
        else:
            da, db = self.den, other.den
            num = tuple(a * db + b * da for a, b in zip(self.num, other.num))
            den = da * db
        num, den = _normalize(num, den)
        return ExactScalar._raw(self.modulus, num, den)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw(self.modulus, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.num, other.num
        deg = len(a)
        if deg == 1:
            num = (a[0] * b[0],)
        else:
            prod = [0] * (2 * deg - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            prod[i + j] += x * y
            num = prod[:deg]
            rows = _reduction_table(self.modulus)
            for k in range(deg - 1):
                c = prod[deg + k]
                if c:
                    row = rows[k]
                    for i in range(deg):
                        num[i] += c * row[i]
            num = tuple(num)
        num, den = _normalize(num, self.den * other.den)
        return ExactScalar._raw(self.modulus, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not any(self.num):
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.modulus)
        deg = len(self.num)
        if deg == 1:
            return ExactScalar._raw(self.modulus, (self.den,), 1) * ExactScalar.rational(
                Fraction(1, self.num[0]), self.modulus
            )
        # extended Euclid in Q[t]: s * a + u * Phi = 1
        a = [Fraction(c) for c in self.num]
        m = [Fraction(c) for c in cyclotomic_polynomial(self.modulus)]
        s = _poly_xgcd_inverse(a, m)
        return ExactScalar(s, self.modulus) * self.den

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        acc = ExactScalar.one(self.modulus)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.rational(other, self.modulus)
        elif not isinstance(other, ExactScalar):
            return NotImplemented
        if other.modulus != self.modulus:
            raise ModulusMismatch(
                f"cannot compare scalars mod {self.modulus} and mod {other.modulus}"
            )
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.modulus, self.num, self.den))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"ExactScalar({format_scalar(self)!r})"

    def __reduce__(self):
        return (ExactScalar._raw, (self.modulus, self.num, self.den))


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
        _poly_trim(a)
        if len(a) < len(b):
            break
    return q, _poly_trim(a)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _poly_trim(out)


def _poly_xgcd_inverse(a, m):
    r0, r1 = list(m), _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while any(r1) and len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_trim([Fraction(x) for x in _poly_mul(q, s1)]))
    # r1 is now a nonzero constant since Phi is irreducible and a != 0 mod Phi
    c = r1[0]
    return [x / c for x in s1]


def zeta(modulus, power=1):
    return ExactScalar.zeta(modulus, power)


def as_scalar(value, modulus=1):
    """Coerce ints, Fractions, strings and scalars to an ExactScalar."""
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, (int, Fraction)):
        return ExactScalar.rational(value, modulus)
    raise InputError(f"cannot interpret {value!r} as an exact scalar")


def embed(x, modulus):
    """Map x in Q(zeta_N) into Q(zeta_M); requires N | M."""
    if x.modulus == modulus:
        return x
    if modulus % x.modulus:
        raise ModulusMismatch(f"Q(zeta_{x.modulus}) does not embed in Q(zeta_{modulus})")
    step = modulus // x.modulus
    spread = [0] * (step * (len(x.num) - 1) + 1)
    for i, c in enumerate(x.num):
        spread[i * step] = c
    num, den = _normalize(tuple(_reduce_long(modulus, spread)), x.den)
    return ExactScalar._raw(modulus, num, den)


def common_modulus(*moduli):
    m = 1
    for n in moduli:
        m = m * n // math.gcd(m, n)
    return m


def embed_all(values, modulus=None):
    """Embed every scalar into Q(zeta_lcm) (or the given modulus)."""
    values = list(values)
    if modulus is None:
        modulus = common_modulus(*(v.modulus for v in values))
    return [embed(v, modulus) for v in values], modulus


def _fmt_rational(f):
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_scalar(x):
    """Serialize as ``"c0 + c1*z + c2*z^2 (mod N)"``; zero terms are omitted."""
    terms = []
    for k, c in enumerate(x.coeffs):
        if c == 0:
            continue
        s = _fmt_rational(c)
        if k == 1:
            s += "*z"
        elif k > 1:
            s += f"*z^{k}"
        terms.append(s)
    body = " + ".join(terms) if terms else "0"
    return f"{body} (mod {x.modulus})"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*(?P<neg>-)?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*)?)?\s*
        (?P<z>z(?:\s*\^\s*(?P<exp>\d+))?)?\s*""",
    re.VERBOSE,
)
_MOD = re.compile(r"^(?P<body>.*?)\s*\(\s*mod\s+(?P<n>\d+)\s*\)\s*$")


def parse_scalar(text):
    """Inverse of :func:`format_scalar`.  A missing ``(mod N)`` means N = 1."""
    if not isinstance(text, str):
        raise InputError(f"expected a scalar string, got {text!r}")
    m = _MOD.match(text)
    if m:
        body, modulus = m.group("body"), int(m.group("n"))
    else:
        body, modulus = text, 1
    body = body.strip()
    if not body:
        raise InputError(f"empty scalar {text!r}")
    coeffs = {}
    pos = 0
    first = True
    while pos < len(body):
        t = _TERM.match(body, pos)
        if t is None or t.end() == pos:
            raise InputError(f"cannot parse scalar {text!r} near {body[pos:]!r}")
        sign, coef, z = t.group("sign"), t.group("coef"), t.group("z")
        if not first and sign is None:
            raise InputError(f"missing operator in scalar {text!r}")
        if coef is None and z is None:
            raise InputError(f"dangling sign in scalar {text!r}")
        if t.group("star") and z is None:
            raise InputError(f"dangling '*' in scalar {text!r}")
        value = Fraction(coef) if coef is not None else Fraction(1)
        if (sign == "-") != (t.group("neg") is not None):
            value = -value
        power = 0
        if z is not None:
            power = int(t.group("exp")) if t.group("exp") else 1
            if modulus == 1 and power:
                raise InputError(f"scalar {text!r} uses z but has no (mod N)")
        coeffs[power] = coeffs.get(power, 0) + value
        pos = t.end()
        first = False
    top = max(coeffs)
    return ExactScalar([coeffs.get(k, 0) for k in range(top + 1)], modulus)
