"""Exact arithmetic in Q and in the rational function field Q(kappa).

Elements of Q(kappa) are stored as a pair of integer coefficient tuples
(lowest degree first) in a canonical form: coprime as polynomials, joint
integer content 1, and a denominator with positive leading coefficient.
Two equal elements therefore have identical tuples, so ``==`` and ``hash``
are structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

from .errors import PoleAtKappa

IntPoly = tuple  # tuple[int, ...], coefficient of kappa**i at index i


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _add(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _neg(a: tuple) -> tuple:
    return tuple(-x for x in a)


def _mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        s = a[0]
        return tuple(s * x for x in b)
    if len(b) == 1:
        s = b[0]
        return tuple(s * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _content(a: tuple) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def _primitive(a: tuple) -> tuple:
    g = _content(a)
    if a[-1] < 0:
        g = -g
    return tuple(x // g for x in a)


def _prem(a: tuple, b: tuple) -> tuple:
    """Pseudo-remainder of a by b over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[i + shift] -= lr * y
        r = list(_trim(r))
    return tuple(r)


def _gcd(a: tuple, b: tuple) -> tuple:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else ())
    return a


def _exact_div(a: tuple, b: tuple) -> tuple:
    """a / b in Z[x] when b divides a and b is primitive."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        c, rem = divmod(r[-1], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] -= c * y
        r = list(_trim(r))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return tuple(q)


def _eval(a: tuple, q):
    acc = 0
    for c in reversed(a):
        acc = acc * q + c
    return acc


Scalar = Union[int, Fraction, "KappaRational"]


class KappaRational:
    """Element of Q(kappa) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,), _canonical: bool = False):
        num = tuple(num)
        den = tuple(den)
        if not _canonical:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def coerce(cls, x) -> "KappaRational":
        if isinstance(x, KappaRational):
            return x
        if isinstance(x, int):
            return _int_cache.get(x) or cls((x,) if x else (), (1,), True)
        if isinstance(x, Fraction):
            if x == 0:
                return ZERO
            return cls((x.numerator,), (x.denominator,), True)
        if isinstance(x, str):
            return cls.coerce(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to KappaRational")

    @classmethod
    def from_coeffs(cls, num, den=(1,)) -> "KappaRational":
        """Build from rational coefficient sequences (lowest degree first)."""
        num = [Fraction(c) for c in num]
        den = [Fraction(c) for c in den]
        m = 1
        for c in num + den:
            m = m * c.denominator // gcd(m, c.denominator)
        return cls(_trim([int(c * m) for c in num]), _trim([int(c * m) for c in den]))

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on kappa")
        return Fraction(self.num[0], self.den[0]) if self.num else Fraction(0)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = _co(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return KappaRational(_add(self.num, o.num), self.den)
        return KappaRational(
            _add(_mul(self.num, o.den), _mul(o.num, self.den)), _mul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return KappaRational(_neg(self.num), self.den, True)

    def __sub__(self, other):
        o = _co(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _co(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _co(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return ZERO
        if o.num == (1,) and o.den == (1,):
            return self
        if self.num == (1,) and self.den == (1,):
            return o
        return KappaRational(_mul(self.num, o.num), _mul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "KappaRational":
        if not self.num:
            raise PoleAtKappa("division by zero in Q(kappa)")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = _neg(num), _neg(den)
        return KappaRational(num, den, True)

    def __truediv__(self, other):
        o = _co(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _co(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        o = _co(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # evaluation ---------------------------------------------------------
    def eval_at(self, q) -> Fraction:
        """Exact value at kappa = q; raises PoleAtKappa at a root of den."""
        q = Fraction(q)
        d = _eval(self.den, q)
        if d == 0:
            raise PoleAtKappa(f"kappa = {q} is a pole of {self}")
        return Fraction(_eval(self.num, q)) / d

    def specialize(self, q) -> "KappaRational":
        return KappaRational.coerce(self.eval_at(q))

    def poles_in(self, values) -> list:
        return [v for v in values if _eval(self.den, Fraction(v)) == 0]

    # serialization ------------------------------------------------------
    def _monic_coeffs(self):
        lc = self.den[-1]
        return ([Fraction(c, lc) for c in self.num], [Fraction(c, lc) for c in self.den])

    def to_json(self) -> dict:
        num, den = self._monic_coeffs()
        return {"num": [_fstr(c) for c in num], "den": [_fstr(c) for c in den]}

    @classmethod
    def from_json(cls, obj) -> "KappaRational":
        if isinstance(obj, (int, str)):
            return cls.coerce(Fraction(obj))
        return cls.from_coeffs([Fraction(c) for c in obj["num"]], [Fraction(c) for c in obj.get("den", ["1"])])

    def __repr__(self):
        return f"KappaRational({self})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "k") -> str:
        num, den = self._monic_coeffs()
        ns = _poly_str(num, var)
        if den == [Fraction(1)]:
            return ns
        ds = _poly_str(den, var)
        if len([c for c in num if c]) > 1 or "/" in ns:
            ns = f"({ns})"
        if len([c for c in den if c]) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"


def _fstr(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _poly_str(c, var: str = "k") -> str:
    parts = []
    for i in range(len(c) - 1, -1, -1):
        x = c[i]
        if not x:
            continue
        sign = "-" if x < 0 else "+"
        a = abs(x)
        if i == 0:
            body = str(a)
        else:
            v = var if i == 1 else f"{var}^{i}"
            body = v if a == 1 else f"{a}*{v}"
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _normalize(num: tuple, den: tuple):
    num = _trim(list(num))
    den = _trim(list(den))
    if not den:
        raise PoleAtKappa("zero denominator")
    if not num:
        return (), (1,)
    if len(den) > 1 and len(num) > 1:
        g = _gcd(num, den)
        if len(g) > 1:
            num = _exact_div(num, g)
            den = _exact_div(den, g)
    c = gcd(_content(num), _content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


def _co(x):
    if isinstance(x, KappaRational):
        return x
    if isinstance(x, (int, Fraction)):
        return KappaRational.coerce(x)
    return NotImplemented


ZERO = KappaRational((), (1,), True)
ONE = KappaRational((1,), (1,), True)
_int_cache = {i: KappaRational((i,) if i else (), (1,), True) for i in range(-64, 65)}
KAPPA = KappaRational((0, 1), (1,), True)


def K(x) -> KappaRational:
    """Shorthand coercion to Q(kappa)."""
    return KappaRational.coerce(x)


def asc_poch(x, r: int) -> KappaRational:
    """Rising factorial x(x+1)...(x+r-1); r = 0 gives 1."""
    if r < 0:
        raise ValueError("r must be non-negative")
    x = K(x)
    out = ONE
    for i in range(r):
        out = out * (x + i)
    return out


def desc_poch(x, r: int) -> KappaRational:
    """Falling factorial x(x-1)...(x-r+1); r = 0 gives 1."""
    if r < 0:
        raise ValueError("r must be non-negative")
    x = K(x)
    out = ONE
    for i in range(r):
        out = out * (x - i)
    return out


def eval_at(f: KappaRational, q) -> Fraction:
    return K(f).eval_at(q)
