"""Exact scalars: rationals (gmpy2 ``mpq``) and cyclotomic field elements.

Rationals are plain ``mpq`` values so they mix freely with Python ints.
Elements of Q(zeta_n) are :class:`Cyclotomic` instances holding phi(n)
rational coordinates in the power basis 1, z, ..., z^(phi(n)-1).
"""

from __future__ import annotations

from functools import lru_cache
from numbers import Rational as _RationalABC

from gmpy2 import mpq

from .errors import FieldMismatch, ParseError

__all__ = [
    "Cyclotomic",
    "mpq",
    "as_scalar",
    "cyclotomic_polynomial",
    "euler_phi",
    "is_zero",
    "parse_scalar",
    "render_scalar",
    "root_of_unity",
    "scalar_inverse",
]

_ZERO = mpq(0)
_ONE = mpq(1)


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num, den):
    # both monic-led integer polynomials, coefficient lists low -> high
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        q[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple, ...]:
    """Row k holds the coordinates of z^k, for k < 2*phi(n) - 1."""
    deg = euler_phi(n)
    cyc = cyclotomic_polynomial(n)
    rows = []
    cur = [_ZERO] * deg
    cur[0] = _ONE
    for _ in range(max(2 * deg - 1, 1)):
        rows.append(tuple(cur))
        # multiply by z and reduce by the monic modulus
        top = cur[-1]
        cur = [_ZERO] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * cyc[j]
    return tuple(rows)


def _to_mpq(x) -> mpq:
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, _RationalABC)) or type(x) is type(_ONE):
        return mpq(x)
    raise TypeError(f"not a rational scalar: {x!r}")


class Cyclotomic:
    """An element of Q(zeta_n), immutable.

    ``coeffs`` has length phi(n); equality with plain rationals is exact
    (a rational r is identified with r + 0*z + ...).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(_to_mpq(c) for c in coeffs)
        deg = euler_phi(order)
        if len(coeffs) != deg:
            raise ValueError(f"Q(zeta_{order}) elements need {deg} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    @classmethod
    def _raw(cls, order, coeffs):
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def from_rational(cls, order: int, value) -> "Cyclotomic":
        deg = euler_phi(order)
        return cls._raw(order, (_to_mpq(value),) + (_ZERO,) * (deg - 1))

    # coercion -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise FieldMismatch(
                    f"cannot combine Q(zeta_{self.order}) with Q(zeta_{other.order})"
                )
            return other.coeffs
        try:
            r = _to_mpq(other)
        except TypeError:
            return None
        return (r,) + (_ZERO,) * (len(self.coeffs) - 1)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self.order, tuple(a + b for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self.order, tuple(a - b for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self.order, tuple(b - a for a, b in zip(self.coeffs, o)))

    def __neg__(self):
        return Cyclotomic._raw(self.order, tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Cyclotomic):
            o = self._coerce(other)
        else:
            try:
                r = _to_mpq(other)
            except TypeError:
                return NotImplemented
            return Cyclotomic._raw(self.order, tuple(a * r for a in self.coeffs))
        deg = len(self.coeffs)
        prod = [_ZERO] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o):
                    if b:
                        prod[i + j] += a * b
        table = _reduction_table(self.order)
        out = [_ZERO] * deg
        for k, c in enumerate(prod):
            if c:
                if k < deg:
                    out[k] += c
                else:
                    for j, t in enumerate(table[k]):
                        if t:
                            out[j] += c * t
        return Cyclotomic._raw(self.order, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        modulus = [mpq(c) for c in cyclotomic_polynomial(self.order)]
        s = _poly_inverse_mod(list(self.coeffs), modulus)
        s = s + [_ZERO] * (len(self.coeffs) - len(s))
        return Cyclotomic._raw(self.order, tuple(s))

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            self._coerce(other)
            return self * other.inverse()
        try:
            r = _to_mpq(other)
        except TypeError:
            return NotImplemented
        if not r:
            raise ZeroDivisionError("division by zero")
        return Cyclotomic._raw(self.order, tuple(a / r for a in self.coeffs))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self.order, o) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = Cyclotomic.from_rational(self.order, 1)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Cyclotomic) and other.order != self.order:
            # distinct ambient fields: only rational values can coincide
            return self.is_rational() and other.is_rational() and self.coeffs[0] == other.coeffs[0]
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"Cyclotomic({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = f"z{self.order}" + (f"^{k}" if k > 1 else "")
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"({c})*{mono}")
        return " + ".join(terms) if terms else "0"


def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, d in enumerate(b):
            a[shift + j] -= c * d
        _poly_trim(a)
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = a + [_ZERO] * (n - len(a))
    b = b + [_ZERO] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a, m):
    """Inverse of a modulo m via the extended Euclidean algorithm."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [_ONE]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    _, s = _poly_divmod([x / c for x in s1], m)
    return s


def root_of_unity(n: int, k: int = 1):
    """zeta_n ** k, as a rational for n in {1, 2} and a Cyclotomic otherwise."""
    if n < 1:
        raise ValueError("order must be positive")
    k %= n
    if n == 1:
        return mpq(1)
    if n == 2:
        return mpq(-1) if k else mpq(1)
    table = _reduction_table(n)
    deg = euler_phi(n)
    if k < len(table):
        return Cyclotomic._raw(n, table[k])
    z = Cyclotomic._raw(n, table[1])
    return z ** k


def is_zero(x) -> bool:
    return not x


def scalar_inverse(x):
    if isinstance(x, Cyclotomic):
        return x.inverse()
    x = _to_mpq(x)
    if not x:
        raise ZeroDivisionError("inverse of zero")
    return 1 / x


def as_scalar(x, order: int | None = None):
    """Normalise ints/strings/mpq/Cyclotomic into a field element."""
    if isinstance(x, Cyclotomic):
        if order is not None and order != x.order:
            raise FieldMismatch(f"expected Q(zeta_{order}), got Q(zeta_{x.order})")
        return x
    if isinstance(x, (str, dict)):
        return parse_scalar(x)
    return _to_mpq(x)


def render_scalar(x):
    """Canonical text form: "p/q" or "p" for rational values, a dict otherwise."""
    if isinstance(x, Cyclotomic):
        if x.is_rational():
            return str(x.coeffs[0])
        return {"order": x.order, "coeffs": [str(c) for c in x.coeffs]}
    return str(_to_mpq(x))


def parse_scalar(obj):
    if isinstance(obj, bool):
        raise ParseError(f"not a scalar: {obj!r}")
    if isinstance(obj, int):
        return mpq(obj)
    if isinstance(obj, str):
        try:
            return mpq(obj.strip())
        except ValueError as exc:
            raise ParseError(f"bad rational literal {obj!r}") from exc
    if isinstance(obj, dict):
        try:
            order = int(obj["order"])
            coeffs = [parse_scalar(c) for c in obj["coeffs"]]
            return Cyclotomic(order, coeffs)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad cyclotomic literal {obj!r}") from exc
    raise ParseError(f"not a scalar: {obj!r}")
