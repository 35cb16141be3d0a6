"""Exact arithmetic in finite fields GF(p^e) and towers F_{q^m} over F_q.

Elements are plain integers.  An element of a field of degree ``d`` over a
base field of order ``b`` is the integer ``sum(c_i * b**i)`` where ``c_i`` is
the (base-field encoded) coefficient of ``x**i`` in the polynomial basis.  For
a prime base this is the usual base-p encoding.

Multiplication goes through exp/log tables built from the designated
primitive element ``alpha``; addition is digitwise in characteristic ``p``
(plain XOR when p = 2), which is valid for towers too because base-field
coefficients are themselves base-p digit strings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

MAX_ORDER = 1 << 16
_TABLE_ORDER = 256

# Primitive polynomials over F_2, as exponent lists (leading term included).
_BINARY_PRIMITIVE = {
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 2, 0),
    9: (9, 4, 0),
    10: (10, 3, 0),
    11: (11, 2, 0),
    12: (12, 6, 4, 1, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 10, 6, 1, 0),
    15: (15, 1, 0),
    16: (16, 12, 3, 1, 0),
}


class FieldError(ValueError):
    """Invalid field parameters or an illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise if q is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


class FieldSpec:
    """A finite field, either GF(p^e) over the prime field or an extension
    of another ``FieldSpec``.

    Instances are immutable after construction.  Use :func:`field_new`,
    :func:`field_of_order` or :func:`extension_field` rather than calling the
    constructor directly.
    """

    def __init__(self, p: int, degree: int, modulus: tuple[int, ...], base: FieldSpec | None = None):
        self._set_shape(p, degree, modulus, base)
        if self.order > MAX_ORDER:
            raise FieldError(f"field order {self.order} exceeds the supported bound {MAX_ORDER}")
        self._exp, self._log, self.alpha = self._build_tables()
        if self.order <= _TABLE_ORDER:
            self.add_table = [[self._add_digits(a, b) for b in range(self.order)] for a in range(self.order)]
            self.mul_table = [[self.mul(a, b) for b in range(self.order)] for a in range(self.order)]
        else:
            self.add_table = self.mul_table = None
        self.neg_table = [self.neg(a) for a in range(self.order)]
        self.inv_table = [0] + [self.inv(a) for a in range(1, self.order)]

    # -- construction helpers -------------------------------------------

    def _set_shape(self, p, degree, modulus, base):
        self.p = p
        self.base = base
        self.degree = degree
        self.modulus = tuple(modulus)
        self.base_order = base.order if base is not None else p
        self.order = self.base_order**degree
        # total degree over the prime field
        self.e = degree * (base.e if base is not None else 1)

    @classmethod
    def _ring(cls, p, degree, modulus, base) -> FieldSpec:
        """Table-free quotient ring, only good for ``_mul_poly``."""
        ring = cls.__new__(cls)
        ring._set_shape(p, degree, modulus, base)
        return ring

    def _x_is_primitive(self) -> bool:
        n = self.order - 1

        def power(k):
            result, sq = 1, self.base_order  # the encoding of x
            while k:
                if k & 1:
                    result = self._mul_poly(result, sq)
                sq = self._mul_poly(sq, sq)
                k >>= 1
            return result

        if power(n) != 1:
            return False
        return all(power(n // r) != 1 for r in _prime_factors(n))

    def _base_add(self, a: int, b: int) -> int:
        return (a + b) % self.p if self.base is None else self.base.add(a, b)

    def _base_mul(self, a: int, b: int) -> int:
        return (a * b) % self.p if self.base is None else self.base.mul(a, b)

    def _base_neg(self, a: int) -> int:
        return (-a) % self.p if self.base is None else self.base.neg(a)

    def _digits(self, a: int) -> list[int]:
        b = self.base_order
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, b)
            out.append(r)
        return out

    def _undigits(self, digits) -> int:
        b = self.base_order
        v = 0
        for c in reversed(list(digits)):
            v = v * b + c
        return v

    def _mul_poly(self, a: int, b: int) -> int:
        """Schoolbook product modulo the defining polynomial (table-free)."""
        d = self.degree
        if d == 1:
            return self._base_mul(a, b)
        ad, bd = self._digits(a), self._digits(b)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(ad):
            if not x:
                continue
            for j, y in enumerate(bd):
                if y:
                    prod[i + j] = self._base_add(prod[i + j], self._base_mul(x, y))
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if not c:
                continue
            # modulus is monic: x^d = -sum_{j<d} m_j x^j
            for j in range(d):
                if self.modulus[j]:
                    prod[i - d + j] = self._base_add(prod[i - d + j], self._base_neg(self._base_mul(c, self.modulus[j])))
            prod[i] = 0
        return self._undigits(prod[:d])

    def _times_x(self, a: int) -> int:
        d = self.degree
        ad = self._digits(a)
        top = ad[-1]
        shifted = [0] + ad[:-1]
        if top:
            for j in range(d):
                if self.modulus[j]:
                    shifted[j] = self._base_add(shifted[j], self._base_neg(self._base_mul(top, self.modulus[j])))
        return self._undigits(shifted)

    def _cycle(self, step) -> list[int] | None:
        """Powers 1, g, g^2, ... of a generator given by ``step``; None if not primitive."""
        n = self.order - 1
        powers = [1]
        cur = 1
        for _ in range(n - 1):
            cur = step(cur)
            if cur == 1 or cur == 0:
                return None
            powers.append(cur)
        if step(cur) != 1:
            return None
        return powers

    def _build_tables(self):
        n = self.order - 1
        if n == 1:
            return [1], [0, 0], 1
        if self.degree > 1:
            powers = self._cycle(self._times_x)
        else:
            powers = None
        if powers is None:
            # x is not primitive (or this is a prime field): search the
            # smallest primitive element directly.
            for g in range(1, self.order):
                powers = self._cycle(lambda a, g=g: self._mul_poly(a, g))
                if powers is not None:
                    break
            else:  # pragma: no cover - guarded by the irreducibility check
                raise FieldError("no primitive element found")
        log = [0] * self.order
        for i, v in enumerate(powers):
            log[v] = i
        alpha = next(g for g in range(1, self.order) if math.gcd(log[g], n) == 1)
        if alpha != powers[1]:
            a_log = log[alpha]
            powers = [powers[(a_log * i) % n] for i in range(n)]
            for i, v in enumerate(powers):
                log[v] = i
        return powers, log, alpha

    # -- arithmetic on integer encodings ---------------------------------

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out, place = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * place
            place *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return self.add_table[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        out, place = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * place
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def exp(self, i: int) -> int:
        """``alpha**i``."""
        return self._exp[i % (self.order - 1)]

    def log(self, a: int) -> int:
        """Discrete logarithm to base ``alpha``."""
        if a == 0:
            raise FieldError("log of zero")
        return self._log[a]

    def frobenius(self, a: int, i: int = 1) -> int:
        """``a ** (p**i)``."""
        if a == 0:
            return 0
        n = self.order - 1
        return self._exp[(self._log[a] * pow(self.p, i, n)) % n]

    def to_vector(self, a: int) -> tuple[int, ...]:
        """Coordinates over the base field in the basis 1, x, ..., x^(d-1)."""
        if not 0 <= a < self.order:
            raise FieldError(f"{a} is not an element of GF({self.order})")
        return tuple(self._digits(a))

    def from_vector(self, v) -> int:
        v = tuple(v)
        if len(v) != self.degree:
            raise FieldError(f"expected {self.degree} coordinates, got {len(v)}")
        if any(not 0 <= c < self.base_order for c in v):
            raise FieldError("coordinate outside the base field")
        return self._undigits(v)

    def element(self, value: int) -> FieldElement:
        if not 0 <= value < self.order:
            raise FieldError(f"{value} is not an element of GF({self.order})")
        return FieldElement(self, value)

    def elements(self):
        return range(self.order)

    def describe(self) -> dict:
        """JSON-ready description (prime-field based fields only)."""
        out = {"p": self.p, "e": self.e, "modulus": list(self.modulus), "alpha": self.alpha}
        if self.base is not None:
            out["base"] = self.base.describe()
        return out

    def __repr__(self) -> str:
        if self.base is None:
            return f"GF({self.p}^{self.degree}, modulus={list(self.modulus)})"
        return f"GF({self.base_order}^{self.degree} over {self.base!r}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.degree, self.modulus, self.base) == (other.p, other.degree, other.modulus, other.base)

    def __hash__(self) -> int:
        return hash((self.p, self.degree, self.modulus, self.base))


@dataclass(frozen=True)
class FieldElement:
    """An element bundled with its field, for readable interactive arithmetic."""

    field: FieldSpec
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("operands belong to different fields")
            return other.value
        if isinstance(other, int):
            return self.field.element(other).value
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, i: int = 1) -> FieldElement:
        return FieldElement(self.field, self.field.frobenius(self.value, i))

    def to_vector(self) -> tuple[int, ...]:
        return self.field.to_vector(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}@GF({self.field.order})"


# -- polynomial helpers over a field (coefficient lists, low to high) --------


def _poly_divmod_is_zero(num: list[int], den: list[int], add, mul, neg, inv) -> bool:
    num = list(num)
    lead_inv = inv(den[-1])
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if not c:
            continue
        f = mul(c, lead_inv)
        for j in range(dd + 1):
            num[i - dd + j] = add(num[i - dd + j], neg(mul(f, den[j])))
    return not any(num[:dd])


def _ops(base: FieldSpec | None, p: int):
    if base is None:
        return (lambda a, b: (a + b) % p, lambda a, b: (a * b) % p, lambda a: (-a) % p, lambda a: pow(a, p - 2, p), p)
    return base.add, base.mul, base.neg, base.inv, base.order


def is_irreducible(modulus, base: FieldSpec | None = None, p: int | None = None) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= d/2."""
    if base is None and p is None:
        raise FieldError("need a base field or a prime")
    add, mul, neg, inv, b = _ops(base, p if base is None else base.p)
    modulus = list(modulus)
    d = len(modulus) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if modulus[0] == 0:
        return False
    for deg in range(1, d // 2 + 1):
        for low in itertools.product(range(b), repeat=deg):
            if _poly_divmod_is_zero(modulus, list(low) + [1], add, mul, neg, inv):
                return False
    return True


def _check_modulus(modulus, degree: int, bound: int) -> tuple[int, ...]:
    modulus = tuple(int(c) for c in modulus)
    if len(modulus) != degree + 1 or modulus[-1] != 1:
        raise FieldError(f"modulus must be monic of degree {degree}: {modulus}")
    if any(not 0 <= c < bound for c in modulus):
        raise FieldError("modulus coefficient outside the base field")
    return modulus


@lru_cache(maxsize=None)
def field_new(p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """GF(p^e) with a verified irreducible modulus and its smallest primitive element."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError("extension degree must be at least 1")
    if p**e > MAX_ORDER:
        raise FieldError(f"GF({p}^{e}) exceeds the supported bound {MAX_ORDER}")
    if modulus is None:
        modulus = _default_modulus(p, e)
    modulus = _check_modulus(modulus, e, p)
    if not is_irreducible(modulus, p=p):
        raise FieldError(f"modulus {modulus} is reducible over F_{p}")
    return FieldSpec(p, e, modulus)


def field_of_order(q: int) -> FieldSpec:
    p, e = prime_power(q)
    return field_new(p, e)


@lru_cache(maxsize=None)
def extension_field(base: FieldSpec, m: int, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """F_{q^m} realised as polynomials over ``base`` modulo a degree-m irreducible."""
    if m < 1:
        raise FieldError("extension degree must be at least 1")
    if base.order**m > MAX_ORDER:
        raise FieldError(f"GF({base.order}^{m}) exceeds the supported bound {MAX_ORDER}")
    if modulus is None:
        prime_base = base.base is None and base.degree == 1
        modulus = _default_modulus(base.p, m) if prime_base else _search_modulus(base, m)
    modulus = _check_modulus(modulus, m, base.order)
    if not is_irreducible(modulus, base=base):
        raise FieldError(f"modulus {modulus} is reducible over GF({base.order})")
    return FieldSpec(base.p, m, modulus, base=base)


def _default_modulus(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return (0, 1)
    if p == 2 and e in _BINARY_PRIMITIVE:
        coeffs = [0] * (e + 1)
        for i in _BINARY_PRIMITIVE[e]:
            coeffs[i] = 1
        return tuple(coeffs)
    return _search_modulus(None, e, p)


def _search_modulus(base: FieldSpec | None, d: int, p: int | None = None) -> tuple[int, ...]:
    """Smallest (integer-encoded) monic primitive polynomial of degree d.

    Falls back to the smallest irreducible one, which cannot happen in
    practice since primitive polynomials exist for every degree.
    """
    b = base.order if base is not None else p
    first_irreducible = None
    for code in range(b**d):
        low = []
        c = code
        for _ in range(d):
            c, r = divmod(c, b)
            low.append(r)
        modulus = tuple(low) + (1,)
        if not is_irreducible(modulus, base=base, p=p):
            continue
        if first_irreducible is None:
            first_irreducible = modulus
        ring = FieldSpec._ring(base.p if base is not None else p, d, modulus, base)
        if ring._x_is_primitive():
            return modulus
    if first_irreducible is None:  # pragma: no cover
        raise FieldError(f"no irreducible polynomial of degree {d}")
    return first_irreducible
