"""Exact field arithmetic: arbitrary-precision rationals and prime fields.

Rationals are plain ``fractions.Fraction`` values (always normalized, positive
denominator, canonical zero 0/1).  Prime-field elements carry their modulus;
the heavy finite-field kernels elsewhere work on raw ints mod p instead, this
class is the user-facing scalar type.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import BadReduction, DivisionByZero, MixedFields, NoReconstruction

Rational = Fraction

MAX_PRIME = 2**31  # products of residues must fit 64-bit intermediates


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_modulus(p: int):
    if not (2 <= p < MAX_PRIME) or not is_prime(p):
        raise ValueError(f"modulus {p} is not a prime below 2^31")


class FpElement:
    """Residue in [0, p) for a prime p < 2^31."""

    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int, _checked: bool = False):
        if not _checked:
            _check_modulus(p)
        self.residue = residue % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise MixedFields(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p, _checked=True)
        raise MixedFields(f"cannot mix {type(other).__name__} with F_{self.p}")

    def __add__(self, other):
        other = self._coerce(other)
        return FpElement(self.residue + other.residue, self.p, _checked=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return FpElement(self.residue - other.residue, self.p, _checked=True)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return FpElement(self.residue * other.residue, self.p, _checked=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.residue == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        inv = pow(other.residue, self.p - 2, self.p)
        return FpElement(self.residue * inv, self.p, _checked=True)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return FpElement(-self.residue, self.p, _checked=True)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"{self.residue} mod {self.p}"


def field_arith(a, b, op: str):
    """Exact field operation over matching scalars; op in {add,sub,mul,div}."""
    rat = (Fraction, int)
    if isinstance(a, rat) != isinstance(b, rat):
        raise MixedFields(f"cannot combine {type(a).__name__} and {type(b).__name__}")
    if isinstance(a, rat):
        a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        try:
            return a / b
        except ZeroDivisionError:
            raise DivisionByZero("division by zero") from None
    raise ValueError(f"unknown op {op!r}")


def reduce_mod_p(a: Fraction, p: int) -> FpElement:
    """Residue of a rational in F_p; BadReduction when p divides the denominator."""
    _check_modulus(p)
    a = Fraction(a)
    if a.denominator % p == 0:
        raise BadReduction(f"denominator of {a} vanishes mod {p}")
    num = a.numerator % p
    den_inv = pow(a.denominator % p, p - 2, p)
    return FpElement(num * den_inv, p, _checked=True)


def rational_reconstruction(x: int, m: int, bound: int) -> Fraction:
    """The unique n/d with |n| <= bound, 0 < d <= bound, n = x*d mod m.

    Requires m > 2*bound^2; raises NoReconstruction when no such pair exists.
    """
    if m <= 2 * bound * bound:
        raise NoReconstruction(f"modulus {m} too small for bound {bound}")
    x %= m
    # half-extended Euclid on (m, x); invariant r = s*m + t*x
    r0, r1 = m, x
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    n, d = r1, t1
    if d < 0:
        n, d = -n, -d
    if d == 0 or d > bound or abs(n) > bound or gcd(abs(n), d) != 1:
        raise NoReconstruction(f"no rational with bound {bound} matches residue")
    if (n - x * d) % m != 0:
        raise NoReconstruction("reconstruction check failed")
    return Fraction(n, d)


def crt_combine(residues) -> tuple[int, int]:
    """Combine (value, modulus) pairs into (x, M) with x = value mod each modulus."""
    x, m = 0, 1
    for value, p in residues:
        g = gcd(m, p)
        if g != 1:
            raise ValueError("moduli must be pairwise coprime")
        # x' = x + m * ((value - x) * m^{-1} mod p)
        inv = pow(m % p, -1, p)
        x = x + m * (((value - x) * inv) % p)
        m *= p
        x %= m
    return x, m


def crt_lift(residues, bound: int) -> Fraction:
    """Lift residues mod distinct primes to the rational they came from.

    residues: iterable of FpElement, or of (value, prime) pairs.  The product
    of the primes must exceed 2*bound^2 so the numerator/denominator bound
    pins the answer uniquely.
    """
    pairs = []
    for r in residues:
        if isinstance(r, FpElement):
            pairs.append((r.residue, r.p))
        else:
            pairs.append((int(r[0]), int(r[1])))
    if not pairs:
        raise NoReconstruction("no residues given")
    x, m = crt_combine(pairs)
    return rational_reconstruction(x, m, bound)


def symmetric_lift(x: int, m: int) -> int:
    """Representative of x mod m in (-m/2, m/2]."""
    x %= m
    return x - m if x > m // 2 else x


def primes_above(start: int, count: int) -> list[int]:
    """The first `count` primes >= start (used for multi-prime evaluation)."""
    out = []
    n = max(2, start)
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


def scalar_to_str(x) -> str:
    """Serialize a rational as "n" or "n/d" (prime-field values never hit files)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_str(s: str) -> Fraction:
    return Fraction(s)
