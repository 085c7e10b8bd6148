"""Table-driven arithmetic in small finite fields GF(p^k), q <= 128.

An element is an integer index in [0, q): index sum(c_i * p**i) stands for
the residue class of c_0 + c_1 x + ... + c_{k-1} x^{k-1} modulo the field's
fixed defining polynomial.  Index 0 is zero and index 1 is one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_Q = 128


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class TooLarge(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


# Defining polynomials, ascending coefficient lists (monic).  Part of the
# external interface: element encodings depend on these choices.
MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


# -- polynomial helpers over GF(p), used only at construction time ----------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _poly_trim(a)
    return a


def _monic_polys(degree, p):
    for n in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _poly_trim(poly)
    k = len(poly) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for f in _monic_polys(d, p):
            if not _poly_mod(poly, f, p):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FieldSpec:
    p: int
    k: int
    q: int
    modulus: tuple
    primitive: int
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)

    def __repr__(self):
        return f"GF({self.q})"

    @property
    def elements(self):
        return range(self.q)

    def add(self, a, b):
        return int(self.add_table[a, b])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.inv_table[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def exp(self, n: int):
        return int(self.exp_table[n % (self.q - 1)])

    def log(self, a):
        if a == 0:
            raise DivisionByZero("log of zero")
        return int(self.log_table[a])

    def frobenius(self, a, i: int = 1):
        return self.pow(a, self.p ** (i % self.k)) if a else 0

    def order(self, a) -> int:
        """Multiplicative order of a nonzero element."""
        from math import gcd
        return (self.q - 1) // gcd(self.log(a), self.q - 1)

    def sum(self, values):
        s = 0
        for v in values:
            s = int(self.add_table[s, v])
        return s

    def from_int(self, n: int):
        """Image of the integer n under Z -> GF(p) -> GF(q)."""
        return n % self.p

    def coords(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out


def _build(p, k, modulus):
    q = p ** k
    idx = np.arange(q)
    digits = np.array([(idx // p ** i) % p for i in range(k)]).T  # (q, k)
    weights = p ** np.arange(k)

    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    neg = ((-digits) % p) @ weights

    mul = np.zeros((q, q), dtype=np.int32)
    for a in range(q):
        da = digits[a]
        for b in range(a, q):
            prod = [0] * (2 * k - 1)
            for i in range(k):
                if da[i]:
                    for j in range(k):
                        prod[i + j] += int(da[i]) * int(digits[b, j])
            r = _poly_mod([c % p for c in prod], modulus, p)
            v = sum(c * p ** i for i, c in enumerate(r))
            mul[a, b] = mul[b, a] = v

    order = None
    exp_table = log_table = None
    for g in range(1, q):
        seq = [1]
        x = 1
        for _ in range(q - 2):
            x = int(mul[x, g])
            if x == 1:
                break
            seq.append(x)
        if len(seq) == q - 1:
            order = g
            exp_table = np.array(seq, dtype=np.int32)
            break
    log_table = np.full(q, -1, dtype=np.int32)
    log_table[exp_table] = np.arange(q - 1, dtype=np.int32)

    inv = np.zeros(q, dtype=np.int32)
    inv[exp_table] = exp_table[(-np.arange(q - 1)) % (q - 1)]

    if k == 1:
        modulus = ((-order) % p, 1)  # x - g for the primitive root g
    add = add.astype(np.int32)
    neg = neg.astype(np.int32)
    for t in (add, neg, mul, inv, exp_table, log_table):
        t.setflags(write=False)
    return FieldSpec(p, k, q, tuple(modulus), order, add, mul, neg, inv,
                     exp_table, log_table)


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1 or p ** k > MAX_Q:
        raise TooLarge(f"GF({p}^{k}) exceeds q <= {MAX_Q}")
    if k == 1:
        modulus = (0, 1)
    else:
        modulus = MODULI[(p, k)]
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} for GF({p}^{k}) is reducible")
    return _build(p, k, modulus)


def field_for(q: int) -> FieldSpec:
    p, k = prime_power(q)
    return make_field(p, k)


def arith(F: FieldSpec, op: str, a, b=None):
    if op == "add":
        return F.add(a, b)
    if op == "mul":
        return F.mul(a, b)
    if op == "neg":
        return F.neg(a)
    if op == "inv":
        return F.inv(a)
    if op == "pow":
        return F.pow(a, b)
    raise ValueError(f"unknown operation {op!r}")
