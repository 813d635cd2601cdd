"""Small finite fields GF(p^(s*m)) in discrete-log form.

A field is built once: the modulus is the monic irreducible polynomial of
degree s*m over GF(p) with the smallest packed coefficient integer
(sum c_i * p^i), and the reference generator alpha is the nonzero element
with the smallest packed polynomial representation whose multiplicative
order is r - 1.  Both choices are deterministic, so runs are reproducible
and discrete logarithms are stable labels.

Nonzero elements are plain ints: the exponent e in [0, r-2] stands for
alpha**e; the zero element is the sentinel ZERO == -1.  Addition goes
through a Zech-logarithm table, everything else is exponent arithmetic.

GF(q) with q = p**s sits inside GF(r) as the exponents divisible by
N0 = (r-1)/(q-1), together with zero.  Prime-field values are reported as
plain integers in [0, p).

FieldSpec instances are immutable after construction and safe to share
across threads; build_field memoizes them per (p, s, m).
"""

from __future__ import annotations

import functools
import math

from .errors import ComputationError, ParameterError
from .numth import is_prime, prime_factors

ZERO = -1

#: Largest supported field; the Zech table keeps r ints in memory.
MAX_FIELD_SIZE = 1 << 22


def _digits(v: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        v, c = divmod(v, p)
        out.append(c)
    return out


def _pack(coeffs, p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_mul_mod(a, b, mod, p):
    """Product of coefficient lists a, b reduced by the monic poly mod."""
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    d = len(mod) - 1
    for i in range(len(res) - 1, d - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(d):
                res[i - d + j] = (res[i - d + j] - c * mod[j]) % p
    return _poly_trim(res[:d])


def _poly_pow_mod(a, k, mod, p):
    res, base = [1], _poly_trim(list(a))
    while k:
        if k & 1:
            res = _poly_mul_mod(res, base, mod, p)
        base = _poly_mul_mod(base, base, mod, p)
        k >>= 1
    return res


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ai = a[i] if i < len(a) else 0
        bi = b[i] if i < len(b) else 0
        out[i] = (ai - bi) % p
    return _poly_trim(out)


def _poly_mod(a, b, p):
    a = _poly_trim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        c = a[-1] * inv_lead % p
        for j in range(len(b)):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
        a = _poly_trim(a)
    return a


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_irreducible(f, p) -> bool:
    """Frobenius test: x^(p^d) == x mod f, and for every prime t | d the
    polynomial x^(p^(d/t)) - x is coprime to f."""
    d = len(f) - 1
    x = [0, 1]
    checkpoints = {d // t for t in prime_factors(d)}
    h = x
    for e in range(1, d + 1):
        h = _poly_pow_mod(h, p, f, p)
        if e in checkpoints:
            g = _poly_gcd(_poly_sub(h, x, p), f, p)
            if len(g) - 1 > 0:
                return False
    return h == _poly_trim(x)


def _smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    if d == 1:
        return (0, 1)  # the polynomial x
    for v in range(p**d):
        low = _digits(v, p, d)
        if low[0] == 0:
            continue  # divisible by x
        f = low + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise ComputationError(f"no irreducible polynomial of degree {d} over GF({p})")


class FieldSpec:
    """Immutable finite field GF(p^(s*m)) with table-driven arithmetic.

    Treat instances as read-only; all methods are pure and thread safe.
    """

    def __init__(self, p: int, s: int, m: int):
        if not is_prime(p):
            raise ParameterError(f"p = {p} is not prime")
        if s < 1 or m < 1:
            raise ParameterError("s and m must be positive integers")
        degree = s * m
        r = p**degree
        if r > MAX_FIELD_SIZE:
            raise ParameterError(f"field size {r} exceeds bound {MAX_FIELD_SIZE}")
        self.p = p
        self.s = s
        self.m = m
        self.degree = degree
        self.q = p**s
        self.r = r
        self.modulus = _smallest_irreducible(p, degree)
        self.subfield_generator_exponent = (r - 1) // (self.q - 1) if self.q > 1 else 1

        M = r - 1
        mod = list(self.modulus)
        ell_checks = [(M // ell) for ell in prime_factors(M)]
        alpha = None
        for v in range(1, r):
            cand = _poly_trim(_digits(v, p, degree))
            if all(_poly_pow_mod(cand, k, mod, p) != [1] for k in ell_checks):
                alpha = cand
                break
        if alpha is None:
            raise ComputationError("no primitive element found")
        self.alpha_poly = tuple(alpha) + (0,) * (degree - len(alpha))

        exp_value = [0] * M
        cur = [1]
        for e in range(M):
            exp_value[e] = _pack(cur, p) if cur else 0
            cur = _poly_mul_mod(cur, alpha, mod, p)
        if _pack(cur, p) != 1:
            raise ComputationError("generator order is not r - 1")
        value_exp = [ZERO] * r
        for e, v in enumerate(exp_value):
            if value_exp[v] != ZERO or v == 0:
                raise ComputationError("power table is not a bijection")
            value_exp[v] = e
        zech = [0] * M
        for e in range(M):
            v = exp_value[e]
            c0 = v % p
            v1 = v - c0 + (c0 + 1) % p  # packed value of 1 + alpha^e
            zech[e] = value_exp[v1] if v1 else ZERO
        self._exp_value = exp_value
        self._value_exp = value_exp
        self.zech = zech
        self._prime_trace = None
        self._subfield_trace = None

    # -- representation ------------------------------------------------

    def __repr__(self):
        return f"FieldSpec(p={self.p}, s={self.s}, m={self.m}, r={self.r})"

    def element(self, e: int) -> int:
        """The element alpha**e (exponent normalized mod r - 1)."""
        return e % (self.r - 1)

    def from_value(self, v: int) -> int:
        if not 0 <= v < self.r:
            raise ParameterError(f"packed value {v} out of range")
        return self._value_exp[v]

    def value(self, x: int) -> int:
        """Packed polynomial representation (sum c_i * p^i) of an element."""
        return 0 if x == ZERO else self._exp_value[x]

    def poly(self, x: int) -> tuple[int, ...]:
        return tuple(_digits(self.value(x), self.p, self.degree))

    def elements(self):
        """All r elements: ZERO then alpha^0 .. alpha^(r-2)."""
        yield ZERO
        yield from range(self.r - 1)

    # -- arithmetic ------------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        if x == ZERO or y == ZERO:
            return ZERO
        return (x + y) % (self.r - 1)

    def add(self, x: int, y: int) -> int:
        if x == ZERO:
            return y
        if y == ZERO:
            return x
        M = self.r - 1
        d = y - x
        if d < 0:
            d += M
        z = self.zech[d]
        return ZERO if z == ZERO else (x + z) % M

    def neg(self, x: int) -> int:
        if x == ZERO or self.p == 2:
            return x
        return (x + (self.r - 1) // 2) % (self.r - 1)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def inv(self, x: int) -> int:
        if x == ZERO:
            raise ParameterError("zero has no multiplicative inverse")
        return (-x) % (self.r - 1)

    def pow(self, x: int, k: int) -> int:
        if x == ZERO:
            if k > 0:
                return ZERO
            if k == 0:
                return 0
            raise ParameterError("negative power of zero")
        return (x * k) % (self.r - 1)

    def dlog(self, x: int) -> int:
        if x == ZERO:
            raise ParameterError("zero has no discrete logarithm")
        return x

    def order(self, x: int) -> int:
        if x == ZERO:
            raise ParameterError("zero has no multiplicative order")
        return (self.r - 1) // math.gcd(self.r - 1, x)

    # -- traces ----------------------------------------------------------

    def trace_to_subfield(self, x: int) -> int:
        """Trace into GF(q): sum of x^(q^i) for i < m."""
        if x == ZERO:
            return ZERO
        return self.subfield_trace_table()[x]

    def trace_to_prime(self, x: int) -> int:
        """Trace into GF(p), reported as an integer in [0, p)."""
        if x == ZERO:
            return 0
        return self.prime_trace_table()[x]

    def trace(self, x: int, target: str = "q"):
        if target == "q":
            return self.trace_to_subfield(x)
        if target == "p":
            return self.trace_to_prime(x)
        raise ParameterError(f"unknown trace target {target!r}")

    def in_subfield(self, x: int) -> bool:
        return x == ZERO or x % self.subfield_generator_exponent == 0

    def subfield_trace_to_prime(self, x: int) -> int:
        """Trace GF(q) -> GF(p) of a subfield element, as an int in [0, p)."""
        if x == ZERO:
            return 0
        if not self.in_subfield(x):
            raise ParameterError("element is not in the subfield")
        M = self.r - 1
        acc = ZERO
        for i in range(self.s):
            acc = self.add(acc, (x * self.p**i) % M)
        v = self.value(acc)
        if v >= self.p:
            raise ComputationError("subfield trace left the prime field")
        return v

    def prime_trace_table(self):
        """trace_to_prime of alpha^e for every exponent e (cached)."""
        if self._prime_trace is None:
            M = self.r - 1
            powers = [self.p**i % M if M > 1 else 0 for i in range(self.degree)]
            table = [0] * M
            for e in range(M):
                acc = ZERO
                for pw in powers:
                    acc = self.add(acc, (e * pw) % M)
                v = self.value(acc)
                if v >= self.p:
                    raise ComputationError("trace left the prime field")
                table[e] = v
            self._prime_trace = table
        return self._prime_trace

    def subfield_trace_table(self):
        """trace_to_subfield of alpha^e for every exponent e (cached)."""
        if self._subfield_trace is None:
            M = self.r - 1
            powers = [self.q**i % M if M > 1 else 0 for i in range(self.m)]
            n0 = self.subfield_generator_exponent
            table = [0] * M
            for e in range(M):
                acc = ZERO
                for pw in powers:
                    acc = self.add(acc, (e * pw) % M)
                if acc != ZERO and acc % n0:
                    raise ComputationError("trace left the subfield")
                table[e] = acc
            self._subfield_trace = table
        return self._subfield_trace

    def subfield_elements(self):
        """All q elements of GF(q) inside GF(r): ZERO first, then powers
        of the subfield generator alpha^N0 in exponent order."""
        yield ZERO
        n0 = self.subfield_generator_exponent
        for j in range(self.q - 1):
            yield n0 * j


def poly_to_str(coeffs) -> str:
    """Human form of an ascending coefficient sequence, e.g. x^4 + x + 1."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            terms.append(f"{head}x" if i == 1 else f"{head}x^{i}")
    return " + ".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def build_field(p: int, s: int, m: int) -> FieldSpec:
    """Construct (and memoize) GF(p^(s*m)) with subfield GF(p^s)."""
    return FieldSpec(p, s, m)
