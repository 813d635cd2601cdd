"""Exact arithmetic in Z[zeta_p], cyclotomic classes, and Gauss periods.

Gauss periods are computed two ways.  The direct route sums the canonical
additive character over a cyclotomic class, exactly, in Z[zeta_p]; it works
for every order N dividing r - 1.  Three classical closed forms (quadratic,
semi-primitive, index 2) cover special parameter regimes and are validated
against the direct route in the tests.

A caution on labels: period indices are cosets of a chosen generator, so
they are only canonical up to multiplication by a unit.  For the index-2
closed form this matters: the printed assignment of the two non-principal
values to quadratic residues versus non-residues holds for half the valid
generator choices and is swapped for the other half.  Index 0 (and N/2 in
the semi-primitive special case) is invariant, which is what the callers
rely on; whole-table comparisons must allow the quadratic twist.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import ComputationError, ParameterError
from .field import ZERO, FieldSpec
from .numth import is_prime, legendre, mult_order


class CycInt:
    """An element of Z[zeta_p] in the basis 1, zeta, ..., zeta^(p-2).

    The single relation 1 + zeta + ... + zeta^(p-1) = 0 makes the canonical
    coefficient vector unique, so equality and rationality are syntactic.
    Instances are immutable.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != p - 1:
            raise ParameterError(f"need {p - 1} coefficients for Z[zeta_{p}]")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *_):
        raise AttributeError("CycInt is immutable")

    @classmethod
    def from_counts(cls, p: int, counts) -> "CycInt":
        """Reduce a length-p vector of zeta^t coefficients to canonical form."""
        w = counts[p - 1]
        return cls(p, tuple(counts[t] - w for t in range(p - 1)))

    @classmethod
    def from_int(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zeta_pow(cls, p: int, k: int) -> "CycInt":
        counts = [0] * p
        counts[k % p] = 1
        return cls.from_counts(p, counts)

    # -- ring operations ------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ParameterError("mixed cyclotomic characteristics")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        counts = [0] * p
        bc = o.coeffs
        for t1, c1 in enumerate(self.coeffs):
            if c1:
                for t2, c2 in enumerate(bc):
                    if c2:
                        counts[(t1 + t2) % p] += c1 * c2
        return CycInt.from_counts(p, counts)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (CycInt, int)) else None
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        if self.is_rational:
            return f"CycInt({self.p}, {self.coeffs[0]})"
        return f"CycInt({self.p}, coeffs={list(self.coeffs)})"

    # -- queries ----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_int(self) -> int:
        if not self.is_rational:
            raise ComputationError(f"value is not a rational integer: {self!r}")
        return self.coeffs[0]


def cyc_sum(p: int, items) -> CycInt:
    counts = [0] * p
    for it in items:
        for t, c in enumerate(it.coeffs):
            counts[t] += c
    return CycInt.from_counts(p, counts)


@dataclass(frozen=True)
class GaussPeriodTable:
    """The N Gauss periods of order N over the field of r elements.

    values[i] is the character sum over the i-th cyclotomic class; index
    arithmetic is mod N.  The values always sum to -1.
    """

    p: int
    r: int
    N: int
    values: tuple[CycInt, ...]
    source: str  # "direct", "quadratic", "semiprimitive", "index2"

    def __post_init__(self):
        if len(self.values) != self.N:
            raise ParameterError("period table length must equal its order")
        if cyc_sum(self.p, self.values) != -1:
            raise ComputationError("period values do not sum to -1")

    def __getitem__(self, i: int) -> CycInt:
        return self.values[i % self.N]

    def rational_values(self) -> list[int]:
        return [v.as_int() for v in self.values]


# -- direct computation ---------------------------------------------------


def cyclotomic_class(field: FieldSpec, N: int, i: int):
    """The (r-1)/N elements whose discrete log is congruent to i mod N."""
    M = field.r - 1
    if N < 1 or M % N:
        raise ParameterError(f"{N} does not divide r - 1 = {M}")
    base = i % N
    for j in range(M // N):
        yield base + N * j


def additive_character(field: FieldSpec, x: int) -> CycInt:
    """Canonical additive character zeta_p ** trace(x)."""
    return CycInt.zeta_pow(field.p, field.trace_to_prime(x))


def gauss_period_direct(field: FieldSpec, N: int) -> GaussPeriodTable:
    """Exact period table of order N over GF(r) from raw character sums."""
    M = field.r - 1
    if N < 1 or M % N:
        raise ParameterError(f"{N} does not divide r - 1 = {M}")
    p = field.p
    traces = field.prime_trace_table()
    counts = [[0] * p for _ in range(N)]
    for e in range(M):
        counts[e % N][traces[e]] += 1
    values = tuple(CycInt.from_counts(p, c) for c in counts)
    return GaussPeriodTable(p=p, r=field.r, N=N, values=values, source="direct")


def gauss_period_subfield(field: FieldSpec, t: int) -> GaussPeriodTable:
    """Period table of order t over the subfield GF(q).

    Subfield classes are indexed through the same generator alpha: the i-th
    class is the set of subfield elements whose exponent is N0 * j with
    j congruent to i mod t.  The character is the canonical additive
    character of GF(q), so the trace used is the one from GF(q) to GF(p).
    """
    q = field.q
    if t < 1 or (q - 1) % t:
        raise ParameterError(f"{t} does not divide q - 1 = {q - 1}")
    p = field.p
    n0 = field.subfield_generator_exponent
    counts = [[0] * p for _ in range(t)]
    for j in range(q - 1):
        counts[j % t][field.subfield_trace_to_prime(n0 * j)] += 1
    values = tuple(CycInt.from_counts(p, c) for c in counts)
    return GaussPeriodTable(p=p, r=q, N=t, values=values, source="direct")


# -- closed forms -----------------------------------------------------------


def period_quadratic(p: int, s: int, m: int) -> GaussPeriodTable:
    """Order-2 periods over GF(p^(s*m)) for odd p and even extension degree.

    With sm even the square root of r is the integer p^(sm/2) and both
    periods are rational.  Odd sm is rejected: the value is irrational and
    the direct computation should be used instead.
    """
    if not is_prime(p):
        raise ParameterError(f"p = {p} is not prime")
    if p == 2:
        raise ParameterError("order 2 requires an odd field size")
    sm = s * m
    if sm % 2:
        raise ParameterError(
            "period of order 2 is irrational for odd s*m; use the direct computation"
        )
    w = sm // 2
    root = p**w
    if p % 4 == 1:
        eta0 = (-1 - root) // 2
    else:
        eta0 = (-1 - (-1) ** w * root) // 2
    values = (CycInt.from_int(p, eta0), CycInt.from_int(p, -1 - eta0))
    return GaussPeriodTable(p=p, r=p**sm, N=2, values=values, source="quadratic")


def period_semiprimitive(p: int, e: int, f: int, N: int) -> GaussPeriodTable:
    """Order-N periods over GF(p^(2ef)) in the semi-primitive case.

    Requires e to be the least positive integer with p^e == -1 (mod N).
    All periods are rational: one distinguished value and N - 1 copies of a
    common value.  The distinguished index is N/2 when f, p and (p^e + 1)/N
    are all odd, and 0 otherwise.
    """
    if not is_prime(p):
        raise ParameterError(f"p = {p} is not prime")
    if N < 2:
        raise ParameterError("order must be at least 2")
    if e < 1 or f < 1:
        raise ParameterError("e and f must be positive")
    if pow(p, e, N) != N - 1:
        raise ParameterError(f"p^e is not -1 modulo {N}")
    if any(pow(p, j, N) == N - 1 for j in range(1, e)):
        raise ParameterError(f"e = {e} is not minimal for p = {p}, N = {N}")
    root = p ** (e * f)
    r = root * root
    first_case = f % 2 == 1 and p % 2 == 1 and ((p**e + 1) // N) % 2 == 1
    if first_case:
        special_index = N // 2
        special = ((N - 1) * root - 1) // N
        common = -(root + 1) // N
        if ((N - 1) * root - 1) % N or (root + 1) % N:
            raise ComputationError("semi-primitive values are not integral")
    else:
        special_index = 0
        sign = -1 if f % 2 else 1
        special = (-sign * (N - 1) * root - 1) // N
        common = (sign * root - 1) // N
        if (-sign * (N - 1) * root - 1) % N or (sign * root - 1) % N:
            raise ComputationError("semi-primitive values are not integral")
    values = [CycInt.from_int(p, common)] * N
    values[special_index] = CycInt.from_int(p, special)
    return GaussPeriodTable(p=p, r=r, N=N, values=tuple(values), source="semiprimitive")


def semiprimitive_params(p: int, N: int, r: int):
    """Derive (e, f) with p^e == -1 (mod N), e minimal, and r == p^(2ef).

    Returns None when the semi-primitive closed form does not apply.
    """
    if N < 2 or gcd(p, N) != 1:
        return None
    ord_p = mult_order(p, N)
    e = next((j for j in range(1, ord_p + 1) if pow(p, j, N) == N - 1), None)
    if e is None:
        return None
    sm = 0
    rest = r
    while rest % p == 0:
        rest //= p
        sm += 1
    if rest != 1 or sm == 0:
        return None
    if sm % (2 * e):
        return None
    return e, sm // (2 * e)


def class_number_imaginary(N: int) -> int:
    """Class number of the imaginary quadratic field of discriminant -N.

    Counts reduced primitive positive-definite forms (A, B, C) with
    B^2 - 4AC = -N, |B| <= A <= C, B odd, and B >= 0 on the boundary
    |B| = A or A = C.  Valid for prime N congruent to 3 mod 4, N > 3.
    """
    if not is_prime(N) or N % 4 != 3 or N <= 3:
        raise ParameterError("need a prime N > 3 with N == 3 (mod 4)")
    h = 0
    b = 1
    while b * b <= N // 3:
        ac4 = b * b + N
        if ac4 % 4 == 0:
            ac = ac4 // 4
            a = b  # |B| <= A
            while a * a <= ac:
                if ac % a == 0:
                    c = ac // a
                    if gcd(gcd(a, b), c) == 1:
                        # forms (a, b, c) and (a, -b, c); the boundary cases
                        # count once
                        h += 1 if (a == b or a == c) else 2
                a += 1
        b += 2
    return h


def period_index2(N: int, p: int, k: int) -> GaussPeriodTable:
    """Order-N periods over GF(p^((N-1)k/2)) when <p> has index 2 mod N.

    Uses the class number h of the imaginary quadratic field of
    discriminant -N and the unique representation 4p^h = a^2 + N b^2 with
    the congruence a == -2 p^((N-1+2h)/4) (mod N), b > 0, p not dividing b.
    Values are attached to index 0 and to the quadratic-residue and
    non-residue index groups; see the module docstring about the twist
    ambiguity of the latter two.
    """
    if not is_prime(N) or N % 4 != 3 or N <= 3:
        raise ParameterError("need a prime N > 3 with N == 3 (mod 4)")
    if not is_prime(p):
        raise ParameterError(f"p = {p} is not prime")
    if k < 1:
        raise ParameterError("k must be positive")
    if gcd(p, N) != 1:
        raise ParameterError("p must be a unit modulo N")
    if mult_order(p, N) != (N - 1) // 2:
        raise ParameterError(f"<{p}> does not have index 2 modulo {N}")
    h = class_number_imaginary(N)
    if (N - 1 + 2 * h) % 4:
        raise ComputationError(f"(N - 1 + 2h)/4 is not integral for N={N}, h={h}")
    target = (-2 * pow(p, (N - 1 + 2 * h) // 4, N)) % N
    found = None
    four_ph = 4 * p**h
    for b in range(1, isqrt(four_ph // N) + 1):
        rem = four_ph - N * b * b
        a0 = isqrt(rem)
        if a0 * a0 != rem or b % p == 0:
            continue
        for a in (a0, -a0):
            if a % N == target:
                found = (a, b)
                break
        if found:
            break
    if found is None:
        raise ComputationError(f"no (a, b) with 4p^h = a^2 + {N}b^2 and the sign condition")
    a, b = found

    # ((a + b*sqrt(-N))/2)^k tracked as the integer pair (u, v) with value
    # (u + v*sqrt(-N))/2; halving must stay integral at every step.
    u, v = a, b
    for _ in range(k - 1):
        nu, nv = a * u - N * b * v, a * v + b * u
        if nu % 2 or nv % 2:
            raise ComputationError("power recurrence left the half-integer lattice")
        u, v = nu // 2, nv // 2

    exponent = k * (N - 1 - 2 * h)
    if exponent % 4 or exponent < 0:
        raise ComputationError(f"p-power exponent k(N-1-2h)/4 is not admissible for N={N}, h={h}, k={k}")
    P = (-1) ** (k - 1) * p ** (exponent // 4)

    A = Fraction(u, 2)
    B = Fraction(v, 2)
    eta0 = (P * A * (N - 1) - 1) / N
    eta_res = -(P * A + P * B * N + 1) / N
    eta_non = -(P * A - P * B * N + 1) / N
    vals = []
    for frac in (eta0, eta_res, eta_non):
        if frac.denominator != 1:
            raise ComputationError("index-2 period is not a rational integer")
        vals.append(int(frac))
    eta0, eta_res, eta_non = vals
    p_cyc = p
    values = [CycInt.from_int(p_cyc, eta0)] * N
    for i in range(1, N):
        values[i] = CycInt.from_int(p_cyc, eta_res if legendre(i, N) == 1 else eta_non)
    r = p ** ((N - 1) * k // 2)
    return GaussPeriodTable(p=p, r=r, N=N, values=tuple(values), source="index2")
