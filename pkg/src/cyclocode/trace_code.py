"""Trace-defined cyclic codes, per-tuple weights, and the exhaustive oracle.

A code is specified by a field GF(r), r = q^m, and orders n_1..n_u that are
pairwise coprime divisors of r - 1.  The generators are g_i = alpha^N_i
with N_i = (r-1)/n_i, and the codeword of a coefficient tuple has
coordinates trace(sum_i a_i g_i^t) for t = 0..n-1, n = prod n_i.  An
optional trailing constant term adds a fixed c inside the trace.

Weights come two ways: weight_bruteforce streams the n coordinates and
counts the nonzero ones, and weight_closedform evaluates the character-sum
expression through Gauss-period tables.  distribution_bruteforce sweeps all
coefficient tuples (the constant term collapsed to its q trace values) and
is the ground truth the closed-form tables are checked against.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cyclotomy import CycInt, GaussPeriodTable, gauss_period_direct
from .errors import BudgetError, ComputationError, ParameterError
from .field import ZERO, FieldSpec, build_field
from .numth import mult_order, prime_power_split

DEFAULT_MAX_TUPLES = 1 << 26
BUDGET_ENV = "CYCLOCODE_MAX_TUPLES"


def _max_tuples() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_MAX_TUPLES
    try:
        return int(raw)
    except ValueError as exc:
        raise ParameterError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc


class CodeSpec:
    """Validated parameters of one code; immutable once constructed."""

    def __init__(self, field: FieldSpec, orders, with_unit_term: bool = False):
        self.field = field
        self.orders = tuple(int(n) for n in orders)
        self.with_unit_term = bool(with_unit_term)
        self.u = len(self.orders)
        self._rows_cache = None
        self._trace_zero = None
        self._trace_qidx = None
        self._neg_qidx = None
        self._period_tables = None
        self.validate()
        M = field.r - 1
        self.big_n = tuple(M // n for n in self.orders)
        self.n = math.prod(self.orders)
        self.generators = tuple(N % M if M > 0 else 0 for N in self.big_n)
        delta = M
        for N in self.big_n:
            delta = math.gcd(delta, N)
        if self.n != M // delta:
            raise ComputationError("length does not match gcd of the N_i")

    def validate(self) -> "CodeSpec":
        M = self.field.r - 1
        if not self.orders:
            raise ParameterError("at least one order is required")
        for n in self.orders:
            if n < 1:
                raise ParameterError(f"order {n} is not positive")
            if M % n:
                raise ParameterError(f"order {n} does not divide r - 1 = {M}")
        for i in range(self.u):
            for j in range(i + 1, self.u):
                g = math.gcd(self.orders[i], self.orders[j])
                if g != 1:
                    raise ParameterError(
                        f"orders {self.orders[i]} and {self.orders[j]} share the factor {g}"
                    )
        return self

    def __repr__(self):
        unit = "+1" if self.with_unit_term else ""
        return f"CodeSpec(q={self.field.q}, m={self.field.m}, orders={list(self.orders)}{unit})"

    # -- tuple bookkeeping -------------------------------------------------

    def tuple_width(self) -> int:
        """Coefficients per tuple (the constant term counts as one)."""
        return self.u + (1 if self.with_unit_term else 0)

    def tuple_count(self) -> int:
        """Tuples the oracle enumerates; the constant term contributes a
        factor q (trace values), not r."""
        total = self.field.r**self.u
        if self.with_unit_term:
            total *= self.field.q
        return total

    # -- cached lookup tables ------------------------------------------------

    def _rows(self):
        """_rows()[i][a+1] is the length-n list of exponents of a*g_i^t,
        or None when a is zero."""
        if self._rows_cache is None:
            M = self.field.r - 1
            n = self.n
            all_rows = []
            for N in self.big_n:
                step = [(N * t) % M for t in range(n)]
                comp = [None]
                for a in range(M):
                    comp.append([(a + s) % M for s in step])
                all_rows.append(comp)
            self._rows_cache = all_rows
        return self._rows_cache

    def _tz(self):
        """_tz()[v+1] is 1 when the element with exponent v has subfield
        trace zero (v == -1 is the zero element)."""
        if self._trace_zero is None:
            tr = self.field.subfield_trace_table()
            self._trace_zero = [1] + [1 if t == ZERO else 0 for t in tr]
        return self._trace_zero

    def _qidx(self):
        """_qidx()[v+1] is the subfield index (0 for zero, 1 + e/N0 else)
        of the subfield trace of the element with exponent v."""
        if self._trace_qidx is None:
            n0 = self.field.subfield_generator_exponent
            tr = self.field.subfield_trace_table()
            self._trace_qidx = [0] + [0 if t == ZERO else 1 + t // n0 for t in tr]
        return self._trace_qidx

    def _negq(self):
        """_negq()[i] is the subfield index of the negative of subfield
        element number i."""
        if self._neg_qidx is None:
            field = self.field
            n0 = field.subfield_generator_exponent
            out = []
            for x in field.subfield_elements():
                nx = field.neg(x)
                out.append(0 if nx == ZERO else 1 + nx // n0)
            self._neg_qidx = out
        return self._neg_qidx

    def period_tables(self) -> list[GaussPeriodTable]:
        """Direct Gauss-period tables for each component order (cached)."""
        if self._period_tables is None:
            self._period_tables = [gauss_period_direct(self.field, N) for N in self.big_n]
        return self._period_tables


def code_spec(q: int, m: int, orders, with_unit_term: bool = False) -> CodeSpec:
    """Build the code for alphabet size q = p^s and extension degree m."""
    try:
        p, s = prime_power_split(q)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc
    if m < 1:
        raise ParameterError("m must be a positive integer")
    field = build_field(p, s, m)
    return CodeSpec(field, orders, with_unit_term)


def validate(spec: CodeSpec) -> CodeSpec:
    """Re-run the CodeSpec admissibility checks."""
    return spec.validate()


@dataclass
class WeightDistribution:
    """weight -> frequency map, at tuple or codeword granularity."""

    entries: dict[int, int]
    level: str  # "tuple" or "codeword"
    n: int
    q: int

    def total(self) -> int:
        return sum(self.entries.values())

    def kernel_size(self) -> int:
        return self.entries.get(0, 0)

    def items_sorted(self):
        return sorted(self.entries.items())

    def min_nonzero_weight(self) -> int:
        return min(w for w in self.entries if w > 0)


# -- per-tuple weights -------------------------------------------------------


def _check_tuple(spec: CodeSpec, a) -> tuple:
    a = tuple(a)
    if len(a) != spec.tuple_width():
        raise ParameterError(
            f"expected {spec.tuple_width()} coefficients, got {len(a)}"
        )
    return a


def codeword(spec: CodeSpec, a):
    """The length-n codeword over GF(q), as subfield elements."""
    a = _check_tuple(spec, a)
    field = spec.field
    M = field.r - 1
    n = spec.n
    acc = [ZERO] * n
    for coeff, N in zip(a, spec.big_n):
        if coeff == ZERO:
            continue
        for t in range(n):
            acc[t] = field.add(acc[t], (coeff + N * t) % M)
    if spec.with_unit_term and a[-1] != ZERO:
        c = a[-1]
        for t in range(n):
            acc[t] = field.add(acc[t], c)
    return [field.trace_to_subfield(x) for x in acc]


def weight_bruteforce(spec: CodeSpec, a) -> int:
    """Hamming weight by streaming the n coordinates and counting zeros."""
    a = _check_tuple(spec, a)
    field = spec.field
    M = field.r - 1
    zech = field.zech
    n = spec.n
    tz = spec._tz()
    acc = [ZERO] * n
    rows = []
    for coeff, N in zip(a, spec.big_n):
        if coeff != ZERO:
            rows.append([(coeff + N * t) % M for t in range(n)])
    if spec.with_unit_term and a[-1] != ZERO:
        rows.append([a[-1]] * n)
    for row in rows:
        for t in range(n):
            x = acc[t]
            y = row[t]
            if x == ZERO:
                acc[t] = y
            elif y != ZERO:
                d = y - x
                if d < 0:
                    d += M
                z = zech[d]
                acc[t] = ZERO if z == ZERO else (x + z) % M
    zeros = sum(tz[v + 1] for v in acc)
    return n - zeros


def weight_closedform(spec: CodeSpec, a, periods=None) -> int:
    """Hamming weight from Gauss periods.

    For y running over the nonzero subfield elements, each component
    contributes the factor n_i when a_i = 0 and otherwise the period of
    order N_i indexed by the class of y * a_i; the constant term, when
    present, contributes the additive-character value at y * c.  The sum of
    the factor products over y is a rational integer and determines the
    weight exactly.
    """
    a = _check_tuple(spec, a)
    if periods is None:
        periods = spec.period_tables()
    field = spec.field
    p = field.p
    q = field.q
    M = field.r - 1
    n0 = field.subfield_generator_exponent
    n = spec.n
    prime_tr = field.prime_trace_table() if spec.with_unit_term else None
    total = CycInt.from_int(p, 0)
    for v in range(q - 1):
        y = n0 * v
        scale = 1
        prod = None
        for i in range(spec.u):
            coeff = a[i]
            if coeff == ZERO:
                scale *= spec.orders[i]
                continue
            factor = periods[i][(y + coeff) % spec.big_n[i]]
            prod = factor if prod is None else prod * factor
        if spec.with_unit_term and a[-1] != ZERO:
            factor = CycInt.zeta_pow(p, prime_tr[(y + a[-1]) % M])
            prod = factor if prod is None else prod * factor
        if prod is None:
            prod = CycInt.from_int(p, 1)
        total = total + prod * scale
    s = total.as_int()
    numerator = (q - 1) * n - s
    if numerator % q:
        raise ComputationError("closed-form weight is not an integer")
    w = numerator // q
    if not 0 <= w <= n:
        raise ComputationError(f"closed-form weight {w} out of range [0, {n}]")
    return w


# -- exhaustive distribution ------------------------------------------------


def _sweep(spec: CodeSpec, first_values) -> list[int]:
    """Frequency list over all tuples whose leading coefficient is in
    first_values (exponent + 1 encoding: 0 means the zero element)."""
    field = spec.field
    M = field.r - 1
    r = field.r
    q = field.q
    n = spec.n
    zech = field.zech
    rows = spec._rows()
    freq = [0] * (n + 1)
    unit = spec.with_unit_term
    tz = spec._tz()
    qidx = spec._qidx() if unit else None
    negq = spec._negq() if unit else None
    depth_last = spec.u - 1
    zero_partial = [ZERO] * n

    def leaf(partial):
        last_rows = rows[depth_last]
        for ap in range(r):
            row = last_rows[ap]
            if unit:
                hist = [0] * q
                if row is None:
                    for t in range(n):
                        hist[qidx[partial[t] + 1]] += 1
                else:
                    for t in range(n):
                        x = partial[t]
                        y = row[t]
                        if x < 0:
                            v = y
                        elif y < 0:
                            v = x
                        else:
                            d = y - x
                            if d < 0:
                                d += M
                            z = zech[d]
                            if z < 0:
                                v = -1
                            else:
                                v = x + z
                                if v >= M:
                                    v -= M
                        hist[qidx[v + 1]] += 1
                for w in range(q):
                    freq[n - hist[negq[w]]] += 1
            else:
                zeros = 0
                if row is None:
                    for t in range(n):
                        zeros += tz[partial[t] + 1]
                else:
                    for t in range(n):
                        x = partial[t]
                        y = row[t]
                        if x < 0:
                            v = y
                        elif y < 0:
                            v = x
                        else:
                            d = y - x
                            if d < 0:
                                d += M
                            z = zech[d]
                            if z < 0:
                                v = -1
                            else:
                                v = x + z
                                if v >= M:
                                    v -= M
                        zeros += tz[v + 1]
                freq[n - zeros] += 1

    def descend(depth, partial, values):
        if depth == depth_last:
            leaf(partial)
            return
        comp = rows[depth]
        for ap in values:
            row = comp[ap]
            if row is None:
                descend(depth + 1, partial, range(r))
                continue
            merged = [0] * n
            for t in range(n):
                x = partial[t]
                y = row[t]
                if x < 0:
                    v = y
                elif y < 0:
                    v = x
                else:
                    d = y - x
                    if d < 0:
                        d += M
                    z = zech[d]
                    if z < 0:
                        v = -1
                    else:
                        v = x + z
                        if v >= M:
                            v -= M
                merged[t] = v
            descend(depth + 1, merged, range(r))

    if spec.u == 1:
        # single component: restrict the leaf loop to the requested slice
        last_rows = rows[0]
        restricted = [last_rows[ap] for ap in first_values]
        saved, rows_patch = rows[0], restricted

        def leaf_slice():
            for row in rows_patch:
                fake = row if row is not None else zero_partial
                if unit:
                    hist = [0] * q
                    for t in range(n):
                        hist[qidx[fake[t] + 1]] += 1
                    for w in range(q):
                        freq[n - hist[negq[w]]] += 1
                else:
                    zeros = sum(tz[v + 1] for v in fake)
                    freq[n - zeros] += 1

        leaf_slice()
    else:
        descend(0, zero_partial, first_values)
    return freq


def distribution_bruteforce(spec: CodeSpec, threads: int = 1) -> WeightDistribution:
    """Tuple-level weight distribution by exhaustive enumeration.

    The sweep is partitioned over the leading coefficient and merged, so
    thread counts never change the result.  The constant term, when
    present, is enumerated by its q possible trace values.
    """
    budget = _max_tuples()
    if spec.tuple_count() > budget:
        raise BudgetError(
            f"{spec.tuple_count()} tuples exceed the budget {budget} "
            f"(override with {BUDGET_ENV})"
        )
    r = spec.field.r
    all_values = list(range(r))
    if threads is None or threads < 2 or r < 2 * threads:
        freq = _sweep(spec, all_values)
    else:
        chunks = [all_values[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda ch: _sweep(spec, ch), chunks))
        freq = [sum(col) for col in zip(*parts)]
    entries = {w: f for w, f in enumerate(freq) if f}
    dist = WeightDistribution(entries, "tuple", spec.n, spec.field.q)
    if dist.total() != spec.tuple_count():
        raise ComputationError("oracle frequencies do not sum to the tuple count")
    return dist


def collapse_to_codewords(dist: WeightDistribution) -> WeightDistribution:
    """Divide tuple frequencies by the kernel size (weight-0 count).

    The tuple -> codeword map is linear, so every fiber over a codeword has
    the same size; any divisibility failure is an internal error.
    """
    if dist.level != "tuple":
        raise ParameterError("collapse expects a tuple-level distribution")
    kappa = dist.kernel_size()
    if kappa < 1:
        raise ComputationError("tuple distribution is missing the zero tuple")
    entries = {}
    for w, f in dist.entries.items():
        if f % kappa:
            raise ComputationError(f"frequency {f} at weight {w} is not divisible by {kappa}")
        entries[w] = f // kappa
    remaining = dist.total() // kappa
    while remaining % dist.q == 0:
        remaining //= dist.q
    if remaining != 1:
        raise ComputationError("codeword count is not a power of q")
    return WeightDistribution(entries, "codeword", dist.n, dist.q)


def dimension(spec: CodeSpec) -> int:
    """Code dimension: sum of the multiplicative orders of q modulo each
    n_i (the degrees of the generators' minimal polynomials), plus one for
    the constant term."""
    q = spec.field.q
    k = sum(mult_order(q, n) for n in spec.orders)
    if spec.with_unit_term:
        k += 1
    return k
