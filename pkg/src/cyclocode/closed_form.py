"""Closed-form weight distributions assembled from Gauss-period tables.

The supported shapes are two-order codes, two-order codes with a constant
term, and the degenerate variant where one of the two orders is 1.  Every
evaluator emits a tuple-level frequency map: distinct class-index
combinations that share a weight are merged, since only the merged map is
observable.  All weights are computed as exact fractions and must come out
as integers in [0, n]; anything else raises ComputationError.

The q = 2 constant-term case has no separate formula here: it is the
general constant-term evaluation specialized at q = 2, which the oracle
confirms (a transcription of the binary-specific frequency table would not
count parameter tuples consistently).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomy import CycInt, GaussPeriodTable, cyc_sum, gauss_period_direct, gauss_period_subfield
from .errors import ComputationError, ParameterError
from .trace_code import CodeSpec, WeightDistribution


@dataclass(frozen=True)
class DerivedParams:
    """Index parameters shared by the two-order evaluators."""

    n0: int  # (r-1)/(q-1), exponent of the subfield generator
    N1: int
    N2: int
    d1: int  # gcd(n0, N1)
    d2: int  # gcd(n0, N2)
    d: int   # gcd(n0*N2/d2, N1)


def derive_params(spec: CodeSpec) -> DerivedParams:
    if spec.u != 2:
        raise ParameterError("derived parameters need exactly two orders")
    field = spec.field
    n0 = field.subfield_generator_exponent
    N1, N2 = spec.big_n
    d1 = gcd(n0, N1)
    d2 = gcd(n0, N2)
    d = gcd(n0 * N2 // d2, N1)
    q = field.q
    if (q - 1) % (N2 // d2):
        raise ComputationError(f"N2/d2 = {N2 // d2} does not divide q - 1 = {q - 1}")
    if N1 % d or N1 % d1 or N2 % d2:
        raise ComputationError("derived divisor invariants failed")
    return DerivedParams(n0=n0, N1=N1, N2=N2, d1=d1, d2=d2, d=d)


class PeriodCache:
    """Memoizes direct period tables over the field and its subfield.

    inject_fault=True corrupts the first field table of order >= 2 that is
    requested (two entries shifted by -2/+2, which keeps the sum at -1 but
    changes the value multiset).  This exists so the verification harness
    can prove that wrong periods are detected; never use it otherwise.
    """

    def __init__(self, field, inject_fault: bool = False):
        self.field = field
        self._field_tables: dict[int, GaussPeriodTable] = {}
        self._sub_tables: dict[int, GaussPeriodTable] = {}
        self._inject_fault = inject_fault
        self._fault_done = False

    def field_table(self, N: int) -> GaussPeriodTable:
        if N not in self._field_tables:
            table = gauss_period_direct(self.field, N)
            if self._inject_fault and not self._fault_done and N >= 2:
                values = list(table.values)
                values[0] = values[0] - 2
                values[1] = values[1] + 2
                table = GaussPeriodTable(
                    p=table.p, r=table.r, N=N, values=tuple(values), source="corrupted"
                )
                self._fault_done = True
            self._field_tables[N] = table
        return self._field_tables[N]

    def subfield_table(self, t: int) -> GaussPeriodTable:
        if t not in self._sub_tables:
            self._sub_tables[t] = gauss_period_subfield(self.field, t)
        return self._sub_tables[t]


def _add_row(entries: dict, n: int, weight: Fraction, freq: int):
    if weight.denominator != 1:
        raise ComputationError(f"closed-form weight {weight} is not an integer")
    w = int(weight)
    if not 0 <= w <= n:
        raise ComputationError(f"closed-form weight {w} out of range [0, {n}]")
    entries[w] = entries.get(w, 0) + freq


def _rational(value: CycInt) -> int:
    return value.as_int()


def pair_distribution(spec: CodeSpec, periods: PeriodCache | None = None) -> WeightDistribution:
    """Tuple-level distribution of a two-order code (no constant term).

    Rows: the zero tuple; one coefficient zero (period of order d1 or d2);
    both nonzero (double sum coupling the order-N2 and order-d tables).
    Totals r^2.
    """
    if spec.u != 2 or spec.with_unit_term:
        raise ParameterError("pair_distribution needs exactly two orders and no constant term")
    field = spec.field
    q, r = field.q, field.r
    n1, n2 = spec.orders
    P = derive_params(spec)
    n = spec.n
    per = periods or PeriodCache(field)
    T_d1 = per.field_table(P.d1)
    T_d2 = per.field_table(P.d2)
    T_d = per.field_table(P.d)
    T_N2 = per.field_table(P.N2)

    entries: dict[int, int] = {}
    base = Fraction((q - 1) * n, q)
    _add_row(entries, n, Fraction(0), 1)
    for j in range(P.d1):
        w = base - Fraction((q - 1) * P.d1 * n2, q * P.N1) * _rational(T_d1[j])
        _add_row(entries, n, w, (r - 1) // P.d1)
    for j in range(P.d2):
        w = base - Fraction((q - 1) * P.d2 * n1, q * P.N2) * _rational(T_d2[j])
        _add_row(entries, n, w, (r - 1) // P.d2)
    coupled = Fraction((q - 1) * P.d * P.d2, q * P.N1 * P.N2)
    freq = (r - 1) ** 2 // (P.d * P.N2)
    span = P.N2 // P.d2
    for j in range(P.N2):
        for k in range(P.d):
            s = cyc_sum(
                field.p,
                (T_N2[P.n0 * i + j] * T_d[P.n0 * i + k] for i in range(span)),
            ).as_int()
            _add_row(entries, n, base - coupled * s, freq)
    dist = WeightDistribution(entries, "tuple", n, q)
    if dist.total() != r * r:
        raise ComputationError("two-order table does not cover r^2 tuples")
    return dist


def unit_pair_distribution(spec: CodeSpec, periods: PeriodCache | None = None) -> WeightDistribution:
    """Distribution of a two-order code where one order is 1.

    The order-1 coefficient only enters through its trace, so it is
    collapsed to its q trace values and the map totals q*r.  Both slots are
    accepted for the unit order.
    """
    if spec.u != 2 or spec.with_unit_term:
        raise ParameterError("unit_pair_distribution needs exactly two orders and no constant term")
    if 1 not in spec.orders:
        raise ParameterError("one of the two orders must be 1")
    field = spec.field
    q, r = field.q, field.r
    n2 = spec.orders[0] if spec.orders[1] == 1 else spec.orders[1]
    M = r - 1
    n0 = field.subfield_generator_exponent
    N2 = M // n2
    d2 = gcd(n0, N2)
    per = periods or PeriodCache(field)
    T_d2 = per.field_table(d2)
    T_N2 = per.field_table(N2)
    T_sub = per.subfield_table(N2 // d2)

    entries: dict[int, int] = {}
    _add_row(entries, n2, Fraction(0), 1)
    _add_row(entries, n2, Fraction(n2), q - 1)
    base = Fraction((q - 1) * n2, q)
    for j in range(d2):
        w = base - Fraction((q - 1) * d2, q * N2) * _rational(T_d2[j])
        _add_row(entries, n2, w, (r - 1) // d2)
    span = N2 // d2
    freq = d2 * (q - 1) * (r - 1) // (N2 * N2)
    for j in range(N2):
        for l in range(span):
            s = cyc_sum(
                field.p,
                (T_N2[n0 * i + j] * T_sub[i + l] for i in range(span)),
            ).as_int()
            _add_row(entries, n2, base - Fraction(s, q), freq)
    dist = WeightDistribution(entries, "tuple", n2, q)
    if dist.total() != q * r:
        raise ComputationError("unit-order table does not cover q*r tuples")
    return dist


def pair_with_constant_distribution(
    spec: CodeSpec, periods: PeriodCache | None = None
) -> WeightDistribution:
    """Distribution of a two-order code with a constant term.

    The constant coefficient is collapsed to its q trace values; the map
    totals q*r^2.  Eight row families: zero tuple; constant only; each
    single order with and without a nonzero constant trace (the latter
    couple a field table with a subfield table); both orders without and
    with a nonzero constant trace (the last is the triple sum).
    """
    if spec.u != 2 or not spec.with_unit_term:
        raise ParameterError(
            "pair_with_constant_distribution needs two orders and the constant term"
        )
    field = spec.field
    q, r = field.q, field.r
    n1, n2 = spec.orders
    P = derive_params(spec)
    n = spec.n
    n0 = P.n0
    per = periods or PeriodCache(field)
    T_d1 = per.field_table(P.d1)
    T_d2 = per.field_table(P.d2)
    T_d = per.field_table(P.d)
    T_N1 = per.field_table(P.N1)
    T_N2 = per.field_table(P.N2)
    span1 = P.N1 // P.d1
    span2 = P.N2 // P.d2
    span12 = P.N1 * P.N2 // (P.d * P.d2)
    if (q - 1) % span12:
        raise ParameterError(
            f"subfield period order N1*N2/(d*d2) = {span12} does not divide q - 1 = {q - 1}"
        )
    S1 = per.subfield_table(span1)
    S2 = per.subfield_table(span2)
    S12 = per.subfield_table(span12)

    entries: dict[int, int] = {}
    base = Fraction((q - 1) * n, q)
    p = field.p
    _add_row(entries, n, Fraction(0), 1)
    _add_row(entries, n, Fraction(n), q - 1)
    # one order alone
    for j in range(P.d2):
        w = base - Fraction((q - 1) * P.d2 * n1, q * P.N2) * _rational(T_d2[j])
        _add_row(entries, n, w, (r - 1) // P.d2)
    for j in range(P.d1):
        w = base - Fraction((q - 1) * P.d1 * n2, q * P.N1) * _rational(T_d1[j])
        _add_row(entries, n, w, (r - 1) // P.d1)
    # one order plus a nonzero constant trace
    freq2 = P.d2 * (q - 1) * (r - 1) // (P.N2 * P.N2)
    for j in range(P.N2):
        for k in range(span2):
            s = cyc_sum(p, (T_N2[n0 * i + j] * S2[i + k] for i in range(span2))).as_int()
            _add_row(entries, n, base - Fraction(n1 * s, q), freq2)
    freq1 = P.d1 * (q - 1) * (r - 1) // (P.N1 * P.N1)
    for j in range(P.N1):
        for k in range(span1):
            s = cyc_sum(p, (T_N1[n0 * i + j] * S1[i + k] for i in range(span1))).as_int()
            _add_row(entries, n, base - Fraction(n2 * s, q), freq1)
    # both orders, constant trace zero
    coupled = Fraction((q - 1) * P.d * P.d2, q * P.N1 * P.N2)
    freq_pair = (r - 1) ** 2 // (P.d * P.N2)
    for j in range(P.N2):
        for k in range(P.d):
            s = cyc_sum(p, (T_N2[n0 * i + j] * T_d[n0 * i + k] for i in range(span2))).as_int()
            _add_row(entries, n, base - coupled * s, freq_pair)
    # both orders, nonzero constant trace: the triple sum
    freq_all = P.d * P.d2 * (q - 1) * (r - 1) ** 2 // (P.N1 * P.N1 * P.N2 * P.N2)
    inner_span = P.N1 // P.d
    for j in range(P.N1):
        for k in range(P.N2):
            for l in range(span12):
                parts = []
                for i in range(span2):
                    inner = cyc_sum(
                        p,
                        (
                            T_N1[n0 * (i + span2 * i2) + j] * S12[i + span2 * i2 + l]
                            for i2 in range(inner_span)
                        ),
                    )
                    parts.append(T_N2[n0 * i + k] * inner)
                s = cyc_sum(p, parts).as_int()
                _add_row(entries, n, base - Fraction(s, q), freq_all)
    dist = WeightDistribution(entries, "tuple", n, q)
    if dist.total() != q * r * r:
        raise ComputationError("constant-term table does not cover q*r^2 tuples")
    return dist


def binary_pair_with_constant_distribution(
    spec: CodeSpec, periods: PeriodCache | None = None
) -> WeightDistribution:
    """q = 2 specialization of the constant-term evaluation."""
    if spec.field.q != 2:
        raise ParameterError("binary specialization needs q = 2")
    return pair_with_constant_distribution(spec, periods)


def closed_form_distribution(
    spec: CodeSpec, periods: PeriodCache | None = None
) -> WeightDistribution:
    """Dispatch to the closed-form evaluator matching the code shape."""
    if spec.u == 2 and spec.with_unit_term:
        if spec.field.q == 2:
            return binary_pair_with_constant_distribution(spec, periods)
        return pair_with_constant_distribution(spec, periods)
    if spec.u == 2 and 1 in spec.orders:
        return unit_pair_distribution(spec, periods)
    if spec.u == 2:
        return pair_distribution(spec, periods)
    raise ParameterError(
        "no closed form for this shape: need two orders, optionally a constant term"
    )


def enumerator_string(dist: WeightDistribution) -> str:
    """Ascending weight enumerator text, e.g. 1+45x^11+15x^12+3x^15."""
    if dist.level != "codeword":
        raise ParameterError("enumerator needs a codeword-level distribution")
    parts = []
    for w, f in dist.items_sorted():
        if w == 0 or f == 0:
            continue
        coeff = "" if f == 1 else str(f)
        xpow = "x" if w == 1 else f"x^{w}"
        parts.append(f"{coeff}{xpow}")
    return "+".join(["1"] + parts)
