"""Exact membership in the prime-divisor set of a quadratic orbit sequence.

For an eventually periodic coding the level-n value factors through the
prefix composition applied to a forward orbit of the full cycle block, so
membership mod p is decided by finite cycle detection: per cycle phase the
inner value walks a rho-shaped orbit in F_p.  The constant-coding fast path
uses Brent's walker (no per-state memory); the general path keeps one seen-
set per phase.  Exact zero terms of the sequence (skipped by definition)
are resolved completely over Q first: with integer maps, inner values that
leave the escape radius or pick up a denominator can never produce zeros
again, so the zero pattern is eventually periodic and computed exactly.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .dynamics import QQ, GeneratorSet, SequenceCoding
from .process import MAX_EXACT_LEVEL, fpp_full_binary


# ---------------------------------------------------------------------------
# Prime generation (segmented sieve).

def _base_primes(root: int) -> list[int]:
    sieve = bytearray([1]) * (root + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(root) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(2, root + 1) if sieve[i]]


def primes_in_range(lo: int, hi: int, segment: int = 1 << 16):
    """Yield primes in [lo, hi] with a segmented sieve."""
    lo = max(lo, 2)
    if hi < lo:
        return
    base = _base_primes(isqrt(hi))
    for p in base:
        if lo <= p <= hi:
            yield p
    low = max(lo, (base[-1] if base else 1) + 1)
    while low <= hi:
        high = min(low + segment - 1, hi)
        marks = bytearray([1]) * (high - low + 1)
        for p in base:
            start = max(p * p, ((low + p - 1) // p) * p)
            if start <= high:
                marks[start - low :: p] = b"\x00" * len(marks[start - low :: p])
        for i, flag in enumerate(marks):
            if flag:
                yield low + i
        low = high + 1


def primes_up_to(limit: int, segment: int = 1 << 16):
    """Yield all primes <= limit with a segmented sieve."""
    yield from primes_in_range(2, limit, segment)


# ---------------------------------------------------------------------------
# Exact zero pattern of the sequence gamma_n(a0) over Q.

@dataclass
class _PhaseZeros:
    pre_hits: set[int]
    cycle_start: int | None = None  # None: no zeros beyond the recorded ones
    cycle_len: int = 0
    cycle_hits: frozenset[int] = frozenset()

    def is_zero(self, q: int) -> bool:
        if self.cycle_start is not None and q >= self.cycle_start:
            return (q - self.cycle_start) % self.cycle_len in self.cycle_hits
        return q in self.pre_hits


@dataclass
class ZeroPattern:
    """Exact description of { n >= 0 : gamma_n(a0) == 0 }, eventually periodic."""

    a0_zero: bool
    prefix_zeros: set[int]
    prefix_len: int
    cycle_len: int
    phases: list[_PhaseZeros]

    def is_zero(self, n: int) -> bool:
        if n == 0:
            return self.a0_zero
        if n <= self.prefix_len:
            return n in self.prefix_zeros
        q, r = divmod(n - self.prefix_len, self.cycle_len)
        return self.phases[r].is_zero(q)


def _setup(gens: GeneratorSet, coding: SequenceCoding):
    if not (gens.is_critical and gens.ring == QQ and gens.is_integral()):
        raise ValueError("the prime scanner needs an integer critical set over Q")
    coding.validate_for(gens)
    cs = [int(c) for c in gens.constants]
    prefix = [cs[i - 1] for i in coding.prefix]
    cycle = [cs[i - 1] for i in coding.cycle]
    return cs, prefix, cycle


def _apply_chain_exact(constants: list[int], value: Fraction) -> Fraction:
    # Innermost map is the last entry, matching the composition convention.
    for c in reversed(constants):
        value = value * value + c
    return value


def _partial_start(cycle: list[int], r: int, a0: Fraction) -> Fraction:
    # (first r cycle maps applied with the r-th innermost) at a0.
    v = a0
    for i in range(r - 1, -1, -1):
        v = v * v + cycle[i]
    return v


def zero_pattern(gens: GeneratorSet, coding: SequenceCoding, a0: Fraction, cap: int = 64) -> ZeroPattern:
    """Resolve every exact zero of the sequence.

    Integer inner values either stay inside the escape radius (hence become
    periodic within ~2*radius steps) or grow forever; fractional values keep
    a nontrivial denominator forever.  Both resolve each phase completely.
    The cap guards ill-posed inputs and is certified sufficient whenever the
    resolution finishes within it (raises otherwise).
    """
    cs, prefix, cycle = _setup(gens, coding)
    a0 = Fraction(a0)
    radius = max(abs(c) for c in cs) + 2
    # Integer values inside the radius must repeat within one window sweep,
    # so this bound certifies resolution; the cap can only raise it.
    cap = max(cap, 2 * radius + 4)
    pattern = ZeroPattern(
        a0_zero=(a0 == 0),
        prefix_zeros=set(),
        prefix_len=len(prefix),
        cycle_len=len(cycle),
        phases=[],
    )
    for n in range(1, len(prefix) + 1):
        if _apply_chain_exact(prefix[:n], a0) == 0:
            pattern.prefix_zeros.add(n)
    for r in range(len(cycle)):
        v = _partial_start(cycle, r, a0)
        hits: set[int] = set()
        seen: dict[Fraction, int] = {}
        q = 0
        resolved = False
        while q <= cap:
            if v.denominator > 1 or abs(v) >= radius:
                # No zero can ever appear from here on.
                pattern.phases.append(_PhaseZeros(pre_hits=hits))
                resolved = True
                break
            if v in seen:
                start = seen[v]
                length = q - start
                cyc = frozenset((h - start) % length for h in hits if h >= start)
                pattern.phases.append(
                    _PhaseZeros(
                        pre_hits={h for h in hits if h < start},
                        cycle_start=start,
                        cycle_len=length,
                        cycle_hits=cyc,
                    )
                )
                resolved = True
                break
            if _apply_chain_exact(prefix, v) == 0:
                hits.add(q)
            seen[v] = q
            v = _apply_chain_exact(cycle, v)  # one full cycle block
            q += 1
        if not resolved:
            raise RuntimeError(f"zero pattern unresolved within cap {cap}")
    return pattern


# ---------------------------------------------------------------------------
# Per-prime membership.

@dataclass(frozen=True)
class PrimeOrbitResult:
    status: str  # "yes" | "no" | "excluded" | "over_cap"
    first_index: int | None = None


def _mask_free(pattern: ZeroPattern) -> bool:
    """No exact-zero levels at n >= 1 (n = 0 is always the caller's business)."""
    if pattern.prefix_zeros:
        return False
    for ph in pattern.phases:
        if ph.pre_hits or (ph.cycle_start is not None and ph.cycle_hits):
            return False
    return True


def _scan_single_cycle(p: int, c: int, x0: int, pattern: ZeroPattern) -> PrimeOrbitResult:
    """Brent walker for the empty-prefix single-map case (hit test is v == 0)."""
    c %= p
    y = tort = x0 % p
    power = lam = 1
    n = 0
    while True:
        if power == lam:
            tort = y
            power *= 2
            lam = 0
        y = (y * y + c) % p
        n += 1
        lam += 1
        if y == 0 and not pattern.is_zero(n):
            return PrimeOrbitResult("yes", n)
        if y == tort:
            return PrimeOrbitResult("no")


def prime_divides_orbit(
    p: int,
    gens: GeneratorSet,
    coding: SequenceCoding,
    a0: Fraction | int,
    pattern: ZeroPattern | None = None,
    max_states: int = 1_000_000,
) -> PrimeOrbitResult:
    """Does p divide gamma_n(a0) for some n >= 0 with gamma_n(a0) != 0 exactly?

    Exact decision via cycle detection in F_p; yes answers carry the first
    index.  Primes dividing the denominator of a0 are excluded with their
    own status.
    """
    cs, prefix, cycle = _setup(gens, coding)
    a0 = Fraction(a0)
    if a0.denominator % p == 0:
        return PrimeOrbitResult("excluded")
    if pattern is None:
        pattern = zero_pattern(gens, coding, a0)
    x0 = a0.numerator * pow(a0.denominator, -1, p) % p if a0.denominator > 1 else a0.numerator % p

    if a0 != 0 and x0 == 0 and not pattern.is_zero(0):
        return PrimeOrbitResult("yes", 0)

    # Prefix levels: level n applies the first n prefix maps, innermost last.
    for n in range(1, len(prefix) + 1):
        v = x0
        for c in reversed(prefix[:n]):
            v = (v * v + c) % p
        if v == 0 and not pattern.is_zero(n):
            return PrimeOrbitResult("yes", n)

    a_len, b_len = len(prefix), len(cycle)
    if a_len == 0 and b_len == 1 and _mask_free(pattern):
        return _scan_single_cycle(p, cycle[0], x0, pattern)

    cyc = [c % p for c in cycle]
    pre = [c % p for c in prefix]

    def through_prefix(u: int) -> int:
        for c in reversed(pre):
            u = (u * u + c) % p
        return u

    starts = []
    for r in range(b_len):
        u = x0
        for i in range(r - 1, -1, -1):
            u = (u * u + cyc[i]) % p
        starts.append(u)

    # Cycle detection runs on (value, q mod mask-period) states, enrolled only
    # once the finite exact-zero masks are behind us: a masked slot must not
    # retire a value whose later occurrences are unmasked.
    mask_period = []
    settle = []
    for ph in pattern.phases:
        if ph.cycle_start is None:
            mask_period.append(1)
            settle.append(max(ph.pre_hits) + 1 if ph.pre_hits else 0)
        else:
            mask_period.append(ph.cycle_len)
            settle.append(ph.cycle_start)

    current = list(starts)
    seen: list[set[tuple[int, int]]] = [set() for _ in range(b_len)]
    alive = [True] * b_len
    states = 0
    q = 0
    while any(alive):
        for r in range(b_len):
            if not alive[r]:
                continue
            u = current[r]
            n = a_len + q * b_len + r
            if n >= 1:
                if q >= settle[r]:
                    state = (u, q % mask_period[r])
                    if state in seen[r]:
                        alive[r] = False
                        continue
                    seen[r].add(state)
                    states += 1
                    if states > max_states:
                        return PrimeOrbitResult("over_cap")
                if through_prefix(u) == 0 and not pattern.is_zero(n):
                    return PrimeOrbitResult("yes", n)
            # n == 0 is the caller's slot: advance without marking it visited.
            w = u
            for i in range(b_len - 1, -1, -1):
                w = (w * w + cyc[i]) % p
            current[r] = w
        q += 1
    return PrimeOrbitResult("no")


# ---------------------------------------------------------------------------
# Density profiles.

@dataclass
class ScanRow:
    cutoff: int
    in_p: int
    pi_x: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.in_p, self.pi_x) if self.pi_x else Fraction(0)

    def ratio_decimal(self, places: int = 12) -> str:
        scaled = self.ratio * 10**places
        digits = (scaled.numerator + scaled.denominator // 2) // scaled.denominator
        text = str(digits).rjust(places + 1, "0")
        return f"{text[:-places]}.{text[-places:]}"


@dataclass
class PrimeScanReport:
    generators: list[str]
    coding: str
    a0: str
    rows: list[ScanRow] = field(default_factory=list)
    excluded: list[int] = field(default_factory=list)
    over_cap: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "format_version": 1,
            "generators": self.generators,
            "coding": self.coding,
            "a0": self.a0,
            "rows": [
                {
                    "x": row.cutoff,
                    "in_p_count": row.in_p,
                    "pi_x": row.pi_x,
                    "ratio_num": row.ratio.numerator,
                    "ratio_den": row.ratio.denominator,
                    "ratio": row.ratio_decimal(),
                }
                for row in self.rows
            ],
            "excluded_primes": self.excluded,
            "over_cap_primes": self.over_cap,
        }

    def csv_rows(self) -> list[list[str]]:
        out = [["x", "in_P_count", "pi_x", "ratio_decimal_12dp"]]
        for row in self.rows:
            out.append([str(row.cutoff), str(row.in_p), str(row.pi_x), row.ratio_decimal()])
        return out


_SEGMENT = 1 << 16


def _scan_segment(args):
    (lo, hi, gens, coding, a0, pattern, cutoffs, max_states) = args
    cs, prefix, cycle = _setup(gens, coding)
    fast = not prefix and len(cycle) == 1 and a0.denominator == 1 and _mask_free(pattern)
    c_fast = cycle[0] if fast else 0
    a0_int = a0.numerator
    pi = [0] * len(cutoffs)
    hits = [0] * len(cutoffs)
    over_cap: list[int] = []
    for p in primes_up_to(hi):
        if p < lo:
            continue
        member = False
        if a0.denominator % p != 0:
            if fast:
                x0 = a0_int % p
                if a0 != 0 and x0 == 0:
                    member = True
                else:
                    member = _scan_single_cycle(p, c_fast, x0, pattern).status == "yes"
            else:
                result = prime_divides_orbit(p, gens, coding, a0, pattern, max_states)
                member = result.status == "yes"
                if result.status == "over_cap":
                    over_cap.append(p)
        for i, cutoff in enumerate(cutoffs):
            if p <= cutoff:
                pi[i] += 1
                if member:
                    hits[i] += 1
    return pi, hits, over_cap


def density_profile(
    gens: GeneratorSet,
    coding: SequenceCoding,
    a0: Fraction | int,
    cutoffs: list[int],
    max_states: int = 1_000_000,
    zero_cap: int = 64,
    workers: int = 1,
) -> PrimeScanReport:
    """Scan all primes up to the largest cutoff and tabulate membership counts.

    The prime range is split on fixed segment boundaries and per-cutoff counts
    are summed per segment, so the report is independent of the worker count.
    """
    if list(cutoffs) != sorted(set(cutoffs)):
        raise ValueError("cutoffs must be strictly increasing")
    a0 = Fraction(a0)
    pattern = zero_pattern(gens, coding, a0, cap=zero_cap)
    report = PrimeScanReport(
        generators=gens.map_strings(),
        coding=coding.render(),
        a0=str(a0),
        excluded=sorted(p for p in _prime_factors(a0.denominator) if p <= cutoffs[-1]),
    )
    limit = cutoffs[-1]
    segments = []
    lo = 2
    while lo <= limit:
        hi = min(lo + _SEGMENT - 1, limit)
        segments.append((lo, hi, gens, coding, a0, pattern, tuple(cutoffs), max_states))
        lo = hi + 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_segment, segments))
    else:
        results = [_scan_segment(seg) for seg in segments]
    pi_total = [0] * len(cutoffs)
    hit_total = [0] * len(cutoffs)
    for pi, hits, over_cap in results:
        report.over_cap.extend(over_cap)
        for i in range(len(cutoffs)):
            pi_total[i] += pi[i]
            hit_total[i] += hits[i]
    report.over_cap.sort()
    for i, cutoff in enumerate(cutoffs):
        report.rows.append(ScanRow(cutoff=cutoff, in_p=hit_total[i], pi_x=pi_total[i]))
    return report


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def fpp_comparison(
    gens: GeneratorSet,
    coding: SequenceCoding,
    a0: Fraction | int,
    depth_for_fpp: int,
    cutoff: int,
) -> dict:
    """Juxtapose the empirical prime ratio at the cutoff with the exact
    fixed-point proportions (informational; the bound concerns the limit)."""
    profile = density_profile(gens, coding, a0, [cutoff])
    depth = min(depth_for_fpp, MAX_EXACT_LEVEL)
    table = [
        {"n": n, "fpp_num": fpp_full_binary(n).numerator, "fpp_den": fpp_full_binary(n).denominator}
        for n in range(1, depth + 1)
    ]
    row = profile.rows[-1]
    return {
        "format_version": 1,
        "cutoff": cutoff,
        "ratio_num": row.ratio.numerator,
        "ratio_den": row.ratio.denominator,
        "ratio": row.ratio_decimal(),
        "fpp": table,
    }
