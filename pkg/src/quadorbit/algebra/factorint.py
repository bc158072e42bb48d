"""Integer factorization with an explicit work budget.

Trial division up to a bound, then Pollard's rho (Brent's variant) with an
iteration cap.  Running out of budget is not an error: the result carries
the primes found so far plus the unfactored cofactor, and downstream
certificates treat it as inconclusive evidence.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 via a fixed base set."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FactorBudget:
    trial_bound: int = 10**6
    rho_iterations: int = 200_000
    rho_restarts: int = 8


@dataclass
class Factorization:
    """sign * prod(p^e) * cofactor == the input; complete iff cofactor == 1."""

    sign: int
    factors: list[tuple[int, int]] = field(default_factory=list)
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def reassemble(self) -> int:
        out = self.sign * self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out


def _pollard_brent(n: int, iterations: int, rng: random.Random) -> int | None:
    if n % 2 == 0:
        return 2
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        steps += 2 * r
        r *= 2
        if g == 1 and steps > iterations:
            return None
    if g == n:
        # Batched gcd overshot; replay one step at a time from the save point.
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    if 1 < g < n:
        return g
    return None


def factor_integer(n: int, budget: FactorBudget | None = None) -> Factorization:
    """Factor a nonzero integer within the budget.

    An incomplete result (cofactor > 1) means the budget ran out; the
    cofactor is known composite-or-prime-untested, never silently dropped.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    budget = budget or FactorBudget()
    sign = -1 if n < 0 else 1
    n = abs(n)
    found: dict[int, int] = {}

    def record(p: int, e: int = 1) -> None:
        found[p] = found.get(p, 0) + e

    # Trial division.
    for p in (2, 3):
        while n % p == 0:
            record(p)
            n //= p
    f = 5
    step = 2
    while f <= budget.trial_bound and f * f <= n:
        while n % f == 0:
            record(f)
            n //= f
        f += step
        step = 6 - step
    # No factor up to the trial bound and below its square means prime.
    if n > 1 and (n < budget.trial_bound * budget.trial_bound or is_probable_prime(n)):
        record(n)
        n = 1

    # Pollard rho on what remains.
    rng = random.Random(0x5EED ^ n)
    stack = [n] if n > 1 else []
    restarts_left = budget.rho_restarts
    cofactor = 1
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            record(m)
            continue
        d = None
        while d is None and restarts_left > 0:
            restarts_left -= 1
            d = _pollard_brent(m, budget.rho_iterations, rng)
        if d is None:
            cofactor *= m
            continue
        stack.append(d)
        stack.append(m // d)

    factors = sorted(found.items())
    return Factorization(sign=sign, factors=factors, cofactor=cofactor)
