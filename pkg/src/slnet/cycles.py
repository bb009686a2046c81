"""Exact cycle-structure bookkeeping: how many limit cycles of each length.

Counts are plain Python ints so values like m**(p**k) stay exact no matter
how large they get; exactness is the entire point of this package.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Union

FACTOR_CAP = 10 ** 6


def _factorize(k: int) -> dict[int, int]:
    if k < 1:
        raise ValueError(f"expected a positive integer, got {k}")
    if k > FACTOR_CAP:
        raise ValueError(f"factorization capped at {FACTOR_CAP}, got {k}")
    factors: dict[int, int] = {}
    p = 2
    while p * p <= k:
        while k % p == 0:
            factors[p] = factors.get(p, 0) + 1
            k //= p
        p += 1 if p == 2 else 2
    if k > 1:
        factors[k] = factors.get(k, 0) + 1
    return factors


def divisors(k: int) -> list[int]:
    """All positive divisors of k, ascending."""
    out = [1]
    for p, e in _factorize(k).items():
        out = [d * p ** i for d in out for i in range(e + 1)]
    return sorted(out)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


class CycleStructure:
    """Sparse map from cycle length to an exact count of cycles.

    Immutable value type. Counts produced by actual phase spaces are
    nonnegative, but intermediate polynomial arithmetic is allowed to go
    negative, so no sign constraint is imposed here.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Union[Mapping[int, int],
                                     Iterable[tuple[int, int]]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for k, a in items:
            k = int(k)
            a = int(a)
            if k < 1:
                raise ValueError(f"cycle lengths are positive, got {k}")
            acc[k] = acc.get(k, 0) + a
        self._coeffs = {k: a for k, a in acc.items() if a}

    def coefficient(self, k: int) -> int:
        return self._coeffs.get(k, 0)

    __getitem__ = coefficient

    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    def items(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._coeffs.items()))

    def total_states(self) -> int:
        """Number of periodic states: sum of length * count."""
        return sum(k * a for k, a in self._coeffs.items())

    def le(self, other: "CycleStructure") -> bool:
        """Componentwise <= over the union of lengths."""
        keys = set(self._coeffs) | set(other._coeffs)
        return all(self.coefficient(k) <= other.coefficient(k) for k in keys)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycleStructure):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "CycleStructure") -> "CycleStructure":
        if not isinstance(other, CycleStructure):
            return NotImplemented
        out = dict(self._coeffs)
        for k, a in other._coeffs.items():
            out[k] = out.get(k, 0) + a
        return CycleStructure(out)

    def __sub__(self, other: "CycleStructure") -> "CycleStructure":
        if not isinstance(other, CycleStructure):
            return NotImplemented
        out = dict(self._coeffs)
        for k, a in other._coeffs.items():
            out[k] = out.get(k, 0) - a
        return CycleStructure(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycleStructure({k: a * other for k, a in self._coeffs.items()})
        if not isinstance(other, CycleStructure):
            return NotImplemented
        # Pairing a length-r cycle with a length-s cycle yields gcd(r, s)
        # cycles of length lcm(r, s): r*s paired states split into orbits
        # of the joint period.
        out: dict[int, int] = {}
        for r, a in self._coeffs.items():
            for s, b in other._coeffs.items():
                key = math.lcm(r, s)
                out[key] = out.get(key, 0) + a * b * math.gcd(r, s)
        return CycleStructure(out)

    __rmul__ = __mul__

    def render(self) -> str:
        """Human form, e.g. ``13·C1 + 9·C2 + 24·C3 + 24·C6``."""
        if not self._coeffs:
            return "0"
        parts = []
        for k, a in self.items():
            parts.append((a < 0, f"{abs(a)}·C{k}"))
        neg, body = parts[0]
        text = ("-" if neg else "") + body
        for neg, body in parts[1:]:
            text += (" - " if neg else " + ") + body
        return text

    def to_json_mapping(self) -> dict[str, str]:
        """Decimal-string mapping, e.g. ``{"1": "3", "3": "8"}``."""
        return {str(k): str(a) for k, a in self.items()}

    @classmethod
    def from_json_mapping(cls, obj: Mapping[str, str]) -> "CycleStructure":
        return cls({int(k): int(a) for k, a in obj.items()})

    def __repr__(self) -> str:
        return f"CycleStructure({self._coeffs!r})"


def periodic_state_count(m: int, k: int) -> int:
    """States of exact period k under the cyclic shift of k cells on m symbols.

    Inclusion-exclusion over the maximal proper divisors k/p, one per prime
    p of k: subtracting states whose period divides some k/p leaves exactly
    the period-k ones. For k = 1 this is just m.
    """
    if m < 1:
        raise ValueError(f"need at least one symbol, got {m}")
    if k < 1:
        raise ValueError(f"period must be positive, got {k}")
    primes = list(_factorize(k))
    total = 0
    for mask in range(1 << len(primes)):
        d = 1
        for i, p in enumerate(primes):
            if mask >> i & 1:
                d *= p
        sign = -1 if bin(mask).count("1") % 2 else 1
        total += sign * m ** (k // d)
    return total


def period_divisor_sum(m: int, k: int) -> int:
    """Sum of exact-period counts over all divisors of k; must equal m**k."""
    return sum(periodic_state_count(m, d) for d in divisors(k))


def prime_power_state_count(m: int, p: int, k: int) -> int:
    """Exact-period count at a prime power: m**(p**k) - m**(p**(k-1))."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError(f"exponent must be positive, got {k}")
    return m ** (p ** k) - m ** (p ** (k - 1))


def strongly_connected_structure(m: int, c: int) -> CycleStructure:
    """Exact cycle structure for m symbols and loop number c.

    The count of length-k cycles is (exact-period-k states) / k for every
    divisor k of c; the division is always exact because period-k states
    come in full orbits.
    """
    if m < 1:
        raise ValueError(f"need at least one symbol, got {m}")
    coeffs = {}
    for k in divisors(c):
        count = periodic_state_count(m, k)
        cycles, rem = divmod(count, k)
        if rem:
            raise RuntimeError(
                f"period-{k} state count {count} is not divisible by {k}")
        if cycles:
            coeffs[k] = cycles
    return CycleStructure(coeffs)


def product_structure(structures: Iterable[CycleStructure]) -> CycleStructure:
    """Cycle structure of a disjoint union of systems: the product of parts."""
    out = None
    for s in structures:
        out = s if out is None else out * s
    if out is None:
        raise ValueError("need at least one cycle structure")
    return out
