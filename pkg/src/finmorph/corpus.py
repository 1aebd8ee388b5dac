"""Deterministic test systems.

Random systems use SplitMix64 so that a seed names the same system in any
implementation::

    state  = (state + 0x9E3779B97F4A7C15) mod 2^64
    z      = state
    z      = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z      = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output = z ^ (z >> 31)

A coefficient is ``output mod 7 - 3`` (range -3..3), drawn for each monomial
of the required degree in descending grevlex order; an all-zero draw is
repeated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .certifier import SquareSystem
from .expr import parse_polynomial
from .polyring import Polynomial, Ring, grevlex_key

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)

    def rational(self, bound: int = 9) -> Fraction:
        """Numerator in [-bound, bound], denominator in [1, bound]."""
        return Fraction(self.randint(-bound, bound), self.randint(1, bound))


def default_names(n: int) -> tuple[str, ...]:
    return ("x", "y", "z")[:n] if n <= 3 else tuple(f"x{i + 1}" for i in range(n))


def monomials_of_degree(n: int, d: int) -> list[tuple[int, ...]]:
    mons = [m for m in itertools.product(range(d + 1), repeat=n) if sum(m) == d]
    return sorted(mons, key=grevlex_key, reverse=True)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    ring: Ring
    polys: tuple[Polynomial, ...]
    expected: str  # "finite", "positive-dimensional" or "non-square-demo"
    note: str = ""
    witness_chart: Optional[int] = None

    @property
    def system(self) -> SquareSystem:
        return SquareSystem(self.ring, self.polys)


def newton_system(n: int) -> SquareSystem:
    """Power sums p_k = sum_i x_i^k, k = 1..n (traces of powers of diag(x))."""
    if n < 1:
        raise ValueError("n must be positive")
    ring = Ring(default_names(n))
    xs = ring.gens()
    return SquareSystem(ring, tuple(sum((x**k for x in xs[1:]), xs[0] ** k) for k in range(1, n + 1)))


def elementary_symmetric_system(n: int) -> SquareSystem:
    """e_1, ..., e_n: up to sign the characteristic-polynomial coefficients of diag(x)."""
    if n < 1:
        raise ValueError("n must be positive")
    ring = Ring(default_names(n))
    xs = ring.gens()
    polys = []
    for k in range(1, n + 1):
        total = Polynomial.zero(n)
        for idx in itertools.combinations(range(n), k):
            term = Polynomial.constant(n, 1)
            for i in idx:
                term = term * xs[i]
            total = total + term
        polys.append(total)
    return SquareSystem(ring, tuple(polys))


def _entry(name, names, exprs, expected, note="", witness_chart=None) -> CorpusEntry:
    ring = Ring(tuple(names))
    return CorpusEntry(name, ring, tuple(parse_polynomial(e, ring) for e in exprs),
                       expected, note, witness_chart)


def rejection_suite() -> list[CorpusEntry]:
    return [
        _entry("reject-x2-xy", "xy", ["x^2", "x*y"], "positive-dimensional",
               "zero set is the line x = 0", witness_chart=2),
        _entry("reject-diagonal", "xy", ["x^2 - y^2", "x*(x - y)"], "positive-dimensional",
               "zero set contains the line x = y", witness_chart=1),
        _entry("reject-antidiagonal", "xy", ["x + y", "(x + y)^2"], "positive-dimensional",
               "zero set is the line x + y = 0", witness_chart=1),
        _entry("reject-repeated", "xy", ["x*y", "x*y"], "positive-dimensional",
               "rank-deficient: zero set is both axes", witness_chart=1),
        _entry("reject-3d-plane", "xyz", ["x", "y", "x + y"], "positive-dimensional",
               "zero set is the z-axis", witness_chart=3),
    ]


def sl2_det_demo() -> CorpusEntry:
    """The sl2 characteristic map (a, b, c) -> det = -a^2 - bc.

    One equation in three unknowns; its zero fiber is the whole nilpotent cone.
    """
    return _entry("sl2-det", "abc", ["-a^2 - b*c"], "non-square-demo",
                  "zero fiber is the 2-dimensional nilpotent cone of sl2")


def random_system(n: int, degrees: Sequence[int], seed: int) -> SquareSystem:
    """Dense homogeneous system with coefficients in -3..3 from SplitMix64(seed)."""
    if len(degrees) != n:
        raise ValueError("one degree per polynomial")
    if n > 3 or any(not 1 <= d <= 3 for d in degrees):
        raise ValueError("random systems are capped at n <= 3 and degree <= 3")
    rng = SplitMix64(seed)
    polys = []
    for d in degrees:
        mons = monomials_of_degree(n, d)
        while True:
            coeffs = {m: rng.randint(-3, 3) for m in mons}
            p = Polynomial(n, coeffs)
            if not p.is_zero():
                break
        polys.append(p)
    return SquareSystem(Ring(default_names(n)), tuple(polys))


def random_targets(n: int, count: int, seed: int) -> list[list[Fraction]]:
    rng = SplitMix64(seed)
    return [[rng.rational() for _ in range(n)] for _ in range(count)]


def finite_entries() -> list[CorpusEntry]:
    out = []
    for n in (1, 2, 3):
        for label, make, note in (
            ("newton", newton_system, "power sums"),
            ("elementary", elementary_symmetric_system, "elementary symmetric"),
        ):
            s = make(n)
            out.append(CorpusEntry(f"{label}-{n}", s.ring, s.polys, "finite", f"{note}, n = {n}"))
    s = random_system(2, (2, 2), 0)
    out.append(CorpusEntry("random-2-22-s0", s.ring, s.polys, "finite", "random_system(2, (2, 2), 0)"))
    s = random_system(3, (1, 2, 2), 1)
    out.append(CorpusEntry("random-3-122-s1", s.ring, s.polys, "finite", "random_system(3, (1, 2, 2), 1)"))
    return out


def all_entries() -> list[CorpusEntry]:
    return finite_entries() + rejection_suite() + [sl2_det_demo()]


def get_entry(name: str) -> CorpusEntry:
    for e in all_entries():
        if e.name == name:
            return e
    raise KeyError(f"no corpus entry named {name!r}")
