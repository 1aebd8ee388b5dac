"""Exact sparse multivariate polynomials over the rationals.

Scalars are :class:`fractions.Fraction` values (always in lowest terms with a
positive denominator).  A :class:`Polynomial` is an immutable map from exponent
tuples to nonzero scalars; it only knows its arity.  Variable names live in a
:class:`Ring`, which is needed for parsing and printing only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

Scalar = Fraction
Monomial = tuple  # tuple[int, ...] of non-negative exponents

#: Degree of the zero polynomial. Compares below every integer.
NEG_INFINITY = float("-inf")

ScalarLike = Union[int, Fraction]


class ArityMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class TargetTooSmall(ValueError):
    pass


def as_scalar(value: ScalarLike | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


def grevlex_key(exps: Monomial) -> tuple:
    """Sort key for graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _madd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Ring:
    """Ordered variable names for a polynomial ring Q[names]."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(names) < 1:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not name.isidentifier():
                raise ValueError(f"invalid variable name {name!r}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gens(self) -> list[Polynomial]:
        return [Polynomial.variable(self.nvars, i) for i in range(self.nvars)]

    def var(self, name: str) -> Polynomial:
        return Polynomial.variable(self.nvars, self.names.index(name))

    def chart_names(self, k: int) -> tuple[str, ...]:
        """Names of the affine chart variables T_j = X_j / X_k (k is 1-based)."""
        if not 1 <= k <= self.nvars:
            raise IndexOutOfRange(f"chart index {k} outside 1..{self.nvars}")
        return tuple(f"t_{name}" for j, name in enumerate(self.names) if j != k - 1)


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, ScalarLike] | Iterable = ()):
        if nvars < 0:
            raise ValueError("arity must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, Fraction] = {}
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ArityMismatch(f"monomial {exps} does not have {nvars} exponents")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = clean.get(exps, 0) + as_scalar(coeff)
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Polynomial:
        # caller guarantees normalized terms; no copy
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: ScalarLike) -> Polynomial:
        c = as_scalar(value)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: ScalarLike = 1) -> Polynomial:
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def variable(cls, nvars: int, index: int) -> Polynomial:
        if not 0 <= index < nvars:
            raise IndexOutOfRange(f"variable index {index} outside 0..{nvars - 1}")
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(nvars, {tuple(exps): Fraction(1)})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def degree(self) -> int | float:
        """Total degree; NEG_INFINITY for the zero polynomial."""
        if not self._terms:
            return NEG_INFINITY
        return max(sum(m) for m in self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending grevlex order (the canonical storage/printing order)."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(self.nvars, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .expr import format_polynomial

        names = tuple(f"x{i + 1}" for i in range(self.nvars))
        return f"Polynomial({format_polynomial(self, names)!r})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ArityMismatch(f"arity {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.nvars, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> Polynomial:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, factor: ScalarLike) -> Polynomial:
        f = as_scalar(factor)
        if not f:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: c * f for m, c in self._terms.items()})

    def mul_term(self, exps: Monomial, coeff: ScalarLike = 1) -> Polynomial:
        """Multiply by the single term coeff * X^exps."""
        f = as_scalar(coeff)
        if not f:
            return Polynomial.zero(self.nvars)
        if len(exps) != self.nvars:
            raise ArityMismatch(f"monomial {exps} does not have {self.nvars} exponents")
        return Polynomial._raw(
            self.nvars, {_madd(m, exps): c * f for m, c in self._terms.items()}
        )

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ArityMismatch(f"arity {self.nvars} vs {other.nvars}")
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, Fraction] = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = _madd(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial._raw(self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -- substitution -------------------------------------------------------

    def evaluate(self, point: Sequence[ScalarLike]) -> Fraction:
        if len(point) != self.nvars:
            raise ArityMismatch(f"point has {len(point)} coordinates, ring has {self.nvars}")
        vals = [as_scalar(v) for v in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for v, e in zip(vals, m):
                if e:
                    term *= v**e
            total += term
        return total

    def compose(self, substitutions: Sequence[Polynomial]) -> Polynomial:
        """Substitute X_i := substitutions[i]; the result lives in their common ring."""
        if len(substitutions) != self.nvars:
            raise ArityMismatch(
                f"{len(substitutions)} substitutions for {self.nvars} variables"
            )
        if not substitutions:
            raise ValueError("composition of a constant needs a target arity; use embed")
        target = substitutions[0].nvars
        if any(s.nvars != target for s in substitutions):
            raise ArityMismatch("substitutions live in different rings")
        powers: list[dict[int, Polynomial]] = [{} for _ in substitutions]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = substitutions[i] ** e
            return cache[e]

        out = Polynomial.zero(target)
        for m, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def embed(self, nvars: int, positions: Sequence[int]) -> Polynomial:
        """Rename variable i to variable positions[i] of a ring with `nvars` variables."""
        if len(positions) != self.nvars:
            raise ArityMismatch("one target position per variable required")
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            exps = [0] * nvars
            for pos, e in zip(positions, m):
                exps[pos] += e
            out[tuple(exps)] = c
        return Polynomial._raw(nvars, out)


# -- the named operations ---------------------------------------------------


def arith(p: Polynomial, q, kind: str) -> Polynomial:
    """Dispatch add/sub/mul/scale/pow; `q` is a Polynomial, a scalar, or an exponent."""
    if kind == "add":
        return p + p._coerce(q)
    if kind == "sub":
        return p - p._coerce(q)
    if kind == "mul":
        return p * p._coerce(q)
    if kind == "scale":
        return p.scale(q)
    if kind == "pow":
        return p**q
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def is_homogeneous(p: Polynomial) -> int | float | None:
    """Common total degree of all terms, NEG_INFINITY for zero, None if mixed."""
    degrees = {sum(m) for m in p.terms}
    if not degrees:
        return NEG_INFINITY
    if len(degrees) == 1:
        return degrees.pop()
    return None


def dehomogenize_chart(p: Polynomial, k: int) -> Polynomial:
    """Set X_k = 1 (k is 1-based); the remaining variables keep their order."""
    if not 1 <= k <= p.nvars:
        raise IndexOutOfRange(f"chart index {k} outside 1..{p.nvars}")
    out: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        key = m[: k - 1] + m[k:]
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            del out[key]
    return Polynomial._raw(p.nvars - 1, out)


def homogenize(q: Polynomial, k: int, target: int | float) -> Polynomial:
    """Inverse of dehomogenize_chart: reinsert X_k with the power that makes every term degree `target`."""
    n = q.nvars + 1
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"chart index {k} outside 1..{n}")
    if q.is_zero():
        return Polynomial.zero(n)
    if target < q.degree():
        raise TargetTooSmall(f"target degree {target} below deg {q.degree()}")
    out = {}
    for m, c in q.terms.items():
        out[m[: k - 1] + (int(target) - sum(m),) + m[k - 1 :]] = c
    return Polynomial._raw(n, out)


def grading_check(p: Polynomial, d: int | float) -> bool:
    """Check p(lambda*X) == lambda^d * p(X) in Q[X, lambda].

    The zero polynomial satisfies the identity for every d.  A nonzero
    polynomial never does for negative or infinite d.
    """
    if p.is_zero():
        return True
    if not isinstance(d, int) or d < 0:
        return False
    n = p.nvars
    if n == 0:
        return d == 0
    lam = Polynomial.variable(n + 1, n)
    scaled = [Polynomial.variable(n + 1, i) * lam for i in range(n)]
    lifted = p.embed(n + 1, range(n))
    return p.compose(scaled) == lifted * lam**d


def evaluate(p: Polynomial, point: Sequence[ScalarLike]) -> Fraction:
    return p.evaluate(point)
