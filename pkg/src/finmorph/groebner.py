"""Buchberger's algorithm with cofactor tracking.

Every basis element carries a row of cofactors expressing it in terms of the
original generators, so a basis equal to ``{1}`` immediately yields a
Nullstellensatz certificate ``sum(U_i * gens[i]) == 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .polyring import ArityMismatch, Monomial, Polynomial, grevlex_key

DEFAULT_BUDGET = 200_000


class ResourceBudgetExceeded(RuntimeError):
    """Raised when a computation uses more reduction steps than allowed."""


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    perm: Optional[tuple[int, ...]] = None  # perm[i] = variable ranked i-th

    def __post_init__(self) -> None:
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, exps: Monomial) -> tuple:
        if self.perm is not None:
            exps = tuple(exps[i] for i in self.perm)
        if self.kind == "lex":
            return tuple(exps)
        return grevlex_key(exps)

    def leading(self, p: Polynomial) -> tuple[Monomial, Fraction]:
        m = max(p.terms, key=self.key)
        return m, p.terms[m]


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def get_order(name: str) -> MonomialOrder:
    return MonomialOrder(name)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mdiv(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise ResourceBudgetExceeded(f"exceeded budget of {self.limit} reduction steps")


@dataclass(frozen=True)
class NormalFormResult:
    remainder: Polynomial
    quotients: tuple[Polynomial, ...]


def _reduce(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder,
            budget: _Budget, leads=None) -> NormalFormResult:
    n = p.nvars
    if leads is None:
        leads = [order.leading(g) for g in basis]
    quotients: list[dict] = [{} for _ in basis]
    work = dict(p.terms)
    remainder: dict[Monomial, Fraction] = {}
    while work:
        m = max(work, key=order.key)
        c = work[m]
        for j, (lm, lc) in enumerate(leads):
            if _divides(lm, m):
                budget.tick()
                q_exp = _mdiv(m, lm)
                q_coeff = c / lc
                quotients[j][q_exp] = quotients[j].get(q_exp, 0) + q_coeff
                for gm, gc in basis[j].terms.items():
                    t = tuple(a + b for a, b in zip(gm, q_exp))
                    v = work.get(t, 0) - q_coeff * gc
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            remainder[m] = c
            del work[m]
    return NormalFormResult(
        Polynomial(n, remainder),
        tuple(Polynomial(n, q) for q in quotients),
    )


def reduce(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX,
           budget: Optional[int] = None) -> NormalFormResult:
    """Multivariate division of p by `basis`, reducing every term.

    The divisor used at each step is the first basis element (in sequence
    order) whose leading monomial divides the current leading term, so the
    result is deterministic.  Zero basis elements receive a zero quotient.
    """
    for g in basis:
        if g.nvars != p.nvars:
            raise ArityMismatch(f"arity {p.nvars} vs {g.nvars}")
    live = [j for j, g in enumerate(basis) if not g.is_zero()]
    res = _reduce(p, [basis[j] for j in live], order, _Budget(budget))
    quotients = [Polynomial.zero(p.nvars) for _ in basis]
    for j, q in zip(live, res.quotients):
        quotients[j] = q
    return NormalFormResult(res.remainder, tuple(quotients))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    fm, fc = order.leading(f)
    gm, gc = order.leading(g)
    lcm = _lcm(fm, gm)
    return f.mul_term(_mdiv(lcm, fm), 1 / fc) - g.mul_term(_mdiv(lcm, gm), 1 / gc)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[Polynomial, ...]
    basis: tuple[Polynomial, ...]
    order: MonomialOrder
    # cofactors[j][i]: basis[j] == sum_i cofactors[j][i] * generators[i]
    cofactors: Optional[tuple[tuple[Polynomial, ...], ...]]
    steps: int = 0

    @property
    def nvars(self) -> int:
        return self.generators[0].nvars

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0] == 1

    def leading_monomials(self) -> list[Monomial]:
        return [self.order.leading(g)[0] for g in self.basis]

    def reduce(self, p: Polynomial) -> NormalFormResult:
        return reduce(p, self.basis, self.order)


class _Row:
    """A polynomial together with its cofactor vector over the generators."""

    __slots__ = ("poly", "cof", "lm", "lc")

    def __init__(self, poly: Polynomial, cof: Optional[list[Polynomial]], order: MonomialOrder):
        self.poly = poly
        self.cof = cof
        self.lm, self.lc = order.leading(poly)

    def monic(self, order: MonomialOrder) -> _Row:
        inv = 1 / self.lc
        cof = None if self.cof is None else [c.scale(inv) for c in self.cof]
        return _Row(self.poly.scale(inv), cof, order)


def _combine(cof: Optional[list[Polynomial]], rows: Sequence[_Row],
             quotients: Sequence[Polynomial]) -> Optional[list[Polynomial]]:
    if cof is None:
        return None
    out = list(cof)
    for row, q in zip(rows, quotients):
        if q.is_zero():
            continue
        for i, c in enumerate(row.cof):
            if not c.is_zero():
                out[i] = out[i] - q * c
    return out


def _reduce_row(poly: Polynomial, cof, rows: Sequence[_Row], order: MonomialOrder,
                budget: _Budget) -> tuple[Polynomial, Optional[list[Polynomial]]]:
    res = _reduce(poly, [r.poly for r in rows], order, budget,
                  leads=[(r.lm, r.lc) for r in rows])
    return res.remainder, _combine(cof, rows, res.quotients)


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX, *,
               budget: Optional[int] = DEFAULT_BUDGET,
               track_cofactors: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens`.

    Pairs are processed by the normal strategy (smallest lcm of leading
    monomials first) and skipped by Buchberger's coprime criterion.  With
    `track_cofactors` every basis element carries its representation in terms
    of `gens`.  The run stops early once a nonzero constant appears.
    """
    gens = tuple(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].nvars
    if any(g.nvars != n for g in gens):
        raise ArityMismatch("generators live in different rings")
    m = len(gens)
    tracker = _Budget(budget)

    def unit_vector(i: int) -> Optional[list[Polynomial]]:
        if not track_cofactors:
            return None
        return [Polynomial.constant(n, 1 if j == i else 0) for j in range(m)]

    def finish(rows: list[_Row]) -> GroebnerBasis:
        cof = None
        if track_cofactors:
            cof = tuple(tuple(r.cof) for r in rows)
        return GroebnerBasis(gens, tuple(r.poly for r in rows), order, cof, tracker.used)

    rows: list[_Row] = []
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        row = _Row(g, unit_vector(i), order)
        if g.is_constant():
            return finish([row.monic(order)])
        rows.append(row)
    if not rows:
        return finish([])

    pairs = {(i, j) for i in range(len(rows)) for j in range(i + 1, len(rows))}

    def pair_key(pair):
        lcm = _lcm(rows[pair[0]].lm, rows[pair[1]].lm)
        return (sum(lcm), order.key(lcm), pair)

    while pairs:
        pair = min(pairs, key=pair_key)
        pairs.remove(pair)
        a, b = rows[pair[0]], rows[pair[1]]
        if all(x == 0 or y == 0 for x, y in zip(a.lm, b.lm)):
            continue
        lcm = _lcm(a.lm, b.lm)
        ma, mb = _mdiv(lcm, a.lm), _mdiv(lcm, b.lm)
        ca, cb = 1 / a.lc, 1 / b.lc
        spoly = a.poly.mul_term(ma, ca) - b.poly.mul_term(mb, cb)
        scof = None
        if track_cofactors:
            scof = [x.mul_term(ma, ca) - y.mul_term(mb, cb) for x, y in zip(a.cof, b.cof)]
        tracker.tick()
        h, hcof = _reduce_row(spoly, scof, rows, order, tracker)
        if h.is_zero():
            continue
        new = _Row(h, hcof, order).monic(order)
        if h.is_constant():
            return finish([new])
        rows.append(new)
        k = len(rows) - 1
        pairs.update((i, k) for i in range(k))

    # minimize: drop rows whose leading monomial is divisible by another's
    keep: list[_Row] = []
    for idx, r in enumerate(rows):
        redundant = False
        for jdx, s in enumerate(rows):
            if jdx == idx or not _divides(s.lm, r.lm):
                continue
            if s.lm != r.lm or jdx < idx:
                redundant = True
                break
        if not redundant:
            keep.append(r)

    # inter-reduce; leading monomials are fixed so one pass suffices
    reduced: list[_Row] = []
    for idx, r in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        poly, cof = _reduce_row(r.poly, r.cof, others, order, tracker) if others else (r.poly, r.cof)
        reduced.append(_Row(poly, cof, order).monic(order))
    reduced.sort(key=lambda r: order.key(r.lm), reverse=True)
    return finish(reduced)


def contains_one(gb: GroebnerBasis) -> Optional[list[Polynomial]]:
    """Cofactors U with sum(U_i * generators[i]) == 1, or None for a proper ideal."""
    if not gb.is_unit():
        return None
    if gb.cofactors is None:
        raise ValueError("basis was computed without cofactor tracking")
    return list(gb.cofactors[0])


def quotient_basis(gb: GroebnerBasis) -> Optional[list[Monomial]]:
    """Standard monomials of the quotient ring, or None if there are infinitely many."""
    n = gb.nvars
    if gb.is_unit():
        return []
    leads = gb.leading_monomials()
    bounds = []
    for i in range(n):
        pure = [lm[i] for lm in leads if lm[i] and all(e == 0 for j, e in enumerate(lm) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    found = [
        exps
        for exps in itertools.product(*(range(b) for b in bounds))
        if not any(_divides(lm, exps) for lm in leads)
    ]
    found.sort(key=grevlex_key)
    return found


def audit(gb: GroebnerBasis) -> bool:
    """Independent re-check: S-pairs reduce to zero and cofactor rows reproduce the basis."""
    basis = list(gb.basis)
    for f, g in itertools.combinations(basis, 2):
        if not reduce(s_polynomial(f, g, gb.order), basis, gb.order, budget=None).remainder.is_zero():
            return False
    for g in gb.generators:
        if basis and not reduce(g, basis, gb.order, budget=None).remainder.is_zero():
            return False
        if not basis and not g.is_zero():
            return False
    if gb.cofactors is not None:
        for g, row in zip(basis, gb.cofactors):
            total = Polynomial.zero(gb.nvars)
            for c, gen in zip(row, gb.generators):
                total = total + c * gen
            if total != g:
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    leads = gb.leading_monomials()
    for j, g in enumerate(gb.basis):
        if gb.order.leading(g)[1] != 1:
            return False
        for m in g.terms:
            if any(_divides(lm, m) for i, lm in enumerate(leads) if i != j):
                return False
    return True
