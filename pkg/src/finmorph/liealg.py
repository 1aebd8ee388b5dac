"""Small semisimple Lie algebras from matrix realizations.

Shipped algebras: sl2, sl3, sl4 (trace-free matrices), so4 and sp4 (split
forms preserving an anti-diagonal bilinear form, so that their Borel
subalgebras are upper triangular).  Structure constants are computed from the
matrices on first use and can be audited with :func:`check_jacobi`.

Coordinates of sl2 are ordered (h, e, f), so the point (a, b, c) is the
matrix [[a, b], [c, -a]].
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .polyring import Polynomial, Ring, ScalarLike, as_scalar

SHIPPED = ("sl2", "sl3", "sl4", "so4", "sp4")


class DimensionMismatch(ValueError):
    pass


class RouteDisagreement(AssertionError):
    """The two nilpotency tests disagreed; this can only be a bug."""


class UnknownAlgebra(KeyError):
    pass


def _unit(n: int, i: int, j: int) -> list[list[Fraction]]:
    m = linalg.zeros(n)
    m[i][j] = Fraction(1)
    return m


def _kind(m) -> str:
    cells = [(i, j) for i, row in enumerate(m) for j, x in enumerate(row) if x != 0]
    if all(i < j for i, j in cells):
        return "upper"
    if all(i > j for i, j in cells):
        return "lower"
    return "diag"


@dataclass(frozen=True, eq=False)
class LieAlgebraSpec:
    name: str
    matrix_size: int
    labels: tuple[str, ...]
    coordinate_names: tuple[str, ...]
    basis_matrices: tuple
    # matrix unit (i, j) an element was built from; None for Cartan elements
    positions: tuple

    @property
    def dim(self) -> int:
        return len(self.basis_matrices)

    @functools.cached_property
    def kinds(self) -> tuple[str, ...]:
        return tuple(_kind(m) for m in self.basis_matrices)

    @functools.cached_property
    def _solver(self):
        n = self.matrix_size
        cells = [(i, j) for i in range(n) for j in range(n)]
        cols = [[m[i][j] for (i, j) in cells] for m in self.basis_matrices]
        # pick dim independent matrix cells to read coordinates from
        _, rows = linalg.rref(cols)
        picked = [cells[r] for r in rows]
        square = [[col[r] for col in cols] for r in rows]
        return picked, linalg.inverse(square)

    @functools.cached_property
    def structure(self) -> tuple:
        """structure[i][j][m] = c_{ij}^m with [b_i, b_j] = sum_m c_{ij}^m b_m."""
        b = self.basis_matrices
        return tuple(
            tuple(tuple(self.coords(linalg.commutator(b[i], b[j]))) for j in range(self.dim))
            for i in range(self.dim)
        )

    def ring(self) -> Ring:
        return Ring(self.coordinate_names)

    def symbolic_element(self) -> list[Polynomial]:
        return self.ring().gens()

    def to_matrix(self, x: Sequence) -> list[list]:
        if len(x) != self.dim:
            raise DimensionMismatch(f"{self.name} has dimension {self.dim}, got {len(x)}")
        n = self.matrix_size
        out = [[0] * n for _ in range(n)]
        for xi, m in zip(x, self.basis_matrices):
            for r in range(n):
                for c in range(n):
                    if m[r][c]:
                        out[r][c] = out[r][c] + xi * m[r][c]
        return out

    def coords(self, matrix) -> list[Fraction]:
        picked, inv = self._solver
        rhs = [as_scalar(matrix[i][j]) for (i, j) in picked]
        x = [sum((a * b for a, b in zip(row, rhs)), Fraction(0)) for row in inv]
        back = self.to_matrix(x)
        n = self.matrix_size
        if any(back[r][c] != matrix[r][c] for r in range(n) for c in range(n)):
            raise ValueError(f"matrix does not lie in {self.name}")
        return x

    def bracket(self, x: Sequence, y: Sequence) -> list:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"{self.name} has dimension {self.dim}")
        out = [Fraction(0)] * self.dim
        st = self.structure
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for m, c in enumerate(st[i][j]):
                    if c:
                        out[m] = out[m] + xi * yj * c
        return out


def special_linear(n: int) -> LieAlgebraSpec:
    """sl_n with basis H_1..H_{n-1}, then E_ij for i<j, then E_ij for i>j."""
    if n < 2:
        raise ValueError("sl_n needs n >= 2")
    mats, labels, positions = [], [], []
    for i in range(n - 1):
        mats.append(linalg.matadd(_unit(n, i, i), _unit(n, i + 1, i + 1), scale=-1))
        labels.append(f"h{i + 1}")
        positions.append(None)
    for upper in (True, False):
        for i in range(n):
            for j in range(n):
                if (i < j) if upper else (i > j):
                    mats.append(_unit(n, i, j))
                    labels.append(f"e{i + 1}{j + 1}")
                    positions.append((i, j))
    if n == 2:
        labels = ["h", "e", "f"]
        coord_names = ("a", "b", "c")
    else:
        coord_names = tuple(f"x{i + 1}" for i in range(len(mats)))
    return LieAlgebraSpec(f"sl{n}", n, tuple(labels), coord_names,
                          tuple(mats), tuple(positions))


def _form_preserving(name: str, form) -> LieAlgebraSpec:
    """{X : X^T J + J X = 0}, spanned by E_ij + sigma(E_ij), sigma(X) = -J^{-1} X^T J."""
    n = len(form)
    j_inv = linalg.inverse(form)
    order = [(i, i) for i in range(n)]
    order += [(i, j) for i in range(n) for j in range(n) if i < j]
    order += [(i, j) for i in range(n) for j in range(n) if i > j]
    mats, labels, positions, flat = [], [], [], []
    for (i, j) in order:
        e = _unit(n, i, j)
        sigma = linalg.matscale(linalg.matmul(linalg.matmul(j_inv, linalg.transpose(e)), form), -1)
        m = linalg.matadd(e, sigma)
        v = [x for row in m for x in row]
        if not any(v) or linalg.rank(flat + [v]) == len(flat):
            continue
        flat.append(v)
        mats.append(m)
        labels.append(f"b{i + 1}{j + 1}")
        positions.append((i, j))
    coord_names = tuple(f"x{i + 1}" for i in range(len(mats)))
    return LieAlgebraSpec(name, n, tuple(labels), coord_names, tuple(mats), tuple(positions))


def _antidiag(signs: Sequence[int]):
    n = len(signs)
    m = linalg.zeros(n)
    for i, s in enumerate(signs):
        m[i][n - 1 - i] = Fraction(s)
    return m


@functools.lru_cache(maxsize=None)
def algebra(name: str) -> LieAlgebraSpec:
    if name in ("sl2", "sl3", "sl4"):
        return special_linear(int(name[2:]))
    if name == "so4":
        return _form_preserving("so4", _antidiag([1, 1, 1, 1]))
    if name == "sp4":
        return _form_preserving("sp4", _antidiag([1, 1, -1, -1]))
    raise UnknownAlgebra(f"unknown algebra {name!r}; shipped: {', '.join(SHIPPED)}")


# -- structure checks ------------------------------------------------------------


def check_antisymmetry(g: LieAlgebraSpec) -> bool:
    st = g.structure
    return all(
        st[i][j][m] == -st[j][i][m]
        for i in range(g.dim) for j in range(g.dim) for m in range(g.dim)
    )


def check_jacobi(g: LieAlgebraSpec) -> bool:
    """[b_i,[b_j,b_k]] + [b_j,[b_k,b_i]] + [b_k,[b_i,b_j]] == 0 for all basis triples."""
    d = g.dim
    e = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for i, j, k in itertools.combinations(range(d), 3):
        total = [Fraction(0)] * d
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            term = g.bracket(e[a], g.bracket(e[b], e[c]))
            total = [s + t for s, t in zip(total, term)]
        if any(total):
            return False
    return True


# -- adjoint representation and invariants ---------------------------------------


def ad_matrix(g: LieAlgebraSpec, x: Sequence) -> list[list]:
    """Matrix of y -> [x, y]; column j holds the coordinates of [x, b_j]."""
    if len(x) != g.dim:
        raise DimensionMismatch(f"{g.name} has dimension {g.dim}, got {len(x)}")
    symbolic = any(isinstance(v, Polynomial) for v in x)
    zero = Polynomial.zero(next(v for v in x if isinstance(v, Polynomial)).nvars) if symbolic else Fraction(0)
    st = g.structure
    out = [[zero] * g.dim for _ in range(g.dim)]
    for i, xi in enumerate(x):
        if not symbolic and not xi:
            continue
        for j in range(g.dim):
            for m, c in enumerate(st[i][j]):
                if c:
                    out[m][j] = out[m][j] + xi * c
    return out


@functools.lru_cache(maxsize=None)
def _killing(name: str) -> tuple:
    g = algebra(name)
    d = g.dim
    ads = [ad_matrix(g, [Fraction(int(i == j)) for j in range(d)]) for i in range(d)]
    return tuple(tuple(linalg.trace(linalg.matmul(ads[i], ads[j])) for j in range(d)) for i in range(d))


def killing_form(g: LieAlgebraSpec) -> list[list[Fraction]]:
    """B_ij = Tr(ad b_i ad b_j)."""
    if g.name in SHIPPED and algebra(g.name) is g:
        return [list(r) for r in _killing(g.name)]
    d = g.dim
    ads = [ad_matrix(g, [Fraction(int(i == j)) for j in range(d)]) for i in range(d)]
    return [[linalg.trace(linalg.matmul(ads[i], ads[j])) for j in range(d)] for i in range(d)]


def killing(g: LieAlgebraSpec, x: Sequence, y: Sequence) -> Fraction:
    B = killing_form(g)
    return sum((x[i] * B[i][j] * y[j] for i in range(g.dim) for j in range(g.dim) if x[i] and y[j]),
               Fraction(0))


def trace_invariant(g: LieAlgebraSpec, k: int) -> Polynomial:
    """Tr(ad(x)^k) as a polynomial in the coordinates of x."""
    if k < 1:
        raise ValueError("k must be positive")
    ad = ad_matrix(g, g.symbolic_element())
    power = ad
    for _ in range(k - 2):
        power = linalg.matmul(power, ad)
    if k == 1:
        return linalg.trace(ad)
    total = Polynomial.zero(g.dim)
    for i in range(g.dim):
        for j in range(g.dim):
            if power[i][j] and ad[j][i]:
                total = total + power[i][j] * ad[j][i]
    return total


def _principal_minor_sum(x, size: int):
    n = len(x)
    total = 0
    for rows in itertools.combinations(range(n), size):
        for perm in itertools.permutations(range(size)):
            inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
            term = -1 if inversions % 2 else 1
            for r, p in zip(rows, perm):
                term = term * x[r][rows[p]]
            total = total + term
    return total


def char_poly_invariants(n: int, x=None) -> list:
    """Coefficients (-1)^i Tr(Lambda^i x) of det(t - x) for i = 2..n.

    With `x` omitted, x is the generic element of sl_n written in that
    algebra's coordinates and the results are polynomials.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if x is None:
        g = algebra(f"sl{n}") if f"sl{n}" in SHIPPED else special_linear(n)
        x = g.to_matrix(g.symbolic_element())
    if len(x) != n or any(len(row) != n for row in x):
        raise DimensionMismatch(f"expected a {n}x{n} matrix")
    return [(-1) ** i * _principal_minor_sum(x, i) for i in range(2, n + 1)]


# -- nilpotent cone ---------------------------------------------------------------


def _power_traces_vanish(m, upto: int) -> bool:
    p = m
    for k in range(1, upto + 1):
        if k > 1:
            p = linalg.matmul(p, m)
        if linalg.trace(p) != 0:
            return False
    return True


def nilpotency_routes(g: LieAlgebraSpec, x: Sequence[ScalarLike]) -> tuple[bool, bool]:
    """(ad(x)^dim == 0, Tr(ad(x)^k) == 0 for k = 1..dim)."""
    x = [as_scalar(v) for v in x]
    ad = ad_matrix(g, x)
    route_a = linalg.is_zero(linalg.matpow(ad, g.dim))
    route_b = _power_traces_vanish(ad, g.dim)
    return route_a, route_b


def is_nilpotent(g: LieAlgebraSpec, x: Sequence[ScalarLike]) -> bool:
    a, b = nilpotency_routes(g, x)
    if a != b:
        raise RouteDisagreement(f"ad-power says {a}, trace invariants say {b} at {list(x)}")
    return a


def matrix_is_nilpotent(m) -> bool:
    m = [[as_scalar(v) for v in row] for row in m]
    a = linalg.is_zero(linalg.matpow(m, len(m)))
    b = _power_traces_vanish(m, len(m))
    if a != b:
        raise RouteDisagreement(f"matrix power says {a}, traces say {b}")
    return a


def nilpotent_from_flag(nu: ScalarLike) -> list[list[Fraction]]:
    """phi = [[0, nu], [0, 0]]: kernel line mapped to zero, quotient mapped into it."""
    return [[Fraction(0), as_scalar(nu)], [Fraction(0), Fraction(0)]]


def random_element(g: LieAlgebraSpec, rng: random.Random, bound: int = 3) -> list[Fraction]:
    return [Fraction(rng.randint(-bound, bound)) for _ in range(g.dim)]


def _exp_ad(g: LieAlgebraSpec, y: Sequence[Fraction], x: Sequence[Fraction]) -> list[Fraction]:
    """exp(ad y) x for nilpotent y (the series is finite)."""
    ad = ad_matrix(g, y)
    total = list(x)
    term = list(x)
    for j in range(1, g.dim + 1):
        term = [sum((ad[r][c] * term[c] for c in range(g.dim)), Fraction(0)) / j for r in range(g.dim)]
        if not any(term):
            break
        total = [a + b for a, b in zip(total, term)]
    return total


def random_nilpotent(g: LieAlgebraSpec, rng: random.Random, bound: int = 2, rounds: int = 2) -> list[Fraction]:
    """A random strictly-upper element moved around by unipotent conjugations."""
    upper = [i for i, k in enumerate(g.kinds) if k == "upper"]
    lower = [i for i, k in enumerate(g.kinds) if k == "lower"]
    x = [Fraction(0)] * g.dim
    for i in upper:
        x[i] = Fraction(rng.randint(-bound, bound))
    for _ in range(rounds):
        for part in (lower, upper):
            y = [Fraction(0)] * g.dim
            for i in part:
                y[i] = Fraction(rng.randint(-1, 1))
            x = _exp_ad(g, y, x)
    return x


# -- parabolics (sl_n only) ---------------------------------------------------------


@dataclass(frozen=True)
class ParabolicSpec:
    """Standard maximal parabolic of sl_n with diagonal blocks (a, n - a)."""

    n: int
    a: int

    def __post_init__(self) -> None:
        if not 1 <= self.a < self.n:
            raise ValueError("block sizes must both be positive")

    @property
    def blocks(self) -> tuple[int, int]:
        return (self.a, self.n - self.a)

    def _block(self, i: int) -> int:
        return 0 if i < self.a else 1

    def _select(self, g: LieAlgebraSpec, test) -> list[int]:
        if g.matrix_size != self.n or not g.name.startswith("sl"):
            raise DimensionMismatch(f"parabolic of sl{self.n} used with {g.name}")
        return [idx for idx, pos in enumerate(g.positions)
                if test(None if pos is None else (self._block(pos[0]), self._block(pos[1])))]

    def p_indices(self, g: LieAlgebraSpec) -> list[int]:
        return self._select(g, lambda bl: bl is None or bl[0] <= bl[1])

    def nilradical_indices(self, g: LieAlgebraSpec) -> list[int]:
        return self._select(g, lambda bl: bl is not None and bl[0] < bl[1])

    def complement_indices(self, g: LieAlgebraSpec) -> list[int]:
        return self._select(g, lambda bl: bl is not None and bl[0] > bl[1])


def is_subalgebra(g: LieAlgebraSpec, indices: Sequence[int]) -> bool:
    allowed = set(indices)
    st = g.structure
    return all(
        not c or m in allowed
        for i in indices for j in indices for m, c in enumerate(st[i][j])
    )


def _unit_vectors(dim: int, indices: Sequence[int]) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(dim)] for i in indices]


def parabolic_perp(g: LieAlgebraSpec, p: ParabolicSpec) -> list[list[Fraction]]:
    """Basis of the Killing-orthogonal complement of p; checked against the nilradical."""
    B = killing_form(g)
    p_idx = p.p_indices(g)
    perp = linalg.nullspace([B[r] for r in p_idx])
    nil = _unit_vectors(g.dim, p.nilradical_indices(g))
    if len(perp) != g.dim - len(p_idx) or len(perp) != p.a * (p.n - p.a):
        raise AssertionError(f"dim p^perp = {len(perp)} does not match codim p")
    if not linalg.span_equal(perp, nil):
        raise AssertionError("p^perp differs from the block-upper nilradical")
    return perp


def isotropy_duality_check(g: LieAlgebraSpec, p: ParabolicSpec,
                           perp: Optional[Sequence[Sequence[Fraction]]] = None) -> bool:
    """Is the Killing pairing g/p x p^perp -> Q perfect?"""
    if perp is None:
        perp = parabolic_perp(g, p)
    comp = p.complement_indices(g)
    if len(comp) != len(perp):
        return False
    B = killing_form(g)
    pairing = [[sum((B[q][s] * y[s] for s in range(g.dim)), Fraction(0)) for y in perp] for q in comp]
    return linalg.det(pairing) != 0


def standard_parabolics(g: LieAlgebraSpec) -> list[ParabolicSpec]:
    if not g.name.startswith("sl"):
        return []
    return [ParabolicSpec(g.matrix_size, a) for a in range(1, g.matrix_size)]


# -- audit ------------------------------------------------------------------------


def audit_algebra(g: LieAlgebraSpec, seed: int = 0, samples: int = 100,
                  max_invariant_degree: int = 3) -> list[tuple[str, bool]]:
    """Run the structural checks on `g`; returns (check name, passed) pairs."""
    from .polyring import grading_check

    rng = random.Random(seed)
    results = [("antisymmetry", check_antisymmetry(g)), ("jacobi", check_jacobi(g))]
    B = killing_form(g)
    results.append(("killing symmetric", all(B[i][j] == B[j][i] for i in range(g.dim) for j in range(g.dim))))
    results.append(("killing nondegenerate", linalg.det(B) != 0))
    ok = True
    for _ in range(samples):
        x, y, z = (random_element(g, rng) for _ in range(3))
        if killing(g, g.bracket(x, y), z) + killing(g, y, g.bracket(x, z)) != 0:
            ok = False
            break
    results.append(("killing invariance", ok))
    for k in range(1, max_invariant_degree + 1):
        results.append((f"trace invariant degree {k} graded", grading_check(trace_invariant(g, k), k)))
    agree = True
    try:
        for _ in range(samples):
            is_nilpotent(g, random_element(g, rng))
        nilpotents_ok = all(is_nilpotent(g, random_nilpotent(g, rng)) for _ in range(max(1, samples // 10)))
    except RouteDisagreement:
        agree = nilpotents_ok = False
    results.append(("nilpotency routes agree", agree))
    results.append(("constructed nilpotents detected", nilpotents_ok))
    for p in standard_parabolics(g):
        label = f"parabolic {p.blocks}"
        results.append((f"{label} closed under bracket", is_subalgebra(g, p.p_indices(g))))
        try:
            parabolic_perp(g, p)
            perp_ok = True
        except AssertionError:
            perp_ok = False
        results.append((f"{label} perp is nilradical", perp_ok))
        results.append((f"{label} duality pairing perfect", perp_ok and isotropy_duality_check(g, p)))
    return results
