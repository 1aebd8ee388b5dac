"""End-to-end acceptance checks, one test per criterion.

Each test records a pass/fail line that is printed in the terminal summary.
"""

import itertools
import json
import random
import time
from fractions import Fraction

from finmorph import corpus, liealg
from finmorph.certfile import dump_certificate
from finmorph.certifier import (
    Status,
    check_origin_only_zero,
    fiber_dimension,
    finiteness_certificate,
    rewrite_monomial,
    verify_certificate,
)
from finmorph.cli import main
from finmorph.expr import format_system
from finmorph.groebner import audit, buchberger, contains_one
from finmorph.polyring import Polynomial, Ring, grading_check


def monomials_up_to(n, degree):
    return [m for m in itertools.product(range(degree + 1), repeat=n) if sum(m) <= degree]


def certified_entries(n=None):
    return [e for e in corpus.finite_entries() if n is None or e.ring.nvars == n]


def test_criterion_1_certified_finite(record_criterion):
    start = time.perf_counter()
    ok = True
    for make in (corpus.newton_system, corpus.elementary_symmetric_system):
        for n in (1, 2, 3):
            s = make(n)
            ok &= check_origin_only_zero(s).status is Status.CERTIFIED_FINITE
            cert = finiteness_certificate(s)
            ok &= verify_certificate(s, cert)
            if n == 2:
                ok &= cert.c == 3
    xy = Ring(("x", "y"))
    x, y = xy.gens()
    half = Fraction(1, 2)
    ok &= x * (x - y) * half * (x + y) + x * half * (x**2 + y**2) == x**3
    ok &= x**2 * (x + y) - x * (x * y) == x**3
    elapsed = time.perf_counter() - start
    record_criterion(1, f"symmetric systems n=1..3 certified, c=3 at n=2 ({elapsed:.2f}s < 10s)",
                     ok and elapsed < 10)


def test_criterion_2_rejections(record_criterion):
    start = time.perf_counter()
    ok = True
    for entry in corpus.rejection_suite():
        v = check_origin_only_zero(entry.system)
        ok &= v.status is Status.REJECTED_POSITIVE_DIMENSIONAL and v.chart == entry.witness_chart
        # re-run the witness basis through the audit and confirm it is proper
        gb = buchberger(entry.system.chart_polys(v.chart))
        ok &= audit(gb) and audit(v.witness)
        ok &= not gb.is_unit() and contains_one(gb) is None
        ok &= set(gb.basis) == set(v.witness.basis)
    elapsed = time.perf_counter() - start
    record_criterion(2, f"rejection suite rejected with proper witness charts ({elapsed:.2f}s < 5s)",
                     ok and elapsed < 5)


def test_criterion_3_rewriting(record_criterion):
    failures = checked = 0
    counts = {}
    for n, degree in ((2, 12), (3, 8)):
        mons = monomials_up_to(n, degree)
        counts[n] = len(mons)
        for entry in certified_entries(n):
            s = entry.system
            cert = finiteness_certificate(s)
            for alpha in mons:
                checked += 1
                if not rewrite_monomial(s, cert, alpha, check=False).check(s):
                    failures += 1
    ok = failures == 0 and counts[2] >= 90
    record_criterion(3, f"rewrite self-check: {checked} monomials, {failures} failures "
                        f"({counts[2]} per n=2 system, {counts[3]} per n=3 system)", ok)


def test_criterion_4_constant_fiber_length(record_criterion):
    deviations = total = 0
    for idx, entry in enumerate(certified_entries()):
        s = entry.system
        expected = s.fiber_degree()
        targets = [[0] * s.n] + corpus.random_targets(s.n, 20, seed=1000 + idx)
        for t in targets:
            total += 1
            if fiber_dimension(s, t) != expected:
                deviations += 1
    record_criterion(4, f"fiber length equals product of degrees at {total} targets, "
                        f"{deviations} deviations", deviations == 0)


def test_criterion_5_nilpotent_routes(record_criterion):
    disagreements = 0
    missed = 0
    for name in ("sl2", "sl3"):
        g = liealg.algebra(name)
        rng = random.Random(f"acceptance-{name}")
        for _ in range(1000):
            a, b = liealg.nilpotency_routes(g, liealg.random_element(g, rng))
            disagreements += a != b
        for _ in range(100):
            a, b = liealg.nilpotency_routes(g, liealg.random_nilpotent(g, rng))
            disagreements += a != b
            missed += not a
    record_criterion(5, f"ad-power and trace routes on 2200 elements: {disagreements} disagreements, "
                        f"{missed} constructed nilpotents missed", disagreements == 0 and missed == 0)


def test_criterion_6_parabolic_duality(record_criterion):
    ok = True
    cases = [("sl2", 1), ("sl3", 1), ("sl3", 2)]
    for name, a in cases:
        g = liealg.algebra(name)
        p = liealg.ParabolicSpec(g.matrix_size, a)
        try:
            perp = liealg.parabolic_perp(g, p)
        except AssertionError:
            ok = False
            continue
        ok &= liealg.is_subalgebra(g, p.p_indices(g))
        ok &= liealg.isotropy_duality_check(g, p, perp)
    record_criterion(6, "perp of sl2 Borel and sl3 maximal parabolics is the nilradical, "
                        "pairing with g/p perfect", ok)


def test_criterion_7_grading(record_criterion):
    checked = 0
    ok = True
    for name in liealg.SHIPPED:
        g = liealg.algebra(name)
        for k in (1, 2, 3):
            ok &= grading_check(liealg.trace_invariant(g, k), k)
            checked += 1
    for n in (2, 3, 4):
        for degree, inv in enumerate(liealg.char_poly_invariants(n), start=2):
            ok &= grading_check(inv, degree)
            checked += 1
    for entry in corpus.all_entries():
        if entry.expected == "non-square-demo":
            ok &= grading_check(entry.polys[0], 2)
            checked += 1
            continue
        for p, d in zip(entry.polys, entry.system.degrees):
            ok &= grading_check(p, d)
            checked += 1
    record_criterion(7, f"{checked} invariant and corpus polynomials pass the grading check", ok)


def _random_gens(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    gens = []
    for _ in range(rng.randint(1, 3)):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            exps = [0] * n
            for _ in range(rng.randint(0, 3)):
                exps[rng.randrange(n)] += 1
            terms[tuple(exps)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        gens.append(Polynomial(n, terms))
    return gens


def test_criterion_8_groebner_soundness(record_criterion):
    failures = 0
    for seed in range(100):
        gens = _random_gens(seed)
        gb = buchberger(gens)
        if not audit(gb):
            failures += 1
            continue
        rng = random.Random(seed)
        n = gens[0].nvars
        probe = Polynomial(n, {tuple(rng.randint(0, 3) for _ in range(n)): rng.randint(1, 5)
                               for _ in range(4)})
        r = gb.reduce(probe).remainder
        if gb.reduce(r).remainder != r:
            failures += 1
    record_criterion(8, f"S-polynomial and cofactor audits on 100 random systems, "
                        f"reduce idempotent: {failures} failures", failures == 0)


def _mutate(doc, rng):
    """Apply one seeded mutation; returns a short description."""
    kind = rng.choice(["cofactor", "lifted", "c", "degree"])
    n = len(doc["variables"])
    k = rng.randrange(n)
    i = rng.randrange(n)
    if kind == "c":
        delta = rng.choice([-2, -1, 1, 2, 5])
        doc["c"] += delta
        return f"c {delta:+d}"
    if kind == "degree":
        degrees = doc["charts"][k]["cofactor_degrees"]
        old = degrees[i]
        degrees[i] = 0 if old is None else rng.choice([None, old + 1] + ([old - 1] if old > 0 else []))
        return f"chart {k + 1} degree {i + 1}: {old} -> {degrees[i]}"
    poly = doc["charts"][k]["cofactors"][i] if kind == "cofactor" else doc["lifted"][k][i]
    if not poly:
        # zero polynomial: the only single-coefficient edit is to add a term
        exps = [0] * (n - 1 if kind == "cofactor" else n)
        poly.append([exps, "1/1"])
        return f"{kind} {k + 1},{i + 1}: new term"
    term = rng.choice(poly)
    num, den = map(int, term[1].split("/"))
    old = Fraction(num, den)
    new = old + Fraction(rng.choice([-3, -1, 1, 2]), rng.choice([1, 2, 7]))
    if new == 0:
        new = old * 2
    term[1] = f"{new.numerator}/{new.denominator}"
    return f"{kind} {k + 1},{i + 1}: {old} -> {new}"


def test_criterion_9_tamper_detection(tmp_path, record_criterion, capsys):
    rng = random.Random(2024)
    entries = [e for e in certified_entries() if e.ring.nvars >= 2]
    missed = []
    for trial in range(50):
        entry = entries[trial % len(entries)]
        sys_path = tmp_path / f"{entry.name}.sys"
        if not sys_path.exists():
            sys_path.write_text(format_system(entry.ring, entry.polys))
        doc = json.loads(dump_certificate(entry.system, finiteness_certificate(entry.system)))
        label = _mutate(doc, rng)
        cert_path = tmp_path / f"tampered-{trial}.json"
        cert_path.write_text(json.dumps(doc))
        if main(["verify", str(sys_path), str(cert_path)]) != 1:
            missed.append(f"{entry.name}: {label}")
    capsys.readouterr()
    record_criterion(9, f"50 seeded certificate mutations rejected by verify, {len(missed)} missed",
                     not missed)
    assert not missed, missed
