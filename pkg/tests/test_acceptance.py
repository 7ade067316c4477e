"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Every check is an exact equality or an exact sign test. Random inputs come from
fixed seeds so a run is reproducible.
"""

import json
import random
from fractions import Fraction
from math import isqrt
from pathlib import Path

import pytest

from conftest import GL_GENS, POSITIVE_GENS, SL_GENS, num, random_word
from esfunctor.bratteli import build_diagram, level_dimensions
from esfunctor.cli import run
from esfunctor.contfrac import EquivalenceVerdict, cf_expand, cf_value, convergents, equivalence_decide
from esfunctor.exact import QuadraticReal, UnimodularMatrix, mobius
from esfunctor.functor import f_morphism, f_object
from esfunctor.lattice import in_fundamental_domain, induced_tau, reduce_fundamental, tori_isomorphic
from esfunctor.pseudolattice import MeasuredFoliation, PseudoLattice, from_foliation, to_foliation

THETAS = [
    "sqrt(2)",
    "sqrt(3)",
    "sqrt(7)",
    "(1+sqrt(5))/2",
    "(3+sqrt(13))/2",
    "sqrt(5)",
    "sqrt(6)",
    "sqrt(11)",
    "sqrt(19)",
    "(1+sqrt(3))/2",
]
TAUS = ["i", "2i", "1/2+sqrt(3)/2*i", "1/3+i", "-2/5+3/2*i", "7+sqrt(2)*i", "1/7+1/5*i", "-3+2*sqrt(3)*i", "5/2+1/9*i", "sqrt(5)*i"]
GOLDEN_DIR = Path(__file__).parent / "golden"


def report(capsys, n: int, label: str, failures: list) -> None:
    status = "PASS" if not failures else "FAIL"
    detail = "" if not failures else f" ({len(failures)} failures, first: {failures[0]!r})"
    with capsys.disabled():
        print(f"\n{status} criterion {n}: {label}{detail}")
    assert not failures


def positive_word(rng: random.Random, max_len: int = 20) -> UnimodularMatrix:
    return random_word(rng, POSITIVE_GENS, max_len)


def random_positive_real(rng: random.Random, d: int) -> QuadraticReal:
    while True:
        u = QuadraticReal(Fraction(rng.randint(-50, 50), rng.randint(1, 20)), Fraction(rng.randint(-20, 20), rng.randint(1, 20)), d)
        if u.sign() > 0:
            return u


def test_criterion_1_equivariance(capsys):
    rng = random.Random(1)
    thetas = [num(t) for t in THETAS]
    taus = [num(t) for t in TAUS]
    failures = []
    for k in range(500):
        m = positive_word(rng)
        theta, tau = thetas[k % 10], taus[k % 10]
        image = (m.c + m.d * theta) / (m.a + m.b * theta)
        v = equivalence_decide(theta, image)
        if v.kind != EquivalenceVerdict.SL_EQUIVALENT or mobius(v.witness, theta) != image:
            failures.append(("theta", THETAS[k % 10], m, v.kind))
        t2 = induced_tau(m, tau)
        w = tori_isomorphic(tau, t2)
        if w is None or induced_tau(w, tau) != t2:
            failures.append(("tau", TAUS[k % 10], m))
    report(capsys, 1, "positive-monoid orbits are sl_equivalent and tori isomorphic, 500 words x 10 samples", failures)


def test_criterion_2_functoriality(capsys):
    rng = random.Random(2)
    failures = []
    for _ in range(1000):
        a, b = random_word(rng, SL_GENS), random_word(rng, SL_GENS)
        if f_morphism(a @ b) != f_morphism(a) @ f_morphism(b):
            failures.append((a, b))
    report(capsys, 2, "F(M1 M2) = F(M1) F(M2) on 1000 random SL2(Z) pairs", failures)


def test_criterion_3_kernel(capsys):
    rng = random.Random(3)
    failures = []
    for k in range(100):
        d = [2, 3, 5, 7, 11][k % 5]
        pl = PseudoLattice(random_positive_real(rng, d), random_positive_real(rng, d))
        s = Fraction(rng.randint(1, 500), rng.randint(1, 500))
        if f_object(pl.scaled(s)) != f_object(pl):
            failures.append((pl, s))
    a, b = PseudoLattice(1, num("sqrt(2)")), PseudoLattice(3, num("3*sqrt(2)"))
    if not (a != b and f_object(a) == f_object(b)):
        failures.append(("non-injectivity pair", a, b))
    report(capsys, 3, "F_object constant on 100 positive rational rescalings; distinct preimages (1, sqrt2), (3, 3 sqrt2)", failures)


def test_criterion_4_foliation_round_trip(capsys):
    rng = random.Random(4)
    failures = []
    for k in range(1000):
        d = [2, 3, 5, 6, 7, 10, 13][k % 7]
        pl = PseudoLattice(random_positive_real(rng, d), random_positive_real(rng, d))
        fol = MeasuredFoliation(random_positive_real(rng, d), random_positive_real(rng, d))
        if from_foliation(to_foliation(pl)) != pl or to_foliation(from_foliation(fol)) != fol:
            failures.append((pl, fol))
    report(capsys, 4, "to_foliation/from_foliation mutually inverse on 1000 random positive pairs", failures)


def test_criterion_5_cf_engine(capsys):
    failures = []
    for d in range(2, 1001):
        a0 = isqrt(d)
        if a0 * a0 == d:
            continue
        cf = cf_expand(QuadraticReal.sqrt(d))
        if cf.is_finite() or cf.preperiod != (a0,) or cf.period[-1] != 2 * a0:
            failures.append(("period", d, cf))
    for q in range(1, 201):
        for p in range(-200, 201):
            x = Fraction(p, q)
            if cf_value(cf_expand(x)) != x:
                failures.append(("rational", x))
    rng = random.Random(5)
    surds = []
    for _ in range(300):
        d = rng.randint(2, 1000)
        if isqrt(d) ** 2 == d:
            continue
        surds.append(QuadraticReal(Fraction(rng.randint(-40, 40), rng.randint(1, 15)), Fraction(rng.choice([-1, 1]) * rng.randint(1, 12), rng.randint(1, 12)), d))
    for u in surds:
        cf = cf_expand(u)
        if cf_value(cf) != u:
            failures.append(("surd", u))
        cs = convergents(cf, 16)
        for n in range(16):
            (p, q), qn1 = cs[n], cs[n + 1].q
            if (abs(u - Fraction(p, q)) - Fraction(1, q * qn1)).sign() >= 0:
                failures.append(("bound", u, n))
    report(capsys, 5, "periods close for all non-square d <= 1000; cf_value . cf_expand = id; convergent bound n <= 15", failures)


def test_criterion_6_serret(capsys):
    rng = random.Random(6)
    failures = []
    pairs = 0
    for k in range(1000):
        u = num(THETAS[k % 10])
        m = random_word(rng, GL_GENS, 16)
        try:
            v = mobius(m, u)
        except ZeroDivisionError:
            continue
        pairs += 1
        verdict = equivalence_decide(u, v)
        if verdict.kind == EquivalenceVerdict.NOT_EQUIVALENT or mobius(verdict.witness, u) != v:
            failures.append((THETAS[k % 10], m, verdict.kind))
    if equivalence_decide(num("(1+sqrt(5))/2"), num("sqrt(5)")).kind != EquivalenceVerdict.NOT_EQUIVALENT:
        failures.append("(phi, sqrt5) not reported not_equivalent")
    if pairs < 900:
        failures.append(f"only {pairs} orbit pairs generated")
    report(capsys, 6, f"{pairs} det +-1 orbit pairs recognised with exact witnesses; (phi, sqrt5) not_equivalent", failures)


def test_criterion_7_bratteli(capsys):
    failures = []
    for text in THETAS:
        cf = cf_expand(num(text))
        dg = build_diagram(cf, 12)
        dims = level_dimensions(dg)
        qs = [c.q for c in convergents(cf, 12)]
        for n in range(1, 13):
            if dims[n] != (qs[n], qs[n - 1]):
                failures.append(("oracle", text, n))
            a = dg.quotients[n]
            if dims[n][0] != a * dims[n - 1][0] + dims[n - 1][1]:
                failures.append(("recurrence", text, n))
    golden = level_dimensions(build_diagram(cf_expand(num("(1+sqrt(5))/2")), 5))
    if golden[1:] != [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]:
        failures.append(("fibonacci", golden))
    report(capsys, 7, "level dimensions = (q_n, q_n-1) for n <= 12, recurrence holds, golden ratio gives Fibonacci", failures)


def test_criterion_8_reduction(capsys):
    rng = random.Random(8)
    taus = [num(t) for t in TAUS]
    failures = []
    for k in range(500):
        tau = taus[k % 10]
        g = random_word(rng, SL_GENS)
        moved = induced_tau(g, tau)
        red, w = reduce_fundamental(moved)
        again, w2 = reduce_fundamental(red)
        base, _ = reduce_fundamental(tau)
        if again != red or w2 != UnimodularMatrix.identity():
            failures.append(("idempotent", TAUS[k % 10], g))
        if red != base:
            failures.append(("orbit", TAUS[k % 10], g))
        if induced_tau(w, moved) != red or not in_fundamental_domain(red) or w.det != 1:
            failures.append(("witness", TAUS[k % 10], g))
    report(capsys, 8, "reduction idempotent, orbit-invariant under 500 SL2(Z) words, witnesses verified", failures)


def test_criterion_9_cli_golden(capsys):
    cases = json.loads((GOLDEN_DIR / "cases.json").read_text())
    failures = []
    for case in cases:
        stdin = case["stdin"] if isinstance(case["stdin"], str) else json.dumps(case["stdin"])
        first, second = run(case["argv"], stdin), run(case["argv"], stdin)
        if first != second:
            failures.append(("nondeterministic", case["name"]))
        if first[0] != case["exit"] or first[1] != (GOLDEN_DIR / f"{case['name']}.out").read_text():
            failures.append(("golden", case["name"]))
    commands = {c["argv"][0] for c in cases}
    if commands != {"reduce", "cf", "equiv", "functor", "bratteli", "pipeline"}:
        failures.append(("coverage", sorted(commands)))
    failures.extend(_module_examples())
    report(capsys, 9, f"{len(cases)} golden CLI cases byte-identical across runs; module examples reproduced", failures)


def _call(argv, payload):
    code, out, _ = run(argv, json.dumps(payload))
    return code, json.loads(out) if out.lstrip().startswith("{") else out


def _module_examples() -> list:
    bad = []
    checks = [
        (["equiv"], {"u": "sqrt(2)", "v": "1+sqrt(2)"}, lambda r: r["verdict"]["kind"] == "sl_equivalent" and r["verdict"]["witness"] == {"a": 1, "b": 1, "c": 0, "d": 1}),
        (["equiv"], {"u": "(1+sqrt(5))/2", "v": "sqrt(5)"}, lambda r: r["verdict"]["kind"] == "not_equivalent"),
        (["bratteli"], {"theta": "3/5"}, lambda r: r["error"]["code"] == "theta_rational"),
        (["reduce"], {"tau": "5+i"}, lambda r: r["tau_reduced"] == {"x": "0", "y": "1", "im_radicand": 1} and r["witness"] == {"a": 1, "b": 0, "c": -5, "d": 1}),
        (["cf"], {"u": "(1+sqrt(5))/2"}, lambda r: r["cf"] == {"preperiod": [1], "period": [1]}),
        (["cf"], {"u": "sqrt(7)"}, lambda r: r["cf"] == {"preperiod": [2], "period": [1, 1, 1, 4]}),
        (["cf"], {"u": "10/7"}, lambda r: r["cf"] == {"preperiod": [1, 2, 3], "period": []}),
        (["functor"], {"lambda1": "2", "lambda2": "2*sqrt(2)"}, lambda r: r["theta"] == {"x": "0", "y": "1", "d": 2}),
        (["bratteli", "--levels", "5"], {"theta": "(1+sqrt(5))/2"}, lambda r: [(lv["dimensions"]["upper"], lv["dimensions"]["lower"]) for lv in r["levels"]] == [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]),
        (["pipeline", "--levels", "4"], {"lattice": {"omega1": "1", "omega2": "2i"}, "pseudo_lattice": {"lambda1": "1", "lambda2": "sqrt(2)"}}, lambda r: r["cf"] == {"preperiod": [1], "period": [2]}),
    ]
    for argv, payload, ok in checks:
        code, result = _call(argv, payload)
        try:
            good = ok(result)
        except (KeyError, TypeError):
            good = False
        if not good:
            bad.append(("example", argv, payload, code))
    return bad


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
