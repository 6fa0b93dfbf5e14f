import random

import pytest

from clusterlab.algebra import (
    LaurentPolynomial as LP,
    NotDivisible,
    RankMismatch,
    SemifieldSpec,
    TropicalMonomial,
    chebyshev,
    specialize,
    tropical_eval,
)


def x(i, n=2):
    return LP.x_var(i, n)


def y(i, n=2):
    return LP.y_var(i, n)


def random_poly(rng, n=3, max_terms=50):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        key = tuple(rng.randint(-3, 3) for _ in range(n)) + tuple(
            rng.randint(0, 3) for _ in range(n)
        )
        terms[key] = terms.get(key, 0) + rng.randint(-5, 5)
    return LP(n, n, terms)


def test_add_identity():
    p = x(1) + 2 * x(2)
    assert p + LP.zero(2) == p


def test_add_cancellation():
    assert (x(1) + x(2)) + (x(1) - x(2)) == 2 * x(1)


def test_mul_identity_and_inverse():
    p = x(1) + x(2) ** 3
    assert p * LP.one(2) == p
    xinv = LP.monomial(2, 2, 1, (-1, 0))
    assert x(1) * xinv == LP.one(2)


def test_rank_mismatch_raises():
    with pytest.raises(RankMismatch):
        x(1, 2) + x(1, 3)
    with pytest.raises(RankMismatch):
        x(1, 2) * x(1, 3)


def test_ring_laws_random():
    rng = random.Random(7)
    for _ in range(40):
        p, q, r = (random_poly(rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r


def test_div_exact_by_one_and_binomial():
    p = x(1) ** 2 - x(2) ** 2 + 3 * x(1)
    assert p.div_exact(LP.one(2)) == p
    q = (x(1) ** 2 - x(2) ** 2).div_exact(x(1) - x(2))
    assert q == x(1) + x(2)


def test_div_exact_roundtrip_random():
    rng = random.Random(11)
    for _ in range(30):
        p, q = random_poly(rng), random_poly(rng)
        if q.is_zero():
            continue
        assert (p * q).div_exact(q) == p


def test_div_exact_failure():
    with pytest.raises(NotDivisible):
        (x(1) + x(2)).div_exact(x(1) - x(2))
    with pytest.raises(NotDivisible):
        (2 * x(1) + x(2)).div_exact(LP.const(2, 2, 2))
    with pytest.raises(ZeroDivisionError):
        x(1).div_exact(LP.zero(2))


def test_f_polynomial():
    assert x(1).f_polynomial() == LP.one(2)
    p = x(1) * y(1) + x(2) * y(1) + x(1) * x(2)
    f = p.f_polynomial()
    assert f == 2 * y(1) + LP.one(2)


def test_tropical_eval_identity_assignment():
    spec = SemifieldSpec.tropical_identity(2)
    f = LP.one(2) + y(1) + y(1) * y(2)
    assert tropical_eval(f, spec) == TropicalMonomial((0, 0))
    g = y(1) + y(2)
    assert tropical_eval(g, spec) == TropicalMonomial((0, 0))


def test_tropical_eval_trivial_and_errors():
    assert tropical_eval(y(1), SemifieldSpec.trivial()) == TropicalMonomial(())
    with pytest.raises(ValueError):
        tropical_eval(y(1) - y(2), SemifieldSpec.tropical_identity(2))
    with pytest.raises(ValueError):
        tropical_eval(x(1), SemifieldSpec.tropical_identity(2))


def test_tropical_eval_general_assignment():
    # y1 -> u1 u2^-1, y2 -> u2: min over {(1,-1)+(0,1), (0,0)} etc.
    spec = SemifieldSpec.tropical(2, [(1, -1), (0, 1)])
    f = y(1) * y(2) + LP.one(2)
    assert tropical_eval(f, spec) == TropicalMonomial((0, 0))
    f2 = y(1) + y(2)
    assert tropical_eval(f2, spec) == TropicalMonomial((0, -1))


def test_specialize_initial_variable():
    for spec in (SemifieldSpec.trivial(), SemifieldSpec.tropical_identity(2), SemifieldSpec.principal()):
        p = x(1)
        s = specialize(p, spec)
        if spec.kind == "trivial":
            assert s == LP.monomial(2, 0, 1, (1, 0))
        else:
            assert s.terms == p.terms


def test_specialize_trivial_sets_y_to_one():
    p = x(1) * y(1) + x(2)  # F-polynomial 1 + y1, constant term 1
    s = specialize(p, SemifieldSpec.trivial())
    assert s == LP.monomial(2, 0, 1, (1, 0)) + LP.monomial(2, 0, 1, (0, 1))


def test_specialize_tropical_divides_f_polynomial():
    # principal expansion with F = 1 + y1: specializing at y1 -> u1^-1 makes
    # the tropical F equal u1^-1, which must be divided back out.
    p = x(1) * y(1) + x(2)
    spec = SemifieldSpec.tropical(1, [(-1,), (0,)])
    s = specialize(p, spec)
    # x1 y1 -> x1 u1^-1; divide by u1^-1: x1 + x2 u1
    assert s == LP.monomial(2, 1, 1, (1, 0), ()) + LP.monomial(2, 1, 1, (0, 1), (1,))


def test_chebyshev_base_cases():
    n = 2
    L = x(1) + x(2)
    assert chebyshev(1, L) == L
    assert chebyshev(2, L) == L * L - LP.const(n, n, 2)
    assert chebyshev(3, L) == L ** 3 - 3 * L
    with pytest.raises(ValueError):
        chebyshev(0, L)


def test_serialize_roundtrip_text():
    rng = random.Random(3)
    for _ in range(25):
        p = random_poly(rng)
        assert LP.parse(p.serialize(), p.nx, p.ny) == p
    assert LP.zero(2).serialize() == "0"
    assert LP.parse("0", 2) == LP.zero(2)


def test_serialize_canonical_form():
    p = 3 * x(1) ** 2 * LP.monomial(2, 2, 1, (0, -1)) - x(2) + LP.one(2)
    assert p.serialize() == "3*x1^2*x2^-1 - x2 + 1"


def test_serialize_roundtrip_json():
    rng = random.Random(5)
    for _ in range(25):
        p = random_poly(rng)
        assert LP.from_json(p.to_json()) == p


def test_hash_consistency():
    p = x(1) + x(2)
    q = x(2) + x(1)
    assert p == q and hash(p) == hash(q)
