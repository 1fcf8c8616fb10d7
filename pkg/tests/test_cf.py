"""Tests for the continued-fraction core."""

import random
from fractions import Fraction
from math import isqrt

import pytest

from badtri.cf import (
    Cylinder,
    ExpandResult,
    FiniteCF,
    PeriodicCF,
    bad_class,
    cf_compare,
    convergents,
    cylinder_interval,
    expand_quadratic,
    expand_real,
    format_cf,
    gauss_map,
    in_bad_class,
    one_minus,
    parse_cf,
)
from badtri.quadfield import QuadRat, sqrt2, sqrt3


def rand_periodic(rng, max_pre=3, max_per=4, hi=3):
    """Random word; value may land outside Q(sqrt 2/3/5), so callers skip those."""
    pre = [rng.randint(1, hi) for _ in range(rng.randint(0, max_pre))]
    per = [rng.randint(1, hi) for _ in range(rng.randint(1, max_per))]
    return PeriodicCF(pre, per)


def rand_valued(rng, n, **kw):
    out = []
    while len(out) < n:
        w = rand_periodic(rng, **kw)
        try:
            v = w.value()
        except ValueError:
            continue
        out.append((w.canonical(), v))
    return out


# ---------------------------------------------------------------- evaluation


def test_eval_finite_examples():
    assert FiniteCF([3]).value() == Fraction(1, 3)
    assert FiniteCF([2, 3]).value() == Fraction(3, 7)
    assert FiniteCF([2, 3, 1]).value() == Fraction(4, 9)
    assert FiniteCF([1]).value() == 1


def test_finite_canonical():
    assert FiniteCF([2, 3, 1]).canonical().digits == (2, 4)
    assert FiniteCF([2, 3, 1]).canonical().value() == Fraction(4, 9)
    assert FiniteCF([1]).canonical().digits == (1,)
    assert FiniteCF([1, 1]).canonical().digits == (2,)


def test_eval_periodic_pinned():
    s2, s3 = sqrt2(), sqrt3()
    assert PeriodicCF([], [2]).value() == s2 - 1
    assert PeriodicCF([], [2, 1]).value() == (s3 - 1) / 2
    assert PeriodicCF([3], [1, 2]).value() == 2 - s3
    assert PeriodicCF([3], [2]).value() == (2 - s2) / 2
    assert PeriodicCF([], [1, 2]).value() == s3 - 1
    assert PeriodicCF([1], [2]).value() == s2 / 2


def test_periodic_canonicalization():
    # absorb preperiod digits into a rotated period
    assert PeriodicCF([3, 2], [2]).canonical() == PeriodicCF([3], [2])
    assert PeriodicCF([1, 1, 1], [2, 1]).canonical() == PeriodicCF([1, 1], [1, 2])
    # primitive period
    assert PeriodicCF([], [2, 1, 2, 1]).canonical() == PeriodicCF([], [2, 1])
    # canonicalization preserves value
    rng = random.Random(5)
    for w, v in rand_valued(rng, 60):
        assert w.value() == v


def test_eval_periodic_radicand_error():
    # [per(1,1,2)] has discriminant with squarefree part 85
    with pytest.raises(ValueError):
        PeriodicCF([], [1, 1, 2]).value()


# ------------------------------------------------------------- expand, gauss


def test_expand_pinned():
    assert expand_quadratic(2 - sqrt3()) == PeriodicCF([3], [1, 2])
    assert expand_quadratic((2 - sqrt2()) / 2) == PeriodicCF([3], [2])


def test_expand_roundtrip_random():
    rng = random.Random(42)
    for w, v in rand_valued(rng, 100):
        assert expand_quadratic(v) == w
        assert expand_quadratic(v).value() == v


def test_expand_rejects_rational():
    with pytest.raises(ValueError):
        expand_quadratic(QuadRat(Fraction(1, 3)))
    with pytest.raises(ValueError):
        expand_quadratic(sqrt2())  # not in (0,1)


def test_gauss_map_shift():
    assert gauss_map(sqrt2() - 1) == sqrt2() - 1
    assert gauss_map(2 - sqrt3()) == sqrt3() - 1
    assert gauss_map((sqrt3() - 1) / 2) == sqrt3() - 1
    assert gauss_map(Fraction(3, 7)) == Fraction(1, 3)
    rng = random.Random(9)
    for w, v in rand_valued(rng, 60):
        tail = expand_quadratic(gauss_map(v))
        d, rest = (
            (w.pre[0], PeriodicCF(w.pre[1:], w.period))
            if w.pre
            else (w.period[0], PeriodicCF((), w.period[1:] + w.period[:1]))
        )
        assert tail == rest.canonical()


# ------------------------------------------------------------------ 1 ancora


def test_one_minus_pinned():
    assert one_minus(PeriodicCF([], [2])) == PeriodicCF([1, 1], [2])
    assert one_minus(PeriodicCF([], [2, 1])).value() == (3 - sqrt3()) / 2
    assert one_minus(PeriodicCF([], [2, 1])) == PeriodicCF([1, 1, 1], [2, 1]).canonical()


def test_one_minus_value_law_and_involution():
    rng = random.Random(1)
    seen = 0
    for w, v in rand_valued(rng, 80):
        if (1 - v).sign() <= 0:
            continue
        m = one_minus(w)
        assert m.value() == 1 - v
        assert one_minus(m) == w
        seen += 1
    assert seen >= 60
    # finite words too
    for _ in range(200):
        digits = [rng.randint(1, 5) for _ in range(rng.randint(1, 6))]
        f = FiniteCF(digits).canonical()
        if f.value() == 1:
            continue
        m = one_minus(f)
        assert m.value() == 1 - f.value()
        assert one_minus(m) == f


# ------------------------------------------------------------------ cylinders


def test_cylinder_pinned():
    c = cylinder_interval([3])
    assert (c.lo, c.hi) == (Fraction(1, 4), Fraction(1, 3))
    assert c.closed_end == "lo"
    c = cylinder_interval([1])
    assert (c.lo, c.hi) == (Fraction(1, 2), Fraction(1, 1))
    assert c.closed_end == "lo"
    c = cylinder_interval([2, 1])
    assert (c.lo, c.hi) == (Fraction(1, 3), Fraction(2, 5))
    assert c.closed_end == "hi"


def test_cylinder_width_nesting_determinant():
    rng = random.Random(4)
    for _ in range(200):
        word = [rng.randint(1, 4) for _ in range(rng.randint(1, 8))]
        c = Cylinder(word)  # constructor asserts the determinant invariant
        assert c.width == c.hi - c.lo
        assert c.width == Fraction(1, c.q * (c.q + c.q1))
        for b in (1, 2, 3):
            child = Cylinder(word + [b])
            assert c.lo <= child.lo and child.hi <= c.hi
        # the word's own value lies in the cylinder
        assert c.lo <= FiniteCF(word).value() <= c.hi


def test_cylinder_contains_expansion_prefix():
    rng = random.Random(8)
    for w, v in rand_valued(rng, 40):
        word = w.digits_prefix(5)
        c = Cylinder(word)
        assert (v - c.lo).sign() >= 0 and (c.hi - v).sign() >= 0


# ----------------------------------------------------------------- compare


def test_compare_b2_extremes():
    lo = PeriodicCF([], [2, 1])  # min of the digit-{1,2} numbers
    hi = PeriodicCF([], [1, 2])  # max
    assert cf_compare(lo, hi) == -1
    assert cf_compare(hi, lo) == 1
    rng = random.Random(6)
    for _ in range(1000):
        w = PeriodicCF(
            [rng.randint(1, 2) for _ in range(rng.randint(0, 4))],
            [rng.randint(1, 2) for _ in range(rng.randint(1, 4))],
        ).canonical()
        assert cf_compare(lo, w) <= 0
        assert cf_compare(w, hi) <= 0


def test_compare_matches_values():
    rng = random.Random(13)
    words = rand_valued(rng, 40)
    for wx, vx in words:
        for wy, vy in words:
            try:
                s = (vx - vy).sign()
            except ValueError:
                continue  # mixed radicands: incomparable exactly, skip
            assert cf_compare(wx, wy) == s


# ----------------------------------------------------------------- bad class


def test_bad_class_pinned():
    assert bad_class(PeriodicCF([], [2])) == (2, 0)
    assert bad_class(PeriodicCF([3], [2])) == (2, 1)
    assert bad_class(PeriodicCF([3, 3], [1, 2])) == (2, 2)


def test_bad_class_minimal_and_monotone():
    rng = random.Random(21)
    for _ in range(300):
        w = rand_periodic(rng, max_pre=4, hi=5)
        b, j = bad_class(w)
        assert in_bad_class(w.canonical(), b, j)
        if j > 0:
            assert not in_bad_class(w.canonical(), b, j - 1)
        assert not in_bad_class(w.canonical(), b - 1, j) or b == 1
        # membership is monotone in j
        assert in_bad_class(w.canonical(), b, j + 1)


# --------------------------------------------------------------- expand_real


def test_expand_real_rational_boundary():
    r = expand_real("0." + "3" * 40, Fraction(1, 10**40))
    assert r == ExpandResult((3,), 1, True)


def test_expand_real_golden():
    golden = (QuadRat(0, 1, 1, 5) - 1) / 2
    r = expand_real(golden.to_decimal(50))
    assert set(r.digits) == {1}
    assert r.certified >= 40
    assert not r.terminated


def test_expand_real_sqrt2():
    r = expand_real((sqrt2() - 1).to_decimal(60))
    assert set(r.digits) == {2}
    assert r.certified >= 50


def test_expand_real_certified_prefix_correct():
    # unconditional digits must agree with the true expansion even for coarse
    # bounds; a terminated result's final digit is the bracketing boundary and
    # is only conditionally correct
    x = (sqrt3() - 1) / 2
    true = PeriodicCF([], [2, 1])
    for places in (8, 20, 45):
        r = expand_real(x.to_decimal(places))
        sure = r.digits[:-1] if r.terminated else r.digits
        assert len(sure) >= places // 2  # digits accrue with precision
        assert sure == true.digits_prefix(len(sure))
    with pytest.raises(ValueError):
        expand_real("0.5", Fraction(1, 4))  # too coarse for even one digit


# ------------------------------------------------------------- text syntax


def test_parse_format_roundtrip():
    w = parse_cf("[3,(2)^4,1,per(1,2)]")
    assert w == PeriodicCF([3, 2, 2, 2, 2, 1], [1, 2]).canonical()
    assert parse_cf("[2,3,inf]") == FiniteCF([2, 3])
    assert parse_cf("[ 2 , 3 , inf ]") == FiniteCF([2, 3])
    assert parse_cf(format_cf(w)) == w
    assert format_cf(FiniteCF([2, 3])) == "[2,3,inf]"
    assert format_cf(PeriodicCF([3], [2])) == "[3,per(2)]"
    rng = random.Random(2)
    for _ in range(100):
        w = rand_periodic(rng)
        assert parse_cf(format_cf(w)) == w.canonical()


def test_parse_errors():
    for bad in ("[2,3]", "2,3,inf", "[per(1),2]", "[inf,2]", "[(2)^,inf]", "[2,(1,per(2)]"):
        with pytest.raises(ValueError):
            parse_cf(bad)


def test_convergents_identity():
    p1, q1, p, q = convergents([2, 2, 1, 3])
    assert Fraction(p, q) == Fraction(11, 26)
    assert p * q1 - p1 * q in (-1, 1)
