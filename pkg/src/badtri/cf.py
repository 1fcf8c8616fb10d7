"""Continued fractions over exact arithmetic.

Finite words carry terminated semantics ``[a_1, ..., a_n, inf]`` and encode
rationals in (0, 1]; eventually periodic words encode quadratic irrationals.
Rational values are `fractions.Fraction`, quadratic values are `QuadRat`,
so every operation in this module is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .quadfield import QuadRat

__all__ = [
    "FiniteCF",
    "PeriodicCF",
    "Cylinder",
    "convergents",
    "cylinder_interval",
    "expand_quadratic",
    "gauss_map",
    "one_minus",
    "cf_compare",
    "bad_class",
    "in_bad_class",
    "expand_real",
    "ExpandResult",
    "parse_cf",
    "format_cf",
]

_EVAL_RADICANDS = (2, 3, 5)


def _check_digits(digits):
    for a in digits:
        if not isinstance(a, int) or a < 1:
            raise ValueError(f"continued-fraction digits must be integers >= 1, got {a!r}")


@dataclass(frozen=True)
class FiniteCF:
    """A finite word [a_1, ..., a_n, inf] denoting a rational in (0, 1]."""

    digits: tuple

    def __init__(self, digits):
        digits = tuple(digits)
        if not digits:
            raise ValueError("empty continued fraction")
        _check_digits(digits)
        object.__setattr__(self, "digits", digits)

    def canonical(self):
        """Merge a trailing 1 so that structural equality matches value equality.

        Every rational in (0, 1) has exactly two finite expansions,
        [..., a] and [..., a-1, 1]; the canonical one does not end in 1
        (the single word [1] is its own canonical form).
        """
        d = list(self.digits)
        if len(d) > 1 and d[-1] == 1:
            d.pop()
            d[-1] += 1
        return FiniteCF(d)

    def value(self):
        p1, q1, p, q = convergents(self.digits)
        return Fraction(p, q)

    def __str__(self):
        return format_cf(self)


@dataclass(frozen=True)
class PeriodicCF:
    """An eventually periodic word: preperiod digits followed by a repeating block."""

    pre: tuple
    period: tuple

    def __init__(self, pre, period):
        pre = tuple(pre)
        period = tuple(period)
        if not period:
            raise ValueError("period must be nonempty")
        _check_digits(pre)
        _check_digits(period)
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "period", period)

    def canonical(self):
        """Primitive period, then shortest preperiod.

        A trailing preperiod digit equal to the period's last digit can be
        absorbed by rotating the period, e.g. [3,2,per(2)] = [3,per(2)] and
        [1,per(2,1)] = [per(1,2)].
        """
        period = list(self.period)
        for p in range(1, len(period) + 1):
            if len(period) % p == 0 and period == period[:p] * (len(period) // p):
                period = period[:p]
                break
        pre = list(self.pre)
        while pre and pre[-1] == period[-1]:
            pre.pop()
            period = [period[-1]] + period[:-1]
        return PeriodicCF(pre, period)

    def value(self):
        """Exact value: fixed point of the period, pushed through the preperiod.

        The purely periodic tail y satisfies a quadratic with integer
        coefficients read off the period's convergents; the root in (0, 1)
        is the positive one.
        """
        p1, q1, p, q = convergents(self.period)
        # q1*y^2 + (q - p1)*y - p = 0
        disc = (q - p1) * (q - p1) + 4 * q1 * p
        root = math.isqrt(disc)
        if root * root == disc:
            raise ValueError("period is degenerate (rational fixed point)")
        for d in _EVAL_RADICANDS:
            if disc % d == 0:
                m = math.isqrt(disc // d)
                if m * m * d == disc:
                    y = QuadRat(p1 - q, m, 2 * q1, d)
                    break
        else:
            raise ValueError(f"discriminant {disc} is not d*square for d in {_EVAL_RADICANDS}")
        for b in reversed(self.pre):
            y = (b + y).inverse()
        return y

    def digit(self, k):
        """1-indexed digit a_k."""
        if k < 1:
            raise IndexError("digits are 1-indexed")
        if k <= len(self.pre):
            return self.pre[k - 1]
        return self.period[(k - len(self.pre) - 1) % len(self.period)]

    def digits_prefix(self, n):
        return tuple(self.digit(k) for k in range(1, n + 1))

    def __str__(self):
        return format_cf(self)


def convergents(word):
    """(P_{n-1}, Q_{n-1}, P_n, Q_n) for a digit word, from the standard recurrence."""
    p1, p = 1, 0
    q1, q = 0, 1
    for b in word:
        p1, p = p, b * p + p1
        q1, q = q, b * q + q1
    return p1, q1, p, q


class Cylinder:
    """The interval of values whose expansion starts with a given word.

    One endpoint is P_n/Q_n (the word's own value), the other the mediant
    (P_n+P_{n-1})/(Q_n+Q_{n-1}); which one is closed alternates with the
    word length, e.g. I(3) = [1/4, 1/3) and I(2,1) = (1/3, 2/5].
    """

    __slots__ = ("word", "p1", "q1", "p", "q")

    def __init__(self, word):
        word = tuple(word)
        if not word:
            raise ValueError("empty cylinder word")
        _check_digits(word)
        self.word = word
        self.p1, self.q1, self.p, self.q = convergents(word)
        assert self.p * self.q1 - self.p1 * self.q == (-1) ** (len(word) + 1)

    @property
    def lo(self):
        return min(self._value(), self._mediant())

    @property
    def hi(self):
        return max(self._value(), self._mediant())

    @property
    def closed_end(self):
        """'lo' or 'hi': the closed endpoint is always the mediant."""
        return "lo" if len(self.word) % 2 == 1 else "hi"

    def _value(self):
        return Fraction(self.p, self.q)

    def _mediant(self):
        return Fraction(self.p + self.p1, self.q + self.q1)

    @property
    def width(self):
        return Fraction(1, self.q * (self.q + self.q1))

    def hull(self):
        """Closed hull (lo, hi) — what downstream containment checks use."""
        return self.lo, self.hi

    def __contains__(self, x):
        lo, hi = self.lo, self.hi
        if self.closed_end == "lo":
            return lo <= x < hi
        return lo < x <= hi

    def __repr__(self):
        br = "[)" if self.closed_end == "lo" else "(]"
        return f"I{self.word} = {br[0]}{self.lo}, {self.hi}{br[1]}"


def cylinder_interval(word):
    return Cylinder(word)


def expand_quadratic(x, max_iter=10**6):
    """Expand a quadratic irrational in (0,1) by iterating the Gauss map exactly.

    The normalized state space is finite, so the orbit must cycle; we key
    on the exact state and cut the word there.  `max_iter` only guards
    against malformed inputs.
    """
    if not isinstance(x, QuadRat):
        raise TypeError("expand_quadratic needs a QuadRat; rationals have finite words")
    if x.b == 0:
        raise ValueError("input is rational; use the finite expansion")
    if x.sign() <= 0 or (x - 1).sign() >= 0:
        raise ValueError("input must lie in (0, 1)")
    seen = {}
    digits = []
    state = x
    for i in range(max_iter):
        if state in seen:
            start = seen[state]
            return PeriodicCF(digits[:start], digits[start:]).canonical()
        seen[state] = i
        inv = state.inverse()
        a = inv.floor()
        digits.append(a)
        state = inv - a
    raise RuntimeError(f"no period detected within {max_iter} iterations")


def gauss_map(x):
    """T(x) = 1/x - floor(1/x), exactly."""
    if isinstance(x, Fraction):
        if not 0 < x < 1:
            raise ValueError("input must lie in (0, 1)")
        inv = 1 / x
        return inv - math.floor(inv)
    if x.sign() <= 0 or (x - 1).sign() >= 0:
        raise ValueError("input must lie in (0, 1)")
    inv = x.inverse()
    return inv - inv.floor()


def _uncons(cf):
    """Split off the first digit: cf = [d, rest...]."""
    if isinstance(cf, FiniteCF):
        if len(cf.digits) == 1:
            return cf.digits[0], None
        return cf.digits[0], FiniteCF(cf.digits[1:])
    if cf.pre:
        return cf.pre[0], PeriodicCF(cf.pre[1:], cf.period)
    d = cf.period[0]
    return d, PeriodicCF((), cf.period[1:] + cf.period[:1])


def _cons(d, cf):
    if cf is None:
        return FiniteCF((d,))
    if isinstance(cf, FiniteCF):
        return FiniteCF((d,) + cf.digits)
    return PeriodicCF((d,) + cf.pre, cf.period)


def one_minus(cf):
    """Digit-level map realizing x -> 1-x.

    [a1, ...] with a1 >= 2 becomes [1, a1-1, ...]; [1, a2, ...] becomes
    [1+a2, ...].  Works for finite and periodic words alike and is an
    involution on canonical forms.
    """
    d1, rest = _uncons(cf)
    if d1 >= 2:
        out = _cons(1, _cons(d1 - 1, rest))
    else:
        if rest is None:
            raise ValueError("1 - [1,inf] = 0 is not in (0, 1)")
        d2, rest2 = _uncons(rest)
        out = _cons(d2 + 1, rest2)
    return out.canonical()


def cf_compare(x, y):
    """-1, 0, +1 ordering two periodic words by the alternating digit rule.

    At the first disagreeing position n, x < y iff (-1)^n a_n < (-1)^n b_n.
    If no disagreement occurs within the joint cycle bound the values are equal.
    """
    bound = (
        max(len(x.pre), len(y.pre))
        + math.lcm(len(x.period), len(y.period))
        + 1
    )
    for n in range(1, bound + 1):
        a, b = x.digit(n), y.digit(n)
        if a != b:
            s = 1 if a > b else -1
            return -s if n % 2 == 1 else s
    return 0


def bad_class(cf):
    """Smallest (B, j) with cf in B_{B,j}: digits <= B+1 up to position j, <= B after.

    The period pins B from below; preperiod digits may exceed B by one, and
    j is the last position where that allowance is used (0 if never).
    """
    cf = cf.canonical()
    b = max(cf.period)
    if cf.pre:
        b = max(b, max(cf.pre) - 1)
    j = 0
    for k, d in enumerate(cf.pre, start=1):
        if d > b:
            j = k
    return b, j


def in_bad_class(cf, b, j=0):
    """Membership test for B_{B,j} (j=0 gives plain B_B)."""
    if max(cf.period) > b:
        return False
    for k, d in enumerate(cf.pre, start=1):
        if d > (b + 1 if k <= j else b):
            return False
    return True


@dataclass(frozen=True)
class ExpandResult:
    digits: tuple
    certified: int
    terminated: bool


def expand_real(value, err=None, terms=64):
    """Certified CF digits of a real given with an explicit error bound.

    `value` is a decimal string or Fraction; `err` a Fraction (defaults to
    one ulp of the decimal string).  Digits are emitted only while both
    endpoints of [value-err, value+err] agree on floor(1/x).  When the
    interval instead brackets a rational boundary 1/n, that digit is
    emitted once and the result is flagged `terminated`: the expansion is
    exact iff the input was exactly that rational.
    """
    if isinstance(value, str):
        v = Fraction(value)
        if err is None:
            frac_part = value.split(".")[1] if "." in value else ""
            err = Fraction(1, 10 ** len(frac_part))
    else:
        v = Fraction(value)
        if err is None:
            raise ValueError("an explicit error bound is required for non-string input")
    lo, hi = v - err, v + err
    if lo <= 0 or hi >= 1:
        raise ValueError("value with its error bound must lie inside (0, 1)")
    digits = []
    terminated = False
    while len(digits) < terms:
        if lo <= 0:
            terminated = True
            break
        f_hi = (1 / hi).__floor__()
        f_lo = (1 / lo).__floor__()
        if f_hi == f_lo:
            a = f_hi
            digits.append(a)
            lo, hi = 1 / hi - a, 1 / lo - a
        elif f_lo == f_hi + 1 and lo <= Fraction(1, f_lo) <= hi:
            digits.append(f_lo)
            terminated = True
            break
        else:
            break
    if not digits:
        raise ValueError("precision exhausted before any digit was certified")
    return ExpandResult(tuple(digits), len(digits), terminated)


def parse_cf(text):
    """Parse the word syntax: `[3,(2)^4,1,per(1,2)]` or `[2,3,inf]`.

    `(w)^k` repeats a block, `per(...)` marks the periodic tail (must be
    last), `inf` terminates a rational word.
    """
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"expected a bracketed word, got {text!r}")
    body = s[1:-1]
    tokens = []
    depth = 0
    cur = ""
    for ch in body:
        if ch == "," and depth == 0:
            tokens.append(cur.strip())
            cur = ""
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        cur += ch
    if cur.strip():
        tokens.append(cur.strip())
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")

    digits = []
    period = None
    finite = False
    for i, tok in enumerate(tokens):
        last = i == len(tokens) - 1
        if tok == "inf":
            if not last:
                raise ValueError("inf must be the final token")
            finite = True
        elif tok.startswith("per(") and tok.endswith(")"):
            if not last:
                raise ValueError("per(...) must be the final token")
            period = [int(t) for t in tok[4:-1].split(",")]
        elif tok.startswith("("):
            inner, _, exp = tok.partition("^")
            if not (inner.startswith("(") and inner.endswith(")")) or not exp:
                raise ValueError(f"bad repetition token {tok!r}")
            block = [int(t) for t in inner[1:-1].split(",")]
            digits.extend(block * int(exp))
        else:
            digits.append(int(tok))
    if period is not None:
        return PeriodicCF(digits, period).canonical()
    if finite:
        return FiniteCF(digits).canonical()
    raise ValueError("word must end with per(...) or inf")


def format_cf(cf):
    """Inverse of parse_cf, emitted without repetition shorthand."""
    if isinstance(cf, FiniteCF):
        return "[" + ",".join(map(str, cf.digits + ("inf",))) + "]"
    items = list(map(str, cf.pre))
    items.append("per(" + ",".join(map(str, cf.period)) + ")")
    return "[" + ",".join(items) + "]"
