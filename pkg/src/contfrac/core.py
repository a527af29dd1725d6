"""Exact continued-fraction arithmetic.

A continued fraction is a leading rational plus a lazily generated stream of
partial terms, written here as

    leading + b1/(a1 + b2/(a2 + b3/(a3 + ...)))

with b_k the partial numerators and a_k the partial denominators.  Terms are
exact ``fractions.Fraction`` values; nothing is rounded until ``eval_float``
is asked for a floating-point enclosure.

Convergents p_k/q_k follow the usual three-term recurrences

    p_k = a_k p_{k-1} + b_k p_{k-2},    q_k = a_k q_{k-1} + b_k q_{k-2}

seeded with p_{-1} = 1, q_{-1} = 0, p_0 = leading, q_0 = 1, so consecutive
convergents differ by (-1)^{k+1} (prod b_i) / (q_{k-1} q_k).  For fractions
whose entries are all positive, consecutive convergents bracket the limit;
``eval_float`` exploits that for rigorous stopping.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple, Union

Rational = Union[int, str, float, Fraction]


class ContinuedFractionError(Exception):
    """Base class for continued-fraction evaluation errors."""


class ZeroDenominatorError(ContinuedFractionError):
    """A generated partial denominator was zero."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"partial denominator at index {index} is zero")


class ZeroContinuantError(ContinuedFractionError):
    """A denominator continuant q_k vanished where a defined value was required."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"denominator continuant q_{index} is zero")


class ContractionError(ContinuedFractionError):
    """Even contraction is undefined at the reported depth."""

    def __init__(self, depth: int):
        self.depth = depth
        super().__init__(f"even contraction undefined at depth {depth}")


def as_fraction(value: Rational) -> Fraction:
    """Coerce ints, 'p/q' strings, floats (exactly) and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


Exact = Union[int, Fraction]


def _as_exact(value: Rational) -> Exact:
    # ints are exact rationals too; keeping them raw makes integer-parameter
    # term streams several times faster than all-Fraction streams.
    if isinstance(value, (int, Fraction)):
        return value
    return Fraction(value)


class PartialTerm(NamedTuple):
    numerator: Exact
    denominator: Exact


def term(numerator: Rational, denominator: Rational) -> PartialTerm:
    return PartialTerm(_as_exact(numerator), _as_exact(denominator))


TermRule = Callable[[int], Optional[Tuple[Rational, Rational]]]


@dataclass(frozen=True)
class ContinuedFraction:
    """Leading rational plus a deterministic stream of partial terms.

    ``factory`` must return a fresh, equivalent iterator on every call, so
    requesting the first k terms twice always yields identical values.
    """

    leading: Fraction
    factory: Callable[[], Iterator[PartialTerm]]

    def terms(self) -> Iterator[PartialTerm]:
        """Iterate partial terms, rejecting zero partial denominators."""
        for index, t in enumerate(self.factory(), start=1):
            if t.denominator == 0:
                raise ZeroDenominatorError(index)
            yield t

    def take(self, k: int) -> list[PartialTerm]:
        return list(itertools.islice(self.terms(), k))

    def truncated(self, depth: int) -> "ContinuedFraction":
        """Same leading term, at most ``depth`` partial terms."""
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        base = self.factory
        return ContinuedFraction(self.leading, lambda: itertools.islice(base(), depth))

    @staticmethod
    def from_rule(leading: Rational, rule: TermRule) -> "ContinuedFraction":
        """Build from a 1-based rule; ``rule(k)`` returns (b_k, a_k) or None to stop."""

        def factory() -> Iterator[PartialTerm]:
            k = 1
            while True:
                pair = rule(k)
                if pair is None:
                    return
                yield term(pair[0], pair[1])
                k += 1

        return ContinuedFraction(as_fraction(leading), factory)

    @staticmethod
    def from_pairs(leading: Rational, pairs: Iterable[Tuple[Rational, Rational]]) -> "ContinuedFraction":
        fixed = tuple(term(b, a) for b, a in pairs)
        return ContinuedFraction(as_fraction(leading), lambda: iter(fixed))


@dataclass(frozen=True)
class Convergent:
    """Exact convergent p/q at a given index; q may be zero (undefined value)."""

    index: int
    p: Fraction
    q: Fraction

    @property
    def defined(self) -> bool:
        return self.q != 0

    @property
    def value(self) -> Fraction:
        if self.q == 0:
            raise ZeroContinuantError(self.index)
        return self.p / self.q


def convergent_iter(cf: ContinuedFraction) -> Iterator[Convergent]:
    """Yield exact convergents for indices 1, 2, 3, ...

    Undefined convergents (q_k = 0) are yielded with q = 0 so callers can skip
    them; the recurrence itself continues unharmed.
    """
    p_prev, q_prev = Fraction(1), Fraction(0)
    p, q = cf.leading, Fraction(1)
    for k, t in enumerate(cf.terms(), start=1):
        p, p_prev = t.denominator * p + t.numerator * p_prev, p
        q, q_prev = t.denominator * q + t.numerator * q_prev, q
        yield Convergent(k, p, q)


def convergent_sequence(cf: ContinuedFraction, k: int) -> list[Convergent]:
    """First ``k`` exact convergents (fewer if the fraction is finite)."""
    if k < 1:
        raise ValueError("k must be positive")
    return list(itertools.islice(convergent_iter(cf), k))


def euler_series_expansion(cf: ContinuedFraction, k: int) -> list[Fraction]:
    """Expand into the equivalent alternating series.

    Returns the first ``k`` series terms t_j = (-1)^{j+1} (prod_{i<=j} b_i) /
    (q_{j-1} q_j); the leading term of the fraction is not included.  Partial
    sums of ``leading + t_1 + ... + t_j`` equal the convergents exactly.

    Raises ``ZeroContinuantError`` if some q_j vanishes before ``k`` terms are
    produced (the expansion stops at that point; terms already produced are
    attached to the exception).
    """
    if k < 1:
        raise ValueError("k must be positive")
    out: list[Fraction] = []
    q_prev, q = Fraction(0), Fraction(1)  # q_{-1}, q_0
    prod = Fraction(1)
    sign = 1
    for j, t in enumerate(cf.terms(), start=1):
        if j > k:
            break
        q_next = t.denominator * q + t.numerator * q_prev
        prod *= t.numerator
        if q_next == 0:
            err = ZeroContinuantError(j)
            err.partial = out  # type: ignore[attr-defined]
            raise err
        out.append(sign * prod / (q * q_next))
        sign = -sign
        q_prev, q = q, q_next
    return out


def even_contraction(cf: ContinuedFraction) -> ContinuedFraction:
    """Fraction whose k-th convergent equals the 2k-th convergent of ``cf``.

    Derived from the convergent recurrence by eliminating the odd-indexed
    continuants:

        x_{2k+2} = (a_{2k+2} a_{2k+1} + a_{2k+2} b_{2k+1}/a_{2k} + b_{2k+2}) x_{2k}
                   - (a_{2k+2} b_{2k+1} b_{2k} / a_{2k}) x_{2k-2}

    The equality is exact (rational identity).  A finite fraction of odd
    length gets one closing term so the contracted value matches the original
    final convergent.
    """

    def factory() -> Iterator[PartialTerm]:
        it = cf.terms()
        t1 = next(it, None)
        if t1 is None:
            return
        t2 = next(it, None)
        if t2 is None:
            yield t1  # single term: v_1 is the final value, keep it
            return
        first_den = t1.denominator * t2.denominator + t2.numerator
        if first_den == 0:
            raise ContractionError(1)
        yield PartialTerm(t1.numerator * t2.denominator, first_den)
        b_even, a_even = as_fraction(t2.numerator), as_fraction(t2.denominator)
        depth = 2
        while True:
            t_odd = next(it, None)  # original index 2k+1
            if t_odd is None:
                return
            t_next = next(it, None)  # original index 2k+2
            if t_next is None:
                # odd tail: close so the last contracted convergent is v_{2k+1}
                yield PartialTerm(-(t_odd.numerator * b_even) / a_even,
                                  t_odd.denominator + t_odd.numerator / a_even)
                return
            den = (t_next.denominator * t_odd.denominator
                   + t_next.denominator * t_odd.numerator / a_even
                   + t_next.numerator)
            if den == 0:
                raise ContractionError(depth)
            yield PartialTerm(-(t_next.denominator * t_odd.numerator * b_even) / a_even,
                              den)
            b_even, a_even = as_fraction(t_next.numerator), as_fraction(t_next.denominator)
            depth += 1

    return ContinuedFraction(cf.leading, factory)


class PositivityClass(str, Enum):
    GUARANTEED_CONVERGENT = "guaranteed-convergent"
    NOT_GUARANTEED = "not-guaranteed"


def positivity_class(cf: ContinuedFraction, k: int) -> PositivityClass:
    """Guaranteed convergent iff the first k partial terms are all positive."""
    for t in cf.take(k):
        if t.numerator <= 0 or t.denominator <= 0:
            return PositivityClass.NOT_GUARANTEED
    return PositivityClass.GUARANTEED_CONVERGENT


def equivalence_transform(cf: ContinuedFraction, scales: Sequence[Rational]) -> ContinuedFraction:
    """Rescale partial terms without changing any convergent value.

    With c_0 = 1 and nonzero scales c_1, c_2, ...:  b'_k = c_{k-1} c_k b_k and
    a'_k = c_k a_k.  Scales beyond the given sequence default to 1.
    """
    factors = tuple(as_fraction(c) for c in scales)
    if any(c == 0 for c in factors):
        raise ValueError("equivalence scales must be nonzero")

    def factory() -> Iterator[PartialTerm]:
        prev = Fraction(1)
        for k, t in enumerate(cf.terms(), start=1):
            cur = factors[k - 1] if k <= len(factors) else Fraction(1)
            yield PartialTerm(prev * cur * t.numerator, cur * t.denominator)
            prev = cur

    return ContinuedFraction(cf.leading, factory)


class EvalStatus(str, Enum):
    CONVERGED = "converged"
    BUDGET_EXHAUSTED = "budget-exhausted"
    DIVERGENT = "divergent-flagged"
    TERMINATED_FINITE = "terminated-finite"


@dataclass(frozen=True)
class EvalReport:
    """Floating-point evaluation outcome; lower/upper form a rigorous bracket
    only when every partial term seen was positive."""

    value: float
    lower: Optional[float]
    upper: Optional[float]
    terms_used: int
    status: EvalStatus


# Continuants grow geometrically; rescale all four recurrence state variables
# by a power of two whenever they leave [2^-512, 2^512].
_RENORM_LIMIT = 2.0 ** 512
_RENORM_SCALE = 2.0 ** -512
_DIVERGENCE_WINDOW = 12


def eval_float(cf: ContinuedFraction, tol: float, max_terms: int) -> EvalReport:
    """Evaluate in floating point with renormalised forward recurrences.

    Stopping rules, in order of preference:

    * all partial terms positive so far: consecutive convergents bracket the
      limit; stop once the bracket width is <= tol and report lower/upper.
    * otherwise: stop when |v_k - v_{k-1}| <= tol on two successive defined
      steps; no bracket is reported.  If the successive differences are
      non-contracting over a trailing window the evaluation is flagged
      divergent.

    A zero partial numerator terminates the fraction exactly; exhausting the
    term stream reports the final convergent.  Undefined convergents
    (q_k = 0) are skipped and the recurrence continues.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_terms < 1:
        raise ValueError("max_terms must be positive")

    p_prev, q_prev = 1.0, 0.0
    p, q = float(cf.leading), 1.0
    positive = True
    v_prev: Optional[float] = None   # last defined convergent (v_0 = leading)
    v_last = p                       # ditto, kept even when v_prev is reset
    value = p                        # best estimate so far
    lower: Optional[float] = None
    upper: Optional[float] = None
    small_streak = 0
    diffs: deque[float] = deque(maxlen=_DIVERGENCE_WINDOW)

    it = cf.terms()
    k = 0
    while k < max_terms:
        t = next(it, None)
        if t is None:
            return EvalReport(v_last, None, None, k, EvalStatus.TERMINATED_FINITE)
        k += 1
        if t.numerator == 0:
            return EvalReport(v_last, None, None, k, EvalStatus.TERMINATED_FINITE)
        b = float(t.numerator)
        a = float(t.denominator)
        if positive and (b <= 0.0 or a <= 0.0):
            positive = False
            lower = upper = None
        p, p_prev = a * p + b * p_prev, p
        q, q_prev = a * q + b * q_prev, q
        mag = max(abs(p), abs(q), abs(p_prev), abs(q_prev))
        if mag > _RENORM_LIMIT:
            p *= _RENORM_SCALE
            q *= _RENORM_SCALE
            p_prev *= _RENORM_SCALE
            q_prev *= _RENORM_SCALE
        elif 0.0 < mag < _RENORM_SCALE:
            p *= _RENORM_LIMIT
            q *= _RENORM_LIMIT
            p_prev *= _RENORM_LIMIT
            q_prev *= _RENORM_LIMIT
        if q == 0.0:
            continue  # undefined convergent, skip
        v = p / q
        v_last = v
        if v_prev is not None:
            if positive:
                lo, hi = (v_prev, v) if v_prev <= v else (v, v_prev)
                lower, upper = lo, hi
                value = 0.5 * (lo + hi)
                if hi - lo <= tol:
                    return EvalReport(value, lo, hi, k, EvalStatus.CONVERGED)
            else:
                d = abs(v - v_prev)
                value = v
                if d <= tol:
                    small_streak += 1
                    diffs.clear()
                    if small_streak >= 2:
                        return EvalReport(v, None, None, k, EvalStatus.CONVERGED)
                else:
                    small_streak = 0
                    diffs.append(d)
                    if (len(diffs) == _DIVERGENCE_WINDOW
                            and k >= 2 * _DIVERGENCE_WINDOW
                            and all(diffs[i + 1] >= diffs[i] * (1.0 - 1e-12)
                                    for i in range(_DIVERGENCE_WINDOW - 1))):
                        return EvalReport(v, None, None, k, EvalStatus.DIVERGENT)
        else:
            value = v
        v_prev = v

    return EvalReport(value, lower, upper, k, EvalStatus.BUDGET_EXHAUSTED)
