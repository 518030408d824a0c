"""Prime fields, polynomial assignment and trial sequences."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import ParameterError


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    i = 3
    while i * i <= q:
        if q % i == 0:
            return False
        i += 2
    return True


def log_ceil(m: int, delta: int, d: int) -> int:
    """Exact ``ceil(log_{delta/(d+1)} m)``, at least 1.

    Smallest ``f`` with ``delta**f >= m * (d+1)**f``; integer arithmetic so
    exact powers do not round up.
    """
    if delta <= d + 1:
        raise ParameterError(f"log base delta/(d+1) = {delta}/{d + 1} must exceed 1")
    if m < 1:
        raise ParameterError("m must be positive")
    f = 1
    while delta**f < m * (d + 1) ** f:
        f += 1
    return f


def choose_prime(f: int, delta: int, d: int) -> int:
    """Smallest prime strictly above ``2*f*delta/(d+1)``; always below ``4*f*delta/(d+1)``."""
    if f < 1:
        raise ParameterError("f must be >= 1")
    if not 0 <= d <= delta - 1:
        raise ParameterError("need 0 <= d <= delta - 1")
    if delta <= d + 1:
        raise ParameterError("need delta/(d+1) > 1")
    lo = Fraction(2 * f * delta, d + 1)
    q = int(lo) + 1
    while not is_prime(q):
        q += 1
    # Bertrand: a prime lies strictly between x and 2x
    assert q < 2 * lo, f"no prime in ({lo}, {2 * lo})"
    return q


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ParameterError(f"{self.q} is not prime")


@dataclass(frozen=True)
class Polynomial:
    """Coefficients ``a_0..a_f`` over a prime field, lowest degree first."""

    coeffs: tuple[int, ...]
    field: PrimeField

    def __post_init__(self):
        q = self.field.q
        if not self.coeffs:
            raise ParameterError("polynomial needs at least one coefficient")
        if any(not 0 <= a < q for a in self.coeffs):
            raise ParameterError("coefficients must lie in [0, q)")

    def __call__(self, x: int) -> int:
        q = self.field.q
        acc = 0
        for a in reversed(self.coeffs):
            acc = (acc * x + a) % q
        return acc

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial is reported as 0."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return 0

    def values(self) -> np.ndarray:
        return _kernels.eval_sequences(np.asarray([self.coeffs], dtype=np.int64), self.field.q)[0]


def count_intersections(p1: Polynomial, p2: Polynomial) -> int:
    """Number of ``x`` in the field with ``p1(x) == p2(x)``."""
    if p1.field != p2.field:
        raise ParameterError("polynomials over different fields")
    if _trimmed(p1.coeffs) == _trimmed(p2.coeffs):
        raise ParameterError("polynomials must be distinct")
    return int(np.count_nonzero(p1.values() == p2.values()))


def _trimmed(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class SequenceFamily:
    """Parameters shared by all nodes: palette ``m``, degree bound, defect, batch size.

    ``f`` and ``q`` are derived; the trial sequence of input color ``i`` is
    ``(x mod k, p_i(x))`` for ``x = 0..q-1``. Color ``i`` gets the polynomial
    whose coefficients are the base-q digits of ``i``, or of ``i + q`` when
    ``skip_constants`` is set, which leaves out the ``q`` constant polynomials.
    """

    m: int
    delta: int
    d: int
    k: int
    skip_constants: bool = False
    f: int = field(init=False)
    q: int = field(init=False)

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError("batch size k must be >= 1")
        if not 0 <= self.d <= self.delta - 1:
            raise ParameterError("need 0 <= d <= delta - 1")
        f = log_ceil(self.m, self.delta, self.d)
        q = choose_prime(f, self.delta, self.d)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "q", q)
        if q ** (f + 1) < self.m + self.shift:
            raise ParameterError("not enough distinct polynomials for the palette")

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.q)

    @property
    def shift(self) -> int:
        return self.q if self.skip_constants else 0

    @property
    def batch_count(self) -> int:
        return -(-self.q // self.k)

    def coefficients(self, i: int) -> tuple[int, ...]:
        """Base-q digits of ``i`` (shifted if constants are skipped), ``a_0`` first."""
        if not 0 <= i < self.m:
            raise ParameterError(f"input color {i} outside [0, {self.m})")
        return digits(i + self.shift, self.q, self.f)

    def table(self, colors: Sequence[int]) -> np.ndarray:
        """Row ``r`` holds ``p_{colors[r]}(x)`` for ``x = 0..q-1``."""
        coeffs = np.asarray([self.coefficients(int(c)) for c in colors], dtype=np.int64)
        if coeffs.size == 0:
            return np.zeros((0, self.q), dtype=np.int64)
        return _kernels.eval_sequences(coeffs, self.q)


def digits(i: int, q: int, f: int) -> tuple[int, ...]:
    if i >= q ** (f + 1):
        raise ParameterError(f"color {i} exceeds capacity q^(f+1) = {q ** (f + 1)}")
    out = []
    for _ in range(f + 1):
        i, r = divmod(i, q)
        out.append(r)
    return tuple(out)


def assign_polynomial(fam: SequenceFamily, i: int) -> Polynomial:
    return Polynomial(fam.coefficients(i), fam.field)


def color_sequence(fam: SequenceFamily, i: int) -> list[tuple[int, int]]:
    p = assign_polynomial(fam, i)
    vals = p.values()
    return [(x % fam.k, int(vals[x])) for x in range(fam.q)]


def batches(seq: Sequence, k: int) -> list[list]:
    """Consecutive slices of length ``k``; the last one may be shorter."""
    return [list(seq[j : j + k]) for j in range(0, len(seq), k)]
