import random

import pytest

from oracles import degree, f_oracle, intersections, q_oracle
from trycolor.errors import ParameterError
from trycolor.field import (
    PrimeField, Polynomial, SequenceFamily, assign_polynomial, batches, choose_prime,
    color_sequence, count_intersections, digits, is_prime, log_ceil,
)


@pytest.mark.parametrize("f,delta,d,expected", [(2, 2, 0, 11), (1, 16, 0, 37), (1, 4, 1, 5)])
def test_choose_prime_examples(f, delta, d, expected):
    assert choose_prime(f, delta, d) == expected
    assert choose_prime(f, delta, d) == q_oracle(f, delta, d)


@pytest.mark.parametrize("f", range(1, 7))
@pytest.mark.parametrize("delta,d", [(2, 0), (3, 0), (8, 1), (16, 3), (25, 4), (64, 0)])
def test_choose_prime_matches_sympy_and_stays_in_interval(f, delta, d):
    q = choose_prime(f, delta, d)
    assert q == q_oracle(f, delta, d)
    assert 2 * f * delta < q * (d + 1) < 4 * f * delta


def test_is_prime_small_table():
    assert [x for x in range(40) if is_prime(x)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


@pytest.mark.parametrize("m,delta,d", [(65536, 16, 0), (3, 2, 0), (16, 4, 1), (1000, 8, 3), (4096, 8, 0),
                                       (64, 4, 0), (65, 4, 0), (1, 5, 0)])
def test_log_ceil_is_exact(m, delta, d):
    assert log_ceil(m, delta, d) == f_oracle(m, delta, d)


def test_log_ceil_rejects_degenerate_base():
    with pytest.raises(ParameterError):
        log_ceil(10, 4, 3)


def test_assign_polynomial_digit_examples():
    field = PrimeField(5)
    assert digits(2, 5, 1) == (2, 0)
    assert digits(7, 5, 1) == (2, 1)
    assert digits(0, 5, 1) == (0, 0)
    p = Polynomial(digits(7, 5, 1), field)
    assert [p(x) for x in range(5)] == [2, 3, 4, 0, 1]
    assert Polynomial(digits(0, 5, 1), field).degree == 0


def test_digits_capacity_error():
    with pytest.raises(ParameterError):
        digits(25, 5, 1)


def test_color_sequence_example():
    # q=5, k=2, p(x) = x + 1
    field = PrimeField(5)
    p = Polynomial((1, 1), field)
    seq = [(x % 2, p(x)) for x in range(5)]
    assert seq == [(0, 1), (1, 2), (0, 3), (1, 4), (0, 0)]
    assert batches(seq, 2) == [[(0, 1), (1, 2)], [(0, 3), (1, 4)], [(0, 0)]]
    zero = Polynomial((0, 0), field)
    one_batch = batches([(x % 5, zero(x)) for x in range(5)], 5)
    assert len(one_batch) == 1 and all(b == 0 for _, b in one_batch[0])


def test_color_sequence_of_family_matches_direct_evaluation():
    fam = SequenceFamily(50, 4, 0, 3)
    for i in (0, 1, 17, 49):
        seq = color_sequence(fam, i)
        p = assign_polynomial(fam, i)
        assert seq == [(x % 3, p(x)) for x in range(fam.q)]


def test_count_intersections_examples():
    f5 = PrimeField(5)
    assert count_intersections(Polynomial((0, 0, 1), f5), Polynomial((0, 1), f5)) == 2
    assert count_intersections(Polynomial((0, 1), f5), Polynomial((1, 1), f5)) == 0
    with pytest.raises(ParameterError):
        count_intersections(Polynomial((1, 2), f5), Polynomial((1, 2, 0), f5))


def test_count_intersections_against_oracle_random():
    rng = random.Random(3)
    for q in (5, 11, 37, 101):
        field = PrimeField(q)
        for _ in range(60):
            f = rng.randint(0, 4)
            a = tuple(rng.randrange(q) for _ in range(f + 1))
            b = tuple(rng.randrange(q) for _ in range(f + 1))
            if a == b:
                continue
            got = count_intersections(Polynomial(a, field), Polynomial(b, field))
            assert got == intersections(a, b, q)
            assert got <= max(degree(a), degree(b))


def test_skip_constants_shifts_by_q():
    plain = SequenceFamily(100, 3, 1, 1)
    skip = SequenceFamily(100, 3, 1, 1, skip_constants=True)
    assert plain.q == skip.q == 37
    assert plain.coefficients(0) == (0,) * (plain.f + 1)
    assert skip.coefficients(0) == digits(37, 37, plain.f)
    assert all(degree(skip.coefficients(i)) >= 1 for i in range(100))
