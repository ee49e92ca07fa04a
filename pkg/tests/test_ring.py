import random
from fractions import Fraction

import pytest

from annkh.errors import UnsupportedRingError
from annkh.ring import (
    A0,
    A1,
    DISCRIMINANT,
    GENERIC,
    GF,
    INT,
    QDEG_ANY,
    QH,
    RAT,
    BivariatePoly,
    HPoly,
    Scalar,
    alpha_eval,
    euclidean_divmod,
    poly_qdeg,
    specialize,
)


def rand_poly(rng, max_deg=3, max_coeff=6):
    terms = {}
    for _ in range(rng.randint(0, 5)):
        key = (rng.randint(0, max_deg), rng.randint(0, max_deg))
        terms[key] = rng.randint(-max_coeff, max_coeff)
    return BivariatePoly(terms)


def test_product_difference_of_squares():
    assert (A0 + A1) * (A0 - A1) == A0 * A0 - A1 * A1


def test_zero_annihilates():
    rng = random.Random(1)
    zero = BivariatePoly()
    for _ in range(20):
        assert zero * rand_poly(rng) == zero


def test_discriminant_expansion():
    expected = BivariatePoly({(2, 0): 1, (1, 1): -2, (0, 2): 1})
    assert DISCRIMINANT == expected


def test_qdeg_values():
    assert poly_qdeg(A0 + A1) == 2
    assert poly_qdeg(A0 * A1) == 4
    assert poly_qdeg(BivariatePoly.from_int(1) + A0) is None
    assert poly_qdeg(BivariatePoly()) is QDEG_ANY


def test_qdeg_additive_on_homogeneous():
    rng = random.Random(2)
    for _ in range(40):
        d1, d2 = rng.randint(0, 3), rng.randint(0, 3)
        p = BivariatePoly({(rng.randint(0, d1), d1 - rng.randint(0, d1)): 1})
        p = BivariatePoly({(i, d1 - i): rng.randint(1, 3) for i in range(d1 + 1)})
        q = BivariatePoly({(i, d2 - i): rng.randint(1, 3) for i in range(d2 + 1)})
        assert poly_qdeg(p * q) == poly_qdeg(p) + poly_qdeg(q)


def test_ring_axioms_randomized():
    rng = random.Random(3)
    for _ in range(30):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize(
    "ring, expected",
    [
        (INT, 0),
        (QH, HPoly((0, 1))),
        (alpha_eval(0, 1), Fraction(1)),
    ],
)
def test_specialize_examples(ring, expected):
    if ring is INT:
        assert specialize(A0 + A1, ring).value == expected
    elif ring is QH:
        assert specialize(A0 + A1, ring).value == expected
    else:
        assert specialize(DISCRIMINANT, ring).value == expected


def test_specialize_is_ring_hom():
    rng = random.Random(4)
    rings = [INT, RAT, GF(5), QH, alpha_eval(2, Fraction(1, 3))]
    for ring in rings:
        for _ in range(20):
            a, b = rand_poly(rng), rand_poly(rng)
            sa, sb = specialize(a, ring), specialize(b, ring)
            assert specialize(a * b, ring).value == (sa * sb).value
            assert specialize(a + b, ring).value == (sa + sb).value


def test_euclidean_divmod_examples():
    q, r = euclidean_divmod(Scalar(INT, 7), Scalar(INT, 2))
    assert (q.value, r.value) == (3, 1)
    hq, hr = euclidean_divmod(
        Scalar(QH, HPoly((1, 0, 1))), Scalar(QH, HPoly((0, 1)))
    )
    assert hq.value == HPoly((0, 1)) and hr.value == HPoly(1)
    fq, fr = euclidean_divmod(Scalar(RAT, Fraction(5)), Scalar(RAT, Fraction(3)))
    assert fq.value == Fraction(5, 3) and fr.value == 0


def test_euclidean_size_contract():
    rng = random.Random(5)
    for _ in range(50):
        a, b = rng.randint(-40, 40), rng.choice([-7, -3, 2, 5, 9])
        q, r = euclidean_divmod(Scalar(INT, a), Scalar(INT, b))
        assert a == q.value * b + r.value
        assert abs(r.value) < abs(b)
    for _ in range(30):
        a = HPoly([rng.randint(-3, 3) for _ in range(rng.randint(0, 5))])
        b = HPoly([rng.randint(-3, 3) for _ in range(rng.randint(1, 4))])
        if b.is_zero():
            continue
        q, r = euclidean_divmod(Scalar(QH, a), Scalar(QH, b))
        assert q.value * b + r.value == a
        assert r.is_zero() or r.value.degree() < b.degree()
    p = 7
    for _ in range(30):
        a, b = rng.randrange(p), rng.randrange(1, p)
        q, r = euclidean_divmod(Scalar(GF(p), a), Scalar(GF(p), b))
        assert r.value == 0
        assert (q.value * b) % p == a % p


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        euclidean_divmod(Scalar(INT, 1), Scalar(INT, 0))


def test_generic_is_not_euclidean():
    with pytest.raises(UnsupportedRingError):
        euclidean_divmod(
            Scalar(GENERIC, A0), Scalar(GENERIC, BivariatePoly.from_int(1))
        )


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        GF(4)


def test_alpha_eval_distinct_flag():
    assert alpha_eval(0, 1).distinct
    assert not alpha_eval(2, 2).distinct


def test_poly_ascii_form():
    p = 3 * (A0 * A0) * A1 - 2 * A1 + BivariatePoly.from_int(1)
    # sorted by exponent pairs (0,0) < (0,1) < (2,1)
    assert str(p) == "1 - 2*a1 + 3*a0^2*a1"
    assert str(BivariatePoly()) == "0"


def test_hpoly_string_and_monic():
    p = HPoly((1, 0, 2))
    assert str(p) == "2*h^2 + 1"
    assert p.monic() == HPoly((Fraction(1, 2), 0, 1))
    assert QH.to_str(QH.alpha_images()[1]) == "h"
