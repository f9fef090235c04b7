import itertools
from fractions import Fraction

import pytest

from app.core.exceptions import AlgebraError
from app.features.freealg.models import MonomialOrder, Ordering, PairIndex, Polynomial
from app.features.freealg.service import (
    compare_words,
    leading_term,
    pair_decode,
    pair_decode_poly,
    pair_encode,
    pair_encode_poly,
    pair_names,
    poly_combine,
    poly_mul,
    word_parity,
    words_of_length,
)

X, Y = 1, 2
ORDER = MonomialOrder.default(2)


def random_word(rng, m=2, max_len=4):
    return tuple(rng.randint(1, m) for _ in range(rng.randint(0, max_len)))


def random_poly(rng, m=2, terms=4):
    return Polynomial({random_word(rng, m): Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(terms)})


@pytest.mark.parametrize("w1, w2, expected", [
    ((X, Y), (Y, X), Ordering.LESS),
    ((Y,), (X, X), Ordering.LESS),
    ((X, Y, X), (X, Y, X), Ordering.EQUAL),
    ((Y, Y), (Y, X), Ordering.GREATER),
    ((), (X,), Ordering.LESS),
])
def test_compare_words(w1, w2, expected):
    assert compare_words(w1, w2, ORDER) is expected


def test_precedence_reverses_letters():
    order = MonomialOrder((Y, X))
    assert compare_words((X, Y), (Y, X), order) is Ordering.GREATER


def test_bad_precedence_rejected():
    with pytest.raises(AlgebraError):
        MonomialOrder((1, 1))


def test_order_axioms(rng):
    for _ in range(300):
        a, b, c = (random_word(rng) for _ in range(3))
        u, v = random_word(rng, max_len=2), random_word(rng, max_len=2)
        ab = compare_words(a, b, ORDER)
        assert compare_words(b, a, ORDER) is Ordering(-ab)
        assert (ab is Ordering.EQUAL) == (a == b)
        if len(a) < len(b):
            assert ab is Ordering.LESS
        if ab is Ordering.LESS and compare_words(b, c, ORDER) is Ordering.LESS:
            assert compare_words(a, c, ORDER) is Ordering.LESS
        if ab is Ordering.LESS:
            assert compare_words(u + a + v, u + b + v, ORDER) is Ordering.LESS


@pytest.mark.parametrize("p, q, c, expected", [
    (Polynomial({(X,): 1, (Y,): 1}), Polynomial({(X,): 1}), -1, Polynomial({(Y,): 1})),
    (Polynomial.zero(), Polynomial({(Y, X, Y): 1}), 1, Polynomial({(Y, X, Y): 1})),
    (Polynomial({(X, X): 1}), Polynomial({(X, X): 1}), -1, Polynomial.zero()),
])
def test_poly_combine(p, q, c, expected):
    assert poly_combine(p, q, c) == expected


def test_zero_coefficients_never_stored():
    p = Polynomial({(X,): 0, (Y,): Fraction(2, 4)})
    assert list(p.items()) == [((Y,), Fraction(1, 2))]
    assert Polynomial.zero().degree == float("-inf")
    assert not Polynomial.zero()


def test_ring_axioms(rng):
    for _ in range(60):
        p, q, r = (random_poly(rng) for _ in range(3))
        assert p + q == q + p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert (p + q) * r == p * r + q * r
        assert p * Polynomial.one() == p == Polynomial.one() * p
        assert p - p == Polynomial.zero()
        assert poly_mul(p, q) == p * q


def test_multiplication_is_concatenation():
    xy = Polynomial.monomial((X, Y))
    assert xy * Polynomial.generator(X) == Polynomial.monomial((X, Y, X))
    assert xy.mul_words((Y,), (X,)) == Polynomial.monomial((Y, X, Y, X))
    assert (Polynomial.generator(X) + Polynomial.generator(Y)) ** 2 == Polynomial(
        {(X, X): 1, (X, Y): 1, (Y, X): 1, (Y, Y): 1}
    )


def test_leading_term_and_monic():
    p = Polynomial({(X, Y): 2, (Y, X): -4, (Y,): 1})
    assert leading_term(p, ORDER) == ((Y, X), Fraction(-4))
    assert p.monic(ORDER).coefficient((Y, X)) == 1
    with pytest.raises(AlgebraError, match="no leading term"):
        leading_term(Polynomial.zero(), ORDER)


def test_substitute_is_a_homomorphism(rng):
    images = {X: Polynomial({(X, Y): 1}), Y: Polynomial({(Y, Y): 1, (): 1})}
    for _ in range(30):
        p, q = random_poly(rng), random_poly(rng)
        assert (p * q).substitute(images) == p.substitute(images) * q.substitute(images)
        assert (p + q).substitute(images) == p.substitute(images) + q.substitute(images)


def test_parity_parts():
    p = Polynomial({(X, X): 1, (Y, X, Y): 1, (): 3})
    even, odd = p.parity_parts()
    assert even == Polynomial({(X, X): 1, (): 3})
    assert odd == Polynomial({(Y, X, Y): 1})
    assert word_parity((X, Y, X)).value == "odd"


def test_pair_encode_examples():
    assert pair_encode((X, Y, Y, X), 2) == (2, 3)
    assert pair_decode((2, 3), 2) == (X, Y, Y, X)
    assert PairIndex(2, 1).id(2) == 3
    assert PairIndex.from_id(4, 2) == PairIndex(2, 2)
    with pytest.raises(AlgebraError, match="odd word not encodable"):
        pair_encode((X, Y, X), 2)


def test_pair_encode_bijection_exhaustive():
    for length in range(0, 9, 2):
        encoded = set()
        for w in words_of_length(2, length):
            v = pair_encode(w, 2)
            assert len(v) == length // 2
            assert pair_decode(v, 2) == w
            encoded.add(v)
        assert encoded == set(itertools.product(range(1, 5), repeat=length // 2))


def test_pair_encode_poly_is_linear():
    p = Polynomial({(X, Y): 2, (Y, Y, X, X): -1})
    assert pair_encode_poly(p, 2) == Polynomial({(2,): 2, (4, 1): -1})
    assert pair_decode_poly(pair_encode_poly(p, 2), 2) == p


def test_pair_names():
    assert pair_names(["x", "y"]) == ["y11", "y12", "y21", "y22"]
    names = pair_names([f"g{k}" for k in range(10)])
    assert len(names) == 100
    assert names[:2] == ["y1_1", "y1_2"]
    assert names[-1] == "y10_10"
