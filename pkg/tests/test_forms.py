from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mukaiwalls.forms import (apply, cycle, discriminant, evaluate, is_reduced, is_square,
                              proper_equivalence, reduce_form, representations)

forms = st.tuples(st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8))


def brute(f, m, box=40):
    return {(p, q) for p in range(-box, box + 1) for q in range(-box, box + 1)
            if gcd(p, q) == 1 and evaluate(f, p, q) == m}


@given(forms)
def test_reduction_preserves_form(f):
    D = discriminant(f)
    assume(D > 0 and not is_square(D))
    g, T = reduce_form(f)
    assert is_reduced(g) and apply(f, T) == g
    (p, q), (r, s) = T
    assert p * s - q * r == 1
    for h, C in cycle(g):
        assert apply(g, C) == h and is_reduced(h)


@given(forms, st.integers(-30, 30).filter(bool))
def test_representations_agree_with_brute_force(f, m):
    D = discriminant(f)
    assume(D > 0)
    found = list(representations(f, m))
    for p, q in found:
        assert gcd(p, q) == 1 and evaluate(f, p, q) == m
    small = brute(f, m)
    if is_square(D):
        assert small <= set(found)
    else:
        # a representation exists iff the method produces one
        assert bool(small) <= bool(found)


@given(forms, st.data())
def test_equivalence_found_for_transformed_forms(f, data):
    D = discriminant(f)
    assume(D > 0 and not is_square(D))
    a, b = data.draw(st.integers(-4, 4)), data.draw(st.integers(-4, 4))
    M = ((1, a), (0, 1))
    N = ((1, 0), (b, 1))
    g = apply(apply(f, M), N)
    T = proper_equivalence(f, g)
    assert T is not None and apply(f, T) == g


def test_known_inequivalent():
    # x^2 - 3y^2 and -x^2 + 3y^2 have discriminant 12 and are not properly equivalent
    assert proper_equivalence((1, 0, -3), (-1, 0, 3)) is None
    assert proper_equivalence((1, 1, -1), (-1, 1, 1)) is not None  # x^2 - 5y^2 represents -1
    with pytest.raises(ValueError):
        list(representations((1, 0, -2), 0))
