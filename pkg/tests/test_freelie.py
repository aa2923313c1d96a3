"""Free Lie algebra core: Lyndon words, bracket normalization, and its oracles."""

import itertools
import random
from fractions import Fraction

from liepres.freelie import (
    DegreeCapExceeded,
    LiePoly,
    bracket,
    bracket_string,
    expand_to_associative,
    is_lyndon,
    lyndon_words,
    standard_factorization,
    tower_to_poly,
)


def mobius(n):
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def witt(k, n):
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += mobius(d) * k ** (n // d)
    return total // n


def all_words(k, n):
    return itertools.product(range(k), repeat=n)


def test_lyndon_matches_rotation_definition():
    for n in range(1, 7):
        for w in all_words(3, n):
            rotations = [w[i:] + w[:i] for i in range(1, n)]
            expected = all(w < r for r in rotations)
            assert is_lyndon(w) == expected, w


def test_lyndon_counts_match_witt_formula():
    for k in (2, 3):
        grouped = lyndon_words(k, 7)
        for n in range(1, 8):
            assert len(grouped[n]) == witt(k, n), (k, n)


def test_three_letter_counts_up_to_degree_8():
    grouped = lyndon_words(3, 8)
    assert [len(grouped[n]) for n in range(1, 9)] == [3, 3, 8, 18, 48, 116, 312, 810]
    assert sum(len(grouped[n]) for n in range(1, 9)) == 1318


def test_lyndon_words_sorted_and_unique():
    grouped = lyndon_words(3, 6)
    for n in range(1, 7):
        ws = grouped[n]
        assert ws == sorted(ws)
        assert len(set(ws)) == len(ws)
        for w in ws:
            assert is_lyndon(w)


def test_standard_factorization_is_longest_lyndon_proper_suffix():
    grouped = lyndon_words(3, 6)
    for n in range(2, 7):
        for w in grouped[n]:
            u, v = standard_factorization(w)
            assert u + v == w
            assert is_lyndon(u) and is_lyndon(v)
            assert u < v
            best = None
            for i in range(1, n):
                if is_lyndon(w[i:]):
                    best = w[i:]
                    break
            assert v == best, w


def test_bracket_bilinear_and_antisymmetric():
    rng = random.Random(424242)
    grouped = lyndon_words(3, 3)
    monos = [w for n in range(1, 4) for w in grouped[n]]

    def rand_poly():
        p = LiePoly.zero()
        for w in rng.sample(monos, 4):
            p = p + Fraction(rng.randint(-3, 3)) * LiePoly.monomial(w)
        return p

    for trial in range(15):
        p, q, r = rand_poly(), rand_poly(), rand_poly()
        assert bracket(p, p) == LiePoly.zero()
        assert bracket(p, q) == -bracket(q, p)
        assert bracket(p + q, r) == bracket(p, r) + bracket(q, r)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        assert bracket(c * p, q) == c * bracket(p, q)


def test_bracket_lands_in_lyndon_basis():
    grouped = lyndon_words(3, 6)
    lyndon = {w for n in range(1, 7) for w in grouped[n]}
    for du in range(1, 4):
        for dv in range(1, 4):
            for u in grouped[du]:
                for v in grouped[dv]:
                    for w in bracket(LiePoly.monomial(u), LiePoly.monomial(v)).terms:
                        assert w in lyndon
                        assert len(w) == du + dv


def test_jacobi_exhaustive_to_degree_6():
    grouped = lyndon_words(3, 4)
    monos = [w for n in range(1, 5) for w in grouped[n]]
    count = 0
    for a, b, c in itertools.combinations(monos, 3):
        if len(a) + len(b) + len(c) > 6:
            continue
        pa, pb, pc = LiePoly.monomial(a), LiePoly.monomial(b), LiePoly.monomial(c)
        total = (bracket(pa, bracket(pb, pc))
                 + bracket(pb, bracket(pc, pa))
                 + bracket(pc, bracket(pa, pb)))
        assert total == LiePoly.zero(), (a, b, c)
        count += 1
    assert count == 170


def test_associative_commutator_oracle_to_degree_5():
    grouped = lyndon_words(3, 4)
    monos = [w for n in range(1, 5) for w in grouped[n]]
    pairs = 0
    for u in monos:
        for v in monos:
            if u >= v or len(u) + len(v) > 5:
                continue
            pu = LiePoly.monomial(u)
            pv = LiePoly.monomial(v)
            lhs = expand_to_associative(bracket(pu, pv))
            au = expand_to_associative(pu)
            av = expand_to_associative(pv)
            assert lhs == au.mul(av) - av.mul(au), (u, v)
            pairs += 1
    assert pairs == 117


def test_associative_oracle_on_random_polys():
    rng = random.Random(1318)
    grouped = lyndon_words(3, 3)
    monos = [w for n in range(1, 4) for w in grouped[n]]
    for trial in range(10):
        p = LiePoly.zero()
        q = LiePoly.zero()
        for w in rng.sample(monos, 3):
            p = p + Fraction(rng.randint(-2, 2)) * LiePoly.monomial(w)
        for w in rng.sample(monos, 3):
            q = q + Fraction(rng.randint(-2, 2)) * LiePoly.monomial(w)
        ap = expand_to_associative(p)
        aq = expand_to_associative(q)
        assert expand_to_associative(bracket(p, q)) == ap.mul(aq) - aq.mul(ap)


def test_embedding_injective_to_degree_5():
    grouped = lyndon_words(3, 5)
    monos = [w for n in range(1, 6) for w in grouped[n]]
    images = [expand_to_associative(LiePoly.monomial(w)) for w in monos]
    support = sorted({w for img in images for w in img.terms}, key=lambda w: (len(w), w))
    index = {w: i for i, w in enumerate(support)}
    from liepres.linalg import RatMatrix, rank
    rows = []
    for img in images:
        row = [Fraction(0)] * len(support)
        for w, c in img.terms.items():
            row[index[w]] = c
        rows.append(row)
    assert rank(RatMatrix.from_rows(rows)) == len(monos) == 80


def test_tower_to_poly_matches_nested_brackets():
    x = [LiePoly.generator(i) for i in range(3)]
    assert tower_to_poly((0, 1)) == bracket(x[0], x[1])
    assert tower_to_poly((0, 1, 2)) == bracket(x[0], bracket(x[1], x[2]))
    assert tower_to_poly((2, 0, 1, 2)) == bracket(x[2], bracket(x[0], bracket(x[1], x[2])))
    assert tower_to_poly((0,)) == x[0]
    assert tower_to_poly((0, 0)) == LiePoly.zero()


def test_bracket_string_round_names():
    assert bracket_string((0,), ("x1", "x2", "x3")) == "x1"
    assert bracket_string((0, 1), ("x1", "x2", "x3")) == "[x1,x2]"
    assert bracket_string((0, 0, 1), ("x1", "x2", "x3")) == "[x1,[x1,x2]]"


def test_degree_cap_enforced():
    p = LiePoly.monomial((0, 0, 0, 0, 0, 0, 1))
    q = LiePoly.monomial((0, 0, 0, 0, 0, 1))
    try:
        bracket(p, q)
        raised = False
    except DegreeCapExceeded:
        raised = True
    assert raised
    assert bracket(p, q, cap=13).max_degree() == 13
