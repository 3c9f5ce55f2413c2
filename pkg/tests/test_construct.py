import math
import random
from itertools import combinations, permutations

import pytest

from houghton.perm import FinPerm
from houghton.elem import (
    G,
    finitary,
    in_class_tk,
    make_s,
    parse_element,
    t,
)
from houghton.certs import eval_word, verify, verify_positive
from houghton.construct import (
    ConstructError,
    alt_basis_words,
    euclid_word,
    evens_odds_reduce,
    gcd_test,
    pair_partner_g1,
    pair_partner_g2,
    partner_alt_g1,
    partner_alt_g2,
    partner_nonalt,
    three_cycle_word,
    two_gen_alpha,
)


def rand_even(rng, span=10, size=(3, 7)):
    """A random nontrivial even finitary permutation."""
    while True:
        pts = rng.sample(range(-span, span), rng.randint(*size))
        p = FinPerm.from_cycles([tuple(pts)])
        if not p.is_even():
            rest = [x for x in range(-span, span) if x not in pts]
            p = p * FinPerm.cycle(*rng.sample(rest, 2))
        if not p.is_identity() and p.is_even():
            return p


def rand_nonfin(rng, k, span=7):
    """A random non-finitary member of G_k."""
    while True:
        n = rng.randint(0, 5)
        fin = FinPerm()
        if n >= 2:
            pts = rng.sample(range(-span, span), n)
            fin = FinPerm.from_cycles([tuple(pts)])
            if not fin.is_even():
                rest = [x for x in range(-span, span) if x not in pts]
                fin = fin * FinPerm.cycle(*rng.sample(rest, 2))
        m = rng.choice([-2, -1, 1, 2])
        g = finitary(fin) * t(m * k)
        if g.shift != 0:
            return g


# -- euclid_word --------------------------------------------------------------


def test_euclid_word_trivial():
    assert euclid_word(1, 1) == (("c", 1),)


@pytest.mark.parametrize("d1,d2", [(1, 2), (2, 3), (3, 5), (5, 6), (4, 9), (6, 5)])
def test_euclid_word_reduces(d1, d2):
    w = euclid_word(d1, d2)
    env = {"c": finitary(FinPerm.cycle(-d1, 0, d2)), "s": t(1)}
    assert eval_word(env, w) == finitary(FinPerm.cycle(-1, 0, 1))
    assert len(w) <= 6 * (d1 + d2)


def test_euclid_word_rejects_common_factor():
    with pytest.raises(ConstructError):
        euclid_word(2, 4)


# -- gcd_test -----------------------------------------------------------------


def test_gcd_test_grid():
    for a in range(-6, 0):
        for b in range(1, 7):
            res = gcd_test(FinPerm.cycle(a, 0, b), t(1))
            assert res.gcd == math.gcd(-a, b)
            if res.gcd == 1:
                assert res.verdict == "positive"
                assert verify(res.certificate).ok
            else:
                assert res.verdict == "negative"
                assert verify(res.certificate).ok
                assert res.certificate.params["modulus"] == res.gcd


def test_gcd_test_relabelled_translation():
    s = make_s(FinPerm.cycle(0, 5, 3), 1)
    res = gcd_test(FinPerm.cycle(1, 4, 9), s)
    assert res.verdict == "positive"
    assert verify_positive(res.certificate).ok


def test_gcd_test_inapplicable():
    with pytest.raises(ConstructError, match="inapplicable"):
        gcd_test(FinPerm.cycle(0, 1, 2), t(2))
    with pytest.raises(ConstructError, match="inapplicable"):
        gcd_test(FinPerm.cycle(0, 1), t(1))


# -- words over the basis cycles ----------------------------------------------


def test_three_cycle_word_all_small_triples():
    env = {"a%d" % j: finitary(FinPerm.cycle(1, 2, j)) for j in range(3, 9)}
    for a, b, c in permutations(range(1, 8), 3):
        w = three_cycle_word(a, b, c)
        assert eval_word(env, w) == finitary(FinPerm.cycle(a, b, c))


def test_alt_basis_words_spec_point():
    # for k = 3 the word for (1 2 7) conjugates (1 2 4) by a translate
    words = alt_basis_words(3, 7)
    env = {"a%d" % j: finitary(FinPerm.cycle(1, 2, j)) for j in range(3, 7)}
    env["T"] = t(3)
    assert eval_word(env, words[-1]) == finitary(FinPerm.cycle(1, 2, 7))


@pytest.mark.parametrize("k", [3, 4, 5])
def test_alt_basis_words_evaluate(k):
    env = {"a%d" % j: finitary(FinPerm.cycle(1, 2, j)) for j in range(3, 2 * k + 1)}
    env["T"] = t(k)
    for j, w in zip(range(3, 26), alt_basis_words(k, 25)):
        assert eval_word(env, w) == finitary(FinPerm.cycle(1, 2, j))


# -- two-generator construction ------------------------------------------------


@pytest.mark.parametrize("k", [3, 4])
def test_two_gen_alpha(k):
    tr = two_gen_alpha(k)
    assert verify_positive(tr.certificate).ok
    alpha = tr.certificate.generators["alpha"]
    assert alpha.shift == 0 and alpha.fin.is_even()
    # the commutator target and every conjugated basis cycle are pinned
    n = len(list(combinations(range(1, 2 * k + 1), 3)))
    assert tr.named["c"] == finitary(FinPerm.cycle(1, 2, 3))
    assert len([s for s in tr.certificate.steps if type(s).__name__ == "CheckEqual"]) == n + 1


def test_two_gen_alpha_rejects_small_k():
    with pytest.raises(ConstructError):
        two_gen_alpha(2)


# -- single partners -------------------------------------------------------------


def test_partner_alt_g1_simple_cycle():
    res = partner_alt_g1(FinPerm.cycle(0, 1, 2))
    assert in_class_tk(res.h, 1) is not None
    assert verify_positive(res.transcript.certificate).ok


def test_partner_alt_g2_three_cycle_is_direct_seed():
    res = partner_alt_g2(FinPerm.cycle(4, 9, -1))
    assert in_class_tk(res.h, 2) is not None
    # no derivations needed: the generator itself is the seed
    assert all(type(s).__name__ == "Axiom" for s in res.transcript.certificate.steps)


@pytest.mark.parametrize("seed", range(6))
def test_partner_alt_random(seed):
    rng = random.Random(100 + seed)
    for _ in range(8):
        sigma = rand_even(rng)
        r1 = partner_alt_g1(sigma)
        assert in_class_tk(r1.h, 1) is not None
        r2 = partner_alt_g2(sigma)
        assert in_class_tk(r2.h, 2) is not None


def test_partner_alt_rejects_odd():
    with pytest.raises(ConstructError):
        partner_alt_g1(FinPerm.cycle(0, 1))


# -- partners for non-finitary elements -----------------------------------------


def test_partner_nonalt_translation():
    res = partner_nonalt(1, [t(1)])
    assert in_class_tk(res.h, 1) is not None
    assert verify_positive(res.certificates[0]).ok


def test_partner_nonalt_avoid_window():
    res = partner_nonalt(3, [t(3)], avoid=50)
    assert not (set(res.sigma.support) & set(range(-50, 51)))
    assert verify_positive(res.certificates[0]).ok


def test_partner_nonalt_shared_partner():
    gs = [t(2), finitary(FinPerm.cycle(0, 1, 2)) * t(-2)]
    res = partner_nonalt(2, gs)
    assert len(res.certificates) == 2
    for cert, g in zip(res.certificates, gs):
        assert cert.generators["g"] == g
        assert cert.generators["h"] == res.h


@pytest.mark.parametrize("seed", range(5))
def test_partner_nonalt_random(seed):
    rng = random.Random(500 + seed)
    for _ in range(4):
        k = rng.randint(1, 4)
        gs = [rand_nonfin(rng, k) for _ in range(rng.randint(1, 2))]
        res = partner_nonalt(k, gs)
        assert in_class_tk(res.h, k) is not None
        assert len(res.certificates) == len(gs)


def test_partner_nonalt_rejects_finitary():
    with pytest.raises(ConstructError):
        partner_nonalt(1, [finitary(FinPerm.cycle(0, 1, 2))])


def test_partner_nonalt_rejects_nonmember():
    with pytest.raises(ConstructError):
        partner_nonalt(2, [t(3)])


# -- partners for pairs ----------------------------------------------------------


def pair_checks(res, k, g1, g2):
    assert in_class_tk(res.h, k) is not None
    assert res.h == make_s(res.conjugator, k)
    for cert, g in zip(res.certificates, (g1, g2)):
        assert cert.generators["g"] == g
        assert cert.generators["h"] == res.h


def test_pair_partner_inverse_pair():
    # a 3-cycle and its inverse cannot share a relabelling directly;
    # the second certificate derives the inverse and reuses the chain
    g = finitary(FinPerm.cycle(0, 1, 2))
    for k, fn in ((1, pair_partner_g1), (2, pair_partner_g2)):
        res = fn(g, g.inverse())
        pair_checks(res, k, g, g.inverse())


def test_pair_partner_equal_pair():
    g = finitary(FinPerm.from_cycles([(0, 4), (2, 7)]))
    res = pair_partner_g1(g, g)
    pair_checks(res, 1, g, g)


@pytest.mark.parametrize("k,fn", [(1, pair_partner_g1), (2, pair_partner_g2)])
def test_pair_partner_finitary_random(k, fn):
    rng = random.Random(40 + k)
    for _ in range(10):
        g1 = finitary(rand_even(rng))
        g2 = finitary(rand_even(rng))
        pair_checks(fn(g1, g2), k, g1, g2)


@pytest.mark.parametrize("k,fn", [(1, pair_partner_g1), (2, pair_partner_g2)])
def test_pair_partner_mixed_random(k, fn):
    rng = random.Random(60 + k)
    for _ in range(6):
        gf = finitary(rand_even(rng))
        gn = rand_nonfin(rng, k)
        pair_checks(fn(gf, gn), k, gf, gn)
        pair_checks(fn(gn, gf), k, gn, gf)


@pytest.mark.parametrize("k,fn", [(1, pair_partner_g1), (2, pair_partner_g2)])
def test_pair_partner_nonfinitary_random(k, fn):
    rng = random.Random(80 + k)
    for _ in range(4):
        g1 = rand_nonfin(rng, k)
        g2 = rand_nonfin(rng, k)
        pair_checks(fn(g1, g2), k, g1, g2)


def test_pair_partner_rejects_nonmember():
    with pytest.raises(ConstructError):
        pair_partner_g2(finitary(FinPerm.cycle(0, 1, 2)), t(1))


# -- support parity reduction ------------------------------------------------------


def test_evens_odds_reduce_drops_one_even():
    rng = random.Random(9)
    sig = finitary(FinPerm.cycle(0, 3))
    for _ in range(20):
        while True:
            om = rand_even(rng, span=8, size=(3, 6))
            if any(p % 2 == 0 for p in om.support):
                break
        r = evens_odds_reduce(sig, om)
        before = sum(1 for p in om.support if p % 2 == 0)
        after = sum(1 for p in r.result.support if p % 2 == 0)
        assert after == before - 1
        assert len(r.steps) == 3


def test_evens_odds_reduce_preconditions():
    with pytest.raises(ConstructError):
        evens_odds_reduce(finitary(FinPerm.cycle(0, 4, 2)), FinPerm.cycle(1, 2, 4))
    with pytest.raises(ConstructError):
        evens_odds_reduce(finitary(FinPerm.cycle(0, 3)), FinPerm.cycle(1, 3, 5))
