import random
from itertools import combinations

import pytest

from houghton.perm import FinPerm
from houghton.elem import G, finitary, parse_element, t
from houghton.certs import verify_negative
from houghton.bounds import (
    BoundsError,
    defeat_set,
    defeat_ten,
    refute_dominating,
    spread_zero_witness,
)


def rand_member(rng, shifts, span=8):
    """A random member with an even finitary part and the given shifts."""
    while True:
        n = rng.randint(0, 6)
        fin = FinPerm()
        if n >= 2:
            pts = rng.sample(range(-span, span + 1), n)
            fin = FinPerm.from_cycles([tuple(pts)])
            if not fin.is_even():
                rest = [x for x in range(-span, span + 1) if x not in pts]
                fin = fin * FinPerm.cycle(*rng.sample(rest, 2))
        if fin.is_even():
            return finitary(fin) * t(rng.choice(shifts))


# -- defeat set ----------------------------------------------------------------


def test_defeat_set_canonical():
    ds = defeat_set(G(1))
    assert len(ds.cycles) == 10
    assert ds.group == G(1)
    supports = {frozenset(c.support) for c in ds.cycles}
    assert supports == {frozenset(c) for c in combinations(range(1, 6), 3)}
    # no cycle together with its inverse
    as_perms = set(ds.cycles)
    assert all(c.inverse() not in as_perms for c in ds.cycles)


def test_defeat_set_rejects_other_groups():
    with pytest.raises(BoundsError):
        defeat_set(G(3))


# -- spread zero ----------------------------------------------------------------


def test_spread_zero_translation_k4():
    sigma, cert = spread_zero_witness(4, t(4))
    assert sigma == FinPerm.cycle(1, 2, 3)
    assert cert.variant == "invariant_set"
    assert cert.params["orbits"] == ["inf0"]
    assert verify_negative(cert).ok


def test_spread_zero_translation_k3_imprimitivity():
    sigma, cert = spread_zero_witness(3, t(3))
    assert cert.variant == "imprimitivity3"
    assert cert.params["points"] == [1, 2, 3]
    assert verify_negative(cert).ok


def test_spread_zero_shift_six():
    _, cert = spread_zero_witness(3, parse_element("(1 2 3) t^6"))
    assert cert.variant == "invariant_set"
    assert verify_negative(cert).ok


def test_spread_zero_finitary():
    _, cert = spread_zero_witness(5, parse_element("(1 2 3)"))
    assert cert.variant == "finitary"
    assert verify_negative(cert).ok


def test_spread_zero_rejects_small_k_and_nonmember():
    with pytest.raises(BoundsError):
        spread_zero_witness(2, t(2))
    with pytest.raises(BoundsError):
        spread_zero_witness(3, t(2))


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_spread_zero_random(k):
    rng = random.Random(900 + k)
    for _ in range(25):
        h = rand_member(rng, [-2 * k, -k, 0, k, 2 * k])
        _, cert = spread_zero_witness(k, h)
        assert verify_negative(cert).ok


# -- no finite dominating set ------------------------------------------------------


def test_refute_dominating_translation():
    w, certs = refute_dominating([t(1)], G(1))
    assert w == FinPerm.cycle(1, 3, 5)
    assert certs[0].variant == "block_system"
    assert certs[0].params == {"relabel": "t^1", "modulus": 2}
    assert verify_negative(certs[0]).ok


def test_refute_dominating_g2_translation():
    w, certs = refute_dominating([t(2)], G(2))
    assert w == FinPerm.cycle(1, 3, 5)
    assert certs[0].variant == "invariant_set"
    assert verify_negative(certs[0]).ok


def test_refute_dominating_mixed_set():
    w, certs = refute_dominating([parse_element("(0 1 2)"), t(1)], G(1))
    assert w == FinPerm.cycle(3, 5, 7)
    assert [c.variant for c in certs] == ["finitary", "block_system"]
    assert all(verify_negative(c).ok for c in certs)


def test_refute_dominating_wrong_shift_member():
    # t^2 in G_2-with-target-G_1 is rejected as a nonmember, but a
    # doubled shift inside the right group falls to the shift lattice
    w, certs = refute_dominating([t(2)], G(1))
    assert certs[0].variant == "shift_lattice"
    assert verify_negative(certs[0]).ok


def test_refute_dominating_rejects_nonmember():
    with pytest.raises(BoundsError):
        refute_dominating([t(1)], G(2))


@pytest.mark.parametrize("k", [1, 2])
def test_refute_dominating_random(k):
    rng = random.Random(70 + k)
    for _ in range(15):
        S = [
            rand_member(rng, [-2 * k, -k, 0, k, 2 * k])
            for _ in range(rng.randint(1, 10))
        ]
        w, certs = refute_dominating(S, G(k))
        assert len(certs) == len(S)
        assert all(verify_negative(c).ok for c in certs)
        m = max(s.eventual_bound() for s in S)
        assert sorted(w.support) == [m + 1, m + 3, m + 5]


# -- ten-cycle defeats ----------------------------------------------------------------


def test_defeat_ten_g1_translation():
    sigma, cert = defeat_ten(t(1), G(1))
    assert sigma == FinPerm.cycle(1, 3, 5)
    assert cert.variant == "block_system"
    assert verify_negative(cert).ok


def test_defeat_ten_g1_finitary():
    sigma, cert = defeat_ten(parse_element("(1 2 3)"), G(1))
    assert cert.variant == "finitary"
    assert verify_negative(cert).ok


def test_defeat_ten_g2_translation():
    sigma, cert = defeat_ten(t(2), G(2))
    assert sigma == FinPerm.cycle(1, 3, 5)
    assert cert.variant == "invariant_set"
    assert cert.params["orbits"] == ["inf0"]
    assert verify_negative(cert).ok


def test_defeat_ten_sigma_is_in_the_set():
    ds = defeat_set(G(1))
    rng = random.Random(12)
    for _ in range(40):
        h = rand_member(rng, [-3, -2, -1, 0, 1, 2, 3])
        sigma, cert = defeat_ten(h, G(1))
        assert sigma in ds.cycles
        assert verify_negative(cert).ok


def test_defeat_ten_g2_random():
    ds = defeat_set(G(2))
    rng = random.Random(13)
    for _ in range(40):
        h = rand_member(rng, [-4, -2, 0, 2, 4])
        sigma, cert = defeat_ten(h, G(2))
        assert sigma in ds.cycles
        assert verify_negative(cert).ok


def test_defeat_ten_rejects_nonmember():
    with pytest.raises(BoundsError):
        defeat_ten(t(1), G(2))
