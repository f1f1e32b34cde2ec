"""Differential spectra, APN detection, exponent classification and the
brute-force surface check."""

import math
import random
from collections import Counter

import pytest

from apnforge import (
    GOLD,
    KASAMI,
    NOT_EXCEPTIONAL,
    UniPoly,
    classify_exponent,
    compose,
    eval_table,
    is_apn,
    is_apn_over_extension,
    make_field,
    parse_poly,
    spectrum,
    surface_point_check,
)
from apnforge.errors import FieldTooLarge
from conftest import random_poly, random_q_affine


def naive_spectrum(f, field):
    """O(q^2) reference: count solutions of f(x+a)+f(x)=b per (a, b)."""
    table = [f.eval(x) for x in field.elements()]
    counts = Counter()
    q = field.order
    for abits in range(1, q):
        per_b = Counter()
        for xbits in range(q):
            per_b[(table[xbits ^ abits] + table[xbits]).bits] += 1
        row = Counter(per_b.values())
        row[0] += q - len(per_b)
        counts.update(row)
    return dict(counts)


def test_spectrum_x3_gf16(g16):
    sp = spectrum(parse_poly("x^3", g16), g16)
    assert sp.histogram == {0: 120, 2: 120}
    assert sp.uniformity == 2


def test_spectrum_x5_matches_naive(g16):
    f = parse_poly("x^5", g16)
    sp = spectrum(f, g16)
    assert sp.histogram == naive_spectrum(f, g16)
    assert sp.histogram == {0: 180, 4: 60}
    assert sp.uniformity == 4


def test_spectrum_random_matches_naive(g8):
    rng = random.Random(12)
    for _ in range(5):
        f = random_poly(rng, g8, 7)
        assert spectrum(f, g8).histogram == naive_spectrum(f, g8)


def test_linear_map_uniformity():
    # x^2+x has kernel {0,1}: every derivative is 2-to-... q-to-one onto one value
    for m in (3, 4, 5):
        ctx = make_field(m)
        sp = spectrum(parse_poly("x^2 + x", ctx), ctx)
        assert sp.uniformity == ctx.order


def test_spectrum_mass_and_parity(g16):
    rng = random.Random(13)
    q = 16
    for _ in range(10):
        f = random_poly(rng, g16, 12)
        sp = spectrum(f, g16)
        assert all(c % 2 == 0 for c in sp.histogram)
        assert sum(c * mult for c, mult in sp.histogram.items()) == q * (q - 1)
        assert sum(sp.histogram.values()) == q * (q - 1)


def test_gold_gcd_table():
    for m in range(2, 11):
        ctx = make_field(m)
        for k in (1, 2, 3):
            f = UniPoly.monomial(ctx, (1 << k) + 1)
            assert is_apn(f, ctx) == (math.gcd(k, m) == 1)


def test_gold_uniformity_is_gcd_power(g16):
    # x^5 = x^(2^2+1) over GF(2^4): uniformity 2^gcd(2,4)
    assert spectrum(parse_poly("x^5", g16), g16).uniformity == 4


def test_q_affine_invariance(g8, g16):
    rng = random.Random(14)
    for ctx in (g8, g16):
        for _ in range(100):
            f = random_poly(rng, ctx, 12, min_deg=1)
            g = random_q_affine(rng, ctx)
            assert spectrum(f + g, ctx).histogram == spectrum(f, ctx).histogram


def test_frobenius_precomposition_invariance(g16):
    rng = random.Random(15)
    sq = parse_poly("x^2", g16)
    for _ in range(5):
        f = random_poly(rng, g16, 7)
        assert spectrum(compose(f, sq), g16).histogram == spectrum(f, g16).histogram


def test_spectrum_worker_determinism(g16):
    f = parse_poly("x^6 + 0x3*x^5 + x^3", g16)
    base = spectrum(f, g16, workers=1).histogram
    for w in (2, 3, 8):
        assert spectrum(f, g16, workers=w).histogram == base


def test_spectrum_field_cap(g2):
    with pytest.raises(FieldTooLarge):
        spectrum(parse_poly("x^3", g2), make_field(15))


def test_is_apn_over_extension(g2):
    f = parse_poly("x^3", g2)
    assert all(is_apn_over_extension(f, n) for n in range(2, 11))
    with pytest.raises(FieldTooLarge):
        is_apn_over_extension(f, 15)


def test_classify_exponent_table():
    golds = {3: 1, 5: 2, 9: 3, 17: 4}
    kasamis = {13: 2, 57: 3}
    for t, k in golds.items():
        cls = classify_exponent(t)
        assert (cls.kind, cls.k) == (GOLD, k)
    for t, k in kasamis.items():
        cls = classify_exponent(t)
        assert (cls.kind, cls.k) == (KASAMI, k)
    for t in (1, 2, 7, 11, 12, 15):
        assert classify_exponent(t).kind == NOT_EXCEPTIONAL


def test_surface_check_consistency(g8, g16):
    rng = random.Random(16)
    for ctx in (g8, g16):
        for _ in range(10):
            f = random_poly(rng, ctx, 10)
            consistent, witness = surface_point_check(f, ctx)
            assert consistent
            if witness is not None:
                x, y, z = witness
                assert len({x, y, z}) == 3  # off the three planes
                w = x + y + z
                assert f.eval(x) + f.eval(y) + f.eval(z) + f.eval(w) == ctx.zero


def test_surface_witness_is_lex_min(g8):
    f = parse_poly("x^4 + x^3", g8)  # not APN on GF(8)? check both branches
    consistent, witness = surface_point_check(f, g8)
    assert consistent
    again = surface_point_check(f, g8, workers=4)
    assert again == (consistent, witness)


def test_surface_check_cap(g2):
    with pytest.raises(FieldTooLarge):
        surface_point_check(parse_poly("x^3", g2), make_field(9))


def test_eval_table_dtype(g16):
    table = eval_table(parse_poly("x^3", g16), g16)
    assert len(table) == 16
    assert int(table[0]) == 0


def test_surface_verdict_agrees_with_spectrum(g2):
    rng = random.Random(16)
    fields = [make_field(n) for n in range(3, 7)]
    for _ in range(50):
        f = random_poly(rng, g2, 12)
        for big in fields:
            consistent, _ = surface_point_check(f, big)
            assert consistent
