import itertools
import random

import pytest

from relaynet.detnet import DetGains
from relaynet.dzs import MessagePair
from relaynet.dzz import (
    NeutSplit,
    dzz_ach_region,
    dzz_region,
    dzz_split,
    dzz_transmit,
    dzz_verify_all,
    zneut_alloc,
    zneut_region,
    zneut_transmit,
)
from relaynet.polytope import region_equal


def rand_zz(rng, hi):
    return DetGains.zz(
        rng.randint(0, hi), rng.randint(0, hi), rng.randint(0, hi),
        rng.randint(0, hi), rng.randint(0, hi), rng.randint(0, hi),
    )


def integer_points(region, hi):
    pts = []
    for r1 in range(hi + 1):
        for r2 in range(hi + 1):
            if region.contains((r1, r2)):
                pts.append((r1, r2))
    return pts


class TestRegion:
    def test_all_zero(self):
        reg = dzz_region(DetGains.zz(0, 0, 0, 0, 0, 0))
        assert reg.contains((0, 0))
        assert not reg.contains((1, 0))
        assert not reg.contains((0, 1))

    def test_square(self):
        # every bound is 2 or slack, so the region is the 2x2 box
        reg = dzz_region(DetGains.zz(2, 2, 2, 2, 2, 2))
        assert reg.vertices() == [(0, 0), (2, 0), (2, 2), (0, 2)]

    def test_parallel_rectangle(self):
        # m12 = n12 = 0 decouples the flows up to the sum constraints,
        # which are then m11 + m22 and n11 + n22: slack
        reg = dzz_region(DetGains.zz(3, 0, 1, 4, 0, 2))
        assert reg.vertices() == [(0, 0), (3, 0), (3, 1), (0, 1)]

    def test_sum_bound_bites(self):
        # second sum bound max(2,1) + (2-1)^+ + 0 = 3 cuts the 2x2 corner
        reg = dzz_region(DetGains.zz(2, 0, 2, 2, 1, 2))
        assert not reg.contains((2, 2))
        assert reg.contains((2, 1))
        assert reg.contains((1, 2))

    def test_rejects_cross_gain(self):
        with pytest.raises(ValueError):
            dzz_region(DetGains(1, 1, 1, 1, 1, 1, 1, 1))


def doubly_connected_count(n11, n12, n22, q):
    """Count G1 levels hearing both a live F1 level and a live F2 level.

    F2 keeps its top levels, the ones G2 hears, which is the bottom n22
    of its transmit range; levels above n22 never reach G2.
    """
    k = 0
    for i in range(q):
        from_f1 = q - n11 <= i
        f2 = i - (q - n12)
        from_f2 = 0 <= f2 < min(n12, n22)
        if from_f1 and from_f2:
            k += 1
    return k


class TestAlloc:
    def test_examples(self):
        a = zneut_alloc(4, 5, 6)
        assert (a.k0, a.k1, a.k2) == (4, 0, 1)
        a = zneut_alloc(3, 0, 3)
        assert (a.k0, a.k1, a.k2) == (0, 3, 0)
        a = zneut_alloc(3, 5, 1)
        assert (a.k0, a.k1, a.k2) == (0, 3, 1)
        a = zneut_alloc(2, 2, 2)
        assert (a.k0, a.k1, a.k2) == (2, 0, 0)

    def test_against_level_scan(self):
        for n11 in range(9):
            for n12 in range(9):
                for n22 in range(9):
                    q = max(n11, n12, n22, 1)
                    a = zneut_alloc(n11, n12, n22)
                    assert a.k0 == doubly_connected_count(n11, n12, n22, q)
                    assert a.k0 + a.k1 == n11
                    assert a.k0 + a.k2 == min(n12, n22)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            zneut_alloc(-1, 2, 2)


class TestLayerRegion:
    def test_symmetric(self):
        reg = zneut_region(2, 2, 2)
        assert reg.satisfied({"Y0": 2, "Y1": 0, "Y2": 0})
        assert not reg.satisfied({"Y0": 2, "Y1": 1, "Y2": 0})
        assert reg.satisfied({"Y0": 0, "Y1": 1, "Y2": 1})
        # the MAC at G1 caps the total at mu = 2
        assert not reg.satisfied({"Y0": 0, "Y1": 2, "Y2": 1})

    def test_no_cross(self):
        # n12 = 0 kills the functional stream entirely
        reg = zneut_region(3, 0, 3)
        assert not reg.satisfied({"Y0": 1, "Y1": 0, "Y2": 0})
        assert reg.satisfied({"Y0": 0, "Y1": 3, "Y2": 3})

    def test_staircase(self):
        reg = zneut_region(4, 5, 6)
        assert reg.satisfied({"Y0": 4, "Y1": 0, "Y2": 2})
        assert not reg.satisfied({"Y0": 4, "Y1": 0, "Y2": 3})
        assert not reg.satisfied({"Y0": 5, "Y1": 0, "Y2": 0})
        assert reg.satisfied({"Y0": 0, "Y1": 4, "Y2": 2})


def all_words(n):
    return list(itertools.product((0, 1), repeat=n))


class TestLayerTransmit:
    def test_trivial(self):
        (w1p, xor), (w2p, w2n) = zneut_transmit(
            (0, 0, 0), 1, NeutSplit(0, 0, 0), (), (), (), ()
        )
        assert (w1p, xor, w2p, w2n) == ((), (), (), ())

    def test_pure_functional_exhaustive(self):
        split = NeutSplit(2, 0, 0)
        for w1n in all_words(2):
            for w2n in all_words(2):
                (w1p, xor), (w2p, got) = zneut_transmit(
                    (2, 2, 2), 2, split, (), w1n, (), w2n
                )
                assert w1p == () and w2p == ()
                assert xor == tuple(a ^ b for a, b in zip(w1n, w2n))
                assert got == w2n

    def test_staircase_split(self):
        rng = random.Random(7)
        split = NeutSplit(4, 0, 1)
        for _ in range(40):
            w1n = tuple(rng.randint(0, 1) for _ in range(4))
            w2n = tuple(rng.randint(0, 1) for _ in range(4))
            w2p = (rng.randint(0, 1),)
            (_, xor), (got_p, got_n) = zneut_transmit(
                (4, 5, 6), 6, split, (), w1n, w2p, w2n
            )
            assert xor == tuple(a ^ b for a, b in zip(w1n, w2n))
            assert got_p == w2p and got_n == w2n

    def test_separate_levels_split(self):
        # no G1 level hears both, so every functional bit goes separately
        rng = random.Random(11)
        split = NeutSplit(3, 0, 0)
        assert zneut_alloc(3, 6, 3).k0 == 0
        for _ in range(40):
            w1n = tuple(rng.randint(0, 1) for _ in range(3))
            w2n = tuple(rng.randint(0, 1) for _ in range(3))
            (_, xor), (_, got) = zneut_transmit(
                (3, 6, 3), 6, split, (), w1n, (), w2n
            )
            assert xor == tuple(a ^ b for a, b in zip(w1n, w2n))
            assert got == w2n

    def test_outside_region(self):
        with pytest.raises(ValueError):
            zneut_transmit((2, 2, 2), 2, NeutSplit(2, 1, 0), (1,), (1, 1), (), (1, 1))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            zneut_transmit((2, 2, 2), 2, NeutSplit(2, 0, 0), (), (1,), (), (1, 1))

    def test_random_splits_random_bits(self):
        rng = random.Random(2026)
        done = 0
        while done < 120:
            n11, n12, n22 = (rng.randint(0, 6) for _ in range(3))
            reg = zneut_region(n11, n12, n22)
            y0 = rng.randint(0, 6)
            y1 = rng.randint(0, 6)
            y2 = rng.randint(0, 6)
            if not reg.satisfied({"Y0": y0, "Y1": y1, "Y2": y2}):
                continue
            done += 1
            q = max(n11, n12, n22, 1)
            w1n = tuple(rng.randint(0, 1) for _ in range(y0))
            w2n = tuple(rng.randint(0, 1) for _ in range(y0))
            w1p = tuple(rng.randint(0, 1) for _ in range(y1))
            w2p = tuple(rng.randint(0, 1) for _ in range(y2))
            (got1p, xor), (got2p, got2n) = zneut_transmit(
                (n11, n12, n22), q, (y0, y1, y2), w1p, w1n, w2p, w2n
            )
            assert got1p == w1p
            assert xor == tuple(a ^ b for a, b in zip(w1n, w2n))
            assert got2p == w2p
            assert got2n == w2n


class TestSplit:
    def test_prefers_functional(self):
        g = DetGains.zz(2, 2, 2, 2, 2, 2)
        assert dzz_split(g, 2, 2) == NeutSplit(2, 0, 0)

    def test_no_cross_needs_none(self):
        g = DetGains.zz(3, 0, 1, 4, 0, 2)
        assert dzz_split(g, 3, 1) == NeutSplit(0, 3, 1)

    def test_outside(self):
        g = DetGains.zz(2, 2, 2, 2, 2, 2)
        with pytest.raises(ValueError):
            dzz_split(g, 3, 0)


class TestTransmit:
    def test_zero_rates(self):
        g = DetGains.zz(1, 1, 1, 1, 1, 1)
        t = dzz_transmit(g, 0, 0, MessagePair((), ()))
        assert t.w1_hat == () and t.w2_hat == ()

    def test_square_corner_exhaustive(self):
        g = DetGains.zz(2, 2, 2, 2, 2, 2)
        for w1 in all_words(2):
            for w2 in all_words(2):
                t = dzz_transmit(g, 2, 2, MessagePair(w1, w2))
                assert t.w1_hat == w1
                assert t.w2_hat == w2

    def test_asymmetric_corner_exhaustive(self):
        g = DetGains.zz(3, 3, 3, 3, 2, 3)
        # first sum bound is 3 + 0 + 2 = 5, so (3, 2) sits on the face
        assert dzz_region(g).contains((3, 2))
        assert not dzz_region(g).contains((3, 3))
        for w1 in all_words(3):
            for w2 in all_words(2):
                t = dzz_transmit(g, 3, 2, MessagePair(w1, w2))
                assert t.w1_hat == w1
                assert t.w2_hat == w2

    def test_length_check(self):
        g = DetGains.zz(2, 2, 2, 2, 2, 2)
        with pytest.raises(ValueError):
            dzz_transmit(g, 2, 2, MessagePair((1,), (0, 1)))

    def test_outside_region(self):
        g = DetGains.zz(2, 2, 2, 2, 2, 2)
        with pytest.raises(ValueError):
            dzz_transmit(g, 3, 2, MessagePair((1, 1, 1), (0, 1)))

    def test_transcript_signals_consistent(self):
        g = DetGains.zz(3, 2, 3, 3, 2, 3)
        t = dzz_transmit(g, 3, 2, MessagePair((1, 0, 1), (1, 1)))
        q = g.q
        assert t.y["A"].n == q and t.y["D2"].n == q
        # D2 hears only B
        for i in range(q - g.n22):
            assert t.y["D2"].get(i) == 0

    def test_batch_matches_single(self):
        g = DetGains.zz(3, 1, 2, 2, 3, 3)
        reg = dzz_region(g)
        pts = integer_points(reg, 3)
        assert (2, 2) in pts
        assert dzz_verify_all(g, 2, 2)
        for w1 in all_words(2):
            for w2 in all_words(2):
                t = dzz_transmit(g, 2, 2, MessagePair(w1, w2))
                assert t.w1_hat == w1 and t.w2_hat == w2


class TestAchRegion:
    def test_square(self):
        g = DetGains.zz(2, 2, 2, 2, 2, 2)
        assert region_equal(dzz_ach_region(g), dzz_region(g))

    def test_exhaustive_small(self):
        for gains in itertools.product(range(3), repeat=6):
            g = DetGains.zz(*gains)
            assert region_equal(dzz_ach_region(g), dzz_region(g)), gains

    def test_random(self):
        rng = random.Random(5)
        for _ in range(60):
            g = rand_zz(rng, 5)
            assert region_equal(dzz_ach_region(g), dzz_region(g)), g


class TestZeroError:
    def test_random_instances_all_points(self):
        rng = random.Random(404)
        seen = 0
        for _ in range(35):
            g = rand_zz(rng, 4)
            reg = dzz_region(g)
            for (r1, r2) in integer_points(reg, 4):
                assert dzz_verify_all(g, r1, r2), (g, r1, r2)
                seen += 1
        assert seen > 100
