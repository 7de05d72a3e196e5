"""One-dimensional lattice Monte Carlo for the ZZ neutralization chain.

Both sources use one common q-point PAM constellation (a zero-mean scaled
integer lattice).  Relay A decodes the modulo-reduced sum of the two
functional points, relay B negates its own, and destination 1 receives the
difference, which lands back on the fine lattice exactly at the intended
point.  Private streams ride on separate PAM layers, peeled off in the
fixed strongest-first order at every receiver; whatever sits below a decode
step is left in place as interference, so exact zero-noise decoding needs
the uncancelled layers to stay inside half a decision cell.

A block is one channel use.  Every block draws from its own counter-based
stream keyed on (seed, block), so results do not depend on how blocks are
scheduled.
"""

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import GaussGains, _zz_layer_caps

__all__ = ["LatticeCode", "SimConfig", "simulate_zz_lattice", "noise_sweep"]


class LatticeCode:
    """q equally likely points step*(i - (q-1)/2): zero mean, unit power."""

    def __init__(self, q):
        q = int(q)
        if q < 2:
            raise ValueError("need at least two points")
        self.q = q
        self.step = math.sqrt(12.0 / (q * q - 1.0))
        self.half = (q - 1) / 2.0
        # phi(u, v) == (u + v - sum_offset) mod q
        self.sum_offset = (-self.reduce_sum(0)) % q

    def point(self, i) -> float:
        return self.step * (i - self.half)

    def indices(self):
        return range(self.q)

    # -- quantizers (half-up rounding keeps ties deterministic) -------------

    def decode_point(self, y, scale=1.0) -> int:
        i = math.floor(y / (scale * self.step) + self.half + 0.5)
        return min(max(i, 0), self.q - 1)

    def decode_pair_sum(self, y, scale=1.0) -> int:
        """Raw index u+v of an unreduced sum of two points."""
        k = math.floor(y / (scale * self.step) + 2.0 * self.half + 0.5)
        return min(max(k, 0), 2 * self.q - 2)

    def pair_sum_point(self, k) -> float:
        return self.step * (k - 2.0 * self.half)

    def decode_diff(self, y, scale=1.0) -> int:
        """Integer index of a difference of two points (it sits on the
        unshifted lattice)."""
        t = math.floor(y / (scale * self.step) + 0.5)
        return min(max(t, -(self.q - 1)), self.q - 1)

    # -- modulo-lattice arithmetic -------------------------------------------

    def reduce_sum(self, k) -> int:
        """Constellation index of the sum point step*(k - (q-1)), reduced
        modulo the coarse lattice of span q*step."""
        return math.floor(k - self.half + 0.5) % self.q

    def phi(self, u, v) -> int:
        return self.reduce_sum(u + v)

    def neg(self, v) -> int:
        """Index of the exact negation of point v."""
        return self.q - 1 - v

    def func_from_diff(self, t) -> int:
        """Recover u from a decoded difference phi(u, v) - v."""
        return (t + self.sum_offset) % self.q


def _derive_alloc(direct, cross, r0, r1, r2):
    """Default split for one hop: the functional stream is power-matched at
    the sum receiver with one unit of received headroom, sender 2's private
    hides below that receiver's noise floor."""
    if r0 > 0:
        p0 = min(direct, cross) - 1.0
        if p0 <= 0.0:
            raise ValueError("no received headroom for the functional stream")
        a0, b0 = p0 / direct, p0 / cross
    else:
        a0 = b0 = 0.0
    a1 = 1.0 - a0 if r1 > 0 else 0.0
    b2 = min(1.0 / cross, 1.0 - b0) if r2 > 0 else 0.0
    return (a0, a1, b0, 0.0, b2)


def _check_alloc(tag, alloc, direct, cross, r0, r1, r2):
    a0, a1, b0, b1, b2 = alloc
    if min(alloc) < 0.0:
        raise ValueError("%s: negative power" % tag)
    if a0 + a1 > 1.0 + 1e-12 or b0 + b1 + b2 > 1.0 + 1e-12:
        raise ValueError("%s: power budget exceeded" % tag)
    if r0 > 0:
        if a0 <= 0.0 or b0 <= 0.0:
            raise ValueError("%s: functional rate needs power on both senders" % tag)
        if abs(direct * a0 - cross * b0) > 1e-9 * max(direct * a0, 1.0):
            raise ValueError("%s: functional layers not power matched" % tag)
    if r1 > 0 and a1 <= 0.0:
        raise ValueError("%s: private rate 1 carries no power" % tag)
    if r2 > 0 and b1 <= 0.0 and b2 <= 0.0:
        raise ValueError("%s: private rate 2 carries no power" % tag)


@dataclass(frozen=True)
class SimConfig:
    """Gains, rates (bits), noise variance, and optional layer-1 powers.

    alpha0/alpha1 belong to sender 1 (functional, private), beta0/beta1/beta2
    to sender 2 (functional, upper private slot, lower private slot).  When
    left at None the split is derived from the gains; layer 2 always derives
    its own split the same way from the h gains.
    """

    g11: float
    g12: float
    g22: float
    h11: float
    h12: float
    h22: float
    q: int
    r0: int
    r1: int
    r2: int
    noise: float
    blocks: int
    seed: int
    alpha0: float = None
    alpha1: float = None
    beta0: float = None
    beta1: float = None
    beta2: float = None

    def __post_init__(self):
        for name in ("g11", "g12", "g22", "h11", "h12", "h22"):
            if getattr(self, name) < 1.0:
                raise ValueError("gain %s below the unit-power regime" % name)
        if self.q < 2 or self.blocks <= 0:
            raise ValueError("need q >= 2 and blocks > 0")
        if min(self.r0, self.r1, self.r2) < 0 or self.noise < 0.0:
            raise ValueError("rates and noise must be nonnegative")
        if 2 ** self.r0 > self.q:
            raise ValueError("functional alphabet 2^r0 exceeds the lattice size")

    def gains(self) -> GaussGains:
        return GaussGains.zz(self.g11, self.g12, self.g22, self.h11, self.h12, self.h22)

    def rate_caps(self):
        """The four layered-scheme caps these rates are checked against."""
        return _zz_layer_caps(self.gains())

    def validate(self):
        c1, c2, c3, c4 = self.rate_caps()
        if (
            self.r0 > c1 + 1e-9
            or self.r0 + self.r1 > c2 + 1e-9
            or self.r0 + self.r2 > c3 + 1e-9
            or self.r0 + self.r1 + self.r2 > c4 + 1e-9
        ):
            raise ValueError(
                "rates (%d,%d,%d) outside the layered caps %r"
                % (self.r0, self.r1, self.r2, (c1, c2, c3, c4))
            )
        _check_alloc(
            "layer1", self.layer1_alloc(), self.g11, self.g12, self.r0, self.r1, self.r2
        )
        _check_alloc(
            "layer2", self.layer2_alloc(), self.h11, self.h12, self.r0, self.r1, self.r2
        )

    def layer1_alloc(self):
        fields = (self.alpha0, self.alpha1, self.beta0, self.beta1, self.beta2)
        if all(v is None for v in fields):
            return _derive_alloc(self.g11, self.g12, self.r0, self.r1, self.r2)
        if any(v is None for v in fields):
            raise ValueError("set all five layer-1 powers or none")
        return tuple(float(v) for v in fields)

    def layer2_alloc(self):
        fields = (self.alpha0, self.alpha1, self.beta0, self.beta1, self.beta2)
        if all(v is None for v in fields):
            return _derive_alloc(self.h11, self.h12, self.r0, self.r1, self.r2)
        # relay B keeps sender 2's slot pattern; relay A rematches the
        # functional power to the second-hop gains
        _, a1, b0, b1, b2 = self.layer1_alloc()
        if self.r0 > 0:
            p0 = self.h12 * b0 / self.h11
            if p0 > 1.0 + 1e-12:
                raise ValueError("relay A cannot power-match the functional stream on hop 2")
        else:
            p0 = 0.0
        p1 = min(a1, 1.0 - p0) if self.r1 > 0 else 0.0
        return (p0, p1, b0, b1, b2)

    def private2_split(self):
        """How sender 2's r2 bits divide over its two private slots."""
        _, _, _, b1, b2 = self.layer1_alloc()
        if self.r2 == 0:
            return (0, 0)
        if b1 > 0.0 and b2 > 0.0:
            return (self.r2 - self.r2 // 2, self.r2 // 2)
        if b1 > 0.0:
            return (self.r2, 0)
        return (0, self.r2)

    @classmethod
    def from_dict(cls, d: dict) -> "SimConfig":
        d = dict(d)
        gains = d.pop("gains", None)
        if gains is not None:
            if len(gains) != 6:
                raise ValueError("gains must be [g11, g12, g22, h11, h12, h22]")
            for name, v in zip(("g11", "g12", "g22", "h11", "h12", "h22"), gains):
                d[name] = v
        rates = d.pop("rates", None)
        if rates is not None:
            if len(rates) != 3:
                raise ValueError("rates must be [r0, r1, r2]")
            d["r0"], d["r1"], d["r2"] = rates
        try:
            return cls(**d)
        except TypeError as exc:
            raise ValueError("bad config: %s" % exc) from None


def _block_rng(seed, idx):
    return np.random.Generator(np.random.Philox(key=[seed, idx]))


def _schedule(parts):
    """Decode order at one receiver: live layers, strongest received
    power first (stable on ties)."""
    live = [(pw, name) for pw, name in parts if pw > 0.0]
    live.sort(key=lambda t: -t[0])
    return tuple(name for _, name in live)


def simulate_zz_lattice(cfg: SimConfig):
    """Run the two-hop chain and return (D1, D2) block error rates."""
    cfg.validate()
    a0, a1, b0, b1, b2 = cfg.layer1_alloc()
    p0, p1, q0, q1, q2 = cfg.layer2_alloc()
    r2a, r2b = cfg.private2_split()

    code0 = LatticeCode(cfg.q) if cfg.r0 > 0 else None
    code1 = LatticeCode(2 ** cfg.r1) if cfg.r1 > 0 else None
    code2a = LatticeCode(2 ** r2a) if r2a > 0 else None
    code2b = LatticeCode(2 ** r2b) if r2b > 0 else None

    rg11, rg12, rg22 = map(math.sqrt, (cfg.g11, cfg.g12, cfg.g22))
    rh11, rh12, rh22 = map(math.sqrt, (cfg.h11, cfg.h12, cfg.h22))
    s_sum = rg11 * math.sqrt(a0)  # == rg12*sqrt(b0) by the matching check
    d_sum = rh11 * math.sqrt(p0)
    sigma = math.sqrt(cfg.noise)

    # per-receiver successive-decoding schedules; the sum/difference of two
    # aligned functional layers counts double.  Sender 2's lower private slot
    # stays below relay A and destination 1 as noise.
    sched_a = _schedule(
        [
            (cfg.g12 * b1 if code2a else 0.0, "top"),
            (2.0 * cfg.g11 * a0 if code0 else 0.0, "sum"),
            (cfg.g11 * a1 if code1 else 0.0, "w1"),
        ]
    )
    sched_b = _schedule(
        [
            (cfg.g22 * b1 if code2a else 0.0, "top"),
            (cfg.g22 * b0 if code0 else 0.0, "func"),
            (cfg.g22 * b2 if code2b else 0.0, "bot"),
        ]
    )
    sched_d1 = _schedule(
        [
            (cfg.h12 * q1 if code2a else 0.0, "top"),
            (2.0 * cfg.h11 * p0 if code0 else 0.0, "diff"),
            (cfg.h11 * p1 if code1 else 0.0, "w1"),
        ]
    )
    sched_d2 = _schedule(
        [
            (cfg.h22 * q1 if code2a else 0.0, "top"),
            (cfg.h22 * q0 if code0 else 0.0, "func"),
            (cfg.h22 * q2 if code2b else 0.0, "bot"),
        ]
    )

    highs = [2 ** cfg.r0, 2 ** cfg.r0, 2 ** cfg.r1, 2 ** r2a, 2 ** r2b]
    bad1 = bad2 = 0
    for blk in range(cfg.blocks):
        rng = _block_rng(cfg.seed, blk)
        u1m, u2m, w1, w2a, w2b = (int(v) for v in rng.integers(0, highs))
        z = rng.normal(0.0, sigma, 4) if sigma > 0.0 else (0.0,) * 4

        x1 = x2 = 0.0
        if code0:
            x1 += math.sqrt(a0) * code0.point(u1m)
            x2 += math.sqrt(b0) * code0.point(u2m)
        if code1:
            x1 += math.sqrt(a1) * code1.point(w1)
        if code2a:
            x2 += math.sqrt(b1) * code2a.point(w2a)
        if code2b:
            x2 += math.sqrt(b2) * code2b.point(w2b)

        # relay A hears both sources, relay B only source 2
        res = rg11 * x1 + rg12 * x2 + z[0]
        phi_a = w1_a = 0
        for part in sched_a:
            if part == "top":
                sc = rg12 * math.sqrt(b1)
                i = code2a.decode_point(res, sc)
                res -= sc * code2a.point(i)
            elif part == "sum":
                k = code0.decode_pair_sum(res, s_sum)
                res -= s_sum * code0.pair_sum_point(k)
                phi_a = code0.reduce_sum(k)
            else:
                sc = rg11 * math.sqrt(a1)
                w1_a = code1.decode_point(res, sc)
                res -= sc * code1.point(w1_a)

        res = rg22 * x2 + z[1]
        w2a_b = u2_b = w2b_b = 0
        for part in sched_b:
            if part == "top":
                sc = rg22 * math.sqrt(b1)
                w2a_b = code2a.decode_point(res, sc)
                res -= sc * code2a.point(w2a_b)
            elif part == "func":
                sc = rg22 * math.sqrt(b0)
                u2_b = code0.decode_point(res, sc)
                res -= sc * code0.point(u2_b)
            else:
                w2b_b = code2b.decode_point(res, rg22 * math.sqrt(b2))

        # second hop: A forwards the reduced sum, B the negated point
        xa = xb = 0.0
        if code0:
            xa += math.sqrt(p0) * code0.point(phi_a)
            xb += math.sqrt(q0) * code0.point(code0.neg(u2_b))
        if code1:
            xa += math.sqrt(p1) * code1.point(w1_a)
        if code2a:
            xb += math.sqrt(q1) * code2a.point(w2a_b)
        if code2b:
            xb += math.sqrt(q2) * code2b.point(w2b_b)

        res = rh11 * xa + rh12 * xb + z[2]
        u1_d1 = w1_d1 = 0
        for part in sched_d1:
            if part == "top":
                sc = rh12 * math.sqrt(q1)
                i = code2a.decode_point(res, sc)
                res -= sc * code2a.point(i)
            elif part == "diff":
                t = code0.decode_diff(res, d_sum)
                res -= d_sum * code0.step * t
                u1_d1 = code0.func_from_diff(t)
            else:
                sc = rh11 * math.sqrt(p1)
                w1_d1 = code1.decode_point(res, sc)
                res -= sc * code1.point(w1_d1)
        if (code0 and u1_d1 != u1m) or (code1 and w1_d1 != w1):
            bad1 += 1

        res = rh22 * xb + z[3]
        w2a_d2 = u2_d2 = w2b_d2 = 0
        for part in sched_d2:
            if part == "top":
                sc = rh22 * math.sqrt(q1)
                w2a_d2 = code2a.decode_point(res, sc)
                res -= sc * code2a.point(w2a_d2)
            elif part == "func":
                sc = rh22 * math.sqrt(q0)
                m = code0.decode_point(res, sc)
                res -= sc * code0.point(m)
                u2_d2 = code0.neg(m)
            else:
                w2b_d2 = code2b.decode_point(res, rh22 * math.sqrt(q2))
        if (
            (code0 and u2_d2 != u2m)
            or (code2a and w2a_d2 != w2a)
            or (code2b and w2b_d2 != w2b)
        ):
            bad2 += 1

    return (bad1 / cfg.blocks, bad2 / cfg.blocks)


def noise_sweep(cfg: SimConfig, noises):
    """Rerun one config at several noise variances; same (seed, block)
    streams each time, so the message draws are shared across points."""
    rows = []
    for nv in noises:
        c = SimConfig(
            cfg.g11, cfg.g12, cfg.g22, cfg.h11, cfg.h12, cfg.h22,
            cfg.q, cfg.r0, cfg.r1, cfg.r2, float(nv), cfg.blocks, cfg.seed,
            cfg.alpha0, cfg.alpha1, cfg.beta0, cfg.beta1, cfg.beta2,
        )
        e1, e2 = simulate_zz_lattice(c)
        rows.append((float(nv), cfg.r0, cfg.r1, cfg.r2, e1, e2))
    return rows
