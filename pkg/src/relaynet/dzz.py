"""Deterministic ZZ network: capacity region, the single-layer
Z-neutralization scheme, and the two-layer XOR-cancellation codec.

A Z-neutralization layer has transmitters F1, F2 and receivers G1, G2 with
gains (n11, n12, n22); F1 -> G2 is absent. F1 and F2 carry private streams
for G1 and G2 plus a shared functional stream: G1 must learn the XOR of the
functional bits, G2 the second transmitter's copy. Stacking two such layers
lets the second XOR cancel the first, so D1 recovers flow 1 untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

from .detnet import DetGains, Transcript, check_topology, shift_xor
from .dzs import MessagePair, _index_planes
from .gf2 import GF2Vector
from .polytope import LinearSystem, RateRegion2D, project2d


def _pos(x):
    return x if x > 0 else 0


def dzz_region(g: DetGains) -> RateRegion2D:
    """The six exact half-spaces bounding (R1, R2)."""
    check_topology(g, "ZZ")
    rows = [
        (1, 0, g.m11),
        (0, 1, g.m22),
        (1, 0, g.n11),
        (0, 1, g.n22),
        (1, 1, max(g.m11, g.m12) + _pos(g.m22 - g.m12) + g.n12),
        (1, 1, max(g.n11, g.n12) + _pos(g.n22 - g.n12) + g.m12),
    ]
    return RateRegion2D(rows)


# -- single z-neutralization layer --------------------------------------------

@dataclass(frozen=True)
class NeutSplit:
    """Functional rate y0 plus private rates y1 (to G1) and y2 (to G2)."""

    y0: int
    y1: int
    y2: int

    def __post_init__(self):
        if min(self.y0, self.y1, self.y2) < 0:
            raise ValueError("rates must be nonnegative")


@dataclass(frozen=True)
class LevelAlloc:
    """Counts of G1 receive levels: doubly connected, F1-only, F2-only."""

    k0: int
    k1: int
    k2: int


def zneut_alloc(n11: int, n12: int, n22: int) -> LevelAlloc:
    if min(n11, n12, n22) < 0:
        raise ValueError("gains must be nonnegative")
    k0 = min(n11, n12, n22, _pos(n11 + n22 - n12))
    return LevelAlloc(k0, n11 - k0, min(n12, n22) - k0)


def zneut_region(n11: int, n12: int, n22: int) -> LinearSystem:
    """Achievable (y0, y1, y2) for one layer."""
    lam = min(n11, n12, n22)
    mu = max(n11, n12, n22, n11 + n22 - n12)
    s = LinearSystem(["Y0", "Y1", "Y2"])
    s.add({"Y0": 1}, lam)
    s.add({"Y0": 1, "Y1": 1}, n11)
    s.add({"Y0": 1, "Y2": 1}, n22)
    s.add({"Y0": 1, "Y1": 1, "Y2": 1}, mu)
    return s


@dataclass(frozen=True)
class ZneutPlan:
    """Explicit transmit-level assignment for one layer and one split.

    Functional bit i rides the doubly-connected pair d_func[i] (colliding at
    G1, which therefore reads the XOR off a single level); overflow bits
    ride sep_func[i] = (F1 level, F2 level) heard on distinct G1 levels and
    XORed after reception. p1_levels / p2_levels carry the private bits.
    """

    gains: tuple
    q: int
    split: NeutSplit
    d_func: tuple
    sep_func: tuple
    p1_levels: tuple
    p2_levels: tuple


def zneut_plan(gains, q: int, split) -> ZneutPlan:
    n11, n12, n22 = gains
    if max(n11, n12, n22) > q:
        raise ValueError("gains exceed q")
    if not isinstance(split, NeutSplit):
        split = NeutSplit(*split)
    y0, y1, y2 = split.y0, split.y1, split.y2
    if not zneut_region(*gains).satisfied({"Y0": y0, "Y1": y1, "Y2": y2}):
        raise ValueError("split %s outside the layer region" % (split,))
    alloc = zneut_alloc(*gains)
    eff = min(n12, n22)
    # G1 receive levels hearing both transmitters, in (F1, F2) coordinates
    lo = max(q - n11, q - n12)
    hi = min(q, q - n12 + eff)
    d_pairs = [(i - (q - n11), i - (q - n12)) for i in range(lo, hi)]
    assert len(d_pairs) == alloc.k0
    d_f1 = {f1 for f1, _ in d_pairs}
    d_f2 = {f2 for _, f2 in d_pairs}
    a1 = [j for j in range(n11) if j not in d_f1]
    a2 = [j for j in range(eff) if j not in d_f2]
    extra = list(range(eff, n22))

    u = min(y0, alloc.k0)
    o = y0 - u
    p1a = min(y1, alloc.k1 - o)
    p1d = y1 - p1a
    p2a = min(y2, alloc.k2 - o)
    p2e = min(y2 - p2a, len(extra))
    p2d = y2 - p2a - p2e
    # fits by the region rows; a failure here means the split check is wrong
    assert o <= min(alloc.k1, alloc.k2) and u + p1d + p2d <= alloc.k0

    d_func = tuple(d_pairs[:u])
    sep_func = tuple(zip(a1[:o], a2[:o]))
    p1_levels = tuple(a1[o : o + p1a]) + tuple(
        f1 for f1, _ in d_pairs[u : u + p1d]
    )
    p2_levels = tuple(a2[o : o + p2a]) + tuple(extra[:p2e]) + tuple(
        f2 for _, f2 in d_pairs[u + p1d : u + p1d + p2d]
    )
    return ZneutPlan((n11, n12, n22), q, split, d_func, sep_func, p1_levels, p2_levels)


def zneut_encode(plan: ZneutPlan, w1p, w1n, w2p, w2n):
    """Place message bits on transmit levels; returns (x1, x2) level lists."""
    x1 = [0] * plan.q
    x2 = [0] * plan.q
    for i, (f1, f2) in enumerate(plan.d_func):
        x1[f1] = w1n[i]
        x2[f2] = w2n[i]
    base = len(plan.d_func)
    for i, (f1, f2) in enumerate(plan.sep_func):
        x1[f1] = w1n[base + i]
        x2[f2] = w2n[base + i]
    for i, j in enumerate(plan.p1_levels):
        x1[j] = w1p[i]
    for i, j in enumerate(plan.p2_levels):
        x2[j] = w2p[i]
    return x1, x2


def zneut_decode_g1(plan: ZneutPlan, y1):
    """G1 reads its private bits and the functional XOR stream."""
    n11, n12, _ = plan.gains
    q = plan.q
    w1p = tuple(y1[j + q - n11] for j in plan.p1_levels)
    xor = [y1[f1 + q - n11] for f1, _ in plan.d_func]
    xor += [y1[f1 + q - n11] ^ y1[f2 + q - n12] for f1, f2 in plan.sep_func]
    return w1p, tuple(xor)


def zneut_decode_g2(plan: ZneutPlan, y2):
    """G2 reads its private bits and the second functional copy."""
    _, _, n22 = plan.gains
    q = plan.q
    w2p = tuple(y2[j + q - n22] for j in plan.p2_levels)
    w2n = [y2[f2 + q - n22] for _, f2 in plan.d_func]
    w2n += [y2[f2 + q - n22] for _, f2 in plan.sep_func]
    return w2p, tuple(w2n)


def zneut_transmit(gains, q: int, split, w1p, w1n, w2p, w2n):
    """One shot over a single layer.

    Returns ((W1P, W1N^W2N) as seen by G1, (W2P, W2N) as seen by G2).
    """
    plan = zneut_plan(gains, q, split)
    s = plan.split
    if (len(w1p), len(w1n), len(w2p), len(w2n)) != (s.y1, s.y0, s.y2, s.y0):
        raise ValueError("bit-string lengths must match the split")
    x1, x2 = zneut_encode(plan, w1p, w1n, w2p, w2n)
    n11, n12, n22 = plan.gains
    y1 = shift_xor(q, [(x1, n11), (x2, n12)])
    y2 = shift_xor(q, [(x2, n22)])
    return zneut_decode_g1(plan, y1), zneut_decode_g2(plan, y2)


# -- two-layer codec ----------------------------------------------------------

def dzz_ach_region(g: DetGains) -> RateRegion2D:
    """Projection of the split-rate system feasible for both layers."""
    check_topology(g, "ZZ")
    lam_m = min(g.m11, g.m12, g.m22)
    mu_m = max(g.m11, g.m12, g.m22, g.m11 + g.m22 - g.m12)
    lam_n = min(g.n11, g.n12, g.n22)
    mu_n = max(g.n11, g.n12, g.n22, g.n11 + g.n22 - g.n12)
    s = LinearSystem(["R1", "R2", "Y0"])
    # y1 = R1 - Y0 and y2 = R2 - Y0 stay nonnegative
    s.add({"Y0": 1, "R1": -1}, 0)
    s.add({"Y0": 1, "R2": -1}, 0)
    s.add({"Y0": 1}, min(lam_m, lam_n))
    s.add({"R1": 1}, min(g.m11, g.n11))
    s.add({"R2": 1}, min(g.m22, g.n22))
    s.add({"R1": 1, "R2": 1, "Y0": -1}, min(mu_m, mu_n))
    return project2d(s, ("R1", "R2"))


def dzz_split(g: DetGains, r1: int, r2: int) -> NeutSplit:
    """First split feasible for both layers, scanning y0 downward."""
    check_topology(g, "ZZ")
    if not dzz_region(g).contains((r1, r2)):
        raise ValueError("rate pair (%s, %s) is outside the region" % (r1, r2))
    reg_m = zneut_region(g.m11, g.m12, g.m22)
    reg_n = zneut_region(g.n11, g.n12, g.n22)
    lam = min(g.m11, g.m12, g.m22, g.n11, g.n12, g.n22, r1, r2)
    for y0 in range(lam, -1, -1):
        asg = {"Y0": y0, "Y1": r1 - y0, "Y2": r2 - y0}
        if reg_m.satisfied(asg) and reg_n.satisfied(asg):
            return NeutSplit(y0, r1 - y0, r2 - y0)
    raise RuntimeError(
        "no feasible split for in-region point (%s, %s)" % (r1, r2)
    )


def _dzz_run(g: DetGains, split: NeutSplit, w1, w2):
    q = g.q
    y0 = split.y0
    w1n, w1p = list(w1[:y0]), list(w1[y0:])
    w2n, w2p = list(w2[:y0]), list(w2[y0:])
    plan1 = zneut_plan((g.m11, g.m12, g.m22), q, split)
    plan2 = zneut_plan((g.n11, g.n12, g.n22), q, split)
    x_s1, x_s2 = zneut_encode(plan1, w1p, w1n, w2p, w2n)
    y_a = shift_xor(q, [(x_s1, g.m11), (x_s2, g.m12)])
    y_b = shift_xor(q, [(x_s2, g.m22)])
    w1p_a, t_a = zneut_decode_g1(plan1, y_a)
    w2p_b, w2n_b = zneut_decode_g2(plan1, y_b)
    x_a, x_b = zneut_encode(plan2, w1p_a, t_a, w2p_b, w2n_b)
    y_d1 = shift_xor(q, [(x_a, g.n11), (x_b, g.n12)])
    y_d2 = shift_xor(q, [(x_b, g.n22)])
    w1p_d, w1n_d = zneut_decode_g1(plan2, y_d1)
    w2p_d, w2n_d = zneut_decode_g2(plan2, y_d2)
    sig = {"S1": x_s1, "S2": x_s2, "A": x_a, "B": x_b}
    rcv = {"A": y_a, "B": y_b, "D1": y_d1, "D2": y_d2}
    return sig, rcv, tuple(w1n_d) + tuple(w1p_d), tuple(w2n_d) + tuple(w2p_d)


def dzz_transmit(g: DetGains, r1: int, r2: int, msgs: MessagePair) -> Transcript:
    """Zero-error transmission; the second layer's XOR cancels the first."""
    if len(msgs.w1) != r1 or len(msgs.w2) != r2:
        raise ValueError("message lengths must match the rates")
    split = dzz_split(g, r1, r2)
    sig, rcv, w1_hat, w2_hat = _dzz_run(g, split, msgs.w1, msgs.w2)
    return Transcript(
        x={k: GF2Vector.fromlist(v) for k, v in sig.items()},
        y={k: GF2Vector.fromlist(v) for k, v in rcv.items()},
        w1_hat=w1_hat,
        w2_hat=w2_hat,
    )


def dzz_verify_all(g: DetGains, r1: int, r2: int) -> bool:
    """Exhaustive zero-error check of every message pair via bit planes."""
    split = dzz_split(g, r1, r2)
    planes = _index_planes(r1 + r2)
    w1, w2 = planes[:r1], planes[r1:]
    _, _, w1_hat, w2_hat = _dzz_run(g, split, w1, w2)
    return list(w1_hat) == w1 and list(w2_hat) == w2
