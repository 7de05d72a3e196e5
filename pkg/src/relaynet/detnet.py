"""Layered deterministic network model.

Two sources S1, S2 talk to destinations D1, D2 through relays A, B. Layer 1
gains m_ij (source j -> relay i, relay 1 = A) and layer 2 gains n_ij
(relay j -> destination i) are integer bit-level exponents. A link of
strength a over q levels acts as the down-shift matrix J^(q-a).

Zero patterns: ZS keeps m21 = n12 = 0 (Z first hop, S second hop); ZZ keeps
m21 = n21 = 0 (Z in both hops); XX constrains nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .gf2 import GF2Matrix, GF2Vector, block_matrix, shift_matrix

GAIN_FIELDS = ("m11", "m12", "m21", "m22", "n11", "n12", "n21", "n22")

# directed links: (sender, receiver, gain field)
EDGES = (
    ("S1", "A", "m11"),
    ("S2", "A", "m12"),
    ("S1", "B", "m21"),
    ("S2", "B", "m22"),
    ("A", "D1", "n11"),
    ("B", "D1", "n12"),
    ("A", "D2", "n21"),
    ("B", "D2", "n22"),
)

TOPOLOGY_ZEROS = {"ZS": ("m21", "n12"), "ZZ": ("m21", "n21"), "XX": ()}


@dataclass(frozen=True)
class DetGains:
    """Integer channel exponents plus the level count q (defaults to the max exponent)."""

    m11: int
    m12: int
    m21: int
    m22: int
    n11: int
    n12: int
    n21: int
    n22: int
    q: int | None = None

    def __post_init__(self):
        exps = [getattr(self, f) for f in GAIN_FIELDS]
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be nonnegative")
        if self.q is None:
            object.__setattr__(self, "q", max(exps, default=0))
        if self.q < 0 or any(e > self.q for e in exps):
            raise ValueError("every exponent must be <= q")

    @classmethod
    def zs(cls, m11, m12, m22, n11, n21, n22, q=None):
        return cls(m11, m12, 0, m22, n11, 0, n21, n22, q)

    @classmethod
    def zz(cls, m11, m12, m22, n11, n12, n22, q=None):
        return cls(m11, m12, 0, m22, n11, n12, 0, n22, q)

    def gain(self, sender: str, receiver: str) -> int:
        for u, v, f in EDGES:
            if u == sender and v == receiver:
                return getattr(self, f)
        raise KeyError((sender, receiver))

    def topology_ok(self, kind: str) -> bool:
        if kind not in TOPOLOGY_ZEROS:
            raise ValueError("unknown topology %r" % kind)
        return all(getattr(self, f) == 0 for f in TOPOLOGY_ZEROS[kind])


def check_topology(g: DetGains, kind: str) -> None:
    if not g.topology_ok(kind):
        bad = [f for f in TOPOLOGY_ZEROS[kind] if getattr(g, f) != 0]
        raise ValueError("%s topology requires %s = 0" % (kind, ", ".join(bad)))


def quantize_gain(h) -> int:
    """Bit-level exponent of a real gain: ceil(log2 h), clamped below at 0.

    Gains at or below 1 quantize to 0, which removes the link. Exact at
    powers of two even when h arrives as a float or Fraction.
    """
    if isinstance(h, int):
        if h <= 0:
            raise ValueError("gain must be positive")
        return (h - 1).bit_length()
    if isinstance(h, Fraction):
        if h <= 0:
            raise ValueError("gain must be positive")
        e = h.numerator.bit_length() - h.denominator.bit_length()
        while Fraction(2) ** (e - 1) >= h:
            e -= 1
        while Fraction(2) ** e < h:
            e += 1
        return max(e, 0)
    h = float(h)
    if not h > 0 or math.isinf(h):
        raise ValueError("gain must be positive and finite")
    e = math.ceil(math.log2(h))
    while e > -1080 and 2.0 ** (e - 1) >= h:
        e -= 1
    while 2.0**e < h:
        e += 1
    return max(e, 0)


def propagate_layer(gains, q: int, x1: GF2Vector, x2: GF2Vector):
    """One noiseless layer: y1 = J^(q-a11) x1 + J^(q-a12) x2, y2 likewise.

    `gains` is (a11, a12, a21, a22) with a_ij the strength from transmitter j
    to receiver i.
    """
    a11, a12, a21, a22 = gains
    if x1.n != q or x2.n != q:
        raise ValueError("inputs must have length q")
    y1 = shift_matrix(q, a11).apply(x1) ^ shift_matrix(q, a12).apply(x2)
    y2 = shift_matrix(q, a21).apply(x1) ^ shift_matrix(q, a22).apply(x2)
    return y1, y2


def shift_xor(q: int, parts):
    """XOR of down-shifted level lists; parts are (levels, gain) pairs.

    Level entries may be 0/1 ints or wide ints used as XOR bit planes, one
    plane column per simulated message index."""
    y = [0] * q
    for x, a in parts:
        for j in range(a):
            y[j + q - a] ^= x[j]
    return y


_CUT_NODES = frozenset({"S1", "S2", "A", "B"})


def validate_cut(g: DetGains, cut) -> frozenset:
    """Check a source-side node set. Destinations stay sink-side, at least
    one source is inside, and no positive link crosses into the set."""
    cut = frozenset(cut)
    if cut & {"D1", "D2"}:
        raise ValueError("destinations cannot be on the source side")
    if cut - _CUT_NODES:
        raise ValueError("unknown nodes %r" % sorted(cut - _CUT_NODES))
    if not cut & {"S1", "S2"}:
        raise ValueError("cut must contain a source")
    for u, v, f in EDGES:
        if v in cut and u not in cut and getattr(g, f) > 0:
            raise ValueError("invalid cut: %s -> %s enters the source side" % (u, v))
    return cut


def cut_transfer_matrix(g: DetGains, cut) -> GF2Matrix:
    """Single-letter transfer matrix from the cut's transmit signals to the
    sink-side receive signals, as a block matrix of shift matrices."""
    cut = validate_cut(g, cut)
    gain = {(u, v): getattr(g, f) for u, v, f in EDGES}
    senders = [n for n in ("S1", "S2", "A", "B") if n in cut]
    receivers = [n for n in ("A", "B", "D1", "D2") if n not in cut]
    senders = [s for s in senders if any((s, r) in gain for r in receivers)]
    receivers = [r for r in receivers if any((s, r) in gain for s in senders)]
    if not senders or not receivers:
        return GF2Matrix(0, 0)
    blocks = [
        [
            shift_matrix(g.q, gain[(s, r)]) if (s, r) in gain else None
            for s in senders
        ]
        for r in receivers
    ]
    return block_matrix(blocks)


def cut_value(g: DetGains, cut) -> int:
    """GF(2) rank of the cut's transfer matrix (bits per use across the cut)."""
    return cut_transfer_matrix(g, cut).rank()


@dataclass(frozen=True)
class Transcript:
    """One channel use: per-node transmit/receive signals and decoded bits."""

    x: dict
    y: dict
    w1_hat: tuple
    w2_hat: tuple
