"""Gaussian two-hop interference regions and constant-gap certification.

Gains are power gains, rates are bits per channel use, so every bound is a
half-log2.  Outer bounds come straight from the cut/genie rows; inner regions
are Fourier-Motzkin shadows of the layered achievable systems, computed with
the same machinery the deterministic modules use (float mode instead of
exact Fractions).
"""

import csv
import math
from dataclasses import dataclass, field
from multiprocessing import Pool

import numpy as np

from .polytope import LinearSystem, RateRegion2D, project2d

__all__ = [
    "GaussGains",
    "GapReport",
    "ZS_GAP",
    "ZZ_GAP",
    "gzs_outer",
    "gzs_inner",
    "gzz_outer",
    "gzz_inner",
    "z_channel_region",
    "instance_gap",
    "gap_sweep",
]

# certified per-axis gaps (R1, R2)
ZS_GAP = (1.0, 1.5)
ZZ_GAP = (1.75, 1.75)

_FIELDS = ("g11", "g12", "g21", "g22", "h11", "h12", "h21", "h22")


def _c(x):
    """AWGN capacity at SNR x, in bits."""
    return 0.5 * math.log2(1.0 + x)


def _hlg(x):
    return 0.5 * math.log2(x)


def _pos(x):
    return x if x > 0.0 else 0.0


@dataclass(frozen=True)
class GaussGains:
    """Power gains of a two-hop network, layer 1 (g) then layer 2 (h).

    First index is the receiving node, second the transmitting node, so
    g12 carries source 2 into relay A and h12 carries relay B into dest 1.
    """

    g11: float
    g12: float
    g21: float
    g22: float
    h11: float
    h12: float
    h21: float
    h22: float

    def __post_init__(self):
        for name in _FIELDS:
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0.0:
                raise ValueError("gain %s = %r must be finite and >= 0" % (name, v))
            object.__setattr__(self, name, v)

    @classmethod
    def zs(cls, g11, g12, g22, h11, h21, h22):
        """ZS topology: no source2->relayB link, no relayB->dest1 link."""
        return cls(g11, g12, 0.0, g22, h11, 0.0, h21, h22)

    @classmethod
    def zz(cls, g11, g12, g22, h11, h12, h22):
        """ZZ topology: no source2->relayB link, no relayA->dest2 link."""
        return cls(g11, g12, 0.0, g22, h11, h12, 0.0, h22)

    def astuple(self):
        return tuple(getattr(self, name) for name in _FIELDS)


def _require_pattern(g: GaussGains, topology: str) -> None:
    zeros = {"zs": ("g21", "h12"), "zz": ("g21", "h21")}[topology]
    bad = [n for n in zeros if getattr(g, n) != 0.0]
    if bad:
        raise ValueError(
            "not a %s network: %s must be zero" % (topology, ", ".join(bad))
        )


def _require_unit(g: GaussGains, names) -> None:
    low = [n for n in names if getattr(g, n) < 1.0]
    if low:
        raise ValueError(
            "inner region needs unit-power regime, gains below 1: %s"
            % ", ".join(low)
        )


# -- outer bounds -------------------------------------------------------------


def gzs_outer(g: GaussGains) -> RateRegion2D:
    """Outer bound for the Gaussian ZS network."""
    _require_pattern(g, "zs")
    if g.g12 <= 0.0 or g.h21 <= 0.0:
        raise ValueError("gzs_outer needs g12 > 0 and h21 > 0")
    mac2 = g.h21 + g.h22 + 2.0 * math.sqrt(g.h21 * g.h22)
    rows = [
        (1, 0, _c(g.g11)),
        (0, 1, _c(g.g12 + g.g22)),
        (1, 1, _c(g.g11 + g.g12) + _c(g.g22 / g.g12)),
        (0, 1, _c(g.g12) + _c(g.h22)),
        (1, 1, _c(g.g22) + _c(g.h11 + g.h21)),
        (1, 1, _c(g.g11 + g.g12) + _c(g.h22)),
        (1, 0, _c(g.h11)),
        (0, 1, _c(mac2)),
        (0, 1, _c(g.g22) + _c(g.h21)),
        (1, 1, _c(mac2) + _c(g.h11 / g.h21)),
    ]
    return RateRegion2D(rows, exact=False)


def gzz_outer(g: GaussGains) -> RateRegion2D:
    """Outer bound for the Gaussian ZZ network."""
    _require_pattern(g, "zz")
    if g.g12 <= 0.0 or g.h12 <= 0.0:
        raise ValueError("gzz_outer needs g12 > 0 and h12 > 0")
    rows = [
        (1, 0, _c(g.g11)),
        (0, 1, _c(g.g22)),
        (1, 0, _c(g.h11)),
        (0, 1, _c(g.h22)),
        (1, 1, _c(g.g11 + g.g12) + _c(g.g22 / g.g12) + _c(g.h12)),
        (1, 1, _c(g.h11 + g.h12) + _c(g.h22 / g.h12) + _c(g.g12)),
    ]
    return RateRegion2D(rows, exact=False)


def z_channel_region(g11, g12, g22) -> RateRegion2D:
    """Constant-gap outer region of the scalar Gaussian Z channel."""
    if g12 <= 0.0:
        raise ValueError("z_channel_region needs g12 > 0")
    rows = [
        (1, 0, _c(g11)),
        (0, 1, _c(g22)),
        (1, 1, _c(g11 + g12) + _c(g22 / g12)),
    ]
    return RateRegion2D(rows, exact=False)


# -- inner regions ------------------------------------------------------------


def _zs_layer_constants(g: GaussGains):
    """Per-submessage rate caps of the two ZS layers, clamped at zero.

    a-rows bound what relay A / relay B can decode in layer 1, b-rows what
    the destinations can decode in layer 2 after the relays re-encode.
    """
    a = (
        _pos(_c(g.g11) - 0.5),
        _pos(_c(g.g12 / g.g22) - 0.5),
        _pos(_c(g.g12) - 0.5),
        _pos(_c(g.g11 + g.g12) - 0.5),
        _pos(_c(g.g22 / g.g12) - 0.5),
        _pos(_c(g.g22) - 0.5),
    )
    b = (
        _pos(_c(g.h11) - 0.5),
        _pos(_c(g.h11 / g.h21) - 0.5),
        _pos(_c(g.h21 / g.h11) - 0.5),
        _pos(_c(g.h21) - 0.5),
        _pos(_c(g.h22) - 0.5),
        _pos(_c(g.h21 + g.h22) - 0.5),
    )
    return a, b


def gzs_inner(g: GaussGains) -> RateRegion2D:
    """Achievable ZS region: FM shadow of the layered submessage system.

    Variables: T11 is the part of message 1 carried to dest 1 on its direct
    level, T21/T22/T23/T24 split message 2 across the two relays.  The
    remaining submessages are eliminated up front through the rate-splitting
    equalities (T12 = R1 - T11, T25 = R2 - T21 - T22 - T23 - T24).
    """
    _require_pattern(g, "zs")
    _require_unit(g, ("g11", "g12", "g22", "h11", "h21", "h22"))
    (a1, a2, a3, a4, a5, a6), (b1, b2, b3, b4, b5, b6) = _zs_layer_constants(g)
    s = LinearSystem(["R1", "R2", "T11", "T21", "T22", "T23", "T24"], exact=False)
    s.add({"R1": 1}, a1)
    s.add({"T23": 1, "T24": 1}, a2)
    s.add({"T21": 1, "T22": 1, "T23": 1, "T24": 1}, a3)
    s.add({"R1": 1, "T21": 1, "T22": 1, "T23": 1, "T24": 1}, a4)
    s.add({"R2": 1, "T21": -1, "T22": -1, "T23": -1, "T24": -1}, a5)
    s.add({"R2": 1, "T23": -1, "T24": -1}, a6)
    s.add({"R1": 1, "T21": 1, "T23": 1}, b1)
    s.add({"R1": 1, "T11": -1}, b2)
    s.add({"T24": 1}, b3)
    s.add({"T11": 1, "T23": 1, "T24": 1}, b4)
    s.add({"R2": 1, "T21": -1, "T22": -1, "T23": -1, "T24": -1}, b5)
    s.add({"T11": 1, "R2": 1}, b6)
    # implicit submessages stay nonnegative
    s.add({"T11": 1, "R1": -1}, 0)
    s.add({"T21": 1, "T22": 1, "T23": 1, "T24": 1, "R2": -1}, 0)
    return project2d(s, ("R1", "R2")).pruned()


def _zz_layer_caps(g: GaussGains):
    """Neutralization-layer caps, each the min over the two hops."""
    lam_g = min(g.g11, g.g12, g.g22)
    lam_h = min(g.h11, g.h12, g.h22)
    mu_g = max(g.g11, g.g12, g.g22, g.g11 * g.g22 / g.g12)
    mu_h = max(g.h11, g.h12, g.h22, g.h11 * g.h22 / g.h12)
    c1 = min(_pos(_hlg(lam_g) - 0.5), _pos(_hlg(lam_h) - 0.5))
    c2 = min(_pos(_hlg(g.g11) - 1.0), _pos(_hlg(g.h11) - 1.0))
    c3 = min(_pos(_hlg(g.g22) - 1.0), _pos(_hlg(g.h22) - 1.0))
    c4 = min(_pos(_hlg(mu_g) - 1.5), _pos(_hlg(mu_h) - 1.5))
    return c1, c2, c3, c4


def gzz_inner(g: GaussGains) -> RateRegion2D:
    """Achievable ZZ region via lattice neutralization on both hops.

    Y0 is the common functional rate carried through both layers; the same
    split has to fit both hops, so each cap is a min over the two layers.
    """
    _require_pattern(g, "zz")
    _require_unit(g, ("g11", "g12", "g22", "h11", "h12", "h22"))
    c1, c2, c3, c4 = _zz_layer_caps(g)
    s = LinearSystem(["R1", "R2", "Y0"], exact=False)
    s.add({"Y0": 1, "R1": -1}, 0)
    s.add({"Y0": 1, "R2": -1}, 0)
    s.add({"Y0": 1}, c1)
    s.add({"R1": 1}, c2)
    s.add({"R2": 1}, c3)
    s.add({"R1": 1, "R2": 1, "Y0": -1}, c4)
    return project2d(s, ("R1", "R2")).pruned()


# -- gap certification --------------------------------------------------------


@dataclass
class GapReport:
    """Result of a randomized constant-gap sweep."""

    topology: str
    samples: int
    max_gap_R1: float
    max_gap_R2: float
    seed: int
    failures: list = field(default_factory=list)

    def passed(self) -> bool:
        return not self.failures


def _shrink_factor(vertex, inner, deltas, iters=48):
    """Least t >= 0 putting clamp(vertex - t*deltas) inside `inner`."""

    def ok(t):
        p = (
            max(vertex[0] - t * deltas[0], 0.0),
            max(vertex[1] - t * deltas[1], 0.0),
        )
        return inner.contains(p)

    if ok(0.0):
        return 0.0
    hi = 1.0
    while not ok(hi):
        hi *= 2.0
        if hi > 64.0:
            return math.inf
    lo = 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def instance_gap(outer: RateRegion2D, inner: RateRegion2D, deltas):
    """Per-axis gap of one instance: worst vertex shrink times the shift
    direction.  (inf, inf) when even a huge shrink misses the inner region."""
    t = 0.0
    for v in outer.vertices():
        t = max(t, _shrink_factor(v, inner, deltas))
        if math.isinf(t):
            break
    return (deltas[0] * t, deltas[1] * t)


def _sweep_trial(args):
    topology, seed, idx, lo, hi = args
    rng = np.random.Generator(np.random.Philox(key=[seed, idx]))
    draws = lo * (hi / lo) ** rng.random(6)
    if topology == "zs":
        g = GaussGains.zs(*draws)
        outer, inner, deltas = gzs_outer(g), gzs_inner(g), ZS_GAP
    elif topology == "zz":
        g = GaussGains.zz(*draws)
        outer, inner, deltas = gzz_outer(g), gzz_inner(g), ZZ_GAP
    else:
        raise ValueError("unknown topology %r" % topology)
    certified = True
    for v in outer.vertices():
        p = (max(v[0] - deltas[0], 0.0), max(v[1] - deltas[1], 0.0))
        if not inner.contains(p):
            certified = False
            break
    gap = instance_gap(outer, inner, deltas)
    return (idx, g.astuple(), gap[0], gap[1], certified)


def gap_sweep(
    topology,
    trials,
    seed=1729,
    lo=1.0,
    hi=1e6,
    jobs=1,
    csv_path=None,
) -> GapReport:
    """Sample log-uniform gains and certify the fixed-shift gap per trial.

    Every trial draws from its own counter-based stream keyed on
    (seed, trial), so the result is identical for any worker count.
    """
    if topology not in ("zs", "zz"):
        raise ValueError("topology must be 'zs' or 'zz'")
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not (0.0 < lo <= hi):
        raise ValueError("need 0 < lo <= hi")
    tasks = [(topology, seed, i, lo, hi) for i in range(trials)]
    if jobs > 1:
        with Pool(jobs) as pool:
            rows = pool.map(_sweep_trial, tasks, chunksize=64)
    else:
        rows = [_sweep_trial(t) for t in tasks]
    rows.sort(key=lambda r: r[0])
    max1 = max(r[2] for r in rows if math.isfinite(r[2]))
    max2 = max(r[3] for r in rows if math.isfinite(r[3]))
    failures = [r[1] for r in rows if not r[4]]
    if csv_path is not None:
        with open(csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["seed", "trial"] + list(_FIELDS) + ["gap_R1", "gap_R2"])
            for idx, gains, g1, g2, _ in rows:
                w.writerow([seed, idx] + [repr(x) for x in gains] + [repr(g1), repr(g2)])
    return GapReport(
        topology=topology,
        samples=trials,
        max_gap_R1=max1,
        max_gap_R2=max2,
        seed=seed,
        failures=failures,
    )
