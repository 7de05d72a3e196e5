"""Deterministic ZS network: capacity region, rate-driven decomposition of
the level graph into two non-interfering unicast parts, and the zero-error
codec that rides on them.

The decomposition is parameterized by r = R1. Part N1 carries flow 1 over
the line S1 -> A -> D1; part N2 carries flow 2 over the diamond
S2 -> {A,B} -> D2. Levels are grouped so that no link connects the parts,
which makes the two flows interference-free by construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .detnet import DetGains, Transcript, check_topology, shift_xor
from .gf2 import GF2Vector
from .polytope import RateRegion2D


def _pos(x):
    return x if x > 0 else 0


@dataclass(frozen=True)
class MessagePair:
    """Message bits at the claimed integer rates (index 0 sent first/topmost)."""

    w1: tuple
    w2: tuple

    @classmethod
    def of(cls, w1, w2):
        return cls(tuple(int(b) & 1 for b in w1), tuple(int(b) & 1 for b in w2))


def dzs_region(g: DetGains) -> RateRegion2D:
    """The ten exact half-spaces bounding (R1, R2)."""
    check_topology(g, "ZS")
    m11, m12, m22 = g.m11, g.m12, g.m22
    n11, n21, n22 = g.n11, g.n21, g.n22
    rows = [
        (1, 0, m11),
        (0, 1, max(m12, m22)),
        (1, 1, max(m11, m12) + _pos(m22 - m12)),
        (0, 1, m12 + n22),
        (1, 1, m22 + max(n11, n21)),
        (1, 1, max(m11, m12) + n22),
        (1, 0, n11),
        (0, 1, max(n21, n22)),
        (0, 1, m22 + n21),
        (1, 1, max(n21, n22) + _pos(n11 - n21)),
    ]
    return RateRegion2D(rows)


# -- related sub-nodes --------------------------------------------------------

def _layer_links(gains, q):
    """Directed level links of one layer; roles t1,t2 transmit, r1,r2 receive."""
    a11, a12, a21, a22 = gains
    links = []
    for t, r, a in (("t1", "r1", a11), ("t2", "r1", a12),
                    ("t1", "r2", a21), ("t2", "r2", a22)):
        for j in range(a):
            links.append(((t, j), (r, j + q - a)))
    return links


def related_closure(gains, q: int, level) -> frozenset:
    """Equivalence class of a level: levels reachable through shared links.

    Two levels are related when one feeds the other, or they are fed by a
    common broadcast level, or they feed a common receive level; the class
    is the closure of those relations, i.e. a connected component.
    """
    role, idx = level
    if role not in ("t1", "t2", "r1", "r2"):
        raise ValueError("unknown role %r" % role)
    if not 0 <= idx < q:
        raise ValueError("level %d outside [0, %d)" % (idx, q))
    adj = {}
    for u, v in _layer_links(gains, q):
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    seen = {(role, idx)}
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return frozenset(seen)


# -- decomposition ------------------------------------------------------------

LAYER1_ROLES = {"t1": "S1", "t2": "S2", "r1": "A", "r2": "B"}
LAYER2_ROLES = {"t1": "A", "t2": "B", "r1": "D1", "r2": "D2"}


@dataclass(frozen=True)
class Decomposition:
    """Level partition (N1, N2) and the effective gains of the N2 diamond.

    layer1 maps S1, S2 (transmit levels) and A, B (receive levels); layer2
    maps A, B (transmit levels) and D1, D2 (receive levels).
    """

    r: int
    m12p: int
    m22p: int
    n21p: int
    n22p: int
    layer1_n1: dict
    layer2_n1: dict
    layer1_n2: dict
    layer2_n2: dict

    def effective_gains(self):
        return (self.m12p, self.m22p, self.n21p, self.n22p)


def _closure_sets(gains, q, seeds, roles):
    by_node = {name: set() for name in roles.values()}
    for seed in seeds:
        for role, idx in related_closure(gains, q, seed):
            by_node[roles[role]].add(idx)
    return by_node


def dzs_decompose(g: DetGains, r: int) -> Decomposition:
    check_topology(g, "ZS")
    if not 0 <= r <= min(g.m11, g.n11):
        raise ValueError("need 0 <= r <= min(m11, n11) = %d" % min(g.m11, g.n11))
    q = g.q
    m11, m12, m22 = g.m11, g.m12, g.m22
    n11, n21, n22 = g.n11, g.n21, g.n22

    top1 = _pos(m11 - m12)
    rho = _pos(r - top1)
    seeds1 = [("t1", j) for j in range(top1)]
    seeds1 += [("t1", j) for j in range(m11 - rho, m11)]
    layer1_n1 = _closure_sets((m11, m12, 0, m22), q, seeds1, LAYER1_ROLES)

    low2 = _pos(n11 - n21)
    sigma = _pos(r - low2)
    seeds2 = [("t1", j) for j in range(n21, n11)]
    seeds2 += [("t1", j) for j in range(sigma)]
    layer2_n1 = _closure_sets((n11, 0, n21, n22), q, seeds2, LAYER2_ROLES)

    full = set(range(q))
    layer1_n2 = {k: full - v for k, v in layer1_n1.items()}
    layer2_n2 = {k: full - v for k, v in layer2_n1.items()}

    return Decomposition(
        r=r,
        m12p=min(max(m11, m12) - r, m12),
        m22p=min(max(m11, m12) + _pos(m22 - m12) - r, m22),
        n21p=min(max(n11, n21) - r, n21),
        n22p=min(max(n11, n21) + _pos(n22 - n21) - r, n22),
        layer1_n1={k: frozenset(v) for k, v in layer1_n1.items()},
        layer2_n1={k: frozenset(v) for k, v in layer2_n1.items()},
        layer1_n2={k: frozenset(v) for k, v in layer1_n2.items()},
        layer2_n2={k: frozenset(v) for k, v in layer2_n2.items()},
    )


def dzs_cover_check(g: DetGains) -> bool:
    """Every integer region point (R1, R2) fits the r = R1 decomposition:
    R2 passes all four cut bounds of the effective N2 diamond."""
    check_topology(g, "ZS")
    reg = dzs_region(g)
    for r1 in range(min(g.m11, g.n11) + 1):
        d = None
        for r2 in range(max(g.m12, g.m22) + 1):
            if not reg.contains((r1, r2)):
                break
            if d is None:
                d = dzs_decompose(g, r1)
            ok = (
                r2 <= max(d.m12p, d.m22p)
                and r2 <= d.m22p + d.n21p
                and r2 <= d.m12p + d.n22p
                and r2 <= max(d.n21p, d.n22p)
            )
            if not ok:
                return False
    return True


# -- routing ------------------------------------------------------------------

def _max_flow_unit(adj, src, snk):
    """Edmonds-Karp on unit/infinite capacities; adj maps node -> ordered
    {next: capacity}. Returns (value, flow dict)."""
    flow = {u: dict.fromkeys(vs, 0) for u, vs in adj.items()}
    value = 0
    while True:
        prev = {src: None}
        queue = deque([src])
        while queue and snk not in prev:
            u = queue.popleft()
            for v, cap in adj.get(u, {}).items():
                if v not in prev and flow[u][v] < cap:
                    prev[v] = u
                    queue.append(v)
            # residual (backward) edges
            for w, es in adj.items():
                if u in es and w not in prev and flow[w][u] > 0:
                    prev[w] = u
                    queue.append(w)
        if snk not in prev:
            return value, flow
        v = snk
        while prev[v] is not None:
            u = prev[v]
            if v in adj.get(u, {}):
                flow[u][v] += 1
            else:
                flow[v][u] -= 1
            v = u
        value += 1


def _route_flow2(g: DetGains, d: Decomposition, need: int):
    """Unit paths S2 -> relay -> D2 through the N2 levels, top levels first.

    Returns `need` tuples (s2_level, relay, tx_level, d2_level)."""
    q = g.q
    s2_ok = sorted(d.layer1_n2["S2"] & set(range(max(g.m12, g.m22))))
    a_ok = sorted(d.layer2_n2["A"] & set(range(g.n21)))
    b_ok = sorted(d.layer2_n2["B"] & set(range(g.n22)))
    adj = {"src": {}}
    for j in s2_ok:
        adj["src"][("s2", j)] = 1
        adj[("s2", j)] = {}
        if j < g.m12:
            adj[("s2", j)]["RA"] = 1
        if j < g.m22:
            adj[("s2", j)]["RB"] = 1
    adj["RA"] = {("a", k): 1 for k in a_ok}
    adj["RB"] = {("b", k): 1 for k in b_ok}
    for k in a_ok:
        adj[("a", k)] = {("d2", k + q - g.n21): 1}
    for k in b_ok:
        adj[("b", k)] = {("d2", k + q - g.n22): 1}
    d2_lvls = {k + q - g.n21 for k in a_ok} | {k + q - g.n22 for k in b_ok}
    for lvl in sorted(d2_lvls):
        adj[("d2", lvl)] = {"snk": 1}
    adj["snk"] = {}
    value, flow = _max_flow_unit(adj, "src", "snk")
    if value < need:
        raise RuntimeError(
            "N2 diamond carries only %d of %d flow-2 bits" % (value, need)
        )
    routes = []
    for j in s2_ok:
        if len(routes) == need:
            break
        if flow["src"][("s2", j)] == 0:
            continue
        relay = "RA" if flow[("s2", j)].get("RA", 0) else "RB"
        tx = next(
            k for k, f in flow[relay].items() if f > 0
        )
        flow[relay][tx] -= 1
        d2 = next(iter(adj[tx]))
        routes.append((j, relay[1], tx[1], d2[1]))
    if len(routes) < need:
        raise RuntimeError("flow extraction lost a path")
    return routes


@dataclass(frozen=True)
class DzsPlan:
    """Explicit level assignment for one (R1, R2) operating point."""

    g: DetGains
    r1: int
    r2: int
    s1_levels: tuple
    a_rx: tuple
    a_fwd: tuple
    d1_read: tuple
    routes: tuple


def dzs_plan(g: DetGains, r1: int, r2: int) -> DzsPlan:
    check_topology(g, "ZS")
    if r1 != int(r1) or r2 != int(r2):
        raise ValueError("deterministic coding runs at integer rates")
    if not dzs_region(g).contains((r1, r2)):
        raise ValueError("rate pair (%s, %s) is outside the region" % (r1, r2))
    d = dzs_decompose(g, r1)
    q = g.q
    s1_levels = tuple(sorted(d.layer1_n1["S1"]))[:r1]
    a_rx = tuple(j + q - g.m11 for j in s1_levels)
    low = [k for k in range(g.n21, g.n11) if k in d.layer2_n1["A"]]
    top = [k for k in range(_pos(r1 - _pos(g.n11 - g.n21))) if k in d.layer2_n1["A"]]
    a_fwd = tuple((low + top)[:r1])
    if len(s1_levels) < r1 or len(a_fwd) < r1:
        raise RuntimeError("N1 line is narrower than r")
    d1_read = tuple(k + q - g.n11 for k in a_fwd)
    routes = tuple(_route_flow2(g, d, r2))
    return DzsPlan(g, r1, r2, s1_levels, a_rx, a_fwd, d1_read, routes)


def _run_plan(plan: DzsPlan, w1, w2):
    """Drive one channel use. Bits may be 0/1 ints or XOR-able bit planes."""
    g, q = plan.g, plan.g.q
    x_s1 = [0] * q
    for bit, j in zip(w1, plan.s1_levels):
        x_s1[j] = bit
    x_s2 = [0] * q
    for bit, (j, _, _, _) in zip(w2, plan.routes):
        x_s2[j] = bit

    y_a = shift_xor(q, [(x_s1, g.m11), (x_s2, g.m12)])
    y_b = shift_xor(q, [(x_s2, g.m22)])
    x_a = [0] * q
    x_b = [0] * q
    for rx, k in zip(plan.a_rx, plan.a_fwd):
        x_a[k] = y_a[rx]
    for j, relay, k, _ in plan.routes:
        if relay == "A":
            x_a[k] = y_a[j + q - g.m12]
        else:
            x_b[k] = y_b[j + q - g.m22]
    y_d1 = shift_xor(q, [(x_a, g.n11)])
    y_d2 = shift_xor(q, [(x_a, g.n21), (x_b, g.n22)])
    w1_hat = tuple(y_d1[i] for i in plan.d1_read)
    w2_hat = tuple(y_d2[d_lvl] for (_, _, _, d_lvl) in plan.routes)
    sig = {
        "S1": x_s1, "S2": x_s2, "A": x_a, "B": x_b,
    }
    rcv = {"A": y_a, "B": y_b, "D1": y_d1, "D2": y_d2}
    return sig, rcv, w1_hat, w2_hat


def dzs_transmit(g: DetGains, r1: int, r2: int, msgs: MessagePair) -> Transcript:
    """Zero-error transmission of both messages at integer rates."""
    if len(msgs.w1) != r1 or len(msgs.w2) != r2:
        raise ValueError("message lengths must match the rates")
    plan = dzs_plan(g, r1, r2)
    sig, rcv, w1_hat, w2_hat = _run_plan(plan, msgs.w1, msgs.w2)
    tovec = lambda lv: GF2Vector.fromlist(lv)
    return Transcript(
        x={k: tovec(v) for k, v in sig.items()},
        y={k: tovec(v) for k, v in rcv.items()},
        w1_hat=w1_hat,
        w2_hat=w2_hat,
    )


def _index_planes(nbits: int):
    """Plane b has bit c set iff bit b of c is set, for c in [0, 2^nbits)."""
    width = 1 << nbits
    planes = []
    for b in range(nbits):
        block = (1 << (1 << b)) - 1
        pat = 0
        for off in range(1 << b, width, 1 << (b + 1)):
            pat |= block << off
        planes.append(pat)
    return planes


def dzs_verify_all(g: DetGains, r1: int, r2: int) -> bool:
    """Exhaustive zero-error check of every message pair in one pass.

    Each level carries a 2^(r1+r2)-wide bit plane; column c of the planes
    is the transcript for message pair index c."""
    plan = dzs_plan(g, r1, r2)
    planes = _index_planes(r1 + r2)
    w1, w2 = planes[:r1], planes[r1:]
    _, _, w1_hat, w2_hat = _run_plan(plan, w1, w2)
    return list(w1_hat) == w1 and list(w2_hat) == w2
