"""Linear inequality systems, Fourier-Motzkin projection, and 2-D regions.

Two numeric modes. Exact mode keeps every coefficient and bound a Fraction,
so deterministic-network regions are computed with no rounding at all. Float
mode is for Gaussian regions whose bounds are logs; coefficients stay small
integers there, only bounds are inexact, and comparisons use a tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cmp_to_key

DEFAULT_TOL = 1e-9

# float-mode coefficients are integer-valued in practice; anything this small
# after row normalization is cancellation noise
_CHOP = 1e-11


def _tofrac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _normalize_row(vec, b, exact):
    """Scale a row by a positive factor into a canonical form."""
    if exact:
        vec = tuple(_tofrac(c) for c in vec)
        b = _tofrac(b)
        den = 1
        for c in vec + (b,):
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in vec]
        g = 0
        for c in ints:
            g = math.gcd(g, abs(c))
        if g == 0:
            # zero row: only the sign of b matters
            return tuple(Fraction(0) for _ in vec), Fraction(int(b * den))
        scale = Fraction(den, g)
        return tuple(c * scale for c in vec), b * scale
    vec = [float(c) for c in vec]
    b = float(b)
    m = max((abs(c) for c in vec), default=0.0)
    if m <= _CHOP:
        return tuple(0.0 for _ in vec), b
    vec = [0.0 if abs(c) / m < _CHOP else c / m for c in vec]
    return tuple(vec), b / m


class LinearSystem:
    """Inequalities sum_i a_i x_i <= b over named variables.

    Every variable flagged nonnegative contributes an implicit -x <= 0 that
    elimination accounts for without storing it.
    """

    def __init__(self, variables, exact=True, nonneg=None):
        self.variables = list(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.exact = exact
        if nonneg is None:
            nonneg = {v: True for v in self.variables}
        self.nonneg = dict(nonneg)
        for v in self.variables:
            self.nonneg.setdefault(v, True)
        self.rows: list[tuple[tuple, object]] = []

    def _cast(self, x):
        return _tofrac(x) if self.exact else float(x)

    def add(self, coeffs, b) -> None:
        """Add sum(coeffs[v] * v) <= b; coeffs is a dict or a full sequence."""
        if isinstance(coeffs, dict):
            unknown = set(coeffs) - set(self.variables)
            if unknown:
                raise ValueError("unknown variables %r" % sorted(unknown))
            vec = tuple(self._cast(coeffs.get(v, 0)) for v in self.variables)
        else:
            vec = tuple(self._cast(c) for c in coeffs)
            if len(vec) != len(self.variables):
                raise ValueError("coefficient count mismatch")
        self.rows.append((vec, self._cast(b)))

    def add_equality(self, coeffs, b) -> None:
        self.add(coeffs, b)
        if isinstance(coeffs, dict):
            neg = {v: -self._cast(c) for v, c in coeffs.items()}
        else:
            neg = [-self._cast(c) for c in coeffs]
        self.add(neg, -self._cast(b))

    def satisfied(self, assignment: dict, tol=DEFAULT_TOL) -> bool:
        """Check a full assignment against all rows and nonnegativity."""
        pt = [assignment[v] for v in self.variables]
        eps = 0 if self.exact else tol
        for v, x in zip(self.variables, pt):
            if self.nonneg[v] and x < -eps:
                return False
        for vec, b in self.rows:
            if sum(c * x for c, x in zip(vec, pt)) > b + eps:
                return False
        return True

    def copy(self) -> "LinearSystem":
        s = LinearSystem(self.variables, self.exact, self.nonneg)
        s.rows = list(self.rows)
        return s


def _prune_rows(rows, exact, all_nonneg):
    """Normalize, dedupe, drop trivial rows, and strip dominated rows.

    Domination (a' >= a componentwise and b' <= b means (a,b) is implied)
    is only valid when every variable is nonnegative.
    """
    best: dict[tuple, object] = {}
    order: list[tuple] = []
    infeasible = None
    for vec, b in rows:
        vec, b = _normalize_row(vec, b, exact)
        if all(c == 0 for c in vec):
            limit = 0 if exact else -DEFAULT_TOL
            if b < limit and (infeasible is None or b < infeasible[1]):
                infeasible = (vec, b)
            continue
        key = vec if exact else tuple(round(c, 12) for c in vec)
        if key not in best:
            best[key] = b
            order.append(key)
        elif b < best[key]:
            best[key] = b
    if infeasible is not None:
        return [infeasible]
    out = [(k, best[k]) for k in order]
    if all_nonneg and len(out) > 1:
        kept = []
        for i, (ai, bi) in enumerate(out):
            implied = False
            for j, (aj, bj) in enumerate(out):
                if i == j:
                    continue
                if bj <= bi and all(cj >= ci for cj, ci in zip(aj, ai)):
                    # break ties so exactly one of two identical rows survives
                    if bj == bi and aj == ai and j > i:
                        continue
                    implied = True
                    break
            if not implied:
                kept.append((ai, bi))
        out = kept
    return out


def fm_eliminate(s: LinearSystem, var: str) -> LinearSystem:
    """Project the system onto the remaining variables (exact shadow)."""
    if var not in s.variables:
        raise ValueError("unknown variable %r" % var)
    j = s.variables.index(var)
    rows = list(s.rows)
    if s.nonneg[var]:
        unit = tuple(
            s._cast(-1 if k == j else 0) for k in range(len(s.variables))
        )
        rows.append((unit, s._cast(0)))
    pos, neg, rest = [], [], []
    for vec, b in rows:
        c = vec[j]
        stripped = vec[:j] + vec[j + 1 :]
        if c > 0:
            pos.append((c, stripped, b))
        elif c < 0:
            neg.append((c, stripped, b))
        else:
            rest.append((stripped, b))
    new_rows = list(rest)
    for cp, vp, bp in pos:
        for cn, vn, bn in neg:
            # multipliers -cn and cp are both positive, so direction is kept
            vec = tuple(-cn * a + cp * d for a, d in zip(vp, vn))
            new_rows.append((vec, -cn * bp + cp * bn))
    out = LinearSystem(
        [v for v in s.variables if v != var],
        s.exact,
        {v: f for v, f in s.nonneg.items() if v != var},
    )
    out.rows = _prune_rows(
        new_rows, s.exact, all(out.nonneg[v] for v in out.variables)
    )
    return out


def project2d(s: LinearSystem, keep=("R1", "R2")) -> "RateRegion2D":
    """Eliminate everything but `keep`, cheapest variable first."""
    for v in keep:
        if v not in s.variables:
            raise ValueError("missing variable %r" % v)
    cur = s
    while len(cur.variables) > len(keep):
        cands = [v for v in cur.variables if v not in keep]
        def cost(v):
            j = cur.variables.index(v)
            npos = sum(1 for vec, _ in cur.rows if vec[j] > 0)
            nneg = sum(1 for vec, _ in cur.rows if vec[j] < 0) + (
                1 if cur.nonneg[v] else 0
            )
            return npos * nneg
        cur = fm_eliminate(cur, min(cands, key=cost))
    iv = [cur.variables.index(k) for k in keep]
    ineqs = [(vec[iv[0]], vec[iv[1]], b) for vec, b in cur.rows]
    return RateRegion2D(ineqs, exact=cur.exact)


class RateRegion2D:
    """Closed region {(R1,R2) >= 0 : a1 R1 + a2 R2 <= b for each row}.

    Must contain the origin, so every bound is nonnegative.
    """

    def __init__(self, ineqs, exact=True, tol=DEFAULT_TOL):
        self.exact = exact
        self.tol = tol
        cast = _tofrac if exact else float
        self.ineqs = []
        for a1, a2, b in ineqs:
            row = (cast(a1), cast(a2), cast(b))
            if row[2] < (0 if exact else -tol):
                raise ValueError("region excludes the origin (b = %s < 0)" % b)
            self.ineqs.append(row)

    # -- membership ---------------------------------------------------------

    def contains(self, p) -> bool:
        x, y = p
        if self.exact:
            x, y = _tofrac(x), _tofrac(y)
            if x < 0 or y < 0:
                return False
            return all(a1 * x + a2 * y <= b for a1, a2, b in self.ineqs)
        x, y = float(x), float(y)
        if x < -self.tol or y < -self.tol:
            return False
        return all(a1 * x + a2 * y <= b + self.tol for a1, a2, b in self.ineqs)

    # -- geometry -----------------------------------------------------------

    def _lines(self):
        """Constraint lines including the nonnegativity boundaries."""
        one = Fraction(1) if self.exact else 1.0
        zero = Fraction(0) if self.exact else 0.0
        return list(self.ineqs) + [(-one, zero, zero), (zero, -one, zero)]

    def bounded(self) -> bool:
        """True iff the recession cone within the quadrant is {0}."""
        zero = Fraction(0) if self.exact else 0.0
        one = Fraction(1) if self.exact else 1.0
        cands = [(one, zero), (zero, one)]
        for a1, a2, _ in self.ineqs:
            for d in ((-a2, a1), (a2, -a1)):
                if d[0] >= zero and d[1] >= zero and d != (zero, zero):
                    cands.append(d)
        eps = 0 if self.exact else self.tol
        for d in cands:
            if all(a1 * d[0] + a2 * d[1] <= eps for a1, a2, _ in self.ineqs):
                return False
        return True

    def vertices(self) -> list:
        """Extreme points sorted counterclockwise from the lexicographic min."""
        if not self.bounded():
            raise ValueError("unbounded region has no vertex polygon")
        lines = self._lines()
        pts = []
        for i in range(len(lines)):
            a1, a2, b = lines[i]
            for j in range(i + 1, len(lines)):
                c1, c2, d = lines[j]
                det = a1 * c2 - a2 * c1
                if det == 0:
                    continue
                x = (b * c2 - a2 * d) / det
                y = (a1 * d - b * c1) / det
                if self.contains((x, y)):
                    pts.append((x, y))
        if self.exact:
            pts = sorted(set(pts))
        else:
            seen = {}
            for p in pts:
                seen.setdefault((round(p[0], 8), round(p[1], 8)), p)
            pts = sorted(seen.values())
        if len(pts) <= 2:
            return pts
        return _ccw(pts)

    def pruned(self) -> "RateRegion2D":
        """Minimal inequality list defining the same region, canonically ordered."""
        rows = _prune_rows(
            [((a1, a2), b) for a1, a2, b in self.ineqs], self.exact, True
        )
        rows = sorted(rows, key=_row_order_key)
        keep = list(rows)
        for row in list(keep):
            trial = [r for r in keep if r != row]
            cand = RateRegion2D(
                [(a[0], a[1], b) for a, b in trial], self.exact, self.tol
            )
            if cand.bounded() and region_equal(cand, self, self.tol):
                keep = trial
        return RateRegion2D([(a[0], a[1], b) for a, b in keep], self.exact, self.tol)

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        def num(x):
            return str(x) if self.exact else float(x)

        return {
            "vars": ["R1", "R2"],
            "ineqs": [{"a": [num(a1), num(a2)], "b": num(b)} for a1, a2, b in self.ineqs],
        }

    @classmethod
    def from_dict(cls, d: dict, tol=DEFAULT_TOL) -> "RateRegion2D":
        if d.get("vars") != ["R1", "R2"]:
            raise ValueError("expected vars [R1, R2]")
        raw = [(r["a"][0], r["a"][1], r["b"]) for r in d["ineqs"]]
        exact = all(
            isinstance(x, (str, int)) for row in raw for x in row
        )
        conv = (lambda x: Fraction(x)) if exact else float
        return cls([(conv(a1), conv(a2), conv(b)) for a1, a2, b in raw], exact, tol)

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "float"
        return "RateRegion2D(%s, %d ineqs)" % (kind, len(self.ineqs))


def _row_order_key(row):
    (a1, a2), b = row
    nz = tuple(i for i, c in enumerate((a1, a2)) if c != 0)
    return (len(nz), nz, (float(a1), float(a2), float(b)))


def _ccw(pts):
    n = len(pts)
    cx = sum(p[0] for p in pts) / n
    cy = sum(p[1] for p in pts) / n

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    pts = sorted(pts, key=cmp_to_key(cmp))
    k = min(range(len(pts)), key=lambda i: pts[i])
    return pts[k:] + pts[:k]


def contains(r: RateRegion2D, p) -> bool:
    return r.contains(p)


def vertices2d(r: RateRegion2D) -> list:
    return r.vertices()


def _dist_point_segment(p, a, b):
    px, py = p
    ax, ay = a
    bx, by = b
    vx, vy = bx - ax, by - ay
    L2 = vx * vx + vy * vy
    if L2 == 0:
        return math.hypot(px - ax, py - ay)
    t = max(0.0, min(1.0, ((px - ax) * vx + (py - ay) * vy) / L2))
    return math.hypot(px - (ax + t * vx), py - (ay + t * vy))


def _dist_to_region(p, r: RateRegion2D, verts) -> float:
    if r.contains(p):
        return 0.0
    pf = (float(p[0]), float(p[1]))
    vf = [(float(x), float(y)) for x, y in verts]
    if len(vf) == 1:
        return math.hypot(pf[0] - vf[0][0], pf[1] - vf[0][1])
    return min(
        _dist_point_segment(pf, vf[i], vf[(i + 1) % len(vf)])
        for i in range(len(vf))
    )


def region_equal(a: RateRegion2D, b: RateRegion2D, tol=DEFAULT_TOL) -> bool:
    """Same point set: mutual vertex containment (exact) or symmetric
    Hausdorff distance at most tol (float)."""
    va, vb = a.vertices(), b.vertices()
    if a.exact and b.exact:
        return all(b.contains(p) for p in va) and all(a.contains(p) for p in vb)
    d = 0.0
    for p in va:
        d = max(d, _dist_to_region(p, b, vb))
    for p in vb:
        d = max(d, _dist_to_region(p, a, va))
    return d <= tol
