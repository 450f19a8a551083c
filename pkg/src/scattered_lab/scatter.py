"""Scatteredness tests, linear sets on PG(1,q^n) and the slope census.

The workhorse is a single pass over F_{q^n}^* recording, for every attained
value of f(x)/x, the size of its fiber.  A polynomial is scattered exactly
when every fiber has size q - 1, equivalently when the number of distinct
slopes is (q^n - 1)/(q - 1).  Censuses are memoized per tower.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotSubfieldLinear, ZeroPolynomial
from .field_tower import FieldElement
from .linearized import LinearizedPoly
import math


@dataclass(frozen=True)
class SlopeCensus:
    """Fiber statistics of x -> f(x)/x over F_{q^n}^*.

    slope_logs: discrete logs of the nonzero... of all attained nonzero slopes
        (sorted ascending); the zero slope is tracked separately because its
        fiber is the punctured kernel.
    counts: fiber sizes aligned with slope_logs.
    kernel_count: |ker f| - 1.
    rep_logs: log of one fiber representative x per slope, aligned with
        slope_logs (used to locate spread components).
    """

    slope_logs: tuple
    counts: tuple
    kernel_count: int
    rep_logs: tuple
    kernel_rep_log: int

    @property
    def n_slopes(self):
        return len(self.slope_logs) + (1 if self.kernel_count else 0)

    @property
    def max_fiber(self):
        m = max(self.counts) if self.counts else 0
        return max(m, self.kernel_count)


def slope_census(f: LinearizedPoly) -> SlopeCensus:
    T = f.tower
    cache = T.cache("census")
    if f.coeffs in cache:
        return cache[f.coeffs]
    M = T.mult_order
    if T.has_tables:
        vals = f.eval_all_logs()
        karr = np.arange(M, dtype=np.int64)
        zero_mask = vals == 0
        kernel_count = int(zero_mask.sum())
        kernel_rep = int(karr[zero_mask][0]) if kernel_count else -1
        nz = ~zero_mask
        slogs = (T.log_table[vals[nz]] - karr[nz]) % M
        counts = np.bincount(slogs, minlength=M)
        reps = np.full(M, -1, dtype=np.int64)
        reps[slogs[::-1]] = karr[nz][::-1]
        attained = np.nonzero(counts)[0]
        census = SlopeCensus(
            tuple(int(s) for s in attained),
            tuple(int(c) for c in counts[attained]),
            kernel_count,
            tuple(int(r) for r in reps[attained]),
            kernel_rep,
        )
    else:
        fibers: dict[int, list] = {}
        kernel_count, kernel_rep = 0, -1
        for k in range(M):
            x = T.pow_code(T.gen_code, k)
            v = f.evaluate_code(x)
            if v == 0:
                kernel_count += 1
                if kernel_rep < 0:
                    kernel_rep = k
                continue
            s = T.dlog(T.div_code(v, x))
            entry = fibers.setdefault(s, [0, k])
            entry[0] += 1
        slogs = sorted(fibers)
        census = SlopeCensus(
            tuple(slogs),
            tuple(fibers[s][0] for s in slogs),
            kernel_count,
            tuple(fibers[s][1] for s in slogs),
            kernel_rep,
        )
    cache[f.coeffs] = census
    return census


def is_scattered(f: LinearizedPoly) -> bool:
    """Fiber-count characterization, one pass over the multiplicative group."""
    T = f.tower
    if f.is_zero():
        return False
    return slope_census(f).n_slopes * (T.q - 1) == T.mult_order


def is_scattered_naive(f: LinearizedPoly, mode="projective") -> bool:
    """Direct pairwise test: z f(y) = y f(z) forces y, z to be F_q-dependent.

    mode "pairs" scans every ordered pair of nonzero field elements
    (vectorized; small fields only); mode "projective" scans one
    representative per F_q-projective class, which is equivalent because the
    vanishing condition is homogeneous in both arguments.
    """
    T = f.tower
    M = T.mult_order
    step = M // (T.q - 1)
    if mode == "pairs":
        if not T.has_tables:
            raise ZeroPolynomial("pairs mode needs tables")
        vals = f.eval_all_logs()
        karr = np.arange(M, dtype=np.int64)
        # code of z * f(y) at position (log y, log z)
        fl = np.where(vals > 0, T.log_table[np.maximum(vals, 1)], 0)
        zero = vals == 0
        prod = T.exp_table[(fl[:, None] + karr[None, :]) % M]
        prod = np.where(zero[:, None], 0, prod)
        eq = prod == prod.T
        dep = ((karr[:, None] - karr[None, :]) % M % step) == 0
        return bool(np.all(~eq | dep))
    # one representative g^a per projective class: a in [0, M/(q-1))
    reps = range(step)
    for ia, a in enumerate(reps):
        ya = T.pow_code(T.gen_code, a)
        fa = f.evaluate_code(ya)
        for b in list(reps)[ia + 1:]:
            zb = T.pow_code(T.gen_code, b)
            fb = f.evaluate_code(zb)
            lhs = T.mul_code(zb, fa)
            rhs = T.mul_code(ya, fb)
            if lhs == rhs:
                return False
    return True


@dataclass(frozen=True)
class LinearSet:
    """The linear set of f on the projective line, as normalized slopes.

    Points are (1, m) for each attained slope m of f(x)/x; the point (0, 1)
    never arises from a subspace of shape {(x, f(x))}, so has_infinity is
    False for every polynomial input and is kept only for the wire format.
    A nontrivial kernel shows up as the zero slope, i.e. the point (1, 0).
    """

    tower_key: tuple
    slopes: tuple  # element codes, sorted in g^k order (zero last)
    scattered: bool

    @property
    def size(self):
        return len(self.slopes)

    @property
    def has_infinity(self):
        return False

    @property
    def has_zero_slope(self):
        return bool(self.slopes) and self.slopes[-1] == 0

    def contains_slope(self, code):
        return code in set(self.slopes)

    def points(self, tower):
        return [(tower.el(1), tower.el(m)) for m in self.slopes]

    def to_json(self, tower, emit_points=False):
        doc = {
            "size": self.size,
            "scattered": self.scattered,
            "has_infinity": self.has_infinity,
        }
        if emit_points:
            doc["slopes"] = [tower.format_code(m) for m in self.slopes]
        return doc


def linear_set(f: LinearizedPoly) -> LinearSet:
    T = f.tower
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial spans no linear set")
    census = slope_census(f)
    slopes = [T.pow_code(T.gen_code, s) for s in census.slope_logs]
    slopes.sort(key=T.element_key)
    if census.kernel_count:
        slopes.append(0)
    return LinearSet(T.key, tuple(slopes), is_scattered(f))


def subspace_membership(f: LinearizedPoly, v) -> bool:
    """Is v = (x, y) of the form (x, f(x))?"""
    x, y = v
    xc = x.code if isinstance(x, FieldElement) else int(x)
    yc = y.code if isinstance(y, FieldElement) else int(y)
    return f.evaluate_code(xc) == yc


def line_intersection_dim(f: LinearizedPoly, point) -> int:
    """dim_Fq of U_f intersected with the F_{q^n}-line spanned by the point."""
    T = f.tower
    x, y = point
    xc = x.code if isinstance(x, FieldElement) else int(x)
    yc = y.code if isinstance(y, FieldElement) else int(y)
    if xc == 0:
        # vertical line: (0, z) in U_f only for z = 0 when f has q-degree < n
        return 0
    slope = T.div_code(yc, xc)
    census = slope_census(f)
    if slope == 0:
        count = census.kernel_count
    else:
        s = T.dlog(slope)
        count = 0
        if s in census.slope_logs:
            count = census.counts[census.slope_logs.index(s)]
    return round(math.log(count + 1, T.q))


def is_r_partially_scattered(g: LinearizedPoly, t: int, s: int) -> bool:
    """Restricted scatteredness for an F_{q^t}-linearized g.

    Checks the implication: equal slopes g(y)/y = g(z)/z with y/z in the
    subfield F_{q^gcd(s,n)} force y/z in F_q.  Fibers are grouped by the
    residue of log(y) modulo the subfield index, so the scan is linear.
    """
    T = g.tower
    if any(i % t for i in g.support):
        raise NotSubfieldLinear(f"coefficient support is not contained in {t}Z")
    M = T.mult_order
    d = math.gcd(s, T.n)
    sub_step = M // (T.q**d - 1)  # log-multiples of this lie in F_{q^d}
    fq_step = M // (T.q - 1)
    if T.has_tables:
        vals = g.eval_all_logs()
        karr = np.arange(M, dtype=np.int64)
        zero = vals == 0
        nz = ~zero
        slogs = (T.log_table[np.maximum(vals, 1)] - karr) % M
        groups: dict[tuple, set] = {}
        for k in karr[nz]:
            key = (int(slogs[k]), int(k % sub_step))
            groups.setdefault(key, set()).add(int(k % fq_step))
        for k in karr[zero]:
            groups.setdefault(("ker", int(k % sub_step)), set()).add(int(k % fq_step))
        return all(len(v) == 1 for v in groups.values())
    groups = {}
    for k in range(M):
        x = T.pow_code(T.gen_code, k)
        v = g.evaluate_code(x)
        key = ("ker" if v == 0 else T.dlog(T.div_code(v, x)), k % sub_step)
        groups.setdefault(key, set()).add(k % fq_step)
    return all(len(v) == 1 for v in groups.values())
