"""Stabilizer of U_f = {(x, f(x))} in GL(2, q^n), and its diagonalization.

A 2x2 matrix M = (a b; c d) acts on row vectors by (x, y) -> (x, y) M.  It
stabilizes U_f exactly when b x + d f(x) = f(a x + c f(x)) as q-polynomials,
which is F_p-linear in the coordinates of (a, b, c, d): b and d enter
linearly and a, c only through Frobenius powers.  The full solution set is
therefore the kernel of an (n*en) x (4*en) system over F_p; no search over
GL(2, q^n) is ever performed.

For scattered f the nonzero solutions form the multiplicative group of a
matrix field of order q^t with t | n; this is verified explicitly, and the
field is simultaneously diagonalized by a matrix of eigen-rows of one
multiplicative generator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllScalar,
    InternalError,
    NoTransversals,
    NonSplitQuadratic,
    NotAField,
    NotScattered,
    TooLarge,
)
from ._linalg import kernel_mod
from .field_tower import FieldElement, FieldTower, _pack
from .linearized import LinearizedPoly
from .scatter import is_scattered, linear_set

ENUMERATION_GUARD = 1 << 22


class Mat2:
    """2x2 matrix over F_{q^n}, row-major, acting on the right of row vectors."""

    __slots__ = ("tower", "a", "b", "c", "d")

    def __init__(self, tower, a, b, c, d):
        self.tower = tower
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, tower):
        return cls(tower, 1, 0, 0, 1)

    @classmethod
    def zero(cls, tower):
        return cls(tower, 0, 0, 0, 0)

    @classmethod
    def diag(cls, tower, x, y):
        return cls(tower, x, 0, 0, y)

    @classmethod
    def scalar(cls, tower, x):
        return cls(tower, x, 0, 0, x)

    @classmethod
    def from_elements(cls, rows):
        (a, b), (c, d) = rows
        return cls(a.tower, a.code, b.code, c.code, d.code)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        T = self.tower
        return Mat2(
            T,
            T.add_code(T.mul_code(self.a, other.a), T.mul_code(self.b, other.c)),
            T.add_code(T.mul_code(self.a, other.b), T.mul_code(self.b, other.d)),
            T.add_code(T.mul_code(self.c, other.a), T.mul_code(self.d, other.c)),
            T.add_code(T.mul_code(self.c, other.b), T.mul_code(self.d, other.d)),
        )

    def __add__(self, other):
        T = self.tower
        return Mat2(T, T.add_code(self.a, other.a), T.add_code(self.b, other.b),
                    T.add_code(self.c, other.c), T.add_code(self.d, other.d))

    def __sub__(self, other):
        T = self.tower
        return Mat2(T, T.sub_code(self.a, other.a), T.sub_code(self.b, other.b),
                    T.sub_code(self.c, other.c), T.sub_code(self.d, other.d))

    def scale(self, x):
        T = self.tower
        xc = x.code if isinstance(x, FieldElement) else int(x)
        return Mat2(T, *(T.mul_code(xc, v) for v in self.entries()))

    def det(self):
        T = self.tower
        return T.sub_code(T.mul_code(self.a, self.d), T.mul_code(self.b, self.c))

    def is_zero(self):
        return self.entries() == (0, 0, 0, 0)

    def is_identity(self):
        return self.entries() == (1, 0, 0, 1)

    def is_scalar(self):
        return self.b == 0 and self.c == 0 and self.a == self.d

    def is_diagonal(self):
        return self.b == 0 and self.c == 0

    def inverse(self):
        T = self.tower
        dt = self.det()
        if dt == 0:
            raise ZeroDivisionError("singular matrix")
        di = T.inv_code(dt)
        return Mat2(T, T.mul_code(di, self.d), T.mul_code(di, T.neg_code(self.b)),
                    T.mul_code(di, T.neg_code(self.c)), T.mul_code(di, self.a))

    def conjugate(self, N):
        """self * N * self^-1."""
        return self * N * self.inverse()

    def apply(self, point):
        """Row-vector action: (x, y) -> (x a + y c, x b + y d)."""
        T = self.tower
        x, y = point
        return (T.add_code(T.mul_code(x, self.a), T.mul_code(y, self.c)),
                T.add_code(T.mul_code(x, self.b), T.mul_code(y, self.d)))

    def power(self, k):
        T = self.tower
        result = Mat2.identity(T)
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, Mat2) and self.tower.key == other.tower.key
                and self.entries() == other.entries())

    def __hash__(self):
        return hash((self.tower.key, self.entries()))

    def __repr__(self):
        T = self.tower
        fmt = T.format_code
        return f"[{fmt(self.a)} {fmt(self.b)}; {fmt(self.c)} {fmt(self.d)}]"

    def to_json(self, style="g^k"):
        fmt = self.tower.format_code
        return [[fmt(self.a, style), fmt(self.b, style)],
                [fmt(self.c, style), fmt(self.d, style)]]


def normalize_point(tower, point):
    """Projective normalization to (1, m) or (0, 1)."""
    x, y = point
    if x != 0:
        return (1, tower.div_code(y, x))
    if y == 0:
        raise InternalError("the zero vector spans no point")
    return (0, 1)


@dataclass
class MatrixField:
    """The solution set of the stabilizer system, with field certification."""

    tower: FieldTower
    poly: LinearizedPoly | None
    elements: tuple          # all Mat2, zero included
    basis: tuple             # F_p-basis of the solution space, as Mat2
    t: int | None = None     # |elements| = q^t once verified
    generator: Mat2 | None = None
    verified: bool = False
    scattered_input: bool = True
    solution_dim: int = 0    # F_p-dimension of the solution space
    enumerated: bool = True  # False when the space was too large to list
    _eset: frozenset | None = None

    @property
    def order(self):
        return len(self.elements)

    @property
    def group_order(self):
        return len(self.elements) - 1

    def element_set(self):
        if self._eset is None:
            self._eset = frozenset(m.entries() for m in self.elements)
        return self._eset

    def contains(self, M: Mat2) -> bool:
        return M.entries() in self.element_set()

    def nonzero(self):
        return [m for m in self.elements if not m.is_zero()]


def _stabilizer_system(f: LinearizedPoly):
    """The F_p-matrix whose kernel is {(a,b,c,d) : b x + d f = f(a x + c f)}."""
    T = f.tower
    n, en, p = T.n, T.en, T.p
    # K[k][i] = f_i * f_{(k-i) mod n}^{q^i}, the q^k-slot weight of c^{q^i}
    K = [[0] * n for _ in range(n)]
    for k in range(n):
        for i in range(n):
            fi = f.coeffs[i]
            fj = f.coeffs[(k - i) % n]
            K[k][i] = T.mul_code(fi, T.frob_code(fj, i)) if fi and fj else 0
    A = np.zeros((n * en, 4 * en), dtype=np.int64)
    for k in range(n):
        rows = slice(k * en, (k + 1) * en)
        fk = f.coeffs[k]
        if fk:
            mul_fk = T.mul_matrix(fk)
            A[rows, 0:en] = (-mul_fk @ T.frob_power_matrix(k)) % p
            A[rows, 3 * en:4 * en] = mul_fk
        if k == 0:
            A[rows, en:2 * en] = np.eye(en, dtype=np.int64)
        blk = np.zeros((en, en), dtype=np.int64)
        for i in range(n):
            if K[k][i]:
                blk = (blk + T.mul_matrix(K[k][i]) @ T.frob_power_matrix(i)) % p
        A[rows, 2 * en:3 * en] = (-blk) % p
    return A % p


def compute_stabilizer(f: LinearizedPoly, check_scattered=True) -> MatrixField:
    """All M in F_{q^n}^{2x2} with U_f M contained in U_f, as a MatrixField.

    For scattered f the result is the stabilizer field G_f with the zero
    matrix adjoined, certified by verify_field.  For non-scattered f the raw
    solution set is returned with verified=False (the field structure is not
    guaranteed then); with check_scattered=True such input raises
    NotScattered instead.
    """
    T = f.tower
    cache = T.cache("stabilizer")
    if f.coeffs in cache:
        got = cache[f.coeffs]
        if check_scattered and not got.scattered_input:
            raise NotScattered("polynomial is not scattered")
        return got
    scattered = is_scattered(f)
    if check_scattered and not scattered:
        raise NotScattered("polynomial is not scattered")
    A = _stabilizer_system(f)
    basis_vecs = kernel_mod(A, T.p)
    dim = len(basis_vecs)
    en = T.en
    basis = tuple(
        Mat2(T, _pack(list(v[0:en]), T.p), _pack(list(v[en:2 * en]), T.p),
             _pack(list(v[2 * en:3 * en]), T.p), _pack(list(v[3 * en:4 * en]), T.p))
        for v in basis_vecs)
    if T.p**dim > ENUMERATION_GUARD:
        if scattered:
            raise TooLarge(
                f"stabilizer of size {T.p}^{dim} is beyond the enumeration guard")
        # degenerate non-scattered input: report the kernel without listing it
        field = MatrixField(T, f, (), basis, scattered_input=False,
                            solution_dim=dim, enumerated=False)
        cache[f.coeffs] = field
        return field
    if dim:
        combos = np.array(list(itertools.product(range(T.p), repeat=dim)), dtype=np.int64)
        digit_mat = (combos @ np.vstack(basis_vecs)) % T.p
        pvec = np.array([T.p**i for i in range(en)], dtype=np.int64)
        codes = [digit_mat[:, j * en:(j + 1) * en] @ pvec for j in range(4)]
        elements = tuple(Mat2(T, int(codes[0][r]), int(codes[1][r]),
                              int(codes[2][r]), int(codes[3][r]))
                         for r in range(digit_mat.shape[0]))
    else:
        elements = (Mat2.zero(T),)
    field = MatrixField(T, f, elements, basis, scattered_input=scattered,
                        solution_dim=dim)
    if not any(m.is_identity() for m in elements):
        raise InternalError("identity missing from the stabilizer solution set")
    if scattered:
        verify_field(field)
    cache[f.coeffs] = field
    return field


def verify_field(Mf: MatrixField, exhaustive_bound=200):
    """Certify that Mf is a commutative matrix field of order q^t, t | n.

    Checks containment of O and I and absence of singular nonzero elements,
    then finds a multiplicative generator and walks its full power sequence:
    the walk hitting every nonzero element exactly once certifies closure
    under products, cyclicity and hence commutativity in one pass.  Additive
    closure is certified on all basis pairs plus a seeded random sample
    (the set is F_p-bilinear in its basis), and every pairwise sum/product
    is checked exhaustively when the order is at most `exhaustive_bound`.
    Raises NotAField with the failing element or pair otherwise.
    """
    T = Mf.tower
    elements = Mf.elements
    order = len(elements)
    q = T.q
    t = 0
    while q**t < order:
        t += 1
    if q**t != order:
        raise NotAField(f"order {order} is not a power of q={q}")
    if t and T.n % t:
        raise NotAField(f"t={t} does not divide n={T.n}")
    eset = Mf.element_set()
    if (0, 0, 0, 0) not in eset:
        raise NotAField("zero matrix missing")
    if (1, 0, 0, 1) not in eset:
        raise NotAField("identity matrix missing")
    for m in elements:
        if not m.is_zero() and m.det() == 0:
            raise NotAField("singular nonzero element", element=m.entries())
    group_order = order - 1
    from .field_tower import _factorint

    factors = list(_factorint(group_order)) if group_order > 1 else []
    generator = None
    for m in elements:
        if m.is_zero() or (m.is_identity() and group_order > 1):
            continue
        if all(not m.power(group_order // ell).is_identity() for ell in factors):
            generator = m
            break
    if generator is None:
        raise NotAField("no element of full multiplicative order")
    walk = set()
    cur = Mat2.identity(T)
    for _ in range(group_order):
        cur = cur * generator
        walk.add(cur.entries())
    if not cur.is_identity() or len(walk) != group_order or not walk <= eset:
        raise NotAField("powers of the generator do not enumerate the nonzero part")
    # additive closure: exhaustive on basis pairs and a seeded sample
    basis = list(Mf.basis) if Mf.basis else [generator]
    rng = T.rng("verify_field")
    pairs = [(x, y) for i, x in enumerate(basis) for y in basis[i:]]
    pairs += [(elements[rng.randrange(order)], elements[rng.randrange(order)])
              for _ in range(min(64, order * order))]
    if order <= exhaustive_bound:
        pairs = [(x, y) for i, x in enumerate(elements) for y in elements[i:]]
    for x, y in pairs:
        if (x + y).entries() not in eset:
            raise NotAField("sum escapes the set", pair=(x.entries(), y.entries()))
        if order <= exhaustive_bound:
            if (x * y).entries() not in eset:
                raise NotAField("product escapes the set", pair=(x.entries(), y.entries()))
            if x * y != y * x:
                raise NotAField("non-commutative pair", pair=(x.entries(), y.entries()))
    Mf.t = t
    Mf.generator = generator
    Mf.verified = True
    return t, generator


@dataclass
class DiagonalizationResult:
    """Simultaneous diagonalization P Mf P^-1 = {diag(x, x^(p^j)) : x in F_{q^t}}."""

    P: Mat2
    t: int
    p_exponent: int          # j with sigma = p^j on the diagonal
    eigen_points: tuple      # normalized projective points, rows of P
    diag_pairs: tuple        # (x, x^sigma) codes for every element

    @property
    def s(self):
        """sigma as a q-power; defined whenever sigma lies in Gal(F_{q^t}|F_q)."""
        e = self.P.tower.e
        if self.p_exponent % e:
            raise InternalError("diagonal automorphism is not a q-power")
        return self.p_exponent // e


def diagonalize(Mf: MatrixField) -> DiagonalizationResult:
    """Find P whose rows are common eigenvectors of every element of Mf.

    The characteristic quadratic of a multiplicative generator always splits
    over F_{q^n} (the field is commutative, so its elements are simultaneously
    diagonalizable there); a non-split quadratic therefore raises
    NonSplitQuadratic as an internal-error signal.
    """
    T = Mf.tower
    if not Mf.verified:
        verify_field(Mf)
    if Mf.t == 1:
        raise AllScalar("only scalar multiples of the identity; nothing to diagonalize")
    A = Mf.generator
    if A.is_scalar():
        # a field of scalar matrices is already diagonal with trivial twist
        P = Mat2.identity(T)
        pairs = tuple((m.a, m.d) for m in Mf.elements)
        return DiagonalizationResult(P, Mf.t, 0, ((1, 0), (0, 1)), pairs)
    tr = T.add_code(A.a, A.d)
    roots = T.solve_quadratic(T.neg_code(tr), A.det())
    if len(roots) < 2:
        raise NonSplitQuadratic(
            "characteristic polynomial of the generator does not split; "
            "this contradicts simultaneous diagonalizability")

    def eigen_row(mu):
        if A.c != 0 or T.sub_code(mu, A.a) != 0:
            row = (A.c, T.sub_code(mu, A.a))
        else:
            row = (T.sub_code(mu, A.d), A.b)
        x, y = row
        if x != 0:
            inv = T.inv_code(x)
            return (1, T.mul_code(y, inv))
        return (0, 1)

    rows = [eigen_row(mu) for mu in roots]
    rows.sort(key=lambda r: ((0 if r[0] != 0 else 1),
                             T.element_key(r[0]), T.element_key(r[1])))
    P = Mat2(T, rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    if P.det() == 0:
        raise InternalError("eigen rows are dependent")
    Pinv = P.inverse()
    pairs = []
    for m in Mf.elements:
        c = P * m * Pinv
        if c.b != 0 or c.c != 0:
            raise InternalError("conjugation failed to diagonalize an element",)
        pairs.append((c.a, c.d))
    Ad = P * A * Pinv
    x0, y0 = Ad.a, Ad.d
    p_exp = None
    for j in range(T.e * Mf.t):
        if T.pow_code(x0, T.p**j) == y0:
            p_exp = j
            break
    if p_exp is None:
        raise InternalError("diagonal entries are not Frobenius-linked")
    pk = T.p**p_exp
    for x, y in pairs:
        if T.pow_code(x, pk) != y:
            raise InternalError("diagonal twist is not uniform across the field")
    # when the F_q-scalars lie in Mf the twist must be a q-power
    scalars_present = all(
        (T.mul_code(c, 1), 0, 0, T.mul_code(c, 1)) in Mf.element_set()
        for c in T.subfield_elements(1)[:-1])
    if scalars_present and p_exp % T.e:
        raise InternalError("q-scalars present but twist is not in Gal(F_{q^t}|F_q)")
    eigen_points = (normalize_point(T, (P.a, P.b)), normalize_point(T, (P.c, P.d)))
    return DiagonalizationResult(P, Mf.t, p_exp, eigen_points, tuple(pairs))


def transversal_points(f: LinearizedPoly):
    """The two common eigen-directions of G_f; they never lie on L_f."""
    Mf = compute_stabilizer(f)
    if Mf.t == 1:
        raise NoTransversals("stabilizer is the scalar group; no distinguished points")
    diag = diagonalize(Mf)
    X, Y = diag.eigen_points
    L = linear_set(f)
    T = f.tower
    for pt in (X, Y):
        if pt[0] == 1 and L.contains_slope(pt[1]):
            raise InternalError("transversal point lies on the linear set")
    return X, Y
