"""Algebra of q-polynomials of q-degree < n over F_{q^n}.

A polynomial sum(a_i x^(q^i)) is held as the length-n tuple of coefficient
codes.  Composition is reduced mod x^(q^n) - x, so these objects are exactly
the F_q-linear endomorphisms of F_{q^n}; the matrix correspondence (w.r.t. an
F_q-basis) and its inverse provide rank, kernel and inversion.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NotABasis, NotBijective, NotStandard, ZeroPolynomial
from ._linalg import fe_inverse, fe_rank, fe_solve
from .field_tower import FieldElement, FieldTower


class LinearizedPoly:
    """sum(a_i x^(q^i)) with exactly n coefficients (codes) over F_{q^n}."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs):
        codes = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                codes.append(c.code)
            else:
                codes.append(int(c))
        if len(codes) != tower.n:
            raise ZeroPolynomial(
                f"need exactly n={tower.n} coefficients, got {len(codes)}")
        self.tower = tower
        self.coeffs = tuple(codes)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, tower):
        return cls(tower, [0] * tower.n)

    @classmethod
    def identity(cls, tower):
        return cls.monomial(tower, 0)

    @classmethod
    def monomial(cls, tower, i, coeff=1):
        c = [0] * tower.n
        c[i % tower.n] = coeff if isinstance(coeff, int) else coeff.code
        return cls(tower, c)

    @classmethod
    def from_json(cls, tower, doc):
        return cls(tower, [tower.parse_element(c) for c in doc["coeffs"]])

    def to_json(self, style="digits"):
        return {"coeffs": [self.tower.format_code(c, style) for c in self.coeffs]}

    # -- basic structure -----------------------------------------------------
    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    @property
    def support(self):
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    @property
    def q_degree(self):
        s = self.support
        return s[-1] if s else None

    def coeff(self, i):
        return FieldElement(self.tower, self.coeffs[i % self.tower.n])

    def __eq__(self, other):
        return (isinstance(other, LinearizedPoly)
                and self.tower.key == other.tower.key
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.tower.key, self.coeffs))

    def __repr__(self):
        T = self.tower
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "x" if i == 0 else (f"x^q" if i == 1 else f"x^q^{i}")
            cs = T.format_code(c)
            terms.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms)

    # -- linear combinations ---------------------------------------------------
    def __add__(self, other):
        T = self.tower
        return LinearizedPoly(T, [T.add_code(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        T = self.tower
        return LinearizedPoly(T, [T.sub_code(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        T = self.tower
        return LinearizedPoly(T, [T.neg_code(a) for a in self.coeffs])

    def scale(self, a):
        """a * f, coefficientwise."""
        T = self.tower
        ac = a.code if isinstance(a, FieldElement) else int(a)
        return LinearizedPoly(T, [T.mul_code(ac, c) for c in self.coeffs])

    def transform(self, a, b):
        """The q-polynomial a * f(b x); coefficient i becomes a*f_i*b^(q^i)."""
        T = self.tower
        ac = a.code if isinstance(a, FieldElement) else int(a)
        bc = b.code if isinstance(b, FieldElement) else int(b)
        out = []
        for i, c in enumerate(self.coeffs):
            out.append(T.mul_code(ac, T.mul_code(c, T.frob_code(bc, i))) if c else 0)
        return LinearizedPoly(T, out)

    def twist(self, k):
        """Coefficientwise p^k power (the sigma-twist used for semilinear maps)."""
        T = self.tower
        pk = T.p ** (k % T.en)
        return LinearizedPoly(T, [T.pow_code(c, pk) for c in self.coeffs])

    # -- evaluation ---------------------------------------------------------
    def evaluate_code(self, x):
        T = self.tower
        if x == 0:
            return 0
        acc = 0
        if T.has_tables:
            lx = T.dlog(x)
            M = T.mult_order
            for i in self.support:
                la = T.dlog(self.coeffs[i])
                acc = T.add_code(acc, int(T.exp_table[(la + lx * pow(T.q, i, M)) % M]))
            return acc
        for i in self.support:
            acc = T.add_code(acc, T.mul_code(self.coeffs[i], T.frob_code(x, i)))
        return acc

    def evaluate(self, x: FieldElement) -> FieldElement:
        return FieldElement(self.tower, self.evaluate_code(x.code))

    def __call__(self, x):
        return self.evaluate(x)

    def eval_all_logs(self):
        """Codes of f(g^k) for k = 0..M-1 as a numpy array (table fields only)."""
        T = self.tower
        M = T.mult_order
        if not T.has_tables:
            raise ZeroPolynomial("bulk evaluation needs exp/log tables")
        karr = np.arange(M, dtype=np.int64)
        acc = np.zeros(M, dtype=np.int64)
        for i in self.support:
            la = T.dlog(self.coeffs[i])
            term = T.exp_table[(la + karr * pow(T.q, i, M)) % M]
            acc = add_code_arrays(T, acc, term)
        return acc

    # -- composition -----------------------------------------------------------
    def compose(self, other: "LinearizedPoly") -> "LinearizedPoly":
        """self(other(x)) reduced mod x^(q^n) - x."""
        T = self.tower
        n = T.n
        out = [0] * n
        for i in self.support:
            fi = self.coeffs[i]
            for j in other.support:
                k = (i + j) % n
                out[k] = T.add_code(out[k], T.mul_code(fi, T.frob_code(other.coeffs[j], i)))
        return LinearizedPoly(T, out)

    def __matmul__(self, other):
        return self.compose(other)

    # -- matrix correspondence ---------------------------------------------------
    def default_basis(self):
        T = self.tower
        return [FieldElement(T, c) for c in T.fq_basis_codes]

    def _check_basis(self, basis):
        T = self.tower
        rows = []
        for b in basis:
            co = T.to_fq_coords(b.code)
            rows.append([FieldElement(T, c) for c in co])
        if len(basis) != T.n or fe_rank(rows) != T.n:
            raise NotABasis("supplied elements are not an F_q-basis")

    def to_matrix(self, basis=None):
        """n x n matrix over F_q; column j = F_q-coordinates of f(basis_j)."""
        T = self.tower
        if basis is None:
            basis = self.default_basis()
        else:
            self._check_basis(basis)
        cols = [T.to_fq_coords(self.evaluate_code(b.code)) for b in basis]
        return [[FieldElement(T, cols[j][i]) for j in range(T.n)] for i in range(T.n)]

    @classmethod
    def from_matrix(cls, tower, matrix, basis=None):
        """Unique q-polynomial acting as the given matrix over F_q.

        Solves the Moore system sum_i a_i basis_j^(q^i) = image_j; the system
        is nonsingular for any basis, so failure is an internal error.
        """
        T = tower
        if basis is None:
            basis = [FieldElement(T, c) for c in T.fq_basis_codes]
        n = T.n
        images = []
        for j in range(n):
            acc = 0
            for i in range(n):
                entry = matrix[i][j]
                ec = entry.code if isinstance(entry, FieldElement) else int(entry)
                acc = T.add_code(acc, T.mul_code(ec, basis[i].code))
            images.append(FieldElement(T, acc))
        rows = [[basis[j].frob(i) for i in range(n)] for j in range(n)]
        sol = fe_solve(rows, images)
        if sol is None:
            raise NotABasis("Moore system is singular; basis was dependent")
        return cls(T, [s.code for s in sol])

    def fp_matrix(self):
        """en x en matrix over F_p of the action on power-basis coordinates."""
        T = self.tower
        cols = np.zeros((T.en, T.en), dtype=np.int64)
        from .field_tower import _digits

        for i in range(T.en):
            cols[:, i] = _digits(self.evaluate_code(int(T.p**i)), T.p, T.en)
        return cols

    def rank(self):
        """Rank as an F_q-endomorphism (the F_p rank is e times larger)."""
        from ._linalg import rank_mod

        r = rank_mod(self.fp_matrix(), self.tower.p)
        if r % self.tower.e:
            raise ZeroPolynomial("F_p-rank not divisible by e; map is not F_q-linear")
        return r // self.tower.e

    def kernel_dim(self):
        return self.tower.n - self.rank()

    def invert(self) -> "LinearizedPoly":
        """Compositional inverse; raises NotBijective if the kernel is nontrivial."""
        cache = self.tower.cache("invert")
        if self.coeffs in cache:
            return cache[self.coeffs]
        inv = fe_inverse(self.to_matrix())
        if inv is None:
            raise NotBijective("polynomial has nontrivial kernel")
        out = LinearizedPoly.from_matrix(self.tower, inv)
        cache[self.coeffs] = out
        cache[out.coeffs] = self
        return out

    # -- exponent combinatorics ---------------------------------------------------
    def delta_profile(self) -> "DeltaProfile":
        if self.is_zero():
            raise ZeroPolynomial("the zero polynomial has no exponent profile")
        n = self.tower.n
        supp = self.support
        deltas = {n}
        for i in supp:
            for j in supp:
                if i != j:
                    deltas.add((i - j) % n)
        return DeltaProfile(frozenset(deltas), math.gcd(*deltas))

    def standard_form_params(self):
        """(s, t) with all exponents congruent to s mod t = t_h; NotStandard if t_h = 1."""
        prof = self.delta_profile()
        if prof.t_h == 1:
            raise NotStandard("exponent gcd is 1")
        t = prof.t_h
        s = self.support[0] % t
        for i in self.support:
            if i % t != s:
                raise ZeroPolynomial("exponent profile inconsistent")  # unreachable
        return s, t


class DeltaProfile:
    """Set of exponent differences of a q-polynomial, and their gcd."""

    __slots__ = ("delta_set", "t_h")

    def __init__(self, delta_set, t_h):
        self.delta_set = delta_set
        self.t_h = t_h

    @property
    def is_standard(self):
        return self.t_h > 1

    def __repr__(self):
        return f"DeltaProfile({sorted(self.delta_set)}, t_h={self.t_h})"


def add_code_arrays(tower, A, B):
    """Digitwise mod-p addition of two int64 code arrays."""
    p = tower.p
    if p == 2:
        return A ^ B
    out = np.zeros_like(A)
    for i in range(tower.en):
        pi = int(p**i)
        out += ((A // pi + B // pi) % p) * pi
    return out
