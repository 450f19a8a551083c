"""Exact arithmetic in the tower F_p < F_q < F_{q^n}, q = p^e.

A tower is built from (p, e, n): the big field F_{q^n} is realized as
F_p[X]/(m(X)) with m the first irreducible monic polynomial of degree e*n in
a fixed enumeration order, so identical parameters always produce identical
towers.  Elements are stored as integer codes: the base-p digit vector of the
power-basis coordinates, packed as sum(d_i * p^i).

All subfields live inside the single carrier and are recognized by membership
tests.  For fields with at most `table_bound` elements a full exp/log table
pair is precomputed (numpy int64), which makes multiplication, inversion,
powering, Frobenius and discrete logs O(1) and enables the vectorized bulk
scans used elsewhere; larger fields fall back to generic polynomial
arithmetic and square-and-multiply exponentiation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadElement,
    DegreeTooLarge,
    InternalError,
    NonPrime,
    NotADivisor,
)
from ._linalg import inv_mod_matrix, solve_mod

DEFAULT_TABLE_BOUND = 1 << 23
DEFAULT_ENUM_BOUND = 1 << 40

_FACTOR_CACHE: dict[int, dict[int, int]] = {}


def _factorint(m: int) -> dict[int, int]:
    if m not in _FACTOR_CACHE:
        import sympy

        _FACTOR_CACHE[m] = {int(p): int(k) for p, k in sympy.factorint(m).items()}
    return _FACTOR_CACHE[m]


def _is_prime(m: int) -> bool:
    import sympy

    return bool(sympy.isprime(m))


# ---------------------------------------------------------------------------
# Polynomials over F_p as little-endian coefficient lists.


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        a = _ptrim(a)
        if len(a) - 1 < dm:
            break
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        a = _ptrim(a)
    return a


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppow_x(exp, m, p):
    """X^exp mod m(X) by square and multiply."""
    result = [1]
    base = _pmod([0, 1], m, p)
    while exp:
        if exp & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        exp >>= 1
    return result


def is_irreducible(coeffs, p) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_p."""
    m = _ptrim(list(coeffs))
    d = len(m) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    xq = _ppow_x(p**d, m, p)
    base = _pmod([0, 1], m, p)
    if _ptrim([(x - y) % p for x, y in zip(
            xq + [0] * len(base), base + [0] * len(xq))]) != []:
        return False
    for ell in _factorint(d):
        xr = _ppow_x(p ** (d // ell), m, p)
        diff = [(x - y) % p for x, y in zip(
            xr + [0] * len(base), base + [0] * len(xr))]
        g = _pgcd(m, _ptrim(diff), p)
        if len(g) - 1 > 0:
            return False
    return True


def first_irreducible(p, degree):
    """First monic irreducible of given degree over F_p in enumeration order.

    Candidates are X^degree + c_{d-1} X^{d-1} + ... + c_0, ordered by the
    integer sum(c_i * p^i); the choice is what makes towers reproducible.
    """
    for v in range(p**degree):
        coeffs = []
        w = v
        for _ in range(degree):
            coeffs.append(w % p)
            w //= p
        coeffs.append(1)
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise InternalError(f"no irreducible polynomial of degree {degree} over F_{p}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """Construction data for a tower; two towers with equal specs are equal."""

    p: int
    e: int
    n: int
    modulus: tuple[int, ...]
    generator: int
    seed: int = 0

    def to_json(self):
        return {
            "p": self.p,
            "e": self.e,
            "n": self.n,
            "modulus": list(self.modulus),
            "generator": _digits(self.generator, self.p, self.e * self.n),
            "seed": self.seed,
        }


def _digits(code, p, width):
    out = []
    for _ in range(width):
        out.append(code % p)
        code //= p
    return out


def _pack(digits, p):
    code = 0
    for d in reversed(digits):
        code = code * p + int(d) % p
    return code


class FieldElement:
    """An element of F_{q^n}, identified by its packed digit code."""

    __slots__ = ("tower", "code")

    def __init__(self, tower, code):
        self.tower = tower
        self.code = code

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.tower.key != self.tower.key:
                raise BadElement("elements from different towers")
            return other.code
        if isinstance(other, int):
            return other % self.tower.p
        raise BadElement(f"cannot coerce {other!r}")

    def __add__(self, other):
        return FieldElement(self.tower, self.tower.add_code(self.code, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.tower, self.tower.sub_code(self.code, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.tower, self.tower.sub_code(self._coerce(other), self.code))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg_code(self.code))

    def __mul__(self, other):
        return FieldElement(self.tower, self.tower.mul_code(self.code, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FieldElement(self.tower, self._coerce(other)).inverse()

    def __rtruediv__(self, other):
        return FieldElement(self.tower, self._coerce(other)) * self.inverse()

    def __pow__(self, k):
        return FieldElement(self.tower, self.tower.pow_code(self.code, k))

    def inverse(self):
        return FieldElement(self.tower, self.tower.inv_code(self.code))

    def frob(self, k=1):
        """q-power Frobenius applied k times (k reduced mod n)."""
        return FieldElement(self.tower, self.tower.frob_code(self.code, k))

    # -- structure ------------------------------------------------------
    def is_zero(self):
        return self.code == 0

    @property
    def log(self):
        return self.tower.dlog(self.code)

    def norm(self, t=1):
        return FieldElement(self.tower, self.tower.rel_norm_code(self.code, t))

    def in_subfield(self, t):
        return self.tower.subfield_member_code(self.code, t)

    def multiplicative_order(self):
        return self.tower.order_of(self.code)

    def coords(self):
        return _digits(self.code, self.tower.p, self.tower.en)

    # -- plumbing -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.code == other.code and self.tower.key == other.tower.key
        if isinstance(other, int):
            return self.code == other % self.tower.p
        return NotImplemented

    def __hash__(self):
        return hash((self.tower.key, self.code))

    def __repr__(self):
        return self.tower.format_code(self.code)


class FieldTower:
    """The chain F_p < F_q < F_{q^n} with all precomputed machinery."""

    def __init__(self, spec: FieldSpec, table_bound=DEFAULT_TABLE_BOUND):
        self.spec_data = spec
        self.p = spec.p
        self.e = spec.e
        self.n = spec.n
        self.q = spec.p**spec.e
        self.en = spec.e * spec.n
        self.size = spec.p**self.en
        self.mult_order = self.size - 1
        self.modulus = spec.modulus
        self.seed = spec.seed
        self.key = (spec.p, spec.e, spec.n, spec.modulus)
        self._pvec = np.array([self.p**i for i in range(self.en)], dtype=np.int64)
        # rows for reducing X^(en+j), j = 0..en-2
        red = []
        cur = _pmod([0] * self.en + [1], list(self.modulus), self.p)
        for _ in range(self.en - 1):
            red.append(cur + [0] * (self.en - len(cur)))
            cur = _pmod(_pmul(cur, [0, 1], self.p), list(self.modulus), self.p)
        self._red_rows = red
        self.exp_table = None
        self.log_table = None
        self.gen_code = spec.generator
        if self.size <= table_bound:
            self._build_tables()
        self._frob_mat = None
        self._frob_pows: dict[int, np.ndarray] = {}
        self._fq_data = None
        self._caches: dict[str, dict] = {}

    # -- table construction ---------------------------------------------
    def _build_tables(self):
        M = self.mult_order
        en, p = self.en, self.p
        B = max(1, math.isqrt(M))
        baby = np.zeros((en, B), dtype=np.int64)
        c = 1
        for j in range(B):
            baby[:, j] = _digits(c, p, en)
            c = self._poly_mul_codes(c, self.gen_code)
        giant = np.zeros((en, en), dtype=np.int64)
        gB = c if B else 1  # g^B
        for i in range(en):
            giant[:, i] = _digits(self._poly_mul_codes(gB, int(self.p**i)), p, en)
        exp = np.empty(((M // B + 2) * B,), dtype=np.int64)
        cur = baby
        pos = 0
        while pos < M:
            exp[pos:pos + B] = self._pvec @ cur
            cur = (giant @ cur) % p
            pos += B
        self.exp_table = exp[:M].copy()
        log = np.full(self.size, -1, dtype=np.int64)
        log[self.exp_table] = np.arange(M, dtype=np.int64)
        self.log_table = log
        if log[1] != 0:
            raise InternalError("exp/log tables inconsistent")

    @property
    def has_tables(self):
        return self.exp_table is not None

    # -- raw code arithmetic ----------------------------------------------
    def add_code(self, a, b):
        p = self.p
        if p == 2:
            return a ^ b
        out = 0
        mult = 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg_code(self, a):
        p = self.p
        if p == 2:
            return a
        out = 0
        mult = 1
        while a:
            d = a % p
            if d:
                out += (p - d) * mult
            a //= p
            mult *= p
        return out

    def sub_code(self, a, b):
        return self.add_code(a, self.neg_code(b))

    def _poly_mul_codes(self, a, b):
        p, en = self.p, self.en
        da = _digits(a, p, en)
        db = _digits(b, p, en)
        prod = [0] * (2 * en - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        out = prod[:en]
        for j, row in enumerate(self._red_rows):
            c = prod[en + j]
            if c:
                for i in range(en):
                    out[i] = (out[i] + c * row[i]) % p
        return _pack(out, p)

    def mul_code(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.exp_table is not None:
            return int(self.exp_table[(int(self.log_table[a]) + int(self.log_table[b])) % self.mult_order])
        return self._poly_mul_codes(a, b)

    def pow_code(self, a, k):
        M = self.mult_order
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("0 has no negative powers")
            return 0
        k %= M
        if self.log_table is not None:
            return int(self.exp_table[(int(self.log_table[a]) * k) % M])
        result = 1
        base = a
        while k:
            if k & 1:
                result = self._poly_mul_codes(result, base)
            base = self._poly_mul_codes(base, base)
            k >>= 1
        return result

    def inv_code(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow_code(a, self.mult_order - 1)

    def div_code(self, a, b):
        return self.mul_code(a, self.inv_code(b))

    def dlog(self, a):
        """Discrete log base g; -1 convention is never used (0 raises)."""
        if a == 0:
            raise ZeroDivisionError("log of zero")
        if self.log_table is not None:
            return int(self.log_table[a])
        return self._bsgs(a)

    def _bsgs(self, a):
        M = self.mult_order
        m = math.isqrt(M) + 1
        baby = self._caches.setdefault("bsgs", {})
        if not baby:
            c = 1
            for j in range(m):
                baby.setdefault(c, j)
                c = self._poly_mul_codes(c, self.gen_code)
        step = self.inv_code(self.pow_code(self.gen_code, m))
        cur = a
        for i in range(m + 1):
            if cur in baby:
                return (i * m + baby[cur]) % M
            cur = self._poly_mul_codes(cur, step)
        raise InternalError("BSGS failed; generator is not primitive?")

    def element_key(self, code):
        """Total order key: g^0 < g^1 < ... < g^(M-1) < 0."""
        if code == 0:
            return self.mult_order
        return self.dlog(code)

    # -- Frobenius -------------------------------------------------------
    @property
    def frobenius_matrix(self):
        """F_p-matrix of x -> x^q in the power basis."""
        if self._frob_mat is None:
            en = self.en
            F = np.zeros((en, en), dtype=np.int64)
            for i in range(en):
                F[:, i] = _digits(self.pow_code(int(self.p**i), self.q), self.p, en)
            self._frob_mat = F
        return self._frob_mat

    def frob_power_matrix(self, k):
        k %= self.n
        if k not in self._frob_pows:
            F = np.eye(self.en, dtype=np.int64)
            for _ in range(k):
                F = (self.frobenius_matrix @ F) % self.p
            self._frob_pows[k] = F
        return self._frob_pows[k]

    def frob_code(self, a, k=1):
        k %= self.n
        if a == 0 or k == 0:
            return a
        if self.log_table is not None:
            return int(self.exp_table[(int(self.log_table[a]) * pow(self.q, k, self.mult_order)) % self.mult_order])
        v = (self.frob_power_matrix(k) @ np.array(_digits(a, self.p, self.en), dtype=np.int64)) % self.p
        return _pack(list(v), self.p)

    # -- subfield structure -----------------------------------------------
    def _check_divisor(self, t):
        if t < 1 or self.n % t != 0:
            raise NotADivisor(f"t={t} does not divide n={self.n}")

    def rel_norm_code(self, a, t=1):
        self._check_divisor(t)
        if a == 0:
            return 0
        expo = (self.q**self.n - 1) // (self.q**t - 1)
        return self.pow_code(a, expo)

    def subfield_member_code(self, a, t):
        self._check_divisor(t)
        return self.frob_code(a, t) == a

    def subfield_primitive_code(self, t):
        self._check_divisor(t)
        return self.pow_code(self.gen_code, (self.q**self.n - 1) // (self.q**t - 1))

    def order_of(self, a):
        if a == 0:
            raise ZeroDivisionError("order of zero")
        M = self.mult_order
        order = M
        for ell in _factorint(M):
            while order % ell == 0 and self.pow_code(a, order // ell) == 1:
                order //= ell
        return order

    # -- square roots and quadratics ---------------------------------------
    def sqrt_code(self, a):
        """A square root of a, or None if a is not a square (odd p)."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow_code(a, self.size // 2)
        if self.log_table is not None:
            la = int(self.log_table[a])
            if la % 2:
                return None
            return int(self.exp_table[la // 2])
        return self._tonelli(a)

    def _tonelli(self, a):
        M = self.mult_order
        if self.pow_code(a, M // 2) != 1:
            return None
        if M % 4 == 2:
            return self.pow_code(a, (M + 2) // 4)
        # Tonelli-Shanks; the tower generator is a non-residue by primitivity.
        s, Q = 0, M
        while Q % 2 == 0:
            Q //= 2
            s += 1
        z = self.pow_code(self.gen_code, Q)
        m, c, t = s, z, self.pow_code(a, Q)
        r = self.pow_code(a, (Q + 1) // 2)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.mul_code(t2, t2)
                i += 1
                if i == m:
                    return None
            b = c
            for _ in range(m - i - 1):
                b = self.mul_code(b, b)
            m, c = i, self.mul_code(b, b)
            t = self.mul_code(t, c)
            r = self.mul_code(r, b)
        return r

    def artin_schreier_solve(self, u):
        """Solve z^2 + z = u in characteristic 2, or None (F_2-linear system)."""
        if self.p != 2:
            raise InternalError("Artin-Schreier solving is a char-2 tool")
        S = np.zeros((self.en, self.en), dtype=np.int64)
        for i in range(self.en):
            S[:, i] = _digits(self.mul_code(1 << i, 1 << i), 2, self.en)
        A = (S + np.eye(self.en, dtype=np.int64)) % 2
        sol = solve_mod(A, _digits(u, 2, self.en), 2)
        if sol is None:
            return None
        return _pack(list(sol), 2)

    def solve_quadratic(self, b, c):
        """All roots in the field of x^2 + b x + c = 0, as a sorted code list."""
        if self.p == 2:
            if b == 0:
                return [self.sqrt_code(c)]
            binv2 = self.mul_code(self.inv_code(self.mul_code(b, b)), c)
            z = self.artin_schreier_solve(binv2)
            if z is None:
                return []
            r1 = self.mul_code(b, z)
            r2 = self.add_code(r1, b)
            return sorted({r1, r2})
        disc = self.sub_code(self.mul_code(b, b), self.mul_code(4 % self.p, c))
        s = self.sqrt_code(disc)
        if s is None:
            return []
        inv2 = self.inv_code(2 % self.p)
        r1 = self.mul_code(self.sub_code(s, b), inv2)
        r2 = self.mul_code(self.sub_code(0, self.add_code(b, s)), inv2)
        return sorted({r1, r2})

    # -- F_q coordinates ---------------------------------------------------
    def _fq_setup(self):
        if self._fq_data is None:
            e, p = self.e, self.p
            omega = self.subfield_primitive_code(1) if e > 1 else 1
            omega_pows = [self.pow_code(omega, m) for m in range(e)]
            # full F_p-basis omega^m * xbar^j of F_{q^n}, column index j*e + m
            cols = np.zeros((self.en, self.en), dtype=np.int64)
            for j, xbar_j in enumerate(self.fq_basis_codes):
                for m in range(e):
                    cols[:, j * e + m] = _digits(self.mul_code(xbar_j, omega_pows[m]), p, self.en)
            inv = inv_mod_matrix(cols, p)
            if inv is None:
                raise InternalError("power F_q-basis is degenerate")
            self._fq_data = (omega, omega_pows, inv)
        return self._fq_data

    @property
    def fq_basis_codes(self):
        """Codes of the F_q-basis 1, xbar, ..., xbar^(n-1) of F_{q^n}."""
        # xbar^j has the single digit 1 in position j, hence code p^j
        return [int(self.p**j) for j in range(self.n)]

    def to_fq_coords(self, code):
        """Coordinates in F_q (as codes) w.r.t. the power F_q-basis."""
        _, omega_pows, inv = self._fq_setup()
        v = np.array(_digits(code, self.p, self.en), dtype=np.int64)
        w = (inv @ v) % self.p
        out = []
        for j in range(self.n):
            c = 0
            for m in range(self.e):
                d = int(w[j * self.e + m])
                if d:
                    c = self.add_code(c, self.mul_code(d, omega_pows[m]))
            out.append(c)
        return out

    def from_fq_coords(self, coords):
        basis = self.fq_basis_codes
        acc = 0
        for c, b in zip(coords, basis):
            acc = self.add_code(acc, self.mul_code(c, b))
        return acc

    def mul_matrix(self, code):
        """F_p-matrix of y -> code * y in the power basis."""
        en = self.en
        Mm = np.zeros((en, en), dtype=np.int64)
        for i in range(en):
            Mm[:, i] = _digits(self.mul_code(code, int(self.p**i)), self.p, en)
        return Mm

    # -- element factories --------------------------------------------------
    def el(self, code):
        if not 0 <= code < self.size:
            raise BadElement(f"code {code} out of range")
        return FieldElement(self, code)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        return FieldElement(self, self.gen_code)

    def from_log(self, k):
        return FieldElement(self, self.pow_code(self.gen_code, k))

    def scalar(self, v):
        return FieldElement(self, v % self.p)

    def from_coords(self, digits):
        if len(digits) != self.en:
            raise BadElement(f"expected {self.en} coordinates")
        return FieldElement(self, _pack(list(digits), self.p))

    def elements(self):
        for code in range(self.size):
            yield FieldElement(self, code)

    def subfield_elements(self, t):
        """All codes of the subfield F_{q^t}, in g^k order (0 last)."""
        self._check_divisor(t)
        step = (self.q**self.n - 1) // (self.q**t - 1)
        out = [self.pow_code(self.gen_code, step * k) for k in range(self.q**t - 1)]
        out.append(0)
        return out

    def rng(self, salt=0):
        # repr-hash keeps the stream stable across processes (str hashing is not)
        import hashlib

        material = repr((self.seed, salt, self.key)).encode()
        return random.Random(int.from_bytes(hashlib.sha256(material).digest()[:8], "big"))

    # -- serialization -------------------------------------------------------
    def spec(self) -> FieldSpec:
        return self.spec_data

    def format_code(self, code, style="g^k"):
        if style == "digits":
            return _digits(code, self.p, self.en)
        if code == 0:
            return "0"
        return f"g^{self.dlog(code)}"

    def parse_element(self, obj) -> int:
        """Accepts "g^k"/"0"/"1"/"g" strings, digit arrays, ints (F_p scalars)."""
        if isinstance(obj, bool):
            raise BadElement("booleans are not field elements")
        if isinstance(obj, int):
            return obj % self.p
        if isinstance(obj, (list, tuple)):
            if len(obj) != self.en:
                raise BadElement(f"digit array must have length {self.en}")
            return _pack([int(d) for d in obj], self.p)
        if isinstance(obj, str):
            s = obj.strip()
            if s == "0":
                return 0
            if s == "1":
                return 1
            if s == "g":
                return self.gen_code
            if s.startswith("g^"):
                try:
                    k = int(s[2:])
                except ValueError as exc:
                    raise BadElement(f"bad exponent in {obj!r}") from exc
                return self.pow_code(self.gen_code, k)
            raise BadElement(f"cannot parse element {obj!r}")
        raise BadElement(f"cannot parse element {obj!r}")

    def __repr__(self):
        return f"FieldTower(p={self.p}, e={self.e}, n={self.n}, |F|={self.size})"

    # shared memo space for the other modules, keyed by polynomial coefficients
    def cache(self, name):
        return self._caches.setdefault(name, {})


def make_field(p, e, n, seed=0, modulus=None, generator=None,
               table_bound=DEFAULT_TABLE_BOUND, enum_bound=DEFAULT_ENUM_BOUND) -> FieldTower:
    """Build the tower F_p < F_{p^e} < F_{p^(e*n)} deterministically.

    The modulus is the first irreducible polynomial of degree e*n in the fixed
    enumeration order unless one is supplied; the generator is the first
    element (in code order, starting from the class of X) of multiplicative
    order p^(e*n) - 1.  Both choices are verified, also for supplied values.
    """
    if p < 2 or not _is_prime(p):
        raise NonPrime(f"p={p} is not prime")
    if e < 1 or n < 2:
        raise DegreeTooLarge(f"need e >= 1 and n >= 2, got e={e}, n={n}")
    if p ** (e * n) > enum_bound:
        raise DegreeTooLarge(
            f"field with p^(e*n) = {p**(e*n)} elements exceeds the enumeration bound {enum_bound}")
    en = e * n
    if modulus is None:
        modulus = first_irreducible(p, en)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) == en:
            modulus = modulus + (1,)
        if len(modulus) != en + 1 or modulus[-1] != 1:
            raise BadElement(f"modulus must be monic of degree {en}")
        if not is_irreducible(modulus, p):
            raise BadElement("supplied modulus is reducible")

    probe = FieldTower(FieldSpec(p, e, n, modulus, p, seed), table_bound=0)
    M = probe.mult_order
    factors = list(_factorint(M))

    def is_primitive(code):
        return all(probe.pow_code(code, M // ell) != 1 for ell in factors)

    if generator is None:
        generator = next(c for c in range(p, probe.size) if is_primitive(c))
    else:
        generator = int(generator)
        if not is_primitive(generator):
            raise BadElement("supplied generator is not primitive")
    return FieldTower(FieldSpec(p, e, n, modulus, generator, seed), table_bound=table_bound)


def field_from_json(doc, table_bound=DEFAULT_TABLE_BOUND) -> FieldTower:
    try:
        p, e, n = int(doc["p"]), int(doc.get("e", 1)), int(doc["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise BadElement(f"bad field spec: {exc}") from exc
    modulus = doc.get("modulus")
    gen = doc.get("generator")
    gen_code = None
    if gen is not None:
        gen_code = _pack([int(d) for d in gen], p) if isinstance(gen, (list, tuple)) else int(gen)
    return make_field(p, e, n, seed=int(doc.get("seed", 0)), modulus=modulus,
                      generator=gen_code, table_bound=table_bound)
