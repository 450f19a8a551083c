"""The rank-distance code spanned by x and f(x), and its idealizers.

Codewords are the q-polynomials a x + b f(x); the minimum distance is the
minimum rank over nonzero codewords.  Since rank is invariant under scalar
multiples, one representative per projective class (a : b) suffices, which
cuts q^(2n) rank computations down to q^n + 1.  Idealizers are computed as
kernels of exact F_p-linear systems: membership in the code is the
annihilator condition of its coefficient-vector span, and composition by a
fixed q-polynomial is an F_p-linear operator on coefficient vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import Mismatch, NotAField, TooLarge
from ._linalg import kernel_mod, rank_mod
from .field_tower import FieldTower, _digits, _pack
from .linearized import LinearizedPoly
from .stabilizer import compute_stabilizer

EXACT_CLASS_BOUND = 1 << 20


@dataclass
class RdCode:
    """C_f = {a x + b f(x)} with implicit codeword access by (a, b)."""

    tower: FieldTower
    f: LinearizedPoly

    def codeword(self, a, b) -> LinearizedPoly:
        ac = a if isinstance(a, int) else a.code
        bc = b if isinstance(b, int) else b.code
        x = LinearizedPoly.identity(self.tower)
        return x.scale(ac) + self.f.scale(bc)

    @property
    def degenerate(self):
        """True when f is a scalar multiple of x, so the span is 1-dimensional."""
        return all(c == 0 for c in self.f.coeffs[1:])

    def size(self):
        q2n = self.tower.q ** (2 * self.tower.n)
        return self.tower.q ** self.tower.n if self.degenerate else q2n

    def contains(self, w: LinearizedPoly):
        """(a, b) with w = a x + b f, or None; solved on two slots, checked on all."""
        T = self.tower
        f = self.f
        # pick a slot where f is nonzero to pin b (unless f = 0)
        pivot = next((i for i in range(1, T.n) if f.coeffs[i]), None)
        if pivot is None:
            b = 0
            a = w.coeffs[0]
            if f.coeffs[0]:
                # f is c*x: a x + b c x; split is not unique, take b = 0
                pass
        else:
            b = T.div_code(w.coeffs[pivot], f.coeffs[pivot])
            a = T.sub_code(w.coeffs[0], T.mul_code(b, f.coeffs[0]))
        if self.codeword(a, b) == w:
            return (a, b)
        return None


def code_of(f: LinearizedPoly) -> RdCode:
    return RdCode(f.tower, f)


def min_distance(C: RdCode, mode="exact", sample_size=2000, seed=0,
                 class_bound=EXACT_CLASS_BOUND) -> int:
    """Minimum rank over nonzero codewords.

    Exact mode enumerates the q^n + 1 projective classes (1, b) and (0, 1);
    sample mode draws seeded random classes and yields an upper bound only.
    """
    T = C.tower
    n_classes = T.size + 1
    if mode == "exact" and n_classes > class_bound:
        raise TooLarge(f"{n_classes} projective classes exceed the exact-mode bound; "
                       "request sampling mode")
    p, e = T.p, T.e
    Mf = C.f.fp_matrix()
    eye = np.eye(T.en, dtype=np.int64)
    best = T.n + 1

    def class_rank(bcode):
        M = (eye + T.mul_matrix(bcode) @ Mf) % p
        r = rank_mod(M, p)
        return r // e

    if mode == "exact":
        bs = range(T.size)
    else:
        rng = T.rng(("min_distance", seed))
        bs = (rng.randrange(T.size) for _ in range(sample_size))
    for b in bs:
        r = class_rank(b)
        if 0 < r < best:
            best = r
    r_inf = rank_mod(Mf, p) // e  # the class (0, 1)
    if 0 < r_inf < best:
        best = r_inf
    return best


def min_distance_naive(C: RdCode) -> int:
    """Full enumeration over all q^(2n) coefficient pairs; oracle use only."""
    T = C.tower
    if T.size ** 2 > 1 << 18:
        raise TooLarge("naive enumeration is reserved for tiny fields")
    best = T.n + 1
    for a in range(T.size):
        for b in range(T.size):
            if a == 0 and b == 0:
                continue
            w = C.codeword(a, b)
            if w.is_zero():
                continue
            best = min(best, w.rank())
    return best


@dataclass
class Idealizer:
    side: str                 # "left" or "right"
    elements: tuple           # LinearizedPoly, zero included
    basis: tuple

    @property
    def order(self):
        return len(self.elements)

    def element_set(self):
        return frozenset(w.coeffs for w in self.elements)

    def contains(self, w: LinearizedPoly):
        return w.coeffs in self.element_set()


def _poly_vec(f: LinearizedPoly):
    T = f.tower
    out = []
    for c in f.coeffs:
        out.extend(_digits(c, T.p, T.en))
    return out


def _code_annihilator(C: RdCode):
    """Rows N with N v = 0 exactly for coefficient vectors v of members of C."""
    T = C.tower
    rows = []
    for m in range(T.en):
        beta = int(T.p**m)
        rows.append(_poly_vec(C.codeword(beta, 0)))
        rows.append(_poly_vec(C.codeword(0, beta)))
    return kernel_mod(np.array(rows, dtype=np.int64), T.p)


def _right_compose_operator(T: FieldTower, f: LinearizedPoly):
    """Matrix of phi -> f o phi on coefficient vectors."""
    n, en = T.n, T.en
    Op = np.zeros((n * en, n * en), dtype=np.int64)
    for i in range(n):
        fi = f.coeffs[i]
        if not fi:
            continue
        blk = (T.mul_matrix(fi) @ T.frob_power_matrix(i)) % T.p
        for j in range(n):
            k = (i + j) % n
            Op[k * en:(k + 1) * en, j * en:(j + 1) * en] = \
                (Op[k * en:(k + 1) * en, j * en:(j + 1) * en] + blk) % T.p
    return Op


def _left_compose_operator(T: FieldTower, psi: LinearizedPoly):
    """Matrix of phi -> phi o psi on coefficient vectors."""
    n, en = T.n, T.en
    Op = np.zeros((n * en, n * en), dtype=np.int64)
    # coefficient k = i + j of phi o psi picks phi_i * psi_j^{q^i}
    for i in range(n):
        for j in range(n):
            pj = psi.coeffs[j]
            if not pj:
                continue
            k = (i + j) % n
            blk = T.mul_matrix(T.frob_code(pj, i))
            Op[k * en:(k + 1) * en, i * en:(i + 1) * en] = \
                (Op[k * en:(k + 1) * en, i * en:(i + 1) * en] + blk) % T.p
    return Op


def _enumerate_polys(T: FieldTower, basis_vecs):
    dim = len(basis_vecs)
    if T.p**dim > 1 << 22:
        raise TooLarge(f"idealizer of size {T.p}^{dim} exceeds the enumeration guard")
    n, en = T.n, T.en
    out = []
    if dim == 0:
        return [LinearizedPoly.zero(T)]
    combos = np.array(list(itertools.product(range(T.p), repeat=dim)), dtype=np.int64)
    digit_mat = (combos @ np.vstack(basis_vecs)) % T.p
    for r in range(digit_mat.shape[0]):
        coeffs = [_pack(list(digit_mat[r, j * en:(j + 1) * en]), T.p) for j in range(n)]
        out.append(LinearizedPoly(T, coeffs))
    return out


def right_idealizer(C: RdCode) -> Idealizer:
    """{phi : c o phi in C for all c in C}, i.e. phi in C and f o phi in C."""
    T = C.tower
    N = _code_annihilator(C)
    Tf = _right_compose_operator(T, C.f)
    system = np.vstack([N, (N @ Tf) % T.p])
    basis = kernel_mod(system, T.p)
    elems = _enumerate_polys(T, basis)
    return Idealizer("right", tuple(elems), tuple(map(tuple, basis)))


def left_idealizer(C: RdCode) -> Idealizer:
    """{phi : phi o c in C for all c in C}, via the F_p-basis of C."""
    T = C.tower
    N = _code_annihilator(C)
    blocks = []
    for m in range(T.en):
        beta = int(T.p**m)
        for gen_poly in (C.codeword(beta, 0), C.codeword(0, beta)):
            Rop = _left_compose_operator(T, gen_poly)
            blocks.append((N @ Rop) % T.p)
    basis = kernel_mod(np.vstack(blocks), T.p)
    elems = _enumerate_polys(T, basis)
    return Idealizer("left", tuple(elems), tuple(map(tuple, basis)))


def verify_idealizer_field(I: Idealizer, tower: FieldTower, exhaustive_bound=200):
    """Closure, commutativity, invertibility and cyclic generator checks."""
    elements = I.elements
    order = len(elements)
    q = tower.q
    t = 0
    while q**t < order:
        t += 1
    if q**t != order:
        raise NotAField(f"idealizer order {order} is not a power of q")
    eset = I.element_set()
    x = LinearizedPoly.identity(tower)
    if x.coeffs not in eset:
        raise NotAField("identity map missing from idealizer")
    for w in elements:
        if not w.is_zero() and w.rank() != tower.n:
            raise NotAField("singular nonzero idealizer element", element=w.coeffs)
    group_order = order - 1
    from .field_tower import _factorint

    factors = list(_factorint(group_order)) if group_order > 1 else []

    def poly_pow(w, k):
        acc = x
        base = w
        while k:
            if k & 1:
                acc = base.compose(acc)
            base = base.compose(base)
            k >>= 1
        return acc

    generator = None
    for w in elements:
        if w.is_zero() or (w == x and group_order > 1):
            continue
        if all(poly_pow(w, group_order // ell) != x for ell in factors):
            generator = w
            break
    if generator is None:
        raise NotAField("no idealizer element of full multiplicative order")
    walk = set()
    cur = x
    for _ in range(group_order):
        cur = cur.compose(generator)
        walk.add(cur.coeffs)
    if cur != x or len(walk) != group_order or not walk <= eset:
        raise NotAField("generator powers do not enumerate the nonzero idealizer")
    pairs = [(a, b) for i, a in enumerate(elements[:exhaustive_bound])
             for b in elements[i:exhaustive_bound]]
    for a, b in pairs:
        if (a + b).coeffs not in eset:
            raise NotAField("idealizer not closed under addition")
    return t, generator


def stabilizer_to_right_idealizer(M, f: LinearizedPoly) -> LinearizedPoly:
    """The map (a b; c d) -> a x + c f underlying the group isomorphism."""
    x = LinearizedPoly.identity(f.tower)
    return x.scale(M.a) + f.scale(M.c)


def check_idealizer_matches_stabilizer(f: LinearizedPoly) -> dict:
    """|I_R(C_f)| = |G_f| + 1, both fields, and the explicit isomorphism works.

    Raises Mismatch when any part fails; returns a small report otherwise.
    """
    T = f.tower
    Mf = compute_stabilizer(f)
    C = code_of(f)
    IR = right_idealizer(C)
    if IR.order != Mf.order:
        raise Mismatch(f"right idealizer order {IR.order} != stabilizer order {Mf.order}")
    t, _ = verify_idealizer_field(IR, T)
    if t != Mf.t:
        raise Mismatch("field degrees disagree")
    iset = IR.element_set()
    images = set()
    for M in Mf.elements:
        phi = stabilizer_to_right_idealizer(M, f)
        if phi.coeffs not in iset:
            raise Mismatch("stabilizer image escapes the right idealizer")
        images.add(phi.coeffs)
    if len(images) != Mf.order or images != iset:
        raise Mismatch("stabilizer does not biject onto the right idealizer")
    rng = T.rng("iso-check")
    elems = list(Mf.elements)
    for _ in range(8):
        M1 = elems[rng.randrange(len(elems))]
        M2 = elems[rng.randrange(len(elems))]
        lhs = stabilizer_to_right_idealizer(M1 * M2, f)
        rhs = stabilizer_to_right_idealizer(M2, f).compose(
            stabilizer_to_right_idealizer(M1, f))
        if lhs != rhs:
            raise Mismatch("isomorphism is not multiplicative")
    return {"order": IR.order, "t": t, "matches": True}
