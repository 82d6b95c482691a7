"""Builders for the concrete finite rings and Morita contexts used by the suite.

Index encodings are little-endian mixed radix throughout: an element with
component digits ``(d0, d1, ...)`` over component sizes ``(n0, n1, ...)``
has index ``d0 + n0*d1 + n0*n1*d2 + ...``. Components are

* ``product``: the factors, in order;
* ``matrix_ring``: entries in row-major order ``(0,0), (0,1), ..., (k-1,k-1)``;
* ``triangular_ring``: entries ``(i, j)`` with ``i <= j`` in row-major order;
* ``poly_quotient``: coefficients of ``x^0, x^1, ...``;
* ``group_algebra``: coefficients of the group elements ``0, 1, ...``;
* ``morita_ring``: ``(r, v, w, s)``.

So ``zmod(p)`` and ``gf(p, 1)`` share indices, and the polynomial ``x`` has
index ``|R|``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    BimoduleAxiomViolation,
    CapExceeded,
    ContextAxiomViolation,
    NotAGroup,
    NotCommutative,
    NotMonic,
    NotPrime,
)
from .ring_core import (
    FiniteRing,
    additive_generators,
    default_cap,
    extend_additive,
)

_CHUNK_ENTRIES = 1 << 21


def _cap(cap: Optional[int]) -> int:
    return default_cap() if cap is None else cap


def _check_size(node: str, size: int, cap: Optional[int]) -> None:
    cap = _cap(cap)
    if size > cap:
        raise CapExceeded(node, size, cap)


def _decode(radices: Sequence[int], n: int) -> list[np.ndarray]:
    rest = np.arange(n, dtype=np.int64)
    digits = []
    for r in radices:
        digits.append(rest % r)
        rest = rest // r
    return digits


def _weights(radices: Sequence[int]) -> list[int]:
    w, acc = [], 1
    for r in radices:
        w.append(acc)
        acc *= r
    return w


def _encode(digits: Sequence[int], radices: Sequence[int]) -> int:
    return sum(int(d) * w for d, w in zip(digits, _weights(radices)))


def _assemble(
    radices: Sequence[int],
    add_tables: Sequence[np.ndarray],
    mul_fn: Callable[[list, list], list],
    zero: Sequence[int],
    one: Sequence[int],
    names: Sequence[str],
    provenance: str,
) -> FiniteRing:
    """Tabulate a ring whose elements are digit vectors.

    Addition is componentwise through ``add_tables``; ``mul_fn`` maps two
    lists of broadcastable digit arrays to the product's digit arrays.
    """
    n = math.prod(radices)
    digits = _decode(radices, n)
    weights = _weights(radices)
    add = np.empty((n, n), dtype=np.int32)
    mul = np.empty((n, n), dtype=np.int32)
    right = [d[None, :] for d in digits]
    rows = max(1, _CHUNK_ENTRIES // n)
    for start in range(0, n, rows):
        stop = min(n, start + rows)
        left = [d[start:stop, None] for d in digits]
        add[start:stop] = sum(t[a, b] * w for t, a, b, w in zip(add_tables, left, right, weights))
        prod = mul_fn(left, right)
        mul[start:stop] = sum(np.asarray(p, dtype=np.int64) * w for p, w in zip(prod, weights))
    return FiniteRing(add, mul, _encode(zero, radices), _encode(one, radices), names, provenance)


def _dot(R: FiniteRing, pairs) -> np.ndarray:
    acc = None
    for x, y in pairs:
        term = R.mul[x, y]
        acc = term if acc is None else R.add[acc, term]
    return acc


# --------------------------------------------------------------------------
# rings


def zmod(n: int, cap: Optional[int] = None) -> FiniteRing:
    """``Z/nZ``; ``n = 1`` gives the (degenerate) zero ring."""
    if n < 1:
        raise ValueError("zmod needs n >= 1")
    _check_size(f"Z{n}", n, cap)
    i = np.arange(n)
    return FiniteRing(
        np.add.outer(i, i) % n, np.multiply.outer(i, i) % n, 0, 1 % n, [str(k) for k in i], f"Z{n}"
    )


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by monic ``f`` over Z/p (ascending coefficient lists)."""
    a = [c % p for c in a]
    d = len(f) - 1
    for top in range(len(a) - 1, d - 1, -1):
        c = a[top]
        if c:
            for s in range(d + 1):
                a[top - d + s] = (a[top - d + s] - c * f[s]) % p
    return a[:d]


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division of monic ``f`` by every monic polynomial of degree ``1..deg f // 2``."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(list(f), list(low) + [1], p)):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> list[int]:
    """Monic irreducible of degree ``k`` over Z/p whose low coefficients, read as a
    little-endian base-``p`` number, are smallest."""
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        f = low + [1]
        if is_irreducible(f, p):
            return f
    raise AssertionError("an irreducible polynomial of every degree exists")


def gf(p: int, k: int = 1, cap: Optional[int] = None) -> FiniteRing:
    """The field of order ``p**k`` as ``Z/p[a]`` modulo :func:`smallest_irreducible`."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("gf needs k >= 1")
    _check_size(f"GF({p},{k})", p**k, cap)
    if k == 1:
        return zmod(p, cap).relabel(f"GF({p},1)")
    f = smallest_irreducible(p, k)
    return poly_quotient(zmod(p), f, cap, var="a").relabel(f"GF({p},{k})")


def product(rings: Sequence[FiniteRing], cap: Optional[int] = None) -> FiniteRing:
    """Direct product with componentwise operations and tuple names."""
    rings = list(rings)
    if not rings:
        raise ValueError("product needs at least one factor")
    prov = "prod(" + ",".join(R.provenance for R in rings) + ")"
    size = math.prod(R.size for R in rings)
    _check_size(prov, size, cap)
    if len(rings) == 1:
        return rings[0].relabel(prov)
    radices = [R.size for R in rings]
    names = ["(" + ",".join(R.names[d] for R, d in zip(rings, ds)) + ")"
             for ds in zip(*[d.tolist() for d in _decode(radices, size)])]

    def mul_fn(a, b):
        return [R.mul[x, y] for R, x, y in zip(rings, a, b)]

    return _assemble(radices, [R.add for R in rings], mul_fn,
                     [R.zero for R in rings], [R.one for R in rings], names, prov)


def _matrix_names(R: FiniteRing, positions, k: int, size: int, radices) -> list[str]:
    names = []
    for ds in zip(*[d.tolist() for d in _decode(radices, size)]):
        entries = {pos: d for pos, d in zip(positions, ds)}
        rows = ["[" + ",".join(R.names[entries.get((i, j), R.zero)] for j in range(k)) + "]"
                for i in range(k)]
        names.append("[" + ",".join(rows) + "]")
    return names


def _matrix_like(R: FiniteRing, k: int, positions, prov: str, cap) -> FiniteRing:
    size = R.size ** len(positions)
    _check_size(prov, size, cap)
    slot = {pos: t for t, pos in enumerate(positions)}
    radices = [R.size] * len(positions)

    def mul_fn(a, b):
        out = []
        for i, j in positions:
            out.append(_dot(R, [(a[slot[i, l]], b[slot[l, j]])
                                for l in range(k) if (i, l) in slot and (l, j) in slot]))
        return out

    zero = [R.zero] * len(positions)
    one = [R.one if i == j else R.zero for i, j in positions]
    return _assemble(radices, [R.add] * len(positions), mul_fn, zero, one,
                     _matrix_names(R, positions, k, size, radices), prov)


def matrix_ring(R: FiniteRing, k: int, cap: Optional[int] = None) -> FiniteRing:
    """Full ``k x k`` matrices over ``R``."""
    if k < 1:
        raise ValueError("matrix_ring needs k >= 1")
    positions = [(i, j) for i in range(k) for j in range(k)]
    return _matrix_like(R, k, positions, f"mat({k},{R.provenance})", cap)


def triangular_ring(R: FiniteRing, k: int, cap: Optional[int] = None) -> FiniteRing:
    """Upper triangular ``k x k`` matrices over ``R``."""
    if k < 1:
        raise ValueError("triangular_ring needs k >= 1")
    positions = [(i, j) for i in range(k) for j in range(i, k)]
    return _matrix_like(R, k, positions, f"tri({k},{R.provenance})", cap)


def _poly_name(R: FiniteRing, coeffs: Sequence[int], var: str) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == R.zero:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cn = R.names[c]
        if not mono:
            terms.append(cn)
        elif c == R.one:
            terms.append(mono)
        else:
            terms.append(f"{cn}*{mono}")
    return "+".join(terms) if terms else R.names[R.zero]


def poly_quotient(R: FiniteRing, f: Sequence[int], cap: Optional[int] = None, var: str = "x") -> FiniteRing:
    """``R[x]/(f)`` for commutative ``R`` and monic ``f`` (ascending coefficients, as element indices)."""
    if not R.is_commutative():
        raise NotCommutative(f"{R.provenance} is not commutative")
    return _central_quotient(R, f, cap, var)


def truncated_polynomial(R: FiniteRing, n: int, cap: Optional[int] = None, var: str = "x") -> FiniteRing:
    """``R[x]/(x^n)`` over any ``R``; ``x`` is central, so no commutativity is needed."""
    return _central_quotient(R, [R.zero] * n + [R.one], cap, var)


def _central_quotient(R: FiniteRing, f: Sequence[int], cap: Optional[int], var: str) -> FiniteRing:
    # products keep the left factor on the left; reduction needs f's coefficients central
    f = [int(c) for c in f]
    prov = f"polyquot({R.provenance},[{','.join(str(c) for c in f)}])"
    if len(f) < 2:
        raise NotMonic("degree of f must be at least 1")
    if f[-1] != R.one:
        raise NotMonic(f"leading coefficient {R.names[f[-1]]} is not 1")
    d = len(f) - 1
    size = R.size**d
    _check_size(prov, size, cap)
    radices = [R.size] * d
    negf = [int(R.neg[c]) for c in f[:-1]]

    def mul_fn(a, b):
        c = [_dot(R, [(a[i], b[m - i]) for i in range(d) if 0 <= m - i < d]) for m in range(2 * d - 1)]
        for top in range(2 * d - 2, d - 1, -1):
            # x^d = -(f_0 + ... + f_{d-1} x^{d-1})
            for s in range(d):
                c[top - d + s] = R.add[c[top - d + s], R.mul[c[top], negf[s]]]
        return [np.broadcast_to(x, np.broadcast(a[0], b[0]).shape) for x in c[:d]]

    names = [_poly_name(R, ds, var) for ds in zip(*[x.tolist() for x in _decode(radices, size)])]
    zero = [R.zero] * d
    one = [R.one] + [R.zero] * (d - 1)
    return _assemble(radices, [R.add] * d, mul_fn, zero, one, names, prov)


def cyclic_group(n: int) -> np.ndarray:
    i = np.arange(n)
    return np.add.outer(i, i) % n


def validate_group(table) -> int:
    """Check a group Cayley table exhaustively; return the identity index."""
    G = np.asarray(table)
    if G.ndim != 2 or G.shape[0] != G.shape[1] or G.shape[0] == 0:
        raise NotAGroup("table must be square and nonempty")
    n = G.shape[0]
    if ((G < 0) | (G >= n)).any():
        raise NotAGroup("entries out of range")
    idx = np.arange(n)
    ids = [e for e in range(n) if (G[e] == idx).all() and (G[:, e] == idx).all()]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    for a in range(n):
        if not np.array_equal(G[G[a]], G[a][G]):
            raise NotAGroup(f"not associative at {a}")
    if not ((G == e).any(axis=1)).all():
        raise NotAGroup("missing inverses")
    return e


def group_algebra(R: FiniteRing, cayley, cap: Optional[int] = None,
                  group_name: str = "G", element_names: Optional[Sequence[str]] = None) -> FiniteRing:
    """The group ring ``R[G]`` with convolution product."""
    G = np.asarray(cayley)
    e = validate_group(G)
    g = G.shape[0]
    prov = f"groupalg({R.provenance},{group_name})"
    size = R.size**g
    _check_size(prov, size, cap)
    if element_names is None:
        element_names = ["e" if h == e else f"g{h}" for h in range(g)]
    radices = [R.size] * g
    pairs_for = {h: [(x, y) for x in range(g) for y in range(g) if G[x, y] == h] for h in range(g)}

    def mul_fn(a, b):
        return [_dot(R, [(a[x], b[y]) for x, y in pairs_for[h]]) for h in range(g)]

    names = []
    for ds in zip(*[x.tolist() for x in _decode(radices, size)]):
        terms = []
        for h, c in enumerate(ds):
            if c == R.zero:
                continue
            if h == e:
                terms.append(R.names[c])
            elif c == R.one:
                terms.append(element_names[h])
            else:
                terms.append(f"{R.names[c]}*{element_names[h]}")
        names.append("+".join(terms) if terms else R.names[R.zero])
    zero = [R.zero] * g
    one = [R.one if h == e else R.zero for h in range(g)]
    return _assemble(radices, [R.add] * g, mul_fn, zero, one, names, prov)


def cyclic_group_algebra(R: FiniteRing, n: int, cap: Optional[int] = None) -> FiniteRing:
    names = ["e", "g"] + [f"g^{i}" for i in range(2, n)]
    return group_algebra(R, cyclic_group(n), cap, f"C{n}", names[:n])


# --------------------------------------------------------------------------
# bimodules and Morita contexts


@dataclass(frozen=True)
class Bimodule:
    """A finite ``(left_ring, right_ring)``-bimodule given by tables.

    ``left_act[r, v] = r v`` and ``right_act[v, s] = v s``.
    """

    add: np.ndarray = field(repr=False)
    zero: int
    left_ring: FiniteRing = field(repr=False)
    right_ring: FiniteRing = field(repr=False)
    left_act: np.ndarray = field(repr=False)
    right_act: np.ndarray = field(repr=False)
    label: str = "M"

    @property
    def size(self) -> int:
        return int(self.add.shape[0])


def _witness(bad: np.ndarray):
    if not bad.any():
        return None
    return tuple(int(i) for i in np.unravel_index(int(bad.argmax()), bad.shape))


def validate_bimodule(add, zero: int, left_ring: FiniteRing, right_ring: FiniteRing,
                      left_act, right_act, label: str = "M") -> Bimodule:
    """Check every bimodule axiom exhaustively and seal the result."""
    A = np.asarray(add, dtype=np.int64)
    L = np.asarray(left_act, dtype=np.int64)
    Rt = np.asarray(right_act, dtype=np.int64)
    m = A.shape[0] if A.ndim == 2 else 0
    R, S = left_ring, right_ring
    if A.shape != (m, m) or m == 0 or L.shape != (R.size, m) or Rt.shape != (m, S.size):
        raise BimoduleAxiomViolation("table shape", ())
    for t in (A, L, Rt):
        w = _witness((t < 0) | (t >= m))
        if w:
            raise BimoduleAxiomViolation("closure", w)
    idx = np.arange(m)
    checks = [
        ("additive commutativity", lambda: A != A.T),
        ("additive identity", lambda: (A[zero] != idx)[None, :]),
        ("additive inverse", lambda: ~(A == zero).any(axis=1)[None, :]),
        ("additive associativity", lambda: A[A] != A[:, A]),
        # r(v+v') = rv + rv'
        ("left action additive in module", lambda: L[:, A] != A[L[:, :, None], L[:, None, :]]),
        # (r+r')v = rv + r'v
        ("left action additive in ring", lambda: L[R.add] != A[L[:, None, :], L[None, :, :]]),
        # (rr')v = r(r'v)
        ("left action associative", lambda: L[R.mul] != L[:, L]),
        ("left unit acts trivially", lambda: (L[R.one] != idx)[None, :]),
        # (v+v')s = vs + v's
        ("right action additive in module", lambda: Rt[A] != A[Rt[:, None, :], Rt[None, :, :]]),
        # v(s+s') = vs + vs'
        ("right action additive in ring", lambda: Rt[:, S.add] != A[Rt[:, :, None], Rt[:, None, :]]),
        # v(ss') = (vs)s'
        ("right action associative", lambda: Rt[:, S.mul] != Rt[Rt]),
        ("right unit acts trivially", lambda: (Rt[:, S.one] != idx)[None, :]),
        # (rv)s = r(vs)
        ("actions commute", lambda: Rt[L] != L[:, Rt]),
    ]
    for name, bad in checks:
        w = _witness(bad())
        if w:
            raise BimoduleAxiomViolation(name, w)
    for t in (A, L, Rt):
        t.setflags(write=False)
    return Bimodule(A, int(zero), R, S, L, Rt, label)


def zero_bimodule(R: FiniteRing, S: FiniteRing) -> Bimodule:
    return validate_bimodule([[0]], 0, R, S, np.zeros((R.size, 1), int), np.zeros((1, S.size), int), "0")


def regular_bimodule(R: FiniteRing) -> Bimodule:
    """``R`` as an ``(R, R)``-bimodule under multiplication."""
    return validate_bimodule(R.add, R.zero, R, R, R.mul, R.mul, "reg")


def _integer_coordinates(R: FiniteRing) -> Optional[np.ndarray]:
    """``k`` with ``r = k * 1`` for each element, if the additive group is generated by 1."""
    coord = np.full(R.size, -1, dtype=np.int64)
    x, k = R.zero, 0
    while coord[x] < 0:
        coord[x] = k
        x, k = int(R.add[x, R.one]), k + 1
    return None if (coord < 0).any() else coord


def cyclic_bimodule(R: FiniteRing, S: FiniteRing, m: int) -> Bimodule:
    """``Z/m`` as an ``(R, S)``-bimodule through the reductions ``R -> Z/m``, ``S -> Z/m``.

    Both rings must be additively cyclic of order divisible by ``m``.
    """
    cr, cs = _integer_coordinates(R), _integer_coordinates(S)
    if cr is None or cs is None or R.size % m or S.size % m:
        raise BimoduleAxiomViolation(f"no unital map onto Z/{m}", ())
    v = np.arange(m)
    add = np.add.outer(v, v) % m
    left = np.multiply.outer(cr, v) % m
    right = np.multiply.outer(v, cs) % m
    return validate_bimodule(add, 0, R, S, left, right, f"Z{m}")


@dataclass(frozen=True)
class MoritaContext:
    """Sealed Morita context ``(R, V, W, S)`` with pairings ``phi: V x W -> R`` and ``psi: W x V -> S``."""

    R: FiniteRing = field(repr=False)
    S: FiniteRing = field(repr=False)
    V: Bimodule = field(repr=False)
    W: Bimodule = field(repr=False)
    phi: np.ndarray = field(repr=False)
    psi: np.ndarray = field(repr=False)
    label: str = "ctx"


def _same_ring(A: FiniteRing, B: FiniteRing) -> bool:
    return A is B or A.same_tables(B)


def validate_context(R: FiniteRing, S: FiniteRing, V: Bimodule, W: Bimodule, phi, psi,
                     label: str = "ctx") -> MoritaContext:
    """Check additivity, balancing and the two associativity links exhaustively."""
    if not (_same_ring(V.left_ring, R) and _same_ring(V.right_ring, S)
            and _same_ring(W.left_ring, S) and _same_ring(W.right_ring, R)):
        raise ContextAxiomViolation("V must be an (R,S)- and W an (S,R)-bimodule", ())
    P = np.asarray(phi, dtype=np.int64)
    Q = np.asarray(psi, dtype=np.int64)
    nv, nw = V.size, W.size
    if P.shape != (nv, nw) or Q.shape != (nw, nv):
        raise ContextAxiomViolation("pairing shape", ())
    if ((P < 0) | (P >= R.size)).any() or ((Q < 0) | (Q >= S.size)).any():
        raise ContextAxiomViolation("pairing closure", ())
    VA, WA, VL, VR, WL, WR = V.add, W.add, V.left_act, V.right_act, W.left_act, W.right_act
    checks = [
        # phi(v+v', w) = phi(v,w) + phi(v',w)   witness (v, v', w)
        ("phi additive left", lambda: P[VA] != R.add[P[:, None, :], P[None, :, :]]),
        # phi(v, w+w')   witness (v, w, w')
        ("phi additive right", lambda: P[:, WA] != R.add[P[:, :, None], P[:, None, :]]),
        # phi(vs, w) = phi(v, sw)   witness (v, s, w)
        ("phi balanced", lambda: P[VR[:, :, None], np.arange(nw)[None, None, :]]
         != P[np.arange(nv)[:, None, None], WL[None, :, :]]),
        # phi(rv, w) = r phi(v, w)   witness (r, v, w)
        ("phi left linear", lambda: P[VL] != R.mul[np.arange(R.size)[:, None, None], P[None, :, :]]),
        # phi(v, wr) = phi(v, w) r   witness (v, w, r)
        ("phi right linear", lambda: P[:, WR] != R.mul[P[:, :, None], np.arange(R.size)[None, None, :]]),
        ("psi additive left", lambda: Q[WA] != S.add[Q[:, None, :], Q[None, :, :]]),
        ("psi additive right", lambda: Q[:, VA] != S.add[Q[:, :, None], Q[:, None, :]]),
        # psi(wr, v) = psi(w, rv)   witness (w, r, v)
        ("psi balanced", lambda: Q[WR[:, :, None], np.arange(nv)[None, None, :]]
         != Q[np.arange(nw)[:, None, None], VL[None, :, :]]),
        # psi(sw, v) = s psi(w, v)   witness (s, w, v)
        ("psi left linear", lambda: Q[WL] != S.mul[np.arange(S.size)[:, None, None], Q[None, :, :]]),
        # psi(w, vs) = psi(w, v) s   witness (w, v, s)
        ("psi right linear", lambda: Q[:, VR] != S.mul[Q[:, :, None], np.arange(S.size)[None, None, :]]),
        # phi(v, w) v' = v psi(w, v')   witness (v, w, v')
        ("associativity link VWV", lambda: VL[P[:, :, None], np.arange(nv)[None, None, :]]
         != VR[np.arange(nv)[:, None, None], Q[None, :, :]]),
        # psi(w, v) w' = w phi(v, w')   witness (w, v, w')
        ("associativity link WVW", lambda: WL[Q[:, :, None], np.arange(nw)[None, None, :]]
         != WR[np.arange(nw)[:, None, None], P[None, :, :]]),
    ]
    for name, bad in checks:
        w = _witness(bad())
        if w:
            raise ContextAxiomViolation(name, w)
    P.setflags(write=False)
    Q.setflags(write=False)
    return MoritaContext(R, S, V, W, P, Q, label)


def morita_ring(ctx: MoritaContext, cap: Optional[int] = None) -> FiniteRing:
    """The generalized matrix ring ``[[R, V], [W, S]]`` on tuples ``(r, v, w, s)``."""
    R, S, V, W, P, Q = ctx.R, ctx.S, ctx.V, ctx.W, ctx.phi, ctx.psi
    radices = [R.size, V.size, W.size, S.size]
    size = math.prod(radices)
    _check_size(ctx.label, size, cap)

    def mul_fn(a, b):
        r1, v1, w1, s1 = a
        r2, v2, w2, s2 = b
        return [
            R.add[R.mul[r1, r2], P[v1, w2]],
            V.add[V.left_act[r1, v2], V.right_act[v1, s2]],
            W.add[W.left_act[s1, w2], W.right_act[w1, r2]],
            S.add[Q[w1, v2], S.mul[s1, s2]],
        ]

    names = []
    for r, v, w, s in zip(*[x.tolist() for x in _decode(radices, size)]):
        names.append(f"[[{R.names[r]},{v}],[{w},{S.names[s]}]]")
    return _assemble(radices, [R.add, V.add, W.add, S.add], mul_fn,
                     [R.zero, V.zero, W.zero, S.zero], [R.one, V.zero, W.zero, S.one], names, ctx.label)


def _biadditive_maps(V: Bimodule, W: Bimodule, target: FiniteRing):
    """Every biadditive table ``V x W -> target``, enumerated over generator images."""
    gv = additive_generators(V.add, V.zero)
    gw = additive_generators(W.add, W.zero)
    for values in itertools.product(range(target.size), repeat=len(gv) * len(gw)):
        cols = {}
        ok = True
        for j, h in enumerate(gw):
            col = extend_additive(V.add, V.zero, gv, values[j * len(gv):(j + 1) * len(gv)],
                                  target.add, target.zero)
            if col is None:
                ok = False
                break
            cols[h] = col
        if not ok:
            continue
        table = np.empty((V.size, W.size), dtype=np.int64)
        for v in range(V.size):
            row = extend_additive(W.add, W.zero, gw, [cols[h][v] for h in gw], target.add, target.zero)
            if row is None:
                ok = False
                break
            table[v] = row
        if ok:
            yield table


def enumerate_contexts(R: FiniteRing, S: FiniteRing, V: Bimodule, W: Bimodule,
                       label: str = "ctx") -> list[MoritaContext]:
    """All valid pairings ``(phi, psi)`` for fixed ``R, S, V, W``, in deterministic order."""
    found = []
    phis = list(_biadditive_maps(V, W, R))
    psis = list(_biadditive_maps(W, V, S))
    for P, Q in itertools.product(phis, psis):
        try:
            found.append(validate_context(R, S, V, W, P, Q, label))
        except ContextAxiomViolation:
            continue
    return found
