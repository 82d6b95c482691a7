"""Brute-force reference implementations, written from the definitions.

Pure Python loops over nested lists; nothing here calls into finring beyond
reading a ring's tables, so the results are independent of the package's
vectorised algorithms.
"""

from __future__ import annotations

from itertools import product


def tables(R):
    return R.add.tolist(), R.mul.tolist(), R.zero, R.one


def neg(add, zero, x):
    return next(y for y in range(len(add)) if add[x][y] == zero)


def first_axiom_failure(add, mul, zero, one):
    """Scan the axioms in a fixed order; return (axiom, witness) or None."""
    n = len(add)
    els = range(n)
    for x, y in product(els, els):
        if add[x][y] != add[y][x]:
            return "additive commutativity", (x, y)
    for x in els:
        if add[zero][x] != x:
            return "additive identity", (x,)
    for x in els:
        if not any(add[x][y] == zero for y in els):
            return "additive inverse", (x,)
    for x, y, z in product(els, els, els):
        if add[add[x][y]][z] != add[x][add[y][z]]:
            return "additive associativity", (x, y, z)
    for x in els:
        if mul[one][x] != x or mul[x][one] != x:
            return "multiplicative identity", (x,)
    for x, y, z in product(els, els, els):
        if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
            return "multiplicative associativity", (x, y, z)
    for x, y, z in product(els, els, els):
        if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]:
            return "left distributivity", (x, y, z)
    for x, y, z in product(els, els, els):
        if mul[add[x][y]][z] != add[mul[x][z]][mul[y][z]]:
            return "right distributivity", (x, y, z)
    return None


def units(R):
    add, mul, zero, one = tables(R)
    n = len(mul)
    return [u for u in range(n) if any(mul[u][v] == one and mul[v][u] == one for v in range(n))]


def radical(R):
    """x is in J(R) iff 1 - r*x is a unit for every r."""
    add, mul, zero, one = tables(R)
    n = len(mul)
    U = set(units(R))
    return [x for x in range(n)
            if all(add[one][neg(add, zero, mul[r][x])] in U for r in range(n))]


def nilpotents(R):
    add, mul, zero, one = tables(R)
    out = []
    for x in range(len(mul)):
        p = x
        for _ in range(len(mul)):
            if p == zero:
                out.append(x)
                break
            p = mul[p][x]
    return out


def idempotents(R):
    mul = R.mul.tolist()
    return [e for e in range(len(mul)) if mul[e][e] == e]


def center(R):
    mul = R.mul.tolist()
    n = len(mul)
    return [z for z in range(n) if all(mul[z][r] == mul[r][z] for r in range(n))]


def is_uj(R):
    add, mul, zero, one = tables(R)
    return set(units(R)) == {add[one][j] for j in radical(R)}


def decompositions(R, r, witness):
    """Pairs (e, t) with e idempotent, t in ``witness`` and e + t = r, by ascending e."""
    add = R.add.tolist()
    W = set(witness)
    return [(e, t) for e in idempotents(R) for t in W if add[e][t] == r]


def matmul(A, B, n):
    k = len(A)
    return tuple(tuple(sum(A[i][l] * B[l][j] for l in range(k)) % n for j in range(k)) for i in range(k))


def morita_pairings(nr, mod_v, mod_w):
    """All valid (phi, psi) for R = S = Z/nr acting on V = Z/mod_v and W = Z/mod_w by multiplication.

    phi: V x W -> R and psi: W x V -> S are tables of plain integers; the
    checks are the context axioms written out literally. Enumeration covers
    all nr**(|V||W|) tables, so keep the modules tiny.
    """
    V, W, Rr = range(mod_v), range(mod_w), range(nr)

    def act(r, m, mod):
        return (r * m) % mod

    def ok_phi(P):
        return all(
            P[(v + v2) % mod_v][w] == (P[v][w] + P[v2][w]) % nr
            and P[v][(w + w2) % mod_w] == (P[v][w] + P[v][w2]) % nr
            for v in V for v2 in V for w in W for w2 in W
        ) and all(
            P[act(s, v, mod_v)][w] == P[v][act(s, w, mod_w)]
            and P[act(r, v, mod_v)][w] == (r * P[v][w]) % nr
            and P[v][act(r, w, mod_w)] == (P[v][w] * r) % nr
            for v in V for w in W for r in Rr for s in Rr
        )

    def all_tables(rows, cols):
        for flat in product(Rr, repeat=len(rows) * len(cols)):
            yield [list(flat[i * len(cols):(i + 1) * len(cols)]) for i in range(len(rows))]

    phis = [P for P in all_tables(V, W) if ok_phi(P)]
    # psi satisfies the mirror conditions: swap the roles of V and W
    psis = []
    for Q in all_tables(W, V):
        if all(
            Q[(w + w2) % mod_w][v] == (Q[w][v] + Q[w2][v]) % nr
            and Q[w][(v + v2) % mod_v] == (Q[w][v] + Q[w][v2]) % nr
            for w in W for w2 in W for v in V for v2 in V
        ) and all(
            Q[act(r, w, mod_w)][v] == Q[w][act(r, v, mod_v)]
            and Q[act(s, w, mod_w)][v] == (s * Q[w][v]) % nr
            and Q[w][act(s, v, mod_v)] == (Q[w][v] * s) % nr
            for w in W for v in V for r in Rr for s in Rr
        ):
            psis.append(Q)
    found = []
    for P in phis:
        for Q in psis:
            if all(act(P[v][w], v2, mod_v) == act(Q[w][v2], v, mod_v) for v in V for w in W for v2 in V) \
                    and all(act(Q[w][v], w2, mod_w) == act(P[v][w2], w, mod_w) for w in W for v in V for w2 in W):
                found.append((P, Q))
    return found
