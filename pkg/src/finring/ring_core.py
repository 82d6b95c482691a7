"""Finite unital rings stored as full Cayley tables, and their basic invariants.

Elements are carrier indices ``0..n-1``. Every set-valued result is an
:class:`ElementSet` with members sorted ascending. Derived data (units,
radical, idempotents, ...) is computed once per ring and cached; rings are
never mutated after construction.
"""

from __future__ import annotations

import functools
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import (
    AxiomViolation,
    DegenerateRing,
    InternalInconsistency,
    NotAnIdeal,
    NotIdempotent,
    RoleViolation,
)

DEFAULT_CAP = 4096

ROLES = ("subset", "left-ideal", "right-ideal", "two-sided-ideal", "subring", "unit-set")


def default_cap() -> int:
    """Size cap for constructions: ``FINRING_CAP`` if set, else 4096."""
    env = os.environ.get("FINRING_CAP")
    return int(env) if env else DEFAULT_CAP


def _frozen(table) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(table), dtype=np.int32)
    arr.setflags(write=False)
    return arr


class FiniteRing:
    """A unital ring on carrier ``{0..size-1}`` given by addition/multiplication tables.

    The constructor trusts its input; use :func:`validate_ring` for untrusted
    tables. ``embedding`` is set on rings carved out of a parent (center,
    corners) and maps each element to its parent index.
    """

    def __init__(
        self,
        add,
        mul,
        zero: int,
        one: int,
        names: Optional[Sequence[str]] = None,
        provenance: str = "raw-table",
        embedding: Optional[Sequence[int]] = None,
    ):
        self.add = _frozen(add)
        self.mul = _frozen(mul)
        self.size = int(self.add.shape[0])
        self.zero = int(zero)
        self.one = int(one)
        if names is None:
            names = [str(i) for i in range(self.size)]
        self.names = tuple(str(s) for s in names)
        self.provenance = provenance
        self.embedding = None if embedding is None else tuple(int(i) for i in embedding)
        self._memo: dict = {}

    def __repr__(self) -> str:
        return f"FiniteRing({self.provenance}, size={self.size})"

    def __len__(self) -> int:
        return self.size

    @property
    def is_zero_ring(self) -> bool:
        return self.size == 1

    @property
    def elements(self) -> range:
        return range(self.size)

    def relabel(self, provenance: str) -> "FiniteRing":
        """Same tables and names under a new provenance string."""
        return FiniteRing(self.add, self.mul, self.zero, self.one, self.names, provenance, self.embedding)

    @property
    def neg(self) -> np.ndarray:
        if "neg" not in self._memo:
            self._memo["neg"] = (self.add == self.zero).argmax(axis=1).astype(np.int32)
        return self._memo["neg"]

    def sub(self, a, b):
        """``a - b``; works elementwise on index arrays."""
        return self.add[a, self.neg[b]]

    def index(self, name: str) -> int:
        """Resolve a display name or a decimal index string to a carrier index."""
        if name in self.names:
            return self.names.index(name)
        try:
            i = int(name)
        except ValueError:
            raise KeyError(name) from None
        if not 0 <= i < self.size:
            raise KeyError(name)
        return i

    def times(self, k: int) -> int:
        """The element ``k * 1`` (``k`` may be negative)."""
        x = self.zero
        step = self.one if k >= 0 else self.neg[self.one]
        for _ in range(abs(k)):
            x = int(self.add[x, step])
        return x

    def is_commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def same_tables(self, other: "FiniteRing") -> bool:
        return (
            self.size == other.size
            and self.zero == other.zero
            and self.one == other.one
            and np.array_equal(self.add, other.add)
            and np.array_equal(self.mul, other.mul)
        )


def memoized(fn: Callable) -> Callable:
    """Cache a single-argument ring function on the ring itself."""

    @functools.wraps(fn)
    def wrapper(R: FiniteRing):
        key = fn.__name__
        if key not in R._memo:
            R._memo[key] = fn(R)
        return R._memo[key]

    return wrapper


# --------------------------------------------------------------------------
# element sets


@dataclass(frozen=True)
class ElementSet:
    """A sorted subset of a ring's carrier tagged with a verified role."""

    ring: FiniteRing = field(repr=False, compare=False)
    members: tuple[int, ...]
    role: str = "subset"

    def __post_init__(self):
        members = tuple(int(m) for m in self.members)
        object.__setattr__(self, "members", members)
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        if any(b <= a for a, b in zip(members, members[1:])):
            raise RoleViolation("members must be distinct and sorted ascending")
        if members and not 0 <= members[0] <= members[-1] < self.ring.size:
            raise RoleViolation("member out of range")
        mask = np.zeros(self.ring.size, dtype=bool)
        mask[list(members)] = True
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)
        problem = _role_problem(self.ring, mask, self.role)
        if problem:
            raise RoleViolation(f"{self.role}: {problem}")

    @classmethod
    def from_mask(cls, ring: FiniteRing, mask: np.ndarray, role: str = "subset") -> "ElementSet":
        return cls(ring, tuple(np.flatnonzero(mask).tolist()), role)

    @classmethod
    def _closed(cls, ring: FiniteRing, mask: np.ndarray, role: str) -> "ElementSet":
        # for sets closed by construction; skips the role verification
        out = object.__new__(cls)
        object.__setattr__(out, "ring", ring)
        object.__setattr__(out, "members", tuple(np.flatnonzero(mask).tolist()))
        object.__setattr__(out, "role", role)
        frozen = np.array(mask, dtype=bool)
        frozen.setflags(write=False)
        object.__setattr__(out, "mask", frozen)
        return out

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def names(self) -> list[str]:
        return [self.ring.names[m] for m in self.members]


def _is_additive_subgroup(R: FiniteRing, mask: np.ndarray) -> bool:
    m = np.flatnonzero(mask)
    return mask[R.zero] and bool(mask[R.add[np.ix_(m, m)]].all())


def _role_problem(R: FiniteRing, mask: np.ndarray, role: str) -> str:
    m = np.flatnonzero(mask)
    if role == "subset":
        return ""
    if role == "unit-set":
        return "" if units_mask(R)[m].all() else "contains a non-unit"
    if not _is_additive_subgroup(R, mask):
        return "not an additive subgroup"
    if role == "subring":
        if not mask[R.one]:
            return "does not contain one"
        return "" if mask[R.mul[np.ix_(m, m)]].all() else "not closed under multiplication"
    if role in ("left-ideal", "two-sided-ideal") and not mask[R.mul[:, m]].all():
        return "not closed under left multiplication"
    if role in ("right-ideal", "two-sided-ideal") and not mask[R.mul[m, :]].all():
        return "not closed under right multiplication"
    return ""


def is_two_sided_ideal(R: FiniteRing, members: Iterable[int]) -> bool:
    mask = np.zeros(R.size, dtype=bool)
    mask[list(members)] = True
    return not _role_problem(R, mask, "two-sided-ideal")


# --------------------------------------------------------------------------
# axioms


def _first_bad(bad: np.ndarray) -> Optional[tuple[int, ...]]:
    if not bad.any():
        return None
    return tuple(int(i) for i in np.unravel_index(int(bad.argmax()), bad.shape))


def check_axioms(R: FiniteRing) -> None:
    """Exhaustively verify the unital ring axioms; raise on the first violation.

    Axioms are tried in a fixed order and each scan runs lexicographically
    over its variables, so the reported witness is deterministic.
    """
    n, add, mul, zero, one = R.size, R.add, R.mul, R.zero, R.one
    idx = np.arange(n)

    w = _first_bad(add != add.T)
    if w:
        raise AxiomViolation("additive commutativity", w)
    w = _first_bad((add[zero] != idx)[None, :] | (add[:, zero] != idx)[None, :])
    if w:
        raise AxiomViolation("additive identity", (w[1],))
    w = _first_bad(~(add == zero).any(axis=1)[None, :])
    if w:
        raise AxiomViolation("additive inverse", (w[1],))
    for a in range(n):
        w = _first_bad(add[add[a]] != add[a][add])
        if w:
            raise AxiomViolation("additive associativity", (a,) + w)
    w = _first_bad((mul[one] != idx)[None, :] | (mul[:, one] != idx)[None, :])
    if w:
        raise AxiomViolation("multiplicative identity", (w[1],))
    if n > 1 and zero == one:
        raise AxiomViolation("zero differs from one", (zero,))
    for a in range(n):
        w = _first_bad(mul[mul[a]] != mul[a][mul])
        if w:
            raise AxiomViolation("multiplicative associativity", (a,) + w)
    for a in range(n):
        row = mul[a]
        w = _first_bad(row[add] != add[row[:, None], row[None, :]])
        if w:
            raise AxiomViolation("left distributivity", (a,) + w)
    for c in range(n):
        col = mul[:, c]
        w = _first_bad(col[add] != add[col[:, None], col[None, :]])
        if w:
            raise AxiomViolation("right distributivity", w + (c,))


def validate_ring(add, mul, zero: int, one: int, names=None, provenance: str = "raw-table") -> FiniteRing:
    """Build a :class:`FiniteRing` from untrusted tables, checking every axiom."""
    add_a = np.asarray(add)
    mul_a = np.asarray(mul)
    if add_a.ndim != 2 or add_a.shape[0] != add_a.shape[1] or add_a.shape[0] == 0:
        raise AxiomViolation("table shape", ())
    n = add_a.shape[0]
    if mul_a.shape != (n, n):
        raise AxiomViolation("table shape", ())
    for table in (add_a, mul_a):
        if not np.issubdtype(table.dtype, np.integer):
            raise AxiomViolation("table entries are integers", ())
        w = _first_bad((table < 0) | (table >= n))
        if w:
            raise AxiomViolation("closure", w)
    if not (0 <= zero < n and 0 <= one < n):
        raise AxiomViolation("closure", (zero, one))
    if names is not None and len(names) != n:
        raise AxiomViolation("names length", (len(names),))
    R = FiniteRing(add_a, mul_a, zero, one, names, provenance)
    check_axioms(R)
    return R


def require_nondegenerate(R: FiniteRing) -> None:
    if R.is_zero_ring:
        raise DegenerateRing(f"{R.provenance} is the zero ring")


# --------------------------------------------------------------------------
# units, quasi-regular elements, radical


@memoized
def _unit_data(R: FiniteRing) -> tuple[np.ndarray, np.ndarray]:
    e = R.mul == R.one
    both = e & e.T
    mask = both.any(axis=1)
    inverse = np.where(mask, both.argmax(axis=1), -1).astype(np.int64)
    mask.setflags(write=False)
    inverse.setflags(write=False)
    return mask, inverse


def units_mask(R: FiniteRing) -> np.ndarray:
    return _unit_data(R)[0]


def unit_inverse(R: FiniteRing) -> np.ndarray:
    """Array mapping each unit to its inverse and each non-unit to -1."""
    return _unit_data(R)[1]


@memoized
def units(R: FiniteRing) -> ElementSet:
    return ElementSet.from_mask(R, units_mask(R), "unit-set")


@memoized
def circle_table(R: FiniteRing) -> np.ndarray:
    """The circle operation ``x o y = x + y - xy`` as a table."""
    return R.add[R.add, R.neg[R.mul]]


@memoized
def quasi_regular_set(R: FiniteRing) -> ElementSet:
    z = circle_table(R) == R.zero
    mask = (z & z.T).any(axis=1)
    via_units = np.zeros(R.size, dtype=bool)
    via_units[R.sub(R.one, units(R).array)] = True
    if not np.array_equal(mask, via_units):
        raise InternalInconsistency("quasi-regular set differs from 1 - U(R)")
    return ElementSet.from_mask(R, mask)


def _radical_masks(R: FiniteRing) -> tuple[np.ndarray, np.ndarray]:
    q = quasi_regular_set(R).mask[R.mul]
    return q.all(axis=0), q.all(axis=1)


@memoized
def jacobson_radical(R: FiniteRing) -> ElementSet:
    """J(R) via quasi-regularity, cross-checked left against right.

    Left criterion: ``x`` with ``rx`` quasi-regular for every ``r``; right
    criterion: ``xr`` quasi-regular for every ``r``. Also asserts that the
    result is an ideal and that ``J(R/J) = 0``.
    """
    left, right = _radical_masks(R)
    if not np.array_equal(left, right):
        raise InternalInconsistency("left and right radical criteria disagree")
    try:
        J = ElementSet.from_mask(R, left, "two-sided-ideal")
    except RoleViolation as exc:
        raise InternalInconsistency(f"radical is not an ideal: {exc}") from exc
    Q = quotient(R, J).quotient
    ql, qr = _radical_masks(Q)
    if ql.sum() != 1 or qr.sum() != 1:
        raise InternalInconsistency("J(R/J(R)) is not zero")
    return J


def radical_criteria(R: FiniteRing) -> tuple[ElementSet, ElementSet]:
    """The left- and right-criterion radicals, computed independently."""
    left, right = _radical_masks(R)
    return ElementSet.from_mask(R, left), ElementSet.from_mask(R, right)


def nilpotency_index(R: FiniteRing, members: Sequence[int]) -> Optional[int]:
    """Least ``k <= |R|`` with every product of ``k`` elements of ``members`` zero, else None."""
    base = np.asarray(sorted(set(members)), dtype=np.int64)
    if base.size == 0:
        return 1
    prods = base
    for k in range(1, R.size + 1):
        if (prods == R.zero).all():
            return k
        prods = np.unique(R.mul[np.ix_(prods, base)])
    return None


@memoized
def nilpotents(R: FiniteRing) -> ElementSet:
    x = np.arange(R.size)
    p = x.copy()
    hit = p == R.zero
    for _ in range(R.size):
        p = R.mul[p, x]
        hit |= p == R.zero
    return ElementSet.from_mask(R, hit)


@memoized
def idempotents(R: FiniteRing) -> ElementSet:
    return ElementSet.from_mask(R, np.diagonal(R.mul) == np.arange(R.size))


def is_dedekind_finite(R: FiniteRing) -> tuple[bool, Optional[tuple[int, int]]]:
    """``(True, None)`` or ``(False, (a, b))`` with ``ab = 1 != ba``."""
    e = R.mul == R.one
    w = _first_bad(e & ~e.T)
    return (w is None, w)


# --------------------------------------------------------------------------
# subrings, ideals, quotients


def subring(R: FiniteRing, members: Sequence[int], one: int, provenance: str) -> FiniteRing:
    """Re-index the subset ``members`` (closed under +, *, containing ``one``) as a ring."""
    m = np.asarray(sorted(set(int(x) for x in members)), dtype=np.int64)
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[m] = np.arange(m.size)
    add = pos[R.add[np.ix_(m, m)]]
    mul = pos[R.mul[np.ix_(m, m)]]
    if (add < 0).any() or (mul < 0).any() or pos[one] < 0 or pos[R.zero] < 0:
        raise InternalInconsistency(f"{provenance}: subset is not closed")
    return FiniteRing(
        add, mul, pos[R.zero], pos[one], [R.names[i] for i in m], provenance, embedding=m.tolist()
    )


@memoized
def center(R: FiniteRing) -> FiniteRing:
    """The center as a standalone ring; ``.embedding`` maps back into ``R``."""
    mask = (R.mul == R.mul.T).all(axis=1)
    return subring(R, np.flatnonzero(mask), R.one, f"Z({R.provenance})")


def ideal_closure(R: FiniteRing, seed: Iterable[int]) -> ElementSet:
    """Least two-sided ideal containing ``seed``."""
    mask = np.zeros(R.size, dtype=bool)
    mask[R.zero] = True
    seed = list(seed)
    if seed:
        mask[seed] = True
    while True:
        m = np.flatnonzero(mask)
        new = mask.copy()
        new[R.mul[:, m]] = True
        new[R.mul[m, :]] = True
        m = np.flatnonzero(new)
        new[R.add[np.ix_(m, m)]] = True
        if np.array_equal(new, mask):
            # a fixed point is closed under both multiplications and addition
            return ElementSet._closed(R, mask, "two-sided-ideal")
        mask = new


@dataclass(frozen=True)
class CosetRing:
    """``parent / ideal`` with minimal-index coset representatives.

    ``projection[x]`` is the quotient index of the coset of ``x``.
    """

    parent: FiniteRing = field(repr=False)
    ideal: ElementSet
    reps: tuple[int, ...]
    quotient: FiniteRing = field(repr=False)
    projection: np.ndarray = field(repr=False, compare=False)


def quotient(R: FiniteRing, I: ElementSet) -> CosetRing:
    if I.ring is not R:
        raise NotAnIdeal(f"element set belongs to {I.ring.provenance}, not to this {R.provenance} instance")
    if not is_two_sided_ideal(R, I.members):
        raise NotAnIdeal(f"{list(I.members)[:8]} is not a two-sided ideal of {R.provenance}")
    key = ("quotient", I.members)
    if key in R._memo:
        return R._memo[key]
    ideal = I.array
    rep_of = R.add[:, ideal].min(axis=1)
    reps = np.unique(rep_of)
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[reps] = np.arange(reps.size)
    proj = pos[rep_of]
    if not (np.bincount(proj, minlength=reps.size) == ideal.size).all():
        raise InternalInconsistency("cosets have unequal sizes")
    qadd = proj[R.add[np.ix_(reps, reps)]]
    qmul = proj[R.mul[np.ix_(reps, reps)]]
    # well defined because I is an ideal; spot-check representatives against every element
    ri, pj = proj[reps][:, None], proj[None, :]
    if not (np.array_equal(qadd[ri, pj], proj[R.add[reps]]) and np.array_equal(qmul[ri, pj], proj[R.mul[reps]])
            and np.array_equal(qmul[pj.T, proj[reps][None, :]], proj[R.mul[:, reps]])):
        raise InternalInconsistency("induced operations are not well defined")
    names = [f"[{R.names[r]}]" for r in reps]
    Q = FiniteRing(qadd, qmul, proj[R.zero], proj[R.one], names, f"{R.provenance}/I{len(ideal)}")
    proj.setflags(write=False)
    result = CosetRing(R, I if I.role == "two-sided-ideal" else ElementSet(R, I.members, "two-sided-ideal"),
                       tuple(reps.tolist()), Q, proj)
    R._memo[key] = result
    return result


def corner(R: FiniteRing, e: int) -> FiniteRing:
    """The corner ring ``eRe`` with unit ``e``; ``.embedding`` maps into ``R``."""
    e = int(e)
    if R.mul[e, e] != e:
        raise NotIdempotent(f"{R.names[e]} is not idempotent")
    members = np.unique(R.mul[R.mul[e, :], e])
    return subring(R, members, e, f"{R.names[e]}({R.provenance}){R.names[e]}")


# --------------------------------------------------------------------------
# additive structure and isomorphism search


def additive_order(R_add: np.ndarray, zero: int, x: int) -> int:
    k, y = 1, int(x)
    while y != zero:
        y = int(R_add[y, x])
        k += 1
    return k


def additive_generators(add: np.ndarray, zero: int) -> list[int]:
    """Greedy generating set of an abelian group table, scanning indices upward."""
    n = add.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[zero] = True
    gens: list[int] = []
    for x in range(n):
        if mask[x]:
            continue
        gens.append(x)
        while True:
            m = np.flatnonzero(mask)
            new = mask.copy()
            new[add[m, x]] = True
            if np.array_equal(new, mask):
                break
            mask = new
    return gens


def extend_additive(src_add, src_zero, gens, images, dst_add, dst_zero) -> Optional[np.ndarray]:
    """Extend generator images to an additive homomorphism, or None if inconsistent."""
    n = src_add.shape[0]
    out = np.full(n, -1, dtype=np.int64)
    out[src_zero] = dst_zero
    queue = deque([src_zero])
    while queue:
        x = queue.popleft()
        for g, img in zip(gens, images):
            y = int(src_add[x, g])
            val = int(dst_add[out[x], img])
            if out[y] < 0:
                out[y] = val
                queue.append(y)
            elif out[y] != val:
                return None
    if (out < 0).any():
        return None
    return out


def is_isomorphism(A: FiniteRing, B: FiniteRing, f: Sequence[int]) -> bool:
    """Whether ``f`` (A-index -> B-index) is a unital ring isomorphism."""
    f = np.asarray(f, dtype=np.int64)
    if A.size != B.size or f.shape != (A.size,) or np.unique(f).size != A.size:
        return False
    if f[A.one] != B.one or f[A.zero] != B.zero:
        return False
    fi, fj = f[:, None], f[None, :]
    return bool(np.array_equal(f[A.add], B.add[fi, fj]) and np.array_equal(f[A.mul], B.mul[fi, fj]))


def find_isomorphism(A: FiniteRing, B: FiniteRing) -> Optional[np.ndarray]:
    """Exhaustive search for a ring isomorphism A -> B over additive generator images."""
    if A.size != B.size:
        return None
    gens = additive_generators(A.add, A.zero)
    b_orders = [additive_order(B.add, B.zero, y) for y in range(B.size)]
    candidates = []
    for g in gens:
        k = additive_order(A.add, A.zero, g)
        candidates.append([y for y in range(B.size) if b_orders[y] == k])

    def search(i: int, chosen: list[int]) -> Optional[np.ndarray]:
        if i == len(gens):
            f = extend_additive(A.add, A.zero, gens, chosen, B.add, B.zero)
            return f if f is not None and is_isomorphism(A, B, f) else None
        for y in candidates[i]:
            found = search(i + 1, chosen + [y])
            if found is not None:
                return found
        return None

    return search(0, [])
