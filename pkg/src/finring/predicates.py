"""Ring-class predicates: UJ (six independent routes), UU, clean variants.

Every predicate refuses the zero ring with :class:`DegenerateRing`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InternalInconsistency, NotAnIdeal
from .ring_core import (
    ElementSet,
    FiniteRing,
    idempotents,
    ideal_closure,
    is_two_sided_ideal,
    jacobson_radical,
    memoized,
    nilpotents,
    quasi_regular_set,
    quotient,
    require_nondegenerate,
    unit_inverse,
    units,
)

KINDS = ("clean", "j-clean", "nil-clean")

WORKING_DEFINITION = "working-definition"


@dataclass(frozen=True)
class UJVerdict:
    """The six equivalent UJ conditions, each evaluated on its own.

    1. U = 1 + J;  2. U(R/J) = {1};  3. C(R) is an ideal;
    4. rb - cr in J for r in R, b, c in C(R);  5. ru - vr in J for u, v in U;
    6. U + U is contained in J.
    """

    c1: bool
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    c6: bool
    witness: dict = field(default_factory=dict, compare=False)
    sharpenings_hold: bool = field(default=True, compare=False)

    @property
    def conditions(self) -> tuple[bool, ...]:
        return (self.c1, self.c2, self.c3, self.c4, self.c5, self.c6)

    @property
    def agreed(self) -> bool:
        return len(set(self.conditions)) == 1

    @property
    def uj(self) -> bool:
        return self.c1


def _names(R: FiniteRing, *xs) -> str:
    return ",".join(R.names[int(x)] for x in xs)


def _triple_scan(R: FiniteRing, left: np.ndarray, right: np.ndarray, J_mask: np.ndarray):
    """First ``(r, a, b)`` with ``r*a - b*r`` outside J, or None.

    For fixed ``r`` every pair passes iff ``r*a - r*a0``, ``b*r - b0*r`` and
    ``r*a0 - b0*r`` all lie in J (J is an additive group), so rows are
    screened in O(|left| + |right|) and only a failing row is scanned pairwise.
    """
    neg = R.neg
    RA = R.mul[:, left]
    BR = R.mul[right, :].T
    a0, b0 = RA[:, :1], BR[:, :1]
    good = (J_mask[R.add[RA, neg[a0]]].all(axis=1)
            & J_mask[R.add[BR, neg[b0]]].all(axis=1)
            & J_mask[R.add[a0[:, 0], neg[b0[:, 0]]]])
    for r in np.flatnonzero(~good)[:1].tolist():
        ra = R.mul[r, left]
        br = R.mul[right, r]
        bad = ~J_mask[R.add[ra[:, None], neg[br][None, :]]]
        if bad.any():
            i, j = np.unravel_index(int(bad.argmax()), bad.shape)
            return r, int(left[i]), int(right[j])
    return None


def evaluate_uj_conditions(R: FiniteRing) -> UJVerdict:
    """Evaluate the six conditions without enforcing agreement.

    When UJ holds, also records whether C(R) = J(R) and U(R) + U(R) = J(R).
    """
    require_nondegenerate(R)
    U = units(R)
    J = jacobson_radical(R)
    C = quasi_regular_set(R)
    Ua, Ca, Jm = U.array, C.array, J.mask
    witness = {}

    one_plus_j = set(R.add[R.one, J.array].tolist())
    c1 = set(U.members) == one_plus_j
    if not c1:
        witness[1] = "unit " + R.names[min(set(U.members) - one_plus_j)]

    Q = quotient(R, J).quotient
    qu = units(Q).members
    c2 = qu == (Q.one,)
    if not c2:
        witness[2] = "quotient unit " + Q.names[[u for u in qu if u != Q.one][0]]

    closure = ideal_closure(R, C.members)
    c3 = closure.members == C.members
    if not c3:
        witness[3] = "ideal closure adds " + R.names[min(set(closure.members) - set(C.members))]

    hit = _triple_scan(R, Ca, Ca, Jm)
    c4 = hit is None
    if hit:
        witness[4] = "r,b,c=" + _names(R, *hit)

    hit = _triple_scan(R, Ua, Ua, Jm)
    c5 = hit is None
    if hit:
        witness[5] = "r,u,v=" + _names(R, *hit)

    sums = R.add[Ua[:, None], Ua[None, :]]
    bad = ~Jm[sums]
    c6 = not bad.any()
    if not c6:
        i, j = np.unravel_index(int(bad.argmax()), bad.shape)
        witness[6] = "u+v=" + _names(R, Ua[i], Ua[j])

    sharp = True
    if c1:
        sharp = C.members == J.members and set(np.unique(sums).tolist()) == set(J.members)
    return UJVerdict(c1, c2, c3, c4, c5, c6, witness, sharp)


@memoized
def is_uj_all_ways(R: FiniteRing) -> UJVerdict:
    """Decide UJ by all six conditions and insist they agree."""
    verdict = evaluate_uj_conditions(R)
    if not verdict.agreed:
        raise InternalInconsistency(f"UJ conditions disagree on {R.provenance}: {verdict.conditions}")
    if not verdict.sharpenings_hold:
        raise InternalInconsistency(f"UJ ring {R.provenance} without C(R) = J(R) = U(R) + U(R)")
    return verdict


@memoized
def is_uj(R: FiniteRing) -> bool:
    """``U(R) = 1 + J(R)`` by direct set comparison."""
    require_nondegenerate(R)
    J = jacobson_radical(R)
    return set(units(R).members) == set(R.add[R.one, J.array].tolist())


def is_uu(R: FiniteRing) -> bool:
    require_nondegenerate(R)
    N = nilpotents(R)
    return set(units(R).members) == set(R.add[R.one, N.array].tolist())


def is_boolean(R: FiniteRing) -> bool:
    require_nondegenerate(R)
    return len(idempotents(R)) == R.size


def is_reduced(R: FiniteRing) -> bool:
    require_nondegenerate(R)
    return nilpotents(R).members == (R.zero,)


def is_abelian(R: FiniteRing) -> bool:
    """Every idempotent is central."""
    require_nondegenerate(R)
    E = idempotents(R).array
    return bool((R.mul[E, :] == R.mul[:, E].T).all())


def is_local(R: FiniteRing) -> bool:
    """Non-units form an ideal (which is then J(R))."""
    require_nondegenerate(R)
    nonunits = np.flatnonzero(~units(R).mask)
    local = is_two_sided_ideal(R, nonunits)
    if local and tuple(nonunits.tolist()) != jacobson_radical(R).members:
        raise InternalInconsistency("local ring whose maximal ideal is not J(R)")
    return local


def is_division_ring(R: FiniteRing) -> bool:
    require_nondegenerate(R)
    return len(units(R)) == R.size - 1


def nil_ideal_closure_is_n(R: FiniteRing) -> bool:
    """Whether N(R) is an ideal."""
    N = nilpotents(R)
    return ideal_closure(R, N.members).members == N.members


# --------------------------------------------------------------------------
# decompositions


@dataclass(frozen=True)
class Decomposition:
    element: int
    idempotent_part: int
    other_part: int
    kind: str


def witness_set(R: FiniteRing, kind: str) -> ElementSet:
    if kind == "clean":
        return units(R)
    if kind == "j-clean":
        return jacobson_radical(R)
    if kind == "nil-clean":
        return nilpotents(R)
    raise ValueError(f"unknown decomposition kind {kind!r}; expected one of {KINDS}")


def decompositions(R: FiniteRing, r: int, kind: str) -> list[Decomposition]:
    """All ``r = e + t`` with ``e`` idempotent and ``t`` in the kind's witness set, by ascending ``e``."""
    require_nondegenerate(R)
    mask = witness_set(R, kind).mask
    out = []
    for e in idempotents(R):
        t = int(R.sub(int(r), e))
        if mask[t]:
            out.append(Decomposition(int(r), e, t, kind))
    return out


def decomposition_counts(R: FiniteRing, kind: str) -> np.ndarray:
    """Number of ``kind`` decompositions of every element."""
    require_nondegenerate(R)
    E = idempotents(R).array
    mask = witness_set(R, kind).mask
    return mask[R.sub(np.arange(R.size)[:, None], E[None, :])].sum(axis=1)


def _every_element(R: FiniteRing, kind: str) -> tuple[bool, Optional[int]]:
    counts = decomposition_counts(R, kind)
    bad = np.flatnonzero(counts == 0)
    return (True, None) if bad.size == 0 else (False, int(bad[0]))


def is_clean(R: FiniteRing) -> tuple[bool, Optional[int]]:
    return _every_element(R, "clean")


def is_j_clean(R: FiniteRing) -> tuple[bool, Optional[int]]:
    return _every_element(R, "j-clean")


def is_nil_clean(R: FiniteRing) -> tuple[bool, Optional[int]]:
    return _every_element(R, "nil-clean")


def is_uniquely_nil_clean(R: FiniteRing) -> bool:
    return bool((decomposition_counts(R, "nil-clean") == 1).all())


def idempotent_orbits(R: FiniteRing) -> np.ndarray:
    """Label each idempotent by its conjugacy class under U(R); -1 for non-idempotents."""
    U = units(R).array
    inv = unit_inverse(R)[U]
    label = np.full(R.size, -1, dtype=np.int64)
    for e in idempotents(R):
        if label[e] < 0:
            orbit = R.mul[R.mul[U, e], inv]
            label[orbit] = e
    return label


def is_conjugate_nil_clean(R: FiniteRing) -> bool:
    """Nil clean, and any two nil-clean idempotent parts of one element are unit-conjugate.

    This is a working definition; the literature term is used without a
    definition being fixed here.
    """
    ok, _ = is_nil_clean(R)
    if not ok:
        return False
    label = idempotent_orbits(R)
    N = nilpotents(R).mask
    for r in range(R.size):
        parts = [e for e in idempotents(R) if N[R.sub(r, e)]]
        if len({int(label[e]) for e in parts}) > 1:
            return False
    return True


def idempotents_lift(R: FiniteRing, I: ElementSet, unique: bool = False) -> bool:
    """Every idempotent of ``R/I`` is the image of an idempotent (exactly one if ``unique``)."""
    if not is_two_sided_ideal(R, I.members):
        raise NotAnIdeal("idempotent lifting needs a two-sided ideal")
    cr = quotient(R, I)
    images = cr.projection[idempotents(R).array]
    counts = np.bincount(images, minlength=cr.quotient.size)
    targets = idempotents(cr.quotient).array
    hit = counts[targets]
    return bool((hit == 1).all() if unique else (hit >= 1).all())
