"""Executable checks for every finitely decidable UJ statement, plus the corpus runner.

Each check recomputes from ring_core/predicates primitives and never reads
another check's verdict. A check returns ``pass``, ``fail`` or ``skipped``;
inapplicable input is always ``skipped``.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import constructions as cons
from .errors import CapExceeded, DegenerateRing, FinRingError, ManifestError
from .predicates import (
    decomposition_counts,
    evaluate_uj_conditions,
    idempotents_lift,
    is_boolean,
    is_conjugate_nil_clean,
    is_division_ring,
    is_uj,
    is_uu,
    nil_ideal_closure_is_n,
)
from .ring_core import (
    ElementSet,
    FiniteRing,
    center,
    corner,
    find_isomorphism,
    ideal_closure,
    idempotents,
    is_dedekind_finite,
    jacobson_radical,
    nilpotency_index,
    nilpotents,
    quasi_regular_set,
    quotient,
    radical_criteria,
    default_cap,
    units,
)
from .ringspec import ContextSpec, ManifestEntry, RingSpec, elaborate, expand_context

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

INFINITE_IDS = ("lemma-trivial-units", "prop-2-primal", "prop-poly-necessary", "koethe")
INFINITE_WITNESS = "infinite object"

# sizes up to which thm-morita item (3) runs a full isomorphism search
ISO_SEARCH_LIMIT = 16
# largest derived ring ex-uj builds during a scan
EXAMPLE_DERIVED_CAP = 1024


@dataclass(frozen=True)
class CheckResult:
    check: str
    subject: str
    verdict: str
    witness: str = ""
    side: Optional[str] = None

    def line(self) -> str:
        text = f"{self.check} {self.subject} {self.verdict}"
        return f"{text} {self.witness}" if self.witness else text


def _side(R: FiniteRing) -> Optional[str]:
    try:
        return "uj" if is_uj(R) else "non-uj"
    except DegenerateRing:
        return None


def _flags(**items: bool) -> str:
    return ",".join(f"{k}={'T' if v else 'F'}" for k, v in items.items())


# --------------------------------------------------------------------------
# ring checks; each returns (verdict, witness)


def check_radical(R: FiniteRing, spec=None):
    """Left/right radical criteria agree, J(R/J) = 0, J nilpotent, C(R) = 1 - U(R)."""
    left, right = radical_criteria(R)
    if left.members != right.members:
        return FAIL, "left and right criteria differ"
    J = ElementSet(R, left.members, "two-sided-ideal")
    ql, qr = radical_criteria(quotient(R, J).quotient)
    if len(ql) != 1 or len(qr) != 1:
        return FAIL, "J(R/J) nonzero"
    k = nilpotency_index(R, J.members)
    if k is None or k > R.size:
        return FAIL, "J not nilpotent"
    expected = sorted(set(R.sub(R.one, units(R).array).tolist()))
    if list(quasi_regular_set(R).members) != expected:
        return FAIL, "C(R) != 1 - U(R)"
    return PASS, f"|J|={len(J)},index={k}"


def check_lemma_char(R: FiniteRing, spec=None):
    v = evaluate_uj_conditions(R)
    flags = "".join("T" if c else "F" for c in v.conditions)
    if not v.agreed:
        return FAIL, f"conditions={flags}"
    if not v.sharpenings_hold:
        return FAIL, f"conditions={flags} sharpening C=J=U+U fails"
    first = min(v.witness) if v.witness else None
    return PASS, f"conditions={flags}" + (f" c{first}:{v.witness[first]}" if first else "")


def _ideals_inside(R: FiniteRing, J: ElementSet) -> list[ElementSet]:
    """Closures of single radical elements and sums of two such closures."""
    # RxR = R(ux)R for a unit u, so one closure per orbit of U acting on the left
    U = units(R).array
    seen = np.zeros(R.size, dtype=bool)
    singles = {}
    for x in J:
        if seen[x]:
            continue
        seen[R.mul[U, x]] = True
        I = ideal_closure(R, [x])
        singles[I.members] = I
    ideals = dict(singles)
    keys = sorted(singles)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            A, B = np.asarray(a), np.asarray(b)
            members = tuple(np.unique(R.add[A[:, None], B[None, :]]).tolist())
            if members not in ideals:
                ideals[members] = ElementSet(R, members, "two-sided-ideal")
    return [ideals[k] for k in sorted(ideals)]


def check_basic(R: FiniteRing, spec=None):
    uj = is_uj(R)
    J = jacobson_radical(R)
    applied = ["5"]
    for I in _ideals_inside(R, J):
        if is_uj(quotient(R, I).quotient) != uj:
            return FAIL, f"item5: R/I differs for |I|={len(I)}"
    if uj:
        two = int(R.add[R.one, R.one])
        if two not in J:
            return FAIL, "item1: 2 not in J"
        cr = quotient(R, J)
        Q, proj = cr.quotient, cr.projection
        if nilpotents(Q).members != (Q.zero,):
            return FAIL, "item3: R/J not reduced"
        E = idempotents(Q).array
        if not (Q.mul[E, :] == Q.mul[:, E].T).all():
            return FAIL, "item3: R/J not abelian"
        in_j = J.mask[R.mul]
        bad = in_j & ~in_j.T
        if bad.any():
            x, y = np.unravel_index(int(bad.argmax()), bad.shape)
            return FAIL, f"item4: xy in J but yx not, x={R.names[x]},y={R.names[y]}"
        # xry lies in J iff its image in R/J is zero; r ranges over all of R/J
        sandwich = np.empty((Q.size, Q.size), dtype=bool)
        for a in range(Q.size):
            sandwich[a] = (Q.mul[Q.mul[a, :][:, None], np.arange(Q.size)[None, :]] == Q.zero).all(axis=0)
        ok = sandwich[proj[:, None], proj[None, :]] & sandwich[proj[None, :], proj[:, None]]
        bad = in_j & ~ok
        if bad.any():
            x, y = np.unravel_index(int(bad.argmax()), bad.shape)
            return FAIL, f"item4: xRy or yRx not in J, x={R.names[x]},y={R.names[y]}"
        ok, w = is_dedekind_finite(R)
        if not ok:
            return FAIL, f"item6: ab=1!=ba at {w}"
        applied += ["1", "3", "4", "6"]
        if is_division_ring(R):
            if R.size != 2:
                return FAIL, "item2: UJ division ring other than F2"
            applied.append("2")
    return PASS, "items=" + ",".join(sorted(applied))


def _factors(spec: Optional[RingSpec], cap) -> Optional[list[FiniteRing]]:
    if spec is None:
        return None
    if spec.kind == "B":
        return [cons.zmod(2)] * spec.args[0]
    if spec.kind == "prod":
        return [elaborate(s, cap) for s in spec.args]
    return None


def check_product(R: FiniteRing, spec=None, cap=None):
    factors = _factors(spec, cap)
    if not factors:
        return SKIPPED, "not a product"
    parts = [is_uj(F) for F in factors]
    if is_uj(R) != all(parts):
        return FAIL, f"product={is_uj(R)} factors={parts}"
    return PASS, "factors=" + "".join("T" if p else "F" for p in parts)


def check_semilocal(R: FiniteRing, spec=None):
    uj = is_uj(R)
    boolean = is_boolean(quotient(R, jacobson_radical(R)).quotient)
    return (PASS if uj == boolean else FAIL), _flags(uj=uj, boolean_quotient=boolean)


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def check_zn(n_max: int, cap: Optional[int] = None) -> tuple[str, str]:
    """``Z/n`` is UJ exactly for powers of two, over ``2 <= n <= n_max``."""
    bad = [n for n in range(2, n_max + 1) if is_uj(cons.zmod(n, cap)) != is_power_of_two(n)]
    return (PASS, f"n<={n_max}") if not bad else (FAIL, f"exceptions={bad[:10]}")


def check_zn_entry(R: FiniteRing, spec=None):
    if spec is None or spec.kind != "Z":
        return SKIPPED, "not Z/n"
    n = spec.args[0]
    uj = is_uj(R)
    return (PASS if uj == is_power_of_two(n) else FAIL), _flags(uj=uj, power_of_two=is_power_of_two(n))


def check_uu_nil(R: FiniteRing, spec=None):
    uj = is_uj(R)
    uu = is_uu(R)
    n_ideal = nil_ideal_closure_is_n(R)
    return (PASS if uj == (uu and n_ideal) else FAIL), _flags(uj=uj, uu=uu, n_ideal=n_ideal)


def check_center(R: FiniteRing, spec=None):
    if not is_uj(R):
        return SKIPPED, "R not UJ"
    Z = center(R)
    return (PASS if is_uj(Z) else FAIL), f"|Z|={Z.size}"


def _uj_or_zero(R: FiniteRing) -> bool:
    # the zero corner (e = 0 or 1) counts as UJ for the corner equivalence
    return True if R.is_zero_ring else is_uj(R)


def check_corners(R: FiniteRing, spec=None):
    uj = is_uj(R)
    J = jacobson_radical(R)
    E = idempotents(R)
    for e in E:
        f = int(R.sub(R.one, e))
        off1 = R.mul[R.mul[e, :], f]
        off2 = R.mul[R.mul[f, :], e]
        rhs = (_uj_or_zero(corner(R, e)) and _uj_or_zero(corner(R, f))
               and bool(J.mask[off1].all()) and bool(J.mask[off2].all()))
        if rhs != uj:
            return FAIL, f"e={R.names[e]} uj={uj} corners={rhs}"
    return PASS, f"idempotents={len(E)}"


def check_jc(R: FiniteRing, spec=None):
    uj = is_uj(R)
    clean = decomposition_counts(R, "clean") > 0
    jclean = decomposition_counts(R, "j-clean") > 0
    gap = np.flatnonzero(clean & ~jclean)
    all_clean_are_j = gap.size == 0
    w = _flags(uj=uj, clean_subset_jclean=all_clean_are_j)
    if gap.size:
        w += f" element={R.names[gap[0]]}"
    return (PASS if uj == all_clean_are_j else FAIL), w


def check_clean_thm(R: FiniteRing, spec=None):
    uj = is_uj(R)
    J = jacobson_radical(R)
    clean = bool((decomposition_counts(R, "clean") > 0).all())
    jclean = bool((decomposition_counts(R, "j-clean") > 0).all())
    lifts = idempotents_lift(R, J)
    boolean = is_boolean(quotient(R, J).quotient)
    items = [clean and uj, boolean and lifts, jclean and uj, jclean]
    w = "items=" + "".join("T" if i else "F" for i in items)
    return (PASS if len(set(items)) == 1 else FAIL), w


def check_nilclean_thm(R: FiniteRing, spec=None):
    uj = is_uj(R)
    J = jacobson_radical(R)
    N = nilpotents(R)
    j_nil = set(J.members) <= set(N.members)
    clean = bool((decomposition_counts(R, "clean") > 0).all())
    nil_clean = bool((decomposition_counts(R, "nil-clean") > 0).all())
    boolean = is_boolean(quotient(R, J).quotient)
    uu = is_uu(R)
    core = {1: clean and uj and j_nil, 2: boolean and j_nil, 3: nil_clean and uj, 6: boolean and uu}
    cnc = is_conjugate_nil_clean(R)
    soft = {4: cnc and uj, 5: cnc and nil_ideal_closure_is_n(R)}
    flags = "".join("T" if core[k] else "F" for k in sorted(core))
    soft_agree = len(set(core.values()) | set(soft.values())) == 1
    w = f"items1236={flags} nilclean={'T' if nil_clean else 'F'} " \
        f"working-definition45={'agree' if soft_agree else 'disagree'}"
    return (PASS if len(set(core.values())) == 1 else FAIL), w


def check_examples(R: FiniteRing, spec=None, cap=None, derived_cap: Optional[int] = None):
    """T_n(R) and R[x]/(x^n) stay UJ over UJ rings; Boolean rings have U = {1};
    M_2(R) is never UJ.

    Derived rings larger than ``derived_cap`` (default: the smaller of the
    ring cap and ``EXAMPLE_DERIVED_CAP``) are left out.
    """
    if derived_cap is None:
        derived_cap = min(default_cap() if cap is None else cap, EXAMPLE_DERIVED_CAP)
    cap = derived_cap
    done = []

    def build(label, fn):
        try:
            S = fn()
        except CapExceeded:
            return None
        done.append(label)
        return S

    M = build("mat2", lambda: cons.matrix_ring(R, 2, cap))
    if M is not None and is_uj(M):
        return FAIL, "M_2(R) is UJ"
    if is_uj(R):
        for n in (2, 3):
            T = build(f"tri{n}", lambda: cons.triangular_ring(R, n, cap))
            if T is not None and not is_uj(T):
                return FAIL, f"T_{n}(R) not UJ"
            P = build(f"x^{n}", lambda: cons.truncated_polynomial(R, n, cap))
            if P is not None and not is_uj(P):
                return FAIL, f"R[x]/(x^{n}) not UJ"
    if is_boolean(R):
        done.append("boolean")
        if units(R).members != (R.one,):
            return FAIL, "Boolean ring with nontrivial units"
        if not is_uj(R):
            return FAIL, "Boolean ring not UJ"
    return PASS, "built=" + (",".join(done) or "none")


RING_CHECKS: dict[str, Callable] = {
    "radical-oracle": check_radical,
    "lemma-char-uj": check_lemma_char,
    "prop-basic": check_basic,
    "prop-basic-7": check_product,
    "prop-semilocal": check_semilocal,
    "cor-zn": check_zn_entry,
    "rem-uu-nil": check_uu_nil,
    "prop-center": check_center,
    "prop-corners": check_corners,
    "prop-jc": check_jc,
    "thm-clean": check_clean_thm,
    "thm-nil-clean": check_nilclean_thm,
    "ex-uj": check_examples,
}

_CAP_AWARE = {"prop-basic-7", "ex-uj"}


# --------------------------------------------------------------------------
# Morita contexts


def _radical_shape(ctx: cons.MoritaContext, T: FiniteRing) -> Optional[str]:
    R, S, P, Q = ctx.R, ctx.S, ctx.phi, ctx.psi
    JR, JS = jacobson_radical(R).mask, jacobson_radical(S).mask
    b1 = JR[P].all(axis=1)          # vW in J(R)
    b2 = JS[Q].all(axis=0)          # Wv in J(S)
    c1 = JS[Q].all(axis=1)          # wV in J(S)
    c2 = JR[P].all(axis=0)          # Vw in J(R)
    if not np.array_equal(b1, b2):
        return "B descriptions differ"
    if not np.array_equal(c1, c2):
        return "C descriptions differ"
    radices = [R.size, ctx.V.size, ctx.W.size, S.size]
    rest = np.arange(T.size)
    digits = []
    for r in radices:
        digits.append(rest % r)
        rest = rest // r
    expected = JR[digits[0]] & b1[digits[1]] & c1[digits[2]] & JS[digits[3]]
    if not np.array_equal(expected, jacobson_radical(T).mask):
        return "J(T) != (J(R), B; C, J(S))"
    return None


def _quotients_match(T: FiniteRing, R: FiniteRing, S: FiniteRing) -> bool:
    QT = quotient(T, jacobson_radical(T)).quotient
    QR = quotient(R, jacobson_radical(R)).quotient
    QS = quotient(S, jacobson_radical(S)).quotient
    if QT.size != QR.size * QS.size:
        return False
    target = cons.product([QR, QS], cap=math.inf)
    if QT.size <= ISO_SEARCH_LIMIT:
        return find_isomorphism(QT, target) is not None
    return (is_boolean(QT) == is_boolean(target)
            and len(idempotents(QT)) == len(idempotents(target)))


def check_morita(ctx: cons.MoritaContext, cap=None):
    T = cons.morita_ring(ctx, cap)
    R, S = ctx.R, ctx.S
    JR, JS = jacobson_radical(R).mask, jacobson_radical(S).mask
    base = is_uj(R) and is_uj(S)
    pairs_in_j = bool(JR[ctx.phi].all() and JS[ctx.psi].all())
    item1 = is_uj(T)
    item2 = base and pairs_in_j
    item3 = base and _quotients_match(T, R, S)
    shape = _radical_shape(ctx, T)
    w = _flags(t_uj=item1, vw_wv_in_j=item2, quotient_splits=item3)
    if shape:
        return FAIL, f"{w} {shape}", T
    return (PASS if item1 == item2 == item3 else FAIL), w, T


# --------------------------------------------------------------------------
# running


def run_ring_check(check_id: str, R: FiniteRing, spec: Optional[RingSpec] = None,
                   cap: Optional[int] = None) -> CheckResult:
    subject = str(spec) if spec is not None else R.provenance
    fn = RING_CHECKS[check_id]
    try:
        verdict, witness = fn(R, spec, cap) if check_id in _CAP_AWARE else fn(R, spec)
    except DegenerateRing:
        return CheckResult(check_id, subject, SKIPPED, "degenerate ring")
    except FinRingError as exc:
        return CheckResult(check_id, subject, FAIL, f"{type(exc).__name__}: {exc}", _side(R))
    return CheckResult(check_id, subject, verdict, witness, _side(R) if verdict != SKIPPED else None)


def run_context_check(ctx: cons.MoritaContext, cap: Optional[int] = None) -> CheckResult:
    try:
        verdict, witness, T = check_morita(ctx, cap)
    except FinRingError as exc:
        return CheckResult("thm-morita", ctx.label, FAIL, f"{type(exc).__name__}: {exc}")
    return CheckResult("thm-morita", ctx.label, verdict, witness, _side(T))


def infinite_rows(check_filter: Optional[str] = None) -> list[CheckResult]:
    return [CheckResult(i, "*", SKIPPED, INFINITE_WITNESS)
            for i in INFINITE_IDS if check_filter in (None, i)]


ALL_IDS = tuple(RING_CHECKS) + ("thm-morita",) + INFINITE_IDS


def evaluate_entry(entry: ManifestEntry, check_filter: Optional[str] = None,
                   cap: Optional[int] = None, base_dir: Optional[Path] = None) -> list[CheckResult]:
    try:
        if entry.is_context:
            if check_filter not in (None, "thm-morita"):
                return []
            return [run_context_check(ctx, cap) for ctx in expand_context(entry.spec, cap, base_dir)]
        ids = [i for i in RING_CHECKS if check_filter in (None, i)]
        if not ids:
            return []
        R = elaborate(entry.spec, cap, base_dir)
    except FinRingError as exc:
        raise ManifestError(entry.line, str(exc)) from exc
    return [run_ring_check(i, R, entry.spec, cap) for i in ids]


def _evaluate_packed(args):
    return evaluate_entry(*args)


@dataclass
class Ledger:
    rows: list[CheckResult]

    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, Counter] = {}
        for r in self.rows:
            c = out.setdefault(r.check, Counter())
            c[r.verdict] += 1
            if r.side and r.verdict != SKIPPED:
                c[r.side] += 1
        return {k: {key: v[key] for key in (PASS, FAIL, SKIPPED, "uj", "non-uj")}
                for k, v in sorted(out.items())}

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.rows if r.verdict == FAIL]

    def text(self) -> str:
        lines = [r.line() for r in self.rows]
        for check, counts in self.summary().items():
            lines.append(f"# summary {check} " + " ".join(f"{k}={v}" for k, v in counts.items()))
        return "".join(line + "\n" for line in lines)

    def to_json(self) -> str:
        return json.dumps({"rows": [asdict(r) for r in self.rows], "summary": self.summary()},
                          indent=2, sort_keys=True) + "\n"


def run_corpus(entries: Sequence[ManifestEntry], check_filter: Optional[str] = None,
               cap: Optional[int] = None, base_dir: Optional[Path] = None, jobs: int = 1) -> Ledger:
    """Evaluate every applicable check over the manifest entries, in manifest order."""
    work = [(e, check_filter, cap, base_dir) for e in entries]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_evaluate_packed, work))
    else:
        chunks = [_evaluate_packed(w) for w in work]
    rows = [r for chunk in chunks for r in chunk]
    if entries:
        rows += infinite_rows(check_filter)
    return Ledger(rows)
