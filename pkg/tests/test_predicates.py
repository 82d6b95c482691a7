import pytest

import oracles as O
from finring import predicates as P
from finring.constructions import gf, matrix_ring, product, triangular_ring, zmod
from finring.errors import DegenerateRing, InternalInconsistency, NotAnIdeal
from finring.ring_core import ElementSet, jacobson_radical, nilpotents, units
from finring.ringspec import elaborate


def test_uj_verdicts():
    v = P.is_uj_all_ways(zmod(8))
    assert v.conditions == (True,) * 6 and v.agreed and v.uj
    v = P.is_uj_all_ways(gf(2, 1))
    assert v.conditions == (True,) * 6
    M = matrix_ring(zmod(2), 2)
    v = P.is_uj_all_ways(M)
    assert v.conditions == (False,) * 6
    assert v.witness[6].startswith("u+v=")
    u, w = v.witness[6][len("u+v="):].split(",[[")
    s = M.add[M.index(u), M.index("[[" + w)]
    assert s not in jacobson_radical(M)


def test_disagreement_raises(monkeypatch):
    R = zmod(4)
    forged = P.UJVerdict(True, True, True, True, True, False)
    monkeypatch.setattr(P, "evaluate_uj_conditions", lambda _: forged)
    with pytest.raises(InternalInconsistency):
        P.is_uj_all_ways(R)


def test_degenerate_ring_refused():
    Z1 = zmod(1)
    for fn in (P.is_uj, P.is_uj_all_ways, P.is_uu, P.is_boolean, P.is_local, P.is_clean):
        with pytest.raises(DegenerateRing):
            fn(Z1)


@pytest.mark.parametrize("spec", ["Z2", "Z6", "Z8", "Z9", "mat(2,Z2)", "tri(2,Z2)", "GF(2,2)",
                                  "groupalg(Z2,C3)", "prod(Z4,Z2)", "tri(2,Z4)"])
def test_uj_matches_oracle(spec):
    R = elaborate(spec)
    assert P.is_uj(R) == P.is_uj_all_ways(R).uj == O.is_uj(R)


def test_uu():
    assert P.is_uu(zmod(8))
    assert not P.is_uu(gf(2, 2))
    assert P.is_uu(elaborate("B3"))


def test_class_predicates():
    F2 = zmod(2)
    assert P.is_boolean(product([F2, F2]))
    assert P.is_local(zmod(8)) and not P.is_local(zmod(6))
    T = triangular_ring(F2, 2)
    assert not P.is_abelian(T)
    e11, e12 = T.index("[[1,0],[0,0]]"), T.index("[[0,1],[0,0]]")
    assert T.mul[e11, e12] != T.mul[e12, e11]
    assert P.is_reduced(zmod(6)) and not P.is_reduced(zmod(4))
    assert P.is_division_ring(gf(2, 2)) and not P.is_division_ring(zmod(4))
    assert P.nil_ideal_closure_is_n(zmod(8))
    assert not P.nil_ideal_closure_is_n(matrix_ring(F2, 2))


def test_decomposition_examples():
    R = zmod(8)
    assert [(d.idempotent_part, d.other_part) for d in P.decompositions(R, 3, "j-clean")] == [(1, 2)]
    clean0 = [(d.idempotent_part, d.other_part) for d in P.decompositions(R, 0, "clean")]
    assert (1, 7) in clean0
    F = gf(2, 2)
    assert P.decompositions(F, F.index("a"), "nil-clean") == []


@pytest.mark.parametrize("spec", ["Z8", "Z12", "mat(2,Z2)", "tri(2,Z2)", "groupalg(Z2,C3)"])
def test_decompositions_match_oracle(spec):
    R = elaborate(spec)
    sets = {"clean": O.units(R), "j-clean": O.radical(R), "nil-clean": O.nilpotents(R)}
    for kind, witness in sets.items():
        for r in range(R.size):
            got = [(d.idempotent_part, d.other_part) for d in P.decompositions(R, r, kind)]
            assert got == O.decompositions(R, r, witness)
        counts = P.decomposition_counts(R, kind)
        assert [len(O.decompositions(R, r, witness)) for r in range(R.size)] == counts.tolist()


def test_decomposition_invariants():
    R = elaborate("tri(2,Z4)")
    U, J, N = units(R).mask, jacobson_radical(R).mask, nilpotents(R).mask
    for kind, mask in (("clean", U), ("j-clean", J), ("nil-clean", N)):
        for r in range(0, R.size, 7):
            for d in P.decompositions(R, r, kind):
                e, t = d.idempotent_part, d.other_part
                assert R.mul[e, e] == e and R.add[e, t] == r and mask[t]


def test_clean_variants():
    assert P.is_nil_clean(zmod(4)) == (True, None)
    F = gf(2, 2)
    assert P.is_clean(F) == (True, None)
    ok, bad = P.is_nil_clean(F)
    assert not ok and bad == F.index("a")
    M = matrix_ring(zmod(2), 2)
    assert P.is_nil_clean(M)[0]
    assert not P.is_j_clean(zmod(6))[0] and P.is_clean(zmod(6))[0]


def test_uniquely_nil_clean():
    F2 = zmod(2)
    assert P.is_uniquely_nil_clean(zmod(4))
    assert P.is_uniquely_nil_clean(product([F2, F2]))
    M = matrix_ring(F2, 2)
    assert not P.is_uniquely_nil_clean(M)
    assert (P.decomposition_counts(M, "nil-clean") >= 2).any()


def test_conjugate_nil_clean_working_definition():
    assert P.is_conjugate_nil_clean(matrix_ring(zmod(2), 2))
    assert P.is_conjugate_nil_clean(zmod(4))
    assert P.is_conjugate_nil_clean(elaborate("B3"))
    assert not P.is_conjugate_nil_clean(gf(2, 2))


def test_idempotents_lift():
    R = zmod(4)
    assert P.idempotents_lift(R, jacobson_radical(R))
    assert P.idempotents_lift(R, ElementSet(R, (0,), "two-sided-ideal"), unique=True)
    R8 = zmod(8)
    assert P.idempotents_lift(R8, jacobson_radical(R8), unique=True)
    with pytest.raises(NotAnIdeal):
        P.idempotents_lift(R8, ElementSet(R8, (0, 3), "subset"))


def _naive_triple(R, left, right, J):
    for r in range(R.size):
        for a in left:
            for b in right:
                if R.sub(int(R.mul[r, a]), int(R.mul[b, r])) not in J:
                    return r, a, b
    return None


@pytest.mark.parametrize("spec", ["mat(2,Z2)", "Z6", "groupalg(Z2,C3)", "tri(2,Z3)", "tri(2,Z4)", "prod(Z3,Z4)"])
def test_triple_scan_screen_matches_pairwise_scan(spec):
    from finring.ring_core import quasi_regular_set
    R = elaborate(spec)
    J = set(jacobson_radical(R).members)
    for S in (quasi_regular_set(R), units(R)):
        got = P._triple_scan(R, S.array, S.array, jacobson_radical(R).mask)
        assert got == _naive_triple(R, S.members, S.members, J)
