import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finring.constructions import triangular_ring, zmod
from finring.errors import (
    AxiomViolation,
    CapExceeded,
    ElaborationError,
    ManifestError,
    SpecSyntaxError,
    TableFormatError,
)
from finring.ring_core import find_isomorphism
from finring.ringspec import (
    ContextSpec,
    RingSpec,
    default_manifest_path,
    dump_table,
    elaborate,
    expand_context,
    load_manifest,
    load_table,
    parse_context,
    parse_manifest,
    parse_spec,
    parse_table,
    print_spec,
)

leaves = st.one_of(
    st.builds(lambda n: RingSpec("Z", (n,)), st.integers(1, 300)),
    st.builds(lambda n: RingSpec("B", (n,)), st.integers(1, 8)),
    st.builds(lambda p, k: RingSpec("GF", (p, k)), st.sampled_from([2, 3, 5, 7]), st.integers(1, 4)),
    st.builds(lambda p: RingSpec("table", (p,)), st.sampled_from(["a.table", "dir/b c.table"])),
)


def _extend(children):
    return st.one_of(
        st.builds(lambda xs: RingSpec("prod", tuple(xs)), st.lists(children, min_size=1, max_size=3)),
        st.builds(lambda k, s: RingSpec("mat", (k, s)), st.integers(1, 3), children),
        st.builds(lambda k, s: RingSpec("tri", (k, s)), st.integers(1, 3), children),
        st.builds(lambda s, cs: RingSpec("polyquot", (s, tuple(cs))), children,
                  st.lists(st.integers(0, 9), min_size=2, max_size=4)),
        st.builds(lambda s, n: RingSpec("groupalg", (s, ("C", n))), children, st.integers(1, 6)),
        st.builds(lambda s: RingSpec("groupalg", (s, ("table", "g.group"))), children),
    )


specs = st.recursive(leaves, _extend, max_leaves=6)


@settings(max_examples=200, deadline=None)
@given(specs)
def test_print_parse_round_trip(t):
    text = print_spec(t)
    assert parse_spec(text) == t
    assert print_spec(parse_spec(text)) == text


@pytest.mark.parametrize("text,canonical", [
    ("mat(2, Z2)", "mat(2,Z2)"),
    ("GF2,2", "GF(2,2)"),
    ("  prod( Z4 ,\n Z2 )", "prod(Z4,Z2)"),
    ("polyquot(Z2, [0, 0, 1])", "polyquot(Z2,[0,0,1])"),
    ("groupalg(Z3, C2)", "groupalg(Z3,C2)"),
])
def test_canonical_printing(text, canonical):
    assert print_spec(parse_spec(text)) == canonical


def test_syntax_error_position():
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec("mat(2, ")
    assert (info.value.line, info.value.col) == (1, 8)
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec("prod(Z2,\n  Q3)")
    assert (info.value.line, info.value.col) == (2, 3)
    with pytest.raises(SpecSyntaxError):
        parse_spec("Z4 junk")
    with pytest.raises(SpecSyntaxError):
        parse_spec("x" * 5000)


def test_elaboration_errors_name_the_node():
    with pytest.raises(ElaborationError) as info:
        elaborate("mat(3,Z4)")
    assert info.value.path == "mat(3,Z4)"
    assert isinstance(info.value.cause, CapExceeded)
    with pytest.raises(ElaborationError) as info:
        elaborate("prod(Z2,GF(4,1))")
    assert info.value.path == "GF(4,1)"
    with pytest.raises(ElaborationError):
        elaborate("polyquot(mat(2,Z2),[0,0,1])")


def test_elaborate_examples():
    assert elaborate("tri(3,Z4)").size == 4096
    R = elaborate("polyquot(Z4,[3,0,1])")
    # -1 is written 3 over Z/4: x^2 = 1
    x = R.index("x")
    assert R.mul[x, x] == R.one
    assert elaborate("B3").size == 8
    assert elaborate("GF(2,2)").provenance == "GF(2,2)"


def test_cap_parameter():
    with pytest.raises(ElaborationError):
        elaborate("Z64", cap=32)
    assert elaborate("Z64", cap=64).size == 64


def test_table_round_trip(tmp_path):
    T = triangular_ring(zmod(2), 2)
    path = tmp_path / "t.table"
    path.write_text(dump_table(T))
    back = load_table(path)
    assert back.same_tables(T) and back.names == T.names
    assert dump_table(zmod(2)) == "size 2\nzero 0\none 1\nadd\n0 1\n1 0\nmul\n0 0\n0 1\nnames\n0\n1\n"


def test_table_perturbation_is_rejected():
    text = dump_table(zmod(4)).split("\n")
    mul_row = text.index("mul") + 3
    row = text[mul_row].split()
    row[2] = "1"
    text[mul_row] = " ".join(row)
    with pytest.raises(AxiomViolation) as info:
        parse_table("\n".join(text))
    assert info.value.witness == (2, 2, 3)


def test_table_format_errors_carry_lines():
    with pytest.raises(TableFormatError) as info:
        parse_table("size 2\nzero 0\none 1\nadd\n0 1\n1\n")
    assert info.value.line == 6
    with pytest.raises(TableFormatError) as info:
        parse_table("size two\n")
    assert info.value.line == 1


def test_raw_table_in_corpus_is_t2_f2():
    R = elaborate("table(tri2_f2.table)", base_dir=default_manifest_path().parent)
    assert find_isomorphism(R, triangular_ring(zmod(2), 2)) is not None


def test_manifest_parsing():
    entries = parse_manifest("# header\nZ4\n\ncontext: Z2; Z2; reg; reg; mult  # comment\nmat(2,Z2)\n")
    assert [e.line for e in entries] == [2, 4, 5]
    assert entries[1].is_context and not entries[0].is_context
    with pytest.raises(ManifestError) as info:
        parse_manifest("Z4\nZ2\nmat(2,\n")
    assert info.value.line == 3
    with pytest.raises(ManifestError):
        parse_manifest("context: Z2; Z2; reg\n")


def test_default_manifest_size():
    entries = load_manifest(default_manifest_path())
    rings = [e for e in entries if not e.is_context]
    contexts = [e for e in entries if e.is_context]
    assert len(rings) >= 50 and len(contexts) >= 10


def test_context_specs():
    spec = parse_context("Z2; Z2; reg; 0; zero")
    assert spec == ContextSpec(parse_spec("Z2"), parse_spec("Z2"), "reg", "0", "zero")
    [ctx] = expand_context(spec)
    assert ctx.label == "ctx(Z2,Z2,reg,0,phi=[0,0],psi=[0,0])"
    assert len(expand_context(parse_context("Z4; Z4; Z2; Z2; all"))) == 4
    [ctx] = expand_context(parse_context("Z2;Z2;reg;reg;phi=[0,0,0,1],psi=[0,0,0,1]"))
    assert np.array_equal(ctx.phi, [[0, 0], [0, 1]])
    with pytest.raises(SpecSyntaxError):
        parse_context("Z2; Z2; bogus; 0; zero")


def test_context_from_json_file(tmp_path):
    (tmp_path / "c.json").write_text(
        '{"R": "Z2", "S": "Z2", "V": "reg", "W": "reg", "phi": [[0,0],[0,1]], "psi": [[0,0],[0,1]]}')
    [ctx] = expand_context(parse_context("file(c.json)"), base_dir=tmp_path)
    assert ctx.phi.tolist() == [[0, 0], [0, 1]]
