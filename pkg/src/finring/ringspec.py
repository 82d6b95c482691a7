"""The ring-spec DSL, raw table files, and corpus manifests.

Grammar (whitespace insignificant)::

    spec   := "Z" int | "GF" ["("] int "," int [")"] | "B" int
            | "prod(" spec {"," spec} ")" | "mat(" int "," spec ")"
            | "tri(" int "," spec ")" | "polyquot(" spec "," coeffs ")"
            | "groupalg(" spec "," group ")" | "table(" path ")"
    coeffs := "[" int {"," int} "]"        ascending degree, monic
    group  := "C" int | "table(" path ")"

Canonical printing uses the parenthesised ``GF(p,k)`` form and no spaces.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import constructions as cons
from .errors import (
    ElaborationError,
    FinRingError,
    ManifestError,
    SpecSyntaxError,
    TableFormatError,
)
from .ring_core import FiniteRing, validate_ring

MAX_SPEC_BYTES = 4096


@dataclass(frozen=True)
class RingSpec:
    """A node of the construction tree.

    ``args`` per kind: Z ``(n,)``; GF ``(p, k)``; B ``(k,)``; prod ``(spec, ...)``;
    mat/tri ``(k, spec)``; polyquot ``(spec, coeffs)``; groupalg
    ``(spec, ("C", n) | ("table", path))``; table ``(path,)``.
    """

    kind: str
    args: tuple

    def __str__(self) -> str:
        return print_spec(self)


def print_spec(t: RingSpec) -> str:
    k, a = t.kind, t.args
    if k == "Z":
        return f"Z{a[0]}"
    if k == "B":
        return f"B{a[0]}"
    if k == "GF":
        return f"GF({a[0]},{a[1]})"
    if k == "prod":
        return "prod(" + ",".join(print_spec(s) for s in a) + ")"
    if k in ("mat", "tri"):
        return f"{k}({a[0]},{print_spec(a[1])})"
    if k == "polyquot":
        return f"polyquot({print_spec(a[0])},[{','.join(str(c) for c in a[1])}])"
    if k == "groupalg":
        g = a[1]
        gtext = f"C{g[1]}" if g[0] == "C" else f"table({g[1]})"
        return f"groupalg({print_spec(a[0])},{gtext})"
    if k == "table":
        return f"table({a[0]})"
    raise ValueError(f"unknown spec kind {k}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos: Optional[int] = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, expected: str):
        line, col = self.where()
        raise SpecSyntaxError(line, col, expected, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, word: str) -> bool:
        self.skip()
        return self.text.startswith(word, self.pos)

    def expect(self, word: str):
        if not self.peek(word):
            self.fail(repr(word))
        self.pos += len(word)

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.fail("integer")
        self.pos = m.end()
        return int(m.group())

    def path(self) -> str:
        self.skip()
        end = self.text.find(")", self.pos)
        if end < 0:
            self.pos = len(self.text)
            self.fail("')' closing path")
        path = self.text[self.pos:end].strip()
        if not path:
            self.fail("path")
        self.pos = end
        return path

    def spec(self) -> RingSpec:
        self.skip()
        for word in ("prod(", "mat(", "tri(", "polyquot(", "groupalg(", "table(", "GF", "Z", "B"):
            if self.text.startswith(word, self.pos):
                self.pos += len(word)
                return getattr(self, "_" + word.rstrip("("))()
        self.fail("spec")

    def _Z(self):
        return RingSpec("Z", (self.integer(),))

    def _B(self):
        return RingSpec("B", (self.integer(),))

    def _GF(self):
        paren = self.peek("(")
        if paren:
            self.expect("(")
        p = self.integer()
        self.expect(",")
        k = self.integer()
        if paren:
            self.expect(")")
        return RingSpec("GF", (p, k))

    def _prod(self):
        items = [self.spec()]
        while self.peek(","):
            self.expect(",")
            items.append(self.spec())
        self.expect(")")
        return RingSpec("prod", tuple(items))

    def _sized(self, kind):
        k = self.integer()
        self.expect(",")
        inner = self.spec()
        self.expect(")")
        return RingSpec(kind, (k, inner))

    def _mat(self):
        return self._sized("mat")

    def _tri(self):
        return self._sized("tri")

    def _polyquot(self):
        base = self.spec()
        self.expect(",")
        self.expect("[")
        coeffs = [self.integer()]
        while self.peek(","):
            self.expect(",")
            coeffs.append(self.integer())
        self.expect("]")
        self.expect(")")
        return RingSpec("polyquot", (base, tuple(coeffs)))

    def _groupalg(self):
        base = self.spec()
        self.expect(",")
        if self.peek("C"):
            self.expect("C")
            group = ("C", self.integer())
        elif self.peek("table("):
            self.expect("table(")
            group = ("table", self.path())
            self.expect(")")
        else:
            self.fail("group")
        self.expect(")")
        return RingSpec("groupalg", (base, group))

    def _table(self):
        path = self.path()
        self.expect(")")
        return RingSpec("table", (path,))

    def end(self):
        self.skip()
        if self.pos != len(self.text):
            self.fail("end of input")


def parse_spec(text: str) -> RingSpec:
    """Parse DSL text into a :class:`RingSpec`, raising :class:`SpecSyntaxError` with a position."""
    if len(text.encode()) > MAX_SPEC_BYTES:
        raise SpecSyntaxError(1, 1, f"spec of at most {MAX_SPEC_BYTES} bytes")
    p = _Parser(text)
    tree = p.spec()
    p.end()
    return tree


def _resolve(path: str, base_dir: Optional[Path]) -> Path:
    p = Path(path)
    return p if p.is_absolute() or base_dir is None else Path(base_dir) / p


def elaborate(spec: Union[RingSpec, str], cap: Optional[int] = None,
              base_dir: Optional[Path] = None) -> FiniteRing:
    """Build the ring a spec describes; provenance is the canonical printed spec."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    k, a = spec.kind, spec.args
    if k == "prod":
        children = [elaborate(s, cap, base_dir) for s in a]
    elif k in ("mat", "tri"):
        children = [elaborate(a[1], cap, base_dir)]
    elif k in ("polyquot", "groupalg"):
        children = [elaborate(a[0], cap, base_dir)]
    else:
        children = []
    try:
        if k == "Z":
            R = cons.zmod(a[0], cap)
        elif k == "GF":
            R = cons.gf(a[0], a[1], cap)
        elif k == "B":
            if a[0] < 1:
                raise ValueError("B needs k >= 1")
            R = cons.product([cons.zmod(2)] * a[0], cap)
        elif k == "prod":
            R = cons.product(children, cap)
        elif k == "mat":
            R = cons.matrix_ring(children[0], a[0], cap)
        elif k == "tri":
            R = cons.triangular_ring(children[0], a[0], cap)
        elif k == "polyquot":
            base = children[0]
            R = cons.poly_quotient(base, [base.times(c) for c in a[1]], cap)
        elif k == "groupalg":
            base = children[0]
            if a[1][0] == "C":
                R = cons.cyclic_group_algebra(base, a[1][1], cap)
            else:
                G = load_group_table(_resolve(a[1][1], base_dir))
                R = cons.group_algebra(base, G, cap, group_name=f"table({a[1][1]})")
        elif k == "table":
            R = load_table(_resolve(a[0], base_dir))
            if cap is not None and R.size > cap:
                raise cons.CapExceeded("table", R.size, cap)
        else:
            raise ValueError(f"unknown spec kind {k}")
    except ElaborationError:
        raise
    except (FinRingError, ValueError, OSError) as exc:
        raise ElaborationError(print_spec(spec), exc) from exc
    return R.relabel(print_spec(spec))


# --------------------------------------------------------------------------
# raw table files


def dump_table(R: FiniteRing) -> str:
    """Render a ring in the raw-table text format."""
    lines = [f"size {R.size}", f"zero {R.zero}", f"one {R.one}", "add"]
    lines += [" ".join(str(int(x)) for x in row) for row in R.add]
    lines.append("mul")
    lines += [" ".join(str(int(x)) for x in row) for row in R.mul]
    lines.append("names")
    lines += list(R.names)
    return "\n".join(lines) + "\n"


def _header(lines: list[str], i: int, key: str) -> int:
    if i >= len(lines):
        raise TableFormatError(i + 1, f"missing '{key} <int>'")
    m = re.fullmatch(rf"{key} (\d+)", lines[i])
    if not m:
        raise TableFormatError(i + 1, f"expected '{key} <int>'")
    return int(m.group(1))


def _rows(lines: list[str], i: int, key: str, n: int) -> np.ndarray:
    if i >= len(lines) or lines[i] != key:
        raise TableFormatError(i + 1, f"expected '{key}' header")
    rows = []
    for j in range(i + 1, i + 1 + n):
        if j >= len(lines):
            raise TableFormatError(j + 1, f"missing {key} row")
        parts = lines[j].split(" ")
        if len(parts) != n or not all(p.isdigit() for p in parts):
            raise TableFormatError(j + 1, f"{key} row must hold {n} decimal indices")
        rows.append([int(p) for p in parts])
    return np.array(rows, dtype=np.int64)


def parse_table(text: str, provenance: str = "raw-table") -> FiniteRing:
    """Parse the raw-table format and validate every ring axiom."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    n = _header(lines, 0, "size")
    if n < 1:
        raise TableFormatError(1, "size must be positive")
    zero = _header(lines, 1, "zero")
    one = _header(lines, 2, "one")
    add = _rows(lines, 3, "add", n)
    mul = _rows(lines, 4 + n, "mul", n)
    i = 5 + 2 * n
    names = None
    if i < len(lines):
        if lines[i] != "names":
            raise TableFormatError(i + 1, "expected 'names' header or end of file")
        names = lines[i + 1:]
        if len(names) != n:
            raise TableFormatError(i + 1 + min(len(names), n) + 1, f"expected {n} names")
    return validate_ring(add, mul, zero, one, names, provenance)


def load_table(path: Union[str, Path]) -> FiniteRing:
    return parse_table(Path(path).read_text(encoding="utf-8"), f"table({path})")


def load_group_table(path: Union[str, Path]) -> np.ndarray:
    """Group file: ``order n`` then ``n`` rows of ``n`` indices."""
    lines = Path(path).read_text(encoding="utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    n = _header(lines, 0, "order")
    rows = []
    for j in range(1, n + 1):
        if j >= len(lines):
            raise TableFormatError(j + 1, "missing group row")
        parts = lines[j].split()
        if len(parts) != n or not all(p.isdigit() for p in parts):
            raise TableFormatError(j + 1, f"group row must hold {n} indices")
        rows.append([int(p) for p in parts])
    if len(lines) != n + 1:
        raise TableFormatError(n + 2, "trailing content")
    return np.array(rows, dtype=np.int64)


# --------------------------------------------------------------------------
# Morita context specs and manifests

_MODULE_RE = re.compile(r"0|reg|Z(\d+)")
_TABLE_PAIRING_RE = re.compile(r"phi=\[([\d,]*)\],psi=\[([\d,]*)\]")


@dataclass(frozen=True)
class ContextSpec:
    """``R; S; V; W; pairing`` where modules are ``0``, ``reg`` or ``Z<m>`` and
    the pairing is ``zero``, ``mult``, ``all`` or ``phi=[..],psi=[..]`` (row-major
    index tables). ``file`` instead names a JSON document with raw tables."""

    R: Optional[RingSpec] = None
    S: Optional[RingSpec] = None
    V: str = "0"
    W: str = "0"
    pairing: str = "zero"
    file: Optional[str] = None

    def __str__(self) -> str:
        if self.file:
            return f"ctx(file:{self.file})"
        return f"ctx({self.R},{self.S},{self.V},{self.W},{self.pairing})"


def parse_context(text: str) -> ContextSpec:
    """Parse the body of a ``context:`` line."""
    body = text.strip()
    m = re.fullmatch(r"file\((.+)\)", body)
    if m:
        return ContextSpec(file=m.group(1).strip())
    parts = [p.strip() for p in body.split(";")]
    if len(parts) != 5:
        raise SpecSyntaxError(1, 1, "'R; S; V; W; pairing'", text)
    R, S = parse_spec(parts[0]), parse_spec(parts[1])
    for mod in parts[2:4]:
        if not _MODULE_RE.fullmatch(mod):
            raise SpecSyntaxError(1, 1, "module '0', 'reg' or 'Z<m>'", mod)
    pairing = re.sub(r"\s+", "", parts[4])
    if pairing not in ("zero", "mult", "all") and not _TABLE_PAIRING_RE.fullmatch(pairing):
        raise SpecSyntaxError(1, 1, "pairing 'zero', 'mult', 'all' or 'phi=[..],psi=[..]'", pairing)
    return ContextSpec(R, S, parts[2], parts[3], pairing)


def _module(kind: str, A: FiniteRing, B: FiniteRing) -> cons.Bimodule:
    if kind == "0":
        return cons.zero_bimodule(A, B)
    if kind == "reg":
        if not A.same_tables(B):
            raise cons.BimoduleAxiomViolation("reg needs R = S", ())
        return cons.regular_bimodule(A)
    return cons.cyclic_bimodule(A, B, int(kind[1:]))


def _table_text(t: np.ndarray) -> str:
    return ",".join(str(int(x)) for x in np.asarray(t).ravel())


def context_label(base: ContextSpec, phi: np.ndarray, psi: np.ndarray) -> str:
    return f"ctx({base.R},{base.S},{base.V},{base.W},phi=[{_table_text(phi)}],psi=[{_table_text(psi)}])"


def _json_module(data, A: FiniteRing, B: FiniteRing) -> cons.Bimodule:
    if isinstance(data, str):
        return _module(data, A, B)
    return cons.validate_bimodule(data["add"], data.get("zero", 0), A, B, data["left"], data["right"])


def expand_context(spec: ContextSpec, cap: Optional[int] = None,
                   base_dir: Optional[Path] = None) -> list[cons.MoritaContext]:
    """Elaborate a context spec into validated contexts (``all`` may give several)."""
    if spec.file:
        data = json.loads(_resolve(spec.file, base_dir).read_text(encoding="utf-8"))
        R = elaborate(data["R"], cap, base_dir)
        S = elaborate(data["S"], cap, base_dir)
        V = _json_module(data["V"], R, S)
        W = _json_module(data["W"], S, R)
        return [cons.validate_context(R, S, V, W, data["phi"], data["psi"], str(spec))]
    R = elaborate(spec.R, cap, base_dir)
    S = elaborate(spec.S, cap, base_dir)
    V = _module(spec.V, R, S)
    W = _module(spec.W, S, R)
    if spec.pairing == "all":
        found = cons.enumerate_contexts(R, S, V, W)
    else:
        if spec.pairing == "zero":
            phi = np.full((V.size, W.size), R.zero)
            psi = np.full((W.size, V.size), S.zero)
        elif spec.pairing == "mult":
            if spec.V != "reg" or spec.W != "reg":
                raise cons.ContextAxiomViolation("mult pairing needs reg modules", ())
            phi, psi = R.mul, S.mul
        else:
            m = _TABLE_PAIRING_RE.fullmatch(spec.pairing)
            phi = _flat_table(m.group(1), V.size, W.size)
            psi = _flat_table(m.group(2), W.size, V.size)
        found = [cons.validate_context(R, S, V, W, phi, psi)]
    out = []
    for ctx in found:
        label = context_label(spec, ctx.phi, ctx.psi)
        out.append(cons.MoritaContext(ctx.R, ctx.S, ctx.V, ctx.W, ctx.phi, ctx.psi, label))
    return out


def _flat_table(text: str, rows: int, cols: int) -> np.ndarray:
    values = [int(x) for x in text.split(",") if x]
    if len(values) != rows * cols:
        raise cons.ContextAxiomViolation("pairing shape", (len(values),))
    return np.array(values, dtype=np.int64).reshape(rows, cols)


@dataclass(frozen=True)
class ManifestEntry:
    line: int
    spec: Union[RingSpec, ContextSpec]

    @property
    def is_context(self) -> bool:
        return isinstance(self.spec, ContextSpec)


def parse_manifest(text: str) -> list[ManifestEntry]:
    """One spec per line; ``#`` starts a comment; ``context:`` lines declare Morita contexts."""
    entries = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("context:"):
                spec: Union[RingSpec, ContextSpec] = parse_context(line[len("context:"):])
            else:
                spec = parse_spec(line)
        except SpecSyntaxError as exc:
            raise ManifestError(lineno, str(exc)) from exc
        entries.append(ManifestEntry(lineno, spec))
    return entries


def load_manifest(path: Union[str, Path]) -> list[ManifestEntry]:
    return parse_manifest(Path(path).read_text(encoding="utf-8"))


def default_manifest_path() -> Path:
    return Path(__file__).parent / "corpus" / "default.manifest"
