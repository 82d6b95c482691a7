"""Exception hierarchy shared by every finring module."""

from __future__ import annotations


class FinRingError(Exception):
    """Base class for all user-facing errors raised by finring."""


class AxiomViolation(FinRingError):
    """A table fails one of the ring axioms.

    ``witness`` is the first failing tuple of carrier indices found by the
    deterministic scan, in the variable order of the axiom's formula.
    """

    def __init__(self, axiom: str, witness: tuple[int, ...]):
        self.axiom = axiom
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"{axiom} fails at {self.witness}")


class BimoduleAxiomViolation(AxiomViolation):
    pass


class ContextAxiomViolation(AxiomViolation):
    pass


class InternalInconsistency(FinRingError):
    """Two computations that must agree did not (an implementation bug)."""


class DegenerateRing(FinRingError):
    """A ring predicate was asked about the zero ring."""


class NotAnIdeal(FinRingError):
    pass


class NotIdempotent(FinRingError):
    pass


class RoleViolation(FinRingError):
    """An ElementSet does not have the role it claims."""


class CapExceeded(FinRingError):
    def __init__(self, node: str, size: int, cap: int):
        self.node, self.size, self.cap = node, size, cap
        super().__init__(f"{node}: size {size} exceeds cap {cap}")


class NotPrime(FinRingError):
    pass


class NotCommutative(FinRingError):
    pass


class NotMonic(FinRingError):
    pass


class NotAGroup(FinRingError):
    pass


class SpecSyntaxError(FinRingError):
    """Parse failure in the ring-spec DSL, positioned at ``line``:``col`` (1-based)."""

    def __init__(self, line: int, col: int, expected: str, text: str = ""):
        self.line, self.col, self.expected = line, col, expected
        super().__init__(f"{line}:{col}: expected {expected}" + (f" in {text!r}" if text else ""))


class TableFormatError(FinRingError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class ManifestError(FinRingError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"manifest line {line}: {message}")


class ElaborationError(FinRingError):
    """A construction failed while elaborating a spec; ``path`` names the failing node."""

    def __init__(self, path: str, cause: Exception):
        self.path, self.cause = path, cause
        super().__init__(f"at {path}: {type(cause).__name__}: {cause}")
