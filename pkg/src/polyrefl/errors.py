"""Exception hierarchy shared by every stage of the pipeline."""


class ReflError(Exception):
    """Base class for all errors raised by polyrefl."""


# registry / carriers

class DuplicateName(ReflError):
    pass


class KindSemanticsMismatch(ReflError):
    pass


class NoInstance(ReflError):
    pass


class StructureLawViolation(ReflError):
    pass


class KindMismatch(ReflError):
    pass


class DomainMismatch(ReflError):
    pass


class RegistryFrozen(ReflError):
    pass


class UnknownCarrier(ReflError):
    pass


class UnknownHom(ReflError):
    pass


class OpaqueCarrier(ReflError):
    """Raised when a value is requested from a carrier or hom without executable semantics."""


# syntax

class GoalSyntaxError(ReflError):
    """A goal or theory text failed to parse.

    ``position`` is a 0-based character offset and ``expected`` the set of
    token descriptions that would have been accepted there.
    """

    def __init__(self, position, expected, found=None, line=None):
        self.position = position
        self.expected = frozenset(expected)
        self.found = found
        self.line = line
        where = f"line {line}, position {position}" if line is not None else f"position {position}"
        exp = ", ".join(sorted(self.expected)) or "nothing"
        got = f", found {found!r}" if found is not None else ""
        super().__init__(f"SyntaxError at {where}: expected {exp}{got}")


class ElaborationError(ReflError):
    """A parsed goal is ill-typed (carrier mismatch, misplaced operator)."""


class IndexOutOfRange(ReflError):
    pass


class BenchSpecError(ReflError):
    pass
