"""Exceptions for the kctapes diagram engine."""


class KCTapesException(Exception):
    """Base exception for all kctapes errors."""


class KCTapesTypeError(KCTapesException):
    """Exception raised when a term, relation or program is ill-typed."""


class CompositionMismatch(KCTapesTypeError):
    """Exception raised when the codomain of a term differs from the next domain."""


class TraceShapeMismatch(KCTapesTypeError):
    """Exception raised when a traced arrow is not of shape ``U ⊕ P → U ⊕ Q``."""


class TypeMismatch(KCTapesTypeError):
    """Exception raised when operands of a derived operation have incompatible types."""


class UnknownSymbol(KCTapesTypeError):
    """Exception raised for generators or program symbols missing from a signature."""


class SignatureError(KCTapesException):
    """Exception raised for signatures that mention undeclared sorts."""


class CarrierMismatch(KCTapesTypeError):
    """Exception raised when relations live on incompatible carriers."""


class NotEndo(KCTapesTypeError):
    """Exception raised when an endo-relation is required but not given."""


class ShapeMismatch(KCTapesTypeError):
    """Exception raised for matrices of incompatible shapes."""


class NotSquare(ShapeMismatch):
    """Exception raised when a square matrix is required."""


class UnboundVariable(KCTapesTypeError):
    """Exception raised for program variables missing from the typing context."""


class ArityMismatch(KCTapesTypeError):
    """Exception raised when a symbol is applied to the wrong number of arguments."""


class SortMismatch(KCTapesTypeError):
    """Exception raised when an expression has a different sort than expected."""


class NotCoreflexive(KCTapesException):
    """Exception raised when a relation expected to be below the identity is not."""


class NotAModel(KCTapesException):
    """Exception raised for interpretations violating the function/complement axioms."""


class SchemaMismatch(KCTapesException):
    """Exception raised when a Hoare rule instance does not match the rule schema."""


class ParseError(KCTapesException):
    """Exception raised by every textual parser, carrying the failing position."""

    def __init__(self, message: str, position: int):
        """Store the message and the zero-based character offset."""
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
