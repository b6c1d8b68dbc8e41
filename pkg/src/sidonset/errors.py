"""Exception hierarchy.

``InputError`` subclasses describe malformed input (the CLI exits 2); every
other ``SidonError`` is a domain error (the CLI exits 1).
"""


class SidonError(ValueError):
    pass


class InputError(SidonError):
    """Unparseable or structurally invalid input."""


class DuplicateElementError(InputError):
    def __init__(self, i: int, j: int, value):
        self.indices = (i, j)
        self.value = value
        super().__init__(f"duplicate element {value} at indices {i} and {j}")


class EmptyInputError(InputError):
    pass


class InvalidBoundError(SidonError):
    pass


class InvalidPlanError(SidonError):
    pass


class DomainError(SidonError):
    pass


class NotACollisionError(SidonError):
    pass


class OrderMismatchError(SidonError):
    pass


class SamplerError(SidonError):
    pass


class BudgetError(SidonError):
    pass
