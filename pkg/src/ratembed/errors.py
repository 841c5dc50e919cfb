class DomainError(ValueError):
    """Input outside the domain of an operation."""


class Infeasible(Exception):
    """No rational solution exists; ``witness`` states the failing condition."""

    def __init__(self, witness: str):
        super().__init__(witness)
        self.witness = witness
