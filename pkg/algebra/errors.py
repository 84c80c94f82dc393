from __future__ import annotations

from typing import Tuple


class IpoError(Exception):
    """ipotool の例外の基底。"""


class StructureError(IpoError, ValueError):
    """表の形・添字範囲が不正（どのセルかをメッセージに含める）。"""


class NotLocallyIntegral(IpoError):
    def __init__(self, condition: str, witness: Tuple[int, ...]) -> None:
        super().__init__(f"not locally integral: condition {condition} fails at {witness}")
        self.condition = condition
        self.witness = witness


class IncompatibleFamily(IpoError):
    """φ_pp が恒等でない、または φ_qr∘φ_pq ≠ φ_pr。"""


class SubreductConditionFails(IpoError):
    def __init__(self, witness: Tuple[int, ...]) -> None:
        super().__init__(f"0_p <= 1_q fails for (p, q) = {witness}")
        self.witness = witness


class TrivialComponentError(IpoError):
    pass


class MorphismError(IpoError):
    pass


class PreconditionError(IpoError):
    pass


class NotIdempotentLocIntegral(PreconditionError):
    pass


class DualSystemError(IpoError):
    pass


class BudgetExceeded(IpoError):
    def __init__(self, algebra_class: str, size: int, budget: int) -> None:
        super().__init__(
            f"refusing to enumerate {algebra_class} at n={size}: budget is n<={budget}"
        )
        self.algebra_class = algebra_class
        self.size = size
        self.budget = budget


class DocumentError(IpoError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        if line is not None:
            message = f"line {line} column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class ExportError(IpoError):
    pass
