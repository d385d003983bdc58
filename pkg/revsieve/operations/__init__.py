__all__ = [
    "analytic",
    "arith",
    "export",
    "expsum",
    "harness",
    "squarefree",
]
