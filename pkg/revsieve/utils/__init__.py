from .formatters import Formatter
from .validators import Validator

__all__ = ["Formatter", "Validator"]
