from .json import JSONSerializer

__all__ = ["JSONSerializer"]
