__all__ = [
    "blocked",
    "config",
    "digits",
    "engine",
    "errors",
    "primes",
    "registry",
    "tables",
    "window",
]
