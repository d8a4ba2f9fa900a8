"""Package version, kept apart so every module can import it."""

__version__ = "0.1.0"

__all__ = ['__version__']
