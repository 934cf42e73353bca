"""xdt: extensible data type declarations, their encodings, and a demo pipeline."""

__version__ = "0.1.0"
