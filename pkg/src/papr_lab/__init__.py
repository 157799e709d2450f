"""FBMC-OQAM simulation lab: block coding, mu-law companding, PAPR/BER experiments."""

__version__ = "0.1.0"
