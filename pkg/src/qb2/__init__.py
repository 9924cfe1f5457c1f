"""Exact symbolic computation in the positive part of U_q(B2) and its quotients."""

__version__ = "0.1.0"
