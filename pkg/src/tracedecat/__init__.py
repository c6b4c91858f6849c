"""Exact computations for the trace of the nilHecke algebra and of categorified sl_n."""

__version__ = "0.1.0"
