"""p-adic L-functions of Q and real quadratic fields via Shintani cones."""

__version__ = "0.1.0"
