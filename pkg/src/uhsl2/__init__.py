"""Exact computer algebra for the Jordanian deformation of sl(2).

Everything is computed over exact scalars: rationals, rational combinations
of square roots of integers, and polynomials in the deformation parameter h
truncated at a chosen order.  No floating point anywhere.
"""

__version__ = "0.1.0"
