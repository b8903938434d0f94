"""Upper-tail large deviations for subcomplex counts in multi-parameter random simplicial complexes."""

__version__ = "1.0.0"
