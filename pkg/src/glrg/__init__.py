"""Large-N critical coupling of compactified O(N) models: lattice sums, bubbles, RG flow."""

__version__ = "0.1.0"
