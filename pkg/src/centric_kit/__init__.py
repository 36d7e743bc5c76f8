"""centric-kit: cluster-preserving transformations for k-means.

Centric set transforms (Gamma* and Gamma++), the angular Gamma transform,
Lloyd's algorithm, an exhaustive k-means oracle and the analysis and
experiment tooling built on them.
"""

__version__ = "1.0.0"
