"""
The hyperdense package finds provably maximum-density subhypergraphs of
weighted hypergraphs by iterative support-matrix optimization, and computes
their spectral and Dulmage-Mendelsohn decompositions.
"""
