# Tropical Dissimilarity Checker - exact dissimilarity vectors and tropical Pluecker checks
__version__ = "0.1.0"
