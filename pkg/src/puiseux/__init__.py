# Exact Puiseux polynomials, matrices and column reductions
