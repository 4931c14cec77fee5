# Valuation check of the determinant built from an ultrametric tree
