# Tree model, Newick I/O and ultrametric tree utilities
