# m-dissimilarity vectors and distance matrices
