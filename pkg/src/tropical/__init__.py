# Min-plus evaluation and tropical Plucker checks
