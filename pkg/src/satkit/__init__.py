"""satkit: a self-contained SAT toolkit.

A Boolean expression layer with Tseitin CNF conversion, an embedded CDCL
solver, cardinality encodings, and encoders for n-queens, zebra puzzles,
Sudoku, maximum clique, Graeco-Latin squares, and the 15-puzzle, exposed
through a CLI, DIMACS files, and a small HTTP service.
"""

__version__ = "0.1.0"
