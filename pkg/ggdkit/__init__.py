"""ggdkit

Distances between geometric graphs: exact geometric graph distance by
branch-and-bound, polynomial-time bounds, edit-path pricing and the
hardness-reduction instance generators.
"""

# Import all files that define metrics. This has the effect that
# `import ggdkit` will always instantiate all metric objects right away.
from ggdkit import editpath, matching, solver

__all__ = ["editpath", "matching", "solver"]

__version__ = "0.3.0.dev0"
