"""Toolkit for whitening, cover censuses, cores and first-moment rate
functions on sparse random graphs.

The package has three layers:

* combinatorial: multigraphs, proper colorings, the whitening fixed
  point, cover axioms and censuses, core decompositions
  (``graphs``, ``colorings``, ``whitening``, ``covers``, ``core``);
* analytic: Chernoff/balls-in-bins helpers and the exact and
  asymptotic first-moment rate functions for colorings and covers
  (``moments``);
* delivery: a FastAPI service plus a thin CLI client emitting
  deterministic, schema-validated JSON reports
  (``service``, ``client``, ``cli``, ``reports``).
"""

from coverlab.errors import BracketError, DomainError, ResourceBudgetError

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "DomainError",
    "ResourceBudgetError",
    "__version__",
]
