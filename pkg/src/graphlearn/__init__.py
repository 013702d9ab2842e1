"""Learning infinite graphs from finitely many edge queries.

Graphs on the naturals are edge oracles (:mod:`graphlearn.graph_oracle`);
hypothesis classes are copies moved by permutations of bounded support
(:mod:`graphlearn.classes`).  The remaining modules search for combinatorial
witnesses, run the online learning game, classify graphs and build the
staged reductions.
"""

from .classes import Budget, BudgetExceeded, WindowedClass, class_size, enumerate_permutations, realize_configuration
from .graph_oracle import (
    Anticlique,
    AutoTrivial,
    Clique,
    CliqueUnion,
    Complement,
    FinitePlusIsolatedTail,
    FiniteSupportPermutation,
    GraphSpec,
    Oplus,
    Permuted,
    PresentedCopy,
    Rado,
    RGraph,
    SizeRule,
    m_core,
    n_core,
)

__version__ = "0.1.0"

__all__ = [
    "Anticlique",
    "AutoTrivial",
    "Budget",
    "BudgetExceeded",
    "Clique",
    "CliqueUnion",
    "Complement",
    "FinitePlusIsolatedTail",
    "FiniteSupportPermutation",
    "GraphSpec",
    "Oplus",
    "Permuted",
    "PresentedCopy",
    "RGraph",
    "Rado",
    "SizeRule",
    "WindowedClass",
    "class_size",
    "enumerate_permutations",
    "m_core",
    "n_core",
    "realize_configuration",
]
