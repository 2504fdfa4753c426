"""Obstructions and classifications for smooth embeddings in the 4-sphere.

The package decides whether a connected sum of lens spaces, a Seifert
fibred 3-manifold, or the double branched cover of a 3/4-strand pretzel
link embeds smoothly in S^4, reporting certificates for every verdict.
"""

from .classify import (
    Verdict,
    decide_lens_sum,
    decide_pretzel,
    decide_seifert,
    full_report,
)
from .lattice import LatticeSubset, enumerate_subsets, verify_factorization
from .manifolds import (
    LensSum,
    PretzelCover,
    SeifertManifold,
    euler_invariant,
    eval_continued_fraction,
    first_homology,
    neg_continued_fraction,
    normalize_seifert,
)
from .obstructions import (
    char_vector_criterion,
    double_subset_obstruction,
    nonorientable_obstruction,
    semidefinite_obstruction,
)
from .plumbing import PlumbingTree, definiteness, plumbing_tree
from .spin import furuta_check, mu_bar, spin_profile, wu_sets

__all__ = [
    "LatticeSubset",
    "LensSum",
    "PlumbingTree",
    "PretzelCover",
    "SeifertManifold",
    "Verdict",
    "char_vector_criterion",
    "decide_lens_sum",
    "decide_pretzel",
    "decide_seifert",
    "definiteness",
    "double_subset_obstruction",
    "enumerate_subsets",
    "euler_invariant",
    "eval_continued_fraction",
    "first_homology",
    "full_report",
    "furuta_check",
    "mu_bar",
    "neg_continued_fraction",
    "nonorientable_obstruction",
    "normalize_seifert",
    "plumbing_tree",
    "semidefinite_obstruction",
    "spin_profile",
    "verify_factorization",
    "wu_sets",
]

__version__ = "0.1.0"
