"""Six-dimensional block representations of the braid group B3.

The representations are evaluated on 3-strand braid words, and the trace
gap ``Tr rho(w) - Tr rho(w')`` certifies that a braid is not conjugate to
its reverse.
"""

from .braid import (BraidWord, FlypeForm, Syllable, as_flype_form, concat,
                    conjugate, cyclic_rotate, format_word, invert, normalize,
                    parse, reverse)
from .exceptions import (BraidSepError, BraidSyntaxError, CatalogError,
                         NotARepresentationError, ParameterError,
                         SingularMatrixError)
from .representation import (BlockQuad, Rep, RepParams, builtin_lieven_rep,
                             evaluate, family_params, family_rep, lambda_rep,
                             make_block_rep, solve_C, verify_braid_relation)
from .separation import (GapResult, GapTable, KnotEntry, catalog,
                         conjugation_invariance_check, lookup,
                         reproduce_published_table, reproduce_table,
                         search_separating_params, separates, trace_gap)

__version__ = "0.1.0"
