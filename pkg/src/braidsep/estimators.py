"""scikit-learn style wrappers.

``BlockRepresentation`` turns braid words into trace features, and
``ReversalSeparator`` predicts whether each word is separated from its
reverse.  Both take the family parameters as constructor arguments, so
``get_params``/``set_params``/``clone`` and grid search work as usual.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import matrix as mx
from .braid import BraidWord, as_word, reverse
from .representation import RepParams, evaluate, family_rep
from .separation import DEFAULT_REL_TOL


def check_words(X) -> list[BraidWord]:
    """Validate a sequence of braid words (text, syllable lists or BraidWord)."""
    if isinstance(X, (str, BraidWord)):
        raise ValueError(
            "expected a sequence of braid words, got a single word; wrap it in a list")
    try:
        words = [as_word(x) for x in X]
    except TypeError as exc:
        raise ValueError(f"cannot interpret input as braid words: {exc}") from exc
    if not words:
        raise ValueError("found an empty sequence of braid words")
    return words


class BlockRepresentation(TransformerMixin, BaseEstimator):
    """Six-dimensional block representation as a feature map.

    Parameters
    ----------
    condition : int, default=3
        Which of the five parameter conditions to use.
    branch : {1, -1}, default=-1
        Sign choice within the condition.
    a, f : complex
        Free parameters; ``f`` is ignored for conditions 2, 4 and 5.

    Attributes
    ----------
    params_ : RepParams
    rep_ : Rep
    """

    def __init__(self, condition=3, branch=-1, a=2 - 3j, f=7.3):
        self.condition = condition
        self.branch = branch
        self.a = a
        self.f = f

    def fit(self, X=None, y=None):
        self.params_ = RepParams(self.condition, self.branch, self.a, self.f)
        self.rep_ = family_rep(self.params_)
        return self

    def traces(self, X) -> np.ndarray:
        check_is_fitted(self, "rep_")
        return np.array([mx.trace(evaluate(self.rep_, w)) for w in check_words(X)])

    def transform(self, X) -> np.ndarray:
        """Real features ``[Re Tr rho(w), Im Tr rho(w)]``, one row per word."""
        t = self.traces(X)
        return np.column_stack([t.real, t.imag])


class ReversalSeparator(BlockRepresentation):
    """Predicts True where the trace certifies ``w`` is not conjugate to its reverse."""

    def __init__(self, condition=3, branch=-1, a=2 - 3j, f=7.3, rel_tol=DEFAULT_REL_TOL):
        super().__init__(condition=condition, branch=branch, a=a, f=f)
        self.rel_tol = rel_tol

    def fit(self, X=None, y=None):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        return super().fit(X, y)

    def decision_function(self, X) -> np.ndarray:
        """Complex trace gaps ``Tr rho(w) - Tr rho(w')``."""
        words = check_words(X)
        check_is_fitted(self, "rep_")
        return np.array([mx.trace(evaluate(self.rep_, w))
                         - mx.trace(evaluate(self.rep_, reverse(w))) for w in words])

    def predict(self, X) -> np.ndarray:
        words = check_words(X)
        check_is_fitted(self, "rep_")
        out = []
        for w in words:
            t = mx.trace(evaluate(self.rep_, w))
            t_rev = mx.trace(evaluate(self.rep_, reverse(w)))
            out.append(abs(t - t_rev) > self.rel_tol * max(abs(t), abs(t_rev), 1.0))
        return np.array(out, dtype=bool)
