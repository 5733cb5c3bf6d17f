"""Exception hierarchy shared by every flatlab module."""

from __future__ import annotations


class FlatlabError(Exception):
    """Base class for all errors raised by flatlab."""


class DegreeMismatchError(FlatlabError):
    """Permutations of different degree were combined."""


class CapExceededError(FlatlabError):
    """A configured search/enumeration cap was exhausted.

    Carries ``partial`` when a partial count is known (e.g. how many
    elements had been enumerated before the order cap was hit).
    """

    def __init__(self, message: str, partial: int | None = None):
        super().__init__(message)
        self.partial = partial


class NotASubgroupError(FlatlabError):
    """The given elements do not lie in the claimed parent group."""


class NotNormalError(FlatlabError):
    """A subgroup required to be normal is not."""


class NotAbelianError(FlatlabError):
    """An operation requiring an abelian group received a non-abelian one."""


class NotSurjectiveError(FlatlabError):
    """A map required to be surjective is not."""


class InvalidHomomorphismError(FlatlabError):
    """Generator images do not extend to a homomorphism."""


class FlavorMismatchError(FlatlabError):
    """Permutation-flavor and abelian-flavor objects were mixed illegally."""


class UnsupportedFunctorError(FlatlabError):
    """The functor cannot be applied to this kind of group."""


class CatalogError(FlatlabError):
    """Unknown catalog name or out-of-range parameter."""


class UnknownCaseError(FlatlabError):
    """reproduce() was asked for a case id that is not registered."""


class RealizationError(FlatlabError):
    """A presentation could not be realized within the configured caps."""


class ScenarioError(FlatlabError):
    """Scenario text failed to parse or resolve; carries a location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", col {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
