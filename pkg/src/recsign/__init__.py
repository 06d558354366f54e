"""Sign behaviour of linear recurrence sequences with few dominating roots."""

from .oscillation import ClassifyOptions, Report, Verdict, classify
from .powersum import Recurrence, RootFormSpec, RootTerm

__version__ = "0.1.0"

__all__ = ["ClassifyOptions", "Recurrence", "Report", "RootFormSpec", "RootTerm", "Verdict", "classify"]
