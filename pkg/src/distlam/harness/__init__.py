"""Randomised and exhaustive checking of the calculus' metatheory."""
from .report import Counterexample, GenConfig, SuiteReport

__all__ = ["Counterexample", "GenConfig", "SuiteReport"]
