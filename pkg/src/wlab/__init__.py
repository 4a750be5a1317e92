"""Executable representations, realizers and Weihrauch reductions for function spaces."""
