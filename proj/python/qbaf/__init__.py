"""Gradual semantics for quantitative bipolar argumentation frameworks.

Thin wrapper over the compiled extension. Frameworks travel as JSON text in
both directions; see the project README for the document format and the
semantics spec strings (e.g. "qen", "mqe:q=max", "ddrl:gamma=1,k=100").
"""

try:
    from . import _core  # installed layout: extension lives inside the package
except ImportError:  # build-tree layout: extension importable from the top level
    import _core

solve = _core.solve
analyze = _core.analyze
convergence_bound = _core.convergence_bound
check_postulates = _core.check_postulates
gen_ladder = _core.gen_ladder
gen_random_acyclic = _core.gen_random_acyclic
gen_random_cyclic = _core.gen_random_cyclic
normalize = _core.normalize

__all__ = [
    "solve",
    "analyze",
    "convergence_bound",
    "check_postulates",
    "gen_ladder",
    "gen_random_acyclic",
    "gen_random_cyclic",
    "normalize",
]

__version__ = "0.1.0"
