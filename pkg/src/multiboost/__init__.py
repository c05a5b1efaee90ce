"""
multiboost: AdaBoost through its equivalent formulations.

Discrete, multiclass, real, gradient-descent, entropy-projection, mirror-descent
and product-of-experts boosters share one set of domain types so their traces
can be compared round by round. Dynamics and analysis layers consume those traces.
"""

__version__ = "0.1.0"
