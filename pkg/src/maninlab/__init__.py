"""Exact verification of rank formulas for Poisson structures on D/Q, D = G x G of type A.

Modules, lowest first: ``exactlin`` (rational matrices and subspaces), ``liealg``
(sl(n+1) with its Chevalley basis), ``weyl`` (Weyl group and exact group
elements), ``double`` (g + g, gBD triples and Lagrangian subalgebras),
``poisson`` (r-matrices, projected bivectors, rank formulas), ``rankformula``
(orbit indices and the corank formula at common points) and ``checks``.
"""

__version__ = "0.1.0"
