"""conelift: exact Groebner degeneration families for weighted-
homogeneous ideals, with finite-type cluster machinery and bundled
Grassmannian verifications.

Submodules
----------
polyring   exact sparse polynomials, weight/order initial forms
groebner   Buchberger, reduced bases, cones, toric kernels
lifting    multi-parameter lifts, fibers, flatness certificates
cluster    seeds, mutation, g-vectors, universal coefficients
gr2n       Plucker algebras of 2-row Grassmannians and triangulations
gr36       the Gr(3,6) verification suite
cli        the command-line entry point
"""

__version__ = "0.1.0"
