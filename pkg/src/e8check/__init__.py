"""Exact construction of the complex Lie algebra e8 over octonion coordinates.

The package builds the 248-dimensional complex Lie algebra from the
exceptional Jordan algebra and the 56-dimensional Freudenthal space, all
with exact Gaussian-rational arithmetic, and ships verification suites for:

* the order-4 symmetry sigma4 (fixed subalgebra dimension audits),
* an explicit so(10) basis inside e8 (990 commutator identities),
* the Killing form and the null-cone map R x R,
* closed-form one-parameter flows and constructive orbit reductions.

A numeric backend (double-precision complex) backs the transcendental
flows; every closed form is cross-checked against a matrix-exponential
oracle.
"""

__version__ = "0.1.0"
