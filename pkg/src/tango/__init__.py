"""Computations with Tango's rank-2 bundle on P^5 in characteristic 2.

Subpackages and modules:

* ``ring``, ``gf2``, ``engine``, ``gb`` -- graded rings over GF(2) and Groebner bases
* ``hilbert``, ``module`` -- graded modules, resolutions, Ext, pushforwards
* ``sheafcoh`` -- sheaf cohomology tables via local duality
* ``chow``, ``bbw`` -- Chern classes, Riemann-Roch, Borel-Bott-Weil for G2
* ``beilinson`` -- cotangent bundles on P^5 and monads
* ``cli`` -- fixtures, the verification suite and the ``tango`` command
"""

__version__ = "0.1.0"
