"""Exact calculator for chart-level log geometry.

Submodules:

- ``zlattice``: integer matrices, Smith/Hermite forms, f.g. abelian groups
- ``cones``: exact rational polyhedral cones (double description)
- ``monoid``: presentations, affine monoids, saturation, Hilbert bases
- ``morphism``: monoid homs, chart criteria, pushouts, Kummer structure
- ``covers``: finite covers of log points and the fiber-functor side
- ``cohomology``: prime-field complexes, group/Cech/Koszul cohomology
- ``cli``: the ``logchart`` command
"""

__version__ = "0.1.0"
