"""Mechanical checks for categorical and noncommutative resolutions of singularities.

Subpackages: :mod:`ncres.partitions` (weights, Littlewood-Richardson, plethysm),
:mod:`ncres.varieties` (flag varieties and bundle expressions), :mod:`ncres.bbw`
(Borel-Bott-Weil), :mod:`ncres.lefschetz` (decompositions, tilting, crepancy)
and :mod:`ncres.cli`.
"""

__version__ = "0.1.0"
