"""Character-theoretic exclusion of smooth finite group actions on spheres.

The package is organised bottom-up:

- `sphex.permutation`, `sphex.group`, `sphex.isomorphism`, `sphex.fixtures`:
  permutation groups, their classes, subgroups and quotients.
- `sphex.exactnum`: exact cyclotomic numbers.
- `sphex.chartab`: character tables, realification and fixed point dimensions.
- `sphex.lattice`: subgroup lattices up to conjugacy.
- `sphex.oliver`: the Oliver property with witness chains.
- `sphex.exclusion` and `sphex.verify`: the rule engine and its checker.
"""

__version__ = "0.3.0"
