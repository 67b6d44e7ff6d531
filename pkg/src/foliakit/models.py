"""Concrete fields and integrals on (C^3, 0) used throughout the toolkit.

``INTEGRABLE_FIELD`` restricts to the Cerveau-Mattei foliation on ``{z = 0}``
and has the holomorphic integrals ``INTEGRABLE_F``, ``INTEGRABLE_G``;
``SUZUKI_FIELD`` restricts to Suzuki's foliation and carries the transcendent
candidates ``SUZUKI_H``, ``SUZUKI_G``.
"""

from .algebra import MPoly
from .dicritical import FactoredPair
from .foliation import DarbouxFunction, VectorField

XYZ = ("x", "y", "z")
x, y, z = MPoly.gens(*XYZ)

INTEGRABLE_FIELD = VectorField([2 * x * y, x ** 3 + 2 * y ** 2, -2 * y * z])
INTEGRABLE_F = (y ** 2 - x ** 3) * z ** 2
INTEGRABLE_G = x * z
INTEGRABLE_H = (y ** 2 - x ** 3) / x ** 2

SUZUKI_FIELD = VectorField([x * (x - 2 * y ** 2 - y), y * (x - y ** 2 - y), -z * (x - y ** 2 - y)])
SUZUKI_H = DarbouxFunction(x / y, (y ** 2 + y) / x)
SUZUKI_G = DarbouxFunction(-y * z, y / x)

SADDLE_FIELD = VectorField([x, y, -z])
PLANAR_RADIAL_FIELD = VectorField([x, y, MPoly.zero(XYZ)])

# factor data of the integrable pair and of the two illustrative examples
INTEGRABLE_PAIR = FactoredPair(common=[(z, 2, 1)], only_f=[(y ** 2 - x ** 3, 1)], only_g=[(x, 1)])
SADDLE_PAIR = FactoredPair(common=[(z, 1, 1)], only_f=[(x, 1)], only_g=[(y, 1)])
RADIAL_PAIR = FactoredPair(only_f=[(x, 1), (y, 1)], only_g=[(z, 1)])
