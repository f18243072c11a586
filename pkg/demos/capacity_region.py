"""
Rate versus delivered energy for a discrete alphabet
====================================================

With on-off signalling the transmitter must send the "on" symbol often
enough to deliver energy b on average. This caps the entropy of the source.
For larger alphabets the best input under an energy floor is a Gibbs law.
"""

import numpy as np

from wipt import EnergyAlphabet, binary_capacity, max_entropy_capacity, region_boundary

# On-off keying: full rate until b = 1/2, then the constraint binds
for b in (0.0, 0.3, 0.5, 0.7, 0.9, 1.0):
    print(f"b={b:.1f}  C={binary_capacity(b).capacity:.4f} bits")

# Four energy levels
alphabet = EnergyAlphabet((0.0, 0.5, 1.0, 2.0))
pt = max_entropy_capacity(alphabet, 1.5)
print("\nK=4, b=1.5: C =", round(pt.capacity, 4), "p =", np.round(pt.distribution, 4))

curve = region_boundary(alphabet, np.linspace(0.0, 2.0, 9))
for r, e in curve.points():
    print(f"  energy {e:.2f}  rate {r:.4f}")
