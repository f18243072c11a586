"""
Comparing rectenna models
=========================

A harvester turns received RF power into DC power. Here we compare three
memoryless models on the same input sweep, then look at the diode polynomial
model, which depends on the waveform rather than just its average power.
"""

import numpy as np

from wipt import RectennaModel, harvest_dc, harvest_dc_waveform

p_rf = np.linspace(0.0, 2.0, 9)

# The three power-in, power-out models
linear = RectennaModel.linear(eta=0.5)
piecewise = RectennaModel.piecewise(eta=0.5, p_sens=0.2, p_sat=1.0)
sigmoid = RectennaModel.sigmoid(p_sat=1.0, a=6.0, b=0.5)

print("P_rf   linear  piecewise  sigmoid")
for p, a, b, c in zip(p_rf, harvest_dc(linear, p_rf), harvest_dc(piecewise, p_rf),
                      harvest_dc(sigmoid, p_rf)):
    print(f"{p:4.2f}  {a:7.4f}  {b:9.4f}  {c:7.4f}")

# The diode model needs samples. Two signals with the same mean power
# harvest differently because the quartic term rewards peaky waveforms.
t = np.linspace(0.0, 1.0, 512, endpoint=False)
flat = np.sqrt(2.0) * np.cos(2 * np.pi * 4 * t)
peaky = np.cos(2 * np.pi * 4 * t) + np.cos(2 * np.pi * 5 * t)
diode = RectennaModel.diode()
print("\nmean power flat, peaky:", np.mean(flat**2), np.mean(peaky**2))
print("diode output flat, peaky:", harvest_dc_waveform(diode, flat),
      harvest_dc_waveform(diode, peaky))
