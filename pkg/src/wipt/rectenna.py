"""RF-to-DC harvesting models.

Four families are supported:

* ``linear``      -- DC = eta * P_rf
* ``piecewise``   -- linear above a sensitivity threshold, clipped at saturation
* ``sigmoid``     -- logistic curve, offset-corrected so that DC(0) = 0
* ``diode``       -- 2nd/4th-order diode expansion, driven by a time waveform

All powers are in Watts. Waveform samples are in sqrt(W), so that the mean of
``y**2`` is the average received power.
"""
from dataclasses import dataclass, asdict

import numpy as np
from scipy.special import expit

from .errors import DomainError, UnsupportedError

VARIANTS = ("linear", "piecewise", "sigmoid", "diode")


@dataclass(frozen=True)
class RectennaModel:
    """Parameters of one harvesting transfer function.

    Only the fields relevant to ``variant`` are used; the others stay ``None``.
    Use the classmethod constructors rather than filling fields by hand.
    """

    variant: str
    eta: float = None
    p_sens: float = None
    p_sat: float = None
    a: float = None
    b: float = None
    k2: float = None
    k4: float = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise DomainError(f"unknown rectenna variant {self.variant!r}")
        required = {
            "linear": ("eta",),
            "piecewise": ("eta", "p_sens", "p_sat"),
            "sigmoid": ("p_sat", "a", "b"),
            "diode": ("k2", "k4"),
        }[self.variant]
        for name in required:
            value = getattr(self, name)
            if value is None or not np.isfinite(value):
                raise DomainError(f"{self.variant} model needs a finite {name}, got {value!r}")
        if self.variant == "diode":
            if self.k2 < 0 or self.k4 < 0:
                raise DomainError(f"diode coefficients must be >= 0, got k2={self.k2}, k4={self.k4}")
            return
        for name in required:
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.eta is not None and self.eta > 1:
            raise DomainError(f"eta must lie in (0, 1], got {self.eta}")
        if self.variant == "piecewise" and not self.p_sens < self.p_sat / self.eta:
            raise DomainError(
                f"p_sens={self.p_sens} must be below p_sat/eta={self.p_sat / self.eta}"
            )

    @classmethod
    def linear(cls, eta=1.0):
        return cls("linear", eta=eta)

    @classmethod
    def piecewise(cls, eta, p_sens, p_sat):
        return cls("piecewise", eta=eta, p_sens=p_sens, p_sat=p_sat)

    @classmethod
    def sigmoid(cls, p_sat, a, b):
        return cls("sigmoid", p_sat=p_sat, a=a, b=b)

    @classmethod
    def diode(cls, k2=1.0, k4=1.0):
        # (1, 1) are normalized placeholders, not fitted diode parameters.
        return cls("diode", k2=k2, k4=k4)

    def params(self):
        """Non-empty parameters as a plain dict (for logging and CSV headers)."""
        return {k: v for k, v in asdict(self).items() if v is not None}


def harvest_dc(model, p_rf):
    """DC output power for received RF power ``p_rf`` (scalar or array, W)."""
    p = np.asarray(p_rf, dtype=float)
    if np.any(np.isnan(p)) or np.any(p < 0):
        raise DomainError("received power must be >= 0")

    if model.variant == "linear":
        out = model.eta * p
    elif model.variant == "piecewise":
        out = np.minimum(model.eta * np.maximum(p - model.p_sens, 0.0), model.p_sat)
    elif model.variant == "sigmoid":
        psi = model.p_sat * expit(model.a * (p - model.b))
        omega = expit(-model.a * model.b)
        out = np.maximum((psi - model.p_sat * omega) / (1.0 - omega), 0.0)
    else:
        raise UnsupportedError(
            "the diode model needs a waveform; use harvest_dc_waveform instead"
        )
    return float(out) if out.ndim == 0 else out


def harvest_dc_waveform(model, samples):
    """DC output of the diode model for a sampled received signal.

    ``samples`` must span whole periods of the signal; the result is
    ``k2 * mean(y**2) + k4 * mean(y**4)``.
    """
    if model.variant != "diode":
        raise UnsupportedError(f"harvest_dc_waveform needs a diode model, got {model.variant}")
    y = np.asarray(samples, dtype=float).ravel()
    if y.size < 2:
        raise DomainError(f"need at least 2 samples, got {y.size}")
    y2 = y * y
    return float(model.k2 * y2.mean() + model.k4 * (y2 * y2).mean())
