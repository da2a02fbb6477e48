"""Evaluation-kernel backend selection.

The hot inner-loop kernels exist twice: a Cython extension (``_core``) and a
pure-numpy fallback (``_fallback``).  The compiled module is preferred when
it imported cleanly; set ``ZETALAB_BACKEND=fallback`` in the environment to
force the pure-Python path (useful for debugging and for benchmarking one
against the other).
"""

from __future__ import annotations

import os

from . import _fallback

_requested = os.environ.get("ZETALAB_BACKEND", "").strip().lower()

if _requested == "fallback":
    _impl = _fallback
elif _requested in ("", "auto", "core", "compiled"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        if _requested in ("core", "compiled"):
            raise
        _impl = _fallback
else:
    raise ValueError(
        f"unrecognized ZETALAB_BACKEND={_requested!r}; use 'core' or 'fallback'"
    )

BACKEND_NAME: str = _impl.BACKEND_NAME

ENV_FERMI = _fallback.ENV_FERMI
ENV_EXPONENTIAL = _fallback.ENV_EXPONENTIAL
ENV_GAUSSIAN = _fallback.ENV_GAUSSIAN

eta_terms = _impl.eta_terms
envelope_values = _impl.envelope_values
complex_envelope_values = _impl.complex_envelope_values
wave_integrand = _impl.wave_integrand
rotated_wave_integrand = _impl.rotated_wave_integrand
rotated_fermi_integrand = _impl.rotated_fermi_integrand
lerch_integrand = _impl.lerch_integrand
lerch_terms = _impl.lerch_terms
scale_factor_integrand = _impl.scale_factor_integrand
interval_integrand = _impl.interval_integrand


def backend_name() -> str:
    """Name of the kernel implementation that was selected at import."""
    return BACKEND_NAME
