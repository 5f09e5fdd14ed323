"""Run-wide working precision.

All arithmetic in a run shares one significand size.  At 53 bits values are
plain Python/NumPy floats; above that they are :class:`mpmath.mpf` numbers
evaluated under :func:`mpmath.workprec`.

The default can be overridden with the ``HALPHEN_PRECISION_BITS`` environment
variable.
"""

from __future__ import annotations

import contextlib
import contextvars
import os

import mpmath

DOUBLE_BITS = 53
ESCALATED_BITS = 128
ENV_VAR = "HALPHEN_PRECISION_BITS"

# below this error target double precision runs out of headroom
ESCALATION_THRESHOLD = 1e-11


def _bits_from_env() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw.strip() == "":
        return DOUBLE_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    return validate_bits(bits)


def validate_bits(bits: int) -> int:
    bits = int(bits)
    if bits < DOUBLE_BITS:
        raise ValueError(f"precision must be at least {DOUBLE_BITS} bits, got {bits}")
    return bits


_PRECISION: contextvars.ContextVar[int | None] = contextvars.ContextVar(
    "halphen_precision_bits", default=None
)


def get_precision_bits() -> int:
    """Return the working precision in bits for the current context."""
    bits = _PRECISION.get()
    if bits is None:
        return _bits_from_env()
    return bits


def set_precision_bits(bits: int) -> None:
    _PRECISION.set(validate_bits(bits))


@contextlib.contextmanager
def working_precision(bits: int):
    """Temporarily run with ``bits`` of significand."""
    token = _PRECISION.set(validate_bits(bits))
    try:
        with mpmath.workprec(get_precision_bits()):
            yield
    finally:
        _PRECISION.reset(token)


def is_extended() -> bool:
    return get_precision_bits() > DOUBLE_BITS


def bits_for_target(target_error: float) -> int:
    """Precision needed to resolve errors down to ``target_error``."""
    bits = get_precision_bits()
    if target_error < ESCALATION_THRESHOLD:
        return max(bits, ESCALATED_BITS)
    return bits


def to_scalar(x):
    """Convert ``x`` to the working scalar type."""
    if is_extended():
        with mpmath.workprec(get_precision_bits()):
            return mpmath.mpf(x)
    return float(x)


def eps() -> float:
    """Unit roundoff of the working precision, as a float."""
    return 2.0 ** (1 - get_precision_bits())
