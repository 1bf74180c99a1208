"""Exact Lojasiewicz gradient exponent bounds for polynomial germs.

Every rational in a result is returned as :class:`fractions.Fraction`.
Polynomials are passed as text, e.g. ``"z1^5*z2^2 + z1^6*z3"``, or in the JSON term form.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from . import _core
from ._core import (
    GuardError,
    HypothesisError,
    LojaError,
    ParseError,
    PreconditionError,
    TruncationError,
)

__version__ = _core.__version__

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
# Keys whose string values are exact rationals.
_RATIONAL_KEYS = {
    "bound", "theta_tilde", "L", "value", "ord_f", "ord_grad", "theta", "truncation", "d",
    "theta_prime", "ord_partials", "normalized",
}


def _decode(obj: Any, key: Optional[str] = None) -> Any:
    if isinstance(obj, dict):
        return {k: _decode(v, k) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v, key) for v in obj]
    if isinstance(obj, str) and key in _RATIONAL_KEYS and _RATIONAL.match(obj):
        return Fraction(obj)
    return obj


def _load(text: str) -> Any:
    return _decode(json.loads(text))


def _curve_text(curve: Any) -> str:
    return curve if isinstance(curve, str) else json.dumps(curve)


def normalize_polynomial(text: str) -> str:
    return _core.normalize_polynomial(text)


def analyze(text: str, *, assume_nondegenerate: bool = False, assume_inv_tame: bool = False,
            curve: Any = None) -> dict:
    """Full report; the raw JSON (with content hash) is in ``raw``."""
    raw = _core.analyze(text, assume_nondegenerate, assume_inv_tame,
                        None if curve is None else _curve_text(curve))
    report = _load(raw)
    report["raw"] = raw
    return report


def bound_general(text: str, **flags: bool) -> dict:
    return _load(_core.bound_general(text, **flags))


def refine_bound(text: str, **flags: bool) -> dict:
    return _load(_core.refine_bound(text, **flags))


def bound_convenient(text: str, **flags: bool) -> dict:
    return _load(_core.bound_convenient(text, **flags))


def bound_product(members: Sequence[str], multiplicities: Optional[Sequence[int]] = None, *,
                  assume_nondegenerate: bool = False) -> dict:
    mults = list(multiplicities) if multiplicities is not None else [1] * len(members)
    return _load(_core.bound_product(list(members), mults, assume_nondegenerate))


def exceptional_monomials(text: str) -> list:
    return json.loads(_core.exceptional_monomials(text))


def probe(text: str, curve: Any, *, truncation: Optional[str] = None, tolerance: float = 1e-9) -> dict:
    return _load(_core.probe(text, _curve_text(curve), None if truncation is None else str(truncation), tolerance))


def lift_subspace_curve(text: str, curve: Any, indices: Iterable[int], N: Optional[int] = None) -> dict:
    """Indices are 1-based."""
    return json.loads(_core.lift_subspace_curve(text, _curve_text(curve), list(indices), N))


def sweep(text: str, budget: int, samples: int, seed: int = 20240601) -> dict:
    return _load(_core.sweep(text, budget, samples, seed))


def milnor_number(text: str) -> int:
    return int(_core.milnor_number(text))


def power_exponent(theta0: Fraction | str, m: int) -> Fraction:
    return Fraction(_core.power_exponent(str(theta0), m))


def eta_to_theta(eta: Fraction | str) -> Fraction:
    return Fraction(_core.eta_to_theta(str(eta)))


def theta_to_eta(theta: Fraction | str) -> Fraction:
    return Fraction(_core.theta_to_eta(str(theta)))


def diagram_svg(text: str) -> str:
    return _core.diagram_svg(text)


def diagram_json(text: str) -> dict:
    return _load(_core.diagram_json(text))


__all__ = [
    "GuardError", "HypothesisError", "LojaError", "ParseError", "PreconditionError", "TruncationError",
    "analyze", "bound_convenient", "bound_general", "bound_product", "diagram_json", "diagram_svg",
    "eta_to_theta", "exceptional_monomials", "lift_subspace_curve", "milnor_number", "normalize_polynomial",
    "power_exponent", "probe", "refine_bound", "sweep", "theta_to_eta",
]
