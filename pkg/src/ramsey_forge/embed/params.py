"""Pipeline parameters and the interval-count choice."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from ..errors import InfeasibleError


@dataclass
class PipelineParams:
    """Knobs of the three-color pipeline.

    ``None`` means "derive": ``xi`` defaults to ``gamma/304``, ``delta`` to
    ``gamma/4``, ``beta`` and ``Delta`` are measured on ``H``, and ``k`` is
    the cluster count of the host partition.
    """

    gamma: float = 1.0
    Delta: Optional[int] = None
    beta: Optional[float] = None
    xi: Optional[float] = None
    eps: float = 0.15
    d: float = 1 / 3
    #: density fed to the embedding stage; reported alongside ``d``
    d_embed: float = 1 / 4
    k: Optional[int] = None
    delta: Optional[float] = None
    seed: int = 0
    trials: int = 2_000
    restarts: int = 20
    backtrack: int = 50
    lhat_max: int = 256

    def __post_init__(self):
        for name in ("gamma", "eps", "d", "d_embed"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("beta", "xi", "delta"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def xi_value(self) -> float:
        return self.xi if self.xi is not None else self.gamma / 304

    @property
    def delta_value(self) -> float:
        return self.delta if self.delta is not None else self.gamma / 4

    def ledger_beta(self, Delta: int, k: int) -> float:
        """Bandwidth ratio the asymptotic argument asks for."""
        xi = self.xi_value
        return self.eps * xi * (1 + 2 * xi) / (36 * Delta**2 * k**2)

    def to_dict(self):
        return asdict(self)


def choose_lhat(n: int, k: int, ell: int, xi) -> tuple[int, int]:
    """Smallest interval count ``lhat`` with ``ell | lhat``, ``lhat | n + pad``
    and ``lhat >= ceil(7k/xi) + ell``, over the smallest padding ``pad``."""
    if n < 1 or ell < 1 or k < 1 or xi <= 0:
        raise ValueError("need n, k, ell >= 1 and xi > 0")
    bound = math.ceil(Fraction(7 * k) / Fraction(xi).limit_denominator(10**9)) + ell
    for pad in range(n + 1):
        total = n + pad
        if bound > total:
            continue
        start = -(-bound // ell) * ell
        for lhat in range(start, total + 1, ell):
            if total % lhat == 0:
                return lhat, pad
    raise InfeasibleError(f"no lhat >= {bound} divides n + padding for padding <= {n}")


def fallback_lhat(n: int, ell: int, min_interval: int, lhat_max: int) -> tuple[int, int]:
    """Largest ``lhat <= lhat_max`` (multiple of ``ell``) dividing ``n + pad``
    with intervals of at least ``min_interval`` vertices, smallest pad first."""
    min_interval = max(1, min_interval)
    for pad in range(n + 1):
        total = n + pad
        top = min(lhat_max, total // min_interval)
        top -= top % ell
        for lhat in range(top, 0, -ell):
            if total % lhat == 0:
                return lhat, pad
    raise InfeasibleError(f"intervals of {min_interval} vertices cannot host {ell} blocks")


def effective_xi(lhat: int, ell: int, k: int) -> float:
    """The ``xi`` for which ``lhat`` meets ``lhat >= 7k/xi + ell`` with equality."""
    return math.inf if lhat <= ell else 7 * k / (lhat - ell)
