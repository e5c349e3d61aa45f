from dataclasses import dataclass

from .errors import BadParameter


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances, all relative.

    ``eps_sign`` decides when a projection or velocity counts as zero,
    ``eps_rank`` is the singular-value cutoff relative to the largest one,
    ``eps_convex`` is the convexity margin relative to the polytope diameter.
    With ``exact=True`` coordinates are held as :class:`fractions.Fraction`
    and every sign test is exact, so the tolerances are ignored.
    """

    eps_sign: float = 1e-9
    eps_rank: float = 1e-8
    eps_convex: float = 1e-10
    exact: bool = False

    def __post_init__(self):
        for name in ("eps_sign", "eps_rank", "eps_convex"):
            value = getattr(self, name)
            if not value > 0:
                raise BadParameter(f"{name} must be positive, got {value!r}")

    @property
    def mode(self):
        return "exact-rational" if self.exact else "floating"


DEFAULT = ToleranceConfig()
EXACT = ToleranceConfig(exact=True)
