"""Signatures of strata of k-differentials and their canonical covers."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import EmptySignature, NonIntegralGenus, NotPrimitive, SumMismatch


@dataclass(frozen=True)
class Signature:
    """Type ``(k, g, mu)`` of a k-differential with labeled points.

    ``mu[i]`` is the order at the i-th marked point.  Orders ``> -k`` have
    finite flat area on the canonical cover.
    """

    k: int
    g: int
    mu: tuple[int, ...]
    finite_area: bool = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(int(m) for m in self.mu))
        object.__setattr__(self, "finite_area", all(m > -self.k for m in self.mu))

    @property
    def n(self) -> int:
        return len(self.mu)

    def to_json(self) -> dict:
        return {"k": self.k, "g": self.g, "mu": list(self.mu)}

    @classmethod
    def from_json(cls, data) -> "Signature":
        return validate_signature(data["k"], data["g"], data["mu"])


@dataclass(frozen=True)
class CoverSignature:
    mu_hat: tuple[int, ...]
    g_hat: int
    n_hat: int
    fiber_sizes: tuple[int, ...]

    def to_json(self) -> dict:
        return {"mu_hat": list(self.mu_hat), "g_hat": self.g_hat,
                "n_hat": self.n_hat, "fiber_sizes": list(self.fiber_sizes)}


def validate_signature(k, g, mu) -> Signature:
    k, g = int(k), int(g)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if g < 0:
        raise ValueError(f"genus must be non-negative, got {g}")
    mu = tuple(int(m) for m in mu)
    if not mu:
        raise EmptySignature("signature has no marked points")
    if sum(mu) != k * (2 * g - 2):
        raise SumMismatch(f"sum of orders {sum(mu)} != k(2g-2) = {k * (2 * g - 2)}",
                          k=k, g=g, mu=list(mu))
    return Signature(k, g, mu)


def lifted_order(k: int, m: int) -> tuple[int, int]:
    """Return ``(fiber size, order on the cover)`` above a point of order m."""
    f = gcd(k, m)
    return f, (k + m) // f - 1


def cover_signature(sig: Signature) -> CoverSignature:
    """Signature of the (assumed connected) canonical k-cover."""
    mu_hat, fibers = [], []
    for m in sig.mu:
        f, mh = lifted_order(sig.k, m)
        fibers.append(f)
        mu_hat.extend([mh] * f)
    total = sum(mu_hat)
    if total % 2:
        raise NonIntegralGenus(
            f"sum of cover orders {total} is odd; the cover is disconnected",
            k=sig.k, mu=list(sig.mu))
    return CoverSignature(tuple(mu_hat), total // 2 + 1, sum(fibers), tuple(fibers))


def riemann_hurwitz_genus(sig: Signature) -> int:
    """Genus of a connected cyclic k-cover from branch data alone."""
    twice = sig.k * (2 * sig.g - 2) + sum(sig.k - gcd(sig.k, m) for m in sig.mu)
    return twice // 2 + 1


def power_divisors(sig: Signature) -> list[int]:
    """All d dividing k and every order (necessary for q to be a d-th power)."""
    return [d for d in range(1, sig.k + 1)
            if sig.k % d == 0 and all(m % d == 0 for m in sig.mu)]


def reduce_signature(sig: Signature, d: int) -> Signature:
    """The (k/d)-signature of a d-th root, for d in ``power_divisors(sig)``."""
    if d not in power_divisors(sig):
        raise ValueError(f"{d} is not a power divisor of {sig}")
    return Signature(sig.k // d, sig.g, tuple(m // d for m in sig.mu))


def point_roles(sig: Signature) -> list[str]:
    # poles of order <= -k become punctures of the cover
    return ["puncture" if m <= -sig.k else "relative" for m in sig.mu]


def stratum_dimension(sig: Signature, require_primitive: bool = False) -> int:
    """Dimension of the locus of primitive k-differentials of type ``sig``.

    Computed with the eigenspace recipe on the one-vertex graph.  For k >= 2
    this is ``2g - 2 + n``; for holomorphic abelian differentials it is
    ``2g - 1 + n``.  With ``require_primitive`` a signature whose orders all
    share a factor with k is rejected.
    """
    if require_primitive and sig.k > 1 and power_divisors(sig) != [1]:
        raise NotPrimitive(f"{sig} is divisible by {power_divisors(sig)[1:]}")
    from .residues import LevelComponentData, eigenspace_dim

    data = LevelComponentData(sig.g, tuple(zip(sig.mu, point_roles(sig))), sig.k)
    return eigenspace_dim(data)
