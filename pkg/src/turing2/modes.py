"""Neumann cosine modes on (0, ell*pi) and their overlap integrals.

All closed forms follow from product-to-sum identities: a product of cosines
with integer wave numbers integrates to ell*pi times the fraction of sign
combinations whose wave numbers cancel, and zero otherwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np


def norm(n: int, ell: float) -> float:
    L = ell * math.pi
    return 1 / math.sqrt(L) if n == 0 else math.sqrt(2 / L)


def gamma(n: int, x, ell: float):
    """Normalized cosine mode."""
    return norm(n, ell) * np.cos(n * np.asarray(x) / ell)


def gamma_tilde(n: int, x, ell: float):
    """Sine companion sqrt(2/(ell pi)) sin(n x/ell); vanishes for n = 0."""
    return math.sqrt(2 / (ell * math.pi)) * np.sin(n * np.asarray(x) / ell)


def _cos_fraction(ks) -> float:
    """Mean over sign choices of [k0 +- k1 +- ... == 0]; equals the interval
    average of prod cos(k_i x / ell)."""
    first, rest = ks[0], ks[1:]
    hits = sum(1 for s in itertools.product((1, -1), repeat=len(rest))
               if first + sum(si * k for si, k in zip(s, rest)) == 0)
    return hits / 2 ** len(rest)


def int_cos(ks, ell: float) -> float:
    """Integral over (0, ell pi) of the product of normalized cosine modes gamma_k."""
    L = ell * math.pi
    pref = math.prod(norm(k, ell) for k in ks)
    return pref * L * _cos_fraction(list(ks))


def int_sin_sin_cos(a: int, b: int, c: int, ell: float) -> float:
    """Integral of gamma_tilde_a gamma_tilde_b gamma_c."""
    if a == 0 or b == 0:
        return 0.0
    L = ell * math.pi
    # sin A sin B = (cos(A-B) - cos(A+B))/2
    val = 0.5 * (_cos_fraction([a - b, c]) - _cos_fraction([a + b, c]))
    return (2 / L) * norm(c, ell) * L * val


@dataclass(frozen=True)
class ModeIntegrals:
    ell: float
    n1: int
    n2: int
    alphas: tuple[float, ...]  # alpha1..alpha13
    betas: tuple[float, ...]  # beta1..beta8

    def alpha(self, i: int) -> float:
        return self.alphas[i - 1]

    def beta(self, i: int) -> float:
        return self.betas[i - 1]

    def b(self, ni: int, n: int, nu: int) -> float:
        """Integral of gamma_ni gamma_n gamma_nu."""
        return int_cos((ni, n, nu), self.ell)

    def bs(self, ni: int, n: int, nu: int) -> float:
        """Integral of gamma_tilde_ni gamma_tilde_n gamma_nu."""
        return int_sin_sin_cos(ni, n, nu, self.ell)

    def as_dict(self) -> dict:
        d = {f"alpha{i + 1}": v for i, v in enumerate(self.alphas)}
        d.update({f"beta{i + 1}": v for i, v in enumerate(self.betas)})
        return d


def mode_integrals(ell: float, n1: int, n2: int) -> ModeIntegrals:
    if n1 == n2 or n1 < 1 or n2 < 1:
        raise ValueError("need distinct positive modes")
    c, s = int_cos, int_sin_sin_cos
    alphas = (
        s(n1, n1, n1, ell), s(n1, n2, n1, ell), s(n2, n2, n1, ell),
        c((n1, n1, n1), ell), c((n1, n2, n1), ell), c((n2, n2, n1), ell),
        c((n1, n1), ell), c((n2, n1), ell),
        c((n1,) * 4, ell), c((n1, n1, n1, n2), ell), c((n1, n1, n2, n2), ell),
        c((n1, n2, n2, n2), ell), c((n2,) * 4, ell),
    )
    betas = (
        s(n1, n1, n2, ell), s(n1, n2, n2, ell), s(n2, n2, n2, ell),
        c((n1, n1, n2), ell), c((n1, n2, n2), ell), c((n2, n2, n2), ell),
        c((n1, n2), ell), c((n2, n2), ell),
    )
    return ModeIntegrals(ell, n1, n2, alphas, betas)


def trapezoid_integral(f, ell: float, m: int = 10_000) -> float:
    """Composite trapezoid rule on (0, ell pi) with m subintervals."""
    x = np.linspace(0.0, ell * math.pi, m + 1)
    return float(np.trapezoid(f(x), x))


def quadrature_integrals(ell: float, n1: int, n2: int, m: int = 10_000) -> ModeIntegrals:
    """Same integrals by direct quadrature, used as an oracle."""
    g = lambda n: (lambda x: gamma(n, x, ell))
    gt = lambda n: (lambda x: gamma_tilde(n, x, ell))

    def q(*fs):
        return trapezoid_integral(lambda x: np.prod([f(x) for f in fs], axis=0), ell, m)

    g1, g2, t1, t2 = g(n1), g(n2), gt(n1), gt(n2)
    alphas = (q(t1, t1, g1), q(t1, t2, g1), q(t2, t2, g1), q(g1, g1, g1), q(g1, g2, g1),
              q(g2, g2, g1), q(g1, g1), q(g2, g1), q(g1, g1, g1, g1), q(g1, g1, g1, g2),
              q(g1, g1, g2, g2), q(g1, g2, g2, g2), q(g2, g2, g2, g2))
    betas = (q(t1, t1, g2), q(t1, t2, g2), q(t2, t2, g2), q(g1, g1, g2), q(g1, g2, g2),
             q(g2, g2, g2), q(g1, g2), q(g2, g2))
    return ModeIntegrals(ell, n1, n2, alphas, betas)
