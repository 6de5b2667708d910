"""Choice functions selecting the leading monomial of a polynomial.

A choice function refines the total-degree grading: it picks a support
monomial of maximal degree that divides no other support monomial.  Since the
pick is always among the degree-maximal monomials, the non-divisibility
condition holds automatically.
"""

from __future__ import annotations

import random

from .poly import Monomial, Polynomial, mono_size


class NoChoosableMonomial(ValueError):
    """Raised when gamma is applied to a (possibly eps-)zero polynomial."""


def grevlex_key(m: Monomial):
    # x0 > x1 > ...; among equal degrees the grevlex-larger monomial
    # has the *smaller* trailing exponent pattern read right-to-left.
    return (mono_size(m), tuple(-e for e in reversed(m)))


def deglex_key(m: Monomial):
    return (mono_size(m), m)


def _mac_pick(monos):
    d = max(mono_size(m) for m in monos)
    top = [m for m in monos if mono_size(m) == d]
    best = max(max(m) for m in top)
    cands = [m for m in top if max(m) == best]
    return max(cands)  # lexicographic tie-break


class ChoiceFunction:
    """Callable leading-monomial selector with an optional eps filter."""

    def __init__(self, kind: str, seed: int = 0, eps: float = 0.0):
        if kind not in ("drvl", "dlex", "mac", "minsz", "mix"):
            raise ValueError(f"unknown choice function {kind!r}")
        self.kind = kind
        self.seed = seed
        self.eps = eps
        self._rng = random.Random(seed) if kind == "mix" else None

    @property
    def support_only(self) -> bool:
        """True when the pick depends only on the support, never on coefficients."""
        return self.kind in ("drvl", "dlex", "mac")

    def clone(self) -> "ChoiceFunction":
        """Fresh instance with the mix PRNG re-seeded (reproducible runs)."""
        return ChoiceFunction(self.kind, self.seed, self.eps)

    def _pick(self, p: Polynomial, monos) -> Monomial:
        if self.kind == "drvl":
            return max(monos, key=grevlex_key)
        if self.kind == "dlex":
            return max(monos, key=deglex_key)
        if self.kind == "mac":
            return _mac_pick(monos)
        if self.kind == "minsz":
            return self._minsz(p, monos)
        # mix: per-call coin flip between minsz and drvl, seeded
        if self._rng.random() < 0.5:
            return self._minsz(p, monos)
        return max(monos, key=grevlex_key)

    def _minsz(self, p: Polynomial, monos):
        # among degree-maximal monomials, minimal coefficient bit-size;
        # ties broken by grevlex (an interpretation: see README)
        d = max(mono_size(m) for m in monos)
        top = [m for m in monos if mono_size(m) == d]
        f = p.field
        return min(top, key=lambda m: (f.coeff_size(p.terms[m]), [-k for k in grevlex_key(m)[1]]))

    def gamma(self, p: Polynomial) -> Monomial:
        monos = self._filtered_support(p)
        if not monos:
            raise NoChoosableMonomial("no choosable monomial (polynomial is (eps-)zero)")
        return self._pick(p, monos)

    def kappa(self, p: Polynomial):
        """Coefficient of the chosen monomial."""
        return p.terms[self.gamma(p)]

    def _filtered_support(self, p: Polynomial):
        if self.eps <= 0:
            return list(p.terms)
        f = p.field
        return [m for m, c in p.terms.items() if f.magnitude(c) >= self.eps]

    def with_eps(self, eps: float) -> "ChoiceFunction":
        return ChoiceFunction(self.kind, self.seed, eps)

    def __repr__(self):
        tag = self.kind if self.kind != "mix" else f"mix:{self.seed}"
        if self.eps > 0:
            tag += f" (eps={self.eps:g})"
        return f"<choice {tag}>"


def gamma(p: Polynomial, cf: ChoiceFunction) -> Monomial:
    return cf.gamma(p)


def kappa(p: Polynomial, cf: ChoiceFunction):
    return cf.kappa(p)


def gamma_eps(p: Polynomial, cf: ChoiceFunction, eps: float) -> Monomial:
    """gamma applied to p restricted to coefficients of magnitude >= eps."""
    return cf.with_eps(eps).gamma(p)


def parse_choice(spec: str, eps: float = 0.0) -> ChoiceFunction:
    """Parse a CLI choice string: drvl|dlex|mac|minsz|mix:<seed>."""
    spec = spec.strip()
    if spec.startswith("mix:"):
        return ChoiceFunction("mix", seed=int(spec[4:]), eps=eps)
    if spec == "mix":
        return ChoiceFunction("mix", seed=0, eps=eps)
    return ChoiceFunction(spec, eps=eps)
