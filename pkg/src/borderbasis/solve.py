"""Numerical root extraction from the multiplication matrices.

The eigenvectors of a random unit-circle combination of the transposed
multiplication matrices approximate evaluation functionals at the roots, so
each root is read off from eigenvector coordinate ratios.
"""

from __future__ import annotations

import warnings

import numpy as np

from .fields import PrimeField
from .poly import Polynomial, mono_one, mono_var
from .quotient import MultiplicationSystem


class SolveError(Exception):
    pass


class RootSet:
    """All D = |B| roots (with multiplicity) and the residual metric."""

    __slots__ = ("roots", "mnacr", "seed", "condition")

    def __init__(self, roots, mnacr, seed, condition=None):
        self.roots = list(roots)
        self.mnacr = mnacr
        self.seed = seed
        self.condition = condition

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def to_json_dict(self):
        return {
            "roots": [[[z.real, z.imag] for z in root] for root in self.roots],
            "mnacr": self.mnacr,
            "seed": self.seed,
        }


def _complex_matrix(ms: MultiplicationSystem, i: int) -> np.ndarray:
    f = ms.field
    D = ms.dimension
    out = np.empty((D, D), dtype=complex)
    for j in range(D):
        col = ms.matrices[i][j]
        for k in range(D):
            out[k, j] = f.to_complex(col[k])
    return out


def evaluate_complex(p: Polynomial, point) -> complex:
    """p at a complex point, coefficients converted to complex."""
    f = p.field
    acc = 0j
    for m, c in p.terms.items():
        v = f.to_complex(c)
        for k, e in enumerate(m):
            if e:
                v *= point[k] ** e
        acc += v
    return acc


def mnacr(roots, polys) -> float:
    """Maximal norm of the input polynomials at the computed roots."""
    best = 0.0
    for root in roots:
        for p in polys:
            best = max(best, abs(evaluate_complex(p, root)))
    return best


def eigen_roots(ms: MultiplicationSystem, seed: int = 0, polys=None) -> RootSet:
    """Roots from the eigen-decomposition of sum t_i M_i^T, t_i unit circle.

    Coordinate j of a root is read as v[x_j]/v[1] when x_j is a basis
    monomial, and as the Rayleigh quotient of M_j^T on v otherwise.
    """
    if isinstance(ms.field, PrimeField):
        raise SolveError("roots over a prime field are not computable numerically")
    n = ms.nvars
    rng = np.random.default_rng(seed)
    mats_t = [_complex_matrix(ms, i).T for i in range(n)]
    t = np.exp(2j * np.pi * rng.random(n))
    M = sum(t[i] * mats_t[i] for i in range(n))
    vals, vecs = np.linalg.eig(M)

    # condition estimate of the eigenvector basis; large values flag a
    # defective or clustered eigenproblem
    cond = float(np.linalg.cond(vecs))
    if not np.isfinite(cond) or cond > 1e12:
        warnings.warn(
            f"clustered or defective eigenproblem (eigenvector condition {cond:.2e}); "
            "roots may be inaccurate",
            stacklevel=2,
        )

    one_idx = ms.index[mono_one(n)]
    var_idx = [ms.index.get(mono_var(n, j)) for j in range(n)]
    order = np.argsort(vals.real**2 + vals.imag**2, kind="stable")
    roots = []
    for col in order:
        v = vecs[:, col]
        pivot = v[one_idx]
        if abs(pivot) < 1e-14 * np.linalg.norm(v):
            # evaluation functional with vanishing value at 1: fall back to
            # Rayleigh quotients throughout
            pivot = None
        root = []
        for j in range(n):
            k = var_idx[j]
            if k is not None and pivot is not None:
                root.append(complex(v[k] / pivot))
            else:
                root.append(complex(np.vdot(v, mats_t[j] @ v) / np.vdot(v, v)))
        roots.append(tuple(root))
    resid = mnacr(roots, polys) if polys is not None else 0.0
    return RootSet(roots, resid, seed, cond)


def rule_residual(roots, bb) -> float:
    """max over roots and rules of |lead(root) - tail(root)|."""
    best = 0.0
    for root in roots:
        for rule in bb.rule_polys():
            best = max(best, abs(evaluate_complex(rule, root)))
    return best
