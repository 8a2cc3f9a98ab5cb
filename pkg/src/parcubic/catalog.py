"""Built-in metrised algebras.

Structure constants are transcribed by hand; the tests cross-check every
entry against independently expanded defining polynomials, which catches
transcription slips in K or γ.

Keys: ``cayley.N`` (N >= 1), ``algebras4.1``-``algebras4.3``,
``algebras5.1``-``algebras5.7`` (entries 3 and 6 take a parameter α > 0),
``class3.1``, ``class3.2`` and ``bivariate``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra
from .exactnum import Matrix, to_rational
from .metrised import MetrisedAlgebra


class CatalogError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "catalog error"


def cayley(n: int) -> MetrisedAlgebra:
    """Truncated polynomial ring t·Q[t]/(t^{n+1}) in the basis t, ..., t^n.

    e_a • e_b = e_{a+b} (zero past n); γ pairs t^a with t^{n+1-a}.
    """
    if not isinstance(n, int) or n < 1:
        raise CatalogError(f"cayley needs n >= 1, got {n!r}")
    structure = {(a, b, a + b): 1 for a in range(1, n + 1) for b in range(a, n + 1) if a + b <= n}
    return MetrisedAlgebra(Algebra(n, structure), Matrix.antidiagonal(n))


def _algebras4(a, b, c, d, e) -> MetrisedAlgebra:
    s = {}

    def put(value, *keys):
        for key in keys:
            s[key] = s.get(key, 0) + value

    put(a, (3, 3, 2))
    put(b, (3, 4, 2), (3, 3, 1))
    put(c, (4, 4, 2), (3, 4, 1))
    put(d, (4, 4, 1))
    put(e, (2, 4, 1), (4, 4, 3))
    return MetrisedAlgebra(Algebra(4, s), Matrix.antidiagonal(4))


_ALG4 = {
    1: (0, Fraction(1, 3), Fraction(1, 3), 0, 0),
    2: (0, 0, Fraction(1, 3), 0, 0),
    3: (0, 1, 0, 0, 1),
}


def _algebras5(a, b, c, d, e, f, g, h) -> MetrisedAlgebra:
    s = {}

    def put(value, *keys):
        for key in keys:
            s[key] = s.get(key, 0) + value

    put(a, (5, 5, 4), (2, 5, 1))
    put(b, (4, 4, 3), (3, 4, 2))
    put(c, (4, 5, 3), (3, 5, 2), (3, 4, 1))
    put(d, (5, 5, 3), (3, 5, 1))
    put(e, (4, 4, 2))
    put(f, (4, 4, 1), (4, 5, 2))
    put(g, (5, 5, 2), (4, 5, 1))
    put(h, (5, 5, 1))
    return MetrisedAlgebra(Algebra(5, s), Matrix.antidiagonal(5))


def _alg5_params(k: int, alpha) -> tuple:
    A = alpha
    return {
        1: (0, 1, 0, 0, 0, 0, 1, 0),
        2: (0, 1, 0, 1, 0, 0, 0, 0),
        3: (0, 1, 0, 1, A, 0, 0, 0),
        4: (0, 0, 1, 0, 0, 0, 0, 0),
        5: (0, 0, 1, 0, 1, 0, 0, 0),
        6: (0, 0, 1, 0, A, 0, 0, A),
        7: (1, 0, 1, 0, 1, 0, 0, 0),
    }[k]


PARAMETRIC = {"algebras5.3", "algebras5.6"}
DEFAULT_ALPHAS = (Fraction(1), Fraction(2))


def _class3(k: int) -> MetrisedAlgebra:
    gamma = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    if k == 1:
        return MetrisedAlgebra(Algebra(3, {(2, 2, 1): 1}), gamma)
    return MetrisedAlgebra(Algebra(3, {(2, 2, 3): 1, (2, 3, 1): 1}), gamma)


def bivariate() -> MetrisedAlgebra:
    """t·Q[t,s]/(t³, s²) in the basis (ts, t², t, t²s), γ = coefficient of t³s."""
    algebra = Algebra(4, {(3, 3, 2): 1, (1, 3, 4): 1})
    gamma = Matrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    return MetrisedAlgebra(algebra, gamma)


_KEY = re.compile(r"^(cayley|algebras4|algebras5|class3)\.(\d+)$")


def builtin(key: str, alpha=None) -> MetrisedAlgebra:
    """Catalog entry by key; ``alpha`` is required for the parametric entries."""
    if key == "bivariate":
        return bivariate()
    m = _KEY.match(key)
    if not m:
        raise CatalogError(f"unknown catalog key {key!r}")
    family, k = m.group(1), int(m.group(2))
    if family == "cayley":
        return cayley(k)
    if family == "algebras4":
        if k not in _ALG4:
            raise CatalogError(f"algebras4 has entries 1..3, got {k}")
        return _algebras4(*_ALG4[k])
    if family == "class3":
        if k not in (1, 2):
            raise CatalogError(f"class3 has entries 1..2, got {k}")
        return _class3(k)
    if not 1 <= k <= 7:
        raise CatalogError(f"algebras5 has entries 1..7, got {k}")
    if key in PARAMETRIC:
        if alpha is None:
            raise CatalogError(f"{key} needs a parameter alpha > 0")
        alpha = to_rational(alpha)
        if alpha <= 0:
            raise CatalogError(f"alpha must be positive, got {alpha}")
    return _algebras5(*_alg5_params(k, alpha or 0))


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    dim: int | None
    jordan: bool
    associative: bool
    nilpotent: bool
    irreducible: bool
    derivation_dim: int | None = None
    parametric: bool = False
    note: str = ""

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "dim": self.dim,
            "jordan": self.jordan,
            "associative": self.associative,
            "nilpotent": self.nilpotent,
            "irreducible": self.irreducible,
            "derivation_dim": self.derivation_dim,
            "parametric": self.parametric,
            "default_alphas": [str(a) for a in DEFAULT_ALPHAS] if self.parametric else None,
            "note": self.note,
        }


_ALG5_DERIVATIONS = (2, 2, 1, 2, 1, 1, 0)


def list_catalog() -> list[CatalogEntry]:
    entries = [
        CatalogEntry("cayley.n", None, True, True, True, True, parametric=False, note="n >= 1; cayley.1 is the 1-dim zero algebra"),
    ]
    for k in range(1, 4):
        entries.append(CatalogEntry(f"algebras4.{k}", 4, True, True, True, True))
    for k in range(1, 8):
        entries.append(
            CatalogEntry(
                f"algebras5.{k}",
                5,
                True,
                k in (1, 7),
                True,
                True,
                derivation_dim=_ALG5_DERIVATIONS[k - 1],
                parametric=f"algebras5.{k}" in PARAMETRIC,
                note="derivation_dim published for alpha = 1" if f"algebras5.{k}" in PARAMETRIC else "",
            )
        )
    entries.append(CatalogEntry("class3.1", 3, True, True, True, False, note="Cayley plane plus a 1-dim zero factor"))
    entries.append(CatalogEntry("class3.2", 3, True, True, True, True, note="isomorphic to cayley.3"))
    entries.append(CatalogEntry("bivariate", 4, True, True, True, True))
    return entries


def entry(key: str) -> CatalogEntry:
    if _KEY.match(key) and key.startswith("cayley."):
        n = int(key.split(".")[1])
        return CatalogEntry(key, n, True, True, True, True)
    for e in list_catalog():
        if e.key == key:
            return e
    raise CatalogError(f"unknown catalog key {key!r}")


def nilpotent_keys(max_cayley: int = 6) -> list[str]:
    """Every concrete non-parametric nilpotent key, Cayley up to ``max_cayley``."""
    keys = [f"cayley.{n}" for n in range(1, max_cayley + 1)]
    keys += [f"algebras4.{k}" for k in range(1, 4)]
    keys += [f"algebras5.{k}" for k in range(1, 8)]
    keys += ["bivariate", "class3.1", "class3.2"]
    return keys


def instances(max_cayley: int = 6) -> list[tuple[str, Fraction | None, MetrisedAlgebra]]:
    """(key, alpha, algebra) for every shipped instance, parametric ones at the default alphas."""
    out = []
    for key in nilpotent_keys(max_cayley):
        if key in PARAMETRIC:
            for a in DEFAULT_ALPHAS:
                out.append((key, a, builtin(key, a)))
        else:
            out.append((key, None, builtin(key)))
    return out
