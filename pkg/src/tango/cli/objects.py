"""The named sheaves built from the shipped fixtures.

Everything is constructed lazily and cached on a :class:`Objects` instance:

    H      = (image of A)^dual (-1)          rank 3 on Q_5, one section at degree 0
    C1     = H / (that section)               the Cayley bundle C(1)
    C      = C1(-1)
    T      = (f^* C1)^{dual dual}             Tango's bundle on P^5
    S      = coker(B mod q)(-1)               the spinor bundle on Q_5
    W      = middle term of the non-split extension 0 -> H(-1) -> W -> O -> 0

Decompositions of pushforwards are written as lists of summands
``(kind, twist, multiplicity)`` with kind ``"O"`` or ``"S"``.
"""

from __future__ import annotations

from functools import cached_property
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .. import beilinson
from ..module import (GradedMatrix, GradedModule, double_dual, dual_module, extension_module,
                      frobenius_pullback, image_module, kill_generators, prune, pullback_module,
                      pushforward_presentation, sym2, tensor, wedge2)
from .scenario import DERIVED, Scenario, load_default

Summand = Tuple[str, int, int]


def binom(n: int, k: int) -> int:
    return comb(n, k) if n >= k >= 0 else 0


def line_hf(kind: str, n: int, t: int, d: int) -> int:
    """dim H^0(O(t + d)) on P^n (kind "P") or on the quadric Q_n (kind "Q")."""
    e = t + d
    if e < 0:
        return 0
    if kind == "P":
        return binom(e + n, n)
    return binom(e + n + 1, n + 1) - binom(e + n - 1, n + 1)


def spinor_hf(n: int, t: int, d: int) -> int:
    """Hilbert function of the spinor module S(t) on Q_n (n = 3, 5), S generated in degree 1.

    S(1) is the cokernel of a linear matrix factorisation of size N = 4 (Q_3)
    or N = 8 (Q_5) over P^{n+1}, so dim S(1)_e = N * binom(e + n, n).
    """
    N = {3: 4, 5: 8}[n]
    e = t + d - 1
    return N * binom(e + n, n) if e >= 0 else 0


def decomposition_hf(kind: str, n: int, summands: Sequence[Summand], d: int) -> int:
    out = 0
    for what, t, mult in summands:
        out += mult * (spinor_hf(n, t, d) if what == "S" else line_hf(kind, n, t, d))
    return out


class Objects:
    """Lazy, cached construction of every sheaf used by the verification suite."""

    def __init__(self, scenario: Optional[Scenario] = None):
        self.scenario = scenario if scenario is not None else load_default()
        self._pushforwards: Dict[Tuple[str, int, str], object] = {}

    # fixtures -------------------------------------------------------------
    @property
    def A(self) -> GradedMatrix:
        return self.scenario.matrices["A"]

    @property
    def B(self) -> GradedMatrix:
        return self.scenario.matrices["B"]

    @property
    def R(self):
        return self.scenario.rings["R"]

    def map(self, name: str):
        return self.scenario.maps[name]

    # sheaves on Q_5 -------------------------------------------------------
    @cached_property
    def H(self) -> GradedModule:
        return prune(dual_module(image_module(self.A))).twist(-1)

    @cached_property
    def C1(self) -> GradedModule:
        return prune(kill_generators(self.H, [0]))

    @cached_property
    def C(self) -> GradedModule:
        return self.C1.twist(-1)

    @cached_property
    def S(self) -> GradedModule:
        return GradedModule(self.B.over(self.R)).twist(-1)

    @cached_property
    def extension(self):
        m = image_module(GradedMatrix(self.R, [0], [{0: self.R.var(i)} for i in range(self.R.nvars)]))
        return extension_module(m, self.H.twist(-1))

    @cached_property
    def W(self) -> GradedModule:
        return prune(self.extension.module)

    @cached_property
    def wedge2_Hm1(self) -> GradedModule:
        return wedge2(self.H.twist(-1))

    @cached_property
    def Sym2C(self) -> GradedModule:
        return sym2(self.C)

    @cached_property
    def C2(self) -> GradedModule:
        """C^[2], the Frobenius pull-back of C."""
        return frobenius_pullback(self.C)

    @cached_property
    def SC(self) -> GradedModule:
        return tensor(self.S, self.C)

    # Tango's bundle ------------------------------------------------------
    @cached_property
    def T(self) -> GradedModule:
        return double_dual(pullback_module(self.map("f"), self.C1))

    @cached_property
    def monad_specs(self) -> List[beilinson.MonadSpec]:
        ex = self.scenario.exteriors
        return beilinson.assign_summands(ex["alpha"], ex["beta"])

    @cached_property
    def monad(self) -> beilinson.MonadResult:
        specs = self.monad_specs
        if len(specs) != 1:
            raise beilinson.BeilinsonError(f"expected a unique summand assignment, found {len(specs)}")
        return beilinson.monad_cohomology(specs[0], self.scenario.rings.get("P5"))

    @cached_property
    def TM(self) -> GradedModule:
        """T rebuilt from the Beilinson monad of T(-1)."""
        return double_dual(self.monad.cohomology).twist(1)

    # pushforwards ----------------------------------------------------------
    def pushforward(self, name: str, parity: int, of: str = "O"):
        key = (name, parity, of)
        if key not in self._pushforwards:
            m = self.map(name)
            M = self.S if of == "S" else GradedModule.free(m.target, [0])
            self._pushforwards[key] = pushforward_presentation(m, M, degree_bound=10, parity=parity)
        return self._pushforwards[key]

    def get(self, name: str) -> GradedModule:
        if name not in DERIVED:
            raise KeyError(name)
        return getattr(self, name)
