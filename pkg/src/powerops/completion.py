"""Derived p-completion at height 1 on a small symbolic module grammar.

Modules are finite direct sums of the atoms Z, Z/n, Z[1/p], Z/p^infty and
the p-adic integers Zp_hat, with a fixed prime p.  The derived completion
functors L0 and L1 act atom by atom:

    Z        -> (Zp_hat, 0)        Z/p^k   -> (Z/p^k, 0)
    Z/q      -> (0, 0)  (p∤q)      Z[1/p]  -> (0, 0)
    Z/p^inf  -> (0, Zp_hat)        Zp_hat  -> (Zp_hat, 0)

and additively over sums.  There is nothing above L1 at this height.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .intlinalg import (CokernelMap, GroupClass, IntMatrix, Presentation,
                        map_cokernel, tensor_with_cyclic)
from .lambda_free import (_is_prime, tn_free_basis, tn_presentation,
                          tn_presented)


def _prime_power_split(n: int):
    """Prime-power factors of n >= 2, e.g. 12 -> [4, 3]."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            q = 1
            while n % d == 0:
                q *= d
                n //= d
            out.append(q)
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class ModuleExpr:
    """Formal direct sum over the completion grammar, at a fixed prime."""

    p: int
    free: int = 0              # copies of Z
    cyclic: tuple = ()         # prime-power orders, sorted
    p_inverted: int = 0        # copies of Z[1/p]
    prufer: int = 0            # copies of Z/p^inf
    complete: int = 0          # copies of Zp_hat

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if min(self.free, self.p_inverted, self.prufer, self.complete) < 0:
            raise ValueError("negative multiplicity")
        parts = []
        for n in self.cyclic:
            if n < 2:
                raise ValueError("cyclic orders must be >= 2")
            parts.extend(_prime_power_split(n))
        object.__setattr__(self, "cyclic", tuple(sorted(parts)))

    @classmethod
    def zero(cls, p: int) -> "ModuleExpr":
        return cls(p)

    @classmethod
    def from_group(cls, g: GroupClass, p: int) -> "ModuleExpr":
        return cls(p, free=g.free_rank, cyclic=g.torsion_invariants)

    def __add__(self, other: "ModuleExpr") -> "ModuleExpr":
        if self.p != other.p:
            raise ValueError("mixed primes")
        return ModuleExpr(self.p, self.free + other.free,
                          self.cyclic + other.cyclic,
                          self.p_inverted + other.p_inverted,
                          self.prufer + other.prufer,
                          self.complete + other.complete)

    @property
    def is_zero(self) -> bool:
        return not (self.free or self.cyclic or self.p_inverted
                    or self.prufer or self.complete)

    def is_finitely_generated(self) -> bool:
        return self.p_inverted == 0 and self.prufer == 0 and self.complete == 0

    def __str__(self):
        parts = ["Z"] * self.free
        parts += [f"Z/{n}" for n in self.cyclic]
        parts += ["Z[1/p]"] * self.p_inverted
        parts += ["Zp_inf"] * self.prufer
        parts += ["Zp_hat"] * self.complete
        return " + ".join(parts) if parts else "0"


_CYCLIC_RE = re.compile(r"Z/(\d+)$")


def parse_module_expr(text: str, p: int) -> ModuleExpr:
    """Parse `Z`, `Z/12`, `Z[1/p]`, `Zp_inf`, `Zp_hat`, `0` joined by `+`."""
    expr = ModuleExpr.zero(p)
    for raw in text.split("+"):
        tok = raw.strip()
        if tok == "0" or tok == "":
            continue
        if tok == "Z":
            expr = expr + ModuleExpr(p, free=1)
        elif tok == "Z[1/p]":
            expr = expr + ModuleExpr(p, p_inverted=1)
        elif tok == "Zp_inf":
            expr = expr + ModuleExpr(p, prufer=1)
        elif tok == "Zp_hat":
            expr = expr + ModuleExpr(p, complete=1)
        else:
            m = _CYCLIC_RE.match(tok)
            if not m:
                raise ValueError(f"unrecognized module atom: {tok!r}")
            n = int(m.group(1))
            if n == 0:
                expr = expr + ModuleExpr(p, free=1)
            elif n == 1:
                pass
            else:
                expr = expr + ModuleExpr(p, cyclic=(n,))
    return expr


@dataclass(frozen=True)
class CompletionResult:
    L0: ModuleExpr
    L1: ModuleExpr

    def __str__(self):
        return f"L0 = {self.L0}, L1 = {self.L1}"


def l_complete(M: ModuleExpr, p: int | None = None) -> CompletionResult:
    """Derived p-completion (L0, L1) of a grammar expression."""
    if p is None:
        p = M.p
    if p != M.p:
        raise ValueError("expression was built at a different prime")
    l0 = ModuleExpr(p, free=0, complete=M.free + M.complete)
    torsion = tuple(n for n in M.cyclic if n % p == 0)
    l0 = l0 + ModuleExpr(p, cyclic=torsion)
    l1 = ModuleExpr(p, complete=M.prufer)
    return CompletionResult(l0, l1)


def is_l0_equivalence(f: CokernelMap, p: int) -> bool:
    """Does f induce an isomorphism on derived p-completions?

    For maps of finitely generated groups this holds exactly when kernel
    and cokernel are finite of order coprime to p.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    for g in (f.kernel(), f.cokernel()):
        order = g.order()
        if order is None or gcd(order, p) != 1:
            return False
    return True


def hat_tn(M: ModuleExpr, n: int, p: int | None = None) -> ModuleExpr:
    """Completed weight-n approximation: L0 of the free functor piece.

    Zp_hat atoms are modeled integrally by Z and re-completed afterwards;
    Z[1/p] and Z/p^inf are outside the finitely generated fragment.
    """
    if p is None:
        p = M.p
    if p != M.p:
        raise ValueError("expression was built at a different prime")
    if M.p_inverted or M.prufer:
        raise ValueError("expression must be finitely generated "
                         "(no Z[1/p] or Zp_inf atoms)")
    parts = [Presentation.free(M.free + M.complete)]
    parts += [Presentation.cyclic(m) for m in M.cyclic]
    P = Presentation.direct_sum(*parts)
    group = tn_presented(P, n)
    return l_complete(ModuleExpr.from_group(group, p)).L0


def _mod_p_truncation_iso(P: Presentation, m: int, p: int, k: int) -> bool:
    """Is Z/p ⊗ T_m(M) → Z/p ⊗ T_m(Z/p^k ⊗ M) an isomorphism?"""
    src_pres = tensor_with_cyclic(tn_presentation(P, m), p)
    truncated = tensor_with_cyclic(P, p ** k)
    dst_pres = tensor_with_cyclic(tn_presentation(truncated, m), p)
    b = len(tn_free_basis(P.generators, m))
    f = map_cokernel(IntMatrix.identity(b), src_pres, dst_pres)
    return f.is_iso()


def verify_main_theorem(P: Presentation, n: int, p: int, k: int) -> bool:
    """Check the mod-p truncation comparison for every weight m <= n.

    The natural map Z/p ⊗ T_m(M) → Z/p ⊗ T_m(Z/p^k ⊗ M) lifts to the
    identity on monomial bases; it must be an isomorphism for all m <= n.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if k < 1:
        raise ValueError("k must be >= 1")
    return all(_mod_p_truncation_iso(P, m, p, k) for m in range(n + 1))
