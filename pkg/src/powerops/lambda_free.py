"""The free lambda-ring on finitely many generators, one weight at a time.

Elements live in Z[lambda^k(e_i)], graded by weight |lambda^k| = k.  A
monomial is a multiset of (weight, generator) factors; an element is a
dict from monomials to integer coefficients.  Everything is computed at a
fixed finite weight cap, which is all the classification results need.

Sums of generators are expanded through the generating series
lambda_t(x) = sum lambda^i(x) t^i, which is multiplicative in x; negative
multiples go through the truncated power-series inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .intlinalg import (GroupClass, IntMatrix, Presentation, classify,
                        map_cokernel, tensor_with_cyclic)

# A monomial is a tuple of (k, i) pairs, sorted by weight descending then
# generator index ascending.  The empty tuple is the unit.
LambdaMonomial = tuple


def mono_make(factors) -> LambdaMonomial:
    return tuple(sorted(((int(k), int(i)) for k, i in factors),
                        key=lambda f: (-f[0], f[1])))


def mono_weight(mono: LambdaMonomial) -> int:
    return sum(k for k, _ in mono)


def mono_mul(a: LambdaMonomial, b: LambdaMonomial) -> LambdaMonomial:
    return mono_make(a + b)


def _basis_key(mono: LambdaMonomial):
    # generator-major ordering: lambda^2(a), lambda^1(a)^2, lambda^1(a)lambda^1(b), ...
    return tuple(sorted((i, -k) for k, i in mono))


def mono_str(mono: LambdaMonomial, names=None) -> str:
    if not mono:
        return "1"
    def name(i):
        return names[i] if names else f"e{i + 1}"
    return "*".join(f"l{k}({name(i)})" for k, i in mono)


class GradedLambdaElement:
    """Integer combination of lambda-monomials, truncated at weight_cap."""

    __slots__ = ("terms", "weight_cap")

    def __init__(self, terms=None, weight_cap: int = 0):
        clean = {}
        for mono, c in (terms or {}).items():
            if c and mono_weight(mono) <= weight_cap:
                clean[mono] = clean.get(mono, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}
        self.weight_cap = weight_cap

    @classmethod
    def zero(cls, cap: int) -> "GradedLambdaElement":
        return cls({}, cap)

    @classmethod
    def one(cls, cap: int) -> "GradedLambdaElement":
        return cls({(): 1}, cap)

    @classmethod
    def generator(cls, k: int, i: int, cap: int) -> "GradedLambdaElement":
        return cls({mono_make([(k, i)]): 1}, cap)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, GradedLambdaElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        cap = max(self.weight_cap, other.weight_cap)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return GradedLambdaElement(out, cap)

    def __sub__(self, other):
        cap = max(self.weight_cap, other.weight_cap)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return GradedLambdaElement(out, cap)

    def __neg__(self):
        return GradedLambdaElement({m: -c for m, c in self.terms.items()}, self.weight_cap)

    def scale(self, n: int) -> "GradedLambdaElement":
        return GradedLambdaElement({m: n * c for m, c in self.terms.items()}, self.weight_cap)

    def __mul__(self, other):
        cap = max(self.weight_cap, other.weight_cap)
        out = {}
        for ma, ca in self.terms.items():
            wa = mono_weight(ma)
            for mb, cb in other.terms.items():
                if wa + mono_weight(mb) > cap:
                    continue
                m = mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return GradedLambdaElement(out, cap)

    def pow(self, n: int) -> "GradedLambdaElement":
        if n < 0:
            raise ValueError("negative powers only make sense for series")
        result = GradedLambdaElement.one(self.weight_cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_basis_key):
            c = self.terms[m]
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_str(m))
            elif c == -1:
                parts.append(f"-{mono_str(m)}")
            else:
                parts.append(f"{c}*{mono_str(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


@dataclass(frozen=True)
class LambdaSeries:
    """Truncated series sum_d coefficient[d] * t^d with coefficient[0] = 1."""

    coefficients: tuple

    @property
    def cap(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, d: int) -> GradedLambdaElement:
        return self.coefficients[d]

    def __mul__(self, other: "LambdaSeries") -> "LambdaSeries":
        cap = min(self.cap, other.cap)
        out = []
        for d in range(cap + 1):
            acc = GradedLambdaElement.zero(cap)
            for i in range(d + 1):
                acc = acc + self.coefficients[i] * other.coefficients[d - i]
            out.append(acc)
        return LambdaSeries(tuple(out))

    def inverse(self) -> "LambdaSeries":
        cap = self.cap
        out = [GradedLambdaElement.one(cap)]
        for d in range(1, cap + 1):
            acc = GradedLambdaElement.zero(cap)
            for i in range(1, d + 1):
                acc = acc + self.coefficients[i] * out[d - i]
            out.append(-acc)
        return LambdaSeries(tuple(out))

    def pow(self, n: int) -> "LambdaSeries":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = LambdaSeries.one(self.cap)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @classmethod
    def one(cls, cap: int) -> "LambdaSeries":
        coeffs = [GradedLambdaElement.one(cap)]
        coeffs += [GradedLambdaElement.zero(cap) for _ in range(cap)]
        return cls(tuple(coeffs))

    @classmethod
    def of_generator(cls, i: int, cap: int) -> "LambdaSeries":
        coeffs = [GradedLambdaElement.one(cap)]
        coeffs += [GradedLambdaElement.generator(k, i, cap) for k in range(1, cap + 1)]
        return cls(tuple(coeffs))


def lambda_series(combo, cap: int) -> LambdaSeries:
    """Series of lambda-operations of sum_i combo[i] * e_i, truncated at t^cap.

    The degree-d coefficient is lambda^d of the combination, expanded in
    the monomial basis.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    result = LambdaSeries.one(cap)
    for i, n in enumerate(combo):
        if n:
            result = result * LambdaSeries.of_generator(i, cap).pow(n)
    return result


def tn_free_basis(b: int, n: int):
    """All weight-n monomials in generators e_1..e_b, canonically ordered."""
    if b < 0 or n < 0:
        raise ValueError("b and n must be >= 0")
    factors = [(k, i) for k in range(1, n + 1) for i in range(b)]

    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(mono_make(acc))
            return
        for idx in range(start, len(factors)):
            k, i = factors[idx]
            if k <= remaining:
                acc.append((k, i))
                rec(idx, remaining - k, acc)
                acc.pop()

    rec(0, n, [])
    out.sort(key=_basis_key)
    return out


def _element_to_column(elem: GradedLambdaElement, index: dict):
    col = [0] * len(index)
    for m, c in elem.terms.items():
        col[index[m]] = c
    return col


def tn_of_map(f: IntMatrix, n: int) -> IntMatrix:
    """Matrix of the weight-n functor applied to f: Z^a -> Z^b.

    Rows are indexed by the weight-n basis on b generators, columns by the
    one on a generators; a basis monomial maps to the product of the
    matching series coefficients of its factors' images.
    """
    a, b = f.cols, f.rows
    src = tn_free_basis(a, n)
    dst = tn_free_basis(b, n)
    index = {m: t for t, m in enumerate(dst)}
    series = [lambda_series(f.column(j), n) for j in range(a)]
    cols = []
    for mono in src:
        img = GradedLambdaElement.one(n)
        for k, j in mono:
            img = img * series[j].coefficient(k)
            if not img:
                break
        cols.append(_element_to_column(img, index))
    return IntMatrix(len(dst), len(src),
                     [cols[j][i] for i in range(len(dst)) for j in range(len(src))])


def tn_presentation(P: Presentation, n: int) -> Presentation:
    """Presentation of the weight-n piece on coker(P), via the reflexive pair.

    The parallel pair Z^(b+a) => Z^b has d0 = [I | 0] and d1 = [I | R]; in
    abelian groups its coequalizer after the functor is the cokernel of
    the difference of the induced maps.
    """
    b = P.generators
    a = P.relations.cols
    d0 = IntMatrix.identity(b).hstack(IntMatrix.zero(b, a))
    d1 = IntMatrix.identity(b).hstack(P.relations)
    diff = tn_of_map(d1, n) - tn_of_map(d0, n)
    return Presentation(diff.rows, diff)


def tn_presented(P: Presentation, n: int) -> GroupClass:
    """Isomorphism class of the weight-n piece of the free lambda-ring on coker(P)."""
    return classify(tn_presentation(P, n))


def adams(n: int, cap: int | None = None) -> GradedLambdaElement:
    """The n-th Adams operation on one generator, as a polynomial in lambda^k(e).

    Newton's identity psi^n = sum_{i<n} (-1)^(i-1) lambda^i psi^(n-i)
    + (-1)^(n-1) n lambda^n keeps everything integral.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cap = n if cap is None else cap
    if n > cap:
        raise ValueError("n exceeds cap")
    return _adams_cached(n)


@lru_cache(maxsize=None)
def _adams_cached(n: int) -> GradedLambdaElement:
    lam = [None] + [GradedLambdaElement.generator(k, 0, n) for k in range(1, n + 1)]
    psi = [None, lam[1]]
    for j in range(2, n + 1):
        acc = GradedLambdaElement.zero(n)
        for i in range(1, j):
            term = lam[i] * psi[j - i]
            acc = acc + (term if i % 2 == 1 else -term)
        tail = lam[j].scale(j)
        acc = acc + (tail if j % 2 == 1 else -tail)
        psi.append(acc)
    return psi[n]


def binomial(n: int, k: int) -> int:
    """binom(n, k) extended to negative n, e.g. binom(n,2) = n(n-1)/2."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(-n + k - 1, k)


def evaluate_at_integers(elem: GradedLambdaElement, values) -> int:
    """Augmentation e_i -> values[i], with lambda^k(m) = binom(m, k)."""
    total = 0
    for mono, c in elem.terms.items():
        prod_val = c
        for k, i in mono:
            prod_val *= binomial(values[i], k)
        total += prod_val
    return total


class ThetaIntegralityError(ArithmeticError):
    """Raised if (psi^p(w) - w^p)/p fails to be integral; always a bug."""


def theta_from_lambda(p: int, combo, cap: int | None = None) -> GradedLambdaElement:
    """(psi^p(w) - w^p)/p for w = sum combo[i] e_i; exact in every coefficient."""
    if not _is_prime(p):
        raise ValueError("p must be prime")
    cap = p if cap is None else cap
    if p > cap:
        raise ValueError("p exceeds cap")
    psi_one = adams(p)
    psi_w = GradedLambdaElement.zero(cap)
    for i, ni in enumerate(combo):
        if ni:
            shifted = GradedLambdaElement(
                {mono_make([(k, i) for k, _ in m]): c for m, c in psi_one.terms.items()},
                cap)
            psi_w = psi_w + shifted.scale(ni)
    linear = GradedLambdaElement(
        {mono_make([(1, i)]): ni for i, ni in enumerate(combo) if ni}, cap)
    diff = psi_w - linear.pow(p)
    out = {}
    for m, c in diff.terms.items():
        if c % p != 0:
            raise ThetaIntegralityError(f"coefficient {c} of {mono_str(m)} not divisible by {p}")
        out[m] = c // p
    return GradedLambdaElement(out, cap)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def key_constant(n: int, p: int, k_max: int | None = None):
    """Least k making mod-p reduction of the weight-m functors, m <= n,
    insensitive to truncating the input at Z/p^k; None if the search bound
    is exhausted.

    Tests the natural map Z/p (x) T_m(Z) -> Z/p (x) T_m(Z/p^k) for all
    m <= n; once some k works, every larger one does too.
    """
    if n < 0 or p < 2:
        raise ValueError("need n >= 0 and p >= 2")
    if k_max is None:
        k_max = max(1, _partition_count(n))
    for k in range(1, k_max + 1):
        if all(_truncation_is_iso(m, p, k) for m in range(n + 1)):
            return k
    return None


def _truncation_is_iso(m: int, p: int, k: int) -> bool:
    rank = _partition_count(m)
    src = tensor_with_cyclic(Presentation.free(rank), p)
    dst = tensor_with_cyclic(tn_presentation(Presentation.cyclic(p ** k), m), p)
    ident = IntMatrix.identity(rank)
    return map_cokernel(ident, src, dst).is_iso()


@lru_cache(maxsize=None)
def _partition_count(n: int) -> int:
    return len(tn_free_basis(1, n))
