"""Free theta-rings at a prime p, with the Z/2-graded one-generator model.

The free theta-algebra on even generators x_1..x_b is the polynomial ring
on the iterates theta^i(x_j); on one odd generator y it is the exterior
algebra on the psi-iterates of y.  theta is stored as a shift on those
iterate symbols and extended to sums and products by the two structure
formulas

    theta(u+v) = theta(u) + theta(v) - sum_{i=1}^{p-1} (1/p) C(p,i) u^i v^(p-i)
    theta(uv)  = theta(u) v^p + u^p theta(v) + p theta(u) theta(v)

whose coefficients are integral for prime p.  The weight of theta^i(x) is
p^i, and everything is computed one weight at a time.
"""

from __future__ import annotations

from math import comb

from .intlinalg import (GroupClass, IntMatrix, Presentation, classify)
from .lambda_free import _is_prime

# Even factors: tuple of ((gen, iterate), exponent), sorted by (gen, iterate).
# Odd factors: tuple of psi-iterate indices of the odd generator, ascending.
ThetaMonomial = tuple  # (even, odd)

UNIT = ((), ())


def mono_make(even=(), odd=()) -> ThetaMonomial:
    ev = {}
    for key, e in even:
        if e:
            ev[key] = ev.get(key, 0) + e
    return (tuple(sorted(ev.items())), tuple(sorted(odd)))


def mono_weight(mono: ThetaMonomial, p: int) -> int:
    even, odd = mono
    return sum(p ** i * e for (_, i), e in even) + sum(p ** j for j in odd)


def mono_parity(mono: ThetaMonomial) -> int:
    return len(mono[1]) % 2


def _merge_odd(a, b):
    """Concatenate sorted odd factor tuples; returns (sign, merged) or None."""
    if set(a) & set(b):
        return None
    inversions = sum(1 for x in a for y in b if x > y)
    sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(a + b))


def mono_str(mono: ThetaMonomial) -> str:
    even, odd = mono
    if not even and not odd:
        return "1"
    parts = []
    for (g, i), e in even:
        base = "x" if g == 0 else f"x{g + 1}"
        sym = base if i == 0 else f"th^{i}({base})" if i > 1 else f"th({base})"
        parts.append(sym if e == 1 else f"{sym}^{e}")
    for j in odd:
        parts.append("y" if j == 0 else f"psi^{j}(y)" if j > 1 else "psi(y)")
    return "*".join(parts)


class ThetaElement:
    """Integer combination of theta-monomials at a fixed prime."""

    __slots__ = ("terms", "p")

    def __init__(self, terms=None, p: int = 2):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        self.p = p
        clean = {}
        for m, c in (terms or {}).items():
            if c:
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def zero(cls, p: int) -> "ThetaElement":
        return cls({}, p)

    @classmethod
    def one(cls, p: int) -> "ThetaElement":
        return cls({UNIT: 1}, p)

    @classmethod
    def even_generator(cls, p: int, gen: int = 0, iterate: int = 0) -> "ThetaElement":
        return cls({mono_make([((gen, iterate), 1)]): 1}, p)

    @classmethod
    def odd_generator(cls, p: int, iterate: int = 0) -> "ThetaElement":
        return cls({mono_make(odd=(iterate,)): 1}, p)

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mixed primes")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ThetaElement):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ThetaElement(out, self.p)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return ThetaElement(out, self.p)

    def __neg__(self):
        return ThetaElement({m: -c for m, c in self.terms.items()}, self.p)

    def scale(self, n: int) -> "ThetaElement":
        return ThetaElement({m: n * c for m, c in self.terms.items()}, self.p)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for (ea, oa), ca in self.terms.items():
            for (eb, ob), cb in other.terms.items():
                merged = _merge_odd(oa, ob)
                if merged is None:
                    continue
                sign, odd = merged
                m = mono_make(tuple(ea) + tuple(eb), odd)
                out[m] = out.get(m, 0) + sign * ca * cb
        return ThetaElement(out, self.p)

    def pow(self, n: int) -> "ThetaElement":
        if n < 0:
            raise ValueError("negative power")
        result = ThetaElement.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def parity(self):
        """0 or 1 if homogeneous, None if mixed or zero."""
        seen = {mono_parity(m) for m in self.terms}
        return seen.pop() if len(seen) == 1 else None

    def is_even(self) -> bool:
        return all(mono_parity(m) == 0 for m in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            s = mono_str(m)
            if m == UNIT:
                parts.append(str(c))
            elif c == 1:
                parts.append(s)
            elif c == -1:
                parts.append(f"-{s}")
            else:
                parts.append(f"{c}*{s}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _theta_monomial(mono: ThetaMonomial, p: int) -> ThetaElement:
    """theta of a single even monomial, by splitting off one factor."""
    even, odd = mono
    if odd:
        raise ValueError("theta of a monomial with odd factors is not defined here")
    if not even:
        return ThetaElement.zero(p)  # theta(1) = 0
    (g, i), e = even[0]
    head = mono_make([((g, i + 1), 1)])  # theta shifts the iterate
    theta_f = ThetaElement({head: 1}, p)
    rest_even = (((g, i), e - 1),) + even[1:] if e > 1 else even[1:]
    if not rest_even:
        return theta_f
    rest = ThetaElement({mono_make(rest_even): 1}, p)
    f = ThetaElement({mono_make([((g, i), 1)]): 1}, p)
    theta_rest = _theta_even(rest, p)
    return theta_f * rest.pow(p) + f.pow(p) * theta_rest \
        + (theta_f * theta_rest).scale(p)


def _theta_even(u: ThetaElement, p: int) -> ThetaElement:
    """theta of an even element, by structural recursion over its terms."""
    items = sorted(u.terms.items())
    if not items:
        return ThetaElement.zero(p)
    m, c = items[0]
    head_mono = ThetaElement({m: 1}, p)
    # theta(c*m) = c*theta(m) + ((c - c^p)/p) m^p
    head = _theta_monomial(m, p).scale(c) \
        + head_mono.pow(p).scale((c - c ** p) // p)
    if len(items) == 1:
        return head
    u_head = ThetaElement({m: c}, p)
    rest = ThetaElement(dict(items[1:]), p)
    cross = ThetaElement.zero(p)
    for i in range(1, p):
        cross = cross + (u_head.pow(i) * rest.pow(p - i)).scale(comb(p, i) // p)
    return head + _theta_even(rest, p) - cross


def theta(u: ThetaElement) -> ThetaElement:
    """theta applied to an even element of the free algebra."""
    if not u.is_even():
        raise ValueError("theta is defined on even elements only")
    return _theta_even(u, u.p)


def psi(u: ThetaElement) -> ThetaElement:
    """Adams operation psi(u) = u^p + p*theta(u); shifts iterates on odd factors."""
    p = u.p
    out = ThetaElement.zero(p)
    for (even, odd), c in u.terms.items():
        factor = ThetaElement.one(p)
        for (g, i), e in even:
            base = ThetaElement.even_generator(p, g, i)
            factor = factor * psi_even_generator(base).pow(e)
        for j in odd:
            factor = factor * ThetaElement.odd_generator(p, j + 1)
        out = out + factor.scale(c)
    return out


def psi_even_generator(x: ThetaElement) -> ThetaElement:
    return x.pow(x.p) + theta(x).scale(x.p)


def theta_add(u: ThetaElement, v: ThetaElement) -> ThetaElement:
    """theta(u + v) by the addition formula."""
    u._check(v)
    p = u.p
    cross = ThetaElement.zero(p)
    for i in range(1, p):
        cross = cross + (u.pow(i) * v.pow(p - i)).scale(comb(p, i) // p)
    return theta(u) + theta(v) - cross


def theta_mul(u: ThetaElement, v: ThetaElement) -> ThetaElement:
    """theta(u * v); for two odd elements this is psi(u) * psi(v)."""
    u._check(v)
    pu, pv = u.parity(), v.parity()
    if pu == 1 and pv == 1:
        return psi(u) * psi(v)
    if (pu in (0, None) and u.is_even()) and (pv in (0, None) and v.is_even()):
        tu, tv = theta(u), theta(v)
        return tu * v.pow(u.p) + u.pow(u.p) * tv + (tu * tv).scale(u.p)
    raise ValueError("theta of a mixed-parity product is not supported")


def free_theta_basis(p: int, n: int, parity: str = "even"):
    """Weight-n monomial basis of the free algebra on one generator.

    Even generator: multisets of theta-iterates with |theta^i x| = p^i.
    Odd generator: square-free products of psi-iterates, |psi^i y| = p^i.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if n < 0:
        raise ValueError("n must be >= 0")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    max_iter = 0
    while p ** (max_iter + 1) <= n:
        max_iter += 1
    out = []

    # enumerate with the lowest iterate's exponent highest first, so x^n
    # precedes theta-heavy monomials
    def rec_ordered(iterate, remaining, acc):
        if remaining == 0:
            if parity == "even":
                out.append(mono_make([((0, i), e) for i, e in acc]))
            else:
                out.append(mono_make(odd=tuple(i for i, _ in acc)))
            return
        if iterate > max_iter:
            return
        w = p ** iterate
        top = remaining // w
        if parity == "odd":
            top = min(top, 1)
        for e in range(top, -1, -1):
            if e:
                acc.append((iterate, e))
            rec_ordered(iterate + 1, remaining - e * w, acc)
            if e:
                acc.pop()

    rec_ordered(0, n, [])
    return out


def _theta_iterate_of_combo(combo, iterate: int, p: int) -> ThetaElement:
    """theta^iterate applied to an integer combination of even generators."""
    elem = ThetaElement(
        {mono_make([((g, 0), 1)]): c for g, c in enumerate(combo) if c}, p)
    for _ in range(iterate):
        elem = theta(elem)
    return elem


def _multi_basis(p: int, b: int, n: int):
    """Weight-n monomials over b even generators with their theta-iterates."""
    max_iter = 0
    while p ** (max_iter + 1) <= n:
        max_iter += 1
    factors = [(g, i) for g in range(b) for i in range(max_iter + 1)]
    out = []

    def rec(idx, remaining, acc):
        if remaining == 0:
            out.append(mono_make(list(acc)))
            return
        if idx == len(factors):
            return
        g, i = factors[idx]
        w = p ** i
        top = remaining // w
        for e in range(top, -1, -1):
            if e:
                acc.append(((g, i), e))
            rec(idx + 1, remaining - e * w, acc)
            if e:
                acc.pop()

    rec(0, n, [])
    return sorted(out)


def theta_tn_of_map(f: IntMatrix, n: int, p: int) -> IntMatrix:
    """Matrix of the weight-n piece of the free theta-algebra functor on f."""
    a, b = f.cols, f.rows
    src = _multi_basis(p, a, n)
    dst = _multi_basis(p, b, n)
    index = {m: t for t, m in enumerate(dst)}
    max_iter = 0
    while p ** (max_iter + 1) <= n:
        max_iter += 1
    images = {}
    for g in range(a):
        col = f.column(g)
        for i in range(max_iter + 1):
            images[(g, i)] = _theta_iterate_of_combo(col, i, p)
    cols = []
    for (even, _odd) in src:
        img = ThetaElement.one(p)
        for (g, i), e in even:
            img = img * images[(g, i)].pow(e)
            if not img:
                break
        col = [0] * len(dst)
        for m, c in img.terms.items():
            col[index[m]] = c
        cols.append(col)
    return IntMatrix(len(dst), len(src),
                     [cols[j][i] for i in range(len(dst)) for j in range(len(src))])


class UnsupportedTorsionError(ValueError):
    """Presentation has torsion coprime to p, outside the supported grammar."""


def theta_tn_presented(p: int, P: Presentation, n: int) -> GroupClass:
    """Weight-n piece of the free theta-algebra on coker(P), classified.

    Only free summands and p-power torsion are supported.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    cls = classify(P)
    for t in cls.torsion_invariants:
        while t % p == 0:
            t //= p
        if t != 1:
            raise UnsupportedTorsionError(
                f"torsion invariant with a factor coprime to {p}")
    b = P.generators
    a = P.relations.cols
    d0 = IntMatrix.identity(b).hstack(IntMatrix.zero(b, a))
    d1 = IntMatrix.identity(b).hstack(P.relations)
    diff = theta_tn_of_map(d1, n, p) - theta_tn_of_map(d0, n, p)
    return classify(Presentation(diff.rows, diff))
