"""Exact sumset and additive-energy arithmetic.

Energies are computed by representation-function counting (quadratic in
the set sizes); the literal quadruple-enumeration versions are kept as
independent oracles and are never called from the fast paths.  All ratios
are `fractions.Fraction`, so every comparison in the package is an exact
cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .groups import Element, GroupError, GroupSet, GroupSpec, make_set, same_spec

ORACLE_GUARD = 10**8


def _adder(spec: GroupSpec) -> Callable[[Element, Element], Element]:
    if spec.is_modular:
        p = spec.modulus
        return lambda a, b: tuple((x + y) % p for x, y in zip(a, b))
    return lambda a, b: tuple(x + y for x, y in zip(a, b))


def _subtractor(spec: GroupSpec) -> Callable[[Element, Element], Element]:
    if spec.is_modular:
        p = spec.modulus
        return lambda a, b: tuple((x - y) % p for x, y in zip(a, b))
    return lambda a, b: tuple(x - y for x, y in zip(a, b))


def _pair_op(spec: GroupSpec, sign: str) -> Callable[[Element, Element], Element]:
    if sign == "+":
        return _adder(spec)
    if sign == "-":
        return _subtractor(spec)
    raise GroupError(f"sign must be '+' or '-', got {sign!r}")


def _require_nonempty(*sets: GroupSet) -> None:
    for s in sets:
        if s.is_empty():
            raise GroupError("operation requires nonempty sets")


def sumset(s: GroupSet, t: GroupSet, sign: str = "+") -> GroupSet:
    """All pairwise combinations {a +/- b : a in S, b in T}."""
    spec = same_spec(s, t)
    _require_nonempty(s, t)
    op = _pair_op(spec, sign)
    out = {op(a, b) for a in s.elements for b in t.elements}
    return GroupSet(spec, tuple(sorted(out)))


def iterated_sumset(s: GroupSet, n: int, m: int) -> GroupSet:
    """The higher sumset nS - mS, computed by repeated sumset."""
    if n < 0 or m < 0 or n + m < 1:
        raise GroupError("need n, m >= 0 with n + m >= 1")
    _require_nonempty(s)

    def rep(count: int) -> GroupSet:
        acc = make_set(s.spec, [s.spec.zero()])
        for _ in range(count):
            acc = sumset(acc, s, "+")
        return acc

    return sumset(rep(n), rep(m), "-")


def doubling(s: GroupSet) -> Fraction:
    """Doubling constant |S+S| / |S|."""
    _require_nonempty(s)
    return Fraction(len(sumset(s, s, "+")), len(s))


def rep_function(a: GroupSet, b: GroupSet, sign: str = "-") -> dict[Element, int]:
    """Representation counts of A +/- B; absent key means count 0.

    With sign '-', r(x) = |A intersect (B+x)| = #{(a,b) : a-b = x}; with
    sign '+', r(x) = #{(a,b) : a+b = x}.
    """
    spec = same_spec(a, b)
    op = _pair_op(spec, sign)
    counts: dict[Element, int] = {}
    for x in a.elements:
        for y in b.elements:
            key = op(x, y)
            counts[key] = counts.get(key, 0) + 1
    return counts


def energy2(a: GroupSet, b: GroupSet) -> int:
    """Common additive energy: quadruples with a1 - b1 = a2 - b2."""
    _require_nonempty(a, b)
    r = rep_function(a, b, "-")
    return sum(c * c for c in r.values())


def energy4(a: GroupSet, b: GroupSet, c: GroupSet, d: GroupSet) -> int:
    """Four-set energy: tuples in A x B x C x D with a + b = c + d."""
    _require_nonempty(a, b, c, d)
    same_spec(a, b, c, d)
    r_ab = rep_function(a, b, "+")
    r_cd = rep_function(c, d, "+")
    if len(r_cd) < len(r_ab):
        r_ab, r_cd = r_cd, r_ab
    return sum(cnt * r_cd.get(x, 0) for x, cnt in r_ab.items())


def energy2_oracle(a: GroupSet, b: GroupSet) -> int:
    """Literal quadruple enumeration of energy2; the verification oracle."""
    _require_nonempty(a, b)
    spec = same_spec(a, b)
    if (len(a) * len(b)) ** 2 > ORACLE_GUARD:
        raise GroupError("oracle size guard exceeded")
    sub = _subtractor(spec)
    count = 0
    for a1 in a.elements:
        for a2 in a.elements:
            for b1 in b.elements:
                for b2 in b.elements:
                    if sub(a1, b1) == sub(a2, b2):
                        count += 1
    return count


def energy4_oracle(a: GroupSet, b: GroupSet, c: GroupSet, d: GroupSet) -> int:
    """Literal tuple enumeration of energy4; the verification oracle."""
    _require_nonempty(a, b, c, d)
    spec = same_spec(a, b, c, d)
    if len(a) * len(b) * len(c) * len(d) > ORACLE_GUARD:
        raise GroupError("oracle size guard exceeded")
    add = _adder(spec)
    count = 0
    for x in a.elements:
        for y in b.elements:
            lhs = add(x, y)
            for z in c.elements:
                for w in d.elements:
                    if lhs == add(z, w):
                        count += 1
    return count


def is_direct_sum(a: GroupSet, b: GroupSet) -> bool:
    """True iff |A+B| = |A||B|, i.e. all pairwise sums are distinct."""
    _require_nonempty(a, b)
    return len(sumset(a, b, "+")) == len(a) * len(b)


def translate(s: GroupSet, x: Element) -> GroupSet:
    add = _adder(s.spec)
    return GroupSet(s.spec, tuple(sorted(add(e, x) for e in s.elements)))


def intersect(s: GroupSet, members: frozenset[Element]) -> GroupSet:
    return GroupSet(s.spec, tuple(e for e in s.elements if e in members))
