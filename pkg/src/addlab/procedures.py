"""Certificate-producing constructive procedures on finite sets.

Three deterministic algorithms, each returning a result object whose
stated guarantees can be (and are) rechecked from scratch:

* translate peeling: strip maximal translate intersections B+x off A
  until the residual common energy drops below half of the original;
* greedy covering: a maximal Z inside A whose translates of a given
  subset are pairwise disjoint, certifying A is covered by few translates;
* translate saturation: absorb heavy translate intersections into a
  growing core until every residual intersection is below a threshold.

Ties in every greedy argmax are broken toward the lexicographically
least translate, so identical inputs give identical certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groups import Element, GroupError, GroupSet, same_spec
from .setops import energy2, rep_function, sumset, translate


@dataclass(frozen=True)
class SchoenResult:
    """Translate set X, the covered part A intersect (B+X), and the
    energy parameter K with E(A,B) = |A||B|^2 / K."""

    x: GroupSet
    covered: GroupSet
    k: Fraction
    steps: int


@dataclass(frozen=True)
class CoverResult:
    """Covering certificate: translates of the core over Z are pairwise
    disjoint (|core + Z| = |core||Z|) and A lies in core - core + Z."""

    z: GroupSet
    translate_union_size: int
    product_size: int
    containment_ok: bool


@dataclass(frozen=True)
class SaturationResult:
    """Saturated core Y >= core, residue Z = A \\ Y, and the absorbed
    translate witnesses in order."""

    y: GroupSet
    z: GroupSet
    translates_used: tuple[Element, ...]
    steps: int


def schoen_cover(a: GroupSet, b: GroupSet) -> SchoenResult:
    """Peel maximal translates of B off A while half the energy remains.

    Each round picks the x maximizing |A_cur intersect (B+x)| (least x on
    ties), records it in X, and removes that intersection from A_cur; the
    loop runs while E(A_cur, B) >= E(A, B)/2.  The result satisfies
    |A|/(4K|B|) <= |X| <= 2K|A|/|B| and |covered| >= |A|/(4K) exactly.
    """
    spec = same_spec(a, b)
    if a.is_empty() or b.is_empty():
        raise GroupError("peeling requires nonempty sets")
    if len(a) < len(b):
        raise GroupError("peeling requires |A| >= |B|")
    e_total = energy2(a, b)
    k = Fraction(len(a) * len(b) ** 2, e_total)
    half = Fraction(e_total, 2)
    b_members = b.member_set()
    sub = (lambda u, v: tuple((x - y) % spec.modulus for x, y in zip(u, v))) \
        if spec.is_modular else (lambda u, v: tuple(x - y for x, y in zip(u, v)))
    current = a
    xs: list[Element] = []
    while not current.is_empty() and energy2(current, b) >= half:
        counts = rep_function(current, b, "-")
        best_x = min(x for x, c in counts.items() if c == max(counts.values()))
        xs.append(best_x)
        keep = tuple(e for e in current.elements if sub(e, best_x) not in b_members)
        current = GroupSet(spec, keep)
    x_set = GroupSet(spec, tuple(sorted(set(xs))))
    covered_members = [e for e in a.elements
                       if any(sub(e, x) in b_members for x in xs)]
    covered = GroupSet(spec, tuple(covered_members))
    # proof-side guards; cannot fail for a faithful run
    assert Fraction(len(x_set) * len(b), 2 * k) <= len(a)
    assert Fraction(len(a), 4 * k * len(b)) <= len(x_set) <= Fraction(2 * k * len(a), len(b))
    assert len(covered) >= Fraction(len(a), 4 * k)
    return SchoenResult(x=x_set, covered=covered, k=k, steps=len(xs))


def check_schoen(result: SchoenResult, a: GroupSet, b: GroupSet) -> dict[str, bool]:
    """Recompute the peeling guarantees from scratch."""
    k = Fraction(len(a) * len(b) ** 2, energy2(a, b))
    cov = sumset(b, result.x, "+")
    covered = a.restrict(cov.member_set())
    nx = len(result.x)
    return {
        "k_matches": k == result.k,
        "covered_matches": covered == result.covered,
        "x_lower": Fraction(len(a), 4 * k * len(b)) <= nx,
        "x_upper": nx <= Fraction(2 * k * len(a), len(b)),
        "covered_lower": len(result.covered) >= Fraction(len(a), 4 * k),
    }


def ruzsa_cover(a: GroupSet, a_prime: GroupSet) -> CoverResult:
    """Greedy maximal Z in A with pairwise disjoint translates A'+z.

    Scans A in canonical order, keeping z whenever A'+z avoids everything
    kept so far.  Maximality certifies A is contained in A' - A' + Z.
    """
    spec = same_spec(a, a_prime)
    if a.is_empty() or a_prime.is_empty():
        raise GroupError("covering requires nonempty sets")
    if not a_prime.member_set() <= a.member_set():
        raise GroupError("covering requires A' to be a subset of A")
    occupied: set[Element] = set()
    z_elems: list[Element] = []
    for cand in a.elements:
        shifted = translate(a_prime, cand)
        if occupied.isdisjoint(shifted.elements):
            z_elems.append(cand)
            occupied.update(shifted.elements)
    z = GroupSet(spec, tuple(z_elems))
    diff = sumset(a_prime, a_prime, "-")
    reach = sumset(diff, z, "+").member_set()
    containment = a.member_set() <= reach
    return CoverResult(
        z=z,
        translate_union_size=len(occupied),
        product_size=len(a_prime) * len(z),
        containment_ok=containment,
    )


def check_cover(result: CoverResult, a: GroupSet, a_prime: GroupSet) -> dict[str, bool]:
    """Recheck disjointness and containment element by element."""
    union = sumset(a_prime, result.z, "+")
    reach = sumset(sumset(a_prime, a_prime, "-"), result.z, "+").member_set()
    return {
        "direct": len(union) == len(a_prime) * len(result.z),
        "union_size_matches": len(union) == result.translate_union_size,
        "containment": all(e in reach for e in a.elements),
        "z_inside_a": result.z.member_set() <= a.member_set(),
    }


def translate_saturate(a: GroupSet, a_prime: GroupSet, t: Fraction | int
                       ) -> SaturationResult:
    """Absorb translate intersections of weight >= |A'|/T into the core.

    Starting from Y = A' and Z = A \\ A', repeatedly pick the x maximizing
    |Z intersect (A'+x)| (least x on ties); while that maximum reaches
    |A'|/T, move the intersection into Y.  On exit every residual
    intersection is below the threshold and the number of rounds is at
    most floor(T|A| / |A'|).
    """
    t = Fraction(t)
    if t < 1:
        raise GroupError("threshold parameter T must be >= 1")
    spec = same_spec(a, a_prime)
    if a_prime.is_empty():
        raise GroupError("saturation requires a nonempty subset")
    if not a_prime.member_set() <= a.member_set():
        raise GroupError("saturation requires A' to be a subset of A")
    threshold = Fraction(len(a_prime), 1) / t
    prime_members = a_prime.member_set()
    sub = (lambda u, v: tuple((x - y) % spec.modulus for x, y in zip(u, v))) \
        if spec.is_modular else (lambda u, v: tuple(x - y for x, y in zip(u, v)))
    z = GroupSet(spec, tuple(e for e in a.elements if e not in prime_members))
    y_members = set(a_prime.elements)
    used: list[Element] = []
    while not z.is_empty():
        counts = rep_function(z, a_prime, "-")
        top = max(counts.values())
        if top < threshold:
            break
        best_x = min(x for x, c in counts.items() if c == top)
        used.append(best_x)
        absorbed = [e for e in z.elements if sub(e, best_x) in prime_members]
        y_members.update(absorbed)
        z = GroupSet(spec, tuple(e for e in z.elements if e not in y_members))
    y = GroupSet(spec, tuple(e for e in a.elements if e in y_members))
    steps = len(used)
    assert steps <= (t * len(a)) / len(a_prime)
    return SaturationResult(y=y, z=z, translates_used=tuple(used), steps=steps)


def check_saturation(result: SaturationResult, a: GroupSet, a_prime: GroupSet,
                     t: Fraction | int) -> dict[str, bool]:
    """Post-hoc scan of every translate with nonempty residual intersection."""
    t = Fraction(t)
    threshold = Fraction(len(a_prime), 1) / t
    parts_ok = True
    if not result.z.is_empty():
        counts = rep_function(result.z, a_prime, "-")
        parts_ok = all(c <= threshold for c in counts.values())
    y_members = result.y.member_set()
    z_members = result.z.member_set()
    return {
        "residual_below_threshold": parts_ok,
        "partition": (y_members | z_members) == a.member_set()
                     and not (y_members & z_members),
        "core_inside_y": a_prime.member_set() <= y_members,
        "step_bound": result.steps <= (t * len(a)) / len(a_prime),
    }
