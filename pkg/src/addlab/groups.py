"""Elements and finite subsets of the two supported ambient groups.

Supported groups are the integer lattice Z^d and the vector space F_p^n
over a prime field with p > 2.  Elements are plain tuples of Python ints
(arbitrary precision in the lattice case, reduced to [0, p) in the prime
field case), so they hash, compare and pickle with no ceremony.  Sets are
immutable, deduplicated and kept in lexicographic order on the coordinate
vectors; every greedy procedure in the package breaks ties by this order,
which is what makes all outputs deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

INTEGER_LATTICE = "integer-lattice"
PRIME_FIELD = "prime-field-vectors"

Element = tuple[int, ...]


class GroupError(ValueError):
    """Malformed group spec, element, or set operation input."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class GroupSpec:
    """Descriptor of an ambient group: Z^d or F_p^n."""

    kind: str
    dimension: int
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in (INTEGER_LATTICE, PRIME_FIELD):
            raise GroupError(f"unknown group kind {self.kind!r}")
        if self.dimension < 1:
            raise GroupError("dimension must be >= 1")
        if self.kind == PRIME_FIELD:
            p = self.modulus
            if p is None or p <= 2 or not _is_prime(p):
                raise GroupError(f"modulus must be a prime > 2, got {p!r}")
        elif self.modulus is not None:
            raise GroupError("integer-lattice spec takes no modulus")

    @property
    def is_modular(self) -> bool:
        return self.kind == PRIME_FIELD

    def zero(self) -> Element:
        return (0,) * self.dimension

    def reduce(self, coords: Sequence[int]) -> Element:
        """Canonical form of a coordinate vector in this group."""
        if len(coords) != self.dimension:
            raise GroupError(
                f"element has {len(coords)} coordinates, spec wants {self.dimension}"
            )
        if self.is_modular:
            p = self.modulus
            return tuple(int(c) % p for c in coords)
        return tuple(int(c) for c in coords)

    def to_string(self) -> str:
        if self.is_modular:
            return f"fp:{self.modulus}:{self.dimension}"
        return f"z:{self.dimension}"

    def __str__(self) -> str:
        return self.to_string()


def parse_group_spec(text: str) -> GroupSpec:
    """Parse a spec string: "z:<d>" for Z^d or "fp:<p>:<n>" for F_p^n."""
    parts = text.strip().split(":")
    try:
        if parts[0] == "z" and len(parts) == 2:
            return GroupSpec(INTEGER_LATTICE, int(parts[1]))
        if parts[0] == "fp" and len(parts) == 3:
            return GroupSpec(PRIME_FIELD, int(parts[2]), int(parts[1]))
    except GroupError:
        raise
    except ValueError:
        pass
    raise GroupError(f"cannot parse group spec {text!r} (want 'z:<d>' or 'fp:<p>:<n>')")


def combine(spec: GroupSpec, a: Sequence[int], b: Sequence[int], sign: str = "+") -> Element:
    """Componentwise a +/- b, reduced mod p in the prime-field kind."""
    if len(a) != spec.dimension or len(b) != spec.dimension:
        raise GroupError("element dimension does not match spec")
    if sign == "+":
        raw = tuple(x + y for x, y in zip(a, b))
    elif sign == "-":
        raw = tuple(x - y for x, y in zip(a, b))
    else:
        raise GroupError(f"sign must be '+' or '-', got {sign!r}")
    if spec.is_modular:
        p = spec.modulus
        return tuple(c % p for c in raw)
    return raw


def negate(spec: GroupSpec, a: Sequence[int]) -> Element:
    return combine(spec, spec.zero(), a, "-")


class GroupSet:
    """Immutable, canonically ordered finite subset of an ambient group.

    Construct through :func:`make_set`; the constructor trusts its inputs.
    """

    __slots__ = ("spec", "elements", "_members", "_hash")

    def __init__(self, spec: GroupSpec, elements: tuple[Element, ...]):
        self.spec = spec
        self.elements = elements
        self._members = frozenset(elements)
        self._hash: int | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self._members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupSet):
            return NotImplemented
        return self.spec == other.spec and self.elements == other.elements

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.spec, self.elements))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(format_element(e) for e in self.elements[:8])
        if len(self.elements) > 8:
            inner += f", ... ({len(self.elements)} total)"
        return f"GroupSet({self.spec}; {{{inner}}})"

    def member_set(self) -> frozenset[Element]:
        return self._members

    def is_empty(self) -> bool:
        return not self.elements

    def restrict(self, members: Iterable[Element]) -> "GroupSet":
        """Subset of this set given by membership (keeps canonical order)."""
        keep = frozenset(members)
        return GroupSet(self.spec, tuple(e for e in self.elements if e in keep))


def make_set(spec: GroupSpec, items: Iterable[Sequence[int]]) -> GroupSet:
    """Deduplicated, canonically sorted set of elements conforming to spec."""
    reduced = {spec.reduce(item) for item in items}
    return GroupSet(spec, tuple(sorted(reduced)))


def same_spec(*sets: GroupSet) -> GroupSpec:
    spec = sets[0].spec
    for s in sets[1:]:
        if s.spec != spec:
            raise GroupError(f"group spec mismatch: {spec} vs {s.spec}")
    return spec


def canonical_key(s: GroupSet) -> tuple[Element, ...]:
    """Total order key for sets: lexicographic on the ordered element tuple."""
    return s.elements


def format_element(e: Element) -> str:
    return ",".join(str(c) for c in e)


def parse_element(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise GroupError(f"cannot parse element {text!r}")


# --- set file format -------------------------------------------------------
#
# UTF-8 text; '#' starts a comment; first significant line is
# "group <spec-string>"; every further line is one element, coordinates
# comma-separated.  The writer emits the canonical (sorted) form, so
# write -> read -> write round-trips bit-exactly.


def format_set_text(s: GroupSet) -> str:
    lines = [f"group {s.spec.to_string()}"]
    lines.extend(format_element(e) for e in s.elements)
    return "\n".join(lines) + "\n"


def parse_set_text(text: str) -> GroupSet:
    spec: GroupSpec | None = None
    items: list[tuple[int, ...]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if spec is None:
            if not line.startswith("group"):
                raise GroupError("set file must start with a 'group <spec>' line")
            spec = parse_group_spec(line[len("group"):].strip())
            continue
        items.append(parse_element(line))
    if spec is None:
        raise GroupError("set file has no 'group <spec>' line")
    return make_set(spec, items)


def read_set_file(path: str) -> GroupSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_set_text(fh.read())


def write_set_file(path: str, s: GroupSet) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_set_text(s))
