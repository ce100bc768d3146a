"""Endomorphisms of the power set P(X) of a finite ambient set X.

Subsets are int bitmasks over a fixed ordered tuple of element labels. Two
normal forms are implemented: Boolean-algebra endomorphisms as partitions of
X (the block of x is the image of the singleton {x}), and additive
endomorphisms of (P(X), symmetric difference) fixing X as GF(2) matrices,
stored by columns. Arbitrary maps P(X) -> P(X) are held as explicit tables
until their structure is known.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Union

from .errors import ClassificationError, GateError, MismatchError, ParseError

SUBSET_TABLE_CAP = 12   # 2^n-entry tables
PREDICATE_CAP = 8       # exhaustive pair scans over P(X) x P(X)
ENUMERATION_CAP = 4     # |X|^|X| or 2^(|X|(|X|-1)) streams


def mask_of(elements: tuple[str, ...], labels: Iterable[str]) -> int:
    index = {x: i for i, x in enumerate(elements)}
    m = 0
    for lbl in labels:
        if lbl not in index:
            raise MismatchError(f"label {lbl!r} not in ambient set {elements}")
        m |= 1 << index[lbl]
    return m


def labels_of(elements: tuple[str, ...], mask: int) -> frozenset[str]:
    return frozenset(x for i, x in enumerate(elements) if mask >> i & 1)


@dataclass(frozen=True)
class PartitionEndo:
    """A Boolean-algebra endomorphism of P(X), stored as the partition of X
    into blocks indexed by X (empty blocks allowed): the image of a subset
    is the disjoint union of the blocks of its members."""

    elements: tuple[str, ...]
    blocks: tuple[int, ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(self.blocks) != n:
            raise MismatchError("need one block per element")
        full = (1 << n) - 1
        union = 0
        for b in self.blocks:
            if union & b:
                raise MismatchError("blocks are not pairwise disjoint")
            union |= b
        if union != full:
            raise MismatchError("blocks do not cover the ambient set")

    @property
    def n(self) -> int:
        return len(self.elements)

    def apply_mask(self, mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= self.blocks[i]
            mask >>= 1
            i += 1
        return out

    def apply(self, labels: Iterable[str]) -> frozenset[str]:
        return labels_of(self.elements, self.apply_mask(mask_of(self.elements, labels)))

    def owners(self) -> tuple[int, ...]:
        """owners()[y] = the unique x-index whose block contains y."""
        owner = [0] * self.n
        for i, b in enumerate(self.blocks):
            for j in range(self.n):
                if b >> j & 1:
                    owner[j] = i
        return tuple(owner)

    def table(self) -> "SubsetMapTable":
        return SubsetMapTable(
            self.elements,
            tuple(self.apply_mask(m) for m in range(1 << self.n)),
        )

    def is_injective(self) -> bool:
        """Injective on P(X) iff no block is empty."""
        return all(self.blocks)

    def automorphism(self) -> dict[str, str] | None:
        """The underlying bijection x -> the element of its block, when every
        block is a singleton; None otherwise."""
        out = {}
        for i, b in enumerate(self.blocks):
            if bin(b).count("1") != 1:
                return None
            out[self.elements[i]] = self.elements[b.bit_length() - 1]
        return out


@dataclass(frozen=True)
class XorEndo:
    """An additive endomorphism of (P(X), symmetric difference) fixing X,
    stored as the GF(2) matrix columns: columns[i] is the image of {x_i}."""

    elements: tuple[str, ...]
    columns: tuple[int, ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(self.columns) != n:
            raise MismatchError("need one column per element")
        full = (1 << n) - 1
        acc = 0
        for c in self.columns:
            acc ^= c
        if acc != full:
            raise MismatchError("columns must XOR to the full set (the map must fix X)")

    @property
    def n(self) -> int:
        return len(self.elements)

    def apply_mask(self, mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out ^= self.columns[i]
            mask >>= 1
            i += 1
        return out

    def apply(self, labels: Iterable[str]) -> frozenset[str]:
        return labels_of(self.elements, self.apply_mask(mask_of(self.elements, labels)))

    def table(self) -> "SubsetMapTable":
        return SubsetMapTable(
            self.elements,
            tuple(self.apply_mask(m) for m in range(1 << self.n)),
        )

    def is_injective(self) -> bool:
        return _gf2_rank(self.columns) == self.n

    def automorphism(self) -> "XorEndo | None":
        """The inverse map when the matrix is invertible over GF(2); None
        otherwise."""
        rows = _transpose(self.columns, self.n)
        inv_rows = _gf2_inverse(rows, self.n)
        if inv_rows is None:
            return None
        return XorEndo(self.elements, _transpose(inv_rows, self.n))


@dataclass(frozen=True)
class SubsetMapTable:
    """An arbitrary map P(X) -> P(X) as an explicit 2^|X| table, used for
    maps extracted from linear maps before their structure is known."""

    elements: tuple[str, ...]
    table: tuple[int, ...]

    def __post_init__(self):
        n = len(self.elements)
        if n > SUBSET_TABLE_CAP:
            raise GateError(
                f"subset table needs 2^{n} entries; cap is |X| <= {SUBSET_TABLE_CAP}",
                size=1 << n)
        if len(self.table) != 1 << n:
            raise MismatchError(f"table must have 2^{n} entries")

    @property
    def n(self) -> int:
        return len(self.elements)

    def apply_mask(self, mask: int) -> int:
        return self.table[mask]

    def apply(self, labels: Iterable[str]) -> frozenset[str]:
        return labels_of(self.elements, self.table[mask_of(self.elements, labels)])


AnyEndo = Union[PartitionEndo, XorEndo, SubsetMapTable]


# GF(2) linear algebra on bitmask rows ------------------------------------

def _transpose(masks: tuple[int, ...], n: int) -> tuple[int, ...]:
    return tuple(
        sum(((masks[j] >> i) & 1) << j for j in range(n)) for i in range(n)
    )


def _gf2_rank(masks: tuple[int, ...]) -> int:
    rank = 0
    basis: list[int] = []
    for m in masks:
        for b in basis:
            m = min(m, m ^ b)
        if m:
            basis.append(m)
            basis.sort(reverse=True)
            rank += 1
    return rank


def _gf2_inverse(rows: tuple[int, ...], n: int) -> tuple[int, ...] | None:
    work = list(rows)
    aug = [1 << i for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r] >> col & 1), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for r in range(n):
            if r != col and work[r] >> col & 1:
                work[r] ^= work[col]
                aug[r] ^= aug[col]
    return tuple(aug)


# structural predicates ------------------------------------------------------

def _predicate_gate(table: SubsetMapTable, what: str, gate_override: bool):
    if table.n > PREDICATE_CAP and not gate_override:
        raise GateError(
            f"{what} scans {4**table.n} subset pairs; cap is |X| <= {PREDICATE_CAP}",
            size=4**table.n)


def is_separating(table: SubsetMapTable, gate_override: bool = False) -> bool:
    """Disjoint subsets always map to disjoint subsets."""
    _predicate_gate(table, "is_separating", gate_override)
    full = (1 << table.n) - 1
    for a in range(full + 1):
        rest = full & ~a
        b = rest
        while True:
            if table.table[a] & table.table[b]:
                return False
            if b == 0:
                break
            b = (b - 1) & rest
    return True


def is_boolean_endo(table: SubsetMapTable, gate_override: bool = False) -> bool:
    """Fixes X, commutes with complement, and preserves intersections."""
    _predicate_gate(table, "is_boolean_endo", gate_override)
    full = (1 << table.n) - 1
    t = table.table
    if t[full] != full:
        return False
    for a in range(full + 1):
        if t[full & ~a] != full & ~t[a]:
            return False
    for a in range(full + 1):
        for b in range(full + 1):
            if t[a & b] != t[a] & t[b]:
                return False
    return True


def to_partition(table: SubsetMapTable, gate_override: bool = False) -> PartitionEndo:
    """Recover the partition normal form of a Boolean-algebra endomorphism.

    The blocks are the images of singletons; the result's table is checked to
    reproduce the input exactly.
    """
    if not is_boolean_endo(table, gate_override=gate_override):
        raise ClassificationError(
            "lb-preserves-diff-and-cap",
            "table is not a Boolean algebra endomorphism of P(X)")
    endo = PartitionEndo(table.elements,
                         tuple(table.table[1 << i] for i in range(table.n)))
    if endo.table() != table:
        raise ClassificationError(
            "lb-preserves-diff-and-cap",
            "table is not determined by its singleton images")
    return endo


def to_xor_endo(table: SubsetMapTable) -> XorEndo:
    """Recover the GF(2)-matrix normal form of an additive map fixing X."""
    n = table.n
    full = (1 << n) - 1
    columns = tuple(table.table[1 << i] for i in range(n))
    acc = 0
    for c in columns:
        acc ^= c
    if table.table[full] != full or acc != full:
        raise ClassificationError(
            "lb-prese-symm-diff",
            "table does not fix X, or its singleton images do not combine to X")
    endo = XorEndo(table.elements, columns)
    for m in range(full + 1):
        if endo.apply_mask(m) != table.table[m]:
            raise ClassificationError(
                "lb-prese-symm-diff",
                "table is not additive over symmetric difference",
                witness=f"A = {{{', '.join(sorted(labels_of(table.elements, m)))}}}")
    return endo


def check_partition_preservation(endo: AnyEndo, parts: list[Iterable[str]]) -> bool:
    """True iff the images of the parts of a partition of X still cover X."""
    elements = endo.elements
    full = (1 << len(elements)) - 1
    masks = [mask_of(elements, part) for part in parts]
    union = 0
    for m in masks:
        if union & m:
            raise ValueError("parts are not pairwise disjoint")
        union |= m
    if union != full:
        raise ValueError("parts do not cover the ambient set")
    image = 0
    for m in masks:
        image |= endo.apply_mask(m)
    return image == full


def enumerate_endos(elements: tuple[str, ...], regime: str,
                    gate_override: bool = False) -> Iterator[AnyEndo]:
    """Stream every endomorphism in the given normal form.

    ``boolean`` streams all PartitionEndos (one per function X -> X);
    ``xor`` streams all XorEndos (all GF(2) matrices fixing the all-ones
    vector).
    """
    n = len(elements)
    if n > ENUMERATION_CAP and not gate_override:
        raise GateError(
            f"endomorphism stream over |X| = {n}; cap is |X| <= {ENUMERATION_CAP}",
            size=n**n if regime == "boolean" else 1 << (n * (n - 1)))
    if regime == "boolean":
        for owner in product(range(n), repeat=n):
            blocks = [0] * n
            for y, x in enumerate(owner):
                blocks[x] |= 1 << y
            yield PartitionEndo(elements, tuple(blocks))
    elif regime == "xor":
        full = (1 << n) - 1
        if n == 1:
            yield XorEndo(elements, (1,))
            return
        for head in product(range(1 << n), repeat=n - 1):
            last = full
            for c in head:
                last ^= c
            yield XorEndo(elements, head + (last,))
    else:
        raise ValueError(f"unknown regime: {regime!r} (expected 'boolean' or 'xor')")


# text format ---------------------------------------------------------------

def _parse_block(token: str, elements: tuple[str, ...], what: str) -> tuple[str, int]:
    lhs, sep, rhs = token.partition("->")
    if not sep or not rhs.startswith("{") or not rhs.endswith("}"):
        raise ParseError(f"bad {what} entry: {token!r} (expected x->{{a,b}})")
    inner = rhs[1:-1].strip()
    labels = [t.strip() for t in inner.split(",")] if inner else []
    try:
        return lhs, mask_of(elements, labels)
    except MismatchError as exc:
        raise ParseError(str(exc)) from None


def parse_endo_line(line: str, elements: tuple[str, ...]) -> AnyEndo:
    """Parse ``lambda: a->{a,b} b->{}`` or ``xor-lambda: a->{a} b->{a,b}``."""
    line = line.strip()
    if line.startswith("lambda:"):
        kind, body = "lambda", line[len("lambda:"):]
    elif line.startswith("xor-lambda:"):
        kind, body = "xor-lambda", line[len("xor-lambda:"):]
    else:
        raise ParseError(f"expected 'lambda:' or 'xor-lambda:' line, got {line!r}")
    images: dict[str, int] = {}
    for token in body.split():
        lbl, mask = _parse_block(token, elements, kind)
        if lbl in images:
            raise ParseError(f"duplicate {kind} entry for {lbl!r}")
        images[lbl] = mask
    missing = [x for x in elements if x not in images]
    if missing:
        raise ParseError(f"{kind} line misses elements: {' '.join(missing)}")
    extra = [x for x in images if x not in elements]
    if extra:
        raise ParseError(f"{kind} line names unknown elements: {' '.join(extra)}")
    masks = tuple(images[x] for x in elements)
    try:
        if kind == "lambda":
            return PartitionEndo(elements, masks)
        return XorEndo(elements, masks)
    except MismatchError as exc:
        raise ParseError(str(exc)) from None


def format_endo(endo: PartitionEndo | XorEndo) -> str:
    prefix = "lambda" if isinstance(endo, PartitionEndo) else "xor-lambda"
    masks = endo.blocks if isinstance(endo, PartitionEndo) else endo.columns
    entries = []
    for x, m in zip(endo.elements, masks):
        inside = ",".join(x for i, x in enumerate(endo.elements) if m >> i & 1)
        entries.append(f"{x}->{{{inside}}}")
    return f"{prefix}: " + " ".join(entries)


def endo_to_json(endo: PartitionEndo | XorEndo) -> dict:
    if isinstance(endo, PartitionEndo):
        kind, masks, key = "partition", endo.blocks, "blocks"
    else:
        kind, masks, key = "xor", endo.columns, "columns"
    return {
        "kind": kind,
        key: {
            x: sorted(labels_of(endo.elements, m), key=endo.elements.index)
            for x, m in zip(endo.elements, masks)
        },
    }
