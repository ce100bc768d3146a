"""Linear maps on I(X,K), their normal forms, and the predicate suite.

A map is a d x d matrix over the canonical basis (diagonal coordinates
first, then strict-pair coordinates); row i gives output coordinate i.
A preserver normal form pairs a power-set endomorphism (partition form for
|K| > 2, GF(2)-matrix form for K = F_2) with a linear map into the radical
coordinates annihilating the identity.

The invertibility-preservation decision for prime fields is exact and runs
in two stages:

(i)  every diagonal-output row must be zero on all radical-input columns.
     If some diagonal row reads a radical coordinate with coefficient c,
     the unit ``delta + t*e_uv`` with ``t = -phi(delta)_yy / c`` maps to an
     element with a zero diagonal entry, so the map is not a preserver.
     This works over every field, including F_2.
(ii) given (i), the image diagonal depends only on the input diagonal, so
     scanning all (q-1)^n nonzero diagonal patterns decides the property.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .algebra import FIElement, basis_element, jordan_product
from .endos import PartitionEndo, SubsetMapTable, XorEndo
from .errors import (
    ClassificationError,
    FieldMismatchError,
    GateError,
    InfiniteFieldError,
    MismatchError,
    ParseError,
)
from .fields import Field, PrimeField, Scalar, format_field, parse_field
from .posets import Poset

PRESERVER_CAP_X = 6       # |X| cap for the diagonal-pattern scans
INVERSE_CAP_X = 4         # |X| cap for the exhaustive unit scan
SCAN_CAP = 10**6          # generic workload cap for exhaustive scans
IDEMPOTENT_SCAN_CAP = 10**6


class LinearMap:
    """A K-linear map on I(X,K) as a matrix in the canonical basis."""

    __slots__ = ("poset", "field", "rows")

    def __init__(self, poset: Poset, field: Field,
                 rows: Sequence[Sequence[Scalar]]):
        d = poset.dimension
        self.poset = poset
        self.field = field
        self.rows: tuple[tuple[Scalar, ...], ...] = tuple(tuple(r) for r in rows)
        if len(self.rows) != d or any(len(r) != d for r in self.rows):
            raise MismatchError(f"expected a {d}x{d} matrix")

    @classmethod
    def from_rows(cls, poset: Poset, field: Field,
                  rows: Sequence[Sequence[object]]) -> "LinearMap":
        return cls(poset, field, [[field.scalar(v) for v in row] for row in rows])

    @classmethod
    def identity(cls, poset: Poset, field: Field) -> "LinearMap":
        d = poset.dimension
        z, o = field.zero, field.one
        return cls(poset, field, [[o if i == j else z for j in range(d)] for i in range(d)])

    @classmethod
    def zero(cls, poset: Poset, field: Field) -> "LinearMap":
        d = poset.dimension
        z = field.zero
        return cls(poset, field, [[z] * d for _ in range(d)])

    @classmethod
    def from_basis_images(cls, poset: Poset, field: Field,
                          images: dict[tuple[str, str], FIElement]) -> "LinearMap":
        """Define a map column by column from images of basis elements;
        unnamed basis elements map to zero."""
        d = poset.dimension
        z = field.zero
        rows = [[z] * d for _ in range(d)]
        for pair, image in images.items():
            j = poset.pair_index[pair]
            for i, c in enumerate(image.coeffs):
                rows[i][j] = c
        return cls(poset, field, rows)

    def apply(self, a: FIElement) -> FIElement:
        if a.poset != self.poset:
            raise MismatchError("map and element live over different posets")
        if a.field != self.field:
            raise FieldMismatchError("map and element live over different fields")
        zero = self.field.zero
        out = []
        for row in self.rows:
            acc = zero
            for c, v in zip(row, a.coeffs):
                if c and v:
                    acc = acc + c * v
            out.append(acc)
        return FIElement(self.poset, self.field, out)

    def is_unital(self) -> bool:
        delta = FIElement.delta(self.poset, self.field)
        return self.apply(delta) == delta

    def rank(self) -> int:
        """Exact rank by Gaussian elimination (any supported field)."""
        rows = [list(r) for r in self.rows]
        d = self.poset.dimension
        rank = 0
        col = 0
        while rank < d and col < d:
            pivot = next((r for r in range(rank, d) if rows[r][col]), None)
            if pivot is None:
                col += 1
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inv = rows[rank][col].inverse()
            rows[rank] = [inv * v for v in rows[rank]]
            for r in range(d):
                if r != rank and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[rank])]
            rank += 1
            col += 1
        return rank

    def is_bijective(self) -> bool:
        return self.rank() == self.poset.dimension

    def scale(self, k: Scalar) -> "LinearMap":
        k = self.field.scalar(k)
        return LinearMap(self.poset, self.field,
                         [[k * c for c in row] for row in self.rows])

    def raw_rows(self) -> tuple[tuple[object, ...], ...]:
        return tuple(tuple(c.value for c in row) for row in self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearMap)
            and other.poset == self.poset
            and other.field == self.field
            and other.rows == self.rows
        )

    def __hash__(self) -> int:
        return hash((self.poset, self.field, self.rows))

    def __repr__(self) -> str:
        return f"LinearMap({self.poset.display_name} over {self.field}, d={self.poset.dimension})"


@dataclass(frozen=True)
class PreserverSpec:
    """The normal form of a unital invertibility preserver: a power-set
    endomorphism driving the diagonal plus a radical-valued linear map that
    annihilates the identity. Partition form is used whenever |K| > 2
    (including the rationals), GF(2)-matrix form exactly for K = F_2."""

    poset: Poset
    field: Field
    endo: PartitionEndo | XorEndo
    radical_map: LinearMap

    def __post_init__(self):
        if self.endo.elements != self.poset.elements:
            raise MismatchError("endomorphism ambient set must match the poset elements")
        if self.field.cardinality == 2 and not isinstance(self.endo, XorEndo):
            raise MismatchError("over F_2 the endomorphism must be in GF(2)-matrix form")
        if self.field.cardinality != 2 and not isinstance(self.endo, PartitionEndo):
            raise MismatchError("with |K| > 2 the endomorphism must be in partition form")
        if self.radical_map.poset != self.poset or self.radical_map.field != self.field:
            raise MismatchError("radical map must live over the same poset and field")
        n = self.poset.n
        if any(any(row) for row in self.radical_map.rows[:n]):
            raise MismatchError("radical map must have zero diagonal-output rows")
        delta = FIElement.delta(self.poset, self.field)
        if not self.radical_map.apply(delta).is_zero():
            raise MismatchError("psi must annihilate delta")


def build_preserver(spec: PreserverSpec) -> LinearMap:
    """Assemble the matrix of the preserver described by a normal form.

    Diagonal-output rows copy the input diagonal through the endomorphism
    (output coordinate y reads input coordinate x when y lies in the block
    of x; over F_2 the diagonal block is the GF(2) matrix itself). Radical
    rows come from the radical map.
    """
    poset, field = spec.poset, spec.field
    n, d = poset.n, poset.dimension
    z, o = field.zero, field.one
    rows: list[list[Scalar]] = []
    if isinstance(spec.endo, PartitionEndo):
        owner = spec.endo.owners()
        for y in range(n):
            row = [z] * d
            row[owner[y]] = o
            rows.append(row)
    else:
        cols = spec.endo.columns
        for y in range(n):
            rows.append([o if cols[x] >> y & 1 else z for x in range(n)] + [z] * (d - n))
    rows.extend(list(r) for r in spec.radical_map.rows[n:])
    return LinearMap(poset, field, rows)


def extract_subset_map(phi: LinearMap) -> SubsetMapTable:
    """Extract the subset map A -> {x : phi(e_A)_xx = 1}.

    Every diagonal value of phi(e_A) must be 0 or 1; a value outside {0, 1}
    refutes preserver-ness and is reported with its witness subset.
    """
    from .endos import SUBSET_TABLE_CAP

    poset, field = phi.poset, phi.field
    n = poset.n
    if n > SUBSET_TABLE_CAP:
        raise GateError(
            f"subset-map extraction needs 2^{n} images; cap is |X| <= {SUBSET_TABLE_CAP}",
            size=1 << n)
    elements = poset.elements
    one = field.one
    table = []
    for mask in range(1 << n):
        e_a = FIElement.from_dict(
            poset, field,
            {(x, x): 1 for i, x in enumerate(elements) if mask >> i & 1})
        image = phi.apply(e_a)
        out = 0
        for i in range(n):
            c = image.coeffs[i]
            if c == one:
                out |= 1 << i
            elif c:
                subset = ", ".join(x for j, x in enumerate(elements) if mask >> j & 1)
                raise ClassificationError(
                    "from-vf-to-lb",
                    f"diagonal value {field.format_scalar(c)} outside {{0, 1}} "
                    f"at {elements[i]} for the idempotent of {{{subset}}}",
                    witness=f"A = {{{subset}}}")
        table.append(out)
    return SubsetMapTable(elements, tuple(table))


def extract_radical_map(phi: LinearMap) -> LinearMap:
    """The radical projection of phi: diagonal-output rows zeroed."""
    n = phi.poset.n
    z = phi.field.zero
    d = phi.poset.dimension
    rows = [[z] * d for _ in range(n)]
    rows.extend(list(r) for r in phi.rows[n:])
    return LinearMap(phi.poset, phi.field, rows)


# predicate suite -------------------------------------------------------------


def _require_prime(phi: LinearMap, what: str) -> PrimeField:
    if not isinstance(phi.field, PrimeField):
        raise InfiniteFieldError(
            f"{what} enumerates field elements; over Q use classification instead")
    return phi.field


def _gate(size: int, what: str, gate_override: bool):
    if size > SCAN_CAP and not gate_override:
        raise GateError(f"{what} would scan {size} cases (cap {SCAN_CAP})", size=size)


def find_nonpreserved_unit(phi: LinearMap, gate_override: bool = False) -> FIElement | None:
    """A unit mapped to a non-unit, or None if phi preserves invertibility."""
    field = _require_prime(phi, "preserves_invertibility")
    poset = phi.poset
    n, d = poset.n, poset.dimension
    if n > PRESERVER_CAP_X and not gate_override:
        raise GateError(
            f"preserves_invertibility capped at |X| <= {PRESERVER_CAP_X}", size=n)
    delta = FIElement.delta(poset, field)
    image_delta = phi.apply(delta)
    for i in range(n):
        for j in range(n, d):
            c = phi.rows[i][j]
            if c:
                t = -(image_delta.coeffs[i] * c.inverse())
                x, y = poset.basis_pairs[j]
                return delta + basis_element(poset, field, x, y).scale(t)
    nonzero = field.elements()[1:]
    _gate(len(nonzero) ** n, "preserves_invertibility", gate_override)
    for diag in product(nonzero, repeat=n):
        u = FIElement.from_dict(
            poset, field, {(x, x): v for x, v in zip(poset.elements, diag)})
        if not phi.apply(u).is_unit():
            return u
    return None


def preserves_invertibility(phi: LinearMap, gate_override: bool = False) -> bool:
    """Exact decision of 'units map to units' for prime fields."""
    return find_nonpreserved_unit(phi, gate_override=gate_override) is None


def find_strongness_counterexample(phi: LinearMap,
                                   gate_override: bool = False) -> FIElement | None:
    """A non-unit whose image is a unit, or None if the preserver is strong.

    Requires a unital invertibility preserver; the scan runs over all q^n
    diagonal patterns, which suffices because stage (i) of the preserver
    check makes image diagonals depend on input diagonals only.
    """
    field = _require_prime(phi, "is_strong")
    if not phi.is_unital() or not preserves_invertibility(phi, gate_override=gate_override):
        raise ValueError("is_strong requires a unital invertibility preserver")
    poset = phi.poset
    n = poset.n
    elems = field.elements()
    _gate(len(elems) ** n, "is_strong", gate_override)
    for diag in product(elems, repeat=n):
        if all(diag):
            continue
        a = FIElement.from_dict(
            poset, field, {(x, x): v for x, v in zip(poset.elements, diag)})
        if phi.apply(a).is_unit():
            return a
    return None


def is_strong(phi: LinearMap, gate_override: bool = False) -> bool:
    return find_strongness_counterexample(phi, gate_override=gate_override) is None


def _iter_units(poset: Poset, field: PrimeField):
    n, d = poset.n, poset.dimension
    nonzero = field.elements()[1:]
    rad = field.elements()
    for diag in product(nonzero, repeat=n):
        for tail in product(rad, repeat=d - n):
            yield FIElement(poset, field, diag + tail)


def find_inverse_counterexample(phi: LinearMap,
                                gate_override: bool = False) -> FIElement | None:
    """A unit u with phi(u^-1) != phi(u)^-1, or None (exhaustive over units)."""
    field = _require_prime(phi, "preserves_inverses")
    poset = phi.poset
    n, d = poset.n, poset.dimension
    if n > INVERSE_CAP_X and not gate_override:
        raise GateError(f"preserves_inverses capped at |X| <= {INVERSE_CAP_X}", size=n)
    if not preserves_invertibility(phi, gate_override=gate_override):
        raise ValueError("preserves_inverses requires an invertibility preserver")
    q = field.p
    _gate((q - 1) ** n * q ** (d - n), "preserves_inverses", gate_override)
    for u in _iter_units(poset, field):
        if phi.apply(u.inverse()) != phi.apply(u).inverse():
            return u
    return None


def preserves_inverses(phi: LinearMap, gate_override: bool = False) -> bool:
    return find_inverse_counterexample(phi, gate_override=gate_override) is None


def find_jordan_counterexample(phi: LinearMap) -> tuple[FIElement, FIElement] | None:
    """A basis pair (a, b) with phi(ab + ba) != phi(a)phi(b) + phi(b)phi(a);
    bilinearity makes the basis-pair check sufficient."""
    poset, field = phi.poset, phi.field
    basis = [basis_element(poset, field, x, y) for x, y in poset.basis_pairs]
    images = [phi.apply(b) for b in basis]
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if phi.apply(jordan_product(a, b)) != jordan_product(images[i], images[j]):
                return a, b
    return None


def is_jordan_endo(phi: LinearMap) -> bool:
    return find_jordan_counterexample(phi) is None


def iter_idempotents(poset: Poset, field: PrimeField,
                     gate_override: bool = False):
    """All idempotents of I(X,K), by exhaustive scan (q^d gate)."""
    d = poset.dimension
    size = field.p ** d
    if size > IDEMPOTENT_SCAN_CAP and not gate_override:
        raise GateError(
            f"idempotent scan over {size} elements (cap {IDEMPOTENT_SCAN_CAP})", size=size)
    for values in product(field.elements(), repeat=d):
        a = FIElement(poset, field, values)
        if a.is_idempotent():
            yield a


def spanning_idempotents(poset: Poset, field: Field) -> list[FIElement]:
    """The idempotent spanning family: each e_x, and e_x + e_xy for x < y."""
    out = [basis_element(poset, field, x, x) for x in poset.elements]
    for x, y in poset.strict_pairs:
        out.append(basis_element(poset, field, x, x) + basis_element(poset, field, x, y))
    return out


def find_idempotent_counterexample(phi: LinearMap,
                                   gate_override: bool = False) -> FIElement | None:
    """An idempotent whose image fails to be idempotent, or None.

    Exhaustive over all idempotents when q^d is within the gate; otherwise
    falls back to the spanning family only.
    """
    field = _require_prime(phi, "preserves_idempotents")
    poset = phi.poset
    if field.p ** poset.dimension <= IDEMPOTENT_SCAN_CAP or gate_override:
        candidates = iter_idempotents(poset, field, gate_override=gate_override)
    else:
        candidates = iter(spanning_idempotents(poset, field))
    for e in candidates:
        if not phi.apply(e).is_idempotent():
            return e
    return None


def preserves_idempotents(phi: LinearMap, gate_override: bool = False) -> bool:
    return find_idempotent_counterexample(phi, gate_override=gate_override) is None


# text formats ----------------------------------------------------------------

def _parse_header(lines: list[tuple[int, str]], kind: str,
                  poset_resolver) -> tuple[Poset, Field, int]:
    """Common 'kind / field: / poset:' header; returns the next line index."""
    if not lines or lines[0][1] != kind:
        lineno = lines[0][0] if lines else 1
        raise ParseError(f"expected {kind!r} header", lineno)
    field = poset = None
    at = 1
    while at < len(lines) and (field is None or poset is None):
        lineno, line = lines[at]
        if line.startswith("field:"):
            field = parse_field(line[len("field:"):].strip())
        elif line.startswith("poset:"):
            poset = poset_resolver(line[len("poset:"):].strip())
        else:
            raise ParseError(f"expected 'field:' or 'poset:' line, got {line!r}", lineno)
        at += 1
    if field is None or poset is None:
        raise ParseError("header must declare both 'field:' and 'poset:'")
    return poset, field, at


def _significant_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def parse_linear_map(text: str, poset: Poset | None = None,
                     field: Field | None = None) -> LinearMap:
    """Parse the map file format: ``map`` header, field and poset lines,
    then d rows of d scalars. Explicit poset/field arguments, when given,
    must agree with the declared ones."""
    from .posets import resolve_poset

    lines = _significant_lines(text)
    file_poset, file_field, at = _parse_header(lines, "map", resolve_poset)
    if poset is not None and poset != file_poset:
        raise ParseError("map file declares a different poset than requested")
    if field is not None and field != file_field:
        raise ParseError("map file declares a different field than requested")
    poset, field = file_poset, file_field
    d = poset.dimension
    rows = []
    for lineno, line in lines[at:]:
        entries = line.split()
        if len(entries) != d:
            raise ParseError(
                f"expected {d} entries per matrix row, got {len(entries)}", lineno)
        rows.append([field.parse_scalar(tok) for tok in entries])
    if len(rows) != d:
        raise ParseError(f"expected {d} matrix rows, got {len(rows)}")
    return LinearMap(poset, field, rows)


def _poset_reference(poset: Poset) -> str:
    if poset.name is None:
        raise ValueError(
            "cannot serialize over an anonymous poset; save it to a poset "
            "file and construct it through resolve_poset, or use a builtin")
    return poset.name


def format_linear_map(phi: LinearMap) -> str:
    header = (f"map\nfield: {format_field(phi.field)}\n"
              f"poset: {_poset_reference(phi.poset)}\n")
    body = "\n".join(
        " ".join(phi.field.format_scalar(c) for c in row) for row in phi.rows)
    return header + body + "\n"


def parse_preserver_spec(text: str) -> PreserverSpec:
    """Parse the spec file format: ``preserver-spec`` header, field and poset
    lines, a ``lambda:``/``xor-lambda:`` line, then ``psi:`` with one row per
    radical coordinate."""
    from .endos import parse_endo_line
    from .posets import resolve_poset

    lines = _significant_lines(text)
    poset, field, at = _parse_header(lines, "preserver-spec", resolve_poset)
    if at >= len(lines):
        raise ParseError("missing lambda line")
    lineno, line = lines[at]
    endo = parse_endo_line(line, poset.elements)
    if field.cardinality == 2 and isinstance(endo, PartitionEndo):
        raise ParseError("over Fp 2 use 'xor-lambda:'", lineno)
    if field.cardinality != 2 and isinstance(endo, XorEndo):
        raise ParseError("'xor-lambda:' only applies over Fp 2", lineno)
    at += 1
    if at >= len(lines) or lines[at][1] != "psi:":
        raise ParseError("missing 'psi:' block")
    at += 1
    n, d = poset.n, poset.dimension
    m = d - n
    rows = [[field.zero] * d for _ in range(n)]
    psi_rows = lines[at:]
    if len(psi_rows) != m:
        raise ParseError(f"psi block needs {m} rows, got {len(psi_rows)}")
    for lineno, line in psi_rows:
        entries = line.split()
        if len(entries) != d:
            raise ParseError(f"expected {d} entries per psi row, got {len(entries)}", lineno)
        rows.append([field.parse_scalar(tok) for tok in entries])
    radical_map = LinearMap(poset, field, rows)
    delta = FIElement.delta(poset, field)
    if not radical_map.apply(delta).is_zero():
        raise ParseError("psi must annihilate delta")
    try:
        return PreserverSpec(poset, field, endo, radical_map)
    except MismatchError as exc:
        raise ParseError(str(exc)) from None


def format_preserver_spec(spec: PreserverSpec) -> str:
    from .endos import format_endo

    n = spec.poset.n
    header = (f"preserver-spec\nfield: {format_field(spec.field)}\n"
              f"poset: {_poset_reference(spec.poset)}\n{format_endo(spec.endo)}\npsi:\n")
    body = "\n".join(
        " ".join(spec.field.format_scalar(c) for c in row)
        for row in spec.radical_map.rows[n:])
    return header + body + ("\n" if body else "")


def linear_map_to_json(phi: LinearMap) -> list[list[str]]:
    return [[phi.field.format_scalar(c) for c in row] for row in phi.rows]
