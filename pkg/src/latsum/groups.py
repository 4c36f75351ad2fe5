"""Finite groups as dense multiplication tables, plus the standard constructors.

Elements of a group of order n are the indices 0..n-1 with the identity
pinned at index 0; table[a][b] is the index of the product a*b.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .arith import factorize, is_prime
from .errors import (
    InvalidSpec,
    InvalidTable,
    NotAPermutation,
    NotNormal,
    OrderCapExceeded,
)

DEFAULT_ORDER_CAP = 2000

# full n^3 associativity scans are affordable up to here; above it we sample
FULL_ASSOC_CHECK_MAX = 512
ASSOC_SAMPLE_SEED = 0xA55


class Group:
    """Finite group on elements 0..n-1 (identity 0) defined by its Cayley table."""

    __slots__ = ("order", "table", "inverse", "label", "_element_orders", "_abelian", "_gens")

    def __init__(self, table: list[list[int]], label: str = "group"):
        n = len(table)
        if n == 0:
            raise InvalidTable("empty table")
        if table[0] != list(range(n)) or any(table[a][0] != a for a in range(n)):
            raise InvalidTable("identity is not at index 0")
        self.order = n
        self.table = table
        self.label = label
        try:
            self.inverse = [row.index(0) for row in table]
        except ValueError as exc:
            raise InvalidTable("some element has no inverse") from exc
        self._element_orders: tuple[int, ...] | None = None
        self._abelian: bool | None = None
        self._gens: tuple[int, ...] | None = None

    def __repr__(self) -> str:
        return f"Group({self.label!r}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conjugate(self, a: int, x: int) -> int:
        """x * a * x^-1."""
        t = self.table
        return t[t[x][a]][self.inverse[x]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        out = 0
        row = a
        while k:
            if k & 1:
                out = self.table[out][row]
            k >>= 1
            row = self.table[row][row] if k else row
        return out

    def element_order(self, a: int) -> int:
        """Least k >= 1 with a^k = identity; always divides the group order."""
        k = 1
        x = a
        table = self.table
        while x != 0:
            x = table[x][a]
            k += 1
        assert self.order % k == 0, f"element order {k} does not divide {self.order}"
        return k

    def element_orders(self) -> tuple[int, ...]:
        if self._element_orders is None:
            self._element_orders = tuple(self.element_order(a) for a in range(self.order))
        return self._element_orders

    def exponent(self) -> int:
        return math.lcm(*self.element_orders())

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            table = self.table
            self._abelian = all(
                table[a][b] == table[b][a]
                for a in range(1, self.order)
                for b in range(1, a)
            )
        return self._abelian

    @property
    def is_cyclic(self) -> bool:
        return self.order in self.element_orders()

    def p_group_prime(self) -> int | None:
        """The prime p if the order is a power p^m with m >= 1, else None."""
        fact = factorize(self.order)
        if len(fact) == 1:
            return next(iter(fact))
        return None

    def generating_set(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily over ascending element indices."""
        if self._gens is None:
            gens: tuple[int, ...] = ()
            span = 1
            for a in range(1, self.order):
                if span >> a & 1:
                    continue
                gens = gens + (a,)
                span = generated_mask(self, gens)
                if span == (1 << self.order) - 1:
                    break
            self._gens = gens
        return self._gens

    def dump_table(self) -> str:
        """Raw text format: first line n, then the n table rows."""
        lines = [str(self.order)]
        lines.extend(" ".join(map(str, row)) for row in self.table)
        return "\n".join(lines) + "\n"

    def validate(self, full_assoc_max: int = FULL_ASSOC_CHECK_MAX) -> None:
        """Check the Latin-square, identity, inverse, and associativity laws.

        Associativity is scanned exhaustively up to ``full_assoc_max`` and on
        10*n^2 deterministically seeded random triples above it.  Raises
        InvalidTable on the first failure.
        """
        n = self.order
        arr = np.asarray(self.table, dtype=np.int64)
        if arr.shape != (n, n) or arr.min() < 0 or arr.max() >= n:
            raise InvalidTable("table entries out of range")
        expected = np.arange(n, dtype=np.int64)
        if not (np.sort(arr, axis=1) == expected).all():
            raise InvalidTable("some row is not a permutation of 0..n-1")
        if not (np.sort(arr, axis=0) == expected[:, None]).all():
            raise InvalidTable("some column is not a permutation of 0..n-1")
        if not (arr[0] == expected).all() or not (arr[:, 0] == expected).all():
            raise InvalidTable("identity law fails at index 0")
        inv = np.asarray(self.inverse, dtype=np.int64)
        if not (arr[expected, inv] == 0).all():
            raise InvalidTable("inverse law fails")
        if n <= full_assoc_max:
            for a in range(n):
                # (a*b)*c vs a*(b*c) for all b, c at once
                if not (arr[arr[a]] == arr[a][arr]).all():
                    raise InvalidTable(f"associativity fails for a={a}")
        else:
            rng = np.random.default_rng(ASSOC_SAMPLE_SEED)
            m = 10 * n * n
            a = rng.integers(0, n, size=m)
            b = rng.integers(0, n, size=m)
            c = rng.integers(0, n, size=m)
            if not (arr[arr[a, b], c] == arr[a, arr[b, c]]).all():
                raise InvalidTable("associativity fails on sampled triples")


def generated_mask(group: Group, gens: Sequence[int], seed_mask: int = 1) -> int:
    """Bitmask of the subgroup generated by ``gens`` (breadth-first closure).

    Closure under right multiplication by the generators, starting from the
    identity, reaches every word in the generators; inverses come free in a
    finite group.  Membership during the walk lives in a bytearray because
    single-bit tests on wide ints dominate the runtime for large groups.
    By Lagrange, a closure that grows past half the group must be the whole
    group, so it returns early at that point.
    """
    table = group.table
    n = group.order
    half = n // 2
    mask = seed_mask | 1
    seen = bytearray(n)
    frontier = _mask_members(mask)
    count = len(frontier)
    for y in frontier:
        seen[y] = 1
    if count > half:
        return (1 << n) - 1
    while frontier:
        nxt = []
        append = nxt.append
        for y in frontier:
            row = table[y]
            for g in gens:
                z = row[g]
                if not seen[z]:
                    seen[z] = 1
                    mask |= 1 << z
                    count += 1
                    append(z)
        if count > half:
            return (1 << n) - 1
        frontier = nxt
    return mask


def _mask_members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _rows_from_array(arr: np.ndarray) -> list[list[int]]:
    # share one int object per element index across the whole table
    pool = list(range(arr.shape[0]))
    return [[pool[v] for v in row] for row in arr.tolist()]


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def cyclic_group(n: int, label: str | None = None) -> Group:
    if n < 1:
        raise InvalidSpec(f"cyclic order must be >= 1, got {n}")
    base = list(range(n))
    table = [base[a:] + base[:a] for a in range(n)]
    return Group(table, label or f"cyclic:{n}")


def elementary_abelian_group(p: int, k: int, label: str | None = None) -> Group:
    """Direct product of k copies of the cyclic group of prime order p."""
    if not is_prime(p):
        raise InvalidSpec(f"p must be prime, got {p}")
    if k < 1:
        raise InvalidSpec(f"rank must be >= 1, got {k}")
    n = p**k
    idx = np.arange(n)
    digits = np.empty((n, k), dtype=np.int64)
    rest = idx.copy()
    for j in range(k):
        digits[:, j] = rest % p
        rest //= p
    arr = np.zeros((n, n), dtype=np.int64)
    for j in range(k):
        dj = digits[:, j]
        arr += ((dj[:, None] + dj[None, :]) % p) * p**j
    return Group(_rows_from_array(arr), label or f"elem:{p},{k}")


def dihedral_group(n: int, label: str | None = None) -> Group:
    """Symmetries of the regular n-gon, order 2n; index r + n*s for rotation r, flip s."""
    if n < 1:
        raise InvalidSpec(f"dihedral parameter must be >= 1, got {n}")
    idx = np.arange(2 * n)
    r, s = idx % n, idx // n
    sign = np.where(s == 0, 1, -1)
    rot = (r[:, None] + sign[:, None] * r[None, :]) % n
    flip = (s[:, None] + s[None, :]) % 2
    return Group(_rows_from_array(rot + n * flip), label or f"dihedral:{n}")


def symmetric_group(m: int, label: str | None = None) -> Group:
    """All permutations of m points, indexed in lexicographic one-line order."""
    if m < 1:
        raise InvalidSpec(f"symmetric degree must be >= 1, got {m}")
    perms = list(permutations(range(m)))
    index = {perm: i for i, perm in enumerate(perms)}
    table = []
    for pa in perms:
        row = [index[tuple(pa[x] for x in pb)] for pb in perms]
        table.append(row)
    return Group(table, label or f"sym:{m}")


def smallest_order_p_residue(p: int, q: int) -> int:
    """Smallest t >= 2 of multiplicative order exactly p modulo q."""
    for t in range(2, q):
        if pow(t, p, q) == 1:
            return t
    raise InvalidSpec(f"no residue of order {p} modulo {q}")


def semidirect_pq_group(p: int, q: int, t: int | None = None, label: str | None = None) -> Group:
    """Nonabelian group of order p*q: pairs (x, y) in Z_q x Z_p, index x + q*y.

    The product is (x1, y1)(x2, y2) = (x1 + t^y1 * x2 mod q, y1 + y2 mod p)
    where t has multiplicative order exactly p modulo q.  Requires p, q prime
    with p dividing q - 1; when t is omitted the smallest valid t >= 2 is used.
    """
    if not is_prime(p) or not is_prime(q):
        raise InvalidSpec(f"p and q must be prime, got p={p}, q={q}")
    if (q - 1) % p != 0:
        raise InvalidSpec(f"p={p} must divide q-1={q - 1}")
    if t is None:
        t = smallest_order_p_residue(p, q)
    elif not 2 <= t < q or pow(t, p, q) != 1:
        # p is prime, so t^p = 1 with t != 1 means order exactly p
        raise InvalidSpec(f"t={t} does not have order exactly {p} modulo {q}")
    n = p * q
    idx = np.arange(n)
    x, y = idx % q, idx // q
    tpow = np.array([pow(t, int(e), q) for e in range(p)], dtype=np.int64)
    new_x = (x[:, None] + tpow[y][:, None] * x[None, :]) % q
    new_y = (y[:, None] + y[None, :]) % p
    return Group(_rows_from_array(new_x + q * new_y), label or f"pq:{p},{q}")


def direct_product_group(parts: Sequence[Group], label: str | None = None) -> Group:
    """Direct product; the pair (a, b) is linearized as a * |B| + b, left fold."""
    if not parts:
        raise InvalidSpec("direct product needs at least one factor")
    acc = parts[0]
    for nxt in parts[1:]:
        na, nb = acc.order, nxt.order
        idx = np.arange(na * nb)
        ia, ib = idx // nb, idx % nb
        ta = np.asarray(acc.table, dtype=np.int64)
        tb = np.asarray(nxt.table, dtype=np.int64)
        arr = ta[ia[:, None], ia[None, :]] * nb + tb[ib[:, None], ib[None, :]]
        acc = Group(_rows_from_array(arr), f"({acc.label})x({nxt.label})")
    if label is not None:
        acc.label = label
    return acc


def group_from_permutations(
    degree: int,
    gens: Sequence[Sequence[int]],
    max_order: int = DEFAULT_ORDER_CAP,
    label: str | None = None,
) -> Group:
    """Close a set of permutations of {0..degree-1} under composition.

    Elements are indexed deterministically: identity first, then breadth-first
    discovery order with lexicographic tie-breaking on the one-line form.
    """
    gen_tuples = []
    for g in gens:
        tg = tuple(g)
        if sorted(tg) != list(range(degree)):
            raise NotAPermutation(f"{g!r} is not a permutation of 0..{degree - 1}")
        gen_tuples.append(tg)
    ident = tuple(range(degree))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        new: set[tuple[int, ...]] = set()
        for w in frontier:
            for g in gen_tuples:
                u = tuple(w[x] for x in g)
                if u not in seen:
                    new.add(u)
        frontier = sorted(new)
        seen.update(frontier)
        elems.extend(frontier)
        if len(elems) > max_order:
            raise OrderCapExceeded(
                f"permutation closure exceeded the order cap {max_order}"
            )
    index = {perm: i for i, perm in enumerate(elems)}
    table = [[index[tuple(pa[x] for x in pb)] for pb in elems] for pa in elems]
    return Group(table, label or f"perm-closure(deg {degree})")


def quotient_group(group: Group, normal_mask: int, label: str | None = None) -> Group:
    """Quotient by the normal subgroup with the given membership bitmask.

    Cosets are represented by their minimal member and indexed in ascending
    representative order, which puts the identity coset at index 0.  Raises
    NotNormal when the subgroup is not invariant under conjugation.
    """
    n = group.order
    table = group.table
    members = _mask_members(normal_mask)
    if not normal_mask & 1:
        raise NotNormal("subgroup mask does not contain the identity")
    for x in group.generating_set():
        conj = 0
        rowx = table[x]
        ix = group.inverse[x]
        for m in members:
            conj |= 1 << table[rowx[m]][ix]
        if conj != normal_mask:
            raise NotNormal(f"subgroup of order {len(members)} is not normal in {group.label}")
    coset_of = [-1] * n
    reps: list[int] = []
    for a in range(n):
        if coset_of[a] != -1:
            continue
        cid = len(reps)
        reps.append(a)
        for h in members:
            coset_of[table[h][a]] = cid
    q_table = [[coset_of[table[ra][rb]] for rb in reps] for ra in reps]
    return Group(q_table, label or f"{group.label}/(order {len(members)})")


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------


def group_from_raw_table(text: str, label: str | None = None) -> Group:
    """Parse the raw table format: line 1 is n, then n rows of n indices.

    The parsed table is fully validated (Latin square, identity at 0,
    inverses, associativity).
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidTable("empty table file")
    try:
        n = int(lines[0].strip())
    except ValueError as exc:
        raise InvalidTable(f"first line must be the order, got {lines[0]!r}") from exc
    if n < 1:
        raise InvalidTable(f"order must be >= 1, got {n}")
    if len(lines) != n + 1:
        raise InvalidTable(f"expected {n} table rows, got {len(lines) - 1}")
    table = []
    for i, line in enumerate(lines[1:], start=1):
        try:
            row = [int(v) for v in line.split()]
        except ValueError as exc:
            raise InvalidTable(f"non-integer entry on line {i + 1}") from exc
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise InvalidTable(f"row {i} must hold {n} entries in 0..{n - 1}")
        table.append(row)
    group = Group(table, label or "raw-table")
    group.validate()
    return group


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse disjoint-cycle notation like ``(0 1 2)(3 4)`` into one-line form."""
    stripped = text.strip()
    leftovers = _CYCLE_RE.sub("", stripped).strip()
    if leftovers:
        raise NotAPermutation(f"cannot parse cycle notation: {text!r}")
    perm = list(range(degree))
    for body in _CYCLE_RE.findall(stripped):
        pts = [int(v) for v in body.replace(",", " ").split()]
        if not pts:
            continue
        if any(not 0 <= v < degree for v in pts) or len(set(pts)) != len(pts):
            raise NotAPermutation(f"bad cycle {body!r} for degree {degree}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if perm[a] != a:
                raise NotAPermutation(f"cycles are not disjoint in {text!r}")
            perm[a] = b
    return tuple(perm)


def group_from_perm_file(text: str, max_order: int = DEFAULT_ORDER_CAP, label: str | None = None) -> Group:
    """Parse the generator format: ``perm <degree>`` then one generator per line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("perm"):
        raise InvalidTable("permutation file must start with 'perm <degree>'")
    parts = lines[0].split()
    if len(parts) != 2 or not parts[1].isdigit():
        raise InvalidTable(f"bad header {lines[0]!r}")
    degree = int(parts[1])
    if degree < 1:
        raise InvalidTable(f"degree must be >= 1, got {degree}")
    gens = [parse_cycles(ln, degree) for ln in lines[1:]]
    return group_from_permutations(degree, gens, max_order=max_order, label=label)


# ---------------------------------------------------------------------------
# declarative specs
# ---------------------------------------------------------------------------

_SPEC_KINDS = ("cyclic", "elem", "dihedral", "sym", "pq", "product", "table", "perm")


@dataclass(frozen=True)
class GroupSpec:
    """Declarative description of a group to construct."""

    kind: str
    params: tuple[int, ...] = ()
    parts: tuple["GroupSpec", ...] = ()
    path: str | None = None

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls("cyclic", (n,))

    @classmethod
    def elementary_abelian(cls, p: int, k: int) -> "GroupSpec":
        return cls("elem", (p, k))

    @classmethod
    def dihedral(cls, n: int) -> "GroupSpec":
        return cls("dihedral", (n,))

    @classmethod
    def symmetric(cls, m: int) -> "GroupSpec":
        return cls("sym", (m,))

    @classmethod
    def semidirect_pq(cls, p: int, q: int, t: int | None = None) -> "GroupSpec":
        return cls("pq", (p, q) if t is None else (p, q, t))

    @classmethod
    def direct_product(cls, parts: Iterable["GroupSpec"]) -> "GroupSpec":
        return cls("product", parts=tuple(parts))

    @classmethod
    def raw_table(cls, path: str) -> "GroupSpec":
        return cls("table", path=path)

    @classmethod
    def perm_generators(cls, path: str) -> "GroupSpec":
        return cls("perm", path=path)

    def __str__(self) -> str:
        if self.kind == "product":
            return "product:" + "+".join(str(p) for p in self.parts)
        if self.kind in ("table", "perm"):
            return f"{self.kind}:{self.path}"
        return f"{self.kind}:{','.join(map(str, self.params))}"

    def predicted_order(self) -> int | None:
        """Order the built group will have, when known without construction."""
        if self.kind == "cyclic":
            return self.params[0]
        if self.kind == "elem":
            return self.params[0] ** self.params[1]
        if self.kind == "dihedral":
            return 2 * self.params[0]
        if self.kind == "sym":
            return math.factorial(self.params[0])
        if self.kind == "pq":
            return self.params[0] * self.params[1]
        if self.kind == "product":
            orders = [p.predicted_order() for p in self.parts]
            if any(o is None for o in orders):
                return None
            return math.prod(orders)  # type: ignore[arg-type]
        return None

    def build(self, max_order: int = DEFAULT_ORDER_CAP) -> Group:
        predicted = self.predicted_order()
        if predicted is not None and predicted > max_order:
            raise OrderCapExceeded(
                f"{self} has order {predicted}, above the cap {max_order}"
            )
        if self.kind == "cyclic":
            return cyclic_group(*self.params)
        if self.kind == "elem":
            return elementary_abelian_group(*self.params)
        if self.kind == "dihedral":
            return dihedral_group(*self.params)
        if self.kind == "sym":
            return symmetric_group(*self.params)
        if self.kind == "pq":
            return semidirect_pq_group(*self.params)
        if self.kind == "product":
            built = [p.build(max_order) for p in self.parts]
            group = direct_product_group(built, label=str(self))
            if group.order > max_order:
                raise OrderCapExceeded(f"{self} exceeds the cap {max_order}")
            return group
        if self.kind == "table":
            group = group_from_raw_table(self._read_file(), label=str(self))
            if group.order > max_order:
                raise OrderCapExceeded(f"{self} exceeds the cap {max_order}")
            return group
        if self.kind == "perm":
            return group_from_perm_file(self._read_file(), max_order=max_order, label=str(self))
        raise InvalidSpec(f"unknown spec kind {self.kind!r}")

    def _read_file(self) -> str:
        try:
            return Path(self.path or "").read_text(encoding="utf-8")
        except OSError as exc:
            raise InvalidSpec(f"cannot read {self.path!r}: {exc}") from exc

    @staticmethod
    def parse(text: str) -> "GroupSpec":
        """Parse the colon-separated spec mini-grammar (``cyclic:12``, ``pq:3,7`` ...)."""
        text = text.strip()
        if ":" not in text:
            raise InvalidSpec(f"not a group spec: {text!r}")
        kind, _, rest = text.partition(":")
        kind = kind.strip()
        if kind not in _SPEC_KINDS:
            raise InvalidSpec(f"unknown spec kind {kind!r} in {text!r}")
        if kind == "product":
            part_texts = [p for p in rest.split("+") if p]
            if not part_texts:
                raise InvalidSpec(f"empty product spec: {text!r}")
            parts = tuple(GroupSpec.parse(p) for p in part_texts)
            if any(p.kind == "product" for p in parts):
                raise InvalidSpec("nested products are not supported")
            return GroupSpec("product", parts=parts)
        if kind in ("table", "perm"):
            if not rest:
                raise InvalidSpec(f"{kind} spec needs a file path")
            return GroupSpec(kind, path=rest)
        try:
            params = tuple(int(v) for v in rest.split(","))
        except ValueError as exc:
            raise InvalidSpec(f"non-integer parameters in {text!r}") from exc
        arity = {"cyclic": (1,), "elem": (2,), "dihedral": (1,), "sym": (1,), "pq": (2, 3)}[kind]
        if len(params) not in arity:
            raise InvalidSpec(f"wrong parameter count for {kind} in {text!r}")
        if any(v < 1 for v in params):
            raise InvalidSpec(f"parameters must be positive in {text!r}")
        return GroupSpec(kind, params)
