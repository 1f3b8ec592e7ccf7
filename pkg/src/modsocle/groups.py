"""Finite groups as Cayley tables, with subgroup and quotient machinery.

Elements are indices 0..n-1; the table is a dense numpy array so that one
multiplication is one lookup. Groups and subgroups are immutable after
construction and safe to share between workers; every operation here is a
pure function of its inputs with deterministic (smallest-index) tie-breaking.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    HypothesisViolationError,
    NoComplementError,
    NotAGroupError,
    NotNilpotentError,
    NotNormalError,
)

_ASSOC_FULL_LIMIT = 512
_ASSOC_SAMPLES = 4096


@dataclass(frozen=True, eq=False)
class ConjClassPartition:
    """Conjugacy classes of a group, ordered by their minimal member."""

    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    representatives: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


@dataclass(frozen=True)
class PDecomposition:
    """Commuting factorization g = g_p * g_p' into p-part and p'-part."""

    element: int
    p_part: int
    pprime_part: int


@dataclass(frozen=True, eq=False)
class GroupIso:
    """Isomorphism between two groups, stored as an image table."""

    source: "FiniteGroup"
    target: "FiniteGroup"
    mapping: np.ndarray

    def __call__(self, g: int) -> int:
        return int(self.mapping[g])


@dataclass(frozen=True, eq=False)
class IsoclinismWitness:
    """Witnessing pair of maps for an isoclinism of two groups."""

    central_quotient_iso: GroupIso
    derived_iso: dict[int, int]


class FiniteGroup:
    """Group given by its full multiplication table.

    Do not call directly; use :func:`make_group` or a constructor, which
    validate the axioms.
    """

    def __init__(self, table: np.ndarray, name: str, identity: int,
                 inverse: np.ndarray, element_orders: np.ndarray,
                 generators: tuple[int, ...]):
        self.table = table
        self.name = name
        self.identity = identity
        self.inverse = inverse
        self.element_orders = element_orders
        self.generators = generators
        for arr in (self.table, self.inverse, self.element_orders):
            arr.flags.writeable = False

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, a: int, g: int) -> int:
        """g a g^-1."""
        return int(self.table[self.table[g, a], self.inverse[g]])

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1."""
        t = self.table
        return int(t[t[t[a, b], self.inverse[a]], self.inverse[b]])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        acc = self.identity
        base = a
        while k:
            if k & 1:
                acc = int(self.table[acc, base])
            base = int(self.table[base, base])
            k >>= 1
        return acc

    def element_order(self, a: int) -> int:
        return int(self.element_orders[a])

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def conjugacy_classes(self) -> ConjClassPartition:
        n = self.order
        t = self.table
        inv = self.inverse
        class_of = np.full(n, -1, dtype=np.int64)
        classes: list[tuple[int, ...]] = []
        all_g = np.arange(n)
        for x in range(n):
            if class_of[x] >= 0:
                continue
            orbit = np.unique(t[t[all_g, x], inv[all_g]])
            idx = len(classes)
            class_of[orbit] = idx
            classes.append(tuple(int(v) for v in orbit))
        return ConjClassPartition(
            classes=tuple(classes),
            class_of=class_of,
            representatives=tuple(c[0] for c in classes),
        )

    def subgroup(self, members: Iterable[int], generated_by: tuple[int, ...] | None = None) -> "Subgroup":
        return Subgroup(self, members, generated_by=generated_by)

    @cached_property
    def trivial_subgroup(self) -> "Subgroup":
        return self.subgroup({self.identity})

    @cached_property
    def full_subgroup(self) -> "Subgroup":
        return self.subgroup(range(self.order))

    def hash_digest(self) -> str:
        h = hashlib.sha256()
        h.update(self.table.astype(np.int64).tobytes())
        return h.hexdigest()


class Subgroup:
    """Subset of a parent group's indices, validated to be a subgroup."""

    def __init__(self, parent: FiniteGroup, members: Iterable[int],
                 generated_by: tuple[int, ...] | None = None):
        self.parent = parent
        self.members = frozenset(int(m) for m in members)
        self.generated_by = generated_by
        self._validate()

    def _validate(self) -> None:
        g = self.parent
        if g.identity not in self.members:
            raise NotAGroupError("identity", witness=sorted(self.members)[:4])
        mem = self.sorted_members
        arr = np.array(mem, dtype=np.int64)
        prods = g.table[np.ix_(arr, arr)]
        if not np.isin(prods, arr).all():
            bad = np.argwhere(~np.isin(prods, arr))[0]
            raise NotAGroupError("closure", witness=(mem[bad[0]], mem[bad[1]]))
        if not np.isin(g.inverse[arr], arr).all():
            raise NotAGroupError("inverse", witness=None)
        if g.order % len(mem):
            raise NotAGroupError("lagrange", witness=len(mem))

    @cached_property
    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, x: int) -> bool:
        return int(x) in self.members

    def __contains__(self, x) -> bool:
        return int(x) in self.members

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name!r})"

    @cached_property
    def is_normal(self) -> bool:
        g = self.parent
        arr = np.array(self.sorted_members, dtype=np.int64)
        target = set(self.members)
        for x in range(g.order):
            conj = g.table[g.table[x, arr], g.inverse[x]]
            if set(int(v) for v in conj) != target:
                return False
        return True

    def is_p_group(self, p: int) -> bool:
        o = self.order
        while o % p == 0:
            o //= p
        return o == 1

    def is_pprime_group(self, p: int) -> bool:
        return self.order % p != 0

    def index(self) -> int:
        return self.parent.order // self.order

    def as_group(self, name: str | None = None) -> tuple[FiniteGroup, tuple[int, ...]]:
        """Reindex the subgroup as a standalone group.

        Returns the group together with the tuple mapping new indices back
        to parent indices.
        """
        mem = self.sorted_members
        pos = {m: i for i, m in enumerate(mem)}
        arr = np.array(mem, dtype=np.int64)
        sub = self.parent.table[np.ix_(arr, arr)]
        table = np.array([[pos[int(v)] for v in row] for row in sub], dtype=np.int64)
        label = name or f"{self.parent.name}|{self.order}"
        return make_group(table, label), mem


def _latin_check(table: np.ndarray) -> None:
    n = table.shape[0]
    ref = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(table[i]), ref):
            raise NotAGroupError("latin-row", witness=i)
        if not np.array_equal(np.sort(table[:, i]), ref):
            raise NotAGroupError("latin-column", witness=i)


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    ref = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], ref) and np.array_equal(table[:, e], ref):
            return e
    raise NotAGroupError("identity")


def _associativity_check(table: np.ndarray, full: bool) -> None:
    n = table.shape[0]
    if full:
        for a in range(n):
            left = table[table[a], :]
            right = table[a][table]
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise NotAGroupError("associativity", witness=(a, int(b), int(c)))
    else:
        rng = np.random.default_rng(0)
        trips = rng.integers(0, n, size=(_ASSOC_SAMPLES, 3))
        a, b, c = trips[:, 0], trips[:, 1], trips[:, 2]
        if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
            bad = np.nonzero(table[table[a, b], c] != table[a, table[b, c]])[0][0]
            raise NotAGroupError("associativity", witness=tuple(int(v) for v in trips[bad]))


def _element_orders(table: np.ndarray, identity: int) -> np.ndarray:
    n = table.shape[0]
    orders = np.ones(n, dtype=np.int64)
    for g in range(n):
        x = g
        k = 1
        while x != identity:
            x = int(table[x, g])
            k += 1
        orders[g] = k
    return orders


def _closure_set(table: np.ndarray, seed: Iterable[int], identity: int) -> frozenset[int]:
    members = set(int(s) for s in seed)
    members.add(identity)
    arr = np.fromiter(sorted(members), dtype=np.int64)
    while True:
        prods = np.unique(table[np.ix_(arr, arr)])
        if prods.size == arr.size:
            return frozenset(int(v) for v in arr)
        arr = prods


def _greedy_generators(table: np.ndarray, identity: int) -> tuple[int, ...]:
    n = table.shape[0]
    gens: list[int] = []
    current = frozenset({identity})
    while len(current) < n:
        g = min(x for x in range(n) if x not in current)
        gens.append(g)
        current = _closure_set(table, current | {g}, identity)
    return tuple(gens)


def make_group(table, name: str = "G", *, full_associativity: bool | None = None,
               generators: Sequence[int] | None = None) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a FiniteGroup.

    Checks the Latin square property, identity, inverses and associativity
    (full below order 512, sampled above unless forced). Raises
    :class:`NotAGroupError` naming the violated axiom with a witness.
    """
    t = np.array(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise NotAGroupError("square-table", witness=t.shape)
    n = t.shape[0]
    if n == 0:
        raise NotAGroupError("empty-table")
    if t.min() < 0 or t.max() >= n:
        raise NotAGroupError("index-range", witness=(int(t.min()), int(t.max())))
    _latin_check(t)
    identity = _find_identity(t)
    if full_associativity is None:
        full_associativity = n <= _ASSOC_FULL_LIMIT
    _associativity_check(t, full_associativity)
    inverse = np.empty(n, dtype=np.int64)
    for g in range(n):
        inv_candidates = np.nonzero(t[g] == identity)[0]
        if inv_candidates.size != 1 or t[int(inv_candidates[0]), g] != identity:
            raise NotAGroupError("inverse", witness=g)
        inverse[g] = inv_candidates[0]
    orders = _element_orders(t, identity)
    gens = tuple(int(g) for g in generators) if generators else _greedy_generators(t, identity)
    return FiniteGroup(t, name, identity, inverse, orders, gens)


def generate_subgroup(group: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Least subgroup containing `seed`, by closure under products."""
    seed = tuple(int(s) for s in seed)
    members = _closure_set(group.table, seed, group.identity)
    return group.subgroup(members, generated_by=seed)


def normal_closure(group: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Least normal subgroup containing `seed`."""
    t = group.table
    inv = group.inverse
    all_g = np.arange(group.order)
    members = _closure_set(t, seed, group.identity)
    while True:
        arr = np.fromiter(sorted(members), dtype=np.int64)
        conj = t[t[np.ix_(all_g, arr)], inv[all_g][:, None]]
        new = frozenset(int(v) for v in np.unique(conj))
        if new <= members:
            return group.subgroup(members)
        members = _closure_set(t, members | new, group.identity)


def centralizer(group: FiniteGroup, subset: Iterable[int],
                within: Optional[Subgroup] = None) -> Subgroup:
    """Elements (of `within`, default the whole group) commuting with `subset`."""
    t = group.table
    sub = np.fromiter(sorted(set(int(s) for s in subset)), dtype=np.int64)
    domain = np.arange(group.order) if within is None else np.array(within.sorted_members)
    mask = np.ones(domain.size, dtype=bool)
    for s in sub:
        mask &= t[domain, s] == t[s, domain]
    return group.subgroup(domain[mask])


def normalizer(group: FiniteGroup, sub: Subgroup | Iterable[int],
               within: Optional[Subgroup] = None) -> Subgroup:
    members = sub.members if isinstance(sub, Subgroup) else frozenset(int(s) for s in sub)
    arr = np.fromiter(sorted(members), dtype=np.int64)
    t, inv = group.table, group.inverse
    domain = range(group.order) if within is None else within.sorted_members
    keep = []
    for x in domain:
        conj = t[t[x, arr], inv[x]]
        if frozenset(int(v) for v in conj) == members:
            keep.append(x)
    return group.subgroup(keep)


def commutator_subgroup(group: FiniteGroup, a: Subgroup | Iterable[int],
                        b: Subgroup | Iterable[int]) -> Subgroup:
    """Subgroup generated by the commutators [x, y] with x in a, y in b."""
    t, inv = group.table, group.inverse
    arr_a = np.fromiter(sorted(a.members if isinstance(a, Subgroup) else set(map(int, a))),
                        dtype=np.int64)
    arr_b = np.fromiter(sorted(b.members if isinstance(b, Subgroup) else set(map(int, b))),
                        dtype=np.int64)
    ab = t[np.ix_(arr_a, arr_b)]
    x = t[ab, inv[arr_a][:, None]]
    comms = np.unique(t[x, inv[arr_b][None, :]])
    return generate_subgroup(group, (int(c) for c in comms))


def derived_subgroup(group: FiniteGroup) -> Subgroup:
    return commutator_subgroup(group, group.full_subgroup, group.full_subgroup)


def center(group: FiniteGroup) -> Subgroup:
    return centralizer(group, range(group.order))


def _power_map(group: FiniteGroup, k: int) -> np.ndarray:
    return np.array([group.power(g, k) for g in range(group.order)], dtype=np.int64)


def frattini_subgroup(group: FiniteGroup) -> Subgroup:
    """Intersection of the maximal subgroups.

    For p-groups this is the closure of commutators and p-th powers; the
    general case intersects the maximal subgroups found by exhaustive
    subgroup enumeration, which is fine at the orders targeted here.
    """
    n = group.order
    p = _prime_power_base(n)
    if p is not None:
        derived = derived_subgroup(group)
        powers = _power_map(group, p)
        return generate_subgroup(group, set(derived.members) | set(int(v) for v in powers))
    members = set(range(n))
    for m in maximal_subgroups(group):
        members &= m.members
    return group.subgroup(members)


def _prime_power_base(n: int) -> int | None:
    """The prime p when n is a nontrivial power of p, else None."""
    if n == 1:
        return None
    f = 2
    m = n
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            return f if m == 1 else None
        f += 1
    return m


def _p_part(n: int, p: int) -> int:
    pk = 1
    while n % p == 0:
        n //= p
        pk *= p
    return pk


def sylow_subgroup(group: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown by normalizer ascent.

    Starting from the trivial subgroup, repeatedly adjoin the smallest
    p-element of the normalizer not already present; the extension stays a
    p-group because the current subgroup is normal in its normalizer.
    """
    target = _p_part(group.order, p)
    current = group.trivial_subgroup
    while current.order < target:
        nz = normalizer(group, current)
        candidate = min(
            x for x in nz.sorted_members
            if x not in current.members and _p_part(group.element_order(x), p) == group.element_order(x)
        )
        current = generate_subgroup(group, set(current.members) | {candidate})
    return current


def p_core(group: FiniteGroup, p: int) -> Subgroup:
    """Largest normal p-subgroup: intersection of the Sylow conjugates."""
    syl = sylow_subgroup(group, p)
    arr = np.array(syl.sorted_members, dtype=np.int64)
    t, inv = group.table, group.inverse
    members = set(syl.members)
    for x in range(group.order):
        conj = t[t[x, arr], inv[x]]
        members &= set(int(v) for v in conj)
        if len(members) == 1:
            break
    return group.subgroup(members)


def pprime_core(group: FiniteGroup, p: int) -> Subgroup:
    """Largest normal p'-subgroup, by fixed-point iteration.

    Repeatedly absorbs p'-elements whose normal closure together with the
    current subgroup still has order coprime to p.
    """
    current = group.trivial_subgroup
    changed = True
    while changed:
        changed = False
        for x in range(group.order):
            if x in current.members or group.element_order(x) % p == 0:
                continue
            attempt = normal_closure(group, set(current.members) | {x})
            if attempt.order % p != 0:
                current = attempt
                changed = True
    return current


def p_residual(group: FiniteGroup, p: int) -> Subgroup:
    """Smallest normal subgroup with p-group quotient: generated by p'-elements."""
    seed = [g for g in range(group.order) if gcd(group.element_order(g), p) == 1]
    return generate_subgroup(group, seed)


def two_element_class_subgroup(group: FiniteGroup) -> Subgroup:
    """Subgroup generated by g f^-1 over all conjugacy classes {f, g} of length 2.

    Trivial when no class of length two exists.
    """
    seed = []
    for cls in group.conjugacy_classes.classes:
        if len(cls) == 2:
            f, g = cls
            seed.append(group.mul(g, group.inv(f)))
    return generate_subgroup(group, seed)


def characteristic_subgroup(group: FiniteGroup, kind: str, p: int | None = None) -> Subgroup:
    """Dispatch table for the named characteristic subgroups."""
    kind = kind.lower()
    if kind == "derived":
        return derived_subgroup(group)
    if kind == "center":
        return center(group)
    if kind == "frattini":
        return frattini_subgroup(group)
    if kind in ("p_core", "op"):
        return p_core(group, _require_p(p))
    if kind in ("pprime_core", "opprime"):
        return pprime_core(group, _require_p(p))
    if kind in ("p_residual", "opresidual"):
        return p_residual(group, _require_p(p))
    if kind in ("two_element_class", "y"):
        return two_element_class_subgroup(group)
    raise ValueError(f"unknown characteristic subgroup kind {kind!r}")


def _require_p(p: int | None) -> int:
    if p is None:
        raise ValueError("this subgroup kind requires a prime argument")
    return p


def reduced_commutator_subgroup(group: FiniteGroup, n_sub: Subgroup, p: int) -> Subgroup:
    """{x in [N, G] : x^p in [N, [N, G]]} for a normal p-subgroup N.

    The element sum of this subgroup annihilates every class sum of a class
    not contained in the centralizer of N.
    """
    if not n_sub.is_normal or not n_sub.is_p_group(p):
        raise HypothesisViolationError("N must be a normal p-subgroup")
    ng = commutator_subgroup(group, n_sub, group.full_subgroup)
    nng = commutator_subgroup(group, n_sub, ng)
    members = {x for x in ng.members if group.power(x, p) in nng.members}
    try:
        result = group.subgroup(members)
    except NotAGroupError as exc:
        raise HypothesisViolationError(f"reduced commutator set is not a subgroup: {exc}") from exc
    if not result.is_normal:
        raise HypothesisViolationError("reduced commutator subgroup failed to be normal")
    return result


def commutators_with(group: FiniteGroup, h: int, p: int) -> Subgroup:
    """{[a, h] : a in G}, valid when [P, G] lies in the center of P.

    The hypothesis makes the commutator map multiplicative in a, so the
    image set is already a subgroup, and it is normal.
    """
    syl = sylow_subgroup(group, p)
    pg = commutator_subgroup(group, syl, group.full_subgroup)
    zp = centralizer(group, syl.sorted_members, within=syl)
    if not pg.members <= zp.members:
        raise HypothesisViolationError("[P, G] is not contained in Z(P)")
    members = {group.commutator(a, h) for a in range(group.order)}
    try:
        result = group.subgroup(members)
    except NotAGroupError as exc:
        raise HypothesisViolationError(f"commutator image is not a subgroup: {exc}") from exc
    if not result.is_normal:
        raise HypothesisViolationError("commutator image failed to be normal")
    return result


def relative_subgroup(group: FiniteGroup, kind: str, *, subset=None, a=None, b=None,
                      n_sub: Subgroup | None = None, h: int | None = None,
                      p: int | None = None, within: Subgroup | None = None) -> Subgroup:
    """Dispatch table for centralizers, normalizers and commutator-type subgroups."""
    kind = kind.lower()
    if kind == "centralizer":
        return centralizer(group, subset, within=within)
    if kind == "normalizer":
        return normalizer(group, subset, within=within)
    if kind == "commutator":
        return commutator_subgroup(group, a, b)
    if kind in ("reduced_commutator", "msub"):
        return reduced_commutator_subgroup(group, n_sub, _require_p(p))
    if kind in ("commutators_with", "uh"):
        return commutators_with(group, h, _require_p(p))
    raise ValueError(f"unknown relative subgroup kind {kind!r}")


def hall_complement(group: FiniteGroup, p: int) -> Subgroup:
    """A p'-complement to a normal Sylow p-subgroup.

    Found by depth-first search over p'-elements in increasing index order,
    keeping the running closure a p'-group of order dividing the target;
    the first complete complement found is returned, so the result is
    deterministic.
    """
    syl = sylow_subgroup(group, p)
    if not syl.is_normal:
        raise NoComplementError("Sylow p-subgroup is not normal")
    m = group.order // syl.order
    if m == 1:
        return group.trivial_subgroup
    pprime = [x for x in range(group.order)
              if gcd(group.element_order(x), p) == 1 and m % group.element_order(x) == 0]
    seen: set[frozenset[int]] = set()

    def extend(members: frozenset[int], floor: int) -> frozenset[int] | None:
        if len(members) == m:
            return members
        for x in pprime:
            if x <= floor or x in members:
                continue
            bigger = _closure_set(group.table, members | {x}, group.identity)
            if m % len(bigger) or bigger in seen:
                continue
            seen.add(bigger)
            found = extend(bigger, x)
            if found is not None:
                return found
        return None

    result = extend(frozenset({group.identity}), -1)
    if result is None:
        raise NoComplementError(f"no complement of order {m} found")
    return group.subgroup(result)


def quotient(group: FiniteGroup, n_sub: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """Quotient group on the cosets of a normal subgroup, plus the projection map.

    Cosets are indexed by their minimal member, in increasing order.
    """
    if not n_sub.is_normal:
        raise NotNormalError(f"{n_sub!r} is not normal in {group.name!r}")
    t = group.table
    arr = np.array(n_sub.sorted_members, dtype=np.int64)
    coset_min = t[:, arr].min(axis=1)
    reps = np.unique(coset_min)
    index_of = {int(r): i for i, r in enumerate(reps)}
    proj = np.array([index_of[int(c)] for c in coset_min], dtype=np.int64)
    qtable = proj[t[np.ix_(reps, reps)]]
    q = make_group(qtable, name=f"{group.name}/N{n_sub.order}")
    proj.flags.writeable = False
    return q, proj


def p_decomposition(group: FiniteGroup, g: int, p: int) -> PDecomposition:
    """Split g into commuting p-part and p'-part (both powers of g)."""
    o = group.element_order(g)
    pa = _p_part(o, p)
    m = o // pa
    e_p = m * pow(m, -1, pa) if pa > 1 else 0
    e_pp = pa * pow(pa, -1, m) if m > 1 else 0
    gp = group.power(g, e_p) if pa > 1 else group.identity
    gpp = group.power(g, e_pp) if m > 1 else group.identity
    return PDecomposition(element=g, p_part=gp, pprime_part=gpp)


def pprime_sections(group: FiniteGroup, p: int) -> tuple[tuple[int, ...], ...]:
    """Partition of G where x ~ y iff their p'-parts are conjugate."""
    cls = group.conjugacy_classes
    buckets: dict[int, list[int]] = {}
    for g in range(group.order):
        key = int(cls.class_of[p_decomposition(group, g, p).pprime_part])
        buckets.setdefault(key, []).append(g)
    return tuple(tuple(b) for _, b in sorted(buckets.items(), key=lambda kv: min(kv[1])))


def lower_central_series(group: FiniteGroup) -> list[Subgroup]:
    series = [group.full_subgroup]
    while True:
        nxt = commutator_subgroup(group, series[-1], group.full_subgroup)
        if nxt.members == series[-1].members:
            return series
        series.append(nxt)


def nilpotency_class(group: FiniteGroup) -> int:
    series = lower_central_series(group)
    if series[-1].order != 1:
        raise NotNilpotentError(
            f"lower central series of {group.name!r} stabilizes at order {series[-1].order}")
    return len(series) - 1


def is_metabelian(group: FiniteGroup) -> bool:
    d = derived_subgroup(group)
    dg, _ = d.as_group()
    return dg.is_abelian


def is_central_product(group: FiniteGroup, a: Subgroup, b: Subgroup) -> bool:
    """True iff a and b commute elementwise and together generate the group."""
    t = group.table
    arr_a = np.array(a.sorted_members, dtype=np.int64)
    arr_b = np.array(b.sorted_members, dtype=np.int64)
    if not np.array_equal(t[np.ix_(arr_a, arr_b)], t[np.ix_(arr_b, arr_a)].T):
        return False
    return generate_subgroup(group, a.members | b.members).order == group.order


def element_order_multiset(group: FiniteGroup) -> tuple[tuple[int, int], ...]:
    vals, counts = np.unique(group.element_orders, return_counts=True)
    return tuple((int(v), int(c)) for v, c in zip(vals, counts))


def find_isomorphism(g1: FiniteGroup, g2: FiniteGroup) -> GroupIso | None:
    """Brute-force isomorphism search by generator-image backtracking.

    Deterministic: generators are the greedy smallest-index generating
    sequence of g1 and candidate images are tried in increasing order.
    Intended for desk-scale orders (up to roughly 64).
    """
    for iso in _iter_isomorphisms(g1, g2):
        return iso
    return None


def _iter_isomorphisms(g1: FiniteGroup, g2: FiniteGroup):
    if g1.order != g2.order:
        return
    if element_order_multiset(g1) != element_order_multiset(g2):
        return
    gens = _greedy_generators(g1.table, g1.identity)
    if not gens:
        yield GroupIso(g1, g2, np.array([g2.identity], dtype=np.int64))
        return
    n = g1.order
    by_order: dict[int, list[int]] = {}
    for x in range(n):
        by_order.setdefault(g2.element_order(x), []).append(x)

    def build(images: list[int]) -> np.ndarray | None:
        # BFS extension from the identity; positions not yet determined are -1.
        mapping = np.full(n, -1, dtype=np.int64)
        mapping[g1.identity] = g2.identity
        frontier = [g1.identity]
        used = {g2.identity}
        while frontier:
            nxt = []
            for x in frontier:
                for gen, img in zip(gens[:len(images)], images):
                    y = g1.mul(x, gen)
                    fy = g2.mul(int(mapping[x]), img)
                    if mapping[y] < 0:
                        if fy in used:
                            return None
                        mapping[y] = fy
                        used.add(fy)
                        nxt.append(y)
                    elif mapping[y] != fy:
                        return None
            frontier = nxt
        return mapping

    def extend(images: list[int]):
        k = len(images)
        if k == len(gens):
            mapping = build(images)
            if mapping is None or (mapping < 0).any():
                return
            ma = mapping[g1.table]
            mb = g2.table[np.ix_(mapping, mapping)]
            if np.array_equal(ma, mb):
                yield GroupIso(g1, g2, mapping)
            return
        want = g1.element_order(gens[k])
        for cand in by_order.get(want, ()):
            partial = build(images + [cand])
            if partial is None:
                continue
            yield from extend(images + [cand])

    yield from extend([])


def are_isoclinic(g1: FiniteGroup, g2: FiniteGroup) -> IsoclinismWitness | None:
    """Isoclinism test with witness maps.

    Searches isomorphisms between the central quotients and, for each, the
    forced map on commutator values; returns the first compatible pair or
    None. Size mismatches of the central quotients or derived subgroups
    fail fast.
    """
    z1, z2 = center(g1), center(g2)
    d1, d2 = derived_subgroup(g1), derived_subgroup(g2)
    if d1.order != d2.order or g1.order * z2.order != g2.order * z1.order:
        return None
    q1, proj1 = quotient(g1, z1)
    q2, proj2 = quotient(g2, z2)
    d1g, _ = d1.as_group()
    d2g, _ = d2.as_group()
    if element_order_multiset(d1g) != element_order_multiset(d2g):
        return None
    reps1 = _coset_representatives(proj1, q1.order)
    reps2 = _coset_representatives(proj2, q2.order)
    for beta in _iter_isomorphisms(q1, q2):
        phi = _compatible_derived_iso(g1, g2, d1, d2, reps1, reps2, beta.mapping)
        if phi is not None:
            return IsoclinismWitness(central_quotient_iso=beta, derived_iso=phi)
    return None


def _coset_representatives(proj: np.ndarray, count: int) -> np.ndarray:
    reps = np.full(count, -1, dtype=np.int64)
    for g in range(proj.size):
        c = int(proj[g])
        if reps[c] < 0:
            reps[c] = g
    return reps


def _compatible_derived_iso(g1, g2, d1: Subgroup, d2: Subgroup,
                            reps1: np.ndarray, reps2: np.ndarray,
                            beta: np.ndarray) -> dict[int, int] | None:
    # Commutators only depend on central cosets, so beta forces the map on
    # commutator values; it must extend multiplicatively to the derived group.
    phi: dict[int, int] = {g1.identity: g2.identity}
    for i in range(reps1.size):
        for j in range(reps1.size):
            s = g1.commutator(int(reps1[i]), int(reps1[j]))
            t = g2.commutator(int(reps2[beta[i]]), int(reps2[beta[j]]))
            if phi.setdefault(s, t) != t:
                return None
    while True:
        items = list(phi.items())
        for x, fx in items:
            for y, fy in items:
                xy = g1.mul(x, y)
                fxy = g2.mul(fx, fy)
                if phi.setdefault(xy, fxy) != fxy:
                    return None
        if len(phi) == len(items):
            break
    if set(phi) != d1.members or set(phi.values()) != d2.members:
        return None
    for x in phi:
        for y in phi:
            if phi[g1.mul(x, y)] != g2.mul(phi[x], phi[y]):
                return None
    return phi


def all_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by breadth-first closure over added generators.

    Exhaustive and deterministic; meant for orders up to a few dozen.
    """
    trivial = frozenset({group.identity})
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for members in frontier:
            for g in range(group.order):
                if g in members:
                    continue
                bigger = _closure_set(group.table, members | {g}, group.identity)
                if bigger not in seen:
                    seen.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    subs = [group.subgroup(m) for m in seen]
    subs.sort(key=lambda s: (s.order, s.sorted_members))
    return subs


def maximal_subgroups(group: FiniteGroup) -> list[Subgroup]:
    subs = [s for s in all_subgroups(group) if s.order < group.order]
    out = []
    for s in subs:
        if not any(s.members < t.members for t in subs):
            out.append(s)
    return out


def normal_subgroups(group: FiniteGroup) -> list[Subgroup]:
    return [s for s in all_subgroups(group) if s.is_normal]
