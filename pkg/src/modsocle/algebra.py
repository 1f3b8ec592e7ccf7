"""The modular group algebra F_pG, its center, and the ideals studied here.

The center ZF_pG is handled in class coordinates (one coordinate per
conjugacy class, basis the class sums); full F_pG coordinates are used only
where two-sidedness matters. Dimensions are always reported over the prime
field: whether the socle of the center or the Reynolds ideal is an ideal of
F_pG does not depend on the field of characteristic p chosen.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from . import fplin
from .errors import (
    DimensionMismatchError,
    DualRouteDisagreementError,
    HypothesisViolationError,
    NotNormalError,
)
from .fplin import FpSubspace, SpanBuilder
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    derived_subgroup,
    generate_subgroup,
    hall_complement,
    nilpotency_class,
    p_decomposition,
    pprime_core,
    pprime_sections,
    quotient,
    sylow_subgroup,
)


class AlgebraElement:
    """Element of F_pG as a coefficient vector indexed by group elements."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "GroupAlgebra", coeffs):
        self.algebra = algebra
        c = np.array(coeffs, dtype=np.int64) % algebra.p
        if c.shape != (algebra.group.order,):
            raise DimensionMismatchError(
                f"need {algebra.group.order} coefficients, got shape {c.shape}")
        c.flags.writeable = False
        self.coeffs = c

    def _check(self, other: "AlgebraElement") -> None:
        if self.algebra is not other.algebra and (
                self.algebra.group is not other.algebra.group or self.algebra.p != other.algebra.p):
            raise DimensionMismatchError("elements live in different group algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, self.coeffs - other.coeffs)

    def __rmul__(self, scalar: int):
        return AlgebraElement(self.algebra, self.coeffs * int(scalar))

    def __mul__(self, other):
        if isinstance(other, int):
            return AlgebraElement(self.algebra, self.coeffs * other)
        self._check(other)
        alg = self.algebra
        table = alg.group.table
        out = np.zeros(alg.group.order, dtype=np.int64)
        for g in np.nonzero(self.coeffs)[0]:
            np.add.at(out, table[g], int(self.coeffs[g]) * other.coeffs)
        return AlgebraElement(alg, out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        acc = self.algebra.one()
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        return bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((id(self.algebra.group), self.algebra.p, self.coeffs.tobytes()))

    def __repr__(self):
        support = int(np.count_nonzero(self.coeffs))
        return f"AlgebraElement(p={self.algebra.p}, support={support})"

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def identity_coefficient(self) -> int:
        """The symmetrizing linear form: the coefficient of the identity."""
        return int(self.coeffs[self.algebra.group.identity])

    def is_central(self) -> bool:
        cls = self.algebra.group.conjugacy_classes
        reps = np.array(cls.representatives, dtype=np.int64)
        return bool(np.array_equal(self.coeffs, self.coeffs[reps[cls.class_of]]))

    def central_coords(self) -> np.ndarray:
        if not self.is_central():
            raise DimensionMismatchError("element is not central")
        cls = self.algebra.group.conjugacy_classes
        return self.coeffs[np.array(cls.representatives, dtype=np.int64)].copy()


class CentralElement(AlgebraElement):
    """Algebra element whose coefficients are constant on conjugacy classes."""

    def __init__(self, algebra: "GroupAlgebra", coeffs):
        super().__init__(algebra, coeffs)
        if not self.is_central():
            raise DimensionMismatchError("coefficients are not class-constant")


def lambda_form(a: AlgebraElement) -> int:
    return a.identity_coefficient()


@dataclass(frozen=True, eq=False)
class PHShape:
    """Decomposition G = P x| H with normal Sylow p-subgroup and abelian H."""

    sylow: Subgroup
    complement: Subgroup


@dataclass(frozen=True, eq=False)
class SocIdealVerdict:
    """Both routes of the socle ideal test (they are required to agree)."""

    prime: int
    is_ideal: bool
    contained_in_derived_sum: bool
    socle_fg: FpSubspace
    derived_sum_space: FpSubspace
    socle_dim: int
    jacobson_dim: int
    center_dim: int


@dataclass(frozen=True, eq=False)
class ClassSelection:
    """Conjugacy classes whose radical basis elements survive a quotient map.

    For each selected class C the image of its basis element is k times the
    corresponding basis element downstairs, with k = |C| / |image class|
    coprime to p; membership is computed both from that criterion and from
    the projected element directly, and the two must agree.
    """

    n_sub: Subgroup
    selected: tuple[int, ...]
    multipliers: dict[int, int]
    elements: dict[int, np.ndarray]
    image_class: dict[int, int]
    image_elements: dict[int, np.ndarray]
    quotient_algebra: "GroupAlgebra"
    projection: np.ndarray


@dataclass(frozen=True, eq=False)
class QuotientAnnihilatorResult:
    """Common annihilator downstairs of the surviving radical images."""

    space: FpSubspace
    quotient_algebra: "GroupAlgebra"
    contained_in_derived_sum: Optional[bool]


class GroupAlgebra:
    """F_pG for a finite group G and a prime p."""

    def __init__(self, group: FiniteGroup, p: int):
        self.group = group
        self.p = fplin.validate_prime(p)
        self._quotient_cache: dict[frozenset, tuple["GroupAlgebra", np.ndarray]] = {}

    def __repr__(self):
        return f"GroupAlgebra(F_{self.p}[{self.group.name}])"

    @property
    def dim(self) -> int:
        return self.group.order

    @property
    def classes(self):
        return self.group.conjugacy_classes

    @property
    def center_dim(self) -> int:
        return self.classes.count

    # -- elements ---------------------------------------------------------

    def element(self, coeffs) -> AlgebraElement:
        return AlgebraElement(self, coeffs)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, np.zeros(self.dim, dtype=np.int64))

    def one(self) -> AlgebraElement:
        return self.basis_element(self.group.identity)

    def basis_element(self, g: int) -> AlgebraElement:
        c = np.zeros(self.dim, dtype=np.int64)
        c[g] = 1
        return AlgebraElement(self, c)

    def subset_sum(self, members: Iterable[int]) -> AlgebraElement:
        c = np.zeros(self.dim, dtype=np.int64)
        for m in members:
            c[int(m)] += 1
        return AlgebraElement(self, c)

    def center_basis(self) -> list[CentralElement]:
        """The class sums, in class order."""
        out = []
        for cls in self.classes.classes:
            c = np.zeros(self.dim, dtype=np.int64)
            c[list(cls)] = 1
            out.append(CentralElement(self, c))
        return out

    # -- class coordinates --------------------------------------------------

    @cached_property
    def class_structure_constants(self) -> np.ndarray:
        """a[i, j, l] with (class_i)+ (class_j)+ = sum_l a[i, j, l] (class_l)+, mod p."""
        cls = self.classes
        k = cls.count
        n = self.dim
        sizes = np.array(cls.sizes(), dtype=np.int64)
        table = self.group.table
        class_of = cls.class_of
        a = np.zeros((k, k, k), dtype=np.int64)
        for i, members in enumerate(cls.classes):
            prod_class = class_of[table[np.array(members, dtype=np.int64)]]
            for j, others in enumerate(cls.classes):
                counts = np.bincount(prod_class[:, list(others)].ravel(), minlength=k)
                a[i, j] = counts // sizes
        return a % self.p

    def central_mult_matrix(self, vec) -> np.ndarray:
        """Matrix of multiplication by the central element with class coords `vec`."""
        v = np.asarray(vec, dtype=np.int64) % self.p
        return np.einsum("i,ijl->lj", v, self.class_structure_constants) % self.p

    def central_multiply(self, u, v) -> np.ndarray:
        return self.central_mult_matrix(u) @ (np.asarray(v, dtype=np.int64) % self.p) % self.p

    def expand_central(self, vec) -> np.ndarray:
        """Class coordinates -> F_pG coefficient vector."""
        v = np.asarray(vec, dtype=np.int64) % self.p
        return v[self.classes.class_of]

    def restrict_central(self, coeffs) -> np.ndarray:
        c = np.asarray(coeffs, dtype=np.int64) % self.p
        reps = np.array(self.classes.representatives, dtype=np.int64)
        if not np.array_equal(c, c[reps[self.classes.class_of]]):
            raise DimensionMismatchError("coefficients are not class-constant")
        return c[reps]

    def central_element(self, vec) -> CentralElement:
        return CentralElement(self, self.expand_central(vec))

    # -- radical, socle, Reynolds ideal ------------------------------------

    @cached_property
    def _frobenius_power_matrix(self) -> np.ndarray:
        """Matrix of x -> x^(p^m) on the center, p^m >= its dimension.

        On a commutative algebra over the prime field the p-th power map is
        linear, so its iterate is a matrix power; the kernel is exactly the
        nilradical, which for the center equals the Jacobson radical.
        """
        k = self.center_dim
        p = self.p
        a = self.class_structure_constants
        cols = []
        for i in range(k):
            mult_i = a[i].T
            v = np.zeros(k, dtype=np.int64)
            v[i] = 1
            for _ in range(p - 1):
                v = mult_i @ v % p
            cols.append(v)
        frob = np.column_stack(cols) if cols else np.zeros((0, 0), dtype=np.int64)
        m = 0
        q = 1
        while q < k:
            q *= p
            m += 1
        power = np.eye(k, dtype=np.int64)
        for _ in range(m):
            power = power @ frob % p
        return power

    def jacobson_center(self) -> FpSubspace:
        """J(ZF_pG) in class coordinates, as the kernel of the iterated
        p-th power map."""
        return fplin.nullspace(self._frobenius_power_matrix, self.p, cols=self.center_dim)

    @cached_property
    def ph_shape(self) -> Optional[PHShape]:
        """The decomposition G = P x| H (normal Sylow p, abelian complement),
        or None when G does not have that shape."""
        syl = sylow_subgroup(self.group, self.p)
        if not syl.is_normal:
            return None
        comp = hall_complement(self.group, self.p)
        arr = np.array(comp.sorted_members, dtype=np.int64)
        t = self.group.table
        if not np.array_equal(t[np.ix_(arr, arr)], t[np.ix_(arr, arr)].T):
            return None
        return PHShape(sylow=syl, complement=comp)

    def require_ph_shape(self) -> PHShape:
        shape = self.ph_shape
        if shape is None:
            raise HypothesisViolationError(
                f"{self.group.name} is not a semidirect product of a normal Sylow "
                f"{self.p}-subgroup by an abelian complement")
        return shape

    def jacobson_center_basis(self) -> dict[int, np.ndarray]:
        """Radical basis elements b_C by class index, in class coordinates.

        Defined when G = P x| H: for a class C not inside the p'-core, b_C is
        the class sum when p divides |C|, otherwise the class sum minus |C|
        times the (central) p'-part of any member. The vectors are checked to
        be linearly independent.
        """
        self.require_ph_shape()
        core = pprime_core(self.group, self.p)
        cls = self.classes
        out: dict[int, np.ndarray] = {}
        for i, members in enumerate(cls.classes):
            if set(members) <= core.members:
                continue
            vec = np.zeros(cls.count, dtype=np.int64)
            vec[i] = 1
            if len(members) % self.p != 0:
                gpp = p_decomposition(self.group, members[0], self.p).pprime_part
                j = int(cls.class_of[gpp])
                if len(cls.classes[j]) != 1:
                    raise DualRouteDisagreementError(
                        "p'-part of a p'-length class is not central")
                vec[j] = (vec[j] - len(members)) % self.p
            out[i] = vec
        if out:
            got = fplin.rank(np.array(list(out.values())), self.p)
            if got != len(out):
                raise DualRouteDisagreementError("radical basis elements are dependent")
        return out

    def socle_center(self) -> FpSubspace:
        """soc(ZF_pG) in class coordinates: the annihilator of the radical
        inside the center."""
        jac = self.jacobson_center()
        maps = [self.central_mult_matrix(row) for row in jac.basis]
        return fplin.common_nullspace(maps, self.p, self.center_dim)

    def reynolds_center(self) -> FpSubspace:
        """Span of the p'-section sums, in class coordinates."""
        rows = []
        for section in pprime_sections(self.group, self.p):
            vec = np.zeros(self.center_dim, dtype=np.int64)
            vec[np.unique(self.classes.class_of[list(section)])] = 1
            rows.append(vec)
        return FpSubspace.span(np.array(rows, dtype=np.int64), self.p, self.center_dim)

    def reynolds_space_fg(self) -> FpSubspace:
        rows = [self.expand_central(v) for v in self.reynolds_center().basis]
        return FpSubspace.span(np.array(rows, dtype=np.int64) if rows else
                               np.zeros((0, self.dim), dtype=np.int64), self.p, self.dim)

    # -- F_pG-coordinate subspaces ------------------------------------------

    def embed_central(self, space: FpSubspace) -> FpSubspace:
        if space.ambient != self.center_dim:
            raise DimensionMismatchError("not a class-coordinate subspace")
        rows = np.array([self.expand_central(v) for v in space.basis], dtype=np.int64)
        if rows.size == 0:
            rows = np.zeros((0, self.dim), dtype=np.int64)
        return FpSubspace.span(rows, self.p, self.dim)

    def center_space_fg(self) -> FpSubspace:
        return self.embed_central(FpSubspace.full(self.p, self.center_dim))

    def subgroup_sum_ideal(self, sub: Subgroup | Iterable[int]) -> FpSubspace:
        """S+ . F_pG: the span of the right-coset indicator vectors of S."""
        members = sub.sorted_members if isinstance(sub, Subgroup) else tuple(sorted(set(map(int, sub))))
        arr = np.array(members, dtype=np.int64)
        coset_rep = self.group.table[arr, :].min(axis=0)
        reps = np.unique(coset_rep)
        rows = np.zeros((reps.size, self.dim), dtype=np.int64)
        for r, rep in enumerate(reps):
            rows[r, coset_rep == rep] = 1
        return FpSubspace.from_rref(rows, [int(r) for r in reps], self.p, self.dim)

    def relative_augmentation_ideal(self, n_sub: Subgroup) -> FpSubspace:
        """Kernel of the projection onto F_p[G/N]; equals w(FN) . F_pG."""
        if not n_sub.is_normal:
            raise NotNormalError(f"{n_sub!r} is not normal")
        arr = np.array(n_sub.sorted_members, dtype=np.int64)
        coset_rep = self.group.table[arr, :].min(axis=0)
        reps = np.unique(coset_rep)
        constraints = np.zeros((reps.size, self.dim), dtype=np.int64)
        for r, rep in enumerate(reps):
            constraints[r, coset_rep == rep] = 1
        return fplin.nullspace(constraints, self.p, cols=self.dim)

    def commutator_space(self) -> FpSubspace:
        """Span of the products ab - ba over F_pG.

        Differences within one conjugacy class span the same space, which
        gives a basis of size |G| - (number of classes) directly.
        """
        rows = []
        for members in self.classes.classes:
            rep = members[0]
            for x in members[1:]:
                row = np.zeros(self.dim, dtype=np.int64)
                row[x] = 1
                row[rep] -= 1
                rows.append(row)
        if not rows:
            return FpSubspace.zero(self.p, self.dim)
        return FpSubspace.span(np.array(rows, dtype=np.int64), self.p, self.dim)

    def _left_translate(self, rows: np.ndarray, g: int) -> np.ndarray:
        perm = self.group.table[self.group.inv(g), :]
        return rows[:, perm]

    def _right_translate(self, rows: np.ndarray, g: int) -> np.ndarray:
        perm = self.group.table[:, self.group.inv(g)]
        return rows[:, perm]

    def left_ideal_closure(self, space: FpSubspace) -> FpSubspace:
        """Smallest left ideal of F_pG containing the given subspace."""
        builder = SpanBuilder(self.p, self.dim)
        builder.insert_many(space.basis)
        changed = True
        while changed:
            changed = False
            rows = np.array(builder.to_subspace().basis)
            for g in self.group.generators:
                if builder.insert_many(self._left_translate(rows, g)):
                    changed = True
        return builder.to_subspace()

    def is_ideal(self, space: FpSubspace) -> bool:
        """Closure of the subspace under both translations by the generators.

        Generators suffice: translation by a group element is bijective, so
        closure under each generator forces equality, hence closure under
        all products and inverses.
        """
        if space.ambient != self.dim:
            raise DimensionMismatchError("ideal test needs F_pG coordinates")
        if space.dim == 0:
            return True
        rows = space.basis
        for g in self.group.generators:
            if not space.contains_rows(self._left_translate(rows, g)):
                return False
            if not space.contains_rows(self._right_translate(rows, g)):
                return False
        return True

    # -- quotient maps -------------------------------------------------------

    def quotient_algebra(self, n_sub: Subgroup) -> tuple["GroupAlgebra", np.ndarray]:
        key = n_sub.members
        if key not in self._quotient_cache:
            q, proj = quotient(self.group, n_sub)
            self._quotient_cache[key] = (GroupAlgebra(q, self.p), proj)
        return self._quotient_cache[key]

    def push_to_quotient(self, a: AlgebraElement, n_sub: Subgroup) -> AlgebraElement:
        """Sum coefficients over the cosets of a normal subgroup."""
        qalg, proj = self.quotient_algebra(n_sub)
        out = np.zeros(qalg.dim, dtype=np.int64)
        np.add.at(out, proj, a.coeffs)
        return AlgebraElement(qalg, out)

    def inflate_from_quotient(self, a: AlgebraElement, n_sub: Subgroup) -> AlgebraElement:
        """Adjoint of the projection: constant-on-coset inflation; its image
        is N+ . F_pG."""
        qalg, proj = self.quotient_algebra(n_sub)
        if a.algebra.group is not qalg.group:
            raise DimensionMismatchError("element does not live in the quotient algebra")
        return AlgebraElement(self, a.coeffs[proj])

    # -- the two-route verdicts ----------------------------------------------

    def soc_is_ideal(self) -> SocIdealVerdict:
        """Is soc(ZF_pG) an ideal of F_pG?

        Route 1 closes the socle under generator translations; route 2 tests
        containment in (G')+ . F_pG. The routes must agree.
        """
        soc = self.socle_center()
        soc_fg = self.embed_central(soc)
        derived_sum = self.subgroup_sum_ideal(derived_subgroup(self.group))
        direct = self.is_ideal(soc_fg)
        contained = soc_fg.is_subspace_of(derived_sum)
        if direct != contained:
            raise DualRouteDisagreementError(
                f"socle ideal test disagrees on {self.group.name}: "
                f"direct={direct}, containment={contained}")
        return SocIdealVerdict(
            prime=self.p,
            is_ideal=direct,
            contained_in_derived_sum=contained,
            socle_fg=soc_fg,
            derived_sum_space=derived_sum,
            socle_dim=soc.dim,
            jacobson_dim=self.jacobson_center().dim,
            center_dim=self.center_dim,
        )

    def class_selection(self, n_sub: Subgroup) -> ClassSelection:
        """Classes whose radical basis elements survive projection mod N.

        Membership is decided twice: directly (is the projected element
        nonzero) and by the criterion (image class outside the p'-core
        downstairs and class-size ratio coprime to p).
        """
        basis = self.jacobson_center_basis()
        qalg, proj = self.quotient_algebra(n_sub)
        qcore = pprime_core(qalg.group, self.p)
        qcls = qalg.classes
        qbasis = qalg.jacobson_center_basis()
        selected = []
        multipliers: dict[int, int] = {}
        image_class: dict[int, int] = {}
        image_elements: dict[int, np.ndarray] = {}
        for i, vec in sorted(basis.items()):
            members = self.classes.classes[i]
            pushed = np.zeros(qalg.dim, dtype=np.int64)
            np.add.at(pushed, proj, self.expand_central(vec))
            pushed %= self.p
            direct = bool(pushed.any())
            img = int(qcls.class_of[proj[members[0]]])
            ratio = len(members) // len(qcls.classes[img])
            criterion = (ratio % self.p != 0) and not (
                set(qcls.classes[img]) <= qcore.members)
            if direct != criterion:
                raise DualRouteDisagreementError(
                    f"class selection routes disagree on class {i} of {self.group.name}")
            if not direct:
                continue
            expected = ratio * qalg.expand_central(qbasis[img]) % self.p
            if not np.array_equal(pushed, expected):
                raise DualRouteDisagreementError(
                    f"projected radical element of class {i} is not the expected multiple")
            selected.append(i)
            multipliers[i] = ratio
            image_class[i] = img
            image_elements[img] = qbasis[img]
        return ClassSelection(
            n_sub=n_sub,
            selected=tuple(selected),
            multipliers=multipliers,
            elements={i: basis[i] for i in selected},
            image_class=image_class,
            image_elements=image_elements,
            quotient_algebra=qalg,
            projection=proj,
        )

    def quotient_annihilator(self, n_sub: Subgroup) -> QuotientAnnihilatorResult:
        """Common annihilator downstairs of the projected radical.

        Computed twice: from the surviving basis elements downstairs, and
        from the raw projections of every radical basis element. When the
        socle upstairs is an ideal, the annihilator must land inside the
        coset-sum space of the derived subgroup downstairs.
        """
        selection = self.class_selection(n_sub)
        qalg = selection.quotient_algebra
        maps = [qalg.central_mult_matrix(v) for v in selection.image_elements.values()]
        route1 = fplin.common_nullspace(maps, self.p, qalg.center_dim)
        raw_maps = []
        for i, vec in sorted(self.jacobson_center_basis().items()):
            pushed = np.zeros(qalg.dim, dtype=np.int64)
            np.add.at(pushed, selection.projection, self.expand_central(vec))
            pushed %= self.p
            if pushed.any():
                raw_maps.append(qalg.central_mult_matrix(qalg.restrict_central(pushed)))
        route2 = fplin.common_nullspace(raw_maps, self.p, qalg.center_dim)
        if route1 != route2:
            raise DualRouteDisagreementError(
                f"quotient annihilator routes disagree for {self.group.name}")
        contained: Optional[bool] = None
        if self.soc_is_ideal().is_ideal:
            target = qalg.subgroup_sum_ideal(derived_subgroup(qalg.group))
            contained = qalg.embed_central(route1).is_subspace_of(target)
            if not contained:
                raise DualRouteDisagreementError(
                    f"quotient annihilator of {self.group.name} escapes the "
                    "derived coset-sum space although the socle is an ideal")
        return QuotientAnnihilatorResult(
            space=route1, quotient_algebra=qalg, contained_in_derived_sum=contained)

    def derived_annihilating_witness(self) -> AlgebraElement:
        """Central element y with y . S+ = 0 for every nontrivial subgroup S
        of the derived subgroup, and y outside (G')+ . F_pG.

        Exists for p-groups of nilpotency class exactly two in odd
        characteristic; built from a nontrivial homomorphism of the derived
        subgroup onto the prime field. Every stated property is checked by
        exhaustive enumeration before returning.
        """
        g = self.group
        p = self.p
        if p == 2:
            raise HypothesisViolationError("the witness construction needs odd p")
        order = g.order
        while order % p == 0:
            order //= p
        if order != 1:
            raise HypothesisViolationError("the witness construction needs a p-group")
        if nilpotency_class(g) != 2:
            raise HypothesisViolationError("nilpotency class must be exactly two")
        derived = derived_subgroup(g)
        dgroup, dmembers = derived.as_group()
        ppowers = {dgroup.power(x, p) for x in range(dgroup.order)}
        agreement = generate_subgroup(dgroup, ppowers)
        vgroup, vproj = quotient(dgroup, agreement)
        basis: list[int] = []
        span = {vgroup.identity}
        for v in range(vgroup.order):
            if v not in span:
                basis.append(v)
                span = generate_subgroup(vgroup, set(span) | {v}).members
        coord_first: dict[int, int] = {}
        for exps in itertools.product(range(p), repeat=len(basis)):
            elem = vgroup.identity
            for b, e in zip(basis, exps):
                elem = vgroup.mul(elem, vgroup.power(b, e))
            coord_first[elem] = exps[0] if exps else 0
        coeffs = np.zeros(self.dim, dtype=np.int64)
        for local, parent in enumerate(dmembers):
            coeffs[parent] = coord_first[int(vproj[local])]
        y = AlgebraElement(self, coeffs)
        if not y.is_central():
            raise DualRouteDisagreementError("witness is not central")
        if self.subgroup_sum_ideal(derived).contains(y.coeffs):
            raise DualRouteDisagreementError("witness lies in the derived coset-sum space")
        for sub in all_subgroups(dgroup):
            if sub.order == 1:
                continue
            parent_members = [dmembers[m] for m in sub.sorted_members]
            if not (y * self.subset_sum(parent_members)).is_zero():
                raise DualRouteDisagreementError(
                    f"witness fails to annihilate a subgroup sum of order {sub.order}")
        return y
