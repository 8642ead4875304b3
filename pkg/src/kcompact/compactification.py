"""Equivariant and ordinary K-rings of a regular compactification.

An instance is a root system together with a smooth subdivision ``F_+``
of the positive chamber.  Equivariant classes are stored in the
``(I, v)`` basis: ``x = sum_v lambda_v(u) * a_v * (1 (x) f_v)`` where
``lambda_v = prod_{alpha in I_v} (1 - e^{s alpha(u)})``, ``v in C^{I_v}``,
and each ``a_v`` is a GKM class on ``F_+`` with values in
``R(T) (x) R(T)^W``.  The sign ``s`` is +1 for the ``"dsd"`` convention
and -1 for ``"wd"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from typing import Sequence

from .fan import (
    Fan,
    FanError,
    NonGenericError,
    PLFunction,
    Report,
    check_ample,
    facet_orthogonal_to_root,
    moment_order,
    star_property_violations,
    validate_positive_subdivision,
    wall_character,
)
from .linalg import smith_normal_form
from .laurent import Laurent, Tensor, divide_exact, tensor_act_right, tensor_divisible_by_u_binomial
from .steinberg import FlagKClass, characteristic_image, flag_multiply, lambda_product, steinberg_basis, structure_table
from .toric import (
    GKMClass,
    basis_matrix,
    check_basis_matrix,
    expand_in_orbit_basis,
    orbit_class,
    ray_generator,
)
from .weyl import RootSystem, c_index, is_invariant, weyl_group

CONVENTIONS = {"dsd": 1, "wd": -1}


class CompactificationError(ArithmeticError):
    pass


def _default_directions(n: int):
    yield tuple(range(1, n + 1))
    for scale in range(2, 6):
        for base in iproduct(range(1, scale + 2), repeat=n):
            yield tuple(scale * b + i for i, b in enumerate(base))


def find_ample(F: Fan, bound: int = 2) -> PLFunction:
    """Brute-force search for an ample PL function with values in ``[-bound, bound]``."""
    if len(F.maximal_cones) == 1:
        return PLFunction(F, [0] * len(F.rays))
    for vals in iproduct(range(-bound, bound + 1), repeat=len(F.rays)):
        psi = PLFunction(F, vals)
        if check_ample(F, psi).ok:
            return psi
    raise FanError("no ample PL function with small values was found")


class Compactification:
    """Instance data plus the cached bases every computation needs."""

    def __init__(
        self,
        rs: RootSystem,
        fan: Fan,
        psi: Sequence[int] | None = None,
        direction: Sequence[int] | None = None,
        convention: str = "dsd",
        name: str | None = None,
    ):
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        rep = validate_positive_subdivision(rs, fan)
        if not rep.ok:
            raise FanError(f"not a smooth subdivision of the positive chamber: {rep.failures}")
        self.rs, self.fan, self.name = rs, fan, name
        self.convention = convention
        self.sign = CONVENTIONS[convention]
        self.psi = PLFunction(fan, psi) if psi is not None else find_ample(fan)
        if direction is not None:
            self.direction = tuple(direction)
            self.cells = moment_order(fan, self.psi, self.direction)
        else:
            for d in _default_directions(fan.dim):
                try:
                    self.cells = moment_order(fan, self.psi, d)
                except (NonGenericError, FanError):
                    continue
                self.direction = d
                break
            else:
                raise FanError("no generic direction found; supply bb_direction")
        viol = star_property_violations(self.cells)
        if viol:
            raise FanError(f"star property fails at {viol}")
        brep = check_basis_matrix(basis_matrix(fan, self.cells))
        if not brep.ok:
            raise FanError(f"orbit basis matrix is not triangular: {brep.failures}")
        self.W = weyl_group(rs)
        self.basis = steinberg_basis(rs)
        self.n = rs.rank
        self.unit_cell = next(i for i, c in enumerate(self.cells) if not c.tau)

    @classmethod
    def wonderful(cls, rs: RootSystem, convention: str = "dsd") -> "Compactification":
        from .fan import positive_chamber_fan

        return cls(rs, positive_chamber_fan(rs), convention=convention, name=f"wonderful {rs.name or ''}".strip())

    def __repr__(self):
        return f"Compactification({self.name or self.rs!r}, m={self.m}, convention={self.convention!r})"

    @property
    def m(self) -> int:
        return len(self.fan.maximal_cones)

    @property
    def size(self) -> int:
        return len(self.W)

    # -- lattices ----------------------------------------------------------------
    def weight_of(self, chi: Sequence[int]) -> tuple:
        """``M`` coordinates -> weight lattice."""
        return self.rs.character(chi)

    def lift(self, g: Laurent) -> Tensor:
        """``M``-valued Laurent element -> ``g(u) (x) 1``."""
        z = (0,) * self.n
        return Tensor._raw(2 * self.n, {self.weight_of(e) + z: c for e, c in g.terms.items()})

    def lift_class(self, g: GKMClass) -> GKMClass:
        return g.map(self.lift)

    @cached_property
    def subset_of(self) -> tuple:
        c = c_index(self.rs)
        return tuple(c[w] for w in self.W)

    def lam(self, I) -> Tensor:
        return Tensor.left(lambda_product(self.rs, I, self.sign))

    @cached_property
    def lambdas(self) -> tuple:
        return tuple(self.lam(I) for I in self.subset_of)

    @cached_property
    def f_right(self) -> tuple:
        return tuple(Tensor.right(f) for f in self.basis.elements)

    @cached_property
    def table(self) -> tuple:
        return structure_table(self.rs)

    def zero_coord(self) -> GKMClass:
        return GKMClass.constant(self.fan, Tensor(self.n))

    def one_coord(self) -> GKMClass:
        return GKMClass.constant(self.fan, Tensor._raw(2 * self.n, {(0,) * (2 * self.n): 1}))

    def word(self, k: int) -> str:
        return self.W[k].word_str()

    def _index(self, v) -> int:
        if isinstance(v, int):
            return v
        if isinstance(v, str):
            for k, w in enumerate(self.W):
                if w.word_str() == v:
                    return k
            raise KeyError(v)
        return self.W.index(v)


# -- equivariant classes -------------------------------------------------------------


class EquivariantClass:
    """Coordinates ``a_v`` (one GKM class per ``v in W``) in the ``(I, v)`` basis."""

    __slots__ = ("inst", "coords")

    def __init__(self, inst: Compactification, coords: Sequence[GKMClass]):
        if len(coords) != inst.size:
            raise CompactificationError("one coordinate per Weyl group element is required")
        self.inst = inst
        self.coords = tuple(coords)

    @classmethod
    def zero(cls, inst: Compactification) -> "EquivariantClass":
        return cls(inst, [inst.zero_coord()] * inst.size)

    @classmethod
    def from_toric(cls, inst: Compactification, g: GKMClass) -> "EquivariantClass":
        """``g (x) 1`` in the ``v = e`` slot."""
        coords = [inst.zero_coord()] * inst.size
        coords[0] = inst.lift_class(g)
        return cls(inst, coords)

    def __add__(self, other):
        return EquivariantClass(self.inst, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return EquivariantClass(self.inst, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return EquivariantClass(self.inst, [-a for a in self.coords])

    def __eq__(self, other):
        return isinstance(other, EquivariantClass) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coords)

    def scale(self, g: GKMClass) -> "EquivariantClass":
        """Multiply by an element of ``K_T(T+) (x) R(G)`` given as a tensor-valued GKM class."""
        return EquivariantClass(self.inst, [a * g for a in self.coords])

    def tuple(self) -> tuple:
        """``f_sigma = sum_v lambda_v a_{v,sigma} (1 (x) f_v)`` for each maximal cone."""
        inst = self.inst
        out = []
        for s in range(inst.m):
            acc = Tensor(inst.n)
            for k, a in enumerate(self.coords):
                val = a.values[s]
                if not val.is_zero():
                    acc = acc + inst.lambdas[k] * val * inst.f_right[k]
            out.append(acc)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            self.inst.word(k): a.to_json() for k, a in enumerate(self.coords) if not a.is_zero()
        }

    def __repr__(self):
        parts = [f"{self.inst.word(k)}: {a!r}" for k, a in enumerate(self.coords) if not a.is_zero()]
        return "EquivariantClass{" + ", ".join(parts) + "}"


def check_membership(inst: Compactification, values: Sequence[Tensor]) -> Report:
    """Conditions (i) and (ii) on a tuple ``sigma -> R(T) (x) R(T)``."""
    rep = Report()
    F, rs = inst.fan, inst.rs
    gens = inst.W.simple_reflections
    for s in range(inst.m):
        f = values[s]
        for i in rs.simple_indices:
            if not facet_orthogonal_to_root(F, s, i):
                continue
            diff = tensor_act_right(gens[i].matrix, f) - f
            if not tensor_divisible_by_u_binomial(diff, rs.simple_root(i)):
                rep.fail("simple_root_congruence", cone=list(F.maximal_cones[s]), root=i)
    for a, b in F.adjacent_pairs():
        chi = wall_character(F, a, b)
        if not tensor_divisible_by_u_binomial(values[a] - values[b], inst.weight_of(chi)):
            rep.fail("wall_congruence", cones=[list(F.maximal_cones[a]), list(F.maximal_cones[b])], chi=list(chi))
    return rep


def basis_element(inst: Compactification, I, v) -> EquivariantClass:
    """``prod_{alpha in I} (1 - e^{alpha(u)}) (x) f_v`` for ``v in C^I``."""
    k = inst._index(v)
    I = frozenset(I)
    if inst.subset_of[k] != I:
        raise CompactificationError(f"{inst.word(k)} is not in C^{sorted(I)}")
    coords = [inst.zero_coord()] * inst.size
    coords[k] = inst.one_coord()
    return EquivariantClass(inst, coords)


def basis_elements(inst: Compactification) -> list:
    return [basis_element(inst, inst.subset_of[k], k) for k in range(inst.size)]


def unit(inst: Compactification) -> EquivariantClass:
    return basis_element(inst, (), 0)


def _check_support(inst: Compactification, i: int, j: int, k: int):
    I, J = inst.subset_of[i], inst.subset_of[j]
    if not inst.subset_of[k] <= I | J:
        raise CompactificationError(
            f"structure constant a^{inst.word(k)}_({inst.word(i)},{inst.word(j)}) violates the support property"
        )


def multiply_structural(a: EquivariantClass, b: EquivariantClass) -> EquivariantClass:
    """Product from the structure constants of the Steinberg basis."""
    inst = a.inst
    out = [inst.zero_coord()] * inst.size
    for i, ai in enumerate(a.coords):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b.coords):
            if bj.is_zero():
                continue
            ab = ai * bj
            I, J = inst.subset_of[i], inst.subset_of[j]
            for k, c in enumerate(inst.table[i][j]):
                if c.is_zero():
                    continue
                _check_support(inst, i, j, k)
                K = inst.subset_of[k]
                factor = inst.lam(I & J) * inst.lam((I | J) - K) * Tensor.right(c)
                out[k] = out[k] + ab * factor
    return EquivariantClass(inst, out)


def coordinates_of(inst: Compactification, values: Sequence[Tensor], check: bool = True) -> EquivariantClass:
    """Solve for the ``(I, v)`` coordinates of a tuple ``sigma -> R(T) (x) R(T)``."""
    per_cone = []
    for val in values:
        coeffs = inst.basis.expand_tensor(val, check=check)
        row = []
        for k, c in enumerate(coeffs):
            q = divide_exact(c, inst.lambdas[k])
            if q is None:
                raise CompactificationError(
                    f"coefficient of f_{inst.word(k)} is not divisible by its lambda factor; not a member"
                )
            row.append(q)
        per_cone.append(row)
    coords = []
    for k in range(inst.size):
        g = GKMClass(inst.fan, [per_cone[s][k] for s in range(inst.m)])
        if check:
            rep = g.wall_report(inst.weight_of)
            if not rep.ok:
                raise CompactificationError(f"coordinate {inst.word(k)} fails the wall congruences: {rep.failures}")
        coords.append(g)
    return EquivariantClass(inst, coords)


def multiply_pointwise(a: EquivariantClass, b: EquivariantClass, check: bool = True) -> EquivariantClass:
    """Product computed fixed point by fixed point, then re-expanded."""
    inst = a.inst
    ta, tb = a.tuple(), b.tuple()
    prod = [x * y for x, y in zip(ta, tb)]
    if check:
        rep = check_membership(inst, prod)
        if not rep.ok:
            raise CompactificationError(f"pointwise product is not a member: {rep.failures}")
    return coordinates_of(inst, prod, check=check)


def equivariant_table(inst: Compactification, method: str = "structural") -> list:
    """``T[i][j]`` = product of the ``i``-th and ``j``-th basis elements."""
    mult = multiply_structural if method == "structural" else multiply_pointwise
    B = basis_elements(inst)
    return [[mult(x, y) for y in B] for x in B]


def oracle_agreement(inst: Compactification) -> Report:
    """``multiply_structural == multiply_pointwise`` on all basis pairs."""
    rep = Report()
    B = basis_elements(inst)
    for i, x in enumerate(B):
        for j, y in enumerate(B):
            s = multiply_structural(x, y)
            p = multiply_pointwise(x, y)
            if s != p:
                rep.fail("product_mismatch", left=inst.word(i), right=inst.word(j))
    rep.data["pairs"] = len(B) ** 2
    return rep


# -- ordinary ring -------------------------------------------------------------------


@dataclass(frozen=True)
class OrdinaryClass:
    """``sum_{v, i} coeffs[v][i] * xbar_i * gamma_v`` with ``K(G/B)`` coefficients."""

    ring: "OrdinaryRing"
    coeffs: tuple

    def __add__(self, other):
        return OrdinaryClass(
            self.ring, tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        return OrdinaryClass(
            self.ring, tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other):
        return self.ring.multiply(self, other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use the inverse of the equivariant class instead")
        acc = self.ring.one()
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other):
        return isinstance(other, OrdinaryClass) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.coeffs for c in row)

    def integer_vector(self) -> tuple:
        """Coordinates in the Z-basis ``fbar_w xbar_i gamma_v``, ordered by ``(v, i, w)``."""
        return tuple(x for row in self.coeffs for c in row for x in c.coeffs)

    def to_json(self) -> dict:
        out = {}
        for v, row in enumerate(self.coeffs):
            for i, c in enumerate(row):
                if not c.is_zero():
                    out[f"{self.ring.inst.word(v)}|{i}"] = list(c.coeffs)
        return out


class OrdinaryRing:
    """``K(X) = sum_v R(T+) gamma_v`` with ``R(T+) = sum_i K(G/B) xbar_i``."""

    def __init__(self, inst: Compactification, lambda_sign: int | None = None):
        self.inst = inst
        rs = inst.rs
        # lambda_sign other than inst.sign breaks the two-path agreement; kept for tests
        self.lambda_sign = inst.sign if lambda_sign is None else lambda_sign
        self.nW = inst.size
        self.m = inst.m
        F, cells = inst.fan, inst.cells
        xs = [orbit_class(F, c.tau) for c in cells]
        # xbar_i xbar_j = sum_k c_K(r^k_ij) xbar_k
        self.rbar = tuple(
            tuple(
                tuple(
                    characteristic_image(rs, inst.basis, r.map_exponents(inst.weight_of))
                    for r in expand_in_orbit_basis(F, cells, xi * xj)
                )
                for xj in xs
            )
            for xi in xs
        )
        self.lambda_bar = {
            I: characteristic_image(rs, inst.basis, lambda_product(rs, I, self.lambda_sign))
            for I in set(inst.subset_of)
        }
        consts = [[[c.augment() for c in cs] for cs in row] for row in inst.table]
        gam = []
        for v in range(self.nW):
            row = []
            for v2 in range(self.nW):
                I, J = inst.subset_of[v], inst.subset_of[v2]
                coeffs = []
                for w in range(self.nW):
                    c = consts[v][v2][w]
                    if not c:
                        coeffs.append(FlagKClass.zero(rs))
                        continue
                    K = inst.subset_of[w]
                    if not K <= I | J:
                        raise CompactificationError("support property violated")
                    coeffs.append(flag_multiply(self.lambda_bar[I & J], self.lambda_bar[(I | J) - K]).scale(c))
                row.append(tuple(coeffs))
            gam.append(tuple(row))
        self.gamma = tuple(gam)

    @property
    def rank(self) -> int:
        return self.nW * self.nW * self.m

    def zero(self) -> OrdinaryClass:
        z = FlagKClass.zero(self.inst.rs)
        return OrdinaryClass(self, tuple(tuple(z for _ in range(self.m)) for _ in range(self.nW)))

    def element(self, v: int, i: int, flag: FlagKClass | None = None) -> OrdinaryClass:
        rs = self.inst.rs
        z = FlagKClass.zero(rs)
        flag = flag if flag is not None else FlagKClass.one(rs)
        return OrdinaryClass(
            self,
            tuple(tuple(flag if (a, b) == (v, i) else z for b in range(self.m)) for a in range(self.nW)),
        )

    def one(self) -> OrdinaryClass:
        return self.element(0, self.inst.unit_cell)

    def scalar(self, flag: FlagKClass) -> OrdinaryClass:
        return self.element(0, self.inst.unit_cell, flag)

    def gamma_element(self, v: int) -> OrdinaryClass:
        return self.element(v, self.inst.unit_cell)

    def basis(self) -> list:
        """The Z-basis ``fbar_w xbar_i gamma_v`` ordered by ``(v, i, w)``."""
        rs = self.inst.rs
        return [
            self.element(v, i, FlagKClass.basis(rs, w))
            for v in range(self.nW)
            for i in range(self.m)
            for w in range(self.nW)
        ]

    def multiply(self, a: OrdinaryClass, b: OrdinaryClass) -> OrdinaryClass:
        rs = self.inst.rs
        z = FlagKClass.zero(rs)
        out = [[z] * self.m for _ in range(self.nW)]
        for v, row in enumerate(a.coeffs):
            for i, x in enumerate(row):
                if x.is_zero():
                    continue
                for v2, row2 in enumerate(b.coeffs):
                    for j, y in enumerate(row2):
                        if y.is_zero():
                            continue
                        xy = flag_multiply(x, y)
                        for k, r in enumerate(self.rbar[i][j]):
                            if r.is_zero():
                                continue
                            xyr = flag_multiply(xy, r)
                            for w, g in enumerate(self.gamma[v][v2]):
                                if g.is_zero():
                                    continue
                                out[w][k] = out[w][k] + flag_multiply(xyr, g)
        return OrdinaryClass(self, tuple(tuple(r) for r in out))

    def table(self) -> list:
        """Products of the generators ``xbar_i gamma_v`` pairwise."""
        gens = [self.element(v, i) for v in range(self.nW) for i in range(self.m)]
        return [[self.multiply(x, y) for y in gens] for x in gens]


def ordinary_ring(inst: Compactification) -> OrdinaryRing:
    return OrdinaryRing(inst)


def project(ring: OrdinaryRing, x: EquivariantClass) -> OrdinaryClass:
    """Base change to ``K(X)``: orbit-basis expansion, then ``c_K`` on ``u`` and augmentation on ``v``."""
    inst = ring.inst
    coeffs = []
    for a in x.coords:
        row = []
        for r in expand_in_orbit_basis(inst.fan, inst.cells, a, lift=inst.lift):
            row.append(characteristic_image(inst.rs, inst.basis, r.augment_v()))
        coeffs.append(tuple(row))
    return OrdinaryClass(ring, tuple(coeffs))


def lift_generator(inst: Compactification, v: int, i: int) -> EquivariantClass:
    """Equivariant representative of ``xbar_i gamma_v``."""
    coords = [inst.zero_coord()] * inst.size
    coords[v] = inst.lift_class(orbit_class(inst.fan, inst.cells[i].tau))
    return EquivariantClass(inst, coords)


def ordinary_rank_certificate(inst: Compactification, ring: OrdinaryRing | None = None) -> Report:
    """Z-rank of ``K(X)`` from projected lifts ``(f_w (x) 1) x(tau_i) gamma_v``.

    The images must span ``Z^{|W|^2 m}`` with all Smith invariants equal to 1.
    """
    ring = ring or OrdinaryRing(inst)
    vecs = []
    for v in range(inst.size):
        for i in range(inst.m):
            x = lift_generator(inst, v, i)
            for f in inst.basis.elements:
                g = GKMClass.constant(inst.fan, Tensor.left(f))
                vecs.append(list(project(ring, x.scale(g)).integer_vector()))
    _, D, _ = smith_normal_form(vecs)
    diag = [D[k][k] for k in range(min(len(D), len(D[0])))]
    rank = sum(1 for d in diag if d)
    rep = Report()
    if rank != ring.rank or any(abs(d) != 1 for d in diag):
        rep.fail("ordinary_rank", expected=ring.rank, got=rank)
    rep.data.update(rank=rank, expected=ring.rank, unimodular=all(abs(d) == 1 for d in diag))
    return rep


class OrdinaryOracle:
    """Independent path: multiply lifts pointwise, then base change."""

    def __init__(self, inst: Compactification, ring: OrdinaryRing | None = None):
        self.inst = inst
        self.ring = ring or OrdinaryRing(inst)

    def product(self, v: int, i: int, v2: int, j: int) -> OrdinaryClass:
        x = lift_generator(self.inst, v, i)
        y = lift_generator(self.inst, v2, j)
        return project(self.ring, multiply_pointwise(x, y))

    def table(self) -> list:
        idx = [(v, i) for v in range(self.inst.size) for i in range(self.inst.m)]
        return [[self.product(v, i, v2, j) for v2, j in idx] for v, i in idx]


def ordinary_oracle(inst: Compactification, ring: OrdinaryRing | None = None) -> OrdinaryOracle:
    return OrdinaryOracle(inst, ring)


def two_path_agreement(inst: Compactification, ring: OrdinaryRing | None = None) -> Report:
    rep = Report()
    ring = ring or OrdinaryRing(inst)
    oracle = OrdinaryOracle(inst, ring)
    a, b = ring.table(), oracle.table()
    labels = [f"{inst.word(v)}|{i}" for v in range(inst.size) for i in range(inst.m)]
    for p, (ra, rb) in enumerate(zip(a, b)):
        for q, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                rep.fail("table_mismatch", left=labels[p], right=labels[q])
    rep.data["entries"] = len(labels) ** 2
    return rep


# -- presentation over the wonderful compactification ----------------------------


def generator_class(inst: Compactification, j: int) -> EquivariantClass:
    return EquivariantClass.from_toric(inst, ray_generator(inst.fan, j))


def _power(inst: Compactification, x: EquivariantClass, k: int) -> EquivariantClass:
    if k < 0:
        # generators are units: invert the restrictions
        x = EquivariantClass(inst, [a.map(lambda t: t**-1) if i == 0 else a for i, a in enumerate(x.coords)])
        k = -k
    acc = unit(inst)
    for _ in range(k):
        acc = multiply_structural(acc, x)
    return acc


def monomial_class(inst: Compactification, exponents: Sequence[int]) -> EquivariantClass:
    acc = unit(inst)
    for j, k in enumerate(exponents):
        if k:
            acc = multiply_structural(acc, _power(inst, generator_class(inst, j), k))
    return acc


def character_class(inst: Compactification, i: int) -> EquivariantClass:
    """``e^{alpha_i(u)} (x) 1`` as a constant tuple."""
    coords = [inst.zero_coord()] * inst.size
    w = inst.rs.simple_root(i)
    coords[0] = GKMClass.constant(inst.fan, Tensor.left(Laurent.monomial(w)))
    return EquivariantClass(inst, coords)


def verify_presentation_over_wonderful(inst: Compactification, exponents: dict | None = None) -> Report:
    """Relations (a), (b), spanning (c) and rank (d), equivariantly and after base change.

    ``exponents`` overrides ``{i: [<alpha_i, v_j>]_j}`` for negative controls.
    """
    rep = Report()
    F, rs = inst.fan, inst.rs
    exps = {i: [r[i] for r in F.rays] for i in rs.simple_indices}
    if exponents:
        exps.update({int(k): list(v) for k, v in exponents.items()})
    ring = OrdinaryRing(inst)
    gens = [generator_class(inst, j) for j in range(len(F.rays))]
    for g in gens:
        if not check_membership(inst, g.tuple()).ok:
            rep.fail("generator_not_member")
    one = unit(inst)

    # (a) non-face relations
    non_faces = F.minimal_non_faces()
    for nf in non_faces:
        acc = one
        for j in nf:
            acc = multiply_structural(acc, one - gens[j])
        if not acc.is_zero():
            rep.fail("a.non_face", rays=list(nf))
        if not project(ring, acc).is_zero():
            rep.fail("a.non_face.ordinary", rays=list(nf))
    # (b) monomial relations
    for i in rs.simple_indices:
        lhs = monomial_class(inst, exps[i])
        rhs = character_class(inst, i)
        if lhs != rhs:
            rep.fail("b.monomial", root=i)
        target = ring.scalar(characteristic_image(rs, inst.basis, Laurent.monomial(rs.simple_root(i))))
        if project(ring, lhs) != target:
            rep.fail("b.monomial.ordinary", root=i)
    # the same relations computed inside the ordinary model itself
    gbar = [project(ring, g) for g in gens]
    for nf in non_faces:
        acc = ring.one()
        for j in nf:
            acc = acc * (ring.one() - gbar[j])
        if not acc.is_zero():
            rep.fail("a.non_face.ordinary_model", rays=list(nf))
    for i in rs.simple_indices:
        acc = ring.one()
        for j, k in enumerate(exps[i]):
            if k > 0:
                acc = acc * gbar[j] ** k
            elif k < 0:
                inv = project(ring, _power(inst, gens[j], -1))
                acc = acc * inv ** (-k)
        target = ring.scalar(characteristic_image(rs, inst.basis, Laurent.monomial(rs.simple_root(i))))
        if acc != target:
            rep.fail("b.monomial.ordinary_model", root=i)

    # (c) face monomials times the wonderful basis reach every basis element
    one_t = Tensor._raw(2 * inst.n, {(0,) * (2 * inst.n): 1})
    reached = 0
    for v in range(inst.size):
        bv = basis_element(inst, inst.subset_of[v], v)
        for i, cell in enumerate(inst.cells):
            x = one
            for j in cell.tau:
                x = multiply_structural(x, one - gens[j])
            p = multiply_structural(x, bv)
            ok = True
            for w, a in enumerate(p.coords):
                r = expand_in_orbit_basis(F, inst.cells, a, lift=inst.lift)
                for k, c in enumerate(r):
                    target = one_t if (w, k) == (v, i) else 0
                    if c != target:
                        ok = False
            if ok:
                reached += 1
            else:
                rep.fail("c.spanning", v=inst.word(v), cell=i)
            # ordinary image is the matching Z-basis vector
            if project(ring, p) != ring.element(v, i):
                rep.fail("c.spanning.ordinary", v=inst.word(v), cell=i)
    # (d) rank over the wonderful ring
    rank = reached // inst.size if reached % inst.size == 0 else None
    if rank != inst.m:
        rep.fail("d.rank", expected=inst.m, got=rank)
    rep.data.update(
        rank_over_wonderful=rank,
        ordinary_rank=ring.rank,
        non_faces=[list(nf) for nf in non_faces],
        exponents={str(i): exps[i] for i in sorted(exps)},
    )
    return rep
