"""GKM model of equivariant K-theory of a smooth toric variety.

A class is a tuple of characters, one per maximal cone, with restrictions
to adjacent cones congruent modulo ``1 - e^{-chi}`` for the wall character
``chi``.  Values are written in ``M`` coordinates; the compactification
layer lifts them into the weight lattice.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .fan import Cell, Fan, FanError, PLFunction, Report, moment_order, star_property_violations, wall_character
from .linalg import smith_normal_form
from .laurent import Laurent, Tensor, divide_exact, divides_binomial, tensor_divisible_by_u_binomial


class GKMError(ArithmeticError):
    pass


class GKMClass:
    """Restrictions ``values[k]`` to the fixed point of ``fan.maximal_cones[k]``."""

    __slots__ = ("fan", "values")

    def __init__(self, fan: Fan, values: Sequence):
        if len(values) != len(fan.maximal_cones):
            raise GKMError("one restriction per maximal cone is required")
        self.fan = fan
        self.values = tuple(values)

    @classmethod
    def constant(cls, fan: Fan, value) -> "GKMClass":
        return cls(fan, [value] * len(fan.maximal_cones))

    @classmethod
    def unit(cls, fan: Fan) -> "GKMClass":
        return cls.constant(fan, Laurent.one(fan.dim))

    def restriction(self, sigma) -> Laurent:
        if not isinstance(sigma, int):
            sigma = self.fan.maximal_cones.index(tuple(sorted(sigma)))
        return self.values[sigma]

    def _zip(self, other, op):
        if isinstance(other, GKMClass):
            if other.fan is not self.fan and other.fan.to_json() != self.fan.to_json():
                raise GKMError("classes live on different fans")
            return GKMClass(self.fan, [op(a, b) for a, b in zip(self.values, other.values)])
        return GKMClass(self.fan, [op(a, other) for a in self.values])

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return GKMClass(self.fan, [-a for a in self.values])

    def __pow__(self, k: int):
        return GKMClass(self.fan, [a**k for a in self.values])

    def __eq__(self, other):
        return isinstance(other, GKMClass) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def map(self, fn: Callable) -> "GKMClass":
        return GKMClass(self.fan, [fn(v) for v in self.values])

    def wall_report(self, to_exponent: Callable | None = None) -> Report:
        """Check every wall congruence; ``to_exponent`` maps ``chi`` into the value lattice."""
        rep = Report()
        for a, b in self.fan.adjacent_pairs():
            chi = wall_character(self.fan, a, b)
            mu = tuple(to_exponent(chi)) if to_exponent else chi
            diff = self.values[a] - self.values[b]
            if isinstance(diff, Tensor):
                ok = tensor_divisible_by_u_binomial(diff, mu)
            else:
                ok = divides_binomial(diff, tuple(-x for x in mu))
            if not ok:
                rep.fail(
                    "wall_congruence",
                    cones=[list(self.fan.maximal_cones[a]), list(self.fan.maximal_cones[b])],
                    chi=list(chi),
                )
        return rep

    def is_valid(self, to_exponent: Callable | None = None) -> bool:
        return self.wall_report(to_exponent).ok

    def to_json(self) -> list:
        return [v.to_json() for v in self.values]

    def __repr__(self):
        return f"GKMClass({list(self.values)!r})"


def _require_smooth(F: Fan):
    if not F.is_smooth():
        raise FanError("the fan is not smooth")


def ray_generator(F: Fan, j: int) -> GKMClass:
    """``X_j``: ``e^{u_{rho_j, sigma}}`` where ``rho_j in sigma``, else 1."""
    _require_smooth(F)
    if not 0 <= j < len(F.rays):
        raise FanError(f"no ray {j}")
    vals = []
    for s in F.maximal_cones:
        if j in s:
            vals.append(Laurent.monomial(F.dual_basis(s)[j]))
        else:
            vals.append(Laurent.one(F.dim))
    return GKMClass(F, vals)


def orbit_class(F: Fan, tau: Sequence[int]) -> GKMClass:
    """``x(tau) = prod_{rho in tau} (1 - X_rho)``."""
    _require_smooth(F)
    tau = tuple(sorted(tau))
    if not F.is_cone(tau):
        raise FanError(f"{list(tau)} is not a cone of the fan")
    vals = []
    for s in F.maximal_cones:
        if set(tau) <= set(s):
            dual = F.dual_basis(s)
            acc = Laurent.one(F.dim)
            for j in tau:
                acc = acc * Laurent.binomial(dual[j])
            vals.append(acc)
        else:
            vals.append(Laurent.zero(F.dim))
    return GKMClass(F, vals)


def line_bundle_class(F: Fan, psi: PLFunction) -> GKMClass:
    """``[L_h]``: ``sigma -> e^{h_sigma}``."""
    vals = []
    for h in psi.forms:
        if any(not isinstance(x, int) for x in h):
            raise FanError("PL function is not integral on a cone")
        vals.append(Laurent.monomial(h))
    return GKMClass(F, vals)


def monomial_in_generators(F: Fan, exponents: Sequence[int]) -> GKMClass:
    """``prod_j X_j^{exponents[j]}`` (negative exponents allowed)."""
    acc = GKMClass.unit(F)
    for j, k in enumerate(exponents):
        if k:
            acc = acc * ray_generator(F, j) ** k
    return acc


def sr_vanishing_check(F: Fan) -> Report:
    """``prod_{rho in F'} (1 - X_rho) = 0`` for every minimal non-face ``F'``."""
    rep = Report()
    checked = []
    for nf in F.minimal_non_faces():
        prod = GKMClass.unit(F)
        for j in nf:
            prod = prod * (GKMClass.unit(F) - ray_generator(F, j))
        checked.append(list(nf))
        if not prod.is_zero():
            rep.fail("non_face_relation", rays=list(nf))
    rep.data["non_faces"] = checked
    return rep


def monomial_relation_check(F: Fan) -> Report:
    """``prod_j X_j^{<u, v_j>}`` restricts to ``e^u`` everywhere, for each basis vector ``u``."""
    rep = Report()
    for i in range(F.dim):
        u = tuple(int(k == i) for k in range(F.dim))
        prod = monomial_in_generators(F, [r[i] for r in F.rays])
        target = GKMClass.constant(F, Laurent.monomial(u))
        if prod != target:
            rep.fail("monomial_relation", u=list(u))
    return rep


def basis_matrix(F: Fan, cells: Sequence[Cell]) -> list:
    """``M[j][i] = x(tau_i)|sigma_j`` in moment order; lower triangular."""
    cols = [orbit_class(F, c.tau) for c in cells]
    return [[cols[i].restriction(cj.cone) for i in range(len(cells))] for cj in cells]


def check_basis_matrix(M) -> Report:
    rep = Report()
    for j, row in enumerate(M):
        for i, x in enumerate(row):
            if i > j and not x.is_zero():
                rep.fail("not_triangular", row=j, column=i)
        if row[j].is_zero():
            rep.fail("zero_diagonal", index=j)
    return rep


def expand_in_orbit_basis(F: Fan, cells: Sequence[Cell], g: GKMClass, lift: Callable | None = None) -> list:
    """Coefficients ``r_i`` with ``g = sum_i r_i x(tau_i)`` by forward substitution.

    ``lift`` maps the ``M``-valued matrix entries into the ring of ``g``'s
    values (e.g. tensor classes); by default they are used as is.
    """
    M = basis_matrix(F, cells)
    if lift is not None:
        M = [[lift(x) for x in row] for row in M]
    order = [F.maximal_cones.index(c.cone) for c in cells]
    coeffs: list = []
    for j, k in enumerate(order):
        acc = g.values[k]
        for i in range(j):
            if not M[j][i].is_zero() and not coeffs[i].is_zero():
                acc = acc - coeffs[i] * M[j][i]
        q = divide_exact(acc, M[j][j])
        if q is None:
            raise GKMError(f"coefficient {j} does not divide exactly; input violates the wall congruences")
        coeffs.append(q)
    return coeffs


def combine_orbit_basis(F: Fan, cells: Sequence[Cell], coeffs: Sequence, lift: Callable | None = None) -> GKMClass:
    acc = None
    for c, cell in zip(coeffs, cells):
        x = orbit_class(F, cell.tau)
        if lift is not None:
            x = x.map(lift)
        term = x * c
        acc = term if acc is None else acc + term
    return acc


def specialize(F: Fan, cells: Sequence[Cell], g: GKMClass) -> tuple:
    """Image in ``Z (x)_{R(T)} K_T``: augment each orbit-basis coefficient."""
    return tuple(c.augment() for c in expand_in_orbit_basis(F, cells, g))


def ordinary_structure(F: Fan, cells: Sequence[Cell]) -> list:
    """``T[i][j]``: specialized coordinates of ``x(tau_i) x(tau_j)``."""
    xs = [orbit_class(F, c.tau) for c in cells]
    return [[list(specialize(F, cells, a * b)) for b in xs] for a in xs]


def verify_srpres_point(F: Fan, psi: PLFunction, direction: Sequence[int]) -> Report:
    """The point-base presentation: relations hold after specialization and the rank is ``m``."""
    rep = Report()
    cells = moment_order(F, psi, direction)
    viol = star_property_violations(cells)
    if viol:
        rep.fail("star_property", pairs=[list(p) for p in viol])
    rep.merge(check_basis_matrix(basis_matrix(F, cells)))
    rep.merge(sr_vanishing_check(F))
    rep.merge(monomial_relation_check(F))
    m = len(cells)
    unit_idx = next((i for i, c in enumerate(cells) if not c.tau), None)
    if unit_idx is None:
        rep.fail("no_open_cell")
        return rep
    unit = tuple(int(i == unit_idx) for i in range(m))
    for i in range(F.dim):
        prod = monomial_in_generators(F, [r[i] for r in F.rays])
        if specialize(F, cells, prod) != unit:
            rep.fail("specialized_monomial_relation", u=i)
    for nf in F.minimal_non_faces():
        if any(specialize(F, cells, orbit_class_product(F, nf))):
            rep.fail("specialized_non_face_relation", rays=list(nf))
    # the specialized face monomials must span Z^m
    images = [list(specialize(F, cells, orbit_class(F, tau))) for tau in F.cones]
    _, D, _ = smith_normal_form(images)
    diag = [D[i][i] for i in range(min(len(images), m))]
    rank = sum(1 for x in diag if x)
    if rank != m or any(x != 1 for x in diag):
        rep.fail("rank", expected=m, got=rank, smith_diagonal=diag)
    rep.data.update(rank=rank, maximal_cones=m, cells=[c.to_json() for c in cells])
    return rep


def orbit_class_product(F: Fan, rays: Sequence[int]) -> GKMClass:
    """``prod_{rho in rays} (1 - X_rho)`` for an arbitrary ray set."""
    acc = GKMClass.unit(F)
    for j in rays:
        acc = acc * (GKMClass.unit(F) - ray_generator(F, j))
    return acc
