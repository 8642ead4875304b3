"""Simplicial fans over the cocharacter lattice, piecewise-linear functions,
chamber subdivisions, moment orderings and GIT invariants.

Coordinates: ``N`` is written in the fundamental-coweight basis, so the
positive chamber is the orthant ``x_i >= 0`` on the semisimple block.  ``M``
is dual to ``N`` under the dot product; ``alpha_i`` is the i-th unit vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Sequence

from .linalg import det_int, fm_feasible, integer_kernel_primitive, inverse_rational, rank_rational, smith_normal_form
from .weyl import RootSystem, weyl_group


class FanError(ValueError):
    pass


class NonGenericError(FanError):
    pass


@dataclass
class Report:
    """Outcome of a verification: ``ok`` plus witnesses for each failure."""

    ok: bool = True
    failures: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def fail(self, kind: str, **witness):
        self.ok = False
        self.failures.append({"check": kind, **witness})

    def merge(self, other: "Report", prefix: str | None = None) -> "Report":
        for f in other.failures:
            self.fail(f"{prefix}.{f['check']}" if prefix else f["check"], **{k: v for k, v in f.items() if k != "check"})
        return self

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": self.failures, **self.data}


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _primitive(v) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


class Fan:
    """A pure simplicial fan given by rays and maximal cones (ray-index sets)."""

    def __init__(self, rays: Sequence[Sequence[int]], maximal_cones: Sequence[Sequence[int]], validate: bool = True):
        self.rays = tuple(tuple(int(x) for x in r) for r in rays)
        if not self.rays:
            raise FanError("a fan needs at least one ray")
        self.dim = len(self.rays[0])
        if any(len(r) != self.dim for r in self.rays):
            raise FanError("rays have inconsistent lengths")
        cones = []
        for c in maximal_cones:
            c = tuple(sorted(int(i) for i in c))
            if any(i < 0 or i >= len(self.rays) for i in c):
                raise FanError(f"cone {list(c)} references a missing ray")
            if len(set(c)) != len(c):
                raise FanError(f"cone {list(c)} repeats a ray")
            cones.append(c)
        self.maximal_cones = tuple(cones)
        if validate:
            rep = self.validate()
            if not rep.ok:
                raise FanError(f"invalid fan: {rep.failures}")

    @classmethod
    def from_json(cls, data: dict, validate: bool = True) -> "Fan":
        return cls(data["rays"], data["maximal_cones"], validate=validate)

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "maximal_cones": [list(c) for c in self.maximal_cones]}

    def __len__(self):
        return len(self.maximal_cones)

    def __repr__(self):
        return f"Fan(rays={list(self.rays)}, maximal_cones={list(self.maximal_cones)})"

    def ray_matrix(self, sigma) -> list[list[int]]:
        """Columns are the rays of ``sigma``."""
        return [[self.rays[j][i] for j in sigma] for i in range(self.dim)]

    @cached_property
    def _inverses(self) -> dict:
        return {s: inverse_rational(self.ray_matrix(s)) for s in self.maximal_cones}

    def coordinates(self, sigma, x) -> dict:
        """``x`` in the ray basis of the full-dimensional cone ``sigma``."""
        inv = self._inverses[tuple(sigma)]
        return {j: sum(inv[k][i] * x[i] for i in range(self.dim)) for k, j in enumerate(sigma)}

    def dual_basis(self, sigma) -> dict:
        """``{rho: u_{rho,sigma}}``; integral when ``sigma`` is unimodular."""
        inv = self._inverses[tuple(sigma)]
        out = {}
        for k, j in enumerate(sigma):
            row = inv[k]
            out[j] = tuple(int(x) if x.denominator == 1 else x for x in row)
        return out

    def is_smooth(self) -> bool:
        return all(abs(det_int(self.ray_matrix(s))) == 1 for s in self.maximal_cones)

    @cached_property
    def cones(self) -> tuple:
        """All cones, each a sorted tuple of ray indices; ``()`` is the origin."""
        out = set()
        for s in self.maximal_cones:
            for k in range(len(s) + 1):
                out.update(combinations(s, k))
        return tuple(sorted(out, key=lambda c: (len(c), c)))

    def is_cone(self, rays) -> bool:
        rays = set(rays)
        return any(rays <= set(s) for s in self.maximal_cones)

    def adjacent_pairs(self) -> list:
        out = []
        for a, b in combinations(range(len(self.maximal_cones)), 2):
            if len(set(self.maximal_cones[a]) & set(self.maximal_cones[b])) == self.dim - 1:
                out.append((a, b))
        return out

    def minimal_non_faces(self) -> list:
        out = []
        n = len(self.rays)
        for k in range(2, self.dim + 2):
            for sub in combinations(range(n), k):
                if self.is_cone(sub):
                    continue
                if all(self.is_cone(sub[:i] + sub[i + 1 :]) for i in range(k)):
                    out.append(sub)
        return out

    def _bad_intersection(self, a: int, b: int) -> bool:
        """Whether ``sigma_a cap sigma_b`` is larger than the cone on shared rays."""
        sa, sb = self.maximal_cones[a], self.maximal_cones[b]
        shared = set(sa) & set(sb)
        outside = [k for k, j in enumerate(sb) if j not in shared]
        if not outside:
            return False
        nb = len(sb)
        inv = self._inverses[sa]
        ineqs = []
        for k in range(nb):
            ineqs.append(([Fraction(int(i == k)) for i in range(nb)], Fraction(0)))
        norm = [Fraction(int(k in outside)) for k in range(nb)]
        ineqs.append((norm, Fraction(1)))
        ineqs.append(([-x for x in norm], Fraction(-1)))
        for row in inv:
            # coordinate of sum_k b_k w_k along a ray of sa
            coeffs = [sum(row[i] * self.rays[j][i] for i in range(self.dim)) for j in sb]
            ineqs.append((coeffs, Fraction(0)))
        return fm_feasible(ineqs)

    def validate(self) -> Report:
        rep = Report()
        for j, r in enumerate(self.rays):
            if not any(r):
                rep.fail("zero_ray", ray=j)
            elif not _primitive(r):
                rep.fail("non_primitive_ray", ray=j, vector=list(r))
        for s in self.maximal_cones:
            if len(s) != self.dim or rank_rational([self.rays[j] for j in s]) != self.dim:
                rep.fail("not_full_dimensional_simplicial", cone=list(s))
        if not rep.ok:
            return rep
        for a, b in combinations(range(len(self.maximal_cones)), 2):
            if self.maximal_cones[a] == self.maximal_cones[b]:
                rep.fail("duplicate_cone", cone=list(self.maximal_cones[a]))
            elif self._bad_intersection(a, b):
                rep.fail("improper_intersection", cones=[list(self.maximal_cones[a]), list(self.maximal_cones[b])])
        return rep

    def facets(self, sigma) -> list:
        return [tuple(j for j in sigma if j != drop) for drop in sigma]


# -- Weyl chambers --------------------------------------------------------------


def chamber_cone_rays(rs: RootSystem) -> list:
    if rs.central_rank:
        raise FanError("chamber fans are only built for semisimple root data (central rank 0)")
    return [tuple(int(i == j) for j in range(rs.r)) for i in range(rs.r)]


def chamber_fan(rs: RootSystem) -> tuple:
    """The complete Weyl-chamber fan and the index of the positive chamber."""
    base = chamber_cone_rays(rs)
    rays: list = []
    index: dict = {}
    cones = []
    for w in weyl_group(rs):
        cone = []
        for r in base:
            x = w.act_coweight(r)
            if x not in index:
                index[x] = len(rays)
                rays.append(x)
            cone.append(index[x])
        cones.append(cone)
    return Fan(rays, cones), 0


def positive_chamber_fan(rs: RootSystem) -> Fan:
    """The wonderful case: ``F_+`` is the chamber itself."""
    return Fan(chamber_cone_rays(rs), [list(range(rs.r))])


def _in_chamber(rs: RootSystem, x) -> bool:
    return all(x[i] >= 0 for i in range(rs.r))


def translate(rs: RootSystem, F: Fan) -> Fan:
    """``W . F``: all Weyl translates of the cones of ``F``, unvalidated."""
    rays: list = []
    index: dict = {}
    cones: list = []
    for w in weyl_group(rs):
        for s in F.maximal_cones:
            cone = []
            for j in s:
                x = w.act_coweight(F.rays[j])
                if x not in index:
                    index[x] = len(rays)
                    rays.append(x)
                cone.append(index[x])
            cones.append(cone)
    return Fan(rays, cones, validate=False)


def validate_positive_subdivision(rs: RootSystem, F: Fan) -> Report:
    """Support equals the positive chamber, smoothness, and ``W.F`` is a fan."""
    rep = Report()
    if F.dim != rs.rank:
        rep.fail("dimension", expected=rs.rank, got=F.dim)
        return rep
    base = F.validate()
    rep.merge(base)
    if not base.ok:
        return rep
    for j, r in enumerate(F.rays):
        if not _in_chamber(rs, r):
            rep.fail("ray_outside_chamber", ray=j, vector=list(r))
    for s in F.maximal_cones:
        d = det_int(F.ray_matrix(s))
        if abs(d) != 1:
            rep.fail("not_unimodular", cone=list(s), determinant=d)
    # a facet is interior unless it lies in a chamber wall; interior facets need two cones
    count: dict = {}
    for s in F.maximal_cones:
        for f in F.facets(s):
            count[f] = count.get(f, 0) + 1
    for f, k in sorted(count.items()):
        on_wall = any(all(F.rays[j][i] == 0 for j in f) for i in range(rs.r))
        if on_wall and k != 1:
            rep.fail("wall_facet_shared", facet=list(f))
        if not on_wall and k != 2:
            rep.fail("support_boundary", facet=list(f))
    if rep.ok:
        WF = translate(rs, F)
        wrep = WF.validate()
        if not wrep.ok:
            rep.merge(wrep, "weyl_translates")
    rep.data["maximal_cones"] = len(F.maximal_cones)
    return rep


# -- walls and roots -------------------------------------------------------------


def _cone_index(F: Fan, sigma) -> int:
    if isinstance(sigma, int):
        return sigma
    key = tuple(sorted(sigma))
    try:
        return F.maximal_cones.index(key)
    except ValueError:
        raise FanError(f"{list(key)} is not a maximal cone") from None


def wall_character(F: Fan, sigma, sigma2) -> tuple:
    """Primitive ``chi in M`` vanishing on the common facet, nonnegative on ``sigma``."""
    a, b = _cone_index(F, sigma), _cone_index(F, sigma2)
    sa, sb = F.maximal_cones[a], F.maximal_cones[b]
    shared = sorted(set(sa) & set(sb))
    if a == b or len(shared) != F.dim - 1:
        raise FanError(f"cones {list(sa)} and {list(sb)} are not adjacent")
    chi = integer_kernel_primitive([list(F.rays[j]) for j in shared], F.dim)
    extra = next(j for j in sa if j not in shared)
    if _dot(chi, F.rays[extra]) < 0:
        chi = tuple(-x for x in chi)
    return tuple(chi)


def facet_orthogonal_to_root(F: Fan, sigma, i: int) -> bool:
    """Whether some facet of ``sigma`` lies in the wall ``alpha_i = 0``."""
    s = F.maximal_cones[_cone_index(F, sigma)]
    return any(all(F.rays[j][i] == 0 for j in f) for f in F.facets(s))


# -- piecewise-linear functions ----------------------------------------------------


class PLFunction:
    """Values on rays; ``h[sigma]`` is the linear form agreeing with them on ``sigma``."""

    def __init__(self, F: Fan, values: Sequence[int]):
        if len(values) != len(F.rays):
            raise FanError("one value per ray is required")
        self.fan = F
        self.values = tuple(int(x) for x in values)

    @cached_property
    def forms(self) -> tuple:
        out = []
        for s in self.fan.maximal_cones:
            inv = self.fan._inverses[s]
            # h = sum_rho psi(rho) u_rho
            h = [sum(self.values[j] * inv[k][i] for k, j in enumerate(s)) for i in range(self.fan.dim)]
            out.append(tuple(int(x) if x.denominator == 1 else x for x in h))
        return tuple(out)

    def form(self, sigma) -> tuple:
        return self.forms[_cone_index(self.fan, sigma)]

    def __call__(self, x) -> Fraction:
        for s, h in zip(self.fan.maximal_cones, self.forms):
            if all(c >= 0 for c in self.fan.coordinates(s, x).values()):
                return _dot(h, x)
        raise FanError("point outside the support")


def root_pl_function(F: Fan, i: int) -> PLFunction:
    """``alpha_i`` as a (globally linear) PL function: values ``<alpha_i, v_j>``."""
    return PLFunction(F, [r[i] for r in F.rays])


def check_ample(F: Fan, psi: PLFunction) -> Report:
    """Every ``h_sigma`` is a vertex of ``{v : Qv >= psi}`` cut out exactly by ``sigma``."""
    rep = Report()
    forms = psi.forms
    for a, s in enumerate(F.maximal_cones):
        h = forms[a]
        for j, r in enumerate(F.rays):
            val = _dot(h, r)
            if j in s:
                continue
            if val < psi.values[j]:
                rep.fail("vertex_inequality", cone=list(s), ray=j, pairing=str(val), value=psi.values[j])
            elif val == psi.values[j]:
                rep.fail("not_strict", cone=list(s), ray=j)
    for a, b in F.adjacent_pairs():
        if forms[a] == forms[b]:
            rep.fail("same_linear_form", cones=[list(F.maximal_cones[a]), list(F.maximal_cones[b])])
    rep.data["forms"] = [[str(x) for x in h] for h in forms]
    return rep


def is_ample(F: Fan, psi: PLFunction) -> bool:
    return check_ample(F, psi).ok


# -- moment ordering ---------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    cone: tuple
    mu: Fraction
    tau: tuple
    dim: int

    def to_json(self) -> dict:
        return {"cone": list(self.cone), "mu": str(self.mu), "tau": list(self.tau), "cell_dim": self.dim}


def moment_order(F: Fan, psi: PLFunction, v: Sequence[int]) -> list:
    """Maximal cones sorted by ``<v, h_sigma>`` with distinguished faces ``tau_i``."""
    v = tuple(v)
    if len(v) != F.dim:
        raise FanError("direction has the wrong length")
    amp = check_ample(F, psi)
    if not amp.ok:
        raise FanError(f"PL function is not ample: {amp.failures}")
    inside = False
    cells = []
    for a, s in enumerate(F.maximal_cones):
        coords = F.coordinates(s, v)
        zero = [j for j, c in coords.items() if c == 0]
        if zero:
            raise NonGenericError(f"direction lies on a hyperplane spanned by a facet of {list(s)}")
        tau = tuple(sorted(j for j, c in coords.items() if c < 0))
        inside = inside or not tau
        cells.append(Cell(s, Fraction(_dot(v, psi.forms[a])), tau, F.dim - len(tau)))
    if not inside:
        raise FanError("direction lies outside the support")
    cells.sort(key=lambda c: c.mu)
    for x, y in zip(cells, cells[1:]):
        if x.mu == y.mu:
            raise NonGenericError(f"moment tie between {list(x.cone)} and {list(y.cone)}")
    return cells


def star_property_violations(cells) -> list:
    """Pairs ``(i, j)`` with ``tau_i`` a face of ``sigma_j`` but ``i > j``."""
    return [
        (i, j)
        for i, ci in enumerate(cells)
        for j, cj in enumerate(cells)
        if set(ci.tau) <= set(cj.cone) and i > j
    ]


# -- GIT invariants ----------------------------------------------------------------


def git_invariants(F: Fan) -> dict:
    """Pic rank and Gale duals from ``0 -> M -> Z^d -> Pic -> 0``."""
    d, n = len(F.rays), F.dim
    Q = [list(r) for r in F.rays]
    U, D, V = smith_normal_form(Q)
    diag = [D[i][i] for i in range(min(d, n))]
    rank = sum(1 for x in diag if x)
    if rank < n:
        raise FanError("rays do not span the lattice")
    torsion = [x for x in diag if x > 1]
    if torsion:
        raise FanError(f"cokernel has torsion {torsion}")
    gale = [[U[i][j] for i in range(n, d)] for j in range(d)]
    # certificate: G Q = 0 and G is onto Z^{d-n}
    G = [[gale[j][i] for j in range(d)] for i in range(d - n)]
    GQ = [[sum(G[i][j] * Q[j][k] for j in range(d)) for k in range(n)] for i in range(d - n)]
    if any(any(row) for row in GQ):
        raise FanError("Gale matrix does not annihilate the ray matrix")
    if G:
        _, DG, _ = smith_normal_form(G)
        if any(DG[i][i] != 1 for i in range(d - n)):
            raise FanError("Gale matrix is not surjective")
    return {
        "pic_rank": d - n,
        "gale_duals": gale,
        "smith_diagonal": diag,
        "exact_sequence_certificate": {"cokernel_free": True, "gale_annihilates_rays": True, "gale_surjective": True},
    }
