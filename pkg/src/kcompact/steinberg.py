"""Steinberg bases of R(T) over R(T)^W and the induced model of K(G/B)."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .laurent import Laurent, Tensor, divide_exact, tensor_act_right
from .linalg import bareiss_solve
from .weyl import (
    RootSystem,
    WeylElement,
    c_index,
    c_sets,
    is_invariant,
    minimal_coset_reps,
    orbit,
    weyl_act,
    weyl_group,
)


class ExpansionError(ArithmeticError):
    """Raised when a Steinberg expansion fails a certificate; never expected."""


def p_element(rs: RootSystem, v: WeylElement) -> Laurent:
    """Product of ``e^{omega_i}`` over the simple roots with ``v^{-1} alpha_i < 0``."""
    W = weyl_group(rs)
    exp = [0] * rs.rank
    for i in W.left_descents(v):
        exp[i] += 1
    return Laurent.monomial(exp)


def steinberg_element(rs: RootSystem, v: WeylElement, I) -> Laurent:
    """``f_v^I``: the sum of the distinct ``W_I``-images of ``v^{-1}(p_v)``."""
    I = frozenset(I)
    if v not in set(minimal_coset_reps(rs, I)):
        raise ValueError(f"{v.word_str()} is not a minimal coset representative for {sorted(I)}")
    (mu, _), = p_element(rs, v).terms.items()
    mu = v.inverse().act_weight(mu)
    return Laurent(rs.rank, [(lam, 1) for lam in orbit(rs, mu, I)])


class SteinbergBasis:
    """The basis ``f_w`` (``w in W``) of R(T) over R(T)^W.

    ``f_w = f_w^{D \\ I}`` for the unique ``I`` with ``w in C^I``.  The
    matrix ``(u(f_w))_{u,w}`` is inverted once by fraction-free elimination;
    :meth:`expand` then solves ``g = sum c_w f_w`` with exact division.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.W = weyl_group(rs)
        self.c_of = c_index(rs)
        full = frozenset(rs.simple_indices)
        self.elements = [steinberg_element(rs, w, full - self.c_of[w]) for w in self.W]
        self.gens = self.W.simple_reflections

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, k: int) -> Laurent:
        return self.elements[k]

    def subset_of(self, k: int) -> frozenset:
        """``I`` with ``W[k] in C^I``."""
        return self.c_of[self.W[k]]

    @cached_property
    def matrix(self) -> list[list[Laurent]]:
        return [[weyl_act(u, f) for f in self.elements] for u in self.W]

    @cached_property
    def _solver(self):
        n = len(self.W)
        one, zero = Laurent.one(self.rs.rank), Laurent.zero(self.rs.rank)
        ident = [[one if i == j else zero for j in range(n)] for i in range(n)]
        D, Y = bareiss_solve(self.matrix, ident, divide_exact, lambda x: x.is_zero())
        return D, Y

    @property
    def determinant(self) -> Laurent:
        """``+-det(u(f_w))``; nonzero certifies the basis property."""
        return self._solver[0]

    def expand(self, g: Laurent, check: bool = True) -> list[Laurent]:
        """Coefficients ``c_w in R(T)^W`` with ``g = sum_w c_w f_w``."""
        D, Y = self._solver
        images = [weyl_act(u, g) for u in self.W]
        coeffs = []
        for k in range(len(self.W)):
            acc = Laurent.zero(self.rs.rank)
            for u, b in enumerate(images):
                if b and Y[k][u]:
                    acc = acc + Y[k][u] * b
            q = divide_exact(acc, D)
            if q is None:
                raise ExpansionError(f"coefficient {k} is not integral")
            coeffs.append(q)
        if check:
            for k, c in enumerate(coeffs):
                if not is_invariant(c, self.gens):
                    raise ExpansionError(f"coefficient {k} is not W-invariant")
            recon = Laurent.zero(self.rs.rank)
            for c, f in zip(coeffs, self.elements):
                recon = recon + c * f
            if recon != g:
                raise ExpansionError("reconstruction failed")
        return coeffs

    def expand_tensor(self, F: Tensor, check: bool = True) -> list[Tensor]:
        """Expand the ``v`` factor: ``F = sum_w c_w (1 (x) f_w)`` with ``c_w`` W-invariant in ``v``."""
        n = self.rs.rank
        groups = F.split()
        per_u = {u: self.expand(g, check=check) for u, g in groups.items()}
        out = []
        for k in range(len(self.W)):
            out.append(Tensor.from_split({u: cs[k] for u, cs in per_u.items() if cs[k]}, n))
        return out

    def combine(self, coeffs) -> Laurent:
        acc = Laurent.zero(self.rs.rank)
        for c, f in zip(coeffs, self.elements):
            if c:
                acc = acc + c * f
        return acc

    @cached_property
    def structure_constants(self) -> dict:
        return structure_constants(self.rs)


@lru_cache(maxsize=None)
def steinberg_basis(rs: RootSystem) -> SteinbergBasis:
    return SteinbergBasis(rs)


def expand(rs: RootSystem, basis: SteinbergBasis | None, g: Laurent) -> dict:
    """``{w: c_w}`` with ``g = sum c_w f_w``; zero coefficients included."""
    basis = basis or steinberg_basis(rs)
    return dict(zip(basis.W, basis.expand(g)))


def _product_row(args):
    rs, k = args
    B = steinberg_basis(rs)
    fk = B.elements[k]
    return [B.expand(fk * f) for f in B.elements]


@lru_cache(maxsize=None)
def _structure_table(rs: RootSystem, jobs: int = 1) -> tuple:
    B = steinberg_basis(rs)
    n = len(B)
    tasks = [(rs, k) for k in range(n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_product_row, tasks))
    else:
        rows = [_product_row(t) for t in tasks]
    return tuple(tuple(tuple(row) for row in r) for r in rows)


def structure_constants(rs: RootSystem, basis: SteinbergBasis | None = None, jobs: int = 1) -> dict:
    """``{(v, v', w): a^w_{v,v'}}`` by W index, nonzero entries only."""
    table = _structure_table(rs, 1) if jobs <= 1 else _structure_table(rs, jobs)
    out = {}
    for i, row in enumerate(table):
        for j, coeffs in enumerate(row):
            for k, c in enumerate(coeffs):
                if c:
                    out[(i, j, k)] = c
    return out


def structure_table(rs: RootSystem, jobs: int = 1) -> tuple:
    """Dense table ``T[v][v'][w] = a^w_{v,v'}``."""
    return _structure_table(rs, 1) if jobs <= 1 else _structure_table(rs, jobs)


def check_product_support(rs: RootSystem) -> list:
    """Violations of ``a^w_{v,v'} = 0`` unless ``w in C^J`` with ``J <= I u I'``."""
    B = steinberg_basis(rs)
    table = structure_table(rs)
    bad = []
    for i, row in enumerate(table):
        for j, coeffs in enumerate(row):
            allowed = B.subset_of(i) | B.subset_of(j)
            for k, c in enumerate(coeffs):
                if c and not B.subset_of(k) <= allowed:
                    bad.append((i, j, k))
    return bad


def augment(f: Laurent) -> int:
    return f.augment()


@dataclass(frozen=True)
class FlagKClass:
    """Element of K(G/B) in the basis ``fbar_w``; ``coeffs`` indexed like W."""

    rs: RootSystem
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != len(weyl_group(self.rs)):
            raise ValueError("coefficient vector has the wrong length")

    @classmethod
    def zero(cls, rs: RootSystem) -> "FlagKClass":
        return cls(rs, (0,) * len(weyl_group(rs)))

    @classmethod
    def basis(cls, rs: RootSystem, k: int, scale: int = 1) -> "FlagKClass":
        c = [0] * len(weyl_group(rs))
        c[k] = scale
        return cls(rs, tuple(c))

    @classmethod
    def one(cls, rs: RootSystem) -> "FlagKClass":
        return cls.basis(rs, 0)

    def __add__(self, other):
        return FlagKClass(self.rs, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return FlagKClass(self.rs, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return FlagKClass(self.rs, tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> "FlagKClass":
        return FlagKClass(self.rs, tuple(k * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return flag_multiply(self, other)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def to_json(self) -> list:
        return list(self.coeffs)


@lru_cache(maxsize=None)
def flag_constants(rs: RootSystem) -> tuple:
    """``c^w_{v,v'} = augment(a^w_{v,v'})`` as a dense integer table."""
    return tuple(
        tuple(tuple(c.augment() for c in coeffs) for coeffs in row) for row in structure_table(rs)
    )


def flag_multiply(a: FlagKClass, b: FlagKClass) -> FlagKClass:
    if a.rs != b.rs:
        raise ValueError("classes live on different flag varieties")
    c = flag_constants(a.rs)
    n = len(a.coeffs)
    out = [0] * n
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if not y:
                continue
            row = c[i][j]
            for k in range(n):
                if row[k]:
                    out[k] += x * y * row[k]
    return FlagKClass(a.rs, tuple(out))


def characteristic_image(rs: RootSystem, basis: SteinbergBasis | None, g: Laurent) -> FlagKClass:
    """``c_K(g) = sum_w augment(c_w) fbar_w``."""
    basis = basis or steinberg_basis(rs)
    return FlagKClass(rs, tuple(c.augment() for c in basis.expand(g)))


def lambda_product(rs: RootSystem, I, sign: int = -1) -> Laurent:
    """``prod_{alpha in I} (1 - e^{sign * alpha})``."""
    acc = Laurent.one(rs.rank)
    for i in sorted(I):
        acc = acc * Laurent.binomial(tuple(sign * x for x in rs.simple_root(i)))
    return acc


def lambda_bar(rs: RootSystem, basis: SteinbergBasis | None, I, sign: int = -1) -> FlagKClass:
    """Image in K(G/B) of ``prod_{alpha in I}(1 - e^{-alpha})``.

    ``sign=+1`` gives the image of ``prod (1 - e^{alpha})`` instead.
    """
    return characteristic_image(rs, basis, lambda_product(rs, I, sign))
