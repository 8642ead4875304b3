"""Root systems, Weyl groups, parabolic subgroups and the sets C^I.

Weights are integer vectors ``(ss_part, central_part)``; the semisimple
part is written in the fundamental-weight basis.  Roots are manipulated in
the simple-root basis, cocharacters of the adjoint torus in the
fundamental-coweight basis.  With ``cartan[i][j] = <alpha_i^vee, alpha_j>``
the simple root ``alpha_i`` has fundamental-weight coordinates equal to
column ``i`` of the Cartan matrix.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .laurent import Laurent

Matrix = tuple  # tuple of row tuples


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)) for i in range(n)
    )


def _matvec(a: Matrix, x: Sequence[int]) -> tuple:
    return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in a)


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _cartan_block(kind: str, n: int) -> list[list[int]]:
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        A[i][i + 1] = A[i + 1][i] = -1
    if kind == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
    elif kind == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        A[n - 2][n - 1] = -2
    elif kind == "C":
        if n < 2:
            raise ValueError("C_n needs n >= 2")
        A[n - 1][n - 2] = -2
    elif kind == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        A[n - 2][n - 1] = A[n - 1][n - 2] = 0
        A[n - 3][n - 1] = A[n - 1][n - 3] = -1
    elif kind == "G":
        if n != 2:
            raise ValueError("only G2")
        A = [[2, -1], [-3, 2]]
    else:
        raise ValueError(f"unknown Cartan type {kind!r}")
    return A


def _block_diag(blocks: list[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def _is_finite_type(A: Matrix) -> bool:
    n = len(A)
    for i in range(n):
        if A[i][i] != 2:
            return False
        for j in range(n):
            if i != j and (A[i][j] > 0 or (A[i][j] == 0) != (A[j][i] == 0)):
                return False
    # symmetrize: find d with d_i A_ij = d_j A_ji on each connected component
    d: list[Fraction | None] = [None] * n
    for s in range(n):
        if d[s] is not None:
            continue
        d[s] = Fraction(1)
        stack = [s]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and A[i][j]:
                    val = d[i] * A[i][j] / A[j][i]
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        return False
    S = [[d[i] * A[i][j] for j in range(n)] for i in range(n)]
    # leading principal minors of a symmetric matrix, exact Gaussian elimination
    M = [row[:] for row in S]
    for k in range(n):
        if M[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            for j in range(k, n):
                M[i][j] -= f * M[k][j]
    return True


@dataclass(frozen=True)
class RootSystem:
    """A finite root system with an optional central torus of rank ``central_rank``."""

    cartan: Matrix
    central_rank: int = 0
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        cartan = tuple(tuple(int(x) for x in row) for row in self.cartan)
        object.__setattr__(self, "cartan", cartan)
        if any(len(row) != len(cartan) for row in cartan):
            raise ValueError("Cartan matrix must be square")
        if self.central_rank < 0:
            raise ValueError("central rank must be nonnegative")
        if not _is_finite_type(cartan):
            raise ValueError("not a Cartan matrix of finite type")

    @classmethod
    def from_type(cls, name: str, central_rank: int = 0) -> "RootSystem":
        """Build from a type tag such as ``"A2"``, ``"B2"`` or ``"A1xA1"``."""
        blocks = []
        for part in re.split(r"\s*[x×]\s*", name.strip()):
            m = re.fullmatch(r"([A-GA-G])(\d+)", part)
            if not m:
                raise ValueError(f"cannot parse root system type {name!r}")
            blocks.append(_cartan_block(m.group(1), int(m.group(2))))
        return cls(tuple(map(tuple, _block_diag(blocks))), central_rank, name)

    @classmethod
    def from_json(cls, data: dict) -> "RootSystem":
        c = int(data.get("central_rank", 0))
        if "type" in data:
            return cls.from_type(data["type"], c)
        if "cartan" in data:
            return cls(tuple(map(tuple, data["cartan"])), c)
        raise ValueError("root system needs 'type' or 'cartan'")

    def to_json(self) -> dict:
        out: dict = {"cartan": [list(r) for r in self.cartan], "central_rank": self.central_rank}
        if self.name:
            out["type"] = self.name
        return out

    @property
    def r(self) -> int:
        return len(self.cartan)

    @property
    def rank(self) -> int:
        """Rank of the full weight lattice ``r + c``."""
        return self.r + self.central_rank

    @property
    def simple_indices(self) -> tuple:
        return tuple(range(self.r))

    def simple_root(self, i: int) -> tuple:
        """``alpha_i`` as a weight (fundamental-weight coordinates)."""
        return tuple(self.cartan[j][i] for j in range(self.r)) + (0,) * self.central_rank

    def fundamental_weight(self, i: int) -> tuple:
        return tuple(int(i == j) for j in range(self.rank))

    def root_to_weight(self, beta: Sequence[int]) -> tuple:
        """Simple-root coordinates -> fundamental-weight coordinates."""
        return tuple(sum(self.cartan[j][i] * beta[i] for i in range(self.r)) for j in range(self.r)) + (
            0,
        ) * self.central_rank

    def character(self, m: Sequence[int]) -> tuple:
        """Embed a character of the adjoint-type torus into the weight lattice.

        ``m`` has the simple-root coordinates first and the central
        coordinates last; this is the lattice dual to the cocharacters in
        the fundamental-coweight basis.
        """
        m = tuple(m)
        if len(m) != self.rank:
            raise ValueError(f"character has length {len(m)}, expected {self.rank}")
        return self.root_to_weight(m[: self.r])[: self.r] + m[self.r :]

    # -- simple reflections ---------------------------------------------
    @cached_property
    def _weight_reflections(self) -> tuple:
        r, A = self.r, self.cartan
        return tuple(
            tuple(tuple(int(k == j) - (A[k][i] if j == i else 0) for j in range(r)) for k in range(r))
            for i in range(r)
        )

    @cached_property
    def _root_reflections(self) -> tuple:
        r, A = self.r, self.cartan
        return tuple(
            tuple(tuple(int(k == j) - (A[i][j] if k == i else 0) for j in range(r)) for k in range(r))
            for i in range(r)
        )

    @cached_property
    def _coweight_reflections(self) -> tuple:
        r, A = self.r, self.cartan
        return tuple(
            tuple(tuple(int(k == j) - (A[i][k] if j == i else 0) for j in range(r)) for k in range(r))
            for i in range(r)
        )

    @cached_property
    def positive_roots(self) -> tuple:
        """Positive roots in simple-root coordinates, sorted by height then lex."""
        seen = set()
        queue = deque(tuple(int(i == j) for j in range(self.r)) for i in range(self.r))
        while queue:
            b = queue.popleft()
            if b in seen:
                continue
            seen.add(b)
            for R in self._root_reflections:
                c = _matvec(R, b)
                if all(x >= 0 for x in c) and c not in seen:
                    queue.append(c)
        return tuple(sorted(seen, key=lambda b: (sum(b), b)))

    def __repr__(self):
        return f"RootSystem({self.name or self.cartan!r}, central_rank={self.central_rank})"


@dataclass(frozen=True, eq=False)
class WeylElement:
    """An element of W, stored with a reduced word and three matrix actions.

    ``matrix`` acts on fundamental-weight coordinates, ``root_matrix`` on
    simple-root coordinates and ``coweight_matrix`` on cocharacters in the
    fundamental-coweight basis.  Equality is by ``matrix``.
    """

    word: tuple
    matrix: Matrix
    root_matrix: Matrix
    coweight_matrix: Matrix
    group: "WeylGroup" = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __len__(self):
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def index(self) -> int:
        return self.group.index(self)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.group.lookup(_matmul(self.matrix, other.matrix))

    def inverse(self) -> "WeylElement":
        return self.group.inverse(self)

    def act_weight(self, lam: Sequence[int]) -> tuple:
        r = len(self.matrix)
        lam = tuple(lam)
        return _matvec(self.matrix, lam[:r]) + lam[r:]

    def act_root(self, beta: Sequence[int]) -> tuple:
        return _matvec(self.root_matrix, beta)

    def act_coweight(self, x: Sequence[int]) -> tuple:
        r = len(self.matrix)
        x = tuple(x)
        return _matvec(self.coweight_matrix, x[:r]) + x[r:]

    def word_str(self) -> str:
        return "".join(f"s{i + 1}" for i in self.word) or "e"


class WeylGroup:
    """All elements of W, breadth-first by length (so sorted by length)."""

    def __init__(self, rs: RootSystem, bound: int = 10**6):
        self.rs = rs
        r = rs.r
        ident = _identity(r)
        self.elements: list[WeylElement] = []
        self._index: dict = {}
        queue = deque([((), ident, ident, ident)])
        self._index[ident] = None
        while queue:
            word, M, R, N = queue.popleft()
            w = WeylElement(word, M, R, N, self)
            self._index[M] = len(self.elements)
            self.elements.append(w)
            if len(self.elements) > bound:
                raise ValueError(f"Weyl group exceeds the bound {bound}")
            for i in range(r):
                M2 = _matmul(M, rs._weight_reflections[i])
                if M2 in self._index:
                    continue
                self._index[M2] = None
                queue.append(
                    (
                        word + (i,),
                        M2,
                        _matmul(R, rs._root_reflections[i]),
                        _matmul(N, rs._coweight_reflections[i]),
                    )
                )
        self.identity = self.elements[0]
        self.simple_reflections = tuple(self.elements[1 + i] for i in range(r)) if r else ()
        # BFS visits s_0, s_1, ... first at length one
        for i, s in enumerate(self.simple_reflections):
            assert s.word == (i,)
        self._root_index = {w.root_matrix: k for k, w in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, k: int) -> WeylElement:
        return self.elements[k]

    def index(self, w: WeylElement) -> int:
        return self._index[w.matrix]

    def lookup(self, matrix: Matrix) -> WeylElement:
        return self.elements[self._index[matrix]]

    def inverse(self, w: WeylElement) -> WeylElement:
        # the coweight action is the inverse transpose of the root action
        r = len(w.matrix)
        inv_root = tuple(tuple(w.coweight_matrix[j][i] for j in range(r)) for i in range(r))
        return self.elements[self._root_index[inv_root]]

    def by_word(self, word: Iterable[int]) -> WeylElement:
        w = self.identity
        for i in word:
            w = w * self.simple_reflections[i]
        return w

    def longest(self) -> WeylElement:
        return self.elements[-1]

    def is_negative(self, beta: Sequence[int]) -> bool:
        return all(x <= 0 for x in beta) and any(beta)

    def inversion_count(self, w: WeylElement) -> int:
        """Number of positive roots sent to negative roots."""
        return sum(1 for b in self.rs.positive_roots if self.is_negative(w.act_root(b)))

    def right_descents(self, w: WeylElement) -> frozenset:
        """``{i : l(w s_i) < l(w)}``, equivalently ``w(alpha_i) < 0``."""
        r = self.rs.r
        return frozenset(
            i for i in range(r) if self.is_negative(w.act_root(tuple(int(i == j) for j in range(r))))
        )

    def left_descents(self, w: WeylElement) -> frozenset:
        """``{i : w^{-1}(alpha_i) < 0}``."""
        return self.right_descents(w.inverse())


@lru_cache(maxsize=None)
def weyl_group(rs: RootSystem, bound: int = 10**6) -> WeylGroup:
    return WeylGroup(rs, bound)


def enumerate_weyl(rs: RootSystem, bound: int = 10**6) -> list[WeylElement]:
    """All elements of W with reduced words, sorted by length."""
    return list(weyl_group(rs, bound).elements)


def subsets(rs: RootSystem) -> list[frozenset]:
    """All subsets of the simple roots, ordered by size then lexicographically."""
    idx = rs.simple_indices
    return [frozenset(c) for k in range(len(idx) + 1) for c in combinations(idx, k)]


def _as_subset(rs: RootSystem, I) -> frozenset:
    I = frozenset(I)
    if not I <= set(rs.simple_indices):
        raise ValueError(f"{sorted(I)} is not a subset of the simple roots")
    return I


def minimal_coset_reps(rs: RootSystem, I) -> list[WeylElement]:
    """``W^I = {w : w(Phi_I^+) subset Phi^+}``."""
    I = _as_subset(rs, I)
    W = weyl_group(rs)
    return [w for w in W if not (W.right_descents(w) & I)]


def parabolic_elements(rs: RootSystem, I) -> list[WeylElement]:
    """The subgroup ``W_I`` generated by ``s_alpha``, ``alpha in I``."""
    I = _as_subset(rs, I)
    W = weyl_group(rs)
    seen = {W.identity}
    queue = deque([W.identity])
    while queue:
        w = queue.popleft()
        for i in sorted(I):
            x = w * W.simple_reflections[i]
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return sorted(seen, key=W.index)


def c_sets(rs: RootSystem) -> dict:
    """``C^I = W^{D \\ I} minus the union of W^{D \\ J}`` over ``J`` strictly inside ``I``."""
    full = frozenset(rs.simple_indices)
    reps = {I: set(minimal_coset_reps(rs, full - I)) for I in subsets(rs)}
    W = weyl_group(rs)
    out = {}
    for I in subsets(rs):
        smaller = set()
        for J in subsets(rs):
            if J < I:
                smaller |= reps[J]
        out[I] = sorted(reps[I] - smaller, key=W.index)
    return out


@lru_cache(maxsize=None)
def c_index(rs: RootSystem) -> dict:
    """Map each ``w`` to the unique ``I`` with ``w in C^I``."""
    out = {}
    for I, ws in c_sets(rs).items():
        for w in ws:
            out[w] = I
    return out


def weyl_act(w: WeylElement, f: Laurent) -> Laurent:
    """``w(e^lambda) = e^{w(lambda)}``; the central block is fixed."""
    r = len(w.matrix)
    if f.nvars < r:
        raise ValueError(f"element of rank {f.nvars} cannot carry a rank-{r} Weyl action")
    M = w.matrix
    if not r:
        return f

    def act(e):
        head = tuple(sum(M[i][j] * e[j] for j in range(r)) for i in range(r))
        return head + e[r:]

    return f.map_exponents(act)


def is_invariant(f: Laurent, gens: Iterable[WeylElement]) -> bool:
    return all(weyl_act(s, f) == f for s in gens)


def orbit(rs: RootSystem, lam: Sequence[int], I=None) -> list:
    """Distinct images of ``lam`` under ``W_I`` (all of W when ``I`` is None)."""
    W = weyl_group(rs)
    group = W.elements if I is None else parabolic_elements(rs, I)
    seen = {}
    for w in group:
        seen.setdefault(w.act_weight(lam), None)
    return list(seen)


def orbit_sum(rs: RootSystem, lam: Sequence[int], I=None) -> Laurent:
    return Laurent(rs.rank, [(mu, 1) for mu in orbit(rs, lam, I)])
