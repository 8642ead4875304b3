"""Exact group algebras of weight lattices.

A :class:`Laurent` element is a finitely supported map from exponent
vectors (tuples of ints) to nonzero integers, i.e. an element of
``Z[Lambda]`` for a lattice ``Lambda = Z^n``.  For the representation ring
``R(T)`` of a maximal torus the first ``r`` coordinates are taken in the
fundamental-weight basis and the trailing ``c`` coordinates are characters
of the central torus.

:class:`Tensor` is the same algebra over the doubled lattice and models
``R(T) (x) R(T)``; the first half of each exponent is the ``u`` factor and
the second half the ``v`` factor.
"""

from __future__ import annotations

import heapq
import json
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple


def monomial_key(e: Exponent):
    """Graded lexicographic order key.

    Total and compatible with addition of exponents, which is all the
    long division below needs.
    """
    return (sum(e), e)


def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class Laurent:
    """Integer Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
            acc[e] = acc.get(e, 0) + int(c)
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict, like: "Laurent | None" = None):
        # trusted constructor: ``terms`` already has tuple keys and no zeros
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        if like is not None:
            obj._copy_meta(like)
        return obj

    def _copy_meta(self, other: "Laurent") -> None:
        pass

    def _like(self, terms: dict) -> "Laurent":
        return type(self)._raw(self.nvars, terms, self)

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Laurent":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "Laurent":
        return cls._raw(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: int = 1) -> "Laurent":
        e = tuple(int(x) for x in exponent)
        return cls._raw(len(e), {e: coeff} if coeff else {})

    @classmethod
    def binomial(cls, exponent: Sequence[int]) -> "Laurent":
        """``1 - e^{exponent}``."""
        e = tuple(int(x) for x in exponent)
        return cls(len(e), [((0,) * len(e), 1), (e, -1)])

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        """Terms sorted by the canonical monomial order (descending)."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, e: Sequence[int]) -> int:
        return self._terms.get(tuple(e), 0)

    def augment(self) -> int:
        """Sum of coefficients (the dimension of a virtual representation)."""
        return sum(self._terms.values())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading(self):
        e = max(self._terms, key=monomial_key)
        return e, self._terms[e]

    # -- ring operations ----------------------------------------------
    def _check(self, other: "Laurent") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"lattice rank mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other):
        if isinstance(other, Laurent):
            self._check(other)
            return other
        if isinstance(other, int):
            return self._like({(0,) * self.nvars: other} if other else {})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return self._like({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only monomials with unit coefficient are invertible")
            return self._like({tuple(-x for x in e): c}) ** (-k)
        result = self._like({(0,) * self.nvars: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, e: Sequence[int]) -> "Laurent":
        """Multiply by the monomial ``e^{e}``."""
        e = tuple(e)
        return self._like({_add(k, e): c for k, c in self._terms.items()})

    def scale(self, k: int) -> "Laurent":
        if not k:
            return self._like({})
        return self._like({e: k * c for e, c in self._terms.items()})

    def map_exponents(self, fn) -> "Laurent":
        """Apply a lattice automorphism to every exponent."""
        out: dict = {}
        for e, c in self._terms.items():
            f = tuple(fn(e))
            v = out.get(f, 0) + c
            if v:
                out[f] = v
            else:
                out.pop(f, None)
        return self._like(out)

    def dual(self) -> "Laurent":
        """``e^lambda -> e^{-lambda}``."""
        return self.map_exponents(lambda e: tuple(-x for x in e))

    # -- equality -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self == self._coerce(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- serialization ------------------------------------------------
    def to_json(self) -> list:
        return [[list(e), c] for e, c in self.items()]

    @classmethod
    def from_json(cls, data: list, nvars: int | None = None) -> "Laurent":
        if nvars is None:
            if not data:
                raise ValueError("cannot infer lattice rank of an empty element")
            nvars = len(data[0][0])
        return cls(nvars, [(tuple(e), c) for e, c in data])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            if not any(e):
                parts.append(str(c))
            else:
                mono = "e^(" + ",".join(map(str, e)) + ")"
                parts.append(mono if c == 1 else ("-" + mono if c == -1 else f"{c}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ")


def divide_exact(f: Laurent, g: Laurent):
    """Return ``q`` with ``f == q * g`` or ``None`` if ``g`` does not divide ``f``.

    Long division with respect to :func:`monomial_key`.  A quotient, if it
    exists, has its Newton polytope inside the box
    ``[min(f) - min(g), max(f) - max(g)]`` coordinatewise; leaving the box
    certifies non-divisibility, which guarantees termination.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero element")
    if f.is_zero():
        return f._like({})
    n = f.nvars
    fe, ge = list(f._terms), list(g._terms)
    lo = [min(e[i] for e in fe) - min(e[i] for e in ge) for i in range(n)]
    hi = [max(e[i] for e in fe) - max(e[i] for e in ge) for i in range(n)]
    if any(a > b for a, b in zip(lo, hi)):
        return None
    if len(g) == 1:
        (eg, cg), = g._terms.items()
        if any(c % cg for c in f._terms.values()):
            return None
        return f._like({_sub(e, eg): c // cg for e, c in f._terms.items()})

    lead, cg = g.leading()
    gterms = list(g._terms.items())
    rem = dict(f._terms)
    heap = [((-sum(e),) + tuple(-x for x in e), e) for e in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while rem:
        # pop the current leading exponent of the remainder
        while True:
            _, e = heapq.heappop(heap)
            if e in rem:
                break
        c = rem[e]
        if c % cg:
            return None
        qe = _sub(e, lead)
        if any(x < a or x > b for x, a, b in zip(qe, lo, hi)):
            return None
        qc = c // cg
        quot[qe] = qc
        for eg, c2 in gterms:
            k = _add(qe, eg)
            v = rem.get(k, 0) - qc * c2
            if v:
                if k not in rem:
                    heapq.heappush(heap, ((-sum(k),) + tuple(-x for x in k), k))
                rem[k] = v
            else:
                rem.pop(k, None)
    return f._like(quot)


def divides_binomial(f: Laurent, mu: Sequence[int]) -> bool:
    """Whether ``1 - e^{mu}`` divides ``f``.

    ``f`` is divisible iff its coefficients sum to zero on every coset of
    ``Z*mu`` in the lattice.  Sign of ``mu`` is irrelevant.
    """
    mu = tuple(mu)
    if not any(mu):
        return f.is_zero()
    # canonical coset representative: reduce along mu using the first
    # nonzero coordinate of mu
    k = next(i for i, x in enumerate(mu) if x)
    m = mu[k]
    sums: dict = {}
    for e, c in f._terms.items():
        t = e[k] // m
        rep = tuple(x - t * y for x, y in zip(e, mu))
        sums[rep] = sums.get(rep, 0) + c
    return not any(sums.values())


class Tensor(Laurent):
    """Element of ``R(T) (x) R(T)``; exponents are ``u + v`` concatenated."""

    __slots__ = ("rank",)

    def __init__(self, rank: int, terms: Mapping | Iterable = ()):
        self.rank = rank
        super().__init__(2 * rank, terms)

    def _copy_meta(self, other):
        self.rank = other.rank

    @classmethod
    def _raw(cls, nvars, terms, like=None):
        obj = super()._raw(nvars, terms, like)
        if like is None:
            obj.rank = nvars // 2
        return obj

    @classmethod
    def pure(cls, u: Laurent, v: Laurent) -> "Tensor":
        """``u (x) v``."""
        if u.nvars != v.nvars:
            raise ValueError("factor rank mismatch")
        out = {}
        for eu, cu in u._terms.items():
            for ev, cv in v._terms.items():
                out[eu + ev] = cu * cv
        return cls._raw(2 * u.nvars, out)

    @classmethod
    def left(cls, u: Laurent) -> "Tensor":
        return cls.pure(u, Laurent.one(u.nvars))

    @classmethod
    def right(cls, v: Laurent) -> "Tensor":
        return cls.pure(Laurent.one(v.nvars), v)

    def split(self) -> dict:
        """Group terms by ``u`` exponent: ``{u_exp: Laurent in v}``."""
        r = self.rank
        groups: dict = {}
        for e, c in self._terms.items():
            groups.setdefault(e[:r], {})[e[r:]] = c
        return {u: Laurent._raw(r, t) for u, t in groups.items()}

    def split_v(self) -> dict:
        """Group terms by ``v`` exponent: ``{v_exp: Laurent in u}``."""
        r = self.rank
        groups: dict = {}
        for e, c in self._terms.items():
            groups.setdefault(e[r:], {})[e[:r]] = c
        return {v: Laurent._raw(r, t) for v, t in groups.items()}

    @classmethod
    def from_split(cls, groups: Mapping, rank: int) -> "Tensor":
        out = {}
        for u, lv in groups.items():
            for ev, c in lv._terms.items():
                out[tuple(u) + ev] = c
        return cls._raw(2 * rank, out)

    def augment_v(self) -> Laurent:
        """Apply the augmentation to the ``v`` factor."""
        r = self.rank
        out: dict = {}
        for e, c in self._terms.items():
            out[e[:r]] = out.get(e[:r], 0) + c
        return Laurent._raw(r, {e: c for e, c in out.items() if c})

    def __repr__(self):
        if not self._terms:
            return "0"
        r = self.rank
        parts = []
        for e, c in self.items():
            parts.append(f"{c}*[{','.join(map(str, e[:r]))}|{','.join(map(str, e[r:]))}]")
        return " + ".join(parts)


def tensor_mul(a: Tensor, b: Tensor) -> Tensor:
    return a * b


def tensor_act_right(matrix, F: Tensor) -> Tensor:
    """Apply a Weyl matrix (acting on the leading coordinates) to the ``v`` factor."""
    r = F.rank
    k = len(matrix)

    def act(e):
        v = e[r:]
        head = tuple(sum(matrix[i][j] * v[j] for j in range(k)) for i in range(k))
        return e[:r] + head + v[k:]

    return F.map_exponents(act)


def tensor_divisible_by_u_binomial(F: Tensor, mu: Sequence[int]) -> bool:
    """Whether ``(1 - e^{-mu}) (x) 1`` divides ``F``."""
    mu = tuple(mu)
    if len(mu) != F.rank:
        raise ValueError("character rank mismatch")
    return divides_binomial(F, tuple(-x for x in mu) + (0,) * F.rank)
