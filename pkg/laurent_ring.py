# laurent_ring.py - Exact arithmetic in Z[t1^±1, ..., tn^±1]

import operator
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from braid_core import Permutation
from schemas import PolyModel, TermModel

Exps = Tuple[int, ...]
Scalar = Union[int, Fraction]


class LaurentPoly:
    """Sparse Laurent polynomial: exponent vector -> nonzero integer coefficient.

    Values are immutable; every constructor strips zero coefficients, so two
    polynomials are equal exactly when their term maps are equal.

    >>> t1 = LaurentPoly.var(1, 2)
    >>> (t1 + 1) + (-1) == t1
    True
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], int]] = None):
        if nvars < 1:
            raise ValueError(f"A Laurent polynomial needs at least one variable, got {nvars}")
        clean: Dict[Exps, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"Exponent vector {exps} does not have length {nvars}")
            if isinstance(coeff, Fraction):
                if coeff.denominator != 1:
                    raise ValueError(f"Coefficient {coeff} is not an integer")
                coeff = coeff.numerator
            clean[exps] = clean.get(exps, 0) + int(coeff)
        self.nvars = nvars
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exps, int]) -> "LaurentPoly":
        # Trusted path: terms already have the right shape
        poly = object.__new__(cls)
        poly.nvars = nvars
        poly._terms = {e: c for e, c in terms.items() if c}
        return poly

    # --- constructors ---

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, value: int, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(1, nvars)

    @classmethod
    def var(cls, k: int, nvars: int) -> "LaurentPoly":
        """The variable t_k (1-indexed)."""
        if not 1 <= k <= nvars:
            raise ValueError(f"Variable t{k} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[k - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): coeff})

    # --- inspection ---

    @property
    def terms(self) -> Dict[Exps, int]:
        return dict(self._terms)

    def sorted_terms(self) -> List[Tuple[Exps, int]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_value(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """Units of the Laurent ring are the signed monomials."""
        return len(self._terms) == 1 and next(iter(self._terms.values())) in (1, -1)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # --- arithmetic ---

    def _coerce(self, other) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"Variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: Dict[Exps, int] = {}
        _accumulate_product(terms, self._terms, other._terms, self.nvars)
        return LaurentPoly._raw(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError(f"Only signed monomials are invertible in the Laurent ring, got {self}")
            (exps, coeff), = self._terms.items()
            return LaurentPoly._raw(self.nvars, {tuple(-e for e in exps): coeff}) ** (-k)
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            # Constants compare equal to ints
            return hash(self.constant_value())
        return hash((self.nvars, frozenset(self._terms.items())))

    # --- homomorphisms ---

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a point with nonzero rational coordinates."""
        if len(point) != self.nvars:
            raise ValueError(f"Point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            value = Fraction(coeff)
            for k, (x, e) in enumerate(zip(point, exps), 1):
                if e == 0:
                    continue
                if x == 0 and e < 0:
                    raise ValueError(f"Cannot evaluate t{k}^{e} at t{k}=0")
                value *= x ** e
            total += value
        return total

    def permute_vars(self, s: Permutation) -> "LaurentPoly":
        """Substitute t_k -> t_{s(k)} for every k."""
        if s.degree != self.nvars:
            raise ValueError(f"Permutation degree {s.degree} does not match {self.nvars} variables")
        if self.is_constant():
            return self
        targets = [image - 1 for image in s.images]
        terms: Dict[Exps, int] = {}
        for exps, coeff in self._terms.items():
            moved = [0] * self.nvars
            for k, e in enumerate(exps):
                moved[targets[k]] = e
            terms[tuple(moved)] = coeff
        return LaurentPoly._raw(self.nvars, terms)

    def burau_quotient(self) -> "LaurentPoly":
        """Identify every t_i with a single variable t."""
        terms: Dict[Exps, int] = {}
        for exps, coeff in self._terms.items():
            key = (sum(exps),)
            terms[key] = terms.get(key, 0) + coeff
        return LaurentPoly._raw(1, terms)

    # --- rendering ---

    def format(self) -> str:
        return format_poly(self)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly('{format_poly(self)}')"

    def to_model(self) -> PolyModel:
        return PolyModel(
            nvars=self.nvars,
            terms=[TermModel(coeff=str(c), exps=list(e)) for e, c in self.sorted_terms()],
        )

    @classmethod
    def from_model(cls, model: PolyModel) -> "LaurentPoly":
        return cls(model.nvars, {tuple(t.exps): int(t.coeff) for t in model.terms})


def _accumulate_product(into: Dict[Exps, int], a: Dict[Exps, int], b: Dict[Exps, int], nvars: int):
    if len(a) > len(b):
        a, b = b, a
    zero = (0,) * nvars
    add = operator.add
    for ea, ca in a.items():
        if ea == zero:
            for eb, cb in b.items():
                into[eb] = into.get(eb, 0) + ca * cb
            continue
        for eb, cb in b.items():
            e = ea if eb == zero else tuple(map(add, ea, eb))
            into[e] = into.get(e, 0) + ca * cb


def poly_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def poly_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def poly_dot(pairs: Iterable[Tuple[LaurentPoly, LaurentPoly]], nvars: Optional[int] = None) -> LaurentPoly:
    """Sum of products a*b, accumulated into one term map."""
    terms: Dict[Exps, int] = {}
    for a, b in pairs:
        if nvars is None:
            nvars = a.nvars
        if a.nvars != nvars or b.nvars != nvars:
            raise ValueError(f"Variable-count mismatch in dot product: {a.nvars}, {b.nvars} vs {nvars}")
        _accumulate_product(terms, a._terms, b._terms, nvars)
    if nvars is None:
        raise ValueError("poly_dot of an empty sequence needs nvars")
    return LaurentPoly._raw(nvars, terms)


def poly_eval(p: LaurentPoly, point: Sequence[Scalar]) -> Fraction:
    return p.evaluate(point)


def permute_vars(p: LaurentPoly, s: Permutation) -> LaurentPoly:
    return p.permute_vars(s)


def burau_quotient(p: LaurentPoly) -> LaurentPoly:
    return p.burau_quotient()


def _format_monomial(exps: Exps) -> str:
    names = ["t"] if len(exps) == 1 else [f"t{k}" for k in range(1, len(exps) + 1)]
    factors = []
    for name, e in zip(names, exps):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_poly(p: LaurentPoly) -> str:
    """Terms in ascending lexicographic exponent order, e.g. '1 - t1 + t1*t2^-1'."""
    if p.is_zero():
        return "0"
    parts = []
    for exps, coeff in p.sorted_terms():
        mono = _format_monomial(exps)
        size = abs(coeff)
        if not mono:
            body = str(size)
        elif size == 1:
            body = mono
        else:
            body = f"{size}*{mono}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(parts)
