"""Exact multivariate Laurent polynomials over the rationals.

Coefficients are fractions.Fraction, exponent vectors are integer tuples
keyed to a fixed tuple of generator names.  This is deliberately a small
ring: addition, multiplication, integer powers, division by monomials,
monomial substitution, and regrouping by the exponent of one generator.
There is no general polynomial division and no GCD; nothing downstream
needs them, and keeping the ring small keeps exactness easy to audit.
"""

from fractions import Fraction


class LaurentError(ArithmeticError):
    pass


def _as_coeff(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise LaurentError(f"coefficient must be rational, got {type(x).__name__}")


class LaurentRing:
    """Fixed list of named generators; polys remember their ring."""

    def __init__(self, *names):
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        if len(set(names)) != len(names):
            raise LaurentError("duplicate generator names")
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.zero = LaurentPoly(self, {})
        self.one = LaurentPoly(self, {(0,) * len(self.names): Fraction(1)})

    def gen(self, name):
        if name not in self.index:
            raise LaurentError(f"no generator {name!r} in ring {self.names}")
        e = [0] * len(self.names)
        e[self.index[name]] = 1
        return LaurentPoly(self, {tuple(e): Fraction(1)})

    def gens(self):
        return tuple(self.gen(n) for n in self.names)

    def const(self, q):
        q = _as_coeff(q)
        if q == 0:
            return self.zero
        return LaurentPoly(self, {(0,) * len(self.names): q})

    def monomial(self, coeff, **exps):
        e = [0] * len(self.names)
        for name, k in exps.items():
            e[self.index[name]] = int(k)
        c = _as_coeff(coeff)
        return LaurentPoly(self, {tuple(e): c} if c != 0 else {})

    def __repr__(self):
        return f"LaurentRing{self.names}"


class LaurentPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        # terms: dict[tuple[int,...] -> Fraction], zero coefficients dropped
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- predicates ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(k == 0 for k in e) for e in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_value(self):
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise LaurentError(f"not a constant: {self}")
        return next(iter(self.terms.values()))

    def monomial_parts(self):
        if not self.is_monomial():
            raise LaurentError(f"not a monomial: {self}")
        (e, c), = self.terms.items()
        return c, e

    # -- coercion --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.ring is not self.ring and other.ring.names != self.ring.names:
                raise LaurentError("mixed rings")
            return other
        return self.ring.const(other)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(self.ring, out)

    __rmul__ = __mul__

    def inverse(self):
        c, e = self.monomial_parts()
        return LaurentPoly(self.ring, {tuple(-k for k in e): 1 / c})

    def __pow__(self, n):
        if not isinstance(n, int):
            raise LaurentError("exponent must be int")
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except LaurentError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    # -- substitution and evaluation -------------------------------------

    def subs(self, target_ring, mapping):
        """Map into target_ring sending each generator by name.

        mapping: name -> LaurentPoly in target_ring (or rational).  Names
        absent from mapping must exist in target_ring and map to themselves.
        Negative exponents require the substituted value to be an invertible
        monomial.
        """
        vals = []
        for name in self.ring.names:
            v = mapping.get(name)
            if v is None:
                v = target_ring.gen(name)
            elif not isinstance(v, LaurentPoly):
                v = target_ring.const(v)
            vals.append(v)
        out = target_ring.zero
        for e, c in self.terms.items():
            term = target_ring.const(c)
            for v, k in zip(vals, e):
                if k:
                    term = term * v ** k
            out = out + term
        return out

    def eval(self, values):
        """Numeric evaluation; values maps every needed name to a number."""
        out = 0
        for e, c in self.terms.items():
            term = c
            for name, k in zip(self.ring.names, e):
                if k:
                    term = term * values[name] ** k
            out = out + term
        return out

    def split_by(self, name):
        """Group terms by the exponent of one generator.

        Returns dict[int -> LaurentPoly] in the same ring; each value has
        exponent 0 on `name`.
        """
        i = self.ring.index[name]
        groups = {}
        for e, c in self.terms.items():
            k = e[i]
            e0 = e[:i] + (0,) + e[i + 1:]
            groups.setdefault(k, {})[e0] = c
        return {k: LaurentPoly(self.ring, t) for k, t in sorted(groups.items())}

    # -- display ---------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = [str(c)] if c != 1 or all(k == 0 for k in e) else []
            for name, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            bits.append("*".join(factors) if factors else "1")
        return " + ".join(bits).replace("+ -", "- ")
