"""
Multivariate polynomials with exact integer coefficients.

A MultiPoly is a finite map from exponent vectors to nonzero integers over a
declared, ordered variable list. The map is stored sorted in graded
lexicographic order, so two polynomials are equal iff their stored terms are
identical.

Example
-------
MultiPoly({(2, 0): 2, (1, 1): 1, (0, 0): -3}, ('n', 'm1'))
is printed as `2*n^2 + n*m1 - 3`.
"""
import numbers
import re

from nilkit.core.exceptions import StructureError

POLY_CHARS = re.compile(r'^[\w\s+\-*^()]*$')
IDENTIFIER = re.compile(r'[^\W\d]\w*')


def grlex_key(exponents):
    """Sort key putting higher total degree first, then lexicographically larger."""
    return (-sum(exponents), tuple(-e for e in exponents))


def _as_coefficient(value):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise StructureError(
            "Coefficients must be integers, got {!r}".format(value))
    return int(value)


class MultiPoly(object):
    __slots__ = ('_varlist', '_terms', '_hash')

    def __init__(self, terms, varlist):
        varlist = tuple(varlist)
        if len(set(varlist)) != len(varlist):
            raise StructureError("Duplicate variable in {}".format(varlist))
        cleaned = {}
        for exponents, coeff in dict(terms).items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != len(varlist):
                raise StructureError(
                    "Exponent vector {} does not match variables {}".format(
                        exponents, varlist))
            if any(e < 0 for e in exponents):
                raise StructureError(
                    "Negative exponent in {}".format(exponents))
            coeff = _as_coefficient(coeff)
            if coeff != 0:
                cleaned[exponents] = coeff
        self._varlist = varlist
        self._terms = tuple(
            sorted(cleaned.items(), key=lambda item: grlex_key(item[0])))
        self._hash = None

    @classmethod
    def zero(cls, varlist):
        return cls({}, varlist)

    @classmethod
    def constant(cls, value, varlist):
        varlist = tuple(varlist)
        return cls({(0,) * len(varlist): value}, varlist)

    @classmethod
    def one(cls, varlist):
        return cls.constant(1, varlist)

    @classmethod
    def variable(cls, name, varlist):
        varlist = tuple(varlist)
        if name not in varlist:
            raise StructureError(
                "Unknown variable {} for {}".format(name, varlist))
        exponents = tuple(1 if v == name else 0 for v in varlist)
        return cls({exponents: 1}, varlist)

    """
    Accessors
    """

    @property
    def varlist(self):
        return self._varlist

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self):
        return len(self._terms) == 0

    def is_constant(self):
        return all(sum(e) == 0 for e, _ in self._terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self._varlist), 0)

    def degree(self, var):
        """Largest exponent of `var`; -1 for the zero polynomial."""
        index = self._index(var)
        if self.is_zero():
            return -1
        return max(e[index] for e, _ in self._terms)

    def total_degree(self):
        if self.is_zero():
            return -1
        return max(sum(e) for e, _ in self._terms)

    def depends_on(self, var):
        index = self._index(var)
        return any(e[index] > 0 for e, _ in self._terms)

    def variables(self):
        """Names that appear with a positive exponent, in varlist order."""
        return tuple(
            v for i, v in enumerate(self._varlist)
            if any(e[i] > 0 for e, _ in self._terms)
        )

    def _index(self, var):
        try:
            return self._varlist.index(var)
        except ValueError:
            raise StructureError(
                "Variable {} not in {}".format(var, self._varlist))

    """
    Ring operations
    """

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other._varlist != self._varlist:
                raise StructureError(
                    "Variable lists differ: {} vs {}".format(
                        self._varlist, other._varlist))
            return other
        if isinstance(other, numbers.Integral) and not isinstance(other, bool):
            return MultiPoly.constant(other, self._varlist)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self._terms)
        for exponents, coeff in other._terms:
            result[exponents] = result.get(exponents, 0) + coeff
        return MultiPoly(result, self._varlist)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self._terms}, self._varlist)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                result[e] = result.get(e, 0) + c1 * c2
        return MultiPoly(result, self._varlist)

    __rmul__ = __mul__

    def __pow__(self, power):
        if not isinstance(power, numbers.Integral) or power < 0:
            raise StructureError("Only nonnegative integer powers")
        result = MultiPoly.one(self._varlist)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._varlist == other._varlist and self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._varlist, self._terms))
        return self._hash

    """
    Substitutions
    """

    def relabel(self, varlist, mapping=None):
        """
        Re-express the polynomial over `varlist`, optionally renaming
        variables first. Variables that appear must survive the renaming.
        Two names mapped to the same target multiply together.
        """
        varlist = tuple(varlist)
        mapping = mapping or {}
        targets = []
        for i, name in enumerate(self._varlist):
            new_name = mapping.get(name, name)
            if new_name in varlist:
                targets.append(varlist.index(new_name))
            elif any(e[i] > 0 for e, _ in self._terms):
                raise StructureError(
                    "Variable {} has no place in {}".format(name, varlist))
            else:
                targets.append(None)
        result = {}
        for exponents, coeff in self._terms:
            new_exponents = [0] * len(varlist)
            for i, e in enumerate(exponents):
                if e:
                    new_exponents[targets[i]] += e
            key = tuple(new_exponents)
            result[key] = result.get(key, 0) + coeff
        return MultiPoly(result, varlist)

    def substitute(self, var, replacement):
        """Replace `var` by the polynomial `replacement` and expand."""
        index = self._index(var)
        replacement = self._coerce(replacement)
        if replacement is NotImplemented:
            raise StructureError("Cannot substitute {!r}".format(replacement))
        powers = {0: MultiPoly.one(self._varlist)}
        result = MultiPoly.zero(self._varlist)
        for exponents, coeff in self._terms:
            e = exponents[index]
            if e not in powers:
                powers[e] = replacement ** e
            rest = list(exponents)
            rest[index] = 0
            monomial = MultiPoly({tuple(rest): coeff}, self._varlist)
            result = result + monomial * powers[e]
        return result

    def specialize(self, assignment):
        """Substitute integer values for some of the variables."""
        result = self
        for var, value in assignment.items():
            if var in self._varlist:
                result = result.substitute(var, int(value))
        return result

    def shift(self, var, offset_var):
        """
        Replace `var` by `var + offset_var`. An `offset_var` that is not yet
        declared is appended to the variable list.
        """
        poly = self
        if offset_var not in poly._varlist:
            poly = poly.relabel(poly._varlist + (offset_var,))
        shifted = (MultiPoly.variable(var, poly._varlist)
                   + MultiPoly.variable(offset_var, poly._varlist))
        return poly.substitute(var, shifted)

    def evaluate(self, assignment):
        """Exact integer value; every variable that appears must be assigned."""
        missing = [v for v in self.variables() if v not in assignment]
        if missing:
            raise StructureError(
                "No value for variables {}".format(missing))
        values = [int(assignment.get(v, 0)) for v in self._varlist]
        total = 0
        for exponents, coeff in self._terms:
            term = coeff
            for value, e in zip(values, exponents):
                if e:
                    term *= value ** e
            total += term
        return total

    """
    Text form
    """

    def _monomial_str(self, exponents):
        factors = []
        for name, e in zip(self._varlist, exponents):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("{}^{}".format(name, e))
        return '*'.join(factors)

    def serialize(self):
        if self.is_zero():
            return "0"
        out = ""
        for i, (exponents, coeff) in enumerate(self._terms):
            monomial = self._monomial_str(exponents)
            magnitude = abs(coeff)
            if monomial and magnitude == 1:
                body = monomial
            elif monomial:
                body = "{}*{}".format(magnitude, monomial)
            else:
                body = str(magnitude)
            if i == 0:
                out = ("-" if coeff < 0 else "") + body
            else:
                out += (" - " if coeff < 0 else " + ") + body
        return out

    __str__ = serialize

    def __repr__(self):
        return "MultiPoly({!r}, {})".format(self.serialize(), self._varlist)


def parse_multipoly(text, varlist):
    """
    Parse a polynomial string such as `2*n^2 + n*m1 - 3` over `varlist`.

    Parsing goes through sympy so that any reasonable spelling is accepted
    (`2n`, `(n+1)*(n-1)`, `n**2`); the result must have integer
    coefficients and mention only declared variables. Text with any other
    name or character is refused before it reaches sympy.
    """
    from sympy import Symbol, Poly
    from sympy.parsing.sympy_parser import (
        parse_expr, standard_transformations, implicit_multiplication,
        convert_xor,
    )
    from sympy.polys.polyerrors import PolynomialError

    varlist = tuple(varlist)
    if isinstance(text, numbers.Integral) and not isinstance(text, bool):
        return MultiPoly.constant(text, varlist)
    text = str(text)
    # only declared names reach sympy's eval
    if not POLY_CHARS.match(text):
        raise StructureError("Cannot parse {!r}: unexpected characters".format(
            text))
    unknown = sorted(set(IDENTIFIER.findall(text)) - set(varlist))
    if unknown:
        raise StructureError(
            "Unknown variables {} in {!r}".format(unknown, text))
    symbols = {name: Symbol(name) for name in varlist}
    transformations = standard_transformations + (
        implicit_multiplication, convert_xor)
    try:
        expr = parse_expr(text, local_dict=dict(symbols),
                          transformations=transformations)
    except Exception as e:
        # sympy raises TokenError, SyntaxError, TypeError... on malformed input
        raise StructureError("Cannot parse {!r}: {}".format(text, e))
    try:
        poly = Poly(expr, *[symbols[name] for name in varlist])
    except PolynomialError as e:
        raise StructureError("Not a polynomial: {!r} ({})".format(text, e))
    terms = {}
    for monom, coeff in poly.terms():
        if not coeff.is_Integer:
            raise StructureError(
                "Non-integer coefficient {} in {!r}".format(coeff, text))
        terms[tuple(monom)] = int(coeff)
    return MultiPoly(terms, varlist)


def poly_arith(a, b, op):
    """`op` is 'add' or 'mul'; variable lists must match."""
    if not isinstance(a, MultiPoly) or not isinstance(b, MultiPoly):
        raise StructureError("poly_arith expects two MultiPoly")
    if a.varlist != b.varlist:
        raise StructureError(
            "Variable lists differ: {} vs {}".format(a.varlist, b.varlist))
    if op == 'add':
        return a + b
    elif op == 'mul':
        return a * b
    raise StructureError("Unknown operation: {}".format(op))


def poly_shift(p, var, offset_var):
    return p.shift(var, offset_var)


def poly_substitute(p, var, replacement):
    return p.substitute(var, replacement)
