"""
Finite windows W of G~ on which canonical-process coordinates live.
"""
from collections import OrderedDict

from nilkit.algebra.nilseq import NilSeq, parse_nilseq
from nilkit.core.exceptions import StructureError, WindowClosureError
from nilkit.couplings.semidirect import (
    SemidirectElement, as_element, constant,
)
from nilkit.reduction.calculus import evaluate_bracket


class IndexWindow(object):
    """
    An ordered, duplicate-free set of G~ elements.

    `annotations` maps a label to the closure record of a semidirect element
    h: the closed core {c in W : rho(h)^-1 c in W} and whether it is all of W.
    """

    def __init__(self, elements):
        ordered = OrderedDict()
        dim = None
        for element in elements:
            element = as_element(element)
            if dim is None:
                dim = element.dim
            elif element.dim != dim:
                raise StructureError("Window elements differ in dimension")
            ordered.setdefault(element, None)
        if not ordered:
            raise StructureError("A window needs at least one element")
        self.elements = tuple(ordered)
        self.dim = dim
        self._positions = {e: i for i, e in enumerate(self.elements)}
        self._cores = {}
        self.annotations = OrderedDict()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, element):
        return element in self._positions

    def position(self, element):
        try:
            return self._positions[element]
        except KeyError:
            raise WindowClosureError(
                "{} is not in the window".format(element.serialize()))

    def positions(self, elements):
        return [self.position(e) for e in elements]

    def core(self, h):
        """Coordinates c whose S^h source rho(h)^-1 c is also in W, in window order."""
        if h not in self._cores:
            self._cores[h] = tuple(
                c for c in self.elements if h.source(c) in self)
        return self._cores[h]

    def closed_under(self, h):
        return len(self.core(h)) == len(self)

    def annotate(self, label, h):
        core = self.core(h)
        self.annotations[label] = {
            'closed': len(core) == len(self),
            'core_size': len(core),
        }
        return self.annotations[label]

    def annotate_translation(self, g):
        h = SemidirectElement.translation(constant(g))
        return self.annotate('translate:{}'.format(h.q.serialize()), h)

    def annotate_alpha(self, power=1):
        h = SemidirectElement.alpha(self.dim, power)
        return self.annotate('alpha^{}'.format(power), h)

    def annotate_closure(self, translations=()):
        """Record the closure of W under alpha, alpha^-1 and every iota(g)."""
        self.annotate_alpha(1)
        self.annotate_alpha(-1)
        for g in translations:
            self.annotate_translation(g)
        return self.annotations

    def serialize(self):
        return [e.to_list() for e in self.elements]

    @classmethod
    def from_serialized(cls, data):
        return cls(parse_nilseq(rows, level=1) for rows in data)

    def __eq__(self, other):
        if not isinstance(other, IndexWindow):
            return NotImplemented
        return self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)


def required_elements(gsys):
    """p_k p_i^-1 for i < k, then p_k, as G~ elements."""
    *head, last = gsys.entries
    return ([as_element(last * p.inverse()) for p in head]
            + [as_element(last)])


def rearranged_elements(gsys, n):
    """<p_k|p_i>(n)^-1 for i < k, then <p_k|e>(n)^-1."""
    *head, last = gsys.entries
    identity = NilSeq.identity(gsys.dim)
    return ([evaluate_bracket(last, p, n).inverse() for p in head]
            + [evaluate_bracket(last, identity, n).inverse()])


def translated_elements(gsys, n):
    """iota(p_k(n))^-1 c for every required element c."""
    shift = constant(gsys.last.evaluate({'n': n})).inverse()
    return [shift * c for c in required_elements(gsys)]


def build_window(gsys, n_range, extra=(), chain=False, translations=()):
    """
    W = {e} u {<p_k|p_i>(n), <p_k|e>(n) : n in n_range} u {p_k p_i^-1, p_k}
    u extra. With `chain`, also the coordinates read by the identity chain:
    iota(p_k(n))^-1 p_k p_i^-1, iota(p_k(n))^-1 p_k and the inverse brackets.

    The returned window is annotated with its closure under alpha^{+-1}
    and under iota(g) for every g in `translations`.
    """
    if gsys.level != 0:
        raise StructureError("Windows are built from level 0 systems")
    n_range = list(n_range)
    if not n_range:
        raise StructureError("Window needs a nonempty n range")
    *head, last = gsys.entries
    identity = NilSeq.identity(gsys.dim)
    elements = [NilSeq.identity(gsys.dim, level=1)]
    for n in n_range:
        elements.extend(evaluate_bracket(last, p, n) for p in head)
        elements.append(evaluate_bracket(last, identity, n))
    elements.extend(required_elements(gsys))
    if chain:
        for n in n_range:
            elements.extend(translated_elements(gsys, n))
            elements.extend(rearranged_elements(gsys, n))
    elements.extend(as_element(q, gsys.dim) for q in extra)
    window = IndexWindow(elements)
    window.annotate_closure(translations)
    return window


def translation_closure_elements(gsys, translations):
    """
    iota(g)^-1 c for every g in `translations` and every c in {e} u the
    required elements: added to a window, they keep the closed core of
    each translation nonempty.
    """
    base = [NilSeq.identity(gsys.dim, level=1)] + required_elements(gsys)
    out = []
    for g in translations:
        shift = constant(g).inverse()
        out.extend(shift * c for c in base)
    return out
