"""
The category of finite sets and relations with its dagger compact structure.

A Relation stores one int bitmask per domain element: bit j of row i is set when the i-th
domain element is related to the j-th codomain element. Points are relations out of the
one-element set I and stand for subsets of their codomain.
"""

import itertools
from dataclasses import dataclass, field
from typing import Generic, TypeVar

from relcat.errors import ArityMismatch, DomainMismatch, NotDaggerKernel


@dataclass(frozen=True)
class FinSet:
    """
    A labelled finite set. Equality ignores the label and compares the element list.
    """

    label: str = field(compare=False)
    elements: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("Set %s has repeated elements" % self.label)
        object.__setattr__(self, "_positions", {e: i for i, e in enumerate(self.elements)})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, element):
        """
        :return: Position of element in the set's order
        :raises DomainMismatch: if element is not in the set
        """

        try:
            return self._positions[element]
        except KeyError:
            raise DomainMismatch("%s is not an element of %s" % (element, self.label))

    @property
    def full_mask(self):
        return (1 << len(self.elements)) - 1


# Monoidal unit and zero object
UNIT = FinSet("I", ("*",))
EMPTY = FinSet("0", ())


def finset(label, size):
    """
    :return: FinSet with elements a, b, c, ... (x0, x1, ... past 26 elements)
    """

    if size <= 26:
        return FinSet(label, tuple("abcdefghijklmnopqrstuvwxyz"[:size]))
    return FinSet(label, tuple("x%d" % i for i in range(size)))


@dataclass(frozen=True)
class Relation:
    dom: FinSet
    cod: FinSet
    rows: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != len(self.dom):
            raise DomainMismatch("Relation has %d rows but its domain %s has %d elements"
                                 % (len(rows), self.dom.label, len(self.dom)))
        limit = 1 << len(self.cod)
        for row in rows:
            if row < 0 or row >= limit:
                raise DomainMismatch("Row %d does not fit codomain %s" % (row, self.cod.label))

    @classmethod
    def from_pairs(cls, dom, cod, pairs):
        """
        :param pairs: Iterable of (domain element, codomain element)
        :return: Relation
        :raises DomainMismatch: for an element outside dom or cod
        """

        rows = [0] * len(dom)
        for x, y in pairs:
            rows[dom.index(x)] |= 1 << cod.index(y)
        return cls(dom, cod, tuple(rows))

    @property
    def pairs(self):
        """
        :return: frozenset of related (x, y) element pairs
        """

        return frozenset((x, y) for i, x in enumerate(self.dom.elements)
                         for j, y in enumerate(self.cod.elements) if self.rows[i] >> j & 1)

    def related(self, x, y):
        """
        :return: True if x is related to y
        """

        return bool(self.rows[self.dom.index(x)] >> self.cod.index(y) & 1)

    @property
    def is_zero(self):
        return not any(self.rows)

    @property
    def is_point(self):
        return self.dom == UNIT

    @property
    def mask(self):
        """
        Subset bitmask of a point.
        """

        if not self.is_point:
            raise DomainMismatch("Only points I -> X have a subset mask")
        return self.rows[0]

    def subset(self):
        """
        :return: Codomain elements of a point, in codomain order
        """

        mask = self.mask
        return tuple(y for j, y in enumerate(self.cod.elements) if mask >> j & 1)

    def __repr__(self):
        return "Relation(%s -> %s, %s)" % (self.dom.label, self.cod.label, sorted(self.pairs))


# A point is a relation with domain I
Point = Relation


def bits(mask):
    """
    Yields the positions of the set bits of mask, lowest first.
    """

    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def identity(X):
    """
    Diagonal relation on X.
    """

    return Relation(X, X, tuple(1 << i for i in range(len(X))))


def zero_morphism(X, Y):
    """
    Empty relation X -> Y.
    """

    return Relation(X, Y, (0,) * len(X))


def relabel(dom, cod):
    """
    The relation sending the i-th element of dom to the i-th element of cod.
    """

    if len(dom) != len(cod):
        raise DomainMismatch("Cannot match %s with %s element by element" % (dom.label, cod.label))
    return Relation(dom, cod, tuple(1 << i for i in range(len(dom))))


def compose(s, r):
    """
    Relational composite s∘r: (x, z) is related iff (x, y) ∈ r and (y, z) ∈ s for some y.

    :raises DomainMismatch: if cod(r) != dom(s)
    """

    if r.cod != s.dom:
        raise DomainMismatch("Cannot compose %s -> %s after %s -> %s"
                             % (s.dom.label, s.cod.label, r.dom.label, r.cod.label))
    srows = s.rows
    out = []
    for row in r.rows:
        acc = 0
        while row:
            low = row & -row
            acc |= srows[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return Relation(r.dom, s.cod, tuple(out))


def dagger(r):
    """
    Converse relation.
    """

    out = [0] * len(r.cod)
    for i, row in enumerate(r.rows):
        for j in bits(row):
            out[j] |= 1 << i
    return Relation(r.cod, r.dom, tuple(out))


def product_set(X, Y):
    """
    Cartesian product with element labels (x,y) in row-major order.
    """

    return FinSet("(%s⊗%s)" % (X.label, Y.label), tuple("(%s,%s)" % (x, y) for x in X for y in Y))


def tensor(r, s):
    """
    Cartesian product of relations: ((x,u),(y,v)) iff (x,y) ∈ r and (u,v) ∈ s.
    """

    width = len(s.cod)
    rows = []
    for rx in r.rows:
        for su in s.rows:
            acc = 0
            for y in bits(rx):
                acc |= su << (y * width)
            rows.append(acc)
    return Relation(product_set(r.dom, s.dom), product_set(r.cod, s.cod), tuple(rows))


def biproduct_set(Xs):
    """
    Disjoint union, elements tagged "α.x" by summand index.
    """

    if not Xs:
        return EMPTY
    label = "(%s)" % "⊕".join(X.label for X in Xs)
    return FinSet(label, tuple("%d.%s" % (alpha, x) for alpha, X in enumerate(Xs) for x in X))


def _offsets(Xs):
    offsets = [0]
    for X in Xs:
        offsets.append(offsets[-1] + len(X))
    return offsets


def biproduct(Xs):
    """
    Disjoint union with its injections and projections.

    :param Xs: List of FinSet, possibly empty
    :return: (FinSet, list of injections, list of projections), projections being the
             daggers of the injections
    """

    Xs = list(Xs)
    S = biproduct_set(Xs)
    offsets = _offsets(Xs)
    injections = [Relation(X, S, tuple(1 << (offsets[alpha] + i) for i in range(len(X))))
                  for alpha, X in enumerate(Xs)]
    projections = [dagger(i) for i in injections]
    return S, injections, projections


def direct_sum(rs):
    """
    Block-diagonal sum ⊕rs: ⊕dom(r) -> ⊕cod(r).
    """

    rs = list(rs)
    cod_offsets = _offsets([r.cod for r in rs])
    rows = []
    for alpha, r in enumerate(rs):
        rows.extend(row << cod_offsets[alpha] for row in r.rows)
    return Relation(biproduct_set([r.dom for r in rs]), biproduct_set([r.cod for r in rs]), tuple(rows))


def associator(X, Y, Z):
    """
    (X⊗Y)⊗Z -> X⊗(Y⊗Z). Row-major products index both sides identically.
    """

    return relabel(product_set(product_set(X, Y), Z), product_set(X, product_set(Y, Z)))


def braiding(X, Y):
    """
    X⊗Y -> Y⊗X, (x,y) ↦ (y,x).
    """

    n, m = len(X), len(Y)
    rows = tuple(1 << (y * n + x) for x in range(n) for y in range(m))
    return Relation(product_set(X, Y), product_set(Y, X), rows)


def left_unitor(X):
    """
    I×X -> X, (*, x) ↦ x.
    """

    return relabel(product_set(UNIT, X), X)


def right_unitor(X):
    """
    X×I -> X, (x, *) ↦ x.
    """

    return relabel(product_set(X, UNIT), X)


def diagonal(X, copies=2):
    """
    X -> ⊕_copies X, x ↦ α.x for every summand α.
    """

    S = biproduct_set([X] * copies)
    n = len(X)
    rows = []
    for i in range(n):
        rows.append(sum(1 << (alpha * n + i) for alpha in range(copies)))
    return Relation(X, S, tuple(rows))


def codiagonal(X, copies=2):
    """
    ⊕_copies X -> X, the converse of diagonal.
    """

    return dagger(diagonal(X, copies))


_ARITY = {
    "associator": 3,
    "braiding": 2,
    "left-unitor": 1,
    "right-unitor": 1,
    "diagonal": 1,
    "codiagonal": 1,
    "zero-morphism": 2,
}


def structural(kind, objects, copies=2):
    """
    Canonical structural morphism of the given kind.

    :param kind: One of associator, braiding, left-unitor, right-unitor, diagonal,
                 codiagonal, zero-morphism
    :param objects: FinSets the morphism is built on
    :param copies: Number of summands for diagonal / codiagonal
    :raises ArityMismatch: if the number of objects does not fit the kind
    """

    if kind not in _ARITY:
        raise ValueError("Unknown structural morphism %r" % kind)
    objects = list(objects)
    if len(objects) != _ARITY[kind]:
        raise ArityMismatch("%s takes %d objects, got %d" % (kind, _ARITY[kind], len(objects)))
    if kind == "associator":
        return associator(*objects)
    if kind == "braiding":
        return braiding(*objects)
    if kind == "left-unitor":
        return left_unitor(*objects)
    if kind == "right-unitor":
        return right_unitor(*objects)
    if kind == "diagonal":
        return diagonal(objects[0], copies)
    if kind == "codiagonal":
        return codiagonal(objects[0], copies)
    return zero_morphism(*objects)


M = TypeVar("M")


@dataclass(frozen=True)
class DaggerKernelWitness(Generic[M]):
    """
    m is a kernel of source and a dagger monomorphism.
    """

    m: M
    source: M


def pattern(X, mask):
    """
    :return: The subset bit-pattern of mask as 0/1 characters in element order
    """

    return "".join("1" if mask >> i & 1 else "0" for i in range(len(X)))


def subset_set(X, mask):
    """
    :return: FinSet of the elements of X selected by mask, labelled with the pattern
    """

    return FinSet("%s[%s]" % (X.label, pattern(X, mask)), tuple(x for i, x in enumerate(X.elements) if mask >> i & 1))


def inclusion(X, mask):
    """
    Inclusion of the subset of X selected by mask, elements in ambient order.
    """

    A = subset_set(X, mask)
    return Relation(A, X, tuple(1 << i for i in bits(mask)))


def kernel(r):
    """
    Canonical dagger kernel of r: the inclusion of {x | x is related to nothing}.
    """

    mask = 0
    for i, row in enumerate(r.rows):
        if not row:
            mask |= 1 << i
    return DaggerKernelWitness(inclusion(r.dom, mask), r)


def cokernel(r):
    """
    coker(r) = ker(r†)†.
    """

    return dagger(kernel(dagger(r)).m)


def is_dagger_mono(m):
    """
    :return: True if m†∘m = id
    """

    return compose(dagger(m), m) == identity(m.dom)


def is_dagger_iso(i):
    """
    :return: True if m is unitary
    """

    return is_dagger_mono(i) and compose(i, dagger(i)) == identity(i.cod)


def check_dagger_kernel(w):
    """
    :raises NotDaggerKernel: if w.m is not an injective function graph with m†∘m = id
                             and source∘m = 0
    """

    m = w.m
    if any(row & (row - 1) or not row for row in m.rows):
        raise NotDaggerKernel("%s is not the graph of a function" % m)
    if len(set(m.rows)) != len(m.rows):
        raise NotDaggerKernel("%s is not injective" % m)
    if not is_dagger_mono(m):
        raise NotDaggerKernel("%s is not dagger monic" % m)
    if w.source.dom != m.cod or not compose(w.source, m).is_zero:
        raise NotDaggerKernel("%s is not annihilated by its source" % m)


def complement(w):
    """
    Complement m⊥ = ker(m†). For a subset inclusion this is the inclusion of the
    set-theoretic complement.

    :raises NotDaggerKernel: if w is not a valid witness
    """

    check_dagger_kernel(w)
    return kernel(dagger(w.m))


def is_orthogonal(m, n):
    """
    :return: True if m†∘n = 0
    """

    return compose(dagger(m), n).is_zero


def _check_parallel(rs, dom, cod):
    if dom is None or cod is None:
        if not rs:
            raise DomainMismatch("An empty family needs an explicit signature")
        dom, cod = rs[0].dom, rs[0].cod
    for r in rs:
        if r.dom != dom or r.cod != cod:
            raise DomainMismatch("Family is not parallel: %s -> %s against %s -> %s"
                                 % (r.dom.label, r.cod.label, dom.label, cod.label))
    return dom, cod


def join(rs, dom=None, cod=None):
    """
    Union of a family of parallel relations.

    :param dom: Signature for the empty family
    :raises DomainMismatch: if the family is not parallel
    """

    rs = list(rs)
    dom, cod = _check_parallel(rs, dom, cod)
    rows = [0] * len(dom)
    for r in rs:
        for i, row in enumerate(r.rows):
            rows[i] |= row
    return Relation(dom, cod, tuple(rows))


def diagonal_sum(rs, dom=None, cod=None):
    """
    Biproduct-induced sum Δ†∘(⊕rs)∘Δ.
    """

    rs = list(rs)
    dom, cod = _check_parallel(rs, dom, cod)
    summed = direct_sum(rs) if rs else zero_morphism(EMPTY, EMPTY)
    return compose(codiagonal(cod, len(rs)), compose(summed, diagonal(dom, len(rs))))


def point(X, subset):
    """
    :param subset: Bitmask, or iterable of element labels
    :return: Point I -> X
    """

    if isinstance(subset, int):
        mask = subset
    else:
        mask = 0
        for x in subset:
            mask |= 1 << X.index(x)
    return Relation(UNIT, X, (mask,))


def points(X):
    """
    Every point of X, in increasing mask order.
    """

    return [Relation(UNIT, X, (mask,)) for mask in range(1 << len(X))]


def homs(X, Y):
    """
    Every relation X -> Y, in lexicographic row order.
    """

    for rows in itertools.product(range(1 << len(Y)), repeat=len(X)):
        yield Relation(X, Y, rows)


def top(X):
    """
    The full subset of X as a point.
    """

    return Relation(UNIT, X, (X.full_mask,))


def neg(a):
    """
    Largest point b with a†∘b = 0, i.e. the complementary subset.
    """

    return Relation(UNIT, a.cod, (a.cod.full_mask & ~a.mask,))


def meet(a, b):
    """
    Meet of two points computed as j∘j†∘b, where j = ker(a†)⊥ is the inclusion of a.

    :raises DomainMismatch: if a and b have different codomains
    """

    if a.cod != b.cod:
        raise DomainMismatch("Points of %s and %s cannot be met" % (a.cod.label, b.cod.label))
    j = complement(kernel(dagger(a))).m
    return compose(compose(j, dagger(j)), b)


def atoms(X):
    """
    Singleton points of X in element order.
    """

    return [Relation(UNIT, X, (1 << i,)) for i in range(len(X))]


def dual_unit(X):
    """
    η_X: I -> X⊗X relating * to every (x,x). X is its own dual.
    """

    n = len(X)
    return Relation(UNIT, product_set(X, X), (sum(1 << (i * n + i) for i in range(n)),))


def dual_counit(X):
    """
    ε_X: X⊗X -> I, the dagger of the braided unit.
    """

    return dagger(compose(braiding(X, X), dual_unit(X)))


def snake_composites(X):
    """
    Both snake composites with unitors and associators written out:

        X -> X⊗I -> X⊗(X⊗X) -> (X⊗X)⊗X -> I⊗X -> X
        X -> I⊗X -> (X⊗X)⊗X -> X⊗(X⊗X) -> X⊗I -> X

    :return: Tuple of the two composites; each equals id_X
    """

    eta = dual_unit(X)
    idx = identity(X)
    first = compose(left_unitor(X),
                    compose(tensor(dagger(eta), idx),
                            compose(dagger(associator(X, X, X)),
                                    compose(tensor(idx, eta), dagger(right_unitor(X))))))
    second = compose(right_unitor(X),
                     compose(tensor(idx, dagger(eta)),
                             compose(associator(X, X, X),
                                     compose(tensor(eta, idx), dagger(left_unitor(X))))))
    return first, second


def trace(r):
    """
    Scalar η†∘β∘(r⊗id)∘β∘η of an endorelation.

    :return: True iff r has a fixed point
    :raises DomainMismatch: if r is not an endorelation
    """

    if r.dom != r.cod:
        raise DomainMismatch("Trace needs an endorelation, got %s -> %s" % (r.dom.label, r.cod.label))
    X = r.dom
    eta = dual_unit(X)
    beta = braiding(X, X)
    loop = compose(beta, compose(tensor(r, identity(X)), compose(beta, eta)))
    return bool(compose(dagger(eta), loop).rows[0])


def breve(r):
    """
    Point (id_X ⊗ r)∘η_X: I -> X⊗Y naming r.
    """

    return compose(tensor(identity(r.dom), r), dual_unit(r.dom))


def un_breve(p, X, Y):
    """
    Inverse of breve: λ∘(η_X†⊗id_Y)∘α⁻¹∘(id_X⊗p)∘ρ⁻¹: X -> Y.

    :raises DomainMismatch: if p is not a point of X⊗Y
    """

    if not p.is_point or p.cod != product_set(X, Y):
        raise DomainMismatch("%s is not a point of %s⊗%s" % (p, X.label, Y.label))
    pipeline = compose(tensor(identity(X), p), dagger(right_unitor(X)))
    pipeline = compose(dagger(associator(X, X, Y)), pipeline)
    pipeline = compose(tensor(dagger(dual_unit(X)), identity(Y)), pipeline)
    return compose(left_unitor(Y), pipeline)
