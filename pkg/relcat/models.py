"""
Uniform view of the two kinds of model the checker and extraction run against:
the category of finite relations, and a matrix category over a finite rig.

Derived structure that only needs composition, dagger and sums (order, top, negation,
meets, atoms) is implemented once on Model by scanning points; subclasses override it
where a direct formula is available.
"""

import abc

import numpy as np

from relcat import formats, relations as rel
from relcat.matcat import MatObject, MatrixCategory, RigMatrix
from relcat.rig import INFINITE, FamilyDescriptor, multiple, sum_family


class Model(abc.ABC):
    """
    A dagger compact category with biproducts, presented with finitely enumerable hom-sets.
    """

    name = None
    rig = None

    def __init__(self):
        self._homs = {}
        self._atoms = {}
        self._isos = {}

    # Objects

    @abc.abstractmethod
    def obj(self, n):
        """
        The model's canonical object of a given size.

        :param n: Number of elements, or dimension
        :return: Object
        """

    @abc.abstractmethod
    def size(self, X):
        """
        :param X: Object
        :return: Its size as an int
        """

    @property
    @abc.abstractmethod
    def unit(self):
        """
        :return: The monoidal unit I
        """

    @abc.abstractmethod
    def tensor_obj(self, X, Y):
        """
        :param X: Object
        :param Y: Object
        :return: X ⊗ Y
        """

    @abc.abstractmethod
    def object_label(self, X):
        """
        :param X: Object
        :return: Short label used in reports and witness files
        """

    # Morphisms

    @abc.abstractmethod
    def dom(self, r):
        """
        :param r: Morphism
        :return: Its domain
        """

    @abc.abstractmethod
    def cod(self, r):
        """
        :param r: Morphism
        :return: Its codomain
        """

    @abc.abstractmethod
    def identity(self, X):
        """
        :param X: Object
        :return: id_X
        """

    @abc.abstractmethod
    def zero(self, X, Y):
        """
        :param X: Domain
        :param Y: Codomain
        :return: The zero morphism X -> Y
        """

    @abc.abstractmethod
    def compose(self, s, r):
        """
        Composite s∘r, r applied first.

        :param s: Morphism Y -> Z
        :param r: Morphism X -> Y
        :return: Morphism X -> Z
        :raises DomainMismatch: if cod(r) is not dom(s)
        """

    @abc.abstractmethod
    def dagger(self, r):
        """
        :param r: Morphism X -> Y
        :return: r† : Y -> X
        """

    @abc.abstractmethod
    def tensor(self, r, s):
        """
        :param r: Morphism X -> Y
        :param s: Morphism X' -> Y'
        :return: r ⊗ s : X⊗X' -> Y⊗Y'
        """

    @abc.abstractmethod
    def add(self, r, s):
        """
        :param r: Morphism X -> Y
        :param s: Morphism X -> Y
        :return: r + s
        :raises DomainMismatch: if the two hom-sets differ
        """

    @abc.abstractmethod
    def direct_sum(self, rs):
        """
        :param rs: Morphisms r_i : X_i -> Y_i
        :return: ⊕r_i : ⊕X_i -> ⊕Y_i
        """

    @abc.abstractmethod
    def biproduct(self, objects):
        """
        :param objects: Objects X_1 .. X_n
        :return: (sum object, injections, projections)
        """

    @abc.abstractmethod
    def diagonal(self, X, copies):
        """
        :param X: Object
        :param copies: Number of copies n
        :return: Δ : X -> ⊕ⁿX
        """

    @abc.abstractmethod
    def associator(self, X, Y, Z):
        """
        :return: (X⊗Y)⊗Z -> X⊗(Y⊗Z)
        """

    @abc.abstractmethod
    def braiding(self, X, Y):
        """
        :return: X⊗Y -> Y⊗X
        """

    @abc.abstractmethod
    def left_unitor(self, X):
        """
        :return: I⊗X -> X
        """

    @abc.abstractmethod
    def right_unitor(self, X):
        """
        :return: X⊗I -> X
        """

    @abc.abstractmethod
    def dual_unit(self, X):
        """
        :param X: Object, its own dual
        :return: η : I -> X⊗X
        """

    @abc.abstractmethod
    def snake_composites(self, X):
        """
        :param X: Object
        :return: The two snake composites, each expected to equal id_X
        """

    @abc.abstractmethod
    def kernel(self, r, bound):
        """
        :param r: Morphism
        :param bound: Largest kernel object size searched
        :return: DaggerKernelWitness, or None when the model has no kernel at the bound
        """

    @abc.abstractmethod
    def entries(self, r):
        """
        :return: Matrix of carrier labels, rows indexed by codomain, columns by domain
        """

    @abc.abstractmethod
    def from_entries(self, X, Y, labels):
        """
        Inverse of entries.

        :param X: Domain
        :param Y: Codomain
        :param labels: Rows of carrier labels, one row per element of Y
        :return: Morphism X -> Y
        """

    @abc.abstractmethod
    def enumerate_homs(self, X, Y):
        """
        :return: Iterable over every morphism X -> Y in canonical order
        """

    @abc.abstractmethod
    def random_hom(self, X, Y, rng):
        """
        :param rng: numpy Generator
        :return: A uniformly drawn morphism X -> Y
        """

    @abc.abstractmethod
    def perturb(self, r, rng):
        """
        :return: A morphism differing from r in exactly one entry, or None
        """

    @abc.abstractmethod
    def serialize(self, named):
        """
        :param named: List of (name, morphism)
        :return: Text in the model's file format
        """

    @abc.abstractmethod
    def parse(self, text, path="<input>"):
        """
        :return: List of (name, morphism)
        """

    @abc.abstractmethod
    def point_pattern(self, p):
        """
        :param p: Point I -> X
        :return: Its entries as a compact string, lowest position first
        """

    # Enumeration

    def hom_count(self, X, Y):
        """
        :return: Number of morphisms X -> Y, without enumerating them
        """

        return self.rig.size ** (self.size(X) * self.size(Y))

    def homs(self, X, Y):
        """
        Every morphism X -> Y, cached, in the model's canonical order.
        """

        key = (X, Y)
        if key not in self._homs:
            self._homs[key] = list(self.enumerate_homs(X, Y))
        return self._homs[key]

    def points(self, X):
        """
        :param X: Object
        :return: Every morphism I -> X
        """

        return self.homs(self.unit, X)

    def scalars(self):
        """
        :return: Every morphism I -> I
        """

        return self.points(self.unit)

    def dagger_isos(self, S, X):
        """
        Unitary morphisms S -> X, found by scanning the hom-set.

        :param S: Object
        :param X: Object
        :return: List of i with i†∘i = id and i∘i† = id
        """

        key = (S, X)
        if key not in self._isos:
            self._isos[key] = [i for i in self.homs(S, X)
                               if self.compose(self.dagger(i), i) == self.identity(S)
                               and self.compose(i, self.dagger(i)) == self.identity(X)]
        return self._isos[key]

    # Sums and order

    def sum(self, rs, dom=None, cod=None):
        """
        Finite sum of a family of parallel morphisms.

        :param rs: Iterable of morphisms X -> Y
        :param dom: X, needed only when rs is empty
        :param cod: Y, needed only when rs is empty
        :return: Morphism X -> Y
        """

        rs = list(rs)
        if not rs:
            return self.zero(dom, cod)
        acc = rs[0]
        for r in rs[1:]:
            acc = self.add(acc, r)
        return acc

    def infinite_sum(self, r):
        """
        Sum of the countably infinite constant family r, entry by entry.

        :raises InfiniteUnsupported: if the rig has no infinitary rule
        """

        labels = [[sum_family(self.rig, FamilyDescriptor({e: INFINITE})) for e in row] for row in self.entries(r)]
        return self.from_entries(self.dom(r), self.cod(r), labels)

    def is_zero(self, r):
        """
        :return: True if r is the zero morphism of its hom-set
        """

        return r == self.zero(self.dom(r), self.cod(r))

    def leq(self, r, s):
        """
        The order induced by addition: r <= s iff r + s = s.

        :return: bool
        """

        return self.add(r, s) == s

    @property
    def scalar_one(self):
        """
        :return: id_I
        """

        return self.identity(self.unit)

    def scalar_label(self, s):
        """
        :param s: Scalar I -> I
        :return: Its carrier label
        """

        return self.entries(s)[0][0]

    # Point lattice

    def top(self, X):
        """
        Sum of every point of X; the maximum point whenever sums are joins.
        """

        return self.sum(self.points(X), self.unit, X)

    def neg(self, a):
        """
        Maximum point b with a†∘b = 0, or None if there is no maximum.
        """

        X = self.cod(a)
        adj = self.dagger(a)
        candidates = [b for b in self.points(X) if self.is_zero(self.compose(adj, b))]
        for m in candidates:
            if all(self.leq(b, m) for b in candidates):
                return m
        return None

    def glb(self, a, b):
        """
        Greatest lower bound of two points by scanning, or None.
        """

        lower = [c for c in self.points(self.cod(a)) if self.leq(c, a) and self.leq(c, b)]
        for m in lower:
            if all(self.leq(c, m) for c in lower):
                return m
        return None

    def atoms(self, X):
        """
        Minimal nonzero points of X, in canonical point order.
        """

        if X not in self._atoms:
            nonzero = [p for p in self.points(X) if not self.is_zero(p)]
            self._atoms[X] = [a for a in nonzero
                              if not any(b != a and self.leq(b, a) for b in nonzero)]
        return self._atoms[X]

    # Kernels and compact structure

    def complement(self, m, bound):
        """
        m⊥ = ker(m†), or None.
        """

        w = self.kernel(self.dagger(m), bound)
        return None if w is None else w.m

    def cokernel(self, r, bound):
        """
        :param r: Morphism
        :param bound: Largest kernel object size searched
        :return: coker(r) = ker(r†)†, or None
        """

        w = self.kernel(self.dagger(r), bound)
        return None if w is None else self.dagger(w.m)

    def meet_by_kernels(self, a, b, bound):
        """
        j∘j†∘b with j = ker(a†)⊥, or None when a kernel is missing.
        """

        k = self.kernel(self.dagger(a), bound)
        if k is None:
            return None
        j = self.complement(k.m, bound)
        if j is None:
            return None
        return self.compose(self.compose(j, self.dagger(j)), b)

    def tensor_points(self, a, b):
        """
        a ⊗ b precomposed with the inverse unitor I -> I⊗I.
        """

        return self.compose(self.tensor(a, b), self.dagger(self.left_unitor(self.unit)))

    def trace(self, r):
        """
        Categorical trace of an endomorphism, closed off with the dual unit and its dagger.

        :param r: Morphism X -> X
        :return: Scalar I -> I
        """

        X = self.dom(r)
        eta = self.dual_unit(X)
        beta = self.braiding(X, X)
        loop = self.compose(beta, self.compose(self.tensor(r, self.identity(X)), self.compose(beta, eta)))
        return self.compose(self.dagger(eta), loop)

    def breve(self, r):
        """
        Name of r as a point.

        :param r: Morphism X -> Y
        :return: (id_X ⊗ r)∘η_X : I -> X⊗Y
        """

        return self.compose(self.tensor(self.identity(self.dom(r)), r), self.dual_unit(self.dom(r)))

    def un_breve(self, p, X, Y):
        """
        Inverse of breve.

        :param p: Point I -> X⊗Y
        :param X: Domain of the morphism named by p
        :param Y: Its codomain
        :return: Morphism X -> Y
        """

        pipeline = self.compose(self.tensor(self.identity(X), p), self.dagger(self.right_unitor(X)))
        pipeline = self.compose(self.dagger(self.associator(X, X, Y)), pipeline)
        pipeline = self.compose(self.tensor(self.dagger(self.dual_unit(X)), self.identity(Y)), pipeline)
        return self.compose(self.left_unitor(Y), pipeline)


class RelModel(Model):
    """
    Finite sets and relations, over the Boolean rig.
    """

    name = "rel"

    def __init__(self, rig=None):
        super().__init__()
        self.rig = rig if rig is not None else formats.load_rig("bool")
        self._objects = {}
        self._kernels = {}

    def obj(self, n):
        """
        :return: FinSet labelled Xn, the same instance on every call
        """

        if n not in self._objects:
            self._objects[n] = rel.finset("X%d" % n, n)
        return self._objects[n]

    def size(self, X):
        """
        Number of elements of a FinSet.
        """

        return len(X)

    @property
    def unit(self):
        """
        The one-element set.
        """

        return rel.UNIT

    def tensor_obj(self, X, Y):
        """
        Cartesian product of finite sets.
        """

        return rel.product_set(X, Y)

    def object_label(self, X):
        """
        The FinSet's label.
        """

        return X.label

    def dom(self, r):
        """
        Domain of a relation.
        """

        return r.dom

    def cod(self, r):
        """
        Codomain of a relation.
        """

        return r.cod

    def identity(self, X):
        """
        Diagonal relation on X.
        """

        return rel.identity(X)

    def zero(self, X, Y):
        """
        Empty relation X -> Y.
        """

        return rel.zero_morphism(X, Y)

    def compose(self, s, r):
        """
        Relational composite s∘r.
        """

        return rel.compose(s, r)

    def dagger(self, r):
        """
        Converse relation.
        """

        return rel.dagger(r)

    def tensor(self, r, s):
        """
        Product relation on pairs.
        """

        return rel.tensor(r, s)

    def add(self, r, s):
        """
        Addition of relations is union.
        """

        return rel.join([r, s])

    def sum(self, rs, dom=None, cod=None):
        """
        Union of a family, empty when rs is empty.
        """

        return rel.join(rs, dom, cod)

    def direct_sum(self, rs):
        """
        Disjoint union of relations.
        """

        return rel.direct_sum(rs)

    def biproduct(self, objects):
        """
        Disjoint union of sets with its injections.
        """

        return rel.biproduct(objects)

    def diagonal(self, X, copies):
        """
        Relates each x to every copy of itself.
        """

        return rel.diagonal(X, copies)

    def associator(self, X, Y, Z):
        """
        Rebracketing bijection on nested pairs.
        """

        return rel.associator(X, Y, Z)

    def braiding(self, X, Y):
        """
        Swap of pair components.
        """

        return rel.braiding(X, Y)

    def left_unitor(self, X):
        """
        Bijection I×X -> X.
        """

        return rel.left_unitor(X)

    def right_unitor(self, X):
        """
        Bijection X×I -> X.
        """

        return rel.right_unitor(X)

    def dual_unit(self, X):
        """
        Relates the point of I to every pair (x, x).
        """

        return rel.dual_unit(X)

    def snake_composites(self, X):
        """
        Both snake composites for the self-dual X.
        """

        return rel.snake_composites(X)

    def kernel(self, r, bound):
        """
        Relations always have a kernel, computed directly; bound is ignored.
        """

        if r not in self._kernels:
            self._kernels[r] = rel.kernel(r)
        return self._kernels[r]

    def is_zero(self, r):
        """
        True for the empty relation.
        """

        return r.is_zero

    def leq(self, r, s):
        """
        Inclusion of relations, row by row.
        """

        return all(a | b == b for a, b in zip(r.rows, s.rows))

    def top(self, X):
        """
        The full subset of X.
        """

        return rel.top(X)

    def neg(self, a):
        """
        Set complement of a subset.
        """

        return rel.neg(a)

    def glb(self, a, b):
        """
        Intersection of two subsets.
        """

        return rel.Relation(rel.UNIT, a.cod, (a.mask & b.mask,))

    def entries(self, r):
        """
        Boolean labels, rows by codomain element.
        """

        return [["1" if row >> j & 1 else "0" for row in r.rows] for j in range(len(r.cod))]

    def from_entries(self, X, Y, labels):
        """
        Relation holding where the label is the rig's one.
        """

        rows = [sum(1 << j for j in range(len(Y)) if labels[j][i] == self.rig.one) for i in range(len(X))]
        return rel.Relation(X, Y, tuple(rows))

    def enumerate_homs(self, X, Y):
        """
        Every relation X -> Y, by row bitmasks.
        """

        return rel.homs(X, Y)

    def random_hom(self, X, Y, rng):
        """
        Uniform relation, one random bitmask per domain element.
        """

        return rel.Relation(X, Y, tuple(int(rng.integers(0, 1 << len(Y))) for _ in range(len(X))))

    def perturb(self, r, rng):
        """
        Flip one pair in or out of r.
        """

        if not len(r.dom) or not len(r.cod):
            return None
        i = int(rng.integers(0, len(r.dom)))
        j = int(rng.integers(0, len(r.cod)))
        rows = list(r.rows)
        rows[i] ^= 1 << j
        return rel.Relation(r.dom, r.cod, tuple(rows))

    def serialize(self, named):
        """
        Text in the relation file format.
        """

        return formats.write_relations(named)

    def parse(self, text, path="<input>"):
        """
        Relations of a relation file, in file order.
        """

        return list(formats.parse_relations(text, path).relations.items())

    def point_pattern(self, p):
        """
        Subset as a 0/1 string, lowest element first.
        """

        return rel.pattern(p.cod, p.mask)


class MatModel(Model):
    """
    Matrices over a finite rig; objects are MatObject sizes.
    """

    def __init__(self, rig):
        super().__init__()
        self.rig = rig
        self.cat = MatrixCategory(rig)
        self.name = rig.name

    def obj(self, n):
        """
        MatObject of size n.
        """

        return MatObject(n)

    def size(self, X):
        """
        Dimension of a MatObject.
        """

        return X.size

    @property
    def unit(self):
        """
        MatObject(1).
        """

        return self.cat.unit

    def tensor_obj(self, X, Y):
        """
        Object of the product dimension.
        """

        return self.cat.tensor_obj(X, Y)

    def object_label(self, X):
        """
        :return: "n" followed by the dimension
        """

        return "n%d" % X.size

    def dom(self, r):
        """
        Domain of a matrix.
        """

        return r.dom

    def cod(self, r):
        """
        Codomain of a matrix.
        """

        return r.cod

    def identity(self, X):
        """
        Identity matrix.
        """

        return self.cat.identity(X)

    def zero(self, X, Y):
        """
        All-zero matrix.
        """

        return self.cat.zero(X, Y)

    def compose(self, s, r):
        """
        Matrix product through the rig tables.
        """

        return self.cat.compose(s, r)

    def dagger(self, r):
        """
        Transpose.
        """

        return self.cat.dagger(r)

    def tensor(self, r, s):
        """
        Kronecker product.
        """

        return self.cat.tensor(r, s)

    def add(self, r, s):
        """
        Entrywise sum.
        """

        return self.cat.add(r, s)

    def direct_sum(self, rs):
        """
        Block diagonal matrix.
        """

        return self.cat.direct_sum(rs)

    def biproduct(self, objects):
        """
        Summed dimension with block injections.
        """

        return self.cat.biproduct(objects)

    def diagonal(self, X, copies):
        """
        Stacked identity blocks.
        """

        return self.cat.diagonal(X, copies)

    def associator(self, X, Y, Z):
        """
        Identity of the product dimension.
        """

        return self.cat.associator(X, Y, Z)

    def braiding(self, X, Y):
        """
        Permutation matrix swapping tensor factors.
        """

        return self.cat.braiding(X, Y)

    def left_unitor(self, X):
        """
        Identity, as 1·n = n.
        """

        return self.cat.left_unitor(X)

    def right_unitor(self, X):
        """
        Identity, as n·1 = n.
        """

        return self.cat.right_unitor(X)

    def dual_unit(self, X):
        """
        Vectorised identity.
        """

        return self.cat.dual_unit(X)

    def snake_composites(self, X):
        """
        Both snake composites for X.
        """

        return self.cat.snake_composites(X)

    def kernel(self, r, bound):
        """
        Searched kernel; objects as large as dom(r) are always tried.

        :return: DaggerKernelWitness, or None
        """

        return self.cat.find_kernel(r, max(bound, r.dom.size)).witness

    def is_zero(self, r):
        """
        True when every entry is the rig's zero.
        """

        return r.is_zero

    def leq(self, r, s):
        """
        Entrywise r + s = s, through the addition table.
        """

        return bool((self.rig.add_table[r.entries, s.entries] == s.entries).all())

    def top(self, X):
        """
        Sum of all points of X, computed per entry without enumerating them.
        """

        # every carrier value occurs k^(n-1) times in each entry position across all points
        n, k = X.size, self.rig.size
        if n == 0:
            return self.zero(self.unit, X)
        acc = self.rig.zero
        for c in self.rig.carrier:
            acc = self.rig.add(acc, multiple(self.rig, c, k ** (n - 1)))
        return RigMatrix(self.rig, self.unit, X, np.full((n, 1), self.rig.index(acc), dtype=np.int64))

    def atoms(self, X):
        """
        Minimal nonzero points of X, found on the stacked hom array in one pass per candidate.
        """

        if X not in self._atoms:
            stack = self.cat.hom_stack(self.unit, X)[:, :, 0]
            order = self.rig.add_table
            nonzero = (stack != self.rig.zero_index).any(axis=1)
            found = []
            for idx in np.flatnonzero(nonzero):
                a = stack[idx]
                below = (order[stack, a] == a).all(axis=1) & nonzero & (stack != a).any(axis=1)
                if not below.any():
                    found.append(a)
            # same order as relation atoms: lowest position first
            found.sort(key=lambda a: tuple(a[::-1]))
            self._atoms[X] = [RigMatrix(self.rig, self.unit, X, a.reshape(-1, 1)) for a in found]
        return self._atoms[X]

    def entries(self, r):
        """
        Carrier labels, rows by codomain index.
        """

        return r.labels()

    def from_entries(self, X, Y, labels):
        """
        Matrix of the given labels.
        """

        rows = [[self.rig.index(label) for label in row] for row in labels]
        return RigMatrix(self.rig, X, Y, np.array(rows, dtype=np.int64).reshape(Y.size, X.size))

    def enumerate_homs(self, X, Y):
        """
        Every matrix X -> Y in stack order.
        """

        return self.cat.homs(X, Y)

    def random_hom(self, X, Y, rng):
        """
        Matrix of uniformly drawn carrier indices.
        """

        return RigMatrix(self.rig, X, Y, rng.integers(0, self.rig.size, size=(Y.size, X.size)))

    def perturb(self, r, rng):
        """
        Move one entry to a different carrier element.
        """

        k = self.rig.size
        if k < 2 or not r.entries.size:
            return None
        entries = r.entries.copy()
        i = int(rng.integers(0, entries.shape[0]))
        j = int(rng.integers(0, entries.shape[1]))
        entries[i, j] = (entries[i, j] + 1 + int(rng.integers(0, k - 1))) % k
        return RigMatrix(self.rig, r.dom, r.cod, entries)

    def dagger_isos(self, S, X):
        """
        Unitaries between equal sizes, taken from the matrix category's cache.
        """

        key = (S, X)
        if key not in self._isos:
            self._isos[key] = [RigMatrix(self.rig, S, X, i) for i in self.cat.dagger_isos(X.size)] if S.size == X.size else []
        return self._isos[key]

    def serialize(self, named):
        """
        Text in the matrix file format.
        """

        return formats.write_matrices(named)

    def parse(self, text, path="<input>"):
        """
        Matrices of a matrix file over this model's rig.
        """

        return list(formats.parse_matrices(text, {self.rig.name: self.rig}, path).items())

    def point_pattern(self, p):
        """
        Labels joined without separators when every label is one character.
        """

        labels = [row[0] for row in p.labels()]
        sep = "" if all(len(label) == 1 for label in labels) else " "
        return sep.join(labels)


def load_model(selector):
    """
    :param selector: "rel", or the name of a bundled rig (or a FiniteRig)
    :return: Model
    """

    if selector == "rel":
        return RelModel()
    rig = selector if not isinstance(selector, str) else formats.load_rig(selector)
    return MatModel(rig)
