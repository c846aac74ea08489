"""
Matrix categories over finite rigs.

Objects are natural numbers n (the n-fold biproduct of the unit), morphisms m -> n are
n x m matrices of carrier indices. Composition runs through the rig tables with numpy
fancy indexing, and most searches compose whole stacks of matrices at once.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

import config
from relcat.errors import ArityMismatch, DomainMismatch, RigMismatch, SearchExhausted
from relcat.relations import DaggerKernelWitness


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatObject:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("Object size must be non-negative")


@dataclass(frozen=True, eq=False)
class RigMatrix:
    """
    A morphism dom -> cod; entries has shape (cod.size, dom.size).
    """

    rig: object
    dom: MatObject
    cod: MatObject
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64)
        # Only an empty matrix may arrive unshaped
        if entries.size == 0 and self.cod.size * self.dom.size == 0:
            entries = entries.reshape(self.cod.size, self.dom.size)
        if entries.shape != (self.cod.size, self.dom.size):
            raise ValueError("Matrix entries have shape %s, expected (%d, %d)"
                             % (entries.shape, self.cod.size, self.dom.size))
        if entries.size and (entries.min() < 0 or entries.max() >= self.rig.size):
            raise ValueError("Matrix entry outside the carrier of rig %s" % self.rig.name)
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_labels(cls, rig, rows, dom_size=None):
        """
        :param rig: FiniteRig
        :param rows: Rows of carrier labels, one row per codomain element
        :param dom_size: Domain size, needed only when rows is empty
        :return: RigMatrix
        :raises KeyError: if a label is not in the carrier
        """

        rows = [list(row) for row in rows]
        if dom_size is None:
            dom_size = len(rows[0]) if rows else 0
        entries = np.array([[rig.index(label) for label in row] for row in rows], dtype=np.int64)
        return cls(rig, MatObject(dom_size), MatObject(len(rows)), entries.reshape(len(rows), dom_size))

    def __eq__(self, other):
        if not isinstance(other, RigMatrix):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and (self.rig is other.rig or self.rig == other.rig)
                and np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.dom.size, self.cod.size, self.entries.tobytes()))

    def labels(self):
        """
        :return: Entries as carrier labels, row by row
        """

        return [[self.rig.label(int(e)) for e in row] for row in self.entries]

    @property
    def key(self):
        """
        :return: Hashable (cod, dom, bytes) triple used by caches
        """

        return (self.cod.size, self.dom.size, self.entries.tobytes())

    @property
    def is_zero(self):
        """
        :return: True if every entry is the rig's zero
        """

        return bool((self.entries == self.rig.zero_index).all())

    def __repr__(self):
        return "RigMatrix(%s, %d -> %d, %s)" % (self.rig.name, self.dom.size, self.cod.size, self.labels())


@dataclass(frozen=True)
class KernelSearch:
    """
    Outcome of a bounded kernel search. witness is None when no candidate passed.
    """

    witness: Optional[DaggerKernelWitness]
    certificate: str
    candidates: int


@dataclass(frozen=True)
class DualVerdict:
    holds: bool
    failing: Optional[tuple] = None


def _all_matrices(k, rows, cols):
    """
    Stack of every rows x cols matrix over a k-element carrier, lexicographic in row-major entries.
    """

    if rows * cols == 0:
        return np.zeros((1, rows, cols), dtype=np.int64)
    grid = np.array(list(itertools.product(range(k), repeat=rows * cols)), dtype=np.int64)
    return grid.reshape(-1, rows, cols)


class MatrixCategory:
    """
    Dagger symmetric monoidal category with biproducts of matrices over a FiniteRig.
    Tensor is the Kronecker product, biproduct the block diagonal, dagger the transpose.
    """

    def __init__(self, rig):
        self.rig = rig
        self.name = rig.name
        self._add = rig.add_table
        self._mul = rig.mul_table
        self._zero = rig.zero_index
        self._one = rig.one_index
        self._stacks = {}
        self._monos = {}
        self._isos = {}
        self._kernels = {}

    unit = MatObject(1)
    zero_object = MatObject(0)

    def obj(self, n):
        """
        :param n: Dimension
        :return: MatObject
        """

        return MatObject(n)

    def _check_rig(self, *ms):
        for m in ms:
            if m.rig is not self.rig and m.rig != self.rig:
                raise RigMismatch("Matrix over %s used in the category over %s" % (m.rig.name, self.rig.name))

    def identity(self, X):
        """
        :param X: MatObject
        :return: Identity matrix on X
        """

        entries = np.full((X.size, X.size), self._zero, dtype=np.int64)
        np.fill_diagonal(entries, self._one)
        return RigMatrix(self.rig, X, X, entries)

    def zero(self, X, Y):
        """
        :param X: Domain
        :param Y: Codomain
        :return: The all-zero matrix X -> Y
        """

        return RigMatrix(self.rig, X, Y, np.full((Y.size, X.size), self._zero, dtype=np.int64))

    def compose_arrays(self, S, R):
        """
        Rig matrix product of index arrays, broadcasting over leading stack axes.

        :param S: (..., c, b) array
        :param R: (..., b, a) array
        :return: (..., c, a) array
        """

        S = np.asarray(S)
        R = np.asarray(R)
        inner = S.shape[-1]
        if inner == 0:
            shape = np.broadcast_shapes(S.shape[:-2], R.shape[:-2]) + (S.shape[-2], R.shape[-1])
            return np.full(shape, self._zero, dtype=np.int64)
        prods = self._mul[S[..., :, :, None], R[..., None, :, :]]
        acc = prods[..., :, 0, :]
        for k in range(1, inner):
            acc = self._add[acc, prods[..., :, k, :]]
        return acc

    def compose(self, s, r):
        """
        s∘r with entries Σ_k s[i,k]·r[k,j].

        :raises DomainMismatch: if cod(r) != dom(s)
        :raises RigMismatch: if either matrix is over another rig
        """

        self._check_rig(s, r)
        if r.cod != s.dom:
            raise DomainMismatch("Cannot compose %d -> %d after %d -> %d"
                                 % (s.dom.size, s.cod.size, r.dom.size, r.cod.size))
        return RigMatrix(self.rig, r.dom, s.cod, self.compose_arrays(s.entries, r.entries))

    def dagger(self, r):
        """
        :param r: RigMatrix X -> Y
        :return: The transpose, Y -> X
        """

        self._check_rig(r)
        return RigMatrix(self.rig, r.cod, r.dom, r.entries.T)

    def tensor_obj(self, X, Y):
        """
        :return: MatObject of size X.size * Y.size
        """

        return MatObject(X.size * Y.size)

    def tensor(self, r, s):
        """
        Kronecker product over the rig: entry ((i,k),(j,l)) = r[i,j]·s[k,l].
        """

        self._check_rig(r, s)
        A, B = r.entries, s.entries
        block = self._mul[A[:, None, :, None], B[None, :, None, :]]
        entries = block.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])
        return RigMatrix(self.rig, self.tensor_obj(r.dom, s.dom), self.tensor_obj(r.cod, s.cod), entries)

    def add(self, r, s):
        """
        Entrywise sum through the addition table.

        :param r: RigMatrix X -> Y
        :param s: RigMatrix X -> Y
        :return: RigMatrix X -> Y
        :raises DomainMismatch: if r and s are not parallel
        """

        self._check_rig(r, s)
        if r.dom != s.dom or r.cod != s.cod:
            raise DomainMismatch("Cannot add non-parallel matrices")
        return RigMatrix(self.rig, r.dom, r.cod, self._add[r.entries, s.entries])

    def direct_sum(self, rs):
        """
        Block diagonal matrix of a family, blocks in the given order.

        :param rs: Iterable of RigMatrix
        :return: RigMatrix
        """

        rs = list(rs)
        self._check_rig(*rs)
        rows = sum(r.cod.size for r in rs)
        cols = sum(r.dom.size for r in rs)
        entries = np.full((rows, cols), self._zero, dtype=np.int64)
        i = j = 0
        for r in rs:
            entries[i:i + r.cod.size, j:j + r.dom.size] = r.entries
            i += r.cod.size
            j += r.dom.size
        return RigMatrix(self.rig, MatObject(cols), MatObject(rows), entries)

    def injections(self, objects):
        """
        :param objects: MatObjects X_1 .. X_n
        :return: List of injections X_i -> ⊕X
        """

        objects = list(objects)
        total = MatObject(sum(X.size for X in objects))
        out = []
        offset = 0
        for X in objects:
            entries = np.full((total.size, X.size), self._zero, dtype=np.int64)
            for i in range(X.size):
                entries[offset + i, i] = self._one
            out.append(RigMatrix(self.rig, X, total, entries))
            offset += X.size
        return out

    def projections(self, objects):
        """
        :return: Daggers of the injections, ⊕X -> X_i
        """

        return [self.dagger(i) for i in self.injections(objects)]

    def biproduct(self, objects):
        """
        :param objects: MatObjects X_1 .. X_n
        :return: (sum object, injections, projections)
        """

        objects = list(objects)
        return MatObject(sum(X.size for X in objects)), self.injections(objects), self.projections(objects)

    def diagonal(self, X, copies=2):
        """
        :param X: MatObject
        :param copies: Number of stacked identity blocks
        :return: Δ : X -> ⊕ⁿX
        """

        entries = np.full((X.size * copies, X.size), self._zero, dtype=np.int64)
        for alpha in range(copies):
            for i in range(X.size):
                entries[alpha * X.size + i, i] = self._one
        return RigMatrix(self.rig, X, MatObject(X.size * copies), entries)

    def codiagonal(self, X, copies=2):
        """
        :return: Δ† : ⊕ⁿX -> X
        """

        return self.dagger(self.diagonal(X, copies))

    def associator(self, X, Y, Z):
        """
        Identity, since tensor of objects is multiplication of sizes.
        """

        return self.identity(MatObject(X.size * Y.size * Z.size))

    def braiding(self, X, Y):
        """
        Permutation matrix sending basis vector (x, y) to (y, x).

        :param X: MatObject
        :param Y: MatObject
        :return: RigMatrix X⊗Y -> Y⊗X
        """

        n, m = X.size, Y.size
        entries = np.full((n * m, n * m), self._zero, dtype=np.int64)
        for x in range(n):
            for y in range(m):
                entries[y * n + x, x * m + y] = self._one
        return RigMatrix(self.rig, MatObject(n * m), MatObject(n * m), entries)

    def left_unitor(self, X):
        """
        :return: id_X, as 1·n = n
        """

        return self.identity(X)

    def right_unitor(self, X):
        """
        :return: id_X, as n·1 = n
        """

        return self.identity(X)

    def structural(self, kind, objects, copies=2):
        """
        Canonical structural matrix; see relations.structural for the kinds.

        :raises ArityMismatch: if the number of objects does not fit the kind
        """

        arity = {"associator": 3, "braiding": 2, "left-unitor": 1, "right-unitor": 1,
                 "diagonal": 1, "codiagonal": 1, "zero-morphism": 2}
        if kind not in arity:
            raise ValueError("Unknown structural morphism %r" % kind)
        objects = list(objects)
        if len(objects) != arity[kind]:
            raise ArityMismatch("%s takes %d objects, got %d" % (kind, arity[kind], len(objects)))
        if kind in ("diagonal", "codiagonal"):
            return getattr(self, kind)(objects[0], copies)
        if kind == "zero-morphism":
            return self.zero(*objects)
        return getattr(self, kind.replace("-", "_"))(*objects)

    def hom_stack(self, X, Y):
        """
        Every matrix X -> Y as a read-only (N, Y.size, X.size) stack, lexicographic order.
        """

        key = (X.size, Y.size)
        if key not in self._stacks:
            stack = _all_matrices(self.rig.size, Y.size, X.size)
            stack.flags.writeable = False
            self._stacks[key] = stack
        return self._stacks[key]

    def hom_count(self, X, Y):
        """
        :return: k ** (X.size * Y.size) for a k-element carrier
        """

        return self.rig.size ** (X.size * Y.size)

    def homs(self, X, Y):
        """
        :return: Generator of RigMatrix over the hom stack, in stack order
        """

        for entries in self.hom_stack(X, Y):
            yield RigMatrix(self.rig, X, Y, entries)

    def points(self, X):
        """
        :return: List of every column vector 1 -> X
        """

        return list(self.homs(self.unit, X))

    def sum_via_diagonal(self, rs, dom=None, cod=None):
        """
        Biproduct-induced sum Δ†∘(⊕rs)∘Δ of parallel matrices.

        :raises DomainMismatch: if the family is not parallel, or empty without a signature
        """

        rs = list(rs)
        if dom is None or cod is None:
            if not rs:
                raise DomainMismatch("An empty family needs an explicit signature")
            dom, cod = rs[0].dom, rs[0].cod
        for r in rs:
            if r.dom != dom or r.cod != cod:
                raise DomainMismatch("Family is not parallel")
        return self.compose(self.codiagonal(cod, len(rs)),
                            self.compose(self.direct_sum(rs), self.diagonal(dom, len(rs))))

    def _identity_array(self, n):
        eye = np.full((n, n), self._zero, dtype=np.int64)
        np.fill_diagonal(eye, self._one)
        return eye

    def dagger_monos(self, n, d):
        """
        Stack of every n x d matrix m with m†∘m = id_d.
        """

        key = (n, d)
        if key not in self._monos:
            stack = _all_matrices(self.rig.size, n, d)
            gram = self.compose_arrays(np.swapaxes(stack, 1, 2), stack)
            keep = (gram == self._identity_array(d)).all(axis=(1, 2))
            self._monos[key] = stack[keep]
        return self._monos[key]

    def dagger_isos(self, n):
        """
        Stack of every n x n matrix i with i†∘i = id and i∘i† = id.
        """

        if n not in self._isos:
            monos = self.dagger_monos(n, n)
            gram = self.compose_arrays(monos, np.swapaxes(monos, 1, 2))
            self._isos[n] = monos[(gram == self._identity_array(n)).all(axis=(1, 2))]
        return self._isos[n]

    def _factors_everything(self, r, m, search_bound):
        # m is dagger monic, so g factors through m iff m∘m†∘g = g, and then uniquely
        projector = self.compose_arrays(m, m.T)
        n = r.dom.size
        for e in range(1, search_bound + 1):
            stack = self.hom_stack(MatObject(e), MatObject(n))
            killed = (self.compose_arrays(r.entries[None], stack) == self._zero).all(axis=(1, 2))
            gs = stack[killed]
            if len(gs) and not (self.compose_arrays(projector[None], gs) == gs).all():
                return False
        return True

    def find_kernel(self, r, search_bound):
        """
        Searches for a dagger kernel of r among dagger-monic matrices into dom(r), ordered by
        domain size then lexicographically, checking the universal property against every g
        with r∘g = 0 whose domain has size at most search_bound.

        :param r: RigMatrix
        :param search_bound: Largest test domain; must be at least dom(r).size
        :return: KernelSearch
        :raises SearchExhausted: if the candidate space exceeds KERNEL_SEARCH_CEILING
        """

        self._check_rig(r)
        n = r.dom.size
        if n > search_bound:
            raise ValueError("Domain size %d exceeds the search bound %d" % (n, search_bound))
        cache_key = (r.key, search_bound)
        if cache_key in self._kernels:
            return self._kernels[cache_key]

        space = sum(self.rig.size ** (n * d) for d in range(n + 1))
        if space > config.KERNEL_SEARCH_CEILING:
            raise SearchExhausted("Kernel search over %d candidates exceeds the ceiling %d"
                                  % (space, config.KERNEL_SEARCH_CEILING))

        tried = 0
        result = None
        for d in range(n + 1):
            # Candidates of this domain size: dagger monos into dom(r)
            monos = self.dagger_monos(n, d)
            if not len(monos):
                continue

            # Keep those with r∘m = 0, then test universality one at a time;
            # the first survivor in canonical order is the witness
            killed = (self.compose_arrays(r.entries[None], monos) == self._zero).all(axis=(1, 2))
            for m in monos[killed]:
                tried += 1
                if self._factors_everything(r, m, search_bound):
                    witness = DaggerKernelWitness(RigMatrix(self.rig, MatObject(d), MatObject(n), m), r)
                    result = KernelSearch(witness, "kernel of domain size %d found after %d candidates "
                                                   "(domains <= %d, tests <= %d)" % (d, tried, n, search_bound), tried)
                    break
            if result is not None:
                break

        if result is None:
            result = KernelSearch(None, "none of %d dagger-monic candidates with domain <= %d is universal "
                                        "against tests of size <= %d" % (tried, n, search_bound), tried)
            logger.debug("No kernel for %r: %s", r, result.certificate)
        self._kernels[cache_key] = result
        return result

    def cokernel(self, r, search_bound):
        """
        :return: Dagger of the kernel of r†, or None when the search fails
        """

        found = self.find_kernel(self.dagger(r), search_bound)
        return None if found.witness is None else self.dagger(found.witness.m)

    def dual_unit(self, X):
        """
        η_X: 1 -> n·n, the vectorised identity.
        """

        n = X.size
        entries = np.full((n * n, 1), self._zero, dtype=np.int64)
        for i in range(n):
            entries[i * n + i, 0] = self._one
        return RigMatrix(self.rig, self.unit, MatObject(n * n), entries)

    def snake_composites(self, X):
        """
        :return: (η†⊗id)∘(id⊗η) and (id⊗η†)∘(η⊗id), both expected to be id_X
        """

        eta = self.dual_unit(X)
        idx = self.identity(X)
        first = self.compose(self.tensor(self.dagger(eta), idx), self.tensor(idx, eta))
        second = self.compose(self.tensor(idx, self.dagger(eta)), self.tensor(eta, idx))
        return first, second

    def check_dagger_dual(self, X):
        """
        Verifies both snake equations for η_X; unitors and associators are identities here.

        :return: DualVerdict with the failing composite, if any
        """

        identity = self.identity(X)
        for which, composite in zip(("first", "second"), self.snake_composites(X)):
            if composite != identity:
                return DualVerdict(False, (which, composite))
        return DualVerdict(True)

    def breve_mat(self, r):
        """
        (id ⊗ r)∘η: the column of size dom·cod naming r.
        """

        return self.compose(self.tensor(self.identity(r.dom), r), self.dual_unit(r.dom))

    def un_breve_mat(self, v, X, Y):
        """
        Inverse of breve_mat.

        :param v: Column 1 -> X⊗Y
        :return: RigMatrix X -> Y
        :raises DomainMismatch: if v has the wrong size
        """

        if v.dom != self.unit or v.cod.size != X.size * Y.size:
            raise DomainMismatch("Column of size %d does not name a matrix %d -> %d" % (v.cod.size, X.size, Y.size))
        return self.compose(self.tensor(self.dagger(self.dual_unit(X)), self.identity(Y)),
                            self.tensor(self.identity(X), v))


def mat_ops(cat):
    """
    :return: The operation suite of a matrix category, by name
    """

    return {
        "compose": cat.compose,
        "dagger": cat.dagger,
        "tensor": cat.tensor,
        "direct_sum": cat.direct_sum,
        "injections": cat.injections,
        "projections": cat.projections,
        "diagonal": cat.diagonal,
        "structural": cat.structural,
        "zero": cat.zero,
    }
