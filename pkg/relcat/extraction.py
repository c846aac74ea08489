"""
The functor E into finite relations: objects go to their sets of atoms (minimal nonzero
points), a morphism r: X -> Y goes to the pairs of atoms (x, y) with y†∘r∘x = 1.

Bounded checks that E is a dagger equivalence and strong symmetric monoidal register their
equations with the checker, so their counterexamples replay like any axiom failure.
"""

import itertools
import logging
import weakref
from dataclasses import dataclass, field

import config
from relcat import helper
from relcat.checker import VACUOUS, Verdict, equation, scan
from relcat.errors import MuNotBijective, NotAtomic


logger = logging.getLogger(__name__)

# Model -> {object: AtomSet}, dropped with the model
_atom_sets = weakref.WeakKeyDictionary()


@dataclass(frozen=True)
class AtomSet:
    """
    Atoms of C(I, X) for one object, in canonical order.
    """

    object: object
    atoms: tuple

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "_positions", {a: i for i, a in enumerate(self.atoms)})

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def index(self, point):
        """
        :return: Position of point among the atoms, or None
        """

        return self._positions.get(point)


@dataclass(frozen=True)
class ExtractedRelation:
    dom_atoms: AtomSet
    cod_atoms: AtomSet
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for i, j in self.pairs:
            if not (0 <= i < len(self.dom_atoms) and 0 <= j < len(self.cod_atoms)):
                raise ValueError("Atom pair (%d, %d) out of range" % (i, j))

    def then(self, other):
        """
        Relational composite other∘self.
        """

        image = {}
        for i, j in self.pairs:
            image.setdefault(i, set()).add(j)
        pairs = {(i, l) for j2, l in other.pairs for i, js in image.items() if j2 in js}
        return ExtractedRelation(self.dom_atoms, other.cod_atoms, pairs)

    def converse(self):
        """
        :return: The converse relation, atoms swapped
        """

        return ExtractedRelation(self.cod_atoms, self.dom_atoms, {(j, i) for i, j in self.pairs})

    def image(self, i):
        """
        :param i: Domain atom position
        :return: Sorted codomain atom positions related to it
        """

        return sorted(j for i2, j in self.pairs if i2 == i)

    def show(self):
        """
        :return: Compact text "AxB {i,j ...}", pairs sorted
        """

        return "%dx%d {%s}" % (len(self.dom_atoms), len(self.cod_atoms),
                               " ".join("%d,%d" % pair for pair in sorted(self.pairs)))


def identity_relation(atoms):
    """
    :param atoms: AtomSet
    :return: The diagonal relation on its positions
    """

    return ExtractedRelation(atoms, atoms, {(i, i) for i in range(len(atoms))})


@dataclass(frozen=True)
class Mu:
    """
    Bijection (i, j) -> k between E(X) × E(Y) and E(X⊗Y).
    """

    left: AtomSet
    right: AtomSet
    product: AtomSet
    table: dict


@dataclass
class CoherenceReport:
    sizes: tuple
    squares: dict = field(default_factory=dict)

    @property
    def holds(self):
        """
        :return: True if every square commutes
        """

        return all(v.holds for v in self.squares.values())


@dataclass
class EquivalenceReport:
    bound: int
    verdicts: dict = field(default_factory=dict)

    @property
    def holds(self):
        """
        :return: True if every equivalence check holds
        """

        return all(v.holds for v in self.verdicts.values())


def extract_object(model, X):
    """
    :return: AtomSet of X
    :raises NotAtomic: if some nonzero point of X dominates no atom
    """

    known = _atom_sets.setdefault(model, {})
    if X in known:
        return known[X]
    atoms = model.atoms(X)
    for p in model.points(X):
        if model.is_zero(p) or any(model.leq(x, p) for x in atoms):
            continue
        raise NotAtomic("point %s of %s dominates no atom" % (model.point_pattern(p), model.object_label(X)), p)
    found = AtomSet(X, atoms)
    known[X] = found
    return found


def extract_morphism(model, r):
    """
    :return: ExtractedRelation {(x, y) | y†∘r∘x = 1}
    """

    dom_atoms = extract_object(model, model.dom(r))
    cod_atoms = extract_object(model, model.cod(r))
    one = model.scalar_one
    pairs = set()
    for i, x in enumerate(dom_atoms):
        rx = model.compose(r, x)
        for j, y in enumerate(cod_atoms):
            if model.compose(model.dagger(y), rx) == one:
                pairs.add((i, j))
    return ExtractedRelation(dom_atoms, cod_atoms, pairs)


def full_preimage(model, R):
    """
    The join of y∘x† over the pairs of R; the empty relation goes to the zero morphism.
    """

    X, Y = R.dom_atoms.object, R.cod_atoms.object
    parts = [model.compose(R.cod_atoms.atoms[j], model.dagger(R.dom_atoms.atoms[i])) for i, j in sorted(R.pairs)]
    return model.sum(parts, X, Y)


def mu(model, X, Y):
    """
    (x, y) -> x ⊗ y on atoms, checked against the independently scanned atoms of X⊗Y.

    :return: Mu
    :raises MuNotBijective: naming the non-atom or the missed atom
    """

    left, right = extract_object(model, X), extract_object(model, Y)
    product = extract_object(model, model.tensor_obj(X, Y))
    table = {}
    for (i, x), (j, y) in itertools.product(enumerate(left), enumerate(right)):
        k = product.index(model.tensor_points(x, y))
        if k is None:
            raise MuNotBijective("%s ⊗ %s is not an atom of %s"
                                 % (model.point_pattern(x), model.point_pattern(y),
                                    model.object_label(product.object)))
        table[i, j] = k
    hit = set(table.values())
    if len(hit) != len(table):
        raise MuNotBijective("two atom pairs of %s × %s meet at the same atom"
                             % (model.object_label(X), model.object_label(Y)))
    for k, z in enumerate(product):
        if k not in hit:
            raise MuNotBijective("atom %s of %s is not a tensor of atoms"
                                 % (model.point_pattern(z), model.object_label(product.object)))
    return Mu(left, right, product, table)


def _guarded(fn):
    """
    Turns extraction failures into the two sides of a failing equation.
    """

    def evaluator(model, ms, bound):
        try:
            return fn(model, ms, bound)
        except NotAtomic as e:
            return "not atomic: %s" % e, "atomic"
        except MuNotBijective as e:
            return "not bijective: %s" % e, "bijective"
    evaluator.__doc__ = fn.__doc__
    return evaluator


def _encode(model, R):
    """
    Extracted relation as a model morphism obj(k1) -> obj(k2) with entries one/zero.
    """

    k1, k2 = len(R.dom_atoms), len(R.cod_atoms)
    labels = [[model.rig.one if (i, j) in R.pairs else model.rig.zero for i in range(k1)] for j in range(k2)]
    return model.from_entries(model.obj(k1), model.obj(k2), labels)


def _decode(model, code, X, Y):
    """
    Inverse of _encode, against the atom sets of X and Y.
    """

    entries = model.entries(code)
    pairs = {(i, j) for j, row in enumerate(entries) for i, e in enumerate(row) if e == model.rig.one}
    return ExtractedRelation(extract_object(model, X), extract_object(model, Y), pairs)


@equation("functor-identity")
@_guarded
def _functor_identity(model, ms, bound):
    """
    E(id_X) is the identity relation on E(X).
    """

    idx, = ms
    return extract_morphism(model, idx).show(), identity_relation(extract_object(model, model.dom(idx))).show()


@equation("functor-compose")
@_guarded
def _functor_compose(model, ms, bound):
    """
    E(s∘r) = E(s)∘E(r).
    """

    r, s = ms
    return (extract_morphism(model, model.compose(s, r)).show(),
            extract_morphism(model, r).then(extract_morphism(model, s)).show())


@equation("functor-dagger")
@_guarded
def _functor_dagger(model, ms, bound):
    """
    E(r†) is the converse of E(r).
    """

    r, = ms
    return extract_morphism(model, model.dagger(r)).show(), extract_morphism(model, r).converse().show()


@equation("faithful")
@_guarded
def _faithful(model, ms, bound):
    """
    E(r) = E(s) implies r = s.
    """

    r, s = ms
    if extract_morphism(model, r).pairs != extract_morphism(model, s).pairs:
        return VACUOUS
    return r, s


@equation("full-roundtrip")
@_guarded
def _full_roundtrip(model, ms, bound):
    """
    The preimage of E(r) is r itself.
    """

    r, = ms
    return full_preimage(model, extract_morphism(model, r)), r


@equation("extract-roundtrip")
@_guarded
def _extract_roundtrip(model, ms, bound):
    """
    E sends the preimage of R back to R.
    """

    idx, idy, code = ms
    R = _decode(model, code, model.dom(idx), model.dom(idy))
    return extract_morphism(model, full_preimage(model, R)).show(), R.show()


@equation("eso-atoms")
@_guarded
def _eso_atoms(model, ms, bound):
    """
    The atoms of the M-fold biproduct of I are exactly its M injections.
    """

    ids, = ms
    M = model.size(model.dom(ids))
    S, inj, _ = model.biproduct([model.unit] * M)
    found = sorted(model.point_pattern(a) for a in extract_object(model, S))
    expected = sorted(model.point_pattern(j) for j in inj)
    return "%d atoms: %s" % (len(found), " ".join(found)), "%d atoms: %s" % (M, " ".join(expected))


@equation("mu-natural")
@_guarded
def _mu_natural(model, ms, bound):
    """
    μ∘(E(r) × E(s)) = E(r ⊗ s)∘μ.
    """

    r, s = ms
    source = mu(model, model.dom(r), model.dom(s))
    target = mu(model, model.cod(r), model.cod(s))
    er, es = extract_morphism(model, r), extract_morphism(model, s)
    mapped = {(source.table[i, k], target.table[j, l]) for i, j in er.pairs for k, l in es.pairs}
    pushed = ExtractedRelation(source.product, target.product, mapped)
    return pushed.show(), extract_morphism(model, model.tensor(r, s)).show()


def _paths(rows):
    """
    Text of (key, images) rows, one per atom tuple.
    """

    return "; ".join("%s:%s" % (key, ",".join(str(v) for v in values)) for key, values in rows)


@equation("coherence-associator")
@_guarded
def _coherence_associator(model, ms, bound):
    """
    E of the associator agrees with μ taken in both bracketings.
    """

    X, Y, Z = (model.dom(m) for m in ms)
    xy, xy_z = mu(model, X, Y), mu(model, model.tensor_obj(X, Y), Z)
    yz, x_yz = mu(model, Y, Z), mu(model, X, model.tensor_obj(Y, Z))
    ea = extract_morphism(model, model.associator(X, Y, Z))
    left, right = [], []
    for i, j, l in itertools.product(range(len(xy.left)), range(len(xy.right)), range(len(xy_z.right))):
        key = "%d,%d,%d" % (i, j, l)
        left.append((key, ea.image(xy_z.table[xy.table[i, j], l])))
        right.append((key, [x_yz.table[i, yz.table[j, l]]]))
    return _paths(left), _paths(right)


@equation("coherence-braiding")
@_guarded
def _coherence_braiding(model, ms, bound):
    """
    E of the braiding swaps the μ-indexed pairs.
    """

    X, Y = (model.dom(m) for m in ms)
    xy, yx = mu(model, X, Y), mu(model, Y, X)
    eb = extract_morphism(model, model.braiding(X, Y))
    left, right = [], []
    for i, j in itertools.product(range(len(xy.left)), range(len(xy.right))):
        key = "%d,%d" % (i, j)
        left.append((key, eb.image(xy.table[i, j])))
        right.append((key, [yx.table[j, i]]))
    return _paths(left), _paths(right)


@equation("coherence-unit")
@_guarded
def _coherence_unit(model, ms, bound):
    """
    E(I) is the single atom 1, and E of both unitors follows μ.
    """

    idx, = ms
    X = model.dom(idx)
    unit_atoms = extract_object(model, model.unit)
    if list(unit_atoms) != [model.scalar_one]:
        return "E(I) = {%s}" % " ".join(model.point_pattern(a) for a in unit_atoms), "E(I) = {1}"
    ix, xi = mu(model, model.unit, X), mu(model, X, model.unit)
    el = extract_morphism(model, model.left_unitor(X))
    er = extract_morphism(model, model.right_unitor(X))
    left, right = [], []
    for i in range(len(ix.right)):
        left.append(("%d" % i, el.image(ix.table[0, i]) + er.image(xi.table[i, 0])))
        right.append(("%d" % i, [i, i]))
    return _paths(left), _paths(right)


def verify_equivalence(model, bound, seed=None):
    """
    Bounded check that E is a dagger equivalence: functoriality (composition at sizes <= 2),
    dagger preservation, faithfulness, both round trips with full_preimage, essential
    surjectivity onto finite sets up to the bound, and naturality of μ on sampled pairs.

    :return: EquivalenceReport
    """

    sizes = [model.obj(n) for n in range(bound + 1)]
    small = [model.obj(n) for n in range(min(bound, 2) + 1)]

    def functorial():
        for X in sizes:
            yield "functor-identity", (("id", model.identity(X)),)
        for X, Y, Z in itertools.product(small, repeat=3):
            for r in model.homs(X, Y):
                for s in model.homs(Y, Z):
                    yield "functor-compose", (("r", r), ("s", s))

    def dagger():
        for X, Y in itertools.product(sizes, repeat=2):
            for r in model.homs(X, Y):
                yield "functor-dagger", (("r", r),)

    def faithful():
        for X, Y in itertools.product(sizes, repeat=2):
            try:
                pair = helper.first_collision(model.homs(X, Y), lambda r: extract_morphism(model, r).pairs)
            except (NotAtomic, MuNotBijective):
                yield "functor-identity", (("id", model.identity(X)),)
                continue
            if pair is not None:
                yield "faithful", (("r", pair[0]), ("s", pair[1]))

    def full():
        for X, Y in itertools.product(sizes, repeat=2):
            for r in model.homs(X, Y):
                yield "full-roundtrip", (("r", r),)
            try:
                A, B = extract_object(model, X), extract_object(model, Y)
            except NotAtomic:
                continue
            cells = list(itertools.product(range(len(A)), range(len(B))))
            for chosen in itertools.product((False, True), repeat=len(cells)):
                R = ExtractedRelation(A, B, {cell for cell, keep in zip(cells, chosen) if keep})
                yield "extract-roundtrip", (("idx", model.identity(X)), ("idy", model.identity(Y)),
                                            ("code", _encode(model, R)))

    def eso():
        for M in range(bound + 1):
            yield "eso-atoms", (("id", model.identity(model.obj(M))),)

    def natural():
        rng = helper.make_rng(seed)
        top = max(1, min(bound, 2))
        for _ in range(config.NATURALITY_SAMPLES):
            a, b, c, d = (model.obj(int(v)) for v in rng.integers(1, top + 1, size=4))
            yield "mu-natural", (("r", model.random_hom(a, b, rng)), ("s", model.random_hom(c, d, rng)))

    report = EquivalenceReport(bound)
    report.verdicts["equivalence-functorial"] = scan(model, bound, functorial())
    report.verdicts["equivalence-dagger"] = scan(model, bound, dagger())
    report.verdicts["equivalence-faithful"] = scan(model, bound, faithful())
    report.verdicts["equivalence-full"] = scan(model, bound, full())
    report.verdicts["equivalence-eso"] = scan(model, bound, eso(), "finite sets of size <= %d" % bound)
    report.verdicts["equivalence-mu-natural"] = scan(model, bound, natural(),
                                                     "%d sampled pairs" % config.NATURALITY_SAMPLES)
    return report


def verify_monoidal_coherence(model, sizes):
    """
    Evaluates the associator, braiding and unit squares of E element-wise on atoms.

    :param sizes: Triple of object sizes (X, Y, Z); the braiding uses X, Y and the unit X
    :return: CoherenceReport
    """

    X, Y, Z = (model.obj(n) for n in sizes)
    ids = [("idx", model.identity(X)), ("idy", model.identity(Y)), ("idz", model.identity(Z))]
    bound = max(sizes)
    report = CoherenceReport(tuple(sizes))
    report.squares["associator"] = scan(model, bound, [("coherence-associator", tuple(ids))])
    report.squares["braiding"] = scan(model, bound, [("coherence-braiding", tuple(ids[:2]))])
    report.squares["unit"] = scan(model, bound, [("coherence-unit", tuple(ids[:1]))])
    return report
