"""
Bounded axiom checking.

Every law is registered as an equation: a function of a model, a list of witness morphisms
and the bound that returns the two sides to compare. A check scans candidate witnesses in
canonical order and fails on the first candidate whose two sides render differently, so
every reported counterexample replays by evaluating its equation again. Implications return
VACUOUS when their premise does not hold.
"""

import functools
import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

import config
from relcat import helper, manager
from relcat.errors import InfiniteUnsupported, SearchExhausted


logger = logging.getLogger(__name__)

EQUATIONS = {}

VACUOUS = ("vacuous", "vacuous")


def equation(name):
    """
    Registers an equation evaluator under name.
    """

    def register(fn):
        EQUATIONS[name] = fn
        return fn
    return register


@dataclass(frozen=True)
class Counterexample:
    """
    Named witness morphisms and the rendered sides of the violated equation.
    """

    morphisms: tuple
    equation: str
    lhs: str
    rhs: str
    bound: int = 0


@dataclass(frozen=True)
class Verdict:
    holds: bool
    counterexample: Optional[Counterexample] = None
    detail: str = ""


@dataclass
class AxiomReport:
    model: str
    bound: int
    verdicts: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    header: list = field(default_factory=list)

    @property
    def holds(self):
        """
        :return: True if every condition holds
        """

        return all(v.holds for v in self.verdicts.values())

    def failures(self):
        """
        :return: List of (condition id, Verdict) for the failing conditions, in report order
        """

        return [(cid, v) for cid, v in self.verdicts.items() if not v.holds]


@dataclass
class LatticeReport:
    size: int
    points: int
    atoms: int
    mode: str
    laws: dict = field(default_factory=dict)

    @property
    def holds(self):
        """
        :return: True if every law group holds
        """

        return all(v.holds for v in self.laws.values())

    def failing(self):
        """
        :return: Names of the failing law groups
        """

        return [law for law, v in self.laws.items() if not v.holds]


@dataclass
class LemmaReport:
    bound: int
    verdicts: dict = field(default_factory=dict)

    @property
    def holds(self):
        """
        :return: True if every lemma holds
        """

        return all(v.holds for v in self.verdicts.values())


def render(model, value):
    """
    One-line text of an equation side: strings as is, morphisms as `m->n [rows]`.
    """

    if value is None:
        return "none"
    if isinstance(value, str):
        return value
    rows = model.entries(value)
    body = " | ".join(" ".join(row) or "-" for row in rows)
    return "%d->%d [%s]" % (model.size(model.dom(value)), model.size(model.cod(value)), body)


def evaluate(model, name, morphisms, bound):
    """
    :return: Rendered (lhs, rhs) of equation name on the given witnesses
    """

    lhs, rhs = EQUATIONS[name](model, list(morphisms), bound)
    return render(model, lhs), render(model, rhs)


def violation(model, name, named, bound):
    """
    :param named: Tuple of (name, morphism)
    :return: Counterexample if the equation fails on the witnesses, else None
    """

    lhs, rhs = EQUATIONS[name](model, [m for _, m in named], bound)
    if lhs is rhs or lhs == rhs:
        return None
    lhs, rhs = render(model, lhs), render(model, rhs)
    if lhs == rhs:
        return None
    return Counterexample(tuple(named), name, lhs, rhs, bound)


def replay(model, counterexample):
    """
    Re-evaluates a stored counterexample.

    :return: True iff the equation still fails with exactly the stored sides
    """

    if counterexample.equation not in EQUATIONS:
        import relcat.extraction  # registers the functor equations
    lhs, rhs = evaluate(model, counterexample.equation, [m for _, m in counterexample.morphisms], counterexample.bound)
    return lhs == counterexample.lhs and rhs == counterexample.rhs and lhs != rhs


def scan(model, bound, cases, detail=""):
    """
    :param cases: Iterable of (equation name, named witnesses), in canonical order
    :return: Verdict failing on the first violated case
    """

    for name, named in cases:
        cx = violation(model, name, named, bound)
        if cx is not None:
            logger.debug("%s fails: %s != %s", name, cx.lhs, cx.rhs)
            return Verdict(False, cx, detail)
    return Verdict(True, detail=detail)


def _ordered(holds):
    """
    Order symbol for a comparison outcome.
    """

    return "≤" if holds else "≰"


def _support(model, a, bound):
    """
    j = ker(a†)⊥, the dagger kernel whose image is the support of the point a.
    """

    k = model.kernel(model.dagger(a), bound)
    if k is None:
        return None
    return model.complement(k.m, bound)


def _splits(model, a):
    """
    Whether a = i∘inj_A∘⊤_A for some splitting A ⊕ B of cod(a) and dagger iso i.
    """

    X = model.cod(a)
    n = model.size(X)
    # Every size s of the summand A carrying the point
    for s in range(n + 1):
        A, B = model.obj(s), model.obj(n - s)
        S, inj, _ = model.biproduct([A, B])
        base = model.compose(inj[0], model.top(A))

        # a splits iff some unitary S -> X carries the top of A onto it
        for i in model.dagger_isos(S, X):
            if model.compose(i, base) == a:
                return True
    return False


def _distinguished(model, f, g, tests):
    """
    Whether some test morphism t gives f∘t != g∘t.
    """

    return any(model.compose(f, t) != model.compose(g, t) for t in tests)


# Biproducts

@equation("biproduct-dagger")
def _biproduct_dagger(model, ms, bound):
    """
    inj_i† = proj_i.
    """

    i, p = ms
    return model.dagger(i), p


@equation("biproduct-projection")
def _biproduct_projection(model, ms, bound):
    """
    inj_a†∘inj_b is the identity when a = b and zero otherwise.
    """

    ia, ib = ms
    expected = model.identity(model.dom(ia)) if ia == ib else model.zero(model.dom(ib), model.dom(ia))
    return model.compose(model.dagger(ia), ib), expected


@equation("biproduct-sum")
def _biproduct_sum(model, ms, bound):
    """
    Σ inj_i∘inj_i† = id on the sum object.
    """

    S = model.cod(ms[0]) if ms else model.biproduct([])[0]
    return model.sum([model.compose(i, model.dagger(i)) for i in ms], S, S), model.identity(S)


@equation("infinite-sum")
def _infinite_sum(model, ms, bound):
    """
    Σ_ω r + r = Σ_ω r, or a mismatch when the rig cannot sum infinitely.
    """

    r, = ms
    try:
        total = model.infinite_sum(r)
    except InfiniteUnsupported:
        return "undefined", "defined"
    return model.add(total, r), total


# Kernels

@equation("kernel-exists")
def _kernel_exists(model, ms, bound):
    """
    r has a dagger kernel at the bound.
    """

    r, = ms
    return ("none" if model.kernel(r, bound) is None else "kernel"), "kernel"


@equation("kernel-dagger-monic")
def _kernel_dagger_monic(model, ms, bound):
    """
    m†∘m = id for k = ker(r).
    """

    r, = ms
    w = model.kernel(r, bound)
    if w is None:
        return VACUOUS
    return model.compose(model.dagger(w.m), w.m), model.identity(model.dom(w.m))


@equation("kernel-annihilates")
def _kernel_annihilates(model, ms, bound):
    """
    r∘m = 0 for k = ker(r).
    """

    r, = ms
    w = model.kernel(r, bound)
    if w is None:
        return VACUOUS
    return model.compose(r, w.m), model.zero(model.dom(w.m), model.cod(r))


@equation("kernel-universal")
def _kernel_universal(model, ms, bound):
    """
    m∘m†∘g = g whenever r∘g = 0.
    """

    r, g = ms
    w = model.kernel(r, bound)
    if w is None or not model.is_zero(model.compose(r, g)):
        return VACUOUS
    return model.compose(w.m, model.compose(model.dagger(w.m), g)), g


@equation("joint-epic")
def _joint_epic(model, ms, bound):
    """
    f = g whenever f and g agree on a kernel and on its complement.
    """

    k, kp, f, g = ms
    if model.compose(f, k) != model.compose(g, k) or model.compose(f, kp) != model.compose(g, kp):
        return VACUOUS
    return f, g


# Unit and scalars

@equation("unit-nonzero")
def _unit_nonzero(model, ms, bound):
    """
    id_I != 0.
    """

    unit = model.unit
    return ("zero" if model.identity(unit) == model.zero(unit, unit) else "nonzero"), "nonzero"


@equation("scalar-invertible")
def _scalar_invertible(model, ms, bound):
    """
    Every nonzero scalar has a two-sided inverse.
    """

    s, = ms
    if model.is_zero(s):
        return VACUOUS
    one = model.scalar_one
    invertible = any(model.compose(s, t) == one and model.compose(t, s) == one for t in model.scalars())
    return ("invertible" if invertible else "not invertible"), "invertible"


@equation("scalars")
def _scalars(model, ms, bound):
    """
    The scalars are exactly {0, 1} with 1 + 1 = 1.
    """

    rig = model.rig
    found = {model.scalar_label(s) for s in model.scalars()}
    labels = [c for c in rig.carrier if c in found]
    doubled = model.scalar_label(model.add(model.scalar_one, model.scalar_one))
    return ("scalars %s; 1+1=%s" % (" ".join(labels), doubled),
            "scalars %s %s; 1+1=%s" % (rig.zero, rig.one, rig.one))


@equation("sum-idempotence")
def _sum_idempotence(model, ms, bound):
    """
    r + r = r.
    """

    r, = ms
    return model.add(r, r), r


@equation("infinite-constant-sum")
def _infinite_constant_sum(model, ms, bound):
    """
    The infinite sum of the constant family r is r.
    """

    r, = ms
    try:
        return model.infinite_sum(r), r
    except InfiniteUnsupported:
        return "undefined", render(model, r)


@equation("sum-diagonal")
def _sum_diagonal(model, ms, bound):
    """
    Finite sum equals Δ†∘(⊕r_i)∘Δ.
    """

    X, Y, n = model.dom(ms[0]), model.cod(ms[0]), len(ms)
    induced = model.compose(model.dagger(model.diagonal(Y, n)),
                            model.compose(model.direct_sum(ms), model.diagonal(X, n)))
    return model.sum(ms), induced


# Separators

@equation("separator")
def _separator(model, ms, bound):
    """
    f = g whenever they agree on every point of their domain.
    """

    f, g = ms
    if _distinguished(model, f, g, model.points(model.dom(f))):
        return VACUOUS
    return f, g


@equation("monoidal-separator")
def _monoidal_separator(model, ms, bound):
    """
    f = g whenever they agree on every a ⊗ b.
    """

    idx, idy, f, g = ms
    X, Y = model.dom(idx), model.dom(idy)
    tests = [model.tensor_points(a, b) for a in model.points(X) for b in model.points(Y)]
    if _distinguished(model, f, g, tests):
        return VACUOUS
    return f, g


# Compact structure

@equation("snake-first")
def _snake_first(model, ms, bound):
    """
    First snake composite is id_X.
    """

    idx, = ms
    return model.snake_composites(model.dom(idx))[0], idx


@equation("snake-second")
def _snake_second(model, ms, bound):
    """
    Second snake composite is id_X.
    """

    idx, = ms
    return model.snake_composites(model.dom(idx))[1], idx


@equation("breve-roundtrip")
def _breve_roundtrip(model, ms, bound):
    """
    Un-naming the name of r gives r back.
    """

    r, = ms
    return model.un_breve(model.breve(r), model.dom(r), model.cod(r)), r


@equation("breve-join")
def _breve_join(model, ms, bound):
    """
    Naming preserves sums.
    """

    r, s = ms
    return model.breve(model.add(r, s)), model.add(model.breve(r), model.breve(s))


@equation("breve-surjective")
def _breve_surjective(model, ms, bound):
    """
    Every point of X⊗Y is the name of some morphism.
    """

    idx, idy, p = ms
    return model.breve(model.un_breve(p, model.dom(idx), model.dom(idy))), p


# Point conditions

@equation("unit-simple")
def _unit_simple(model, ms, bound):
    """
    Every kernel into I is 0 or id_I.
    """

    r, = ms
    w = model.kernel(r, bound)
    if w is None:
        return VACUOUS
    if model.size(model.dom(w.m)) == 0:
        return w.m, model.zero(model.obj(0), model.unit)
    return w.m, model.identity(model.unit)


@equation("unique-top")
def _unique_top(model, ms, bound):
    """
    Exactly one point of X has the zero object as cokernel.
    """

    idx, = ms
    count = 0
    for a in model.points(model.dom(idx)):
        coker = model.cokernel(a, bound)
        if coker is not None and model.size(model.cod(coker)) == 0:
            count += 1
    return "%d zero-cokernel points" % count, "1 zero-cokernel points"


@equation("point-splitting")
def _point_splitting(model, ms, bound):
    """
    a = i∘inj∘⊤ for a splitting of cod(a) and a dagger iso i.
    """

    a, = ms
    return ("split" if _splits(model, a) else "no splitting"), "split"


# Decomposition lemmas

@equation("projector-sum")
def _projector_sum(model, ms, bound):
    """
    j∘j† + j⊥∘j⊥† = id.
    """

    j, = ms
    jp = model.complement(j, bound)
    if jp is None:
        return "no complement", "complement"
    X = model.cod(j)
    return (model.add(model.compose(j, model.dagger(j)), model.compose(jp, model.dagger(jp))),
            model.identity(X))


@equation("atom-resolution")
def _atom_resolution(model, ms, bound):
    """
    Σ x∘x† over the atoms of X is id_X.
    """

    idx, = ms
    X = model.dom(idx)
    return model.sum([model.compose(x, model.dagger(x)) for x in model.atoms(X)], X, X), idx


@equation("point-factorization-top")
def _point_factorization_top(model, ms, bound):
    """
    a = j∘⊤ with j the support of a.
    """

    a, = ms
    j = _support(model, a, bound)
    if j is None:
        return "no kernel", "kernel"
    return model.compose(j, model.top(model.dom(j))), a


@equation("point-factorization-neg")
def _point_factorization_neg(model, ms, bound):
    """
    ¬a = j⊥∘⊤ with j the support of a.
    """

    a, = ms
    j = _support(model, a, bound)
    jp = None if j is None else model.complement(j, bound)
    if jp is None:
        return "no kernel", "kernel"
    return model.compose(jp, model.top(model.dom(jp))), model.neg(a)


@equation("atom-existence")
def _atom_existence(model, ms, bound):
    """
    X has an atom whenever ⊤†∘⊤ = 1.
    """

    idx, = ms
    X = model.dom(idx)
    t = model.top(X)
    if model.compose(model.dagger(t), t) != model.scalar_one:
        return VACUOUS
    return ("atoms" if model.atoms(X) else "no atoms"), "atoms"


@equation("cokernel-top-zero")
def _cokernel_top_zero(model, ms, bound):
    """
    r = 0 iff r∘⊤ = 0.
    """

    r, = ms
    through_top = model.compose(r, model.top(model.dom(r)))
    return ("zero" if model.is_zero(r) else "nonzero"), ("zero" if model.is_zero(through_top) else "nonzero")


@equation("cokernel-top-coker")
def _cokernel_top_coker(model, ms, bound):
    """
    coker(r) = coker(r∘⊤).
    """

    r, = ms
    return model.cokernel(r, bound), model.cokernel(model.compose(r, model.top(model.dom(r))), bound)


@equation("meet-formula")
def _meet_formula(model, ms, bound):
    """
    Kernel formula for a ∧ b agrees with the scanned meet.
    """

    a, b = ms
    return model.meet_by_kernels(a, b, bound), model.glb(a, b)


# Point lattice laws

@equation("order-reflexive")
def _order_reflexive(model, ms, bound):
    """
    a + a = a.
    """

    a, = ms
    return model.add(a, a), a


@equation("order-antisymmetric")
def _order_antisymmetric(model, ms, bound):
    """
    a <= b and b <= a imply a = b.
    """

    a, b = ms
    if not (model.leq(a, b) and model.leq(b, a)):
        return VACUOUS
    return a, b


@equation("order-transitive")
def _order_transitive(model, ms, bound):
    """
    a <= b and b <= c imply a <= c.
    """

    a, b, c = ms
    if not (model.leq(a, b) and model.leq(b, c)):
        return VACUOUS
    return _ordered(model.leq(a, c)), "≤"


@equation("join-upper-bound")
def _join_upper_bound(model, ms, bound):
    """
    a and b lie below a + b.
    """

    a, b = ms
    s = model.add(a, b)
    return _ordered(model.leq(a, s) and model.leq(b, s)), "≤"


@equation("join-least")
def _join_least(model, ms, bound):
    """
    a + b lies below every common upper bound.
    """

    a, b, c = ms
    if not (model.leq(a, c) and model.leq(b, c)):
        return VACUOUS
    return _ordered(model.leq(model.add(a, b), c)), "≤"


@equation("meet-exists")
def _meet_exists(model, ms, bound):
    """
    Every pair of points has a meet.
    """

    a, b = ms
    return ("no meet" if model.glb(a, b) is None else "meet"), "meet"


@equation("distributivity")
def _distributivity(model, ms, bound):
    """
    a ∧ (b + c) = (a ∧ b) + (a ∧ c).
    """

    a, b, c = ms
    left = model.glb(a, model.add(b, c))
    ab, ac = model.glb(a, b), model.glb(a, c)
    if left is None or ab is None or ac is None:
        return VACUOUS
    return left, model.add(ab, ac)


@equation("complement-meet")
def _complement_meet(model, ms, bound):
    """
    a ∧ ¬a = 0.
    """

    a, = ms
    n = model.neg(a)
    if n is None:
        return "no negation", "negation"
    return model.glb(a, n), model.zero(model.unit, model.cod(a))


@equation("complement-join")
def _complement_join(model, ms, bound):
    """
    a + ¬a = ⊤.
    """

    a, = ms
    n = model.neg(a)
    if n is None:
        return "no negation", "negation"
    return model.add(a, n), model.top(model.cod(a))


@equation("negation-involutive")
def _negation_involutive(model, ms, bound):
    """
    ¬¬a = a.
    """

    a, = ms
    n = model.neg(a)
    return (None if n is None else model.neg(n)), a


@equation("negation-antitone")
def _negation_antitone(model, ms, bound):
    """
    a <= b implies ¬b <= ¬a.
    """

    a, b = ms
    if not model.leq(a, b):
        return VACUOUS
    na, nb = model.neg(a), model.neg(b)
    if na is None or nb is None:
        return VACUOUS
    return _ordered(model.leq(nb, na)), "≤"


@equation("atomic")
def _atomic(model, ms, bound):
    """
    Every nonzero point dominates an atom.
    """

    a, = ms
    if model.is_zero(a):
        return VACUOUS
    dominated = any(model.leq(x, a) for x in model.atoms(model.cod(a)))
    return ("dominates an atom" if dominated else "dominates no atom"), "dominates an atom"


# Conditions. Each takes (model, bound, seed) and returns a Verdict.

def _objects(model, bound, low=0):
    """
    :return: Objects of sizes low..bound
    """

    return [model.obj(n) for n in range(low, bound + 1)]


def _hom_pairs(model, bound):
    """
    :return: (X, Y) object pairs of sizes up to bound
    """

    return [(model.obj(m), model.obj(n)) for m, n in helper.size_pairs(bound)]


def _kernels_into(model, X, bound):
    """
    Yields ("kernel", k, kp) for every distinct dagger kernel k = ker(a†) into X with its
    complement, or ("missing", r) when r has no kernel at the bound.
    """

    seen = set()
    for a in model.points(X):
        w = model.kernel(model.dagger(a), bound)
        if w is None:
            yield "missing", model.dagger(a)
            continue
        if w.m in seen:
            continue
        seen.add(w.m)
        kp = model.complement(w.m, bound)
        if kp is None:
            yield "missing", model.dagger(w.m)
            continue
        yield "kernel", w.m, kp


def check_biproducts(model, bound, seed=None):
    """
    Injections, projections and the biproduct sum on every family of objects of total
    size <= bound, and the infinite sum of a constant family where the rig has one.

    :return: Verdict
    """

    def cases():
        for family in helper.object_families(bound):
            S, inj, proj = model.biproduct([model.obj(n) for n in family])
            for i, p in zip(inj, proj):
                yield "biproduct-dagger", (("i", i), ("p", p))
            for ia, ib in itertools.product(inj, repeat=2):
                yield "biproduct-projection", (("ia", ia), ("ib", ib))
            yield "biproduct-sum", tuple(("i%d" % k, i) for k, i in enumerate(inj))
        for X in _objects(model, min(bound, 2), low=1):
            for r in model.homs(X, X):
                yield "infinite-sum", (("r", r),)

    return scan(model, bound, cases(), "families of total size <= %d and one constant infinite family" % bound)


def check_kernels(model, bound, seed=None):
    """
    Existence, dagger-monicity, annihilation and universality of ker(r) for every r
    between objects of size <= bound.

    :return: Verdict
    """

    def cases():
        for X, Y in _hom_pairs(model, bound):
            tests = [g for E in _objects(model, bound, low=1) for g in model.homs(E, X)]
            for r in model.homs(X, Y):
                yield "kernel-exists", (("r", r),)
                yield "kernel-dagger-monic", (("r", r),)
                yield "kernel-annihilates", (("r", r),)
                for g in tests:
                    yield "kernel-universal", (("r", r), ("g", g))

    return scan(model, bound, cases())


def check_joint_epic(model, bound, seed=None):
    """
    Every kernel and its complement are jointly epic, tested against codomains of size
    up to JOINT_EPIC_CODOMAIN_CAP.

    :return: Verdict
    """

    cap = config.JOINT_EPIC_CODOMAIN_CAP

    def cases():
        for X in _objects(model, bound):
            for found in _kernels_into(model, X, bound):
                if found[0] == "missing":
                    yield "kernel-exists", (("r", found[1]),)
                    continue
                _, k, kp = found
                for Y in _objects(model, cap):
                    pair = helper.first_collision(model.homs(X, Y),
                                                  lambda f: (model.compose(f, k), model.compose(f, kp)))
                    if pair is not None:
                        yield "joint-epic", (("k", k), ("kp", kp), ("f", pair[0]), ("g", pair[1]))

    return scan(model, bound, cases(), "codomains of size <= %d" % cap)


def check_unit_nonzero(model, bound, seed=None):
    """
    :return: Verdict on id_I != 0
    """

    return scan(model, bound, [("unit-nonzero", ())])


def check_scalars_invertible(model, bound, seed=None):
    """
    :return: Verdict on the invertibility of every nonzero scalar
    """

    return scan(model, bound, (("scalar-invertible", (("s", s),)) for s in model.scalars()))


def _separator_cases(model, bound):
    """
    Separator cases: the first pair of morphisms X -> Y that no point tells apart.
    """

    for X, Y in _hom_pairs(model, bound):
        points = model.points(X)
        pair = helper.first_collision(model.homs(X, Y), lambda f: tuple(model.compose(f, a) for a in points))
        if pair is not None:
            yield "separator", (("f", pair[0]), ("g", pair[1]))


def check_separator(model, bound, seed=None):
    """
    The unit is a separator on objects of size <= bound.

    :return: Verdict
    """

    return scan(model, bound, _separator_cases(model, bound))


def check_dagger_duals(model, bound, seed=None):
    """
    Both snake equations on every object of size <= bound.

    :return: Verdict
    """

    def cases():
        for X in _objects(model, bound):
            yield "snake-first", (("id", model.identity(X)),)
            yield "snake-second", (("id", model.identity(X)),)

    return scan(model, bound, cases())


def check_unit_simple_separating(model, bound, seed=None):
    """
    The unit is nonzero, simple and separating.

    :return: Verdict
    """

    def cases():
        yield "unit-nonzero", ()
        for Y in _objects(model, bound):
            for r in model.homs(model.unit, Y):
                yield "kernel-exists", (("r", r),)
                yield "unit-simple", (("r", r),)
        yield from _separator_cases(model, bound)

    return scan(model, bound, cases())


def check_unique_top(model, bound, seed=None):
    """
    :return: Verdict on each object having exactly one point with zero cokernel
    """

    return scan(model, bound, (("unique-top", (("id", model.identity(X)),)) for X in _objects(model, bound)))


def check_point_splitting(model, bound, seed=None):
    """
    :return: Verdict on every point factoring through a biproduct injection and a dagger iso
    """

    return scan(model, bound, (("point-splitting", (("a", a),)) for X in _objects(model, bound) for a in model.points(X)))


def check_scalars(model, bound, seed=None):
    """
    :return: Verdict on the scalars being the Boolean rig
    """

    return scan(model, bound, [("scalars", ())])


def check_sum_idempotence(model, bound, seed=None):
    """
    Sum idempotence on homs of size <= 2, and the infinite constant sum when the
    rig has an infinitary rule.

    :return: Verdict
    """

    def cases():
        for X, Y in _hom_pairs(model, min(bound, 2)):
            for r in model.homs(X, Y):
                yield "sum-idempotence", (("r", r),)
                if model.rig.infinitary is not None:
                    yield "infinite-constant-sum", (("r", r),)

    return scan(model, bound, cases())


def check_breve_iso(model, bound, seed=None):
    """
    Naming r as a point is a bijection C(X, Y) -> C(I, X⊗Y) that preserves sums;
    sums are checked on ENRICHMENT_FAMILIES seeded pairs per signature.

    :param seed: Sampling seed
    :return: Verdict
    """

    rng = helper.make_rng(seed)

    def cases():
        for X, Y in _hom_pairs(model, min(bound, 3)):
            homs = model.homs(X, Y)
            for r in homs:
                yield "breve-roundtrip", (("r", r),)
            for r, s in helper.sample_pairs(homs, config.ENRICHMENT_FAMILIES, rng):
                yield "breve-join", (("r", r), ("s", s))
            idx, idy = model.identity(X), model.identity(Y)
            for p in model.points(model.tensor_obj(X, Y)):
                yield "breve-surjective", (("idx", idx), ("idy", idy), ("p", p))

    return scan(model, bound, cases())


def check_sum_diagonal(model, bound, seed=None):
    """
    Finite sums against the biproduct-induced sum Δ†∘(⊕r)∘Δ on seeded random families of
    at most five parallel morphisms between objects of size up to ENRICHMENT_MAX_SIZE,
    whatever the bound.

    :return: Verdict
    """

    rng = helper.make_rng(seed)
    top_size = config.ENRICHMENT_MAX_SIZE

    def cases():
        for _ in range(config.ENRICHMENT_FAMILIES):
            n = int(rng.integers(1, 6))
            m, k = (int(v) for v in rng.integers(0, top_size + 1, size=2))
            X, Y = model.obj(m), model.obj(k)
            yield "sum-diagonal", tuple(("r%d" % i, model.random_hom(X, Y, rng)) for i in range(n))

    return scan(model, bound, cases(), "%d families, sizes <= %d" % (config.ENRICHMENT_FAMILIES, top_size))


def check_monoidal_separator(model, bound, seed=None, samples=None):
    """
    For all f != g: X⊗Y -> Z with sizes 1..bound, looks for points a, b with
    f∘(a⊗b) != g∘(a⊗b). Signatures with more than SEPARATOR_PAIR_CEILING parallel pairs
    are sampled: half the pairs differ in a single entry, half are independent.

    :param seed: Sampling seed, config.DEFAULT_SEED by default
    :param samples: Pairs drawn per sampled signature, config.SEPARATOR_SAMPLES by default
    :return: Verdict whose detail carries the search statistics
    """

    samples = samples or config.SEPARATOR_SAMPLES
    rng = helper.make_rng(seed)
    exhaustive = sampled = examined = 0
    verdict = None
    for m, n, z in itertools.product(range(1, bound + 1), repeat=3):
        X, Y, Z = model.obj(m), model.obj(n), model.obj(z)
        XY = model.tensor_obj(X, Y)
        tests = [model.tensor_points(a, b) for a in model.points(X) for b in model.points(Y)]
        ids = (("idx", model.identity(X)), ("idy", model.identity(Y)))
        count = model.hom_count(XY, Z)
        candidates = []

        # Small signatures: the first colliding pair in canonical order is the only candidate
        if count * count <= config.SEPARATOR_PAIR_CEILING:
            exhaustive += 1
            examined += count * (count - 1) // 2
            pair = helper.first_collision(model.homs(XY, Z), lambda f: tuple(model.compose(f, t) for t in tests))
            if pair is not None:
                candidates.append(pair)
        else:
            sampled += 1
            # Large ones: alternate one-entry perturbations with independent pairs
            for k in range(samples):
                f = model.random_hom(XY, Z, rng)
                g = model.perturb(f, rng) if k % 2 == 0 else model.random_hom(XY, Z, rng)
                if g is None or g == f:
                    continue
                examined += 1
                if not _distinguished(model, f, g, tests):
                    candidates.append((f, g))
                    break

        # A candidate counts only if the registered equation fails on it
        for f, g in candidates:
            cx = violation(model, "monoidal-separator", ids + (("f", f), ("g", g)), bound)
            if cx is not None:
                verdict = Verdict(False, cx)
                break
        if verdict is not None:
            break

    detail = "%d exhaustive signatures, %d sampled, %d pairs examined" % (exhaustive, sampled, examined)
    if verdict is not None:
        return Verdict(False, verdict.counterexample, detail)
    return Verdict(True, detail=detail)


def separating_points(model, f, g, X, Y):
    """
    :return: The first points (a, b) in canonical order with f∘(a⊗b) != g∘(a⊗b), or None
    """

    for a in model.points(X):
        for b in model.points(Y):
            t = model.tensor_points(a, b)
            if model.compose(f, t) != model.compose(g, t):
                return a, b
    return None


# Point lattice

LATTICE_LAWS = (
    ("partial-order", (("order-reflexive", 1), ("order-antisymmetric", 2), ("order-transitive", 3))),
    ("lattice", (("join-upper-bound", 2), ("join-least", 3), ("meet-exists", 2))),
    ("distributivity", (("distributivity", 3),)),
    ("complementation", (("complement-meet", 1), ("complement-join", 1),
                         ("negation-involutive", 1), ("negation-antitone", 2))),
    ("atomicity", (("atomic", 1),)),
)


def verify_hom_lattice(model, X, mode="exhaustive", samples=None, seed=None):
    """
    Checks the order, lattice, distributive, ortholattice and atomicity laws of C(I, X).

    :param mode: "exhaustive", or "sampled" to draw `samples` seeded triples
    :return: LatticeReport with one verdict per law group
    """

    points = model.points(X)
    if mode == "sampled":
        triples = helper.sample_triples(points, samples or config.LATTICE_SAMPLES, helper.make_rng(seed))
        pairs = [(a, b) for a, b, _ in triples]
    elif mode == "exhaustive":
        triples = list(itertools.product(points, repeat=3))
        pairs = list(itertools.product(points, repeat=2))
    else:
        raise ValueError("Unknown lattice mode %r" % mode)
    witnesses = {1: [(a,) for a in points], 2: pairs, 3: triples}
    names = ("a", "b", "c")

    report = LatticeReport(model.size(X), len(points), len(model.atoms(X)), mode)
    for group, laws in LATTICE_LAWS:
        cases = ((law, tuple(zip(names, ws))) for law, arity in laws for ws in witnesses[arity])
        report.laws[group] = scan(model, model.size(X), cases)
    return report


def check_hom_lattice(model, bound, seed=None):
    """
    Exhaustive point lattice laws on every object of size <= bound.

    :return: Verdict naming the first failing law group, with point and atom counts
             in the detail when all hold
    """

    sizes = []
    for X in _objects(model, bound):
        report = verify_hom_lattice(model, X)
        sizes.append("%d: %d points, %d atoms" % (report.size, report.points, report.atoms))
        for group in report.failing():
            verdict = report.laws[group]
            return Verdict(False, verdict.counterexample, "%s fails on an object of size %d" % (group, report.size))
    return Verdict(True, detail="; ".join(sizes))


# Decomposition lemmas

def verify_decomposition_lemmas(model, bound):
    """
    Evaluates the projector sum j∘j† + j⊥∘j⊥† = id, the atom resolution of the identity,
    both factorizations of a point through its support, the existence of atoms when
    ⊤†∘⊤ = 1, the cokernel of r∘⊤, and the kernel formula for meets, on objects <= bound.

    :return: LemmaReport
    """

    def projector_cases():
        for X in _objects(model, bound):
            for found in _kernels_into(model, X, bound):
                if found[0] == "missing":
                    yield "kernel-exists", (("r", found[1]),)
                else:
                    yield "projector-sum", (("j", found[1]),)

    def identity_cases(name):
        return ((name, (("id", model.identity(X)),)) for X in _objects(model, bound))

    def factorization_cases():
        for X in _objects(model, bound):
            for a in model.points(X):
                yield "point-factorization-top", (("a", a),)
                yield "point-factorization-neg", (("a", a),)

    def cokernel_cases():
        for X, Y in _hom_pairs(model, min(bound, 3)):
            for r in model.homs(X, Y):
                yield "cokernel-top-zero", (("r", r),)
                yield "cokernel-top-coker", (("r", r),)

    def meet_cases():
        for X in _objects(model, bound):
            for a, b in itertools.product(model.points(X), repeat=2):
                yield "meet-formula", (("a", a), ("b", b))

    report = LemmaReport(bound)
    report.verdicts["projector-sum"] = scan(model, bound, projector_cases())
    report.verdicts["atom-resolution"] = scan(model, bound, identity_cases("atom-resolution"))
    report.verdicts["point-factorization"] = scan(model, bound, factorization_cases())
    report.verdicts["atom-existence"] = scan(model, bound, identity_cases("atom-existence"))
    report.verdicts["cokernel-top"] = scan(model, bound, cokernel_cases())
    report.verdicts["meet-formula"] = scan(model, bound, meet_cases())
    return report


# Suites

AXIOM_CONDITIONS = (
    ("1-biproducts", check_biproducts),
    ("2-kernels", check_kernels),
    ("3-joint-epic", check_joint_epic),
    ("4-unit-nonzero", check_unit_nonzero),
    ("5-scalars-invertible", check_scalars_invertible),
    ("6-separator", check_separator),
    ("dagger-duals", check_dagger_duals),
)

POINT_CONDITIONS = (
    ("1'-biproducts", check_biproducts),
    ("2'-unit-simple-separating", check_unit_simple_separating),
    ("3'-unique-top", check_unique_top),
    ("4'-point-splitting", check_point_splitting),
)

SUPPLEMENTARY = (
    ("monoidal-separator", check_monoidal_separator),
    ("hom-lattice", check_hom_lattice),
    ("scalars", check_scalars),
    ("sum-idempotence", check_sum_idempotence),
    ("sum-diagonal", check_sum_diagonal),
    ("breve-iso", check_breve_iso),
)


def _single(cid, fn, model, bound, seed):
    """
    :return: {cid: Verdict} of one condition
    """

    return {cid: fn(model, bound, seed)}


def condition_entries(conditions, model, bound, seed=None, samples=None):
    """
    Wraps conditions as suite entries for the worker pool.

    :param conditions: Sequence of (condition id, check function)
    :param samples: Sample count handed to the monoidal separator, when given
    :return: Suite entries (name, thunk) whose thunks return {condition id: Verdict}
    """

    entries = []
    for cid, fn in conditions:
        if fn is check_monoidal_separator and samples is not None:
            fn = functools.partial(fn, samples=samples)
        entries.append((cid, functools.partial(_single, cid, fn, model, bound, seed)))
    return entries


def lemma_entry(model, bound):
    """
    :return: Suite entry running the decomposition lemmas
    """

    return "lemmas", lambda: verify_decomposition_lemmas(model, bound).verdicts


def report_header(bound, seed=None, samples=None):
    """
    :return: Header lines naming the caps, sample counts and seed in force
    """

    return [
        "joint-epic codomain cap %d" % config.JOINT_EPIC_CODOMAIN_CAP,
        "monoidal separator exhaustive up to %d pairs per signature, else %d samples (seed %d)"
        % (config.SEPARATOR_PAIR_CEILING, samples or config.SEPARATOR_SAMPLES,
           config.DEFAULT_SEED if seed is None else seed),
        "kernel search: domains up to the size of dom(r), tests up to size %d, ceiling %d candidates"
        % (bound, config.KERNEL_SEARCH_CEILING),
        "essential surjectivity checked against finite sets of size <= %d" % bound,
    ]


def run_suite(model, bound, entries, seed=None, samples=None):
    """
    Runs suite entries through the worker pool and merges their verdicts in entry order.

    :param entries: Suite entries (name, thunk), see condition_entries
    :param samples: Separator sample count recorded in the header, when overridden
    :return: AxiomReport
    :raises SearchExhausted: with the partial report attached, if any entry exhausted a search
    """

    if bound < 1:
        raise ValueError("The bound must be at least 1, got %d" % bound)
    report = AxiomReport(model.name, bound, header=report_header(bound, seed, samples))
    exhausted = None
    for name, outcome, duration in manager.suite_supervisor(entries):
        if isinstance(outcome, SearchExhausted):
            logger.warning("%s gave up: %s", name, outcome)
            exhausted = exhausted or outcome
            continue
        if isinstance(outcome, Exception):
            raise outcome
        for cid, verdict in outcome.items():
            report.verdicts[cid] = verdict
            report.timing[cid] = duration
            logger.info("%s %s (%.2fs)", cid, "HOLDS" if verdict.holds else "FAILS", duration)
    if exhausted is not None:
        exhausted.report = report
        raise exhausted
    return report


def check_axioms(model, bound, seed=None):
    """
    Conditions (1)-(6) characterising the category of relations, plus the dagger dual check.

    :return: AxiomReport
    :raises SearchExhausted: with the partial report attached
    """

    return run_suite(model, bound, condition_entries(AXIOM_CONDITIONS, model, bound, seed), seed)


def check_point_conditions(model, bound, seed=None):
    """
    Conditions (1')-(4'), the variant phrased through the unit, tops and point splittings.
    """

    return run_suite(model, bound, condition_entries(POINT_CONDITIONS, model, bound, seed), seed)
