"""
Finite commutative rigs with an optional infinitary summation.

Elements are handled by label at the public surface and by carrier index internally;
the addition and multiplication tables are numpy index arrays so that matrix code can
look entries up by fancy indexing.
"""

import enum
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from relcat.errors import InfiniteUnsupported, MalformedTable


logger = logging.getLogger(__name__)

# Cardinality of a countably infinite run of equal summands
INFINITE = math.inf


@dataclass(frozen=True)
class FamilyDescriptor:
    """
    An indexed family of rig elements up to reindexing: element label -> multiplicity,
    where a multiplicity is a positive int or INFINITE.
    """

    support: tuple = ()

    def __post_init__(self):
        items = self.support.items() if isinstance(self.support, dict) else tuple(self.support)
        seen = set()
        normalized = []
        for element, count in items:
            if element in seen:
                raise ValueError("Duplicate element in family support: %s" % element)
            if count != INFINITE and (int(count) != count or count < 1):
                raise ValueError("Multiplicity must be a positive integer or INFINITE: %r" % (count,))
            seen.add(element)
            normalized.append((element, count if count == INFINITE else int(count)))
        object.__setattr__(self, "support", tuple(sorted(normalized, key=lambda item: item[0])))

    def __len__(self):
        return len(self.support)

    def items(self):
        """
        :return: Iterator of (element label, multiplicity) pairs, sorted by label
        """

        return iter(self.support)

    @property
    def is_finite(self):
        """
        :return: True if no multiplicity is INFINITE
        """

        return all(count != INFINITE for _, count in self.support)

    def merge(self, other):
        """
        Disjoint union of two families.
        """

        counts = dict(self.support)
        for element, count in other.support:
            counts[element] = counts.get(element, 0) + count
        return FamilyDescriptor(counts)

    def map(self, fn):
        """
        Pointwise image of the family, merging multiplicities of colliding images.
        """

        counts = {}
        for element, count in self.support:
            image = fn(element)
            counts[image] = counts.get(image, 0) + count
        return FamilyDescriptor(counts)


@dataclass(frozen=True, eq=False)
class FiniteRig:
    """
    A finite rig given by its tables. add_table / mul_table hold carrier indices.
    `infinitary` names a rule in INFINITARY_RULES, or is None.
    """

    name: str
    carrier: tuple
    zero: str
    one: str
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    infinitary: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        if len(set(self.carrier)) != len(self.carrier):
            raise MalformedTable("Carrier of rig %s has repeated elements" % self.name)
        for role, label in (("zero", self.zero), ("one", self.one)):
            if label not in self.carrier:
                raise MalformedTable("The %s of rig %s (%s) is not in the carrier" % (role, self.name, label))
        if self.infinitary is not None and self.infinitary not in INFINITARY_RULES:
            raise MalformedTable("Unknown infinitary rule %r for rig %s" % (self.infinitary, self.name))
        for table_name in ("add_table", "mul_table"):
            table = np.array(getattr(self, table_name), dtype=np.int64)
            table.flags.writeable = False
            object.__setattr__(self, table_name, table)
        _check_tables(self)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(self.carrier)})

    @classmethod
    def from_tables(cls, name, carrier, zero, one, add_rows, mul_rows, infinitary=None):
        """
        Builds a rig from tables written with element labels.

        :param add_rows: |carrier| rows of |carrier| labels, row a column b holding a + b
        :param mul_rows: likewise for a · b
        :raises MalformedTable: if a row has the wrong length or an unknown label
        """

        carrier = tuple(carrier)
        index = {label: i for i, label in enumerate(carrier)}
        tables = []
        for table_name, rows in (("add", add_rows), ("mul", mul_rows)):
            rows = [list(row) for row in rows]
            if len(rows) != len(carrier) or any(len(row) != len(carrier) for row in rows):
                raise MalformedTable("The %s table of rig %s is not %d x %d" % (table_name, name, len(carrier), len(carrier)))
            try:
                tables.append([[index[label] for label in row] for row in rows])
            except KeyError as e:
                raise MalformedTable("The %s table of rig %s uses %s, which is not in the carrier"
                                     % (table_name, name, e.args[0]))
        return cls(name, carrier, zero, one, np.array(tables[0]), np.array(tables[1]), infinitary)

    def __eq__(self, other):
        if not isinstance(other, FiniteRig):
            return NotImplemented
        return (self.name == other.name and self.carrier == other.carrier and self.zero == other.zero
                and self.one == other.one and self.infinitary == other.infinitary
                and np.array_equal(self.add_table, other.add_table)
                and np.array_equal(self.mul_table, other.mul_table))

    def __hash__(self):
        return hash((self.name, self.carrier))

    @property
    def size(self):
        """
        :return: Number of carrier elements
        """

        return len(self.carrier)

    @property
    def zero_index(self):
        """
        :return: Carrier index of zero
        """

        return self._index[self.zero]

    @property
    def one_index(self):
        """
        :return: Carrier index of one
        """

        return self._index[self.one]

    def index(self, label):
        """
        :return: Carrier index of the given element label
        :raises KeyError: for labels outside the carrier
        """

        return self._index[label]

    def label(self, i):
        """
        :param i: Carrier index
        :return: Element label at that index
        """

        return self.carrier[i]

    def add(self, a, b):
        """
        :param a: Element label
        :param b: Element label
        :return: Label of a + b
        """

        return self.carrier[self.add_table[self._index[a], self._index[b]]]

    def mul(self, a, b):
        """
        :param a: Element label
        :param b: Element label
        :return: Label of a · b
        """

        return self.carrier[self.mul_table[self._index[a], self._index[b]]]

    @property
    def is_idempotent(self):
        """
        :return: True if a + a = a for every element
        """

        return all(self.add_table[i, i] == i for i in range(self.size))


def _check_tables(rig):
    k = len(rig.carrier)
    for table_name in ("add_table", "mul_table"):
        table = getattr(rig, table_name)
        if table.shape != (k, k):
            raise MalformedTable("The %s of rig %s has shape %s, expected %s" % (table_name, rig.name, table.shape, (k, k)))
        if k and (table.min() < 0 or table.max() >= k):
            raise MalformedTable("The %s of rig %s has an entry outside the carrier" % (table_name, rig.name))


def join_rule(rig, fam):
    """
    Infinitary sum as least upper bound in the order a <= b iff a + b = b.
    Only meaningful when addition is idempotent, where the join of the support is its finite sum.
    """

    acc = rig.zero_index
    for element, _ in fam.items():
        acc = rig.add_table[acc, rig.index(element)]
    return rig.label(int(acc))


INFINITARY_RULES = {
    "join": join_rule,
}


def multiple(rig, a, n):
    """
    n-fold sum a + a + ... + a, computed by doubling.

    :param rig: FiniteRig
    :param a: Element label
    :param n: Non-negative int
    :return: Element label
    """

    acc = rig.zero_index
    power = rig.index(a)
    while n:
        if n & 1:
            acc = rig.add_table[acc, power]
        power = rig.add_table[power, power]
        n >>= 1
    return rig.label(int(acc))


def sum_family(rig, fam):
    """
    Sums an indexed family given up to reindexing.

    Finite families are folded through the addition table; families with an infinite
    multiplicity go to the rig's infinitary rule.

    :param rig: FiniteRig
    :param fam: FamilyDescriptor over rig's carrier
    :return: Element label of the sum
    :raises InfiniteUnsupported: if fam is infinite and the rig has no infinitary rule
    """

    for element, _ in fam.items():
        if element not in rig.carrier:
            raise ValueError("%s is not an element of rig %s" % (element, rig.name))
    if not fam.is_finite:
        if rig.infinitary is None:
            raise InfiniteUnsupported("Rig %s has no infinitary sum for %r" % (rig.name, fam.support))
        return INFINITARY_RULES[rig.infinitary](rig, fam)
    acc = rig.zero
    for element, count in fam.items():
        acc = rig.add(acc, multiple(rig, element, count))
    return acc


def order_leq(rig, a, b):
    """
    :return: True if a <= b in the additive order, i.e. a + b = b
    """

    return rig.add(a, b) == b


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple


@dataclass(frozen=True)
class ValidationReport:
    rig: str
    violations: tuple = ()

    @property
    def ok(self):
        """
        :return: True when no law was violated
        """

        return not self.violations

    def laws(self):
        """
        :return: Names of the violated laws, in checking order
        """

        return [v.law for v in self.violations]

    def witness(self, law):
        """
        :param law: Law name as reported by laws()
        :return: The first witness violating that law, or None
        """

        for v in self.violations:
            if v.law == law:
                return v.witness
        return None


def _first(triples, holds):
    for witness in triples:
        if not holds(*witness):
            return witness
    return None


def descriptor_samples(rig):
    """
    Finitely-supported descriptors used to test infinitary laws: every support of at most
    three elements, each multiplicity either 1 or INFINITE, in carrier order.
    """

    samples = []
    for size in range(1, min(3, rig.size) + 1):
        for support in itertools.combinations(rig.carrier, size):
            for counts in itertools.product((1, INFINITE), repeat=size):
                samples.append(FamilyDescriptor(tuple(zip(support, counts))))
    return samples


def validate_rig(rig):
    """
    Checks every rig law on the tables, reporting the first violation of each law in
    lexicographic witness order.

    :param rig: FiniteRig
    :return: ValidationReport, empty when every law holds
    :raises MalformedTable: if a table entry is outside the carrier
    """

    _check_tables(rig)
    c = rig.carrier
    add, mul, zero, one = rig.add, rig.mul, rig.zero, rig.one
    pairs = list(itertools.product(c, repeat=2))
    triples = list(itertools.product(c, repeat=3))

    laws = [
        ("additive identity", [(a,) for a in c], lambda a: add(a, zero) == a and add(zero, a) == a),
        ("additive commutativity", pairs, lambda a, b: add(a, b) == add(b, a)),
        ("additive associativity", triples, lambda a, b, d: add(add(a, b), d) == add(a, add(b, d))),
        ("multiplicative identity", [(a,) for a in c], lambda a: mul(a, one) == a and mul(one, a) == a),
        ("multiplicative associativity", triples, lambda a, b, d: mul(mul(a, b), d) == mul(a, mul(b, d))),
        ("left distributivity", triples, lambda a, b, d: mul(a, add(b, d)) == add(mul(a, b), mul(a, d))),
        ("right distributivity", triples, lambda a, b, d: mul(add(a, b), d) == add(mul(a, d), mul(b, d))),
        ("zero annihilation", [(a,) for a in c], lambda a: mul(zero, a) == zero and mul(a, zero) == zero),
    ]

    violations = []
    for law, witnesses, holds in laws:
        witness = _first(witnesses, holds)
        if witness is not None:
            violations.append(Violation(law, witness))

    if rig.infinitary is not None:
        violations.extend(_validate_infinitary(rig))

    report = ValidationReport(rig.name, tuple(violations))
    if not report.ok:
        logger.debug("Rig %s violates %s", rig.name, ", ".join(report.laws()))
    return report


def _validate_infinitary(rig):
    rule = INFINITARY_RULES[rig.infinitary]
    c = rig.carrier
    violations = []

    witness = _first([(a,) for a in c], lambda a: rule(rig, FamilyDescriptor({a: 1})) == a)
    if witness is not None:
        violations.append(Violation("infinitary singleton", witness))

    def binary(a, b):
        fam = FamilyDescriptor({a: 2}) if a == b else FamilyDescriptor({a: 1, b: 1})
        return rule(rig, fam) == rig.add(a, b)

    witness = _first([(a, b) for a, b in itertools.combinations_with_replacement(c, 2)], binary)
    if witness is not None:
        violations.append(Violation("infinitary binary", witness))

    samples = descriptor_samples(rig)

    def associative(f, g):
        return sum_family(rig, f.merge(g)) == rig.add(sum_family(rig, f), sum_family(rig, g))

    witness = _first(itertools.product(samples, repeat=2), associative)
    if witness is not None:
        violations.append(Violation("infinitary associativity", tuple(f.support for f in witness)))

    def distributive(f, b):
        total = sum_family(rig, f)
        right = rig.mul(total, b) == sum_family(rig, f.map(lambda a: rig.mul(a, b)))
        left = rig.mul(b, total) == sum_family(rig, f.map(lambda a: rig.mul(b, a)))
        return right and left

    witness = _first(itertools.product(samples, c), distributive)
    if witness is not None:
        violations.append(Violation("infinitary distributivity", (witness[0].support, witness[1])))

    return violations


class CollapseKind(enum.Enum):
    NOT_DIVISION_RIG = "NotDivisionRig"
    NOT_INFINITARY = "NotInfinitary"
    COLLAPSED = "Collapsed"
    CONTRADICTS = "ContradictsCollapse"


@dataclass(frozen=True)
class CollapseVerdict:
    kind: CollapseKind
    witness: Optional[str] = None
    omega: Optional[str] = None
    detail: str = ""


def inverse(rig, a):
    """
    :return: Two-sided multiplicative inverse of a, or None
    """

    for b in rig.carrier:
        if rig.mul(a, b) == rig.one and rig.mul(b, a) == rig.one:
            return b
    return None


def division_collapse_check(rig):
    """
    Tests the collapse of infinitary division rigs: if every nonzero element is invertible
    and the rig carries an infinitary sum, the rig must be {0, 1} with 1 + 1 = 1.

    :param rig: FiniteRig that passed validate_rig
    :return: CollapseVerdict
    """

    if rig.zero == rig.one:
        return CollapseVerdict(CollapseKind.NOT_DIVISION_RIG, rig.one, detail="one equals zero, so the unit group is empty")

    for a in rig.carrier:
        if a != rig.zero and inverse(rig, a) is None:
            return CollapseVerdict(CollapseKind.NOT_DIVISION_RIG, a, detail="%s has no multiplicative inverse" % a)

    if rig.infinitary is None:
        return CollapseVerdict(CollapseKind.NOT_INFINITARY, detail="rig %s has no infinitary sum" % rig.name)

    # omega = 1 + 1 + ... over a countably infinite family
    omega = sum_family(rig, FamilyDescriptor({rig.one: INFINITE}))
    collapsed = (set(rig.carrier) == {rig.zero, rig.one}
                 and rig.add(rig.one, rig.one) == rig.one
                 and rig.add(omega, omega) == omega
                 and omega != rig.zero)
    if collapsed:
        return CollapseVerdict(CollapseKind.COLLAPSED, omega=omega)

    logger.error("Division collapse failed on rig %s (omega=%s)", rig.name, omega)
    return CollapseVerdict(CollapseKind.CONTRADICTS, omega=omega,
                           detail="infinitary division rig %s is not {0, 1} with 1 + 1 = 1" % rig.name)
