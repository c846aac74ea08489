"""
Readers and writers for every textual artifact: rig tables, relation files, matrix files,
suite reports, witness files and extraction output.

All formats are line based, UTF-8, and skip blank lines and lines starting with `#`.
Parse failures raise ParseError carrying the file, line and column of the offending token.
"""

import functools
import os
import re
from dataclasses import dataclass, field

import numpy as np

import config
from relcat.errors import MalformedTable, OutputError, ParseError
from relcat.matcat import MatObject, RigMatrix
from relcat.relations import FinSet, Relation
from relcat.rig import FiniteRig


TOKEN = re.compile(r"\S+")


def _lines(text):
    """
    Yields (line number, [(column, token), ...]) for every non-blank, non-comment line.
    """

    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, [(m.start() + 1, m.group()) for m in TOKEN.finditer(line)]


class _Cursor:
    """
    Walks the significant lines of a file, raising ParseError with positions.
    """

    def __init__(self, text, path):
        self.path = path
        self.lines = list(_lines(text))
        self.pos = 0

    def error(self, message, line=None, column=1):
        if line is None:
            line = self.lines[self.pos][0] if self.pos < len(self.lines) else (self.lines[-1][0] if self.lines else 0)
        return ParseError(message, self.path, line, column)

    @property
    def done(self):
        return self.pos >= len(self.lines)

    def peek(self):
        return self.lines[self.pos]

    def next(self, expect=None):
        if self.done:
            raise self.error("unexpected end of file" + (", expected `%s`" % expect if expect else ""))
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def keyword(self, word, minimum=1, maximum=None):
        """
        Consumes a line starting with word and returns (line number, argument tokens).
        """

        number, tokens = self.next(word)
        if tokens[0][1] != word:
            raise ParseError("expected `%s`, found `%s`" % (word, tokens[0][1]), self.path, number, tokens[0][0])
        args = tokens[1:]
        if len(args) < minimum or (maximum is not None and len(args) > maximum):
            column = tokens[-1][0] + len(tokens[-1][1])
            raise ParseError("`%s` takes %s argument(s), got %d"
                             % (word, minimum if maximum == minimum else "%d or more" % minimum, len(args)),
                             self.path, number, column)
        return number, args


def _natural(token, path, line):
    column, text = token
    if not text.isdigit():
        raise ParseError("expected a natural number, found `%s`" % text, path, line, column)
    return int(text)


# Rig files

def parse_rig(text, path="<input>"):
    """
    :param text: Rig file contents
    :param path: File name used in diagnostics
    :return: FiniteRig
    :raises ParseError: on any syntax or table problem
    """

    cur = _Cursor(text, path)
    _, args = cur.keyword("rig", 1, 1)
    name = args[0][1]
    _, args = cur.keyword("carrier", 1)
    carrier = [token for _, token in args]
    if len(set(carrier)) != len(carrier):
        raise cur.error("carrier has repeated elements", cur.lines[cur.pos - 1][0])
    known = set(carrier)

    def element(line, token):
        if token[1] not in known:
            raise ParseError("`%s` is not in the carrier" % token[1], path, line, token[0])
        return token[1]

    number, args = cur.keyword("zero", 1, 1)
    zero = element(number, args[0])
    number, args = cur.keyword("one", 1, 1)
    one = element(number, args[0])

    tables = {}
    for block in ("add", "mul"):
        header, _ = cur.keyword(block, 0, 0)
        rows = []
        for _ in carrier:
            if cur.done:
                raise cur.error("`%s` table has %d rows, expected %d" % (block, len(rows), len(carrier)))
            number, tokens = cur.next()
            if tokens[0][1] in ("mul", "infinitary"):
                raise ParseError("`%s` table has %d rows, expected %d" % (block, len(rows), len(carrier)),
                                 path, number, tokens[0][0])
            if len(tokens) != len(carrier):
                column = tokens[-1][0] + len(tokens[-1][1]) if len(tokens) < len(carrier) else tokens[len(carrier)][0]
                raise ParseError("row has %d entries, expected %d" % (len(tokens), len(carrier)), path, number, column)
            rows.append([element(number, token) for token in tokens])
        tables[block] = (header, rows)

    infinitary = None
    if not cur.done:
        number, args = cur.keyword("infinitary", 1, 1)
        rule = args[0][1]
        if rule not in ("join", "none"):
            raise ParseError("unknown infinitary rule `%s`" % rule, path, number, args[0][0])
        infinitary = None if rule == "none" else rule
    if not cur.done:
        number, tokens = cur.peek()
        raise ParseError("unexpected `%s` after the rig definition" % tokens[0][1], path, number, tokens[0][0])

    try:
        return FiniteRig.from_tables(name, carrier, zero, one, tables["add"][1], tables["mul"][1], infinitary)
    except MalformedTable as e:
        raise ParseError(str(e), path, tables["add"][0], 1)


def write_rig(rig):
    """
    :return: Text of rig in the .rig format, readable by parse_rig
    """

    lines = ["rig %s" % rig.name, "carrier %s" % " ".join(rig.carrier), "zero %s" % rig.zero, "one %s" % rig.one]
    for block, table in (("add", rig.add_table), ("mul", rig.mul_table)):
        lines.append(block)
        lines.extend(" ".join(rig.label(int(i)) for i in row) for row in table)
    lines.append("infinitary %s" % (rig.infinitary or "none"))
    return "\n".join(lines) + "\n"


def read_source(path):
    """
    Reads a UTF-8 input file.

    :param path: File to read
    :return: The decoded text
    :raises ParseError: if the file cannot be read, or at the line and column of the first
                        byte that is not valid UTF-8
    """

    try:
        with open(path, "rb") as f:
            raw = f.read()
    except OSError as e:
        raise ParseError("cannot read file: %s" % (e.strerror or e), path, 0, 0)
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line = raw.count(b"\n", 0, e.start) + 1
        column = e.start - (raw.rfind(b"\n", 0, e.start) + 1) + 1
        raise ParseError("invalid UTF-8 byte 0x%02x" % raw[e.start], path, line, column)


def write_target(path, text):
    """
    Writes text to an output file as UTF-8.

    :param path: File to (over)write
    :param text: Full file contents
    :raises OutputError: if the file cannot be written
    """

    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise OutputError("%s: cannot write file: %s" % (path, e.strerror or e), path)


def corpus_path(*parts):
    """
    :return: Path of a file under the bundled corpus directory
    """

    return os.path.join(config.CORPUS_DIR, *parts)


def rig_names():
    """
    :return: Sorted names of the bundled rigs
    """

    return sorted(f[:-4] for f in os.listdir(corpus_path("rigs")) if f.endswith(".rig"))


@functools.lru_cache(maxsize=None)
def load_rig(name):
    """
    Loads a bundled rig by name, or a rig file by path.

    :raises ParseError: if there is no such rig or the file is malformed
    """

    path = name if name.endswith(".rig") else corpus_path("rigs", name + ".rig")
    if not os.path.isfile(path):
        raise ParseError("unknown rig `%s` (bundled: %s)" % (name, ", ".join(rig_names())), path, 0, 0)
    return parse_rig(read_source(path), path)


# Relation files

@dataclass
class RelationFile:
    sets: dict = field(default_factory=dict)
    relations: dict = field(default_factory=dict)


def parse_relations(text, path="<input>"):
    """
    :return: RelationFile with sets and relations in declaration order
    :raises ParseError: on unknown sets, bad rows, duplicate names
    """

    cur = _Cursor(text, path)
    out = RelationFile()
    while not cur.done:
        number, tokens = cur.next()
        word = tokens[0][1]
        if word == "set":
            if len(tokens) < 2:
                raise ParseError("`set` needs a label", path, number, tokens[0][0] + 3)
            label = tokens[1][1]
            if label in out.sets:
                raise ParseError("set `%s` is declared twice" % label, path, number, tokens[1][0])
            elements = [token for _, token in tokens[2:]]
            if len(set(elements)) != len(elements):
                raise ParseError("set `%s` has repeated elements" % label, path, number, tokens[2][0])
            out.sets[label] = FinSet(label, tuple(elements))
        elif word == "rel":
            if len(tokens) != 4:
                raise ParseError("`rel` takes a name, a domain and a codomain", path, number, tokens[0][0])
            name = tokens[1][1]
            if name in out.relations:
                raise ParseError("relation `%s` is declared twice" % name, path, number, tokens[1][0])
            ends = []
            for column, label in (tokens[2], tokens[3]):
                if label not in out.sets:
                    raise ParseError("unknown set `%s`" % label, path, number, column)
                ends.append(out.sets[label])
            dom, cod = ends
            rows = []
            for _ in dom:
                if cur.done:
                    raise cur.error("relation `%s` has %d rows, expected %d" % (name, len(rows), len(dom)))
                row_line, row_tokens = cur.next()
                rows.append(_relation_row(row_tokens, len(cod), path, row_line))
            out.relations[name] = Relation(dom, cod, tuple(rows))
        else:
            raise ParseError("expected `set` or `rel`, found `%s`" % word, path, number, tokens[0][0])
    return out


def _relation_row(tokens, width, path, line):
    if len(tokens) != 1:
        raise ParseError("a relation row is a single token", path, line, tokens[1][0])
    column, row = tokens[0]
    if width == 0:
        if row != "-":
            raise ParseError("rows into the empty set are written `-`", path, line, column)
        return 0
    if len(row) != width:
        raise ParseError("row has %d entries, expected %d" % (len(row), width), path, line, column + min(len(row), width))
    mask = 0
    for j, ch in enumerate(row):
        if ch not in "01":
            raise ParseError("expected 0 or 1, found `%s`" % ch, path, line, column + j)
        if ch == "1":
            mask |= 1 << j
    return mask


def write_relations(named):
    """
    :param named: List of (name, Relation)
    :return: Relation file text; sets are declared in first-use order, clashing labels
             get a numeric suffix
    """

    labels = {}
    used = set()
    lines = []

    def declare(X):
        key = (X.label, X.elements)
        if key not in labels:
            label, n = X.label, 2
            while label in used:
                label = "%s_%d" % (X.label, n)
                n += 1
            used.add(label)
            labels[key] = label
            lines.append(" ".join(["set", label] + list(X.elements)))
        return labels[key]

    for name, r in named:
        dom_label = declare(r.dom)
        cod_label = declare(r.cod)
        lines.append("rel %s %s %s" % (name, dom_label, cod_label))
        for row in r.rows:
            lines.append("".join("1" if row >> j & 1 else "0" for j in range(len(r.cod))) or "-")
    return "\n".join(lines) + "\n"


# Matrix files

def parse_matrices(text, rigs=None, path="<input>"):
    """
    :param rigs: Dict of rig name -> FiniteRig; other names are looked up in the corpus
    :return: Dict of name -> RigMatrix in declaration order
    """

    rigs = dict(rigs or {})
    cur = _Cursor(text, path)
    out = {}
    while not cur.done:
        number, args = cur.keyword("mat", 4, 4)
        name = args[0][1]
        if name in out:
            raise ParseError("matrix `%s` is declared twice" % name, path, number, args[0][0])
        rig_name = args[1][1]
        if rig_name not in rigs:
            try:
                rigs[rig_name] = load_rig(rig_name)
            except ParseError:
                raise ParseError("unknown rig `%s`" % rig_name, path, number, args[1][0])
        rig = rigs[rig_name]
        cod = _natural(args[2], path, number)
        dom = _natural(args[3], path, number)
        rows = []
        for _ in range(cod):
            if cur.done:
                raise cur.error("matrix `%s` has %d rows, expected %d" % (name, len(rows), cod))
            row_line, tokens = cur.next()
            if dom == 0:
                if len(tokens) != 1 or tokens[0][1] != "-":
                    raise ParseError("rows of a matrix out of 0 are written `-`", path, row_line, tokens[0][0])
                rows.append([])
                continue
            if len(tokens) != dom:
                column = tokens[-1][0] + len(tokens[-1][1]) if len(tokens) < dom else tokens[dom][0]
                raise ParseError("row has %d entries, expected %d" % (len(tokens), dom), path, row_line, column)
            row = []
            for column, label in tokens:
                if label not in rig.carrier:
                    raise ParseError("`%s` is not an element of rig %s" % (label, rig.name), path, row_line, column)
                row.append(rig.index(label))
            rows.append(row)
        entries = np.array(rows, dtype=np.int64).reshape(cod, dom)
        out[name] = RigMatrix(rig, MatObject(dom), MatObject(cod), entries)
    return out


def write_matrices(named):
    """
    :param named: List of (name, RigMatrix)
    :return: Text in the matrix file format, "-" standing for an empty row
    """

    lines = []
    for name, m in named:
        lines.append("mat %s %s %d %d" % (name, m.rig.name, m.cod.size, m.dom.size))
        lines.extend(" ".join(row) or "-" for row in m.labels())
    return "\n".join(lines) + "\n"


# Reports and witnesses

def write_report(report, header, witness_files=None):
    """
    :param report: Object with .model, .bound and ordered .verdicts (condition id -> Verdict)
    :param header: Extra header lines (caps in force, assumptions)
    :param witness_files: Dict of condition id -> witness file name
    :return: Report text; never contains timings
    """

    witness_files = witness_files or {}
    lines = ["# relcat report", "# model %s" % report.model, "# bound %d" % report.bound,
             "# bounded verification: HOLDS certifies the laws on objects up to the bound only"]
    lines.extend("# %s" % line for line in header)
    for cid, verdict in report.verdicts.items():
        line = "%s %s bound=%d" % (cid, "HOLDS" if verdict.holds else "FAILS", report.bound)
        if cid in witness_files:
            line += " witness=%s" % witness_files[cid]
        lines.append(line)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ReportLine:
    condition: str
    holds: bool
    bound: int
    witness: str = None


def parse_report(text, path="<input>"):
    """
    Reads back the verdict lines of a report; comment lines are skipped.

    :return: List of ReportLine
    :raises ParseError: on a malformed verdict line
    """

    out = []
    for number, tokens in _lines(text):
        if len(tokens) not in (3, 4) or tokens[1][1] not in ("HOLDS", "FAILS"):
            raise ParseError("expected `<condition> <HOLDS|FAILS> bound=<n>`", path, number, tokens[0][0])
        column, bound = tokens[2]
        if not bound.startswith("bound=") or not bound[6:].isdigit():
            raise ParseError("expected bound=<n>", path, number, column)
        witness = None
        if len(tokens) == 4:
            column, text_ = tokens[3]
            if not text_.startswith("witness="):
                raise ParseError("expected witness=<file>", path, number, column)
            witness = text_[len("witness="):]
        out.append(ReportLine(tokens[0][1], tokens[1][1] == "HOLDS", int(bound[6:]), witness))
    return out


def write_witness(model_name, counterexample, body):
    """
    :param body: The witness morphisms serialized in the model's file format
    """

    header = ["# equation %s" % counterexample.equation, "# model %s" % model_name,
              "# bound %d" % counterexample.bound,
              "# lhs %s" % counterexample.lhs, "# rhs %s" % counterexample.rhs]
    return "\n".join(header) + "\n" + body


@dataclass(frozen=True)
class WitnessFile:
    equation: str
    model: str
    lhs: str
    rhs: str
    body: str
    bound: int = 0


def parse_witness(text, path="<input>"):
    """
    :return: WitnessFile from the comment header and the remaining body
    :raises ParseError: if a header field is missing
    """

    fields = {}
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.startswith("# "):
            continue
        key, _, value = line[2:].partition(" ")
        if key in ("equation", "model", "bound", "lhs", "rhs") and key not in fields:
            fields[key] = value
    for key in ("equation", "model", "lhs", "rhs"):
        if key not in fields:
            raise ParseError("witness file lacks a `# %s` header line" % key, path, 1, 1)
    bound = fields.get("bound", "0")
    if not bound.isdigit():
        raise ParseError("expected `# bound <n>`", path, 1, 1)
    return WitnessFile(fields["equation"], fields["model"], fields["lhs"], fields["rhs"], text, int(bound))


# Extraction output

def write_extraction(atom_sets, erels):
    """
    :param atom_sets: List of (object label, [bit pattern, ...])
    :param erels: List of (name, ExtractedRelation)
    """

    lines = []
    for label, patterns in atom_sets:
        lines.append("atoms %s %d" % (label, len(patterns)))
        lines.extend(patterns)
    for name, erel in erels:
        lines.append("erel %s %d %d" % (name, len(erel.dom_atoms), len(erel.cod_atoms)))
        lines.extend("%d %d" % pair for pair in sorted(erel.pairs))
    return "\n".join(lines) + "\n"


def parse_extraction(text, path="<input>"):
    """
    :return: (atoms: dict label -> [pattern], erels: dict name -> (k1, k2, sorted pairs))
    """

    cur = _Cursor(text, path)
    atoms, erels = {}, {}
    while not cur.done:
        number, tokens = cur.next()
        word = tokens[0][1]
        if word == "atoms" and len(tokens) == 3:
            k = _natural(tokens[2], path, number)
            atoms[tokens[1][1]] = [cur.next("atom pattern")[1][0][1] for _ in range(k)]
        elif word == "erel" and len(tokens) == 4:
            k1 = _natural(tokens[2], path, number)
            k2 = _natural(tokens[3], path, number)
            pairs = []
            while not cur.done and cur.peek()[1][0][1] not in ("atoms", "erel"):
                row_line, row = cur.next()
                if len(row) != 2:
                    raise ParseError("expected a pair `i j`", path, row_line, row[0][0])
                i, j = _natural(row[0], path, row_line), _natural(row[1], path, row_line)
                if i >= k1 or j >= k2:
                    raise ParseError("atom index out of range", path, row_line, row[0][0])
                pairs.append((i, j))
            erels[tokens[1][1]] = (k1, k2, sorted(pairs))
        else:
            raise ParseError("expected `atoms <object> <k>` or `erel <name> <k1> <k2>`", path, number, tokens[0][0])
    return atoms, erels


# Lattice reports

def write_lattice_report(report, label, describe):
    """
    :param report: LatticeReport
    :param label: Object label
    :param describe: Function rendering a witness point as text
    :return: One line per law group; a failing group is followed by its witness as a comment
    """

    lines = ["# relcat lattice", "# object %s" % label,
             "# size %d points %d atoms %d" % (report.size, report.points, report.atoms),
             "# mode %s" % report.mode]
    for group, verdict in report.laws.items():
        lines.append("%s %s size=%d" % (group, "HOLDS" if verdict.holds else "FAILS", report.size))
        cx = verdict.counterexample
        if cx is not None:
            witnesses = " ".join("%s=%s" % (name, describe(m)) for name, m in cx.morphisms)
            lines.append("#   %s at %s: %s != %s" % (cx.equation, witnesses, cx.lhs, cx.rhs))
    return "\n".join(lines) + "\n"
