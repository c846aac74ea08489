import functools
import logging
import os
import re
import sys

import click

import config
from relcat import __version__, checker, extraction, formats
from relcat.errors import (ArityMismatch, DomainMismatch, MuNotBijective, NotAtomic, OutputError,
                           ParseError, RigMismatch, SearchExhausted)
from relcat.models import MatModel, load_model


logger = logging.getLogger(__name__)

# Exit codes
EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INPUT = 2

INPUT_ERRORS = (ParseError, DomainMismatch, ArityMismatch, RigMismatch, OutputError)

# Operation -> number of operands; None takes one or more
COMPUTE_ARITY = {
    "kernel": 1,
    "complement": 1,
    "neg": 1,
    "meet": 2,
    "join": None,
    "top": 1,
    "trace": 1,
    "breve": 1,
    "cokernel": 1,
}


def handles_errors(f):
    """
    Maps relcat errors onto the exit-code contract: input errors exit 2 with the diagnostic
    on stderr, failed properties exit 1.
    """

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except INPUT_ERRORS as e:
            click.echo("error: %s" % e, err=True)
            sys.exit(EXIT_INPUT)
        except (NotAtomic, MuNotBijective) as e:
            click.echo("fails: %s" % e, err=True)
            sys.exit(EXIT_FAILS)
    return wrapper


def model_options(f):
    """
    Adds the shared --model and --rig options to a command.
    """

    f = click.option("--rig", "rig", default=None, metavar="NAME",
                     help="Matrices over a bundled rig, or a .rig file.")(f)
    f = click.option("--model", "selector", default=None, metavar="rel|rig:NAME",
                     help="Model to work in (default rel).")(f)
    return f


def resolve_model(selector, rig):
    """
    :return: Model named by --model / --rig
    :raises click.UsageError: if both name a model
    """

    if selector and rig:
        raise click.UsageError("give either --model or --rig, not both")
    if rig:
        return load_model(rig)
    if selector is None or selector == "rel":
        return load_model("rel")
    if selector.startswith("rig:"):
        return load_model(selector[4:])
    raise click.UsageError("unknown model `%s`, expected rel or rig:<name>" % selector)


def sampling(sampled, seed):
    """
    Sampled mode requires an explicit seed.
    """

    if sampled is not None and seed is None:
        raise click.UsageError("--sampled needs an explicit --seed")
    return seed


def read_text(path):
    """
    :return: Contents of an input file
    :raises ParseError: if it cannot be read or is not valid UTF-8
    """

    return formats.read_source(path)


def emit(text, out):
    """
    Writes text to the --out path, or to stdout.
    """

    if out is None:
        click.echo(text, nl=False)
        return
    formats.write_target(out, text)


def load_morphisms(model, paths):
    """
    :return: Every morphism of the given files, as (name, morphism) in file order
    :raises RigMismatch: if a matrix file is over another rig than the model's
    """

    named = []
    for path in paths:
        for name, m in model.parse(read_text(path), path):
            if isinstance(model, MatModel) and m.rig is not model.rig:
                raise RigMismatch("%s: matrix `%s` is over %s, the model is %s" % (path, name, m.rig.name, model.rig.name))
            named.append((name, m))
    return named


def fail(message):
    """
    Reports a property that does not hold and exits 1.
    """

    click.echo("fails: %s" % message, err=True)
    sys.exit(EXIT_FAILS)


def signature(model, name, m):
    """
    :return: "name: X -> Y", as compute diagnostics show it
    """

    return "%s: %s -> %s" % (name, model.object_label(model.dom(m)), model.object_label(model.cod(m)))


def witness_name(cid, model):
    """
    :return: File name for the witness of a failing condition
    """

    ext = "rel" if model.name == "rel" else "mat"
    return "witness-%s.%s" % (re.sub(r"[^A-Za-z0-9_.-]", "_", cid), ext)


@click.group()
@click.version_option(__version__, prog_name="relcat")
def cli():
    """
    Bounded checks of the axioms characterising the category of relations.
    """


@cli.command()
@model_options
@click.option("--bound", type=click.IntRange(min=1), default=config.DEFAULT_BOUND, show_default=True)
@click.option("--sampled", type=click.IntRange(min=1), default=None,
              help="Sampled parallel pairs per large monoidal-separator signature.")
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Report file (default stdout).")
@handles_errors
def check(selector, rig, bound, sampled, seed, out):
    """
    Runs every suite on a model and writes the report, with one witness file per failing
    condition next to the report.
    """

    seed = sampling(sampled, seed)
    model = resolve_model(selector, rig)

    conditions = checker.AXIOM_CONDITIONS + checker.POINT_CONDITIONS + checker.SUPPLEMENTARY
    entries = checker.condition_entries(conditions, model, bound, seed, sampled)
    entries.append(checker.lemma_entry(model, bound))
    entries.append(("equivalence", lambda: extraction.verify_equivalence(model, bound, seed).verdicts))

    # Coherence sizes are capped by the bound, duplicates dropped
    sizes = []
    for triple in config.COHERENCE_SIZES:
        capped = tuple(min(n, bound) for n in triple)
        if capped not in sizes:
            sizes.append(capped)
    for triple in sizes:
        entries.append(("coherence", functools.partial(coherence_verdicts, model, triple)))

    exhausted = None
    try:
        report = checker.run_suite(model, bound, entries, seed, sampled)
    except SearchExhausted as e:
        exhausted = e
        report = e.report

    header = list(report.header)
    header.append("monoidal coherence sizes %s" % " ".join("x".join(str(n) for n in t) for t in sizes))
    if exhausted is not None:
        header.append("search exhausted: %s" % exhausted)

    # Witness files go next to the report
    folder = os.path.dirname(os.path.abspath(out)) if out else os.getcwd()
    witness_files = {}
    for cid, verdict in report.failures():
        cx = verdict.counterexample
        if cx is None:
            continue
        name = witness_name(cid, model)
        body = model.serialize(list(cx.morphisms)) if cx.morphisms else ""
        formats.write_target(os.path.join(folder, name), formats.write_witness(model.name, cx, body))
        witness_files[cid] = name

    emit(formats.write_report(report, header, witness_files), out)

    if exhausted is not None:
        click.echo("error: %s" % exhausted, err=True)
        sys.exit(EXIT_INPUT)
    if not report.holds:
        for cid, verdict in report.failures():
            click.echo("FAILS %s" % cid, err=True)
        sys.exit(EXIT_FAILS)


def coherence_verdicts(model, sizes):
    """
    :param sizes: Object sizes (X, Y, Z)
    :return: {condition id: Verdict}, one entry per coherence square
    """

    report = extraction.verify_monoidal_coherence(model, sizes)
    tag = "-".join(str(n) for n in sizes)
    return {"coherence-%s-%s" % (square, tag): verdict for square, verdict in report.squares.items()}


@cli.command()
@click.argument("op", type=click.Choice(sorted(COMPUTE_ARITY)))
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@model_options
@click.option("--bound", type=click.IntRange(min=1), default=config.DEFAULT_BOUND, show_default=True,
              help="Largest kernel domain searched in matrix models.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handles_errors
def compute(op, files, selector, rig, bound, out):
    """
    Applies OP to the morphisms of FILES and writes the result in the same file format.
    """

    model = resolve_model(selector, rig)
    named = load_morphisms(model, files)

    # Check operand count
    arity = COMPUTE_ARITY[op]
    if (arity is not None and len(named) != arity) or not named:
        raise ArityMismatch("%s takes %s operand(s), got %d: %s"
                            % (op, arity or "one or more", len(named), ", ".join(n for n, _ in named)))

    results = compute_result(model, op, named, bound)
    emit(model.serialize(results), out)


def compute_result(model, op, named, bound):
    """
    :return: List of (output name, morphism)
    """

    name = "%s_%s" % (op, "_".join(n for n, _ in named))
    ms = [m for _, m in named]
    r = ms[0]

    def require_point(n, m):
        if model.dom(m) != model.unit:
            raise DomainMismatch("%s expects points I -> X, got %s" % (op, signature(model, n, m)))

    def require_parallel():
        for n, m in named[1:]:
            if model.dom(m) != model.dom(r) or model.cod(m) != model.cod(r):
                raise DomainMismatch("%s needs parallel morphisms, got %s and %s"
                                     % (op, signature(model, *named[0]), signature(model, n, m)))

    search = max(bound, model.size(model.dom(r)), model.size(model.cod(r)))
    if op == "kernel":
        w = model.kernel(r, search)
        if w is None:
            fail("no dagger kernel of %s within size %d" % (signature(model, *named[0]), search))
        return [(name, w.m)]
    if op == "cokernel":
        c = model.cokernel(r, search)
        if c is None:
            fail("no dagger cokernel of %s within size %d" % (signature(model, *named[0]), search))
        return [(name, c)]
    if op == "complement":
        c = model.complement(r, search)
        if c is None:
            fail("no complement of %s within size %d" % (signature(model, *named[0]), search))
        return [(name, c)]
    if op == "neg":
        require_point(*named[0])
        n = model.neg(r)
        if n is None:
            fail("point %s has no largest orthogonal point" % model.point_pattern(r))
        return [(name, n)]
    if op == "meet":
        for n, m in named:
            require_point(n, m)
        require_parallel()
        return [(name, model.meet_by_kernels(ms[0], ms[1], search))]
    if op == "join":
        require_parallel()
        return [(name, model.sum(ms, model.dom(r), model.cod(r)))]
    if op == "top":
        return [(name, model.top(model.cod(r)))]
    if op == "trace":
        if model.dom(r) != model.cod(r):
            raise DomainMismatch("trace needs an endomorphism, got %s" % signature(model, *named[0]))
        return [(name, model.trace(r))]
    return [(name, model.breve(r))]


@cli.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@model_options
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handles_errors
def extract(files, selector, rig, out):
    """
    Writes the atoms of every object used in FILES and the extracted relation of every morphism.
    Exits 1 if a point lattice is not a Boolean algebra, naming the offending point.
    """

    model = resolve_model(selector, rig)
    named = load_morphisms(model, files)

    # Objects in first-use order
    objects = []
    for _, m in named:
        for X in (model.dom(m), model.cod(m)):
            if not any(X == Y and model.object_label(X) == model.object_label(Y) for Y in objects):
                objects.append(X)

    for X in objects:
        lattice = checker.verify_hom_lattice(model, X)
        for group in lattice.failing():
            cx = lattice.laws[group].counterexample
            points = " ".join("%s=%s" % (n, model.point_pattern(m)) for n, m in cx.morphisms)
            click.echo("fails: %s of %s at %s" % (group, model.object_label(X), points), err=True)
            sys.exit(EXIT_FAILS)

    atom_sets = [(model.object_label(X), [model.point_pattern(a) for a in extraction.extract_object(model, X)])
                 for X in objects]
    erels = [(name, extraction.extract_morphism(model, m)) for name, m in named]
    emit(formats.write_extraction(atom_sets, erels), out)


@cli.command()
@model_options
@click.option("--size", type=click.IntRange(min=0), required=True, help="Size of the object X.")
@click.option("--sampled", type=click.IntRange(min=1), default=None, help="Sampled triples instead of all.")
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handles_errors
def lattice(selector, rig, size, sampled, seed, out):
    """
    Checks the Boolean-algebra laws of the point lattice C(I, X).
    """

    seed = sampling(sampled, seed)
    model = resolve_model(selector, rig)
    X = model.obj(size)
    mode = "exhaustive" if sampled is None else "sampled"
    report = checker.verify_hom_lattice(model, X, mode, sampled, seed)
    emit(formats.write_lattice_report(report, model.object_label(X), model.point_pattern), out)
    if not report.holds:
        sys.exit(EXIT_FAILS)


@cli.command()
@click.argument("witness", type=click.Path(exists=True, dir_okay=False))
@click.option("--rig", default=None, metavar="NAME", help="Rig file, when the witness names an unbundled rig.")
@handles_errors
def replay(witness, rig):
    """
    Re-evaluates a witness file. Exits 0 when the recorded inequality is reproduced exactly.
    """

    found = formats.parse_witness(read_text(witness), witness)
    model = load_model(rig or found.model)
    named = tuple(model.parse(found.body, witness))
    cx = checker.Counterexample(named, found.equation, found.lhs, found.rhs, found.bound)
    if found.equation not in checker.EQUATIONS:
        raise ParseError("unknown equation `%s`" % found.equation, witness, 1, 1)
    if not checker.replay(model, cx):
        click.echo("does not replay: %s" % found.equation, err=True)
        sys.exit(EXIT_FAILS)
    click.echo("replays: %s" % found.equation)
