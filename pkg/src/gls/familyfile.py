"""Parser for the plain-text family description files consumed by the
command line tool.

The format is line based: ``key = value`` pairs, ``#`` comments, blank
lines ignored.  Keys:

    mode            affine | projective | infinitesimal   (default affine)
    base            name of the base variable             (default t)
    variables       comma- or space-separated variable names (base included)
    relation        one defining polynomial; repeat the key for several
    dimension       expected relative dimension d of the fibers
    max_kink        search bound for the kink loop        (default 8)
    truncation_order  order n for infinitesimal mode
"""

from .parse import ParseError, parse_polynomial
from .pipeline import Family
from .poly import PolyRing


class InputError(Exception):
    pass


_MODES = ("affine", "projective", "infinitesimal")


def parse_family_text(text):
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError("line %d: expected 'key = value'" % lineno)
        key, value = line.split("=", 1)
        entries.append((lineno, key.strip().lower(), value.strip()))

    mode = "affine"
    base = "t"
    variables = None
    relations = []
    dimension = None
    max_kink = 8
    trunc = None
    for lineno, key, value in entries:
        if key == "mode":
            if value not in _MODES:
                raise InputError("line %d: unknown mode %r" % (lineno, value))
            mode = value
        elif key == "base":
            base = value
        elif key == "variables":
            variables = [v for v in value.replace(",", " ").split() if v]
        elif key == "relation":
            relations.append((lineno, value))
        elif key in ("dimension", "max_kink", "truncation_order"):
            try:
                n = int(value)
            except ValueError:
                raise InputError("line %d: %s must be an integer"
                                 % (lineno, key))
            if key == "dimension":
                dimension = n
            elif key == "max_kink":
                max_kink = n
            else:
                trunc = n
        else:
            raise InputError("line %d: unknown key %r" % (lineno, key))

    if not variables:
        raise InputError("missing 'variables'")
    if len(set(variables)) != len(variables):
        raise InputError("duplicate variable names")
    if base not in variables:
        raise InputError("base variable %r is not among the variables"
                         % base)
    if dimension is None:
        raise InputError("missing 'dimension'")
    if dimension < 1:
        raise InputError("'dimension' must be at least 1")
    if not relations:
        raise InputError("missing 'relation'")
    if max_kink < 1:
        raise InputError("'max_kink' must be at least 1")
    if mode == "infinitesimal" and trunc is None:
        raise InputError("infinitesimal mode needs 'truncation_order'")
    if mode == "infinitesimal" and trunc < 1:
        raise InputError("'truncation_order' must be at least 1")

    ring = PolyRing(tuple(variables), base=base)
    polys = []
    for lineno, text_rel in relations:
        try:
            polys.append(parse_polynomial(ring, text_rel))
        except ParseError as exc:
            raise InputError("line %d: %s" % (lineno, exc))
    return Family(ring, polys, dimension, mode=mode, max_kink=max_kink,
                  truncation_order=trunc)


def load_family(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc))
    return parse_family_text(text)
