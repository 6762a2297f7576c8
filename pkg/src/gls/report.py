"""Rendering of analysis reports, as readable text or as a JSON
structure with a stable schema."""

import json

SCHEMA_VERSION = 1

_SECTION_TITLES = [
    ("pre_gls", "total space"),
    ("cone", "projective cone"),
    ("strata", "central fiber strata"),
    ("dnc", "normal crossings in codimension one"),
    ("kinks", "kinks"),
    ("assemble", "log singular locus"),
    ("differential", "log derivations"),
]


def _family_block(fam):
    return {
        "mode": fam.mode,
        "base": fam.base,
        "variables": list(fam.ring.variables),
        "relations": [str(f) for f in fam.relations],
        "dimension": fam.d,
        "max_kink": fam.max_kink,
        "truncation_order": fam.truncation_order,
    }


def to_struct(report):
    return {
        "schema_version": SCHEMA_VERSION,
        "family": _family_block(report.family),
        "verdict": report.verdict,
        "stage": report.stage,
        "reason": report.reason,
        "sections": report.sections,
        "timings": report.timings,
    }


def render_struct(report):
    return json.dumps(to_struct(report), indent=2, sort_keys=False)


def _fmt_value(value, indent):
    pad = " " * indent
    if isinstance(value, list):
        if not value:
            return " (none)\n"
        if all(isinstance(x, str) for x in value):
            return " " + ", ".join(value) + "\n"
        out = "\n"
        for x in value:
            if isinstance(x, list):
                out += pad + "- " + ", ".join(str(y) for y in x) + "\n"
            elif isinstance(x, dict):
                out += pad + "-\n"
                for k, v in x.items():
                    out += pad + "  " + k + ":" + _fmt_value(v, indent + 4)
            else:
                out += pad + "- " + str(x) + "\n"
        return out
    if isinstance(value, dict):
        out = "\n"
        for k, v in value.items():
            out += pad + k + ":" + _fmt_value(v, indent + 2)
        return out
    return " " + str(value) + "\n"


def render_text(report):
    fam = report.family
    lines = []
    lines.append("family analysis (%s mode)" % fam.mode)
    lines.append("  variables: %s   base: %s"
                 % (" ".join(fam.ring.variables), fam.base))
    lines.append("  relative dimension: %d" % fam.d)
    for f in fam.relations:
        lines.append("  relation: %s" % f)
    if fam.truncation_order is not None:
        lines.append("  truncation order: %d" % fam.truncation_order)
    lines.append("")
    out = "\n".join(lines)
    for key, title in _SECTION_TITLES:
        if key not in report.sections:
            continue
        out += "[%s]\n" % title
        for k, v in report.sections[key].items():
            out += "  " + k + ":" + _fmt_value(v, 4)
        out += "\n"
    out += "verdict: %s\n" % report.verdict
    if report.stage:
        out += "stage: %s\n" % report.stage
    if report.reason:
        out += "reason: %s\n" % report.reason
    if report.timings:
        total = sum(report.timings.values())
        out += "time: %.1fs\n" % total
    return out


def exit_code(report):
    if report.verdict in ("gls", "partial"):
        return 0
    if report.verdict == "inconclusive":
        return 2
    return 1
