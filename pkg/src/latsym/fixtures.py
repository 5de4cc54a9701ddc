"""Bundled reference tables: the 32 isometry classes and the orbit sample.

Both tables ship as JSON under latsym/data with pinned checksums.  The
genus strings they contain are cross-checked against the genus engine by
the verification commands, so a transcription slip surfaces as an explicit
mismatch instead of silently propagating.
"""

import hashlib
import json
import re
from pathlib import Path

from . import lattice

_DATA = Path(__file__).parent / "data"

TABLE1_SHA256 = "9438029f63f2c352b599c0ecd339d632c5b1fe28c6aad43d651342e22636d739"
ORBITS_SHA256 = "ff08fa135ee06a205f1c69dd680b9c9766c998746ad56b07e8b805ce7fe10d12"


def _load_json(path, checksum):
    raw = path.read_bytes()
    if checksum is not None:
        digest = hashlib.sha256(raw).hexdigest()
        if digest != checksum:
            raise ValueError("checksum mismatch for %s" % path.name)
    return json.loads(raw.decode("utf-8"))


def load_table(path=None):
    """Rows of the bundled class table (checksummed), or an override file."""
    if path is None:
        data = _load_json(_DATA / "table1.json", TABLE1_SHA256)
    else:
        data = _load_json(Path(path), None)
    return data["rows"]


def load_orbit_table(path=None):
    """Orbit sample rows with the vectors evaluated in the standard model."""
    if path is None:
        data = _load_json(_DATA / "orbits.json", ORBITS_SHA256)
    else:
        data = _load_json(Path(path), None)
    model = lattice.standard_model()
    rows = []
    for row in data["rows"]:
        row = dict(row)
        row["vector"] = model_vector(model, row["vector_expr"])
        rows.append(row)
    return rows


_VECTOR_TERM = re.compile(r"([+-]?)(?:(\d+)\*)?([a-z0-9_]+?)(?:\((-?\d+)\))?(?=[+-]|$)")


def model_vector(model, expr):
    """Evaluate a sum of named model vectors, e.g. "2*u2(1)-a1_sum"."""
    text = expr.replace(" ", "")
    if not text:
        raise ValueError("empty vector expression")
    out = [0] * model.rank
    pos = 0
    while pos < len(text):
        m = _VECTOR_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse vector expression at %r" % text[pos:])
        sign_s, coef_s, name, arg = m.groups()
        sign = -1 if sign_s == "-" else 1
        coef = int(coef_s) if coef_s else 1
        if arg is not None:
            if name != "u2":
                raise ValueError("unknown parametrized vector %r" % name)
            vec = model.u2_vector(int(arg))
        else:
            if name not in model.named:
                raise ValueError("unknown model vector %r" % name)
            vec = model.named[name]
        for i in range(model.rank):
            out[i] += sign * coef * vec[i]
        pos = m.end()
    return out


def fixture_problems():
    """Internal consistency problems of the bundled data; empty when sound.

    Checks counts, string grammar roundtrips and the orbit sample's squares
    and divisibilities.  Genus values are not recomputed here; that is the
    job of the table verification command.
    """
    from . import genus

    problems = []
    rows = load_table()
    if len(rows) != 32:
        problems.append("expected 32 class rows, found %d" % len(rows))
    regular = sum(1 for r in rows if r["regular"])
    if regular != 21:
        problems.append("expected 21 regular rows, found %d" % regular)
    for r in rows:
        for key in ("invariant_genus", "coinvariant_genus"):
            text = r[key]
            if text is None:
                continue
            try:
                if genus.render_genus(genus.parse_genus(text)) != text:
                    problems.append("row %d: %s does not re-render" % (r["no"], key))
            except ValueError as exc:
                problems.append("row %d: %s does not parse (%s)" % (r["no"], key, exc))
        if r["invariant_expr"] is not None:
            try:
                lattice.build_named(r["invariant_expr"])
            except ValueError as exc:
                problems.append("row %d: invariant_expr (%s)" % (r["no"], exc))
    model = lattice.standard_model()
    orows = load_orbit_table()
    if len(orows) != 6:
        problems.append("expected 6 orbit rows, found %d" % len(orows))
    for row in orows:
        v = row["vector"]
        if model.lattice.square(v) != row["square"]:
            problems.append("orbit %d: square mismatch" % row["label"])
        if model.lattice.divisibility(v) != row["div"]:
            problems.append("orbit %d: divisibility mismatch" % row["label"])
    return problems
