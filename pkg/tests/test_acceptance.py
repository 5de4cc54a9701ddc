"""End-to-end checks over the bundled class table and the rank-16 model.

Each test prints one summary line; the suite is the release gate.
"""

import itertools
import json
import os
import time
from fractions import Fraction

import pytest

from latsym import cli, discform, fixtures, genus, intmat, isometry, lattice, walls
from latsym.lattice import standard_model


def summarize(name, failures, budget, elapsed):
    status = "PASS" if not failures else "FAIL"
    print("%s %s (%.2fs of %ds budget)" % (status, name, elapsed, budget))
    for item in failures:
        print("  " + item)
    assert not failures, "%s: %d problem(s)" % (name, len(failures))
    assert elapsed < budget


def test_criterion_1_genus_regression():
    start = time.monotonic()
    failures = []
    model = standard_model()
    rows = fixtures.load_table()
    for row in rows:
        lat = lattice.build_named(row["invariant_expr"])
        computed = genus.canonical_string(genus.genus_symbol(lat))
        stated = genus.canonical_string(
            genus.canonicalize(genus.parse_genus(row["invariant_genus"])))
        if computed != stated:
            failures.append("row %d invariant: computed %s, table %s" % (
                row["no"], computed, stated))
    for row in rows:
        if 2 <= row["no"] <= 7:
            lat = lattice.build_named(row["coinvariant_expr"])
            computed = genus.canonical_string(genus.genus_symbol(lat))
            stated = genus.canonical_string(
                genus.canonicalize(genus.parse_genus(row["coinvariant_genus"])))
            if computed != stated:
                failures.append("row %d coinvariant: computed %s, table %s" % (
                    row["no"], computed, stated))
    summarize("genus regression over the class table", failures,
              60, time.monotonic() - start)


def test_criterion_2_discriminant_suite():
    start = time.monotonic()
    failures = []
    lam = standard_model().lattice
    mod = discform.discriminant_form(lam)
    if len(mod.elements()) != 256:
        failures.append("|D| = %d" % len(mod.elements()))
    kern, rad, r = discform.kernel_and_radical(mod)
    if kern.dim != 7:
        failures.append("kernel dim %d" % kern.dim)
    if rad.dim != 1:
        failures.append("radical dim %d" % rad.dim)
    if r is None or mod.q(r) != 1:
        failures.append("radical generator q != 1")
    grp = discform.full_reflection_group(mod)
    if grp.order() != 2903040:
        failures.append("reflection group order %d" % grp.order())
    if grp.order() != 2 * 1451520:
        failures.append("order is not twice 1451520")
    gamma = [x for x in mod.elements() if any(x) and mod.q(x) == 1]
    sizes = sorted(len(o) for o in grp.orbits(gamma))
    if sizes != [1, len(gamma) - 1]:
        failures.append("orbit sizes %s on %d elements" % (sizes, len(gamma)))
    summarize("discriminant group suite", failures,
              300, time.monotonic() - start)


def test_criterion_3_monodromy_evidence():
    start = time.monotonic()
    failures = []
    model = standard_model()
    lam = model.lattice

    for row in fixtures.load_orbit_table():
        v = row["vector"]
        if lam.square(v) != row["square"] or lam.divisibility(v) != row["div"]:
            failures.append("orbit %s: square %d div %d" % (
                row["label"], lam.square(v), lam.divisibility(v)))

    sample = cli.monodromy_sample(model)
    for v in sample:
        sq, dv = lam.square(v), lam.divisibility(v)
        if not (sq == -2 or (sq == -4 and dv == 2)):
            failures.append("sample vector outside the reflection set: %s" % v)
        if not isometry.in_O_plus(isometry.reflection(lam, v)):
            failures.append("reflection not in O+: %s" % v)

    mod = discform.discriminant_form(lam)
    images = [discform.induced_disc_isometry(
        lam, isometry.reflection(lam, v)) for v in sample]
    gen = discform.group_from_generators(
        [g for g in images if not g.is_identity])
    if gen.order() != 2903040:
        failures.append("generated order %d" % gen.order())

    _kern, _rad, r = discform.kernel_and_radical(mod)
    delta_refl = isometry.reflection(lam, model.named["a1_sum"])
    induced = discform.induced_disc_isometry(lam, delta_refl)
    if induced.matrix != discform.transvection(mod, r).matrix:
        failures.append("reflection in the diagonal class does not induce T_r")

    summarize("monodromy generation evidence", failures,
              300, time.monotonic() - start)


def test_criterion_4_exceptional_involution():
    start = time.monotonic()
    failures = []
    model = standard_model()
    rep = isometry.report(model, isometry.exceptional_involution(model))
    expected = {
        "order": 2,
        "disc_order": 1,
        "inv_genus": "II_(3,12)2^7_7",
        "coinv_genus": "II_(0,1)2^1_7",
        "symplectic": True,
        "regular": True,
        "exceptional": True,
        "table_row": 2,
    }
    for key, want in expected.items():
        got = getattr(rep, key)
        if got != want:
            failures.append("%s: %r != %r" % (key, got, want))
    summarize("exceptional involution end-to-end", failures,
              10, time.monotonic() - start)


def test_criterion_5_wall_falsification():
    start = time.monotonic()
    failures = []
    model = standard_model()
    lam = model.lattice

    root = model.named["e8_root"]
    refl = isometry.reflection(lam, root)
    symp, _reg, wit = isometry.symplectic_status(model, refl)
    if symp:
        failures.append("root reflection accepted as symplectic")
    pex2 = [w for w in wit if w.wclass == walls.PEX2]
    if len(pex2) != 1 or list(pex2[0].vector) not in (
            root, [-x for x in root]):
        failures.append("PEX2 witness is not the mirror root: %s" % pex2)

    neg = intmat.identity(16)
    neg[14][14] = -1
    neg[15][15] = -1
    f = isometry.make_isometry(lam, neg)
    symp, _reg, wit = isometry.symplectic_status(model, f)
    if symp:
        failures.append("-1 on the A1 pair accepted as symplectic")
    pex4 = [w for w in wit if w.wclass == walls.PEX4]
    if not pex4 or any(
            w.square != -4 or w.divisibility != 2 for w in pex4):
        failures.append("PEX4 witnesses wrong: %s" % pex4)

    summarize("wall falsification", failures, 10, time.monotonic() - start)


def test_criterion_6_enumeration_oracle():
    start = time.monotonic()
    failures = []

    if len(walls.short_vectors(lattice.root_E8(), -2)) != 120:
        failures.append("E8 root count")
    if walls.short_vectors(lattice.build_named("D4(2)"), -2) != []:
        failures.append("D4(2) has no square -2 vectors")

    def box_oracle(gram, n):
        dim = len(gram)
        inv = intmat.frac_inverse([[-x for x in row] for row in gram])
        bounds = []
        for i in range(dim):
            b = Fraction(-n) * inv[i][i]
            k = 0
            while (k + 1) * (k + 1) <= b:
                k += 1
            bounds.append(k)
        out = set()
        for x in itertools.product(*[range(-b, b + 1) for b in bounds]):
            if sum(x[i] * gram[i][j] * x[j]
                   for i in range(dim) for j in range(dim)) == n:
                lead = next(c for c in x if c)
                out.add(x if lead > 0 else tuple(-c for c in x))
        return sorted(out)

    cases = [
        (lattice.root_A(1).gram, -2),
        (lattice.root_A(2).gram, -2),
        (lattice.root_A(3).gram, -4),
        (lattice.root_D(4).gram, -2),
        (lattice.root_D(4).gram, -4),
        (lattice.build_named("D4(2)").gram, -4),
    ]
    for gram, n in cases:
        got = sorted(tuple(v) for v in walls.short_vectors(gram, n))
        if got != box_oracle(gram, n):
            failures.append("mismatch with box oracle on %s at %d" % (gram, n))

    summarize("short vector enumeration oracle", failures,
              30, time.monotonic() - start)


def test_criterion_7_genus_equality():
    start = time.monotonic()
    failures = []
    a = genus.genus_symbol(lattice.build_named("U(2)^3+E8+A1"))
    b = genus.genus_symbol(lattice.build_named("U^3+D8v(2)+A1"))
    if not genus.genus_equal(a, b):
        failures.append("the two row-2 constructions are not in one genus")
    for sym in (a, b):
        s = genus.canonical_string(sym)
        if s != "II_(3,12)2^7_7":
            failures.append("canonical string %s" % s)
    summarize("genus equality cross-check", failures,
              5, time.monotonic() - start)


def test_criterion_8_database_regression():
    db = os.environ.get(cli.DB_ENV)
    if not db or not os.path.isdir(db):
        pytest.skip("external data required (set %s)" % cli.DB_ENV)
    start = time.monotonic()
    failures = []
    model = standard_model()
    rows = {r["no"]: r for r in fixtures.load_table()}
    seen = {}
    fingerprints = {}
    paths = sorted(p for p in os.listdir(db) if p.endswith(".json"))
    for name in paths:
        with open(os.path.join(db, name)) as fh:
            f = isometry.isometry_from_json(json.load(fh))
        rep = isometry.report(model, f)
        if rep.table_row is None:
            failures.append("%s: not symplectic" % name)
            continue
        row = rows[rep.table_row]
        checks = (("order", rep.order, row["order"]),
                  ("disc_order", rep.disc_order, row["disc_order"]),
                  ("regular", rep.regular, bool(row["regular"])),
                  ("inv_genus", rep.inv_genus, genus.canonical_string(
                      genus.canonicalize(genus.parse_genus(row["invariant_genus"])))))
        for key, got, want in checks:
            if got != want:
                failures.append("%s: %s %r != table %r" % (name, key, got, want))
        seen.setdefault(rep.table_row, name)
        fp = (rep.table_row, rep.order, rep.disc_order,
              rep.coinv_genus, rep.regular)
        other = fingerprints.setdefault(rep.inv_genus, fp)
        if other != fp:
            failures.append("%s: fingerprint clash on %s" % (name, rep.inv_genus))
    if sorted(seen) != list(range(1, 33)):
        failures.append("rows covered: %s" % sorted(seen))
    regular = sum(1 for no in seen if rows[no]["regular"])
    if (regular, len(seen) - regular) != (21, 11):
        failures.append("regular split %d/%d" % (regular, len(seen) - regular))
    summarize("database regression", failures, 600, time.monotonic() - start)
