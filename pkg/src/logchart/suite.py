"""Acceptance battery: eight criteria with self-contained oracles.

Each criterion is a function returning a CriterionResult; ``run_suite``
drives them in a fixed order, times each, and aggregates a SuiteReport.
The oracles here are deliberately written apart from the core modules:
integer work uses fraction-free Bareiss determinants and gcd-pivot
echelon forms of their own, saturation membership is decided from the
defining property (some positive multiple is a generator sum, with the
multiple set certified by Cramer denominators), cone membership is an
exact basic-subset feasibility test, and subgroup enumeration is a
closure search.  Agreement between two unrelated computations is the
evidence the battery collects.

Two scales share the code: "smoke" trims instance counts and truncation
depths to finish within half a minute, "full" runs the complete battery.
Both are deterministic for a fixed seed.  ``fault`` injects a deliberate
corruption (currently of the saturation routine) so the battery's
sensitivity can be demonstrated end to end; a healthy build passes, a
corrupted one must fail with the offending instance attached.

LOGCHART_THREADS is read and echoed in every report.  Criteria are
independent and could run in parallel; execution stays sequential so
reports stay reproducible word for word.
"""

from __future__ import annotations

import itertools
import math
import os
import random
import time
import zlib
from dataclasses import dataclass

from . import cohomology as co
from . import covers as cv
from . import monoid as mo
from . import morphism as mor
from . import zlattice as zl

DEFAULT_SEED = 20250819

SCALES = {
    "smoke": dict(
        saturation_instances=16,
        saturation_radius=5,
        kummer_instances=20,
        exactness_box=4,
        product_folds=(2,),
        cech_box=6,
        cech_compare_box=3,
        cech_length_cap=3,
        cech_volume_cap=240,
        normal_form_instances=80,
        normal_form_size=4,
        normal_form_entry=8,
        polydisc_max_n=3,
    ),
    "full": dict(
        saturation_instances=200,
        saturation_radius=8,
        kummer_instances=100,
        exactness_box=5,
        product_folds=(2, 3),
        cech_box=12,
        cech_compare_box=6,
        cech_length_cap=6,
        cech_volume_cap=1500,
        normal_form_instances=500,
        normal_form_size=5,
        normal_form_entry=10,
        polydisc_max_n=4,
    ),
}


# ---------------------------------------------------------------------------
# Own integer linear algebra, kept apart from the zlattice module.


def _own_det(rows) -> int:
    """Fraction-free Bareiss determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _own_echelon(rows, dim):
    """Gcd-pivot integer echelon basis of the row lattice (list of rows)."""
    work = [list(r) for r in rows if any(r)]
    basis = []
    col = 0
    while col < dim and work:
        holders = [r for r in work if r[col]]
        if not holders:
            col += 1
            continue
        while True:
            holders.sort(key=lambda r: abs(r[col]))
            pivot = holders[0]
            done = True
            for r in holders[1:]:
                q = r[col] // pivot[col]
                for j in range(dim):
                    r[j] -= q * pivot[j]
                if r[col]:
                    done = False
            holders = [r for r in holders if r[col]]
            if done or len(holders) == 1:
                break
        pivot = holders[0]
        if pivot[col] < 0:
            for j in range(dim):
                pivot[j] = -pivot[j]
        basis.append(pivot)
        work = [r for r in work if any(r) and r is not pivot and not r[col]]
        col += 1
    return basis


def _own_lattice_member(basis, v) -> bool:
    """Does v lie in the lattice spanned by an echelon ``basis``?"""
    r = list(v)
    dim = len(v)
    for row in basis:
        col = next(j for j in range(dim) if row[j])
        if r[col] % row[col]:
            return False
        q = r[col] // row[col]
        for j in range(dim):
            r[j] -= q * row[j]
    return not any(r)


def _own_matmul(a, b):
    if not a:
        return ()
    inner = len(b)
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(
            sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)
        )
        for i in range(len(a))
    )


# ---------------------------------------------------------------------------
# Saturation oracle: membership from the defining property.


def _positive_functional(gens, dim, bound=6):
    for f in itertools.product(range(-bound, bound + 1), repeat=dim):
        if all(sum(a * b for a, b in zip(f, g)) >= 1 for g in gens):
            return f
    return None


def _descent_member(gens, f, target, memo, budget=None):
    """Memoized search: is target a sum of generators?

    The functional f is at least 1 on every generator, so subtracting a
    generator strictly drops f and the search space under any target is
    finite.  ``memo`` persists across queries of one instance.  With a
    ``budget`` the search gives up after that many expansions and returns
    None; entries already memoized stay valid either way.
    """
    dim = len(target)
    zero = (0,) * dim
    fval = {g: sum(a * b for a, b in zip(f, g)) for g in gens}
    order = sorted(gens, key=lambda g: -fval[g])
    steps = 0
    stack = [tuple(target)]
    while stack:
        if budget is not None:
            steps += 1
            if steps > budget:
                return None
        v = stack[-1]
        if v in memo:
            stack.pop()
            continue
        if v == zero:
            memo[v] = True
            stack.pop()
            continue
        fv = sum(a * b for a, b in zip(f, v))
        found = False
        pending = []
        for g in order:
            if fval[g] > fv:
                continue
            w = tuple(a - b for a, b in zip(v, g))
            known = memo.get(w)
            if known is True:
                found = True
                break
            if known is None:
                pending.append(w)
        if found:
            memo[v] = True
            stack.pop()
        elif pending:
            stack.extend(reversed(pending))
        else:
            memo[v] = False
            stack.pop()
    return memo[tuple(target)]


def _basic_subsets(gens, dim):
    """Cramer data for exact rational cone membership.

    Every point of the cone has a basic representation supported on a
    linearly independent generator subset; for each such subset s and
    each choice of |s| coordinate columns with nonzero minor, the
    candidate coefficients are integer adjugate combinations divided by
    that minor.  Feasibility of any one (subset, columns) pair certifies
    cone membership; infeasibility of all of them refutes it.
    """
    out = []
    indices = range(len(gens))
    for r in range(1, min(dim, len(gens)) + 1):
        for subset in itertools.combinations(indices, r):
            rows = [gens[i] for i in subset]
            for cols in itertools.combinations(range(dim), r):
                sq = [[rows[i][c] for i in range(r)] for c in cols]
                det = _own_det(sq)
                if det == 0:
                    continue
                adj = [
                    [
                        ((-1) ** (i + j))
                        * _own_det(
                            [
                                [sq[ii][jj] for jj in range(r) if jj != i]
                                for ii in range(r)
                                if ii != j
                            ]
                        )
                        for j in range(r)
                    ]
                    for i in range(r)
                ]
                out.append((rows, cols, adj, det))
    return out


def _cone_member(basics, x, dim):
    """Exact rational cone test, returning a witness scale or None.

    A returned scale s > 0 certifies that s*x is a nonnegative integer
    combination of the generators, so s is a valid saturation multiple.
    """
    if not any(x):
        return 1
    for rows, cols, adj, det in basics:
        r = len(rows)
        lam = [
            sum(adj[i][j] * x[cols[j]] for j in range(r)) for i in range(r)
        ]
        if det < 0:
            lam = [-c for c in lam]
        if any(c < 0 for c in lam):
            continue
        scale = abs(det)
        if all(
            sum(lam[i] * rows[i][j] for i in range(r)) == scale * x[j]
            for j in range(dim)
        ):
            return scale
    return None


def _saturation_oracle_box(m, radius, quick_budget=1500):
    """Saturation membership on a coordinate box, from first principles.

    Returns (members, multiples, functional, is_member): the box points
    of the saturation, a witness multiple per member with k*x a
    nonnegative integer generator combination, the positive functional,
    and a memoized membership test valid for arbitrary points, not just
    the box.  Lattice membership uses an own echelon basis; the cone
    test produces integer Cramer coefficients, so a positive verdict
    carries an explicit combination equal to scale*x and the defining
    multiple needs no search.  A budgeted descent still tries the
    multiple one so the witness statistics stay informative.
    """
    dim = m.ambient.free_rank
    gens = [tuple(g) for g in m.gens]
    f = _positive_functional(gens, dim)
    if f is None:
        return None
    basis = _own_echelon(gens, dim)
    basics = _basic_subsets(gens, dim)
    memo = {}
    extended = {}

    def is_member(v):
        known = extended.get(v)
        if known is None:
            known = (
                sum(a * b for a, b in zip(f, v)) >= 0
                and _own_lattice_member(basis, v)
                and _cone_member(basics, v, dim) is not None
            )
            extended[v] = known
        return known

    members = set()
    multiples = {}
    for x in itertools.product(range(-radius, radius + 1), repeat=dim):
        if sum(a * b for a, b in zip(f, x)) < 0:
            continue
        if not _own_lattice_member(basis, x):
            continue
        scale = _cone_member(basics, x, dim)
        if scale is None:
            continue
        if _descent_member(gens, f, x, memo, budget=quick_budget) is True:
            witness = 1
        else:
            witness = scale
        members.add(x)
        multiples[x] = witness
    return members, multiples, f, is_member


def _faulty_saturate(m):
    """Deliberately corrupted saturation, for fault injection runs."""
    s = mo.saturate(m)
    if len(s.gens) >= 2:
        return mo.affine_monoid(s.ambient, s.gens[:-1])
    doubled = tuple(tuple(2 * c for c in g) for g in s.gens)
    return mo.affine_monoid(s.ambient, doubled)


# ---------------------------------------------------------------------------
# Subgroup oracle: closure search in (Z/n)^r.


def _closure(seed_elems, n, r):
    group = {(0,) * r}
    frontier = list(seed_elems)
    while frontier:
        x = frontier.pop()
        if x in group:
            continue
        group.add(x)
        for y in list(group):
            z = tuple((a + b) % n for a, b in zip(x, y))
            if z not in group:
                frontier.append(z)
    return frozenset(group)


def _all_subgroups(n, r):
    elements = list(itertools.product(range(n), repeat=r))
    found = {_closure([], n, r)}
    frontier = [_closure([], n, r)]
    while frontier:
        g = frontier.pop()
        for x in elements:
            if x in g:
                continue
            h = _closure(set(g) | {x}, n, r)
            if h not in found:
                found.add(h)
                frontier.append(h)
    return found


# ---------------------------------------------------------------------------
# Shared instance builders.


def _free_monoid(r):
    amb = zl.free_ambient(r)
    gens = tuple(
        tuple(1 if j == i else 0 for j in range(r)) for i in range(r)
    )
    return mo.affine_monoid(amb, gens)


def _scaling_hom(r, factors):
    p = _free_monoid(r)
    images = tuple(
        tuple(factors[i] if j == i else 0 for j in range(r))
        for i in range(r)
    )
    return mo.MonoidHom(p, p, images)


def _wedge_refinement():
    amb = zl.free_ambient(2)
    wedge = mo.affine_monoid(amb, ((1, 0), (1, 1), (1, 2)))
    _, inclusion = mo.fractional_refinement(wedge, 2)
    return inclusion


def standard_catalog():
    """The standard covers the battery exercises throughout.

    Scalings [n] on one coordinate for 2 <= n <= 6, the mixed scaling
    diag(2, 3) in rank two, and the square-root refinement of the wedge
    monoid <(1,0), (1,1), (1,2)>.
    """
    entries = []
    for n in range(2, 7):
        entries.append((f"scaling-{n}", _scaling_hom(1, (n,)), (n,)))
    entries.append(("diag-2-3", _scaling_hom(2, (2, 3)), (6,)))
    entries.append(("wedge-sqrt", _wedge_refinement(), (2, 2)))
    return entries


def _sub_rng(seed, name):
    return random.Random(seed ^ zlib.crc32(name.encode("utf-8")))


# ---------------------------------------------------------------------------
# Results plumbing.


@dataclass
class CriterionResult:
    name: str
    passed: bool
    seconds: float
    detail: str
    counterexample: dict | None = None


@dataclass
class SuiteReport:
    scale: str
    seed: int
    threads: int
    fault: str | None
    results: tuple
    passed: bool

    def payload(self):
        """JSON-ready summary; timings stay out so reports reproduce."""
        return {
            "scale": self.scale,
            "seed": str(self.seed),
            "threads": str(self.threads),
            "fault": self.fault or "",
            "passed": self.passed,
            "criteria": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                    "counterexample": r.counterexample or {},
                }
                for r in self.results
            ],
        }


def _monoid_payload(m):
    return {
        "free_rank": str(m.ambient.free_rank),
        "torsion": [str(t) for t in m.ambient.torsion],
        "generators": [[str(c) for c in g] for g in m.gens],
    }


# ---------------------------------------------------------------------------
# Criterion: saturation against the box oracle.


def criterion_saturation(rng, cfg, hooks):
    saturate = hooks.get("saturate", mo.saturate)
    radius = cfg["saturation_radius"]
    wanted = cfg["saturation_instances"]
    checked = 0
    attempts = 0
    escalated = 0
    while checked < wanted:
        attempts += 1
        if attempts > wanted * 40:
            return CriterionResult(
                "saturation-oracle",
                False,
                0.0,
                "instance generation starved",
            )
        dim = rng.randint(1, 3)
        ngens = rng.randint(1, 5)
        gens = tuple(
            tuple(rng.randint(-4, 4) for _ in range(dim))
            for _ in range(ngens)
        )
        m = mo.affine_monoid(zl.free_ambient(dim), gens)
        if not m.gens:
            continue
        if _positive_functional([tuple(g) for g in m.gens], dim) is None:
            continue
        members, multiples, f, is_member = _saturation_oracle_box(m, radius)
        if any(k > 1 for k in multiples.values()):
            escalated += 1
        s = saturate(m)
        box = itertools.product(range(-radius, radius + 1), repeat=dim)
        for x in box:
            lib = mo.membership(s, x) is not None
            if lib != (x in members):
                return CriterionResult(
                    "saturation-oracle",
                    False,
                    0.0,
                    f"membership mismatch on instance {checked}",
                    {
                        "monoid": _monoid_payload(m),
                        "point": [str(c) for c in x],
                        "library_member": lib,
                        "oracle_member": x in members,
                    },
                )
        zero = (0,) * dim

        def fval(v):
            return sum(a * b for a, b in zip(f, v))

        lib_gens = {tuple(g) for g in s.gens}
        for g in lib_gens:
            if not is_member(g):
                return CriterionResult(
                    "saturation-oracle",
                    False,
                    0.0,
                    f"library generator outside the saturation on "
                    f"instance {checked}",
                    {
                        "monoid": _monoid_payload(m),
                        "point": [str(c) for c in g],
                    },
                )
        by_f = sorted(members - {zero}, key=fval)
        gens_by_f = sorted(lib_gens, key=fval)
        for g in gens_by_f:
            bound = fval(g)
            for y in by_f:
                if fval(y) >= bound:
                    break
                z = tuple(a - b for a, b in zip(g, y))
                if z in members or is_member(z):
                    return CriterionResult(
                        "saturation-oracle",
                        False,
                        0.0,
                        f"library generator decomposes on instance {checked}",
                        {
                            "monoid": _monoid_payload(m),
                            "point": [str(c) for c in g],
                            "summand": [str(c) for c in y],
                        },
                    )
        for x in by_f:
            if x in lib_gens:
                continue
            bound = fval(x)
            reduced = False
            for g in gens_by_f:
                if fval(g) >= bound:
                    break
                rest = tuple(a - b for a, b in zip(x, g))
                if rest in members or is_member(rest):
                    reduced = True
                    break
            if not reduced:
                return CriterionResult(
                    "saturation-oracle",
                    False,
                    0.0,
                    f"point not generated through the reported basis on "
                    f"instance {checked}",
                    {
                        "monoid": _monoid_payload(m),
                        "point": [str(c) for c in x],
                    },
                )
        checked += 1
    detail = (
        f"{checked} instances agree on box radius {radius}; "
        f"{escalated} needed a certified multiple beyond one"
    )
    return CriterionResult("saturation-oracle", True, 0.0, detail)


# ---------------------------------------------------------------------------
# Criterion: the Kummer property against exactness plus finite cokernel.


def _random_square_hom(rng):
    r = rng.randint(1, 3)
    while True:
        matrix = [
            [rng.randint(0, 3) for _ in range(r)] for _ in range(r)
        ]
        if _own_det(matrix) != 0:
            break
    p = _free_monoid(r)
    images = tuple(
        tuple(matrix[j][i] for j in range(r)) for i in range(r)
    )
    return mo.MonoidHom(p, p, images), abs(_own_det(matrix))


def _coordinate_inclusion(rng):
    r = rng.randint(1, 2)
    big = rng.randint(r + 1, 3)
    p = _free_monoid(r)
    q = _free_monoid(big)
    images = tuple(
        tuple(1 if j == i else 0 for j in range(big)) for i in range(r)
    )
    return mo.MonoidHom(p, q, images)


def _image_box_exactness(u, box) -> tuple:
    """Independent box search for exactness counterexamples.

    A violation is a nonnegative ambient point of the codomain lying in
    the group of the image but not in the image monoid; membership on
    both sides is decided by own echelon and descent search.
    """
    dim = u.codomain.ambient.free_rank
    images = [tuple(g) for g in u.gen_images]
    f = tuple(1 for _ in range(dim))
    if not all(sum(g) >= 1 for g in images):
        return ()
    basis = _own_echelon(images, dim)
    memo = {}
    for x in itertools.product(range(box + 1), repeat=dim):
        if not any(x):
            continue
        if not _own_lattice_member(basis, x):
            continue
        if not _descent_member(images, f, x, memo):
            return x
    return None


def criterion_kummer(rng, cfg, hooks):
    total = cfg["kummer_instances"]
    box = cfg["exactness_box"]
    square = 0
    for i in range(total):
        if i % 5 == 4:
            u = _coordinate_inclusion(rng)
            det = None
        else:
            u, det = _random_square_hom(rng)
            square += 1
        kummer, group = mor.is_kummer(u)
        exact, _ = mor.is_exact(u)
        h = mo.tight_group_hom(u)
        cok = zl.hom_cokernel(h)
        finite = cok.group.free_rank == 0
        if kummer != (exact and finite):
            return CriterionResult(
                "kummer-equivalence",
                False,
                0.0,
                f"equivalence broken on instance {i}",
                {
                    "images": [[str(c) for c in g] for g in u.gen_images],
                    "kummer": kummer,
                    "exact": exact,
                    "finite_cokernel": finite,
                },
            )
        if det is not None and finite:
            order = zl.FiniteAbelianGroup(cok.group.torsion).order
            if order != det:
                return CriterionResult(
                    "kummer-equivalence",
                    False,
                    0.0,
                    f"cokernel order disagrees with the determinant on {i}",
                    {
                        "images": [
                            [str(c) for c in g] for g in u.gen_images
                        ],
                        "order": str(order),
                        "determinant": str(det),
                    },
                )
        if kummer and group.order != zl.FiniteAbelianGroup(
            cok.group.torsion
        ).order:
            return CriterionResult(
                "kummer-equivalence",
                False,
                0.0,
                f"reported group order disagrees on instance {i}",
            )
        if i % 4 == 0:
            witness = _image_box_exactness(u, box)
            if witness not in ((), None) and exact:
                return CriterionResult(
                    "kummer-equivalence",
                    False,
                    0.0,
                    f"box exactness witness against an exact verdict on {i}",
                    {
                        "images": [
                            [str(c) for c in g] for g in u.gen_images
                        ],
                        "point": [str(c) for c in witness],
                    },
                )
    detail = (
        f"{total} instances consistent ({square} square with determinant "
        f"cross-check, box sweep to {box})"
    )
    return CriterionResult("kummer-equivalence", True, 0.0, detail)


# ---------------------------------------------------------------------------
# Criterion: self products decompose as monoid times deck group.


def criterion_standard_cover(rng, cfg, hooks):
    folds = cfg["product_folds"]
    count = 0
    for name, u, invariants in standard_catalog():
        ok, group = mor.is_kummer(u)
        if not ok or group.invariant_factors != tuple(invariants):
            return CriterionResult(
                "standard-cover-identity",
                False,
                0.0,
                f"{name}: deck group mismatch",
                {"expected": [str(d) for d in invariants]},
            )
        for j in folds:
            sp = mor.self_product_decomposition(u, j)
            if sp.galois_group.invariant_factors != tuple(invariants):
                return CriterionResult(
                    "standard-cover-identity",
                    False,
                    0.0,
                    f"{name}: decomposition group mismatch at {j} factors",
                )
            torsion_order = zl.FiniteAbelianGroup(
                sp.target.ambient.torsion
            ).order
            if torsion_order != group.order ** (j - 1):
                return CriterionResult(
                    "standard-cover-identity",
                    False,
                    0.0,
                    f"{name}: target torsion is not {j - 1} deck copies",
                )
            count += 1
    detail = f"{count} certified decompositions across the catalog"
    return CriterionResult("standard-cover-identity", True, 0.0, detail)


# ---------------------------------------------------------------------------
# Criterion: degreewise exactness of the cover complexes.


def _smallest_coprime_prime(order):
    p = 2
    while True:
        if order % p:
            for q in range(2, p):
                if p % q == 0:
                    break
            else:
                return p
        p += 1


def _length_for(order, cfg):
    cap = cfg["cech_length_cap"]
    volume = cfg["cech_volume_cap"]
    length = 2
    while length + 1 <= cap and order ** (length + 1) <= volume:
        length += 1
    return length


def criterion_cech(rng, cfg, hooks):
    box = cfg["cech_box"]
    compare_box = cfg["cech_compare_box"]
    slices = 0
    degrees = 0
    for name, u, invariants in standard_catalog():
        group = co.cover_galois_group(u)
        ell = _smallest_coprime_prime(group.order)
        length = _length_for(group.order, cfg)
        rank = u.codomain.ambient.free_rank
        h = mo.tight_group_hom(u)
        dom_tc = mo.tight_coordinates(u.domain)
        cod_tc = mo.tight_coordinates(u.codomain)
        zero_class = co.cover_residue_class(u, (0,) * rank)
        reps = {}
        second = {}
        group_dims = co.finite_group_cohomology(group, ell, length - 1)
        if group_dims != (1,) + (0,) * (length - 1):
            return CriterionResult(
                "cech-exactness",
                False,
                0.0,
                f"{name}: coprime group cohomology is not a point",
            )
        for q in itertools.product(range(-box, box + 1), repeat=rank):
            if mo.membership(u.codomain, q) is None:
                continue
            degrees += 1
            cls = co.cover_residue_class(u, q)
            lift = zl.hom_preimage(h, cod_tc.to_tight(q))
            direct_aug = 1 if (
                lift is not None
                and mo.membership(dom_tc.monoid, lift) is not None
            ) else 0
            if direct_aug != (1 if cls == zero_class else 0):
                return CriterionResult(
                    "cech-exactness",
                    False,
                    0.0,
                    f"{name}: augmentation disagrees with the class at {q}",
                    {"degree": [str(c) for c in q]},
                )
            if cls not in reps:
                sl = co.cech_complex_degreewise(u, ell, q, length)
                expected = (direct_aug,) + (0,) * (length - 1)
                if sl.cohomology != expected:
                    return CriterionResult(
                        "cech-exactness",
                        False,
                        0.0,
                        f"{name}: inexact slice at {q}",
                        {
                            "degree": [str(c) for c in q],
                            "cohomology": [str(d) for d in sl.cohomology],
                        },
                    )
                reps[cls] = (q, sl.augmentation_dimension, sl.complex)
                slices += 1
            elif cls not in second:
                aug, cx = co.cech_slice_data(u, ell, q, length)
                _, raug, rcx = reps[cls]
                if aug != raug or cx != rcx:
                    return CriterionResult(
                        "cech-exactness",
                        False,
                        0.0,
                        f"{name}: slice at {q} differs from its class",
                        {"degree": [str(c) for c in q]},
                    )
                second[cls] = q
                slices += 1
            elif all(abs(c) <= compare_box for c in q):
                aug, cx = co.cech_slice_data(u, ell, q, 2)
                _, raug, rcx = reps[cls]
                if aug != raug or cx.dims != rcx.dims[:3] or tuple(
                    cx.differentials
                ) != tuple(rcx.differentials[:2]):
                    return CriterionResult(
                        "cech-exactness",
                        False,
                        0.0,
                        f"{name}: truncated slice at {q} differs",
                        {"degree": [str(c) for c in q]},
                    )
        if len(reps) != group.order:
            return CriterionResult(
                "cech-exactness",
                False,
                0.0,
                f"{name}: only {len(reps)} of {group.order} classes appear",
            )
        trivial = reps[zero_class]
        if trivial[1] != 1:
            return CriterionResult(
                "cech-exactness",
                False,
                0.0,
                f"{name}: trivial class lost its augmentation",
            )
        outside = tuple(-1 for _ in range(rank))
        if mo.membership(u.codomain, outside) is None:
            aug, cx = co.cech_slice_data(u, ell, outside, 2)
            if aug or any(cx.dims):
                return CriterionResult(
                    "cech-exactness",
                    False,
                    0.0,
                    f"{name}: nonmember degree got a nonzero slice",
                )
    detail = (
        f"{degrees} degrees over the catalog, {slices} slices built, "
        f"box {box}"
    )
    return CriterionResult("cech-exactness", True, 0.0, detail)


# ---------------------------------------------------------------------------
# Criterion: cover classification against the subgroup oracle.


def criterion_covers(rng, cfg, hooks):
    cases = [
        (cv.LogPoint(_free_monoid(1)), 2, 2),
        (cv.LogPoint(_free_monoid(2)), 2, 5),
        (cv.LogPoint(_free_monoid(1)), 6, 4),
    ]
    for pt, n, expected in cases:
        found = cv.classify_covers(pt, n)
        oracle = _all_subgroups(n, pt.rank)
        if len(found) != expected or len(oracle) != expected:
            return CriterionResult(
                "cover-classification",
                False,
                0.0,
                f"count mismatch at rank {pt.rank}, annihilator {n}: "
                f"{len(found)} classified, {len(oracle)} enumerated",
            )
        cover_sets = set()
        for cover in found:
            elems = frozenset(
                x
                for x in itertools.product(range(n), repeat=pt.rank)
                if zl.row_lattice_member(
                    zl.mat(cover.lattice_rows), x, pt.rank
                )
                is not None
            )
            cover_sets.add(elems)
        if cover_sets != oracle:
            return CriterionResult(
                "cover-classification",
                False,
                0.0,
                f"subgroup sets differ at rank {pt.rank}, annihilator {n}",
            )
        report = cv.galois_correspondence_check(pt, n)
        expected_pairs = expected * expected
        if len(report.pairs) != expected_pairs or not report.all_match:
            bad = [p for p in report.pairs if not p[4]]
            return CriterionResult(
                "cover-classification",
                False,
                0.0,
                f"correspondence failed at rank {pt.rank}, annihilator {n}",
                {"pairs": [[str(c) for c in p[:4]] for p in bad[:3]]},
            )
    detail = "counts 2, 5, 4 and 4 + 25 + 16 correspondence pairs verified"
    return CriterionResult("cover-classification", True, 0.0, detail)


# ---------------------------------------------------------------------------
# Criterion: polydisc dimensions are binomial rows.


def criterion_polydisc(rng, cfg, hooks):
    max_n = cfg["polydisc_max_n"]
    rows = 0
    for level in (2, 6):
        ell, _ = co.smallest_field_with_level(level)
        for n in range(1, max_n + 1):
            dims = co.polydisc_cohomology(n, level)
            expected = tuple(math.comb(n, i) for i in range(n + 1))
            if dims != expected:
                return CriterionResult(
                    "polydisc-binomials",
                    False,
                    0.0,
                    f"dimensions at n={n}, level={level} are {dims}",
                    {
                        "n": str(n),
                        "level": str(level),
                        "characteristic": str(ell),
                    },
                )
            rows += 1
    detail = f"{rows} binomial rows, levels 2 and 6, n up to {max_n}"
    return CriterionResult("polydisc-binomials", True, 0.0, detail)


# ---------------------------------------------------------------------------
# Criterion: normal forms on random matrices.


def _minor_gcd(rows, k):
    m, n = len(rows), len(rows[0])
    g = 0
    for ri in itertools.combinations(range(m), k):
        for ci in itertools.combinations(range(n), k):
            sub = [[rows[i][j] for j in ci] for i in ri]
            g = math.gcd(g, abs(_own_det(sub)))
    return g


def criterion_normal_forms(rng, cfg, hooks):
    total = cfg["normal_form_instances"]
    size = cfg["normal_form_size"]
    entry = cfg["normal_form_entry"]
    for i in range(total):
        m = rng.randint(1, size)
        n = rng.randint(1, size)
        rows = tuple(
            tuple(rng.randint(-entry, entry) for _ in range(n))
            for _ in range(m)
        )
        sd = zl.smith_normal_form(zl.mat(rows), ncols=n)
        product = _own_matmul(_own_matmul(sd.lhs, rows), sd.rhs)
        if product != sd.diag:
            return CriterionResult(
                "normal-form-randomized",
                False,
                0.0,
                f"transforms fail to diagonalize instance {i}",
                {"matrix": [[str(c) for c in r] for r in rows]},
            )
        if abs(_own_det(sd.lhs)) != 1 or abs(_own_det(sd.rhs)) != 1:
            return CriterionResult(
                "normal-form-randomized",
                False,
                0.0,
                f"non-unimodular transform on instance {i}",
                {"matrix": [[str(c) for c in r] for r in rows]},
            )
        factors = sd.invariant_factors
        for a, b in zip(factors, factors[1:]):
            if a <= 0 or b % a:
                return CriterionResult(
                    "normal-form-randomized",
                    False,
                    0.0,
                    f"divisibility chain broken on instance {i}",
                    {"factors": [str(d) for d in factors]},
                )
        prod = 1
        for k in range(1, min(m, n) + 1):
            gk = _minor_gcd(rows, k)
            if k <= len(factors):
                prod *= factors[k - 1]
                if gk != prod:
                    return CriterionResult(
                        "normal-form-randomized",
                        False,
                        0.0,
                        f"minor gcd identity broken on instance {i} at {k}",
                        {"matrix": [[str(c) for c in r] for r in rows]},
                    )
            elif gk != 0:
                return CriterionResult(
                    "normal-form-randomized",
                    False,
                    0.0,
                    f"rank disagrees with minors on instance {i} at {k}",
                    {"matrix": [[str(c) for c in r] for r in rows]},
                )
        hnf = zl.hermite_normal_form(zl.mat(rows), ncols=n)
        prev = -1
        for row in hnf:
            pivot_col = next(j for j in range(n) if row[j])
            if pivot_col <= prev or row[pivot_col] <= 0:
                return CriterionResult(
                    "normal-form-randomized",
                    False,
                    0.0,
                    f"echelon shape broken on instance {i}",
                    {"matrix": [[str(c) for c in r] for r in rows]},
                )
            prev = pivot_col
        basis_a = _own_echelon(rows, n)
        for row in hnf:
            if not _own_lattice_member(basis_a, row):
                return CriterionResult(
                    "normal-form-randomized",
                    False,
                    0.0,
                    f"normal form row leaves the lattice on instance {i}",
                    {"matrix": [[str(c) for c in r] for r in rows]},
                )
        basis_h = _own_echelon(hnf, n)
        for row in rows:
            if any(row) and not _own_lattice_member(basis_h, row):
                return CriterionResult(
                    "normal-form-randomized",
                    False,
                    0.0,
                    f"normal form drops a row on instance {i}",
                    {"matrix": [[str(c) for c in r] for r in rows]},
                )
    detail = (
        f"{total} matrices to size {size} with entries to {entry}: "
        "transforms, chains, minors, and lattices agree"
    )
    return CriterionResult("normal-form-randomized", True, 0.0, detail)


# ---------------------------------------------------------------------------
# Criterion: ramification across the catalog.


def criterion_ramification(rng, cfg, hooks):
    expected = {f"scaling-{n}": n for n in range(2, 7)}
    expected["diag-2-3"] = 6
    expected["wedge-sqrt"] = 2
    for name, u, invariants in standard_catalog():
        idx = mor.ramification_index(u)
        if idx != expected[name]:
            return CriterionResult(
                "ramification-catalog",
                False,
                0.0,
                f"{name}: index {idx}, expected {expected[name]}",
            )
        _, group = mor.is_kummer(u)
        if (idx == 1) != group.is_trivial():
            return CriterionResult(
                "ramification-catalog",
                False,
                0.0,
                f"{name}: index one does not track a trivial group",
            )
    for r in (1, 2):
        ident = mo.identity_hom(_free_monoid(r))
        if mor.ramification_index(ident) != 1:
            return CriterionResult(
                "ramification-catalog",
                False,
                0.0,
                f"identity in rank {r} has nontrivial index",
            )
    for i in range(10):
        u, _ = _random_square_hom(rng)
        ok, group = mor.is_kummer(u)
        if not ok:
            continue
        if (mor.ramification_index(u) == 1) != group.is_trivial():
            return CriterionResult(
                "ramification-catalog",
                False,
                0.0,
                f"random instance {i} breaks the triviality equivalence",
            )
    detail = "catalog indices 2..6, 6, 2 and identity index 1 verified"
    return CriterionResult("ramification-catalog", True, 0.0, detail)


CRITERIA = (
    ("saturation-oracle", criterion_saturation),
    ("kummer-equivalence", criterion_kummer),
    ("standard-cover-identity", criterion_standard_cover),
    ("cech-exactness", criterion_cech),
    ("cover-classification", criterion_covers),
    ("polydisc-binomials", criterion_polydisc),
    ("normal-form-randomized", criterion_normal_forms),
    ("ramification-catalog", criterion_ramification),
)


def thread_budget() -> int:
    raw = os.environ.get("LOGCHART_THREADS", "")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def run_suite(
    scale: str = "full",
    seed: int = DEFAULT_SEED,
    fault: str | None = None,
    only: tuple = (),
) -> SuiteReport:
    """Run the battery at a scale; ``only`` restricts to named criteria."""
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}")
    if fault not in (None, "saturation"):
        raise ValueError(f"unknown fault {fault!r}")
    cfg = SCALES[scale]
    hooks = {}
    if fault == "saturation":
        hooks["saturate"] = _faulty_saturate
    results = []
    for name, fn in CRITERIA:
        if only and name not in only:
            continue
        rng = _sub_rng(seed, name)
        start = time.perf_counter()
        try:
            result = fn(rng, cfg, hooks)
        except Exception as exc:  # noqa: BLE001 - the report carries it
            result = CriterionResult(
                name, False, 0.0, f"raised {type(exc).__name__}: {exc}"
            )
        result.seconds = time.perf_counter() - start
        results.append(result)
    return SuiteReport(
        scale=scale,
        seed=seed,
        threads=thread_budget(),
        fault=fault,
        results=tuple(results),
        passed=all(r.passed for r in results),
    )
