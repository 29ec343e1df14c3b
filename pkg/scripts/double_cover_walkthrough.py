"""Walk one double cover through every layer of the library.

Starting from the standard chart N -> N, x -> 2x (the square-root
cover), this script classifies the chart, enumerates all covers of the
base point at annihilator 2, checks the cover correspondence, and then
compares sliced cover cohomology against the group cohomology of the
deck transformation group. Printed output is narrative; every claim is
also asserted, so the script doubles as a smoke check.
"""

from logchart import cohomology as co
from logchart import covers as cv
from logchart import monoid as mo
from logchart import morphism as mor
from logchart import zlattice as zl


def main() -> None:
    ambient = zl.free_ambient(1)
    base = mo.affine_monoid(ambient, ((1,),))
    u = mo.MonoidHom(base, base, ((2,),))

    print("chart: N -> N, x -> 2x")
    cls = mor.chart_classification(u, residue_characteristic=3)
    print(
        f"  injective={cls.injective} exact={cls.exact} "
        f"kummer={cls.kummer} kummer_etale={cls.kummer_etale} (char 3)"
    )
    assert cls.kummer and cls.kummer_etale
    group = cls.galois_group
    print(f"  deck group: invariant factors {group.invariant_factors}")
    assert group.invariant_factors == (2,)

    print(f"  ramification index: {mor.ramification_index(u)}")
    assert mor.ramification_index(u) == 2

    wild = mor.chart_classification(u, residue_characteristic=2)
    print(f"  at residue characteristic 2: kummer_etale={wild.kummer_etale}")
    assert not wild.kummer_etale

    print("covers of the base point at annihilator 2:")
    pt = cv.LogPoint(base, frozenset())
    covers = cv.classify_covers(pt, 2)
    for c in covers:
        print(
            f"  lattice rows {c.lattice_rows} "
            f"deck group of order {c.galois_group.order}"
        )
    assert [c.galois_group.order for c in covers] == [1, 2]

    report = cv.galois_correspondence_check(pt, 2)
    matched = sum(1 for p in report.pairs if p[4])
    print(
        f"  correspondence: {matched}/{len(report.pairs)} "
        f"map counts agree with the equivariant side"
    )
    assert report.all_match

    print("cohomology of the double cover over F_3:")
    comparison = co.cech_vs_group_cohomology(u, 3, 2, bound=4)
    print(f"  group side H^i(Z/2, F_3): {comparison.group_dimensions}")
    print(f"  sheaf side, trivial class: {comparison.normalized}")
    print(f"  match: {comparison.match}")
    assert comparison.match
    assert comparison.group_dimensions == (1, 0, 0)

    wild_group = co.finite_group_cohomology(group, 2, 4)
    print(f"  for contrast H^i(Z/2, F_2): {wild_group} (no vanishing)")
    assert wild_group == (1, 1, 1, 1, 1)

    print("all claims verified.")


if __name__ == "__main__":
    main()
