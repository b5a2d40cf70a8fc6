from teachlab import bounds, classical, johnson, teachers, tournaments
from teachlab.concepts import parse_class, serialize_class

HALF_INTERVALS = """\
# left half-intervals over [3]
n=3
000
100
110
111
011
001
"""


def main():
    k = parse_class(HALF_INTERVALS)

    report = classical.teaching_report(k)
    print(report.td_min, report.td_max)  # 2 2
    print(classical.rtd(k))  # equals classical.rtd_bruteforce(k)

    d, teacher = teachers.nctd(k)
    print(d)  # 1
    print(teachers.is_nc_teacher(teacher))  # True

    # The same class arises from the linear tournament on three players.
    g = tournaments.linear_tournament(3)
    print(tournaments.class2(g).same_concepts(k))  # True
    print(tournaments.recover_tournament(tournaments.class2(g), tournaments.canonical_teacher(g)) == g)  # True
    print(serialize_class(tournaments.class2(g)), end='')

    # Largest family of 2-subsets of [4] without a narrow triangle.
    value, witness = johnson.h_max(4, 2, 2)
    print(value, witness.member_lists())  # 4 ...

    print(bounds.bound_report(4, 2).serialize())
    # n=4
    # d=2
    # t=2
    # ksz=24
    # gub=64/3
    # ...


if __name__ == '__main__':
    main()
