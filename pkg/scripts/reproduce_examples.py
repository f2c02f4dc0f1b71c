"""Print every quantity of the three worked examples, computed exactly."""

from coopshare.core import check_core
from coopshare.egalitarian import ea, wea
from coopshare.game import from_exchange
from coopshare.payments import esv, isv, vickrey
from coopshare.verification import EXAMPLE_1, EXAMPLE_2, EXAMPLE_3


def show(name, labels, vec):
    print(f"  {name:<8}" + "  ".join(f"{lbl}={v}" for lbl, v in zip(labels, vec)))


def main():
    g1 = from_exchange(EXAMPLE_1)
    vp = vickrey(g1)
    print("exchange with one seller and two buyers")
    show("vickrey", g1.labels, vp)
    print(f"  sum {sum(vp)} vs total profit {g1.total}")

    g2 = from_exchange(EXAMPLE_2)
    e = esv(g2)
    verdict = check_core(g2, e.payments)
    print("exchange with two sellers and three buyers")
    show("vickrey", g2.labels, vickrey(g2))
    print(f"  common scaling factor {e.alphas[0]}")
    show("esv", g2.labels, e.payments)
    names = ",".join(g2.coalition_labels(verdict.violated))
    print(f"  coalition {{{names}}} gets {verdict.violated_payment} < {verdict.violated_value}")
    r = isv(g2)
    show("isv", g2.labels, r.payments)
    show("alphas", g2.labels, r.alphas)

    g3 = EXAMPLE_3
    print("three-player convex game")
    show("vickrey", g3.labels, vickrey(g3))
    show("esv", g3.labels, esv(g3).payments)
    show("isv", g3.labels, isv(g3).payments)
    show("ea", g3.labels, ea(g3).final)
    show("wea", g3.labels, wea(g3, vickrey(g3)).final)


if __name__ == "__main__":
    main()
