"""Print the two family morphisms D(g.f) and D(g).D(f) for the empty-domain
counterexample, and show that the starred category excludes f."""

from exactness import adjverify as av
from exactness import setrel as sr
from exactness.famcat import fam_compose


def show(label, p):
    print(f"{label}: {len(p)} member(s)")
    for i, (j, c) in enumerate(zip(p.index_map, p.components)):
        print(f"  [{i}] -> target[{j}]  {c}")


def main():
    f, g = av.counterexample_morphisms()
    print(f"f = {f}")
    print(f"g = {g}")
    print(f"f starred: {f.starred}")
    show("D(g.f)", sr.D_relation(g @ f))
    show("D(g).D(f)", fam_compose(sr.D_relation(g), sr.D_relation(f)))
    print()
    print(f"hom*(source f, target f) = {sr.hom_setrel(f.source, f.target, starred=True)}")


if __name__ == "__main__":
    main()
