"""Universe sizes and verification cost per set-size cap.

    python3 scripts/census.py --max-set-size 3
"""

import argparse
import time

from exactness import adjverify as av
from exactness import grppairs as gp
from exactness import setrel as sr


def universe_rows(n):
    objs = sr.rel_objects(n)
    starred = sum(len(sr.hom_setrel(a, b, starred=True)) for a in objs for b in objs)
    unstarred = sum(len(sr.hom_setrel(a, b)) for a in objs for b in objs)
    return len(objs), starred, unstarred


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-set-size", type=int, default=3, choices=range(5))
    ap.add_argument("--chains", action="store_true", help="also time the four Set adjunctions per size")
    args = ap.parse_args()

    print("size  objects  hom*  hom")
    for n in range(args.max_set_size + 1):
        print("{:>4}  {:>7}  {:>4}  {:>4}".format(n, *universe_rows(n)))

    print("\ngroup  order  subgroups  normal")
    for G in gp.corpus():
        subs = gp.subgroups(G)
        print(f"{G.name:>5}  {G.order:>5}  {len(subs):>9}  {sum(gp.is_normal(S) for S in subs):>6}")

    if args.chains:
        print("\nsize  adjunction  cases  seconds")
        for n in range(args.max_set_size + 1):
            for d in av.set_chain_adjunctions(n):
                t0 = time.perf_counter()
                rep = av.check_r_adjunction(d)
                print(f"{n:>4}  {d.name:<10}  {rep.cases_checked:>8}  {time.perf_counter() - t0:7.2f}  {'ok' if rep.passed else 'FAIL'}")


if __name__ == "__main__":
    main()
