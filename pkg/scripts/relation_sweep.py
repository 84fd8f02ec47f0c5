"""Count relations among the fourteen algebra generators, one bidegree at a time.

For every bidegree (x, y) with x <= --max-xdeg, all products of generators
landing there are evaluated and row-reduced.  The table shows how many
products there are, the rank they span, the invariant dimension (rank must
match it, otherwise the generators would not generate) and the number of
linear relations among the products.  Relations forced by lower ones are not
separated out; the counts are an upper bound on new relations.
"""
import argparse
from collections import defaultdict

import numpy as np

from diffinv import linalg
from diffinv.fixtures import MINIMAL_GENERATORS, Setup
from diffinv.gcalg import to_vector


def products(gens, max_xdeg, max_ydeg):
    """Monomials in gens (odd-ydeg generators at most once), grouped by bidegree."""
    out = defaultdict(list)

    def rec(k, word, value, x, y):
        if word:
            out[(x, y)].append((word, value))
        for j in range(k, len(gens)):
            name, g = gens[j]
            gx, gy = g.bidegree
            if x + gx > max_xdeg or y + gy > max_ydeg:
                continue
            if gy % 2 and word and word[-1] == name:
                continue
            rec(j, word + (name,), value * g, x + gx, y + gy)

    for j, (name, g) in enumerate(gens):
        rec(j, (name,), g, *g.bidegree)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-xdeg", type=int, default=10)
    args = ap.parse_args()
    s = Setup()
    gens = [(k, s.named[k]) for k in MINIMAL_GENERATORS]
    table = products(gens, args.max_xdeg, 3)
    print(f"{'bidegree':>9s} {'products':>9s} {'rank':>5s} {'inv dim':>8s} {'relations':>10s}")
    total = 0
    for bd in sorted(table, key=lambda b: (b[1], b[0])):
        vals = [v for _, v in table[bd] if not v.is_zero()]
        zero = len(table[bd]) - len(vals)
        r = linalg.rank(np.array([to_vector(v, bd) for v in vals]), s.p) if vals else 0
        dim = s.G_action.fixed_space(bd).dim
        rel = len(table[bd]) - r
        total += rel
        flag = "" if r == dim else "  <- not generated"
        note = f" ({zero} vanish)" if zero else ""
        print(f"{bd[0]:>5d},{bd[1]:<3d} {len(table[bd]):>9d} {r:>5d} {dim:>8d} {rel:>10d}{note}{flag}")
    print(f"total relations up to xdeg {args.max_xdeg}: {total}")


if __name__ == "__main__":
    main()
