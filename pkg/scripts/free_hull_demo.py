"""Schauder decompositions of one-variable functions over Farey subdivisions.

Prints each function, its unimodular subdivision and nodal coefficients,
then checks the reconstruction and the McNaughton property of every hat.
"""

import argparse
import random

from rieszhull.freepwl import free_essential_witness, is_mcnaughton, schauder_decompose, term_to_pwl
from rieszhull.exactla import fmt_rat
from rieszhull.sampling import PwlConfig, random_pwl
from rieszhull.terms import parse_term

TERMS = ["x (+) x", "x /\\ ~x", "1/2 # (x (+) x)", "1/3 # x \\/ ~x (.) ~x", "2/5 # (x (.) x (+) x)"]


def show(label, f):
    dec = schauder_decompose(f)
    hats_ok = all(is_mcnaughton(h) for h in dec.hats())
    g, n = free_essential_witness(f) or (None, None)
    print(f"{label}")
    print(f"  pwl          {f.serialize()}")
    print(f"  mcnaughton   {is_mcnaughton(f)}")
    print(f"  subdivision  {' '.join(fmt_rat(x) for x in dec.subdivision.nodes)}")
    print(f"  coefficients {' '.join(fmt_rat(c) for c in dec.coefficients)}")
    print(f"  exact={dec.reconstruct() == f} hats_mcnaughton={hats_ok}")
    if g is not None:
        print(f"  witness      {g.serialize()}  n={n}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", type=int, default=3, help="extra random PWLs")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for t in TERMS:
        show(t, term_to_pwl(parse_term(t)))
    rng = random.Random(args.seed)
    for k in range(args.random):
        show(f"random #{k}", random_pwl(rng, PwlConfig()))


if __name__ == "__main__":
    main()
