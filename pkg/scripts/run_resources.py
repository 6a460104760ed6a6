"""Print the qubit / gate / depth table for QAOA, PGE, ABE and ACE."""

import argparse

from vqaseg.harness import resource_estimate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="4,16,1024,1048576")
    ap.add_argument("--layers", type=int, default=1)
    args = ap.parse_args()
    print("method,n,layers,qubits,entanglement_gates,parametric_gates,depth,approximate")
    for n in (int(x) for x in args.sizes.split(",")):
        for method in ("qaoa", "pge", "abe", "ace"):
            r = resource_estimate(method, n, args.layers)
            print(f"{method},{n},{args.layers},{r.qubits},{r.entanglement_gates},"
                  f"{r.parametric_gates},{r.depth},{r.approximate}")


if __name__ == "__main__":
    main()
