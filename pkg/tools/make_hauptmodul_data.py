"""Regenerate the bundled Hauptmodul coefficient files.

    python tools/make_hauptmodul_data.py [--prec 200]
"""

import argparse

from supersingular.arith import MONSTER_PRIMES
from supersingular.qseries.generate import fricke_hauptmodul
from supersingular.qseries.hauptmodul import data_dir, declared_constant, write_data_file

SOURCE = "fricke-eigenform-quotient(exact,in-repo)"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--prec", type=int, default=200)
    args = ap.parse_args()
    data_dir().mkdir(parents=True, exist_ok=True)
    for N in MONSTER_PRIMES:
        coeffs = fricke_hauptmodul(N, args.prec)
        coeffs[1] = declared_constant(N)
        write_data_file(data_dir() / f"N{N}.txt", N, coeffs, coeffs[1], SOURCE)
        print(N, coeffs[:5])


if __name__ == "__main__":
    main()
