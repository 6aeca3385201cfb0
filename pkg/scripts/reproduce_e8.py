#!/usr/bin/env python3
"""Rebuild everything for the binary icosahedral group (type E8) and print the
nine graded multiplicity polynomials, the exact character table, and the
outcome of every structural check."""
import sys

from mckay import cli


def main():
    rc = 0
    for cmd in (["poincare", "--type", "E8"],
                ["chartable", "--type", "E8"],
                ["forms", "--type", "E8"],
                ["verify", "--type", "E8"]):
        print(f"$ mckay {' '.join(cmd)}")
        rc |= cli.main(cmd)
        print()
    return rc


if __name__ == "__main__":
    sys.exit(main())
