#!/usr/bin/env python3
"""Writes the expected classification table, one line per (p, r)."""
import sys


def verdict(p, r):
    if p % 2 == 1 and r % 2 == 1:
        if r == 1:
            return "HOLDS(R1)", None
        if r == p:
            return "HOLDS(RP)", None
        if r == p - 2:
            return "HOLDS(RPM2)", None
        if r == p - 4:
            return "HOLDS(PARTITION)", None
        if (p, r) == (11, 3):
            return "HOLDS(P11R3)", None
        if (p, r) == (9, 3):
            return "FAILS(P9R3)", None
        if r == 3:
            return "FAILS(WITNESS_B)", None
        return "FAILS(WITNESS_A)", None
    if p % 2 == 0 and r % 2 == 1:
        if r == 1:
            return "HOLDS(CASE2_R1)", None
        if r == p - 1:
            return "HOLDS(CASE2_RPM1)", None
        if (p, r) == (6, 3):
            return "FAILS(PROPAGATION)", None
        if r == 3:
            return "FAILS(WITNESS_C)", (p, p - 3)
        return "FAILS(WITNESS_C)", None
    if p % 2 == 1:
        label, _ = verdict(p, p - r)
        return label, (p, p - r)
    if r == p:
        return "HOLDS(EVEN_POWER)", None
    if r == 0:
        return "HOLDS(EVEN_POWER)", (p, p)
    return "UNKNOWN", None


def main():
    max_p = int(sys.argv[1]) if len(sys.argv) > 1 else 15
    for p in range(1, max_p + 1):
        for r in range(p + 1):
            label, via = verdict(p, r)
            line = f"p={p} r={r} {label}"
            if via:
                line += f" via=({via[0]},{via[1]})"
            print(line)


if __name__ == "__main__":
    main()
