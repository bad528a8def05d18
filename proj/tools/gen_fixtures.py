#!/usr/bin/env python3
"""Regenerates the group files under fixtures/."""

import json
import math
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
PHI = (math.sqrt(5.0) - 1.0) / 2.0


def boost(n, t):
    m = np.eye(n + 1, dtype=complex)
    m[0, 0] = m[1, 1] = math.cosh(t)
    m[0, 1] = m[1, 0] = math.sinh(t)
    return m


def diag(*entries):
    return np.diag(np.array(entries, dtype=complex))


def unit(angle):
    return complex(math.cos(angle), math.sin(angle))


def det_one(m):
    """Same PU class, rescaled by the principal root so that det = 1."""
    theta = np.angle(np.linalg.det(m)) / m.shape[0]
    return m * unit(-theta)


def conj(r, m):
    return r @ m @ np.linalg.inv(r)


def matrix(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def write(name, dim_n, generators, elements=None):
    doc = {"schema_version": 1, "dim_n": dim_n,
           "generators": [{"name": k, "matrix": matrix(v)} for k, v in generators]}
    if elements:
        doc["elements"] = [{"name": k, "matrix": matrix(v)} for k, v in elements]
    (OUT / name).write_text(json.dumps(doc, indent=2) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    p0 = np.array([[1 + 1j, -1j], [1j, 1 - 1j]])
    write("lt_family.json", 1,
          [("L0.5", boost(1, 0.5)), ("L1", boost(1, 1.0)), ("L2", boost(1, 2.0))],
          [("I", np.eye(2)), ("R", diag(1, -1)), ("P0", p0)])
    write("cyclic_l1.json", 1, [("L1", boost(1, 1.0))], [("I", np.eye(2))])
    write("commuting.json", 1, [("f", boost(1, 0.1)), ("g", boost(1, 0.2))])
    write("two_axis.json", 1,
          [("a", boost(1, 1.0)), ("b", conj(diag(1, 1j), boost(1, 1.0)))])
    write("elliptic_n2.json", 2,
          [("e", diag(1, unit(2 * math.pi / 5), unit(-2 * math.pi / 5))), ("L", boost(2, 1.0))])
    write("golden.json", 1,
          [("rho", det_one(diag(1, unit(2 * math.pi * PHI))))],
          [("h", boost(1, 1.0)), ("e", det_one(diag(1, unit(2 * math.pi / 7))))])
    write("torsion_u12.json", 2,
          [(f"t{k}", det_one(diag(1, 1, unit(2 * math.pi / k)))) for k in (8, 16, 32)])
    write("stabilizer_n2.json", 2, [("L", boost(2, 1.0)), ("s", det_one(diag(1, 1, -1)))])
    rot = diag(1, unit(2 * math.pi / 3))
    quarter = diag(1, 1j)
    write("transport_n1.json", 1,
          [("p", boost(1, 1.0)), ("q", conj(rot, boost(1, 1.0))), ("f", conj(quarter, boost(1, 0.5)))])
    write("trivial.json", 1, [])
    write("nonunitary.json", 1, [("m", diag(2, 1))])


if __name__ == "__main__":
    main()
