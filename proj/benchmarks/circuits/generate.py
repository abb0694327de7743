#!/usr/bin/env python3
"""Writes the benchmark QASM fixtures. Output is deterministic."""

import math
import os
import random
import sys

HERE = os.path.dirname(os.path.abspath(__file__))


class Qasm:
    def __init__(self, n):
        self.n = n
        self.lines = []

    def g(self, name, *qs, params=()):
        args = ",".join(f"q[{q}]" for q in qs)
        if params:
            ps = ",".join(repr(float(p)) for p in params)
            self.lines.append(f"{name}({ps}) {args};")
        else:
            self.lines.append(f"{name} {args};")

    def text(self):
        head = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{self.n}];"]
        return "\n".join(head + self.lines) + "\n"


def mcz(c, qs):
    # Phase polynomial of the multi-controlled Z: every parity gets a phase,
    # parities are walked in Gray-code order onto each qubit in turn.
    k = len(qs)
    lam = math.pi / 2 ** (k - 1)
    for q in qs:
        c.g("u1", q, params=(lam,))
    for j in range(1, k):
        t = qs[j]
        prev = 0
        for i in range(1, 2 ** j):
            g = i ^ (i >> 1)
            bit = (g ^ prev).bit_length() - 1
            c.g("cx", qs[bit], t)
            size = bin(g).count("1") + 1
            c.g("u1", t, params=(lam * (-1) ** (size + 1),))
            prev = g
        c.g("cx", qs[prev.bit_length() - 1], t)


GROVER_ITERATIONS = {4: 3, 6: 2, 8: 1}


def grover(n):
    # No ancillas. Iterations past the first few are dropped for the larger
    # instances to keep the suite desk-scale.
    c = Qasm(n)
    qs = list(range(n))
    marked = [(i % 2) for i in range(n)]
    for q in qs:
        c.g("h", q)
    for _ in range(GROVER_ITERATIONS[n]):
        for q, bit in zip(qs, marked):
            if not bit:
                c.g("x", q)
        mcz(c, qs)
        for q, bit in zip(qs, marked):
            if not bit:
                c.g("x", q)
        for q in qs:
            c.g("h", q)
            c.g("x", q)
        mcz(c, qs)
        for q in qs:
            c.g("x", q)
            c.g("h", q)
    return c


def vqe(n, reps=3, seed=7):
    rng = random.Random(seed * 1000 + n)
    c = Qasm(n)

    def rotations():
        for q in range(n):
            c.g("ry", q, params=(rng.uniform(-math.pi, math.pi),))
            c.g("rz", q, params=(rng.uniform(-math.pi, math.pi),))

    rotations()
    for _ in range(reps):
        for i in range(n):
            for j in range(i + 1, n):
                c.g("cx", i, j)
        rotations()
    return c


def bv(n):
    c = Qasm(n)
    anc = n - 1
    c.g("x", anc)
    for q in range(n):
        c.g("h", q)
    for q in range(n - 1):
        c.g("cx", q, anc)
    for q in range(n - 1):
        c.g("h", q)
    return c


def qft_body(c, qs):
    for i, q in enumerate(qs):
        c.g("h", q)
        for j in range(i + 1, len(qs)):
            c.g("cu1", qs[j], q, params=(math.pi / 2 ** (j - i),))


def qft(n):
    c = Qasm(n)
    qft_body(c, list(range(n)))
    return c


def qpe(n, phase=0.3125):
    m = n - 1
    target = m
    c = Qasm(n)
    c.g("x", target)
    for q in range(m):
        c.g("h", q)
    for q in range(m):
        c.g("cu1", q, target, params=(2 * math.pi * phase * 2 ** q,))
    # Inverse QFT on the counting register.
    for i in reversed(range(m)):
        for j in reversed(range(i + 1, m)):
            c.g("cu1", j, i, params=(-math.pi / 2 ** (j - i),))
        c.g("h", i)
    return c


def adder(n):
    # Ripple-carry adder: cin, interleaved a/b, cout.
    bits = (n - 2) // 2
    c = Qasm(n)
    cin = 0
    a = [1 + 2 * i for i in range(bits)]
    b = [2 + 2 * i for i in range(bits)]
    cout = n - 1
    for q in a[::2] + b[1::2]:
        c.g("x", q)

    def maj(x, y, z):
        c.g("cx", z, y)
        c.g("cx", z, x)
        c.g("ccx", x, y, z)

    def uma(x, y, z):
        c.g("ccx", x, y, z)
        c.g("cx", z, x)
        c.g("cx", x, y)

    maj(cin, b[0], a[0])
    for i in range(1, bits):
        maj(a[i - 1], b[i], a[i])
    c.g("cx", a[-1], cout)
    for i in reversed(range(1, bits)):
        uma(a[i - 1], b[i], a[i])
    uma(cin, b[0], a[0])
    return c


SUITE = {
    "grover4": lambda: grover(4),
    "grover6": lambda: grover(6),
    "grover8": lambda: grover(8),
    "vqe8": lambda: vqe(8),
    "vqe12": lambda: vqe(12),
    "bv19": lambda: bv(19),
    "qft15": lambda: qft(15),
    "qft20": lambda: qft(20),
    "qpe9": lambda: qpe(9),
    "adder10": lambda: adder(10),
}


def main(out_dir):
    for name, make in SUITE.items():
        with open(os.path.join(out_dir, name + ".qasm"), "w") as f:
            f.write(make().text())


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else HERE)
