"""Desk-calculation oracle for the benchmark objective tables.

Evaluates each problem's native objectives with plain Python floats at fixed
native inputs and prints a C++ initializer table. Regenerate with:

    python3 tests/oracles/problem_tables.py > tests/problem_tables.inc
"""
import math


def zdt3(x):
    f1 = x[0]
    g = 1 + 9 * sum(x[1:]) / (len(x) - 1)
    h = 1 - math.sqrt(f1 / g) - (f1 / g) * math.sin(10 * math.pi * f1)
    return [f1, g * h]


def four_bar_truss(x):
    F, E, L = 10.0, 2.0e5, 200.0
    f1 = L * (2 * x[0] + math.sqrt(2) * x[1] + math.sqrt(x[2]) + x[3])
    f2 = (F * L / E) * (2 / x[0] + 2 * math.sqrt(2) / x[1] - 2 * math.sqrt(2) / x[2] + 2 / x[3])
    return [f1, f2]


def neg_part(gs):
    return sum(-g for g in gs if g < 0)


def reinforced_concrete_beam(x):
    a, b, h = x
    f1 = 29.4 * a + 0.6 * b * h
    g = [a * h - 7.735 * a * a / b - 180, 4 - h / b]
    return [f1, neg_part(g)]


def gear_train(x):
    x1, x2, x3, x4 = x
    f1 = abs(6.931 - (x3 / x1) * (x4 / x2))
    return [f1, max(x), neg_part([0.5 - f1 / 6.931])]


def welded_beam(x):
    x1, x2, x3, x4 = x
    P, L, E, G = 6000.0, 14.0, 30e6, 12e6
    f1 = 1.10471 * x1 ** 2 * x2 + 0.04811 * x3 * x4 * (14 + x2)
    f2 = 4 * P * L ** 3 / (E * x4 * x3 ** 3)
    M = P * (L + x2 / 2)
    R = math.sqrt(x2 ** 2 / 4 + ((x1 + x3) / 2) ** 2)
    J = 2 * math.sqrt(2) * x1 * x2 * (x2 ** 2 / 12 + ((x1 + x3) / 2) ** 2)
    t2 = M * R / J
    t1 = P / (math.sqrt(2) * x1 * x2)
    tau = math.sqrt(t1 ** 2 + 2 * t1 * t2 * x2 / (2 * R) + t2 ** 2)
    sigma = 6 * P * L / (x4 * x3 ** 2)
    pc = 4.013 * E * math.sqrt(x3 ** 2 * x4 ** 6 / 36) / L ** 2 * (1 - x3 / (2 * L) * math.sqrt(E / (4 * G)))
    g = [13600 - tau, 30000 - sigma, x4 - x1, pc - P]
    return [f1, f2, neg_part(g)]


def disc_brake(x):
    x1, x2, x3, x4 = x
    a = x2 ** 2 - x1 ** 2
    c = x2 ** 3 - x1 ** 3
    f1 = 4.9e-5 * a * (x4 - 1)
    f2 = 9.82e6 * a / (x3 * x4 * c)
    g = [(x2 - x1) - 20, 0.4 - x3 / (3.14 * a), 1 - 2.22e-3 * x3 * c / a ** 2, 2.66e-2 * x3 * x4 * c / a - 900]
    return [f1, f2, neg_part(g)]


CASES = {
    "zdt3": (zdt3, [
        [0.0] * 9,
        [1.0] + [0.0] * 8,
        [0.5] * 9,
        [0.25, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8],
        [0.8, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.05],
    ]),
    "four_bar_truss": (four_bar_truss, [
        [1.0, math.sqrt(2), math.sqrt(2), 1.0],
        [3.0, 3.0, 3.0, 3.0],
        [2.0, 2.0, 2.0, 2.0],
        [1.5, 2.5, 1.8, 2.9],
        [2.7, 1.6, 2.9, 1.1],
    ]),
    "reinforced_concrete_beam": (reinforced_concrete_beam, [
        [0.2, 10.0, 20.0],
        [7.8, 5.0, 30.0],
        [15.0, 20.0, 40.0],
        [3.1, 12.0, 35.0],
        [10.27, 8.5, 33.0],
    ]),
    "gear_train": (gear_train, [
        [12.0, 12.0, 12.0, 12.0],
        [60.0, 60.0, 60.0, 60.0],
        [19.0, 16.0, 43.0, 49.0],
        [30.0, 45.0, 52.0, 13.0],
        [13.0, 20.0, 53.0, 34.0],
    ]),
    "welded_beam": (welded_beam, [
        [0.125, 0.1, 0.1, 0.125],
        [5.0, 10.0, 10.0, 5.0],
        [0.25, 6.0, 8.5, 0.3],
        [1.0, 2.0, 3.0, 4.0],
        [0.3, 5.0, 2.0, 0.2],
    ]),
    "disc_brake": (disc_brake, [
        [55.0, 75.0, 1000.0, 11.0],
        [80.0, 110.0, 3000.0, 20.0],
        [60.0, 100.0, 2000.0, 15.0],
        [70.0, 90.0, 2500.0, 12.0],
        [75.0, 80.0, 2800.0, 20.0],
    ]),
}

if __name__ == "__main__":
    for name, (fn, rows) in CASES.items():
        for x in rows:
            y = fn(x)
            xs = ", ".join(repr(v) for v in x)
            ys = ", ".join(repr(v) for v in y)
            print(f'{{"{name}", {{{xs}}}, {{{ys}}}}},')
