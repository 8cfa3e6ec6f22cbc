"""Independent brute-force oracle for frozen test values (exact fractions).

Enumerates every profile of a product measure and evaluates the definitions
directly. Used once to freeze expected values into the C++ tests.
"""
from fractions import Fraction as F
from itertools import product


def plurality_first_match(x, k, w):
    tot = [F(0)] * k
    for i, v in enumerate(x):
        tot[v] += w[i]
    best = max(tot)
    tied = {a for a in range(k) if tot[a] == best}
    for v in x:
        if v in tied:
            return v


def report(k, n, rows, w, A, rule):
    atoms = []
    for x in product(range(k), repeat=n):
        p = F(1)
        for i, v in enumerate(x):
            p *= rows[i][v]
        atoms.append((x, p))
    EW = [sum(w[i] * rows[i][j] for i in range(n)) for j in range(k)]
    delta = min(EW[a] for a in A) - max(EW[b] for b in range(k) if b not in A)
    p_not = sum(p for x, p in atoms if rule(x) not in A)
    cov = sum(p * sum(w[i] * sum((1 if rule(x) == j else 0) * ((1 if x[i] == j else 0) - rows[i][j])
                                 for j in range(k)) for i in range(n)) for x, p in atoms)
    effects = []
    for i in range(n):
        e = F(0)
        for j in range(k):
            on = sum(p for x, p in atoms if x[i] == j)
            off = 1 - on
            if on == 0 or off == 0:
                continue
            e += sum(p for x, p in atoms if x[i] == j and rule(x) == j) / on
            e -= sum(p for x, p in atoms if x[i] != j and rule(x) == j) / off
        effects.append(e)
    return delta, p_not, cov, effects


k, n = 3, 3
w = [F(1, 3)] * 3
rows = [[F(1, 2), F(1, 4), F(1, 4)]] * 3
d, p, c, e = report(k, n, rows, w, {0}, lambda x: plurality_first_match(x, k, w))
print("biased k=3 n=3: delta", d, "pNotA", p, "covSum", c, "effects", e,
      "effectBound", sum(wi * ei for wi, ei in zip(w, e)) / 4)

# k=2 n=1 identity, uniform
d, p, c, e = report(2, 1, [[F(1, 2), F(1, 2)]], [F(1)], {1}, lambda x: x[0])
print("identity k=2 n=1: effects", e)

# uniform k=3 n=3 plurality effects
rows = [[F(1, 3)] * 3] * 3
d, p, c, e = report(3, 3, rows, w, {0}, lambda x: plurality_first_match(x, 3, w))
print("uniform k=3 n=3 plurality: effects", e, "cov", c)

# k=2 n=3 majority uniform effects
w3 = [F(1, 3)] * 3
d, p, c, e = report(2, 3, [[F(1, 2)] * 2] * 3, w3, {1}, lambda x: plurality_first_match(x, 2, w3))
print("majority k=2 n=3 uniform: effects", e, "cov", c)
