"""Independent evaluation of the closed-form expected values frozen in the unit tests.

Run with `python3 tests/oracles/derived_values.py`; nothing here imports the C++ code.
"""
import math

import numpy as np
from scipy import stats

print("to_returns(100, 99):", -100 * math.log(0.99))

g = (math.log(8 / 2) + math.log(4 / 2)) / 2
print("hill {1,2,4,8} k=2 gamma:", g, "alpha:", 1 / g)

print("weissman n=1000 k=100 X=2 alpha=2 p=0.999:", 2.0 * (100 / (1000 * 0.001)) ** 0.5)

def lr_uc(n, n1, p):
    n0 = n - n1
    pi = n1 / n
    xl = lambda a, b: 0.0 if a == 0 else a * math.log(b)
    return -2 * (xl(n0, 1 - p) + xl(n1, p) - xl(n0, 1 - pi) - xl(n1, pi))

print("lr_uc(250, 5, 0.01):", lr_uc(250, 5, 0.01), "p:", stats.chi2.sf(lr_uc(250, 5, 0.01), 1))
print("lr_uc(250, 0, 0.01):", lr_uc(250, 0, 0.01))

def lr_ind(ind):
    ind = list(ind)
    c = {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 0}
    for a, b in zip(ind[:-1], ind[1:]):
        c[(a, b)] += 1
    n00, n01, n10, n11 = c[(0, 0)], c[(0, 1)], c[(1, 0)], c[(1, 1)]
    xl = lambda a, b: 0.0 if a == 0 else a * math.log(b)
    tot = n00 + n01 + n10 + n11
    pi = (n01 + n11) / tot
    p01 = n01 / (n00 + n01) if n00 + n01 else 0
    p11 = n11 / (n10 + n11) if n10 + n11 else 0
    r = xl(n00 + n10, 1 - pi) + xl(n01 + n11, pi)
    u = xl(n00, 1 - p01) + xl(n01, p01) + xl(n10, 1 - p11) + xl(n11, p11)
    return -2 * (r - u), (n00, n01, n10, n11)

clustered = [0] * 120 + [1, 1, 1] + [0] * 127
v, cnt = lr_ind(clustered)
print("lr_ind clustered 250 (3 run at 120):", v, cnt, "p:", stats.chi2.sf(v, 1))
u = lr_uc(250, 3, 0.01)
print("  lr_uc same:", u, " lr_cc:", u + v, "p_cc:", stats.chi2.sf(u + v, 2))

x = np.array([1.0 if i % 2 == 0 else -1.0 for i in range(10)])
xm = x - x.mean()
print("acf alternating n=10 lag1:", (xm[:-1] * xm[1:]).sum() / (xm * xm).sum())

# Brute-force sliding maxima for (1,2,3,4), b=2 -> windows of b+1 = 3 points.
xs = [1, 2, 3, 4]
b = 2
print("sliding maxima:", [max(xs[i:i + b + 1]) for i in range(len(xs) - b)])

# t-copula tail dependence, df=3, rho=0.9
df, rho = 3.0, 0.9
print("t-copula chi:", 2 * stats.t.cdf(-math.sqrt((df + 1) * (1 - rho) / (1 + rho)), df + 1))
# Finite-level value P(U>1-q, V>1-q)/q for q = 0.01 and 0.02 by quadrature-free Monte Carlo
rng = np.random.default_rng(1)
m = 4_000_000
z = rng.standard_normal((m, 2))
z[:, 1] = rho * z[:, 0] + math.sqrt(1 - rho * rho) * z[:, 1]
w = rng.chisquare(df, m)
t = z / np.sqrt(w / df)[:, None]
for q in (0.005, 0.01, 0.02):
    thr = stats.t.ppf(1 - q, df)
    print(f"  finite-level chi at q={q}:", np.mean((t[:, 0] > thr) & (t[:, 1] > thr)) / q)
