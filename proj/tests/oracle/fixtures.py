# Copyright 2026 The mvfr Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values for the frozen unit-test fixtures.

Uses mpmath at 40 digits; the Gaussian bridge value uses the published closed
form of the Gaussian Schrodinger bridge with Brownian variance 2 eps, which
shares no code path with the library's fixed-point iteration.

    python3 tests/oracle/fixtures.py
"""
import mpmath as mp

mp.mp.dps = 40
I = mp.mpc(0, 1)


def m(rows):
    return mp.matrix(rows)


def herm_fn(a, f):
    # eigh for Hermitian mp matrices
    e, q = mp.eighe(a) if hasattr(mp, "eighe") else mp.eig(a)
    d = a.rows
    out = mp.zeros(d, d)
    for k in range(d):
        v = q[:, k]
        nrm = mp.sqrt(sum(abs(v[j]) ** 2 for j in range(d)))
        v = v / nrm
        out += f(mp.re(e[k])) * (v * v.H)
    return out


def sqrtm(a):
    return herm_fn(a, mp.sqrt)


def tr(a):
    return mp.re(sum(a[k, k] for k in range(a.rows)))


def bures_sq(a, b):
    s = sqrtm(a)
    return tr(a) + tr(b) - 2 * tr(sqrtm(s * b * s))


def logdet(a):
    return mp.re(mp.log(mp.det(a)))


A = m([[2, 0.5 + 0.5 * I], [0.5 - 0.5 * I, 1]])
B = m([[1, -0.3 * I], [0.3 * I, 3]])
C = m([[1, 0.2], [0.2, 0.5]])
D = m([[0.7, 0.1 * I], [-0.1 * I, 0.8]])
G0 = [A / 7, B / 7]
G1 = [C / 3, D / 3]
lam = mp.mpf(1) / 4

print("bures_sq(A, B)      =", mp.nstr(bures_sq(A, B), 20))
dh2 = 4 * sum(bures_sq(x, y) for x, y in zip(G0, G1))
print("hellinger_sq(G0,G1) =", mp.nstr(dh2, 20))
dfr = 2 * mp.acos(1 - dh2 / 8)
print("fisher_rao(G0,G1)   =", mp.nstr(dfr, 20))
print("entropy(G0)         =", mp.nstr(sum(-lam * logdet(g / lam) for g in G0), 20))
print("fisher(G0)          =", mp.nstr(sum(lam * tr(herm_fn(g / lam, lambda x: 1 / x)) - 2 * lam for g in G0), 20))


def geo_mid(a, b):
    s = sqrtm(a)
    si = herm_fn(a, lambda x: 1 / mp.sqrt(x))
    t = si * sqrtm(s * b * s) * si
    mm = (mp.eye(a.rows) + t) / 2
    return mm * a * mm


H = [geo_mid(x, y) for x, y in zip(G0, G1)]
mh = sum(tr(h) for h in H)
print("hellinger mid mass  =", mp.nstr(mh, 20))
Mid = [h / mh for h in H]
print("entropy(FR mid)     =", mp.nstr(sum(-lam * logdet(g / lam) for g in Mid), 20))


def gaussian_closed(a, b, eps, t):
    s2 = 2 * eps
    d = a.rows
    ra = sqrtm(a)
    dd = sqrtm(4 * ra * b * ra + s2**2 * mp.eye(d))
    c = (ra * dd * ra**-1 - s2 * mp.eye(d)) / 2
    return (1 - t) ** 2 * a + t**2 * b + t * (1 - t) * (c + c.T + s2 * mp.eye(d))


a0 = m([[2, 0.5], [0.5, 1]])
a1 = m([[1, -0.3], [-0.3, 3]])
g = gaussian_closed(a0, a1, mp.mpf("0.5"), mp.mpf("0.5"))
print("gaussian A_1/2 eps=.5 =", [[mp.nstr(mp.re(g[r, c]), 20) for c in range(2)] for r in range(2)])
g = gaussian_closed(a0, a1, mp.mpf("0.5"), mp.mpf("0.3"))
print("gaussian A_0.3 eps=.5 =", [[mp.nstr(mp.re(g[r, c]), 20) for c in range(2)] for r in range(2)])
