"""Dev scratch: Bolza octagon generators, relation, area, systole."""
import numpy as np
import itertools

COSH_HALF = 1.0 + np.sqrt(2.0)   # cosh(l/2) for side-pairing translation
SINH_HALF = np.sqrt(COSH_HALF ** 2 - 1.0)

def gen(k):
    ph = np.exp(1j * k * np.pi / 4)
    return np.array([[COSH_HALF, ph * SINH_HALF], [np.conj(ph) * SINH_HALF, COSH_HALF]], dtype=complex)

def inv(m):
    a, b = m[0, 0], m[0, 1]
    return np.array([[np.conj(a), -b], [-np.conj(b), a]], dtype=complex)

def dist0(m):
    # d(0, m*0): m*0 = b/conj(a); d(0,z)=2 atanh|z|
    z = m[0, 1] / np.conj(m[0, 0])
    return 2 * np.arctanh(abs(z))

I2 = np.eye(2, dtype=complex)
G = [gen(k) for k in range(4)]
Gi = [inv(g) for g in G]

def word(m_list):
    out = I2.copy()
    for m in m_list:
        out = out @ m
    return out

def proj_dist(m, n):
    return min(np.abs(m - n).max(), np.abs(m + n).max())

a, b, c, d = G
ai, bi, ci, di = Gi
cands = {
    "abcd a-1b-1c-1d-1": word([a, b, c, d, ai, bi, ci, di]),
    "ab-1cd-1 a-1bc-1d": word([a, bi, c, di, ai, b, ci, d]),
    "[a,b][c,d]": word([a, b, ai, bi, c, d, ci, di]),
    "[a,c][b,d]": word([a, c, ai, ci, b, d, bi, di]),
    "a b-1 c d-1 a-1 b c-1 d (rev)": word([d, ci, b, ai, di, c, bi, a]),
    "ac a-1 c-1 ...": word([a, ci, b, di, ai, c, bi, d]),
}
for k, m in cands.items():
    print(f"{k}: dist to +-I = {proj_dist(m, I2):.3e}")

# octagon geometry: vertex radius cosh r_v = cot^2(pi/8) = 3+2sqrt2
rv = np.arccosh(3 + 2 * np.sqrt(2))
rm = np.arccosh(1 + np.sqrt(2))
print(f"r_v={rv:.6f} r_m={rm:.6f} trans len={2*rm:.6f} gen displacement={dist0(G[0]):.6f}")

# area by angle defect: compute interior angle at a vertex numerically
# vertices at angles (2k+1)pi/8, euclidean radius tanh(rv/2)
re_v = np.tanh(rv / 2)
verts = [re_v * np.exp(1j * (2 * k + 1) * np.pi / 8) for k in range(8)]

def hyp_dist(z, w):
    num = 2 * abs(z - w) ** 2
    den = (1 - abs(z) ** 2) * (1 - abs(w) ** 2)
    return np.arccosh(1 + num / den)

# angle at vertex v between geodesics to adjacent vertices: hyperbolic law of cosines
# cos A = (cosh b cosh c - cosh a) / (sinh b sinh c)
angles = []
for k in range(8):
    v = verts[k]; p = verts[(k - 1) % 8]; q = verts[(k + 1) % 8]
    bb = hyp_dist(v, p); cc = hyp_dist(v, q); aa = hyp_dist(p, q)
    A = np.arccos((np.cosh(bb) * np.cosh(cc) - np.cosh(aa)) / (np.sinh(bb) * np.sinh(cc)))
    angles.append(A)
area = 6 * np.pi - sum(angles)
print(f"octagon angles: {angles[0]:.8f} (pi/4={np.pi/4:.8f}); area={area:.10f} (4pi={4*np.pi:.10f})")

# systole: exhaustive words up to length 3-4, min displacement of z=0 and min trace-based translation length
best = None
elems = {}
def canon(m):
    a0 = m[0, 0]; b0 = m[0, 1]
    s = 1.0
    if abs(a0.real) > 1e-12:
        s = np.sign(a0.real)
    elif abs(a0.imag) > 1e-12:
        s = np.sign(a0.imag)
    elif abs(b0.real) > 1e-12:
        s = np.sign(b0.real)
    else:
        s = np.sign(b0.imag)
    m = s * m
    return (round(m[0,0].real, 8), round(m[0,0].imag, 8), round(m[0,1].real, 8), round(m[0,1].imag, 8))

frontier = {canon(I2): I2}
seen = dict(frontier)
allg = G + Gi
min_disp = np.inf
min_tl = np.inf
for depth in range(1, 5):
    newf = {}
    for m in frontier.values():
        for g in allg:
            n = m @ g
            key = canon(n)
            if key in seen:
                continue
            seen[key] = n
            newf[key] = n
            dd = dist0(n)
            if dd > 1e-9:
                min_disp = min(min_disp, dd)
            tr = abs((n[0, 0] + n[1, 1]).real)
            if tr > 2 + 1e-9:
                min_tl = min(min_tl, 2 * np.arccosh(tr / 2))
    frontier = newf
    print(f"depth {depth}: total elems {len(seen)}, min disp(0)={min_disp:.6f}, min transl len={min_tl:.6f}")
print(f"2*rm = {2*rm:.6f}, arccosh(3+2sqrt2)... systole of Bolza known = 2*arccosh(1+sqrt2) = {2*np.arccosh(1+np.sqrt(2)):.6f}")
