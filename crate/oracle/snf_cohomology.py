"""Integer cohomology of .scx complexes by a small Smith normal form.

Independent of the Rust code: builds coboundary matrices from the maximal
simplices, diagonalizes them over the integers and prints H^k(K; Z) and
H^k(K; Q/Z) descriptors in the same notation as the `sparks` reports.

    python3 oracle/snf_cohomology.py fixtures/*.scx
"""

import sys
from itertools import combinations


def read_scx(path):
    lines = [l.split("#")[0].split() for l in open(path)]
    lines = [l for l in lines if l]
    assert lines[0] == ["scx", "v1"], path
    n = int(lines[1][1])
    faces = {(v,) for v in range(n)}
    for toks in lines[2:]:
        s = tuple(int(t) for t in toks[1:])
        for q in range(1, len(s) + 1):
            faces.update(combinations(s, q))
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    return [sorted(by_dim[d]) for d in sorted(by_dim)]


def coboundary(lo, hi):
    index = {s: i for i, s in enumerate(lo)}
    m = [[0] * len(lo) for _ in hi]
    for r, s in enumerate(hi):
        for j in range(len(s)):
            m[r][index[s[:j] + s[j + 1:]]] += (-1) ** j
    return m


def invariant_factors(m):
    """Nonzero diagonal of the Smith form, by repeated pivoting on the smallest entry."""
    m = [row[:] for row in m]
    rows, cols = len(m), len(m[0]) if m else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(m[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        done = False
        while not done:
            done = True
            p = m[t][t]
            for i in range(t + 1, rows):
                q = m[i][t] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                if m[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    done = False
            if not done:
                entries = [(abs(m[i][t]), i, t) for i in range(t, rows) if m[i][t]]
                entries += [(abs(m[t][j]), t, j) for j in range(t, cols) if m[t][j]]
                _, pi, pj = min(entries)
                m[t], m[pi] = m[pi], m[t]
                for row in m:
                    row[t], row[pj] = row[pj], row[t]
                continue
            bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % p]
            if bad:
                i, _ = bad[0]
                m[t] = [a + b for a, b in zip(m[t], m[i])]
                done = False
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def describe(free, torsion, divisible=0):
    parts = []
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    parts += [f"Z/{d}" for d in torsion]
    if divisible:
        parts.append("Q/Z" if divisible == 1 else f"(Q/Z)^{divisible}")
    return " + ".join(parts) if parts else "0"


def cohomology(simplices):
    top = len(simplices) - 1
    factors = [invariant_factors(coboundary(simplices[k], simplices[k + 1])) for k in range(top)] + [[]]
    z, qz = [], []
    for k in range(top + 1):
        rank_out = len(factors[k])
        rank_in = len(factors[k - 1]) if k > 0 else 0
        free = len(simplices[k]) - rank_out - rank_in
        torsion = [d for d in (factors[k - 1] if k > 0 else []) if d > 1]
        z.append((free, torsion))
    for k in range(top + 1):
        # universal coefficients: H^k(Q/Z) = (Q/Z)^{b_k} + tors H^{k+1}(Z)
        nxt = z[k + 1][1] if k + 1 <= top else []
        qz.append(describe(0, nxt, z[k][0]))
    return [describe(f, t) for f, t in z], qz


if __name__ == "__main__":
    for path in sys.argv[1:]:
        hz, hqz = cohomology(read_scx(path))
        name = path.rsplit("/", 1)[-1].removesuffix(".scx")
        print(f"{name}: Z {hz} | Q/Z {hqz}")
