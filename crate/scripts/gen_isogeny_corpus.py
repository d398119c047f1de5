#!/usr/bin/env python3
"""Regenerate the golden isogeny-class files under data/isogeny/.

Records are Weil L-polynomials of elliptic curves (every trace allowed by
Waterhouse's theorem) and of abelian surfaces (products of two elliptic
classes, and simple ordinary surfaces), written one compact JSON object
per line.
"""

import argparse
import json
import math
from pathlib import Path


def prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return (p, e) if q == 1 else None
    return None


def admissible_traces(q):
    p, e = prime_power(q)
    out = []
    for a in range(-math.isqrt(4 * q), math.isqrt(4 * q) + 1):
        if a * a > 4 * q:
            continue
        if math.gcd(a, p) == 1:
            out.append(a)
        elif e % 2 == 0:
            r = math.isqrt(q)
            if abs(a) == 2 * r or (abs(a) == r and p % 3 != 1) or (a == 0 and p % 4 != 1):
                out.append(a)
        elif (a * a == p * q and p in (2, 3)) or a == 0:
            out.append(a)
    return out


def letters(k):
    s = ""
    while True:
        s = chr(ord("a") + k % 26) + s
        k //= 26
        if k == 0:
            return s


def label(g, q, coeffs):
    parts = []
    for c in coeffs[1 : g + 1]:
        parts.append(letters(c) if c >= 0 else "a" + letters(-c))
    return f"{g}.{q}.{'_'.join(parts)}"


def mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def record(q, coeffs):
    g = (len(coeffs) - 1) // 2
    return {"label": label(g, q, coeffs), "q": q, "g": g, "coeffs": coeffs}


def elliptic(q, a):
    return [1, -a, q]


def is_simple_ordinary_surface(q, a1, a2):
    # 1 + a1 T + a2 T^2 + q a1 T^3 + q^2 T^4 is Weil iff x^2 + a1 x + (a2 - 2q)
    # has real roots in [-2 sqrt q, 2 sqrt q]
    disc = a1 * a1 - 4 * (a2 - 2 * q)
    if disc <= 0 or math.isqrt(disc) ** 2 == disc:
        return False
    lo, hi = (-a1 - math.sqrt(disc)) / 2, (-a1 + math.sqrt(disc)) / 2
    p, _ = prime_power(q)
    return -2 * math.sqrt(q) < lo and hi < 2 * math.sqrt(q) and a2 % p != 0


def dumps(r):
    return json.dumps(r, separators=(",", ":"))


def corpus():
    recs = []
    for q in (2, 3, 4, 5, 7, 8, 9, 11):
        recs += [record(q, elliptic(q, a)) for a in admissible_traces(q)]
    for q in (2, 3):
        ts = admissible_traces(q)
        for i, a in enumerate(ts):
            b = ts[(2 * i + 1) % len(ts)]
            recs.append(record(q, mul(elliptic(q, a), elliptic(q, b))))
    for q in (2, 3, 5):
        for a1 in range(-3, 4):
            for a2 in range(-2 * q, 4 * q):
                if len(recs) < 100 and is_simple_ordinary_surface(q, a1, a2):
                    recs.append(record(q, [1, a1, a2, q * a1, q * q]))
    return recs[:100]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "isogeny")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    recs = corpus()
    assert len(recs) == 100, len(recs)
    (args.out / "corpus_100.jsonl").write_text("".join(dumps(r) + "\n" for r in recs))

    sample = [record(q, elliptic(q, a)) for q in (2, 4) for a in admissible_traces(q)]
    (args.out / "sample_elliptic.jsonl").write_text("".join(dumps(r) + "\n" for r in sample))

    lines = [dumps(r) for r in recs[:50]]
    bad = dict(recs[17])
    bad["coeffs"] = bad["coeffs"][:-1]
    lines[17] = dumps(bad)
    (args.out / "sample_malformed.jsonl").write_text("".join(line + "\n" for line in lines))


if __name__ == "__main__":
    main()
