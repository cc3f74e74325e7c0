"""Independent brute-force oracles used to cross-check the library.

Everything here is deliberately written from the definitions with plain
Python integers and loops: no table reuse, no vectorized shortcuts, and no
imports from the package under test.  Index conventions (residues, a + n*b
for Gaussian pairs, row-major matrix digits) are reimplemented from their
definitions so that image arrays are directly comparable.
"""

from __future__ import annotations

import itertools


class OracleRing:
    def __init__(self, size, add, mul, zero, one, star=None, i_elem=None):
        self.size = size
        self.add = add
        self.mul = mul
        self.zero = zero
        self.one = one
        self.star = star
        self.i_elem = i_elem


def oracle_zmod(n: int) -> OracleRing:
    i_elem = None
    for x in range(n):
        if (x * x) % n == (n - 1) % n:
            i_elem = x
            break
    return OracleRing(
        size=n,
        add=lambda a, b: (a + b) % n,
        mul=lambda a, b: (a * b) % n,
        zero=0,
        one=1 % n,
        star=lambda a: a,
        i_elem=i_elem,
    )


def oracle_gauss(n: int) -> OracleRing:
    def dec(x):
        return x % n, x // n

    def enc(a, b):
        return (a % n) + n * (b % n)

    def add(x, y):
        a, b = dec(x)
        c, d = dec(y)
        return enc(a + c, b + d)

    def mul(x, y):
        a, b = dec(x)
        c, d = dec(y)
        return enc(a * c - b * d, a * d + b * c)

    return OracleRing(
        size=n * n, add=add, mul=mul, zero=0, one=1 % (n * n),
        star=lambda x: enc(dec(x)[0], -dec(x)[1]),
        i_elem=n % (n * n),
    )


def oracle_mat2(base: OracleRing) -> OracleRing:
    B = base.size

    def dec(x):
        d3 = x % B
        x //= B
        d2 = x % B
        x //= B
        d1 = x % B
        return (x // B, d1, d2, d3)

    def enc(d0, d1, d2, d3):
        return ((d0 * B + d1) * B + d2) * B + d3

    def add(x, y):
        a = dec(x)
        b = dec(y)
        return enc(*(base.add(p, q) for p, q in zip(a, b)))

    def mul(x, y):
        a0, a1, a2, a3 = dec(x)
        b0, b1, b2, b3 = dec(y)
        return enc(
            base.add(base.mul(a0, b0), base.mul(a1, b2)),
            base.add(base.mul(a0, b1), base.mul(a1, b3)),
            base.add(base.mul(a2, b0), base.mul(a3, b2)),
            base.add(base.mul(a2, b1), base.mul(a3, b3)),
        )

    star = None
    if base.star is not None:
        def star(x):
            d0, d1, d2, d3 = dec(x)
            return enc(base.star(d0), base.star(d2), base.star(d1), base.star(d3))

    i_elem = None
    if base.i_elem is not None:
        i_elem = enc(base.i_elem, base.zero, base.zero, base.i_elem)

    ring = OracleRing(size=B**4, add=add, mul=mul,
                      zero=enc(base.zero, base.zero, base.zero, base.zero),
                      one=enc(base.one, base.zero, base.zero, base.one),
                      star=star, i_elem=i_elem)
    ring.dec = dec
    ring.enc = enc
    ring.base = base
    return ring


def mat2_unit(ring, i, j):
    """Index of e_ij in an oracle_mat2 ring."""
    d = [ring.base.zero] * 4
    d[2 * i + j] = ring.base.one
    return ring.enc(*d)


def det_image(ring) -> list[int]:
    """ad - bc over the decoded entries of an oracle_mat2 ring."""
    base = ring.base
    neg_one = next(t for t in range(base.size)
                   if base.add(base.one, t) == base.zero)
    out = []
    for x in range(ring.size):
        a, b, c, d = ring.dec(x)
        out.append(base.add(base.mul(a, d),
                            base.mul(neg_one, base.mul(b, c))))
    return out


def all_functions(dom_size: int, cod_size: int):
    """All image tuples in lexicographic order."""
    return itertools.product(range(cod_size), repeat=dom_size)


def is_multiplicative(dom: OracleRing, cod: OracleRing, img) -> bool:
    for x in range(dom.size):
        for y in range(dom.size):
            if img[dom.mul(x, y)] != cod.mul(img[x], img[y]):
                return False
    return True


def is_additive(dom: OracleRing, cod: OracleRing, img) -> bool:
    for x in range(dom.size):
        for y in range(dom.size):
            if img[dom.add(x, y)] != cod.add(img[x], img[y]):
                return False
    return True


def corner_holds(dom, cod, img) -> bool:
    e11 = mat2_unit(dom, 0, 0)
    e22 = mat2_unit(dom, 1, 1)
    return img[dom.one] == cod.add(img[e11], img[e22])


def respects_star(dom, cod, img) -> bool:
    return all(img[dom.star(x)] == cod.star(img[x]) for x in range(dom.size))


def multiplicative_functions(dom: OracleRing, cod: OracleRing) -> list[tuple]:
    """All multiplicative image tuples, lexicographic order."""
    return [img for img in all_functions(dom.size, cod.size)
            if is_multiplicative(dom, cod, img)]


def ring_axioms_hold(ring: OracleRing) -> bool:
    """Raw triple-loop check of every ring axiom.  Small rings only."""
    n = ring.size
    for a in range(n):
        if ring.add(a, ring.zero) != a or ring.add(ring.zero, a) != a:
            return False
        if ring.mul(a, ring.one) != a or ring.mul(ring.one, a) != a:
            return False
        if not any(ring.add(a, b) == ring.zero for b in range(n)):
            return False
    for a in range(n):
        for b in range(n):
            if ring.add(a, b) != ring.add(b, a):
                return False
            for c in range(n):
                if ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c)):
                    return False
                if ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c)):
                    return False
                if ring.mul(a, ring.add(b, c)) != ring.add(ring.mul(a, b), ring.mul(a, c)):
                    return False
                if ring.mul(ring.add(a, b), c) != ring.add(ring.mul(a, c), ring.mul(b, c)):
                    return False
    return True


def shortest_unit_sum(ring: OracleRing, pool: list[int], x: int,
                      kmax: int) -> list[int] | None:
    """First shortest decomposition in lexicographic multiset order."""
    for m in range(1, kmax + 1):
        for combo in itertools.combinations_with_replacement(pool, m):
            total = combo[0]
            for u in combo[1:]:
                total = ring.add(total, u)
            if total == x:
                return list(combo)
    return None
