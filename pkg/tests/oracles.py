"""Independent brute-force reference implementations used by the tests.

Field arithmetic here is schoolbook polynomial multiplication modulo the
modulus, with no log tables, and the scattering properties are checked
straight from their definitions over all pairs (y, z).
"""


class NaiveField:
    def __init__(self, p, modulus):
        self.p = p
        self.mod = list(modulus)
        self.d = len(modulus) - 1
        self.order = p**self.d

    def digits(self, a):
        out = []
        for _ in range(self.d):
            out.append(a % self.p)
            a //= self.p
        return out

    def undigits(self, c):
        v = 0
        for x in reversed(c):
            v = v * self.p + x
        return v

    def add(self, a, b):
        return self.undigits([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self.undigits([(-x) % self.p for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        p, d = self.p, self.d
        A, B = self.digits(a), self.digits(b)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(A):
            if x:
                for j, y in enumerate(B):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c:
                for i in range(d + 1):
                    prod[k - d + i] = (prod[k - d + i] - c * self.mod[i]) % p
        return self.undigits(prod[:d])

    def pow(self, a, e):
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def inv(self, a):
        return self.pow(a, self.order - 2)

    def elements(self):
        return range(self.order)


def naive_of(ctx):
    return NaiveField(ctx.p, ctx.modulus)


def poly_values(K, coeffs, q):
    """{x: sum a_i x^(q^i)} over the whole field."""
    out = {}
    for x in K.elements():
        acc = 0
        for i, a in enumerate(coeffs):
            if a:
                acc = K.add(acc, K.mul(a, K.pow(x, q**i)))
        out[x] = acc
    return out


def in_sub(K, r, q, m):
    return K.pow(r, q**m) == r


def brute_property(K, coeffs, q, prop, t=1, ell=0):
    """Decide scattered / L / R straight from the definition."""
    vals = poly_values(K, coeffs, q)
    nz = [x for x in K.elements() if x]
    tw = {x: K.pow(x, q**ell) for x in nz}
    for y in nz:
        for z in nz:
            if K.mul(vals[y], tw[z]) != K.mul(vals[z], tw[y]):
                continue
            r = K.mul(y, K.inv(z))
            if prop == "scattered" and not in_sub(K, r, q, 1):
                return False
            if prop == "L" and not in_sub(K, r, q, t):
                return False
            if prop == "R" and in_sub(K, r, q, t) and not in_sub(K, r, q, 1):
                return False
    return True


def brute_kernel_size(K, coeffs, q):
    return sum(1 for v in poly_values(K, coeffs, q).values() if v == 0)


def brute_stabilizer(K, coeffs, q):
    """All invertible (a b; c d) mapping {(x, f(x))} onto itself."""
    vals = poly_values(K, coeffs, q)
    graph = set(vals.items())
    out = []
    E = list(K.elements())
    for a in E:
        for b in E:
            for c in E:
                for d in E:
                    if K.sub(K.mul(a, d), K.mul(b, c)) == 0:
                        continue
                    if all(
                        (K.add(K.mul(a, x), K.mul(b, y)), K.add(K.mul(c, x), K.mul(d, y))) in graph
                        for x, y in vals.items()
                    ):
                        out.append(((a, b), (c, d)))
    return out
