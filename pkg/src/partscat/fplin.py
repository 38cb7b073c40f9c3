"""Linear algebra over the prime field on integer-encoded vectors.

A vector of length L over Z_p is encoded as ``sum(v[i] * p**i)``, the same
convention :mod:`partscat.gf` uses for field elements.  A pair (u, v) of
elements of F_{p^d} is encoded as ``u + v * p**d``.
"""


class FpSpan:
    """Incrementally built F_p-span with an echelon basis.

    >>> S = FpSpan(2, 4)
    >>> S.add(0b0011), S.add(0b0101), S.add(0b0110)
    (True, True, False)
    >>> S.dim
    2
    """

    def __init__(self, p, length, vectors=()):
        self.p = p
        self.length = length
        self._rows = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self):
        return len(self._rows)

    def reduce(self, v):
        """Reduce ``v`` against the basis; zero iff ``v`` is in the span."""
        if self.p == 2:
            rows = self._rows
            while v:
                hb = v.bit_length() - 1
                row = rows.get(hb)
                if row is None:
                    return v
                v ^= row
            return 0
        p = self.p
        digits = _digits(v, p, self.length)
        for i in range(self.length - 1, -1, -1):
            c = digits[i]
            if c and i in self._rows:
                row = self._rows[i]
                digits = [(x - c * y) % p for x, y in zip(digits, row)]
        return _undigits(digits, p)

    def add(self, v):
        """Insert ``v``; returns True when it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        if self.p == 2:
            self._rows[r.bit_length() - 1] = r
            return True
        p = self.p
        digits = _digits(r, p, self.length)
        piv = max(i for i, c in enumerate(digits) if c)
        inv = pow(digits[piv], p - 2, p)
        self._rows[piv] = [c * inv % p for c in digits]
        return True

    def __contains__(self, v):
        return self.reduce(v) == 0


def _digits(v, p, length):
    out = []
    for _ in range(length):
        out.append(v % p)
        v //= p
    return out


def _undigits(digits, p):
    v = 0
    for c in reversed(digits):
        v = v * p + c
    return v


def rank(vectors, p, length):
    return FpSpan(p, length, vectors).dim


def kernel(images, p, in_len, out_len):
    """Kernel basis of the F_p-linear map sending unit vector i to images[i].

    Kernel vectors are returned in input coordinates (integer-encoded).
    """
    shift = p**in_len
    span = FpSpan(p, in_len + out_len)
    out = []
    for i, img in enumerate(images):
        aug = p**i + img * shift
        r = span.reduce(aug)
        if r and r < shift:
            out.append(r)
        elif r:
            span.add(r)
    return out


def combinations(basis, p, add):
    """All F_p-linear combinations of ``basis`` using the addition ``add``.

    ``add(x, c, b)`` must return x + c*b.  Yields ``p**len(basis)`` values.
    """
    acc = [0]
    for b in basis:
        acc = [add(x, c, b) for x in acc for c in range(p)]
    return acc
