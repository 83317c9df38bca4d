"""Arithmetic over GF(2^m) via log/antilog tables.

Field elements are plain integers in [0, q) whose bits are polynomial
coefficients over GF(2); addition is XOR, multiplication goes through the
discrete-log tables.  The element ordering used everywhere in this package
is the integer order 0, 1, ..., q-1, so an element doubles as its own row
index in reliability / multiplicity matrices.
"""

from __future__ import annotations

import numpy as np

# Fixed primitive polynomials (bitmask includes the x^m term).  x (= 2) is a
# primitive element for all of them.
PRIMITIVE_POLYS = {
    2: 0x7,     # x^2 + x + 1
    4: 0x13,    # x^4 + x + 1
    8: 0x11D,   # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,   # x^9 + x^4 + 1
}


class GF:
    """GF(2^m) with precomputed exponential and logarithm tables.

    The exp table is doubled in length so that products of two logs can be
    looked up without a modular reduction.
    """

    def __init__(self, m: int, primitive_poly: int | None = None):
        if m not in PRIMITIVE_POLYS:
            raise ValueError(
                f"unsupported extension degree m={m}; supported: {sorted(PRIMITIVE_POLYS)}")
        self.m = m
        self.q = 1 << m
        self.primitive_poly = PRIMITIVE_POLYS[m] if primitive_poly is None else primitive_poly
        if not (self.q < self.primitive_poly < 2 * self.q):
            raise ValueError("primitive polynomial must have degree exactly m")

        n1 = self.q - 1
        exp = np.zeros(2 * n1, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        for i in range(n1):
            if x == 1 and i > 0:
                raise ValueError(f"polynomial {self.primitive_poly:#x} is not primitive")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.q:
                x ^= self.primitive_poly
        if x != 1:
            raise ValueError(f"polynomial {self.primitive_poly:#x} is not primitive")
        exp[n1:] = exp[:n1]
        self.exp_table = exp
        self.log_table = log
        self.alpha = int(exp[1])

    def __repr__(self):
        return f"GF(2^{self.m})"

    def elements(self) -> range:
        """All elements in the fixed ordering 0, 1, ..., q-1."""
        return range(self.q)

    # -- scalar operations --------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[self.log_table[a] + self.log_table[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in GF(2^m)")
        return int(self.exp_table[self.q - 1 - self.log_table[a]])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """a**e with the convention 0**0 = 1."""
        if e == 0:
            return 1
        if a == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] * e) % (self.q - 1)])

    def alpha_pow(self, e: int) -> int:
        """alpha**e for any integer e (negative allowed)."""
        return int(self.exp_table[e % (self.q - 1)])

    # -- vectorized operations ----------------------------------------------

    def mul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product of two arrays of field elements."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp_table[self.log_table[a] + self.log_table[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def scale_arr(self, c: int, arr: np.ndarray) -> np.ndarray:
        """Scalar times array of field elements."""
        arr = np.asarray(arr, dtype=np.int64)
        if c == 0:
            return np.zeros_like(arr)
        out = self.exp_table[self.log_table[arr] + self.log_table[c]]
        return np.where(arr == 0, 0, out)

    def powers(self, x: int, count: int) -> np.ndarray:
        """[x^0, x^1, ..., x^(count-1)]."""
        if count <= 0:
            return np.zeros(0, dtype=np.int64)
        if x == 0:
            out = np.zeros(count, dtype=np.int64)
            out[0] = 1
            return out
        idx = (self.log_table[x] * np.arange(count, dtype=np.int64)) % (self.q - 1)
        return self.exp_table[idx]

    # -- univariate polynomials (coefficients ascending, coeffs[i] ~ X^i) ----

    def poly_eval(self, coeffs, x: int) -> int:
        acc = 0
        for c in reversed(list(coeffs)):
            acc = self.mul(acc, x) ^ int(c)
        return acc

    def poly_eval_arr(self, coeffs, xs: np.ndarray) -> np.ndarray:
        """Evaluate one polynomial at many points (Horner)."""
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(list(coeffs)):
            acc = self.mul_arr(acc, xs) ^ int(c)
        return acc

    def poly_mul(self, a, b) -> np.ndarray:
        """Product of two polynomials over the field."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if len(a) > len(b):
            a, b = b, a
        out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
        for i, ai in enumerate(a):
            if ai:
                out[i:i + len(b)] ^= self.scale_arr(int(ai), b)
        return out


def build_field(m: int, primitive_poly: int | None = None) -> GF:
    """Construct GF(2^m) for m in {2, 4, 8, 9} (fixed default polynomials)."""
    return GF(m, primitive_poly)
