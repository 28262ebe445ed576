# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled point-counting kernel; same algorithm and interface as ``_kernels_py``."""

import numpy as np


cdef inline long long _pmod(long long a, long long m) nogil:
    a = a % m
    return a + m if a < 0 else a


cdef class FieldTables:
    cdef public long long p, n, Q, N1, ZERO, half
    cdef int[::1] _exp
    cdef int[::1] _log
    cdef int[::1] _zech
    cdef object _roots_arr
    cdef object exp_arr, log_arr, zech_arr

    def __init__(self, long long p, long long n, modulus):
        if len(modulus) != n:
            raise ValueError("modulus must have n low coefficients")
        self.p = p
        self.n = n
        self.Q = p ** n
        self.N1 = self.Q - 1
        self.ZERO = self.N1
        self.half = self.N1 // 2
        self.exp_arr = np.zeros(self.N1, dtype=np.int32)
        self.log_arr = np.full(self.Q, self.ZERO, dtype=np.int32)
        self.zech_arr = np.full(self.N1, self.ZERO, dtype=np.int32)
        self._exp = self.exp_arr
        self._log = self.log_arr
        self._zech = self.zech_arr
        self._roots_arr = None
        neg = np.array([(-c) % p for c in modulus], dtype=np.int64)
        cdef long long[::1] negm = neg
        cdef long long k, e = 1, top, out, scale, d, j
        cdef long long top_unit = p ** (n - 1)
        cdef bint bad = False
        with nogil:
            for k in range(self.N1):
                if self._log[e] != self.ZERO or (k > 0 and e == 1):
                    bad = True
                    break
                self._exp[k] = <int>e
                self._log[e] = <int>k
                top = e // top_unit
                e = (e - top * top_unit) * p
                if top:
                    out = 0
                    scale = 1
                    for j in range(n):
                        d = (e // scale) % p
                        out += ((d + top * negm[j]) % p) * scale
                        scale *= p
                    e = out
            if not bad:
                for k in range(self.N1):
                    d = self._exp[k]
                    if d % p == p - 1:
                        d = d - (p - 1)
                    else:
                        d = d + 1
                    self._zech[k] = self._log[d] if d else <int>self.ZERO
        if bad or e != 1:
            raise ValueError("modulus is not primitive")

    @property
    def exp(self):
        return self.exp_arr

    @property
    def log(self):
        return self.log_arr

    @property
    def zech(self):
        return self.zech_arr

    def from_encoded(self, e):
        return int(self._log[e])

    def to_encoded(self, la):
        return 0 if la == self.ZERO else int(self._exp[la])

    def mul(self, a, b):
        if a == self.ZERO or b == self.ZERO:
            return self.ZERO
        return (a + b) % self.N1

    def add(self, a, b):
        if a == self.ZERO:
            return b
        if b == self.ZERO:
            return a
        z = self._zech[(b - a) % self.N1]
        return self.ZERO if z == self.ZERO else (a + z) % self.N1

    def neg(self, a):
        return a if a == self.ZERO else (a + self.half) % self.N1

    def root_table(self):
        if self._roots_arr is None:
            R = np.zeros(self.N1, dtype=np.uint8)
            self._fill_roots(R)
            self._roots_arr = R
        return self._roots_arr

    cdef void _fill_roots(self, unsigned char[::1] R):
        cdef long long ly, z, N1 = self.N1, half = self.half, ZERO = self.ZERO
        with nogil:
            for ly in range(N1):
                z = self._zech[ly]
                if z == ZERO:
                    continue
                R[_pmod(half + 3 * ly - z, N1)] += 1

    def count_range(self, A, B, long long k0, long long k1, bint include_zero):
        cdef unsigned char[::1] R = self.root_table()
        Ar = np.array(list(reversed(A)), dtype=np.int64)
        Br = np.array(list(reversed(B)), dtype=np.int64)
        cdef long long[::1] av = Ar
        cdef long long[::1] bv = Br
        cdef Py_ssize_t na = av.shape[0], nb = bv.shape[0], i
        cdef long long N1 = self.N1, ZERO = self.ZERO, half = self.half
        cdef long long l4 = self._log[4 % self.p], l27 = self._log[27 % self.p]
        cdef bint cube_split = N1 % 3 == 0
        cdef long long total = 0, singular = 0
        cdef long long k, lt, a, b, c, z, u, v
        cdef long long start = k0 - 1 if include_zero else k0
        with nogil:
            for k in range(start, k1):
                lt = ZERO if k < k0 else k
                a = ZERO
                for i in range(na):
                    c = av[i]
                    if a != ZERO:
                        a = ZERO if lt == ZERO else (a + lt) % N1
                    if c != ZERO:
                        if a == ZERO:
                            a = c
                        else:
                            z = self._zech[_pmod(c - a, N1)]
                            a = ZERO if z == ZERO else (a + z) % N1
                b = ZERO
                for i in range(nb):
                    c = bv[i]
                    if b != ZERO:
                        b = ZERO if lt == ZERO else (b + lt) % N1
                    if c != ZERO:
                        if b == ZERO:
                            b = c
                        else:
                            z = self._zech[_pmod(c - b, N1)]
                            b = ZERO if z == ZERO else (b + z) % N1
                u = ZERO if a == ZERO else (l4 + 3 * a) % N1
                v = ZERO if b == ZERO else (l27 + 2 * b) % N1
                if u == ZERO and v == ZERO:
                    singular += 1
                    continue
                if u != ZERO and v != ZERO and self._zech[_pmod(v - u, N1)] == ZERO:
                    singular += 1
                    continue
                if b == ZERO:
                    total += 3 if (a + half) % 2 == 0 else 1
                elif a == ZERO:
                    if not cube_split:
                        total += 1
                    elif (b + half) % 3 == 0:
                        total += 3
                else:
                    total += R[_pmod(3 * a - 2 * b, N1)]
        return int(total), int(singular)
