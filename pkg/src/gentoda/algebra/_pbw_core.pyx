# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled PBW normal-ordering kernel.

Same contract as ``_pbw_py.PBWKernel``.  Monomials are packed into 64-bit
words, 5 bits per factor with the last factor in the low bits, so at most
11 factors and 30 generators (n <= 5).  Coefficients are 64-bit with
overflow checks; anything out of range is delegated to the Python kernel.
"""

from libc.stdint cimport uint64_t
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from libcpp.utility cimport pair
from cython.operator cimport dereference as deref, preincrement as inc

from . import _pbw_py
from .basis import mixed_basis

cdef extern from *:
    """
    static inline int gt_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int gt_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int gt_mul_ovf(long long a, long long b, long long *r) nogil
    int gt_add_ovf(long long a, long long b, long long *r) nogil

ctypedef long long i64
ctypedef pair[uint64_t, i64] Term
ctypedef pair[int, i64] BTerm
ctypedef vector[Term] Poly

cdef enum:
    MAXLEN = 11
    MAXGEN = 30


class KernelOverflow(OverflowError):
    pass


cdef inline int word_len(uint64_t m) nogil:
    cdef int k = 0
    while m:
        m >>= 5
        k += 1
    return k


cdef class PBWKernel:
    cdef readonly int n
    cdef int size
    cdef vector[vector[vector[BTerm]]] bracket
    cdef unordered_map[uint64_t, Poly] gen_memo
    cdef dict _mono_memo
    cdef object _fallback

    backend = "compiled"

    def __init__(self, int n):
        cdef int h, g
        basis = mixed_basis(n)
        if basis.size > MAXGEN:
            raise ValueError("compiled kernel supports n <= 5")
        self.n = n
        self.size = basis.size
        self._mono_memo = {}
        self._fallback = None
        self.bracket.resize(self.size)
        for h in range(self.size):
            self.bracket[h].resize(self.size)
            for g in range(self.size):
                for c, coef in basis.bracket[h][g]:
                    self.bracket[h][g].push_back(BTerm(c, coef))

    cdef Poly* mul_gen(self, uint64_t m, int g) except NULL:
        cdef uint64_t key = (m << 5) | <uint64_t>g
        cdef unordered_map[uint64_t, Poly].iterator it = self.gen_memo.find(key)
        if it != self.gen_memo.end():
            return &deref(it).second
        cdef Poly out
        cdef int h
        cdef uint64_t head
        cdef unordered_map[uint64_t, long long] acc
        cdef unordered_map[uint64_t, long long].iterator ait
        cdef Poly* p1
        cdef Poly* p2
        cdef size_t a, b
        cdef long long prod, s
        cdef BTerm bc
        if m == 0 or <int>(m & 31) - 1 <= g:
            if word_len(m) >= MAXLEN:
                raise KernelOverflow("monomial too long for packed kernel")
            out.push_back(Term((m << 5) | <uint64_t>(g + 1), 1))
        else:
            h = <int>(m & 31) - 1
            head = m >> 5
            p1 = self.mul_gen(head, g)
            for a in range(p1.size()):
                p2 = self.mul_gen(deref(p1)[a].first, h)
                for b in range(p2.size()):
                    if gt_mul_ovf(deref(p1)[a].second, deref(p2)[b].second, &prod):
                        raise KernelOverflow("coefficient overflow")
                    s = acc[deref(p2)[b].first]
                    if gt_add_ovf(s, prod, &s):
                        raise KernelOverflow("coefficient overflow")
                    acc[deref(p2)[b].first] = s
            for a in range(self.bracket[h][g].size()):
                bc = self.bracket[h][g][a]
                p1 = self.mul_gen(head, bc.first)
                for b in range(p1.size()):
                    if gt_mul_ovf(bc.second, deref(p1)[b].second, &prod):
                        raise KernelOverflow("coefficient overflow")
                    s = acc[deref(p1)[b].first]
                    if gt_add_ovf(s, prod, &s):
                        raise KernelOverflow("coefficient overflow")
                    acc[deref(p1)[b].first] = s
            ait = acc.begin()
            while ait != acc.end():
                if deref(ait).second != 0:
                    out.push_back(Term(deref(ait).first, deref(ait).second))
                inc(ait)
        self.gen_memo[key] = out
        return &self.gen_memo[key]

    cdef dict _mul_packed(self, tuple m1, tuple m2):
        cdef uint64_t w = 0
        cdef int g
        if len(m1) > MAXLEN or len(m1) + len(m2) > MAXLEN:
            raise KernelOverflow("monomial too long for packed kernel")
        for g in m1:
            w = (w << 5) | <uint64_t>(g + 1)
        cdef unordered_map[uint64_t, long long] acc
        cdef unordered_map[uint64_t, long long] nxt
        cdef unordered_map[uint64_t, long long].iterator it
        cdef Poly* p
        cdef size_t b
        cdef long long prod, s
        acc[w] = 1
        for g in m2:
            nxt.clear()
            it = acc.begin()
            while it != acc.end():
                if deref(it).second != 0:
                    p = self.mul_gen(deref(it).first, g)
                    for b in range(p.size()):
                        if gt_mul_ovf(deref(it).second, deref(p)[b].second, &prod):
                            raise KernelOverflow("coefficient overflow")
                        s = nxt[deref(p)[b].first]
                        if gt_add_ovf(s, prod, &s):
                            raise KernelOverflow("coefficient overflow")
                        nxt[deref(p)[b].first] = s
                inc(it)
            acc.swap(nxt)
        cdef dict out = {}
        it = acc.begin()
        while it != acc.end():
            if deref(it).second != 0:
                out[_unpack(deref(it).first)] = deref(it).second
            inc(it)
        return out

    def mul_gen_py(self, tuple m, int g):
        """Normal form of ``m * x_g`` (mainly for tests)."""
        return self.mul(m, (g,))

    def mul(self, tuple m1, tuple m2):
        """Normal form of ``m1 * m2`` as ``{monomial: int}``; do not mutate."""
        if not m2:
            return {m1: 1}
        if not m1 or m1[len(m1) - 1] <= m2[0]:
            return {m1 + m2: 1}
        key = (m1, m2)
        hit = self._mono_memo.get(key)
        if hit is not None:
            return hit
        try:
            out = self._mul_packed(m1, m2)
        except KernelOverflow:
            if self._fallback is None:
                self._fallback = _pbw_py.PBWKernel(self.n)
            out = self._fallback.mul(m1, m2)
        self._mono_memo[key] = out
        return out


cdef tuple _unpack(uint64_t w):
    cdef list digits = []
    while w:
        digits.append(<int>(w & 31) - 1)
        w >>= 5
    digits.reverse()
    return tuple(digits)
