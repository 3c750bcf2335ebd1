# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse row echelon over F_p (same contract as echelon_py)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int8_t
from libcpp.vector cimport vector

cnp.import_array()


cdef inline int64_t _inv(int64_t a, int64_t p):
    cdef int64_t result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


cdef inline int64_t _reduce_acc(int64_t[::1] acc, int64_t lo, int64_t hi,
                                int64_t[::1] piv, vector[int64_t]& pstart,
                                vector[int64_t]& plen, vector[int64_t]& pcols,
                                vector[int64_t]& pvals, int64_t p, int64_t skip):
    """Eliminate pivot columns in acc[lo..hi]; returns the new hi."""
    cdef int64_t c, v, r, k, s, n, cc, t
    c = lo
    while c <= hi:
        v = acc[c]
        if v != 0 and c != skip:
            r = piv[c]
            if r >= 0:
                s = pstart[r]
                n = plen[r]
                for k in range(n):
                    cc = pcols[s + k]
                    t = (v * pvals[s + k]) % p
                    acc[cc] -= t
                    if acc[cc] < 0:
                        acc[cc] += p
                    if cc > hi:
                        hi = cc
        c += 1
    return hi


def echelonize(cnp.int64_t[::1] indptr, cnp.int64_t[::1] indices, cnp.int64_t[::1] data,
               int64_t ncols, int64_t p, int64_t n_fixed, int64_t backreduce_from):
    cdef int64_t nrows = indptr.shape[0] - 1
    cdef int64_t[::1] acc = np.zeros(max(ncols, 1), dtype=np.int64)
    cdef int64_t[::1] piv = np.full(max(ncols, 1), -1, dtype=np.int64)
    cdef vector[int64_t] pstart, plen, pcols, pvals
    cdef int64_t r, a, b, k, c, lo, hi, lead, inv, npiv = 0, v, nout
    cdef int8_t[::1] flags = np.zeros(max(nrows - n_fixed, 0), dtype=np.int8)
    cdef int64_t[::1] lead_of = np.full(max(nrows - n_fixed, 0), -1, dtype=np.int64)

    for r in range(n_fixed):
        a = indptr[r]
        b = indptr[r + 1]
        inv = _inv(data[a], p)
        pstart.push_back(pcols.size())
        plen.push_back(b - a)
        for k in range(a, b):
            pcols.push_back(indices[k])
            pvals.push_back((data[k] * inv) % p)
        piv[indices[a]] = npiv
        npiv += 1

    for r in range(n_fixed, nrows):
        a = indptr[r]
        b = indptr[r + 1]
        if a == b:
            continue
        lo = ncols
        hi = -1
        for k in range(a, b):
            c = indices[k]
            acc[c] = data[k] % p
            if c < lo:
                lo = c
            if c > hi:
                hi = c
        hi = _reduce_acc(acc, lo, hi, piv, pstart, plen, pcols, pvals, p, -1)
        lead = -1
        for c in range(lo, hi + 1):
            if acc[c] != 0:
                lead = c
                break
        if lead < 0:
            continue
        inv = _inv(acc[lead], p)
        pstart.push_back(pcols.size())
        nout = 0
        for c in range(lead, hi + 1):
            v = acc[c]
            if v != 0:
                pcols.push_back(c)
                pvals.push_back((v * inv) % p)
                acc[c] = 0
                nout += 1
        plen.push_back(nout)
        piv[lead] = npiv
        npiv += 1
        flags[r - n_fixed] = 1
        lead_of[r - n_fixed] = lead

    out_cols = []
    out_vals = []
    cdef int64_t pr, s, n
    for r in range(nrows - n_fixed):
        lead = lead_of[r]
        if lead < 0:
            out_cols.append(np.zeros(0, dtype=np.int64))
            out_vals.append(np.zeros(0, dtype=np.int64))
            continue
        pr = piv[lead]
        s = pstart[pr]
        n = plen[pr]
        if r + n_fixed >= backreduce_from:
            hi = lead
            for k in range(n):
                c = pcols[s + k]
                acc[c] = pvals[s + k]
                if c > hi:
                    hi = c
            hi = _reduce_acc(acc, lead, hi, piv, pstart, plen, pcols, pvals, p, lead)
            cols = []
            vals = []
            for c in range(lead, hi + 1):
                v = acc[c]
                if v != 0:
                    cols.append(c)
                    vals.append(v)
                    acc[c] = 0
            out_cols.append(np.asarray(cols, dtype=np.int64))
            out_vals.append(np.asarray(vals, dtype=np.int64))
        else:
            out_cols.append(np.asarray([pcols[s + k] for k in range(n)], dtype=np.int64))
            out_vals.append(np.asarray([pvals[s + k] for k in range(n)], dtype=np.int64))

    out_ptr = np.zeros(len(out_cols) + 1, dtype=np.int64)
    for r in range(len(out_cols)):
        out_ptr[r + 1] = out_ptr[r] + out_cols[r].shape[0]
    if out_cols:
        out_idx = np.concatenate(out_cols)
        out_dat = np.concatenate(out_vals)
    else:
        out_idx = np.zeros(0, dtype=np.int64)
        out_dat = np.zeros(0, dtype=np.int64)
    return out_ptr, out_idx, out_dat, np.asarray(flags)
