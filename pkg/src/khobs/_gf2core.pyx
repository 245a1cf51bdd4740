# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled GF(2) Gaussian elimination on bit-packed uint64 matrices."""


def rank_packed(unsigned long long[:, ::1] m):
    """Rank of a bit matrix; rows are little-endian packed uint64 words.

    The buffer is eliminated in place.
    """
    cdef Py_ssize_t nrows = m.shape[0]
    cdef Py_ssize_t nwords = m.shape[1]
    cdef Py_ssize_t r = 0, i, j, w, piv
    cdef int b
    cdef unsigned long long pivbit, tmp
    for w in range(nwords):
        for b in range(64):
            pivbit = (<unsigned long long>1) << b
            piv = -1
            for i in range(r, nrows):
                if m[i, w] & pivbit:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(w, nwords):
                    tmp = m[r, j]
                    m[r, j] = m[piv, j]
                    m[piv, j] = tmp
            for i in range(nrows):
                if i != r and (m[i, w] & pivbit):
                    for j in range(w, nwords):
                        m[i, j] ^= m[r, j]
            r += 1
            if r == nrows:
                return r
    return r
