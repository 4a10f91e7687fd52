# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Double-double accumulation of ``sum_N c_N omega^(kN)`` on a circle of nodes.

Numbers are unevaluated pairs ``hi + lo`` of doubles (about 32 significant
digits).  Products use Dekker's splitting, so the result does not depend on
whether the platform fuses multiply-add; build with -ffp-contract=off.
"""
from cpython.array cimport array, clone

cdef inline void _two_sum(double a, double b, double* s, double* e) noexcept nogil:
    cdef double t = a + b
    cdef double bb = t - a
    s[0] = t
    e[0] = (a - (t - bb)) + (b - bb)


cdef inline void _quick_two_sum(double a, double b, double* s, double* e) noexcept nogil:
    cdef double t = a + b
    s[0] = t
    e[0] = b - (t - a)


cdef inline void _split(double a, double* hi, double* lo) noexcept nogil:
    cdef double t = 134217729.0 * a
    hi[0] = t - (t - a)
    lo[0] = a - hi[0]


cdef inline void _mul_acc(double ch, double cl, double sh, double sl,
                          double xh, double xl, double xsh, double xsl,
                          double* acc_h, double* acc_l) noexcept nogil:
    # (ch + cl) * (xh + xl) added into (acc_h + acc_l); sh/sl and xsh/xsl are
    # the precomputed Dekker halves of ch and xh.
    cdef double p = ch * xh
    cdef double e = ((sh * xsh - p) + sh * xsl + sl * xsh) + sl * xsl
    e += ch * xl + cl * xh
    _quick_two_sum(p, e, &p, &e)
    cdef double s, t
    _two_sum(acc_h[0], p, &s, &t)
    t += acc_l[0] + e
    _quick_two_sum(s, t, acc_h, acc_l)


def circle_sums(double[::1] c_hi, double[::1] c_lo,
                double[::1] cos_hi, double[::1] cos_lo,
                double[::1] sin_hi, double[::1] sin_lo,
                long[::1] ks):
    """Real and imaginary parts of ``sum_{N>=1} c_N omega^(kN)`` for each k in ks.

    Returns four ``array('d')``: re_hi, re_lo, im_hi, im_lo.
    """
    cdef Py_ssize_t D = c_hi.shape[0]
    cdef Py_ssize_t nn = cos_hi.shape[0]
    cdef Py_ssize_t nk = ks.shape[0]
    cdef array tmpl = array("d")
    cdef array re_hi = clone(tmpl, nk, False)
    cdef array re_lo = clone(tmpl, nk, False)
    cdef array im_hi = clone(tmpl, nk, False)
    cdef array im_lo = clone(tmpl, nk, False)
    cdef double[::1] rh = re_hi, rl = re_lo, ih = im_hi, il = im_lo
    cdef array cs_h = clone(tmpl, D, False)
    cdef array cs_l = clone(tmpl, D, False)
    cdef array cos_sh = clone(tmpl, nn, False)
    cdef array cos_sl = clone(tmpl, nn, False)
    cdef array sin_sh = clone(tmpl, nn, False)
    cdef array sin_sl = clone(tmpl, nn, False)
    cdef double[::1] csh = cs_h, csl = cs_l
    cdef double[::1] ch_ = cos_sh, cl_ = cos_sl, sh_ = sin_sh, sl_ = sin_sl
    cdef Py_ssize_t i, j, N, idx, k
    cdef double a_h, a_l, b_h, b_l
    with nogil:
        for N in range(D):
            _split(c_hi[N], &csh[N], &csl[N])
        for i in range(nn):
            _split(cos_hi[i], &ch_[i], &cl_[i])
            _split(sin_hi[i], &sh_[i], &sl_[i])
        for j in range(nk):
            k = ks[j] % nn
            a_h = 0.0
            a_l = 0.0
            b_h = 0.0
            b_l = 0.0
            idx = 0
            for N in range(1, D):
                idx += k
                if idx >= nn:
                    idx -= nn
                if c_hi[N] == 0.0:
                    continue
                _mul_acc(c_hi[N], c_lo[N], csh[N], csl[N],
                         cos_hi[idx], cos_lo[idx], ch_[idx], cl_[idx], &a_h, &a_l)
                _mul_acc(c_hi[N], c_lo[N], csh[N], csl[N],
                         sin_hi[idx], sin_lo[idx], sh_[idx], sl_[idx], &b_h, &b_l)
            rh[j] = a_h
            rl[j] = a_l
            ih[j] = b_h
            il[j] = b_l
    return re_hi, re_lo, im_hi, im_lo
