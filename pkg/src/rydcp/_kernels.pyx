# Compiled versions of the loops in _kernels_py.py.  Same formulas, same
# series cutoff.  Arithmetic is spelled out in real parts so each angle costs
# one sincos call; terms are summed plainly in blocks of BLOCK and the block
# partials are Neumaier-compensated.

from libc.math cimport cos, sin, fabs

import numpy as np

cdef enum:
    SERIES_TERMS = 18
    BLOCK = 128

cdef double SERIES_CUTOFF = 0.5

cdef double _A_COEF[SERIES_TERMS]
cdef double _W1_COEF[SERIES_TERMS]


cdef void _init_coef():
    cdef int k
    cdef double fact = 1.0  # k!
    for k in range(SERIES_TERMS):
        if k > 0:
            fact *= k
        _A_COEF[k] = 1.0 / (fact * (k + 1))
        _W1_COEF[k] = 1.0 / (fact * (k + 2))


_init_coef()


cdef inline void _neumaier(double *s, double *c, double x) nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


cdef inline void _weights(double x, double complex *w0, double complex *w1) nogil:
    cdef double complex ix, a, b
    cdef double c, s
    cdef int k
    if fabs(x) < SERIES_CUTOFF:
        ix = 1j * x
        a = _A_COEF[SERIES_TERMS - 1]
        b = _W1_COEF[SERIES_TERMS - 1]
        for k in range(SERIES_TERMS - 2, -1, -1):
            a = a * ix + _A_COEF[k]
            b = b * ix + _W1_COEF[k]
    else:
        c = cos(x)
        s = sin(x)
        a = (s + 1j * (1.0 - c)) / x
        b = (s / x + (c - 1.0) / (x * x)) + 1j * (s / (x * x) - c / x)
    w0[0] = a - b
    w1[0] = b


def segment_weights(x):
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    cdef Py_ssize_t i, n = flat.shape[0]
    cdef const double[::1] xv = np.ascontiguousarray(flat)
    out0 = np.empty(n, dtype=complex)
    out1 = np.empty(n, dtype=complex)
    cdef double complex[::1] o0 = out0
    cdef double complex[::1] o1 = out1
    cdef double complex w0, w1
    for i in range(n):
        _weights(xv[i], &w0, &w1)
        o0[i] = w0
        o1[i] = w1
    return out0.reshape(x.shape), out1.reshape(x.shape)


cdef struct Acc:
    double block_re, block_im, s_re, c_re, s_im, c_im
    int count


cdef inline void _acc_init(Acc *acc) nogil:
    acc.block_re = acc.block_im = acc.s_re = acc.c_re = acc.s_im = acc.c_im = 0.0
    acc.count = 0


cdef inline void _acc_flush(Acc *acc) nogil:
    _neumaier(&acc.s_re, &acc.c_re, acc.block_re)
    _neumaier(&acc.s_im, &acc.c_im, acc.block_im)
    acc.block_re = acc.block_im = 0.0
    acc.count = 0


cdef inline void _acc_add(Acc *acc, double re, double im) nogil:
    acc.block_re += re
    acc.block_im += im
    acc.count += 1
    if acc.count == BLOCK:
        _acc_flush(acc)


cdef inline object _acc_result(Acc *acc):
    _acc_flush(acc)
    return complex(acc.s_re + acc.c_re, acc.s_im + acc.c_im)


def linear_phase_integral(times, values, double omega, double t_end):
    cdef const double[::1] tv = np.ascontiguousarray(times, dtype=float)
    cdef const double[::1] fv = np.ascontiguousarray(values, dtype=float)
    cdef Py_ssize_t n = tv.shape[0]
    cdef Py_ssize_t i
    cdef double ta, tb, fa, fb, h, ph, cp, sp, vr, vi
    cdef double complex w0, w1
    cdef Acc acc
    _acc_init(&acc)
    with nogil:
        for i in range(n - 1):
            ta = tv[i]
            if ta >= t_end:
                break
            tb = tv[i + 1]
            fa = fv[i]
            fb = fv[i + 1]
            if tb > t_end:
                fb = fa + (t_end - ta) / (tb - ta) * (fb - fa)
                tb = t_end
            h = tb - ta
            _weights(omega * h, &w0, &w1)
            ph = omega * ta
            cp = cos(ph)
            sp = sin(ph)
            vr = fa * w0.real + fb * w1.real
            vi = fa * w0.imag + fb * w1.imag
            _acc_add(&acc, h * (cp * vr - sp * vi), h * (cp * vi + sp * vr))
    return _acc_result(&acc)


def spectral_kernel_sum(omegas, g, double omega0, double t):
    cdef const double[::1] wv = np.ascontiguousarray(omegas, dtype=float)
    cdef const double complex[::1] gv = np.ascontiguousarray(g, dtype=complex)
    cdef Py_ssize_t i, n = wv.shape[0]
    cdef double half, sh, ch, sc, kr, ki, gr, gi
    cdef Acc acc
    _acc_init(&acc)
    with nogil:
        for i in range(n):
            half = 0.5 * (wv[i] - omega0) * t
            sh = sin(half)
            ch = cos(half)
            if fabs(half) < 1e-4:
                sc = 1.0 - half * half / 6.0 + half * half * half * half / 120.0
            else:
                sc = sh / half
            # -i t sinc (cos - i sin)
            kr = -t * sc * sh
            ki = -t * sc * ch
            gr = gv[i].real
            gi = gv[i].imag
            _acc_add(&acc, gr * kr - gi * ki, gr * ki + gi * kr)
    return _acc_result(&acc)
