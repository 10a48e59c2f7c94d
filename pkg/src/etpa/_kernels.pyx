# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.

Same algorithms and call signatures as ``etpa._kernels_py``; the two are
cross-checked in the test suite and compared in ``benchmarks/``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, log, fabs, NAN

cnp.import_array()

cdef double EULER = 0.57721566490153286060651209
cdef double HALF_PI = 1.57079632679489661923
cdef double PI = 3.14159265358979323846
cdef double SERIES_MAX = 4.0
cdef double EPS = 1e-16
cdef double FPMIN = 1e-300
cdef int MAXIT = 10000


cdef void _series(double x, double* si, double* cin) noexcept nogil:
    # x >= 0, x <= SERIES_MAX
    cdef double x2 = x * x
    cdef double t = x          # x^(2k+1)/(2k+1)!
    cdef double u = 0.5 * x2   # x^(2k)/(2k)!
    cdef double s = x
    cdef double c = 0.25 * x2
    cdef int k
    for k in range(1, 60):
        t *= -x2 / ((2.0 * k) * (2.0 * k + 1.0))
        u *= -x2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0))
        s += t / (2.0 * k + 1.0)
        c += u / (2.0 * k + 2.0)
        if fabs(t) < EPS * fabs(s) and fabs(u) < EPS * fabs(c):
            break
    si[0] = s
    cin[0] = c


cdef void _contfrac(double x, double* si, double* ci) noexcept nogil:
    # Lentz evaluation of E1(ix); x > SERIES_MAX
    cdef double complex b = 1.0 + 1j * x
    cdef double complex c = 1.0 / FPMIN
    cdef double complex d = 1.0 / b
    cdef double complex h = d
    cdef double complex dl
    cdef double a
    cdef int i
    for i in range(2, MAXIT):
        a = -(i - 1.0) * (i - 1.0)
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        dl = c * d
        h = h * dl
        if fabs(dl.real - 1.0) + fabs(dl.imag) < EPS:
            break
    h = h * (cos(x) - 1j * sin(x))
    ci[0] = -h.real
    si[0] = HALF_PI + h.imag


cdef void _sici(double x, double* si, double* ci, double* cin) noexcept nogil:
    """Si(x), Ci(|x|), Cin(|x|) with Si odd."""
    cdef double ax = fabs(x)
    cdef double s, c, n
    if ax == 0.0:
        si[0] = 0.0
        ci[0] = NAN
        cin[0] = 0.0
        return
    if ax <= SERIES_MAX:
        _series(ax, &s, &n)
        c = EULER + log(ax) - n
    else:
        _contfrac(ax, &s, &c)
        n = EULER + log(ax) - c
    if x < 0:
        s = -s
    si[0] = s
    ci[0] = c
    cin[0] = n


def sici(x):
    """Return (Si(x), Ci(|x|)) elementwise; Ci(0) is nan."""
    cdef cnp.ndarray[double, ndim=1] xs = np.ascontiguousarray(np.ravel(x), dtype=np.float64)
    cdef Py_ssize_t n = xs.shape[0]
    cdef cnp.ndarray[double, ndim=1] s = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] c = np.empty(n)
    cdef double dummy
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _sici(xs[i], &s[i], &c[i], &dummy)
    shape = np.shape(x)
    return s.reshape(shape), c.reshape(shape)


def cin(x):
    """Return Cin(|x|) = int_0^|x| (1 - cos u)/u du elementwise."""
    cdef cnp.ndarray[double, ndim=1] xs = np.ascontiguousarray(np.ravel(x), dtype=np.float64)
    cdef Py_ssize_t n = xs.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n)
    cdef double s, c
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _sici(xs[i], &s, &c, &out[i])
    return out.reshape(np.shape(x))


def gamma_profile(double nu, double band, t):
    """Band-limited time profile of one above-band level; see special_functions.gamma_m."""
    cdef cnp.ndarray[double, ndim=1] ts = np.ascontiguousarray(np.ravel(t), dtype=np.float64)
    cdef Py_ssize_t n = ts.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n)
    cdef double limit = log((nu + band) / (nu - band))
    cdef double tsmall = 1e-8 * PI / band
    cdef double at, a, b, sa, ca, na, sb, cb, nb, dci
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            at = fabs(ts[i])
            if at < tsmall:
                out[i] = limit
                continue
            a = (nu + band) * at
            b = (nu - band) * at
            _sici(a, &sa, &ca, &na)
            _sici(b, &sb, &cb, &nb)
            if a <= SERIES_MAX:
                dci = limit - na + nb
            else:
                dci = ca - cb
            out[i] = cos(nu * at) * dci + sin(nu * at) * (sa - sb)
    return out.reshape(np.shape(t))


def overlap(nu, w, dt):
    """Sum_m w[m] exp(-i nu[m] dt) for every dt."""
    cdef cnp.ndarray[double, ndim=1] nus = np.ascontiguousarray(nu, dtype=np.float64)
    cdef cnp.ndarray[double complex, ndim=1] ws = np.ascontiguousarray(w, dtype=np.complex128)
    cdef cnp.ndarray[double, ndim=1] ts = np.ascontiguousarray(np.ravel(dt), dtype=np.float64)
    cdef Py_ssize_t n = ts.shape[0]
    cdef Py_ssize_t m = nus.shape[0]
    cdef cnp.ndarray[double complex, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef double re, im, ph, cp, sp
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            re = 0.0
            im = 0.0
            for j in range(m):
                ph = nus[j] * ts[i]
                cp = cos(ph)
                sp = sin(ph)
                re += ws[j].real * cp + ws[j].imag * sp
                im += ws[j].imag * cp - ws[j].real * sp
            out[i] = re + 1j * im
    return out.reshape(np.shape(dt))
