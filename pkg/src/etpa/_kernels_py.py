"""Numpy implementation of the compiled kernels in ``_kernels.pyx``.

Selected at import by ``etpa._backend`` when the extension is unavailable
or ``ETPA_PURE_PYTHON`` is set. Algorithms are identical: power series for
|x| <= 4, Lentz continued fraction for E1(ix) beyond.
"""
import numpy as np

EULER = 0.57721566490153286060651209
SERIES_MAX = 4.0
EPS = 1e-16
FPMIN = 1e-300
MAXIT = 10000


def _series(x):
    x2 = x * x
    t = x.copy()
    u = 0.5 * x2
    s = x.copy()
    c = 0.25 * x2
    for k in range(1, 60):
        t = t * (-x2 / ((2.0 * k) * (2.0 * k + 1.0)))
        u = u * (-x2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0)))
        s = s + t / (2.0 * k + 1.0)
        c = c + u / (2.0 * k + 2.0)
        if np.all((np.abs(t) < EPS * np.abs(s)) & (np.abs(u) < EPS * np.abs(c))):
            break
    return s, c


def _contfrac(x):
    b = 1.0 + 1j * x
    c = np.full(x.shape, 1.0 / FPMIN, dtype=complex)
    d = 1.0 / b
    h = d.copy()
    active = np.ones(x.shape, dtype=bool)
    for i in range(2, MAXIT):
        a = -(i - 1.0) ** 2
        b = b + 2.0
        d = np.where(active, 1.0 / (a * d + b), d)
        c = np.where(active, b + a / c, c)
        dl = np.where(active, c * d, 1.0)
        h = h * dl
        active &= np.abs(dl.real - 1.0) + np.abs(dl.imag) >= EPS
        if not active.any():
            break
    h = h * (np.cos(x) - 1j * np.sin(x))
    return np.pi / 2 + h.imag, -h.real


def _sici3(x):
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    si = np.zeros_like(ax)
    ci = np.full_like(ax, np.nan)
    cin = np.zeros_like(ax)
    small = (ax > 0) & (ax <= SERIES_MAX)
    large = ax > SERIES_MAX
    if small.any():
        s, n = _series(ax[small])
        si[small] = s
        cin[small] = n
        ci[small] = EULER + np.log(ax[small]) - n
    if large.any():
        s, c = _contfrac(ax[large])
        si[large] = s
        ci[large] = c
        cin[large] = EULER + np.log(ax[large]) - c
    return np.sign(x) * si, ci, cin


def sici(x):
    """Return (Si(x), Ci(|x|)) elementwise; Ci(0) is nan."""
    si, ci, _ = _sici3(x)
    return si, ci


def cin(x):
    """Return Cin(|x|) = int_0^|x| (1 - cos u)/u du elementwise."""
    return _sici3(x)[2]


def gamma_profile(nu, band, t):
    t = np.asarray(t, dtype=float)
    at = np.abs(t)
    limit = np.log((nu + band) / (nu - band))
    a = (nu + band) * at
    b = (nu - band) * at
    sa, ca, na = _sici3(a)
    sb, cb, nb = _sici3(b)
    with np.errstate(invalid="ignore"):
        dci = np.where(a <= SERIES_MAX, limit - na + nb, ca - cb)
        out = np.cos(nu * at) * dci + np.sin(nu * at) * (sa - sb)
    return np.where(at < 1e-8 * np.pi / band, limit, out)


def overlap(nu, w, dt):
    """Sum_m w[m] exp(-i nu[m] dt) for every dt."""
    dt = np.asarray(dt, dtype=float)
    phase = np.exp(-1j * np.multiply.outer(dt, np.asarray(nu, dtype=float)))
    return phase @ np.asarray(w, dtype=complex)
