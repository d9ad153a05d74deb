"""Jacobi elliptic functions sn, cn, dn and the complete elliptic integral K.

Modulus convention
------------------
Every function here takes the *modulus* k, not the parameter m = k**2.
``jacobi(u, k)`` equals ``scipy.special.ellipj(u, m=k**2)``; libraries
disagree on this point, so it is worth stating once and prominently.  The
drive fields are parameterized by k in [0, 1]: k = 0 gives the trigonometric
limit (sin u, cos u, 1), k = 1 the hyperbolic-impulse limit
(tanh u, sech u, sech u).

Implementation
--------------
Arithmetic-geometric-mean ladder plus the descending Gauss/Landen phase
recurrence, terminated once the ladder increment drops below 1e-15.  The
argument is first reduced into a quarter period using the exact reflection
symmetries, which keeps every inverse-sine on its principal branch.  No
special-function dependency; k = 1 is an explicit hyperbolic branch because
the ladder degenerates there (K diverges).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_LADDER_TOL = 1e-15


@dataclass(frozen=True)
class EllipticTriple:
    """Values (sn, cn, dn) at argument u and modulus k."""

    sn: float
    cn: float
    dn: float
    u: float
    k: float


@lru_cache(maxsize=None)
def _ladder(k):
    """AGM sequence a_n, c_n for modulus k in [0, 1), plus K(k)."""
    a, b, c = 1.0, math.sqrt((1.0 - k) * (1.0 + k)), float(k)
    aa, cc = [a], [c]
    while abs(c) > _LADDER_TOL:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        aa.append(a)
        cc.append(c)
        if len(aa) > 60:  # unreachable for k in [0, 1), defensive only
            raise RuntimeError("AGM ladder failed to converge")
    return tuple(aa), tuple(cc), math.pi / (2.0 * aa[-1])


def complete_K(k):
    """Complete elliptic integral of the first kind, K(k), for 0 <= k < 1."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"complete_K requires 0 <= k < 1, got {k}")
    return _ladder(float(k))[2]


def _phase(w, aa, cc):
    """Descending-ladder phase for a reduced argument w in [0, K]."""
    n = len(aa) - 1
    phi = (2.0 ** n) * aa[-1] * w
    for i in range(n, 0, -1):
        s = (cc[i] / aa[i]) * math.sin(phi)
        phi = 0.5 * (phi + math.asin(max(-1.0, min(1.0, s))))
    return phi


def sncndn(u, k):
    """Scalar fast path returning the plain tuple (sn, cn, dn)."""
    if k == 1.0:
        sech = 1.0 / math.cosh(u)
        return math.tanh(u), sech, sech
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must lie in [0, 1], got {k}")
    aa, cc, bigk = _ladder(float(k))
    v = u % (4.0 * bigk)
    quad = min(int(v // bigk), 3)
    if quad == 0:
        w, ssign, csign = v, 1.0, 1.0
    elif quad == 1:
        w, ssign, csign = 2.0 * bigk - v, 1.0, -1.0
    elif quad == 2:
        w, ssign, csign = v - 2.0 * bigk, -1.0, -1.0
    else:
        w, ssign, csign = 4.0 * bigk - v, -1.0, 1.0
    phi = _phase(w, aa, cc)
    sn = ssign * math.sin(phi)
    cn = csign * math.cos(phi)
    dn = math.sqrt(max(0.0, 1.0 - (k * sn) * (k * sn)))
    return sn, cn, dn


def _sncndn_array(u, k):
    if k == 1.0:
        sech = 1.0 / np.cosh(u)
        return np.tanh(u), sech, sech
    aa, cc, bigk = _ladder(float(k))
    v = np.mod(u, 4.0 * bigk)
    quad = np.minimum((v // bigk).astype(int), 3)
    w = np.choose(quad, [v, 2.0 * bigk - v, v - 2.0 * bigk, 4.0 * bigk - v])
    ssign = np.where(quad >= 2, -1.0, 1.0)
    csign = np.where((quad == 1) | (quad == 2), -1.0, 1.0)
    n = len(aa) - 1
    phi = (2.0 ** n) * aa[-1] * w
    for i in range(n, 0, -1):
        s = np.clip((cc[i] / aa[i]) * np.sin(phi), -1.0, 1.0)
        phi = 0.5 * (phi + np.arcsin(s))
    sn = ssign * np.sin(phi)
    cn = csign * np.cos(phi)
    dn = np.sqrt(np.maximum(0.0, 1.0 - (k * sn) ** 2))
    return sn, cn, dn


def jacobi(u, k):
    """Jacobi elliptic triple at argument u, modulus k in [0, 1].

    Accepts scalar or array u; arrays return an :class:`EllipticTriple`
    whose fields are arrays of the same shape.
    """
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"modulus must lie in [0, 1], got {k}")
    if np.ndim(u) == 0:
        sn, cn, dn = sncndn(float(u), float(k))
    else:
        sn, cn, dn = _sncndn_array(np.asarray(u, dtype=float), float(k))
    return EllipticTriple(sn=sn, cn=cn, dn=dn, u=u, k=k)
