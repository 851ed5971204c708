"""Type-3 asymmetric pairing over a 256-bit Barreto-Naehrig curve.

Curve family: y^2 = x^3 + 3 over F_p with BN parameter u = 1868033^3,
p = 36u^4 + 36u^3 + 24u^2 + 6u + 1 and group order q = p - 6u^2 (both
prime, 256 bits).  G1 is the curve over F_p (cofactor 1), G2 the
order-q subgroup of the sextic D-twist over F_p2, GT the order-q
subgroup of F_p12*.  The pairing is the optimal ate pairing: a Miller
loop of length 6u+2 in NAF form plus two Frobenius correction steps,
followed by the final exponentiation.

Field towers: F_p2 = F_p[i]/(i^2 + 1) with elements (x, y) = x*i + y;
F_p6 = F_p2[tau]/(tau^3 - xi) with xi = i + 3, elements (x, y, z) =
x*tau^2 + y*tau + z; F_p12 = F_p6[sigma]/(sigma^2 - tau), elements
(x, y) = x*sigma + y.  Tower elements are plain tuples of gmpy2 mpz and
all functions are side-effect free.  Point formulas are the standard
Jacobian ones (EFD add-2007-bl / dbl-2009-l); tower, line and final-exp
formulas follow Beuchat et al., https://eprint.iacr.org/2010/354.

Canonical encodings (the codec contract): G1 compressed to 33 bytes
(flag byte 0x00 for infinity or 0x02|parity(y), then x big-endian); G2
compressed to 65 bytes (flag, then x as two 32-byte coordinates, imag
first); GT as its 12 F_p coordinates, 384 bytes.  Decoding checks the
curve equation.  Points produced by this module always lie in the
prime-order subgroups; G2 decoding does not re-verify subgroup
membership (G1 needs none: its cofactor is 1).
"""

from __future__ import annotations

from gmpy2 import mpz

from .suite import PairingSuite

# -- curve constants ---------------------------------------------------------

_V = 1868033
U = mpz(_V) ** 3
P = (((U + 1) * 6 * U + 4) * U + 1) * 6 * U + 1
ORDER = P - 6 * U * U
CURVE_B = mpz(3)

_ZERO = mpz(0)
_ONE = mpz(1)

FP2_ZERO = (_ZERO, _ZERO)
FP2_ONE = (_ZERO, _ONE)

_FP_BYTES = 32


def _fp_inv(a):
    return pow(a, P - 2, P)


def _fp_sqrt(a):
    # valid because p = 3 mod 4
    return pow(a, (P + 1) // 4, P)


def _fp_legendre(a):
    if a % P == 0:
        return 0
    return 1 if pow(a, (P - 1) // 2, P) == 1 else -1


# -- F_p2 ---------------------------------------------------------------------


def fp2_add(a, b):
    return (a[0] + b[0]) % P, (a[1] + b[1]) % P


def fp2_sub(a, b):
    return (a[0] - b[0]) % P, (a[1] - b[1]) % P


def fp2_dbl(a):
    return (a[0] + a[0]) % P, (a[1] + a[1]) % P


def fp2_neg(a):
    return (-a[0]) % P, (-a[1]) % P


def fp2_conj(a):
    return (-a[0]) % P, a[1]


def fp2_mul(a, b):
    ax, ay = a
    bx, by = b
    vy = ay * by
    vx = ax * bx
    return ((ax + ay) * (bx + by) - vy - vx) % P, (vy - vx) % P


def fp2_sqr(a):
    ax, ay = a
    return 2 * ax * ay % P, (ay - ax) * (ay + ax) % P


def fp2_muls(a, k):
    """Scale by an F_p element."""
    return a[0] * k % P, a[1] * k % P


def fp2_mul_xi(a):
    # times xi = i + 3
    ax, ay = a
    return (3 * ax + ay) % P, (3 * ay - ax) % P


def fp2_inv(a):
    ax, ay = a
    t = _fp_inv((ax * ax + ay * ay) % P)
    return (-ax) * t % P, ay * t % P


def fp2_exp(a, e):
    r = FP2_ONE
    for bit in bin(int(e))[2:]:
        r = fp2_sqr(r)
        if bit == "1":
            r = fp2_mul(r, a)
    return r


def fp2_sqrt(a):
    """Square root in F_p2; raises ValueError for non-residues."""
    a1, a0 = a
    if a1 == 0:
        if _fp_legendre(a0) >= 0:
            return _ZERO, _fp_sqrt(a0)
        # (y*i)^2 = -y^2
        return _fp_sqrt((-a0) % P), _ZERO
    s = _fp_sqrt((a0 * a0 + a1 * a1) % P)
    inv2 = _fp_inv(mpz(2))
    delta = (a0 + s) * inv2 % P
    if _fp_legendre(delta) == -1:
        delta = (a0 - s) * inv2 % P
    y0 = _fp_sqrt(delta)
    y1 = a1 * _fp_inv(2 * y0 % P) % P
    r = (y1, y0)
    if fp2_sqr(r) != (a1 % P, a0 % P):
        raise ValueError("not a square in F_p2")
    return r


# -- F_p6 = F_p2[tau]/(tau^3 - xi) ---------------------------------------------

FP6_ZERO = (FP2_ZERO, FP2_ZERO, FP2_ZERO)
FP6_ONE = (FP2_ZERO, FP2_ZERO, FP2_ONE)


def fp6_add(a, b):
    return fp2_add(a[0], b[0]), fp2_add(a[1], b[1]), fp2_add(a[2], b[2])


def fp6_sub(a, b):
    return fp2_sub(a[0], b[0]), fp2_sub(a[1], b[1]), fp2_sub(a[2], b[2])


def fp6_neg(a):
    return fp2_neg(a[0]), fp2_neg(a[1]), fp2_neg(a[2])


def fp6_mul(a, b):
    ax, ay, az = a
    bx, by, bz = b
    t0 = fp2_mul(az, bz)
    t1 = fp2_mul(ay, by)
    t2 = fp2_mul(ax, bx)
    tz = fp2_mul(fp2_add(ax, ay), fp2_add(bx, by))
    tz = fp2_add(fp2_mul_xi(fp2_sub(fp2_sub(tz, t1), t2)), t0)
    ty = fp2_mul(fp2_add(ay, az), fp2_add(by, bz))
    ty = fp2_add(fp2_sub(fp2_sub(ty, t0), t1), fp2_mul_xi(t2))
    tx = fp2_mul(fp2_add(ax, az), fp2_add(bx, bz))
    tx = fp2_sub(fp2_add(fp2_sub(tx, t0), t1), t2)
    return tx, ty, tz


def fp6_muls(a, k):
    """Scale by an F_p2 element."""
    return fp2_mul(a[0], k), fp2_mul(a[1], k), fp2_mul(a[2], k)


def fp6_mul_tau(a):
    # times tau
    return a[1], a[2], fp2_mul_xi(a[0])


def fp6_sqr(a):
    ax, ay, az = a
    ay2 = fp2_dbl(ay)
    c4 = fp2_mul(az, ay2)
    c5 = fp2_sqr(ax)
    c1 = fp2_add(fp2_mul_xi(c5), c4)
    c2 = fp2_sub(c4, c5)
    c3 = fp2_sqr(az)
    c4 = fp2_sqr(fp2_sub(fp2_add(ax, az), ay))
    c5 = fp2_mul(ay2, ax)
    c0 = fp2_add(fp2_mul_xi(c5), c3)
    c2 = fp2_sub(fp2_add(fp2_add(c2, c4), c5), c3)
    return c2, c1, c0


def fp6_inv(a):
    ax, ay, az = a
    xx = fp2_sqr(ax)
    yy = fp2_sqr(ay)
    zz = fp2_sqr(az)
    xy = fp2_mul(ax, ay)
    xz = fp2_mul(ax, az)
    yz = fp2_mul(ay, az)
    ca = fp2_sub(zz, fp2_mul_xi(xy))
    cb = fp2_sub(fp2_mul_xi(xx), yz)
    cc = fp2_sub(yy, xz)
    f = fp2_add(fp2_mul_xi(fp2_mul(cc, ay)), fp2_mul(ca, az))
    f = fp2_add(f, fp2_mul_xi(fp2_mul(cb, ax)))
    f = fp2_inv(f)
    return fp2_mul(cc, f), fp2_mul(cb, f), fp2_mul(ca, f)


# -- F_p12 = F_p6[sigma]/(sigma^2 - tau) ----------------------------------------

FP12_ONE = (FP6_ZERO, FP6_ONE)


def fp12_mul(a, b):
    ax, ay = a
    bx, by = b
    axbx = fp6_mul(ax, bx)
    axby = fp6_mul(ax, by)
    aybx = fp6_mul(ay, bx)
    ayby = fp6_mul(ay, by)
    return fp6_add(axby, aybx), fp6_add(ayby, fp6_mul_tau(axbx))


def fp12_sqr(a):
    ax, ay = a
    v0 = fp6_mul(ax, ay)
    t = fp6_add(fp6_mul_tau(ax), ay)
    ty = fp6_mul(fp6_add(ax, ay), t)
    ty = fp6_sub(fp6_sub(ty, v0), fp6_mul_tau(v0))
    return fp6_add(v0, v0), ty


def fp12_conj(a):
    return fp6_neg(a[0]), a[1]


def fp12_inv(a):
    ax, ay = a
    t = fp6_inv(fp6_sub(fp6_sqr(ay), fp6_mul_tau(fp6_sqr(ax))))
    return fp6_mul(fp6_neg(ax), t), fp6_mul(ay, t)


def fp12_exp(a, e):
    e = int(e)
    if e == 0:
        return FP12_ONE
    r = FP12_ONE
    for bit in bin(e)[2:]:
        r = fp12_sqr(r)
        if bit == "1":
            r = fp12_mul(r, a)
    return r


# Frobenius constants: xi^(k*(p-1)/6) for k = 1..5, and their norms.
XI = (_ONE, mpz(3))
XI1 = tuple(fp2_exp(XI, k * (P - 1) // 6) for k in range(1, 6))
XI2 = tuple(fp2_mul(x, fp2_conj(x)) for x in XI1)


def fp12_frobenius(a):
    (xx, xy, xz), (yx, yy, yz) = a
    e1 = (
        fp2_mul(fp2_conj(xx), XI1[4]),
        fp2_mul(fp2_conj(xy), XI1[2]),
        fp2_mul(fp2_conj(xz), XI1[0]),
    )
    e2 = (
        fp2_mul(fp2_conj(yx), XI1[3]),
        fp2_mul(fp2_conj(yy), XI1[1]),
        fp2_conj(yz),
    )
    return e1, e2


def fp12_frobenius_p2(a):
    (xx, xy, xz), (yx, yy, yz) = a
    e1 = (fp2_mul(xx, XI2[4]), fp2_mul(xy, XI2[2]), fp2_mul(xz, XI2[0]))
    e2 = (fp2_mul(yx, XI2[3]), fp2_mul(yy, XI2[1]), yz)
    return e1, e2


# -- G1: Jacobian triples of mpz; affine pairs; None is the identity ----------


def g1_dbl(pt):
    x, y, z = pt
    a = x * x % P
    b = y * y % P
    c = b * b % P
    d = 2 * ((x + b) * (x + b) - a - c) % P
    e = 3 * a % P
    f = e * e % P
    nx = (f - 2 * d) % P
    ny = (e * (d - nx) - 8 * c) % P
    nz = 2 * y * z % P
    return nx, ny, nz


def g1_add_mixed(pt, q):
    """Jacobian plus affine; either may encode the identity."""
    if q is None:
        return pt
    if pt is None:
        return (q[0], q[1], _ONE)
    x1, y1, z1 = pt
    x2, y2 = q
    z1z1 = z1 * z1 % P
    u2 = x2 * z1z1 % P
    s2 = y2 * z1 * z1z1 % P
    h = (u2 - x1) % P
    r = (s2 - y1) % P
    if h == 0:
        if r == 0:
            return g1_dbl(pt)
        return None
    hh = h * h % P
    i = 4 * hh % P
    j = h * i % P
    r = 2 * r % P
    v = x1 * i % P
    nx = (r * r - j - 2 * v) % P
    ny = (r * (v - nx) - 2 * y1 * j) % P
    nz = ((z1 + h) * (z1 + h) - z1z1 - hh) % P
    return nx, ny, nz


def g1_normalize(pt):
    if pt is None:
        return None
    x, y, z = pt
    if z == 0:
        return None
    zi = _fp_inv(z)
    zi2 = zi * zi % P
    return x * zi2 % P, y * zi2 * zi % P


def g1_scalar_mul(aff, k):
    """k-fold group operation on an affine point; returns affine or None."""
    k = int(k) % int(ORDER)
    if aff is None or k == 0:
        return None
    acc = None
    for bit in bin(k)[2:]:
        if acc is not None:
            acc = g1_dbl(acc)
        if bit == "1":
            acc = g1_add_mixed(acc, aff)
    return g1_normalize(acc)


def g1_on_curve(aff):
    if aff is None:
        return True
    x, y = aff
    return (y * y - x * x * x - CURVE_B) % P == 0


G1_GEN = (_ONE, P - 2)
assert g1_on_curve(G1_GEN)


# -- G2: same shapes with F_p2 coordinates on the twist -------------------------

TWIST_B = fp2_mul(fp2_inv((_ONE, mpz(3))), (_ZERO, CURVE_B))


def g2_dbl(pt):
    x, y, z = pt
    a = fp2_sqr(x)
    b = fp2_sqr(y)
    c = fp2_sqr(b)
    d = fp2_sqr(fp2_add(x, b))
    d = fp2_dbl(fp2_sub(fp2_sub(d, a), c))
    e = fp2_add(fp2_dbl(a), a)
    f = fp2_sqr(e)
    nx = fp2_sub(f, fp2_dbl(d))
    c8 = fp2_dbl(fp2_dbl(fp2_dbl(c)))
    ny = fp2_sub(fp2_mul(e, fp2_sub(d, nx)), c8)
    nz = fp2_dbl(fp2_mul(y, z))
    return nx, ny, nz


def g2_add_mixed(pt, q):
    if q is None:
        return pt
    if pt is None:
        return (q[0], q[1], FP2_ONE)
    x1, y1, z1 = pt
    x2, y2 = q
    z1z1 = fp2_sqr(z1)
    u2 = fp2_mul(x2, z1z1)
    s2 = fp2_mul(fp2_mul(y2, z1), z1z1)
    h = fp2_sub(u2, x1)
    r = fp2_sub(s2, y1)
    if h == FP2_ZERO:
        if r == FP2_ZERO:
            return g2_dbl(pt)
        return None
    hh = fp2_sqr(h)
    i = fp2_dbl(fp2_dbl(hh))
    j = fp2_mul(h, i)
    r = fp2_dbl(r)
    v = fp2_mul(x1, i)
    nx = fp2_sub(fp2_sub(fp2_sqr(r), j), fp2_dbl(v))
    ny = fp2_sub(fp2_mul(r, fp2_sub(v, nx)), fp2_dbl(fp2_mul(y1, j)))
    nz = fp2_sub(fp2_sub(fp2_sqr(fp2_add(z1, h)), z1z1), hh)
    return nx, ny, nz


def g2_normalize(pt):
    if pt is None:
        return None
    x, y, z = pt
    if z == FP2_ZERO:
        return None
    zi = fp2_inv(z)
    zi2 = fp2_sqr(zi)
    return fp2_mul(x, zi2), fp2_mul(y, fp2_mul(zi2, zi))


def g2_scalar_mul(aff, k):
    k = int(k) % int(ORDER)
    if aff is None or k == 0:
        return None
    acc = None
    for bit in bin(k)[2:]:
        if acc is not None:
            acc = g2_dbl(acc)
        if bit == "1":
            acc = g2_add_mixed(acc, aff)
    return g2_normalize(acc)


def g2_on_curve(aff):
    if aff is None:
        return True
    x, y = aff
    return fp2_sub(fp2_sub(fp2_sqr(y), fp2_mul(fp2_sqr(x), x)), TWIST_B) == FP2_ZERO


G2_GEN = (
    (
        mpz(21167961636542580255011770066570541300993051739349375019639421053990175267184),
        mpz(64746500191241794695844075326670126197795977525365406531717464316923369116492),
    ),
    (
        mpz(20666913350058776956210519119118544732556678129809273996262322366050359951122),
        mpz(17778617556404439934652658462602675281523610326338642107814333856843981424549),
    ),
)
assert g2_on_curve(G2_GEN)


# -- optimal ate pairing --------------------------------------------------------


def _to_naf(x):
    out = []
    while x > 0:
        if x % 2 == 0:
            out.append(0)
        else:
            d = 2 - (x % 4)
            x -= d
            out.append(d)
        x //= 2
    return out


NAF_LOOP = tuple(reversed(_to_naf(6 * U + 2)))[1:]


def _line_add(r, p, q, r2):
    """Addition step: line through r and p on the twist, evaluated at q in G1.

    r is Jacobian, p affine with r2 = p.y^2 precomputed.  Returns the
    sparse line coefficients (a, b, c) and the advanced point.
    """
    px, py = p
    qx, qy = q
    rx, ry, rz = r
    r_t = fp2_sqr(rz)
    b = fp2_mul(px, r_t)
    d = fp2_add(py, rz)
    d = fp2_mul(fp2_sub(fp2_sub(fp2_sqr(d), r2), r_t), r_t)
    h = fp2_sub(b, rx)
    i = fp2_sqr(h)
    e = fp2_dbl(fp2_dbl(i))
    j = fp2_mul(h, e)
    l1 = fp2_sub(fp2_sub(d, ry), ry)
    v = fp2_mul(rx, e)
    nx = fp2_sub(fp2_sub(fp2_sqr(l1), j), fp2_dbl(v))
    nz = fp2_sub(fp2_sub(fp2_sqr(fp2_add(rz, h)), r_t), i)
    ny = fp2_sub(fp2_mul(fp2_sub(v, nx), l1), fp2_dbl(fp2_mul(ry, j)))

    t = fp2_sub(fp2_sub(fp2_sqr(fp2_add(py, nz)), r2), fp2_sqr(nz))
    la = fp2_sub(fp2_dbl(fp2_mul(l1, px)), t)
    lc = fp2_dbl(fp2_muls(nz, qy))
    lb = fp2_dbl(fp2_muls(fp2_neg(l1), qx))
    return la, lb, lc, (nx, ny, nz)


def _line_dbl(r, q):
    """Doubling step: tangent line at r on the twist, evaluated at q in G1."""
    qx, qy = q
    rx, ry, rz = r
    r_t = fp2_sqr(rz)
    a = fp2_sqr(rx)
    b = fp2_sqr(ry)
    c = fp2_sqr(b)
    d = fp2_dbl(fp2_sub(fp2_sub(fp2_sqr(fp2_add(rx, b)), a), c))
    e = fp2_add(fp2_dbl(a), a)
    f = fp2_sqr(e)
    c8 = fp2_dbl(fp2_dbl(fp2_dbl(c)))
    nx = fp2_sub(f, fp2_dbl(d))
    ny = fp2_sub(fp2_mul(e, fp2_sub(d, nx)), c8)
    nz = fp2_sub(fp2_sub(fp2_sqr(fp2_add(ry, rz)), b), r_t)

    la = fp2_sqr(fp2_add(rx, e))
    la = fp2_sub(la, fp2_add(fp2_add(a, f), fp2_dbl(fp2_dbl(b))))
    t = fp2_dbl(fp2_mul(e, r_t))
    lb = fp2_muls(fp2_neg(t), qx)
    lc = fp2_muls(fp2_dbl(fp2_mul(nz, r_t)), qy)
    return la, lb, lc, (nx, ny, nz)


def _mul_line(f, la, lb, lc):
    """Sparse multiplication of the Miller accumulator by a line value."""
    fx, fy = f
    t1 = fp6_mul((FP2_ZERO, la, lb), fx)
    t3 = fp6_muls(fy, lc)
    t2 = (FP2_ZERO, la, fp2_add(lb, lc))
    nx = fp6_sub(fp6_sub(fp6_mul(fp6_add(fx, fy), t2), t1), t3)
    ny = fp6_add(t3, fp6_mul_tau(t1))
    return nx, ny


class _MillerState:
    """Per-pair running state inside a shared-accumulator Miller loop."""

    __slots__ = ("q", "mq", "qp", "p", "t")

    def __init__(self, p_aff, q_aff):
        self.q = q_aff
        self.mq = (q_aff[0], fp2_neg(q_aff[1]))
        self.qp = fp2_sqr(q_aff[1])
        self.p = p_aff
        self.t = (q_aff[0], q_aff[1], FP2_ONE)


def miller_product(pairs):
    """Shared Miller loop over (g1_affine, g2_affine) pairs, no final exp.

    Sharing the accumulator squaring across pairs is what makes the
    n-fold product pairing cheaper than n independent pairings.
    """
    states = [_MillerState(p, q) for p, q in pairs]
    f = FP12_ONE
    for digit in NAF_LOOP:
        f = fp12_sqr(f)
        for s in states:
            la, lb, lc, s.t = _line_dbl(s.t, s.p)
            f = _mul_line(f, la, lb, lc)
            if digit == 1:
                la, lb, lc, s.t = _line_add(s.t, s.q, s.p, s.qp)
                f = _mul_line(f, la, lb, lc)
            elif digit == -1:
                la, lb, lc, s.t = _line_add(s.t, s.mq, s.p, s.qp)
                f = _mul_line(f, la, lb, lc)
    for s in states:
        qx, qy = s.q
        q1 = (fp2_mul(fp2_conj(qx), XI1[1]), fp2_mul(fp2_conj(qy), XI1[2]))
        q2 = (fp2_muls(qx, XI2[1][1]), qy)
        la, lb, lc, s.t = _line_add(s.t, q1, s.p, fp2_sqr(q1[1]))
        f = _mul_line(f, la, lb, lc)
        la, lb, lc, s.t = _line_add(s.t, q2, s.p, fp2_sqr(q2[1]))
        f = _mul_line(f, la, lb, lc)
    return f


def final_exp(f):
    """Map a Miller value to the unique coset representative in GT."""
    # easy part: f^(p^6 - 1) * (result)^(p^2 + 1)
    t1 = fp12_mul(fp12_conj(f), fp12_inv(f))
    t1 = fp12_mul(t1, fp12_frobenius_p2(t1))
    # hard part
    fp1 = fp12_frobenius(t1)
    fq2 = fp12_frobenius_p2(t1)
    fp3 = fp12_frobenius(fq2)
    fu1 = fp12_exp(t1, U)
    fu2 = fp12_exp(fu1, U)
    fu3 = fp12_exp(fu2, U)
    y3 = fp12_conj(fp12_frobenius(fu1))
    fu2p = fp12_frobenius(fu2)
    fu3p = fp12_frobenius(fu3)
    y2 = fp12_frobenius_p2(fu2)
    y0 = fp12_mul(fp12_mul(fp1, fq2), fp3)
    y1 = fp12_conj(t1)
    y5 = fp12_conj(fu2)
    y4 = fp12_conj(fp12_mul(fu1, fu2p))
    y6 = fp12_conj(fp12_mul(fu3, fu3p))
    t0 = fp12_mul(fp12_mul(fp12_sqr(y6), y4), y5)
    t1 = fp12_mul(fp12_mul(y3, y5), t0)
    t0 = fp12_mul(t0, y2)
    t1 = fp12_mul(fp12_sqr(t1), t0)
    t1 = fp12_sqr(t1)
    t0 = fp12_mul(t1, y1)
    t1 = fp12_mul(t1, y0)
    t0 = fp12_sqr(t0)
    return fp12_mul(t0, t1)


def pairing(p_aff, q_aff):
    """Optimal ate pairing e(P, Q), P in G1 and Q in G2, both affine non-identity."""
    return final_exp(miller_product([(p_aff, q_aff)]))


# -- fixed-base exponentiation ---------------------------------------------


class _FixedBaseTable:
    """Radix-16 fixed-base table: multiples 1..15 of the base per digit position."""

    __slots__ = ("rows", "_add_mixed", "_normalize")

    def __init__(self, base_aff, dbl, add_mixed, normalize):
        digits = (int(ORDER).bit_length() + 3) // 4
        rows = []
        cur = base_aff
        for _ in range(digits):
            row = [None] * 16
            acc = None
            for d in range(1, 16):
                acc = add_mixed(acc, cur)
                row[d] = normalize(acc)
            j = add_mixed(None, cur)
            for _ in range(4):
                j = dbl(j)
            cur = normalize(j)
            rows.append(row)
        self.rows = rows
        self._add_mixed = add_mixed
        self._normalize = normalize

    def exp(self, k):
        k = int(k) % int(ORDER)
        if k == 0:
            return None
        acc = None
        idx = 0
        rows = self.rows
        while k:
            d = k & 15
            if d:
                acc = self._add_mixed(acc, rows[idx][d])
            k >>= 4
            idx += 1
        return self._normalize(acc)


# -- public suite ---------------------------------------------------------------


class Bn256Suite(PairingSuite):
    """The production pairing suite; see the module docstring."""

    secure = True
    name = "bn256"
    order = int(ORDER)
    g1_bytes_len = 1 + _FP_BYTES
    g2_bytes_len = 1 + 2 * _FP_BYTES
    gt_bytes_len = 12 * _FP_BYTES

    _instance = None

    @classmethod
    def instance(cls) -> "Bn256Suite":
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance

    def __init__(self):
        self._g1_table = None
        self._g2_table = None
        self._gt_generator = None

    def __repr__(self):
        return "Bn256Suite()"

    # generators / identities
    def g1_gen(self):
        return G1_GEN

    def g2_gen(self):
        return G2_GEN

    def g1_identity(self):
        return None

    def g2_identity(self):
        return None

    def gt_identity(self):
        return FP12_ONE

    def gt_gen(self):
        if self._gt_generator is None:
            self._gt_generator = pairing(G1_GEN, G2_GEN)
        return self._gt_generator

    # group ops
    def g1_mul(self, a, b):
        if a is None:
            return b
        return g1_normalize(g1_add_mixed((a[0], a[1], _ONE), b))

    def g2_mul(self, a, b):
        if a is None:
            return b
        return g2_normalize(g2_add_mixed((a[0], a[1], FP2_ONE), b))

    def gt_mul(self, a, b):
        return fp12_mul(a, b)

    def g1_exp(self, k: int):
        if self._g1_table is None:
            self._g1_table = _FixedBaseTable(G1_GEN, g1_dbl, g1_add_mixed, g1_normalize)
        return self._g1_table.exp(k)

    def g2_exp(self, k: int):
        if self._g2_table is None:
            self._g2_table = _FixedBaseTable(G2_GEN, g2_dbl, g2_add_mixed, g2_normalize)
        return self._g2_table.exp(k)

    def g1_exp_of(self, a, k: int):
        return g1_scalar_mul(a, k)

    def g2_exp_of(self, a, k: int):
        return g2_scalar_mul(a, k)

    def gt_exp_of(self, a, k: int):
        return fp12_exp(a, int(k) % int(ORDER))

    # pairing
    def pair(self, a, b):
        if a is None or b is None:
            return FP12_ONE
        return pairing(a, b)

    def multi_pair(self, us, ws):
        if len(us) != len(ws):
            raise ValueError("vector length mismatch")
        pairs = [(u, w) for u, w in zip(us, ws) if u is not None and w is not None]
        if not pairs:
            return FP12_ONE
        return final_exp(miller_product(pairs))

    # encodings
    def g1_to_bytes(self, a) -> bytes:
        if a is None:
            return b"\x00" * self.g1_bytes_len
        x, y = a
        flag = 2 | (int(y) & 1)
        return bytes([flag]) + int(x).to_bytes(_FP_BYTES, "big")

    def g1_from_bytes(self, data: bytes):
        if len(data) != self.g1_bytes_len:
            raise ValueError("bad G1 encoding length")
        flag = data[0]
        if flag == 0:
            if any(data[1:]):
                raise ValueError("bad G1 infinity encoding")
            return None
        if flag not in (2, 3):
            raise ValueError("bad G1 flag byte")
        x = mpz(int.from_bytes(data[1:], "big"))
        if x >= P:
            raise ValueError("G1 x out of range")
        yy = (x * x * x + CURVE_B) % P
        y = _fp_sqrt(yy)
        if y * y % P != yy:
            raise ValueError("G1 point not on curve")
        if (int(y) & 1) != (flag & 1):
            y = (-y) % P
        return (x, y)

    def g2_to_bytes(self, a) -> bytes:
        if a is None:
            return b"\x00" * self.g2_bytes_len
        (x1, x0), (y1, y0) = a
        parity = (int(y0) & 1) if y0 != 0 else (int(y1) & 1)
        return (
            bytes([2 | parity])
            + int(x1).to_bytes(_FP_BYTES, "big")
            + int(x0).to_bytes(_FP_BYTES, "big")
        )

    def g2_from_bytes(self, data: bytes):
        if len(data) != self.g2_bytes_len:
            raise ValueError("bad G2 encoding length")
        flag = data[0]
        if flag == 0:
            if any(data[1:]):
                raise ValueError("bad G2 infinity encoding")
            return None
        if flag not in (2, 3):
            raise ValueError("bad G2 flag byte")
        x1 = mpz(int.from_bytes(data[1 : 1 + _FP_BYTES], "big"))
        x0 = mpz(int.from_bytes(data[1 + _FP_BYTES :], "big"))
        if x1 >= P or x0 >= P:
            raise ValueError("G2 x out of range")
        x = (x1, x0)
        yy = fp2_add(fp2_mul(fp2_sqr(x), x), TWIST_B)
        try:
            y = fp2_sqrt(yy)
        except ValueError:
            raise ValueError("G2 point not on twist") from None
        parity = (int(y[1]) & 1) if y[1] != 0 else (int(y[0]) & 1)
        if parity != (flag & 1):
            y = fp2_neg(y)
        return (x, y)

    def gt_to_bytes(self, a) -> bytes:
        (xx, xy, xz), (yx, yy, yz) = a
        coords = (*xx, *xy, *xz, *yx, *yy, *yz)
        return b"".join(int(c).to_bytes(_FP_BYTES, "big") for c in coords)

    def gt_from_bytes(self, data: bytes):
        if len(data) != self.gt_bytes_len:
            raise ValueError("bad GT encoding length")
        c = [
            mpz(int.from_bytes(data[i * _FP_BYTES : (i + 1) * _FP_BYTES], "big"))
            for i in range(12)
        ]
        if any(v >= P for v in c):
            raise ValueError("GT coordinate out of range")
        return (
            ((c[0], c[1]), (c[2], c[3]), (c[4], c[5])),
            ((c[6], c[7]), (c[8], c[9]), (c[10], c[11])),
        )
