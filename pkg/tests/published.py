"""Published reference values, transcribed by hand.

Coefficients are listed constant term first, as (u, v) for u + v*zeta, with
zeta^2 already rewritten as -1 - zeta.
"""
import mpmath

from galrep.arith import EisInt

# degree-n polynomial of Fr_p on the zeta-part of B(E), keyed by n -> (p, c_0..c_{n-1})
SURFACE_POLYS = {
    4: (5, [(625, 0), (-25, -50), (-20, 0), (1, 2)]),
    5: (7, [(16807, 16807), (2744, -343), (-147, -392), (-21, 35), (8, 9)]),
    6: (2, [(64, 64), (32, 16), (16, 8), (8, 4), (4, 2), (2, 1)]),
    7: (7, [(-823543, -823543), (84035, 0), (4802, 7203), (1715, 1372), (-245, -49), (-14, 7), (-5, -5)]),
    8: (2, [(0, -256), (64, 0), (0, -32), (16, 0), (0, 0), (0, -4), (2, 0), (0, -1)]),
    9: (2, [(512, 0), (384, 384), (0, 128), (-32, 0), (0, -16), (8, 8), (-4, 0), (-4, -4), (0, -3)]),
    10: (2, [(0, 1024), (256, 0), (0, 128), (64, 0), (32, 32), (0, 0), (8, 8), (0, 4), (2, 0), (0, 1)]),
    11: (
        2,
        [(-2048, -2048), (0, -512), (-256, -256), (0, -128), (0, 0), (-32, -32),
         (16, 0), (0, 0), (0, -4), (2, 0), (0, -1)],
    ),
    12: (
        2,
        [(4096, 0), (-1024, 1024), (0, -1024), (256, 512), (-128, -128), (0, 0),
         (-32, 0), (0, 0), (0, 8), (-4, -8), (4, 4), (-2, -1)],
    ),
}


def _e(u, v=0):
    return EisInt(u, v)


ZETA = _e(0, 1)
ZETA2 = _e(-1, -1)

# T^4 + d3 T^3 + d2 T^2 + d1 T + d0 on the zeta-part of H^3, keyed by p -> (d0, d1, d2, d3)
THREEFOLD_POLYS = {
    5: (5**6 * ZETA, 5**3 * _e(13, 10), -5 * ZETA2, _e(10, 13)),
    7: (7**6 * ZETA2, 7**3 * _e(7, 3), -189 * ZETA, -_e(7, 4)),
    11: (11**6 * ZETA2, 11**3 * _e(21, 2), 517 * ZETA, -_e(21, 19)),
    13: (13**6 * ZETA, 13**3 * _e(70, 77), -1742 * ZETA2, _e(77, 70)),
    17: (_e(17**6), 17**3 * _e(87, 63), _e(-1802), _e(24, -63)),
    19: (_e(19**6), -(19**3) * _e(8, 81), _e(-4275), _e(73, 81)),
    23: (23**6 * ZETA, 23**3 * _e(129, 33), 14536 * ZETA2, _e(33, 129)),
    29: (29**6 * ZETA2, 29**3 * _e(186, 86), 16936 * ZETA, -_e(186, 100)),
}

# L(2) of the twisted representation, 25 decimals
with mpmath.workdps(40):
    L2 = mpmath.mpc("0.4199405774024452982392984", "0.2424528054069486672346063")
L2_DIGITS = 25
