"""The integer polynomials that the positivity and identity arguments use.

Besides the stated coefficient lists, ``derive_s`` and ``derive_f`` rebuild
two of them from the underlying bounds so the transcription can be checked.
"""

from __future__ import annotations

import math

from .poly import IntPoly

Y = IntPoly.y()

# derivative numerator of J_{5,-580115,1e13}(x) - f(x) in y = log x
S_POLY = IntPoly([
    975901480963513200, -195224040181960440, -1345478703065, -1345840694825,
    -2691881529325, 4037979215095, -336607082789, -15661259, -4060210, -6381045, 580576,
])

# numerator of the lower bound for (e x / log x) pi(x/e) - pi(x)^2 near e^9032
F_POLY = IntPoly([
    742637384887876, -5198455153885372, 15595340608417428, -25992179953690916,
    25992104849073228, -15595195794997976, 5198360646460072, -742610678698880,
    -1199031244, -1308062388, 1199056017, -872039437, 327013544, -81660454, 7, 1,
])

T_POLY = IntPoly([18, 12, 11])
S_NUMERATOR = IntPoly([0, -3, -1, -1, 1])      # y^4 - y^3 - y^2 - 3y  (S = this / y^3)
R_NUMERATOR = IntPoly([6, 2, 1, 1])            # y^3 + y^2 + 2y + 6    (R = this / y^3)

POLYS = {"s": S_POLY, "f": F_POLY, "T": T_POLY, "S": S_NUMERATOR, "R": R_NUMERATOR}


def identity_holds() -> bool:
    """y^5 R(y) S(y) = y^6 - T(y), i.e. R_num * S_num = y * (y^6 - T)."""
    return R_NUMERATOR * S_NUMERATOR == Y * (Y ** 6 - T_POLY)


def derive_s(eta: int = 580115, k: int = 5, tail: int = 580044) -> IntPoly:
    """g'(x) (L^4 D)^2 L^(k+2) for g = J_{k,-eta,x1} - x/D(log x), as a polynomial in L.

    J' = 1/L - eta (L - k)/L^(k+2) and (x/D)' = (D - D')/D^2 with
    D = L - 1 - 1/L - 3/L^2 - 13/L^3 + tail/L^4.
    """
    P = Y ** 5 - Y ** 4 - Y ** 3 - 3 * Y ** 2 - 13 * Y + tail          # L^4 D
    # L^5 (D - D') with L^5 D' = L^5 + L^3 + 6 L^2 + 39 L - 4 tail
    DmD = Y * P - (Y ** 5 + Y ** 3 + 6 * Y ** 2 + 39 * Y - 4 * tail)
    Jn = Y ** (k + 1) - eta * (Y - k)                                  # L^(k+2) J'
    return Jn * P ** 2 - Y ** (k + 5) * DmD


def derive_f(low: int = 27158494, high: int = 27251374, n: int = 6) -> IntPoly:
    """Rebuild f(y) from the two-sided series bounds with remainder constants.

    With L = log x, the lower bound for pi(x/e) uses log(x/e) = L - 1, the upper
    bound for pi(x) uses L; the result times L^(2n+2) (L-1)^(n+1) is f(L).
    """
    L1 = Y - 1
    # (1/L) [ sum (k-1)!/(L-1)^k - low/(L-1)^(n+1) ]  times L^(2n+2) (L-1)^(n+1)
    lower = IntPoly([0])
    for k in range(1, n + 1):
        lower = lower + math.factorial(k - 1) * L1 ** (n + 1 - k)
    lower = lower - low
    lower = lower * Y ** (2 * n + 1)
    # [ sum (k-1)!/L^k + high/L^(n+1) ]^2 times L^(2n+2) (L-1)^(n+1)
    up = IntPoly([0])
    for k in range(1, n + 1):
        up = up + math.factorial(k - 1) * Y ** (n + 1 - k)
    up = up + high
    return lower - up * up * L1 ** (n + 1)
