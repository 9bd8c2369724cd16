"""Exact evaluation of v_F(g) = v(g(theta)) for a root theta of F.

Over a Henselian base every conjugate of theta has the same valuation
behaviour, so n*v(g(theta)) = v(prod_i g(theta_i)) = v(Res(F, g)).  The
resultant is computed as a determinant of a multiplication matrix, over
whichever of K[x]/(F) and K[x]/(g) is smaller when g can be made monic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .newton import NewtonPolygon
from .poly import Poly, phi_expansion
from .values import INF, Value, vmin


def _mult_matrix(a: Poly, h: Poly) -> List[list]:
    """Columns a*x^j mod h in the basis 1, x, ..., x^(k-1); h monic."""
    K = h.field
    k = h.degree
    col = a % h if a.degree >= k else a
    cols = []
    for j in range(k):
        cols.append([col[i] for i in range(k)])
        if j + 1 < k:
            top = col[k - 1]
            shifted = [K.zero] + [col[i] for i in range(k - 1)]
            if top:
                shifted = [shifted[i] - top * h[i] for i in range(k)]
            col = Poly._raw(K, tuple(shifted))
    # transpose so that rows index the basis
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def determinant(M: List[list], field):
    """Exact determinant.  Fraction-free (Bareiss) except over Q."""
    k = len(M)
    if k == 1:
        return M[0][0]
    if k == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if k == 3:
        a, b, c = M
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    A = [list(row) for row in M]
    sign = 1
    if field.kind == "qp":
        det = Fraction(1)
        for i in range(k):
            piv = next((r for r in range(i, k) if A[r][i]), None)
            if piv is None:
                return Fraction(0)
            if piv != i:
                A[i], A[piv] = A[piv], A[i]
                sign = -sign
            det *= A[i][i]
            inv = 1 / A[i][i]
            for r in range(i + 1, k):
                if A[r][i]:
                    f = A[r][i] * inv
                    A[r] = [A[r][j] - f * A[i][j] for j in range(k)]
        return sign * det
    prev = field.one
    for i in range(k - 1):
        piv = None
        for r in range(i, k):
            if A[r][i] and (piv is None or len(A[r][i].terms) < len(A[piv][i].terms)):
                piv = r
        if piv is None:
            return field.zero
        if piv != i:
            A[i], A[piv] = A[piv], A[i]
            sign = -sign
        p = A[i][i]
        for r in range(i + 1, k):
            for j in range(i + 1, k):
                A[r][j] = field.exquo(p * A[r][j] - A[r][i] * A[i][j], prev)
            A[r][i] = field.zero
        prev = p
    d = A[k - 1][k - 1]
    return d if sign > 0 else -d


class RootValuation:
    """v_F on K[x] for a monic irreducible F, evaluated exactly."""

    def __init__(self, F: Poly):
        if F.degree < 1 or not F.is_monic():
            raise ValueError("F must be monic of positive degree")
        self.F = F
        self.field = F.field
        self.n = F.degree
        self._cache: Dict[Poly, Value] = {}

    def __call__(self, g: Poly) -> Value:
        if not isinstance(g, Poly):
            g = Poly(self.field, (g,))
        hit = self._cache.get(g)
        if hit is not None:
            return hit
        v = self._compute(g)
        self._cache[g] = v
        return v

    def _compute(self, g: Poly) -> Value:
        K, F, n = self.field, self.F, self.n
        if g.degree >= n:
            g = g % F
        if not g:
            return INF
        if g.degree == 0:
            return K.valuation(g[0])
        lead = g.lc
        if K.is_unit(lead) and g.degree <= n:
            h = g.monic()
            det = determinant(_mult_matrix(F, h), K)
            vd = K.valuation(det)
            if vd is INF:
                # F and h share a factor: F irreducible means F | h
                return INF
            return K.valuation(lead) + vd / n
        det = determinant(_mult_matrix(g, F), K)
        vd = K.valuation(det)
        return INF if vd is INF else vd / n

    # -- derived quantities ----------------------------------------------------
    def weight(self, g: Poly) -> Value:
        if g.degree < 1:
            raise ValueError("weight needs a nonconstant polynomial")
        v = self(g)
        return INF if v is INF else v / g.degree

    def taylor_polygon(self, f: Poly) -> Tuple[int, NewtonPolygon]:
        """(multiplicity of theta as a root of f, polygon of f(theta + h))."""
        pts = [(i, self(f.hasse(i))) for i in range(f.degree + 1)]
        zero_mult = next(i for i, (_, v) in enumerate(pts) if v is not INF)
        return zero_mult, NewtonPolygon(pts)

    def distance_multiset(self, f: Poly) -> List[Tuple[Value, int]]:
        """All values v(theta - alpha), alpha in Z(f), with multiplicities (largest first)."""
        if f.degree < 1:
            raise ValueError("distance needs a nonconstant polynomial")
        zero_mult, poly = self.taylor_polygon(f)
        out: List[Tuple[Value, int]] = []
        if zero_mult:
            out.append((INF, zero_mult))
        out.extend(poly.inclinations())
        return out

    def distance(self, f: Poly) -> Value:
        return self.distance_multiset(f)[0][0]

    def truncation(self, phi: Poly, g: Poly) -> Value:
        """min over the phi-expansion of v_F(a_s phi^s)."""
        vphi = self(phi)
        return vmin(self(a) + (s * vphi if vphi is not INF else INF) if s else self(a)
                    for s, a in enumerate(phi_expansion(g, phi)) if a)


def weight(vF, g: Poly) -> Value:
    if g.degree < 1:
        raise ValueError("weight needs a nonconstant polynomial")
    v = vF(g)
    return INF if v is INF else v / g.degree


def distance(vF: RootValuation, f: Poly):
    """(d(f), multiset of v(theta - alpha))."""
    ms = vF.distance_multiset(f)
    return ms[0][0], ms
