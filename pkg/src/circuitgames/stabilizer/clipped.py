"""Clipped gauge: canonical generator sets with two endpoints per site.

In the clipped gauge every site hosts exactly two stabilizer endpoints
(left + right), and when a site hosts two same-side endpoints the two
generators carry different Paulis there.  Bond entropies then equal half
the number of generators whose span crosses the bond.

The gauge is reached by a two-sweep reduction: a left-to-right reduced
echelon pass over the column order (x_1, z_1, x_2, z_2, ...), then a
right-to-left pass that cancels duplicate right endpoints, always folding
into the row whose left endpoint is not to the right of its partner's, so
the left structure is preserved.  Row products track signs exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tableau import StabilizerTableau, gf2_rank


@dataclass
class ClippedView:
    """Endpoint data of a clipped-gauge tableau (sites 1-indexed)."""

    left: np.ndarray  # (L,) leftmost nontrivial site per generator
    right: np.ndarray  # (L,) rightmost nontrivial site per generator
    rho_l: np.ndarray  # (L+1,) left-endpoint count per site, entry 0 unused
    rho_r: np.ndarray  # (L+1,)

    @property
    def L(self) -> int:
        return len(self.left)


class GaugeError(RuntimeError):
    """The clipped-gauge reduction failed to reach a valid gauge."""


def _row_mul(x, z, s, dst: int, src: int):
    """rows[dst] *= rows[src] with exact sign bookkeeping (commuting rows)."""
    phase = (
        2 * int(s[dst] + s[src])
        + int(np.sum(x[dst] & z[dst]))
        + int(np.sum(x[src] & z[src]))
        + 2 * int(np.sum(z[dst] & x[src]))
    )
    x[dst] ^= x[src]
    z[dst] ^= z[src]
    phase -= int(np.sum(x[dst] & z[dst]))
    phase %= 4
    if phase not in (0, 2):
        raise GaugeError("row product is not Hermitian; rows do not commute")
    s[dst] = phase >> 1


def _left_echelon(x, z, s):
    """Reduced echelon form over columns ordered x_1, z_1, x_2, z_2, ..."""
    L = x.shape[1]
    r = 0
    for q in range(L):
        for arr in (x, z):
            piv = None
            for i in range(r, L):
                if arr[i, q]:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != r:
                x[[r, piv]] = x[[piv, r]]
                z[[r, piv]] = z[[piv, r]]
                s[[r, piv]] = s[[piv, r]]
            for i in range(L):
                if i != r and arr[i, q]:
                    _row_mul(x, z, s, i, r)
            r += 1
            if r == L:
                return


def _supports(x, z):
    nontriv = (x | z).astype(bool)
    L = x.shape[0]
    left = np.zeros(L, dtype=np.int64)
    right = np.zeros(L, dtype=np.int64)
    for i in range(L):
        idx = np.nonzero(nontriv[i])[0]
        if len(idx) == 0:
            raise GaugeError("identity row encountered")
        left[i] = idx[0] + 1
        right[i] = idx[-1] + 1
    return left, right


def _right_clip(x, z, s):
    L = x.shape[0]
    left, right = _supports(x, z)
    guard = 0
    for j in range(L, 0, -1):
        while True:
            guard += 1
            if guard > 8 * L * L:
                raise GaugeError("right sweep failed to terminate")
            enders = [i for i in range(L) if right[i] == j]
            if len(enders) <= 2:
                # check same-content duplicates among <= 2 rows
                if len(enders) == 2:
                    a, b = enders
                    ca = x[a, j - 1] + 2 * z[a, j - 1]
                    cb = x[b, j - 1] + 2 * z[b, j - 1]
                    if ca != cb:
                        break
                else:
                    break
            # find a same-content pair, else any pair (three distinct Paulis)
            pair = None
            for ii in range(len(enders)):
                for jj in range(ii + 1, len(enders)):
                    a, b = enders[ii], enders[jj]
                    if (
                        x[a, j - 1] == x[b, j - 1]
                        and z[a, j - 1] == z[b, j - 1]
                    ):
                        pair = (a, b)
                        break
                if pair:
                    break
            if pair is None:
                pair = (enders[0], enders[1])
            a, b = pair
            dst, src = (a, b) if left[a] <= left[b] else (b, a)
            _row_mul(x, z, s, dst, src)
            li, ri = _row_support(x, z, dst)
            left[dst], right[dst] = li, ri


def _row_support(x, z, i):
    idx = np.nonzero((x[i] | z[i]).astype(bool))[0]
    if len(idx) == 0:
        raise GaugeError("row cancelled to identity; generators were dependent")
    return idx[0] + 1, idx[-1] + 1


def _make_view(x, z) -> ClippedView:
    L = x.shape[0]
    left, right = _supports(x, z)
    rho_l = np.zeros(L + 1, dtype=np.int64)
    rho_r = np.zeros(L + 1, dtype=np.int64)
    for i in range(L):
        rho_l[left[i]] += 1
        rho_r[right[i]] += 1
    return ClippedView(left=left, right=right, rho_l=rho_l, rho_r=rho_r)


def _verify(x, z, view: ClippedView):
    L = x.shape[0]
    for site in range(1, L + 1):
        if view.rho_l[site] + view.rho_r[site] != 2:
            raise GaugeError(f"site {site}: endpoint count != 2")
    for side, ends in (("l", view.left), ("r", view.right)):
        for site in range(1, L + 1):
            rows = np.nonzero(ends == site)[0]
            if len(rows) == 2:
                a, b = rows
                if (
                    x[a, site - 1] == x[b, site - 1]
                    and z[a, site - 1] == z[b, site - 1]
                ):
                    raise GaugeError(f"site {site}: duplicate {side} endpoint Pauli")


def clip_gauge(tableau: StabilizerTableau) -> tuple:
    """Return (clipped tableau, ClippedView); the row span is unchanged."""
    x = tableau.x_array().copy()
    z = tableau.z_array().copy()
    s = tableau.signs.astype(np.uint8).copy()
    _left_echelon(x, z, s)
    _right_clip(x, z, s)
    view = _make_view(x, z)
    _verify(x, z, view)
    clipped = StabilizerTableau.from_arrays(x, z, s)
    return clipped, view


def entropy_profile_clipped(view: ClippedView) -> np.ndarray:
    """S_x for every bond from the crossing counts; half a crossing pair
    per unit of entropy.  An odd crossing count means the gauge is broken."""
    L = view.L
    out = np.zeros(L - 1, dtype=np.int64)
    for bond in range(1, L):
        crossings = int(np.sum((view.left <= bond) & (view.right >= bond + 1)))
        if crossings % 2:
            raise GaugeError(f"odd crossing count at bond {bond}")
        out[bond - 1] = crossings // 2
    return out
