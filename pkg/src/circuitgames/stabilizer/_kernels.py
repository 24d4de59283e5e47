"""Compiled hot-path routines for the packed stabilizer tableau.

The tableau is a (L, W) uint64 array; column 2q holds the X bit and
column 2q+1 the Z bit of qubit q (0-indexed), packed 64 columns per word.
Signs live in a separate (L,) uint8 array and never affect entropies, so
trial evaluations of candidate gates only transform bits.
"""
from __future__ import annotations

import numpy as np
from numba import njit

U1 = np.uint64(1)
U0 = np.uint64(0)


def scratch_for(L: int) -> np.ndarray:
    return np.empty((L, (2 * L + 63) // 64), dtype=np.uint64)


@njit(cache=True)
def apply_gate(bits, signs, a, bmap, fmap):
    """Conjugate every generator by a gate on qubits (a, a+1)."""
    L = bits.shape[0]
    c0 = 2 * a
    for i in range(L):
        idx = 0
        for k in range(4):
            c = c0 + k
            idx |= int((bits[i, c >> 6] >> (c & 63)) & U1) << k
        nb = bmap[idx]
        signs[i] ^= fmap[idx]
        for k in range(4):
            c = c0 + k
            w = c >> 6
            off = c & 63
            bits[i, w] = (bits[i, w] & ~(U1 << off)) | (np.uint64((nb >> k) & 1) << off)


@njit(cache=True)
def _rank(scratch, nrows, ncols):
    rank = 0
    for c in range(ncols):
        w = c >> 6
        off = c & 63
        piv = -1
        for r in range(rank, nrows):
            if (scratch[r, w] >> off) & U1:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(scratch.shape[1]):
                tmp = scratch[rank, j]
                scratch[rank, j] = scratch[piv, j]
                scratch[piv, j] = tmp
        for r in range(piv + 1, nrows):
            if (scratch[r, w] >> off) & U1:
                for j in range(scratch.shape[1]):
                    scratch[r, j] ^= scratch[rank, j]
        rank += 1
        if rank == nrows:
            break
    return rank


@njit(cache=True)
def _fill_left(bits, ncols, scratch):
    """Copy columns [0, ncols) into scratch, zero-padding the tail word."""
    L, W = bits.shape
    wc = (ncols + 63) // 64
    rem = ncols & 63
    for i in range(L):
        for j in range(wc):
            scratch[i, j] = bits[i, j]
        if rem:
            scratch[i, wc - 1] &= (U1 << rem) - U1
    return wc


@njit(cache=True)
def _fill_right(bits, col0, scratch):
    """Copy columns [col0, 2L) into scratch starting at bit 0."""
    L, W = bits.shape
    ncols = 2 * L - col0
    wc = (ncols + 63) // 64
    w0 = col0 >> 6
    sh = col0 & 63
    for i in range(L):
        for j in range(wc):
            lo = bits[i, w0 + j] >> sh if w0 + j < W else U0
            if sh and w0 + j + 1 < W:
                lo |= bits[i, w0 + j + 1] << (64 - sh)
            scratch[i, j] = lo
        rem = ncols & 63
        if rem:
            scratch[i, wc - 1] &= (U1 << rem) - U1
    return wc


@njit(cache=True)
def bond_entropy(bits, x, scratch):
    """S across bond x (cut {1..x}|{x+1..L}, 1-indexed), in bits."""
    L = bits.shape[0]
    if x <= L - x:
        ncols = 2 * x
        _fill_left(bits, ncols, scratch)
        return _rank(scratch, L, ncols) - x
    ncols = 2 * (L - x)
    _fill_right(bits, 2 * x, scratch)
    return _rank(scratch, L, ncols) - (L - x)


@njit(cache=True)
def bond_entropy_after(bits, x, bmap, scratch):
    """S across bond x if a gate with bit action ``bmap`` were applied on
    qubits (x, x+1); the tableau itself is left untouched."""
    L = bits.shape[0]
    c0 = 2 * (x - 1)  # x-column of left gate qubit (0-indexed x-1)
    left = x <= L - x
    if left:
        ncols = 2 * x
        _fill_left(bits, ncols, scratch)
        patch0 = ncols - 2  # columns of qubit x-1 within the left block
        shift = 0
    else:
        ncols = 2 * (L - x)
        _fill_right(bits, 2 * x, scratch)
        patch0 = 0  # columns of qubit x at the front of the right block
        shift = 2
    pw = patch0 >> 6
    po = patch0 & 63
    for i in range(L):
        idx = 0
        for k in range(4):
            c = c0 + k
            idx |= int((bits[i, c >> 6] >> (c & 63)) & U1) << k
        nb = bmap[idx] >> shift
        scratch[i, pw] = (scratch[i, pw] & ~(np.uint64(3) << po)) | (
            np.uint64(nb & 3) << po
        )
    nkeep = x if left else L - x
    return _rank(scratch, L, ncols) - nkeep


@njit(cache=True)
def entropy_profile(bits, scratch, out):
    L = bits.shape[0]
    out[0] = 0
    out[L] = 0
    for x in range(1, L):
        out[x] = bond_entropy(bits, x, scratch)


@njit(cache=True)
def _disentangle_at(bits, signs, prof, x, strat, rng, d_bits, d_flips,
                    sym_bits, all_flips, scratch, svals):
    """One disentangler move at bond x.  Returns the entropy change."""
    sl = prof[x - 1]
    sx = prof[x]
    sr = prof[x + 1]
    if sx < min(sl, sr):  # subadditivity: cannot be reduced
        return 0
    lb = max(sl, sr) - 1
    if lb < 0:
        lb = 0
    if sx <= lb:  # already at the unitary reachability floor
        return 0
    if strat == 0:  # ordered: first gate in canonical order reaching the optimum
        best = sx
        bestk = -1
        for k in range(d_bits.shape[0]):
            s2 = bond_entropy_after(bits, x, d_bits[k], scratch)
            if s2 < best:
                best = s2
                bestk = k
                if best == lb:
                    break
        if bestk >= 0:
            apply_gate(bits, signs, x - 1, d_bits[bestk], d_flips[bestk])
            prof[x] = best
            return best - sx
        return 0
    if strat == 1:  # random among the optimal gates of the 19-set
        n = d_bits.shape[0]
        best = sx
        for k in range(n):
            svals[k] = bond_entropy_after(bits, x, d_bits[k], scratch)
            if svals[k] < best:
                best = svals[k]
        if best >= sx:
            return 0
        cnt = 0
        for k in range(n):
            if svals[k] == best:
                cnt += 1
        j = rng.integers(0, cnt)
        for k in range(n):
            if svals[k] == best:
                if j == 0:
                    apply_gate(bits, signs, x - 1, d_bits[k], d_flips[k])
                    break
                j -= 1
        prof[x] = best
        return best - sx
    # strat == 2: random among all 11520 optimal gates.  The bit action only
    # depends on the symplectic class, so scan the 720 classes and then draw
    # a sign pattern; every class has exactly 16 sign variants.
    n = sym_bits.shape[0]
    best = sx
    for k in range(n):
        svals[k] = bond_entropy_after(bits, x, sym_bits[k], scratch)
        if svals[k] < best:
            best = svals[k]
    if best >= sx:
        return 0
    cnt = 0
    for k in range(n):
        if svals[k] == best:
            cnt += 1
    j = rng.integers(0, cnt)
    sid = -1
    for k in range(n):
        if svals[k] == best:
            if j == 0:
                sid = k
                break
            j -= 1
    gid = 16 * sid + rng.integers(0, 16)
    apply_gate(bits, signs, x - 1, sym_bits[sid], all_flips[gid])
    prof[x] = best
    return best - sx


@njit(cache=True)
def clifford_advance(bits, signs, prof, p, n_steps, rng, strat,
                     d_bits, d_flips, sym_bits, all_bits, all_flips, scratch):
    """n_steps time steps of L updating steps each (bond draw, then coin)."""
    L = bits.shape[0]
    svals = np.empty(sym_bits.shape[0], dtype=np.int64)
    for _ in range(n_steps * L):
        x = 1 + int(rng.integers(0, L - 1))
        if rng.random() < p:
            _disentangle_at(bits, signs, prof, x, strat, rng, d_bits, d_flips,
                            sym_bits, all_flips, scratch, svals)
        else:
            gid = rng.integers(0, all_bits.shape[0])
            apply_gate(bits, signs, x - 1, all_bits[gid], all_flips[gid])
            prof[x] = bond_entropy(bits, x, scratch)


@njit(cache=True)
def disentangle_until_empty(bits, signs, prof, rng, strat, cap,
                            d_bits, d_flips, sym_bits, all_flips, scratch):
    """Probe random bonds until the profile is flat zero; returns the probe
    count, or -1 if the cap was exceeded."""
    L = bits.shape[0]
    svals = np.empty(sym_bits.shape[0], dtype=np.int64)
    total = 0
    for x in range(1, L):
        total += prof[x]
    n_d = 0
    while total > 0:
        if n_d >= cap:
            return -1
        x = 1 + int(rng.integers(0, L - 1))
        n_d += 1
        total += _disentangle_at(bits, signs, prof, x, strat, rng, d_bits,
                                 d_flips, sym_bits, all_flips, scratch, svals)
    return n_d


@njit(cache=True)
def random_circuit(bits, signs, prof, rng, n_gates, all_bits, all_flips, scratch):
    L = bits.shape[0]
    for _ in range(n_gates):
        x = 1 + int(rng.integers(0, L - 1))
        gid = rng.integers(0, all_bits.shape[0])
        apply_gate(bits, signs, x - 1, all_bits[gid], all_flips[gid])
        prof[x] = bond_entropy(bits, x, scratch)
