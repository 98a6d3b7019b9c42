"""Norm-ordered table of primary Gaussian integers with factorization data.

The table enumerates every primary element of norm up to a bound, sorted by
(norm, re, im), and stores for each entry a link to its "leading" primary
prime power: index of the prime, its exponent, and the index of the coprime
cofactor. Any multiplicative function can then be evaluated over the whole
table with a handful of vectorized passes (``multiplicative_eval``), since
cofactor indices always point to entries of strictly smaller norm.

Building the table costs a few seconds per million entries and results are
cached per process, growing monotonically.
"""

from __future__ import annotations

import numpy as np

__all__ = ["PrimaryTable", "table_for", "odd_squarefree", "primary_count"]

_PACK_B = None  # set per table; coordinates are packed into a single int64 key


def _spf_sieve(limit: int) -> np.ndarray:
    """Smallest-prime-factor sieve, spf[k] = least prime dividing k."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[1] = 1
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == 0:
            sl = spf[p * p :: p]
            sl[sl == 0] = p
            spf[p] = p
    rest = spf == 0
    rest[0] = rest[1] = False
    spf[rest] = np.nonzero(rest)[0]
    return spf


def _enumerate_primary(max_norm: int):
    """All primary re+im*i with norm <= max_norm, sorted by (norm, re, im)."""
    res, ims = [], []
    r = int(np.floor(np.sqrt(max_norm)))
    for im in range(-r - (r % 2), r + 1, 2):
        rem = max_norm - im * im
        if rem < 1:
            continue
        w = int(np.floor(np.sqrt(rem)))
        # primary requires re odd with re = im + 1 (mod 4)
        start = im + 1
        lo = start + 4 * ((-w - start + 3) // 4)  # smallest value >= -w
        if lo < -w:
            lo += 4
        re = np.arange(lo, w + 1, 4, dtype=np.int64)
        if re.size:
            res.append(re)
            ims.append(np.full(re.size, im, dtype=np.int64))
    re = np.concatenate(res)
    im = np.concatenate(ims)
    norm = re * re + im * im
    order = np.lexsort((im, re, norm))
    return re[order], im[order], norm[order]


def _valuation(n: np.ndarray, p: np.ndarray):
    """Elementwise v, t with n = p**v * t and p coprime to t."""
    v = np.zeros(n.shape, dtype=np.int64)
    t = n.copy()
    mask = t % p == 0
    while mask.any():
        v[mask] += 1
        t[mask] //= p[mask]
        mask &= t % p == 0
    return v, t


def _pow_complex_int(re, im, e):
    """Elementwise (re + im*i)**e on int64 arrays, binary powering."""
    out_re = np.ones_like(re)
    out_im = np.zeros_like(im)
    b_re, b_im = re.copy(), im.copy()
    e = e.copy()
    while (e > 0).any():
        odd = (e & 1).astype(bool)
        t_re = out_re[odd] * b_re[odd] - out_im[odd] * b_im[odd]
        t_im = out_re[odd] * b_im[odd] + out_im[odd] * b_re[odd]
        out_re[odd], out_im[odd] = t_re, t_im
        e >>= 1
        go = (e > 0)
        t_re = b_re[go] * b_re[go] - b_im[go] * b_im[go]
        t_im = 2 * b_re[go] * b_im[go]
        b_re[go], b_im[go] = t_re, t_im
    return out_re, out_im


class PrimaryTable:
    """Factorization-aware enumeration of primary elements up to a norm bound.

    Attributes
    ----------
    re, im, norm : int64 arrays
        Element coordinates and norms, sorted by (norm, re, im); entry 0
        is the element 1.
    lead_prime_idx, lead_exp, cof_idx : int64 arrays
        Entry j factors as table[lead_prime_idx[j]] ** lead_exp[j] times
        table[cof_idx[j]], the two parts coprime, cof_idx[j] < j.
    is_prime : bool array
    prime_p, prime_root, prime_is_split :
        For prime entries: the rational prime below, the residue of i
        modulo the prime (split case; 0 for inert), and the splitting type.
    """

    def __init__(self, max_norm: int):
        if max_norm < 1:
            raise ValueError("max_norm must be >= 1")
        self.max_norm = int(max_norm)
        self.re, self.im, self.norm = _enumerate_primary(max_norm)
        n = self.re.size
        self._B = int(np.abs(self.re).max() if n else 0) + int(np.sqrt(max_norm)) + 2
        self._key_sorted, self._key_order = self._build_index()
        self._build_factor_links()
        self._mu = None
        self._nsf = None

    # -- index ---------------------------------------------------------------

    def _pack(self, re, im):
        B = self._B
        return (re + B) * np.int64(2 * B + 1) + (im + B)

    def _build_index(self):
        key = self._pack(self.re, self.im)
        order = np.argsort(key, kind="stable")
        return key[order], order

    def index_of(self, re, im) -> np.ndarray:
        """Table indices of given primary elements (vectorized).

        Raises KeyError if any query is absent.
        """
        re = np.asarray(re, dtype=np.int64)
        im = np.asarray(im, dtype=np.int64)
        key = self._pack(re, im)
        pos = np.searchsorted(self._key_sorted, key)
        ok = (pos < self._key_sorted.size) & (self._key_sorted[np.minimum(pos, self._key_sorted.size - 1)] == key)
        if not ok.all():
            bad = np.nonzero(~ok)[0][0]
            raise KeyError(f"({re.flat[bad]}, {im.flat[bad]}) not in table")
        return self._key_order[pos]

    def count_upto(self, x) -> int:
        """Number of table entries with norm <= x."""
        return int(np.searchsorted(self.norm, x, side="right"))

    # -- factorization structure ----------------------------------------------

    def _build_factor_links(self):
        n = self.re.size
        lead_idx = np.zeros(n, dtype=np.int64)
        lead_exp = np.zeros(n, dtype=np.int64)
        cof_idx = np.zeros(n, dtype=np.int64)
        if n <= 1:
            self.lead_prime_idx, self.lead_exp, self.cof_idx = lead_idx, lead_exp, cof_idx
            self.is_prime = np.zeros(n, dtype=bool)
            self._set_prime_rows()
            self.max_depth = 0
            return

        spf = _spf_sieve(self.max_norm)
        p = spf[self.norm]  # leading rational prime; norms are odd
        body = np.arange(1, n)

        inert = p[body] % 4 == 3
        split = ~inert

        e = np.zeros(n, dtype=np.int64)
        c_re = np.zeros(n, dtype=np.int64)
        c_im = np.zeros(n, dtype=np.int64)
        w_re = np.zeros(n, dtype=np.int64)
        w_im = np.zeros(n, dtype=np.int64)

        # inert leading prime: norm = q^(2e), prime element is -q
        idx = body[inert]
        if idx.size:
            q = p[idx]
            k, _ = _valuation(self.norm[idx], q)
            ee = k // 2
            qe = q ** ee
            if ((self.re[idx] % qe != 0) | (self.im[idx] % qe != 0)).any():
                raise AssertionError("inert cofactor division not exact")
            sgn = np.where(ee % 2 == 1, -1, 1)
            e[idx] = ee
            c_re[idx] = sgn * (self.re[idx] // qe)
            c_im[idx] = sgn * (self.im[idx] // qe)
            w_re[idx] = -q
            w_im[idx] = np.zeros_like(q)

        # split leading prime: pick the conjugate that divides after
        # stripping the rational part
        idx = body[split]
        if idx.size:
            pp = p[idx]
            k, _ = _valuation(self.norm[idx], pp)
            # gamma = componentwise valuation of p in z
            g = np.zeros(idx.size, dtype=np.int64)
            a = self.re[idx].copy()
            b = self.im[idx].copy()
            m = (a % pp == 0) & (b % pp == 0)
            while m.any():
                g[m] += 1
                a[m] //= pp[m]
                b[m] //= pp[m]
                m &= (a % pp == 0) & (b % pp == 0)
            kp = k - 2 * g

            w1_re, w1_im, r1 = self._split_prime_data(pp)
            # does the first conjugate divide the stripped element?
            div1 = (a + b * r1) % pp == 0
            take1 = (kp == 0) | div1
            ww_re = w1_re  # conjugates share the real part
            ww_im = np.where(take1, w1_im, -w1_im)
            ee = g + np.where(kp == 0, 0, kp)
            e[idx] = ee
            w_re[idx], w_im[idx] = ww_re, ww_im

            # cofactor = z * conj(w)^e / p^e, exact
            we_re, we_im = _pow_complex_int(ww_re, -ww_im, ee)
            pe = pp ** ee
            num_re = self.re[idx] * we_re - self.im[idx] * we_im
            num_im = self.re[idx] * we_im + self.im[idx] * we_re
            if ((num_re % pe != 0) | (num_im % pe != 0)).any():
                raise AssertionError("cofactor division not exact")
            c_re[idx] = num_re // pe
            c_im[idx] = num_im // pe

        lead_exp[body] = e[body]
        lead_idx[body] = self.index_of(w_re[body], w_im[body])
        cof_idx[body] = self.index_of(c_re[body], c_im[body])
        if (cof_idx[body] >= body).any():
            raise AssertionError("cofactor index not decreasing")

        self.lead_prime_idx, self.lead_exp, self.cof_idx = lead_idx, lead_exp, cof_idx
        self.is_prime = np.zeros(n, dtype=bool)
        self.is_prime[body] = (cof_idx[body] == 0) & (lead_exp[body] == 1)

        # number of multiply rounds = max count of distinct prime powers - 1
        cur = cof_idx.copy()
        rounds = 0
        while (cur != 0).any():
            cur = cof_idx[cur]
            rounds += 1
        self.max_depth = rounds
        self._set_prime_rows()

    def _split_prime_data(self, p: np.ndarray):
        """Per-element data for split rational primes p: the table's first
        primary prime above p as (re, im) plus the residue r of i modulo it."""
        up, inv = np.unique(p, return_inverse=True)
        w_re = np.empty(up.size, dtype=np.int64)
        w_im = np.empty(up.size, dtype=np.int64)
        root = np.empty(up.size, dtype=np.int64)
        lo = np.searchsorted(self.norm, up, side="left")
        for j, q in enumerate(up):
            i0 = lo[j]
            # the two conjugate primes are the only primary elements of norm p
            a, b = int(self.re[i0]), int(self.im[i0])
            w_re[j], w_im[j] = a, b
            root[j] = (-a * pow(b, int(q) - 2, int(q))) % int(q)
        return w_re[inv], w_im[inv], root[inv]

    def _set_prime_rows(self):
        pr = np.nonzero(self.is_prime)[0]
        self.prime_indices = pr
        nrm = self.norm[pr]
        q = np.sqrt(nrm).astype(np.int64)
        inert = q * q == nrm
        self.prime_is_split = ~inert
        self.prime_p = np.where(inert, q, nrm)
        root = np.zeros(pr.size, dtype=np.int64)
        if pr.size:
            sp = np.nonzero(~inert)[0]
            a = self.re[pr[sp]]
            b = self.im[pr[sp]]
            pp = self.prime_p[sp]
            root[sp] = [(-int(ai) * pow(int(bi), int(pi) - 2, int(pi))) % int(pi)
                        for ai, bi, pi in zip(a, b, pp)]
        self.prime_root = root

    # -- multiplicative machinery ----------------------------------------------

    def multiplicative_eval(self, lead_values: np.ndarray) -> np.ndarray:
        """Evaluate a multiplicative function from its leading prime-power values.

        Parameters
        ----------
        lead_values : array, shape (len(table),)
            lead_values[j] = f(prime_j ** exp_j) for the leading prime power
            of entry j; lead_values[0] must be 1 (= f at the empty product).

        Returns
        -------
        array with f evaluated at every table entry.
        """
        k = lead_values.shape[0]
        if k > self.re.size:
            raise ValueError("lead_values has wrong length")
        if lead_values[0] != 1:
            raise ValueError("lead_values[0] must be 1")
        # prefix-closed: cofactor chains never leave the first k entries
        out = lead_values.copy()
        idx = self.cof_idx[:k]
        for _ in range(self.max_depth):
            out = out * lead_values[idx]
            idx = self.cof_idx[idx]
        return out

    def mu(self) -> np.ndarray:
        """Moebius function over the table (int8)."""
        if self._mu is None:
            lead = np.where(self.lead_exp == 1, -1, 0).astype(np.int64)
            lead[0] = 1
            self._mu = self.multiplicative_eval(lead).astype(np.int8)
        return self._mu

    def is_squarefree(self) -> np.ndarray:
        if self._nsf is None:
            self._nsf = self.mu() != 0
        return self._nsf


_CACHE: dict = {}


def table_for(max_norm: int) -> PrimaryTable:
    """Return a cached PrimaryTable covering at least max_norm."""
    have = _CACHE.get("table")
    if have is None or have.max_norm < max_norm:
        _CACHE["table"] = PrimaryTable(max_norm)
    return _CACHE["table"]


def primary_count(max_norm: int) -> int:
    """Number of primary elements with norm <= max_norm."""
    t = table_for(max_norm)
    return t.count_upto(max_norm)


def odd_squarefree(max_norm: int, associates: bool = True):
    """Odd squarefree elements with norm <= max_norm, norm-sorted.

    Parameters
    ----------
    max_norm : int
    associates : bool
        If True, all four associates of each primary element are emitted
        (the default family convention); if False, primary elements only.

    Returns
    -------
    (re, im, norm) : int64 arrays sorted by (norm, re, im).
    """
    t = table_for(max_norm)
    k = t.count_upto(max_norm)
    sf = t.is_squarefree()[:k]
    re, im, nrm = t.re[:k][sf], t.im[:k][sf], t.norm[:k][sf]
    if not associates:
        return re, im, nrm
    # units 1, i, -1, -i applied to each primary representative
    re4 = np.concatenate([re, -im, -re, im])
    im4 = np.concatenate([im, re, -im, -re])
    n4 = np.concatenate([nrm] * 4)
    order = np.lexsort((im4, re4, n4))
    return re4[order], im4[order], n4[order]
