"""Exact arithmetic in GF(p^N) for odd primes p.

Elements live in the power basis 1, t, ..., t^(N-1) of GF(p)[t]/(modulus)
and are stored as length-N tuples of integers in [0, p), constant term
first.  The modulus is always the lexicographically smallest monic
irreducible polynomial of its degree (comparing coefficient tuples,
constant term first), so element encodings are reproducible across runs.

Fields are interned: make_extension(p, N) returns a cached Field, and two
elements interoperate only when their fields are the same object.  The
total order used whenever a canonical element must be picked is the
lexicographic order on coefficient tuples.

Multiplication packs coefficient vectors into a single Python integer
(Kronecker substitution) so the convolution is one bigint multiply;
degrees >= N are folded back with precomputed reductions of t^(N+k).
"""

from __future__ import annotations

import functools
import itertools
import math

import sympy

from .errors import EvenCharacteristic, NotPrime, RootFieldTooSmall


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# polynomial arithmetic over the prime field (coefficient lists, constant
# term first) -- only used for modulus selection and irreducibility testing


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _ptrim([c % p for c in out])


def _pmod(f, m, p):
    # m monic
    f = list(f)
    dm = len(m) - 1
    while len(f) - 1 >= dm and f:
        c = f[-1] % p
        if c:
            shift = len(f) - 1 - dm
            for i in range(dm):
                f[shift + i] = (f[shift + i] - c * m[i]) % p
        f.pop()
    return _ptrim(f)


def _ppowmod(f, e, m, p):
    result = [1]
    f = _pmod(f, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, f, p), m, p)
        f = _pmod(_pmul(f, f, p), m, p)
        e >>= 1
    return result


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        inv = pow(g[-1], p - 2, p)
        gm = [(c * inv) % p for c in g]
        f, g = g, _pmod(f, gm, p)
    return f


def _is_irreducible(f, p) -> bool:
    """Rabin test for a monic polynomial over GF(p)."""
    n = len(f) - 1
    if n < 1:
        return False
    x = _pmod([0, 1], f, p)
    # x^(p^k) mod f via repeated p-th powering
    xq = list(x)
    powers = {}
    for k in range(1, n + 1):
        xq = _ppowmod(xq, p, f, p)
        powers[k] = list(xq)
    if _ptrim([(a - b) % p for a, b in itertools.zip_longest(powers[n], x, fillvalue=0)]):
        return False
    for ell in {q for q in range(2, n + 1) if n % q == 0 and is_prime(q)}:
        h = _ptrim(
            [(a - b) % p for a, b in itertools.zip_longest(powers[n // ell], x, fillvalue=0)]
        )
        g = _pgcd(list(f), h, p)
        if len(g) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def make_extension(p: int, N: int) -> "Field":
    """Return the interned GF(p^N) with the lexicographically smallest
    monic irreducible modulus of degree N."""
    if p == 2:
        raise EvenCharacteristic("p = 2 is excluded")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if N < 1:
        raise ValueError("extension degree must be >= 1")
    for tail in itertools.product(range(p), repeat=N):
        f = list(tail) + [1]
        if _is_irreducible(f, p):
            return Field(p, N, tuple(f))
    raise AssertionError("irreducible polynomial exists in every degree")


class Field:
    """GF(p^N) descriptor plus its arithmetic tables.

    Do not construct directly; use make_extension so that fields are
    interned and element encodings stay canonical.
    """

    __slots__ = (
        "p",
        "N",
        "modulus",
        "zero",
        "one",
        "gen",
        "_red",
        "_pack_bits",
        "_pack_mask",
        "_frob_pows",
        "_generator",
    )

    def __init__(self, p: int, N: int, modulus: tuple[int, ...]):
        self.p = p
        self.N = N
        self.modulus = modulus
        # reductions of t^(N+k), k = 0..N-2, already fully reduced
        red = []
        if N > 1:
            cur = [(-modulus[i]) % p for i in range(N)]
            red.append(tuple(cur))
            for _ in range(N - 2):
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    base = red[0]
                    cur = [(cur[i] + top * base[i]) % p for i in range(N)]
                red.append(tuple(cur))
        self._red = tuple(red)
        self._pack_bits = max(8, (N * (p - 1) * (p - 1)).bit_length() + 1)
        self._pack_mask = (1 << self._pack_bits) - 1
        self.zero = FieldElement(self, (0,) * N)
        self.one = FieldElement(self, (1,) + (0,) * (N - 1))
        self.gen = FieldElement(self, tuple(1 if i == 1 else 0 for i in range(N)))
        # powers of t^p: frobenius(a) = sum a_j (t^p)^j
        if N > 1:
            tp = self.gen ** p
            pows = [self.one]
            for _ in range(N - 1):
                pows.append(pows[-1] * tp)
            self._frob_pows = tuple(e.coeffs for e in pows)
        else:
            self._frob_pows = ((1,),)
        self._generator = None

    @property
    def order(self) -> int:
        return self.p ** self.N

    def element(self, coeffs) -> "FieldElement":
        if isinstance(coeffs, FieldElement):
            if coeffs.field is not self:
                raise ValueError("element belongs to a different field")
            return coeffs
        if isinstance(coeffs, int):
            return self.from_int(coeffs)
        coeffs = list(coeffs)
        if len(coeffs) > self.N:
            raise ValueError(f"expected at most {self.N} coefficients")
        coeffs += [0] * (self.N - len(coeffs))
        return FieldElement(self, tuple(c % self.p for c in coeffs))

    def from_int(self, c: int) -> "FieldElement":
        return FieldElement(self, (c % self.p,) + (0,) * (self.N - 1))

    def elements(self):
        """All field elements in the canonical (lexicographic) order."""
        for tup in itertools.product(range(self.p), repeat=self.N):
            yield FieldElement(self, tup)

    def descriptor(self) -> dict:
        return {"p": self.p, "N": self.N, "modulus": list(self.modulus)}

    def __repr__(self):
        return f"GF({self.p}^{self.N})"


class FieldElement:
    """Element of GF(p^N) in power-basis coordinates."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("mixed fields in arithmetic")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FieldElement(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FieldElement(
            self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        N = f.N
        if N == 1:
            return FieldElement(f, ((self.coeffs[0] * other.coeffs[0]) % f.p,))
        bits = f._pack_bits
        mask = f._pack_mask
        a = 0
        for c in reversed(self.coeffs):
            a = (a << bits) | c
        b = 0
        for c in reversed(other.coeffs):
            b = (b << bits) | c
        prod = a * b
        raw = []
        for _ in range(2 * N - 1):
            raw.append(prod & mask)
            prod >>= bits
        low = raw[:N]
        red = f._red
        for k in range(N - 1):
            d = raw[N + k]
            if d:
                row = red[k]
                for i in range(N):
                    low[i] += d * row[i]
        p = f.p
        return FieldElement(f, tuple(c % p for c in low))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        p = f.p
        if f.N == 1:
            return FieldElement(f, (pow(self.coeffs[0], p - 2, p),))
        # extended Euclid in GF(p)[t] against the modulus
        r0, r1 = list(f.modulus), _ptrim(list(self.coeffs))
        s0, s1 = [], [1]
        while r1:
            inv_lead = pow(r1[-1], p - 2, p)
            r1m = [(c * inv_lead) % p for c in r1]
            # quotient of r0 by monic r1m
            q = [0] * (len(r0) - len(r1m) + 1)
            rem = list(r0)
            for sh in range(len(q) - 1, -1, -1):
                c = rem[sh + len(r1m) - 1] % p
                if c:
                    q[sh] = c
                    for i in range(len(r1m)):
                        rem[sh + i] = (rem[sh + i] - c * r1m[i]) % p
            rem = _ptrim(rem)
            # undo the normalization: r0 = q*r1m + rem = (q*inv_lead)*r1 + rem
            qs = _pmul(q, [inv_lead], p)
            r0, r1 = r1, rem
            s0, s1 = s1, _ptrim(
                [
                    (a - b) % p
                    for a, b in itertools.zip_longest(s0, _pmul(qs, s1, p), fillvalue=0)
                ]
            )
        # r0 is a nonzero constant gcd
        c_inv = pow(r0[0], p - 2, p)
        out = [(c * c_inv) % p for c in s0]
        out += [0] * (f.N - len(out))
        return FieldElement(f, tuple(out))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int):
        f = self.field
        if e < 0:
            return self.inv() ** (-e)
        result = f.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self) -> "FieldElement":
        """x^p, computed linearly from precomputed powers of t^p."""
        f = self.field
        if f.N == 1:
            return self
        N = f.N
        acc = [0] * N
        pows = f._frob_pows
        for j, c in enumerate(self.coeffs):
            if c:
                row = pows[j]
                for i in range(N):
                    acc[i] += c * row[i]
        p = f.p
        return FieldElement(f, tuple(c % p for c in acc))

    def frobenius_power(self, k: int) -> "FieldElement":
        """x^(p^k); k may be any integer (reduced mod N)."""
        k %= self.field.N
        out = self
        for _ in range(k):
            out = out.frobenius()
        return out

    def in_prime_field(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return NotImplemented

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.N, self.coeffs))

    def __repr__(self):
        if self.field.N == 1:
            return f"{self.coeffs[0]}"
        return f"{list(self.coeffs)}@GF({self.field.p}^{self.field.N})"


def frobenius(x: FieldElement) -> FieldElement:
    """The Frobenius map x -> x^p."""
    return x.frobenius()


# ---------------------------------------------------------------------------
# multiplicative structure: generators, discrete logs, m-th roots


def multiplicative_generator(field: Field) -> FieldElement:
    """The canonically smallest generator of the multiplicative group."""
    if field._generator is not None:
        return field._generator
    q1 = field.order - 1
    primes = sorted(sympy.factorint(q1))
    for a in field.elements():
        if not a:
            continue
        if q1 > 1 and all(a ** (q1 // ell) != field.one for ell in primes):
            field._generator = a
            return a
        if q1 == 1:
            field._generator = a
            return a
    raise AssertionError("multiplicative group of a finite field is cyclic")


def discrete_log(target: FieldElement, base: FieldElement, order: int) -> int:
    """Baby-step giant-step: smallest k >= 0 with base^k = target."""
    field = target.field
    m = math.isqrt(order) + 1
    table = {}
    cur = field.one
    for j in range(m):
        table.setdefault(cur.coeffs, j)
        cur = cur * base
    giant = (base ** m).inv()
    cur = target
    for i in range(m + 1):
        j = table.get(cur.coeffs)
        if j is not None:
            return (i * m + j) % order
        cur = cur * giant
    raise ValueError("element not in the subgroup generated by base")


def element_order(x: FieldElement) -> int:
    """Multiplicative order of a nonzero element."""
    if not x:
        raise ZeroDivisionError("zero has no multiplicative order")
    q1 = x.field.order - 1
    order = q1
    for ell, k in sympy.factorint(q1).items():
        for _ in range(k):
            if x ** (order // ell) == x.field.one:
                order //= ell
            else:
                break
    return order


def mth_roots(b: FieldElement, m: int) -> list[FieldElement]:
    """All solutions of x^m = b, sorted in canonical element order.

    Solved by splitting x^m - b over the field (no discrete logarithms, so
    the cost does not grow with the field order beyond poly arithmetic).
    """
    field = b.field
    if not b:
        return [field.zero]
    f = [field.zero] * m + [field.one]
    f[0] = -b
    return all_rational_roots(f, field)


def roots_of_unity(field: Field, n: int) -> list[FieldElement]:
    """The n-th roots of unity, sorted canonically; requires n | p^N - 1."""
    q1 = field.order - 1
    if q1 % n:
        raise RootFieldTooSmall(f"mu_{n} not contained in GF({field.p}^{field.N})")
    g = multiplicative_generator(field)
    w = g ** (q1 // n)
    return sorted(w ** j for j in range(n))


# ---------------------------------------------------------------------------
# embeddings between extensions
#
# Polynomials over a Field (lists of FieldElement, constant first) appear
# only here, for the deterministic root-finding that pins the embedding.


def _ftrim(f):
    while f and not f[-1]:
        f.pop()
    return f


def _fdivmod(a, b):
    field = b[-1].field
    binv = b[-1].inv()
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    r = list(a)
    for sh in range(len(q) - 1, -1, -1):
        c = r[sh + len(b) - 1] * binv
        if c:
            q[sh] = c
            for i in range(len(b)):
                r[sh + i] = r[sh + i] - c * b[i]
    return q, _ftrim(r)


def _fgcd(a, b):
    a, b = _ftrim(list(a)), _ftrim(list(b))
    while b:
        _, r = _fdivmod(a, b)
        a, b = b, r
    if a:
        lead_inv = a[-1].inv()
        a = [c * lead_inv for c in a]
    return a


def _fmulmod(a, b, mod):
    field = mod[-1].field
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    _, r = _fdivmod(_ftrim(out), mod)
    return r


def _fpowmod(base, e, mod):
    field = mod[-1].field
    result = [field.one]
    base = list(base)
    _, base = _fdivmod(base, mod)
    while e:
        if e & 1:
            result = _fmulmod(result, base, mod)
        base = _fmulmod(base, base, mod)
        e >>= 1
    return result


def _split_completely(g, field: Field) -> list[FieldElement]:
    """Roots of a squarefree monic g that splits into linear factors.

    Deterministic equal-degree splitting: scan shifts c in canonical order
    and cut along gcd((x+c)^((q-1)/2) - 1, g).
    """
    half = (field.order - 1) // 2
    stack = [g]
    roots = []
    while stack:
        g = stack.pop()
        if len(g) == 2:
            roots.append(-g[0] / g[1])
            continue
        for c in field.elements():
            h = _fpowmod([c, field.one], half, g)
            h = list(h) if h else [field.zero]
            h[0] = h[0] - field.one
            d = _fgcd(g, _ftrim(h))
            if 1 < len(d) < len(g):
                q, r = _fdivmod(g, d)
                assert not r
                stack.append(d)
                stack.append(_ftrim(q))
                break
        else:
            raise AssertionError("split polynomial admits no splitting shift")
    return roots


def all_rational_roots(f, field: Field) -> list[FieldElement]:
    """All distinct roots of f in the field, sorted canonically.

    The rational part is cut out with gcd(x^q - x, f), then split
    completely; works for any nonzero polynomial over the field.
    """
    f = _ftrim(list(f))
    if not f:
        raise ValueError("zero polynomial")
    roots = []
    # strip powers of x
    k = 0
    while k < len(f) and not f[k]:
        k += 1
    if k:
        roots.append(field.zero)
        f = f[k:]
    if len(f) <= 1:
        return sorted(roots)
    lead_inv = f[-1].inv()
    f = [c * lead_inv for c in f]
    if len(f) == 2:
        roots.append(-f[0])
        return sorted(roots)
    # gcd(x^(q-1) - 1, f) collects the nonzero rational roots, squarefree
    h = _fpowmod([field.zero, field.one], field.order - 1, f)
    h = list(h) if h else [field.zero]
    h[0] = h[0] - field.one
    g = _fgcd(f, _ftrim(h))
    if len(g) > 1:
        roots.extend(_split_completely(g, field))
    return sorted(roots)


def _find_one_root(f, field: Field) -> FieldElement:
    """The canonically smallest root of f in the field (f must have one)."""
    roots = all_rational_roots(f, field)
    if not roots:
        raise AssertionError("polynomial has no rational root")
    return roots[0]


class FieldEmbedding:
    """Ring embedding GF(p^M) -> GF(p^N) for M | N, pinned by sending the
    power-basis generator to the canonically smallest root of the small
    modulus in the big field."""

    __slots__ = ("small", "big", "gen_image", "_pows")

    def __init__(self, small: Field, big: Field, gen_image: FieldElement):
        self.small = small
        self.big = big
        self.gen_image = gen_image
        pows = [big.one]
        for _ in range(small.N - 1):
            pows.append(pows[-1] * gen_image)
        self._pows = pows

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.field is self.big:
            return a
        if a.field is not self.small:
            raise ValueError("element not in the source field")
        out = self.big.zero
        for c, tp in zip(a.coeffs, self._pows):
            if c:
                out = out + tp * c
        return out


@functools.lru_cache(maxsize=None)
def embed_field(small: Field, big: Field) -> FieldEmbedding:
    """The canonical embedding GF(p^M) -> GF(p^N); requires M | N."""
    if small.p != big.p:
        raise ValueError("embeddings require equal characteristic")
    if big.N % small.N:
        raise ValueError("target degree must be a multiple of the source degree")
    if small is big:
        return FieldEmbedding(small, big, big.gen)
    f = [big.from_int(c) for c in small.modulus]
    root = _find_one_root(f, big)  # canonically smallest root
    return FieldEmbedding(small, big, root)


def extension_multiple(field: Field, factor: int) -> Field:
    """GF(p^(N*factor)) for the same p."""
    return make_extension(field.p, field.N * factor)
