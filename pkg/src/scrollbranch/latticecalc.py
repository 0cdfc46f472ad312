"""Formal intersection ledgers.

Three small rings of declared intersection data: the Picard lattice of the
surface S, the triple products on the first blowup Z1, and the cohomology
ring of the P^2-bundle Ytilde.  Every number here is bookkeeping against the
tables in ledgers.json; nothing is recomputed from geometry.  The Euler
number chain for the branch divisor lives here too.
"""

import json
from fractions import Fraction

try:
    from importlib.resources import files as _files
except ImportError:  # pragma: no cover
    _files = None

_LEDGER_CACHE = None


def load_ledgers(path=None):
    """the declarative ledger tables (package data by default)"""
    global _LEDGER_CACHE
    if path is not None:
        with open(path) as fh:
            return json.load(fh)
    if _LEDGER_CACHE is None:
        data = _files('scrollbranch').joinpath('ledgers.json').read_text()
        _LEDGER_CACHE = json.loads(data)
    return _LEDGER_CACHE


# ---------------------------------------------------------------------------
# Picard lattice of S
# ---------------------------------------------------------------------------

class PicS(object):
    """class in the Picard lattice of S, as a vector over the fixed basis
    h1, h2, e1..e4, eb1..eb4."""

    def __init__(self, vec, ledger=None):
        led = ledger or load_ledgers()
        self.basis = tuple(led['pic_s']['basis'])
        v = [Fraction(x) for x in vec]
        if len(v) != len(self.basis):
            raise ValueError("PicS vector needs %d entries" % len(self.basis))
        self.vec = tuple(v)
        self._ledger = led

    @classmethod
    def named(cls, name, ledger=None):
        led = ledger or load_ledgers()
        if name in led['pic_s']['classes']:
            return cls(led['pic_s']['classes'][name], led)
        basis = led['pic_s']['basis']
        if name in basis:
            v = [0] * len(basis)
            v[basis.index(name)] = 1
            return cls(v, led)
        raise KeyError("unknown PicS class %r" % name)

    def __add__(self, other):
        return PicS([a + b for a, b in zip(self.vec, other.vec)],
                    self._ledger)

    def __sub__(self, other):
        return PicS([a - b for a, b in zip(self.vec, other.vec)],
                    self._ledger)

    def __mul__(self, c):
        return PicS([a * c for a in self.vec], self._ledger)

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1)

    def __eq__(self, other):
        return isinstance(other, PicS) and self.vec == other.vec

    def __hash__(self):
        return hash(self.vec)

    def __repr__(self):
        bits = ["%s%s" % ('' if c == 1 else str(c), b)
                for c, b in zip(self.vec, self.basis) if c]
        return " + ".join(bits) if bits else "0"


def pair_S(a, b, ledger=None):
    """intersection pairing on Pic(S)"""
    led = ledger or load_ledgers()
    gram = led['pic_s']['gram']
    out = Fraction(0)
    for i, x in enumerate(a.vec):
        if x:
            row = gram[i]
            for j, y in enumerate(b.vec):
                if y:
                    out += x * Fraction(row[j]) * y
    if out.denominator == 1:
        return int(out)
    return out


def decomposition_check(i, ledger=None):
    """split K^-1 + (e_i - eb_i), i in 1..3, into the two declared pieces
    and pair the result against C1bar; the pairing must be -2."""
    if i not in (1, 2, 3):
        raise ValueError("i must be 1, 2 or 3")
    led = ledger or load_ledgers()
    K = PicS.named('K', led)
    ei = PicS.named('e%d' % i, led)
    ebi = PicS.named('eb%d' % i, led)
    total = K + ei - ebi
    piece1 = PicS.named('C1bar', led)
    # h1 + 2h2 - eb_i - e4 - eb4 - sum of e_j for j <= 3, j != i
    piece2 = PicS.named('h1', led) + 2 * PicS.named('h2', led) \
        - ebi - PicS.named('e4', led) - PicS.named('eb4', led)
    for j in (1, 2, 3):
        if j != i:
            piece2 = piece2 - PicS.named('e%d' % j, led)
    holds = (piece1 + piece2) == total
    pairing = pair_S(piece1, total, led)
    return {
        'i': i,
        'total': total,
        'pieces': (piece1, piece2),
        'identity_holds': holds,
        'c1bar_pairing': pairing,
        'pairing_is_minus_two': pairing == -2,
    }


# ---------------------------------------------------------------------------
# half-classes and the irreducibility obstruction
# ---------------------------------------------------------------------------

class AlphaClass(object):
    """half-integer class in the span of F and the four alpha generators"""

    def __init__(self, vec):
        v = [Fraction(x) for x in vec]
        if len(v) != 5:
            raise ValueError("AlphaClass vector needs 5 entries")
        self.vec = tuple(v)

    def __add__(self, other):
        return AlphaClass([a + b for a, b in zip(self.vec, other.vec)])

    def __mul__(self, c):
        return AlphaClass([a * c for a in self.vec])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, AlphaClass) and self.vec == other.vec

    def __hash__(self):
        return hash(self.vec)

    def __repr__(self):
        return "AlphaClass%s" % (list(self.vec),)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.vec)


def half_classes(ledger=None):
    """the four degree-one Chern half-classes, as AlphaClass vectors"""
    led = ledger or load_ledgers()
    return [AlphaClass([Fraction(x, 2) for x in row])
            for row in led['alpha']['half_classes_doubled']]


def cc1_obstruction(i, ledger=None):
    """enumerate the 10 unordered pair-sums of the four half-classes and
    confirm none of them equals F + alpha_i (i in 1..3); as a side product,
    report which sums hit F + alpha_4 and F - alpha_4."""
    if i not in (1, 2, 3):
        raise ValueError("i must be 1, 2 or 3")
    led = ledger or load_ledgers()
    hc = half_classes(led)
    target = AlphaClass([1, 0, 0, 0, 0])
    tv = list(target.vec)
    tv[i] = Fraction(1)
    target = AlphaClass(tv)
    plus4 = AlphaClass([1, 0, 0, 0, 1])
    minus4 = AlphaClass([1, 0, 0, 0, -1])
    sums = []
    hits = 0
    plus4_hits = []
    minus4_hits = []
    for a in range(4):
        for b in range(a, 4):
            s = hc[a] + hc[b]
            sums.append(((a, b), s))
            if s == target:
                hits += 1
            if s == plus4:
                plus4_hits.append((a, b))
            if s == minus4:
                minus4_hits.append((a, b))
    assert len(sums) == 10
    return {
        'i': i,
        'pair_count': len(sums),
        'all_differ': hits == 0,
        'all_sums_integral': all(s.is_integral() for _p, s in sums),
        'plus_alpha4_decompositions': plus4_hits,
        'minus_alpha4_decompositions': minus4_hits,
    }


# ---------------------------------------------------------------------------
# triple products on Z1
# ---------------------------------------------------------------------------

class Z1Class(object):
    """formal combination of F (the pulled-back pencil class) and the two
    exceptional divisors E, Eb of the first blowup"""

    def __init__(self, vec):
        v = [Fraction(x) for x in vec]
        if len(v) != 3:
            raise ValueError("Z1Class vector needs 3 entries (F, E, Eb)")
        self.vec = tuple(v)

    @classmethod
    def named(cls, name):
        order = ('F', 'E', 'Eb')
        v = [0, 0, 0]
        v[order.index(name)] = 1
        return cls(v)

    def __add__(self, other):
        return Z1Class([a + b for a, b in zip(self.vec, other.vec)])

    def __sub__(self, other):
        return Z1Class([a - b for a, b in zip(self.vec, other.vec)])

    def __mul__(self, c):
        return Z1Class([a * c for a in self.vec])

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1)

    def __repr__(self):
        return "Z1Class%s" % (list(self.vec),)


def _surface_pair(ab, cd):
    # pairing on a quadric surface: (a,b).(c,d) = ad + bc
    return ab[0] * cd[1] + ab[1] * cd[0]


def _z1_tensor(ledger=None):
    """symmetric triple-product table on (F, E, Eb), with the E^3 entries
    derived from the declared restriction data rather than hard-coded"""
    led = ledger or load_ledgers()
    z1 = led['z1']
    rE = z1['restriction_to_E']
    rEb = z1['restriction_to_Eb']
    tab = {}

    def put(mono, val):
        tab[tuple(sorted(mono))] = Fraction(val)

    put(('F', 'F', 'F'), z1['F_cubed'])
    # anything containing both disjoint exceptional divisors is zero
    for third in ('F', 'E', 'Eb'):
        put(('E', 'Eb', third), 0)
    # products inside one exceptional divisor, via the surface pairing
    put(('F', 'F', 'E'), _surface_pair(rE['F'], rE['F']))
    put(('F', 'E', 'E'), _surface_pair(rE['F'], rE['E']))
    put(('E', 'E', 'E'), _surface_pair(rE['E'], rE['E']))
    put(('F', 'F', 'Eb'), _surface_pair(rEb['F'], rEb['F']))
    put(('F', 'Eb', 'Eb'), _surface_pair(rEb['F'], rEb['Eb']))
    put(('Eb', 'Eb', 'Eb'), _surface_pair(rEb['Eb'], rEb['Eb']))
    return tab


def triple_Z1(a, b=None, c=None, ledger=None):
    """trilinear evaluation on Z1; one argument means its cube."""
    if b is None:
        b = a
    if c is None:
        c = b
    tab = _z1_tensor(ledger)
    names = ('F', 'E', 'Eb')
    out = Fraction(0)
    for i, x in enumerate(a.vec):
        if not x:
            continue
        for j, y in enumerate(b.vec):
            if not y:
                continue
            for k, z in enumerate(c.vec):
                if z:
                    key = tuple(sorted((names[i], names[j], names[k])))
                    out += x * y * z * tab[key]
    if out.denominator == 1:
        return int(out)
    return out


# ---------------------------------------------------------------------------
# cohomology ring of Ytilde
# ---------------------------------------------------------------------------

class YtClass(object):
    """degree-2 class on Ytilde: a*Sigma + b*fiber"""

    def __init__(self, vec):
        v = [Fraction(x) for x in vec]
        if len(v) != 2:
            raise ValueError("YtClass vector needs 2 entries (S, f)")
        self.vec = tuple(v)

    @classmethod
    def named(cls, name, ledger=None):
        led = ledger or load_ledgers()
        if name == 'S' or name == 'Sigma':
            return cls([1, 0])
        if name == 'f':
            return cls([0, 1])
        if name == 'K':
            return cls(led['yt']['K'])
        if name == 'O1':
            return cls(led['yt']['O1'])
        if name == 'Dt':
            m = led['yt']['Dt_multiple']
            return cls([m * x for x in led['yt']['O1']])
        raise KeyError("unknown Ytilde class %r" % name)

    def __add__(self, other):
        return YtClass([a + b for a, b in zip(self.vec, other.vec)])

    def __sub__(self, other):
        return YtClass([a - b for a, b in zip(self.vec, other.vec)])

    def __mul__(self, c):
        return YtClass([a * c for a in self.vec])

    __rmul__ = __mul__

    def __repr__(self):
        return "YtClass%s" % (list(self.vec),)


class YtClass4(object):
    """degree-4 class on Ytilde: a*zeta + b*eta"""

    def __init__(self, vec):
        v = [Fraction(x) for x in vec]
        if len(v) != 2:
            raise ValueError("YtClass4 vector needs 2 entries (zeta, eta)")
        self.vec = tuple(v)

    def __repr__(self):
        return "YtClass4%s" % (list(self.vec),)


def yt_c2(ledger=None):
    """second Chern class of Ytilde in the (zeta, eta) basis, solved from
    the two declared restrictions instead of hard-coding (8, 3)"""
    led = ledger or load_ledgers()
    yt = led['yt']
    p = yt['pair24']
    # a*(zeta.S) + b*(eta.S) = c2|_S ; a*(zeta.f) + b*(eta.f) = c2|_f
    zS, eS = Fraction(p['zeta']['S']), Fraction(p['eta']['S'])
    zf, ef = Fraction(p['zeta']['f']), Fraction(p['eta']['f'])
    cS = Fraction(yt['c2_restrictions']['S'])
    cf = Fraction(yt['c2_restrictions']['f'])
    det = zS * ef - eS * zf
    if det == 0:
        raise ValueError("degenerate pairing table for c2")
    a = (cS * ef - eS * cf) / det
    b = (zS * cf - cS * zf) / det
    return YtClass4([a, b])


def ring_Yt(a, b=None, c=None, ledger=None):
    """products on Ytilde: three degree-2 classes, or a degree-4 class
    paired with a degree-2 class."""
    led = ledger or load_ledgers()
    yt = led['yt']
    if isinstance(a, YtClass4):
        if c is not None or b is None:
            raise ValueError("a degree-4 class pairs with one degree-2 class")
        p = yt['pair24']
        out = a.vec[0] * (Fraction(p['zeta']['S']) * b.vec[0]
                          + Fraction(p['zeta']['f']) * b.vec[1]) \
            + a.vec[1] * (Fraction(p['eta']['S']) * b.vec[0]
                          + Fraction(p['eta']['f']) * b.vec[1])
        return int(out) if out.denominator == 1 else out
    if b is None:
        b = a
    if c is None:
        c = b
    t = yt['triple']
    tab = {
        (0, 0, 0): Fraction(t['SSS']),
        (0, 0, 1): Fraction(t['SSf']),
        (0, 1, 1): Fraction(t['Sff']),
        (1, 1, 1): Fraction(t['fff']),
    }
    out = Fraction(0)
    for i, x in enumerate(a.vec):
        for j, y in enumerate(b.vec):
            for k, z in enumerate(c.vec):
                if x and y and z:
                    out += x * y * z * tab[tuple(sorted((i, j, k)))]
    return int(out) if out.denominator == 1 else out


# ---------------------------------------------------------------------------
# the Euler number chain
# ---------------------------------------------------------------------------

def euler_ledger(extras, ledger=None):
    """run the whole Euler-number bookkeeping.

    extras: list of (milnor number, euler number of the exceptional curve)
    pairs for the singular points beyond the 26 listed ones.  Returns every
    intermediate value plus whether the two closure identities hold.
    """
    led = ledger or load_ledgers()
    eu = led['euler']
    extras = [(int(m), int(e)) for m, e in extras]
    if any(m < 1 for m, _e in extras):
        raise ValueError("Milnor numbers are positive")

    e_Z = eu['e_Z']
    e_Z1 = e_Z + eu['blowup_gain']
    e_Z3 = e_Z1 + eu['flop_gain']
    e_Z4 = e_Z3 - eu['contraction_loss']

    e_Y = eu['e_Yt'] - eu['ridge_collapse_loss']

    # smooth model of the quartic cut, by the Chern class computation
    led_here = led
    Dt = YtClass.named('Dt', led_here)
    KD = YtClass.named('K', led_here) + Dt
    chern_term = ring_Yt(yt_c2(led_here), Dt, ledger=led_here)
    adjunction_term = ring_Yt(KD, Dt, Dt, ledger=led_here)
    e_Dt = chern_term + adjunction_term
    e_D = e_Dt - eu['Dt_contracted_curves']

    mu_sum = sum(m for m, _e in extras)
    e_B = e_D - eu['listed_points'] - mu_sum

    e_Z5 = 2 * e_Y - e_B
    e_Z4_from_cover = e_Z5 + eu['node_count'] + sum(e - 1 for _m, e in extras)

    constraint_sum = sum(e + m - 1 for m, e in extras)
    return {
        'e_Z': e_Z, 'e_Z1': e_Z1, 'e_Z3': e_Z3, 'e_Z4': e_Z4,
        'e_Y': e_Y, 'e_Dt': e_Dt, 'e_D': e_D, 'e_B': e_B,
        'e_Z5': e_Z5, 'e_Z4_from_cover': e_Z4_from_cover,
        'chern_term': chern_term, 'adjunction_term': adjunction_term,
        'constraint_sum': constraint_sum,
        'constraint_target': 12,
        'constraint_ok': constraint_sum == 12,
        'chain_matches': e_Z4_from_cover == e_Z4,
        'closed': constraint_sum == 12 and e_Z4_from_cover == e_Z4,
        'extras': extras,
    }
