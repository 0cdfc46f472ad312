"""Command-line front door.

Subcommands run the library pipelines on a spec file (or a seeded random
spec) and emit either a deterministic JSON document or a human-readable
summary.  Exit codes: 0 success, 1 degenerate spec, 2 parse error,
3 internal invariant violation.
"""

import argparse
import json
import sys
from fractions import Fraction

from .exactalg import FieldElem, MPoly
from . import latticecalc
from .branchfamily import (BranchSpec, DegenerateSpecError, NonIsolatedError,
                           assemble, double_curves, curve_intersections,
                           intersection_summary, census,
                           appendix_blowup_check)
from .quadricfit import (fit_span, stepwise_construct, quad_vector,
                         same_mod_scroll, drop_one_curve_dims)
from .modulicount import equivalence_generators, parameter_report

SCHEMA_VERSION = 1


class SpecParseError(Exception):
    """malformed spec file or expression"""


class LatticeExprError(SpecParseError):
    """malformed or unreducible lattice expression"""


# ---------------------------------------------------------------------------
# spec files: a flat TOML-compatible subset
# ---------------------------------------------------------------------------

def _parse_scalar(tok, lineno, key):
    tok = tok.strip()
    if not tok:
        raise SpecParseError("line %d: empty value for %r" % (lineno, key))
    if tok.startswith('"') and tok.endswith('"') and len(tok) >= 2:
        return tok[1:-1]
    neg = tok.lstrip('+-')
    if neg.isdigit():
        return int(tok)
    try:
        # exact decimal: Fraction("0.5") == 1/2 with no float step
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise SpecParseError("line %d: bad number %r in %r"
                             % (lineno, tok, key))


def _split_array(body, lineno, key):
    out = []
    depth = 0
    cur = ''
    for ch in body:
        if ch == ',' and depth == 0:
            out.append(cur)
            cur = ''
        else:
            if ch == '[':
                depth += 1
            elif ch == ']':
                depth -= 1
            cur += ch
    if cur.strip():
        out.append(cur)
    return [_parse_scalar(t, lineno, key) for t in out]


def parse_spec_text(text):
    """parse a flat key = value spec document into (BranchSpec, options)"""
    data = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        # strip trailing comments outside strings
        in_str = False
        cut = len(line)
        for i, ch in enumerate(line):
            if ch == '"':
                in_str = not in_str
            elif ch == '#' and not in_str:
                cut = i
                break
        line = line[:cut].strip()
        if '=' not in line:
            raise SpecParseError("line %d: expected key = value" % lineno)
        key, _, val = line.partition('=')
        key = key.strip()
        val = val.strip()
        if not key:
            raise SpecParseError("line %d: missing key" % lineno)
        if key in data:
            raise SpecParseError("line %d: duplicate key %r" % (lineno, key))
        if val.startswith('[') and val.endswith(']'):
            data[key] = _split_array(val[1:-1], lineno, key)
        else:
            data[key] = _parse_scalar(val, lineno, key)

    known = {'f', 'q', 'seed', 'jet_order', 'degree_cap'}
    for key in data:
        if key not in known:
            raise SpecParseError("unknown key %r" % key)

    options = {}
    for key in ('jet_order', 'degree_cap', 'seed'):
        if key in data:
            v = data[key]
            if not isinstance(v, int):
                raise SpecParseError("%r must be an integer" % key)
            options[key] = v

    if 'f' in data or 'q' in data:
        if 'f' not in data or 'q' not in data:
            raise SpecParseError("both f and q are required")
        f = data['f']
        q = data['q']
        if not isinstance(f, list) or len(f) != 5:
            raise SpecParseError("f needs exactly 5 entries")
        if not isinstance(q, list) or len(q) != 15:
            raise SpecParseError("q needs exactly 15 entries")
        for name, arr in (('f', f), ('q', q)):
            for x in arr:
                if not isinstance(x, (int, Fraction)):
                    raise SpecParseError("%s entries must be numbers" % name)
        spec = BranchSpec(f, q,
                          jet_order=options.get('jet_order', 8),
                          degree_cap=options.get('degree_cap', 4))
        return spec, options
    if 'seed' in data:
        spec = BranchSpec.random(data['seed'])
        if 'jet_order' in options:
            spec.jet_order = options['jet_order']
        if 'degree_cap' in options:
            spec.degree_cap = options['degree_cap']
        return spec, options
    raise SpecParseError("spec needs either f and q or a seed")


def parse_spec(path):
    try:
        with open(path, 'r') as fh:
            text = fh.read()
    except OSError as err:
        raise SpecParseError("cannot read %s: %s" % (path, err))
    return parse_spec_text(text)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _jsonify(obj):
    """exact, deterministic JSON tree: rationals as ints or 'p/q' strings,
    field elements as coefficient vectors plus minimal polynomial"""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return int(obj)
        return "%d/%d" % (obj.numerator, obj.denominator)
    if isinstance(obj, str):
        return obj
    if isinstance(obj, FieldElem):
        mp = obj.field.minpoly
        return {'vec': [_jsonify(Fraction(x)) for x in obj.vec],
                'minpoly': None if mp is None
                else [_jsonify(Fraction(x)) for x in mp]}
    if isinstance(obj, MPoly):
        terms = sorted(obj.terms.items())
        return {'vars': list(obj.vars),
                'terms': [[list(e), _jsonify(c)] for e, c in terms]}
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(x) for x in obj]
    if hasattr(obj, 'vec'):  # lattice classes
        return [_jsonify(Fraction(x)) for x in obj.vec]
    raise TypeError("cannot serialize %r" % type(obj).__name__)


def _emit(doc, fmt, out=None):
    out = out or sys.stdout
    doc = dict(doc)
    doc['schema'] = SCHEMA_VERSION
    if fmt == 'json':
        out.write(json.dumps(_jsonify(doc), sort_keys=True, indent=2))
        out.write('\n')
    else:
        _emit_text(doc, out)


def _emit_text(doc, out, indent=0):
    pad = '  ' * indent
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, dict):
            out.write('%s%s:\n' % (pad, key))
            _emit_text(val, out, indent + 1)
        else:
            out.write('%s%s: %s\n' % (pad, key, _text_value(val)))


def _text_value(val):
    j = _jsonify(val)
    if isinstance(j, (list, dict)):
        return json.dumps(j, sort_keys=True)
    return str(j)


# ---------------------------------------------------------------------------
# lattice expressions
# ---------------------------------------------------------------------------

def _tokenize_expr(expr):
    toks = []
    i = 0
    while i < len(expr):
        ch = expr[i]
        if ch.isspace():
            i += 1
        elif ch in '+-*^()':
            toks.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(expr) and expr[j].isdigit():
                j += 1
            toks.append(int(expr[i:j]))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(expr) and (expr[j].isalnum() or expr[j] == '_'):
                j += 1
            toks.append(expr[i:j])
            i = j
        else:
            raise LatticeExprError("bad character %r in expression" % ch)
    return toks


class _RingValue(object):
    """scalar, or a formal sum of products of ring classes"""

    def __init__(self, scalar=None, monos=None):
        self.scalar = scalar          # Fraction or None
        self.monos = monos or []      # [(coeff, (class, ...)), ...]

    @classmethod
    def const(cls, c):
        return cls(scalar=Fraction(c))

    @classmethod
    def cls1(cls, klass):
        return cls(monos=[(Fraction(1), (klass,))])


class _Ring(object):
    def __init__(self, name):
        self.name = name
        led = latticecalc.load_ledgers()
        self.led = led
        if name == 'picS':
            self.top = 2
            names = list(led['pic_s']['classes']) + led['pic_s']['basis']
            self.atoms = {n: latticecalc.PicS.named(n) for n in names}
        elif name == 'z1':
            self.top = 3
            self.atoms = {n: latticecalc.Z1Class.named(n)
                          for n in ('F', 'E', 'Eb')}
        elif name == 'ytilde':
            self.top = 3
            self.atoms = {n: latticecalc.YtClass.named(n)
                          for n in ('S', 'Sigma', 'f', 'K', 'O1', 'Dt')}
            self.atoms['c2'] = latticecalc.yt_c2()
        else:
            raise LatticeExprError("unknown ring %r" % name)

    def weight(self, klass):
        if isinstance(klass, latticecalc.YtClass4):
            return 2
        return 1

    def contract(self, classes):
        """top-degree product of ring classes -> rational"""
        if self.name == 'picS':
            a, b = classes
            return Fraction(latticecalc.pair_S(a, b))
        if self.name == 'z1':
            a, b, c = classes
            return Fraction(latticecalc.triple_Z1(a, b, c))
        deg4 = [k for k in classes if isinstance(k, latticecalc.YtClass4)]
        deg2 = [k for k in classes
                if not isinstance(k, latticecalc.YtClass4)]
        if deg4:
            return Fraction(latticecalc.ring_Yt(deg4[0], deg2[0]))
        a, b, c = classes
        return Fraction(latticecalc.ring_Yt(a, b, c))

    def add(self, x, y, sign=1):
        if x.scalar is not None or y.scalar is not None:
            if x.monos or y.monos or x.scalar is None or y.scalar is None:
                raise LatticeExprError("cannot add a scalar to a class")
            return _RingValue.const(x.scalar + sign * y.scalar)
        return _RingValue(monos=x.monos + [(sign * c, m) for c, m in y.monos])

    def mul(self, x, y):
        if x.scalar is not None and y.scalar is not None:
            return _RingValue.const(x.scalar * y.scalar)
        if x.scalar is not None:
            return _RingValue(monos=[(x.scalar * c, m) for c, m in y.monos])
        if y.scalar is not None:
            return _RingValue(monos=[(y.scalar * c, m) for c, m in x.monos])
        monos = []
        for cx, mx in x.monos:
            for cy, my in y.monos:
                mono = mx + my
                deg = sum(self.weight(k) for k in mono)
                if deg > self.top:
                    raise LatticeExprError(
                        "product exceeds the ring's top degree")
                monos.append((cx * cy, mono))
        # contract anything that reached top degree
        total = Fraction(0)
        contracted = False
        rest = []
        for c, m in monos:
            if sum(self.weight(k) for k in m) == self.top:
                total += c * self.contract(m)
                contracted = True
            else:
                rest.append((c, m))
        if rest and contracted:
            raise LatticeExprError("mixed-degree sum is not reducible")
        if rest:
            return _RingValue(monos=rest)
        return _RingValue.const(total)

    def finish(self, v):
        if v.scalar is not None:
            return v.scalar
        # degree-1 results: sum the class vectors
        deg1 = all(len(m) == 1 and self.weight(m[0]) == 1
                   for _c, m in v.monos)
        if deg1 and v.monos:
            acc = None
            for c, (k,) in v.monos:
                term = k * c
                acc = term if acc is None else acc + term
            return acc
        raise LatticeExprError("expression does not reduce to a scalar "
                               "or a single class")


def evaluate_lattice(expr, ring_name):
    """evaluate a lattice expression in one of the named rings"""
    ring = _Ring(ring_name)
    toks = _tokenize_expr(expr)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else None

    def take():
        t = peek()
        pos[0] += 1
        return t

    def parse_expr():
        if peek() == '-':
            take()
            v = parse_term()
            v = ring.mul(_RingValue.const(-1), v)
        else:
            v = parse_term()
        while peek() in ('+', '-'):
            op = take()
            rhs = parse_term()
            v = ring.add(v, rhs, 1 if op == '+' else -1)
        return v

    def parse_term():
        v = parse_factor()
        while True:
            nxt = peek()
            if nxt == '*':
                take()
                v = ring.mul(v, parse_factor())
            elif isinstance(nxt, int) or (isinstance(nxt, str)
                                          and (nxt == '('
                                               or nxt[0].isalpha())):
                # juxtaposition: 2K, K(...) are not supported; require *
                raise LatticeExprError("missing operator before %r" % nxt)
            else:
                return v

    def parse_factor():
        v = parse_atom()
        if peek() == '^':
            take()
            n = take()
            if not isinstance(n, int) or n < 1:
                raise LatticeExprError("exponent must be a positive integer")
            out = v
            for _ in range(n - 1):
                out = ring.mul(out, v)
            return out
        return v

    def parse_atom():
        t = take()
        if t == '(':
            v = parse_expr()
            if take() != ')':
                raise LatticeExprError("unbalanced parentheses")
            return v
        if t == '-':
            return ring.mul(_RingValue.const(-1), parse_atom())
        if isinstance(t, int):
            return _RingValue.const(t)
        if isinstance(t, str) and t in ring.atoms:
            return _RingValue.cls1(ring.atoms[t])
        raise LatticeExprError("unknown symbol %r" % (t,))

    v = parse_expr()
    if pos[0] != len(toks):
        raise LatticeExprError("trailing tokens after expression")
    return ring.finish(v)


def parse_extras(text):
    """'6x(1,2)' or '2x(3,1), 1x(10,3)' -> list of (mu, e) pairs"""
    out = []
    if not text or not text.strip():
        return out
    items = []
    depth = 0
    cur = ''
    for ch in text:
        if ch == ',' and depth == 0:
            items.append(cur)
            cur = ''
        else:
            if ch == '(':
                depth += 1
            elif ch == ')':
                depth -= 1
            cur += ch
    if cur.strip():
        items.append(cur)
    for item in items:
        item = item.strip()
        if not item:
            continue
        if 'x' in item:
            count_s, _, rest = item.partition('x')
            count = int(count_s.strip())
        else:
            count, rest = 1, item
        rest = rest.strip()
        if not (rest.startswith('(') and rest.endswith(')')):
            raise SpecParseError("bad extras entry %r" % item)
        parts = rest[1:-1].split(',')
        if len(parts) != 2:
            raise SpecParseError("extras entries are (mu, e) pairs")
        mu, e = int(parts[0]), int(parts[1])
        out.extend([(mu, e)] * count)
    return out


# ---------------------------------------------------------------------------
# report builders
# ---------------------------------------------------------------------------

def _spec_doc(spec):
    return {'f': [Fraction(c) for c in spec.f_coeffs],
            'q': [Fraction(c) for c in spec.q_coeffs],
            'jet_order': spec.jet_order,
            'degree_cap': spec.degree_cap}


def report_curves(spec):
    curves = double_curves(spec)
    return {'spec': _spec_doc(spec),
            'curves': [{'index': c.index, 'kind': c.kind,
                        'degree': 2 if c.kind == 'conic' else 4,
                        'hyperplane': c.hyperplane}
                       for c in curves]}


def _point_doc(p):
    root = getattr(p, 'root', None)
    return {
        'pair': list(p.pair),
        'coords': list(p.coords),
        'multiplicity': p.mult,
        'size': p.size,
        'field_degree': p.field.degree,
        'certificate': [Fraction(c) for c in p.certificate()],
        'conjugate_pairs': root.conj_pairs if root is not None else None,
    }


def report_points(spec):
    groups = curve_intersections(spec)
    summary = intersection_summary(groups)
    out = {}
    for pair in sorted(groups):
        out['C%d_C%d' % pair] = [_point_doc(p) for p in groups[pair]]
    return {'spec': _spec_doc(spec), 'summary': summary, 'groups': out}


def report_sing(spec, extras=()):
    c = census(spec, extras=extras)
    pts = []
    for p in c['points']:
        pts.append({
            'coords': list(p.coords),
            'size': p.size,
            'chart': p.chart,
            'locus': p.locus,
            'mu': p.mu,
            'corank': p.corank,
            'classification': p.classification,
            'certificate': [Fraction(x) for x in p.certificate()],
        })
    pts.sort(key=lambda d: (d['locus'], str(d['certificate'])))
    residuals = [{'var': r.var, 'coeffs': [Fraction(c) for c in r.coeffs],
                  'context': r.context}
                 for r in c['residual_certificates']]
    return {'spec': _spec_doc(spec),
            'counts': c['counts'],
            'ridge_all_A3': c['ridge_all_A3'],
            'points': pts,
            'residual_certificates': residuals,
            'ledger': c['ledger'],
            'status': c['status']}


def report_ledger(extras):
    return {'extras': [list(x) for x in extras],
            'ledger': latticecalc.euler_ledger(list(extras))}


def report_quadric(spec):
    fit = fit_span(spec)
    groups = curve_intersections(spec)
    sw = stepwise_construct(spec, groups=groups)
    qvec = quad_vector(spec.q_poly())
    doc = {
        'spec': _spec_doc(spec),
        'fit': {
            'dimension': fit['dimension'],
            'non_generic': fit['non_generic'],
            'contains_Q': fit['contains_Q'],
            'contains_scroll': fit['contains_scroll'],
            'condition_ranks': {'C%d' % i: c['rank']
                                for i, c in fit['conditions'].items()},
        },
        'drop_one_curve_dims': {'C%d' % i: d
                                for i, d in drop_one_curve_dims(spec)
                                .items()},
        'stepwise': {'non_generic': sw['non_generic']},
    }
    if not sw['non_generic']:
        doc['stepwise'].update({
            'vector': sw['vector'],
            'contains_all_curves': sw['contains_all_curves'],
            'matches_Q_mod_scroll': same_mod_scroll(qvec, sw['vector']),
        })
    return doc


def report_moduli(spec):
    gens = equivalence_generators(spec)
    rep = parameter_report(spec)
    rep['generators'] = {name: vec for name, vec in gens}
    return {'spec': _spec_doc(spec), 'moduli': rep}


def report_appendix():
    rep = appendix_blowup_check()
    return {'appendix': rep}


def report_lattice(expr, ring_name):
    val = evaluate_lattice(expr, ring_name)
    return {'ring': ring_name, 'expression': expr,
            'value': val if isinstance(val, Fraction) else val}


def report_all(spec, extras):
    return {
        'spec': _spec_doc(spec),
        'curves': report_curves(spec)['curves'],
        'points': {k: v for k, v in report_points(spec).items()
                   if k != 'spec'},
        'sing': {k: v for k, v in report_sing(spec, extras).items()
                 if k != 'spec'},
        'quadric': {k: v for k, v in report_quadric(spec).items()
                    if k != 'spec'},
        'moduli': report_moduli(spec)['moduli'],
        'ledger': latticecalc.euler_ledger(list(extras)),
        'appendix': appendix_blowup_check(),
    }


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

SPEC_COMMANDS = ('curves', 'points', 'sing', 'quadric', 'moduli', 'report')


def build_parser():
    ap = argparse.ArgumentParser(
        prog='scrollbranch',
        description='branch-divisor geometry on the quadric scroll')
    sub = ap.add_subparsers(dest='command', required=True)

    def add(name, needs_spec=False, help=None):
        p = sub.add_parser(name, help=help)
        p.add_argument('--format', choices=('json', 'text'),
                       default='json')
        if needs_spec or name in ('ledger',):
            p.add_argument('--extras', default='',
                           help='synthetic points, e.g. "6x(1,2)"')
        if needs_spec:
            p.add_argument('specfile', nargs='?',
                           help='spec file (flat key = value)')
            p.add_argument('--seed', type=int, default=None,
                           help='seeded random spec instead of a file')
            p.add_argument('--jet-order', type=int, default=None)
        return p

    for name in SPEC_COMMANDS:
        add(name, needs_spec=True)
    add('ledger')
    add('appendix')
    p = add('lattice')
    p.add_argument('expression')
    p.add_argument('--ring', choices=('picS', 'z1', 'ytilde'),
                   default='picS')
    return ap


def _load_spec(args):
    if args.specfile is not None and args.seed is not None:
        raise SpecParseError("give either a spec file or --seed, not both")
    if args.specfile is not None:
        spec, _opts = parse_spec(args.specfile)
    elif args.seed is not None:
        spec = BranchSpec.random(args.seed)
    else:
        raise SpecParseError("a spec file or --seed is required")
    if args.jet_order is not None:
        spec.jet_order = args.jet_order
    return spec


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        extras = parse_extras(getattr(args, 'extras', ''))
        if args.command in SPEC_COMMANDS:
            spec = _load_spec(args)
        if args.command == 'curves':
            doc = report_curves(spec)
        elif args.command == 'points':
            doc = report_points(spec)
        elif args.command == 'sing':
            doc = report_sing(spec, extras)
        elif args.command == 'quadric':
            doc = report_quadric(spec)
        elif args.command == 'moduli':
            doc = report_moduli(spec)
        elif args.command == 'report':
            doc = report_all(spec, extras)
        elif args.command == 'ledger':
            doc = report_ledger(extras)
        elif args.command == 'appendix':
            doc = report_appendix()
        elif args.command == 'lattice':
            doc = report_lattice(args.expression, args.ring)
        else:  # pragma: no cover
            raise AssertionError("unhandled command")
    except (SpecParseError, ValueError) as err:
        sys.stderr.write('parse error: %s\n' % err)
        return 2
    except (DegenerateSpecError, NonIsolatedError) as err:
        sys.stderr.write('degenerate spec: %s\n' % err)
        return 1
    except AssertionError as err:
        sys.stderr.write('internal invariant violation: %s\n' % err)
        return 3
    _emit(doc, args.format)
    return 0


if __name__ == '__main__':
    sys.exit(main())
