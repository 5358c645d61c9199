#!/usr/bin/env python3
"""Reading and validating the JSON run configurations of the evaluate, minimize
and ic-check commands, and building library objects from their sections"""
import ast
from numbers import Real
import numpy as np
from yaml import safe_load
from yaml import YAMLError
from liblingrow.bv1d import BVFunction1D
from liblingrow.errors import ConfigParseError, ConfigSchemaError, FileOpenError
from liblingrow.integrand import anisotropy_library, integrand_library, recession_anisotropy
from liblingrow.measure import CalibrationField1D, CalibrationField2D, CurveMeasure, FieldDensity, \
        SignedMeasure, TableDensity, jordan_decompose
from liblingrow.solver import SolveConfig
from liblingrow.testsets import interval_family, pixel_blob_family, polar_ball_family, rectangle_family

EXPR_SAMPLES = 256

SCHEMAS = {
    ############################################################################
    # Allowed top level keys per command; True marks a required key
    ############################################################################
    'evaluate': {
        'integrand': True,
        'measure': True,
        'u': True,
        'u0': False,
        'series': False,
        'recovery': False,
        'identity': False,
    },
    'minimize': {
        'integrand': True,
        'measure': True,
        'u0': False,
        'solver': False,
    },
    'ic-check': {
        'measure': True,
        'anisotropy': False,
        'integrand': False,
        'constant': False,
        'orientation': False,
        'family': False,
        'calibration': False,
        'lifted': False,
    },
}

SECTIONS = {
    'library': {'key': True, 'params': False},
    'measure': {'domain': True, 'atoms': False, 'density': False, 'curves': False},
    'atom': {'x': True, 'mass': True},
    'density': {'kind': True, 'nodes': False, 'values': False, 'expr': False, 'samples': False,
                'anchor': False},
    'curve': {'points': True, 'densities': True},
    'series': {'intervals': True, 'k': False, 'sign': False},
    'recovery': {'k': True},
    'identity': {'n0': False, 'n_x': False, 'tol': False},
    'family': {'kind': True, 'n_grid': False, 'max_components': False, 'anisotropy': False,
               'centers': False, 'radii': False, 'n_vertices': False, 'n_pixels': False,
               'n_blobs': False, 'seed': False},
    'calibration': {'expr': True, 'n_cells': False},
    'lifted': {'n_levels': False},
}

ORIENTATIONS = ('both', 'minus', 'plus')

EXPR_NAMES = {
    'abs': np.abs,
    'sqrt': np.sqrt,
    'exp': np.exp,
    'log': np.log,
    'sin': np.sin,
    'cos': np.cos,
    'sign': np.sign,
    'minimum': np.minimum,
    'maximum': np.maximum,
    'pi': np.pi,
}

EXPR_NODES = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Load, ast.Constant,
              ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd, ast.Tuple)

    ####################################################################
def load_run_config(filename, command):
    """Parse a JSON run configuration and check it against the command schema"""
    ####################################################################
    try:
        with open(filename, 'r', encoding='utf-8') as fname:
            document = safe_load(fname)
    except (IOError, OSError) as err:
        raise FileOpenError(filename, err.strerror)
    except YAMLError as err:
        mark = getattr(err, 'problem_mark', None)
        where = " at line %d, column %d" % (mark.line + 1, mark.column + 1) if mark else ""
        raise ConfigParseError("Parsing error in %s%s: %s" % (filename, where, getattr(err, 'problem', err)))
    if not isinstance(document, dict):
        raise ConfigSchemaError('<root>', "expected a JSON object")
    check_keys(document, SCHEMAS[command], '')
    return document

def check_keys(document, schema, prefix):
    """Unknown and missing keys of a section"""
    if not isinstance(document, dict):
        raise ConfigSchemaError(prefix or '<root>', "expected a JSON object")
    for key in document:
        if key not in schema:
            raise ConfigSchemaError(_join(prefix, key), "unknown key")
    for key, required in schema.items():
        if required and key not in document:
            raise ConfigSchemaError(_join(prefix, key), "missing required key")

def _join(prefix, key):
    return "%s.%s" % (prefix, key) if prefix else str(key)

def _number(value, key):
    if isinstance(value, bool) or not isinstance(value, Real):
        raise ConfigSchemaError(key, "expected a number, got %r" % (value,))
    return float(value)

def _numbers(value, key, length=None):
    if not isinstance(value, (list, tuple)):
        raise ConfigSchemaError(key, "expected a list of numbers")
    if length is not None and len(value) != length:
        raise ConfigSchemaError(key, "expected %d numbers, got %d" % (length, len(value)))
    return [_number(item, "%s[%d]" % (key, i)) for i, item in enumerate(value)]

def _integer(value, key):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigSchemaError(key, "expected an integer, got %r" % (value,))
    return value

    ####################################################################
def compile_expr(text, variables, key):
    """Vectorized function of the named variables from a whitelisted expression"""
    ####################################################################
    if not isinstance(text, str):
        raise ConfigSchemaError(key, "expected an expression string")
    try:
        tree = ast.parse(text, mode='eval')
    except SyntaxError as err:
        raise ConfigSchemaError(key, "expression does not parse: %s" % err.msg)
    for node in ast.walk(tree):
        if not isinstance(node, EXPR_NODES):
            raise ConfigSchemaError(key, "'%s' is not allowed in expressions" % type(node).__name__)
        if isinstance(node, ast.Name) and node.id not in EXPR_NAMES and node.id not in variables:
            raise ConfigSchemaError(key, "unknown name '%s' in expression" % node.id)
        if isinstance(node, ast.Call) and not (isinstance(node.func, ast.Name) and callable(EXPR_NAMES.get(node.func.id))):
            raise ConfigSchemaError(key, "only the whitelisted functions may be called")
        if isinstance(node, ast.Constant) and not isinstance(node.value, (int, float)):
            raise ConfigSchemaError(key, "only numeric constants are allowed")
    code = compile(tree, key, 'eval')

    def func(*args):
        scope = dict(EXPR_NAMES)
        scope.update(zip(variables, args))
        value = eval(code, {'__builtins__': {}}, scope) # pylint: disable=eval-used
        return np.broadcast_to(np.asarray(value, dtype=float), np.broadcast(*args).shape)
    return func

    ####################################################################
def build_anisotropy(section, dim, key='anisotropy'):
    ####################################################################
    check_keys(section, SECTIONS['library'], key)
    return anisotropy_library(section['key'], section.get('params'), dim)

    ####################################################################
def build_integrand(section, dim, domain=None, key='integrand'):
    ####################################################################
    check_keys(section, SECTIONS['library'], key)
    return integrand_library(section['key'], section.get('params'), dim, domain)

def _domain(value, key):
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(isinstance(v, (list, tuple)) for v in value):
        return tuple(tuple(_numbers(v, "%s[%d]" % (key, i), 2)) for i, v in enumerate(value))
    return tuple(_numbers(value, key, 2))

def _density(section, domain, dim, key):
    check_keys(section, SECTIONS['density'], key)
    kind = section['kind']
    if kind == 'table':
        if dim != 1:
            raise ConfigSchemaError(_join(key, 'kind'), "table densities are one dimensional")
        for field in ('nodes', 'values'):
            if field not in section:
                raise ConfigSchemaError(_join(key, field), "missing required key")
        return TableDensity(_numbers(section['nodes'], _join(key, 'nodes')),
                            _numbers(section['values'], _join(key, 'values')))
    if kind == 'expr':
        if 'expr' not in section:
            raise ConfigSchemaError(_join(key, 'expr'), "missing required key")
        if dim == 1:
            func = compile_expr(section['expr'], ('x',), _join(key, 'expr'))
            nodes = np.linspace(domain[0], domain[1], _integer(section.get('samples', EXPR_SAMPLES),
                                                               _join(key, 'samples')) + 1)
            return TableDensity(nodes, func(nodes))
        func = compile_expr(section['expr'], ('x', 'y'), _join(key, 'expr'))
        anchor = section.get('anchor')
        if anchor is not None:
            anchor = _numbers(anchor, _join(key, 'anchor'), 2)
        return FieldDensity(lambda p: func(p[..., 0], p[..., 1]), anchor=anchor, label=section['expr'])
    raise ConfigSchemaError(_join(key, 'kind'), "expected 'table' or 'expr', got %r" % (kind,))

    ####################################################################
def build_measure(section, key='measure'):
    """SignedMeasure from {"domain", "atoms", "density", "curves"}"""
    ####################################################################
    check_keys(section, SECTIONS['measure'], key)
    domain = _domain(section['domain'], _join(key, 'domain'))
    dim = 2 if isinstance(domain[0], tuple) else 1
    atoms = []
    for i, atom in enumerate(section.get('atoms', [])):
        where = "%s.atoms[%d]" % (key, i)
        check_keys(atom, SECTIONS['atom'], where)
        location = atom['x'] if dim == 2 else [atom['x']]
        atoms.append((_numbers(location, _join(where, 'x'), dim), _number(atom['mass'], _join(where, 'mass'))))
    density = None
    if section.get('density') is not None:
        density = _density(section['density'], domain, dim, _join(key, 'density'))
    curves = []
    for i, curve in enumerate(section.get('curves', [])):
        where = "%s.curves[%d]" % (key, i)
        check_keys(curve, SECTIONS['curve'], where)
        curves.append(CurveMeasure(curve['points'], _numbers(curve['densities'], _join(where, 'densities'))))
    return SignedMeasure(domain, atoms, density, curves)

    ####################################################################
def build_bv(section, domain, key='u'):
    """A BV function document, a constant or a pair of end values"""
    ####################################################################
    if isinstance(section, dict):
        document = dict(section)
        document.setdefault('domain', list(domain))
        return BVFunction1D.from_json(document)
    if isinstance(section, (list, tuple)):
        left, right = _numbers(section, key, 2)
        return BVFunction1D.affine(domain, left, right)
    return BVFunction1D.constant(domain, _number(section, key))

    ####################################################################
def build_solver(section):
    ####################################################################
    if section is not None and not isinstance(section, dict):
        raise ConfigSchemaError('solver', "expected a JSON object")
    return SolveConfig.from_dict(section)

    ####################################################################
def build_family(section, measure, seed=0, key='family'):
    """Test set family for the isoperimetric scan"""
    ####################################################################
    check_keys(section, SECTIONS['family'], key)
    kind = section['kind']
    domain = tuple(tuple(row) for row in measure.domain.tolist()) if measure.dim == 2 else tuple(measure.domain.tolist())
    if kind == 'intervals':
        return interval_family(domain, (measure,), section.get('n_grid', 16), section.get('max_components', 3))
    if measure.dim != 2:
        raise ConfigSchemaError(_join(key, 'kind'), "'%s' families need a planar measure" % kind)
    if kind == 'rectangles':
        return rectangle_family(domain, section.get('n_grid', 8))
    if kind == 'polar-balls':
        gauge_phi = build_anisotropy(section.get('anisotropy', {'key': 'euclidean'}), 2, _join(key, 'anisotropy'))
        gauge = lambda points: gauge_phi.polar(np.zeros_like(points), points)
        centers = [_numbers(c, "%s.centers[%d]" % (key, i), 2)
                   for i, c in enumerate(section.get('centers', [[0.0, 0.0]]))]
        return polar_ball_family(gauge, centers, _numbers(section.get('radii', [0.5]), _join(key, 'radii')),
                                 section.get('n_vertices', 256))
    if kind == 'pixel-blobs':
        return pixel_blob_family(domain, section.get('n_pixels', 24), section.get('n_blobs', 16),
                                 section.get('seed', seed))
    raise ConfigSchemaError(_join(key, 'kind'), "unknown family kind %r" % (kind,))

    ####################################################################
def build_calibration(section, measure, key='calibration'):
    """Calibration field sampled from an expression (one per component in 2D)"""
    ####################################################################
    check_keys(section, SECTIONS['calibration'], key)
    n_cells = _integer(section.get('n_cells', 64), _join(key, 'n_cells'))
    if measure.dim == 1:
        func = compile_expr(section['expr'], ('x',), _join(key, 'expr'))
        return CalibrationField1D.from_function(func, tuple(measure.domain), n_cells)
    exprs = section['expr']
    if not isinstance(exprs, list) or len(exprs) != 2:
        raise ConfigSchemaError(_join(key, 'expr'), "planar fields need two component expressions")
    parts = [compile_expr(text, ('x', 'y'), "%s.expr[%d]" % (key, i)) for i, text in enumerate(exprs)]
    field = lambda p: np.stack([part(p[..., 0], p[..., 1]) for part in parts], axis=-1)
    return CalibrationField2D.from_function(field, measure.domain.tolist(), n_cells)

    ####################################################################
def build_density_phi(document, dim):
    """Anisotropy of an ic-check: given directly or as the recession of an integrand"""
    ####################################################################
    if 'anisotropy' in document and 'integrand' in document:
        raise ConfigSchemaError('anisotropy', "give either an anisotropy or an integrand")
    if 'integrand' in document:
        return recession_anisotropy(build_integrand(document['integrand'], dim))
    return build_anisotropy(document.get('anisotropy', {'key': 'euclidean'}), dim)

    ####################################################################
def build_problem(document):
    """(integrand, boundary datum, Jordan pair, domain) shared by evaluate and minimize"""
    ####################################################################
    mu = build_measure(document['measure'])
    if mu.dim != 1:
        raise ConfigSchemaError('measure.domain', "evaluate and minimize work on an interval")
    domain = tuple(float(v) for v in mu.domain)
    f = build_integrand(document['integrand'], 1, domain)
    u0 = build_bv(document.get('u0', 0.0), domain, 'u0')
    return f, u0, jordan_decompose(mu), domain

def orientation_of(document):
    orientation = document.get('orientation', 'both')
    if orientation not in ORIENTATIONS:
        raise ConfigSchemaError('orientation', "expected one of %s" % ", ".join(ORIENTATIONS))
    return orientation
