#!/usr/bin/env python3
"""General Utility file for common functionality"""
from os import path, makedirs
from sys import stderr
from json import loads, dump, dumps
from csv import writer as csv_writer
from threading import Thread
from numbers import Integral, Real
from yaml import safe_load
from yaml.parser import ParserError
from yaml.scanner import ScannerError
from colored import fg, attr
from liblingrow import __version__
from liblingrow._version import get_versions
from liblingrow.errors import FileOpenError, JsonArgumentError, ConfigParseError

    ####################################################################
def color_prepare(string, color_type, colorize, theme_map=None):
    """Handle the color output of a given string"""
    ####################################################################
    if theme_map is None:
        theme_map = {}
    color_defaults = {
        "info": "cyan",
        "warning": "yellow",
        "debug": "red",
        "first_level": "magenta",
        "second_level": "green",
        "third_level": "blue"
    }
    color = theme_map[color_type].lower() if (color_type in theme_map) else color_defaults[color_type]
    try:
        return "%s%s%s" % (fg(color), string, attr('reset')) if colorize else string
    except KeyError:
        return "%s%s%s" % (fg(color_defaults[color_type]), string, attr('reset')) if colorize else string

    ####################################################################
def warn(message, verbosity=0):
    """Print a warning line unless output is quieted"""
    ####################################################################
    if verbosity is None or verbosity >= 0:
        print("warning: %s" % message, file=stderr)

    ####################################################################
def info(message, verbosity=0):
    """Print an informational line when verbose output was requested"""
    ####################################################################
    if verbosity is not None and verbosity > 0:
        print("INFO: %s" % message)

    ####################################################################
def show_version():
    """return the version number computed by versioneer"""
    ####################################################################
    return __version__

    ####################################################################
def build_describe():
    """git-describe style identification of the running build"""
    ####################################################################
    versions = get_versions()
    revision = versions.get('full-revisionid') or 'unknown'
    return "%s (%s)" % (versions['version'], revision[:12])

    ####################################################################
def threaded_map(func, items, threads=1):
    """Apply func to every item on worker threads, keeping input order"""
    ####################################################################
    items = list(items)
    if threads is None or threads <= 1 or len(items) < 2:
        return [func(item) for item in items]
    results = [None] * len(items)
    failures = []
    n_workers = min(int(threads), len(items))

    def work(offset):
        try:
            for index in range(offset, len(items), n_workers):
                results[index] = func(items[index])
        except Exception as err: # pylint: disable=broad-except
            failures.append(err)

    workers = [Thread(target=work, args=(offset,)) for offset in range(n_workers)]
    for worker in workers:
        worker.start()
    for worker in workers:
        worker.join()
    if failures:
        raise failures[0]
    return results

    ####################################################################
def format_value(value):
    """Deterministic text form of a table cell"""
    ####################################################################
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, Real):
        return repr(float(value))
    return str(value)

    ####################################################################
def ensure_directory(directory):
    """Create an output directory when it does not exist yet"""
    ####################################################################
    try:
        if directory and not path.isdir(directory):
            makedirs(directory)
    except OSError as err:
        raise FileOpenError(directory, err.strerror)
    return directory

    ####################################################################
def write_csv(filename, header, rows, provenance=None):
    """Write a table with a header row and a commented provenance footer"""
    ####################################################################
    ensure_directory(path.dirname(filename))
    with open(filename, 'w', newline='', encoding='utf-8') as fname:
        table = csv_writer(fname, lineterminator='\r\n')
        table.writerow(header)
        for row in rows:
            table.writerow([format_value(cell) for cell in row])
        for key, value in sorted((provenance or {}).items()):
            if isinstance(value, (dict, list, tuple)):
                value = dumps_sorted(value)
            fname.write("# %s=%s\r\n" % (key, format_value(value)))
    return filename

    ####################################################################
def dumps_sorted(value):
    """Compact JSON text with sorted keys"""
    ####################################################################
    return dumps(to_builtin(value), sort_keys=True, separators=(',', ':'))

    ####################################################################
def to_builtin(value):
    """Convert numpy scalars/arrays nested in containers to plain python"""
    ####################################################################
    if hasattr(value, 'tolist'):
        return value.tolist()
    if isinstance(value, dict):
        return {str(key): to_builtin(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(item) for item in value]
    if isinstance(value, float) and value != value:
        return None
    return value

    ####################################################################
def write_json(filename, document):
    """Write a JSON document with sorted keys"""
    ####################################################################
    ensure_directory(path.dirname(filename))
    with open(filename, 'w', encoding='utf-8') as fname:
        dump(to_builtin(document), fname, sort_keys=True, indent=2)
        fname.write("\n")
    return filename

    ##################################################################
def handle_boolean_args(args, argname):
    ##################################################################
    if isinstance(args[argname], str):
        return args[argname].upper() == 'TRUE'
    return args[argname]

    ##################################################################
def parse_json_arguments(args, argument):
    """ Parses the json.loads arguments as dictionaries to use"""
    ##################################################################
    try:
        if argument in args and args[argument]:
            if isinstance(args[argument], dict):
                return args[argument]
            return loads(args[argument])
        return None
    except ValueError as err:
        raise JsonArgumentError(argument, err)

    ##################################################################
def collect_args(parsedargs):
    ##################################################################
    # Build a dict out of the argparse args Namespace object and a dict from any
    # configuration files and merge the two with cli taking priority
    args = {
        'color': True,
        'theme_map': None,
        'verbosity': 0,
        'threads': 1,
        'seed': 0,
        'out': './lingrow-out',
    }
    cli_args = parsedargs if isinstance(parsedargs, dict) else vars(parsedargs)
    config_args = get_config_args(cli_args.get('config'), cli_args)
    args.update(config_args)

    for key, value in cli_args.items():
        if value is not None or key not in args:
            args[key] = value

    args['color'] = handle_boolean_args(args, 'color')
    args['theme_map'] = parse_json_arguments(args, 'theme_map')
    args['out'] = path.expanduser(args['out'])
    return args

    ##################################################################
def get_config_args(config, cli_args):
    """Return the configuration from the rc file"""
    ##################################################################
    if not config:
        return {}
    try:
        with open(path.expanduser(config), 'r') as fname:
            config_args = safe_load(fname)
        return config_args if config_args else {}
    except IOError:
        info("No .lingrowrc file found at %s" % config, cli_args.get('verbosity'))
        return {}
    except (ParserError, ScannerError):
        raise ConfigParseError("Parsing error with config file, please check syntax")
