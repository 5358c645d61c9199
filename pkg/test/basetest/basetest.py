#!/usr/bin/env python3
"""This module provides base testing capabilites"""
import sys
import argparse
import json
import os
import shutil
import tempfile
from contextlib import contextmanager
from io import StringIO
import mock

CONFIG = './test/.test_config'
CONFIGS = './test/configs'
ERROR_MSGS = {
    'run_config': "'run_config' is a required argument",
    'experiment': "'experiment' is a required argument",
    'threads': "'threads' must be at least 1",
}

@contextmanager
def captured_output():
    """capture stdout and stderr for use of parsing lingrow output"""
    new_out, new_err = StringIO(), StringIO()
    old_out, old_err = sys.stdout, sys.stderr
    try:
        sys.stdout, sys.stderr = new_out, new_err
        yield sys.stdout, sys.stderr
    finally:
        sys.stdout, sys.stderr = old_out, old_err

@contextmanager
def scratch_directory():
    """temporary output directory removed afterwards"""
    directory = tempfile.mkdtemp(prefix='lingrow-test-')
    try:
        yield directory
    finally:
        shutil.rmtree(directory, ignore_errors=True)

def write_config(directory, name, document):
    """write a run configuration document and return its path"""
    filename = os.path.join(directory, name)
    with open(filename, 'w', encoding='utf-8') as fname:
        if isinstance(document, str):
            fname.write(document)
        else:
            json.dump(document, fname)
    return filename

def patch_args(**kwargs):
    """Patch argparse arguments intended for use with `with` statement
    uses default config path and no color output"""
    defaults = {'seed': None, 'threads': None, 'verbosity': -1, 'theme_map': None}
    defaults.update(kwargs)
    return mock.patch(
        'argparse.ArgumentParser.parse_args',
        return_value=argparse.Namespace(
            config=CONFIG, color=False,
            **defaults
        )
    )
