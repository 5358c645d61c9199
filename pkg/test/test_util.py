#!/usr/bin/env python3
"""This module tests the util module"""
import os
import unittest
from liblingrow.errors import ConfigParseError, JsonArgumentError
from liblingrow.util import collect_args, format_value, parse_json_arguments, threaded_map, write_csv
from .basetest.basetest import CONFIG, captured_output, scratch_directory, write_config

class ArgumentTests(unittest.TestCase):
    """Merging defaults, rc file and command line"""
    def test_test_config(self):
        """the test rc file turns color off"""
        args = collect_args({'config': CONFIG, 'threads': None, 'out': None})
        self.assertFalse(args['color'])
        self.assertEqual(args['threads'], 1)
        self.assertEqual(args['out'], './lingrow-out')

    def test_command_line_wins(self):
        """values given on the command line override the rc file"""
        with scratch_directory() as directory:
            rcfile = write_config(directory, 'lingrowrc', "threads: 4\nseed: 7\ncolor: 'false'\n")
            args = collect_args({'config': rcfile, 'threads': 2, 'seed': None})
        self.assertEqual(args['threads'], 2)
        self.assertEqual(args['seed'], 7)
        self.assertFalse(args['color'])

    def test_missing_rc_file(self):
        """a missing rc file leaves the defaults"""
        with captured_output() as (out, _):
            args = collect_args({'config': '/nonexistent/lingrowrc', 'verbosity': 1})
        self.assertEqual(args['seed'], 0)
        self.assertIn('No .lingrowrc file found', out.getvalue())

    def test_broken_rc_file(self):
        """YAML syntax errors are configuration errors"""
        with scratch_directory() as directory:
            rcfile = write_config(directory, 'lingrowrc', "threads: [1, 2\n")
            with self.assertRaises(ConfigParseError):
                collect_args({'config': rcfile})

    def test_json_arguments(self):
        """JSON values are decoded and errors name the argument"""
        self.assertEqual(parse_json_arguments({'params': '{"k": [1]}'}, 'params'), {'k': [1]})
        self.assertIsNone(parse_json_arguments({'params': None}, 'params'))
        with self.assertRaises(JsonArgumentError) as context:
            parse_json_arguments({'params': '{k: 1'}, 'params')
        self.assertIn('params', context.exception.msg)

class OutputTests(unittest.TestCase):
    """Deterministic tables"""
    def test_format_value(self):
        """floats keep every digit"""
        self.assertEqual(format_value(0.1), '0.1')
        self.assertEqual(format_value(1.0 / 3.0), '0.3333333333333333')
        self.assertEqual(format_value(True), 'true')
        self.assertEqual(format_value(3), '3')
        self.assertEqual(format_value(None), '')

    def test_write_csv(self):
        """header, rows and a sorted provenance footer"""
        with scratch_directory() as directory:
            filename = write_csv(os.path.join(directory, 'nested', 'table.csv'), ['k', 'value'],
                                 [[1, 0.5], [2, 0.25]], {'seed': 3, 'params': {'b': 1, 'a': 2}})
            with open(filename, newline='', encoding='utf-8') as fname:
                lines = fname.read().split('\r\n')
        self.assertEqual(lines[:3], ['k,value', '1,0.5', '2,0.25'])
        self.assertEqual(lines[3:5], ['# params={"a":2,"b":1}', '# seed=3'])

class ThreadTests(unittest.TestCase):
    """Worker threads keep the input order"""
    def test_order(self):
        """results line up with their items"""
        items = list(range(23))
        self.assertEqual(threaded_map(lambda x: x * x, items, threads=4), [x * x for x in items])

    def test_failure_propagates(self):
        """an exception on a worker reaches the caller"""
        def fail(x):
            if x == 5:
                raise ValueError(x)
            return x
        with self.assertRaises(ValueError):
            threaded_map(fail, range(8), threads=3)

if __name__ == '__main__':
    unittest.main()
