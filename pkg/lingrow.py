#!/usr/bin/env python3
"""This Module handles the CLI and any error that comes from it"""
from sys import version_info, argv, exit as sys_exit
if version_info[0] < 3:
    raise Exception('Python version 3 is required 3.6 and higher is actively tested')

# pylint: disable=wrong-import-position
# Reasoning for the disablement is because we want people to not try to run with python2
from argparse import ArgumentParser
from traceback import format_exception_only
from liblingrow.errors import LingrowError
from liblingrow.commands.cli import Cli

GENERIC_EXIT = 3

def main():
    """Run the selected command and return its exit code"""
    parser = ArgumentParser(add_help=False)
    # This debug flag exists in both this parser and the main parser
    # of Cli
    parser.add_argument("--debug", action='store_true')
    high_level_args, _ = parser.parse_known_args()
    # allow '--debug' to be placed at end of command and not interrupt the subparsers
    if '--debug' in argv:
        argv.remove('--debug')
    try:
        return Cli().exit_code
    except LingrowError as error:
        if high_level_args.debug:
            raise error
        print("\n\n%s: %s" % (str(type(error).__name__), error.msg))
        return error.exit_code
    except KeyboardInterrupt:
        print("\nExiting")
        return GENERIC_EXIT
    # This is so that users don't see tracebacks, an error will still print out
    # so that we can investigate
    except Exception as err: # pylint: disable=broad-except
        if high_level_args.debug:
            raise err
        print("Generic exception caught: \n\t%s" %
              format_exception_only(type(err), err)[0])
        return GENERIC_EXIT

if __name__ == '__main__':
    sys_exit(main())
