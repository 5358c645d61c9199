"""This module is a generic for all lingrow commands"""
from os import path
from liblingrow.commands.arguments import ARGUMENTS as arguments
from liblingrow.errors import CliArgumentError
from liblingrow.util import build_describe, collect_args, color_prepare, ensure_directory, format_value

    ##########################################################################
class Command():
    """ Base class for all commands.  Automatically registers with cli subparser
    and provides run execution for itself.                                     """
    ##########################################################################
    name = None
    description = None
    selected_args = ['out', 'seed', 'threads', 'verbosity', 'quiet', 'color', 'theme_map']

        ##################################################################
    def __init__(self, cli):
        """ Intialization function for class. Register with argparse   """
        ##################################################################
        self.cli = cli
        self.args = {}
        cli.register(self, self.name, self.description)

        ##################################################################
    def register(self, parser):
        """ Registration function for class. Register with argparse      """
        ##################################################################
        for arg in sorted(self.selected_args):
            parser.add_argument(
                *arguments[arg]['args'],
                **arguments[arg]['kwargs'])

        ##################################################################
    def run(self, parsedargs):
        """ Passes the argparse Namespace object of parsed arguments and
        returns the exit code of the command                           """
        ##################################################################
        self._run_command_setup(parsedargs)
        return self._run_command_execution() or 0

        ##################################################################
    def _run_command_setup(self, parsedargs):
        """ Merge rc file and command line, then validate              """
        ##################################################################
        self.args = collect_args(parsedargs)
        self._validate_common_args()
        self._validate_args()
        ensure_directory(self.args['out'])

        ##################################################################
    def _validate_common_args(self):
        ##################################################################
        for argument in ['threads', 'seed', 'verbosity']:
            if not isinstance(self.args[argument], int) or isinstance(self.args[argument], bool):
                raise CliArgumentError("'%s' must be an integer" % argument)
        if self.args['threads'] < 1:
            raise CliArgumentError("'threads' must be at least 1")

        ##################################################################
    def _validate_args(self):
        ##################################################################
        raise NotImplementedError

        ##################################################################
    def _run_command_execution(self):
        ##################################################################
        raise NotImplementedError

        ##################################################################
    def output_path(self, filename):
        ##################################################################
        return path.join(self.args['out'], filename)

        ##################################################################
    def provenance(self, params):
        """Footer written below every CSV of this command"""
        ##################################################################
        return {'command': self.name, 'params': params, 'build': build_describe(),
                'seed': self.args['seed']}

        ##################################################################
    def print_section(self, title, mapping):
        """Human readable key: value listing"""
        ##################################################################
        if self.args['verbosity'] < 0:
            return
        print(self.color_print("%s:" % title, "first_level"))
        for key, value in mapping.items():
            print("  %s: %s" % (self.color_print(key, "second_level"), format_value(value)))

        ##################################################################
    def color_print(self, string, color_type):
        """Handle the color printing for objects"""
        ##################################################################
        return color_prepare(string, color_type,
                             self.args['color'],
                             self.args['theme_map'])
