#!/usr/bin/env python3
"""This Module implements a CLI"""
from argparse import ArgumentParser
from os import path
import liblingrow.util as util
import liblingrow.commands.evaluate as evaluate
import liblingrow.commands.experiment as experiment
import liblingrow.commands.iccheck as iccheck
import liblingrow.commands.minimize as minimize
from liblingrow.errors import CliArgumentError, UnknownCommandError

    ##############################################################################
class LingrowArgumentParser(ArgumentParser):
    """ ArgumentParser raising lingrow errors instead of exiting """
    ##############################################################################

    def error(self, message):
        if 'invalid choice' in message:
            raise UnknownCommandError(message)
        raise CliArgumentError(message)

    ##############################################################################
class Cli():
    """ Class for parsing command line.  Observes subclasses of Command to Register
    those commands in the actions list.                                        """
    ##############################################################################

        ####################################################################
    def __init__(self):
        """ Intialization function for class. Register all subcommands and
        run the selected one                                             """
        ####################################################################
        # Hash of registered subparser actions, mapping string to actual subparser
        self.actions = {}
        self.exit_code = 0
        home = path.expanduser("~")
        self.parser = LingrowArgumentParser(
            description='Linear growth functionals with measure data')
        self.parser.add_argument(
            '--config', type=str,
            help="Path to a lingrow rc file.  Defaults to '~/.lingrowrc'",
            default=path.join(home, '.lingrowrc')
        )
        self.parser.add_argument('--debug', action='store_true',
                                 help="Errors are more verbose")
        self.parser.add_argument(
            '--version', action='store_true', help='Show the version of lingrow and exit')
        self.subparsers = self.parser.add_subparsers(
            help='sub-commands', dest='subparser_name')

        evaluate.Evaluate(self)
        minimize.Minimize(self)
        experiment.Experiment(self)
        iccheck.ICCheck(self)

        self.parsedargs = self.parser.parse_args()
        if 'version' in self.parsedargs and self.parsedargs.version:
            print(util.show_version())
        elif getattr(self.parsedargs, 'subparser_name', None) not in self.actions:
            raise UnknownCommandError("Unknown command '%s', expected one of: %s" % (
                getattr(self.parsedargs, 'subparser_name', None), ", ".join(sorted(self.actions))))
        else:
            self.exit_code = self.actions[self.parsedargs.subparser_name].run(self.parsedargs)

        ####################################################################
    def register(self, command_obj, command_name, command_description):
        """ Register command objects and names using an observer pattern """
        ####################################################################
        self.actions[command_name] = command_obj
        parser = self.subparsers.add_parser(
            command_name, help=command_description)
        command_obj.register(parser)
