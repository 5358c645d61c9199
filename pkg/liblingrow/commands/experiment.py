"""This module runs the scripted experiments"""
from liblingrow.commands.command import Command
from liblingrow.errors import CliArgumentError
from liblingrow.experiments import run_experiment
from liblingrow.util import parse_json_arguments

    ####################################################################
class Experiment(Command):
    """Runs a named experiment and writes its CSV table and JSON summary"""
    ####################################################################
    name = 'experiment'
    description = 'Run a named experiment (borderline-area, remark-h4, vectorial)'
    selected_args = Command.selected_args + ['experiment', 'params']

        ####################################################################
    def _run_command_execution(self):
        """ Run function for class.                                      """
        ####################################################################
        params = parse_json_arguments(self.args, 'params') or {}
        table = run_experiment(self.args['experiment'], params, self.args['threads'])
        csv_name, json_name = table.write(self.args['out'], self.args['seed'])
        self.print_section(table.name, table.summary)
        self.print_section("Files", {'table': csv_name, 'summary': json_name})
        return 0

        ####################################################################
    def _validate_args(self):
        ####################################################################
        if not self.args.get('experiment'):
            raise CliArgumentError("'experiment' is a required argument")
