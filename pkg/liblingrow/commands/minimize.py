"""This module minimizes the discretized relaxed functional"""
from liblingrow.commands.command import Command
from liblingrow.errors import CliArgumentError
from liblingrow.runconfig import build_problem, build_solver, load_run_config
from liblingrow.solver import minimize
from liblingrow.util import write_csv, write_json

    ####################################################################
class Minimize(Command):
    """Smoothed descent; exits 1 when the run diverges with a violated isoperimetric witness"""
    ####################################################################
    name = 'minimize'
    description = 'Minimize the relaxed functional on a nodal grid'
    selected_args = Command.selected_args + ['run_config']

        ####################################################################
    def _run_command_execution(self):
        """ Run function for class.                                      """
        ####################################################################
        document = load_run_config(self.args['run_config'], self.name)
        f, u0, pair, _ = build_problem(document)
        solver = dict(document.get('solver') or {})
        solver.setdefault('seed', self.args['seed'])
        cfg = build_solver(solver)
        result = minimize(f, u0, pair, cfg, self.args['verbosity'])

        params = {'integrand': f.name, 'solver': cfg.to_dict()}
        summary = result.to_dict()
        summary['config'] = cfg.to_dict()
        write_json(self.output_path('minimize.json'), summary)
        write_csv(self.output_path('trace.csv'), ['stage', 'eps', 'iteration', 'value'],
                  [[e['stage'], e['eps'], e['iteration'], e['value']] for e in result.trace],
                  self.provenance(params))
        profile = []
        for lo, hi, start, end in result.w.segments():
            profile.extend([[lo, start], [hi, end]])
        write_csv(self.output_path('profile.csv'), ['x', 'w'], profile, self.provenance(params))

        self.print_section("Result", {'status': result.status, 'value': result.value,
                                      'iterations': result.iterations})
        if result.certificate is not None:
            self.print_section("Witness", result.certificate.to_dict())
            return 1
        return 0

        ####################################################################
    def _validate_args(self):
        ####################################################################
        if not self.args.get('run_config'):
            raise CliArgumentError("'run_config' is a required argument")
