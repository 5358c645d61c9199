"""This module evaluates the relaxed functional of a configured problem"""
from liblingrow.bv1d import evaluate_MF, necessity_series, recovery_sequence
from liblingrow.commands.command import Command
from liblingrow.errors import CliArgumentError
from liblingrow.lifting import check_master_identity
from liblingrow.runconfig import SECTIONS, build_bv, build_problem, check_keys, load_run_config
from liblingrow.util import write_csv, write_json

    ####################################################################
class Evaluate(Command):
    """Breakdown of M_f[u] with optional k-series, recovery ladder and identity check"""
    ####################################################################
    name = 'evaluate'
    description = 'Evaluate the relaxed functional of a BV function'
    selected_args = Command.selected_args + ['run_config']

        ####################################################################
    def _run_command_execution(self):
        """ Run function for class.                                      """
        ####################################################################
        document = load_run_config(self.args['run_config'], self.name)
        f, u0, pair, domain = build_problem(document)
        u = build_bv(document['u'], domain)
        breakdown = evaluate_MF(f, u0, pair, u)
        result = {'integrand': f.name, 'breakdown': breakdown.to_dict()}
        self.print_section("Breakdown", breakdown.to_dict())

        if 'series' in document:
            check_keys(document['series'], SECTIONS['series'], 'series')
            series = document['series']
            rows = necessity_series(f, u0, pair, [tuple(i) for i in series['intervals']],
                                    series.get('k', list(range(1, 11))), series.get('sign', 1.0))
            write_csv(self.output_path('series.csv'), ['k', 'total'], rows, self.provenance(series))
            result['series'] = [{'k': k, 'total': total} for k, total in rows]
            self.print_section("Series", {"k=%s" % k: total for k, total in rows})

        if 'recovery' in document:
            check_keys(document['recovery'], SECTIONS['recovery'], 'recovery')
            rows = []
            for k in document['recovery']['k']:
                approx = evaluate_MF(f, u0, pair, recovery_sequence(u, u0, pair, k))
                rows.append([k, approx.total, approx.measure_pairing, abs(approx.total - breakdown.total)])
            write_csv(self.output_path('recovery.csv'), ['k', 'total', 'measure_pairing', 'gap'], rows,
                      self.provenance(document['recovery']))
            result['recovery'] = rows
            self.print_section("Recovery", {"k=%s" % row[0]: row[1] for row in rows})

        if 'identity' in document:
            check_keys(document['identity'], SECTIONS['identity'], 'identity')
            report = check_master_identity(f, u0, pair, u, seed=self.args['seed'], **document['identity'])
            result['identity'] = report.to_dict()
            self.print_section("Lifted identity", {'lhs': report.lhs, 'rhs': report.rhs,
                                                    'relative_gap': report.relative_gap})

        write_json(self.output_path('evaluate.json'), result)
        return 0

        ####################################################################
    def _validate_args(self):
        ####################################################################
        if not self.args.get('run_config'):
            raise CliArgumentError("'run_config' is a required argument")
